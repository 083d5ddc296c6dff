//! Chinese remainder problems modulo linear forms.
//!
//! A system `f ≡ a_i (mod e_i)` with linearly independent `e_i` is solvable
//! iff `a_i - a_j ∈ <e_i, e_j>` for every pair. [`crt_solve`] builds a
//! solution by inclusion-exclusion after a change of variables that turns
//! each `e_i` into a coordinate; [`crt_solve_bounded`] searches for a
//! solution of bounded degree by exact linear algebra and works for any
//! moduli.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::Serialize;

use crate::cohomology::{is_class, CohomologySpace, GradedClass};
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::poly_core::{
    divides_linear, ideal_member_linear, linear_independent, monomials_up_to_degree, LinearForm,
    LinearReducer, Monomial, Polynomial, Rational, RationalMatrix,
};

/// `f ≡ targets[i] (mod moduli[i])` for every `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceSystem {
    #[serde(skip)]
    nvars: usize,
    moduli: Vec<LinearForm>,
    targets: Vec<Polynomial>,
}

impl CongruenceSystem {
    pub fn new(nvars: usize, moduli: Vec<LinearForm>, targets: Vec<Polynomial>) -> Result<Self> {
        if moduli.len() != targets.len() {
            return Err(Error::Dimension {
                expected: moduli.len(),
                found: targets.len(),
            });
        }
        for e in &moduli {
            if e.nvars() != nvars {
                return Err(Error::Dimension {
                    expected: nvars,
                    found: e.nvars(),
                });
            }
        }
        for a in &targets {
            if a.nvars() != nvars {
                return Err(Error::Dimension {
                    expected: nvars,
                    found: a.nvars(),
                });
            }
        }
        Ok(CongruenceSystem {
            nvars,
            moduli,
            targets,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn moduli(&self) -> &[LinearForm] {
        &self.moduli
    }

    pub fn targets(&self) -> &[Polynomial] {
        &self.targets
    }

    /// Largest target degree, 0 when every target vanishes.
    pub fn max_target_degree(&self) -> u32 {
        self.targets.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    /// Whether `f` satisfies every congruence.
    pub fn is_solution(&self, f: &Polynomial) -> Result<bool> {
        for (e, a) in self.moduli.iter().zip(&self.targets) {
            if !divides_linear(e, &f.checked_sub(a)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A pair of congruences violating `a_i - a_j ∈ <e_i, e_j>`. The difference
/// and the moduli are reported with positive leading coefficient; ideal
/// membership does not see the sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub i: usize,
    pub j: usize,
    pub difference: Polynomial,
    pub moduli: [LinearForm; 2],
}

impl PairWitness {
    /// Re-checks the witness from its own data.
    pub fn verify(&self) -> Result<bool> {
        Ok(!ideal_member_linear(&self.moduli, &self.difference)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// The pairwise condition fails, so no solution exists in any degree.
    Pair(PairWitness),
    /// No solution of degree at most `max_degree`; says nothing about
    /// higher degrees.
    DegreeBound { max_degree: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionCertificate {
    Solved(Polynomial),
    Obstructed(Obstruction),
}

impl ExtensionCertificate {
    pub fn is_solved(&self) -> bool {
        matches!(self, ExtensionCertificate::Solved(_))
    }

    pub fn solution(&self) -> Option<&Polynomial> {
        match self {
            ExtensionCertificate::Solved(f) => Some(f),
            ExtensionCertificate::Obstructed(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&PairWitness> {
        match self {
            ExtensionCertificate::Obstructed(Obstruction::Pair(w)) => Some(w),
            _ => None,
        }
    }
}

impl Serialize for ExtensionCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        match self {
            ExtensionCertificate::Solved(f) => {
                map.serialize_entry("outcome", "solved")?;
                map.serialize_entry("solution", f)?;
            }
            ExtensionCertificate::Obstructed(Obstruction::Pair(w)) => {
                map.serialize_entry("outcome", "obstructed")?;
                map.serialize_entry("witness", w)?;
            }
            ExtensionCertificate::Obstructed(Obstruction::DegreeBound { max_degree }) => {
                map.serialize_entry("outcome", "obstructed")?;
                map.serialize_entry("degree_cap", max_degree)?;
            }
        }
        map.end()
    }
}

/// The lexicographically first pair `(i, j)`, `i < j`, with
/// `a_i - a_j ∉ <e_i, e_j>`.
pub fn first_incompatible_pair(sys: &CongruenceSystem) -> Result<Option<PairWitness>> {
    let m = sys.len();
    for i in 0..m {
        for j in i + 1..m {
            let pair = [sys.moduli[i].clone(), sys.moduli[j].clone()];
            let difference = sys.targets[i].checked_sub(&sys.targets[j])?;
            if !ideal_member_linear(&pair, &difference)? {
                return Ok(Some(PairWitness {
                    i,
                    j,
                    difference: difference.sign_normalized(),
                    moduli: pair.map(|e| e.sign_normalized()),
                }));
            }
        }
    }
    Ok(None)
}

/// Pairwise compatibility of all congruences.
pub fn crt_compatible(sys: &CongruenceSystem) -> Result<bool> {
    Ok(first_incompatible_pair(sys)?.is_none())
}

/// Which target represents a subset `S` in the inclusion-exclusion sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Representative {
    #[default]
    Min,
    Max,
}

/// Constructive solver for linearly independent moduli.
pub fn crt_solve(sys: &CongruenceSystem) -> Result<ExtensionCertificate> {
    crt_solve_with(sys, Representative::Min)
}

pub fn crt_solve_with(
    sys: &CongruenceSystem,
    representative: Representative,
) -> Result<ExtensionCertificate> {
    if !linear_independent(&sys.moduli)? {
        return Err(Error::DependentModuli);
    }
    if let Some(w) = first_incompatible_pair(sys)? {
        return Ok(ExtensionCertificate::Obstructed(Obstruction::Pair(w)));
    }
    let n = sys.nvars;
    let m = sys.len();

    // Complete e_1..e_m to a basis with unit forms, lowest index first.
    let mut basis: Vec<LinearForm> = sys.moduli.clone();
    for k in 0..n {
        if basis.len() == n {
            break;
        }
        basis.push(LinearForm::var(n, k));
        if !linear_independent(&basis)? {
            basis.pop();
        }
    }
    // y = A x with the basis forms as rows of A.
    let a = RationalMatrix::from_rows(n, basis.iter().map(|e| e.coeffs().to_vec()).collect())?;
    let a_inv = a
        .inverse()
        .ok_or_else(|| Error::Internal("completed basis is singular".into()))?;
    let combination = |mat: &RationalMatrix, row: usize| -> Polynomial {
        Polynomial::from_terms(
            n,
            (0..n).map(|col| (Monomial::var(n, col), mat.get(row, col).clone())),
        )
        .expect("monomials share nvars")
    };
    // x_j -> sum_i Ainv[j][i] y_i rewrites a polynomial in the y coordinates.
    let to_y: BTreeMap<usize, Polynomial> = (0..n).map(|j| (j, combination(&a_inv, j))).collect();
    let to_x: BTreeMap<usize, Polynomial> = (0..n).map(|i| (i, combination(&a, i))).collect();

    let targets_y = sys
        .targets
        .iter()
        .map(|t| t.substitute(&to_y))
        .collect::<Result<Vec<_>>>()?;

    let mut f_y = Polynomial::zero(n);
    for mask in 1u64..(1u64 << m) {
        let members: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
        let rep = match representative {
            Representative::Min => members[0],
            Representative::Max => *members.last().unwrap(),
        };
        let kill: BTreeMap<usize, Polynomial> =
            members.iter().map(|&i| (i, Polynomial::zero(n))).collect();
        let term = targets_y[rep].substitute(&kill)?;
        f_y = if members.len() % 2 == 1 {
            &f_y + &term
        } else {
            &f_y - &term
        };
    }
    let f = f_y.substitute(&to_x)?;

    if !sys.is_solution(&f)? {
        return Err(Error::Internal(
            "inclusion-exclusion solution failed a congruence".into(),
        ));
    }
    Ok(ExtensionCertificate::Solved(f))
}

/// Searches for a solution of total degree at most `max_degree` by solving
/// the linear system on its coefficients. Works for dependent moduli.
pub fn crt_solve_bounded(sys: &CongruenceSystem, max_degree: u32) -> Result<ExtensionCertificate> {
    let n = sys.nvars;
    let monomials = monomials_up_to_degree(n, max_degree);
    let cols = monomials.len();

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (e, a) in sys.moduli.iter().zip(&sys.targets) {
        let reducer = LinearReducer::new(std::slice::from_ref(e))?;
        let mut lhs: BTreeMap<Monomial, Vec<(usize, Rational)>> = BTreeMap::new();
        for (k, mono) in monomials.iter().enumerate() {
            for (mu, c) in reducer.reduce_monomial(mono).terms() {
                lhs.entry(mu.clone()).or_default().push((k, c.clone()));
            }
        }
        let target = reducer.reduce(a)?;
        let keys: BTreeSet<Monomial> = lhs
            .keys()
            .cloned()
            .chain(target.terms().map(|(mu, _)| mu.clone()))
            .collect();
        for mu in keys {
            let mut row = vec![Rational::zero(); cols];
            for (k, c) in lhs.remove(&mu).unwrap_or_default() {
                row[k] = c;
            }
            rows.push(row);
            rhs.push(target.coefficient(&mu));
        }
    }

    let solution = if rows.is_empty() {
        Some(vec![Rational::zero(); cols])
    } else {
        RationalMatrix::from_rows(cols, rows)?
            .solve_affine(&rhs)?
            .map(|s| s.particular)
    };
    match solution {
        Some(coeffs) => {
            let f = Polynomial::from_terms(n, monomials.into_iter().zip(coeffs))?;
            if !sys.is_solution(&f)? {
                return Err(Error::Internal("bounded solution failed a congruence".into()));
            }
            Ok(ExtensionCertificate::Solved(f))
        }
        None => Ok(ExtensionCertificate::Obstructed(
            match first_incompatible_pair(sys)? {
                Some(w) => Obstruction::Pair(w),
                None => Obstruction::DegreeBound { max_degree },
            },
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtendOptions {
    /// Extra degrees allowed over the largest target degree when the moduli
    /// are dependent.
    pub slack: u32,
}

impl Default for ExtendOptions {
    fn default() -> Self {
        ExtendOptions { slack: 1 }
    }
}

/// How a one-vertex extension was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "solver", rename_all = "snake_case")]
pub enum Regime {
    /// Independent moduli: constructive solver, verdict holds in all degrees.
    Independent,
    /// Dependent moduli: bounded search up to `max_degree`.
    Bounded { max_degree: u32 },
}

/// Result of trying to extend a class across one missing vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexExtension {
    pub vertex: String,
    /// Neighbors of `vertex`, ascending by id, in congruence order.
    pub neighbors: Vec<String>,
    pub system: CongruenceSystem,
    pub regime: Regime,
    pub certificate: ExtensionCertificate,
}

/// Sets up and solves the congruences at `v` for a class on `g - v`.
pub fn extend_vertex(
    g: &LabeledGraph,
    sub: &LabeledGraph,
    cls: &GradedClass,
    v: &str,
    opts: ExtendOptions,
) -> Result<VertexExtension> {
    let vi = g.index_of(v)?;
    if sub.contains(v) || sub.num_vertices() + 1 != g.num_vertices() {
        return Err(Error::Precondition(format!(
            "subgraph must be the graph minus exactly `{v}`"
        )));
    }
    sub.check_induced_in(g)?;
    if !is_class(sub, cls)?.is_valid() {
        return Err(Error::Precondition("input is not a class on the subgraph".into()));
    }
    extend_unchecked(g, vi, cls, opts)
}

fn extend_unchecked(
    g: &LabeledGraph,
    v: usize,
    cls: &GradedClass,
    opts: ExtendOptions,
) -> Result<VertexExtension> {
    let mut nbrs: Vec<(usize, usize)> = g.neighbors(v).to_vec();
    nbrs.sort_by(|a, b| g.id(a.0).cmp(g.id(b.0)));
    let moduli = nbrs.iter().map(|&(_, e)| g.label_from(v, e)).collect();
    let targets = nbrs
        .iter()
        .map(|&(w, _)| cls.value(g.id(w)).cloned())
        .collect::<Result<Vec<_>>>()?;
    // an isolated vertex gives the empty system, solved by 0
    let system = CongruenceSystem::new(g.nvars(), moduli, targets)?;
    let (regime, certificate) = if linear_independent(system.moduli())? {
        (Regime::Independent, crt_solve(&system)?)
    } else {
        let max_degree = system.max_target_degree() + opts.slack;
        (Regime::Bounded { max_degree }, crt_solve_bounded(&system, max_degree)?)
    };
    Ok(VertexExtension {
        vertex: g.id(v).to_string(),
        neighbors: nbrs.iter().map(|&(w, _)| g.id(w).to_string()).collect(),
        system,
        regime,
        certificate,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceOutcome {
    Extended(GradedClass),
    Failed { step: usize, extension: VertexExtension },
}

impl SequenceOutcome {
    pub fn is_extended(&self) -> bool {
        matches!(self, SequenceOutcome::Extended(_))
    }
}

/// Adds the vertices of `order` one at a time, extending `cls` across each
/// induced step.
pub fn extend_sequence<S: AsRef<str>>(
    g: &LabeledGraph,
    sub: &LabeledGraph,
    cls: &GradedClass,
    order: &[S],
    opts: ExtendOptions,
) -> Result<SequenceOutcome> {
    sub.check_induced_in(g)?;
    let order_idx = completion_order(g, sub, order)?;
    if !is_class(sub, cls)?.is_valid() {
        return Err(Error::Precondition("input is not a class on the subgraph".into()));
    }
    let mut present: BTreeSet<usize> = sub
        .ids()
        .iter()
        .map(|id| g.index_of(id))
        .collect::<Result<_>>()?;
    let mut current = crate::cohomology::restrict_class(cls, sub)?;
    for (step, &v) in order_idx.iter().enumerate() {
        present.insert(v);
        let next = g.induced_by_indices(&present);
        let nv = next.index_of(g.id(v))?;
        let ext = extend_unchecked(&next, nv, &current, opts)?;
        match ext.certificate.solution() {
            Some(f) => current.insert(g.id(v).to_string(), f.clone()),
            None => {
                return Ok(SequenceOutcome::Failed {
                    step,
                    extension: ext,
                })
            }
        }
    }
    Ok(SequenceOutcome::Extended(current))
}

/// Validates that `order` lists exactly the vertices of `g` missing from
/// `sub`, each once.
pub(crate) fn completion_order<S: AsRef<str>>(
    g: &LabeledGraph,
    sub: &LabeledGraph,
    order: &[S],
) -> Result<Vec<usize>> {
    let missing: BTreeSet<usize> = (0..g.num_vertices())
        .filter(|&v| !sub.contains(g.id(v)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(order.len());
    for id in order {
        let v = g.index_of(id.as_ref())?;
        if !missing.contains(&v) || !seen.insert(v) {
            return Err(Error::Precondition(format!(
                "order is not a permutation of the missing vertices (at `{}`)",
                id.as_ref()
            )));
        }
        out.push(v);
    }
    if seen.len() != missing.len() {
        return Err(Error::Precondition(
            "order is not a permutation of the missing vertices".into(),
        ));
    }
    Ok(out)
}

/// First basis class that fails to extend.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub degree: u32,
    pub basis_index: usize,
    pub extension: VertexExtension,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrPairReport {
    pub vertex: String,
    pub max_degree: u32,
    pub holds: bool,
    pub failure: Option<PairFailure>,
}

/// Whether every basis class of `H^d(small)`, `d <= max_degree`, extends
/// to `big`, where `small` is `big` minus one vertex. By linearity this
/// decides the Chinese remainder pair property through `max_degree`.
pub fn cr_pair_upto(
    big: &LabeledGraph,
    small: &LabeledGraph,
    max_degree: u32,
    opts: ExtendOptions,
) -> Result<CrPairReport> {
    small.check_induced_in(big)?;
    let missing: Vec<usize> = (0..big.num_vertices())
        .filter(|&v| !small.contains(big.id(v)))
        .collect();
    let [v] = missing[..] else {
        return Err(Error::Precondition(format!(
            "graphs must differ by exactly one vertex, found {}",
            missing.len()
        )));
    };
    for d in 0..=max_degree {
        let space = CohomologySpace::compute(small, d)?;
        for (k, vector) in space.basis.iter().enumerate() {
            let ext = extend_unchecked(big, v, &space.to_class(vector), opts)?;
            if !ext.certificate.is_solved() {
                return Ok(CrPairReport {
                    vertex: big.id(v).to_string(),
                    max_degree,
                    holds: false,
                    failure: Some(PairFailure {
                        degree: d,
                        basis_index: k,
                        extension: ext,
                    }),
                });
            }
        }
    }
    Ok(CrPairReport {
        vertex: big.id(v).to_string(),
        max_degree,
        holds: true,
        failure: None,
    })
}
