//! Graph cohomology `H*(Γ)`: vertex assignments of polynomials whose
//! difference across every edge is divisible by the edge label.
//!
//! Divisibility by a linear form is a linear condition on coefficients (the
//! image under the pivot elimination must vanish), so each graded piece
//! `H^d(Γ)` is the kernel of an exact rational matrix.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::poly_core::{
    divides_linear, monomials_of_degree, LinearForm, LinearReducer, Monomial, Polynomial,
    PolynomialJson, Rational, RationalMatrix,
};

/// A polynomial at every vertex, keyed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedClass {
    values: BTreeMap<String, Polynomial>,
}

impl GradedClass {
    pub fn new(values: BTreeMap<String, Polynomial>) -> Result<Self> {
        let mut it = values.values();
        if let Some(first) = it.next() {
            for p in it {
                if p.nvars() != first.nvars() {
                    return Err(Error::Dimension {
                        expected: first.nvars(),
                        found: p.nvars(),
                    });
                }
            }
        }
        Ok(GradedClass { values })
    }

    /// The same polynomial at every vertex of `g`.
    pub fn constant(g: &LabeledGraph, p: &Polynomial) -> Self {
        GradedClass {
            values: g.ids().iter().map(|id| (id.clone(), p.clone())).collect(),
        }
    }

    /// `f(v) = sum_i v_i * x_i` on an embedded graph.
    pub fn moment(g: &LabeledGraph) -> Result<Self> {
        let n = g.nvars();
        let mut values = BTreeMap::new();
        for (v, id) in g.ids().iter().enumerate() {
            let c = g
                .coords(v)
                .ok_or_else(|| Error::Precondition(format!("vertex `{id}` has no coordinates")))?;
            let p = Polynomial::from_terms(
                n,
                c.iter().enumerate().map(|(i, a)| (Monomial::var(n, i), a.clone())),
            )?;
            values.insert(id.clone(), p);
        }
        Ok(GradedClass { values })
    }

    pub fn get(&self, id: &str) -> Option<&Polynomial> {
        self.values.get(id)
    }

    pub fn value(&self, id: &str) -> Result<&Polynomial> {
        self.values
            .get(id)
            .ok_or_else(|| Error::MissingValue(id.to_string()))
    }

    pub fn values(&self) -> &BTreeMap<String, Polynomial> {
        &self.values
    }

    pub fn insert(&mut self, id: String, p: Polynomial) {
        self.values.insert(id, p);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("class serializes")
    }

    pub fn from_spec(spec: &ClassSpec, nvars: usize) -> Result<Self> {
        let values = spec
            .values
            .iter()
            .map(|(id, p)| Ok((id.clone(), p.to_polynomial(nvars)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        GradedClass::new(values)
    }

    pub fn from_json(text: &str, nvars: usize) -> Result<Self> {
        let spec: ClassSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("class JSON: {e}")))?;
        Self::from_spec(&spec, nvars)
    }
}

/// Class JSON document: `{"values": {id: polynomial}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSpec {
    pub values: BTreeMap<String, PolynomialJson>,
}

/// Outcome of [`is_class`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ClassCheck {
    Valid,
    /// First edge (in stored order) whose label does not divide the
    /// difference `f(src) - f(dst)`.
    FailingEdge {
        src: String,
        dst: String,
        label: Polynomial,
        difference: Polynomial,
    },
}

impl ClassCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, ClassCheck::Valid)
    }
}

/// Whether `f` lies in `H*(g)`. Values on vertices outside `g` are ignored.
pub fn is_class(g: &LabeledGraph, f: &GradedClass) -> Result<ClassCheck> {
    for id in g.ids() {
        let p = f.value(id)?;
        if p.nvars() != g.nvars() {
            return Err(Error::Dimension {
                expected: g.nvars(),
                found: p.nvars(),
            });
        }
    }
    for e in g.edges() {
        let (s, d) = (g.id(e.src), g.id(e.dst));
        let difference = f.value(s)?.checked_sub(f.value(d)?)?;
        if !divides_linear(&e.label, &difference)? {
            return Ok(ClassCheck::FailingEdge {
                src: s.to_string(),
                dst: d.to_string(),
                label: e.label.to_polynomial(),
                difference,
            });
        }
    }
    Ok(ClassCheck::Valid)
}

/// Values of `f` on the vertices of `sub`.
pub fn restrict_class(f: &GradedClass, sub: &LabeledGraph) -> Result<GradedClass> {
    let values = sub
        .ids()
        .iter()
        .map(|id| Ok((id.clone(), f.value(id)?.clone())))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(GradedClass { values })
}

/// `H^d(Γ)` in coordinates. Columns are indexed by `(vertex, monomial)`
/// with vertices in ascending id order and monomials in descending graded
/// lex order; `basis` is the kernel basis read off the reduced constraint
/// matrix.
#[derive(Debug, Clone)]
pub struct CohomologySpace {
    pub degree: u32,
    pub vertex_ids: Vec<String>,
    pub monomials: Vec<Monomial>,
    pub basis: Vec<Vec<Rational>>,
    nvars: usize,
}

impl CohomologySpace {
    pub fn compute(g: &LabeledGraph, d: u32) -> Result<Self> {
        let n = g.nvars();
        let monomials = monomials_of_degree(n, d);
        let m = monomials.len();
        let mut order: Vec<usize> = (0..g.num_vertices()).collect();
        order.sort_by(|&a, &b| g.id(a).cmp(g.id(b)));
        let mut position = vec![0; g.num_vertices()];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        let cols = order.len() * m;

        let mut rows = Vec::new();
        for e in g.edges() {
            let reducer = LinearReducer::new(std::slice::from_ref(&e.label))?;
            // reduced[mu][k] = coefficient of mu in the reduction of monomial k
            let mut reduced: BTreeMap<Monomial, Vec<(usize, Rational)>> = BTreeMap::new();
            for (k, mono) in monomials.iter().enumerate() {
                for (mu, c) in reducer.reduce_monomial(mono).terms() {
                    reduced.entry(mu.clone()).or_default().push((k, c.clone()));
                }
            }
            let (s, t) = (position[e.src] * m, position[e.dst] * m);
            for entries in reduced.into_values() {
                let mut row = vec![Rational::default(); cols];
                for (k, c) in entries {
                    row[t + k] = -c.clone();
                    row[s + k] = c;
                }
                rows.push(row);
            }
        }
        let basis = RationalMatrix::from_rows(cols, rows)?.nullspace();
        Ok(CohomologySpace {
            degree: d,
            vertex_ids: order.iter().map(|&v| g.id(v).to_string()).collect(),
            monomials,
            basis,
            nvars: n,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_class(&self, vector: &[Rational]) -> GradedClass {
        let m = self.monomials.len();
        let values = self
            .vertex_ids
            .iter()
            .enumerate()
            .map(|(p, id)| {
                let poly = Polynomial::from_terms(
                    self.nvars,
                    self.monomials
                        .iter()
                        .zip(&vector[p * m..(p + 1) * m])
                        .map(|(mono, c)| (mono.clone(), c.clone())),
                )
                .expect("monomials share nvars");
                (id.clone(), poly)
            })
            .collect();
        GradedClass { values }
    }

    pub fn classes(&self) -> Vec<GradedClass> {
        self.basis.iter().map(|v| self.to_class(v)).collect()
    }

    /// Coordinates of the basis vectors restricted to the vertices of `ids`.
    fn restricted(&self, ids: &[String]) -> Result<Vec<Vec<Rational>>> {
        let m = self.monomials.len();
        let positions = ids
            .iter()
            .map(|id| {
                self.vertex_ids
                    .binary_search(id)
                    .map_err(|_| Error::UnknownVertex(id.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self
            .basis
            .iter()
            .map(|v| {
                positions
                    .iter()
                    .flat_map(|&p| v[p * m..(p + 1) * m].iter().cloned())
                    .collect()
            })
            .collect())
    }
}

/// Basis of the homogeneous degree-`d` part of `H*(g)`.
pub fn cohomology_basis(g: &LabeledGraph, d: u32) -> Result<Vec<GradedClass>> {
    Ok(CohomologySpace::compute(g, d)?.classes())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: u32,
    pub dim_full: usize,
    pub dim_sub: usize,
    pub image_dim: usize,
    pub surjective: bool,
}

/// Degreewise comparison of `H^d(Γ) -> H^d(Γ')` for `d <= max_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurjectivityReport {
    pub max_degree: u32,
    pub degrees: Vec<DegreeReport>,
}

impl SurjectivityReport {
    pub fn surjective(&self) -> bool {
        self.degrees.iter().all(|d| d.surjective)
    }

    pub fn first_failure(&self) -> Option<&DegreeReport> {
        self.degrees.iter().find(|d| !d.surjective)
    }
}

/// Holds the graded pieces of a fixed graph so that many subgraphs can be
/// compared against it.
#[derive(Debug, Clone)]
pub struct RestrictionOracle {
    graph: LabeledGraph,
    spaces: Vec<CohomologySpace>,
}

impl RestrictionOracle {
    pub fn new(g: &LabeledGraph, max_degree: u32) -> Result<Self> {
        let spaces = (0..=max_degree)
            .into_par_iter()
            .map(|d| CohomologySpace::compute(g, d))
            .collect::<Result<Vec<_>>>()?;
        Ok(RestrictionOracle {
            graph: g.clone(),
            spaces,
        })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn max_degree(&self) -> u32 {
        self.spaces.len() as u32 - 1
    }

    pub fn space(&self, d: u32) -> &CohomologySpace {
        &self.spaces[d as usize]
    }

    pub fn report(&self, sub: &LabeledGraph) -> Result<SurjectivityReport> {
        sub.check_induced_in(&self.graph)?;
        let mut sub_ids: Vec<String> = sub.ids().to_vec();
        sub_ids.sort();
        let degrees = self
            .spaces
            .par_iter()
            .map(|full| {
                let dim_sub = CohomologySpace::compute(sub, full.degree)?.dim();
                let image = full.restricted(&sub_ids)?;
                let cols = sub_ids.len() * full.monomials.len();
                let image_dim = RationalMatrix::from_rows(cols, image)?.rank();
                Ok(DegreeReport {
                    degree: full.degree,
                    dim_full: full.dim(),
                    dim_sub,
                    image_dim,
                    surjective: image_dim == dim_sub,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SurjectivityReport {
            max_degree: self.max_degree(),
            degrees,
        })
    }
}

/// Whether restriction `H^d(g) -> H^d(sub)` is onto for every `d <= max_degree`.
pub fn surjective_upto(
    g: &LabeledGraph,
    sub: &LabeledGraph,
    max_degree: u32,
) -> Result<SurjectivityReport> {
    RestrictionOracle::new(g, max_degree)?.report(sub)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GkmReport {
    pub pairwise_independent: bool,
    /// Common vertex degree, if every vertex has the same degree.
    pub regular_degree: Option<usize>,
    /// A vertex with two proportional incident labels.
    pub witness: Option<(String, Polynomial, Polynomial)>,
}

/// Pairwise non-proportionality of incident labels at each vertex, plus
/// regularity.
pub fn validate_gkm(g: &LabeledGraph) -> GkmReport {
    let mut witness = None;
    'outer: for v in 0..g.num_vertices() {
        let labels: Vec<LinearForm> = g.neighbors(v).iter().map(|&(_, e)| g.label_from(v, e)).collect();
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                if labels[i].is_proportional(&labels[j]) {
                    witness = Some((
                        g.id(v).to_string(),
                        labels[i].to_polynomial(),
                        labels[j].to_polynomial(),
                    ));
                    break 'outer;
                }
            }
        }
    }
    let degrees: BTreeSet<usize> = (0..g.num_vertices()).map(|v| g.degree(v)).collect();
    GkmReport {
        pairwise_independent: witness.is_none(),
        regular_degree: if degrees.len() == 1 { degrees.into_iter().next() } else { None },
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_core::rational::int;

    fn path3() -> LabeledGraph {
        // a -x1- b -x2- c in two variables
        LabeledGraph::new(
            2,
            vec![("a".into(), None), ("b".into(), None), ("c".into(), None)],
            vec![
                ("a".into(), "b".into(), LinearForm::from_ints(&[1, 0]).unwrap()),
                ("b".into(), "c".into(), LinearForm::from_ints(&[0, 1]).unwrap()),
            ],
            None,
        )
        .unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, 2).unwrap()
    }

    fn class(pairs: &[(&str, &str)]) -> GradedClass {
        GradedClass::new(pairs.iter().map(|(k, v)| (k.to_string(), p(v))).collect()).unwrap()
    }

    #[test]
    fn constant_is_class() {
        let g = path3();
        let f = GradedClass::constant(&g, &Polynomial::constant(2, int(5)));
        assert!(is_class(&g, &f).unwrap().is_valid());
    }

    #[test]
    fn failing_edge_reported() {
        let g = path3();
        let f = class(&[("a", "x1"), ("b", "0"), ("c", "x1")]);
        match is_class(&g, &f).unwrap() {
            ClassCheck::FailingEdge { src, dst, difference, .. } => {
                assert_eq!((src.as_str(), dst.as_str()), ("b", "c"));
                assert_eq!(difference, p("-x1"));
            }
            ClassCheck::Valid => panic!("expected failure"),
        }
    }

    #[test]
    fn missing_value_is_an_error() {
        let f = class(&[("a", "x1"), ("b", "0")]);
        assert!(matches!(is_class(&path3(), &f), Err(Error::MissingValue(_))));
    }

    #[test]
    fn non_homogeneous_class() {
        let g = path3();
        let f = class(&[("a", "x1 + 1"), ("b", "1 + x1^2"), ("c", "1 + x1^2 + x2")]);
        assert!(is_class(&g, &f).unwrap().is_valid());
    }

    #[test]
    fn path_dimensions() {
        // H^0 = constants; H^1: f(a) = f(b) + s*x1, f(c) = f(b) + t*x2 with f(b) free
        let g = path3();
        assert_eq!(cohomology_basis(&g, 0).unwrap().len(), 1);
        assert_eq!(cohomology_basis(&g, 1).unwrap().len(), 4);
        for f in cohomology_basis(&g, 1).unwrap() {
            assert!(is_class(&g, &f).unwrap().is_valid());
        }
    }

    #[test]
    fn restriction() {
        let g = path3();
        let sub = g.induced_subgraph(&["a", "b"]).unwrap();
        let f = class(&[("a", "x1"), ("b", "0"), ("c", "x2")]);
        let r = restrict_class(&f, &sub).unwrap();
        assert_eq!(r.values().len(), 2);
        let single = g.induced_subgraph(&["a"]).unwrap();
        assert_eq!(restrict_class(&r, &single).unwrap(), restrict_class(&f, &single).unwrap());
        assert!(restrict_class(&r, &g).is_err());
    }

    #[test]
    fn identity_restriction_is_surjective() {
        let g = path3();
        let rep = surjective_upto(&g, &g, 2).unwrap();
        assert!(rep.surjective());
        assert_eq!(rep.degrees.len(), 3);
    }

    #[test]
    fn gkm_check() {
        let g = LabeledGraph::new(
            1,
            vec![("a".into(), None), ("b".into(), None), ("c".into(), None)],
            vec![
                ("a".into(), "b".into(), LinearForm::from_ints(&[1]).unwrap()),
                ("a".into(), "c".into(), LinearForm::from_ints(&[2]).unwrap()),
            ],
            None,
        )
        .unwrap();
        let r = validate_gkm(&g);
        assert!(!r.pairwise_independent);
        assert_eq!(r.witness.unwrap().0, "a");
        assert_eq!(r.regular_degree, None);
    }

    #[test]
    fn class_json_round_trip() {
        let f = class(&[("a", "x1 - 1/2"), ("b", "0")]);
        let back = GradedClass::from_json(&f.to_json(), 2).unwrap();
        assert_eq!(back, f);
    }
}
