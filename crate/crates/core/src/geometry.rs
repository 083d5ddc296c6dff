//! Edge graphs of polytopes embedded in `Q^n`: generators for hypercubes,
//! simplices and products, 2-face connectivity, sublevel subgraphs of a
//! generic linear functional, and the plane-path condition.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::poly_core::rational::{format_rational, parse_csv};
use crate::poly_core::{LinearForm, Rational, RationalMatrix};

fn rank_of(vectors: Vec<Vec<Rational>>, dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RationalMatrix::from_rows(dim, vectors)
        .expect("vectors share a dimension")
        .rank()
}

fn difference(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Dimension of the affine span of `points`.
pub fn affine_dimension(points: &[&[Rational]]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    rank_of(rest.iter().map(|p| difference(p, first)).collect(), first.len())
}

/// The shortest integral vector pointing from `v` to `w`.
pub fn primitive_label(v: &[Rational], w: &[Rational]) -> Result<LinearForm> {
    if v.len() != w.len() {
        return Err(Error::Dimension {
            expected: v.len(),
            found: w.len(),
        });
    }
    let diff = difference(w, v);
    if diff.iter().all(Zero::is_zero) {
        return Err(Error::InvalidLabel("endpoints coincide".into()));
    }
    let lcm = diff
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = diff.iter().map(|c| (c * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    LinearForm::new(
        ints.into_iter()
            .map(|c| Rational::from_integer(c / &gcd))
            .collect(),
    )
}

/// A linear function on the ambient space, used as a sweep direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunctional(Vec<Rational>);

impl LinearFunctional {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::Precondition("linear functional is zero".into()));
        }
        Ok(LinearFunctional(coeffs))
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// Comma-separated rationals, e.g. `1,2,4`.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_csv(s)?)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.0.iter().zip(point).map(|(a, b)| a * b).sum()
    }
}

/// A polytope edge graph with coordinates and 2-faces. Labels are primitive
/// edge directions; every 2-face is a planar polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeGraph(LabeledGraph);

impl PolytopeGraph {
    pub fn new(g: LabeledGraph) -> Result<Self> {
        if !g.is_embedded() {
            return Err(Error::InvalidPolytope("every vertex needs coordinates".into()));
        }
        let Some(faces) = g.two_faces() else {
            return Err(Error::InvalidPolytope("2-face list is missing".into()));
        };
        let coords = |v: usize| g.coords(v).expect("embedded");
        for e in g.edges() {
            if primitive_label(coords(e.src), coords(e.dst))? != e.label {
                return Err(Error::InvalidPolytope(format!(
                    "label of `{}`-`{}` is not the primitive edge direction",
                    g.id(e.src),
                    g.id(e.dst)
                )));
            }
        }
        for face in faces {
            let pts: Vec<&[Rational]> = face.iter().map(|&v| coords(v)).collect();
            if face.len() < 3 || affine_dimension(&pts) != 2 {
                return Err(Error::InvalidPolytope(format!(
                    "face {:?} is not a planar polygon",
                    face.iter().map(|&v| g.id(v)).collect::<Vec<_>>()
                )));
            }
            let members: BTreeSet<usize> = face.iter().copied().collect();
            let cycle = face.iter().all(|&v| {
                g.neighbors(v).iter().filter(|(w, _)| members.contains(w)).count() == 2
            }) && g.induced_by_indices(&members).is_connected();
            if !cycle {
                return Err(Error::InvalidPolytope(format!(
                    "edges of face {:?} do not form a single cycle",
                    face.iter().map(|&v| g.id(v)).collect::<Vec<_>>()
                )));
            }
        }
        let all: Vec<&[Rational]> = (0..g.num_vertices()).map(coords).collect();
        if affine_dimension(&all) >= 2 {
            for e in g.edges() {
                let covered = faces
                    .iter()
                    .any(|f| f.contains(&e.src) && f.contains(&e.dst));
                if !covered {
                    return Err(Error::InvalidPolytope(format!(
                        "edge `{}`-`{}` lies in no 2-face",
                        g.id(e.src),
                        g.id(e.dst)
                    )));
                }
            }
        }
        Ok(PolytopeGraph(g))
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.0
    }

    pub fn into_graph(self) -> LabeledGraph {
        self.0
    }

    pub fn num_two_faces(&self) -> usize {
        self.0.two_faces().map_or(0, <[_]>::len)
    }

    fn coords(&self, v: usize) -> &[Rational] {
        self.0.coords(v).expect("polytope graphs are embedded")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolytopeKind {
    Hypercube(usize),
    Simplex(usize),
    Product(Box<PolytopeKind>, Box<PolytopeKind>),
}

pub fn gen_polytope(kind: &PolytopeKind) -> Result<PolytopeGraph> {
    match kind {
        PolytopeKind::Hypercube(n) => hypercube(*n),
        PolytopeKind::Simplex(n) => simplex(*n),
        PolytopeKind::Product(a, b) => product(&gen_polytope(a)?, &gen_polytope(b)?),
    }
}

fn digits_id(point: &[u8]) -> String {
    point.iter().map(|d| char::from(b'0' + d)).collect()
}

fn to_coords(point: &[u8]) -> Vec<Rational> {
    point.iter().map(|&d| Rational::from_integer(d.into())).collect()
}

/// The cube `[0,1]^n`. Vertex ids are coordinate digit strings (`"010"`).
pub fn hypercube(n: usize) -> Result<PolytopeGraph> {
    if n == 0 {
        return Err(Error::Precondition("dimension must be at least 1".into()));
    }
    let points: Vec<Vec<u8>> = (0..1u32 << n)
        .map(|k| (0..n).map(|i| ((k >> (n - 1 - i)) & 1) as u8).collect())
        .collect();
    let vertices = points
        .iter()
        .map(|p| (digits_id(p), Some(to_coords(p))))
        .collect();
    let mut edges = Vec::new();
    for p in &points {
        for i in 0..n {
            if p[i] == 0 {
                let mut q = p.clone();
                q[i] = 1;
                edges.push((digits_id(p), digits_id(&q), LinearForm::var(n, i)));
            }
        }
    }
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for p in points.iter().filter(|p| p[i] == 0 && p[j] == 0) {
                let corner = |a: u8, b: u8| {
                    let mut q = p.clone();
                    q[i] = a;
                    q[j] = b;
                    digits_id(&q)
                };
                faces.push(vec![corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)]);
            }
        }
    }
    PolytopeGraph::new(LabeledGraph::new(n, vertices, edges, Some(faces))?)
}

/// The standard simplex with vertices `0, e_1, ..., e_n`.
pub fn simplex(n: usize) -> Result<PolytopeGraph> {
    if n == 0 {
        return Err(Error::Precondition("dimension must be at least 1".into()));
    }
    let points: Vec<Vec<u8>> = (0..=n)
        .map(|k| (0..n).map(|i| u8::from(k > 0 && i == k - 1)).collect())
        .collect();
    let coords: Vec<Vec<Rational>> = points.iter().map(|p| to_coords(p)).collect();
    let ids: Vec<String> = points.iter().map(|p| digits_id(p)).collect();
    let vertices = ids.iter().cloned().zip(coords.iter().cloned().map(Some)).collect();
    let mut edges = Vec::new();
    for a in 0..=n {
        for b in a + 1..=n {
            edges.push((ids[a].clone(), ids[b].clone(), primitive_label(&coords[a], &coords[b])?));
        }
    }
    let mut faces = Vec::new();
    for a in 0..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                faces.push(vec![ids[a].clone(), ids[b].clone(), ids[c].clone()]);
            }
        }
    }
    PolytopeGraph::new(LabeledGraph::new(n, vertices, edges, Some(faces))?)
}

/// Cartesian product. Vertex ids are concatenated (with a `:` separator
/// unless the first factor's ids share one length).
pub fn product(p: &PolytopeGraph, q: &PolytopeGraph) -> Result<PolytopeGraph> {
    let (gp, gq) = (p.graph(), q.graph());
    let (np, nq) = (gp.nvars(), gq.nvars());
    let n = np + nq;
    let fixed_width = gp.ids().iter().map(|s| s.chars().count()).collect::<BTreeSet<_>>().len() <= 1;
    let id = |a: usize, b: usize| {
        if fixed_width {
            format!("{}{}", gp.id(a), gq.id(b))
        } else {
            format!("{}:{}", gp.id(a), gq.id(b))
        }
    };
    let pad = |form: &LinearForm, first: bool| -> LinearForm {
        let zeros = |k: usize| std::iter::repeat_n(Rational::zero(), k);
        let coeffs: Vec<Rational> = if first {
            form.coeffs().iter().cloned().chain(zeros(nq)).collect()
        } else {
            zeros(np).chain(form.coeffs().iter().cloned()).collect()
        };
        LinearForm::new(coeffs).expect("padding keeps a nonzero form")
    };

    let mut vertices = Vec::new();
    for a in 0..gp.num_vertices() {
        for b in 0..gq.num_vertices() {
            let c: Vec<Rational> = p.coords(a).iter().chain(q.coords(b)).cloned().collect();
            vertices.push((id(a, b), Some(c)));
        }
    }
    let mut edges = Vec::new();
    for e in gp.edges() {
        for b in 0..gq.num_vertices() {
            edges.push((id(e.src, b), id(e.dst, b), pad(&e.label, true)));
        }
    }
    for a in 0..gp.num_vertices() {
        for e in gq.edges() {
            edges.push((id(a, e.src), id(a, e.dst), pad(&e.label, false)));
        }
    }
    let mut faces = Vec::new();
    for f in gp.two_faces().unwrap_or_default() {
        for b in 0..gq.num_vertices() {
            faces.push(f.iter().map(|&a| id(a, b)).collect());
        }
    }
    for a in 0..gp.num_vertices() {
        for f in gq.two_faces().unwrap_or_default() {
            faces.push(f.iter().map(|&b| id(a, b)).collect());
        }
    }
    for e in gp.edges() {
        for h in gq.edges() {
            faces.push(vec![
                id(e.src, h.src),
                id(e.dst, h.src),
                id(e.dst, h.dst),
                id(e.src, h.dst),
            ]);
        }
    }
    PolytopeGraph::new(LabeledGraph::new(n, vertices, edges, Some(faces))?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceCheck {
    pub connected: bool,
    /// Vertex ids of the first 2-face whose intersection is disconnected.
    pub failing_face: Option<Vec<String>>,
}

fn face_check_indices(g: &PolytopeGraph, keep: &BTreeSet<usize>) -> FaceCheck {
    let graph = g.graph();
    for face in graph.two_faces().unwrap_or_default() {
        let inside: BTreeSet<usize> = face.iter().copied().filter(|v| keep.contains(v)).collect();
        if inside.len() <= 1 {
            continue;
        }
        if !graph.induced_by_indices(&inside).is_connected() {
            return FaceCheck {
                connected: false,
                failing_face: Some(face.iter().map(|&v| graph.id(v).to_string()).collect()),
            };
        }
    }
    FaceCheck {
        connected: true,
        failing_face: None,
    }
}

fn index_set<S: AsRef<str>>(g: &LabeledGraph, ids: &[S]) -> Result<BTreeSet<usize>> {
    ids.iter().map(|id| g.index_of(id.as_ref())).collect()
}

/// Whether the subgraph induced by `keep` meets every 2-face in a connected
/// set (empty and one-point intersections count as connected).
pub fn two_face_connected<S: AsRef<str>>(g: &PolytopeGraph, keep: &[S]) -> Result<FaceCheck> {
    Ok(face_check_indices(g, &index_set(g.graph(), keep)?))
}

/// Rejects functionals that tie two vertices (and hence are constant on
/// some edge or face).
pub fn check_generic(g: &PolytopeGraph, xi: &LinearFunctional) -> Result<Vec<Rational>> {
    let graph = g.graph();
    if xi.coeffs().len() != graph.nvars() {
        return Err(Error::Dimension {
            expected: graph.nvars(),
            found: xi.coeffs().len(),
        });
    }
    let values: Vec<Rational> = (0..graph.num_vertices()).map(|v| xi.eval(g.coords(v))).collect();
    let mut sorted: Vec<(usize, &Rational)> = values.iter().enumerate().collect();
    sorted.sort_by(|a, b| a.1.cmp(b.1));
    if let Some(w) = sorted.windows(2).find(|w| w[0].1 == w[1].1) {
        return Err(Error::NonGeneric(format!(
            "vertices `{}` and `{}` share the value {}",
            graph.id(w[0].0),
            graph.id(w[1].0),
            format_rational(w[0].1)
        )));
    }
    Ok(values)
}

/// Subgraph induced by the vertices with `xi(v) <= c`.
pub fn sublevel_subgraph(
    g: &PolytopeGraph,
    xi: &LinearFunctional,
    c: &Rational,
) -> Result<LabeledGraph> {
    let values = check_generic(g, xi)?;
    let keep: BTreeSet<usize> = (0..values.len()).filter(|&v| &values[v] <= c).collect();
    Ok(g.graph().induced_by_indices(&keep))
}

/// Vertices outside `keep`, ascending by `xi`.
pub fn ascending_order<S: AsRef<str>>(
    g: &PolytopeGraph,
    keep: &[S],
    xi: &LinearFunctional,
) -> Result<Vec<String>> {
    let values = check_generic(g, xi)?;
    let kept = index_set(g.graph(), keep)?;
    let mut rest: Vec<usize> = (0..values.len()).filter(|v| !kept.contains(v)).collect();
    rest.sort_by(|&a, &b| values[a].cmp(&values[b]));
    Ok(rest.into_iter().map(|v| g.graph().id(v).to_string()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepStep {
    pub step: usize,
    /// Vertex adjoined after this step's graph is checked.
    pub next_vertex: String,
    pub faces: FaceCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub holds: bool,
    pub order: Vec<String>,
    pub steps: Vec<SweepStep>,
}

impl SweepReport {
    pub fn first_failure(&self) -> Option<&SweepStep> {
        self.steps.iter().find(|s| !s.faces.connected)
    }
}

/// Checks that each graph `Γ_0 = keep, Γ_i = Γ_{i-1} + order[i-1]`, for
/// `i < r`, is 2-face connected. A passing sweep certifies that restriction
/// from the whole polytope graph onto `keep` is surjective.
pub fn sweep_check<S: AsRef<str>, T: AsRef<str>>(
    g: &PolytopeGraph,
    keep: &[S],
    order: &[T],
) -> Result<SweepReport> {
    let graph = g.graph();
    let mut present = index_set(graph, keep)?;
    let order_idx: Vec<usize> = order
        .iter()
        .map(|id| graph.index_of(id.as_ref()))
        .collect::<Result<_>>()?;
    let distinct: BTreeSet<usize> = order_idx.iter().copied().collect();
    let complete = distinct.len() == order_idx.len()
        && distinct.is_disjoint(&present)
        && distinct.len() + present.len() == graph.num_vertices();
    if !complete {
        return Err(Error::Precondition(
            "order must list every vertex outside the subgraph exactly once".into(),
        ));
    }
    let mut steps = Vec::with_capacity(order_idx.len());
    for (i, &v) in order_idx.iter().enumerate() {
        steps.push(SweepStep {
            step: i,
            next_vertex: graph.id(v).to_string(),
            faces: face_check_indices(g, &present),
        });
        present.insert(v);
    }
    Ok(SweepReport {
        holds: steps.iter().all(|s| s.faces.connected),
        order: order_idx.iter().map(|&v| graph.id(v).to_string()).collect(),
        steps,
    })
}

/// [`sweep_check`] with the complement ordered ascending by `xi`.
pub fn sweep_check_by<S: AsRef<str>>(
    g: &PolytopeGraph,
    keep: &[S],
    xi: &LinearFunctional,
) -> Result<SweepReport> {
    let order = ascending_order(g, keep, xi)?;
    sweep_check(g, keep, &order)
}

/// Verdict of a pairwise path condition at a missing vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathCondition {
    pub holds: bool,
    pub failing_pair: Option<(String, String)>,
}

/// Neighbors of `v` in `g`, ascending by id, after checking that `sub` is
/// `g` minus `v`.
pub(crate) fn missing_vertex_neighbors(
    g: &LabeledGraph,
    sub: &LabeledGraph,
    v: &str,
) -> Result<(usize, Vec<(usize, usize)>)> {
    let vi = g.index_of(v)?;
    if sub.contains(v) || sub.num_vertices() + 1 != g.num_vertices() {
        return Err(Error::Precondition(format!(
            "subgraph must be the graph minus exactly `{v}`"
        )));
    }
    sub.check_induced_in(g)?;
    let mut nbrs = g.neighbors(vi).to_vec();
    nbrs.sort_by(|a, b| g.id(a.0).cmp(g.id(b.0)));
    Ok((vi, nbrs))
}

/// For every pair of neighbors `v1, v2` of `v`, looks for a path from `v1`
/// to `v2` in `sub` whose vertices lie in the affine plane through
/// `v, v1, v2`.
pub fn plane_path_condition(
    g: &LabeledGraph,
    sub: &LabeledGraph,
    v: &str,
) -> Result<PathCondition> {
    if !g.is_embedded() {
        return Err(Error::Precondition("graph has no coordinates".into()));
    }
    let (vi, nbrs) = missing_vertex_neighbors(g, sub, v)?;
    let n = g.nvars();
    let origin = g.coords(vi).expect("embedded");
    let offset = |u: usize| difference(g.coords(u).expect("embedded"), origin);
    for (a, &(v1, _)) in nbrs.iter().enumerate() {
        for &(v2, _) in &nbrs[a + 1..] {
            let (d1, d2) = (offset(v1), offset(v2));
            if rank_of(vec![d1.clone(), d2.clone()], n) < 2 {
                return Err(Error::DegenerateGeometry(format!(
                    "`{v}`, `{}` and `{}` are collinear",
                    g.id(v1),
                    g.id(v2)
                )));
            }
            let on_plane = |u: usize| {
                let sid = sub.id(u);
                let gu = g.index_of(sid).expect("sub is induced in g");
                rank_of(vec![d1.clone(), d2.clone(), offset(gu)], n) == 2
            };
            let (s1, s2) = (sub.index_of(g.id(v1))?, sub.index_of(g.id(v2))?);
            if !sub.path_exists(s1, s2, on_plane, |_| true) {
                return Ok(PathCondition {
                    holds: false,
                    failing_pair: Some((g.id(v1).to_string(), g.id(v2).to_string())),
                });
            }
        }
    }
    Ok(PathCondition {
        holds: true,
        failing_pair: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_core::rational::{frac, int};

    fn pt(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn primitive_labels() {
        assert_eq!(
            primitive_label(&pt(&[0, 0, 0]), &pt(&[1, 0, 0])).unwrap(),
            LinearForm::from_ints(&[1, 0, 0]).unwrap()
        );
        assert_eq!(
            primitive_label(&pt(&[0, 0]), &pt(&[2, 4])).unwrap(),
            LinearForm::from_ints(&[1, 2]).unwrap()
        );
        assert_eq!(
            primitive_label(&pt(&[0, 0]), &[frac(1, 2), frac(1, 2)]).unwrap(),
            LinearForm::from_ints(&[1, 1]).unwrap()
        );
        assert_eq!(
            primitive_label(&pt(&[3, 0]), &pt(&[0, 0])).unwrap(),
            LinearForm::from_ints(&[-1, 0]).unwrap()
        );
        assert!(primitive_label(&pt(&[1, 1]), &pt(&[1, 1])).is_err());
    }

    #[test]
    fn generator_counts() {
        let cube = hypercube(3).unwrap();
        assert_eq!(
            (cube.graph().num_vertices(), cube.graph().num_edges(), cube.num_two_faces()),
            (8, 12, 6)
        );
        let tri = simplex(2).unwrap();
        assert_eq!(
            (tri.graph().num_vertices(), tri.graph().num_edges(), tri.num_two_faces()),
            (3, 3, 1)
        );
        let prism = product(&hypercube(1).unwrap(), &hypercube(2).unwrap()).unwrap();
        assert_eq!(
            (prism.graph().num_vertices(), prism.graph().num_edges(), prism.num_two_faces()),
            (8, 12, 6)
        );
        for n in 1..=4 {
            let c = hypercube(n).unwrap();
            let expected = if n < 2 { 0 } else { n * (n - 1) / 2 * (1 << (n - 2)) };
            assert_eq!(c.num_two_faces(), expected);
        }
        assert!(hypercube(0).is_err());
        assert!(simplex(0).is_err());
    }

    #[test]
    fn invalid_polytopes_rejected() {
        let cube = hypercube(2).unwrap().into_graph();
        // drop the face list
        let mut spec = cube.to_spec();
        spec.two_faces = None;
        let g = crate::graph::build_graph(&spec).unwrap();
        assert!(matches!(PolytopeGraph::new(g), Err(Error::InvalidPolytope(_))));
        // non-primitive label
        let mut spec = cube.to_spec();
        spec.edges[0].label = vec!["2".into(), "0".into()];
        let g = crate::graph::build_graph(&spec).unwrap();
        assert!(PolytopeGraph::new(g).is_err());
    }

    #[test]
    fn face_connectivity() {
        let cube = hypercube(3).unwrap();
        let five = ["000", "001", "011", "111", "110"];
        let chk = two_face_connected(&cube, &five).unwrap();
        assert!(!chk.connected);
        assert_eq!(chk.failing_face.unwrap(), vec!["000", "100", "110", "010"]);
        assert!(two_face_connected(&cube, cube.graph().ids()).unwrap().connected);
        assert!(two_face_connected(&cube, &["000", "100", "010"]).unwrap().connected);
    }

    #[test]
    fn sublevels() {
        let cube = hypercube(3).unwrap();
        let xi = LinearFunctional::from_ints(&[1, 2, 4]).unwrap();
        let sub = sublevel_subgraph(&cube, &xi, &frac(5, 2)).unwrap();
        assert_eq!(sub.ids(), &["000", "010", "100"]);
        assert_eq!(sublevel_subgraph(&cube, &xi, &int(-1)).unwrap().num_vertices(), 0);
        assert_eq!(sublevel_subgraph(&cube, &xi, &int(7)).unwrap().num_vertices(), 8);
        let flat = LinearFunctional::from_ints(&[1, 1, 0]).unwrap();
        assert!(matches!(
            sublevel_subgraph(&cube, &flat, &int(1)),
            Err(Error::NonGeneric(_))
        ));
    }

    #[test]
    fn sweeps() {
        let cube = hypercube(3).unwrap();
        let xi = LinearFunctional::from_ints(&[1, 2, 4]).unwrap();
        let keep = ["000", "100", "010"];
        let rep = sweep_check_by(&cube, &keep, &xi).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.steps.len(), 5);
        assert_eq!(rep.order, vec!["110", "001", "101", "011", "111"]);

        let five = ["000", "001", "011", "111", "110"];
        let rep = sweep_check(&cube, &five, &["100", "010", "101"]).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.first_failure().unwrap().step, 0);

        let all = sweep_check(&cube, cube.graph().ids(), &[] as &[&str]).unwrap();
        assert!(all.holds && all.steps.is_empty());

        assert!(sweep_check(&cube, &keep, &["110"]).is_err());
        assert!(sweep_check(&cube, &keep, &["110", "110", "001", "101", "011"]).is_err());
    }

    #[test]
    fn plane_paths() {
        let g = hypercube(3).unwrap().into_graph();
        let sub = g.without_vertex("010").unwrap();
        assert!(plane_path_condition(&g, &sub, "010").unwrap().holds);

        // with 100 gone too, the pair (000, 110) has no path in the plane z = 0
        let g7 = g.without_vertex("100").unwrap();
        let sub6 = g7.without_vertex("010").unwrap();
        let res = plane_path_condition(&g7, &sub6, "010").unwrap();
        assert!(!res.holds);
        assert_eq!(res.failing_pair, Some(("000".into(), "110".into())));

        let seg = hypercube(1).unwrap().into_graph();
        let half = seg.without_vertex("1").unwrap();
        assert!(plane_path_condition(&seg, &half, "1").unwrap().holds);

        assert!(plane_path_condition(&g, &g, "010").is_err());
    }

    #[test]
    fn collinear_neighbors_are_degenerate() {
        let v = |id: &str, x: i64| (id.to_string(), Some(pt(&[x, 0])));
        let g = LabeledGraph::new(
            2,
            vec![v("a", -1), v("o", 0), v("b", 1)],
            vec![
                ("o".into(), "a".into(), LinearForm::from_ints(&[-1, 0]).unwrap()),
                ("o".into(), "b".into(), LinearForm::from_ints(&[1, 0]).unwrap()),
            ],
            None,
        )
        .unwrap();
        let sub = g.without_vertex("o").unwrap();
        assert!(matches!(
            plane_path_condition(&g, &sub, "o"),
            Err(Error::DegenerateGeometry(_))
        ));
    }
}
