//! Labeled graphs: simple graphs whose edges carry nonzero linear forms,
//! antisymmetric under reversal of orientation.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly_core::rational::{format_vector, parse_vector};
use crate::poly_core::{LinearForm, Rational};

/// An edge stored once per unordered pair. Traversing it from `dst` to
/// `src` sees the negated label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: LinearForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    nvars: usize,
    ids: Vec<String>,
    index: HashMap<String, usize>,
    coords: Vec<Option<Vec<Rational>>>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
    two_faces: Option<Vec<Vec<usize>>>,
}

/// Input for [`LabeledGraph::new`]: a vertex id and optional coordinates.
pub type VertexInput = (String, Option<Vec<Rational>>);

impl LabeledGraph {
    /// Validates and assembles a graph. Vertex order and edge order are kept
    /// as given.
    pub fn new(
        nvars: usize,
        vertices: Vec<VertexInput>,
        edges: Vec<(String, String, LinearForm)>,
        two_faces: Option<Vec<Vec<String>>>,
    ) -> Result<Self> {
        let mut ids = Vec::with_capacity(vertices.len());
        let mut index = HashMap::new();
        let mut coords = Vec::with_capacity(vertices.len());
        for (id, c) in vertices {
            if index.insert(id.clone(), ids.len()).is_some() {
                return Err(Error::DuplicateVertex(id));
            }
            if let Some(c) = &c {
                if c.len() != nvars {
                    return Err(Error::Dimension {
                        expected: nvars,
                        found: c.len(),
                    });
                }
            }
            ids.push(id);
            coords.push(c);
        }
        let lookup = |id: &str| index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()));

        let mut seen = BTreeSet::new();
        let mut stored = Vec::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); ids.len()];
        for (s, d, label) in edges {
            let (src, dst) = (lookup(&s)?, lookup(&d)?);
            if src == dst {
                return Err(Error::SelfLoop(s));
            }
            if label.nvars() != nvars {
                return Err(Error::Dimension {
                    expected: nvars,
                    found: label.nvars(),
                });
            }
            if !seen.insert((src.min(dst), src.max(dst))) {
                return Err(Error::DuplicateEdge(s, d));
            }
            if let (Some(a), Some(b)) = (&coords[src], &coords[dst]) {
                let diff: Vec<Rational> = b.iter().zip(a).map(|(x, y)| x - y).collect();
                let parallel = LinearForm::new(diff)
                    .map(|dir| dir.is_proportional(&label))
                    .unwrap_or(false);
                if !parallel {
                    return Err(Error::NotCollinear { src: s, dst: d });
                }
            }
            adjacency[src].push((dst, stored.len()));
            adjacency[dst].push((src, stored.len()));
            stored.push(Edge { src, dst, label });
        }

        let two_faces = two_faces
            .map(|faces| {
                faces
                    .iter()
                    .map(|f| f.iter().map(|id| lookup(id)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;

        Ok(LabeledGraph {
            nvars,
            ids,
            index,
            coords,
            edges: stored,
            adjacency,
            two_faces,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn coords(&self, v: usize) -> Option<&[Rational]> {
        self.coords[v].as_deref()
    }

    /// True when every vertex carries coordinates.
    pub fn is_embedded(&self) -> bool {
        self.coords.iter().all(Option::is_some)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `(neighbor, edge index)` pairs in edge insertion order.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Label of the edge traversed from `v` to `neighbor of v` through edge
    /// `e`, i.e. `e(v, w)`.
    pub fn label_from(&self, v: usize, edge: usize) -> LinearForm {
        let e = &self.edges[edge];
        if e.src == v {
            e.label.clone()
        } else {
            e.label.neg()
        }
    }

    /// `e(u, w)` if `u` and `w` are adjacent.
    pub fn label_between(&self, u: usize, w: usize) -> Option<LinearForm> {
        self.adjacency[u]
            .iter()
            .find(|&&(x, _)| x == w)
            .map(|&(_, e)| self.label_from(u, e))
    }

    pub fn are_adjacent(&self, u: usize, w: usize) -> bool {
        self.adjacency[u].iter().any(|&(x, _)| x == w)
    }

    pub fn two_faces(&self) -> Option<&[Vec<usize>]> {
        self.two_faces.as_deref()
    }

    /// Subgraph on `keep` with every edge of `self` joining two kept
    /// vertices. Coordinates and 2-faces are restricted; faces missing every
    /// kept vertex are dropped.
    pub fn induced_subgraph<S: AsRef<str>>(&self, keep: &[S]) -> Result<LabeledGraph> {
        let mut set = BTreeSet::new();
        for id in keep {
            set.insert(self.index_of(id.as_ref())?);
        }
        Ok(self.induced_by_indices(&set))
    }

    pub(crate) fn induced_by_indices(&self, keep: &BTreeSet<usize>) -> LabeledGraph {
        let mut remap = vec![usize::MAX; self.ids.len()];
        let mut ids = Vec::new();
        let mut coords = Vec::new();
        let mut index = HashMap::new();
        for v in 0..self.ids.len() {
            if keep.contains(&v) {
                remap[v] = ids.len();
                index.insert(self.ids[v].clone(), ids.len());
                ids.push(self.ids[v].clone());
                coords.push(self.coords[v].clone());
            }
        }
        let mut edges = Vec::new();
        let mut adjacency = vec![Vec::new(); ids.len()];
        for e in &self.edges {
            let (s, d) = (remap[e.src], remap[e.dst]);
            if s != usize::MAX && d != usize::MAX {
                adjacency[s].push((d, edges.len()));
                adjacency[d].push((s, edges.len()));
                edges.push(Edge {
                    src: s,
                    dst: d,
                    label: e.label.clone(),
                });
            }
        }
        let two_faces = self.two_faces.as_ref().map(|faces| {
            faces
                .iter()
                .map(|f| {
                    f.iter()
                        .filter(|&&v| remap[v] != usize::MAX)
                        .map(|&v| remap[v])
                        .collect::<Vec<_>>()
                })
                .filter(|f| !f.is_empty())
                .collect()
        });
        LabeledGraph {
            nvars: self.nvars,
            ids,
            index,
            coords,
            edges,
            adjacency,
            two_faces,
        }
    }

    /// The graph with all vertices except `v`.
    pub fn without_vertex(&self, v: &str) -> Result<LabeledGraph> {
        let drop = self.index_of(v)?;
        let keep: BTreeSet<usize> = (0..self.num_vertices()).filter(|&u| u != drop).collect();
        Ok(self.induced_by_indices(&keep))
    }

    /// Checks that `self` equals the subgraph of `g` induced by its own
    /// vertex set, with matching labels up to orientation.
    pub fn check_induced_in(&self, g: &LabeledGraph) -> Result<()> {
        if self.nvars != g.nvars {
            return Err(Error::Dimension {
                expected: g.nvars,
                found: self.nvars,
            });
        }
        let mut image = Vec::with_capacity(self.ids.len());
        for id in &self.ids {
            image.push(
                g.index_of(id)
                    .map_err(|_| Error::NotInduced(format!("vertex `{id}` is not in the graph")))?,
            );
        }
        let kept: BTreeSet<usize> = image.iter().copied().collect();
        let expected_edges = g
            .edges
            .iter()
            .filter(|e| kept.contains(&e.src) && kept.contains(&e.dst))
            .count();
        if expected_edges != self.edges.len() {
            return Err(Error::NotInduced(format!(
                "expected {expected_edges} edges, found {}",
                self.edges.len()
            )));
        }
        for e in &self.edges {
            let (s, d) = (image[e.src], image[e.dst]);
            match g.label_between(s, d) {
                Some(l) if l == e.label => {}
                _ => {
                    return Err(Error::NotInduced(format!(
                        "edge `{}`-`{}` differs from the graph",
                        self.ids[e.src], self.ids[e.dst]
                    )))
                }
            }
        }
        Ok(())
    }

    /// Same graph with edge `i` stored in the opposite orientation.
    pub fn flip_edge(&self, i: usize) -> LabeledGraph {
        let mut g = self.clone();
        let e = &mut g.edges[i];
        std::mem::swap(&mut e.src, &mut e.dst);
        e.label = e.label.neg();
        g
    }

    /// Connected components as sorted vertex index lists, ordered by their
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.ids.len()];
        let mut out = Vec::new();
        for start in 0..self.ids.len() {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether `to` is reachable from `from` using only vertices accepted by
    /// `allow_vertex` and edges accepted by `allow_edge`.
    pub(crate) fn path_exists(
        &self,
        from: usize,
        to: usize,
        allow_vertex: impl Fn(usize) -> bool,
        allow_edge: impl Fn(usize) -> bool,
    ) -> bool {
        if from == to {
            return true;
        }
        let mut seen = vec![false; self.ids.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &self.adjacency[u] {
                if seen[w] || !allow_vertex(w) || !allow_edge(e) {
                    continue;
                }
                if w == to {
                    return true;
                }
                seen[w] = true;
                queue.push_back(w);
            }
        }
        false
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            n: self.nvars,
            vertices: self
                .ids
                .iter()
                .zip(&self.coords)
                .map(|(id, c)| VertexSpec {
                    id: id.clone(),
                    coords: c.as_ref().map(|c| format_vector(c)),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    src: self.ids[e.src].clone(),
                    dst: self.ids[e.dst].clone(),
                    label: e.label.to_json(),
                })
                .collect(),
            two_faces: self.two_faces.as_ref().map(|faces| {
                faces
                    .iter()
                    .map(|f| f.iter().map(|&v| self.ids[v].clone()).collect())
                    .collect()
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("graph spec serializes")
    }

    pub fn from_json(text: &str) -> Result<LabeledGraph> {
        let spec: GraphSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
        build_graph(&spec)
    }

    /// Graphviz rendering: nodes named by id (with coordinates when present),
    /// edges in stored orientation labeled by their linear form.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for (v, id) in self.ids.iter().enumerate() {
            let label = match &self.coords[v] {
                Some(c) => format!("{id}\\n({})", format_vector(c).join(",")),
                None => id.clone(),
            };
            let _ = writeln!(out, "  \"{id}\" [label=\"{label}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.ids[e.src], self.ids[e.dst], e.label
            );
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSpec {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub src: String,
    pub dst: String,
    pub label: Vec<String>,
}

/// Graph JSON document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub n: usize,
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_faces: Option<Vec<Vec<String>>>,
}

/// Validates a graph description.
pub fn build_graph(spec: &GraphSpec) -> Result<LabeledGraph> {
    let vertices = spec
        .vertices
        .iter()
        .map(|v| {
            let c = v.coords.as_deref().map(parse_vector).transpose()?;
            Ok((v.id.clone(), c))
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = spec
        .edges
        .iter()
        .map(|e| Ok((e.src.clone(), e.dst.clone(), LinearForm::from_json(&e.label)?)))
        .collect::<Result<Vec<_>>>()?;
    LabeledGraph::new(spec.n, vertices, edges, spec.two_faces.clone())
}
