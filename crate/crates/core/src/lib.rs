//! Graph cohomology of labeled (GKM / moment) graphs over `Q[x1, ..., xn]`,
//! a Chinese remainder solver for congruences modulo linear forms, and
//! certified sufficient conditions for surjectivity of restriction maps,
//! cross-checked against an exact linear-algebra oracle.

pub mod bruhat;
pub mod cohomology;
pub mod crt;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod poly_core;

pub use cohomology::{
    cohomology_basis, is_class, restrict_class, surjective_upto, validate_gkm, ClassCheck,
    GradedClass, RestrictionOracle, SurjectivityReport,
};
pub use bruhat::{
    bruhat_leq, gen_bruhat, interval_subgraph, label_span_path_condition, label_span_sweep,
    span_condition_check, BruhatGraph, Permutation, StepwiseReport,
};
pub use crt::{
    cr_pair_upto, crt_solve, crt_solve_bounded, extend_sequence, extend_vertex,
    CongruenceSystem, ExtendOptions, ExtensionCertificate, PairWitness, SequenceOutcome,
};
pub use error::{Error, Result};
pub use geometry::{
    gen_polytope, plane_path_condition, primitive_label, sublevel_subgraph, sweep_check,
    two_face_connected, LinearFunctional, PolytopeGraph, PolytopeKind, SweepReport,
};
pub use graph::{build_graph, GraphSpec, LabeledGraph};
pub use poly_core::{LinearForm, Polynomial, Rational, RationalMatrix};
