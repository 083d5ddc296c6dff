mod common;

use common::r;
use gkm_core::geometry::{
    check_generic, hypercube, plane_path_condition, product, simplex, sublevel_subgraph,
    sweep_check_by, two_face_connected, LinearFunctional, PolytopeGraph, PolytopeKind,
};
use gkm_core::{cr_pair_upto, gen_polytope, surjective_upto, validate_gkm, ExtendOptions, Rational};
use proptest::prelude::*;

fn polytopes() -> Vec<(&'static str, PolytopeGraph)> {
    vec![
        ("segment", hypercube(1).unwrap()),
        ("square", hypercube(2).unwrap()),
        ("cube", hypercube(3).unwrap()),
        ("triangle", simplex(2).unwrap()),
        ("tetrahedron", simplex(3).unwrap()),
        ("prism", product(&simplex(2).unwrap(), &hypercube(1).unwrap()).unwrap()),
    ]
}

#[test]
fn generators_satisfy_invariants() {
    let kinds = [
        PolytopeKind::Hypercube(4),
        PolytopeKind::Simplex(4),
        PolytopeKind::Product(Box::new(PolytopeKind::Hypercube(1)), Box::new(PolytopeKind::Hypercube(2))),
        PolytopeKind::Product(Box::new(PolytopeKind::Simplex(2)), Box::new(PolytopeKind::Simplex(2))),
    ];
    for kind in &kinds {
        let p = gen_polytope(kind).unwrap();
        // re-validating the graph re-runs every invariant check
        let again = PolytopeGraph::new(p.graph().clone()).unwrap();
        assert_eq!(again, p);
        assert!(validate_gkm(p.graph()).pairwise_independent, "{kind:?}");
    }
    let prism = gen_polytope(&kinds[2]).unwrap();
    assert_eq!(
        (prism.graph().num_vertices(), prism.graph().num_edges(), prism.num_two_faces()),
        (8, 12, 6)
    );
    let t4 = gen_polytope(&kinds[1]).unwrap();
    assert_eq!((t4.graph().num_edges(), t4.num_two_faces()), (10, 10));
}

#[test]
fn face_connectivity_examples() {
    let cube = hypercube(3).unwrap();
    let five = ["000", "001", "011", "111", "110"];
    let chk = two_face_connected(&cube, &five).unwrap();
    assert!(!chk.connected);
    let face = chk.failing_face.unwrap();
    assert!(face.contains(&"000".to_string()) && face.contains(&"110".to_string()));
    assert!(face.iter().all(|v| v.ends_with('0')));
    assert!(two_face_connected(&cube, cube.graph().ids()).unwrap().connected);
    assert!(two_face_connected(&cube, &["000", "100", "010"]).unwrap().connected);
}

#[test]
fn sublevel_examples() {
    let cube = hypercube(3).unwrap();
    let xi = LinearFunctional::parse("1,2,4").unwrap();
    let sub = sublevel_subgraph(&cube, &xi, &(r(5) / r(2))).unwrap();
    assert_eq!(sub.ids(), &["000", "010", "100"]);
    assert_eq!(sublevel_subgraph(&cube, &xi, &r(-1)).unwrap().num_vertices(), 0);
    assert_eq!(sublevel_subgraph(&cube, &xi, &r(100)).unwrap().num_vertices(), 8);
    let rep = sweep_check_by(&cube, sub.ids(), &xi).unwrap();
    assert!(rep.holds && rep.steps.iter().all(|s| s.faces.connected));
}

#[test]
fn plane_path_examples() {
    let g = hypercube(3).unwrap().into_graph();
    let sub = g.without_vertex("010").unwrap();
    assert!(plane_path_condition(&g, &sub, "010").unwrap().holds);
    let g7 = g.without_vertex("100").unwrap();
    let res = plane_path_condition(&g7, &g7.without_vertex("010").unwrap(), "010").unwrap();
    assert!(!res.holds);
}

#[test]
fn plane_paths_imply_pair_property() {
    for (name, p) in polytopes() {
        let g = p.graph();
        for v in g.ids() {
            let sub = g.without_vertex(v).unwrap();
            if plane_path_condition(g, &sub, v).unwrap().holds {
                let rep = cr_pair_upto(g, &sub, 3, ExtendOptions::default()).unwrap();
                assert!(rep.holds, "{name} minus {v}");
            }
        }
    }
}

fn cutoffs(values: &[Rational]) -> Vec<Rational> {
    let mut sorted = values.to_vec();
    sorted.sort();
    let mut out = vec![&sorted[0] - r(1)];
    out.extend(sorted.windows(2).map(|w| (&w[0] + &w[1]) / r(2)));
    out.push(&sorted[sorted.len() - 1] + r(1));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn sublevels_are_connected_and_certified(
        which in 0usize..6,
        coeffs in prop::collection::vec(-5i64..=5, 3),
        pick in 0usize..16,
    ) {
        let (name, p) = polytopes().swap_remove(which);
        let n = p.graph().nvars();
        let Ok(xi) = LinearFunctional::from_ints(&coeffs[..n]) else { return Ok(()) };
        let Ok(values) = check_generic(&p, &xi) else { return Ok(()) };
        let cs = cutoffs(&values);
        let c = &cs[pick % cs.len()];
        let sub = sublevel_subgraph(&p, &xi, c).unwrap();
        prop_assert!(sub.num_vertices() == 0 || sub.is_connected(), "{}", name);
        let rep = sweep_check_by(&p, sub.ids(), &xi).unwrap();
        prop_assert!(rep.holds, "{} {:?}", name, rep.first_failure());
        let oracle = surjective_upto(p.graph(), &sub, 3).unwrap();
        prop_assert!(oracle.surjective(), "{}", name);
    }
}
