mod common;

use common::arb_graph;
use orthodim::algebra::FieldSpec;
use orthodim::gen::{gen_random, trial_seed, GenConfig};
use orthodim::io::{parse_instance, serialize_graph, serialize_instance};
use orthodim::{Error, Family, Graph};
use proptest::prelude::*;

#[test]
fn parse_triangle() {
    let f = parse_instance("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
    assert_eq!(f.graph, Graph::complete(3));
    assert_eq!(f.modulator, None);
}

#[test]
fn parse_modulator_is_zero_based() {
    let f = parse_instance("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\nx 1\nx 2\n").unwrap();
    assert_eq!(f.modulator, Some(vec![0, 1]));
}

#[test]
fn parse_errors_carry_line_numbers() {
    assert!(matches!(parse_instance("p edge 2 1\ne 1 1\n"), Err(Error::Parse { line: 2, .. })));
    assert!(matches!(parse_instance("p edge 2 2\ne 1 2\ne 2 1\n"), Err(Error::Parse { line: 3, .. })));
    assert!(matches!(parse_instance("p edge 2 1\ne 1 3\n"), Err(Error::Parse { line: 2, .. })));
    assert!(matches!(parse_instance("e 1 2\n"), Err(Error::Parse { line: 1, .. })));
    assert!(matches!(parse_instance("p edge 2 1\nq 1\n"), Err(Error::Parse { line: 2, .. })));
    assert!(matches!(parse_instance("p edge 2 5\ne 1 2\n"), Err(Error::Parse { .. })));
    assert!(matches!(parse_instance("p edge 2 0\nd 2\nl 1 1 1\n"), Err(Error::Parse { line: 3, .. })));
}

#[test]
fn header_and_lists() {
    let text = "p edge 2 1\nd 2\nf gf3\ne 1 2\nx 2\nl 1 1 1 1\n";
    let f = parse_instance(text).unwrap();
    assert_eq!(f.d, Some(2));
    assert_eq!(f.field, Some(FieldSpec::Prime(3)));
    assert_eq!(f.lists[&0], vec![vec![1, 1]]);
    assert_eq!(serialize_instance(&f), text);
    let inst = f.subchoose(None, None).unwrap();
    assert_eq!(inst.lists[0].dim(), 1);
    assert!(inst.lists[1].is_full());
}

#[test]
fn canonicalization_is_idempotent() {
    let messy = "c x\np edge 4 3\ne 4 3\nx 3\ne 2 1\nx 1\ne 1 3\n";
    let once = serialize_instance(&parse_instance(messy).unwrap());
    assert_eq!(once, "p edge 4 3\ne 1 2\ne 1 3\ne 3 4\nx 1\nx 3\n");
    assert_eq!(serialize_instance(&parse_instance(&once).unwrap()), once);
}

#[test]
fn generator_families_hold() {
    for (i, family) in [Family::Empty, Family::Path, Family::Split, Family::Cochordal, Family::UnionSplit, Family::UnionCochordal]
        .into_iter()
        .enumerate()
    {
        for t in 0..30 {
            let cfg = GenConfig::new(9, 3, family, 0.5, trial_seed(i as u64, t));
            let inst = gen_random(&cfg).unwrap();
            assert_eq!(inst.modulator.len(), 3);
            assert!(inst.is_valid().unwrap());
        }
    }
}

#[test]
fn generator_examples() {
    let inst = gen_random(&GenConfig::new(8, 3, Family::Empty, 0.5, 7)).unwrap();
    assert!(inst.graph.is_vertex_cover(&inst.modulator));
    let again = gen_random(&GenConfig::new(8, 3, Family::Empty, 0.5, 7)).unwrap();
    assert_eq!(inst, again);
    let path = gen_random(&GenConfig::new(8, 2, Family::Path, 0.5, 7)).unwrap();
    let (rest, _) = path.graph.remove_vertices(&path.modulator).unwrap();
    assert!(rest.path_order().is_some());
    assert!(gen_random(&GenConfig::new(3, 4, Family::Empty, 0.5, 1)).is_err());
}

#[test]
fn trial_seeds_differ() {
    let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| trial_seed(1, i)).collect();
    assert_eq!(seeds.len(), 1000);
}

proptest! {
    #[test]
    fn graph_files_round_trip(g in arb_graph(9)) {
        let text = serialize_graph(&g);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back.graph, &g);
        prop_assert_eq!(serialize_instance(&back), text);
    }
}
