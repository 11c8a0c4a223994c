mod common;

use common::{dense_rank, graph_from_mask, known_od_real, known_real_family};
use num_rational::BigRational;
use orthodim::algebra::PrimeField;
use orthodim::gen::{gen_random, trial_seed, GenConfig};
use orthodim::kernels::*;
use orthodim::solver::{decide_od, SearchLimits};
use orthodim::{Error, Family, Graph};
use proptest::prelude::*;

fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn od(g: &Graph, d: usize, p: u32) -> bool {
    decide_od(g, d, gf(p), &SearchLimits::default()).unwrap().is_some()
}

/// Pascal's triangle.
fn pascal(n: usize, k: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

/// Sets `S` (bitmasks over sorted `x`) with `m <= |S| <= d` that lie inside
/// some outside vertex's neighborhood, by scanning every subset of `x`.
fn qualifying_sets(g: &Graph, x: &[usize], m: usize, d: usize) -> Vec<u32> {
    let outside: Vec<usize> = (0..g.n()).filter(|v| !x.contains(v)).collect();
    (0u32..1 << x.len())
        .filter(|s| (m..=d).contains(&(s.count_ones() as usize)))
        .filter(|s| {
            outside.iter().any(|&w| (0..x.len()).all(|i| s >> i & 1 == 0 || g.has_edge(w, x[i])))
        })
        .collect()
}

fn corpus(trials: u64, seed: u64) -> Vec<(Graph, Vec<usize>)> {
    (0..trials)
        .map(|t| {
            let s = trial_seed(seed, t);
            let n = 4 + (s % 7) as usize;
            let k = 1 + (s / 7 % 5) as usize;
            let inst = gen_random(&GenConfig::new(n, k.min(n), Family::Empty, 0.5, s)).unwrap();
            (inst.graph, inst.modulator)
        })
        .collect()
}

#[test]
fn binomial_matches_pascal() {
    for n in 0..40 {
        for k in 0..=n + 1 {
            assert_eq!(binomial(n, k), pascal(n, k), "C({n},{k})");
        }
    }
}

#[test]
fn bound_examples() {
    assert_eq!(k_graph_bound(4, 1, 3), 18);
    assert_eq!(real_kernel_bound(4, 3), 4 + 66);
}

#[test]
fn k_graph_examples() {
    let star = Graph::complete_bipartite(1, 3);
    let kg = build_k_graph(&star, &[0], 1, 3).unwrap();
    assert_eq!(kg.graph.n(), 2);
    assert_eq!(kg.graph.m(), 1);
    assert_eq!(kg.subsets, vec![vec![0]]);
    assert_eq!(kg.witness, vec![1]);

    let empty = Graph::new(5);
    let kg = build_k_graph(&empty, &[1, 3], 1, 3).unwrap();
    assert_eq!(kg.graph, Graph::new(2));

    assert!(matches!(build_k_graph(&Graph::cycle(4).unwrap(), &[0], 1, 2), Err(Error::NotVertexCover)));
    assert!(build_k_graph(&star, &[0], 3, 2).is_err());
    assert!(build_k_graph(&star, &[0], 0, 2).is_err());
}

#[test]
fn k_graph_matches_subset_scan() {
    for t in 0..200 {
        let s = trial_seed(5, t);
        let n = 3 + (s % 6) as usize;
        let inst = gen_random(&GenConfig::new(n, 1 + (s as usize / 6) % n, Family::Empty, 0.6, s)).unwrap();
        let x = &inst.modulator;
        for (m, d) in [(1, 1), (1, 2), (1, 3), (2, 3), (3, 3)] {
            let kg = build_k_graph(&inst.graph, x, m, d).unwrap();
            let expected = qualifying_sets(&inst.graph, x, m, d);
            assert_eq!(kg.graph.n(), x.len() + expected.len());
            let (gx, _) = inst.graph.induced_subgraph(x).unwrap();
            let (top, _) = kg.graph.induced_subgraph(&(0..x.len()).collect::<Vec<_>>()).unwrap();
            assert_eq!(top, gx);
            let mut got: Vec<u32> = (x.len()..kg.graph.n())
                .map(|v| kg.graph.neighbors(v).iter().fold(0u32, |a, &i| a | 1 << i))
                .collect();
            got.sort_unstable();
            assert_eq!(got, expected);
            assert!(kg.graph.n() as u128 <= k_graph_bound(x.len(), m, d));
            assert!(kg.graph.is_vertex_cover(&(0..x.len()).collect::<Vec<_>>()));
        }
    }
}

#[test]
fn general_kernel_examples() {
    // triangle with a pendant vertex on 0
    let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
    let out = kernel_general(&g, &[0, 1, 2], 3).unwrap();
    assert!(out.graph.n() <= 10);
    assert!(out.report.within_bound);
    assert_eq!(od(&g, 3, 2), od(&out.graph, 3, 2));

    let out = kernel_general(&Graph::new(0), &[], 3).unwrap();
    assert_eq!(out.graph.n(), 0);

    let c5 = Graph::cycle(5).unwrap();
    let lim = SearchLimits::default();
    let eq = verify_kernel_equivalence(&c5, &[0, 2, 3], 3, gf(2), KernelAlgorithm::General, &lim).unwrap();
    assert_eq!(eq, Equivalence::Agree(true));
    let k4 = Graph::complete(4);
    let eq = verify_kernel_equivalence(&k4, &[0, 1, 2], 3, gf(2), KernelAlgorithm::General, &lim).unwrap();
    assert_eq!(eq, Equivalence::Agree(false));
}

#[test]
fn general_kernel_preserves_decisions() {
    for (i, (g, x)) in corpus(120, 21).into_iter().enumerate() {
        for p in [2, 3] {
            let out = kernel_general(&g, &x, 3).unwrap();
            assert!(out.report.within_bound);
            assert!(out.graph.is_vertex_cover(&out.modulator));
            assert_eq!(od(&g, 3, p), od(&out.graph, 3, p), "trial {i} p={p}");
            // the kernel of a kernel is no larger
            let again = kernel_general(&out.graph, &out.modulator, 3).unwrap();
            assert!(again.graph.n() <= out.graph.n());
        }
    }
}

#[test]
fn general_kernel_random_gf3_example() {
    let inst = gen_random(&GenConfig::new(9, 4, Family::Empty, 0.7, 99)).unwrap();
    let out = kernel_general(&inst.graph, &inst.modulator, 3).unwrap();
    assert_eq!(od(&inst.graph, 3, 3), od(&out.graph, 3, 3));
}

#[test]
fn kernel_report_json_is_key_ordered() {
    let out = kernel_general(&Graph::complete_bipartite(2, 3), &[0, 1], 2).unwrap();
    let text = serde_json::to_string(&out.report.to_json()).unwrap();
    assert_eq!(
        text,
        r#"{"algorithm":"general","bound":5,"d":2,"k":2,"m_in":6,"m_out":4,"n_in":5,"n_out":5,"within_bound":true}"#
    );
}

#[test]
fn real_kernel_span_property() {
    for (i, (g, x)) in corpus(80, 33).into_iter().enumerate() {
        let rk = kernel_real_detailed(&g, &x, 3).unwrap();
        let k = x.len();
        assert!(rk.output.graph.n() as u128 <= real_kernel_bound(k, 3), "trial {i}");
        assert_eq!(rk.output.graph.n(), k + rk.basis.len());
        let kept: Vec<_> = rk.basis.iter().map(|&j| rk.polys[j].clone()).collect();
        let r = dense_rank(&kept);
        assert_eq!(r, kept.len(), "basis is independent");
        for (j, p) in rk.polys.iter().enumerate() {
            let mut with = kept.clone();
            with.push(p.clone());
            assert_eq!(dense_rank(&with), r, "trial {i}: polynomial {j} outside the span");
        }
    }
}

#[test]
fn real_kernel_examples() {
    // no outside vertex has three neighbors in X
    let g = Graph::complete_bipartite(2, 4);
    let out = kernel_real(&g, &[0, 1], 3).unwrap();
    assert_eq!(out.graph, Graph::new(2));

    // two outside vertices with the same three neighbors: one representative
    let mut g = Graph::complete_bipartite(3, 2);
    g.add_edge(0, 1).unwrap();
    let rk = kernel_real_detailed(&g, &[0, 1, 2], 3).unwrap();
    assert_eq!(rk.kgraph.subsets, vec![vec![0, 1, 2]]);
    assert_eq!(rk.output.graph.n(), 4);

    assert!(kernel_real(&g, &[0, 1, 2], 2).is_err());
}

#[test]
fn subset_polynomial_evaluates_to_determinant() {
    // k = 3, S = X: vectors (1, a, b) per vertex
    let p = subset_polynomial(&[0, 1, 2], 3, 3).unwrap();
    let r = |v: i64| BigRational::from_integer(v.into());
    let vals: Vec<BigRational> = [1, 2, 3, 1, 5, 7, 1, 11, 13].iter().map(|&v| r(v)).collect();
    // det [[1,1,1],[2,5,11],[3,7,13]]
    let det = 1 * (5 * 13 - 11 * 7) - 1 * (2 * 13 - 11 * 3) + 1 * (2 * 7 - 5 * 3);
    assert_eq!(p.evaluate(&vals).unwrap(), r(det));
}

#[test]
fn real_kernel_preserves_known_real_decisions() {
    for g in known_real_family() {
        let x = g.min_vertex_cover(g.n()).unwrap();
        let before = known_od_real(&g).expect("family member has known value");
        let out = kernel_real(&g, &x, 3).unwrap();
        let after = known_od_real(&out.graph).expect("kernel output has known value");
        assert_eq!(before <= 3, after <= 3, "{g:?}");
    }
}

#[test]
fn hereditary_kernel_examples() {
    // no outside vertices: output equals input
    let g = Graph::complete(3);
    let out = kernel_hereditary(&g, &[0, 1, 2], 2, Family::Empty, 1, DEFAULT_PATTERN_CAP).unwrap();
    assert_eq!(out.graph, g);

    // stars: agrees with the general kernel
    for leaves in 1..6 {
        let star = Graph::complete_bipartite(1, leaves);
        let h = kernel_hereditary(&star, &[0], 3, Family::Empty, 1, DEFAULT_PATTERN_CAP).unwrap();
        let kg = build_k_graph(&star, &[0], 1, 3).unwrap();
        assert_eq!(h.graph.n(), kg.graph.n());
        for p in [2, 3] {
            assert_eq!(od(&h.graph, 3, p), od(&kg.graph, 3, p));
        }
    }

    assert!(matches!(
        kernel_hereditary(&Graph::complete(3), &[0], 2, Family::Empty, 1, 3),
        Err(Error::FamilyMismatch(_))
    ));
    assert!(matches!(
        kernel_hereditary(&Graph::complete(3), &[0], 2, Family::Split, 4, 3),
        Err(Error::CapExceeded(_))
    ));
}

#[test]
fn hereditary_kernel_is_equivalent_on_empty_family() {
    for (i, (g, x)) in corpus(80, 44).into_iter().enumerate() {
        let out = kernel_hereditary(&g, &x, 3, Family::Empty, 1, DEFAULT_PATTERN_CAP).unwrap();
        assert!(out.report.within_bound);
        for p in [2, 3] {
            assert_eq!(od(&g, 3, p), od(&out.graph, 3, p), "trial {i}");
        }
    }
}

#[test]
fn hereditary_kernel_on_split_modulators_is_sound_for_yes() {
    // the output is an induced subgraph, so YES always survives; with only
    // three-vertex patterns NO is not guaranteed to survive
    let mut agree = 0;
    let trials = 60;
    for t in 0..trials {
        let s = trial_seed(55, t);
        let inst = gen_random(&GenConfig::new(8, 2, Family::UnionSplit, 0.5, s)).unwrap();
        let out = kernel_hereditary(&inst.graph, &inst.modulator, 2, Family::UnionSplit, 3, DEFAULT_PATTERN_CAP).unwrap();
        let (a, b) = (od(&inst.graph, 2, 3), od(&out.graph, 2, 3));
        assert!(!a || b, "trial {t}");
        assert!(out.report.within_bound);
        agree += usize::from(a == b);
    }
    eprintln!("split-modulator hereditary kernel: {agree}/{trials} decisions preserved");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn general_kernel_equivalence(n in 2usize..9, mask in any::<u64>(), d in 2usize..4, p in prop_oneof![Just(2u32), Just(3u32)]) {
        let g = graph_from_mask(n, mask);
        let x = g.min_vertex_cover(n).unwrap();
        let out = kernel_general(&g, &x, d).unwrap();
        prop_assert!(out.report.within_bound);
        prop_assert_eq!(od(&g, d, p), od(&out.graph, d, p));
    }
}
