mod common;

use nbperc_core::graph::{generate, Family};
use nbperc_core::nonbacktracking::{
    growth_for_graph, shortest_return_lengths, smallest_certifying_ell, strong_ell_connected, GrowthOptions,
    HashimotoMatrix, PNorm,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn entries_follow_the_nonbacktracking_rule(g in common::small_graph(1, 8)) {
        let h = HashimotoMatrix::new(&g);
        let arcs = h.arcs().arcs().to_vec();
        prop_assert_eq!(arcs.len(), 2 * g.edge_count());
        for (a, x) in arcs.iter().enumerate() {
            let rev = arcs.iter().position(|y| y.tail == x.head && y.head == x.tail).unwrap();
            prop_assert_eq!(h.arcs().reverse(a), rev);
            prop_assert_eq!(h.row(a).len(), g.degree(x.head) - 1);
            for (b, y) in arcs.iter().enumerate() {
                let expected = x.head == y.tail && y.head != x.tail;
                prop_assert_eq!(h.get(a, b), expected);
            }
        }
    }

    #[test]
    fn nilpotent_iff_acyclic(g in common::small_graph(1, 9)) {
        let s = HashimotoMatrix::new(&g).spectral_radius().unwrap();
        prop_assert_eq!(s.nilpotent, !g.has_cycle());
        if s.nilpotent {
            prop_assert_eq!(s.rho, 0.0);
        } else {
            prop_assert!(s.rho >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn rho_is_bounded_by_degrees(g in common::small_graph(2, 9)) {
        let s = HashimotoMatrix::new(&g).spectral_radius().unwrap();
        prop_assert!(s.rho <= g.max_degree().saturating_sub(1) as f64 + 1e-9);
    }

    #[test]
    fn perron_vector_dominates_along_walks(g in common::small_graph(4, 9)) {
        let h = HashimotoMatrix::new(&g);
        let s = h.spectral_radius().unwrap();
        prop_assume!(!s.nilpotent && s.rho > 1.0 + 1e-6);
        let x = s.perron_vector.unwrap();
        // H x = rho x with x >= 0, so a walk of k OLG steps from a to b gives rho^k x_a >= x_b
        let returns = shortest_return_lengths(&h, 2 * h.dimension());
        for (a, ret) in returns.iter().enumerate() {
            if let Some(len) = ret {
                let rev = h.arcs().reverse(a);
                let steps = (*len + 1) as i32;
                prop_assert!(s.rho.powi(steps) * x[a] >= x[rev] * (1.0 - 1e-6) - 1e-12);
            }
        }
    }

    #[test]
    fn walk_norm_ordering(g in common::small_graph(3, 9), m in 1usize..30) {
        let g1 = growth_for_graph(&g, &GrowthOptions::new(PNorm::L1, m));
        let g2 = growth_for_graph(&g, &GrowthOptions::new(PNorm::L2, m));
        for (a, b) in g1.per_seed.iter().zip(&g2.per_seed) {
            for (l1, l2) in a.lambda_sequence.iter().zip(&b.lambda_sequence) {
                // walk counts are integers, so |v|_1 <= |v|_2^2 and |v|_2 <= |v|_1
                prop_assert!(l1.sqrt() <= l2 + 1e-9);
                prop_assert!(*l2 <= l1 + 1e-9);
            }
        }
    }
}

#[test]
fn regular_graphs_have_rho_degree_minus_one() {
    for d in 2..=6 {
        for seed in 0..3 {
            let g = generate(&Family::RandomRegular { n: 40, d, seed }).unwrap();
            let r = HashimotoMatrix::new(&g).spectral_radius().unwrap().rho;
            assert!((r - (d - 1) as f64).abs() < 1e-8, "d={d} seed={seed} rho={r}");
        }
    }
}

#[test]
fn complete_bipartite_closed_form() {
    // every arc alternates between sides, so rho^2 = (m - 1)(n - 1)
    for (m, n) in [(2, 3), (3, 5), (4, 4), (2, 7)] {
        let g = common::complete_bipartite(m, n);
        let r = HashimotoMatrix::new(&g).spectral_radius().unwrap().rho;
        let expected = (((m - 1) * (n - 1)) as f64).sqrt();
        assert!((r - expected).abs() < 1e-7, "K{m},{n}: {r} vs {expected}");
    }
}

#[test]
fn certified_ell_matches_monotone_checks() {
    for g in [
        generate(&Family::Complete { n: 5 }).unwrap(),
        generate(&Family::Petersen).unwrap(),
        common::complete_bipartite(3, 3),
        generate(&Family::RandomRegular { n: 30, d: 3, seed: 4 }).unwrap(),
    ] {
        let h = HashimotoMatrix::new(&g);
        let ell = smallest_certifying_ell(&h, 64).unwrap();
        assert!(strong_ell_connected(&h, ell).holds);
        assert!(ell == 1 || !strong_ell_connected(&h, ell - 1).holds);
    }
}

#[test]
fn finite_growth_matches_rho() {
    let g = generate(&Family::RandomRegular { n: 30, d: 4, seed: 2 }).unwrap();
    let gr = growth_for_graph(&g, &GrowthOptions::new(PNorm::L1, 100));
    assert!((gr.sup_liminf - 3.0).abs() < 1e-9);
    assert!((gr.sup_limsup - 3.0).abs() < 1e-9);
}
