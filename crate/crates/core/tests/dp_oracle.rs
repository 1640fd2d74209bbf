use bwdp::decomp::{BuildStrategy, RootedBranchDecomposition};
use bwdp::dp::{max_cycle_packing, solve_cycle_packing, solve_mdp, Prune};
use bwdp::generators::{connected_graphs, random_colored_instance, random_planar, rng};
use bwdp::oracle::{brute_cycle_packing, brute_mono_disjoint_paths, verify_paths};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn cycle_packing_small_connected_graphs() {
    for n in 1..=6 {
        for g in connected_graphs(n) {
            let (expect, _) = brute_cycle_packing(&g, 12).unwrap();
            let sol = max_cycle_packing(&g, BuildStrategy::Caterpillar, Prune::None, None).unwrap();
            assert_eq!(sol.best, expect, "{:?}", g.edges());
        }
    }
}

#[test]
fn cycle_packing_random_planar_both_prunes() {
    let mut r = rng(11);
    for _ in 0..60 {
        let n = r.gen_range(1..=10);
        let s = random_planar(&mut r, n, 4, 0.75);
        let (expect, _) = brute_cycle_packing(&s.graph, 12).unwrap();
        for prune in [Prune::None, Prune::Noncrossing] {
            let sol = max_cycle_packing(&s.graph, BuildStrategy::FromTreeDecomposition, prune, Some(&s.rotation)).unwrap();
            assert_eq!(sol.best, expect);
            assert_eq!(sol.stats.pruned, 0);
        }
    }
}

#[test]
fn mdp_random_instances() {
    let mut r = rng(5);
    for _ in 0..150 {
        let n = r.gen_range(2..=8);
        let inst = random_colored_instance(&mut r, n, 0.45, 3, 3);
        let brute = brute_mono_disjoint_paths(&inst.graph, &inst.requests, 64).unwrap();
        let sol = solve_mdp(&inst.graph, &inst.requests, None).unwrap();
        assert_eq!(sol.yes, brute.is_some(), "{}", bwdp::graph::write_instance(&inst));
        if let Some(w) = &sol.witness {
            verify_paths(&inst.graph, &inst.requests, w, true).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cycle_packing_is_monotone_in_l0(seed in any::<u64>(), n in 3usize..9) {
        let mut r = rng(seed);
        let s = random_planar(&mut r, n, 3, 0.8);
        prop_assume!(s.graph.m() > 0);
        let rbd = RootedBranchDecomposition::build(&s.graph, BuildStrategy::Caterpillar).unwrap();
        let mut prev = true;
        for l0 in 0..=n / 3 + 1 {
            let yes = solve_cycle_packing(&s.graph, l0, &rbd, Prune::None, None).unwrap().yes;
            prop_assert!(prev || !yes);
            prev = yes;
        }
    }
}
