use bwdp::decomp::{
    build_branch_decomposition, min_fill_tree_decomposition, validate_tree_decomposition, BranchDecomposition,
    BuildStrategy, RootedBranchDecomposition, TreeDecomposition,
};
use bwdp::embedding::euler_check;
use bwdp::generators::{random_graph, random_hitting_set, random_planar, rng};
use bwdp::noncross::{is_noncrossing_matching, is_noncrossing_partition, positions_noncrossing};
use bwdp::oracle::{brute_hitting_set, verify_paths, HittingSetInstance};
use bwdp::reductions::{hs_backward, hs_forward, reduce_hs_to_mdp};
use proptest::prelude::*;

fn matching_strategy() -> impl Strategy<Value = Vec<(usize, usize)>> {
    (1usize..7).prop_flat_map(|m| Just((1..=2 * m).collect::<Vec<_>>()).prop_shuffle()).prop_map(|p| {
        p.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn matching_recognizers_agree(pairs in matching_strategy()) {
        let ground: Vec<usize> = (1..=2 * pairs.len()).collect();
        let a = is_noncrossing_matching(&pairs, &ground).unwrap();
        let b = positions_noncrossing(&pairs);
        let c = is_noncrossing_partition(&pairs.iter().map(|&(x, y)| vec![x, y]).collect::<Vec<_>>());
        prop_assert_eq!(a, b);
        prop_assert_eq!(a, c);
    }

    #[test]
    fn noncrossing_survives_rotation(pairs in matching_strategy(), shift in 0usize..12) {
        let n = 2 * pairs.len();
        let rot = |x: usize| (x - 1 + shift) % n + 1;
        let moved: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (rot(a), rot(b))).collect();
        prop_assert_eq!(positions_noncrossing(&pairs), positions_noncrossing(&moved));
    }

    #[test]
    fn generated_embeddings_are_planar(seed in any::<u64>(), n in 1usize..16) {
        let mut r = rng(seed);
        let s = random_planar(&mut r, n, 4, 0.7);
        prop_assert!(euler_check(&s.graph, &s.rotation).unwrap().planar);
    }

    #[test]
    fn decompositions_validate_and_round_trip(seed in any::<u64>(), n in 2usize..10) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, 0.5);
        let td = min_fill_tree_decomposition(&g);
        let w = validate_tree_decomposition(&g, &td).unwrap();
        prop_assert_eq!(w, td.width());
        prop_assert_eq!(TreeDecomposition::parse(&td.to_text()).unwrap(), td);
        prop_assume!(g.m() > 0);
        for s in [BuildStrategy::Caterpillar, BuildStrategy::FromTreeDecomposition] {
            let bd = build_branch_decomposition(&g, s).unwrap();
            bd.validate(&g).unwrap();
            let back = BranchDecomposition::parse(&bd.to_text()).unwrap();
            back.validate(&g).unwrap();
            RootedBranchDecomposition::new(&g, &back).unwrap();
        }
    }

    #[test]
    fn hitting_set_round_trip(seed in any::<u64>(), k in 1usize..4, m in 0usize..3) {
        let mut r = rng(seed);
        let inst = random_hitting_set(&mut r, k, m, 0.6);
        prop_assert_eq!(HittingSetInstance::parse(&inst.to_text()).unwrap(), inst.clone());
        let out = reduce_hs_to_mdp(&inst).unwrap();
        if let Some(sel) = brute_hitting_set(&inst).unwrap() {
            let paths = hs_forward(&inst, &out, &sel).unwrap();
            verify_paths(&out.instance.graph, &out.instance.requests, &paths, true).unwrap();
            let back = hs_backward(&inst, &out, &paths).unwrap();
            prop_assert!(inst.sets.iter().all(|s| s.iter().any(|&(row, col)| back[row - 1] == col)));
        }
    }
}
