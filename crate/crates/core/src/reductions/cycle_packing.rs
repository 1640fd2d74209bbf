//! Planar 3-coloring (maximum degree 5) to cycle packing.

use crate::embedding::RotationSystem;
use crate::error::Result;
use crate::graph::{Graph, Vertex};

use super::gadgets::Variant;
use super::{skeleton, ReductionOutput};

/// Builds the packing instance; `l0` is the number of cycles asked by the
/// gadget registry.
pub fn reduce_planar3col_to_cycle_packing(g: &Graph, rs: &RotationSystem) -> Result<ReductionOutput> {
    skeleton::assemble(g, rs, Variant::Cycles)
}

/// Cycles realizing `coloring` (colors `1..=3`, indexed `v - 1`). A proper
/// coloring gives exactly `l0` disjoint cycles.
pub fn cp_forward(out: &ReductionOutput, coloring: &[u8]) -> Result<Vec<Vec<Vertex>>> {
    skeleton::forward(out, coloring, Variant::Cycles)
}

/// Reads a proper coloring of `g` off a packing of `l0` cycles.
pub fn cp_backward(g: &Graph, out: &ReductionOutput, cycles: &[Vec<Vertex>]) -> Result<Vec<u8>> {
    let masks = skeleton::selections(out, cycles, Variant::Cycles)?;
    skeleton::coloring_from_masks(g, &masks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::euler_check;
    use crate::oracle::{verify_coloring, verify_cycles};
    use crate::reductions::GadgetKind;

    fn k2() -> (Graph, RotationSystem) {
        let g = Graph::from_edges(2, [(1, 2)]).unwrap();
        let rs = RotationSystem::new(&g, vec![vec![2], vec![1]]).unwrap();
        (g, rs)
    }

    #[test]
    fn single_vertex() {
        let g = Graph::new(1);
        let rs = RotationSystem::new(&g, vec![vec![]]).unwrap();
        let out = reduce_planar3col_to_cycle_packing(&g, &rs).unwrap();
        assert_eq!(out.l0, Some(1));
        for c in 1..=3 {
            let cycles = cp_forward(&out, &[c]).unwrap();
            verify_cycles(&out.instance.graph.graph, 1, &cycles).unwrap();
            assert_eq!(cp_backward(&g, &out, &cycles).unwrap(), vec![c]);
        }
    }

    #[test]
    fn k2_round_trip() {
        let (g, rs) = k2();
        let out = reduce_planar3col_to_cycle_packing(&g, &rs).unwrap();
        let h = &out.instance.graph.graph;
        assert!(euler_check(h, &out.embedding).unwrap().planar);
        assert_eq!(out.l0, Some(2 + 51));
        assert_eq!(out.registry.of_kind(GadgetKind::Edge).next().unwrap().asks, 51);
        let cycles = cp_forward(&out, &[1, 3]).unwrap();
        assert_eq!(cycles.len(), 53);
        verify_cycles(h, 53, &cycles).unwrap();
        let col = cp_backward(&g, &out, &cycles).unwrap();
        verify_coloring(&g, &col).unwrap();
        assert!(verify_cycles(h, 53, &cp_forward(&out, &[2, 2]).unwrap()).is_err());
    }

    #[test]
    fn star_and_triangle_are_planar() {
        let tri = Graph::from_edges(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let rs = RotationSystem::new(&tri, vec![vec![2, 3], vec![3, 1], vec![1, 2]]).unwrap();
        let out = reduce_planar3col_to_cycle_packing(&tri, &rs).unwrap();
        let h = &out.instance.graph.graph;
        assert!(euler_check(h, &out.embedding).unwrap().planar);
        assert!(out.registry.of_kind(GadgetKind::Bifurcate).all(|e| e.asks == 57));
        assert!(out.registry.of_kind(GadgetKind::PathCrossing).all(|e| e.asks == 4));
        assert_eq!(out.l0, Some(3 + 3 * 57 + 3 * 51));
        let cycles = cp_forward(&out, &[1, 2, 3]).unwrap();
        verify_cycles(h, out.l0.unwrap(), &cycles).unwrap();
        verify_coloring(&tri, &cp_backward(&tri, &out, &cycles).unwrap()).unwrap();

        let star = Graph::from_edges(6, (2..=6).map(|v| (1, v))).unwrap();
        let mut rot = vec![vec![2, 3, 4, 5, 6]];
        rot.extend((2..=6).map(|_| vec![1]));
        let rs = RotationSystem::new(&star, rot).unwrap();
        let out = reduce_planar3col_to_cycle_packing(&star, &rs).unwrap();
        let h = &out.instance.graph.graph;
        assert!(euler_check(h, &out.embedding).unwrap().planar);
        assert!(h.max_degree() <= 5, "{}", h.max_degree());
        let col = [1, 2, 3, 2, 3, 2];
        let cycles = cp_forward(&out, &col).unwrap();
        verify_cycles(h, out.l0.unwrap(), &cycles).unwrap();
        verify_coloring(&star, &cp_backward(&star, &out, &cycles).unwrap()).unwrap();
    }
}
