//! Planar 3-coloring (maximum degree 5) to disjoint paths.

use crate::embedding::RotationSystem;
use crate::error::Result;
use crate::graph::{Graph, Vertex};

use super::gadgets::Variant;
use super::{skeleton, ReductionOutput};

pub fn reduce_planar3col_to_disjoint_paths(g: &Graph, rs: &RotationSystem) -> Result<ReductionOutput> {
    skeleton::assemble(g, rs, Variant::Paths)
}

/// One path per request realizing `coloring`. Improper colorings produce
/// colliding paths.
pub fn dp_forward(out: &ReductionOutput, coloring: &[u8]) -> Result<Vec<Vec<Vertex>>> {
    skeleton::forward(out, coloring, Variant::Paths)
}

pub fn dp_backward(g: &Graph, out: &ReductionOutput, paths: &[Vec<Vertex>]) -> Result<Vec<u8>> {
    let masks = skeleton::selections(out, paths, Variant::Paths)?;
    skeleton::coloring_from_masks(g, &masks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::euler_check;
    use crate::oracle::{verify_coloring, verify_paths, ViolationKind};

    #[test]
    fn single_vertex_routes() {
        let g = Graph::new(1);
        let rs = RotationSystem::new(&g, vec![vec![]]).unwrap();
        let out = reduce_planar3col_to_disjoint_paths(&g, &rs).unwrap();
        assert_eq!(out.l0, None);
        let paths = dp_forward(&out, &[2]).unwrap();
        verify_paths(&out.instance.graph, &out.instance.requests, &paths, false).unwrap();
        assert_eq!(dp_backward(&g, &out, &paths).unwrap(), vec![2]);
    }

    #[test]
    fn k2_proper_and_improper() {
        let g = Graph::from_edges(2, [(1, 2)]).unwrap();
        let rs = RotationSystem::new(&g, vec![vec![2], vec![1]]).unwrap();
        let out = reduce_planar3col_to_disjoint_paths(&g, &rs).unwrap();
        let inst = &out.instance;
        assert!(euler_check(&inst.graph.graph, &out.embedding).unwrap().planar);
        assert_eq!(inst.requests.len(), out.registry.total_asks());
        let paths = dp_forward(&out, &[1, 2]).unwrap();
        verify_paths(&inst.graph, &inst.requests, &paths, false).unwrap();
        verify_coloring(&g, &dp_backward(&g, &out, &paths).unwrap()).unwrap();
        let bad = dp_forward(&out, &[3, 3]).unwrap();
        let v = verify_paths(&inst.graph, &inst.requests, &bad, false).unwrap_err();
        assert_eq!(v.kind, ViolationKind::Disjointness);
    }
}
