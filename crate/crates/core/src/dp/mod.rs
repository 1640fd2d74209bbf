//! Dynamic programs over rooted branch decompositions.

pub mod cycle_packing;
pub mod mdp;

use crate::decomp::RootedBranchDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub use cycle_packing::{max_cycle_packing, solve_cycle_packing, CpSolution};
pub use mdp::{solve_disjoint_paths, solve_mdp, MdpSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Prune {
    #[default]
    None,
    Noncrossing,
}

impl Prune {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "none" => Some(Prune::None),
            "noncrossing" => Some(Prune::Noncrossing),
            _ => None,
        }
    }
}

/// Size of one table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeStat {
    pub node: usize,
    pub mid: usize,
    pub states: usize,
    pub bound: u128,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TableStats {
    pub edges: Vec<EdgeStat>,
    /// States dropped by non-crossing pruning.
    pub pruned: usize,
}

impl TableStats {
    pub fn max_states(&self) -> usize {
        self.edges.iter().map(|e| e.states).max().unwrap_or(0)
    }

    pub fn total_states(&self) -> usize {
        self.edges.iter().map(|e| e.states).sum()
    }

    pub fn bound_violations(&self) -> Vec<EdgeStat> {
        self.edges.iter().filter(|e| e.states as u128 > e.bound).copied().collect()
    }
}

/// Checks that the leaves of `rbd` are exactly the edges of `g`.
pub(crate) fn check_covers(g: &Graph, rbd: &RootedBranchDecomposition) -> Result<()> {
    let mut leaves: Vec<_> = rbd.nodes.iter().filter_map(|n| n.leaf).collect();
    leaves.sort_unstable();
    if leaves != g.edges() {
        return Err(Error::Decomposition("leaves do not match the graph's edges".into()));
    }
    Ok(())
}
