//! Cycle packing over a rooted branch decomposition.
//!
//! A state `(X, M, l)` at tree edge `e` says that the graph below `e` has a
//! family of pairwise vertex-disjoint paths and cycles where the paths join
//! exactly the pairs of `M`, at least `l` of the members are cycles, and `X`
//! holds the middle-set vertices of degree two in the family.

use std::collections::HashMap;

use super::{check_covers, EdgeStat, Prune, TableStats};
use crate::decomp::{noose_orders, BuildStrategy, RootedBranchDecomposition};
use crate::embedding::RotationSystem;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::noncross::positions_noncrossing;
use crate::oracle::verify_cycles;
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CpState {
    /// Sorted.
    pub x: Vec<Vertex>,
    /// Sorted pairs `(a, b)` with `a < b`.
    pub m: Vec<(Vertex, Vertex)>,
    pub l: usize,
}

impl CpState {
    pub fn empty(l: usize) -> Self {
        CpState { x: Vec::new(), m: Vec::new(), l }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Back {
    Leaf { used: bool },
    Merge(usize, usize),
}

#[derive(Debug, Clone)]
struct Table {
    states: Vec<CpState>,
    back: Vec<Back>,
}

#[derive(Debug, Clone)]
pub struct CpSolution {
    pub yes: bool,
    /// Largest `l <= l0` reached at the root.
    pub best: usize,
    pub witness: Option<Vec<Vec<Vertex>>>,
    pub stats: TableStats,
}

fn in_sorted(v: &[Vertex], x: Vertex) -> bool {
    v.binary_search(&x).is_ok()
}

/// Combines a state of each child into the state of the parent edge, or
/// `None` when the pair is incompatible or leaves a dangling path end.
pub fn merge_cp_states(s1: &CpState, s2: &CpState, mid: &[Vertex], l0: usize) -> Option<CpState> {
    let ends = |s: &CpState| -> Vec<Vertex> { s.m.iter().flat_map(|&(a, b)| [a, b]).collect() };
    let (e1, e2) = (ends(s1), ends(s2));
    if s1.x.iter().any(|v| in_sorted(&s2.x, *v) || e2.contains(v)) || s2.x.iter().any(|v| e1.contains(v)) {
        return None;
    }
    // Union of the two matchings: every vertex has degree at most two.
    let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    for &(a, b) in s1.m.iter().chain(&s2.m) {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut verts: Vec<Vertex> = adj.keys().copied().collect();
    verts.sort_unstable();
    let mut seen: HashMap<Vertex, bool> = HashMap::new();
    let mut x: Vec<Vertex> = s1.x.iter().chain(&s2.x).copied().filter(|&v| in_sorted(mid, v)).collect();
    let mut m = Vec::new();
    let mut cycles = 0;
    // Paths first, walked from an end.
    for &start in &verts {
        if seen.contains_key(&start) || adj[&start].len() != 1 {
            continue;
        }
        let mut prev = 0;
        let mut cur = start;
        loop {
            seen.insert(cur, true);
            let next = adj[&cur].iter().copied().find(|&w| w != prev && !seen.contains_key(&w));
            match next {
                Some(w) => {
                    prev = cur;
                    cur = w;
                }
                None => break,
            }
        }
        if !in_sorted(mid, start) || !in_sorted(mid, cur) {
            return None;
        }
        m.push((start.min(cur), start.max(cur)));
    }
    for &v in &verts {
        if adj[&v].len() == 2 && in_sorted(mid, v) {
            x.push(v);
        }
        if !seen.contains_key(&v) {
            // On a cycle: mark the whole component.
            let mut prev = 0;
            let mut cur = v;
            loop {
                seen.insert(cur, true);
                let next = adj[&cur].iter().copied().find(|&w| w != prev && !seen.contains_key(&w));
                match next {
                    Some(w) => {
                        prev = cur;
                        cur = w;
                    }
                    None => break,
                }
            }
            cycles += 1;
        }
    }
    x.sort_unstable();
    m.sort_unstable();
    Some(CpState { x, m, l: (s1.l + s2.l + cycles).min(l0) })
}

fn leaf_table(edge: (Vertex, Vertex), mid: &[Vertex]) -> Table {
    let mut t = Table { states: vec![CpState::empty(0)], back: vec![Back::Leaf { used: false }] };
    if in_sorted(mid, edge.0) && in_sorted(mid, edge.1) {
        t.states.push(CpState { x: Vec::new(), m: vec![edge], l: 0 });
        t.back.push(Back::Leaf { used: true });
    }
    t
}

fn merge_tables(t1: &Table, t2: &Table, mid: &[Vertex], l0: usize) -> Table {
    let rows: Vec<Vec<(CpState, usize, usize)>> = par::map_range(t1.states.len(), |i| {
        let mut out = Vec::new();
        for (j, s2) in t2.states.iter().enumerate() {
            if let Some(s) = merge_cp_states(&t1.states[i], s2, mid, l0) {
                out.push((s, i, j));
            }
        }
        out
    });
    // Keep the first pair reaching the largest l for each (X, M).
    let mut best: HashMap<(Vec<Vertex>, Vec<(Vertex, Vertex)>), (usize, usize, usize)> = HashMap::new();
    for (s, i, j) in rows.into_iter().flatten() {
        let key = (s.x, s.m);
        match best.get_mut(&key) {
            Some(entry) if entry.0 >= s.l => {}
            Some(entry) => *entry = (s.l, i, j),
            None => {
                best.insert(key, (s.l, i, j));
            }
        }
    }
    let mut entries: Vec<(CpState, Back)> =
        best.into_iter().map(|((x, m), (l, i, j))| (CpState { x, m, l }, Back::Merge(i, j))).collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let (states, back) = entries.into_iter().unzip();
    Table { states, back }
}

/// Number of `(X, M)` shapes times the cap, the bound every table obeys.
pub fn table_bound(mid: usize, l0: usize) -> u128 {
    6u128.saturating_pow(mid as u32).saturating_mul(l0.max(1) as u128)
}

fn crossing_free(m: &[(Vertex, Vertex)], order: &[Vertex]) -> bool {
    let pos = |v: Vertex| order.iter().position(|&x| x == v).unwrap();
    let ps: Vec<(usize, usize)> = m.iter().map(|&(a, b)| (pos(a), pos(b))).collect();
    positions_noncrossing(&ps)
}

/// Decides whether `g` has `l0` vertex-disjoint cycles. `rs` is required for
/// non-crossing pruning, which only touches edges whose middle set lies on a
/// noose.
pub fn solve_cycle_packing(
    g: &Graph,
    l0: usize,
    rbd: &RootedBranchDecomposition,
    prune: Prune,
    rs: Option<&RotationSystem>,
) -> Result<CpSolution> {
    check_covers(g, rbd)?;
    let orders = match (prune, rs) {
        (Prune::None, _) => vec![None; rbd.nodes.len()],
        (Prune::Noncrossing, Some(rs)) => noose_orders(g, rs, rbd)?,
        (Prune::Noncrossing, None) => {
            return Err(Error::Precondition("non-crossing pruning needs an embedding".into()));
        }
    };
    let mut tables: Vec<Option<Table>> = vec![None; rbd.nodes.len()];
    let mut stats = TableStats::default();
    for x in rbd.postorder() {
        let node = &rbd.nodes[x];
        let mut table = match node.leaf {
            Some(e) => leaf_table(e, &node.mid),
            None if node.children.len() == 1 => {
                let c = node.children[0];
                let t = tables[c].as_ref().unwrap();
                let mut out = Table { states: Vec::new(), back: Vec::new() };
                for (i, s) in t.states.iter().enumerate() {
                    if let Some(s) = merge_cp_states(s, &CpState::empty(0), &node.mid, l0) {
                        out.states.push(s);
                        out.back.push(Back::Merge(i, usize::MAX));
                    }
                }
                out
            }
            None => {
                let (c1, c2) = (node.children[0], node.children[1]);
                merge_tables(tables[c1].as_ref().unwrap(), tables[c2].as_ref().unwrap(), &node.mid, l0)
            }
        };
        if let Some(order) = &orders[x] {
            if !order.is_empty() {
                let before = table.states.len();
                let keep: Vec<bool> = table.states.iter().map(|s| crossing_free(&s.m, order)).collect();
                let mut k = keep.iter();
                table.back.retain(|_| *k.next().unwrap());
                let mut k = keep.iter();
                table.states.retain(|_| *k.next().unwrap());
                stats.pruned += before - table.states.len();
            }
        }
        let stat = EdgeStat { node: x, mid: node.mid.len(), states: table.states.len(), bound: table_bound(node.mid.len(), l0) };
        debug_assert!(stat.states as u128 <= stat.bound, "table bound exceeded at node {x}");
        stats.edges.push(stat);
        tables[x] = Some(table);
    }
    let top = tables[rbd.top].as_ref().unwrap();
    let (best_idx, best) = top
        .states
        .iter()
        .enumerate()
        .filter(|(_, s)| s.x.is_empty() && s.m.is_empty())
        .map(|(i, s)| (i, s.l))
        .max_by_key(|&(i, l)| (l, std::cmp::Reverse(i)))
        .unwrap_or((0, 0));
    let yes = best >= l0;
    let witness = if yes && l0 > 0 {
        let mut used = Vec::new();
        collect_used(rbd, &tables, rbd.top, best_idx, &mut used);
        let cycles = split_cycles(&used);
        verify_cycles(g, l0, &cycles).map_err(|v| Error::Precondition(format!("internal witness check failed: {v}")))?;
        Some(cycles)
    } else if yes {
        Some(Vec::new())
    } else {
        None
    };
    Ok(CpSolution { yes, best, witness, stats })
}

fn collect_used(rbd: &RootedBranchDecomposition, tables: &[Option<Table>], x: usize, idx: usize, used: &mut Vec<(Vertex, Vertex)>) {
    let t = tables[x].as_ref().unwrap();
    match t.back[idx] {
        Back::Leaf { used: true } => used.push(rbd.nodes[x].leaf.unwrap()),
        Back::Leaf { used: false } => {}
        Back::Merge(i, j) => {
            let ch = &rbd.nodes[x].children;
            collect_used(rbd, tables, ch[0], i, used);
            if j != usize::MAX {
                collect_used(rbd, tables, ch[1], j, used);
            }
        }
    }
}

/// Splits a 2-regular edge set into its cycles.
fn split_cycles(edges: &[(Vertex, Vertex)]) -> Vec<Vec<Vertex>> {
    let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut verts: Vec<Vertex> = adj.keys().copied().collect();
    verts.sort_unstable();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for v in verts {
        if seen.contains(&v) {
            continue;
        }
        let mut cyc = vec![v];
        seen.insert(v);
        let mut prev = v;
        let mut cur = adj[&v][0];
        while cur != v {
            cyc.push(cur);
            seen.insert(cur);
            let next = adj[&cur].iter().copied().find(|&w| w != prev).unwrap();
            prev = cur;
            cur = next;
        }
        out.push(cyc);
    }
    out
}

/// Maximum number of vertex-disjoint cycles, computed with the cap at
/// `n / 3`. Edgeless graphs need no decomposition.
pub fn max_cycle_packing(g: &Graph, strategy: BuildStrategy, prune: Prune, rs: Option<&RotationSystem>) -> Result<CpSolution> {
    if g.m() == 0 {
        return Ok(CpSolution { yes: true, best: 0, witness: Some(Vec::new()), stats: TableStats::default() });
    }
    let rbd = RootedBranchDecomposition::build(g, strategy)?;
    let l0 = g.n() / 3;
    let mut sol = solve_cycle_packing(g, l0, &rbd, prune, rs)?;
    sol.yes = true;
    if sol.best < l0 {
        // Rebuild the witness for the value actually reached.
        let again = solve_cycle_packing(g, sol.best, &rbd, prune, rs)?;
        sol.witness = again.witness;
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::grid;
    use crate::oracle::brute_cycle_packing;

    fn triangle() -> Graph {
        Graph::from_edges(3, [(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn triangle_examples() {
        let g = triangle();
        let rbd = RootedBranchDecomposition::build(&g, BuildStrategy::Caterpillar).unwrap();
        let yes = solve_cycle_packing(&g, 1, &rbd, Prune::None, None).unwrap();
        assert!(yes.yes);
        assert_eq!(yes.witness.unwrap().len(), 1);
        let no = solve_cycle_packing(&g, 2, &rbd, Prune::None, None).unwrap();
        assert!(!no.yes);
        assert!(no.witness.is_none());
    }

    #[test]
    fn merge_examples() {
        let mid = [1, 2, 3];
        let s = CpState { x: vec![], m: vec![(1, 2)], l: 0 };
        assert_eq!(merge_cp_states(&s, &s, &mid, 5), Some(CpState { x: vec![1, 2], m: vec![], l: 1 }));
        assert_eq!(merge_cp_states(&CpState::empty(2), &CpState::empty(1), &mid, 5), Some(CpState::empty(3)));
        assert_eq!(merge_cp_states(&CpState::empty(2), &CpState::empty(1), &mid, 2), Some(CpState::empty(2)));
        let bad = CpState { x: vec![1], m: vec![], l: 0 };
        assert_eq!(merge_cp_states(&bad, &s, &mid, 5), None);
        // A path end leaving the middle set dangles.
        assert_eq!(merge_cp_states(&s, &CpState::empty(0), &[1], 5), None);
        // Two paths joined at 2 become one path; 2 becomes interior.
        let a = CpState { x: vec![], m: vec![(1, 2)], l: 0 };
        let b = CpState { x: vec![], m: vec![(2, 3)], l: 0 };
        assert_eq!(merge_cp_states(&a, &b, &mid, 5), Some(CpState { x: vec![2], m: vec![(1, 3)], l: 0 }));
    }

    #[test]
    fn grid_4x4_matches_oracle() {
        let g = grid(4, 4).unwrap();
        let (expect, _) = brute_cycle_packing(&g, 16).unwrap();
        for s in [BuildStrategy::Caterpillar, BuildStrategy::FromTreeDecomposition] {
            let sol = max_cycle_packing(&g, s, Prune::None, None).unwrap();
            assert_eq!(sol.best, expect);
            assert_eq!(sol.witness.unwrap().len(), expect);
        }
        assert_eq!(expect, 4);
    }

    #[test]
    fn noncrossing_prune_on_grid() {
        let (g, rs) = crate::embedding::grid_embedding(3, 4).unwrap();
        let a = max_cycle_packing(&g, BuildStrategy::FromTreeDecomposition, Prune::None, None).unwrap();
        let b = max_cycle_packing(&g, BuildStrategy::FromTreeDecomposition, Prune::Noncrossing, Some(&rs)).unwrap();
        assert_eq!(a.best, b.best);
        assert_eq!(b.stats.pruned, 0);
        assert!(max_cycle_packing(&g, BuildStrategy::Caterpillar, Prune::Noncrossing, None).is_err());
    }
}
