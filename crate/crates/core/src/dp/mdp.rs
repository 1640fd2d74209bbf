//! Monochromatic disjoint paths over a rooted branch decomposition.
//!
//! A partial solution below a tree edge is a set of vertex-disjoint path
//! fragments. Each middle-set vertex carries one status:
//!
//! * `Free`: untouched.
//! * `Sat`: interior of a fragment, or a terminal already attached to its
//!   fragment. It takes no further edges.
//! * `Trivial`: a terminal not yet attached to anything.
//! * `OpenV(w)`: end of a fragment whose other end is the middle vertex `w`.
//! * `OpenT(t)`: end of a fragment that started at terminal `t`.
//!
//! Open ends carry the fragment color (0 while only wildcards were seen).

use std::collections::{HashMap, HashSet};

use super::{check_covers, EdgeStat, TableStats};
use crate::decomp::{BuildStrategy, RootedBranchDecomposition};
use crate::error::{Error, Result};
use crate::graph::{compatible, ColoredGraph, Graph, RequestSet, Vertex};
use crate::oracle::verify_paths;
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Free,
    Sat,
    Trivial,
    OpenV { partner: Vertex, color: u32 },
    OpenT { terminal: Vertex, color: u32 },
}

/// Statuses aligned with the sorted middle set.
pub type MdpState = Vec<Status>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Back {
    Leaf { used: bool },
    Merge(usize, usize),
}

#[derive(Debug, Clone)]
struct Table {
    states: Vec<MdpState>,
    back: Vec<Back>,
}

#[derive(Debug, Clone)]
pub struct MdpSolution {
    pub yes: bool,
    /// `paths[i]` joins request `i`.
    pub witness: Option<Vec<Vec<Vertex>>>,
    pub stats: TableStats,
}

struct Ctx<'a> {
    cg: &'a ColoredGraph,
    /// Request index of each terminal.
    owner: Vec<Option<usize>>,
}

impl Ctx<'_> {
    fn color(&self, v: Vertex) -> u32 {
        self.cg.color(v)
    }

    fn is_terminal(&self, v: Vertex) -> bool {
        self.owner[v].is_some()
    }
}

fn join(a: u32, b: u32) -> Option<u32> {
    if compatible(a, b) {
        Some(a.max(b))
    } else {
        None
    }
}

fn pos(mid: &[Vertex], v: Vertex) -> Option<usize> {
    mid.binary_search(&v).ok()
}

fn leaf_table(ctx: &Ctx<'_>, (x, y): (Vertex, Vertex), mid: &[Vertex]) -> Table {
    let mut t = Table { states: Vec::new(), back: Vec::new() };
    let push = |assign: [(Vertex, Status); 2], used: bool, t: &mut Table| {
        let mut st = vec![Status::Free; mid.len()];
        for (v, s) in assign {
            match pos(mid, v) {
                Some(i) => st[i] = s,
                None => {
                    if matches!(s, Status::Trivial | Status::OpenV { .. } | Status::OpenT { .. }) {
                        return;
                    }
                }
            }
        }
        t.states.push(st);
        t.back.push(Back::Leaf { used });
    };
    let color = join(ctx.color(x), ctx.color(y));
    let (ox, oy) = (ctx.owner[x], ctx.owner[y]);
    let same_request = ox.is_some() && ox == oy;
    if !(same_request && color.is_some()) {
        let idle = |v: Vertex| if ctx.is_terminal(v) { Status::Trivial } else { Status::Free };
        push([(x, idle(x)), (y, idle(y))], false, &mut t);
    }
    if let Some(c) = color {
        match (ox, oy) {
            (Some(_), Some(_)) => {
                if same_request {
                    push([(x, Status::Sat), (y, Status::Sat)], true, &mut t);
                }
            }
            (Some(_), None) => push([(x, Status::Sat), (y, Status::OpenT { terminal: x, color: c })], true, &mut t),
            (None, Some(_)) => push([(x, Status::OpenT { terminal: y, color: c }), (y, Status::Sat)], true, &mut t),
            (None, None) => push(
                [(x, Status::OpenV { partner: y, color: c }), (y, Status::OpenV { partner: x, color: c })],
                true,
                &mut t,
            ),
        }
    }
    t
}

/// Auxiliary multigraph node: a real vertex or the token of a terminal that
/// started a fragment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Node {
    V(Vertex),
    T(Vertex),
}

fn merge_states(
    ctx: &Ctx<'_>,
    s1: &[Status],
    mid1: &[Vertex],
    s2: &[Status],
    mid2: &[Vertex],
    mid: &[Vertex],
) -> Option<MdpState> {
    let get = |s: &[Status], m: &[Vertex], v: Vertex| pos(m, v).map(|i| s[i]);
    let mut all: Vec<Vertex> = mid1.iter().chain(mid2).copied().collect();
    all.sort_unstable();
    all.dedup();
    let mut result: HashMap<Vertex, Status> = HashMap::new();
    let mut adj: HashMap<Node, Vec<(Node, u32)>> = HashMap::new();
    let add = |a: Node, b: Node, c: u32, adj: &mut HashMap<Node, Vec<(Node, u32)>>| {
        adj.entry(a).or_default().push((b, c));
        adj.entry(b).or_default().push((a, c));
    };
    for &v in &all {
        let sides = [get(s1, mid1, v), get(s2, mid2, v)];
        if ctx.is_terminal(v) {
            let sat = sides.iter().filter(|s| matches!(s, Some(Status::Sat))).count();
            match sat {
                0 => result.insert(v, Status::Trivial),
                1 => result.insert(v, Status::Sat),
                _ => return None,
            };
            continue;
        }
        let mut deg = 0;
        for s in sides.iter().flatten() {
            deg += match s {
                Status::Sat => 2,
                Status::OpenV { .. } | Status::OpenT { .. } => 1,
                _ => 0,
            };
        }
        if deg > 2 {
            return None;
        }
        if sides.iter().flatten().any(|s| *s == Status::Sat) {
            result.insert(v, Status::Sat);
        } else if deg == 0 {
            result.insert(v, Status::Free);
        }
        for s in sides.iter().flatten() {
            match *s {
                Status::OpenV { partner, color } if v < partner => add(Node::V(v), Node::V(partner), color, &mut adj),
                Status::OpenT { terminal, color } => add(Node::V(v), Node::T(terminal), color, &mut adj),
                _ => {}
            }
        }
    }
    let mut nodes: Vec<Node> = adj.keys().copied().collect();
    nodes.sort_unstable();
    let mut seen: HashSet<Node> = HashSet::new();
    for &start in &nodes {
        if seen.contains(&start) || adj[&start].len() != 1 {
            continue;
        }
        if let Node::T(_) = start {
            if adj[&start].len() > 1 {
                return None;
            }
        }
        // Walk the path component from this end.
        let mut color = 0u32;
        let mut prev: Option<Node> = None;
        let mut cur = start;
        let mut interior = Vec::new();
        loop {
            seen.insert(cur);
            let next = adj[&cur].iter().find(|(w, _)| Some(*w) != prev && !seen.contains(w)).copied();
            match next {
                Some((w, c)) => {
                    color = join(color, c)?;
                    prev = Some(cur);
                    cur = w;
                    if adj[&cur].len() == 2 {
                        interior.push(cur);
                    }
                }
                None => break,
            }
        }
        let end = cur;
        for node in interior {
            match node {
                Node::V(v) => {
                    result.insert(v, Status::Sat);
                }
                Node::T(_) => return None,
            }
        }
        match (start, end) {
            (Node::T(a), Node::T(b)) => {
                if ctx.owner[a] != ctx.owner[b] {
                    return None;
                }
            }
            (Node::T(t), Node::V(v)) | (Node::V(v), Node::T(t)) => {
                pos(mid, v)?;
                result.insert(v, Status::OpenT { terminal: t, color });
            }
            (Node::V(v), Node::V(w)) => {
                pos(mid, v)?;
                pos(mid, w)?;
                result.insert(v, Status::OpenV { partner: w, color });
                result.insert(w, Status::OpenV { partner: v, color });
            }
        }
    }
    if nodes.iter().any(|n| !seen.contains(n)) {
        // Leftover components are cycles of fragments.
        return None;
    }
    for &v in &all {
        if pos(mid, v).is_none() {
            if let Some(Status::Trivial | Status::OpenV { .. } | Status::OpenT { .. }) = result.get(&v) {
                return None;
            }
        }
    }
    Some(mid.iter().map(|v| result[v]).collect())
}

fn merge_tables(ctx: &Ctx<'_>, t1: &Table, mid1: &[Vertex], t2: &Table, mid2: &[Vertex], mid: &[Vertex]) -> Table {
    let rows: Vec<Vec<(MdpState, usize, usize)>> = par::map_range(t1.states.len(), |i| {
        let mut out = Vec::new();
        for (j, s2) in t2.states.iter().enumerate() {
            if let Some(s) = merge_states(ctx, &t1.states[i], mid1, s2, mid2, mid) {
                out.push((s, i, j));
            }
        }
        out
    });
    let mut first: HashMap<MdpState, (usize, usize)> = HashMap::new();
    for (s, i, j) in rows.into_iter().flatten() {
        first.entry(s).or_insert((i, j));
    }
    let mut entries: Vec<(MdpState, Back)> = first.into_iter().map(|(s, (i, j))| (s, Back::Merge(i, j))).collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let (states, back) = entries.into_iter().unzip();
    Table { states, back }
}

/// Per-edge bound on the number of states: `(5 (C+1) max(k, m, 1))^k` for a
/// middle set of size `k`, `C` colors and `m` requests.
pub fn table_bound(mid: usize, max_color: u32, requests: usize) -> u128 {
    let base = 5u128 * (max_color as u128 + 1) * mid.max(requests).max(1) as u128;
    base.saturating_pow(mid as u32)
}

fn trivially_no(stats: TableStats) -> MdpSolution {
    MdpSolution { yes: false, witness: None, stats }
}

/// Decides whether every request can be joined by pairwise vertex-disjoint
/// monochromatic paths.
pub fn solve_mdp(cg: &ColoredGraph, req: &RequestSet, rbd: Option<&RootedBranchDecomposition>) -> Result<MdpSolution> {
    let g = &cg.graph;
    req.validate(g)?;
    let Some(owner) = req.terminal_owner(g.n()) else {
        return Ok(trivially_no(TableStats::default()));
    };
    if req.pairs.iter().any(|&(s, t)| g.degree(s) == 0 || g.degree(t) == 0 || !compatible(cg.color(s), cg.color(t))) {
        return Ok(trivially_no(TableStats::default()));
    }
    if req.is_empty() {
        return Ok(MdpSolution { yes: true, witness: Some(Vec::new()), stats: TableStats::default() });
    }
    let built;
    let rbd = match rbd {
        Some(r) => r,
        None => {
            built = RootedBranchDecomposition::build(g, BuildStrategy::FromTreeDecomposition)?;
            &built
        }
    };
    check_covers(g, rbd)?;
    let ctx = Ctx { cg, owner };
    let max_color = g.vertices().map(|v| cg.color(v)).max().unwrap_or(0);
    let mut tables: Vec<Option<Table>> = vec![None; rbd.nodes.len()];
    let mut stats = TableStats::default();
    for x in rbd.postorder() {
        let node = &rbd.nodes[x];
        let table = match node.leaf {
            Some(e) => leaf_table(&ctx, e, &node.mid),
            None => {
                let c1 = node.children[0];
                let t1 = tables[c1].as_ref().unwrap();
                if node.children.len() == 1 {
                    let empty = Table { states: vec![Vec::new()], back: vec![Back::Leaf { used: false }] };
                    let mut t = merge_tables(&ctx, t1, &rbd.nodes[c1].mid, &empty, &[], &node.mid);
                    for b in &mut t.back {
                        if let Back::Merge(i, _) = *b {
                            *b = Back::Merge(i, usize::MAX);
                        }
                    }
                    t
                } else {
                    let c2 = node.children[1];
                    let t2 = tables[c2].as_ref().unwrap();
                    merge_tables(&ctx, t1, &rbd.nodes[c1].mid, t2, &rbd.nodes[c2].mid, &node.mid)
                }
            }
        };
        let stat = EdgeStat { node: x, mid: node.mid.len(), states: table.states.len(), bound: table_bound(node.mid.len(), max_color, req.len()) };
        debug_assert!(stat.states as u128 <= stat.bound, "table bound exceeded at node {x}");
        stats.edges.push(stat);
        tables[x] = Some(table);
    }
    let top = tables[rbd.top].as_ref().unwrap();
    let Some(idx) = top.states.iter().position(|s| s.is_empty()) else {
        return Ok(trivially_no(stats));
    };
    let mut used = Vec::new();
    collect_used(rbd, &tables, rbd.top, idx, &mut used);
    let paths = trace_paths(&used, req);
    verify_paths(cg, req, &paths, true).map_err(|v| Error::Precondition(format!("internal witness check failed: {v}")))?;
    Ok(MdpSolution { yes: true, witness: Some(paths), stats })
}

/// Plain vertex-disjoint paths: every vertex gets the wildcard color.
pub fn solve_disjoint_paths(g: &Graph, req: &RequestSet, rbd: Option<&RootedBranchDecomposition>) -> Result<MdpSolution> {
    solve_mdp(&ColoredGraph::uncolored(g.clone()), req, rbd)
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

fn trace_paths(used: &[(Vertex, Vertex)], req: &RequestSet) -> Vec<Vec<Vertex>> {
    let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    for &(a, b) in used {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    req.pairs
        .iter()
        .map(|&(s, t)| {
            let mut path = vec![s];
            let mut prev = 0;
            let mut cur = s;
            while cur != t {
                let Some(next) = adj.get(&cur).and_then(|l| l.iter().copied().find(|&w| w != prev)) else { break };
                prev = cur;
                cur = next;
                path.push(cur);
            }
            path
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::grid;
    use crate::oracle::brute_mono_disjoint_paths;

    fn colored(n: usize, edges: &[(usize, usize)], colors: &[u32]) -> ColoredGraph {
        ColoredGraph::new(Graph::from_edges(n, edges.iter().copied()).unwrap(), colors).unwrap()
    }

    #[test]
    fn single_edge() {
        let cg = colored(2, &[(1, 2)], &[0, 0]);
        let sol = solve_mdp(&cg, &RequestSet::new(vec![(1, 2)]), None).unwrap();
        assert!(sol.yes);
        assert_eq!(sol.witness.unwrap(), vec![vec![1, 2]]);
    }

    #[test]
    fn path_colors() {
        let r = RequestSet::new(vec![(1, 3)]);
        assert!(!solve_mdp(&colored(3, &[(1, 2), (2, 3)], &[1, 2, 1]), &r, None).unwrap().yes);
        let sol = solve_mdp(&colored(3, &[(1, 2), (2, 3)], &[1, 0, 1]), &r, None).unwrap();
        assert!(sol.yes);
        assert_eq!(sol.witness.unwrap(), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn plain_examples() {
        let k4 = Graph::from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(solve_disjoint_paths(&k4, &RequestSet::new(vec![(1, 2), (3, 4)]), None).unwrap().yes);
        let p4 = Graph::from_edges(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(!solve_disjoint_paths(&p4, &RequestSet::new(vec![(1, 3), (2, 4)]), None).unwrap().yes);
    }

    #[test]
    fn grid_2x3_forced_routing() {
        // 1 2 3 / 4 5 6: requests 1-6 and 3-4 cross the grid; colors block
        // the middle column for one of them.
        let g = grid(2, 3).unwrap();
        for colors in [[1, 0, 2, 2, 0, 1], [1, 1, 2, 2, 2, 1], [1, 2, 2, 2, 1, 1]] {
            let cg = ColoredGraph::new(g.clone(), &colors).unwrap();
            let r = RequestSet::new(vec![(1, 6), (3, 4)]);
            let brute = brute_mono_disjoint_paths(&cg, &r, 64).unwrap().is_some();
            assert_eq!(solve_mdp(&cg, &r, None).unwrap().yes, brute);
        }
        let cg = ColoredGraph::new(g, &[1, 1, 0, 2, 1, 1]).unwrap();
        let r = RequestSet::new(vec![(1, 6), (3, 4)]);
        let sol = solve_mdp(&cg, &r, None).unwrap();
        assert_eq!(sol.yes, brute_mono_disjoint_paths(&cg, &r, 64).unwrap().is_some());
    }

    #[test]
    fn shared_terminal_is_no() {
        let cg = colored(3, &[(1, 2), (2, 3)], &[0, 0, 0]);
        assert!(!solve_mdp(&cg, &RequestSet::new(vec![(1, 2), (2, 3)]), None).unwrap().yes);
    }
}
