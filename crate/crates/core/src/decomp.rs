//! Tree, path and branch decompositions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use crate::embedding::RotationSystem;
use crate::error::{parse_err, Error, Result};
use crate::graph::{Graph, Vertex};

pub type Edge = (Vertex, Vertex);

fn norm(u: Vertex, v: Vertex) -> Edge {
    (u.min(v), u.max(v))
}

/// Tree decomposition with 0-based node ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    pub bags: Vec<BTreeSet<Vertex>>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    NotATree(String),
    /// A bag names a vertex the graph does not have.
    UnknownVertex(Vertex),
    VertexCoverage(Vertex),
    EdgeCoverage(Vertex, Vertex),
    /// `vertex` lies in bags `i` and `k` but not in bag `j` on the path between them.
    Connectivity { vertex: Vertex, i: usize, j: usize, k: usize },
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::NotATree(s) => write!(f, "tree: {s}"),
            TdViolation::UnknownVertex(v) => write!(f, "unknown-vertex: {v} is not a vertex of the graph"),
            TdViolation::VertexCoverage(v) => write!(f, "vertex-coverage: vertex {v} in no bag"),
            TdViolation::EdgeCoverage(u, v) => write!(f, "edge-coverage: edge {u}-{v} in no bag"),
            TdViolation::Connectivity { vertex, i, j, k } => {
                write!(f, "connectivity: vertex {vertex} in bags {i} and {k} but not {j}")
            }
        }
    }
}

fn tree_adjacency(nodes: usize, edges: &[(usize, usize)]) -> std::result::Result<Vec<Vec<usize>>, String> {
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in edges {
        if a >= nodes || b >= nodes {
            return Err(format!("tree edge {a}-{b} uses an unknown node"));
        }
        if a == b {
            return Err(format!("tree loop at node {a}"));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    if nodes == 0 {
        return Err("no nodes".into());
    }
    if edges.len() != nodes - 1 {
        return Err(format!("{nodes} nodes but {} edges", edges.len()));
    }
    let mut seen = vec![false; nodes];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if let Some(x) = seen.iter().position(|s| !s) {
        return Err(format!("node {x} is disconnected"));
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    Ok(adj)
}

fn tree_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[from] = from;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![to];
    let mut x = to;
    while x != from {
        x = prev[x];
        path.push(x);
    }
    path.reverse();
    path
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn is_path(&self) -> bool {
        match tree_adjacency(self.bags.len(), &self.edges) {
            Ok(adj) => adj.iter().all(|a| a.len() <= 2),
            Err(_) => false,
        }
    }

    pub fn to_text(&self) -> String {
        let n = self.bags.iter().flat_map(|b| b.iter()).max().copied().unwrap_or(0);
        let mut out = String::new();
        writeln!(out, "p treedec {} {}", self.bags.len(), n).unwrap();
        for (i, b) in self.bags.iter().enumerate() {
            write!(out, "b {}", i + 1).unwrap();
            for v in b {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
        for &(a, b) in &self.edges {
            writeln!(out, "t {} {}", a + 1, b + 1).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut td: Option<TreeDecomposition> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = l.split_whitespace().collect();
            let nums = |from: usize| -> Result<Vec<usize>> {
                toks[from..]
                    .iter()
                    .map(|t| t.parse::<usize>().map_err(|_| parse_err(line, format!("not a number: {t}"))))
                    .collect()
            };
            match toks[0] {
                "p" => {
                    if toks.get(1) != Some(&"treedec") || toks.len() != 4 {
                        return Err(parse_err(line, "expected `p treedec <bags> <n>`"));
                    }
                    let v = nums(2)?;
                    td = Some(TreeDecomposition { bags: vec![BTreeSet::new(); v[0]], edges: Vec::new() });
                }
                "b" => {
                    let td = td.as_mut().ok_or_else(|| parse_err(line, "line before header"))?;
                    let v = nums(1)?;
                    let i = *v.first().ok_or_else(|| parse_err(line, "missing bag id"))?;
                    if i == 0 || i > td.bags.len() {
                        return Err(parse_err(line, "bag id out of range"));
                    }
                    td.bags[i - 1] = v[1..].iter().copied().collect();
                }
                "t" => {
                    let td = td.as_mut().ok_or_else(|| parse_err(line, "line before header"))?;
                    let v = nums(1)?;
                    if v.len() != 2 || v.iter().any(|&x| x == 0 || x > td.bags.len()) {
                        return Err(parse_err(line, "bad tree edge"));
                    }
                    td.edges.push((v[0] - 1, v[1] - 1));
                }
                other => return Err(parse_err(line, format!("unknown line kind `{other}`"))),
            }
        }
        td.ok_or_else(|| parse_err(0, "missing header"))
    }
}

/// Returns the width, or the first violated property with a witness.
pub fn validate_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> std::result::Result<usize, TdViolation> {
    let adj = tree_adjacency(td.bags.len(), &td.edges).map_err(TdViolation::NotATree)?;
    if let Some(&v) = td.bags.iter().flatten().find(|&&v| v == 0 || v > g.n()) {
        return Err(TdViolation::UnknownVertex(v));
    }
    for v in g.vertices() {
        if !td.bags.iter().any(|b| b.contains(&v)) {
            return Err(TdViolation::VertexCoverage(v));
        }
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return Err(TdViolation::EdgeCoverage(u, v));
        }
    }
    for v in g.vertices() {
        let holders: Vec<usize> = (0..td.bags.len()).filter(|&i| td.bags[i].contains(&v)).collect();
        let mut seen = vec![false; td.bags.len()];
        let mut stack = vec![holders[0]];
        seen[holders[0]] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] && td.bags[y].contains(&v) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if let Some(&k) = holders.iter().find(|&&k| !seen[k]) {
            let i = holders[0];
            let j = tree_path(&adj, i, k).into_iter().find(|&j| !td.bags[j].contains(&v)).unwrap();
            return Err(TdViolation::Connectivity { vertex: v, i, j, k });
        }
    }
    Ok(td.width())
}

/// Min-fill elimination heuristic; ties go to the lowest vertex id.
pub fn min_fill_tree_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition { bags: vec![BTreeSet::new()], edges: Vec::new() };
    }
    let mut nb: Vec<BTreeSet<Vertex>> = (0..=n).map(|v| if v == 0 { BTreeSet::new() } else { g.neighbors(v).iter().copied().collect() }).collect();
    let mut alive: BTreeSet<Vertex> = g.vertices().collect();
    let mut order = Vec::with_capacity(n);
    let mut bag_of = vec![BTreeSet::new(); n + 1];
    while !alive.is_empty() {
        let fill = |v: Vertex| {
            let ns: Vec<Vertex> = nb[v].iter().copied().collect();
            let mut missing = 0;
            for i in 0..ns.len() {
                for j in i + 1..ns.len() {
                    if !nb[ns[i]].contains(&ns[j]) {
                        missing += 1;
                    }
                }
            }
            missing
        };
        let v = *alive.iter().min_by_key(|&&v| (fill(v), v)).unwrap();
        let ns: Vec<Vertex> = nb[v].iter().copied().collect();
        for i in 0..ns.len() {
            for j in i + 1..ns.len() {
                nb[ns[i]].insert(ns[j]);
                nb[ns[j]].insert(ns[i]);
            }
        }
        for &u in &ns {
            nb[u].remove(&v);
        }
        let mut bag: BTreeSet<Vertex> = ns.iter().copied().collect();
        bag.insert(v);
        bag_of[v] = bag;
        order.push(v);
        alive.remove(&v);
    }
    let mut pos = vec![0; n + 1];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let bags: Vec<BTreeSet<Vertex>> = order.iter().map(|&v| bag_of[v].clone()).collect();
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        match bag_of[v].iter().filter(|&&u| u != v).map(|&u| pos[u]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition { bags, edges }
}

/// Exact treewidth by dynamic programming over vertex subsets; meant as an
/// oracle for graphs with at most 16 vertices.
pub fn exact_treewidth(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > 16 {
        return Err(Error::CapExceeded(format!("exact treewidth limited to 16 vertices, got {n}")));
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u32> = g.vertices().map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << (u - 1))).collect();
    // q(S, v): vertices outside S ∪ {v} reachable from v through S.
    let q = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut stack = vec![v];
        let mut out = 0u32;
        while let Some(x) = stack.pop() {
            let mut nb = adj[x] & !seen;
            while nb != 0 {
                let y = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                seen |= 1 << y;
                if s >> y & 1 == 1 {
                    stack.push(y);
                } else {
                    out |= 1 << y;
                }
            }
        }
        out
    };
    let full = (1u32 << n) - 1;
    let mut tw = vec![usize::MAX; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = usize::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let c = tw[rest as usize].max(q(rest, v).count_ones() as usize);
            best = best.min(c);
        }
        tw[s as usize] = best;
    }
    Ok(tw[full as usize])
}

/// Unrooted branch decomposition: internal nodes have degree 3, leaves carry
/// graph edges. Node ids are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchDecomposition {
    pub adj: Vec<Vec<usize>>,
    pub leaf_edge: Vec<Option<Edge>>,
}

impl BranchDecomposition {
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Tree edges `(a, b)` with `a < b`, sorted.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.adj.len())
            .flat_map(|a| self.adj[a].iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let err = |s: String| Err(Error::Decomposition(s));
        if self.adj.len() != self.leaf_edge.len() {
            return err("leaf map length differs from node count".into());
        }
        let edges: Vec<(usize, usize)> = self.tree_edges();
        tree_adjacency(self.adj.len(), &edges).map_err(Error::Decomposition)?;
        let mut covered = BTreeSet::new();
        for x in 0..self.adj.len() {
            let deg = self.adj[x].len();
            match self.leaf_edge[x] {
                Some((u, v)) => {
                    if deg > 1 {
                        return err(format!("leaf node {x} has degree {deg}"));
                    }
                    let e = norm(u, v);
                    if !g.has_edge(e.0, e.1) {
                        return err(format!("leaf node {x} maps to non-edge {}-{}", e.0, e.1));
                    }
                    if !covered.insert(e) {
                        return err(format!("edge {}-{} mapped twice", e.0, e.1));
                    }
                }
                None => {
                    if deg != 3 {
                        return err(format!("internal node {x} has degree {deg}"));
                    }
                }
            }
        }
        if covered.len() != g.m() {
            return err(format!("{} of {} edges covered", covered.len(), g.m()));
        }
        Ok(())
    }

    /// Graph edges on the `a` side of tree edge `(a, b)`.
    fn side_edges(&self, a: usize, b: usize) -> Vec<Edge> {
        let mut out = Vec::new();
        let mut stack = vec![(a, b)];
        while let Some((x, from)) = stack.pop() {
            if let Some(e) = self.leaf_edge[x] {
                out.push(norm(e.0, e.1));
            }
            for &y in &self.adj[x] {
                if y != from {
                    stack.push((y, x));
                }
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let edges = self.tree_edges();
        let mut out = String::new();
        writeln!(out, "p branchdec {} {}", self.adj.len(), edges.len()).unwrap();
        for (a, b) in edges {
            writeln!(out, "t {} {}", a + 1, b + 1).unwrap();
        }
        for (x, e) in self.leaf_edge.iter().enumerate() {
            if let Some((u, v)) = e {
                writeln!(out, "l {} {u} {v}", x + 1).unwrap();
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut bd: Option<BranchDecomposition> = None;
        let mut declared = 0;
        let mut count = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = l.split_whitespace().collect();
            let nums = |from: usize| -> Result<Vec<usize>> {
                toks[from..]
                    .iter()
                    .map(|t| t.parse::<usize>().map_err(|_| parse_err(line, format!("not a number: {t}"))))
                    .collect()
            };
            match toks[0] {
                "p" => {
                    if toks.get(1) != Some(&"branchdec") || toks.len() != 4 {
                        return Err(parse_err(line, "expected `p branchdec <nodes> <edges>`"));
                    }
                    let v = nums(2)?;
                    declared = v[1];
                    bd = Some(BranchDecomposition { adj: vec![Vec::new(); v[0]], leaf_edge: vec![None; v[0]] });
                }
                "t" | "l" => {
                    let bd = bd.as_mut().ok_or_else(|| parse_err(line, "line before header"))?;
                    let v = nums(1)?;
                    let want = if toks[0] == "t" { 2 } else { 3 };
                    if v.len() != want {
                        return Err(parse_err(line, "wrong number of fields"));
                    }
                    let nodes = bd.adj.len();
                    let check = |x: usize| if x == 0 || x > nodes { Err(parse_err(line, "node id out of range")) } else { Ok(x - 1) };
                    if toks[0] == "t" {
                        let (a, b) = (check(v[0])?, check(v[1])?);
                        bd.adj[a].push(b);
                        bd.adj[b].push(a);
                        count += 1;
                    } else {
                        let a = check(v[0])?;
                        bd.leaf_edge[a] = Some(norm(v[1], v[2]));
                    }
                }
                other => return Err(parse_err(line, format!("unknown line kind `{other}`"))),
            }
        }
        let mut bd = bd.ok_or_else(|| parse_err(0, "missing header"))?;
        if count != declared {
            return Err(parse_err(0, format!("header declares {declared} tree edges, found {count}")));
        }
        for a in &mut bd.adj {
            a.sort_unstable();
        }
        Ok(bd)
    }
}

/// Middle set of every tree edge, keyed like [`BranchDecomposition::tree_edges`],
/// and the width.
pub fn middle_sets(g: &Graph, bd: &BranchDecomposition) -> Result<(BTreeMap<(usize, usize), BTreeSet<Vertex>>, usize)> {
    bd.validate(g)?;
    let mut out = BTreeMap::new();
    let mut width = 0;
    for (a, b) in bd.tree_edges() {
        let mid = mid_of_edge_set(g, &bd.side_edges(a, b));
        width = width.max(mid.len());
        out.insert((a, b), mid);
    }
    Ok((out, width))
}

/// Vertices incident both to `side` and to edges outside it.
pub fn mid_of_edge_set(g: &Graph, side: &[Edge]) -> BTreeSet<Vertex> {
    let mut cnt: HashMap<Vertex, usize> = HashMap::new();
    for &(u, v) in side {
        *cnt.entry(u).or_default() += 1;
        *cnt.entry(v).or_default() += 1;
    }
    cnt.into_iter().filter(|&(v, c)| c < g.degree(v)).map(|(v, _)| v).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildStrategy {
    Caterpillar,
    FromTreeDecomposition,
}

pub fn build_branch_decomposition(g: &Graph, strategy: BuildStrategy) -> Result<BranchDecomposition> {
    if g.m() == 0 {
        return Err(Error::Precondition("graph has no edges".into()));
    }
    let bd = match strategy {
        BuildStrategy::Caterpillar => caterpillar(&bfs_edge_order(g)),
        BuildStrategy::FromTreeDecomposition => from_tree_decomposition(g, &min_fill_tree_decomposition(g)),
    };
    debug_assert!(bd.validate(g).is_ok());
    Ok(bd)
}

fn bfs_edge_order(g: &Graph) -> Vec<Edge> {
    let mut seen_v = vec![false; g.n() + 1];
    let mut seen_e = BTreeSet::new();
    let mut order = Vec::new();
    for s in g.vertices() {
        if seen_v[s] {
            continue;
        }
        seen_v[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if seen_e.insert(norm(x, y)) {
                    order.push(norm(x, y));
                }
                if !seen_v[y] {
                    seen_v[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

/// Caterpillar over the given edge order.
pub fn caterpillar(order: &[Edge]) -> BranchDecomposition {
    let m = order.len();
    let mut adj = vec![Vec::new(); m];
    let mut leaf_edge: Vec<Option<Edge>> = order.iter().map(|&e| Some(e)).collect();
    let link = |adj: &mut Vec<Vec<usize>>, a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
    };
    if m == 2 {
        link(&mut adj, 0, 1);
    } else if m >= 3 {
        let spine: Vec<usize> = (0..m - 2).map(|i| m + i).collect();
        adj.resize(2 * m - 2, Vec::new());
        leaf_edge.resize(2 * m - 2, None);
        link(&mut adj, 0, spine[0]);
        link(&mut adj, 1, spine[0]);
        for i in 1..m - 2 {
            link(&mut adj, spine[i - 1], spine[i]);
            link(&mut adj, i + 1, spine[i]);
        }
        link(&mut adj, m - 1, spine[m - 3]);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    BranchDecomposition { adj, leaf_edge }
}

/// Converts a tree decomposition into a branch decomposition of width at most
/// `width(td) + 1`.
pub fn from_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> BranchDecomposition {
    let tadj = tree_adjacency(td.bags.len(), &td.edges).expect("valid tree decomposition");
    let mut assigned: Vec<Vec<Edge>> = vec![Vec::new(); td.bags.len()];
    for (u, v) in g.edges() {
        let t = (0..td.bags.len()).find(|&t| td.bags[t].contains(&u) && td.bags[t].contains(&v)).expect("edge covered");
        assigned[t].push((u, v));
    }
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let mut leaf_edge: Vec<Option<Edge>> = Vec::new();
    let mut new_node = |adj: &mut Vec<Vec<usize>>, leaf: Option<Edge>| {
        adj.push(Vec::new());
        leaf_edge.push(leaf);
        adj.len() - 1
    };
    // Post-order over the tree decomposition rooted at node 0.
    let mut order = Vec::new();
    let mut parent = vec![usize::MAX; td.bags.len()];
    let mut stack = vec![0usize];
    parent[0] = 0;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &tadj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut built: Vec<Option<usize>> = vec![None; td.bags.len()];
    for &t in order.iter().rev() {
        let mut items: Vec<usize> = tadj[t].iter().filter(|&&c| c != t && parent[c] == t).filter_map(|&c| built[c]).collect();
        for &e in &assigned[t] {
            items.push(new_node(&mut adj, Some(e)));
        }
        let mut it = items.into_iter();
        let mut cur = it.next();
        for x in it {
            let p = new_node(&mut adj, None);
            let c = cur.unwrap();
            adj[p].extend([c, x]);
            adj[c].push(p);
            adj[x].push(p);
            cur = Some(p);
        }
        built[t] = cur;
    }
    let root = built[0].expect("graph has edges");
    // The top binary node has degree 2: splice it out.
    if leaf_edge[root].is_none() {
        let (a, b) = (adj[root][0], adj[root][1]);
        for &(x, y) in &[(a, b), (b, a)] {
            let l = &mut adj[x];
            let i = l.iter().position(|&z| z == root).unwrap();
            l[i] = y;
        }
        adj[root].clear();
        // Move the last node into the freed slot to keep ids dense.
        let last = adj.len() - 1;
        if root != last {
            let moved = std::mem::take(&mut adj[last]);
            for &y in &moved {
                for z in adj[y].iter_mut() {
                    if *z == last {
                        *z = root;
                    }
                }
            }
            adj[root] = moved;
            leaf_edge[root] = leaf_edge[last];
        }
        adj.pop();
        leaf_edge.pop();
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    BranchDecomposition { adj, leaf_edge }
}

/// Exact branchwidth by dynamic programming over edge subsets; an oracle for
/// graphs with at most 14 edges.
pub fn exact_branchwidth(g: &Graph) -> Result<usize> {
    let edges = g.edges();
    let m = edges.len();
    if m > 14 {
        return Err(Error::CapExceeded(format!("exact branchwidth limited to 14 edges, got {m}")));
    }
    if m <= 1 {
        return Ok(0);
    }
    let full = (1usize << m) - 1;
    let mid_size = |s: usize| {
        let side: Vec<Edge> = (0..m).filter(|i| s >> i & 1 == 1).map(|i| edges[i]).collect();
        mid_of_edge_set(g, &side).len()
    };
    let mids: Vec<usize> = (0..=full).map(mid_size).collect();
    // best[s]: width of the best rooted binary tree over s, counting the
    // middle sets of every subtree edge inside it including the top one.
    let mut best = vec![usize::MAX; full + 1];
    for s in 1..=full {
        if s.count_ones() == 1 {
            best[s] = mids[s];
            continue;
        }
        let low = s & s.wrapping_neg();
        let mut inner = usize::MAX;
        // Enumerate splits with the lowest element in `a`.
        let rest = s & !low;
        let mut sub = rest;
        loop {
            let a = sub | low;
            let b = s & !a;
            if b != 0 {
                inner = inner.min(best[a].max(best[b]));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best[s] = inner.max(mids[s]);
    }
    let low = 1usize;
    let rest = full & !low;
    let mut answer = usize::MAX;
    let mut sub = rest;
    loop {
        let a = sub | low;
        let b = full & !a;
        if b != 0 {
            answer = answer.min(best[a].max(best[b]));
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    Ok(answer)
}

/// The pair of widths compared against `bw - 1 <= tw <= floor(3 bw / 2) - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WidthRelation {
    pub bw: usize,
    pub tw: usize,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

impl WidthRelation {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

pub fn check_width_relation(g: &Graph, bd: &BranchDecomposition, td: &TreeDecomposition) -> Result<WidthRelation> {
    if g.m() < 3 {
        return Err(Error::Precondition("width relation needs at least 3 edges".into()));
    }
    let (_, bw) = middle_sets(g, bd)?;
    let tw = validate_tree_decomposition(g, td).map_err(|v| Error::Decomposition(v.to_string()))?;
    Ok(WidthRelation {
        bw,
        tw,
        lower_holds: bw <= tw + 1,
        upper_holds: (tw as i64) <= (3 * bw / 2) as i64 - 1,
    })
}

/// A node of a rooted branch decomposition. The tree edge identified with a
/// node is the one to its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedNode {
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub leaf: Option<Edge>,
    /// Sorted middle set of the edge to the parent.
    pub mid: Vec<Vertex>,
    /// Smallest graph edge below this node.
    pub min_edge: Edge,
}

/// Branch decomposition rooted at a new node `r` hanging off a subdivision
/// node `s`; the edge `r`-`s` has an empty middle set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedBranchDecomposition {
    pub nodes: Vec<RootedNode>,
    pub root: usize,
    /// The subdivision node `s`; its table decides the instance.
    pub top: usize,
}

impl RootedBranchDecomposition {
    pub fn new(g: &Graph, bd: &BranchDecomposition) -> Result<Self> {
        let (mids, _) = middle_sets(g, bd)?;
        let count = bd.node_count();
        if count == 0 {
            return Err(Error::Decomposition("empty decomposition".into()));
        }
        let s = count;
        let r = count + 1;
        let mut nodes: Vec<RootedNode> = (0..count + 2)
            .map(|x| RootedNode {
                parent: None,
                children: Vec::new(),
                leaf: bd.leaf_edge.get(x).copied().flatten(),
                mid: Vec::new(),
                min_edge: (usize::MAX, usize::MAX),
            })
            .collect();
        let mid_of = |a: usize, b: usize| -> Vec<Vertex> { mids[&(a.min(b), a.max(b))].iter().copied().collect() };
        // The leaf carrying the smallest graph edge, and its neighbor.
        let a = (0..count).filter(|&x| bd.leaf_edge[x].is_some()).min_by_key(|&x| bd.leaf_edge[x]).unwrap();
        let mut tops = vec![a];
        let mut top_mid = Vec::new();
        if let Some(&b) = bd.adj[a].first() {
            tops.push(b);
            top_mid = mid_of(a, b);
        }
        for &t in &tops {
            nodes[t].parent = Some(s);
            nodes[t].mid = top_mid.clone();
            let mut stack = vec![t];
            while let Some(x) = stack.pop() {
                for &y in &bd.adj[x] {
                    if Some(y) != nodes[x].parent && !tops.contains(&y) {
                        nodes[y].parent = Some(x);
                        nodes[y].mid = mid_of(x, y);
                        nodes[x].children.push(y);
                        stack.push(y);
                    }
                }
            }
        }
        nodes[s].parent = Some(r);
        nodes[s].children = tops;
        nodes[r].children = vec![s];
        let mut rbd = RootedBranchDecomposition { nodes, root: r, top: s };
        for x in rbd.postorder() {
            let me = match rbd.nodes[x].leaf {
                Some(e) => e,
                None => rbd.nodes[x].children.iter().map(|&c| rbd.nodes[c].min_edge).min().unwrap(),
            };
            rbd.nodes[x].min_edge = me;
            let mut ch = std::mem::take(&mut rbd.nodes[x].children);
            ch.sort_by_key(|&c| rbd.nodes[c].min_edge);
            rbd.nodes[x].children = ch;
        }
        Ok(rbd)
    }

    /// Convenience: build, then root.
    pub fn build(g: &Graph, strategy: BuildStrategy) -> Result<Self> {
        let bd = build_branch_decomposition(g, strategy)?;
        Self::new(g, &bd)
    }

    /// Every node except the root, children before parents.
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.top, false)];
        while let Some((x, done)) = stack.pop() {
            if done {
                out.push(x);
                continue;
            }
            stack.push((x, true));
            for &c in self.nodes[x].children.iter().rev() {
                stack.push((c, false));
            }
        }
        out
    }

    pub fn tree_edge_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|n| n.mid.len()).max().unwrap_or(0)
    }

    /// Graph edges below node `x`.
    pub fn subtree_edges(&self, x: usize) -> Vec<Edge> {
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            if let Some(e) = self.nodes[y].leaf {
                out.push(e);
            }
            stack.extend(&self.nodes[y].children);
        }
        out.sort_unstable();
        out
    }
}

/// Largest middle set for which the noose search is attempted.
pub const SC_SEARCH_LIMIT: usize = 8;

/// Per node (edge to the parent): whether the middle set provably lies on a
/// noose that separates the edges below from the rest. `false` may be a
/// false negative.
pub fn check_sc_candidate(g: &Graph, rs: &RotationSystem, rbd: &RootedBranchDecomposition) -> Result<Vec<bool>> {
    Ok(noose_orders(g, rs, rbd)?.into_iter().map(|o| o.is_some()).collect())
}

/// Like [`check_sc_candidate`], returning the cyclic order in which a noose
/// meets the middle set.
pub fn noose_orders(g: &Graph, rs: &RotationSystem, rbd: &RootedBranchDecomposition) -> Result<Vec<Option<Vec<Vertex>>>> {
    rs.validate(g)?;
    for x in 0..rbd.nodes.len() {
        if let Some((u, v)) = rbd.nodes[x].leaf {
            if !g.has_edge(u, v) {
                return Err(Error::Decomposition(format!("leaf edge {u}-{v} is not in the graph")));
            }
        }
    }
    let faces = rs.trace_faces(g);
    let connected = g.is_connected();
    let mut out = vec![Some(Vec::new()); rbd.nodes.len()];
    for x in 0..rbd.nodes.len() {
        if x == rbd.root {
            continue;
        }
        let mid = &rbd.nodes[x].mid;
        if mid.is_empty() {
            continue;
        }
        if !connected || mid.len() > SC_SEARCH_LIMIT {
            out[x] = None;
            continue;
        }
        let inside: BTreeSet<Edge> = rbd.subtree_edges(x).into_iter().collect();
        out[x] = noose_through(rs, &faces, mid, &inside);
    }
    Ok(out)
}

/// Corner choice at a middle vertex: entering face, leaving face.
#[derive(Clone, Copy)]
struct Pass {
    fin: usize,
    fout: usize,
}

fn passes(rs: &RotationSystem, faces: &crate::embedding::FaceMap, v: Vertex, inside: &BTreeSet<Edge>, ccw: bool) -> Vec<Pass> {
    let rot = rs.rotation(v);
    let d = rot.len();
    let inside_nb: BTreeSet<Vertex> = rot.iter().copied().filter(|&u| inside.contains(&norm(u, v))).collect();
    let k = inside_nb.len();
    let mut out = Vec::new();
    if k == 0 || k == d {
        return out;
    }
    for cin in 0..d {
        let cout = (cin + k) % d;
        let arc: BTreeSet<Vertex> = (1..=k).map(|i| rot[(cin + i) % d]).collect();
        if arc != inside_nb {
            continue;
        }
        let (a, b) = (rs.corner_face(faces, v, cin), rs.corner_face(faces, v, cout));
        out.push(if ccw { Pass { fin: a, fout: b } } else { Pass { fin: b, fout: a } });
    }
    out
}

fn noose_through(rs: &RotationSystem, faces: &crate::embedding::FaceMap, mid: &[Vertex], inside: &BTreeSet<Edge>) -> Option<Vec<Vertex>> {
    for ccw in [true, false] {
        let options: Vec<Vec<Pass>> = mid.iter().map(|&v| passes(rs, faces, v, inside, ccw)).collect();
        if options.iter().any(|o| o.is_empty()) {
            continue;
        }
        for first in &options[0] {
            if mid.len() == 1 {
                if first.fin == first.fout {
                    return Some(mid.to_vec());
                }
                continue;
            }
            if first.fin == first.fout {
                continue;
            }
            let mut used_faces = vec![first.fout];
            let mut used_v = vec![false; mid.len()];
            used_v[0] = true;
            let mut order = vec![0];
            if extend(&options, first.fin, first.fout, &mut used_v, &mut used_faces, &mut order) {
                return Some(order.into_iter().map(|i| mid[i]).collect());
            }
        }
    }
    None
}

fn extend(
    options: &[Vec<Pass>],
    close_face: usize,
    cur_face: usize,
    used_v: &mut [bool],
    used_faces: &mut Vec<usize>,
    order: &mut Vec<usize>,
) -> bool {
    let remaining = used_v.iter().filter(|&&u| !u).count();
    for i in 0..options.len() {
        if used_v[i] {
            continue;
        }
        for p in &options[i] {
            if p.fin != cur_face {
                continue;
            }
            if remaining == 1 {
                if p.fout == close_face {
                    order.push(i);
                    return true;
                }
                continue;
            }
            if p.fout == close_face || used_faces.contains(&p.fout) {
                continue;
            }
            used_v[i] = true;
            used_faces.push(p.fout);
            order.push(i);
            if extend(options, close_face, p.fout, used_v, used_faces, order) {
                return true;
            }
            order.pop();
            used_faces.pop();
            used_v[i] = false;
        }
    }
    false
}
