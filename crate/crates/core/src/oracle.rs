//! Exhaustive solvers and independent certificate verifiers.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use crate::error::{parse_err, Error, Result};
use crate::graph::{compatible, ColoredGraph, Graph, Instance, Vertex};

pub const DEFAULT_CYCLE_CAP: usize = 12;
pub const DEFAULT_PATH_CAP: usize = 64;
pub const MAX_HITTING_SET_K: usize = 6;

fn mask_of(g: &Graph) -> Vec<u64> {
    (0..=g.n())
        .map(|v| if v == 0 { 0 } else { g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << (u - 1)) })
        .collect()
}

/// Maximum number of vertex-disjoint cycles, with one optimal family.
pub fn brute_cycle_packing(g: &Graph, cap: usize) -> Result<(usize, Vec<Vec<Vertex>>)> {
    if g.n() > cap || g.n() > 64 {
        return Err(Error::CapExceeded(format!("{} vertices exceed the cap of {cap}", g.n())));
    }
    let adj = mask_of(g);
    let full = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut memo: HashMap<u64, (usize, Option<Vec<Vertex>>)> = HashMap::new();
    let best = cp_rec(full, &adj, &mut memo);
    let mut cycles = Vec::new();
    let mut mask = full;
    while mask.count_ones() >= 3 {
        let (_, choice) = memo[&mask].clone();
        match choice {
            Some(c) => {
                for &v in &c {
                    mask &= !(1 << (v - 1));
                }
                cycles.push(c);
            }
            None => mask &= mask - 1,
        }
    }
    Ok((best, cycles))
}

fn cp_rec(mask: u64, adj: &[u64], memo: &mut HashMap<u64, (usize, Option<Vec<Vertex>>)>) -> usize {
    if mask.count_ones() < 3 {
        return 0;
    }
    if let Some(&(v, _)) = memo.get(&mask) {
        return v;
    }
    let v = mask.trailing_zeros() as usize + 1;
    let rest = mask & !(1 << (v - 1));
    let mut best = cp_rec(rest, adj, memo);
    let mut choice = None;
    let bound = mask.count_ones() as usize / 3;
    if best < bound {
        for c in cycles_through(v, mask, adj) {
            let mut m = mask;
            for &x in &c {
                m &= !(1 << (x - 1));
            }
            let val = 1 + cp_rec(m, adj, memo);
            if val > best {
                best = val;
                choice = Some(c);
                if best == bound {
                    break;
                }
            }
        }
    }
    memo.insert(mask, (best, choice));
    best
}

/// Simple cycles through `v` inside `mask`, each listed once.
fn cycles_through(v: Vertex, mask: u64, adj: &[u64]) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut path = vec![v];
    fn dfs(path: &mut Vec<Vertex>, used: u64, mask: u64, adj: &[u64], out: &mut Vec<Vec<Vertex>>) {
        let v = path[0];
        let last = *path.last().unwrap();
        let mut nb = adj[last] & mask & !used;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize + 1;
            nb &= nb - 1;
            path.push(w);
            dfs(path, used | 1 << (w - 1), mask, adj, out);
            path.pop();
        }
        if path.len() >= 3 && adj[last] >> (v - 1) & 1 == 1 && path[1] < last {
            out.push(path.clone());
        }
    }
    dfs(&mut path, 1 << (v - 1), mask, adj, &mut out);
    out
}

/// Routes every request along vertex-disjoint monochromatic paths, or proves
/// that no routing exists. `None` means no routing.
pub fn brute_mono_disjoint_paths(cg: &ColoredGraph, req: &crate::graph::RequestSet, cap: usize) -> Result<Option<Vec<Vec<Vertex>>>> {
    let g = &cg.graph;
    let cap = cap.min(64);
    if g.n() > cap {
        return Err(Error::CapExceeded(format!("{} vertices exceed the cap of {cap}", g.n())));
    }
    if req.len() > cap {
        return Err(Error::CapExceeded(format!("{} requests exceed the cap of {cap}", req.len())));
    }
    req.validate(g)?;
    if req.terminal_owner(g.n()).is_none() {
        return Ok(None);
    }
    let adj = mask_of(g);
    let bit = |v: Vertex| 1u64 << (v - 1);
    let terminals = req.pairs.iter().fold(0u64, |m, &(s, t)| m | bit(s) | bit(t));
    // Short requests first: they constrain the search the most.
    let mut order: Vec<usize> = (0..req.len()).collect();
    let dist = |s: Vertex, t: Vertex| bfs_dist(&adj, s, t, !0u64);
    order.sort_by_key(|&i| (dist(req.pairs[i].0, req.pairs[i].1).unwrap_or(usize::MAX), i));
    let mut search = PathSearch { cg, adj: &adj, pairs: &req.pairs, order: &order, terminals, paths: vec![Vec::new(); req.len()] };
    if search.route(0, 0) {
        Ok(Some(search.paths))
    } else {
        Ok(None)
    }
}

fn bfs_dist(adj: &[u64], s: Vertex, t: Vertex, allowed: u64) -> Option<usize> {
    let mut seen = 1u64 << (s - 1);
    let mut frontier = seen;
    let mut d = 0;
    loop {
        if frontier >> (t - 1) & 1 == 1 {
            return Some(d);
        }
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let x = f.trailing_zeros() as usize + 1;
            f &= f - 1;
            next |= adj[x];
        }
        next &= allowed & !seen;
        if next == 0 {
            return None;
        }
        seen |= next;
        frontier = next;
        d += 1;
    }
}

struct PathSearch<'a> {
    cg: &'a ColoredGraph,
    adj: &'a [u64],
    pairs: &'a [(Vertex, Vertex)],
    order: &'a [usize],
    terminals: u64,
    paths: Vec<Vec<Vertex>>,
}

impl PathSearch<'_> {
    fn remaining_reachable(&self, from: usize, used: u64) -> bool {
        for &i in &self.order[from..] {
            let (s, t) = self.pairs[i];
            let allowed = !used | (1 << (s - 1)) | (1 << (t - 1));
            let allowed = allowed & !(self.terminals & !((1 << (s - 1)) | (1 << (t - 1))));
            if bfs_dist(self.adj, s, t, allowed).is_none() {
                return false;
            }
        }
        true
    }

    fn route(&mut self, idx: usize, used: u64) -> bool {
        if idx == self.order.len() {
            return true;
        }
        if !self.remaining_reachable(idx, used) {
            return false;
        }
        let i = self.order[idx];
        let (s, t) = self.pairs[i];
        let c = self.cg.color(s).max(self.cg.color(t));
        if !compatible(self.cg.color(s), self.cg.color(t)) {
            return false;
        }
        let mut path = vec![s];
        let used = used | 1 << (s - 1);
        self.extend(idx, &mut path, used, c)
    }

    fn extend(&mut self, idx: usize, path: &mut Vec<Vertex>, used: u64, color: u32) -> bool {
        let i = self.order[idx];
        let t = self.pairs[i].1;
        let last = *path.last().unwrap();
        if last == t {
            self.paths[i] = path.clone();
            return self.route(idx + 1, used);
        }
        let blocked = used | (self.terminals & !(1 << (t - 1)));
        let allowed = !blocked | 1 << (last - 1);
        if bfs_dist(self.adj, last, t, allowed).is_none() {
            return false;
        }
        let mut nb = self.adj[last] & !blocked;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize + 1;
            nb &= nb - 1;
            let cw = self.cg.color(w);
            if !compatible(color, cw) {
                continue;
            }
            path.push(w);
            if self.extend(idx, path, used | 1 << (w - 1), color.max(cw)) {
                return true;
            }
            path.pop();
        }
        false
    }
}

/// Outcome of the 3-coloring search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringOutcome {
    /// Colors in `1..=3`, index `v - 1`.
    Colorable(Vec<u8>),
    NotColorable,
}

/// Backtracking 3-coloring: most constrained vertex first (ties by degree),
/// forward checking with propagation of forced colors. The first vertex's
/// color class is fixed.
pub fn brute_3coloring(g: &Graph, timeout: Option<Duration>) -> Result<ColoringOutcome> {
    let n = g.n();
    let mut dom = vec![0b111u8; n + 1];
    let mut colors = vec![0u8; n + 1];
    let deadline = timeout.map(|t| (Instant::now() + t, t));
    let mut state = ColorSearch { g, deadline, steps: 0 };
    if n == 0 {
        return Ok(ColoringOutcome::Colorable(Vec::new()));
    }
    let found = state.search(&mut dom, &mut colors, true)?;
    Ok(if found { ColoringOutcome::Colorable(colors[1..].to_vec()) } else { ColoringOutcome::NotColorable })
}

/// Extends the partial coloring `pre` (0 = free, index `v - 1`) to a proper
/// 3-coloring, if one exists.
pub fn extend_3coloring(g: &Graph, pre: &[u8], timeout: Option<Duration>) -> Result<ColoringOutcome> {
    let n = g.n();
    if pre.len() != n || pre.iter().any(|&c| c > 3) {
        return Err(Error::Precondition("partial coloring must give 0..=3 per vertex".into()));
    }
    let mut dom = vec![0b111u8; n + 1];
    let mut colors = vec![0u8; n + 1];
    let deadline = timeout.map(|t| (Instant::now() + t, t));
    let mut state = ColorSearch { g, deadline, steps: 0 };
    for (i, &c) in pre.iter().enumerate() {
        if c != 0 && !state.assign(i + 1, c, &mut dom, &mut colors) {
            return Ok(ColoringOutcome::NotColorable);
        }
    }
    let found = state.search(&mut dom, &mut colors, false)?;
    Ok(if found { ColoringOutcome::Colorable(colors[1..].to_vec()) } else { ColoringOutcome::NotColorable })
}

struct ColorSearch<'a> {
    g: &'a Graph,
    deadline: Option<(Instant, Duration)>,
    steps: u64,
}

impl ColorSearch<'_> {
    /// Assigns `c` to `v` and propagates forced colors; false on a wipe-out.
    fn assign(&self, v: Vertex, c: u8, dom: &mut [u8], colors: &mut [u8]) -> bool {
        let mut queue = VecDeque::from([(v, c)]);
        while let Some((x, cx)) = queue.pop_front() {
            if colors[x] != 0 {
                if colors[x] != cx {
                    return false;
                }
                continue;
            }
            if dom[x] & 1 << (cx - 1) == 0 {
                return false;
            }
            colors[x] = cx;
            dom[x] = 1 << (cx - 1);
            for &y in self.g.neighbors(x) {
                if colors[y] == cx {
                    return false;
                }
                if colors[y] == 0 && dom[y] & 1 << (cx - 1) != 0 {
                    dom[y] &= !(1 << (cx - 1));
                    match dom[y].count_ones() {
                        0 => return false,
                        1 => queue.push_back((y, dom[y].trailing_zeros() as u8 + 1)),
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn search(&mut self, dom: &mut Vec<u8>, colors: &mut Vec<u8>, first: bool) -> Result<bool> {
        let free: Vec<Vertex> = self.g.vertices().filter(|&v| colors[v] == 0).collect();
        self.solve(dom, colors, free, first)
    }

    /// Colors `scope`; independent parts of it are solved one at a time.
    fn solve(&mut self, dom: &mut Vec<u8>, colors: &mut Vec<u8>, scope: Vec<Vertex>, first: bool) -> Result<bool> {
        self.steps += 1;
        if let Some((d, t)) = self.deadline {
            if self.steps % 1024 == 0 && Instant::now() > d {
                return Err(Error::Timeout(t.as_millis() as u64));
            }
        }
        let scope: Vec<Vertex> = scope.into_iter().filter(|&v| colors[v] == 0).collect();
        if scope.is_empty() {
            return Ok(true);
        }
        let parts = self.parts(&scope, colors);
        if parts.len() > 1 {
            for p in parts {
                if !self.solve(dom, colors, p, first)? {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        let v = *scope
            .iter()
            .min_by_key(|&&v| (dom[v].count_ones(), std::cmp::Reverse(self.g.degree(v)), v))
            .expect("scope is non-empty");
        let options: Vec<u8> = if first { vec![1] } else { (1..=3).filter(|c| dom[v] & 1 << (c - 1) != 0).collect() };
        // Symmetry: an unused color is interchangeable with any other unused one.
        let max_used = *colors.iter().max().unwrap();
        let mut tried_fresh = false;
        for c in options {
            if c > max_used {
                if tried_fresh {
                    continue;
                }
                tried_fresh = true;
            }
            let (mut d2, mut c2) = (dom.clone(), colors.clone());
            if self.assign(v, c, &mut d2, &mut c2) && self.solve(&mut d2, &mut c2, scope.clone(), false)? {
                *dom = d2;
                *colors = c2;
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Connected parts of the uncolored vertices in `scope`.
    fn parts(&self, scope: &[Vertex], colors: &[u8]) -> Vec<Vec<Vertex>> {
        let mut seen: std::collections::HashSet<Vertex> = std::collections::HashSet::new();
        let mut out = Vec::new();
        for &s in scope {
            if !seen.insert(s) {
                continue;
            }
            let mut part = vec![s];
            let mut k = 0;
            while k < part.len() {
                let x = part[k];
                k += 1;
                for &y in self.g.neighbors(x) {
                    if colors[y] == 0 && seen.insert(y) {
                        part.push(y);
                    }
                }
            }
            out.push(part);
        }
        out
    }
}

/// `k x k` hitting-set instance; elements are `(row, column)`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetInstance {
    pub k: usize,
    pub sets: Vec<Vec<(usize, usize)>>,
}

impl HittingSetInstance {
    pub fn new(k: usize, sets: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        let mut inst = HittingSetInstance { k, sets };
        for s in &mut inst.sets {
            s.sort_unstable();
            s.dedup();
        }
        inst.validate()?;
        Ok(inst)
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    pub fn validate(&self) -> Result<()> {
        for (i, s) in self.sets.iter().enumerate() {
            let mut rows = BTreeSet::new();
            for &(r, c) in s {
                if r == 0 || r > self.k || c == 0 || c > self.k {
                    return Err(Error::Instance(format!("set {} has element ({r},{c}) outside the grid", i + 1)));
                }
                if !rows.insert(r) {
                    return Err(Error::Instance(format!("set {} has two elements in row {r}", i + 1)));
                }
            }
        }
        Ok(())
    }

    /// Element of set `i` in row `r`, if any.
    pub fn element_in_row(&self, i: usize, r: usize) -> Option<usize> {
        self.sets[i].iter().find(|e| e.0 == r).map(|e| e.1)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p hs {} {}", self.k, self.sets.len()).unwrap();
        for s in &self.sets {
            out.push('s');
            for (r, c) in s {
                write!(out, " {r} {c}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut sets = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = l.split_whitespace().collect();
            let nums: std::result::Result<Vec<usize>, _> = toks.iter().skip(if toks[0] == "p" { 2 } else { 1 }).map(|t| t.parse::<usize>()).collect();
            let nums = nums.map_err(|_| parse_err(line, "not a number"))?;
            match toks[0] {
                "p" if toks.get(1) == Some(&"hs") && nums.len() == 2 => header = Some((nums[0], nums[1])),
                "s" if header.is_some() => {
                    if nums.len() % 2 != 0 {
                        return Err(parse_err(line, "odd number of coordinates"));
                    }
                    sets.push(nums.chunks(2).map(|c| (c[0], c[1])).collect());
                }
                _ => return Err(parse_err(line, "expected `p hs <k> <m>` or `s <r> <c> ...`")),
            }
        }
        let (k, m) = header.ok_or_else(|| parse_err(0, "missing header"))?;
        if sets.len() != m {
            return Err(parse_err(0, format!("header declares {m} sets, found {}", sets.len())));
        }
        HittingSetInstance::new(k, sets)
    }
}

/// Picks one column per row so every set is hit. Returns the columns by row.
pub fn brute_hitting_set(inst: &HittingSetInstance) -> Result<Option<Vec<usize>>> {
    inst.validate()?;
    let k = inst.k;
    if k > MAX_HITTING_SET_K {
        return Err(Error::CapExceeded(format!("k = {k} exceeds {MAX_HITTING_SET_K}")));
    }
    if k == 0 {
        return Ok(if inst.sets.is_empty() { Some(Vec::new()) } else { None });
    }
    let mut sel = vec![1usize; k];
    loop {
        if inst.sets.iter().all(|s| s.iter().any(|&(r, c)| sel[r - 1] == c)) {
            return Ok(Some(sel));
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            sel[i] += 1;
            if sel[i] <= k {
                break;
            }
            sel[i] = 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Malformed,
    NotAnEdge,
    NotACycle,
    Disjointness,
    Endpoints,
    Monochromatic,
    Count,
    ImproperColoring,
    Unhit,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::Malformed => "malformed",
            ViolationKind::NotAnEdge => "not-an-edge",
            ViolationKind::NotACycle => "not-a-cycle",
            ViolationKind::Disjointness => "disjointness",
            ViolationKind::Endpoints => "endpoints",
            ViolationKind::Monochromatic => "monochromatic",
            ViolationKind::Count => "count",
            ViolationKind::ImproperColoring => "improper-coloring",
            ViolationKind::Unhit => "unhit-set",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "violation({}): {}", self.kind.name(), self.detail)
    }
}

fn violation(kind: ViolationKind, detail: impl Into<String>) -> std::result::Result<(), Violation> {
    Err(Violation { kind, detail: detail.into() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    CyclePacking,
    DisjointPaths,
    MonoDisjointPaths,
    ThreeColoring,
    HittingSet,
}

impl WitnessKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "cycle-packing" => WitnessKind::CyclePacking,
            "disjoint-paths" => WitnessKind::DisjointPaths,
            "mdp" | "mono-disjoint-paths" => WitnessKind::MonoDisjointPaths,
            "3col" | "3-coloring" => WitnessKind::ThreeColoring,
            "hitting-set" => WitnessKind::HittingSet,
            _ => return None,
        })
    }
}

/// The instance side of a verification.
#[derive(Debug, Clone)]
pub enum Problem<'a> {
    CyclePacking { graph: &'a Graph, l0: usize },
    DisjointPaths(&'a Instance),
    MonoDisjointPaths(&'a Instance),
    ThreeColoring(&'a Graph),
    HittingSet(&'a HittingSetInstance),
}

/// A certificate in its plain form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Cycles(Vec<Vec<Vertex>>),
    /// `paths[i]` routes request `i` from `s_i` to `t_i`.
    Paths(Vec<Vec<Vertex>>),
    /// Colors in `1..=3`, index `v - 1`.
    Coloring(Vec<u8>),
    /// Column chosen in each row, index `r - 1`.
    Selection(Vec<usize>),
}

impl Witness {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let list = |out: &mut String, tag: &str, items: &[Vertex]| {
            out.push_str(tag);
            for x in items {
                write!(out, " {x}").unwrap();
            }
            out.push('\n');
        };
        match self {
            Witness::Cycles(cs) => cs.iter().for_each(|c| list(&mut out, "cycle", c)),
            Witness::Paths(ps) => ps.iter().for_each(|p| list(&mut out, "path", p)),
            Witness::Coloring(cs) => cs.iter().enumerate().for_each(|(i, c)| writeln!(out, "color {} {c}", i + 1).unwrap()),
            Witness::Selection(s) => s.iter().enumerate().for_each(|(r, c)| writeln!(out, "select {} {c}", r + 1).unwrap()),
        }
        out
    }

    /// Parses the line format of [`Witness::to_text`] for the given kind.
    pub fn parse(kind: WitnessKind, text: &str) -> Result<Self> {
        let mut lists: Vec<Vec<usize>> = Vec::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let tag = match kind {
            WitnessKind::CyclePacking => "cycle",
            WitnessKind::DisjointPaths | WitnessKind::MonoDisjointPaths => "path",
            WitnessKind::ThreeColoring => "color",
            WitnessKind::HittingSet => "select",
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') || l.contains('=') {
                continue;
            }
            let mut toks = l.split_whitespace();
            if toks.next() != Some(tag) {
                continue;
            }
            let nums: std::result::Result<Vec<usize>, _> = toks.map(str::parse::<usize>).collect();
            let nums = nums.map_err(|_| parse_err(line, "not a number"))?;
            if tag == "color" || tag == "select" {
                if nums.len() != 2 {
                    return Err(parse_err(line, "expected two numbers"));
                }
                pairs.push((nums[0], nums[1]));
            } else {
                lists.push(nums);
            }
        }
        let dense = |pairs: &[(usize, usize)]| -> Result<Vec<usize>> {
            let mut out = vec![0; pairs.len()];
            for &(i, c) in pairs {
                if i == 0 || i > out.len() {
                    return Err(parse_err(0, format!("index {i} out of range")));
                }
                out[i - 1] = c;
            }
            Ok(out)
        };
        Ok(match kind {
            WitnessKind::CyclePacking => Witness::Cycles(lists),
            WitnessKind::DisjointPaths | WitnessKind::MonoDisjointPaths => Witness::Paths(lists),
            WitnessKind::ThreeColoring => Witness::Coloring(dense(&pairs)?.into_iter().map(|c| c as u8).collect()),
            WitnessKind::HittingSet => Witness::Selection(dense(&pairs)?),
        })
    }
}

pub fn verify_witness(problem: &Problem<'_>, witness: &Witness) -> std::result::Result<(), Violation> {
    match (problem, witness) {
        (Problem::CyclePacking { graph, l0 }, Witness::Cycles(cs)) => verify_cycles(graph, *l0, cs),
        (Problem::DisjointPaths(inst), Witness::Paths(ps)) => verify_paths(&inst.graph, &inst.requests, ps, false),
        (Problem::MonoDisjointPaths(inst), Witness::Paths(ps)) => verify_paths(&inst.graph, &inst.requests, ps, true),
        (Problem::ThreeColoring(g), Witness::Coloring(c)) => verify_coloring(g, c),
        (Problem::HittingSet(inst), Witness::Selection(s)) => verify_selection(inst, s),
        _ => violation(ViolationKind::Malformed, "witness kind does not match the problem"),
    }
}

/// At least `l0` pairwise vertex-disjoint simple cycles.
pub fn verify_cycles(g: &Graph, l0: usize, cycles: &[Vec<Vertex>]) -> std::result::Result<(), Violation> {
    let mut used = BTreeSet::new();
    for (i, c) in cycles.iter().enumerate() {
        if c.len() < 3 {
            return violation(ViolationKind::NotACycle, format!("cycle {} has {} vertices", i + 1, c.len()));
        }
        for (j, &v) in c.iter().enumerate() {
            if !g.contains_vertex(v) {
                return violation(ViolationKind::Malformed, format!("vertex {v} not in graph"));
            }
            let w = c[(j + 1) % c.len()];
            if !g.has_edge(v, w) {
                return violation(ViolationKind::NotAnEdge, format!("cycle {} uses non-edge {v}-{w}", i + 1));
            }
            if !used.insert(v) {
                return violation(ViolationKind::Disjointness, format!("vertex {v} used twice"));
            }
        }
    }
    if cycles.len() < l0 {
        return violation(ViolationKind::Count, format!("{} cycles, {l0} required", cycles.len()));
    }
    Ok(())
}

/// One path per request, pairwise vertex-disjoint; with `mono`, the colors on
/// each path are pairwise compatible.
pub fn verify_paths(
    cg: &ColoredGraph,
    req: &crate::graph::RequestSet,
    paths: &[Vec<Vertex>],
    mono: bool,
) -> std::result::Result<(), Violation> {
    let g = &cg.graph;
    if paths.len() != req.len() {
        return violation(ViolationKind::Count, format!("{} paths for {} requests", paths.len(), req.len()));
    }
    let mut used = BTreeSet::new();
    for (i, (p, &(s, t))) in paths.iter().zip(&req.pairs).enumerate() {
        let ends = (p.first().copied(), p.last().copied());
        if ends != (Some(s), Some(t)) && ends != (Some(t), Some(s)) {
            return violation(ViolationKind::Endpoints, format!("path {} does not join {s} and {t}", i + 1));
        }
        for (j, &v) in p.iter().enumerate() {
            if !g.contains_vertex(v) {
                return violation(ViolationKind::Malformed, format!("vertex {v} not in graph"));
            }
            if j + 1 < p.len() && !g.has_edge(v, p[j + 1]) {
                return violation(ViolationKind::NotAnEdge, format!("path {} uses non-edge {v}-{}", i + 1, p[j + 1]));
            }
            if !used.insert(v) {
                return violation(ViolationKind::Disjointness, format!("vertex {v} used twice"));
            }
        }
        if mono {
            for &a in p {
                for &b in p {
                    if !compatible(cg.color(a), cg.color(b)) {
                        return violation(
                            ViolationKind::Monochromatic,
                            format!("path {} has colors {} and {}", i + 1, cg.color(a), cg.color(b)),
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn verify_coloring(g: &Graph, coloring: &[u8]) -> std::result::Result<(), Violation> {
    if coloring.len() != g.n() {
        return violation(ViolationKind::Malformed, format!("{} colors for {} vertices", coloring.len(), g.n()));
    }
    if let Some(i) = coloring.iter().position(|&c| !(1..=3).contains(&c)) {
        return violation(ViolationKind::Malformed, format!("vertex {} has color {}", i + 1, coloring[i]));
    }
    for (u, v) in g.edges() {
        if coloring[u - 1] == coloring[v - 1] {
            return violation(ViolationKind::ImproperColoring, format!("edge {u}-{v} is monochromatic"));
        }
    }
    Ok(())
}

pub fn verify_selection(inst: &HittingSetInstance, sel: &[usize]) -> std::result::Result<(), Violation> {
    if sel.len() != inst.k || sel.iter().any(|&c| c == 0 || c > inst.k) {
        return violation(ViolationKind::Malformed, "selection must pick one column in 1..=k per row");
    }
    for (i, s) in inst.sets.iter().enumerate() {
        if !s.iter().any(|&(r, c)| sel[r - 1] == c) {
            return violation(ViolationKind::Unhit, format!("set {} is not hit", i + 1));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::RequestSet;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (1..=n).map(|i| (i, i % n + 1))).unwrap()
    }

    #[test]
    fn cycle_packing_examples() {
        assert_eq!(brute_cycle_packing(&cycle(3), 12).unwrap().0, 1);
        let two = Graph::from_edges(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
        let (v, w) = brute_cycle_packing(&two, 12).unwrap();
        assert_eq!(v, 2);
        assert!(verify_cycles(&two, 2, &w).is_ok());
        let k4 = Graph::from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(brute_cycle_packing(&k4, 12).unwrap().0, 1);
        let tree = Graph::from_edges(4, [(1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(brute_cycle_packing(&tree, 12).unwrap().0, 0);
        assert!(brute_cycle_packing(&cycle(13), 12).is_err());
    }

    #[test]
    fn mono_path_examples() {
        let g = Graph::from_edges(2, [(1, 2)]).unwrap();
        let cg = ColoredGraph::uncolored(g);
        let r = RequestSet::new(vec![(1, 2)]);
        assert_eq!(brute_mono_disjoint_paths(&cg, &r, 64).unwrap(), Some(vec![vec![1, 2]]));
        let p = Graph::from_edges(3, [(1, 2), (2, 3)]).unwrap();
        let cg = ColoredGraph::new(p.clone(), &[1, 2, 1]).unwrap();
        let r = RequestSet::new(vec![(1, 3)]);
        assert_eq!(brute_mono_disjoint_paths(&cg, &r, 64).unwrap(), None);
        let cg = ColoredGraph::new(p, &[1, 0, 1]).unwrap();
        assert!(brute_mono_disjoint_paths(&cg, &r, 64).unwrap().is_some());
    }

    #[test]
    fn coloring_examples() {
        match brute_3coloring(&cycle(5), None).unwrap() {
            ColoringOutcome::Colorable(c) => assert!(verify_coloring(&cycle(5), &c).is_ok()),
            ColoringOutcome::NotColorable => panic!("C5 is 3-colorable"),
        }
        let k4 = Graph::from_edges(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(brute_3coloring(&k4, None).unwrap(), ColoringOutcome::NotColorable);
    }

    #[test]
    fn hitting_set_examples() {
        let i = HittingSetInstance::new(1, vec![vec![(1, 1)]]).unwrap();
        assert_eq!(brute_hitting_set(&i).unwrap(), Some(vec![1]));
        let i = HittingSetInstance::new(2, vec![vec![(1, 1)], vec![(1, 2)]]).unwrap();
        assert_eq!(brute_hitting_set(&i).unwrap(), None);
        let i = HittingSetInstance::new(2, vec![vec![(1, 1), (2, 1)]]).unwrap();
        let s = brute_hitting_set(&i).unwrap().unwrap();
        assert!(verify_selection(&i, &s).is_ok());
        assert!(HittingSetInstance::new(2, vec![vec![(1, 1), (1, 2)]]).is_err());
        assert_eq!(HittingSetInstance::parse(&i.to_text()).unwrap(), i);
    }

    #[test]
    fn verifier_examples() {
        assert!(verify_cycles(&cycle(3), 1, &[vec![1, 2, 3]]).is_ok());
        let g = Graph::from_edges(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let cg = ColoredGraph::uncolored(g.clone());
        let r = RequestSet::new(vec![(1, 3), (2, 4)]);
        let v = verify_paths(&cg, &r, &[vec![1, 2, 3], vec![2, 3, 4]], false).unwrap_err();
        assert_eq!(v.kind, ViolationKind::Disjointness);
        let cg = ColoredGraph::new(g, &[1, 2, 0, 0]).unwrap();
        let r = RequestSet::new(vec![(1, 2)]);
        let v = verify_paths(&cg, &r, &[vec![1, 2]], true).unwrap_err();
        assert_eq!(v.kind, ViolationKind::Monochromatic);
    }

    #[test]
    fn witness_text_round_trip() {
        let w = Witness::Paths(vec![vec![1, 2], vec![3, 4, 5]]);
        assert_eq!(Witness::parse(WitnessKind::DisjointPaths, &w.to_text()).unwrap(), w);
        let w = Witness::Coloring(vec![1, 2, 3]);
        assert_eq!(Witness::parse(WitnessKind::ThreeColoring, &w.to_text()).unwrap(), w);
    }
}
