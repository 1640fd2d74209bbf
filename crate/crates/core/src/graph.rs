//! Simple undirected graphs with dense 1-based vertex ids, optional vertex
//! colors, terminal-pair requests, and the line-based instance format.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};

pub type Vertex = usize;

/// Undirected simple graph on vertices `1..=n`.
///
/// Adjacency lists are kept sorted; slot 0 is unused.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, m: 0, adj: vec![Vec::new(); n + 1] }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        for x in [u, v] {
            if x == 0 || x > self.n {
                return Err(Error::VertexOutOfRange(x));
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(())
            }
        }
    }

    /// Adds a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> Vertex {
        self.n += 1;
        self.adj.push(Vec::new());
        self.n
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v >= 1 && v <= self.n
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.contains_vertex(u) && self.contains_vertex(v) && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n + 1];
        let mut comps = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Removes degree-0 vertices. Returns the compacted graph and, for each new
    /// id `i`, the old id at `map[i]` (slot 0 unused).
    pub fn strip_isolated(&self) -> (Graph, Vec<Vertex>) {
        let keep: Vec<Vertex> = self.vertices().filter(|&v| self.degree(v) > 0).collect();
        self.induced(&keep)
    }

    /// Subgraph induced by `keep` (renumbered densely in the given order).
    pub fn induced(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut new_id = vec![0usize; self.n + 1];
        let mut map = vec![0usize];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i + 1;
            map.push(v);
        }
        let mut g = Graph::new(keep.len());
        for (u, v) in self.edges() {
            if new_id[u] != 0 && new_id[v] != 0 {
                g.add_edge(new_id[u], new_id[v]).expect("induced edges are simple");
            }
        }
        (g, map)
    }
}

/// Grid graph with `rows * cols` vertices; vertex `(i, j)` (1-based) gets id
/// `(i - 1) * cols + j`.
pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::Precondition("grid dimensions must be positive".into()));
    }
    let id = |i: usize, j: usize| (i - 1) * cols + j;
    let mut g = Graph::new(rows * cols);
    for i in 1..=rows {
        for j in 1..=cols {
            if i < rows {
                g.add_edge(id(i, j), id(i + 1, j))?;
            }
            if j < cols {
                g.add_edge(id(i, j), id(i, j + 1))?;
            }
        }
    }
    Ok(g)
}

/// Graph whose vertices carry colors in `0..=max_color`; 0 is the wildcard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    pub graph: Graph,
    colors: Vec<u32>,
}

impl ColoredGraph {
    pub fn uncolored(graph: Graph) -> Self {
        let colors = vec![0; graph.n() + 1];
        ColoredGraph { graph, colors }
    }

    /// `colors[v - 1]` is the color of `v`.
    pub fn new(graph: Graph, colors: &[u32]) -> Result<Self> {
        if colors.len() != graph.n() {
            return Err(Error::Instance(format!(
                "expected {} colors, got {}",
                graph.n(),
                colors.len()
            )));
        }
        let mut c = vec![0];
        c.extend_from_slice(colors);
        Ok(ColoredGraph { graph, colors: c })
    }

    pub fn color(&self, v: Vertex) -> u32 {
        self.colors[v]
    }

    pub fn set_color(&mut self, v: Vertex, c: u32) {
        self.colors[v] = c;
    }

    pub fn max_color(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }
}

/// `c1 ≡ c2`: either is the wildcard 0, or they are equal.
pub fn compatible(c1: u32, c2: u32) -> bool {
    c1 == 0 || c2 == 0 || c1 == c2
}

/// Ordered list of terminal pairs `{s_i, t_i}`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RequestSet {
    pub pairs: Vec<(Vertex, Vertex)>,
}

impl RequestSet {
    pub fn new(pairs: Vec<(Vertex, Vertex)>) -> Self {
        RequestSet { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        for &(s, t) in &self.pairs {
            for x in [s, t] {
                if !g.contains_vertex(x) {
                    return Err(Error::VertexOutOfRange(x));
                }
            }
            if s == t {
                return Err(Error::Instance(format!("request {s}-{t} has equal endpoints")));
            }
        }
        Ok(())
    }

    /// `owner[v] = Some(i)` when `v` is an endpoint of request `i` (0-based).
    /// `None` when some vertex is an endpoint of two requests.
    pub fn terminal_owner(&self, n: usize) -> Option<Vec<Option<usize>>> {
        let mut owner = vec![None; n + 1];
        for (i, &(s, t)) in self.pairs.iter().enumerate() {
            for x in [s, t] {
                if owner[x].is_some() {
                    return None;
                }
                owner[x] = Some(i);
            }
        }
        Some(owner)
    }
}

/// A parsed instance file: colored graph plus requests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: ColoredGraph,
    pub requests: RequestSet,
}

impl Instance {
    pub fn plain(g: Graph) -> Self {
        Instance { graph: ColoredGraph::uncolored(g), requests: RequestSet::default() }
    }
}

fn parse_num(tok: Option<&str>, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, "missing field"))?;
    tok.parse::<usize>().map_err(|_| parse_err(line, format!("not a number: {tok}")))
}

/// Parses the instance format:
///
/// ```text
/// p graph <n> <m>
/// e <u> <v>
/// c <v> <color>
/// r <s> <t>
/// # comment
/// ```
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut graph: Option<Graph> = None;
    let mut declared_m = 0;
    let mut colors: Vec<(usize, usize, u32)> = Vec::new();
    let mut requests = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let mut toks = l.split_whitespace();
        let kind = toks.next().unwrap();
        match kind {
            "p" => {
                if graph.is_some() {
                    return Err(parse_err(line, "duplicate header"));
                }
                if toks.next() != Some("graph") {
                    return Err(parse_err(line, "expected `p graph <n> <m>`"));
                }
                let n = parse_num(toks.next(), line)?;
                declared_m = parse_num(toks.next(), line)?;
                graph = Some(Graph::new(n));
            }
            "e" | "c" | "r" => {
                let g = graph.as_mut().ok_or_else(|| parse_err(line, "line before header"))?;
                let a = parse_num(toks.next(), line)?;
                let b = parse_num(toks.next(), line)?;
                match kind {
                    "e" => g.add_edge(a, b)?,
                    "c" => {
                        if !g.contains_vertex(a) {
                            return Err(Error::VertexOutOfRange(a));
                        }
                        let c = u32::try_from(b).map_err(|_| parse_err(line, "color too large"))?;
                        colors.push((line, a, c));
                    }
                    _ => {
                        for x in [a, b] {
                            if !g.contains_vertex(x) {
                                return Err(Error::VertexOutOfRange(x));
                            }
                        }
                        if a == b {
                            return Err(parse_err(line, "request endpoints must differ"));
                        }
                        requests.push((a, b));
                    }
                }
            }
            other => return Err(parse_err(line, format!("unknown line kind `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    let g = graph.ok_or_else(|| parse_err(0, "missing header"))?;
    if g.m() != declared_m {
        return Err(parse_err(0, format!("header declares {declared_m} edges, found {}", g.m())));
    }
    let mut cg = ColoredGraph::uncolored(g);
    for (_, v, c) in colors {
        cg.set_color(v, c);
    }
    Ok(Instance { graph: cg, requests: RequestSet::new(requests) })
}

pub fn write_instance(inst: &Instance) -> String {
    let g = &inst.graph.graph;
    let mut out = String::new();
    writeln!(out, "p graph {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    for v in g.vertices() {
        let c = inst.graph.color(v);
        if c != 0 {
            writeln!(out, "c {v} {c}").unwrap();
        }
    }
    for &(s, t) in &inst.requests.pairs {
        writeln!(out, "r {s} {t}").unwrap();
    }
    out
}

/// Vertex set helper used by several modules.
pub fn vertex_set(it: impl IntoIterator<Item = Vertex>) -> BTreeSet<Vertex> {
    it.into_iter().collect()
}
