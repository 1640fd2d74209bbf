//! Gadget reductions with witness mappers and structural validators.

pub mod cycle_packing;
pub mod disjoint_paths;
pub mod functional;
mod gadgets;
pub mod hitting_set;
pub mod planar3col;
mod skeleton;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::decomp::{validate_tree_decomposition, TreeDecomposition};
use crate::embedding::{euler_check, RotationSystem};
use crate::error::{parse_err, Result};
use crate::graph::{Instance, Vertex};

pub use cycle_packing::{cp_backward, cp_forward, reduce_planar3col_to_cycle_packing};
pub use disjoint_paths::{dp_backward, dp_forward, reduce_planar3col_to_disjoint_paths};
pub use functional::gadget_suite;
pub use hitting_set::{hs_backward, hs_forward, reduce_hs_to_mdp};
pub use planar3col::{p3_backward, p3_forward, reduce_3col_to_planar3col};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GadgetKind {
    Sc,
    Expel,
    DoubleExpel,
    PathCrossing,
    Bifurcate,
    Edge,
    C,
    Cc,
    ColorSelection,
    Set,
}

impl GadgetKind {
    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::Sc => "sc",
            GadgetKind::Expel => "expel",
            GadgetKind::DoubleExpel => "double-expel",
            GadgetKind::PathCrossing => "path-crossing",
            GadgetKind::Bifurcate => "bifurcate",
            GadgetKind::Edge => "edge",
            GadgetKind::C => "c",
            GadgetKind::Cc => "cc",
            GadgetKind::ColorSelection => "color-selection",
            GadgetKind::Set => "set",
        }
    }
}

/// One gadget instance. `asks` counts the cycles or requests the gadget
/// contributes, nested gadgets included; `own` is the part not delegated to a
/// child gadget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetEntry {
    pub id: usize,
    #[serde(rename = "gadget")]
    pub kind: GadgetKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<usize>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
    pub vertices: BTreeMap<String, Vertex>,
    pub asks: usize,
    #[serde(default)]
    pub own: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub requests: Vec<usize>,
    /// Subdivided logical edges, endpoint to endpoint.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub routes: Vec<Vec<Vertex>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GadgetRegistry {
    pub entries: Vec<GadgetEntry>,
}

impl GadgetRegistry {
    /// Adds a leaf gadget asking `asks` itself.
    pub fn add(&mut self, kind: GadgetKind, parent: Option<usize>, vertices: BTreeMap<String, Vertex>, asks: usize) -> usize {
        let id = self.entries.len();
        self.entries.push(GadgetEntry {
            id,
            kind,
            parent,
            label: String::new(),
            vertices,
            asks,
            own: asks,
            requests: Vec::new(),
            routes: Vec::new(),
        });
        id
    }

    /// Recomputes `asks` of every entry as `own` plus the children's asks.
    /// Children are always registered after their parent.
    pub fn roll_up(&mut self) {
        let mut acc = vec![0usize; self.entries.len()];
        for i in (0..self.entries.len()).rev() {
            let e = &mut self.entries[i];
            e.asks = e.own + acc[i];
            if let Some(p) = e.parent {
                acc[p] += e.asks;
            }
        }
    }

    pub fn count(&self, kind: GadgetKind) -> usize {
        self.entries.iter().filter(|e| e.kind == kind).count()
    }

    pub fn of_kind(&self, kind: GadgetKind) -> impl Iterator<Item = &GadgetEntry> {
        self.entries.iter().filter(move |e| e.kind == kind)
    }

    pub fn children(&self, id: usize) -> impl Iterator<Item = &GadgetEntry> {
        self.entries.iter().filter(move |e| e.parent == Some(id))
    }

    /// Sum of asks over top-level gadgets.
    pub fn total_asks(&self) -> usize {
        self.entries.iter().filter(|e| e.parent.is_none()).map(|e| e.asks).sum()
    }

    /// Gadgets whose asks differ from their own share plus their children's.
    pub fn inconsistent(&self) -> Vec<usize> {
        let mut sums = vec![0usize; self.entries.len()];
        for e in &self.entries {
            if let Some(p) = e.parent {
                sums[p] += e.asks;
            }
        }
        self.entries.iter().filter(|e| sums[e.id] + e.own != e.asks).map(|e| e.id).collect()
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("registry entries serialize"));
            out.push('\n');
        }
        out
    }

    pub fn parse_jsonl(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (idx, l) in text.lines().enumerate() {
            if l.trim().is_empty() {
                continue;
            }
            let e: GadgetEntry = serde_json::from_str(l).map_err(|err| parse_err(idx + 1, err.to_string()))?;
            entries.push(e);
        }
        Ok(GadgetRegistry { entries })
    }
}

#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub instance: Instance,
    pub l0: Option<usize>,
    pub embedding: RotationSystem,
    pub registry: GadgetRegistry,
    /// Symbolic name of every vertex, `names[v - 1]`.
    pub names: Vec<String>,
    /// Source object to target vertices.
    pub id_map: Vec<(String, Vec<Vertex>)>,
    pub decomposition: Option<TreeDecomposition>,
}

impl ReductionOutput {
    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == name).map(|i| i + 1)
    }

    pub fn id_map_text(&self) -> String {
        let mut out = String::new();
        for (k, vs) in &self.id_map {
            write!(out, "map {k}").unwrap();
            for v in vs {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn names_text(&self) -> String {
        let mut out = String::new();
        for (i, n) in self.names.iter().enumerate() {
            writeln!(out, "name {} {n}", i + 1).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Planarity,
    MaxDegree(usize),
    MaxVertices(usize),
    RequestCount(usize),
    /// Decomposition validates and its largest bag has at most this many
    /// vertices.
    PathDecomposition(usize),
    Registry,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub results: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.results.iter().all(|r| r.ok)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            writeln!(out, "{} {} {}", r.name, if r.ok { "ok" } else { "FAIL" }, r.detail).unwrap();
        }
        out
    }
}

pub fn validate_reduction(out: &ReductionOutput, checks: &[Check]) -> ValidationReport {
    let g = &out.instance.graph.graph;
    let mut report = ValidationReport::default();
    let mut push = |name: &str, ok: bool, detail: String| {
        report.results.push(CheckResult { name: name.to_string(), ok, detail });
    };
    for &c in checks {
        match c {
            Check::Planarity => match euler_check(g, &out.embedding) {
                Ok(r) => push("planarity", r.planar, format!("faces={} components={}", r.faces, r.components)),
                Err(e) => push("planarity", false, e.to_string()),
            },
            Check::MaxDegree(d) => {
                let got = g.max_degree();
                push("max-degree", got <= d, format!("{got} <= {d}"));
            }
            Check::MaxVertices(n) => {
                push("vertices", g.n() <= n, format!("{} <= {n}", g.n()));
            }
            Check::RequestCount(k) => {
                let got = out.instance.requests.len();
                push("requests", got == k, format!("{got} == {k}"));
            }
            Check::PathDecomposition(max_bag) => match &out.decomposition {
                None => push("path-decomposition", false, "missing".into()),
                Some(td) => match validate_tree_decomposition(g, td) {
                    Ok(w) => {
                        let ok = td.is_path() && w + 1 <= max_bag;
                        push("path-decomposition", ok, format!("max bag {} <= {max_bag}, path={}", w + 1, td.is_path()));
                    }
                    Err(v) => push("path-decomposition", false, v.to_string()),
                },
            },
            Check::Registry => {
                let bad = out.registry.inconsistent();
                let mut ok = bad.is_empty();
                let mut detail = format!("inconsistent={bad:?}");
                if let Some(l0) = out.l0 {
                    let total = out.registry.total_asks();
                    ok &= total == l0;
                    write!(detail, " asks={total} l0={l0}").unwrap();
                } else {
                    let total = out.registry.total_asks();
                    let k = out.instance.requests.len();
                    ok &= total == k;
                    write!(detail, " asks={total} requests={k}").unwrap();
                }
                push("registry", ok, detail);
            }
        }
    }
    report
}

/// Incremental builder shared by the generators.
#[derive(Debug, Default)]
pub(crate) struct Builder {
    pub names: Vec<String>,
    pub edges: Vec<(Vertex, Vertex)>,
    pub colors: Vec<u32>,
    pub requests: Vec<(Vertex, Vertex)>,
    pub registry: GadgetRegistry,
    by_name: BTreeMap<String, Vertex>,
}

impl Builder {
    pub fn vertex(&mut self, name: impl Into<String>) -> Vertex {
        let name = name.into();
        debug_assert!(!self.by_name.contains_key(&name), "duplicate vertex name {name}");
        self.names.push(name.clone());
        self.colors.push(0);
        let v = self.names.len();
        self.by_name.insert(name, v);
        v
    }

    pub fn get(&self, name: &str) -> Vertex {
        self.by_name[name]
    }

    pub fn find(&self, name: &str) -> Option<Vertex> {
        self.by_name.get(name).copied()
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn edge(&mut self, a: Vertex, b: Vertex) {
        self.edges.push((a, b));
    }

    pub fn request(&mut self, s: Vertex, t: Vertex) -> usize {
        self.requests.push((s, t));
        self.requests.len() - 1
    }

    pub fn graph(&self) -> Result<crate::graph::Graph> {
        crate::graph::Graph::from_edges(self.n(), self.edges.iter().copied())
    }

    pub fn instance(&self) -> Result<Instance> {
        let g = self.graph()?;
        let cg = crate::graph::ColoredGraph::new(g, &self.colors)?;
        let req = crate::graph::RequestSet::new(self.requests.clone());
        req.validate(&cg.graph)?;
        Ok(Instance { graph: cg, requests: req })
    }
}

pub(crate) fn named(pairs: &[(&str, Vertex)]) -> BTreeMap<String, Vertex> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}
