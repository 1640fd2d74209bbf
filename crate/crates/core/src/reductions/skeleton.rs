//! Shared construction for the cycle-packing and disjoint-paths reductions
//! from planar 3-coloring: one selector per vertex, `deg - 1` chained
//! bifurcate gadgets, one edge gadget per edge.

use std::collections::HashMap;

use crate::embedding::{euler_check, RotationSystem};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

use super::gadgets::{Assembly, Sketch, Variant, BIFURCATE, EDGE, SC_CYCLES, SC_PATHS};
use super::{GadgetEntry, GadgetKind, ReductionOutput};

const COLORS: [&str; 3] = ["a", "b", "c"];

pub(crate) fn assemble(g: &Graph, rs: &RotationSystem, variant: Variant) -> Result<ReductionOutput> {
    if g.max_degree() > 5 {
        return Err(Error::Precondition(format!("maximum degree {} exceeds 5", g.max_degree())));
    }
    let report = euler_check(g, rs).map_err(|e| Error::Precondition(format!("bad embedding: {e}")))?;
    if !report.planar {
        return Err(Error::Precondition("embedding is not planar".into()));
    }
    let sc = Sketch::parse(if variant == Variant::Cycles { SC_CYCLES } else { SC_PATHS })?;
    let bf = Sketch::parse(BIFURCATE)?;
    let eg = Sketch::parse(EDGE)?;
    let mut asm = Assembly::new(variant)?;
    let mut triples: Vec<Vec<[Vertex; 3]>> = vec![Vec::new(); g.n() + 1];
    let mut id_map = Vec::new();
    for v in g.vertices() {
        let p = asm.place(&sc, GadgetKind::Sc, format!("v{v}"), &format!("sc{v}."), &[], 1)?;
        let mut cur = COLORS.map(|x| p.get(&sc, x));
        id_map.push((format!("v{v}"), cur.to_vec()));
        let mut firsts = Vec::new();
        for k in 1..g.degree(v) {
            let glue: Vec<(String, Vertex)> = COLORS.iter().zip(cur).map(|(x, w)| (format!("in_{x}"), w)).collect();
            let glue: Vec<(&str, Vertex)> = glue.iter().map(|(n, w)| (n.as_str(), *w)).collect();
            let p = asm.place(&bf, GadgetKind::Bifurcate, format!("v{v}/{k}"), &format!("bf{v}_{k}."), &glue, 0)?;
            if p.crossings != 12 {
                return Err(Error::Precondition(format!("bifurcate drawing has {} crossings", p.crossings)));
            }
            firsts.push(COLORS.map(|x| p.get(&bf, &format!("o1_{x}"))));
            cur = COLORS.map(|x| p.get(&bf, &format!("o2_{x}")));
        }
        // Counter-clockwise order of the free triples around the cluster.
        let mut list = vec![cur];
        list.extend(firsts.into_iter().rev());
        triples[v] = list;
    }
    for (i, j) in g.edges() {
        let slot = |a: Vertex, b: Vertex| rs.rotation(a).iter().position(|&x| x == b).expect("validated rotation");
        let ti = triples[i][slot(i, j)];
        let tj = triples[j][slot(j, i)];
        let mut glue = Vec::new();
        for (k, x) in COLORS.iter().enumerate() {
            glue.push((format!("l_{x}"), ti[k]));
            glue.push((format!("r_{x}"), tj[k]));
        }
        let glue: Vec<(&str, Vertex)> = glue.iter().map(|(n, w)| (n.as_str(), *w)).collect();
        let p = asm.place(&eg, GadgetKind::Edge, format!("v{i}-v{j}"), &format!("eg{i}_{j}."), &glue, 0)?;
        if p.crossings != 12 {
            return Err(Error::Precondition(format!("edge gadget drawing has {} crossings", p.crossings)));
        }
    }
    let (b, embedding) = asm.finish()?;
    let instance = b.instance()?;
    let l0 = (variant == Variant::Cycles).then(|| b.registry.total_asks());
    Ok(ReductionOutput {
        instance,
        l0,
        embedding,
        registry: b.registry,
        names: b.names,
        id_map,
        decomposition: None,
    })
}

fn color_index(c: u8) -> Result<usize> {
    match c {
        1..=3 => Ok(c as usize - 1),
        _ => Err(Error::Precondition(format!("color {c} outside 1..=3"))),
    }
}

fn parse_vertex_label(label: &str) -> Option<(usize, Option<usize>)> {
    let rest = label.strip_prefix('v')?;
    match rest.split_once('/') {
        Some((v, k)) => Some((v.parse().ok()?, Some(k.parse().ok()?))),
        None => Some((rest.parse().ok()?, None)),
    }
}

fn parse_edge_label(label: &str) -> Option<(usize, usize)> {
    let (a, b) = label.split_once('-')?;
    Some((a.strip_prefix('v')?.parse().ok()?, b.strip_prefix('v')?.parse().ok()?))
}

fn vx(e: &GadgetEntry, name: &str) -> Vertex {
    e.vertices[name]
}

/// The asked cycles (closed) or requested paths (open) of the proof's
/// forward construction, before subdivision.
fn logical_units(out: &ReductionOutput, coloring: &[u8], variant: Variant) -> Result<Vec<Vec<Vertex>>> {
    let mut units = Vec::new();
    for e in &out.registry.entries {
        match e.kind {
            GadgetKind::Sc if e.parent.is_none() => {
                let (v, _) = parse_vertex_label(&e.label).ok_or_else(|| Error::Precondition("bad selector label".into()))?;
                let x = color_index(*coloring.get(v - 1).ok_or_else(|| Error::Precondition("coloring too short".into()))?)?;
                let c = COLORS[x];
                units.push(match variant {
                    Variant::Cycles => {
                        let (p, q) = [("u1", "u2"), ("u2", "u3"), ("u1", "u3")][x];
                        vec![vx(e, "u0"), vx(e, p), vx(e, c), vx(e, q)]
                    }
                    Variant::Paths => vec![vx(e, "s"), vx(e, c), vx(e, "t")],
                });
            }
            GadgetKind::Bifurcate => {
                let (v, _) = parse_vertex_label(&e.label).ok_or_else(|| Error::Precondition("bad bifurcate label".into()))?;
                let chosen = color_index(coloring[v - 1])?;
                for (k, x) in COLORS.iter().enumerate() {
                    let n = |s: &str| vx(e, &format!("{s}_{x}"));
                    if k == chosen {
                        units.push(vec![n("p1"), n("p2"), n("p3"), n("p4")]);
                        units.push(vec![n("q1"), n("o1"), n("q2")]);
                        units.push(vec![n("r1"), n("o2"), n("r2")]);
                    } else {
                        units.push(vec![n("p1"), n("in"), n("p4")]);
                        units.push(vec![n("q1"), n("p2"), n("q2")]);
                        units.push(vec![n("r1"), n("p3"), n("r2")]);
                    }
                }
            }
            GadgetKind::Edge => {
                let (i, _) = parse_edge_label(&e.label).ok_or_else(|| Error::Precondition("bad edge label".into()))?;
                let ci = color_index(coloring[i - 1])?;
                for (k, x) in COLORS.iter().enumerate() {
                    let n = |s: &str| vx(e, &format!("{s}_{x}"));
                    let side = if k == ci { n("r") } else { n("l") };
                    units.push(vec![n("v1"), side, n("v2")]);
                }
            }
            _ => {}
        }
    }
    Ok(units)
}

/// Replaces logical edges by their routes through crossing gadgets.
fn expand(out: &ReductionOutput, units: &[Vec<Vertex>], closed: bool) -> Vec<Vec<Vertex>> {
    let mut routes: HashMap<(Vertex, Vertex), (&[Vertex], bool)> = HashMap::new();
    for e in &out.registry.entries {
        for r in &e.routes {
            routes.insert((r[0], r[r.len() - 1]), (r, false));
            routes.insert((r[r.len() - 1], r[0]), (r, true));
        }
    }
    units
        .iter()
        .map(|u| {
            let steps = if closed { u.len() } else { u.len() - 1 };
            let mut full = Vec::new();
            for i in 0..steps {
                let (x, y) = (u[i], u[(i + 1) % u.len()]);
                match routes.get(&(x, y)) {
                    Some(&(r, false)) => full.extend_from_slice(&r[..r.len() - 1]),
                    Some(&(r, true)) => full.extend(r.iter().rev().take(r.len() - 1)),
                    None => full.push(x),
                }
            }
            if !closed {
                full.push(u[u.len() - 1]);
            }
            full
        })
        .collect()
}

/// Forward witness: asked cycles (`Cycles`) or one path per request in
/// request order (`Paths`). Improper colorings yield colliding systems that
/// the verifier rejects.
pub(crate) fn forward(out: &ReductionOutput, coloring: &[u8], variant: Variant) -> Result<Vec<Vec<Vertex>>> {
    let n_source = out.registry.entries.iter().filter(|e| e.kind == GadgetKind::Sc && e.parent.is_none()).count();
    if coloring.len() != n_source {
        return Err(Error::Precondition(format!("{} colors for {n_source} vertices", coloring.len())));
    }
    let closed = variant == Variant::Cycles;
    let mut units = expand(out, &logical_units(out, coloring, variant)?, closed);
    let mut used = vec![false; out.names.len() + 1];
    for u in &units {
        for &x in u {
            used[x] = true;
        }
    }
    for pc in out.registry.of_kind(GadgetKind::PathCrossing) {
        for ex in out.registry.children(pc.id) {
            let (a, b) = match variant {
                Variant::Cycles => (ex.vertices["v"], ex.vertices["v'"]),
                Variant::Paths => (ex.vertices["s"], ex.vertices["t"]),
            };
            let (u, w) = (ex.vertices["u"], ex.vertices["u'"]);
            let x = if used[u] { w } else { u };
            used[x] = true;
            units.push(vec![a, x, b]);
        }
    }
    if closed {
        return Ok(units);
    }
    let index: HashMap<(Vertex, Vertex), usize> = out
        .instance
        .requests
        .pairs
        .iter()
        .enumerate()
        .map(|(i, &(s, t))| ((s.min(t), s.max(t)), i))
        .collect();
    let mut paths = vec![Vec::new(); index.len()];
    for p in units {
        let (s, t) = (p[0], p[p.len() - 1]);
        let i = *index.get(&(s.min(t), s.max(t))).ok_or_else(|| Error::Precondition(format!("no request {s}-{t}")))?;
        paths[i] = p;
    }
    Ok(paths)
}

/// Colors selected by the internal solution of every triple producer,
/// intersected per source vertex, as bit masks indexed `v - 1`.
pub(crate) fn selections(out: &ReductionOutput, families: &[Vec<Vertex>], variant: Variant) -> Result<Vec<u8>> {
    let mut owner: HashMap<Vertex, usize> = HashMap::new();
    for (i, f) in families.iter().enumerate() {
        for &x in f {
            owner.insert(x, i);
        }
    }
    let same = |x: Vertex, y: Vertex| matches!((owner.get(&x), owner.get(&y)), (Some(a), Some(b)) if a == b);
    let n = out.registry.entries.iter().filter(|e| e.kind == GadgetKind::Sc && e.parent.is_none()).count();
    let mut masks = vec![0b111u8; n];
    for e in &out.registry.entries {
        match e.kind {
            GadgetKind::Sc if e.parent.is_none() => {
                let (v, _) = parse_vertex_label(&e.label).ok_or_else(|| Error::Precondition("bad selector label".into()))?;
                let inner: &[&str] = if variant == Variant::Cycles { &["u0", "u1", "u2", "u3"] } else { &["s", "t"] };
                let mut m = 0;
                for (k, x) in COLORS.iter().enumerate() {
                    if inner.iter().any(|u| same(vx(e, u), vx(e, x))) {
                        m |= 1 << k;
                    }
                }
                masks[v - 1] &= m;
            }
            GadgetKind::Bifurcate => {
                let (v, _) = parse_vertex_label(&e.label).ok_or_else(|| Error::Precondition("bad bifurcate label".into()))?;
                let (mut m1, mut m2) = (0, 0);
                for (k, x) in COLORS.iter().enumerate() {
                    let n = |s: &str| vx(e, &format!("{s}_{x}"));
                    if same(n("o1"), n("q1")) {
                        m1 |= 1 << k;
                    }
                    if same(n("o2"), n("r1")) {
                        m2 |= 1 << k;
                    }
                }
                masks[v - 1] &= m1 & m2;
            }
            _ => {}
        }
    }
    Ok(masks)
}

/// A proper coloring of `g` drawing each vertex's color from its mask.
pub(crate) fn coloring_from_masks(g: &Graph, masks: &[u8]) -> Result<Vec<u8>> {
    fn go(g: &Graph, masks: &[u8], col: &mut Vec<u8>, v: usize) -> bool {
        if v > g.n() {
            return true;
        }
        for c in 1..=3u8 {
            if masks[v - 1] & 1 << (c - 1) == 0 {
                continue;
            }
            if g.neighbors(v).iter().any(|&u| u < v && col[u - 1] == c) {
                continue;
            }
            col[v - 1] = c;
            if go(g, masks, col, v + 1) {
                return true;
            }
        }
        col[v - 1] = 0;
        false
    }
    if masks.len() != g.n() {
        return Err(Error::Precondition("selection count differs from the source graph".into()));
    }
    let mut col = vec![0u8; g.n()];
    if go(g, masks, &mut col, 1) {
        Ok(col)
    } else {
        Err(Error::Precondition("no proper coloring agrees with the selected colors".into()))
    }
}
