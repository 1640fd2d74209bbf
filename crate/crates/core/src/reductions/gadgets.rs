//! Gadget drawings and their planar assembly.
//!
//! A gadget is a straight-line sketch. Placing it replaces every proper
//! crossing of two sketch edges by a path-crossing gadget, derives the local
//! rotation system from the coordinates and glues the result to earlier
//! pieces at shared vertices, inserting each piece into the outer-face corner
//! of the other.

use std::collections::BTreeMap;

use crate::embedding::{rotation_from_coordinates, segment_crossings, RotationSystem};
use crate::error::{parse_err, Error, Result};
use crate::graph::{Graph, Vertex};

use super::{Builder, GadgetKind};

pub(crate) const PATH_CROSSING: &str = include_str!("../../data/gadgets/path_crossing.txt");
pub(crate) const SC_CYCLES: &str = include_str!("../../data/gadgets/sc_cycles.txt");
pub(crate) const SC_PATHS: &str = include_str!("../../data/gadgets/sc_paths.txt");
pub(crate) const BIFURCATE: &str = include_str!("../../data/gadgets/bifurcate.txt");
pub(crate) const EDGE: &str = include_str!("../../data/gadgets/edge.txt");

/// Scale of a path-crossing gadget relative to its host sketch.
const PC_SCALE: f64 = 0.02;

/// Expel-style gadgets ask for a cycle (`Cycles`) or an `s-t` request (`Paths`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Variant {
    Cycles,
    Paths,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SubKind {
    Expel,
    DoubleExpel,
}

#[derive(Debug, Clone)]
struct Sub {
    kind: SubKind,
    attach: Vec<usize>,
    inner: [usize; 2],
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Sketch {
    pub names: Vec<String>,
    pub coords: Vec<(f64, f64)>,
    plain: Vec<(usize, usize)>,
    subs: Vec<Sub>,
    requests: Vec<(usize, usize)>,
}

impl Sketch {
    pub fn parse(text: &str) -> Result<Sketch> {
        let mut sk = Sketch::default();
        let mut by_name: BTreeMap<String, usize> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = l.split_whitespace().collect();
            let num = |t: &str| t.parse::<f64>().map_err(|_| parse_err(line, format!("bad coordinate {t}")));
            let find = |by_name: &BTreeMap<String, usize>, t: &str| {
                by_name.get(t).copied().ok_or_else(|| parse_err(line, format!("unknown vertex {t}")))
            };
            let add = |sk: &mut Sketch, by_name: &mut BTreeMap<String, usize>, name: &str, x: f64, y: f64| {
                if by_name.contains_key(name) {
                    return Err(parse_err(line, format!("duplicate vertex {name}")));
                }
                by_name.insert(name.to_string(), sk.names.len());
                sk.names.push(name.to_string());
                sk.coords.push((x, y));
                Ok(sk.names.len() - 1)
            };
            match (toks[0], toks.len()) {
                ("vertex", 4) => {
                    add(&mut sk, &mut by_name, toks[1], num(toks[2])?, num(toks[3])?)?;
                }
                ("edge", 3) => {
                    let e = (find(&by_name, toks[1])?, find(&by_name, toks[2])?);
                    sk.plain.push(e);
                }
                ("path", n) if n >= 3 => {
                    for w in toks[1..].windows(2) {
                        let e = (find(&by_name, w[0])?, find(&by_name, w[1])?);
                        sk.plain.push(e);
                    }
                }
                ("request", 3) => {
                    let r = (find(&by_name, toks[1])?, find(&by_name, toks[2])?);
                    sk.requests.push(r);
                }
                ("expel", 9) | ("double-expel", 10) => {
                    let (kind, na) = if toks[0] == "expel" { (SubKind::Expel, 2) } else { (SubKind::DoubleExpel, 3) };
                    let attach = toks[1..=na].iter().map(|t| find(&by_name, t)).collect::<Result<Vec<_>>>()?;
                    let r = &toks[na + 1..];
                    let a = add(&mut sk, &mut by_name, r[0], num(r[1])?, num(r[2])?)?;
                    let b = add(&mut sk, &mut by_name, r[3], num(r[4])?, num(r[5])?)?;
                    sk.subs.push(Sub { kind, attach, inner: [a, b] });
                }
                _ => return Err(parse_err(line, format!("unrecognized gadget line `{l}`"))),
            }
        }
        Ok(sk)
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Edges of the sketch once sub-gadgets are expanded.
    fn logical_edges(&self, variant: Variant) -> Vec<(usize, usize)> {
        let mut out = self.plain.clone();
        for s in &self.subs {
            let [a, b] = s.inner;
            match s.kind {
                SubKind::Expel => {
                    let (u, w) = (s.attach[0], s.attach[1]);
                    out.extend([(u, a), (u, b), (w, a), (w, b)]);
                }
                SubKind::DoubleExpel => {
                    let (u, w1, w2) = (s.attach[0], s.attach[1], s.attach[2]);
                    out.extend([(u, a), (u, b), (w1, a), (w2, b), (w1, w2)]);
                }
            }
            if variant == Variant::Cycles {
                out.push((a, b));
            }
        }
        out
    }

    /// Number of proper crossings in the drawing.
    #[cfg(test)]
    pub fn crossings(&self, variant: Variant) -> usize {
        let edges: Vec<(Vertex, Vertex)> = self.logical_edges(variant).iter().map(|&(a, b)| (a + 1, b + 1)).collect();
        segment_crossings(&edges, &self.coords).len()
    }
}

/// Result of placing one sketch.
#[derive(Debug, Clone)]
pub(crate) struct Placed {
    /// Global id of every sketch vertex.
    pub local: Vec<Vertex>,
    pub crossings: usize,
}

impl Placed {
    pub fn get(&self, sk: &Sketch, name: &str) -> Vertex {
        self.local[sk.index(name).expect("sketch vertex exists")]
    }
}

pub(crate) struct Assembly {
    pub b: Builder,
    pub variant: Variant,
    parts: Vec<Vec<Vec<Vertex>>>,
    pc: Sketch,
}

struct PieceEdges {
    vertices: Vec<Vertex>,
    coords: Vec<(f64, f64)>,
    edges: Vec<(usize, usize)>,
}

impl PieceEdges {
    fn add_vertex(&mut self, g: Vertex, xy: (f64, f64)) -> usize {
        self.vertices.push(g);
        self.coords.push(xy);
        self.vertices.len() - 1
    }
}

fn sub_names(kind: SubKind, variant: Variant) -> &'static [&'static str] {
    match (kind, variant) {
        (SubKind::Expel, Variant::Cycles) => &["u", "u'", "v", "v'"],
        (SubKind::Expel, Variant::Paths) => &["u", "u'", "s", "t"],
        (SubKind::DoubleExpel, Variant::Cycles) => &["u", "u'", "u''", "v", "v'"],
        (SubKind::DoubleExpel, Variant::Paths) => &["u", "u'", "u''", "s", "t"],
    }
}

impl Assembly {
    pub fn new(variant: Variant) -> Result<Self> {
        Ok(Assembly { b: Builder::default(), variant, parts: Vec::new(), pc: Sketch::parse(PATH_CROSSING)? })
    }

    fn new_vertex(&mut self, name: String) -> Vertex {
        self.parts.push(Vec::new());
        self.b.vertex(name)
    }

    /// Adds the expel or double-expel gadgets of `subs` under `parent`.
    fn register_subs(&mut self, subs: &[Sub], map: &[Vertex], parent: usize) {
        for s in subs {
            let names = sub_names(s.kind, self.variant);
            let verts: Vec<Vertex> = s.attach.iter().chain(s.inner.iter()).map(|&i| map[i]).collect();
            let kind = if s.kind == SubKind::Expel { GadgetKind::Expel } else { GadgetKind::DoubleExpel };
            let id = self.b.registry.add(kind, Some(parent), names.iter().map(|n| n.to_string()).zip(verts).collect(), 1);
            if self.variant == Variant::Paths {
                let req = self.b.request(map[s.inner[0]], map[s.inner[1]]);
                self.b.registry.entries[id].requests.push(req);
            }
        }
    }

    /// Places `sk`, gluing the named sketch vertices to existing vertices.
    /// `own` is the number of cycles asked by the gadget itself; in the paths
    /// variant the sketch's own requests are used instead.
    pub fn place(
        &mut self,
        sk: &Sketch,
        kind: GadgetKind,
        label: String,
        prefix: &str,
        glue: &[(&str, Vertex)],
        own: usize,
    ) -> Result<Placed> {
        let variant = self.variant;
        let mut local = Vec::with_capacity(sk.names.len());
        let mut glued = vec![false; sk.names.len()];
        for (i, name) in sk.names.iter().enumerate() {
            match glue.iter().find(|g| g.0 == name) {
                Some(&(_, v)) => {
                    glued[i] = true;
                    local.push(v);
                }
                None => local.push(self.new_vertex(format!("{prefix}{name}"))),
            }
        }
        let mut piece = PieceEdges { vertices: local.clone(), coords: sk.coords.clone(), edges: Vec::new() };
        let vertices = sk.names.iter().cloned().zip(local.iter().copied()).collect();
        let id = self.b.registry.add(kind, None, vertices, 0);
        self.b.registry.entries[id].label = label;
        match variant {
            Variant::Cycles => self.b.registry.entries[id].own = own,
            Variant::Paths => {
                for &(s, t) in &sk.requests {
                    let req = self.b.request(local[s], local[t]);
                    self.b.registry.entries[id].requests.push(req);
                }
                self.b.registry.entries[id].own = sk.requests.len();
            }
        }
        self.register_subs(&sk.subs, &local, id);

        let logical = sk.logical_edges(variant);
        let as_vertices: Vec<(Vertex, Vertex)> = logical.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
        let crossings = segment_crossings(&as_vertices, &sk.coords);
        // on_edge[e] = (parameter, local path through the crossing gadget)
        let mut on_edge: Vec<Vec<(f64, Vec<usize>)>> = vec![Vec::new(); logical.len()];
        for (ci, &(ei, ej, p)) in crossings.iter().enumerate() {
            let (a, b) = logical[ei];
            let (c, d) = logical[ej];
            let unit = |from: (f64, f64), to: (f64, f64)| {
                let (dx, dy) = (to.0 - from.0, to.1 - from.1);
                let len = (dx * dx + dy * dy).sqrt();
                (dx / len, dy / len)
            };
            let de = unit(sk.coords[a], sk.coords[b]);
            let mut df = unit(sk.coords[c], sk.coords[d]);
            let flipped = de.0 * df.1 - de.1 * df.0 < 0.0;
            if flipped {
                df = (-df.0, -df.1);
            }
            let pc_prefix = format!("{prefix}pc{ci}.");
            let mut pc_local = Vec::with_capacity(self.pc.names.len());
            let mut pc_map = Vec::with_capacity(self.pc.names.len());
            for (k, name) in self.pc.names.clone().iter().enumerate() {
                let (x, y) = self.pc.coords[k];
                let xy = (p.0 + PC_SCALE * (x * de.0 + y * df.0), p.1 + PC_SCALE * (x * de.1 + y * df.1));
                let g = self.new_vertex(format!("{pc_prefix}{name}"));
                pc_map.push(g);
                pc_local.push(piece.add_vertex(g, xy));
            }
            for &(x, y) in &self.pc.logical_edges(variant) {
                piece.edges.push((pc_local[x], pc_local[y]));
            }
            let pc_vertices = self.pc.names.iter().cloned().zip(pc_map.iter().copied()).collect();
            let pc_id = self.b.registry.add(GadgetKind::PathCrossing, Some(id), pc_vertices, 0);
            self.b.registry.entries[pc_id].own = 0;
            let subs = self.pc.subs.clone();
            self.register_subs(&subs, &pc_map, pc_id);
            self.b.registry.entries[pc_id].parent = Some(id);

            let ix = |n: &str| pc_local[self.pc.index(n).expect("template vertex")];
            let horizontal: Vec<usize> = ["pc1", "w11", "w12", "w0", "w32", "w31", "pc3"].iter().map(|n| ix(n)).collect();
            let mut vertical: Vec<usize> = ["pc4", "w41", "w42", "w0", "w22", "w21", "pc2"].iter().map(|n| ix(n)).collect();
            if flipped {
                vertical.reverse();
            }
            let param = |from: (f64, f64), to: (f64, f64)| {
                let (dx, dy) = (to.0 - from.0, to.1 - from.1);
                ((p.0 - from.0) * dx + (p.1 - from.1) * dy) / (dx * dx + dy * dy)
            };
            on_edge[ei].push((param(sk.coords[a], sk.coords[b]), horizontal));
            on_edge[ej].push((param(sk.coords[c], sk.coords[d]), vertical));
        }
        let mut routes = Vec::new();
        for (e, &(a, b)) in logical.iter().enumerate() {
            let mut segs = std::mem::take(&mut on_edge[e]);
            segs.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite parameters"));
            let mut route = vec![a];
            for (_, seg) in segs {
                route.extend(seg);
            }
            route.push(b);
            // Consecutive vertices inside one crossing gadget are already joined.
            let mut k = 0;
            while k + 1 < route.len() {
                let (x, y) = (route[k], route[k + 1]);
                let inside = k > 0 && k + 2 < route.len() && (piece.edges.contains(&(x, y)) || piece.edges.contains(&(y, x)));
                if !inside {
                    piece.edges.push((x, y));
                }
                k += 1;
            }
            if route.len() > 2 {
                routes.push(route.iter().map(|&x| piece.vertices[x]).collect());
            }
        }
        self.b.registry.entries[id].routes = routes;

        self.attach(&piece, &glued)?;
        for &(x, y) in &piece.edges {
            self.b.edge(piece.vertices[x], piece.vertices[y]);
        }
        Ok(Placed { local, crossings: crossings.len() })
    }

    /// Records the rotation of every piece vertex with its outer-face gap last.
    fn attach(&mut self, piece: &PieceEdges, glued: &[bool]) -> Result<()> {
        let n = piece.vertices.len();
        let g = Graph::from_edges(n, piece.edges.iter().map(|&(x, y)| (x + 1, y + 1)))?;
        let rs = rotation_from_coordinates(&g, &piece.coords);
        let outer = outer_faces(&g, &rs, &piece.coords);
        let fm = rs.trace_faces(&g);
        for v in 1..=n {
            let rot = rs.rotation(v);
            if rot.is_empty() {
                continue;
            }
            let gap = (0..rot.len()).find(|&i| outer.contains(&rs.corner_face(&fm, v, i)));
            let rotated: Vec<usize> = match gap {
                Some(i) => (1..=rot.len()).map(|k| rot[(i + k) % rot.len()]).collect(),
                None if v <= glued.len() && glued[v - 1] => {
                    return Err(Error::Precondition(format!("glued vertex {} is not on the outer face", piece.vertices[v - 1])));
                }
                None => rot.to_vec(),
            };
            self.parts[piece.vertices[v - 1] - 1].push(rotated.into_iter().map(|x| piece.vertices[x - 1]).collect());
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<(Builder, RotationSystem)> {
        self.b.registry.roll_up();
        let g = self.b.graph()?;
        let rot = self.parts.into_iter().map(|p| p.concat()).collect();
        let rs = RotationSystem::new(&g, rot)?;
        Ok((self.b, rs))
    }
}

/// The outer face of every component. Faces keep their region on the right,
/// so the outer boundary is the one traced counter-clockwise with the largest
/// signed area.
fn outer_faces(g: &Graph, rs: &RotationSystem, coords: &[(f64, f64)]) -> Vec<usize> {
    let fm = rs.trace_faces(g);
    let mut comp = vec![usize::MAX; g.n() + 1];
    for (ci, c) in g.components().iter().enumerate() {
        for &v in c {
            comp[v] = ci;
        }
    }
    let mut best: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for (fi, f) in fm.faces.iter().enumerate() {
        let area: f64 = f
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (coords[u - 1], coords[v - 1]);
                a.0 * b.1 - b.0 * a.1
            })
            .sum();
        let c = comp[f[0].0];
        match best.get(&c) {
            Some(&(a, _)) if a >= area => {}
            _ => {
                best.insert(c, (area, fi));
            }
        }
    }
    best.values().map(|&(_, f)| f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::euler_check;

    #[test]
    fn sketches_parse_and_cross_as_drawn() {
        for v in [Variant::Cycles, Variant::Paths] {
            assert_eq!(Sketch::parse(BIFURCATE).unwrap().crossings(v), 12);
            assert_eq!(Sketch::parse(EDGE).unwrap().crossings(v), 12);
            assert_eq!(Sketch::parse(PATH_CROSSING).unwrap().crossings(v), 0);
        }
        assert_eq!(Sketch::parse(SC_CYCLES).unwrap().crossings(Variant::Cycles), 0);
        assert_eq!(Sketch::parse(SC_PATHS).unwrap().crossings(Variant::Paths), 3);
    }

    #[test]
    fn single_pieces_are_planar() {
        for (text, v) in [(BIFURCATE, Variant::Cycles), (EDGE, Variant::Paths), (SC_PATHS, Variant::Paths)] {
            let sk = Sketch::parse(text).unwrap();
            let mut asm = Assembly::new(v).unwrap();
            asm.place(&sk, GadgetKind::Bifurcate, String::new(), "", &[], 0).unwrap();
            let (b, rs) = asm.finish().unwrap();
            let g = b.graph().unwrap();
            assert!(euler_check(&g, &rs).unwrap().planar);
        }
    }
}
