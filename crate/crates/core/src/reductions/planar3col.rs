//! 3-coloring to planar 3-coloring of maximum degree 5.
//!
//! Vertex `v_i` of the input becomes `u_i`; its color runs down column `i`
//! through the `alpha` vertices and along row `i` through the `beta` vertices,
//! with a cross-color gadget wherever a row meets a column. An input edge
//! `v_i v_j` joins `alpha_{i,j}` and `beta_{i,j}`. Vertices of degree 6 or 7
//! are then split into three copies tied together by two color gadgets.

use crate::embedding::{euler_check, rotation_from_coordinates, RotationSystem};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::oracle::{extend_3coloring, ColoringOutcome};

use super::{named, Builder, GadgetKind, ReductionOutput};

/// Offsets of the cross-color internals from the gadget center.
const CC_INNER: [(&str, f64, f64); 9] = [
    ("c", 0.0, 0.0),
    ("l", -1.0, 0.0),
    ("r", 1.0, 0.0),
    ("t", 0.0, 1.0),
    ("b", 0.0, -1.0),
    ("ne", 1.0, 1.0),
    ("nw", -1.0, 1.0),
    ("se", 1.0, -1.0),
    ("sw", -1.0, -1.0),
];

const CC_EDGES: [(&str, &str); 24] = [
    ("c", "l"),
    ("c", "r"),
    ("c", "t"),
    ("c", "b"),
    ("l", "t"),
    ("l", "b"),
    ("r", "t"),
    ("r", "b"),
    ("ne", "r"),
    ("se", "b"),
    ("nw", "t"),
    ("sw", "l"),
    ("u", "ne"),
    ("u", "t"),
    ("u", "nw"),
    ("u'", "se"),
    ("u'", "b"),
    ("u'", "sw"),
    ("v'", "ne"),
    ("v'", "r"),
    ("v'", "se"),
    ("v", "nw"),
    ("v", "l"),
    ("v", "sw"),
];

struct Drawing {
    b: Builder,
    coords: Vec<(f64, f64)>,
}

impl Drawing {
    fn vertex(&mut self, name: String, x: f64, y: f64) -> Vertex {
        self.coords.push((x, y));
        self.b.vertex(name)
    }

    /// Color gadget forcing `a` and `c` into one color class.
    fn color(&mut self, a: Vertex, c: Vertex, label: &str) {
        let (pa, pc) = (self.coords[a - 1], self.coords[c - 1]);
        let m = ((pa.0 + pc.0) / 2.0, (pa.1 + pc.1) / 2.0);
        let (dx, dy) = (pc.0 - pa.0, pc.1 - pa.1);
        let len = (dx * dx + dy * dy).sqrt();
        let p = (-dy / len, dx / len);
        let top = self.vertex(format!("{label}.top"), m.0 + p.0, m.1 + p.1);
        let bot = self.vertex(format!("{label}.bottom"), m.0 - p.0, m.1 - p.1);
        for (x, y) in [(a, top), (a, bot), (c, top), (c, bot), (top, bot)] {
            self.b.edge(x, y);
        }
        let id = self.b.registry.add(GadgetKind::C, None, named(&[("u", a), ("top", top), ("bottom", bot), ("u'", c)]), 0);
        self.b.registry.entries[id].label = label.to_string();
    }

    /// Cross-color gadget centered at `(x, y)` with terminals top, left,
    /// bottom, right in counter-clockwise order.
    fn cross(&mut self, x: f64, y: f64, terms: [Vertex; 4], label: &str) {
        let mut map = named(&[("u", terms[0]), ("v", terms[1]), ("u'", terms[2]), ("v'", terms[3])]);
        for (n, dx, dy) in CC_INNER {
            let v = self.vertex(format!("{label}.{n}"), x + dx, y + dy);
            map.insert(n.to_string(), v);
        }
        for (a, c) in CC_EDGES {
            self.b.edge(map[a], map[c]);
        }
        let id = self.b.registry.add(GadgetKind::Cc, None, map, 0);
        self.b.registry.entries[id].label = label.to_string();
    }
}

pub fn reduce_3col_to_planar3col(g: &Graph) -> Result<ReductionOutput> {
    let n = g.n();
    let mut d = Drawing { b: Builder::default(), coords: Vec::new() };
    let f = |k: usize| k as f64 * 10.0;
    let u: Vec<Vertex> = (1..=n).map(|i| d.vertex(format!("u{i}"), f(i), -f(i))).collect();
    let v: Vec<Vertex> = (1..=n).map(|j| d.vertex(format!("v{j}"), 5.0, -f(j))).collect();
    let w: Vec<Vertex> = (1..=n).map(|i| d.vertex(format!("w{i}"), f(i), -f(n + 1) + 5.0)).collect();
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let mut alpha = vec![0; n * n];
    let mut beta = vec![0; n * n];
    for i in 1..=n {
        for j in i + 1..=n {
            alpha[idx(i, j)] = d.vertex(format!("alpha{i}_{j}"), f(i), -f(j) + 5.0);
            beta[idx(i, j)] = d.vertex(format!("beta{i}_{j}"), f(i) + 5.0, -f(j));
        }
    }
    for i in 1..=n {
        let down = if i < n { alpha[idx(i, i + 1)] } else { w[n - 1] };
        d.color(u[i - 1], down, &format!("cu{i}"));
        let left = if i > 1 { beta[idx(i - 1, i)] } else { v[0] };
        d.color(u[i - 1], left, &format!("cl{i}"));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let top = alpha[idx(i, j)];
            let bottom = if j < n { alpha[idx(i, j + 1)] } else { w[i - 1] };
            let right = beta[idx(i, j)];
            let left = if i > 1 { beta[idx(i - 1, j)] } else { v[j - 1] };
            d.cross(f(i), -f(j), [top, left, bottom, right], &format!("cc{i}_{j}"));
            if g.has_edge(i, j) {
                d.b.edge(top, right);
            }
        }
    }
    let h = d.b.graph()?;
    let rs = rotation_from_coordinates(&h, &d.coords);
    if !euler_check(&h, &rs)?.planar {
        return Err(Error::Precondition("grid drawing is not planar".into()));
    }
    let mut rot: Vec<Vec<Vertex>> = (1..=h.n()).map(|x| rs.rotation(x).to_vec()).collect();
    let mut b = d.b;
    for x in 1..=h.n() {
        if rot[x - 1].len() >= 6 {
            split(&mut b, &mut rot, x);
        }
    }
    let h = b.graph()?;
    let embedding = RotationSystem::new(&h, rot)?;
    Ok(ReductionOutput {
        instance: b.instance()?,
        l0: None,
        embedding,
        registry: b.registry,
        names: b.names,
        id_map: (1..=n).map(|i| (format!("v{i}"), vec![u[i - 1]])).collect(),
        decomposition: None,
    })
}

/// Replaces `x` (degree 6 or 7) by copies `x`, `x2`, `x3` chained with two
/// color gadgets: `x` keeps three consecutive neighbors, `x3` the last three,
/// `x2` the rest.
fn split(b: &mut Builder, rot: &mut Vec<Vec<Vertex>>, x: Vertex) {
    let r = rot[x - 1].clone();
    let deg = r.len();
    let name = b.names[x - 1].clone();
    let fresh = |b: &mut Builder, rot: &mut Vec<Vec<Vertex>>, s: &str| {
        rot.push(Vec::new());
        b.vertex(format!("{name}/{s}"))
    };
    let x2 = fresh(b, rot, "2");
    let x3 = fresh(b, rot, "3");
    let t1 = fresh(b, rot, "t1");
    let b1 = fresh(b, rot, "b1");
    let t2 = fresh(b, rot, "t2");
    let b2 = fresh(b, rot, "b2");
    let (l, mid, rr) = (&r[..3], &r[3..deg - 3], &r[deg - 3..]);
    let mut moved = Vec::new();
    for (set, to) in [(mid, x2), (rr, x3)] {
        for &y in set {
            for z in rot[y - 1].iter_mut() {
                if *z == x {
                    *z = to;
                }
            }
            moved.push((y, to));
        }
    }
    b.edges.retain(|&(p, q)| !moved.iter().any(|&(y, _)| (p, q) == (x, y) || (p, q) == (y, x)));
    for (y, to) in moved {
        b.edge(to, y);
    }
    rot[x - 1] = [vec![t1], l.to_vec(), vec![b1]].concat();
    rot[x2 - 1] = [vec![t2, t1, b1], mid.to_vec(), vec![b2]].concat();
    rot[x3 - 1] = [vec![t2, b2], rr.to_vec()].concat();
    rot[t1 - 1] = vec![x, b1, x2];
    rot[b1 - 1] = vec![x2, t1, x];
    rot[t2 - 1] = vec![x2, b2, x3];
    rot[b2 - 1] = vec![x3, t2, x2];
    for (p, q) in [(x, t1), (x, b1), (t1, b1), (x2, t1), (x2, b1), (x2, t2), (x2, b2), (t2, b2), (x3, t2), (x3, b2)] {
        b.edge(p, q);
    }
    for (a, top, bot, c) in [(x, t1, b1, x2), (x2, t2, b2, x3)] {
        let id = b.registry.add(GadgetKind::C, None, named(&[("u", a), ("top", top), ("bottom", bot), ("u'", c)]), 0);
        b.registry.entries[id].label = format!("split {name}");
    }
}

/// Extends a coloring of the input (colors `1..=3`, index `v - 1`) to the
/// whole reduced graph.
pub fn p3_forward(out: &ReductionOutput, coloring: &[u8]) -> Result<Vec<u8>> {
    let h = &out.instance.graph.graph;
    if coloring.len() != out.id_map.len() {
        return Err(Error::Precondition(format!("{} colors for {} vertices", coloring.len(), out.id_map.len())));
    }
    let mut pre = vec![0u8; h.n()];
    for ((_, vs), &c) in out.id_map.iter().zip(coloring) {
        if !(1..=3).contains(&c) {
            return Err(Error::Precondition(format!("color {c} outside 1..=3")));
        }
        pre[vs[0] - 1] = c;
    }
    match extend_3coloring(h, &pre, None)? {
        ColoringOutcome::Colorable(c) => Ok(c),
        ColoringOutcome::NotColorable => Err(Error::Precondition("coloring does not extend".into())),
    }
}

/// Reads the input coloring off a coloring of the reduced graph.
pub fn p3_backward(out: &ReductionOutput, h_coloring: &[u8]) -> Result<Vec<u8>> {
    out.id_map
        .iter()
        .map(|(_, vs)| {
            h_coloring.get(vs[0] - 1).copied().ok_or_else(|| Error::Precondition("coloring too short".into()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::all_graphs;
    use crate::oracle::{brute_3coloring, verify_coloring};

    fn all_colorings(h: &Graph) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let total = 3usize.pow(h.n() as u32);
        for mut code in 0..total {
            let col: Vec<u8> = (0..h.n())
                .map(|_| {
                    let c = (code % 3) as u8 + 1;
                    code /= 3;
                    c
                })
                .collect();
            if verify_coloring(h, &col).is_ok() {
                out.push(col);
            }
        }
        out
    }

    #[test]
    fn cross_gadget_transmits_both_colors() {
        let mut d = Drawing { b: Builder::default(), coords: Vec::new() };
        let t = [
            d.vertex("u".into(), 0.0, 5.0),
            d.vertex("v".into(), -5.0, 0.0),
            d.vertex("u'".into(), 0.0, -5.0),
            d.vertex("v'".into(), 5.0, 0.0),
        ];
        d.cross(0.0, 0.0, t, "cc");
        let h = d.b.graph().unwrap();
        assert_eq!(h.n(), 13);
        let cols = all_colorings(&h);
        assert!(cols.iter().all(|c| c[0] == c[2] && c[1] == c[3]));
        for cu in 1..=3 {
            for cv in 1..=3 {
                assert!(cols.iter().any(|c| c[0] == cu && c[1] == cv), "{cu} {cv}");
            }
        }
        let rs = rotation_from_coordinates(&h, &d.coords);
        assert!(euler_check(&h, &rs).unwrap().planar);
    }

    #[test]
    fn color_gadget_forces_equality() {
        let mut d = Drawing { b: Builder::default(), coords: Vec::new() };
        let a = d.vertex("a".into(), 0.0, 0.0);
        let c = d.vertex("c".into(), 5.0, 0.0);
        d.color(a, c, "c");
        let cols = all_colorings(&d.b.graph().unwrap());
        assert!(!cols.is_empty() && cols.iter().all(|col| col[0] == col[1]));
    }

    #[test]
    fn small_graphs_preserve_colorability() {
        for n in 1..=4 {
            for g in all_graphs(n) {
                let out = reduce_3col_to_planar3col(&g).unwrap();
                let h = &out.instance.graph.graph;
                assert!(h.max_degree() <= 5);
                assert!(h.n() <= 65 * n * n);
                assert!(euler_check(h, &out.embedding).unwrap().planar);
                let src = brute_3coloring(&g, None).unwrap();
                let dst = brute_3coloring(h, None).unwrap();
                assert_eq!(matches!(src, ColoringOutcome::Colorable(_)), matches!(dst, ColoringOutcome::Colorable(_)));
                if let ColoringOutcome::Colorable(c) = src {
                    let hc = p3_forward(&out, &c).unwrap();
                    verify_coloring(h, &hc).unwrap();
                    assert_eq!(p3_backward(&out, &hc).unwrap(), c);
                }
                if let ColoringOutcome::Colorable(hc) = dst {
                    verify_coloring(&g, &p3_backward(&out, &hc).unwrap()).unwrap();
                }
            }
        }
    }
}
