//! Combinatorial embeddings (rotation systems), face tracing and the Euler
//! genus-zero certificate.
//!
//! Rotations list neighbors in counter-clockwise order. The face containing
//! the dart `u -> v` continues with `v -> w`, where `w` follows `u` in the
//! rotation of `v`. Corner `i` of `v` is the angle between `rot[v][i]` and
//! `rot[v][i + 1]`; it lies in the face of the dart `rot[v][i] -> v`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    rot: Vec<Vec<Vertex>>,
}

/// Result of tracing the faces of an embedded graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerReport {
    pub faces: usize,
    pub components: usize,
    /// `V - E + F = 2` for every connected component.
    pub planar: bool,
}

/// Traced faces together with the dart and corner lookups.
#[derive(Debug, Clone)]
pub struct FaceMap {
    /// Darts of each face in traversal order.
    pub faces: Vec<Vec<(Vertex, Vertex)>>,
    dart_face: HashMap<(Vertex, Vertex), usize>,
}

impl FaceMap {
    pub fn face_of_dart(&self, u: Vertex, v: Vertex) -> usize {
        self.dart_face[&(u, v)]
    }
}

impl RotationSystem {
    /// `rot[v - 1]` is the counter-clockwise neighbor order of `v`.
    pub fn new(g: &Graph, rot: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut full = vec![Vec::new()];
        full.extend(rot);
        let rs = RotationSystem { rot: full };
        rs.validate(g)?;
        Ok(rs)
    }

    #[allow(dead_code)]
    pub(crate) fn from_full_unchecked(rot: Vec<Vec<Vertex>>) -> Self {
        RotationSystem { rot }
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rot[v]
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.rot.len() != g.n() + 1 {
            return Err(Error::Rotation(format!(
                "rotation covers {} vertices, graph has {}",
                self.rot.len() - 1,
                g.n()
            )));
        }
        for v in g.vertices() {
            let mut sorted = self.rot[v].clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(Error::Rotation(format!(
                    "rotation at {v} does not list its incident edges exactly once"
                )));
            }
        }
        Ok(())
    }

    fn position(&self, v: Vertex, u: Vertex) -> usize {
        self.rot[v].iter().position(|&x| x == u).expect("dart must exist")
    }

    /// Successor dart of `u -> v` along its face.
    pub fn next_dart(&self, u: Vertex, v: Vertex) -> (Vertex, Vertex) {
        let r = &self.rot[v];
        let w = r[(self.position(v, u) + 1) % r.len()];
        (v, w)
    }

    pub fn trace_faces(&self, g: &Graph) -> FaceMap {
        let mut dart_face = HashMap::new();
        let mut faces = Vec::new();
        for (a, b) in g.edges() {
            for start in [(a, b), (b, a)] {
                if dart_face.contains_key(&start) {
                    continue;
                }
                let id = faces.len();
                let mut face = Vec::new();
                let mut d = start;
                loop {
                    dart_face.insert(d, id);
                    face.push(d);
                    d = self.next_dart(d.0, d.1);
                    if d == start {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        FaceMap { faces, dart_face }
    }

    /// Face containing corner `i` of `v`.
    pub fn corner_face(&self, faces: &FaceMap, v: Vertex, i: usize) -> usize {
        faces.face_of_dart(self.rot[v][i], v)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in 1..self.rot.len() {
            write!(out, "rot {v}").unwrap();
            for u in &self.rot[v] {
                write!(out, " {u}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Parses `rot <v> <n1> <n2> ...` lines; vertices without a line get an empty
/// rotation.
pub fn parse_embedding(g: &Graph, text: &str) -> Result<RotationSystem> {
    let mut rot = vec![Vec::new(); g.n() + 1];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let mut toks = l.split_whitespace();
        if toks.next() != Some("rot") {
            return Err(parse_err(line, "expected `rot <v> ...`"));
        }
        let nums: std::result::Result<Vec<usize>, _> = toks.map(str::parse::<usize>).collect();
        let nums = nums.map_err(|_| parse_err(line, "bad vertex id"))?;
        let (&v, rest) = nums.split_first().ok_or_else(|| parse_err(line, "missing vertex"))?;
        if !g.contains_vertex(v) {
            return Err(Error::VertexOutOfRange(v));
        }
        rot[v] = rest.to_vec();
    }
    let rs = RotationSystem { rot };
    rs.validate(g)?;
    Ok(rs)
}

/// Traces faces and checks `V - E + F = 2` per connected component.
pub fn euler_check(g: &Graph, rs: &RotationSystem) -> Result<EulerReport> {
    rs.validate(g)?;
    let fm = rs.trace_faces(g);
    let comps = g.components();
    let mut comp_of = vec![0usize; g.n() + 1];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut faces_per = vec![0i64; comps.len()];
    for f in &fm.faces {
        faces_per[comp_of[f[0].0]] += 1;
    }
    let mut edges_per = vec![0i64; comps.len()];
    for (u, _) in g.edges() {
        edges_per[comp_of[u]] += 1;
    }
    let mut planar = true;
    for (i, c) in comps.iter().enumerate() {
        // An isolated vertex sits in one face of its own.
        let f = if edges_per[i] == 0 { 1 } else { faces_per[i] };
        if c.len() as i64 - edges_per[i] + f != 2 {
            planar = false;
        }
    }
    let total_faces = fm.faces.len() + comps.iter().enumerate().filter(|(i, _)| edges_per[*i] == 0).count();
    Ok(EulerReport { faces: total_faces, components: comps.len(), planar })
}

/// Builds the rotation system of a straight-line drawing: neighbors sorted by
/// counter-clockwise angle. `coords[v - 1]` is the position of `v`.
pub fn rotation_from_coordinates(g: &Graph, coords: &[(f64, f64)]) -> RotationSystem {
    let mut rot = vec![Vec::new(); g.n() + 1];
    for v in g.vertices() {
        let (x, y) = coords[v - 1];
        let mut nb: Vec<(f64, Vertex)> = g
            .neighbors(v)
            .iter()
            .map(|&u| {
                let (ux, uy) = coords[u - 1];
                ((uy - y).atan2(ux - x), u)
            })
            .collect();
        nb.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        rot[v] = nb.into_iter().map(|(_, u)| u).collect();
    }
    RotationSystem { rot }
}

/// The natural embedding of `grid(rows, cols)`.
pub fn grid_embedding(rows: usize, cols: usize) -> Result<(Graph, RotationSystem)> {
    let g = crate::graph::grid(rows, cols)?;
    let coords: Vec<(f64, f64)> = (0..rows * cols)
        .map(|i| ((i % cols) as f64, -((i / cols) as f64)))
        .collect();
    let rs = rotation_from_coordinates(&g, &coords);
    Ok((g, rs))
}

/// Proper crossings between segments of a straight-line drawing, as pairs of
/// edge indices into `edges`. Segments sharing an endpoint never count.
pub fn segment_crossings(
    edges: &[(Vertex, Vertex)],
    coords: &[(f64, f64)],
) -> Vec<(usize, usize, (f64, f64))> {
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if let Some(p) = proper_intersection(coords[a - 1], coords[b - 1], coords[c - 1], coords[d - 1]) {
                out.push((i, j, p));
            }
        }
    }
    out
}

fn proper_intersection(p: (f64, f64), q: (f64, f64), r: (f64, f64), s: (f64, f64)) -> Option<(f64, f64)> {
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let d1 = cross(r, s, p);
    let d2 = cross(r, s, q);
    let d3 = cross(p, q, r);
    let d4 = cross(p, q, s);
    const EPS: f64 = 1e-12;
    if ((d1 > EPS && d2 < -EPS) || (d1 < -EPS && d2 > EPS)) && ((d3 > EPS && d4 < -EPS) || (d3 < -EPS && d4 > EPS)) {
        let t = d1 / (d1 - d2);
        Some((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_planar() {
        let g = Graph::from_edges(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let rs = RotationSystem::new(&g, vec![vec![2, 3], vec![3, 1], vec![1, 2]]).unwrap();
        let r = euler_check(&g, &rs).unwrap();
        assert_eq!(r.faces, 2);
        assert!(r.planar);
    }

    #[test]
    fn grid_2x2_faces() {
        let (g, rs) = grid_embedding(2, 2).unwrap();
        let r = euler_check(&g, &rs).unwrap();
        assert_eq!(r.faces, 2);
        assert!(r.planar);
        let (g, rs) = grid_embedding(4, 5).unwrap();
        let r = euler_check(&g, &rs).unwrap();
        assert_eq!(r.faces + 20, 2 + g.m());
        assert!(r.planar);
    }

    fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let x = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn k5_has_no_planar_rotation() {
        let edges: Vec<_> = (1..=5).flat_map(|u| (u + 1..=5).map(move |v| (u, v))).collect();
        let g = Graph::from_edges(5, edges).unwrap();
        // Fixing the first neighbor, each vertex has 3! cyclic orders.
        let per_vertex: Vec<Vec<Vec<usize>>> = g
            .vertices()
            .map(|v| {
                let nb = g.neighbors(v);
                permutations(&nb[1..])
                    .into_iter()
                    .map(|p| std::iter::once(nb[0]).chain(p).collect())
                    .collect()
            })
            .collect();
        let mut idx = [0usize; 5];
        let mut checked = 0;
        loop {
            let rot: Vec<Vec<usize>> = (0..5).map(|i| per_vertex[i][idx[i]].clone()).collect();
            let rs = RotationSystem::new(&g, rot).unwrap();
            assert!(!euler_check(&g, &rs).unwrap().planar);
            checked += 1;
            let mut k = 0;
            while k < 5 {
                idx[k] += 1;
                if idx[k] < 6 {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == 5 {
                break;
            }
        }
        assert_eq!(checked, 6usize.pow(5));
    }

    #[test]
    fn inconsistent_rotation_rejected() {
        let g = Graph::from_edges(3, [(1, 2), (2, 3)]).unwrap();
        assert!(RotationSystem::new(&g, vec![vec![2], vec![1], vec![2]]).is_err());
        assert!(RotationSystem::new(&g, vec![vec![2], vec![1, 3, 3], vec![2]]).is_err());
    }

    #[test]
    fn embedding_text_round_trip() {
        let (g, rs) = grid_embedding(3, 3).unwrap();
        assert_eq!(parse_embedding(&g, &rs.to_text()).unwrap(), rs);
    }

    #[test]
    fn isolated_vertices_and_forests() {
        let g = Graph::from_edges(4, [(1, 2)]).unwrap();
        let rs = RotationSystem::new(&g, vec![vec![2], vec![1], vec![], vec![]]).unwrap();
        let r = euler_check(&g, &rs).unwrap();
        assert!(r.planar);
        assert_eq!(r.components, 3);
    }
}
