//! Seeded instance generators.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::embedding::{rotation_from_coordinates, RotationSystem};
use crate::graph::{ColoredGraph, Graph, Instance, RequestSet};
use crate::oracle::HittingSetInstance;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A planar graph together with a straight-line drawing and its rotation
/// system.
#[derive(Debug, Clone)]
pub struct PlanarSample {
    pub graph: Graph,
    pub coords: Vec<(f64, f64)>,
    pub rotation: RotationSystem,
}

/// Random planar graph on `n` vertices: `n` random cells of a `side x side`
/// grid, joined by grid edges and one diagonal per square, each kept with
/// probability `p`.
pub fn random_planar<R: Rng>(rng: &mut R, n: usize, side: usize, p: f64) -> PlanarSample {
    assert!(n <= side * side, "grid too small for {n} vertices");
    let mut cells: Vec<(usize, usize)> = (0..side).flat_map(|r| (0..side).map(move |c| (r, c))).collect();
    cells.shuffle(rng);
    cells.truncate(n);
    cells.sort_unstable();
    let id_of = |cell: (usize, usize)| cells.binary_search(&cell).ok().map(|i| i + 1);
    let mut candidates = Vec::new();
    for r in 0..side {
        for c in 0..side {
            if r + 1 < side {
                candidates.push(((r, c), (r + 1, c)));
            }
            if c + 1 < side {
                candidates.push(((r, c), (r, c + 1)));
            }
            if r + 1 < side && c + 1 < side {
                if rng.gen_bool(0.5) {
                    candidates.push(((r, c), (r + 1, c + 1)));
                } else {
                    candidates.push(((r, c + 1), (r + 1, c)));
                }
            }
        }
    }
    let mut g = Graph::new(n);
    for (a, b) in candidates {
        if let (Some(u), Some(v)) = (id_of(a), id_of(b)) {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("grid candidates are simple");
            }
        }
    }
    let coords: Vec<(f64, f64)> = cells.iter().map(|&(r, c)| (c as f64, -(r as f64))).collect();
    let rotation = rotation_from_coordinates(&g, &coords);
    PlanarSample { graph: g, coords, rotation }
}

/// Random graph with edge probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random colored instance with colors in `0..=max_color` and up to
/// `max_requests` requests on pairwise distinct terminals.
pub fn random_colored_instance<R: Rng>(
    rng: &mut R,
    n: usize,
    p: f64,
    max_color: u32,
    max_requests: usize,
) -> Instance {
    let g = random_graph(rng, n, p);
    let colors: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_color)).collect();
    let cg = ColoredGraph::new(g, &colors).unwrap();
    let mut verts: Vec<usize> = (1..=n).collect();
    verts.shuffle(rng);
    let m = rng.gen_range(1..=max_requests.min(n / 2).max(1));
    let pairs = verts.chunks_exact(2).take(m).map(|c| (c[0], c[1])).collect();
    Instance { graph: cg, requests: RequestSet::new(pairs) }
}

/// Random `k x k` hitting-set instance with `m` sets; each row contributes
/// an element to a set with probability `p`.
pub fn random_hitting_set<R: Rng>(rng: &mut R, k: usize, m: usize, p: f64) -> HittingSetInstance {
    let mut sets = Vec::with_capacity(m);
    for _ in 0..m {
        let mut set = Vec::new();
        for r in 1..=k {
            if rng.gen_bool(p) {
                set.push((r, rng.gen_range(1..=k)));
            }
        }
        sets.push(set);
    }
    HittingSetInstance::new(k, sets).expect("one element per row")
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << (u - 1)))
        .collect()
}

/// Canonical upper-triangle bit string, minimized over relabelings that list
/// vertices by non-increasing degree.
fn canonical_form(adj: &[u32]) -> u64 {
    let n = adj.len();
    let deg: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    let mut best = u64::MAX;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    canon_rec(adj, &deg, &order, &mut perm, &mut used, &mut best);
    best
}

fn canon_rec(adj: &[u32], deg: &[u32], order: &[usize], perm: &mut Vec<usize>, used: &mut [bool], best: &mut u64) {
    let n = adj.len();
    if perm.len() == n {
        let mut code = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                code <<= 1;
                if adj[perm[i]] >> perm[j] & 1 == 1 {
                    code |= 1;
                }
            }
        }
        *best = (*best).min(code);
        return;
    }
    let want = deg[order[perm.len()]];
    for v in 0..n {
        if !used[v] && deg[v] == want {
            used[v] = true;
            perm.push(v);
            canon_rec(adj, deg, order, perm, used, best);
            perm.pop();
            used[v] = false;
        }
    }
}

/// All connected graphs on exactly `n` vertices, one per isomorphism class,
/// in a deterministic order. Practical up to `n = 7`.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "enumeration is only meant for tiny graphs");
    if n == 0 {
        return Vec::new();
    }
    let mut level: Vec<Vec<u32>> = vec![vec![0]];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for adj in &level {
            for mask in 1u32..(1 << (size - 1)) {
                let mut a = adj.clone();
                for (u, m) in a.iter_mut().enumerate() {
                    if mask >> u & 1 == 1 {
                        *m |= 1 << (size - 1);
                    }
                }
                a.push(mask);
                if seen.insert(canonical_form(&a)) {
                    next.push(a);
                }
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|adj| {
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if adj[u] >> v & 1 == 1 {
                        g.add_edge(u + 1, v + 1).unwrap();
                    }
                }
            }
            g
        })
        .collect()
}

/// All graphs on exactly `n` vertices, one per isomorphism class.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "enumeration is only meant for tiny graphs");
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        let g = Graph::from_edges(n, edges).unwrap();
        if seen.insert(canonical_form(&adjacency_masks(&g))) {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::euler_check;

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn all_graph_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn random_planar_is_certified() {
        let mut r = rng(7);
        for _ in 0..50 {
            let n = r.gen_range(1..=10);
            let s = random_planar(&mut r, n, 4, 0.7);
            assert!(euler_check(&s.graph, &s.rotation).unwrap().planar);
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let a = random_colored_instance(&mut rng(3), 8, 0.4, 3, 3);
        let b = random_colored_instance(&mut rng(3), 8, 0.4, 3, 3);
        assert_eq!(a, b);
    }
}
