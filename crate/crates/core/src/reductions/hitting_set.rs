//! `k x k` hitting set to monochromatic disjoint paths.
//!
//! Row `r` asks for a path `s_r -> t_r`. The color-selection gadget fixes its
//! color `c` through `u_{r,c}`; set gadget `i` offers `a_{r,i}` (colored by the
//! element of `S_i` in row `r`) and two wildcard vertices `w_{r,i,1..2}`, of
//! which expel requests between consecutive rows consume `k - 1`.

use std::collections::{BTreeSet, HashMap};

use crate::decomp::TreeDecomposition;
use crate::embedding::rotation_from_coordinates;
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::oracle::HittingSetInstance;

use super::{named, Builder, GadgetKind, ReductionOutput};

fn has_w(k: usize, r: usize, b: usize) -> bool {
    !((r == 1 && b == 1) || (r == k && b == 2))
}

pub fn reduce_hs_to_mdp(inst: &HittingSetInstance) -> Result<ReductionOutput> {
    inst.validate()?;
    let k = inst.k;
    let m = inst.m();
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let mut b = Builder::default();
    let mut coords: Vec<(f64, f64)> = Vec::new();
    let mut put = |b: &mut Builder, name: String, x: f64, y: f64| {
        coords.push((x, y));
        b.vertex(name)
    };
    let vx = |i: usize| 6.0 + 10.0 * i as f64;
    let spread = |c: usize| if k == 1 { 0.0 } else { 3.0 - 6.0 * (c - 1) as f64 / (k - 1) as f64 };
    for r in 1..=k {
        let y = -10.0 * r as f64;
        let s = put(&mut b, format!("s_{r}"), 0.0, y);
        let us: Vec<Vertex> = (1..=k).map(|c| put(&mut b, format!("u_{r}_{c}"), 3.0, y + spread(c))).collect();
        let vs: Vec<Vertex> = (0..=m).map(|i| put(&mut b, format!("v_{r}_{i}"), vx(i), y)).collect();
        for (c, &u) in us.iter().enumerate() {
            b.colors[u - 1] = c as u32 + 1;
            b.edge(s, u);
            b.edge(u, vs[0]);
        }
        for i in 1..=m {
            let xm = vx(i) - 5.0;
            for bb in 1..=2 {
                if has_w(k, r, bb) {
                    let dy = if bb == 1 { 2.0 } else { -2.0 };
                    let w = put(&mut b, format!("w_{r}_{i}_{bb}"), xm, y + dy);
                    b.edge(vs[i - 1], w);
                    b.edge(w, vs[i]);
                }
            }
            if let Some(c) = inst.element_in_row(i - 1, r) {
                let a = put(&mut b, format!("a_{r}_{i}"), xm, y);
                b.colors[a - 1] = c as u32;
                b.edge(vs[i - 1], a);
                b.edge(a, vs[i]);
            }
        }
        let t = put(&mut b, format!("t_{r}"), vx(m) + 4.0, y);
        b.edge(vs[m], t);
    }
    for r in 1..=k {
        let req = b.request(b.get(&format!("s_{r}")), b.get(&format!("t_{r}")));
        let mut verts = vec![("s".to_string(), b.get(&format!("s_{r}"))), ("v0".to_string(), b.get(&format!("v_{r}_0")))];
        for c in 1..=k {
            verts.push((format!("u{c}"), b.get(&format!("u_{r}_{c}"))));
        }
        let id = b.registry.add(GadgetKind::ColorSelection, None, verts.into_iter().collect(), 1);
        b.registry.entries[id].requests.push(req);
    }
    for i in 1..=m {
        let mut verts = Vec::new();
        for r in 1..=k {
            for name in [format!("v_{r}_{}", i - 1), format!("v_{r}_{i}"), format!("a_{r}_{i}")] {
                if let Some(v) = b.find(&name) {
                    verts.push((name, v));
                }
            }
        }
        let set = b.registry.add(GadgetKind::Set, None, verts.into_iter().collect(), 0);
        for r in 1..k {
            let xm = vx(i) - 5.0;
            let y = -10.0 * r as f64 - 5.0;
            let s = put(&mut b, format!("es_{r}_{i}"), xm - 1.5, y);
            let t = put(&mut b, format!("et_{r}_{i}"), xm + 1.5, y);
            let w1 = b.get(&format!("w_{r}_{i}_2"));
            let w2 = b.get(&format!("w_{}_{i}_1", r + 1));
            for x in [s, t] {
                b.edge(x, w1);
                b.edge(x, w2);
            }
            let req = b.request(s, t);
            let id = b.registry.add(GadgetKind::Expel, Some(set), named(&[("s", s), ("t", t), ("u", w1), ("v", w2)]), 1);
            b.registry.entries[id].requests.push(req);
        }
    }

    b.registry.roll_up();
    let instance = b.instance()?;
    let embedding = rotation_from_coordinates(&instance.graph.graph, &coords);
    let decomposition = path_decomposition(&b, k, m);
    let id_map = (1..=k)
        .flat_map(|r| (1..=k).map(move |c| (r, c)))
        .map(|(r, c)| (format!("element_{r}_{c}"), vec![b.get(&format!("u_{r}_{c}"))]))
        .collect();
    Ok(ReductionOutput {
        instance,
        l0: None,
        embedding,
        registry: b.registry,
        names: b.names,
        id_map,
        decomposition: Some(decomposition),
    })
}

fn path_decomposition(b: &Builder, k: usize, m: usize) -> TreeDecomposition {
    let id = |name: String| b.find(&name);
    let mut bags: Vec<BTreeSet<Vertex>> = Vec::new();
    let base: BTreeSet<Vertex> = (1..=k)
        .flat_map(|r| [id(format!("s_{r}")), id(format!("v_{r}_0"))])
        .flatten()
        .collect();
    for r in 1..=k {
        for c in 1..=k {
            let mut bag = base.clone();
            bag.extend(id(format!("u_{r}_{c}")));
            bags.push(bag);
        }
    }
    for i in 1..=m {
        let mut bag = BTreeSet::new();
        for r in 1..=k {
            for name in [
                format!("v_{r}_{}", i - 1),
                format!("v_{r}_{i}"),
                format!("a_{r}_{i}"),
                format!("w_{r}_{i}_1"),
                format!("w_{r}_{i}_2"),
                format!("es_{r}_{i}"),
                format!("et_{r}_{i}"),
            ] {
                bag.extend(id(name));
            }
        }
        bags.push(bag);
    }
    bags.push((1..=k).flat_map(|r| [id(format!("v_{r}_{m}")), id(format!("t_{r}"))]).flatten().collect());
    let edges = (1..bags.len()).map(|i| (i - 1, i)).collect();
    TreeDecomposition { bags, edges }
}

fn name_index(out: &ReductionOutput) -> HashMap<&str, Vertex> {
    out.names.iter().enumerate().map(|(i, n)| (n.as_str(), i + 1)).collect()
}

/// Routes all requests for a hitting selection (`sel[r - 1]` is the column
/// chosen in row `r`). Paths follow the request order of `out`.
pub fn hs_forward(inst: &HittingSetInstance, out: &ReductionOutput, sel: &[usize]) -> Result<Vec<Vec<Vertex>>> {
    let k = inst.k;
    let m = inst.m();
    if sel.len() != k {
        return Err(Error::Precondition(format!("selection has {} rows, expected {k}", sel.len())));
    }
    let ix = name_index(out);
    let v = |name: String| -> Result<Vertex> {
        ix.get(name.as_str()).copied().ok_or_else(|| Error::Precondition(format!("no vertex {name}")))
    };
    // hitter[i] = first row whose selected element lies in S_i.
    let mut hitter = Vec::with_capacity(m);
    for i in 0..m {
        let h = (1..=k)
            .find(|&r| inst.element_in_row(i, r) == Some(sel[r - 1]))
            .ok_or_else(|| Error::Precondition(format!("set {} is not hit", i + 1)))?;
        hitter.push(h);
    }
    let mut paths = Vec::new();
    for r in 1..=k {
        let mut p = vec![v(format!("s_{r}"))?, v(format!("u_{r}_{}", sel[r - 1]))?, v(format!("v_{r}_0"))?];
        for i in 1..=m {
            let h = hitter[i - 1];
            let mid = if r == h {
                format!("a_{r}_{i}")
            } else if r < h {
                format!("w_{r}_{i}_2")
            } else {
                format!("w_{r}_{i}_1")
            };
            p.push(v(mid)?);
            p.push(v(format!("v_{r}_{i}"))?);
        }
        p.push(v(format!("t_{r}"))?);
        paths.push(p);
    }
    for i in 1..=m {
        let h = hitter[i - 1];
        for r in 1..k {
            let free = if r < h { format!("w_{}_{i}_1", r + 1) } else { format!("w_{r}_{i}_2") };
            paths.push(vec![v(format!("es_{r}_{i}"))?, v(free)?, v(format!("et_{r}_{i}"))?]);
        }
    }
    Ok(paths)
}

/// Reads the selection off the colors of the row paths.
pub fn hs_backward(inst: &HittingSetInstance, out: &ReductionOutput, paths: &[Vec<Vertex>]) -> Result<Vec<usize>> {
    let k = inst.k;
    if paths.len() < k {
        return Err(Error::Precondition("fewer paths than rows".into()));
    }
    let mut sel = Vec::with_capacity(k);
    for (r, p) in paths.iter().take(k).enumerate() {
        let prefix = format!("u_{}_", r + 1);
        let c = p
            .iter()
            .find_map(|&x| out.names[x - 1].strip_prefix(&prefix).and_then(|c| c.parse::<usize>().ok()))
            .ok_or_else(|| Error::Precondition(format!("row {} path misses its color-selection gadget", r + 1)))?;
        sel.push(c);
    }
    Ok(sel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::euler_check;
    use crate::oracle::{brute_hitting_set, brute_mono_disjoint_paths, verify_paths, verify_selection};

    fn hs(k: usize, sets: Vec<Vec<(usize, usize)>>) -> HittingSetInstance {
        HittingSetInstance::new(k, sets).unwrap()
    }

    #[test]
    fn single_row_no_sets() {
        let inst = hs(1, vec![]);
        let out = reduce_hs_to_mdp(&inst).unwrap();
        assert_eq!(out.instance.requests.len(), 1);
        assert_eq!(out.instance.graph.graph.n(), 4);
        let found = brute_mono_disjoint_paths(&out.instance.graph, &out.instance.requests, 64).unwrap();
        assert!(found.is_some());
    }

    #[test]
    fn small_yes_and_no() {
        let yes = hs(2, vec![vec![(1, 1)]]);
        let out = reduce_hs_to_mdp(&yes).unwrap();
        assert_eq!(out.instance.requests.len(), 3);
        assert!(brute_mono_disjoint_paths(&out.instance.graph, &out.instance.requests, 64).unwrap().is_some());

        let no = hs(2, vec![vec![(1, 1)], vec![(1, 2)]]);
        assert!(brute_hitting_set(&no).unwrap().is_none());
        let out = reduce_hs_to_mdp(&no).unwrap();
        assert_eq!(out.instance.requests.len(), 4);
        assert!(brute_mono_disjoint_paths(&out.instance.graph, &out.instance.requests, 64).unwrap().is_none());
    }

    #[test]
    fn witnesses_round_trip() {
        let inst = hs(3, vec![vec![(1, 2), (3, 1)], vec![(2, 3)], vec![(1, 1), (2, 2), (3, 3)]]);
        let sel = brute_hitting_set(&inst).unwrap().unwrap();
        let out = reduce_hs_to_mdp(&inst).unwrap();
        let paths = hs_forward(&inst, &out, &sel).unwrap();
        verify_paths(&out.instance.graph, &out.instance.requests, &paths, true).unwrap();
        let back = hs_backward(&inst, &out, &paths).unwrap();
        assert_eq!(back, sel);
        verify_selection(&inst, &back).unwrap();
    }

    #[test]
    fn structure() {
        for k in 1..=5 {
            let sets: Vec<Vec<(usize, usize)>> = (1..=3).map(|i| (1..=k).filter(|r| (r + i) % 2 == 0).map(|r| (r, (r + i) % k + 1)).collect()).collect();
            let inst = hs(k, sets);
            let out = reduce_hs_to_mdp(&inst).unwrap();
            assert_eq!(out.instance.requests.len(), k + (k - 1) * 3);
            let td = out.decomposition.as_ref().unwrap();
            let w = crate::decomp::validate_tree_decomposition(&out.instance.graph.graph, td).unwrap();
            assert!(w + 1 <= 2 * (k - 1) + 5 * k - 2, "k={k} bag {}", w + 1);
            assert!(euler_check(&out.instance.graph.graph, &out.embedding).unwrap().planar, "k={k}");
            assert_eq!(out.registry.total_asks(), out.instance.requests.len());
        }
    }
}
