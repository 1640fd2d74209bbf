//! Non-crossing matchings and partitions over an ordered ground set.
//!
//! Two pairs `{a, b}` and `{c, d}` (with `a < b`, `c < d` as positions) cross
//! exactly when `a < c < b < d` or `c < a < d < b`. The test is invariant under
//! rotating the order, so it applies unchanged to cyclic orders.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

pub fn catalan(n: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

fn crosses(p: (usize, usize), q: (usize, usize)) -> bool {
    let (a, b) = (p.0.min(p.1), p.0.max(p.1));
    let (c, d) = (q.0.min(q.1), q.0.max(q.1));
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Position-level test on pairs of positions.
pub fn positions_noncrossing(pairs: &[(usize, usize)]) -> bool {
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if crosses(pairs[i], pairs[j]) {
                return false;
            }
        }
    }
    true
}

/// Whether the matching is non-crossing with respect to the order of `ground`.
pub fn is_noncrossing_matching<T: Eq + Hash + Copy + std::fmt::Debug>(pairs: &[(T, T)], ground: &[T]) -> Result<bool> {
    let pos: HashMap<T, usize> = ground.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut used = std::collections::HashSet::new();
    let mut ps = Vec::with_capacity(pairs.len());
    for &(a, b) in pairs {
        let pa = *pos.get(&a).ok_or_else(|| Error::Precondition(format!("{a:?} is not in the ground set")))?;
        let pb = *pos.get(&b).ok_or_else(|| Error::Precondition(format!("{b:?} is not in the ground set")))?;
        if pa == pb || !used.insert(pa) || !used.insert(pb) {
            return Err(Error::Precondition("pairs of a matching must be disjoint".into()));
        }
        ps.push((pa, pb));
    }
    Ok(positions_noncrossing(&ps))
}

/// All non-crossing perfect matchings of positions `1..=k`, each as a sorted
/// pair list, in lexicographic order. Empty for odd `k`.
pub fn enumerate_noncrossing_perfect_matchings(k: usize) -> Vec<Vec<(usize, usize)>> {
    if k % 2 == 1 {
        return Vec::new();
    }
    let mut out = ncpm(1, k);
    for m in &mut out {
        m.sort_unstable();
    }
    out.sort();
    out
}

fn ncpm(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if lo > hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut j = lo + 1;
    while j <= hi {
        let inner = ncpm(lo + 1, j - 1);
        let outer = ncpm(j + 1, hi);
        for a in &inner {
            for b in &outer {
                let mut m = vec![(lo, j)];
                m.extend_from_slice(a);
                m.extend_from_slice(b);
                out.push(m);
            }
        }
        j += 2;
    }
    out
}

/// Same enumeration with positions replaced by the ground labels.
pub fn enumerate_noncrossing_perfect_matchings_on<T: Copy>(ground: &[T]) -> Vec<Vec<(T, T)>> {
    enumerate_noncrossing_perfect_matchings(ground.len())
        .into_iter()
        .map(|m| m.into_iter().map(|(a, b)| (ground[a - 1], ground[b - 1])).collect())
        .collect()
}

/// Whether a partition of `1..=k` (blocks as sorted lists) is non-crossing.
pub fn is_noncrossing_partition(blocks: &[Vec<usize>]) -> bool {
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            for &a in &blocks[i] {
                for &b in &blocks[i] {
                    if a >= b {
                        continue;
                    }
                    for &c in &blocks[j] {
                        for &d in &blocks[j] {
                            if c < d && crosses((a, b), (c, d)) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// All non-crossing partitions of `1..=k`: blocks sorted internally and by
/// first element, partitions in lexicographic order.
pub fn enumerate_noncrossing_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = ncp(1, k);
    for p in &mut out {
        p.sort();
    }
    out.sort();
    out
}

fn ncp(lo: usize, hi: usize) -> Vec<Vec<Vec<usize>>> {
    if lo > hi {
        return vec![Vec::new()];
    }
    // Choose the block of `lo`; the gaps it leaves are partitioned independently.
    let mut out = Vec::new();
    let rest: Vec<usize> = (lo + 1..=hi).collect();
    let r = rest.len();
    for mask in 0u64..(1 << r) {
        let mut block = vec![lo];
        block.extend((0..r).filter(|&i| mask >> i & 1 == 1).map(|i| rest[i]));
        let mut parts: Vec<Vec<Vec<Vec<usize>>>> = Vec::new();
        for w in 0..block.len() {
            let a = block[w] + 1;
            let b = if w + 1 < block.len() { block[w + 1] - 1 } else { hi };
            parts.push(ncp(a, b));
        }
        let mut acc: Vec<Vec<Vec<usize>>> = vec![vec![block.clone()]];
        for p in parts {
            let mut next = Vec::with_capacity(acc.len() * p.len());
            for a in &acc {
                for b in &p {
                    let mut c = a.clone();
                    c.extend(b.iter().cloned());
                    next.push(c);
                }
            }
            acc = next;
        }
        out.extend(acc);
    }
    out
}

/// Every set partition of `1..=k` (restricted growth strings), for brute-force
/// cross-checks.
pub fn all_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; k];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        let k = rgs.len();
        if i == k {
            let blocks = if k == 0 { 0 } else { max + 1 };
            let mut p = vec![Vec::new(); blocks];
            for (x, &b) in rgs.iter().enumerate() {
                p[b].push(x + 1);
            }
            out.push(p);
            return;
        }
        let top = if i == 0 { 0 } else { max + 1 };
        for b in 0..=top {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    rec(0, 0, &mut rgs, &mut out);
    out
}

/// Every perfect matching of `1..=k`, for brute-force cross-checks.
pub fn all_perfect_matchings(k: usize) -> Vec<Vec<(usize, usize)>> {
    if k % 2 == 1 {
        return Vec::new();
    }
    fn rec(free: &[usize]) -> Vec<Vec<(usize, usize)>> {
        if free.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for j in 1..free.len() {
            let rest: Vec<usize> = free[1..].iter().copied().filter(|&x| x != free[j]).collect();
            for mut m in rec(&rest) {
                m.insert(0, (free[0], free[j]));
                out.push(m);
            }
        }
        out
    }
    rec(&(1..=k).collect::<Vec<_>>())
}
