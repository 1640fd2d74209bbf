//! Exhaustive functional checks of the small gadgets in isolation.

use crate::error::Result;
use crate::graph::{ColoredGraph, Graph, RequestSet, Vertex};
use crate::oracle::{brute_cycle_packing, brute_mono_disjoint_paths};

use super::gadgets::{Assembly, Sketch, Variant, PATH_CROSSING, SC_CYCLES};
use super::{CheckResult, GadgetKind};

const TERMINALS: [&str; 4] = ["pc1", "pc2", "pc3", "pc4"];

struct Isolated {
    g: Graph,
    requests: Vec<(Vertex, Vertex)>,
    names: Vec<String>,
}

impl Isolated {
    fn build(text: &str, variant: Variant) -> Result<Isolated> {
        let sk = Sketch::parse(text)?;
        let mut asm = Assembly::new(variant)?;
        asm.place(&sk, GadgetKind::PathCrossing, String::new(), "", &[], 0)?;
        let (b, _) = asm.finish()?;
        Ok(Isolated { g: b.graph()?, requests: b.requests.clone(), names: b.names.clone() })
    }

    fn v(&self, name: &str) -> Vertex {
        self.names.iter().position(|n| n == name).expect("gadget vertex") + 1
    }

    /// The graph with `extra` new vertices, each joined to a pair of
    /// existing vertices.
    fn with_handles(&self, pairs: &[(Vertex, Vertex)]) -> Graph {
        let n = self.g.n();
        let mut edges = self.g.edges();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            edges.push((n + 1 + i, a));
            edges.push((n + 1 + i, b));
        }
        Graph::from_edges(n + pairs.len(), edges).expect("handles are fresh vertices")
    }

    fn without(&self, drop: &[Vertex]) -> Graph {
        let keep: Vec<Vertex> = self.g.vertices().filter(|v| !drop.contains(v)).collect();
        self.g.induced(&keep).0
    }

    fn routable(&self, g: &Graph, extra: &[(Vertex, Vertex)]) -> Result<bool> {
        let mut req = self.requests.clone();
        req.extend_from_slice(extra);
        let cg = ColoredGraph::uncolored(g.clone());
        Ok(brute_mono_disjoint_paths(&cg, &RequestSet::new(req), 64)?.is_some())
    }
}

fn packing(g: &Graph) -> Result<usize> {
    Ok(brute_cycle_packing(g, 64)?.0)
}

const EXPEL: &str = "vertex u 0 1\nvertex w 0 -1\nexpel u w a -1 0 b 1 0\n";
const DOUBLE_EXPEL: &str = "vertex u 0 2\nvertex w1 -1 -1\nvertex w2 1 -1\ndouble-expel u w1 w2 a -1 0 b 1 0\n";

/// Runs every check; each result names the property and whether it held.
pub fn gadget_suite() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let mut push = |name: &str, ok: bool, detail: String| out.push(CheckResult { name: name.into(), ok, detail });

    let sc = Isolated::build(SC_CYCLES, Variant::Cycles)?;
    let triple: Vec<Vertex> = ["a", "b", "c"].iter().map(|x| sc.v(x)).collect();
    let mut ok = packing(&sc.without(&triple))? == 0;
    for keep in &triple {
        let drop: Vec<Vertex> = triple.iter().copied().filter(|x| x != keep).collect();
        ok &= packing(&sc.without(&drop))? == 1;
    }
    push("sc-selection", ok, "no cycle without a color vertex, one cycle through each color alone".into());

    for (name, text, blocks) in [
        ("expel-exclusion", EXPEL, vec![vec!["u", "w"]]),
        ("double-expel-exclusion", DOUBLE_EXPEL, vec![vec!["u", "w1"], vec!["u", "w2"]]),
    ] {
        let mut ok = true;
        let mut detail = String::new();
        for variant in [Variant::Cycles, Variant::Paths] {
            let gd = Isolated::build(text, variant)?;
            let free = match variant {
                Variant::Cycles => packing(&gd.g)? == 1,
                Variant::Paths => gd.routable(&gd.g, &[])?,
            };
            ok &= free;
            for drop in &blocks {
                let drop: Vec<Vertex> = drop.iter().map(|x| gd.v(x)).collect();
                let blocked = match variant {
                    Variant::Cycles => packing(&gd.without(&drop))? == 0,
                    Variant::Paths => {
                        let keep: Vec<Vertex> = gd.g.vertices().filter(|v| !drop.contains(v)).collect();
                        let (h, map) = gd.g.induced(&keep);
                        let back = |x: Vertex| map.iter().position(|&y| y == x).expect("kept");
                        let req: Vec<(Vertex, Vertex)> = gd.requests.iter().map(|&(s, t)| (back(s), back(t))).collect();
                        brute_mono_disjoint_paths(&ColoredGraph::uncolored(h), &RequestSet::new(req), 64)?.is_none()
                    }
                };
                ok &= blocked;
            }
            detail.push_str(&format!("{variant:?}:{free} "));
        }
        push(name, ok, detail.trim_end().into());
    }

    // Path crossing: a traversal entering at one terminal leaves at the
    // opposite one; the two traversals share w0 and never fit together.
    let pc = Isolated::build(PATH_CROSSING, Variant::Cycles)?;
    let mut ok = pc.g.n() == 21;
    let mut detail = format!("vertices={} ", pc.g.n());
    let t: Vec<Vertex> = TERMINALS.iter().map(|x| pc.v(x)).collect();
    ok &= packing(&pc.g)? == 4;
    for i in 0..4 {
        for j in i + 1..4 {
            let straight = j == i + 2;
            let best = packing(&pc.with_handles(&[(t[i], t[j])]))?;
            ok &= (best == 5) == straight;
            detail.push_str(&format!("{}-{}:{best} ", TERMINALS[i], TERMINALS[j]));
        }
    }
    let both = packing(&pc.with_handles(&[(t[0], t[2]), (t[1], t[3])]))?;
    ok &= both == 5;
    detail.push_str(&format!("both:{both} "));
    let pcp = Isolated::build(PATH_CROSSING, Variant::Paths)?;
    let t: Vec<Vertex> = TERMINALS.iter().map(|x| pcp.v(x)).collect();
    for i in 0..4 {
        for j in i + 1..4 {
            let r = pcp.routable(&pcp.g, &[(t[i], t[j])])?;
            ok &= r == (j == i + 2);
        }
    }
    ok &= !pcp.routable(&pcp.g, &[(t[0], t[2]), (t[1], t[3])])?;
    push("path-crossing-straight", ok, detail.trim_end().into());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_gadget_checks_hold() {
        for r in gadget_suite().unwrap() {
            assert!(r.ok, "{} {}", r.name, r.detail);
        }
    }
}
