use std::collections::BTreeSet;

use super::Nac;
use crate::graph::{find_injective_extensions, Morphism, TypeGraph, TypedGraph};

/// How equivalence of two NAC conjunctions over the same graph is decided.
#[derive(Debug, Clone, Copy)]
pub enum ConditionEquivalence<'a> {
    /// Exact: each NAC of one side must have a NAC of the other side
    /// embedding into it over `L`, and vice versa. Evaluates both conditions
    /// on the NAC graphs themselves as hosts.
    Witness,
    /// Bounded brute force over every host extending `L` with at most
    /// `max_nodes` nodes and at most one extra edge per typed slot.
    Exhaustive {
        type_graph: &'a TypeGraph,
        max_nodes: usize,
    },
}

/// Whether the injective match `m: L ↪ host` admits no extension to any NAC.
pub fn satisfies_nacs(m: &Morphism, nacs: &[Nac], host: &TypedGraph) -> bool {
    nacs.iter()
        .all(|nac| find_injective_extensions(&nac.graph, host, m).next().is_none())
}

/// Shifts a NAC conjunction over `L` along the injective `b: L ↪ L'`.
///
/// For each NAC `N ⊇ L` every overlap of `N` and `L'` over `L` becomes a NAC
/// over `L'`: elements of `N \ L` are either identified with an element of
/// `L' \ b(L)` of the same type (injectively, edges only when their
/// endpoints agree) or added under a fresh id.
pub fn shift_nacs(b: &Morphism, l: &TypedGraph, l_prime: &TypedGraph, nacs: &[Nac]) -> Vec<Nac> {
    let mut out: Vec<Nac> = Vec::new();
    for nac in nacs {
        let extra_nodes: Vec<&String> = nac.graph.node_ids().filter(|n| !l.has_node(n)).collect();
        let extra_edges: Vec<&String> = nac.graph.edge_ids().filter(|e| !l.has_edge(e)).collect();
        let free_nodes: Vec<&String> = {
            let used: BTreeSet<&String> = b.nodes.values().collect();
            l_prime.node_ids().filter(|n| !used.contains(n)).collect()
        };
        let free_edges: Vec<&String> = {
            let used: BTreeSet<&String> = b.edges.values().collect();
            l_prime.edge_ids().filter(|e| !used.contains(e)).collect()
        };

        let mut node_choices = Vec::new();
        let mut current = Vec::new();
        choose_nodes(nac, &extra_nodes, &free_nodes, l_prime, &mut current, &mut node_choices);

        for node_phi in node_choices {
            // Image in L' of every NAC node that has one.
            let mut node_img = b.nodes.clone();
            for (x, y) in extra_nodes.iter().zip(&node_phi) {
                if let Some(y) = y {
                    node_img.insert((*x).clone(), (*y).clone());
                }
            }
            let mut edge_choices = Vec::new();
            let mut current = Vec::new();
            choose_edges(
                nac,
                &extra_edges,
                &free_edges,
                l_prime,
                &node_img,
                &mut current,
                &mut edge_choices,
            );
            for edge_phi in edge_choices {
                let graph = overlap_graph(
                    nac,
                    l_prime,
                    &extra_nodes,
                    &node_phi,
                    &extra_edges,
                    &edge_phi,
                    &node_img,
                );
                let name = format!("{}/{}", nac.name, out.len());
                if !out.iter().any(|n| n.graph == graph) {
                    out.push(Nac::new(name, graph));
                }
            }
        }
    }
    out
}

fn choose_nodes<'a>(
    nac: &Nac,
    extra: &[&'a String],
    free: &[&'a String],
    l_prime: &TypedGraph,
    current: &mut Vec<Option<&'a String>>,
    out: &mut Vec<Vec<Option<&'a String>>>,
) {
    let i = current.len();
    if i == extra.len() {
        out.push(current.clone());
        return;
    }
    current.push(None);
    choose_nodes(nac, extra, free, l_prime, current, out);
    current.pop();
    let ty = &nac.graph.node(extra[i]).expect("nac node").ty;
    for cand in free {
        if &l_prime.node(cand).expect("free node").ty == ty && !current.contains(&Some(*cand)) {
            current.push(Some(*cand));
            choose_nodes(nac, extra, free, l_prime, current, out);
            current.pop();
        }
    }
}

fn choose_edges<'a>(
    nac: &Nac,
    extra: &[&'a String],
    free: &[&'a String],
    l_prime: &TypedGraph,
    node_img: &std::collections::BTreeMap<String, String>,
    current: &mut Vec<Option<&'a String>>,
    out: &mut Vec<Vec<Option<&'a String>>>,
) {
    let i = current.len();
    if i == extra.len() {
        out.push(current.clone());
        return;
    }
    current.push(None);
    choose_edges(nac, extra, free, l_prime, node_img, current, out);
    current.pop();
    let e = nac.graph.edge(extra[i]).expect("nac edge");
    let (Some(src), Some(tgt)) = (node_img.get(&e.src), node_img.get(&e.tgt)) else {
        return;
    };
    for cand in free {
        let c = l_prime.edge(cand).expect("free edge");
        if c.ty == e.ty && &c.src == src && &c.tgt == tgt && !current.contains(&Some(*cand)) {
            current.push(Some(*cand));
            choose_edges(nac, extra, free, l_prime, node_img, current, out);
            current.pop();
        }
    }
}

fn overlap_graph(
    nac: &Nac,
    l_prime: &TypedGraph,
    extra_nodes: &[&String],
    node_phi: &[Option<&String>],
    extra_edges: &[&String],
    edge_phi: &[Option<&String>],
    node_img: &std::collections::BTreeMap<String, String>,
) -> TypedGraph {
    let mut g = l_prime.clone();
    let mut img = node_img.clone();
    let reserved = BTreeSet::new();
    for (x, y) in extra_nodes.iter().zip(node_phi) {
        if y.is_none() {
            let id = if g.has_id(x) {
                g.fresh_id(x, &reserved)
            } else {
                (*x).clone()
            };
            g.add_node(id.clone(), nac.graph.node(x).expect("nac node").ty.clone());
            img.insert((*x).clone(), id);
        }
    }
    for (x, y) in extra_edges.iter().zip(edge_phi) {
        if y.is_none() {
            let e = nac.graph.edge(x).expect("nac edge");
            let id = if g.has_id(x) {
                g.fresh_id(x, &reserved)
            } else {
                (*x).clone()
            };
            g.add_edge(id, e.ty.clone(), img[&e.src].clone(), img[&e.tgt].clone());
        }
    }
    g
}

/// Whether the NAC conjunctions `a` and `b` over `l` are satisfied by the
/// same injective matches.
pub fn nacs_equivalent(l: &TypedGraph, a: &[Nac], b: &[Nac], mode: ConditionEquivalence<'_>) -> bool {
    match mode {
        ConditionEquivalence::Witness => covers(l, a, b) && covers(l, b, a),
        ConditionEquivalence::Exhaustive { type_graph, max_nodes } => {
            let id = Morphism::identity(l);
            let mut equivalent = true;
            for_each_host_extending(l, type_graph, max_nodes, |host| {
                if satisfies_nacs(&id, a, host) != satisfies_nacs(&id, b, host) {
                    equivalent = false;
                }
                equivalent
            });
            equivalent
        }
    }
}

/// Every NAC of `target` is violated wherever some NAC of `source` is:
/// for each `N ∈ target` some `M ∈ source` embeds into `N` over `l`.
fn covers(l: &TypedGraph, source: &[Nac], target: &[Nac]) -> bool {
    let id = Morphism::identity(l);
    target.iter().all(|n| !satisfies_nacs(&id, source, &n.graph))
}

/// Calls `visit` on every graph obtained from `base` by adding nodes (up to
/// `max_nodes` in total) and at most one extra edge per (edge type, source,
/// target) slot. Stops early when `visit` returns false.
///
/// Added nodes get ids `h0, h1, …`; their types are enumerated as
/// non-decreasing sequences to avoid permuted duplicates.
pub fn for_each_host_extending(
    base: &TypedGraph,
    tg: &TypeGraph,
    max_nodes: usize,
    mut visit: impl FnMut(&TypedGraph) -> bool,
) {
    let types: Vec<&String> = tg.node_types.iter().collect();
    let extra = max_nodes.saturating_sub(base.node_count());
    let mut keep_going = true;
    for count in 0..=extra {
        let mut seq = vec![0usize; count];
        loop {
            let mut g = base.clone();
            for (i, t) in seq.iter().enumerate() {
                let mut id = format!("h{i}");
                while g.has_id(&id) {
                    id.push('\'');
                }
                g.add_node(id, types[*t].clone());
            }
            let slots: Vec<(String, String, String)> = tg
                .edge_types
                .iter()
                .flat_map(|(name, et)| {
                    let srcs: Vec<String> = g
                        .nodes()
                        .filter(|(_, n)| n.ty == et.source)
                        .map(|(i, _)| i.clone())
                        .collect();
                    let tgts: Vec<String> = g
                        .nodes()
                        .filter(|(_, n)| n.ty == et.target)
                        .map(|(i, _)| i.clone())
                        .collect();
                    srcs.into_iter().flat_map(move |s| {
                        let name = name.clone();
                        tgts.clone().into_iter().map(move |t| (name.clone(), s.clone(), t))
                    })
                })
                .collect();
            assert!(slots.len() < 32, "host enumeration bound too large");
            for mask in 0u32..(1u32 << slots.len()) {
                let mut h = g.clone();
                for (i, (ty, s, t)) in slots.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        let mut id = format!("x{i}");
                        while h.has_id(&id) {
                            id.push('\'');
                        }
                        h.add_edge(id, ty.clone(), s.clone(), t.clone());
                    }
                }
                if !visit(&h) {
                    keep_going = false;
                    break;
                }
            }
            if !keep_going || !next_non_decreasing(&mut seq, types.len()) {
                break;
            }
        }
        if !keep_going {
            break;
        }
    }
}

fn next_non_decreasing(seq: &mut [usize], base: usize) -> bool {
    for i in (0..seq.len()).rev() {
        if seq[i] + 1 < base {
            seq[i] += 1;
            let v = seq[i];
            for s in &mut seq[i + 1..] {
                *s = v;
            }
            return true;
        }
    }
    false
}
