use std::collections::BTreeSet;

use super::{Morphism, TypedGraph};
use crate::error::{Error, Result};

/// Result of gluing `B` and `C` along a common subobject `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushout {
    pub graph: TypedGraph,
    /// `B ↪ D`; the identity on ids of `B`.
    pub from_left: Morphism,
    /// `C ↪ D`.
    pub from_right: Morphism,
}

/// Pushout of the injective span `B ←f− A −g→ C`.
///
/// `D` keeps all ids of `B`. Elements of `C` outside `g(A)` keep their id
/// unless it is taken, in which case they are renamed to `id#k`.
pub fn pushout(b: &TypedGraph, c: &TypedGraph, f: &Morphism, g: &Morphism) -> Result<Pushout> {
    pushout_with(b, c, f, g, |d, id, reserved| {
        if d.has_id(id) || reserved.contains(id) {
            d.fresh_id(id, reserved)
        } else {
            id.to_string()
        }
    })
}

/// Pushout where `name` picks the id in `D` of every element of `C \ g(A)`.
/// `name` receives the graph built so far and the ids already handed out.
pub(crate) fn pushout_with(
    b: &TypedGraph,
    c: &TypedGraph,
    f: &Morphism,
    g: &Morphism,
    mut name: impl FnMut(&TypedGraph, &str, &BTreeSet<String>) -> String,
) -> Result<Pushout> {
    if !f.is_injective() || !g.is_injective() {
        return Err(Error::NotInjective("pushout span legs must be injective".into()));
    }
    let same_domain = f.nodes.keys().eq(g.nodes.keys()) && f.edges.keys().eq(g.edges.keys());
    if !same_domain {
        return Err(Error::NotInjective("span legs have different domains".into()));
    }
    let g_inv = g.inverse();
    let mut d = b.clone();
    let mut from_right = Morphism::new();
    let mut reserved = BTreeSet::new();

    for (id, n) in c.nodes() {
        let target = match g_inv.node(id) {
            Some(a) => f.node(a).cloned().expect("same domain"),
            None => {
                let fresh = name(&d, id, &reserved);
                reserved.insert(fresh.clone());
                d.add_node(fresh.clone(), n.ty.clone());
                fresh
            }
        };
        from_right.nodes.insert(id.clone(), target);
    }
    for (id, e) in c.edges() {
        let target = match g_inv.edge(id) {
            Some(a) => f.edge(a).cloned().expect("same domain"),
            None => {
                let fresh = name(&d, id, &reserved);
                reserved.insert(fresh.clone());
                let src = from_right.nodes[&e.src].clone();
                let tgt = from_right.nodes[&e.tgt].clone();
                d.add_edge(fresh.clone(), e.ty.clone(), src, tgt);
                fresh
            }
        };
        from_right.edges.insert(id.clone(), target);
    }
    Ok(Pushout {
        graph: d,
        from_left: Morphism::identity(b),
        from_right,
    })
}

/// Context graph `D` of a double-pushout step together with its embeddings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushoutComplement {
    pub graph: TypedGraph,
    /// `K ↪ D`.
    pub from_interface: Morphism,
    /// `D ↪ G`; the identity on ids of `D`.
    pub into_host: Morphism,
}

/// Host nodes in `m(L \ K)` that have an incident host edge outside
/// `m(L \ K)`, in ascending order.
pub fn dangling_nodes(l: &TypedGraph, k: &TypedGraph, g: &TypedGraph, m: &Morphism) -> Vec<String> {
    let deleted_edges: BTreeSet<&String> = l
        .edge_ids()
        .filter(|e| !k.has_edge(e))
        .filter_map(|e| m.edge(e))
        .collect();
    let mut out: Vec<String> = l
        .node_ids()
        .filter(|n| !k.has_node(n))
        .filter_map(|n| m.node(n))
        .filter(|hn| g.incident_edges(hn).any(|(id, _)| !deleted_edges.contains(id)))
        .cloned()
        .collect();
    out.sort();
    out
}

/// Pushout complement of `K ↪ L ↪ G` for an inclusion `K ⊆ L` and injective
/// match `m`: `D = G \ m(L \ K)`.
pub fn pushout_complement(k: &TypedGraph, l: &TypedGraph, g: &TypedGraph, m: &Morphism) -> Result<PushoutComplement> {
    if !m.is_injective() {
        return Err(Error::NotInjective("match must be injective".into()));
    }
    if let Some(node) = dangling_nodes(l, k, g, m).into_iter().next() {
        return Err(Error::DanglingViolation { node });
    }
    let mut d = g.clone();
    for e in l.edge_ids().filter(|e| !k.has_edge(e)) {
        if let Some(h) = m.edge(e) {
            d.remove_edge(h);
        }
    }
    for n in l.node_ids().filter(|n| !k.has_node(n)) {
        if let Some(h) = m.node(n) {
            d.remove_node(h);
        }
    }
    Ok(PushoutComplement {
        from_interface: m.restrict_to(k),
        into_host: Morphism::identity(&d),
        graph: d,
    })
}

/// Whether the commuting square
///
/// ```text
///   A --top--> B
///   |          |
///  left      right
///   v          v
///   C --bot--> D
/// ```
///
/// of injective morphisms is a pullback, i.e. `A` is the intersection of the
/// images of `right` and `bottom`. Domains are read off the morphisms, which
/// are assumed total.
pub fn is_pullback_square(top: &Morphism, left: &Morphism, right: &Morphism, bottom: &Morphism) -> Result<bool> {
    if top.then(right) != left.then(bottom) {
        return Err(Error::NonCommuting);
    }
    let check = |tops: &std::collections::BTreeMap<String, String>,
                 lefts: &std::collections::BTreeMap<String, String>,
                 rights: &std::collections::BTreeMap<String, String>,
                 bottoms: &std::collections::BTreeMap<String, String>| {
        let via_a: BTreeSet<&String> = tops.values().filter_map(|b| rights.get(b)).collect();
        let from_b: BTreeSet<&String> = rights.values().collect();
        let from_c: BTreeSet<&String> = bottoms.values().collect();
        let inter: BTreeSet<&String> = from_b.intersection(&from_c).copied().collect();
        // Injectivity of the A-legs makes A ≅ its image; pairs must come from A.
        let a_inj = {
            let imgs: BTreeSet<_> = tops.values().collect();
            imgs.len() == tops.len()
        } && {
            let imgs: BTreeSet<_> = lefts.values().collect();
            imgs.len() == lefts.len()
        };
        a_inj && via_a == inter
    };
    Ok(check(&top.nodes, &left.nodes, &right.nodes, &bottom.nodes)
        && check(&top.edges, &left.edges, &right.edges, &bottom.edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{check_morphism, is_isomorphic};

    fn client() -> TypedGraph {
        TypedGraph::new("bank").with_node("c", "Client")
    }

    #[test]
    fn gluing_with_identity_absorbs() {
        let a = client();
        let b = a.clone().with_node("a", "Account").with_edge("e", "accounts", "c", "a");
        let f = Morphism::identity(&a);
        let po = pushout(&b, &a, &f, &Morphism::identity(&a)).unwrap();
        assert_eq!(po.graph, b);
        assert_eq!(po.from_left, Morphism::identity(&b));
    }

    #[test]
    fn gluing_account_and_portfolio_over_client() {
        let a = client();
        let b = a
            .clone()
            .with_node("a", "Account")
            .with_edge("e1", "accounts", "c", "a");
        let c = a
            .clone()
            .with_node("p", "Portfolio")
            .with_edge("e2", "portfolios", "c", "p");
        let id = Morphism::identity(&a);
        let po = pushout(&b, &c, &id, &id).unwrap();
        assert_eq!(po.graph.node_count(), 3);
        assert_eq!(po.graph.edge_count(), 2);
        assert!(check_morphism(&po.from_left, &b, &po.graph, true).is_empty());
        assert!(check_morphism(&po.from_right, &c, &po.graph, true).is_empty());
        assert!(is_pullback_square(&id, &id, &po.from_left, &po.from_right).unwrap());
    }

    #[test]
    fn clashing_ids_are_suffixed() {
        let a = TypedGraph::new("t");
        let b = TypedGraph::new("t").with_node("x", "A");
        let c = TypedGraph::new("t").with_node("x", "A");
        let empty = Morphism::new();
        let po = pushout(&b, &c, &empty, &empty).unwrap();
        assert!(a.is_empty());
        assert_eq!(po.from_right.node("x").unwrap(), "x#1");
        assert_eq!(po.graph.node_count(), 2);
    }

    #[test]
    fn complement_of_identity_rule_is_host() {
        let g = fixtures::g_bank();
        let l = client();
        let m = Morphism::new().with_node("c", "c1");
        let pc = pushout_complement(&l, &l, &g, &m).unwrap();
        assert_eq!(pc.graph, g);
    }

    fn delete_account() -> (TypedGraph, TypedGraph) {
        let k = client();
        let l = k.clone().with_node("a", "Account").with_edge("e", "accounts", "c", "a");
        (k, l)
    }

    #[test]
    fn shared_account_dangles() {
        let (k, l) = delete_account();
        let g = fixtures::g_shared();
        let m = Morphism::new()
            .with_node("c", "c1")
            .with_node("a", "a3")
            .with_edge("e", "accounts_c1_a3");
        assert_eq!(
            pushout_complement(&k, &l, &g, &m),
            Err(Error::DanglingViolation { node: "a3".into() })
        );
    }

    #[test]
    fn private_account_is_removed() {
        let (k, l) = delete_account();
        let g = fixtures::g_shared();
        let m = Morphism::new()
            .with_node("c", "c1")
            .with_node("a", "a4")
            .with_edge("e", "accounts_c1_a4");
        let pc = pushout_complement(&k, &l, &g, &m).unwrap();
        let mut expected = g.clone();
        expected.remove_edge("accounts_c1_a4");
        expected.remove_node("a4");
        assert_eq!(pc.graph, expected);
        // Re-gluing the left square gives back G.
        let po = pushout(&l, &pc.graph, &Morphism::identity(&k), &pc.from_interface).unwrap();
        assert!(is_isomorphic(&po.graph, &g));
    }

    #[test]
    fn identity_square_is_pullback() {
        let g = fixtures::g_bank();
        let id = Morphism::identity(&g);
        assert!(is_pullback_square(&id, &id, &id, &id).unwrap());
    }

    #[test]
    fn non_commuting_square() {
        let top = Morphism::new().with_node("x", "x");
        let left = Morphism::new().with_node("x", "x");
        let right = Morphism::new().with_node("x", "p");
        let bottom = Morphism::new().with_node("x", "q");
        assert_eq!(
            is_pullback_square(&top, &left, &right, &bottom),
            Err(Error::NonCommuting)
        );
    }

    #[test]
    fn intersection_larger_than_corner() {
        // A = ∅, B = C = {x} both into D = {x}: the intersection is {x} ≠ ∅.
        let empty = Morphism::new();
        let x = Morphism::new().with_node("x", "x");
        assert!(!is_pullback_square(&empty, &empty, &x, &x).unwrap());
    }
}
