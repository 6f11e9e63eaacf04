//! The decomposition of a compatible match into a left extension match of
//! `L_i' = L_b ∪ delete` and a right extension match of `K_c`, and the
//! conditions under which two such extensions glue to an applicable match.

use std::collections::BTreeSet;

use super::{MatchResult, PreMatch};
use crate::effect::{EffectOrientedRule, InducedRule};
use crate::graph::{Morphism, TypedGraph};

/// `e1 = m_c ∘ u`: the restriction of the match to `L_i'`.
pub fn left_extension(eor: &EffectOrientedRule, mr: &MatchResult) -> Morphism {
    mr.matching.restrict_to(&mr.induced.left_part(eor))
}

/// `e2 = m_c ∘ le_c`: the restriction of the match to `K_c`.
pub fn right_extension(mr: &MatchResult) -> Morphism {
    mr.matching.restrict_to(&mr.induced.rule.interface)
}

/// The morphism on `L_c = L_i' ∪ K_c` agreeing with both extensions, if
/// they agree on their common domain.
pub fn mediate(e1: &Morphism, e2: &Morphism) -> Option<Morphism> {
    let mut m = e1.clone();
    for (map, other) in [(&mut m.nodes, &e2.nodes), (&mut m.edges, &e2.edges)] {
        for (k, v) in other {
            match map.get(k) {
                Some(w) if w != v => return None,
                _ => {
                    map.insert(k.clone(), v.clone());
                }
            }
        }
    }
    Some(m)
}

/// `e1 ∘ ι = m_b` on `L_b`.
pub fn lhs_compatible(eor: &EffectOrientedRule, pm: &PreMatch, e1: &Morphism) -> bool {
    e1.restrict_to(&eor.base.lhs) == pm.morphism
}

/// `e2 ∘ ι_K = m_b ∘ le_b` on `K_b`.
pub fn rhs_compatible(eor: &EffectOrientedRule, pm: &PreMatch, e2: &Morphism) -> bool {
    e2.restrict_to(eor.interface()) == pm.morphism.restrict_to(eor.interface())
}

/// Whether `e1` and `e2` only identify elements that both come from `K_b`.
pub fn overlap_only_on_interface(eor: &EffectOrientedRule, e1: &Morphism, e2: &Morphism) -> bool {
    let k = eor.interface();
    let clash = |a: &std::collections::BTreeMap<String, String>,
                 b: &std::collections::BTreeMap<String, String>,
                 in_k: &dyn Fn(&str) -> bool| {
        a.iter()
            .any(|(x, hx)| b.iter().any(|(y, hy)| hx == hy && !(x == y && in_k(x))))
    };
    !clash(&e1.nodes, &e2.nodes, &|x| k.has_node(x)) && !clash(&e1.edges, &e2.edges, &|x| k.has_edge(x))
}

/// Nodes of `L_i'` whose image has an incident host edge outside the image
/// of `e1`.
pub fn left_dangling_set(
    eor: &EffectOrientedRule,
    ir: &InducedRule,
    host: &TypedGraph,
    e1: &Morphism,
) -> BTreeSet<String> {
    let left = ir.left_part(eor);
    let img = e1.edge_image();
    left.node_ids()
        .filter(|v| {
            e1.node(v)
                .is_some_and(|h| host.incident_edges(h).any(|(id, _)| !img.contains(id)))
        })
        .cloned()
        .collect()
}

/// Whether the gluing of `e1` and `e2` is injective and satisfies the
/// dangling condition, judged from the two extensions alone.
pub fn glues_to_applicable_match(
    eor: &EffectOrientedRule,
    ir: &InducedRule,
    host: &TypedGraph,
    e1: &Morphism,
    e2: &Morphism,
) -> bool {
    overlap_only_on_interface(eor, e1, e2)
        && left_dangling_set(eor, ir, host, e1)
            .iter()
            .all(|v| eor.interface().has_node(v))
}
