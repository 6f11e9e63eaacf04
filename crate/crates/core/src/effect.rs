//! Effect-oriented rules: a base rule embedded in a maximal rule with the
//! same interface, and the induced rules obtained by choosing which
//! potential deletions to perform and which potential creations to skip.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Diagnostic, DiagnosticKind, ElementSet, Morphism, TypedGraph};
use crate::rules::{
    check_subrule_embedding, inclusion_diagnostics, shift_nacs, ConditionEquivalence, Rule, SubruleEmbedding,
};

/// A base rule `ρ_b` included in a maximal rule `ρ_g` with `K_b = K_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectOrientedRule {
    pub name: String,
    pub base: Rule,
    pub maximal: Rule,
}

impl EffectOrientedRule {
    /// Checks the inclusion `base ↪ maximal` (pullback squares, equal
    /// interfaces, equivalent conditions) before constructing.
    pub fn new(name: impl Into<String>, base: Rule, maximal: Rule) -> Result<Self> {
        let eor = EffectOrientedRule {
            name: name.into(),
            base,
            maximal,
        };
        let diags = eor.structural_diagnostics();
        if diags.is_empty() {
            Ok(eor)
        } else {
            Err(Error::Validation(diags))
        }
    }

    fn structural_diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.base.interface != self.maximal.interface {
            out.push(Diagnostic::new(
                DiagnosticKind::NotIncluded,
                &self.name,
                "base and maximal rule must share the interface",
            ));
        }
        out.extend(inclusion_diagnostics(&self.base.lhs, &self.maximal.lhs, "L_b", "L_g"));
        out.extend(inclusion_diagnostics(&self.base.rhs, &self.maximal.rhs, "R_b", "R_g"));
        for (small, big, a, b) in [
            (&self.base.interface, &self.base.lhs, "K_b", "L_b"),
            (&self.base.interface, &self.base.rhs, "K_b", "R_b"),
            (&self.maximal.interface, &self.maximal.lhs, "K_g", "L_g"),
            (&self.maximal.interface, &self.maximal.rhs, "K_g", "R_g"),
        ] {
            out.extend(inclusion_diagnostics(small, big, a, b));
        }
        if out.is_empty() {
            match check_subrule_embedding(&self.embedding(), ConditionEquivalence::Witness) {
                Ok(true) => {}
                _ => out.push(Diagnostic::new(
                    DiagnosticKind::NotPullback,
                    &self.name,
                    "base rule is not a subrule of the maximal rule",
                )),
            }
        }
        out
    }

    pub fn embedding(&self) -> SubruleEmbedding {
        SubruleEmbedding::inclusion(&self.base, &self.maximal)
    }

    /// `K_b = K_g`.
    pub fn interface(&self) -> &TypedGraph {
        &self.base.interface
    }

    /// `L_g \ L_b`.
    pub fn potential_deletions(&self) -> ElementSet {
        self.maximal.lhs.elements().difference(&self.base.lhs.elements())
    }

    /// `R_g \ R_b`.
    pub fn potential_creations(&self) -> ElementSet {
        self.maximal.rhs.elements().difference(&self.base.rhs.elements())
    }
}

/// `(L_g \ L_b, R_g \ R_b)`.
pub fn potential_actions(eor: &EffectOrientedRule) -> (ElementSet, ElementSet) {
    (eor.potential_deletions(), eor.potential_creations())
}

/// Which potential deletions to perform and which potential creations to
/// skip (match instead of create).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct InducedSelection {
    pub delete: ElementSet,
    pub preserve: ElementSet,
}

impl InducedSelection {
    pub fn new(delete: ElementSet, preserve: ElementSet) -> Self {
        InducedSelection { delete, preserve }
    }

    /// `|L_i' \ L_b| + |K_c \ K_b|`.
    pub fn size(&self) -> usize {
        self.delete.len() + self.preserve.len()
    }
}

impl fmt::Display for InducedSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &ElementSet| s.iter().cloned().collect::<Vec<_>>().join(",");
        write!(f, "delete[{}] preserve[{}]", list(&self.delete), list(&self.preserve))
    }
}

/// Closure and pullback conditions of a selection.
pub fn validate_selection(eor: &EffectOrientedRule, sel: &InducedSelection) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let (pd, pc) = potential_actions(eor);
    for id in sel.delete.difference(&pd).iter() {
        out.push(Diagnostic::new(
            DiagnosticKind::NotIncluded,
            id,
            "selected deletion is not a potential deletion",
        ));
    }
    for id in sel.preserve.difference(&pc).iter() {
        out.push(Diagnostic::new(
            DiagnosticKind::NotIncluded,
            id,
            "skipped creation is not a potential creation",
        ));
    }
    let left_nodes = |n: &String| eor.base.lhs.has_node(n) || sel.delete.nodes.contains(n);
    for id in &sel.delete.edges {
        if let Some(e) = eor.maximal.lhs.edge(id) {
            if !left_nodes(&e.src) || !left_nodes(&e.tgt) {
                out.push(Diagnostic::new(
                    DiagnosticKind::Closure,
                    id,
                    "deleted edge needs both endpoints in L_b or among deleted nodes",
                ));
            }
        }
    }
    let kept_nodes = |n: &String| eor.interface().has_node(n) || sel.preserve.nodes.contains(n);
    for id in &sel.preserve.edges {
        if let Some(e) = eor.maximal.rhs.edge(id) {
            if !kept_nodes(&e.src) || !kept_nodes(&e.tgt) {
                out.push(Diagnostic::new(
                    DiagnosticKind::Closure,
                    id,
                    "preserved edge needs both endpoints in K_b or among preserved nodes",
                ));
            }
        }
    }
    out
}

/// A concrete rule `L_c ⊇ K_c ⊆ R_g` induced by a selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedRule {
    pub selection: InducedSelection,
    pub rule: Rule,
    pub size: usize,
}

impl InducedRule {
    /// `L_i' = L_b ∪ delete`, the part of `L_c` matched by the left
    /// extension.
    pub fn left_part(&self, eor: &EffectOrientedRule) -> TypedGraph {
        eor.maximal
            .lhs
            .restrict(&eor.base.lhs.elements().union(&self.selection.delete))
    }
}

/// Builds `L_c = L_b ∪ delete ∪ preserve`, `K_c = K_b ∪ preserve`,
/// `R_c = R_g`, with conditions shifted from the base rule.
pub fn build_induced_rule(eor: &EffectOrientedRule, sel: &InducedSelection) -> Result<InducedRule> {
    let diags = validate_selection(eor, sel);
    if !diags.is_empty() {
        return Err(Error::InvalidSelection(diags));
    }
    let left_part = eor.maximal.lhs.restrict(&eor.base.lhs.elements().union(&sel.delete));
    let interface = eor
        .maximal
        .rhs
        .restrict(&eor.interface().elements().union(&sel.preserve));
    let lhs = left_part.union(&interface);
    let nacs = shift_nacs(&Morphism::identity(&eor.base.lhs), &eor.base.lhs, &lhs, &eor.base.nacs);
    let mut rule = Rule::new(
        format!("{}[{}]", eor.name, sel),
        lhs,
        interface,
        eor.maximal.rhs.clone(),
    );
    rule.nacs = nacs;
    Ok(InducedRule {
        size: sel.size(),
        selection: sel.clone(),
        rule,
    })
}

/// Connectedness filters on induced rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connectedness {
    None,
    WeakLeft,
    WeakRight,
    Left,
    Right,
}

/// Whether `sel` passes `filter`.
///
/// The weak variants require, for every selected potential node, each
/// adjacent maximal-rule edge whose other endpoint is also in the
/// respective part (`L_i'` or `K_c`) to be selected too; the strict
/// variants require every adjacent edge.
pub fn satisfies_connectedness(eor: &EffectOrientedRule, sel: &InducedSelection, filter: Connectedness) -> bool {
    let left_nodes = |n: &String| eor.base.lhs.has_node(n) || sel.delete.nodes.contains(n);
    let left_edges = |e: &String| eor.base.lhs.has_edge(e) || sel.delete.edges.contains(e);
    let kept_nodes = |n: &String| eor.interface().has_node(n) || sel.preserve.nodes.contains(n);
    let kept_edges = |e: &String| eor.interface().has_edge(e) || sel.preserve.edges.contains(e);
    match filter {
        Connectedness::None => true,
        Connectedness::WeakLeft => sel.delete.nodes.iter().all(|x| {
            eor.maximal.lhs.incident_edges(x).all(|(id, e)| {
                let other = if &e.src == x { &e.tgt } else { &e.src };
                !left_nodes(other) || left_edges(id)
            })
        }),
        Connectedness::Left => sel
            .delete
            .nodes
            .iter()
            .all(|x| eor.maximal.lhs.incident_edges(x).all(|(id, _)| left_edges(id))),
        Connectedness::WeakRight => sel.preserve.nodes.iter().all(|x| {
            eor.maximal.rhs.incident_edges(x).all(|(id, e)| {
                let other = if &e.src == x { &e.tgt } else { &e.src };
                !kept_nodes(other) || kept_edges(id)
            })
        }),
        Connectedness::Right => sel
            .preserve
            .nodes
            .iter()
            .all(|x| eor.maximal.rhs.incident_edges(x).all(|(id, _)| kept_edges(id))),
    }
}

fn subsets<T: Clone>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    assert!(items.len() < 32, "too many potential elements to enumerate");
    (0u32..(1u32 << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, x)| x.clone())
            .collect()
    })
}

/// Every valid selection passing `filter`, ordered by deleted-node subset,
/// preserved-node subset, then edge subsets (each by ascending bitmask over
/// ascending ids).
pub fn enumerate_selections(eor: &EffectOrientedRule, filter: Connectedness) -> Vec<InducedSelection> {
    let (pd, pc) = potential_actions(eor);
    let pd_nodes: Vec<String> = pd.nodes.iter().cloned().collect();
    let pc_nodes: Vec<String> = pc.nodes.iter().cloned().collect();
    let mut out = Vec::new();
    for del_nodes in subsets(&pd_nodes) {
        let left_nodes = |n: &String| eor.base.lhs.has_node(n) || del_nodes.contains(n);
        let del_edges: Vec<String> = pd
            .edges
            .iter()
            .filter(|id| {
                let e = eor.maximal.lhs.edge(id).expect("potential deletion edge");
                left_nodes(&e.src) && left_nodes(&e.tgt)
            })
            .cloned()
            .collect();
        for keep_nodes in subsets(&pc_nodes) {
            let kept_nodes = |n: &String| eor.interface().has_node(n) || keep_nodes.contains(n);
            let keep_edges: Vec<String> = pc
                .edges
                .iter()
                .filter(|id| {
                    let e = eor.maximal.rhs.edge(id).expect("potential creation edge");
                    kept_nodes(&e.src) && kept_nodes(&e.tgt)
                })
                .cloned()
                .collect();
            for de in subsets(&del_edges) {
                for ke in subsets(&keep_edges) {
                    let sel = InducedSelection::new(
                        ElementSet::from_ids(del_nodes.iter().cloned(), de.iter().cloned()),
                        ElementSet::from_ids(keep_nodes.iter().cloned(), ke),
                    );
                    if satisfies_connectedness(eor, &sel, filter) {
                        out.push(sel);
                    }
                }
            }
        }
    }
    out
}

/// Lower and upper bound on the number of induced rules: two to the number
/// of potential nodes, and two to the number of potential elements.
/// Saturates at `u64::MAX`.
pub fn count_bounds(eor: &EffectOrientedRule) -> (u64, u64) {
    let (pd, pc) = potential_actions(eor);
    let pow = |k: usize| 1u64.checked_shl(k as u32).filter(|_| k < 64).unwrap_or(u64::MAX);
    (pow(pd.nodes.len() + pc.nodes.len()), pow(pd.len() + pc.len()))
}

/// Whether the base rule embeds into `ir` as a subrule by inclusion.
pub fn check_base_subrule(eor: &EffectOrientedRule, ir: &InducedRule) -> bool {
    let e = SubruleEmbedding::inclusion(&eor.base, &ir.rule);
    check_subrule_embedding(&e, ConditionEquivalence::Witness).unwrap_or(false)
}
