//! Double-pushout rules `L ⊇ K ⊆ R` with negative application conditions,
//! subrule embeddings and classical rule application.

mod apply;
mod conditions;

pub use apply::{apply_rule, TransformationRecord};
pub use conditions::{for_each_host_extending, nacs_equivalent, satisfies_nacs, shift_nacs, ConditionEquivalence};

use crate::error::{Error, Result};
use crate::graph::{
    check_morphism, is_pullback_square, validate_graph, Diagnostic, DiagnosticKind, ElementSet, Morphism, TypeGraph,
    TypedGraph,
};

/// A forbidden extension `N ⊇ L` of a rule's left-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nac {
    pub name: String,
    pub graph: TypedGraph,
}

impl Nac {
    pub fn new(name: impl Into<String>, graph: TypedGraph) -> Self {
        Nac {
            name: name.into(),
            graph,
        }
    }
}

/// A span of inclusions `L ⊇ K ⊆ R` plus a conjunction of NACs over `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub name: String,
    pub lhs: TypedGraph,
    pub interface: TypedGraph,
    pub rhs: TypedGraph,
    pub nacs: Vec<Nac>,
}

impl Rule {
    pub fn new(name: impl Into<String>, lhs: TypedGraph, interface: TypedGraph, rhs: TypedGraph) -> Self {
        Rule {
            name: name.into(),
            lhs,
            interface,
            rhs,
            nacs: Vec::new(),
        }
    }

    /// The rule `G ⊇ G ⊆ G`.
    pub fn identity(name: impl Into<String>, g: &TypedGraph) -> Self {
        Rule::new(name, g.clone(), g.clone(), g.clone())
    }

    pub fn with_nac(mut self, nac: Nac) -> Self {
        self.nacs.push(nac);
        self
    }

    /// Elements of `L \ K`.
    pub fn deletions(&self) -> ElementSet {
        self.lhs.elements().difference(&self.interface.elements())
    }

    /// Elements of `R \ K`.
    pub fn creations(&self) -> ElementSet {
        self.rhs.elements().difference(&self.interface.elements())
    }

    /// `K ↪ L` as a morphism.
    pub fn left_leg(&self) -> Morphism {
        Morphism::identity(&self.interface)
    }

    /// `K ↪ R` as a morphism.
    pub fn right_leg(&self) -> Morphism {
        Morphism::identity(&self.interface)
    }

    /// The span read backwards, `R ⊇ K ⊆ L`, without application conditions.
    pub fn reversed(&self) -> Rule {
        Rule::new(
            format!("{}^-1", self.name),
            self.rhs.clone(),
            self.interface.clone(),
            self.lhs.clone(),
        )
    }
}

/// Checks the span invariants of `r` against `tg`.
pub fn validate_rule(r: &Rule, tg: &TypeGraph) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (part, g) in [("L", &r.lhs), ("K", &r.interface), ("R", &r.rhs)] {
        out.extend(validate_graph(g, tg).into_iter().map(|mut d| {
            d.message = format!("{part}: {}", d.message);
            d
        }));
    }
    out.extend(inclusion_diagnostics(&r.interface, &r.lhs, "K", "L"));
    out.extend(inclusion_diagnostics(&r.interface, &r.rhs, "K", "R"));
    // L ∩ R must be exactly K, otherwise an id would denote two elements.
    for id in r.lhs.elements().iter() {
        if r.rhs.has_id(id) && !r.interface.has_id(id) {
            out.push(Diagnostic::new(
                DiagnosticKind::DuplicateId,
                id,
                "id occurs in L and R but not in K",
            ));
        }
    }
    for nac in &r.nacs {
        out.extend(validate_graph(&nac.graph, tg).into_iter().map(|mut d| {
            d.message = format!("NAC {}: {}", nac.name, d.message);
            d
        }));
        out.extend(inclusion_diagnostics(
            &r.lhs,
            &nac.graph,
            "L",
            &format!("NAC {}", nac.name),
        ));
    }
    out
}

/// Diagnostics for every element of `small` not included in `big`.
pub(crate) fn inclusion_diagnostics(
    small: &TypedGraph,
    big: &TypedGraph,
    small_name: &str,
    big_name: &str,
) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (id, n) in small.nodes() {
        if big.node(id) != Some(n) {
            out.push(Diagnostic::new(
                DiagnosticKind::NotIncluded,
                id,
                format!("node of {small_name} is not included in {big_name}"),
            ));
        }
    }
    for (id, e) in small.edges() {
        if big.edge(id) != Some(e) {
            out.push(Diagnostic::new(
                DiagnosticKind::NotIncluded,
                id,
                format!("edge of {small_name} is not included in {big_name}"),
            ));
        }
    }
    out
}

/// `ι = (ι_L, ι_K, ι_R): sub ↪ sup`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubruleEmbedding {
    pub sub: Rule,
    pub sup: Rule,
    pub iota_l: Morphism,
    pub iota_k: Morphism,
    pub iota_r: Morphism,
}

impl SubruleEmbedding {
    /// The embedding given by id inclusion of each component.
    pub fn inclusion(sub: &Rule, sup: &Rule) -> Self {
        SubruleEmbedding {
            iota_l: Morphism::identity(&sub.lhs),
            iota_k: Morphism::identity(&sub.interface),
            iota_r: Morphism::identity(&sub.rhs),
            sub: sub.clone(),
            sup: sup.clone(),
        }
    }
}

/// True iff the component maps are injective morphisms, both squares
/// `K' → L' → L = K' → K → L` and `K' → R' → R = K' → K → R` are pullbacks,
/// and the conditions of `sup` are equivalent to the shift of those of
/// `sub` along `ι_L`.
pub fn check_subrule_embedding(e: &SubruleEmbedding, mode: ConditionEquivalence<'_>) -> Result<bool> {
    let components = [
        (&e.iota_l, &e.sub.lhs, &e.sup.lhs),
        (&e.iota_k, &e.sub.interface, &e.sup.interface),
        (&e.iota_r, &e.sub.rhs, &e.sup.rhs),
    ];
    if components
        .iter()
        .any(|(f, s, t)| !check_morphism(f, s, t, true).is_empty())
    {
        return Ok(false);
    }
    let sub_le = e.sub.left_leg();
    let sup_le = e.sup.left_leg();
    let sub_ri = e.sub.right_leg();
    let sup_ri = e.sup.right_leg();
    if !is_pullback_square(&sub_le, &e.iota_k, &e.iota_l, &sup_le)? {
        return Ok(false);
    }
    if !is_pullback_square(&sub_ri, &e.iota_k, &e.iota_r, &sup_ri)? {
        return Ok(false);
    }
    let shifted = shift_nacs(&e.iota_l, &e.sub.lhs, &e.sup.lhs, &e.sub.nacs);
    Ok(nacs_equivalent(&e.sup.lhs, &e.sup.nacs, &shifted, mode))
}

/// Rejects matches that are not injective total morphisms `L ↪ G`.
pub(crate) fn require_match(r: &Rule, g: &TypedGraph, m: &Morphism) -> Result<()> {
    let diags = check_morphism(m, &r.lhs, g, true);
    if diags.is_empty() {
        Ok(())
    } else {
        Err(Error::NotInjective(
            diags.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn maximal_rule_of_fixture_is_valid() {
        let tg = fixtures::bank_type_graph();
        assert!(validate_rule(&fixtures::ensure_acc().maximal, &tg).is_empty());
        assert!(validate_rule(&fixtures::ensure_no_acc().maximal, &tg).is_empty());
    }

    #[test]
    fn interface_edge_missing_from_rhs() {
        let tg = fixtures::bank_type_graph();
        let k = TypedGraph::new("bank")
            .with_node("c", "Client")
            .with_node("a", "Account")
            .with_edge("e", "accounts", "c", "a");
        let r_side = TypedGraph::new("bank")
            .with_node("c", "Client")
            .with_node("a", "Account");
        let r = Rule::new("bad", k.clone(), k, r_side);
        let diags = validate_rule(&r, &tg);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].kind, DiagnosticKind::NotIncluded);
        assert_eq!(diags[0].element, "e");
    }

    #[test]
    fn identity_rule_is_valid() {
        let r = Rule::identity("id", &fixtures::g_bank());
        assert!(validate_rule(&r, &fixtures::bank_type_graph()).is_empty());
    }

    #[test]
    fn id_shared_by_deletion_and_creation_is_rejected() {
        let k = TypedGraph::new("bank");
        let l = TypedGraph::new("bank").with_node("x", "Client");
        let r = Rule::new("clash", l.clone(), k, l);
        let diags = validate_rule(&r, &fixtures::bank_type_graph());
        assert!(diags.iter().any(|d| d.kind == DiagnosticKind::DuplicateId));
    }

    #[test]
    fn base_embeds_into_maximal() {
        for eor in [fixtures::ensure_acc(), fixtures::ensure_no_acc()] {
            let e = SubruleEmbedding::inclusion(&eor.base, &eor.maximal);
            assert!(check_subrule_embedding(&e, ConditionEquivalence::Witness).unwrap());
        }
    }

    #[test]
    fn rule_embeds_into_itself() {
        let r = fixtures::ensure_acc().maximal;
        let e = SubruleEmbedding::inclusion(&r, &r);
        assert!(check_subrule_embedding(&e, ConditionEquivalence::Witness).unwrap());
    }

    #[test]
    fn interface_mismatch_breaks_pullback() {
        // sub: c ⊇ c ⊆ c+a ; sup: c+a ⊇ c+a ⊆ c+a. K_sup ∩ L_sub is {c, a}∩{c} but
        // the left square needs K_sub = L_sub ∩ K_sup, which holds, while the
        // right square needs K_sub = R_sub ∩ K_sup = {c, a} ≠ {c}.
        let c = TypedGraph::new("bank").with_node("c", "Client");
        let ca = c.clone().with_node("a", "Account");
        let sub = Rule::new("sub", c.clone(), c.clone(), ca.clone());
        let sup = Rule::new("sup", ca.clone(), ca.clone(), ca);
        let e = SubruleEmbedding::inclusion(&sub, &sup);
        assert!(!check_subrule_embedding(&e, ConditionEquivalence::Witness).unwrap());
    }

    #[test]
    fn reversed_rule_swaps_sides() {
        let r = fixtures::ensure_acc().maximal;
        let inv = r.reversed();
        assert_eq!(inv.lhs, r.rhs);
        assert_eq!(inv.rhs, r.lhs);
        assert_eq!(inv.deletions(), r.creations());
    }
}
