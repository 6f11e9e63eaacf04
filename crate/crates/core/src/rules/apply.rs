use super::{require_match, satisfies_nacs, Rule};
use crate::error::{Error, Result};
use crate::graph::{pushout_complement, Morphism, TypedGraph};

/// A direct transformation `G ⇒ H` with both pushout squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformationRecord {
    pub input: TypedGraph,
    pub output: TypedGraph,
    pub rule: Rule,
    /// `m: L ↪ G`.
    pub matching: Morphism,
    /// `n: R ↪ H`.
    pub comatch: Morphism,
    /// `D`, a subgraph of both `G` and `H` by id.
    pub context: TypedGraph,
    /// `K ↪ D`.
    pub interface_to_context: Morphism,
}

impl TransformationRecord {
    /// Partial map `G ⇀ H` through the context: `h ∘ g⁻¹`.
    pub fn track(&self) -> Morphism {
        Morphism::identity(&self.context)
    }

    /// Host elements removed by the step.
    pub fn deleted(&self) -> crate::graph::ElementSet {
        self.input.elements().difference(&self.context.elements())
    }

    /// Elements of `H` that did not exist in `G`.
    pub fn created(&self) -> crate::graph::ElementSet {
        self.output.elements().difference(&self.context.elements())
    }
}

/// Applies `r` at the injective, NAC-satisfying match `m: L ↪ g`.
///
/// Created elements are named `ruleId#k` with the smallest free `k`.
pub fn apply_rule(r: &Rule, g: &TypedGraph, m: &Morphism) -> Result<TransformationRecord> {
    require_match(r, g, m)?;
    if !satisfies_nacs(m, &r.nacs, g) {
        return Err(Error::NacViolated);
    }
    let pc = pushout_complement(&r.interface, &r.lhs, g, m)?;
    let po = crate::graph::pushout_with(
        &pc.graph,
        &r.rhs,
        &pc.from_interface,
        &r.right_leg(),
        |d, id, reserved| d.fresh_id(id, reserved),
    )?;
    Ok(TransformationRecord {
        input: g.clone(),
        output: po.graph,
        rule: r.clone(),
        matching: m.clone(),
        comatch: po.from_right,
        context: pc.graph,
        interface_to_context: pc.from_interface,
    })
}
