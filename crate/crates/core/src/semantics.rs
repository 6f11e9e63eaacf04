//! Effect-oriented transformations under a matching strategy, and an audit
//! of their outcome: every potential action that was not performed must be
//! explained by another action on the same spot or by the lack of a spot.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::effect::{build_induced_rule, EffectOrientedRule, InducedRule, InducedSelection};
use crate::error::{Error, Result};
use crate::graph::{find_injective_extensions, Morphism, TypedGraph};
use crate::matching::{find_globally_maximal, find_locally_complete, find_locally_maximal, MatchResult, PreMatch};
use crate::rules::{apply_rule, TransformationRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    LocallyComplete,
    LocallyMaximal,
    GloballyMaximal,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [
        Strategy::LocallyComplete,
        Strategy::LocallyMaximal,
        Strategy::GloballyMaximal,
    ];

    /// Whether the strategy starts from a given base pre-match.
    pub fn needs_prematch(self) -> bool {
        self != Strategy::GloballyMaximal
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::LocallyComplete => "locally-complete",
            Strategy::LocallyMaximal => "locally-maximal",
            Strategy::GloballyMaximal => "globally-maximal",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.to_string() == s)
            .ok_or_else(|| Error::StrategyArgumentMismatch(format!("unknown strategy `{s}`")))
    }
}

/// A direct transformation via an induced rule, chosen by a strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectTransformation {
    pub eor: EffectOrientedRule,
    pub strategy: Strategy,
    pub selection: InducedSelection,
    pub induced: InducedRule,
    pub base_prematch: PreMatch,
    pub record: TransformationRecord,
}

/// Finds a match under `strategy` and applies its induced rule.
///
/// `pm` must be given for the local strategies and omitted for the global
/// one. When a strategy yields several results, the first in canonical
/// order is applied.
pub fn transform(
    eor: &EffectOrientedRule,
    host: &TypedGraph,
    strategy: Strategy,
    pm: Option<&PreMatch>,
) -> Result<Option<EffectTransformation>> {
    let found = match (strategy, pm) {
        (Strategy::LocallyComplete, Some(pm)) => find_locally_complete(eor, host, pm)?,
        (Strategy::LocallyMaximal, Some(pm)) => find_locally_maximal(eor, host, pm)?.into_iter().next(),
        (Strategy::GloballyMaximal, None) => find_globally_maximal(eor, host)?.into_iter().next(),
        (s, Some(_)) => {
            return Err(Error::StrategyArgumentMismatch(format!("{s} takes no base pre-match")));
        }
        (s, None) => {
            return Err(Error::StrategyArgumentMismatch(format!("{s} needs a base pre-match")));
        }
    };
    found.map(|mr| apply_match(eor, host, strategy, mr)).transpose()
}

/// Applies the induced rule of `mr` at its match.
pub fn apply_match(
    eor: &EffectOrientedRule,
    host: &TypedGraph,
    strategy: Strategy,
    mr: MatchResult,
) -> Result<EffectTransformation> {
    let record = apply_rule(&mr.induced.rule, host, &mr.matching)?;
    Ok(EffectTransformation {
        eor: eor.clone(),
        strategy,
        selection: mr.induced.selection.clone(),
        induced: mr.induced,
        base_prematch: mr.base_prematch,
        record,
    })
}

/// Rebuilds a recorded transformation from its selection and match.
pub fn replay(
    eor: &EffectOrientedRule,
    host: &TypedGraph,
    strategy: Strategy,
    selection: &InducedSelection,
    matching: Morphism,
) -> Result<EffectTransformation> {
    let induced = build_induced_rule(eor, selection)?;
    let base_prematch = PreMatch::new(eor, host, matching.restrict_to(&eor.base.lhs))?;
    apply_match(
        eor,
        host,
        strategy,
        MatchResult {
            induced,
            matching,
            base_prematch,
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    Deletion,
    Creation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// `x` is an edge with an endpoint outside `K_b`.
    SkippedNotAGraph,
    /// No extension of the comatch to `K_b + x` exists in the result.
    NoExtension,
    /// The potential action was performed elsewhere, or the spot is used by
    /// another potential action.
    AlternativeAction,
    /// The surviving element is in the image of the comatch.
    AlternativeCreation,
    /// No extension of the match to `K_b + x` exists in the input.
    NonExistence,
    Failure,
}

/// One checked element, with the host element the extension sent it to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub clause: Clause,
    pub element: String,
    pub outcome: Outcome,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn failures(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries.iter().filter(|e| e.outcome == Outcome::Failure)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Pretty JSON with a trailing newline.
    pub fn encode(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// `K_b` plus the element `id` of `part`, or `None` if `id` is an edge with
/// an endpoint outside `K_b`.
fn extend_interface(k: &TypedGraph, part: &TypedGraph, id: &str) -> Option<TypedGraph> {
    if let Some(n) = part.node(id) {
        return Some(k.clone().with_node(id, n.ty.clone()));
    }
    let e = part.edge(id)?;
    (k.has_node(&e.src) && k.has_node(&e.tgt))
        .then(|| k.clone().with_edge(id, e.ty.clone(), e.src.clone(), e.tgt.clone()))
}

/// Checks both clauses for every potential deletion and every performed
/// potential creation, one entry per extension found.
pub fn audit_report(t: &EffectTransformation) -> AuditReport {
    let eor = &t.eor;
    let k = eor.interface();
    let rec = &t.record;
    let lc = &t.induced.rule.lhs;
    let mut entries = Vec::new();
    let mut push = |clause, element: &String, outcome, witness: Option<&String>| {
        entries.push(AuditEntry {
            clause,
            element: element.clone(),
            outcome,
            witness: witness.cloned(),
        })
    };

    let comatch_on_k = rec.comatch.restrict_to(k);
    let comatch_image: std::collections::BTreeSet<&String> = rec
        .comatch
        .node_image()
        .into_iter()
        .chain(rec.comatch.edge_image())
        .collect();
    for x in eor.potential_deletions().iter() {
        let Some(k_plus) = extend_interface(k, &eor.maximal.lhs, x) else {
            push(Clause::Deletion, x, Outcome::SkippedNotAGraph, None);
            continue;
        };
        let mut any = false;
        for m_plus in find_injective_extensions(&k_plus, &rec.output, &comatch_on_k) {
            any = true;
            let y = m_plus.image(x).expect("total extension");
            let outcome = if lc.has_id(x) {
                Outcome::AlternativeAction
            } else if comatch_image.contains(y) {
                Outcome::AlternativeCreation
            } else {
                Outcome::Failure
            };
            push(Clause::Deletion, x, outcome, Some(y));
        }
        if !any {
            push(Clause::Deletion, x, Outcome::NoExtension, None);
        }
    }

    let match_on_k = rec.matching.restrict_to(k);
    let match_image: std::collections::BTreeSet<&String> = rec
        .matching
        .node_image()
        .into_iter()
        .chain(rec.matching.edge_image())
        .collect();
    for x in eor.potential_creations().difference(&t.selection.preserve).iter() {
        let Some(k_plus) = extend_interface(k, &eor.maximal.rhs, x) else {
            push(Clause::Creation, x, Outcome::SkippedNotAGraph, None);
            continue;
        };
        let mut any = false;
        for m_plus in find_injective_extensions(&k_plus, &rec.input, &match_on_k) {
            any = true;
            let y = m_plus.image(x).expect("total extension");
            let outcome = if match_image.contains(y) {
                Outcome::AlternativeAction
            } else {
                Outcome::Failure
            };
            push(Clause::Creation, x, outcome, Some(y));
        }
        if !any {
            push(Clause::Creation, x, Outcome::NonExistence, None);
        }
    }
    AuditReport { entries }
}

/// [`audit_report`], failing on the first violated clause.
pub fn audit_effect(t: &EffectTransformation) -> Result<AuditReport> {
    let report = audit_report(t);
    if let Some(f) = report.failures().next() {
        return Err(Error::AuditFailure {
            element: f.element.clone(),
            detail: format!(
                "{:?} clause fails: `{}` is left untouched at `{}`",
                f.clause,
                f.element,
                f.witness.as_deref().unwrap_or("?")
            ),
        });
    }
    Ok(report)
}
