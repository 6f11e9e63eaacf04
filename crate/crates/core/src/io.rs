//! Canonical JSON documents for type graphs, graphs, rules, morphisms and
//! transformation traces.
//!
//! Every document encodes to pretty-printed JSON with keys in alphabetical
//! order, element lists sorted by id and a trailing newline, so each value
//! has exactly one textual form.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::effect::{EffectOrientedRule, InducedSelection};
use crate::error::{Error, Result};
use crate::graph::{validate_graph, Diagnostic, DiagnosticKind, ElementSet, Morphism, TypeGraph, TypedGraph};
use crate::rules::{shift_nacs, validate_rule, Nac, Rule};

fn decode_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn encode_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

macro_rules! canonical_text {
    ($t:ty) => {
        impl $t {
            pub fn decode(text: &str) -> Result<Self> {
                decode_json(text)
            }

            /// The canonical text of this document.
            pub fn encode(&self) -> String {
                encode_json(self)
            }
        }
    };
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeTypeEntry {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeGraphDocument {
    pub edge_types: Vec<EdgeTypeEntry>,
    pub name: String,
    pub node_types: Vec<String>,
}

canonical_text!(TypeGraphDocument);

impl TypeGraphDocument {
    pub fn from_type_graph(tg: &TypeGraph) -> Self {
        TypeGraphDocument {
            edge_types: tg
                .edge_types
                .iter()
                .map(|(name, et)| EdgeTypeEntry {
                    name: name.clone(),
                    source: et.source.clone(),
                    target: et.target.clone(),
                })
                .collect(),
            name: tg.name.clone(),
            node_types: tg.node_types.iter().cloned().collect(),
        }
    }

    /// Builds and validates the type graph.
    pub fn to_type_graph(&self) -> Result<TypeGraph> {
        let mut tg = TypeGraph::new(self.name.clone());
        let mut diags = Vec::new();
        for n in &self.node_types {
            if !tg.node_types.insert(n.clone()) {
                diags.push(Diagnostic::new(
                    DiagnosticKind::DuplicateId,
                    n,
                    "node type listed twice",
                ));
            }
        }
        for et in &self.edge_types {
            if tg.edge_types.contains_key(&et.name) {
                diags.push(Diagnostic::new(
                    DiagnosticKind::DuplicateId,
                    &et.name,
                    "edge type listed twice",
                ));
            }
            tg = tg.with_edge_type(et.name.clone(), et.source.clone(), et.target.clone());
        }
        diags.extend(tg.validate());
        if diags.is_empty() {
            Ok(tg)
        } else {
            Err(Error::Validation(diags))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeEntry {
    pub id: String,
    #[serde(rename = "type")]
    pub ty: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub id: String,
    pub source: String,
    pub target: String,
    #[serde(rename = "type")]
    pub ty: String,
}

fn node_entries(g: &TypedGraph) -> Vec<NodeEntry> {
    g.nodes()
        .map(|(id, n)| NodeEntry {
            id: id.clone(),
            ty: n.ty.clone(),
        })
        .collect()
}

fn edge_entries(g: &TypedGraph) -> Vec<EdgeEntry> {
    g.edges()
        .map(|(id, e)| EdgeEntry {
            id: id.clone(),
            source: e.src.clone(),
            target: e.tgt.clone(),
            ty: e.ty.clone(),
        })
        .collect()
}

/// Diagnostics for ids that occur more than once among `ids`.
fn duplicate_ids<'a>(ids: impl Iterator<Item = &'a String>) -> Vec<Diagnostic> {
    let mut seen = std::collections::BTreeSet::new();
    ids.filter(|id| !seen.insert(*id))
        .map(|id| Diagnostic::new(DiagnosticKind::DuplicateId, id, "id listed twice"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub edges: Vec<EdgeEntry>,
    pub nodes: Vec<NodeEntry>,
    pub type_graph: String,
}

canonical_text!(GraphDocument);

impl GraphDocument {
    pub fn from_graph(g: &TypedGraph) -> Self {
        GraphDocument {
            edges: edge_entries(g),
            nodes: node_entries(g),
            type_graph: g.type_graph.clone(),
        }
    }

    /// Builds the graph and checks it against `tg`.
    pub fn to_graph(&self, tg: &TypeGraph) -> Result<TypedGraph> {
        let mut diags = duplicate_ids(self.nodes.iter().map(|n| &n.id).chain(self.edges.iter().map(|e| &e.id)));
        let mut g = TypedGraph::new(self.type_graph.clone());
        for n in &self.nodes {
            g.add_node(n.id.clone(), n.ty.clone());
        }
        for e in &self.edges {
            g.add_edge(e.id.clone(), e.ty.clone(), e.source.clone(), e.target.clone());
        }
        diags.extend(validate_graph(&g, tg));
        if diags.is_empty() {
            Ok(g)
        } else {
            Err(Error::Validation(diags))
        }
    }
}

/// What a rule does with an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Preserve,
    Delete,
    DeletePotential,
    Create,
    CreatePotential,
}

impl Action {
    fn is_potential(self) -> bool {
        matches!(self, Action::DeletePotential | Action::CreatePotential)
    }

    /// Whether an edge tagged `self` may have an endpoint tagged `end`.
    fn admits_endpoint(self, end: Action) -> bool {
        use Action::*;
        match self {
            Preserve => end == Preserve,
            Delete => matches!(end, Preserve | Delete),
            DeletePotential => matches!(end, Preserve | DeletePotential),
            Create => matches!(end, Preserve | Create),
            CreatePotential => matches!(end, Preserve | Create | CreatePotential),
        }
    }

    fn in_base_lhs(self) -> bool {
        matches!(self, Action::Preserve | Action::Delete)
    }

    fn in_base_rhs(self) -> bool {
        matches!(self, Action::Preserve | Action::Create)
    }

    fn in_maximal_lhs(self) -> bool {
        matches!(self, Action::Preserve | Action::Delete | Action::DeletePotential)
    }

    fn in_maximal_rhs(self) -> bool {
        matches!(self, Action::Preserve | Action::Create | Action::CreatePotential)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleNodeEntry {
    pub action: Action,
    pub id: String,
    #[serde(rename = "type")]
    pub ty: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleEdgeEntry {
    pub action: Action,
    pub id: String,
    pub source: String,
    pub target: String,
    #[serde(rename = "type")]
    pub ty: String,
}

/// Elements a NAC adds to the (base) left-hand side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NacEntry {
    pub edges: Vec<EdgeEntry>,
    pub name: String,
    pub nodes: Vec<NodeEntry>,
}

/// A rule in integrated form: one element list with an action tag per
/// element. The base rule consists of the `preserve`, `delete` and `create`
/// elements, the maximal rule of all elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDocument {
    pub edges: Vec<RuleEdgeEntry>,
    pub nacs: Vec<NacEntry>,
    pub name: String,
    pub nodes: Vec<RuleNodeEntry>,
    pub type_graph: String,
}

canonical_text!(RuleDocument);

impl RuleDocument {
    /// The integrated form of a plain rule.
    pub fn from_rule(r: &Rule) -> Self {
        RuleDocument::integrate(&r.name, &r.lhs, &r.interface, &r.rhs, &r.lhs, &r.rhs, &r.nacs)
    }

    /// The integrated form of an effect-oriented rule. NACs are those of
    /// the base rule.
    pub fn from_effect_rule(eor: &EffectOrientedRule) -> Self {
        RuleDocument::integrate(
            &eor.name,
            &eor.base.lhs,
            eor.interface(),
            &eor.base.rhs,
            &eor.maximal.lhs,
            &eor.maximal.rhs,
            &eor.base.nacs,
        )
    }

    fn integrate(
        name: &str,
        lb: &TypedGraph,
        k: &TypedGraph,
        rb: &TypedGraph,
        lg: &TypedGraph,
        rg: &TypedGraph,
        nacs: &[Nac],
    ) -> Self {
        let action = |id: &str| {
            if k.has_id(id) {
                Action::Preserve
            } else if lb.has_id(id) {
                Action::Delete
            } else if rb.has_id(id) {
                Action::Create
            } else if lg.has_id(id) {
                Action::DeletePotential
            } else {
                Action::CreatePotential
            }
        };
        let whole = lg.union(rg);
        let nodes = whole
            .nodes()
            .map(|(id, n)| RuleNodeEntry {
                action: action(id),
                id: id.clone(),
                ty: n.ty.clone(),
            })
            .collect();
        let edges = whole
            .edges()
            .map(|(id, e)| RuleEdgeEntry {
                action: action(id),
                id: id.clone(),
                source: e.src.clone(),
                target: e.tgt.clone(),
                ty: e.ty.clone(),
            })
            .collect();
        let nacs = nacs
            .iter()
            .map(|nac| {
                let extra = nac.graph.elements().difference(&lb.elements());
                let g = &nac.graph;
                NacEntry {
                    edges: edge_entries(g)
                        .into_iter()
                        .filter(|e| extra.edges.contains(&e.id))
                        .collect(),
                    name: nac.name.clone(),
                    nodes: node_entries(g)
                        .into_iter()
                        .filter(|n| extra.nodes.contains(&n.id))
                        .collect(),
                }
            })
            .collect();
        RuleDocument {
            edges,
            nacs,
            name: name.to_string(),
            nodes,
            type_graph: lg.type_graph.clone(),
        }
    }

    fn tagging_diagnostics(&self, allow_potential: bool) -> Vec<Diagnostic> {
        let mut out = duplicate_ids(self.nodes.iter().map(|n| &n.id).chain(self.edges.iter().map(|e| &e.id)));
        let tags: BTreeMap<&String, Action> = self.nodes.iter().map(|n| (&n.id, n.action)).collect();
        for n in &self.nodes {
            if !allow_potential && n.action.is_potential() {
                out.push(Diagnostic::new(
                    DiagnosticKind::Tagging,
                    &n.id,
                    "potential action in a plain rule",
                ));
            }
        }
        for e in &self.edges {
            if !allow_potential && e.action.is_potential() {
                out.push(Diagnostic::new(
                    DiagnosticKind::Tagging,
                    &e.id,
                    "potential action in a plain rule",
                ));
            }
            for end in [&e.source, &e.target] {
                match tags.get(end) {
                    None => out.push(Diagnostic::new(
                        DiagnosticKind::DanglingEndpoint,
                        &e.id,
                        format!("endpoint `{end}` is not a node of the rule"),
                    )),
                    Some(&t) if !e.action.admits_endpoint(t) => out.push(Diagnostic::new(
                        DiagnosticKind::Tagging,
                        &e.id,
                        format!("{:?} edge cannot attach to {:?} node `{end}`", e.action, t),
                    )),
                    Some(_) => {}
                }
            }
        }
        out
    }

    fn part(&self, keep: impl Fn(Action) -> bool) -> TypedGraph {
        let mut g = TypedGraph::new(self.type_graph.clone());
        for n in self.nodes.iter().filter(|n| keep(n.action)) {
            g.add_node(n.id.clone(), n.ty.clone());
        }
        for e in self.edges.iter().filter(|e| keep(e.action)) {
            g.add_edge(e.id.clone(), e.ty.clone(), e.source.clone(), e.target.clone());
        }
        g
    }

    /// NAC graphs over `lhs`.
    fn nacs_over(&self, lhs: &TypedGraph) -> (Vec<Nac>, Vec<Diagnostic>) {
        let mut diags = Vec::new();
        let mut nacs = Vec::new();
        for entry in &self.nacs {
            let mut g = lhs.clone();
            for n in &entry.nodes {
                if g.has_id(&n.id) {
                    diags.push(Diagnostic::new(
                        DiagnosticKind::DuplicateId,
                        &n.id,
                        format!("NAC {} reuses an id of the left-hand side", entry.name),
                    ));
                }
                g.add_node(n.id.clone(), n.ty.clone());
            }
            for e in &entry.edges {
                if g.has_id(&e.id) {
                    diags.push(Diagnostic::new(
                        DiagnosticKind::DuplicateId,
                        &e.id,
                        format!("NAC {} reuses an id of the left-hand side", entry.name),
                    ));
                }
                g.add_edge(e.id.clone(), e.ty.clone(), e.source.clone(), e.target.clone());
            }
            nacs.push(Nac::new(entry.name.clone(), g));
        }
        (nacs, diags)
    }
}

/// Decodes the plain rule described by `doc`; potential tags are rejected.
pub fn rule_from_document(doc: &RuleDocument, tg: &TypeGraph) -> Result<Rule> {
    let mut diags = doc.tagging_diagnostics(false);
    let lhs = doc.part(Action::in_base_lhs);
    let (nacs, nac_diags) = doc.nacs_over(&lhs);
    diags.extend(nac_diags);
    let mut r = Rule::new(
        doc.name.clone(),
        lhs,
        doc.part(|a| a == Action::Preserve),
        doc.part(Action::in_base_rhs),
    );
    r.nacs = nacs;
    diags.extend(validate_rule(&r, tg));
    if diags.is_empty() {
        Ok(r)
    } else {
        Err(Error::Validation(diags))
    }
}

/// Decodes an effect-oriented rule. The maximal rule's NACs are the base
/// NACs shifted along `L_b ⊆ L_g`.
pub fn effect_rule_from_document(doc: &RuleDocument, tg: &TypeGraph) -> Result<EffectOrientedRule> {
    let mut diags = doc.tagging_diagnostics(true);
    let lb = doc.part(Action::in_base_lhs);
    let lg = doc.part(Action::in_maximal_lhs);
    let k = doc.part(|a| a == Action::Preserve);
    let (nacs, nac_diags) = doc.nacs_over(&lb);
    diags.extend(nac_diags);
    let mut base = Rule::new(doc.name.clone(), lb.clone(), k.clone(), doc.part(Action::in_base_rhs));
    base.nacs = nacs;
    let mut maximal = Rule::new(doc.name.clone(), lg.clone(), k, doc.part(Action::in_maximal_rhs));
    maximal.nacs = shift_nacs(&Morphism::identity(&lb), &lb, &lg, &base.nacs);
    diags.extend(validate_rule(&base, tg));
    diags.extend(validate_rule(&maximal, tg));
    if !diags.is_empty() {
        return Err(Error::Validation(diags));
    }
    EffectOrientedRule::new(doc.name.clone(), base, maximal)
}

/// A morphism as two id maps.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDocument {
    pub edges: BTreeMap<String, String>,
    pub nodes: BTreeMap<String, String>,
}

canonical_text!(MorphismDocument);

impl MorphismDocument {
    pub fn from_morphism(m: &Morphism) -> Self {
        MorphismDocument {
            edges: m.edges.clone(),
            nodes: m.nodes.clone(),
        }
    }

    pub fn to_morphism(&self) -> Morphism {
        Morphism {
            nodes: self.nodes.clone(),
            edges: self.edges.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementSetDocument {
    pub edges: Vec<String>,
    pub nodes: Vec<String>,
}

impl ElementSetDocument {
    pub fn from_set(s: &ElementSet) -> Self {
        ElementSetDocument {
            edges: s.edges.iter().cloned().collect(),
            nodes: s.nodes.iter().cloned().collect(),
        }
    }

    pub fn to_set(&self) -> ElementSet {
        ElementSet::from_ids(self.nodes.iter().cloned(), self.edges.iter().cloned())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionDocument {
    pub delete: ElementSetDocument,
    pub preserve: ElementSetDocument,
}

impl SelectionDocument {
    pub fn from_selection(sel: &InducedSelection) -> Self {
        SelectionDocument {
            delete: ElementSetDocument::from_set(&sel.delete),
            preserve: ElementSetDocument::from_set(&sel.preserve),
        }
    }

    pub fn to_selection(&self) -> InducedSelection {
        InducedSelection::new(self.delete.to_set(), self.preserve.to_set())
    }
}

/// A recorded effect-oriented transformation: which induced rule was
/// applied where, and where its right-hand side ended up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDocument {
    pub base_match: MorphismDocument,
    pub comatch: MorphismDocument,
    #[serde(rename = "match")]
    pub matching: MorphismDocument,
    pub selection: SelectionDocument,
    pub strategy: String,
}

canonical_text!(TraceDocument);
