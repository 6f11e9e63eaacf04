//! Typed graphs over a fixed type graph, typed morphisms, injective match
//! search and the gluing constructions used by double-pushout rewriting.
//!
//! Element identity is a string id. Inclusions between graphs are realised by
//! id sharing: `K ⊆ L` means every node and edge id of `K` also occurs in `L`
//! with the same type and endpoints.

mod gluing;
mod morphism;
mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub(crate) use gluing::pushout_with;
pub use gluing::{dangling_nodes, is_pullback_square, pushout, pushout_complement, Pushout, PushoutComplement};
pub use morphism::{check_morphism, Morphism};
pub use search::{find_injective_extensions, is_isomorphic, Extensions};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeType {
    pub source: String,
    pub target: String,
}

/// The graph of available node and edge types.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TypeGraph {
    pub name: String,
    pub node_types: BTreeSet<String>,
    pub edge_types: BTreeMap<String, EdgeType>,
}

impl TypeGraph {
    pub fn new(name: impl Into<String>) -> Self {
        TypeGraph {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn with_node_type(mut self, name: impl Into<String>) -> Self {
        self.node_types.insert(name.into());
        self
    }

    pub fn with_edge_type(
        mut self,
        name: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        self.edge_types.insert(
            name.into(),
            EdgeType {
                source: source.into(),
                target: target.into(),
            },
        );
        self
    }

    /// Diagnostics for edge types referring to undeclared node types.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        for (name, et) in &self.edge_types {
            for end in [&et.source, &et.target] {
                if !self.node_types.contains(end) {
                    out.push(Diagnostic::new(
                        DiagnosticKind::UnknownType,
                        name,
                        format!("edge type endpoint `{end}` is not a declared node type"),
                    ));
                }
            }
            if self.node_types.contains(name) {
                out.push(Diagnostic::new(
                    DiagnosticKind::DuplicateId,
                    name,
                    "name used both as node type and edge type",
                ));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub ty: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub ty: String,
    pub src: String,
    pub tgt: String,
}

/// A finite multigraph typed over the type graph named by `type_graph`.
///
/// Construction never fails; well-formedness is reported by [`validate_graph`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TypedGraph {
    pub type_graph: String,
    nodes: BTreeMap<String, Node>,
    edges: BTreeMap<String, Edge>,
}

impl TypedGraph {
    pub fn new(type_graph: impl Into<String>) -> Self {
        TypedGraph {
            type_graph: type_graph.into(),
            ..Default::default()
        }
    }

    pub fn with_node(mut self, id: impl Into<String>, ty: impl Into<String>) -> Self {
        self.add_node(id, ty);
        self
    }

    pub fn with_edge(
        mut self,
        id: impl Into<String>,
        ty: impl Into<String>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) -> Self {
        self.add_edge(id, ty, src, tgt);
        self
    }

    pub fn add_node(&mut self, id: impl Into<String>, ty: impl Into<String>) {
        self.nodes.insert(id.into(), Node { ty: ty.into() });
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        ty: impl Into<String>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) {
        self.edges.insert(
            id.into(),
            Edge {
                ty: ty.into(),
                src: src.into(),
                tgt: tgt.into(),
            },
        );
    }

    pub fn remove_node(&mut self, id: &str) -> Option<Node> {
        self.nodes.remove(id)
    }

    pub fn remove_edge(&mut self, id: &str) -> Option<Edge> {
        self.edges.remove(id)
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.get(id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.get(id)
    }

    pub fn has_node(&self, id: &str) -> bool {
        self.nodes.contains_key(id)
    }

    pub fn has_edge(&self, id: &str) -> bool {
        self.edges.contains_key(id)
    }

    /// Whether `id` is taken by a node or an edge.
    pub fn has_id(&self, id: &str) -> bool {
        self.has_node(id) || self.has_edge(id)
    }

    pub fn nodes(&self) -> impl Iterator<Item = (&String, &Node)> {
        self.nodes.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&String, &Edge)> {
        self.edges.iter()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = &String> {
        self.nodes.keys()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &String> {
        self.edges.keys()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.edges.is_empty()
    }

    /// Edges with `node` as source or target.
    pub fn incident_edges<'a>(&'a self, node: &'a str) -> impl Iterator<Item = (&'a String, &'a Edge)> {
        self.edges.iter().filter(move |(_, e)| e.src == node || e.tgt == node)
    }

    pub fn elements(&self) -> ElementSet {
        ElementSet {
            nodes: self.nodes.keys().cloned().collect(),
            edges: self.edges.keys().cloned().collect(),
        }
    }

    /// Whether `self ⊆ other` as id-subgraph (same types and endpoints).
    pub fn is_subgraph_of(&self, other: &TypedGraph) -> bool {
        self.nodes.iter().all(|(id, n)| other.node(id) == Some(n))
            && self.edges.iter().all(|(id, e)| other.edge(id) == Some(e))
    }

    /// The elements of `self` whose ids are listed in `keep`. Edges are kept
    /// only if both endpoints are kept too.
    pub fn restrict(&self, keep: &ElementSet) -> TypedGraph {
        let mut g = TypedGraph::new(self.type_graph.clone());
        for id in &keep.nodes {
            if let Some(n) = self.node(id) {
                g.nodes.insert(id.clone(), n.clone());
            }
        }
        for id in &keep.edges {
            if let Some(e) = self.edge(id) {
                if g.has_node(&e.src) && g.has_node(&e.tgt) {
                    g.edges.insert(id.clone(), e.clone());
                }
            }
        }
        g
    }

    /// Union of two id-compatible graphs; `other` wins on conflicting ids.
    pub fn union(&self, other: &TypedGraph) -> TypedGraph {
        let mut g = self.clone();
        g.nodes.extend(other.nodes.iter().map(|(k, v)| (k.clone(), v.clone())));
        g.edges.extend(other.edges.iter().map(|(k, v)| (k.clone(), v.clone())));
        g
    }

    /// First id of the form `base#k` (k ≥ 1) not used by a node or edge here
    /// nor listed in `reserved`.
    pub fn fresh_id(&self, base: &str, reserved: &BTreeSet<String>) -> String {
        (1..)
            .map(|k| format!("{base}#{k}"))
            .find(|c| !self.has_id(c) && !reserved.contains(c))
            .expect("unbounded counter")
    }
}

/// A set of node ids and a set of edge ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElementSet {
    pub nodes: BTreeSet<String>,
    pub edges: BTreeSet<String>,
}

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_ids<N, E>(nodes: N, edges: E) -> Self
    where
        N: IntoIterator,
        N::Item: Into<String>,
        E: IntoIterator,
        E::Item: Into<String>,
    {
        ElementSet {
            nodes: nodes.into_iter().map(Into::into).collect(),
            edges: edges.into_iter().map(Into::into).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len() + self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.edges.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.nodes.contains(id) || self.edges.contains(id)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            nodes: self.nodes.union(&other.nodes).cloned().collect(),
            edges: self.edges.union(&other.edges).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            nodes: self.nodes.difference(&other.nodes).cloned().collect(),
            edges: self.edges.difference(&other.edges).cloned().collect(),
        }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.nodes.is_subset(&other.nodes) && self.edges.is_subset(&other.edges)
    }

    /// All ids, nodes first.
    pub fn iter(&self) -> impl Iterator<Item = &String> {
        self.nodes.iter().chain(self.edges.iter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagnosticKind {
    UnknownType,
    TypeMismatch,
    DanglingEndpoint,
    DuplicateId,
    NotTotal,
    NonCommuting,
    NotInjective,
    NotIncluded,
    Closure,
    NotPullback,
    Tagging,
}

/// A single well-formedness violation, naming the offending element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub element: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, element: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            kind,
            element: element.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} `{}`: {}", self.kind, self.element, self.message)
    }
}

/// Checks that `g` is a well-formed graph typed over `tg`.
pub fn validate_graph(g: &TypedGraph, tg: &TypeGraph) -> Vec<Diagnostic> {
    use DiagnosticKind::*;
    let mut out = Vec::new();
    if g.type_graph != tg.name {
        out.push(Diagnostic::new(
            UnknownType,
            &g.type_graph,
            format!("graph is typed over `{}`, expected `{}`", g.type_graph, tg.name),
        ));
    }
    for (id, n) in g.nodes() {
        if !tg.node_types.contains(&n.ty) {
            out.push(Diagnostic::new(
                UnknownType,
                id,
                format!("unknown node type `{}`", n.ty),
            ));
        }
    }
    for (id, e) in g.edges() {
        if g.has_node(id) {
            out.push(Diagnostic::new(DuplicateId, id, "id used by a node and an edge"));
        }
        let ends = [("source", &e.src), ("target", &e.tgt)];
        for (role, end) in ends {
            if !g.has_node(end) {
                out.push(Diagnostic::new(
                    DanglingEndpoint,
                    id,
                    format!("{role} `{end}` is not a node of the graph"),
                ));
            }
        }
        let Some(et) = tg.edge_types.get(&e.ty) else {
            out.push(Diagnostic::new(
                UnknownType,
                id,
                format!("unknown edge type `{}`", e.ty),
            ));
            continue;
        };
        for (role, end, expected) in [("source", &e.src, &et.source), ("target", &e.tgt, &et.target)] {
            if let Some(n) = g.node(end) {
                if &n.ty != expected {
                    out.push(Diagnostic::new(
                        TypeMismatch,
                        id,
                        format!(
                            "{role} `{end}` has type `{}` but `{}` requires `{expected}`",
                            n.ty, e.ty
                        ),
                    ));
                }
            }
        }
    }
    out
}
