use std::collections::{BTreeMap, BTreeSet};

use super::{Diagnostic, DiagnosticKind, TypedGraph};

/// A node map and an edge map between two typed graphs.
///
/// The graphs themselves are not owned; operations that need them take them
/// as arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Morphism {
    pub nodes: BTreeMap<String, String>,
    pub edges: BTreeMap<String, String>,
}

impl Morphism {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn identity(g: &TypedGraph) -> Self {
        Morphism {
            nodes: g.node_ids().map(|i| (i.clone(), i.clone())).collect(),
            edges: g.edge_ids().map(|i| (i.clone(), i.clone())).collect(),
        }
    }

    pub fn with_node(mut self, from: impl Into<String>, to: impl Into<String>) -> Self {
        self.nodes.insert(from.into(), to.into());
        self
    }

    pub fn with_edge(mut self, from: impl Into<String>, to: impl Into<String>) -> Self {
        self.edges.insert(from.into(), to.into());
        self
    }

    pub fn node(&self, id: &str) -> Option<&String> {
        self.nodes.get(id)
    }

    pub fn edge(&self, id: &str) -> Option<&String> {
        self.edges.get(id)
    }

    /// Image of an element id, looked up as node first, then as edge.
    pub fn image(&self, id: &str) -> Option<&String> {
        self.nodes.get(id).or_else(|| self.edges.get(id))
    }

    /// `other ∘ self`: first `self`, then `other`. Elements whose image is
    /// not in the domain of `other` are dropped.
    pub fn then(&self, other: &Morphism) -> Morphism {
        Morphism {
            nodes: self
                .nodes
                .iter()
                .filter_map(|(k, v)| other.nodes.get(v).map(|w| (k.clone(), w.clone())))
                .collect(),
            edges: self
                .edges
                .iter()
                .filter_map(|(k, v)| other.edges.get(v).map(|w| (k.clone(), w.clone())))
                .collect(),
        }
    }

    /// Restriction to the elements of `g`.
    pub fn restrict_to(&self, g: &TypedGraph) -> Morphism {
        Morphism {
            nodes: g
                .node_ids()
                .filter_map(|i| self.nodes.get(i).map(|v| (i.clone(), v.clone())))
                .collect(),
            edges: g
                .edge_ids()
                .filter_map(|i| self.edges.get(i).map(|v| (i.clone(), v.clone())))
                .collect(),
        }
    }

    /// Inverse relation; only meaningful for injective maps.
    pub fn inverse(&self) -> Morphism {
        Morphism {
            nodes: self.nodes.iter().map(|(k, v)| (v.clone(), k.clone())).collect(),
            edges: self.edges.iter().map(|(k, v)| (v.clone(), k.clone())).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let nodes: BTreeSet<_> = self.nodes.values().collect();
        let edges: BTreeSet<_> = self.edges.values().collect();
        nodes.len() == self.nodes.len() && edges.len() == self.edges.len()
    }

    pub fn node_image(&self) -> BTreeSet<&String> {
        self.nodes.values().collect()
    }

    pub fn edge_image(&self) -> BTreeSet<&String> {
        self.edges.values().collect()
    }

    /// Whether `self` and `other` agree wherever both are defined and `self`
    /// is defined on every element `other` is.
    pub fn extends(&self, other: &Morphism) -> bool {
        other.nodes.iter().all(|(k, v)| self.nodes.get(k) == Some(v))
            && other.edges.iter().all(|(k, v)| self.edges.get(k) == Some(v))
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.edges.is_empty()
    }
}

/// Checks that `f: src → dst` is a total, structure- and type-preserving
/// morphism, and injective when `require_injective` is set.
pub fn check_morphism(f: &Morphism, src: &TypedGraph, dst: &TypedGraph, require_injective: bool) -> Vec<Diagnostic> {
    use DiagnosticKind::*;
    let mut out = Vec::new();
    for (id, n) in src.nodes() {
        match f.node(id).map(|t| (t, dst.node(t))) {
            None => out.push(Diagnostic::new(NotTotal, id, "node is not mapped")),
            Some((t, None)) => out.push(Diagnostic::new(
                NotTotal,
                id,
                format!("image `{t}` is not a node of the target"),
            )),
            Some((t, Some(m))) if m.ty != n.ty => out.push(Diagnostic::new(
                TypeMismatch,
                id,
                format!("type `{}` mapped to `{t}` of type `{}`", n.ty, m.ty),
            )),
            _ => {}
        }
    }
    for (id, e) in src.edges() {
        let Some(t) = f.edge(id) else {
            out.push(Diagnostic::new(NotTotal, id, "edge is not mapped"));
            continue;
        };
        let Some(te) = dst.edge(t) else {
            out.push(Diagnostic::new(
                NotTotal,
                id,
                format!("image `{t}` is not an edge of the target"),
            ));
            continue;
        };
        if te.ty != e.ty {
            out.push(Diagnostic::new(
                TypeMismatch,
                id,
                format!("type `{}` mapped to `{t}` of type `{}`", e.ty, te.ty),
            ));
        }
        if f.node(&e.src) != Some(&te.src) || f.node(&e.tgt) != Some(&te.tgt) {
            out.push(Diagnostic::new(
                NonCommuting,
                id,
                format!("endpoints of `{id}` are not mapped to the endpoints of `{t}`"),
            ));
        }
    }
    for k in f.nodes.keys() {
        if !src.has_node(k) {
            out.push(Diagnostic::new(NotTotal, k, "mapped node is not in the source"));
        }
    }
    for k in f.edges.keys() {
        if !src.has_edge(k) {
            out.push(Diagnostic::new(NotTotal, k, "mapped edge is not in the source"));
        }
    }
    if require_injective {
        let mut seen = BTreeMap::new();
        for (k, v) in f.nodes.iter().chain(f.edges.iter()) {
            if let Some(prev) = seen.insert(v, k) {
                out.push(Diagnostic::new(
                    NotInjective,
                    k,
                    format!("`{prev}` and `{k}` both map to `{v}`"),
                ));
            }
        }
    }
    out
}
