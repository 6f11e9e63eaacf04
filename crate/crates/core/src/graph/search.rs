use std::collections::BTreeSet;

use super::{Morphism, TypedGraph};

#[derive(Debug, Clone)]
enum Slot {
    Node(String),
    Edge(String),
}

#[derive(Debug)]
struct Frame {
    candidates: Vec<String>,
    next: usize,
    assigned: bool,
}

/// Depth-first enumeration of the injective morphisms `pattern → host`
/// extending a partial map.
///
/// Unmapped pattern nodes are assigned first, then unmapped pattern edges,
/// each in ascending id order; candidates are tried in ascending host id
/// order, so the stream is deterministic.
#[derive(Debug)]
pub struct Extensions<'a> {
    pattern: &'a TypedGraph,
    host: &'a TypedGraph,
    slots: Vec<Slot>,
    frames: Vec<Frame>,
    current: Morphism,
    used_nodes: BTreeSet<String>,
    used_edges: BTreeSet<String>,
    started: bool,
    done: bool,
}

/// All injective typed morphisms `pattern ↪ host` that extend `partial`.
///
/// Yields nothing when `partial` is not itself a valid injective partial
/// morphism.
pub fn find_injective_extensions<'a>(
    pattern: &'a TypedGraph,
    host: &'a TypedGraph,
    partial: &Morphism,
) -> Extensions<'a> {
    let valid = partial_is_valid(pattern, host, partial);
    let slots = pattern
        .node_ids()
        .filter(|n| !partial.nodes.contains_key(*n))
        .map(|n| Slot::Node(n.clone()))
        .chain(
            pattern
                .edge_ids()
                .filter(|e| !partial.edges.contains_key(*e))
                .map(|e| Slot::Edge(e.clone())),
        )
        .collect();
    Extensions {
        pattern,
        host,
        slots,
        frames: Vec::new(),
        current: partial.clone(),
        used_nodes: partial.nodes.values().cloned().collect(),
        used_edges: partial.edges.values().cloned().collect(),
        started: false,
        done: !valid,
    }
}

fn partial_is_valid(pattern: &TypedGraph, host: &TypedGraph, partial: &Morphism) -> bool {
    if !partial.is_injective() {
        return false;
    }
    let nodes_ok = partial
        .nodes
        .iter()
        .all(|(p, h)| matches!((pattern.node(p), host.node(h)), (Some(a), Some(b)) if a.ty == b.ty));
    let edges_ok = partial
        .edges
        .iter()
        .all(|(p, h)| match (pattern.edge(p), host.edge(h)) {
            (Some(a), Some(b)) => {
                a.ty == b.ty && partial.node(&a.src) == Some(&b.src) && partial.node(&a.tgt) == Some(&b.tgt)
            }
            _ => false,
        });
    nodes_ok && edges_ok
}

impl<'a> Extensions<'a> {
    fn candidates(&self, slot: &Slot) -> Vec<String> {
        match slot {
            Slot::Node(n) => {
                let ty = &self.pattern.node(n).expect("pattern node").ty;
                self.host
                    .nodes()
                    .filter(|(id, hn)| &hn.ty == ty && !self.used_nodes.contains(*id))
                    .map(|(id, _)| id.clone())
                    .filter(|cand| self.edges_feasible(n, cand))
                    .collect()
            }
            Slot::Edge(e) => {
                let pe = self.pattern.edge(e).expect("pattern edge");
                let (Some(src), Some(tgt)) = (self.current.node(&pe.src), self.current.node(&pe.tgt)) else {
                    return Vec::new();
                };
                self.host
                    .edges()
                    .filter(|(id, he)| {
                        he.ty == pe.ty && &he.src == src && &he.tgt == tgt && !self.used_edges.contains(*id)
                    })
                    .map(|(id, _)| id.clone())
                    .collect()
            }
        }
    }

    /// Cheap look-ahead: every pattern edge between `n` and already mapped
    /// nodes needs at least one host edge of its type between the images.
    fn edges_feasible(&self, n: &str, cand: &str) -> bool {
        self.pattern.incident_edges(n).all(|(_, pe)| {
            let img = |x: &String| -> Option<String> {
                if x == n {
                    Some(cand.to_string())
                } else {
                    self.current.node(x).cloned()
                }
            };
            match (img(&pe.src), img(&pe.tgt)) {
                (Some(s), Some(t)) => self
                    .host
                    .edges()
                    .any(|(_, he)| he.ty == pe.ty && he.src == s && he.tgt == t),
                _ => true,
            }
        })
    }

    fn assign(&mut self, depth: usize, target: &str) {
        match &self.slots[depth] {
            Slot::Node(n) => {
                self.current.nodes.insert(n.clone(), target.to_string());
                self.used_nodes.insert(target.to_string());
            }
            Slot::Edge(e) => {
                self.current.edges.insert(e.clone(), target.to_string());
                self.used_edges.insert(target.to_string());
            }
        }
    }

    fn unassign(&mut self, depth: usize) {
        match &self.slots[depth] {
            Slot::Node(n) => {
                if let Some(t) = self.current.nodes.remove(n) {
                    self.used_nodes.remove(&t);
                }
            }
            Slot::Edge(e) => {
                if let Some(t) = self.current.edges.remove(e) {
                    self.used_edges.remove(&t);
                }
            }
        }
    }

    fn push_frame(&mut self) {
        let depth = self.frames.len();
        let candidates = self.candidates(&self.slots[depth].clone());
        self.frames.push(Frame {
            candidates,
            next: 0,
            assigned: false,
        });
    }
}

impl Iterator for Extensions<'_> {
    type Item = Morphism;

    fn next(&mut self) -> Option<Morphism> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.slots.is_empty() {
                self.done = true;
                return Some(self.current.clone());
            }
            self.push_frame();
        }
        loop {
            let depth = self.frames.len().checked_sub(1)?;
            if self.frames[depth].assigned {
                self.unassign(depth);
                self.frames[depth].assigned = false;
            }
            let frame = &mut self.frames[depth];
            if frame.next >= frame.candidates.len() {
                self.frames.pop();
                if self.frames.is_empty() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            let target = frame.candidates[frame.next].clone();
            frame.next += 1;
            frame.assigned = true;
            self.assign(depth, &target);
            if depth + 1 == self.slots.len() {
                return Some(self.current.clone());
            }
            self.push_frame();
        }
    }
}

/// Isomorphism test by exhaustive bijection search.
pub fn is_isomorphic(a: &TypedGraph, b: &TypedGraph) -> bool {
    a.node_count() == b.node_count()
        && a.edge_count() == b.edge_count()
        && find_injective_extensions(a, b, &Morphism::new()).next().is_some()
}
