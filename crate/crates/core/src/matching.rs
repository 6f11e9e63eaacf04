//! Matching effect-oriented rules: base pre-matches, compatible matches of
//! induced rules, the locally complete match search, brute-force oracles
//! and the maximal strategies.

pub mod compat;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::effect::{
    build_induced_rule, enumerate_selections, Connectedness, EffectOrientedRule, InducedRule, InducedSelection,
};
use crate::error::{Error, Result};
use crate::graph::{check_morphism, dangling_nodes, find_injective_extensions, ElementSet, Morphism, TypedGraph};
use crate::rules::satisfies_nacs;

/// An injective morphism `L_b ↪ G`, with whether it satisfies the base NACs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PreMatch {
    pub morphism: Morphism,
    pub nac_ok: bool,
}

impl PreMatch {
    /// Checks injectivity and totality on `L_b` and evaluates the base NACs.
    pub fn new(eor: &EffectOrientedRule, host: &TypedGraph, morphism: Morphism) -> Result<Self> {
        let diags = check_morphism(&morphism, &eor.base.lhs, host, true);
        if !diags.is_empty() {
            return Err(Error::InvalidPreMatch(
                diags.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
            ));
        }
        let nac_ok = satisfies_nacs(&morphism, &eor.base.nacs, host);
        Ok(PreMatch { morphism, nac_ok })
    }

    fn check(&self, eor: &EffectOrientedRule, host: &TypedGraph) -> Result<()> {
        let fresh = PreMatch::new(eor, host, self.morphism.clone())?;
        if fresh.nac_ok != self.nac_ok {
            return Err(Error::InvalidPreMatch("recorded NAC status is stale".into()));
        }
        Ok(())
    }
}

/// All NAC-satisfying injective morphisms `L_b ↪ host`, in search order.
pub fn find_base_prematches<'a>(
    eor: &'a EffectOrientedRule,
    host: &'a TypedGraph,
) -> impl Iterator<Item = PreMatch> + 'a {
    find_injective_extensions(&eor.base.lhs, host, &Morphism::new())
        .filter(|m| satisfies_nacs(m, &eor.base.nacs, host))
        .map(|morphism| PreMatch { morphism, nac_ok: true })
}

/// A match `m_c: L_c ↪ G` of an induced rule, compatible with a pre-match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchResult {
    pub induced: InducedRule,
    pub matching: Morphism,
    pub base_prematch: PreMatch,
}

impl MatchResult {
    pub fn size(&self) -> usize {
        self.induced.size
    }

    pub fn selection(&self) -> &InducedSelection {
        &self.induced.selection
    }
}

impl PartialOrd for MatchResult {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by selection, then by match.
impl Ord for MatchResult {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.induced.selection, &self.matching, &self.base_prematch).cmp(&(
            &other.induced.selection,
            &other.matching,
            &other.base_prematch,
        ))
    }
}

/// Whether `mr.matching` restricts to `pm` on `L_b`.
pub fn is_compatible(eor: &EffectOrientedRule, pm: &PreMatch, mr: &MatchResult) -> bool {
    mr.matching.restrict_to(&eor.base.lhs) == pm.morphism && mr.matching.extends(&pm.morphism)
}

/// Instrumentation of a locally complete match search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Candidate assignments withdrawn after failing.
    pub backtracks: usize,
    /// Whether the completing search ran after the plain one found nothing.
    pub used_completion: bool,
}

/// A locally complete match compatible with `pm`, or `None` if there is none.
pub fn find_locally_complete(
    eor: &EffectOrientedRule,
    host: &TypedGraph,
    pm: &PreMatch,
) -> Result<Option<MatchResult>> {
    find_locally_complete_with_stats(eor, host, pm).map(|(r, _)| r)
}

/// [`find_locally_complete`] with search statistics.
///
/// Unbound nodes are the potential deletion nodes, then the potential
/// creation nodes, each by ascending id. Each is mapped to the first free
/// host node of its type that leads to a solution, and skipped only when no
/// free node of its type is left. The dangling condition is checked once all
/// nodes are resolved. If this finds nothing, a second search also allows
/// skipping a node whose candidates all failed, accepting a leaf only if
/// every skipped node has no free candidate left there.
pub fn find_locally_complete_with_stats(
    eor: &EffectOrientedRule,
    host: &TypedGraph,
    pm: &PreMatch,
) -> Result<(Option<MatchResult>, SearchStats)> {
    pm.check(eor, host)?;
    let mut search = Search::new(eor, host, pm);
    if !pm.nac_ok {
        return Ok((None, search.stats));
    }
    let mut mapping = BTreeMap::new();
    let mut found = if search.unbound.is_empty() {
        search.leaf_ok(&mapping).then(BTreeMap::new)
    } else {
        search.plain(&mut mapping, 0)
    };
    if found.is_none() && !search.unbound.is_empty() {
        search.stats.used_completion = true;
        let mut skipped = Vec::new();
        found = search.completing(&mut mapping, &mut skipped, 0);
    }
    let stats = search.stats;
    match found {
        None => Ok((None, stats)),
        Some(nodes) => {
            let (sel, m) = assemble(eor, host, pm, &nodes);
            let induced = build_induced_rule(eor, &sel)?;
            let matching = m.restrict_to(&induced.rule.lhs);
            Ok((
                Some(MatchResult {
                    induced,
                    matching,
                    base_prematch: pm.clone(),
                }),
                stats,
            ))
        }
    }
}

struct Search<'a> {
    eor: &'a EffectOrientedRule,
    host: &'a TypedGraph,
    pm: &'a PreMatch,
    /// `(rule node, type)` in search order.
    unbound: Vec<(String, String)>,
    stats: SearchStats,
}

impl<'a> Search<'a> {
    fn new(eor: &'a EffectOrientedRule, host: &'a TypedGraph, pm: &'a PreMatch) -> Self {
        let node_type = |g: &TypedGraph, n: &String| g.node(n).map(|x| x.ty.clone()).unwrap_or_default();
        let (pd, pc) = (eor.potential_deletions(), eor.potential_creations());
        let unbound = pd
            .nodes
            .iter()
            .map(|n| (n.clone(), node_type(&eor.maximal.lhs, n)))
            .chain(pc.nodes.iter().map(|n| (n.clone(), node_type(&eor.maximal.rhs, n))))
            .collect();
        Search {
            eor,
            host,
            pm,
            unbound,
            stats: SearchStats::default(),
        }
    }

    /// Host nodes of type `ty` not yet in the image of the pre-match or of
    /// `mapping`, ascending.
    fn candidates(&self, ty: &str, mapping: &BTreeMap<String, String>) -> Vec<String> {
        let used: BTreeSet<&String> = self.pm.morphism.nodes.values().chain(mapping.values()).collect();
        self.host
            .nodes()
            .filter(|(id, n)| n.ty == ty && !used.contains(id))
            .map(|(id, _)| id.clone())
            .collect()
    }

    fn leaf_ok(&self, mapping: &BTreeMap<String, String>) -> bool {
        let (sel, m) = assemble(self.eor, self.host, self.pm, mapping);
        dangling_free(self.eor, self.host, &sel, &m)
    }

    fn plain(&mut self, mapping: &mut BTreeMap<String, String>, position: usize) -> Option<BTreeMap<String, String>> {
        let (n, ty) = self.unbound[position].clone();
        let last = position == self.unbound.len() - 1;
        let candidates = self.candidates(&ty, mapping);
        if candidates.is_empty() {
            return if last {
                self.leaf_ok(mapping).then(|| mapping.clone())
            } else {
                self.plain(mapping, position + 1)
            };
        }
        for x in candidates {
            mapping.insert(n.clone(), x);
            if last {
                if self.leaf_ok(mapping) {
                    return Some(mapping.clone());
                }
            } else if let Some(found) = self.plain(mapping, position + 1) {
                return Some(found);
            }
            mapping.remove(&n);
            self.stats.backtracks += 1;
        }
        None
    }

    fn completing(
        &mut self,
        mapping: &mut BTreeMap<String, String>,
        skipped: &mut Vec<usize>,
        position: usize,
    ) -> Option<BTreeMap<String, String>> {
        if position == self.unbound.len() {
            let saturated = skipped
                .iter()
                .all(|&i| self.candidates(&self.unbound[i].1, mapping).is_empty());
            return (saturated && self.leaf_ok(mapping)).then(|| mapping.clone());
        }
        let (n, ty) = self.unbound[position].clone();
        for x in self.candidates(&ty, mapping) {
            mapping.insert(n.clone(), x);
            if let Some(found) = self.completing(mapping, skipped, position + 1) {
                return Some(found);
            }
            mapping.remove(&n);
            self.stats.backtracks += 1;
        }
        skipped.push(position);
        let found = self.completing(mapping, skipped, position + 1);
        skipped.pop();
        found
    }
}

/// Turns a node assignment of potential nodes into a selection and a match
/// of its induced rule's left-hand side.
///
/// Potential deletion edges whose endpoints are in `L_b` or mapped are
/// matched first, then potential creation edges whose endpoints are in `K_b`
/// or mapped; each takes the lowest unused host edge of its type between
/// the endpoint images, or stays unselected if there is none.
fn assemble(
    eor: &EffectOrientedRule,
    host: &TypedGraph,
    pm: &PreMatch,
    mapping: &BTreeMap<String, String>,
) -> (InducedSelection, Morphism) {
    let (pd, pc) = (eor.potential_deletions(), eor.potential_creations());
    let mut m = pm.morphism.clone();
    m.nodes.extend(mapping.iter().map(|(k, v)| (k.clone(), v.clone())));
    let mut used: BTreeSet<String> = m.edges.values().cloned().collect();
    let mut delete = ElementSet::new();
    let mut preserve = ElementSet::new();
    for n in mapping.keys() {
        if pd.nodes.contains(n) {
            delete.nodes.insert(n.clone());
        } else {
            preserve.nodes.insert(n.clone());
        }
    }
    let mut claim = |graph: &TypedGraph, id: &String, m: &mut Morphism| -> bool {
        let e = graph.edge(id).expect("potential edge");
        let (Some(s), Some(t)) = (m.node(&e.src).cloned(), m.node(&e.tgt).cloned()) else {
            return false;
        };
        let hit = host
            .edges()
            .find(|(hid, he)| he.ty == e.ty && he.src == s && he.tgt == t && !used.contains(*hid))
            .map(|(hid, _)| hid.clone());
        match hit {
            Some(h) => {
                used.insert(h.clone());
                m.edges.insert(id.clone(), h);
                true
            }
            None => false,
        }
    };
    let in_left = |n: &String| eor.base.lhs.has_node(n) || delete.nodes.contains(n);
    let mut deleted_edges = Vec::new();
    for id in &pd.edges {
        let e = eor.maximal.lhs.edge(id).expect("potential deletion edge");
        if in_left(&e.src) && in_left(&e.tgt) && claim(&eor.maximal.lhs, id, &mut m) {
            deleted_edges.push(id.clone());
        }
    }
    delete.edges.extend(deleted_edges);
    let in_kept = |n: &String| eor.interface().has_node(n) || preserve.nodes.contains(n);
    let mut kept_edges = Vec::new();
    for id in &pc.edges {
        let e = eor.maximal.rhs.edge(id).expect("potential creation edge");
        if in_kept(&e.src) && in_kept(&e.tgt) && claim(&eor.maximal.rhs, id, &mut m) {
            kept_edges.push(id.clone());
        }
    }
    preserve.edges.extend(kept_edges);
    (InducedSelection::new(delete, preserve), m)
}

/// Whether every host node deleted by the induced rule of `sel` at `m` has
/// all its incident edges deleted too.
fn dangling_free(eor: &EffectOrientedRule, host: &TypedGraph, sel: &InducedSelection, m: &Morphism) -> bool {
    let base_del = eor.base.deletions();
    let deleted_edges: BTreeSet<&String> = base_del
        .edges
        .iter()
        .chain(&sel.delete.edges)
        .filter_map(|e| m.edge(e))
        .collect();
    base_del
        .nodes
        .iter()
        .chain(&sel.delete.nodes)
        .filter_map(|n| m.node(n))
        .all(|h| host.incident_edges(h).all(|(id, _)| deleted_edges.contains(id)))
}

/// Whether no potential element outside `mr`'s selection can be added to it
/// (keeping the selection closed) with an injective extension of
/// `mr.matching`.
///
/// A node can be added iff some host node of its type is outside the image;
/// an edge iff its endpoints are in the respective part of the induced rule
/// and some host edge of its type between their images is outside the image.
pub fn is_locally_complete(eor: &EffectOrientedRule, host: &TypedGraph, pm: &PreMatch, mr: &MatchResult) -> bool {
    if !is_compatible(eor, pm, mr) {
        return false;
    }
    let m = &mr.matching;
    let sel = mr.selection();
    let node_img = m.node_image();
    let edge_img = m.edge_image();
    let (pd, pc) = (eor.potential_deletions(), eor.potential_creations());
    let free_node = |ty: &str| host.nodes().any(|(id, n)| n.ty == ty && !node_img.contains(id));
    let free_edge = |e: &crate::graph::Edge| match (m.node(&e.src), m.node(&e.tgt)) {
        (Some(s), Some(t)) => host
            .edges()
            .any(|(id, he)| he.ty == e.ty && &he.src == s && &he.tgt == t && !edge_img.contains(id)),
        _ => false,
    };
    for (part, potential, selected, base_nodes) in [
        (&eor.maximal.lhs, &pd, &sel.delete, &eor.base.lhs),
        (&eor.maximal.rhs, &pc, &sel.preserve, eor.interface()),
    ] {
        for n in potential.nodes.difference(&selected.nodes) {
            if free_node(&part.node(n).expect("potential node").ty) {
                return false;
            }
        }
        let closed = |n: &String| base_nodes.has_node(n) || selected.nodes.contains(n);
        for id in potential.edges.difference(&selected.edges) {
            let e = part.edge(id).expect("potential edge");
            if closed(&e.src) && closed(&e.tgt) && free_edge(e) {
                return false;
            }
        }
    }
    true
}

/// Every compatible match of every induced rule at `pm` that satisfies the
/// dangling condition and the shifted NACs and is locally complete, sorted
/// canonically. Exhaustive.
pub fn oracle_locally_complete(eor: &EffectOrientedRule, host: &TypedGraph, pm: &PreMatch) -> Result<Vec<MatchResult>> {
    pm.check(eor, host)?;
    let mut out = Vec::new();
    for sel in enumerate_selections(eor, Connectedness::None) {
        let induced = build_induced_rule(eor, &sel)?;
        let r = &induced.rule;
        for m in find_injective_extensions(&r.lhs, host, &pm.morphism) {
            if !dangling_nodes(&r.lhs, &r.interface, host, &m).is_empty() || !satisfies_nacs(&m, &r.nacs, host) {
                continue;
            }
            let mr = MatchResult {
                induced: induced.clone(),
                matching: m,
                base_prematch: pm.clone(),
            };
            if is_locally_complete(eor, host, pm, &mr) {
                out.push(mr);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn keep_largest(results: Vec<MatchResult>) -> Vec<MatchResult> {
    let best = results.iter().map(MatchResult::size).max();
    results.into_iter().filter(|r| Some(r.size()) == best).collect()
}

/// The locally complete results at `pm` of largest induced-rule size.
pub fn find_locally_maximal(eor: &EffectOrientedRule, host: &TypedGraph, pm: &PreMatch) -> Result<Vec<MatchResult>> {
    Ok(keep_largest(oracle_locally_complete(eor, host, pm)?))
}

/// The locally complete results over all pre-matches of largest
/// induced-rule size.
pub fn find_globally_maximal(eor: &EffectOrientedRule, host: &TypedGraph) -> Result<Vec<MatchResult>> {
    let mut all = Vec::new();
    for pm in find_base_prematches(eor, host) {
        all.extend(oracle_locally_complete(eor, host, &pm)?);
    }
    all.sort();
    Ok(keep_largest(all))
}
