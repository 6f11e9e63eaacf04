//! Seeded generators of small effect-oriented rules, plain rules and hosts.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use effect_gt::effect::EffectOrientedRule;
use effect_gt::graph::{Morphism, TypeGraph, TypedGraph};
use effect_gt::matching::PreMatch;
use effect_gt::rules::{shift_nacs, Nac, Rule};

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Two node types and three edge types, including a loop type, so that
/// random rules often compete for the same host elements.
pub fn small_type_graph() -> TypeGraph {
    TypeGraph::new("t")
        .with_node_type("A")
        .with_node_type("B")
        .with_edge_type("f", "A", "B")
        .with_edge_type("g", "B", "A")
        .with_edge_type("h", "A", "A")
}

/// Two node types and one edge type in each direction; keeps exhaustive host
/// enumeration small.
pub fn tiny_type_graph() -> TypeGraph {
    TypeGraph::new("t")
        .with_node_type("A")
        .with_node_type("B")
        .with_edge_type("f", "A", "B")
        .with_edge_type("g", "B", "A")
}

fn random_type(rng: &mut ChaCha8Rng, tg: &TypeGraph) -> String {
    let types: Vec<&String> = tg.node_types.iter().collect();
    (*types.choose(rng).unwrap()).clone()
}

/// Adds an edge `id` of a random type between nodes of `from`/`to` (both
/// subsets of `g`'s nodes); returns false if no type fits.
fn add_random_edge(
    rng: &mut ChaCha8Rng,
    tg: &TypeGraph,
    g: &mut TypedGraph,
    id: &str,
    from: &[String],
    to: &[String],
) -> bool {
    let mut options = Vec::new();
    for (name, et) in &tg.edge_types {
        for s in from {
            for t in to {
                if g.node(s).unwrap().ty == et.source && g.node(t).unwrap().ty == et.target {
                    options.push((name.clone(), s.clone(), t.clone()));
                }
            }
        }
    }
    match options.choose(rng) {
        Some((ty, s, t)) => {
            g.add_edge(id, ty.clone(), s.clone(), t.clone());
            true
        }
        None => false,
    }
}

/// Shape limits of generated effect-oriented rules.
#[derive(Debug, Clone, Copy)]
pub struct RuleShape {
    pub max_potential_nodes: usize,
    pub max_potential_edges: usize,
    pub allow_potential_deletion_nodes: bool,
    pub nac_probability: f64,
}

impl Default for RuleShape {
    fn default() -> Self {
        RuleShape {
            max_potential_nodes: 4,
            max_potential_edges: 6,
            allow_potential_deletion_nodes: true,
            nac_probability: 0.25,
        }
    }
}

/// A random effect-oriented rule over `tg`.
///
/// `K_b` has one or two nodes; the base rule may delete and create one node
/// each; potential edges attach to `K_b` or to potential nodes of their side.
pub fn random_eor(rng: &mut ChaCha8Rng, tg: &TypeGraph, shape: RuleShape) -> EffectOrientedRule {
    let mut k = TypedGraph::new(tg.name.clone());
    let k_nodes: Vec<String> = (0..rng.gen_range(1..=2)).map(|i| format!("k{i}")).collect();
    for n in &k_nodes {
        let ty = random_type(rng, tg);
        k.add_node(n.clone(), ty);
    }
    if rng.gen_bool(0.3) {
        add_random_edge(rng, tg, &mut k, "ke", &k_nodes, &k_nodes);
    }

    let mut lb = k.clone();
    let mut rb = k.clone();
    let mut del_nodes = k_nodes.clone();
    if rng.gen_bool(0.3) {
        let ty = random_type(rng, tg);
        lb.add_node("bd", ty);
        del_nodes.push("bd".into());
        let all = del_nodes.clone();
        add_random_edge(rng, tg, &mut lb, "bde", &all, &all);
    }
    let mut cre_nodes = k_nodes.clone();
    if rng.gen_bool(0.3) {
        let ty = random_type(rng, tg);
        rb.add_node("bc", ty);
        cre_nodes.push("bc".into());
        let all = cre_nodes.clone();
        add_random_edge(rng, tg, &mut rb, "bce", &all, &all);
    }

    let total_nodes = rng.gen_range(0..=shape.max_potential_nodes);
    let n_del = if shape.allow_potential_deletion_nodes {
        rng.gen_range(0..=total_nodes)
    } else {
        0
    };
    let mut lg = lb.clone();
    let mut rg = rb.clone();
    let mut pdel: Vec<String> = k_nodes.clone();
    for i in 0..n_del {
        let id = format!("pd{i}");
        lg.add_node(id.clone(), random_type(rng, tg));
        pdel.push(id);
    }
    let mut pcre: Vec<String> = cre_nodes.clone();
    for i in 0..total_nodes - n_del {
        let id = format!("pc{i}");
        rg.add_node(id.clone(), random_type(rng, tg));
        pcre.push(id);
    }
    let n_edges = rng.gen_range(0..=shape.max_potential_edges);
    for i in 0..n_edges {
        if rng.gen_bool(0.5) {
            add_random_edge(rng, tg, &mut lg, &format!("pde{i}"), &pdel, &pdel);
        } else {
            add_random_edge(rng, tg, &mut rg, &format!("pce{i}"), &pcre, &pcre);
        }
    }

    let mut base = Rule::new("r", lb.clone(), k.clone(), rb);
    if rng.gen_bool(shape.nac_probability) {
        let mut n = lb.clone();
        let ty = random_type(rng, tg);
        n.add_node("nx", ty);
        let anchors: Vec<String> = lb.node_ids().cloned().collect();
        let x = vec!["nx".to_string()];
        if rng.gen_bool(0.5) {
            add_random_edge(rng, tg, &mut n, "ne", &anchors, &x);
        } else {
            add_random_edge(rng, tg, &mut n, "ne", &x, &anchors);
        }
        base = base.with_nac(Nac::new("nac", n));
    }
    let mut maximal = Rule::new("r", lg.clone(), k, rg);
    maximal.nacs = shift_nacs(&Morphism::identity(&lb), &lb, &lg, &base.nacs);
    EffectOrientedRule::new("r", base, maximal).expect("generated rule is well formed")
}

/// A random host of at most `max_nodes` nodes containing a copy of
/// `pattern` (ids prefixed with `v`), plus the inclusion of that copy.
pub fn random_host_around(
    rng: &mut ChaCha8Rng,
    tg: &TypeGraph,
    pattern: &TypedGraph,
    max_nodes: usize,
    edge_probability: f64,
) -> (TypedGraph, Morphism) {
    let mut g = TypedGraph::new(tg.name.clone());
    let mut m = Morphism::new();
    for (id, n) in pattern.nodes() {
        let h = format!("v{id}");
        g.add_node(h.clone(), n.ty.clone());
        m.nodes.insert(id.clone(), h);
    }
    for (id, e) in pattern.edges() {
        let h = format!("v{id}");
        g.add_edge(
            h.clone(),
            e.ty.clone(),
            m.nodes[&e.src].clone(),
            m.nodes[&e.tgt].clone(),
        );
        m.edges.insert(id.clone(), h);
    }
    let target = rng.gen_range(pattern.node_count().min(max_nodes)..=max_nodes);
    let mut i = 0;
    while g.node_count() < target {
        g.add_node(format!("n{i}"), random_type(rng, tg));
        i += 1;
    }
    let nodes: Vec<(String, String)> = g.nodes().map(|(id, n)| (id.clone(), n.ty.clone())).collect();
    let mut j = 0;
    for (name, et) in &tg.edge_types {
        for (s, st) in &nodes {
            for (t, tt) in &nodes {
                if st == &et.source && tt == &et.target {
                    // Every seventh edge may get a parallel sibling.
                    while rng.gen_bool(edge_probability) {
                        g.add_edge(format!("e{j}"), name.clone(), s.clone(), t.clone());
                        j += 1;
                        if j % 7 != 0 {
                            break;
                        }
                    }
                }
            }
        }
    }
    (g, m)
}

/// A random rule instance: effect-oriented rule, host of at most 8 nodes and
/// a base pre-match (which may violate the base NACs).
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    tg: &TypeGraph,
    shape: RuleShape,
) -> (EffectOrientedRule, TypedGraph, PreMatch) {
    let eor = random_eor(rng, tg, shape);
    let p = rng.gen_range(0.05..0.35);
    let (host, m) = random_host_around(rng, tg, &eor.base.lhs, 8, p);
    let pm = PreMatch::new(&eor, &host, m).expect("copy of L_b is a pre-match");
    (eor, host, pm)
}

/// A random plain rule with `L`, `R` of at most `max_nodes` nodes.
pub fn random_rule(rng: &mut ChaCha8Rng, tg: &TypeGraph, max_nodes: usize) -> Rule {
    let mut k = TypedGraph::new(tg.name.clone());
    let nk = rng.gen_range(0..=max_nodes.min(2));
    let k_nodes: Vec<String> = (0..nk).map(|i| format!("k{i}")).collect();
    for n in &k_nodes {
        let ty = random_type(rng, tg);
        k.add_node(n.clone(), ty);
    }
    if nk > 0 && rng.gen_bool(0.4) {
        add_random_edge(rng, tg, &mut k, "ke", &k_nodes, &k_nodes);
    }
    let mut l = k.clone();
    let mut l_nodes = k_nodes.clone();
    for i in 0..rng.gen_range(0..=max_nodes - nk) {
        let id = format!("l{i}");
        l.add_node(id.clone(), random_type(rng, tg));
        l_nodes.push(id);
    }
    for i in 0..rng.gen_range(0..=3) {
        add_random_edge(rng, tg, &mut l, &format!("le{i}"), &l_nodes, &l_nodes);
    }
    let mut r = k.clone();
    let mut r_nodes = k_nodes.clone();
    for i in 0..rng.gen_range(0..=max_nodes - nk) {
        let id = format!("r{i}");
        r.add_node(id.clone(), random_type(rng, tg));
        r_nodes.push(id);
    }
    for i in 0..rng.gen_range(0..=3) {
        add_random_edge(rng, tg, &mut r, &format!("re{i}"), &r_nodes, &r_nodes);
    }
    Rule::new("p", l, k, r)
}
