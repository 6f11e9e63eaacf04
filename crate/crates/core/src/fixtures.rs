//! The banking example: type graph, two host graphs and the two
//! effect-oriented rules used throughout the tests and the CLI docs.

use crate::effect::EffectOrientedRule;
use crate::graph::{TypeGraph, TypedGraph};
use crate::io::{self, RuleDocument};

/// Bank, Client, Account and Portfolio with ownership and association edges.
pub fn bank_type_graph() -> TypeGraph {
    TypeGraph::new("bank")
        .with_node_type("Bank")
        .with_node_type("Client")
        .with_node_type("Account")
        .with_node_type("Portfolio")
        .with_edge_type("owns_client", "Bank", "Client")
        .with_edge_type("owns_account", "Bank", "Account")
        .with_edge_type("owns_portfolio", "Bank", "Portfolio")
        .with_edge_type("accounts", "Client", "Account")
        .with_edge_type("portfolios", "Client", "Portfolio")
        .with_edge_type("portfolio", "Account", "Portfolio")
}

/// One bank, clients `c1` and `c2`, accounts `a1`, `a2` of `c1`, and
/// portfolio `p` attached to `a2`.
pub fn g_bank() -> TypedGraph {
    TypedGraph::new("bank")
        .with_node("b", "Bank")
        .with_node("c1", "Client")
        .with_node("c2", "Client")
        .with_node("a1", "Account")
        .with_node("a2", "Account")
        .with_node("p", "Portfolio")
        .with_edge("owns_client_b_c1", "owns_client", "b", "c1")
        .with_edge("owns_client_b_c2", "owns_client", "b", "c2")
        .with_edge("owns_account_b_a1", "owns_account", "b", "a1")
        .with_edge("owns_account_b_a2", "owns_account", "b", "a2")
        .with_edge("owns_portfolio_b_p", "owns_portfolio", "b", "p")
        .with_edge("accounts_c1_a1", "accounts", "c1", "a1")
        .with_edge("accounts_c1_a2", "accounts", "c1", "a2")
        .with_edge("portfolio_a2_p", "portfolio", "a2", "p")
}

/// Clients `c1`, `c9`; account `a3` shared by both, `a4` owned by `c1` only.
pub fn g_shared() -> TypedGraph {
    TypedGraph::new("bank")
        .with_node("c1", "Client")
        .with_node("c9", "Client")
        .with_node("a3", "Account")
        .with_node("a4", "Account")
        .with_edge("accounts_c1_a3", "accounts", "c1", "a3")
        .with_edge("accounts_c9_a3", "accounts", "c9", "a3")
        .with_edge("accounts_c1_a4", "accounts", "c1", "a4")
}

/// Ensure that a client has an account with a portfolio: every creation is
/// potential.
pub fn ensure_acc() -> EffectOrientedRule {
    decode_fixture(ENSURE_ACC)
}

/// Ensure that a client has no account and portfolio: every deletion is
/// potential.
pub fn ensure_no_acc() -> EffectOrientedRule {
    decode_fixture(ENSURE_NO_ACC)
}

pub const BANK_TYPE_GRAPH: &str = include_str!("../fixtures/bank.types.json");
pub const G_BANK: &str = include_str!("../fixtures/g_bank.graph.json");
pub const G_SHARED: &str = include_str!("../fixtures/g_shared.graph.json");
pub const ENSURE_ACC: &str = include_str!("../fixtures/ensure_acc.rule.json");
pub const ENSURE_NO_ACC: &str = include_str!("../fixtures/ensure_no_acc.rule.json");

fn decode_fixture(text: &str) -> EffectOrientedRule {
    let doc = RuleDocument::decode(text).expect("embedded fixture parses");
    io::effect_rule_from_document(&doc, &bank_type_graph()).expect("embedded fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{GraphDocument, TypeGraphDocument};

    #[test]
    fn embedded_graph_files_match_builders() {
        assert_eq!(
            TypeGraphDocument::from_type_graph(&bank_type_graph()).encode(),
            BANK_TYPE_GRAPH
        );
        assert_eq!(GraphDocument::from_graph(&g_bank()).encode(), G_BANK);
        assert_eq!(GraphDocument::from_graph(&g_shared()).encode(), G_SHARED);
    }

    #[test]
    fn embedded_rule_files_are_canonical() {
        for text in [ENSURE_ACC, ENSURE_NO_ACC] {
            let doc = RuleDocument::decode(text).unwrap();
            assert_eq!(doc.encode(), text);
        }
    }
}
