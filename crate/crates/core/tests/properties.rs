//! Randomised invariants of matching, strategies, audits and file formats.

mod common;

use proptest::prelude::*;

use common::RuleShape;
use effect_gt::graph::{dangling_nodes, is_pullback_square, Morphism};
use effect_gt::io::{effect_rule_from_document, GraphDocument, RuleDocument, SelectionDocument};
use effect_gt::matching::compat::{
    glues_to_applicable_match, left_extension, lhs_compatible, mediate, rhs_compatible, right_extension,
};
use effect_gt::matching::{
    find_locally_complete, find_locally_complete_with_stats, find_locally_maximal, is_compatible, is_locally_complete,
    oracle_locally_complete,
};
use effect_gt::rules::apply_rule;
use effect_gt::semantics::{apply_match, audit_effect, Strategy};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn search_agrees_with_oracle(seed in any::<u64>()) {
        let tg = common::small_type_graph();
        let (eor, host, pm) = common::random_instance(&mut common::rng(seed), &tg, RuleShape::default());
        let found = find_locally_complete(&eor, &host, &pm).unwrap();
        let oracle = oracle_locally_complete(&eor, &host, &pm).unwrap();
        prop_assert_eq!(found.is_some(), !oracle.is_empty());
        if let Some(mr) = found {
            prop_assert!(is_locally_complete(&eor, &host, &pm, &mr));
            prop_assert!(is_compatible(&eor, &pm, &mr));
        }
    }

    #[test]
    fn compatible_matches_decompose(seed in any::<u64>()) {
        let tg = common::small_type_graph();
        let (eor, host, pm) = common::random_instance(&mut common::rng(seed), &tg, RuleShape::default());
        for mr in oracle_locally_complete(&eor, &host, &pm).unwrap() {
            let e1 = left_extension(&eor, &mr);
            let e2 = right_extension(&mr);
            prop_assert!(lhs_compatible(&eor, &pm, &e1));
            prop_assert!(rhs_compatible(&eor, &pm, &e2));
            prop_assert_eq!(mediate(&e1, &e2), Some(mr.matching.clone()));
            prop_assert!(glues_to_applicable_match(&eor, &mr.induced, &host, &e1, &e2));
        }
    }

    #[test]
    fn locally_maximal_results_are_largest(seed in any::<u64>()) {
        let tg = common::small_type_graph();
        let (eor, host, pm) = common::random_instance(&mut common::rng(seed), &tg, RuleShape::default());
        let oracle = oracle_locally_complete(&eor, &host, &pm).unwrap();
        let best = oracle.iter().map(|r| r.size()).max();
        let lm = find_locally_maximal(&eor, &host, &pm).unwrap();
        prop_assert_eq!(lm.is_empty(), oracle.is_empty());
        for r in &lm {
            prop_assert_eq!(Some(r.size()), best);
            prop_assert!(oracle.contains(r));
        }
    }

    #[test]
    fn oracle_results_pass_the_audit(seed in any::<u64>()) {
        let tg = common::small_type_graph();
        let (eor, host, pm) = common::random_instance(&mut common::rng(seed), &tg, RuleShape::default());
        for mr in oracle_locally_complete(&eor, &host, &pm).unwrap() {
            let t = apply_match(&eor, &host, Strategy::LocallyComplete, mr).unwrap();
            let report = audit_effect(&t);
            prop_assert!(report.is_ok(), "{:?}", report);
        }
    }

    #[test]
    fn creation_only_rules_never_backtrack(seed in any::<u64>()) {
        let tg = common::small_type_graph();
        let shape = RuleShape { allow_potential_deletion_nodes: false, ..RuleShape::default() };
        let (eor, host, pm) = common::random_instance(&mut common::rng(seed), &tg, shape);
        let valid = pm.nac_ok
            && dangling_nodes(&eor.base.lhs, &eor.base.interface, &host, &pm.morphism).is_empty();
        prop_assume!(valid);
        let (found, stats) = find_locally_complete_with_stats(&eor, &host, &pm).unwrap();
        prop_assert!(found.is_some());
        prop_assert_eq!(stats.backtracks, 0);
        prop_assert!(!stats.used_completion);
    }

    #[test]
    fn rule_documents_round_trip(seed in any::<u64>()) {
        let tg = common::small_type_graph();
        let eor = common::random_eor(&mut common::rng(seed), &tg, RuleShape::default());
        let text = RuleDocument::from_effect_rule(&eor).encode();
        let back = effect_rule_from_document(&RuleDocument::decode(&text).unwrap(), &tg).unwrap();
        prop_assert_eq!(&back, &eor);
        prop_assert_eq!(RuleDocument::from_effect_rule(&back).encode(), text);
    }

    #[test]
    fn graph_and_selection_documents_round_trip(seed in any::<u64>()) {
        let tg = common::small_type_graph();
        let (eor, host, pm) = common::random_instance(&mut common::rng(seed), &tg, RuleShape::default());
        let text = GraphDocument::from_graph(&host).encode();
        prop_assert_eq!(GraphDocument::decode(&text).unwrap().to_graph(&tg).unwrap(), host.clone());
        if let Some(mr) = find_locally_complete(&eor, &host, &pm).unwrap() {
            let doc = SelectionDocument::from_selection(mr.selection());
            let text = serde_json::to_string(&doc).unwrap();
            let back = serde_json::from_str::<SelectionDocument>(&text).unwrap().to_selection();
            prop_assert_eq!(&back, mr.selection());
        }
    }

    #[test]
    fn dpo_squares_are_pullbacks(seed in any::<u64>()) {
        let tg = common::small_type_graph();
        let mut rng = common::rng(seed);
        let r = common::random_rule(&mut rng, &tg, 4);
        let (g, m) = common::random_host_around(&mut rng, &tg, &r.lhs, 8, 0.15);
        prop_assume!(dangling_nodes(&r.lhs, &r.interface, &g, &m).is_empty());
        let t = apply_rule(&r, &g, &m).unwrap();
        let into_host = Morphism::identity(&t.context);
        prop_assert!(is_pullback_square(&r.left_leg(), &t.interface_to_context, &m, &into_host).unwrap());
        let into_output = Morphism::identity(&t.context);
        prop_assert!(is_pullback_square(&r.right_leg(), &t.interface_to_context, &t.comatch, &into_output).unwrap());
    }
}
