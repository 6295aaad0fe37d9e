use std::collections::{BTreeMap, BTreeSet};

use ciliate_core::characterize::{check_success, enumerate_successful_orderings, literal_theorem_check, RuleSubset};
use ciliate_core::digraph::is_acyclic;
use ciliate_core::graph_rules::{applicable_graph_rules, apply_graph_rule, is_graph_success, GraphRuleInstance};
use ciliate_core::marked_graph::SimpleMarkedGraph;
use ciliate_core::oracle::{
    brute_force_graph, brute_force_string, check_subsystem_equivalence, random_extended_legal_string, SearchConfig,
};
use ciliate_core::string_rules::RuleSet;
use ciliate_core::strings::{GeneString, Identity, Sign};
use proptest::prelude::*;

/// Every successful rule sequence, by plain recursion without memoization.
fn all_sequences(g: &SimpleMarkedGraph, subset: RuleSubset) -> BTreeSet<Vec<GraphRuleInstance>> {
    fn go(
        g: &SimpleMarkedGraph,
        subset: RuleSubset,
        prefix: &mut Vec<GraphRuleInstance>,
        out: &mut BTreeSet<Vec<GraphRuleInstance>>,
    ) {
        if is_graph_success(g) {
            out.insert(prefix.clone());
        }
        for rule in applicable_graph_rules(g) {
            if subset.allows(rule.kind) {
                prefix.push(rule);
                go(&apply_graph_rule(g, rule).unwrap(), subset, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(g, subset, &mut Vec::new(), &mut out);
    out
}

fn components(g: &SimpleMarkedGraph) -> Vec<BTreeSet<Identity>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (v, _) in g.vertices() {
        if seen.contains(&v) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            if comp.insert(x) {
                stack.extend(g.undirected_neighbors(x));
            }
        }
        seen.extend(comp.iter().copied());
        out.push(comp);
    }
    out
}

/// Directed edges plus every tree edge oriented child to parent for the
/// given roots, one root per component.
fn augmented(g: &SimpleMarkedGraph, roots: &[Identity]) -> BTreeSet<(Identity, Identity)> {
    let mut edges = g.directed_edges().clone();
    let mut parent: BTreeMap<Identity, Identity> = BTreeMap::new();
    for &root in roots {
        let mut stack = vec![root];
        let mut seen = BTreeSet::from([root]);
        while let Some(x) = stack.pop() {
            for y in g.undirected_neighbors(x) {
                if seen.insert(y) {
                    parent.insert(y, x);
                    stack.push(y);
                }
            }
        }
    }
    edges.extend(parent);
    edges
}

/// The combined conditions as usually stated: the undirected part is a
/// forest, parity holds, and some choice of roots with `m` a root makes the
/// augmented graph acyclic.
fn literal_combined_by_roots(g: &SimpleMarkedGraph) -> bool {
    let comps = components(g);
    let edges: usize = g.undirected_edges().len();
    if edges + comps.len() != g.vertex_count() {
        return false;
    }
    let parity = g
        .vertices()
        .all(|(v, s)| (g.undirected_degree(v).is_multiple_of(2)) == (s == Sign::Negative));
    if !parity {
        return false;
    }
    let choices: Vec<Vec<Identity>> = comps
        .iter()
        .map(|c| if c.contains(&Identity::M) { vec![Identity::M] } else { c.iter().copied().collect() })
        .collect();
    let mut index = vec![0; choices.len()];
    loop {
        let roots: Vec<Identity> = choices.iter().zip(&index).map(|(c, &i)| c[i]).collect();
        if is_acyclic(&g.vertex_set(), &augmented(g, &roots)) {
            return true;
        }
        let Some(pos) = (0..index.len()).find(|&p| index[p] + 1 < choices[p].len()) else {
            return false;
        };
        index[pos] += 1;
        for i in index.iter_mut().take(pos) {
            *i = 0;
        }
    }
}

fn arb_extended(max_k: usize) -> impl Strategy<Value = GeneString> {
    (0..=max_k, any::<u64>()).prop_map(|(k, seed)| random_extended_legal_string(k, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn corrected_check_matches_brute_force(s in arb_extended(6)) {
        let g = SimpleMarkedGraph::from_string(&s).unwrap();
        for subset in RuleSubset::ALL {
            let verdict = check_success(&g, subset).unwrap();
            let oracle = brute_force_graph(&g, subset, SearchConfig::default()).unwrap();
            prop_assert_eq!(verdict.successful, oracle.successful, "{} {}", s, subset);
            prop_assert_eq!(verdict.certificate.is_some(), verdict.successful);
            prop_assert_eq!(verdict.failed_condition.is_none(), verdict.successful);
        }
    }

    #[test]
    fn enumeration_matches_unmemoized_search(s in arb_extended(4)) {
        let g = SimpleMarkedGraph::from_string(&s).unwrap();
        for subset in RuleSubset::ALL {
            let found: BTreeSet<Vec<GraphRuleInstance>> = enumerate_successful_orderings(&g, subset, 9)
                .unwrap()
                .iter()
                .map(|c| c.rules())
                .collect();
            prop_assert_eq!(found, all_sequences(&g, subset), "{} {}", s, subset);
        }
    }

    #[test]
    fn literal_combined_matches_root_enumeration(s in arb_extended(6)) {
        let g = SimpleMarkedGraph::from_string(&s).unwrap();
        prop_assert_eq!(literal_theorem_check(&g, RuleSubset::BOTH).unwrap(), literal_combined_by_roots(&g), "{}", s);
    }

    #[test]
    fn inversion_preserves_success(s in arb_extended(4)) {
        for rules in [RuleSet::SIMPLE, RuleSet::GENERAL] {
            let a = brute_force_string(&s, rules, SearchConfig::default()).unwrap().successful;
            let b = brute_force_string(&s.invert(), rules, SearchConfig::default()).unwrap().successful;
            prop_assert_eq!(a, b, "{} {}", s, rules);
        }
    }

    #[test]
    fn string_witnesses_are_successful(s in arb_extended(5)) {
        let result = brute_force_string(&s, RuleSet::GENERAL, SearchConfig::default()).unwrap();
        prop_assert_eq!(result.witness.is_some(), result.successful);
        if let Some(w) = result.witness {
            prop_assert!(w.success);
        }
    }
}

#[test]
fn general_rules_reduce_every_small_legal_string() {
    for seed in 0..300 {
        let s = random_extended_legal_string((seed % 5) as usize, seed).remove_markers();
        assert!(brute_force_string(&s, RuleSet::GENERAL, SearchConfig::default()).unwrap().successful, "{s}");
    }
}

#[test]
fn markers_can_block_general_rules() {
    let s: GeneString = "2 -b e 2".parse().unwrap();
    assert!(!brute_force_string(&s, RuleSet::GENERAL, SearchConfig::default()).unwrap().successful);
    assert!(brute_force_string(&s.remove_markers(), RuleSet::GENERAL, SearchConfig::default()).unwrap().successful);
}

#[test]
fn marker_preserving_subsystem_on_k3_sample() {
    let sample = (0..5_000u64).map(|seed| random_extended_legal_string(3, seed));
    let report = check_subsystem_equivalence(sample).unwrap();
    assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
}
