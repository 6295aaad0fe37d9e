//! String and graph rewriting systems for simple gene assembly in ciliates.
//!
//! A gene is modelled as a signed string over pointers and the markers
//! `b` and `e` ([`strings`]). The string rules ([`string_rules`]) excise
//! pointers; the same process is mirrored on marked overlap graphs
//! ([`marked_graph`], [`graph_rules`]). [`characterize`] decides graph
//! success in closed form and [`oracle`] provides exhaustive search,
//! instance enumeration and cross-checks.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod characterize;
pub mod digraph;
pub mod graph_rules;
pub mod marked_graph;
pub mod oracle;
pub mod string_rules;
pub mod strings;

pub use characterize::{check_success, OrderingCertificate, Role, RuleSubset, SuccessVerdict};
pub use graph_rules::{GraphRuleInstance, GraphRuleKind};
pub use marked_graph::{build_extended_overlap_graph, SimpleMarkedGraph};
pub use string_rules::{RuleInstance, RuleKind, RuleSet};
pub use strings::{parse_gene_string, GeneString, Identity, MdsDescriptor, Sign, Symbol};
