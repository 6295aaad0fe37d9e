//! The graph negative rule `gnr` and the simple graph positive rule `sgpr`.
//!
//! Both rules remove a non-`m` vertex with no incoming directed edge.
//! `gnr` needs a negative vertex without undirected edges; `sgpr` needs a
//! positive vertex with exactly one undirected edge and flips the sign of
//! the vertex at its other end. Outgoing directed edges never block a rule.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::marked_graph::SimpleMarkedGraph;
use crate::strings::{Identity, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphRuleKind {
    Gnr,
    Sgpr,
}

impl GraphRuleKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphRuleKind::Gnr => "gnr",
            GraphRuleKind::Sgpr => "sgpr",
        }
    }
}

impl fmt::Display for GraphRuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A graph rule for a pointer vertex. The vertex is never `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphRuleInstance {
    pub kind: GraphRuleKind,
    pub vertex: u32,
}

impl GraphRuleInstance {
    pub fn gnr(vertex: u32) -> GraphRuleInstance {
        GraphRuleInstance { kind: GraphRuleKind::Gnr, vertex }
    }

    pub fn sgpr(vertex: u32) -> GraphRuleInstance {
        GraphRuleInstance { kind: GraphRuleKind::Sgpr, vertex }
    }

    pub fn identity(self) -> Identity {
        Identity::Pointer(self.vertex)
    }
}

impl fmt::Display for GraphRuleInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self.vertex)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphRuleParseError {
    Malformed(alloc::string::String),
    /// Graph rules never apply to `m`.
    VertexIsM,
}

impl fmt::Display for GraphRuleParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphRuleParseError::Malformed(s) => write!(f, "`{s}` is not of the form gnr:4 or sgpr:6"),
            GraphRuleParseError::VertexIsM => f.write_str("graph rules cannot remove m"),
        }
    }
}

impl core::error::Error for GraphRuleParseError {}

impl FromStr for GraphRuleInstance {
    type Err = GraphRuleParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let malformed = || GraphRuleParseError::Malformed(s.into());
        let (name, vertex) = s.split_once(':').ok_or_else(malformed)?;
        let kind = match name {
            "gnr" => GraphRuleKind::Gnr,
            "sgpr" => GraphRuleKind::Sgpr,
            _ => return Err(malformed()),
        };
        match vertex.trim().parse::<Identity>().map_err(|_| malformed())? {
            Identity::Pointer(vertex) => Ok(GraphRuleInstance { kind, vertex }),
            Identity::M => Err(GraphRuleParseError::VertexIsM),
        }
    }
}

pub fn parse_graph_rule_list(text: &str) -> Result<Vec<GraphRuleInstance>, GraphRuleParseError> {
    text.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
}

/// The applicability condition a graph rule fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    MissingVertex,
    WrongSign(Sign),
    UndirectedDegree(usize),
    IncomingDirectedEdge(Identity),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingVertex => f.write_str("vertex is not in the graph"),
            Violation::WrongSign(s) => write!(f, "vertex has sign {s}"),
            Violation::UndirectedDegree(d) => write!(f, "vertex has {d} undirected edge(s)"),
            Violation::IncomingDirectedEdge(from) => write!(f, "directed edge from {from} into the vertex"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphRuleError {
    pub rule: GraphRuleInstance,
    pub violation: Violation,
}

impl fmt::Display for GraphRuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is not applicable: {}", self.rule, self.violation)
    }
}

impl core::error::Error for GraphRuleError {}

pub fn check_graph_rule(g: &SimpleMarkedGraph, rule: GraphRuleInstance) -> Result<(), GraphRuleError> {
    let fail = |violation| Err(GraphRuleError { rule, violation });
    let v = rule.identity();
    let Some(sign) = g.sign(v) else {
        return fail(Violation::MissingVertex);
    };
    let (wanted_sign, wanted_degree) = match rule.kind {
        GraphRuleKind::Gnr => (Sign::Negative, 0),
        GraphRuleKind::Sgpr => (Sign::Positive, 1),
    };
    let degree = g.undirected_degree(v);
    if degree != wanted_degree {
        return fail(Violation::UndirectedDegree(degree));
    }
    if sign != wanted_sign {
        return fail(Violation::WrongSign(sign));
    }
    if let Some(from) = g.incoming(v).next() {
        return fail(Violation::IncomingDirectedEdge(from));
    }
    Ok(())
}

pub fn is_graph_rule_applicable(g: &SimpleMarkedGraph, rule: GraphRuleInstance) -> bool {
    check_graph_rule(g, rule).is_ok()
}

/// All applicable rules, ordered by vertex and then kind.
pub fn applicable_graph_rules(g: &SimpleMarkedGraph) -> Vec<GraphRuleInstance> {
    g.vertices()
        .filter_map(|(v, _)| v.pointer())
        .flat_map(|p| [GraphRuleInstance::gnr(p), GraphRuleInstance::sgpr(p)])
        .filter(|&r| is_graph_rule_applicable(g, r))
        .collect()
}

pub fn apply_graph_rule(g: &SimpleMarkedGraph, rule: GraphRuleInstance) -> Result<SimpleMarkedGraph, GraphRuleError> {
    check_graph_rule(g, rule)?;
    let v = rule.identity();
    let mut out = g.clone();
    if rule.kind == GraphRuleKind::Sgpr {
        let neighbor = g.undirected_neighbors(v).next().expect("sgpr checked a single undirected edge");
        out.flip_sign(neighbor);
    }
    out.remove_vertex(v);
    Ok(out)
}

/// Why a graph is or is not the successful end state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphSuccess {
    Success,
    NoM,
    PositiveM,
    /// Vertices other than `m` remain.
    ExtraVertices(usize),
}

pub fn graph_success_status(g: &SimpleMarkedGraph) -> GraphSuccess {
    match g.sign(Identity::M) {
        None => GraphSuccess::NoM,
        Some(_) if g.vertex_count() > 1 => GraphSuccess::ExtraVertices(g.vertex_count() - 1),
        Some(Sign::Positive) => GraphSuccess::PositiveM,
        Some(Sign::Negative) => GraphSuccess::Success,
    }
}

/// Exactly one vertex, `m`, and it is negative.
pub fn is_graph_success(g: &SimpleMarkedGraph) -> bool {
    graph_success_status(g) == GraphSuccess::Success
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphReductionStep {
    pub rule: GraphRuleInstance,
    pub result: SimpleMarkedGraph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphReductionTrace {
    pub initial: SimpleMarkedGraph,
    pub steps: Vec<GraphReductionStep>,
    pub success: bool,
}

impl GraphReductionTrace {
    pub fn final_graph(&self) -> &SimpleMarkedGraph {
        self.steps.last().map_or(&self.initial, |s| &s.result)
    }

    pub fn rules(&self) -> impl Iterator<Item = GraphRuleInstance> + '_ {
        self.steps.iter().map(|s| s.rule)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphReductionFailure {
    pub partial: GraphReductionTrace,
    pub step: usize,
    pub error: GraphRuleError,
}

impl fmt::Display for GraphReductionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step + 1, self.error)
    }
}

impl core::error::Error for GraphReductionFailure {}

/// Applies `rules` in order, first element first.
#[allow(clippy::result_large_err)]
pub fn apply_graph_reduction(
    g: &SimpleMarkedGraph,
    rules: &[GraphRuleInstance],
) -> Result<GraphReductionTrace, GraphReductionFailure> {
    let mut trace = GraphReductionTrace { initial: g.clone(), steps: Vec::new(), success: false };
    for (step, &rule) in rules.iter().enumerate() {
        match apply_graph_rule(trace.final_graph(), rule) {
            Ok(result) => trace.steps.push(GraphReductionStep { rule, result }),
            Err(error) => {
                trace.success = is_graph_success(trace.final_graph());
                return Err(GraphReductionFailure { partial: trace, step, error });
            }
        }
    }
    trace.success = is_graph_success(trace.final_graph());
    Ok(trace)
}
