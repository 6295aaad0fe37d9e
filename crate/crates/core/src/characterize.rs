//! Deciding whether a simple marked graph can be reduced to a single
//! negative `m` using the rules of a subset `S` of `{gnr, sgpr}`.
//!
//! [`check_success`] evaluates closed-form conditions and, when they hold,
//! builds an ordering certificate: the vertices in removal order, each with
//! the rule used to remove it, ending with `m`.
//!
//! The conditions as usually stated for any `S` containing `gnr` overlook that a
//! directed edge leaving `m` can never be removed, so its target is blocked
//! forever. `check_success` adds that requirement; [`literal_theorem_check`]
//! evaluates the conditions exactly as stated, for comparison.
//!
//! The graph `2 b e 2` is the smallest witness: all vertices negative, no
//! undirected edges, an acyclic directed part, yet `gnr:2` is blocked by
//! the edge `m -> 2`.
//!
//! Conditions used throughout:
//!
//! * parity: for every vertex, its undirected degree is even iff it is
//!   negative;
//! * augmented graph: the directed edges plus every undirected edge turned
//!   into an edge from child to parent of a rooted spanning forest.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::digraph;
use crate::graph_rules::{
    apply_graph_reduction, applicable_graph_rules, apply_graph_rule, is_graph_success, GraphRuleInstance,
    GraphRuleKind,
};
use crate::marked_graph::SimpleMarkedGraph;
use crate::strings::{Identity, Sign};

/// Default largest vertex count accepted by [`enumerate_successful_orderings`].
pub const DEFAULT_ENUMERATION_CAP: usize = 9;

/// A subset of `{Gnr, sGpr}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleSubset {
    pub gnr: bool,
    pub sgpr: bool,
}

impl RuleSubset {
    pub const NONE: RuleSubset = RuleSubset { gnr: false, sgpr: false };
    pub const GNR: RuleSubset = RuleSubset { gnr: true, sgpr: false };
    pub const SGPR: RuleSubset = RuleSubset { gnr: false, sgpr: true };
    pub const BOTH: RuleSubset = RuleSubset { gnr: true, sgpr: true };
    pub const ALL: [RuleSubset; 4] = [RuleSubset::NONE, RuleSubset::GNR, RuleSubset::SGPR, RuleSubset::BOTH];

    pub fn allows(self, kind: GraphRuleKind) -> bool {
        match kind {
            GraphRuleKind::Gnr => self.gnr,
            GraphRuleKind::Sgpr => self.sgpr,
        }
    }
}

impl fmt::Display for RuleSubset {
    /// `{}`, `{gnr}`, `{sgpr}` or `{gnr,sgpr}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.gnr, self.sgpr) {
            (false, false) => f.write_str("{}"),
            (true, false) => f.write_str("{gnr}"),
            (false, true) => f.write_str("{sgpr}"),
            (true, true) => f.write_str("{gnr,sgpr}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSubsetParseError(pub alloc::string::String);

impl fmt::Display for RuleSubsetParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}` is not a graph rule kind (expected gnr or sgpr)", self.0)
    }
}

impl core::error::Error for RuleSubsetParseError {}

impl FromStr for RuleSubset {
    type Err = RuleSubsetParseError;

    /// Comma separated kinds; `none` or an empty string give the empty set.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut subset = RuleSubset::NONE;
        for token in s.trim().trim_matches(['{', '}']).split(',').map(str::trim) {
            match token.to_ascii_lowercase().as_str() {
                "" | "none" => {}
                "gnr" => subset.gnr = true,
                "sgpr" => subset.sgpr = true,
                _ => return Err(RuleSubsetParseError(token.into())),
            }
        }
        Ok(subset)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Gnr,
    Sgpr,
}

impl From<Role> for GraphRuleKind {
    fn from(role: Role) -> Self {
        match role {
            Role::Gnr => GraphRuleKind::Gnr,
            Role::Sgpr => GraphRuleKind::Sgpr,
        }
    }
}

/// Vertices in removal order, ending with `m`, and the rule removing each.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderingCertificate {
    pub ordering: Vec<Identity>,
    pub roles: BTreeMap<u32, Role>,
}

impl OrderingCertificate {
    /// The certificate as a rule sequence in execution order. Vertices
    /// without a role are skipped.
    pub fn rules(&self) -> Vec<GraphRuleInstance> {
        self.ordering
            .iter()
            .filter_map(|v| v.pointer())
            .filter_map(|p| {
                self.roles.get(&p).map(|&role| GraphRuleInstance { kind: role.into(), vertex: p })
            })
            .collect()
    }

    fn from_rules(rules: &[GraphRuleInstance]) -> OrderingCertificate {
        let mut ordering: Vec<Identity> = rules.iter().map(|r| r.identity()).collect();
        ordering.push(Identity::M);
        let roles = rules
            .iter()
            .map(|r| {
                let role = match r.kind {
                    GraphRuleKind::Gnr => Role::Gnr,
                    GraphRuleKind::Sgpr => Role::Sgpr,
                };
                (r.vertex, role)
            })
            .collect();
        OrderingCertificate { ordering, roles }
    }
}

impl fmt::Display for OrderingCertificate {
    /// `(4:gnr, 6:sgpr, m)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.ordering.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
            if let Some(role) = v.pointer().and_then(|p| self.roles.get(&p)) {
                write!(f, ":{}", GraphRuleKind::from(*role))?;
            }
        }
        f.write_str(")")
    }
}

/// The first closed-form condition a graph fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FailedCondition {
    NotATree,
    NotAForest,
    Parity,
    Cycle,
    MOutgoing,
    PositiveVertex,
    UndirectedEdgePresent,
    /// With no rules at all, the graph is not already the lone negative `m`.
    VerticesRemain,
}

impl FailedCondition {
    pub fn tag(self) -> &'static str {
        match self {
            FailedCondition::NotATree => "not-a-tree",
            FailedCondition::NotAForest => "not-a-forest",
            FailedCondition::Parity => "parity",
            FailedCondition::Cycle => "cycle",
            FailedCondition::MOutgoing => "m-outgoing",
            FailedCondition::PositiveVertex => "positive-vertex",
            FailedCondition::UndirectedEdgePresent => "undirected-edge-present",
            FailedCondition::VerticesRemain => "vertices-remain",
        }
    }
}

impl fmt::Display for FailedCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `successful` holds exactly when `certificate` is present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccessVerdict {
    pub successful: bool,
    pub certificate: Option<OrderingCertificate>,
    pub failed_condition: Option<FailedCondition>,
}

impl SuccessVerdict {
    fn success(certificate: OrderingCertificate) -> SuccessVerdict {
        SuccessVerdict { successful: true, certificate: Some(certificate), failed_condition: None }
    }

    fn failure(condition: FailedCondition) -> SuccessVerdict {
        SuccessVerdict { successful: false, certificate: None, failed_condition: Some(condition) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateError {
    NotAPermutation,
    DoesNotEndWithM,
    MissingRole(u32),
    UnknownRole(u32),
}

impl fmt::Display for CertificateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateError::NotAPermutation => f.write_str("ordering is not a permutation of the vertices"),
            CertificateError::DoesNotEndWithM => f.write_str("ordering must end with m"),
            CertificateError::MissingRole(p) => write!(f, "vertex {p} has no role"),
            CertificateError::UnknownRole(p) => write!(f, "role given for {p}, which is not in the ordering"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharacterizeError {
    /// Success is only defined for graphs containing `m`.
    MissingM,
    EnumerationCap { vertices: usize, cap: usize },
    UndirectedEdgesPresent,
    Certificate(CertificateError),
}

impl fmt::Display for CharacterizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacterizeError::MissingM => f.write_str("graph has no vertex m, success is undefined"),
            CharacterizeError::EnumerationCap { vertices, cap } => {
                write!(f, "{vertices} vertices exceed the enumeration cap of {cap}")
            }
            CharacterizeError::UndirectedEdgesPresent => f.write_str("graph has undirected edges"),
            CharacterizeError::Certificate(e) => write!(f, "malformed certificate: {e}"),
        }
    }
}

impl core::error::Error for CharacterizeError {}

fn require_m(g: &SimpleMarkedGraph) -> Result<(), CharacterizeError> {
    if g.has_m() {
        Ok(())
    } else {
        Err(CharacterizeError::MissingM)
    }
}

/// Number of connected components of the undirected part, or `None` if it
/// has a cycle.
fn forest_components(g: &SimpleMarkedGraph) -> Option<usize> {
    let index: BTreeMap<Identity, usize> = g.vertices().enumerate().map(|(i, (v, _))| (v, i)).collect();
    let mut parent: Vec<usize> = (0..index.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = index.len();
    for (a, b) in g.undirected_edges() {
        let (ra, rb) = (find(&mut parent, index[a]), find(&mut parent, index[b]));
        if ra == rb {
            return None;
        }
        parent[ra] = rb;
        components -= 1;
    }
    Some(components)
}

fn parity_holds(g: &SimpleMarkedGraph) -> bool {
    g.vertices()
        .all(|(v, sign)| (g.undirected_degree(v).is_multiple_of(2)) == (sign == Sign::Negative))
}

fn m_has_outgoing(g: &SimpleMarkedGraph) -> bool {
    g.outgoing(Identity::M).next().is_some()
}

/// Directed edges plus tree edges oriented towards `root` in its component.
fn augmented_edges(g: &SimpleMarkedGraph, root: Identity) -> BTreeSet<(Identity, Identity)> {
    let mut edges = g.directed_edges().clone();
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for w in g.undirected_neighbors(v) {
            if seen.insert(w) {
                edges.insert((w, v));
                queue.push_back(w);
            }
        }
    }
    edges
}

/// Repeatedly removes the smallest vertex with undirected degree at most one
/// (restricted by `subset`) and no incoming directed edge. `m` takes part
/// only when `remove_m` is set, and then only with degree zero.
///
/// Signs are not consulted; callers check parity first, which makes the
/// sign right at every removal. Returns the removal order with roles, or
/// `None` if the process gets stuck.
fn peel(g: &SimpleMarkedGraph, subset: RuleSubset, remove_m: bool) -> Option<Vec<(Identity, Role)>> {
    let mut rest = g.clone();
    let mut order = Vec::new();
    loop {
        let remaining_pointers = rest.vertices().any(|(v, _)| !v.is_m());
        if !remaining_pointers && (!remove_m || !rest.has_m()) {
            return Some(order);
        }
        let next = rest.vertices().map(|(v, _)| v).find_map(|v| {
            if rest.incoming(v).next().is_some() {
                return None;
            }
            let degree = rest.undirected_degree(v);
            if v.is_m() {
                return (remove_m && degree == 0).then_some((v, Role::Gnr));
            }
            match degree {
                0 if subset.gnr => Some((v, Role::Gnr)),
                1 if subset.sgpr => Some((v, Role::Sgpr)),
                _ => None,
            }
        })?;
        rest.remove_vertex(next.0);
        order.push(next);
    }
}

fn certificate_from_peel(order: &[(Identity, Role)]) -> OrderingCertificate {
    let mut ordering: Vec<Identity> = order.iter().map(|&(v, _)| v).collect();
    ordering.push(Identity::M);
    let roles = order.iter().filter_map(|&(v, role)| v.pointer().map(|p| (p, role))).collect();
    OrderingCertificate { ordering, roles }
}

fn check_gnr_only(g: &SimpleMarkedGraph) -> SuccessVerdict {
    if g.vertices().any(|(_, s)| s == Sign::Positive) {
        return SuccessVerdict::failure(FailedCondition::PositiveVertex);
    }
    if !g.undirected_edges().is_empty() {
        return SuccessVerdict::failure(FailedCondition::UndirectedEdgePresent);
    }
    if !digraph::is_acyclic(&g.vertex_set(), g.directed_edges()) {
        return SuccessVerdict::failure(FailedCondition::Cycle);
    }
    if m_has_outgoing(g) {
        return SuccessVerdict::failure(FailedCondition::MOutgoing);
    }
    let mut pointers = g.vertex_set();
    pointers.remove(&Identity::M);
    let inner: BTreeSet<_> = g.directed_edges().iter().copied().filter(|&(_, b)| !b.is_m()).collect();
    let mut ordering = digraph::topological_order(&pointers, &inner).expect("subgraph of an acyclic graph");
    let roles = ordering.iter().filter_map(|v| v.pointer()).map(|p| (p, Role::Gnr)).collect();
    ordering.push(Identity::M);
    SuccessVerdict::success(OrderingCertificate { ordering, roles })
}

fn check_sgpr_only(g: &SimpleMarkedGraph) -> SuccessVerdict {
    if forest_components(g) != Some(1) {
        return SuccessVerdict::failure(FailedCondition::NotATree);
    }
    if !parity_holds(g) {
        return SuccessVerdict::failure(FailedCondition::Parity);
    }
    let augmented = augmented_edges(g, Identity::M);
    // Every vertex reaches m through tree edges, so m comes last.
    let Some(ordering) = digraph::topological_order(&g.vertex_set(), &augmented) else {
        return SuccessVerdict::failure(FailedCondition::Cycle);
    };
    debug_assert_eq!(ordering.last(), Some(&Identity::M));
    let roles = ordering.iter().filter_map(|v| v.pointer()).map(|p| (p, Role::Sgpr)).collect();
    SuccessVerdict::success(OrderingCertificate { ordering, roles })
}

fn check_both(g: &SimpleMarkedGraph) -> SuccessVerdict {
    if forest_components(g).is_none() {
        return SuccessVerdict::failure(FailedCondition::NotAForest);
    }
    if !parity_holds(g) {
        return SuccessVerdict::failure(FailedCondition::Parity);
    }
    if m_has_outgoing(g) {
        return SuccessVerdict::failure(FailedCondition::MOutgoing);
    }
    // Peeling succeeds iff some choice of roots, with m a root, gives an
    // acyclic augmented graph in which m is a sink.
    match peel(g, RuleSubset::BOTH, false) {
        Some(order) => SuccessVerdict::success(certificate_from_peel(&order)),
        None => SuccessVerdict::failure(FailedCondition::Cycle),
    }
}

/// Decides success in `subset`, with a certificate when successful.
pub fn check_success(g: &SimpleMarkedGraph, subset: RuleSubset) -> Result<SuccessVerdict, CharacterizeError> {
    require_m(g)?;
    Ok(match (subset.gnr, subset.sgpr) {
        (false, false) => {
            if is_graph_success(g) {
                SuccessVerdict::success(OrderingCertificate { ordering: alloc::vec![Identity::M], roles: BTreeMap::new() })
            } else if g.vertex_count() == 1 {
                SuccessVerdict::failure(FailedCondition::PositiveVertex)
            } else {
                SuccessVerdict::failure(FailedCondition::VerticesRemain)
            }
        }
        (true, false) => check_gnr_only(g),
        (false, true) => check_sgpr_only(g),
        (true, true) => check_both(g),
    })
}

/// The closed-form conditions as usually stated, without the
/// requirement that `m` has no outgoing directed edge.
pub fn literal_theorem_check(g: &SimpleMarkedGraph, subset: RuleSubset) -> Result<bool, CharacterizeError> {
    require_m(g)?;
    Ok(match (subset.gnr, subset.sgpr) {
        (false, false) => is_graph_success(g),
        (true, false) => {
            g.vertices().all(|(_, s)| s == Sign::Negative)
                && g.undirected_edges().is_empty()
                && digraph::is_acyclic(&g.vertex_set(), g.directed_edges())
        }
        (false, true) => {
            forest_components(g) == Some(1)
                && parity_holds(g)
                && digraph::is_acyclic(&g.vertex_set(), &augmented_edges(g, Identity::M))
        }
        (true, true) => forest_components(g).is_some() && parity_holds(g) && peel(g, RuleSubset::BOTH, true).is_some(),
    })
}

fn check_certificate_shape(g: &SimpleMarkedGraph, cert: &OrderingCertificate) -> Result<(), CertificateError> {
    let listed: BTreeSet<Identity> = cert.ordering.iter().copied().collect();
    if listed.len() != cert.ordering.len() || listed != g.vertex_set() {
        return Err(CertificateError::NotAPermutation);
    }
    if cert.ordering.last() != Some(&Identity::M) {
        return Err(CertificateError::DoesNotEndWithM);
    }
    for p in cert.ordering.iter().filter_map(|v| v.pointer()) {
        if !cert.roles.contains_key(&p) {
            return Err(CertificateError::MissingRole(p));
        }
    }
    if let Some(&p) = cert.roles.keys().find(|&&p| !listed.contains(&Identity::Pointer(p))) {
        return Err(CertificateError::UnknownRole(p));
    }
    Ok(())
}

/// Replays the certificate through the graph rules; true iff every step
/// applies and the result is the lone negative `m`.
pub fn validate_ordering(g: &SimpleMarkedGraph, cert: &OrderingCertificate) -> Result<bool, CharacterizeError> {
    check_certificate_shape(g, cert).map_err(CharacterizeError::Certificate)?;
    Ok(apply_graph_reduction(g, &cert.rules()).is_ok_and(|trace| trace.success))
}

/// Every successful ordering using rules from `subset`, sorted.
///
/// Fails with [`CharacterizeError::EnumerationCap`] when the graph has more
/// than `cap` vertices.
pub fn enumerate_successful_orderings(
    g: &SimpleMarkedGraph,
    subset: RuleSubset,
    cap: usize,
) -> Result<Vec<OrderingCertificate>, CharacterizeError> {
    require_m(g)?;
    if g.vertex_count() > cap {
        return Err(CharacterizeError::EnumerationCap { vertices: g.vertex_count(), cap });
    }
    let mut dead = BTreeSet::new();
    let mut prefix = Vec::new();
    let mut found = Vec::new();
    extend_orderings(g, subset, &mut prefix, &mut dead, &mut found);
    found.sort();
    Ok(found)
}

/// Returns whether any successful completion exists from `g`.
fn extend_orderings(
    g: &SimpleMarkedGraph,
    subset: RuleSubset,
    prefix: &mut Vec<GraphRuleInstance>,
    dead: &mut BTreeSet<SimpleMarkedGraph>,
    found: &mut Vec<OrderingCertificate>,
) -> bool {
    if is_graph_success(g) {
        found.push(OrderingCertificate::from_rules(prefix));
        return true;
    }
    if dead.contains(g) {
        return false;
    }
    let mut any = false;
    for rule in applicable_graph_rules(g).into_iter().filter(|r| subset.allows(r.kind)) {
        let next = apply_graph_rule(g, rule).expect("rule was reported applicable");
        prefix.push(rule);
        any |= extend_orderings(&next, subset, prefix, dead, found);
        prefix.pop();
    }
    if !any {
        dead.insert(g.clone());
    }
    any
}

/// For a graph without undirected edges: whether the directed part is the
/// transitive closure of a forest whose edges point from child to parent.
pub fn corollary_shape_check(g: &SimpleMarkedGraph) -> Result<bool, CharacterizeError> {
    if !g.undirected_edges().is_empty() {
        return Err(CharacterizeError::UndirectedEdgesPresent);
    }
    let edges = g.directed_edges();
    if !digraph::is_acyclic(&g.vertex_set(), edges) {
        return Ok(false);
    }
    let reduction = digraph::transitive_reduction(edges);
    let mut out_degree: BTreeMap<Identity, usize> = BTreeMap::new();
    for &(a, _) in &reduction {
        *out_degree.entry(a).or_default() += 1;
    }
    Ok(out_degree.values().all(|&d| d <= 1) && digraph::transitive_closure(&reduction) == *edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marked_graph::fixtures::{graph, id, of};
    use alloc::string::ToString;
    use alloc::vec;

    const RUNNING_U: &str = "5 -2 4 4 -5 3 -6 2 6 b 3 -e";
    const V: &str = "-4 2 3 -2 4 -e -3 b";
    const W: &str = "b 2 3 4 2 3 4 e";

    fn order(ids: &str) -> Vec<Identity> {
        ids.split(',').map(|s| id(s.trim())).collect()
    }

    fn all_sgpr(ids: &str) -> OrderingCertificate {
        let ordering = order(ids);
        let roles = ordering.iter().filter_map(|v| v.pointer()).map(|p| (p, Role::Sgpr)).collect();
        OrderingCertificate { ordering, roles }
    }

    #[test]
    fn running_example_is_not_a_tree() {
        let verdict = check_success(&of(RUNNING_U), RuleSubset::SGPR).unwrap();
        assert!(!verdict.successful);
        assert_eq!(verdict.failed_condition, Some(FailedCondition::NotATree));
        assert!(verdict.certificate.is_none());
    }

    #[test]
    fn v_succeeds_with_sgpr_only() {
        let verdict = check_success(&of(V), RuleSubset::SGPR).unwrap();
        assert!(verdict.successful);
        assert_eq!(verdict.certificate.as_ref().unwrap().ordering, order("2,4,3,m"));
        assert_eq!(verdict.certificate, Some(all_sgpr("2,4,3,m")));
    }

    #[test]
    fn running_example_succeeds_with_both() {
        let verdict = check_success(&of(RUNNING_U), RuleSubset::BOTH).unwrap();
        let cert = verdict.certificate.unwrap();
        assert_eq!(cert.ordering, order("4,5,6,2,3,m"));
        assert_eq!(cert.roles[&4], Role::Gnr);
        assert!(cert.roles.iter().filter(|(&p, _)| p != 4).all(|(_, &r)| r == Role::Sgpr));
        assert_eq!(cert.to_string(), "(4:gnr, 5:sgpr, 6:sgpr, 2:sgpr, 3:sgpr, m)");
    }

    #[test]
    fn m_outgoing_edge_blocks_gnr() {
        let g = of("2 b e 2");
        assert_eq!(g, graph("2- m-", "m>2"));
        let verdict = check_success(&g, RuleSubset::GNR).unwrap();
        assert_eq!(verdict.failed_condition, Some(FailedCondition::MOutgoing));
        assert!(literal_theorem_check(&g, RuleSubset::GNR).unwrap());
        assert!(enumerate_successful_orderings(&g, RuleSubset::GNR, 9).unwrap().is_empty());
    }

    #[test]
    fn m_outgoing_edge_blocks_combined_rules() {
        let g = of("3 b 2 2 e 3");
        assert_eq!(g, graph("2- 3- m-", "2>m 2>3 m>3"));
        let verdict = check_success(&g, RuleSubset::BOTH).unwrap();
        assert_eq!(verdict.failed_condition, Some(FailedCondition::MOutgoing));
        assert!(literal_theorem_check(&g, RuleSubset::BOTH).unwrap());
        assert!(enumerate_successful_orderings(&g, RuleSubset::BOTH, 9).unwrap().is_empty());
    }

    #[test]
    fn literal_checks_on_worked_examples() {
        assert!(literal_theorem_check(&of(V), RuleSubset::SGPR).unwrap());
        assert!(!literal_theorem_check(&of(RUNNING_U), RuleSubset::SGPR).unwrap());
        assert!(literal_theorem_check(&of(RUNNING_U), RuleSubset::BOTH).unwrap());
        for subset in RuleSubset::ALL {
            let lone = SimpleMarkedGraph::lone_m(Sign::Negative);
            assert!(literal_theorem_check(&lone, subset).unwrap());
            assert!(check_success(&lone, subset).unwrap().successful);
        }
    }

    #[test]
    fn missing_m_is_an_error() {
        let g = graph("2-", "");
        assert_eq!(check_success(&g, RuleSubset::GNR), Err(CharacterizeError::MissingM));
        assert_eq!(literal_theorem_check(&g, RuleSubset::GNR), Err(CharacterizeError::MissingM));
        assert_eq!(enumerate_successful_orderings(&g, RuleSubset::GNR, 9), Err(CharacterizeError::MissingM));
    }

    #[test]
    fn failure_tags() {
        let tag = |g: &SimpleMarkedGraph, s| check_success(g, s).unwrap().failed_condition;
        assert_eq!(tag(&of(W), RuleSubset::BOTH), Some(FailedCondition::NotAForest));
        assert_eq!(tag(&of(W), RuleSubset::GNR), Some(FailedCondition::UndirectedEdgePresent));
        assert_eq!(tag(&of(V), RuleSubset::GNR), Some(FailedCondition::PositiveVertex));
        assert_eq!(tag(&graph("2+ m+", "2-m"), RuleSubset::SGPR), None);
        assert_eq!(tag(&graph("2- m+", "2-m"), RuleSubset::SGPR), Some(FailedCondition::Parity));
        assert_eq!(tag(&graph("2+ 3- m+", "2-3 3-m"), RuleSubset::SGPR), None);
        assert_eq!(tag(&graph("2- m-", "m>2"), RuleSubset::SGPR), Some(FailedCondition::NotATree));
        assert_eq!(tag(&graph("2- m-", "m>2"), RuleSubset::BOTH), Some(FailedCondition::MOutgoing));
        assert_eq!(tag(&graph("2- 3- 4- m-", "2>3 3>4 4>2"), RuleSubset::GNR), Some(FailedCondition::Cycle));
        assert_eq!(tag(&graph("2+ m+", "2-m"), RuleSubset::NONE), Some(FailedCondition::VerticesRemain));
        assert_eq!(tag(&SimpleMarkedGraph::lone_m(Sign::Positive), RuleSubset::NONE), Some(FailedCondition::PositiveVertex));
    }

    #[test]
    fn augmented_cycle_is_detected() {
        // Path 2 - 3 - m rooted at m, plus m > 2: the tree orients 2 > 3 > m.
        let g = graph("2+ 3- m+", "2-3 3-m m>2");
        assert_eq!(check_success(&g, RuleSubset::SGPR).unwrap().failed_condition, Some(FailedCondition::Cycle));
        assert!(!literal_theorem_check(&g, RuleSubset::SGPR).unwrap());
        assert!(enumerate_successful_orderings(&g, RuleSubset::SGPR, 9).unwrap().is_empty());
    }

    #[test]
    fn certificates_validate() {
        let v = of(V);
        assert_eq!(validate_ordering(&v, &all_sgpr("2,4,3,m")), Ok(true));
        assert_eq!(validate_ordering(&v, &all_sgpr("4,2,3,m")), Ok(false));
        let lone = SimpleMarkedGraph::lone_m(Sign::Negative);
        let just_m = OrderingCertificate { ordering: vec![Identity::M], roles: BTreeMap::new() };
        assert_eq!(validate_ordering(&lone, &just_m), Ok(true));
    }

    #[test]
    fn malformed_certificates() {
        let v = of(V);
        let err = |c: &OrderingCertificate| validate_ordering(&v, c).unwrap_err();
        assert_eq!(err(&all_sgpr("2,4,m")), CharacterizeError::Certificate(CertificateError::NotAPermutation));
        assert_eq!(err(&all_sgpr("2,4,3,3,m")), CharacterizeError::Certificate(CertificateError::NotAPermutation));
        assert_eq!(err(&all_sgpr("2,4,m,3")), CharacterizeError::Certificate(CertificateError::DoesNotEndWithM));
        let mut missing = all_sgpr("2,4,3,m");
        missing.roles.remove(&4);
        assert_eq!(err(&missing), CharacterizeError::Certificate(CertificateError::MissingRole(4)));
        let mut extra = all_sgpr("2,4,3,m");
        extra.roles.insert(7, Role::Gnr);
        assert_eq!(err(&extra), CharacterizeError::Certificate(CertificateError::UnknownRole(7)));
    }

    #[test]
    fn running_example_orderings() {
        let found = enumerate_successful_orderings(&of(RUNNING_U), RuleSubset::BOTH, DEFAULT_ENUMERATION_CAP).unwrap();
        let orderings: Vec<Vec<Identity>> = found.iter().map(|c| c.ordering.clone()).collect();
        let mut expected = vec![order("6,4,5,2,3,m"), order("4,6,5,2,3,m"), order("4,5,6,2,3,m")];
        expected.sort();
        let mut got = orderings.clone();
        got.sort();
        assert_eq!(got, expected);
        for cert in &found {
            assert_eq!(cert.roles[&4], Role::Gnr);
            assert_eq!(cert.roles.values().filter(|&&r| r == Role::Gnr).count(), 1);
            assert_eq!(validate_ordering(&of(RUNNING_U), cert), Ok(true));
        }
    }

    #[test]
    fn trivial_enumerations() {
        let lone = SimpleMarkedGraph::lone_m(Sign::Negative);
        for subset in RuleSubset::ALL {
            let found = enumerate_successful_orderings(&lone, subset, 9).unwrap();
            assert_eq!(found, vec![OrderingCertificate { ordering: vec![Identity::M], roles: BTreeMap::new() }]);
        }
        assert!(enumerate_successful_orderings(&of(W), RuleSubset::BOTH, 9).unwrap().is_empty());
        assert_eq!(
            enumerate_successful_orderings(&of(RUNNING_U), RuleSubset::BOTH, 5),
            Err(CharacterizeError::EnumerationCap { vertices: 6, cap: 5 })
        );
    }

    #[test]
    fn corollary_shapes() {
        assert_eq!(corollary_shape_check(&of("2 3 4 4 3 2").directed_projection()), Ok(true));
        assert_eq!(corollary_shape_check(&SimpleMarkedGraph::lone_m(Sign::Negative)), Ok(true));
        assert_eq!(corollary_shape_check(&graph("2- 3- 4-", "2>3 3>4 2>4")), Ok(true));
        // Reduction is a path but the closure edge is missing.
        assert_eq!(corollary_shape_check(&graph("2- 3- 4-", "2>3 3>4")), Ok(false));
        // Vertex 2 has two parents in the reduction.
        assert_eq!(corollary_shape_check(&graph("2- 3- 4-", "2>3 2>4")), Ok(false));
        assert_eq!(corollary_shape_check(&graph("2- 3- 4-", "2>3 3>4 4>2")), Ok(false));
        assert_eq!(corollary_shape_check(&of(W)), Err(CharacterizeError::UndirectedEdgesPresent));
    }

    #[test]
    fn subset_syntax() {
        assert_eq!("gnr,sgpr".parse(), Ok(RuleSubset::BOTH));
        assert_eq!("sgpr".parse(), Ok(RuleSubset::SGPR));
        assert_eq!("{gnr}".parse(), Ok(RuleSubset::GNR));
        assert_eq!("none".parse(), Ok(RuleSubset::NONE));
        assert!("gpr".parse::<RuleSubset>().is_err());
        assert_eq!(RuleSubset::BOTH.to_string(), "{gnr,sgpr}");
    }
}
