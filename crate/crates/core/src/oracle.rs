//! Instance generation and brute-force search, the ground truth against
//! which the rules and the characterization are checked.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characterize::{
    check_success, enumerate_successful_orderings, literal_theorem_check, validate_ordering, CharacterizeError,
    OrderingCertificate, Role, RuleSubset,
};
use crate::graph_rules::{
    apply_graph_rule, applicable_graph_rules, is_graph_rule_applicable, is_graph_success, GraphReductionStep,
    GraphReductionTrace, GraphRuleInstance, GraphRuleKind,
};
use crate::marked_graph::SimpleMarkedGraph;
use crate::string_rules::{
    apply_rule, applicable_instances, is_terminal_success, ReductionStep, ReductionTrace, RuleError, RuleInstance,
    RuleKind, RuleSet,
};
use crate::strings::{GeneString, Identity, Marker, StringError, Symbol};

/// Largest `k` accepted by the exhaustive generators.
pub const EXHAUSTIVE_CAP: usize = 3;

/// Default number of distinct states a search may visit.
pub const DEFAULT_STATE_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    CapExceeded { k: usize, cap: usize },
    /// The search visited more states than allowed; no verdict.
    Inconclusive { states_explored: usize },
    MissingM,
    String(StringError),
    Rule(RuleError),
    Characterize(CharacterizeError),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::CapExceeded { k, cap } => write!(f, "k = {k} exceeds the exhaustive cap {cap}"),
            OracleError::Inconclusive { states_explored } => {
                write!(f, "inconclusive: state cap reached after {states_explored} states")
            }
            OracleError::MissingM => f.write_str("graph has no vertex m, success is undefined"),
            OracleError::String(e) => write!(f, "{e}"),
            OracleError::Rule(e) => write!(f, "{e}"),
            OracleError::Characterize(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for OracleError {}

impl From<StringError> for OracleError {
    fn from(e: StringError) -> Self {
        OracleError::String(e)
    }
}

impl From<RuleError> for OracleError {
    fn from(e: RuleError) -> Self {
        OracleError::Rule(e)
    }
}

impl From<CharacterizeError> for OracleError {
    fn from(e: CharacterizeError) -> Self {
        OracleError::Characterize(e)
    }
}

// Instances

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BarMode {
    AllCombinations,
    UnbarredOnly,
    /// One random bar assignment per skeleton.
    Random(u64),
}

/// Strings over the pointers `2..=k+1`, each twice, optionally with one `b`
/// and one `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceFamily {
    pub k: usize,
    pub include_markers: bool,
    pub bar_mode: BarMode,
}

impl InstanceFamily {
    pub fn extended(k: usize) -> InstanceFamily {
        InstanceFamily { k, include_markers: true, bar_mode: BarMode::AllCombinations }
    }

    /// Every string of the family, each exactly once.
    pub fn strings(&self) -> Result<FamilyIter, OracleError> {
        if self.k > EXHAUSTIVE_CAP {
            return Err(OracleError::CapExceeded { k: self.k, cap: EXHAUSTIVE_CAP });
        }
        let skeleton = skeleton_tokens(self.k, self.include_markers);
        let rng = match self.bar_mode {
            BarMode::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Ok(FamilyIter { mode: self.bar_mode, rng, skeleton: Some(skeleton), mask: 0 })
    }
}

/// Token codes: `0` is `b`, `1` is `e`, anything else a pointer.
fn skeleton_tokens(k: usize, include_markers: bool) -> Vec<u32> {
    let mut tokens: Vec<u32> = if include_markers { alloc::vec![0, 1] } else { Vec::new() };
    for p in 2..(k as u32 + 2) {
        tokens.extend([p, p]);
    }
    tokens
}

fn render(tokens: &[u32], mask: u64) -> GeneString {
    let symbols = tokens
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let barred = mask >> i & 1 == 1;
            match t {
                0 => Symbol::marker(Marker::B, barred),
                1 => Symbol::marker(Marker::E, barred),
                p => Symbol::pointer(p, barred),
            }
        })
        .collect();
    GeneString::new(symbols)
}

/// Lexicographic successor; false once the last permutation is passed.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("v[i] qualifies");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub struct FamilyIter {
    mode: BarMode,
    rng: Option<ChaCha8Rng>,
    skeleton: Option<Vec<u32>>,
    mask: u64,
}

impl Iterator for FamilyIter {
    type Item = GeneString;

    fn next(&mut self) -> Option<GeneString> {
        let skeleton = self.skeleton.as_mut()?;
        let n = skeleton.len();
        let (mask, last) = match self.mode {
            BarMode::AllCombinations => (self.mask, self.mask + 1 == 1 << n),
            BarMode::UnbarredOnly => (0, true),
            BarMode::Random(_) => {
                let bits: u64 = self.rng.as_mut().expect("random mode has an rng").random();
                (if n == 0 { 0 } else { bits & (u64::MAX >> (64 - n)) }, true)
            }
        };
        let out = render(skeleton, mask);
        if last {
            self.mask = 0;
            if !next_permutation(skeleton) {
                self.skeleton = None;
            }
        } else {
            self.mask += 1;
        }
        Some(out)
    }
}

/// All extended legal strings over the pointers `2..=k+1`, in every order
/// and with every bar assignment.
pub fn enumerate_extended_legal_strings(k: usize) -> Result<FamilyIter, OracleError> {
    InstanceFamily::extended(k).strings()
}

/// Number of strings [`enumerate_extended_legal_strings`] yields.
pub fn extended_family_size(k: usize) -> u64 {
    let n = 2 * k as u64 + 2;
    let factorial: u64 = (1..=n).product();
    factorial / (1 << k) * (1 << n)
}

/// A uniformly random extended legal string over `2..=k+1`.
pub fn random_extended_legal_string(k: usize, seed: u64) -> GeneString {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tokens = skeleton_tokens(k, true);
    tokens.shuffle(&mut rng);
    let symbols = tokens
        .into_iter()
        .map(|t| {
            let barred = rng.random::<bool>();
            match t {
                0 => Symbol::marker(Marker::B, barred),
                1 => Symbol::marker(Marker::E, barred),
                p => Symbol::pointer(p, barred),
            }
        })
        .collect();
    GeneString::new(symbols)
}

// Search

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExplorationOrder {
    /// Rules in the order the applicability functions list them.
    Canonical,
    Reversed,
    Shuffled(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub state_cap: usize,
    pub order: ExplorationOrder,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { state_cap: DEFAULT_STATE_CAP, order: ExplorationOrder::Canonical }
    }
}

/// `witness` is present iff `successful`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult<W> {
    pub successful: bool,
    pub witness: Option<W>,
    pub states_explored: usize,
}

struct Search<S, R> {
    visited: BTreeSet<S>,
    cap: usize,
    rng: Option<ChaCha8Rng>,
    order: ExplorationOrder,
    path: Vec<(R, S)>,
}

impl<S: Ord + Clone, R: Copy> Search<S, R> {
    fn new(config: SearchConfig) -> Self {
        let rng = match config.order {
            ExplorationOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Search { visited: BTreeSet::new(), cap: config.state_cap, rng, order: config.order, path: Vec::new() }
    }

    /// Every rewrite strictly shrinks the state, so the state space is
    /// acyclic and a visited state is either on the current path or dead.
    fn run<M, G>(&mut self, state: &S, moves: &M, goal: &G) -> Result<bool, OracleError>
    where
        M: Fn(&S) -> Result<Vec<(R, S)>, OracleError>,
        G: Fn(&S) -> bool,
    {
        if goal(state) {
            return Ok(true);
        }
        if !self.visited.insert(state.clone()) {
            return Ok(false);
        }
        if self.visited.len() > self.cap {
            return Err(OracleError::Inconclusive { states_explored: self.visited.len() });
        }
        let mut next = moves(state)?;
        match self.order {
            ExplorationOrder::Canonical => {}
            ExplorationOrder::Reversed => next.reverse(),
            ExplorationOrder::Shuffled(_) => next.shuffle(self.rng.as_mut().expect("shuffled order has an rng")),
        }
        for (rule, result) in next {
            self.path.push((rule, result.clone()));
            if self.run(&result, moves, goal)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

/// Whether some sequence of rules from `rules` reduces `s` to a successful
/// end string.
pub fn brute_force_string(
    s: &GeneString,
    rules: RuleSet,
    config: SearchConfig,
) -> Result<SearchResult<ReductionTrace>, OracleError> {
    s.ensure_valid()?;
    let moves = |x: &GeneString| -> Result<Vec<(RuleInstance, GeneString)>, OracleError> {
        applicable_instances(x, rules)?
            .into_iter()
            .map(|r| Ok((r, apply_rule(x, r)?)))
            .collect()
    };
    let mut search = Search::new(config);
    let successful = search.run(s, &moves, &is_terminal_success)?;
    let witness = successful.then(|| ReductionTrace {
        initial: s.clone(),
        steps: search.path.drain(..).map(|(rule, result)| ReductionStep { rule, result }).collect(),
        success: true,
    });
    Ok(SearchResult { successful, witness, states_explored: search.visited.len() })
}

/// Whether some sequence of rules from `subset` reduces `g` to the lone
/// negative `m`.
pub fn brute_force_graph(
    g: &SimpleMarkedGraph,
    subset: RuleSubset,
    config: SearchConfig,
) -> Result<SearchResult<GraphReductionTrace>, OracleError> {
    if !g.has_m() {
        return Err(OracleError::MissingM);
    }
    let moves = |x: &SimpleMarkedGraph| -> Result<Vec<(GraphRuleInstance, SimpleMarkedGraph)>, OracleError> {
        Ok(applicable_graph_rules(x)
            .into_iter()
            .filter(|r| subset.allows(r.kind))
            .map(|r| (r, apply_graph_rule(x, r).expect("rule was reported applicable")))
            .collect())
    };
    let mut search = Search::new(config);
    let successful = search.run(g, &moves, &is_graph_success)?;
    let witness = successful.then(|| GraphReductionTrace {
        initial: g.clone(),
        steps: search.path.drain(..).map(|(rule, result)| GraphReductionStep { rule, result }).collect(),
        success: true,
    });
    Ok(SearchResult { successful, witness, states_explored: search.visited.len() })
}

// Simulation

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SimulatedRule {
    /// `snr` against `gnr`.
    Negative,
    /// `sspr` against `sgpr`.
    Positive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimulationProblem {
    ApplicabilityMismatch { string_side: bool, graph_side: bool },
    GraphMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationViolation {
    pub string: GeneString,
    pub pointer: u32,
    pub rule: SimulatedRule,
    pub problem: SimulationProblem,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimulationReport {
    pub strings: usize,
    /// Pointer and rule pairs examined.
    pub checks: usize,
    /// Checks where the rule applied on both sides.
    pub commuting: usize,
    pub violations: Vec<SimulationViolation>,
}

impl SimulationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: SimulationReport) {
        self.strings += other.strings;
        self.checks += other.checks;
        self.commuting += other.commuting;
        self.violations.extend(other.violations);
    }
}

/// For every pointer `p` of `s`: `snr` applies to `p` iff `gnr_p` applies to
/// the graph of `s`, and then both ways round the square give the same
/// graph; likewise for `sspr` and `sgpr`.
pub fn verify_simulation(s: &GeneString) -> Result<SimulationReport, OracleError> {
    let g = SimpleMarkedGraph::from_string(s)?;
    let mut report = SimulationReport { strings: 1, ..SimulationReport::default() };
    let pairs = [
        (SimulatedRule::Negative, RuleKind::Snr, GraphRuleKind::Gnr),
        (SimulatedRule::Positive, RuleKind::Sspr, GraphRuleKind::Sgpr),
    ];
    for (tag, string_kind, graph_kind) in pairs {
        let instances = applicable_instances(s, RuleSet::empty().with(string_kind))?;
        for pointer in s.domain().into_iter().filter_map(Identity::pointer) {
            report.checks += 1;
            let string_rule = instances.iter().find(|r| r.p().value == pointer);
            let graph_rule = GraphRuleInstance { kind: graph_kind, vertex: pointer };
            let graph_side = is_graph_rule_applicable(&g, graph_rule);
            let problem = match string_rule {
                Some(&rule) if graph_side => {
                    let via_string = SimpleMarkedGraph::from_string(&apply_rule(s, rule)?)?;
                    let via_graph = apply_graph_rule(&g, graph_rule).expect("checked applicable");
                    report.commuting += 1;
                    (via_string != via_graph).then_some(SimulationProblem::GraphMismatch)
                }
                None if !graph_side => None,
                _ => Some(SimulationProblem::ApplicabilityMismatch { string_side: string_rule.is_some(), graph_side }),
            };
            if let Some(problem) = problem {
                report.violations.push(SimulationViolation { string: s.clone(), pointer, rule: tag, problem });
            }
        }
    }
    Ok(report)
}

// Characterization cross-check

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Checker {
    Corrected,
    Literal,
    /// Whether enumeration finds at least one ordering.
    Enumeration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub string: GeneString,
    pub subset: RuleSubset,
    pub checker: Checker,
    pub claimed: bool,
    pub oracle: bool,
    pub m_outgoing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateSource {
    CheckSuccess,
    Enumeration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateProblem {
    DoesNotReplay,
    RoleOutsideSubset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateFailure {
    pub string: GeneString,
    pub subset: RuleSubset,
    pub source: CertificateSource,
    pub certificate: OrderingCertificate,
    pub problem: CertificateProblem,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossValidationReport {
    pub strings: usize,
    /// String and subset pairs examined.
    pub checks: usize,
    pub oracle_successes: usize,
    pub corrected_agreements: usize,
    pub literal_agreements: usize,
    pub certificates_replayed: usize,
    pub disagreements: Vec<Disagreement>,
    pub certificate_failures: Vec<CertificateFailure>,
}

impl CrossValidationReport {
    pub fn of(&self, checker: Checker) -> impl Iterator<Item = &Disagreement> {
        self.disagreements.iter().filter(move |d| d.checker == checker)
    }

    /// The corrected check, enumeration and every certificate agree with
    /// the oracle.
    pub fn corrected_passed(&self) -> bool {
        self.of(Checker::Corrected).next().is_none()
            && self.of(Checker::Enumeration).next().is_none()
            && self.certificate_failures.is_empty()
    }

    pub fn merge(&mut self, other: CrossValidationReport) {
        self.strings += other.strings;
        self.checks += other.checks;
        self.oracle_successes += other.oracle_successes;
        self.corrected_agreements += other.corrected_agreements;
        self.literal_agreements += other.literal_agreements;
        self.certificates_replayed += other.certificates_replayed;
        self.disagreements.extend(other.disagreements);
        self.certificate_failures.extend(other.certificate_failures);
    }
}

fn roles_within(cert: &OrderingCertificate, subset: RuleSubset) -> bool {
    cert.roles.values().all(|&role| match role {
        Role::Gnr => subset.gnr,
        Role::Sgpr => subset.sgpr,
    })
}

/// Compares the corrected and literal checks and ordering enumeration with
/// brute force on the graph of every string, for all four subsets, and
/// replays every certificate produced.
pub fn cross_validate_strings<I>(strings: I) -> Result<CrossValidationReport, OracleError>
where
    I: IntoIterator<Item = GeneString>,
{
    let mut report = CrossValidationReport::default();
    for s in strings {
        report.strings += 1;
        let g = SimpleMarkedGraph::from_string(&s)?;
        let m_outgoing = g.outgoing(Identity::M).next().is_some();
        for subset in RuleSubset::ALL {
            report.checks += 1;
            let oracle = brute_force_graph(&g, subset, SearchConfig::default())?.successful;
            report.oracle_successes += usize::from(oracle);
            let verdict = check_success(&g, subset)?;
            let literal = literal_theorem_check(&g, subset)?;
            let orderings = enumerate_successful_orderings(&g, subset, usize::MAX)?;
            let claims = [
                (Checker::Corrected, verdict.successful),
                (Checker::Literal, literal),
                (Checker::Enumeration, !orderings.is_empty()),
            ];
            for (checker, claimed) in claims {
                if claimed == oracle {
                    match checker {
                        Checker::Corrected => report.corrected_agreements += 1,
                        Checker::Literal => report.literal_agreements += 1,
                        Checker::Enumeration => {}
                    }
                } else {
                    report.disagreements.push(Disagreement {
                        string: s.clone(),
                        subset,
                        checker,
                        claimed,
                        oracle,
                        m_outgoing,
                    });
                }
            }
            let certificates = verdict
                .certificate
                .into_iter()
                .map(|c| (CertificateSource::CheckSuccess, c))
                .chain(orderings.into_iter().map(|c| (CertificateSource::Enumeration, c)));
            for (source, certificate) in certificates {
                report.certificates_replayed += 1;
                let problem = if !validate_ordering(&g, &certificate)? {
                    Some(CertificateProblem::DoesNotReplay)
                } else if !roles_within(&certificate, subset) {
                    Some(CertificateProblem::RoleOutsideSubset)
                } else {
                    None
                };
                if let Some(problem) = problem {
                    report.certificate_failures.push(CertificateFailure {
                        string: s.clone(),
                        subset,
                        source,
                        certificate,
                        problem,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// [`cross_validate_strings`] over every extended legal string with `k`
/// pointers.
pub fn cross_validate_characterizations(k: usize) -> Result<CrossValidationReport, OracleError> {
    cross_validate_strings(enumerate_extended_legal_strings(k)?)
}

// Marker-preserving subsystem

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub strings: usize,
    pub successes: usize,
    /// Strings where the two searches disagree.
    pub mismatches: Vec<GeneString>,
}

/// Success with `snr` and `sspr` on each string against success with `gnr`
/// and `sgpr` on its graph.
pub fn check_subsystem_equivalence<I>(strings: I) -> Result<EquivalenceReport, OracleError>
where
    I: IntoIterator<Item = GeneString>,
{
    let mut report = EquivalenceReport::default();
    for s in strings {
        report.strings += 1;
        let on_string = brute_force_string(&s, RuleSet::MARKER_PRESERVING, SearchConfig::default())?.successful;
        let g = SimpleMarkedGraph::from_string(&s)?;
        let on_graph = brute_force_graph(&g, RuleSubset::BOTH, SearchConfig::default())?.successful;
        report.successes += usize::from(on_string);
        if on_string != on_graph {
            report.mismatches.push(s);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_rules::apply_graph_reduction;
    use crate::marked_graph::fixtures::of;
    use crate::string_rules::{apply_reduction, RuleSystem};
    use alloc::string::{String, ToString};

    const RUNNING_U: &str = "5 -2 4 4 -5 3 -6 2 6 b 3 -e";

    fn gs(text: &str) -> GeneString {
        text.parse().unwrap()
    }

    #[test]
    fn family_sizes() {
        assert_eq!(enumerate_extended_legal_strings(0).unwrap().count(), 8);
        assert_eq!(extended_family_size(0), 8);
        assert_eq!(extended_family_size(1), 192);
        assert_eq!(extended_family_size(2), 11520);
        assert_eq!(extended_family_size(3), 1_290_240);
        let k2: BTreeSet<GeneString> = enumerate_extended_legal_strings(2).unwrap().collect();
        assert_eq!(k2.len(), 11520);
        assert!(k2.iter().all(|s| s.is_extended_legal()));
    }

    #[test]
    fn k0_strings_are_marker_pairs() {
        let all: BTreeSet<String> = enumerate_extended_legal_strings(0).unwrap().map(|s| s.to_string()).collect();
        let expected: BTreeSet<String> =
            ["b e", "-b e", "b -e", "-b -e", "e b", "-e b", "e -b", "-e -b"].map(String::from).into();
        assert_eq!(all, expected);
    }

    #[test]
    fn over_cap_is_rejected() {
        assert!(matches!(enumerate_extended_legal_strings(4), Err(OracleError::CapExceeded { k: 4, cap: 3 })));
    }

    #[test]
    fn other_families() {
        let unbarred = InstanceFamily { k: 2, include_markers: false, bar_mode: BarMode::UnbarredOnly };
        let strings: Vec<GeneString> = unbarred.strings().unwrap().collect();
        assert_eq!(strings.len(), 6);
        assert!(strings.iter().all(|s| s.is_legal() && s.symbols().iter().all(|x| !x.barred)));
        let random = InstanceFamily { k: 1, include_markers: true, bar_mode: BarMode::Random(5) };
        let strings: BTreeSet<String> = random.strings().unwrap().map(|s| s.to_string()).collect();
        assert_eq!(strings.len(), 12);
    }

    #[test]
    fn random_strings_are_deterministic() {
        for k in 0..6 {
            let a = random_extended_legal_string(k, 42);
            assert_eq!(a, random_extended_legal_string(k, 42));
            assert!(a.is_extended_legal());
            assert_eq!(a.len(), 2 * k + 2);
        }
    }

    #[test]
    fn random_strings_cover_k1() {
        let seen: BTreeSet<GeneString> = (0..10_000).map(|seed| random_extended_legal_string(1, seed)).collect();
        let all: BTreeSet<GeneString> = enumerate_extended_legal_strings(1).unwrap().collect();
        assert_eq!(seen, all);
    }

    #[test]
    fn simple_rules_fail_on_triple_overlap() {
        let result = brute_force_string(&gs("2 3 4 -2 -3 -4"), RuleSystem::Simple.into(), SearchConfig::default()).unwrap();
        assert!(!result.successful);
        assert!(result.witness.is_none());
        assert!(result.states_explored >= 1);
    }

    #[test]
    fn running_example_succeeds_with_simple_rules() {
        let u = gs(RUNNING_U);
        let result = brute_force_string(&u, RuleSystem::Simple.into(), SearchConfig::default()).unwrap();
        let witness = result.witness.unwrap();
        let rules: Vec<RuleInstance> = witness.rules().collect();
        let replay = apply_reduction(&u, &rules).unwrap();
        assert!(replay.success);
        assert_eq!(replay, witness);
    }

    #[test]
    fn lone_m_succeeds_immediately() {
        for subset in RuleSubset::ALL {
            let result =
                brute_force_graph(&SimpleMarkedGraph::lone_m(crate::strings::Sign::Negative), subset, SearchConfig::default())
                    .unwrap();
            assert!(result.successful);
            assert!(result.witness.unwrap().steps.is_empty());
        }
    }

    #[test]
    fn graph_witness_replays() {
        let g = of(RUNNING_U);
        let result = brute_force_graph(&g, RuleSubset::BOTH, SearchConfig::default()).unwrap();
        let witness = result.witness.unwrap();
        let rules: Vec<GraphRuleInstance> = witness.rules().collect();
        assert!(apply_graph_reduction(&g, &rules).unwrap().success);
        assert!(!brute_force_graph(&g, RuleSubset::SGPR, SearchConfig::default()).unwrap().successful);
    }

    #[test]
    fn graph_search_needs_m() {
        let g = SimpleMarkedGraph::from_string(&gs("2 2")).unwrap();
        assert_eq!(brute_force_graph(&g, RuleSubset::GNR, SearchConfig::default()), Err(OracleError::MissingM));
    }

    #[test]
    fn state_cap_is_inconclusive() {
        let config = SearchConfig { state_cap: 2, order: ExplorationOrder::Canonical };
        let result = brute_force_string(&gs("2 2 3 3 4 4 5 5"), RuleSet::SIMPLE, config);
        assert!(matches!(result, Err(OracleError::Inconclusive { .. })));
    }

    #[test]
    fn exploration_order_does_not_change_verdicts() {
        let orders = [ExplorationOrder::Canonical, ExplorationOrder::Reversed, ExplorationOrder::Shuffled(9)];
        for s in enumerate_extended_legal_strings(1).unwrap().step_by(7) {
            for rules in [RuleSet::SIMPLE, RuleSet::GENERAL, RuleSet::MARKER_PRESERVING] {
                let verdicts: BTreeSet<bool> = orders
                    .iter()
                    .map(|&order| {
                        let config = SearchConfig { order, ..SearchConfig::default() };
                        brute_force_string(&s, rules, config).unwrap().successful
                    })
                    .collect();
                assert_eq!(verdicts.len(), 1, "{s} with {rules}");
            }
        }
    }

    #[test]
    fn running_example_simulates() {
        let report = verify_simulation(&gs(RUNNING_U)).unwrap();
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.commuting, 2);
        assert!(verify_simulation(&gs("b e")).unwrap().passed());
        assert_eq!(verify_simulation(&gs("b e")).unwrap().checks, 0);
    }

    #[test]
    fn simulation_on_k1() {
        let mut total = SimulationReport::default();
        for s in enumerate_extended_legal_strings(1).unwrap() {
            total.merge(verify_simulation(&s).unwrap());
        }
        assert_eq!(total.strings, 192);
        assert!(total.passed());
    }

    #[test]
    fn cross_validation_flags_the_gap() {
        let report = cross_validate_strings([gs("2 b e 2"), gs("3 b 2 2 e 3"), gs("-4 2 3 -2 4 -e -3 b")]).unwrap();
        assert!(report.corrected_passed());
        let literal: Vec<(String, RuleSubset)> =
            report.of(Checker::Literal).map(|d| (d.string.to_string(), d.subset)).collect();
        assert!(literal.contains(&("2 b e 2".to_string(), RuleSubset::GNR)));
        assert!(literal.contains(&("3 b 2 2 e 3".to_string(), RuleSubset::BOTH)));
        assert!(report.of(Checker::Literal).all(|d| d.m_outgoing && d.subset.gnr && d.claimed && !d.oracle));
    }

    #[test]
    fn subsystem_equivalence_on_k1() {
        let report = check_subsystem_equivalence(enumerate_extended_legal_strings(1).unwrap()).unwrap();
        assert_eq!(report.strings, 192);
        assert!(report.mismatches.is_empty());
        assert!(report.successes > 0);
    }
}
