//! String pointer rules: the general system (`snr`, `spr`, `sdr`) and the
//! simple system (`snr`, `sspr`, `ssdr`).
//!
//! Rule instances are named by the pointers as they are written at the
//! first matched occurrence, so `spr:-2` and `spr:2` match different
//! patterns. Reductions are applied in execution order: the first rule of a
//! slice is applied first.
//!
//! The general rules also accept extended legal strings. Markers then pass
//! through the contexts unchanged except that `spr` inverts the markers it
//! moves.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::strings::{GeneString, Identity, InvalidReason, Symbol, SymbolKind, Validity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    Snr,
    Spr,
    Sdr,
    Sspr,
    Ssdr,
}

impl RuleKind {
    pub const ALL: [RuleKind; 5] = [RuleKind::Snr, RuleKind::Spr, RuleKind::Sdr, RuleKind::Sspr, RuleKind::Ssdr];

    pub fn name(self) -> &'static str {
        match self {
            RuleKind::Snr => "snr",
            RuleKind::Spr => "spr",
            RuleKind::Sdr => "sdr",
            RuleKind::Sspr => "sspr",
            RuleKind::Ssdr => "ssdr",
        }
    }

    pub fn is_double(self) -> bool {
        matches!(self, RuleKind::Sdr | RuleKind::Ssdr)
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleKind {
    type Err = RuleParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| RuleParseError::UnknownRule(s.trim().to_string()))
    }
}

/// A subset of the five string rule kinds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleSet(u8);

impl RuleSet {
    pub const GENERAL: RuleSet = RuleSet(1 | 2 | 4);
    pub const SIMPLE: RuleSet = RuleSet(1 | 8 | 16);
    /// `snr` and `sspr`, the part of the simple system with a graph counterpart.
    pub const MARKER_PRESERVING: RuleSet = RuleSet(1 | 8);

    pub fn empty() -> RuleSet {
        RuleSet(0)
    }

    pub fn contains(self, kind: RuleKind) -> bool {
        self.0 & kind.bit() != 0
    }

    pub fn with(self, kind: RuleKind) -> RuleSet {
        RuleSet(self.0 | kind.bit())
    }

    pub fn kinds(self) -> impl Iterator<Item = RuleKind> {
        RuleKind::ALL.into_iter().filter(move |k| self.contains(*k))
    }
}

impl FromIterator<RuleKind> for RuleSet {
    fn from_iter<I: IntoIterator<Item = RuleKind>>(iter: I) -> Self {
        iter.into_iter().fold(RuleSet::empty(), RuleSet::with)
    }
}

impl From<RuleSystem> for RuleSet {
    fn from(system: RuleSystem) -> Self {
        match system {
            RuleSystem::General => RuleSet::GENERAL,
            RuleSystem::Simple => RuleSet::SIMPLE,
        }
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.kinds().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(k.name())?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleSystem {
    General,
    Simple,
}

/// A pointer occurrence as written in a rule name, such as `-6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pointer {
    pub value: u32,
    pub barred: bool,
}

impl Pointer {
    pub fn new(value: u32, barred: bool) -> Pointer {
        assert!(value >= 2, "pointer values start at 2");
        Pointer { value, barred }
    }

    pub fn symbol(self) -> Symbol {
        Symbol::pointer(self.value, self.barred)
    }

    pub fn identity(self) -> Identity {
        Identity::Pointer(self.value)
    }
}

impl TryFrom<Symbol> for Pointer {
    type Error = Symbol;

    fn try_from(s: Symbol) -> Result<Self, Self::Error> {
        match s.kind {
            SymbolKind::Pointer(value) => Ok(Pointer { value, barred: s.barred }),
            SymbolKind::Marker(_) => Err(s),
        }
    }
}

impl fmt::Display for Pointer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbol().fmt(f)
    }
}

/// Positions matched by a rule: the two occurrences of `p`, or for the
/// double rules the occurrences `p, q, p, q` in string order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MatchSite {
    Single(usize, usize),
    Double([usize; 4]),
}

/// A string rule with its pointer parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleInstance {
    kind: RuleKind,
    p: Pointer,
    q: Option<Pointer>,
    site: Option<MatchSite>,
}

impl RuleInstance {
    pub fn snr(p: Pointer) -> RuleInstance {
        RuleInstance { kind: RuleKind::Snr, p, q: None, site: None }
    }

    pub fn spr(p: Pointer) -> RuleInstance {
        RuleInstance { kind: RuleKind::Spr, p, q: None, site: None }
    }

    pub fn sspr(p: Pointer) -> RuleInstance {
        RuleInstance { kind: RuleKind::Sspr, p, q: None, site: None }
    }

    /// Returns `None` if `p` and `q` share an identity.
    pub fn sdr(p: Pointer, q: Pointer) -> Option<RuleInstance> {
        (p.value != q.value).then_some(RuleInstance { kind: RuleKind::Sdr, p, q: Some(q), site: None })
    }

    /// Returns `None` if `p` and `q` share an identity.
    pub fn ssdr(p: Pointer, q: Pointer) -> Option<RuleInstance> {
        (p.value != q.value).then_some(RuleInstance { kind: RuleKind::Ssdr, p, q: Some(q), site: None })
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn p(&self) -> Pointer {
        self.p
    }

    pub fn q(&self) -> Option<Pointer> {
        self.q
    }

    pub fn site(&self) -> Option<MatchSite> {
        self.site
    }

    /// The same rule pinned to a match site, checked again on application.
    pub fn at(self, site: MatchSite) -> RuleInstance {
        RuleInstance { site: Some(site), ..self }
    }

    pub fn without_site(self) -> RuleInstance {
        RuleInstance { site: None, ..self }
    }

    /// Identities removed from the domain by this rule.
    pub fn consumed(&self) -> Vec<Identity> {
        core::iter::once(self.p.identity()).chain(self.q.map(Pointer::identity)).collect()
    }

    /// The simple rule's general counterpart; `snr` maps to itself.
    pub fn generalized(self) -> RuleInstance {
        let kind = match self.kind {
            RuleKind::Sspr => RuleKind::Spr,
            RuleKind::Ssdr => RuleKind::Sdr,
            k => k,
        };
        RuleInstance { kind, ..self }
    }
}

impl fmt::Display for RuleInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self.p)?;
        if let Some(q) = self.q {
            write!(f, ",{q}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleParseError {
    UnknownRule(String),
    MissingParameter(String),
    BadPointer(String),
    /// Double rules take two pointers, the others exactly one.
    Arity(String),
    SameIdentity(String),
}

impl fmt::Display for RuleParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleParseError::UnknownRule(r) => write!(f, "unknown rule `{r}`"),
            RuleParseError::MissingParameter(r) => write!(f, "rule `{r}` has no `:` parameter"),
            RuleParseError::BadPointer(r) => write!(f, "`{r}` is not a pointer"),
            RuleParseError::Arity(r) => write!(f, "wrong number of pointers in `{r}`"),
            RuleParseError::SameIdentity(r) => write!(f, "the two pointers of `{r}` must differ"),
        }
    }
}

impl core::error::Error for RuleParseError {}

fn parse_pointer(text: &str) -> Result<Pointer, RuleParseError> {
    text.parse::<Symbol>()
        .ok()
        .and_then(|s| Pointer::try_from(s).ok())
        .ok_or_else(|| RuleParseError::BadPointer(text.to_string()))
}

impl FromStr for RuleInstance {
    type Err = RuleParseError;

    /// `snr:4`, `sspr:-6`, `ssdr:2,3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, params) = s
            .split_once(':')
            .ok_or_else(|| RuleParseError::MissingParameter(s.to_string()))?;
        let kind: RuleKind = name.parse()?;
        let pointers = params
            .split(',')
            .map(|t| parse_pointer(t.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        match (kind, pointers.as_slice()) {
            (RuleKind::Snr, [p]) => Ok(RuleInstance::snr(*p)),
            (RuleKind::Spr, [p]) => Ok(RuleInstance::spr(*p)),
            (RuleKind::Sspr, [p]) => Ok(RuleInstance::sspr(*p)),
            (RuleKind::Sdr, [p, q]) => {
                RuleInstance::sdr(*p, *q).ok_or_else(|| RuleParseError::SameIdentity(s.to_string()))
            }
            (RuleKind::Ssdr, [p, q]) => {
                RuleInstance::ssdr(*p, *q).ok_or_else(|| RuleParseError::SameIdentity(s.to_string()))
            }
            _ => Err(RuleParseError::Arity(s.to_string())),
        }
    }
}

/// Parses a comma separated rule list in execution order.
///
/// Commas also separate the two pointers of a double rule, so a token
/// without a `:` continues the previous rule.
pub fn parse_rule_list(text: &str) -> Result<Vec<RuleInstance>, RuleParseError> {
    let mut groups: Vec<String> = Vec::new();
    for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match groups.last_mut() {
            Some(last) if !token.contains(':') => {
                last.push(',');
                last.push_str(token);
            }
            _ => groups.push(token.to_string()),
        }
    }
    groups.iter().map(|g| g.parse()).collect()
}

/// The part of a rule's pattern that the string fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternCondition {
    /// The first occurrence of the identity is not written as in the rule.
    FirstOccurrence,
    /// The second occurrence has the wrong orientation for this rule.
    SecondOccurrence,
    /// `snr` needs the two occurrences of `p` next to each other.
    NotAdjacent,
    /// `sspr` needs exactly one symbol between the occurrences of `p`.
    IntervalLength(usize),
    /// Double rules need the order `p .. q .. p .. q`.
    NotInterleaved,
    /// `ssdr` needs the blocks `p q` and `p q` to be contiguous.
    BlocksNotAdjacent,
}

impl fmt::Display for PatternCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternCondition::FirstOccurrence => f.write_str("first occurrence is written differently"),
            PatternCondition::SecondOccurrence => f.write_str("second occurrence has the wrong orientation"),
            PatternCondition::NotAdjacent => f.write_str("the two occurrences are not adjacent"),
            PatternCondition::IntervalLength(n) => {
                write!(f, "{n} symbol(s) between the occurrences, expected exactly 1")
            }
            PatternCondition::NotInterleaved => f.write_str("occurrences are not in the order p q p q"),
            PatternCondition::BlocksNotAdjacent => f.write_str("the blocks p q are not contiguous"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleError {
    InvalidString(InvalidReason),
    UnknownPointer { rule: RuleInstance, pointer: u32 },
    Pattern { rule: RuleInstance, pointer: Pointer, condition: PatternCondition },
    SiteMismatch { rule: RuleInstance, actual: MatchSite },
}

impl fmt::Display for RuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleError::InvalidString(reason) => write!(f, "string is not (extended) legal: {reason}"),
            RuleError::UnknownPointer { rule, pointer } => {
                write!(f, "{rule} is not applicable: pointer {pointer} does not occur")
            }
            RuleError::Pattern { rule, pointer, condition } => {
                write!(f, "{rule} is not applicable: pointer {pointer}: {condition}")
            }
            RuleError::SiteMismatch { rule, actual } => {
                write!(f, "{rule} does not match at the requested site (matches at {actual:?})")
            }
        }
    }
}

impl core::error::Error for RuleError {}

fn pair_positions(s: &GeneString, rule: RuleInstance, p: Pointer) -> Result<(usize, usize), RuleError> {
    let occ = s.occurrences(p.identity());
    match occ.as_slice() {
        [i, j] => Ok((*i, *j)),
        _ => Err(RuleError::UnknownPointer { rule, pointer: p.value }),
    }
}

/// Locates the pattern of `rule` in `s`.
pub fn match_site(s: &GeneString, rule: RuleInstance) -> Result<MatchSite, RuleError> {
    if let Validity::Invalid(reason) = s.validity() {
        return Err(RuleError::InvalidString(reason));
    }
    let sym = s.symbols();
    let fail = |pointer, condition| RuleError::Pattern { rule, pointer, condition };
    let p = rule.p;
    let (i, j) = pair_positions(s, rule, p)?;
    if sym[i] != p.symbol() {
        return Err(fail(p, PatternCondition::FirstOccurrence));
    }
    let site = match rule.kind {
        RuleKind::Snr => {
            if sym[j] != p.symbol() {
                return Err(fail(p, PatternCondition::SecondOccurrence));
            }
            if j != i + 1 {
                return Err(fail(p, PatternCondition::NotAdjacent));
            }
            MatchSite::Single(i, j)
        }
        RuleKind::Spr | RuleKind::Sspr => {
            if sym[j] != p.symbol().inverted() {
                return Err(fail(p, PatternCondition::SecondOccurrence));
            }
            if rule.kind == RuleKind::Sspr && j != i + 2 {
                return Err(fail(p, PatternCondition::IntervalLength(j - i - 1)));
            }
            MatchSite::Single(i, j)
        }
        RuleKind::Sdr | RuleKind::Ssdr => {
            let q = rule.q.expect("double rules carry q");
            if sym[j] != p.symbol() {
                return Err(fail(p, PatternCondition::SecondOccurrence));
            }
            let (k, l) = pair_positions(s, rule, q)?;
            if sym[k] != q.symbol() {
                return Err(fail(q, PatternCondition::FirstOccurrence));
            }
            if sym[l] != q.symbol() {
                return Err(fail(q, PatternCondition::SecondOccurrence));
            }
            if !(i < k && k < j && j < l) {
                return Err(fail(p, PatternCondition::NotInterleaved));
            }
            if rule.kind == RuleKind::Ssdr && (k != i + 1 || l != j + 1) {
                return Err(fail(p, PatternCondition::BlocksNotAdjacent));
            }
            MatchSite::Double([i, k, j, l])
        }
    };
    if let Some(requested) = rule.site {
        if requested != site {
            return Err(RuleError::SiteMismatch { rule, actual: site });
        }
    }
    Ok(site)
}

fn rewrite(sym: &[Symbol], site: MatchSite, kind: RuleKind) -> Vec<Symbol> {
    let mut out = Vec::with_capacity(sym.len());
    match (kind, site) {
        (RuleKind::Snr, MatchSite::Single(i, j)) => {
            out.extend_from_slice(&sym[..i]);
            out.extend_from_slice(&sym[j + 1..]);
        }
        (_, MatchSite::Single(i, j)) => {
            out.extend_from_slice(&sym[..i]);
            out.extend(sym[i + 1..j].iter().rev().map(|s| s.inverted()));
            out.extend_from_slice(&sym[j + 1..]);
        }
        (_, MatchSite::Double([i, k, j, l])) => {
            // u1 p u2 q u3 p u4 q u5 -> u1 u4 u3 u2 u5
            out.extend_from_slice(&sym[..i]);
            out.extend_from_slice(&sym[j + 1..l]);
            out.extend_from_slice(&sym[k + 1..j]);
            out.extend_from_slice(&sym[i + 1..k]);
            out.extend_from_slice(&sym[l + 1..]);
        }
    }
    out
}

pub fn is_applicable(s: &GeneString, rule: RuleInstance) -> bool {
    match_site(s, rule).is_ok()
}

/// Applies one rule. The result keeps the validity class of `s`.
pub fn apply_rule(s: &GeneString, rule: RuleInstance) -> Result<GeneString, RuleError> {
    let site = match_site(s, rule)?;
    Ok(GeneString::new(rewrite(s.symbols(), site, rule.kind)))
}

/// Every instance of the given kinds applicable to `s`, with match sites.
///
/// Sorted by kind, then `p`, then `q`.
pub fn applicable_instances(s: &GeneString, kinds: RuleSet) -> Result<Vec<RuleInstance>, RuleError> {
    if let Validity::Invalid(reason) = s.validity() {
        return Err(RuleError::InvalidString(reason));
    }
    let sym = s.symbols();
    let pairs: Vec<(Pointer, usize, usize)> = s
        .occurrence_pairs()
        .into_iter()
        .filter_map(|(_, (i, j))| Pointer::try_from(sym[i]).ok().map(|p| (p, i, j)))
        .collect();
    let mut out = Vec::new();
    for kind in kinds.kinds() {
        for &(p, i, j) in &pairs {
            let negative = sym[i] == sym[j];
            match kind {
                RuleKind::Snr if negative && j == i + 1 => {
                    out.push(RuleInstance::snr(p).at(MatchSite::Single(i, j)))
                }
                RuleKind::Spr if !negative => out.push(RuleInstance::spr(p).at(MatchSite::Single(i, j))),
                RuleKind::Sspr if !negative && j == i + 2 => {
                    out.push(RuleInstance::sspr(p).at(MatchSite::Single(i, j)))
                }
                RuleKind::Sdr | RuleKind::Ssdr if negative => {
                    for &(q, k, l) in &pairs {
                        if sym[k] != sym[l] || !(i < k && k < j && j < l) {
                            continue;
                        }
                        if kind == RuleKind::Ssdr && (k != i + 1 || l != j + 1) {
                            continue;
                        }
                        let site = MatchSite::Double([i, k, j, l]);
                        let rule = RuleInstance { kind, p, q: Some(q), site: Some(site) };
                        out.push(rule);
                    }
                }
                _ => {}
            }
        }
    }
    out.sort_by_key(|r| (r.kind, r.p.value, r.q.map(|q| q.value)));
    Ok(out)
}

pub fn applicable_rules(s: &GeneString, system: RuleSystem) -> Result<Vec<RuleInstance>, RuleError> {
    applicable_instances(s, system.into())
}

/// `λ` for a legal string; one of `b e`, `e b`, `-e -b`, `-b -e` for an
/// extended legal string.
pub fn is_terminal_success(s: &GeneString) -> bool {
    match s.validity() {
        Validity::Legal => s.is_empty(),
        Validity::ExtendedLegal => match s.symbols() {
            // Both markers with the same bar, in either order.
            [x, y] => x.is_marker() && y.is_marker() && x.barred == y.barred,
            _ => false,
        },
        Validity::Invalid(_) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub rule: RuleInstance,
    pub result: GeneString,
}

/// The record of applying a rule sequence to a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub initial: GeneString,
    pub steps: Vec<ReductionStep>,
    pub success: bool,
}

impl ReductionTrace {
    pub fn final_string(&self) -> &GeneString {
        self.steps.last().map_or(&self.initial, |s| &s.result)
    }

    pub fn rules(&self) -> impl Iterator<Item = RuleInstance> + '_ {
        self.steps.iter().map(|s| s.rule)
    }
}

/// A reduction that stopped at an inapplicable rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionFailure {
    /// Steps that did apply; `success` reflects the last string reached.
    pub partial: ReductionTrace,
    /// Zero-based index of the failing rule.
    pub step: usize,
    pub error: RuleError,
}

impl fmt::Display for ReductionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step + 1, self.error)
    }
}

impl core::error::Error for ReductionFailure {}

/// Applies `rules` in order, first element first.
#[allow(clippy::result_large_err)]
pub fn apply_reduction(s: &GeneString, rules: &[RuleInstance]) -> Result<ReductionTrace, ReductionFailure> {
    let mut trace = ReductionTrace { initial: s.clone(), steps: Vec::new(), success: false };
    for (step, &rule) in rules.iter().enumerate() {
        match apply_rule(trace.final_string(), rule) {
            Ok(result) => trace.steps.push(ReductionStep { rule, result }),
            Err(error) => {
                trace.success = is_terminal_success(trace.final_string());
                return Err(ReductionFailure { partial: trace, step, error });
            }
        }
    }
    trace.success = is_terminal_success(trace.final_string());
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::Marker;
    use alloc::collections::BTreeSet;
    use alloc::format;
    use proptest::prelude::*;

    const RUNNING_U: &str = "5 -2 4 4 -5 3 -6 2 6 b 3 -e";

    fn s(text: &str) -> GeneString {
        text.parse().unwrap()
    }

    fn r(text: &str) -> RuleInstance {
        text.parse().unwrap()
    }

    fn names(rules: &[RuleInstance]) -> BTreeSet<String> {
        rules.iter().map(|r| r.to_string()).collect()
    }

    #[test]
    fn simple_rules_on_running_example() {
        let rules = applicable_rules(&s(RUNNING_U), RuleSystem::Simple).unwrap();
        assert_eq!(names(&rules), ["snr:4", "sspr:-6"].map(String::from).into());
    }

    #[test]
    fn general_rules_on_running_example() {
        let rules = names(&applicable_rules(&s(RUNNING_U), RuleSystem::General).unwrap());
        assert!(rules.contains("spr:5"));
        assert!(rules.contains("spr:-2"));
        assert!(rules.contains("snr:4"));
        assert!(rules.contains("spr:-6"));
        assert!(!rules.contains("spr:2"));
    }

    #[test]
    fn ssdr_on_w() {
        let w = s("b 2 3 4 2 3 4 e");
        let rules = applicable_rules(&w, RuleSystem::Simple).unwrap();
        assert_eq!(names(&rules), ["ssdr:2,3", "ssdr:3,4"].map(String::from).into());
        assert_eq!(
            apply_rule(&w, r("ssdr:2,4")).unwrap_err(),
            RuleError::Pattern {
                rule: r("ssdr:2,4"),
                pointer: Pointer::new(2, false),
                condition: PatternCondition::BlocksNotAdjacent
            }
        );
        assert_eq!(apply_rule(&w, r("ssdr:2,3")).unwrap().to_string(), "b 4 4 e");
    }

    #[test]
    fn no_rules_without_pointers() {
        assert!(applicable_rules(&s("b e"), RuleSystem::Simple).unwrap().is_empty());
        assert!(applicable_rules(&s("b e"), RuleSystem::General).unwrap().is_empty());
    }

    #[test]
    fn invalid_strings_are_rejected() {
        assert!(matches!(applicable_rules(&s("2 3 2"), RuleSystem::Simple), Err(RuleError::InvalidString(_))));
        assert!(matches!(apply_rule(&s("2 3 2"), r("snr:2")), Err(RuleError::InvalidString(_))));
    }

    #[test]
    fn single_rule_examples() {
        let u = s(RUNNING_U);
        assert_eq!(apply_rule(&u, r("sspr:-6")).unwrap().to_string(), "5 -2 4 4 -5 3 -2 b 3 -e");
        assert_eq!(apply_rule(&u, r("snr:4")).unwrap().to_string(), "5 -2 -5 3 -6 2 6 b 3 -e");
        assert_eq!(apply_rule(&u, r("spr:5")).unwrap().to_string(), "-4 -4 2 3 -6 2 6 b 3 -e");
    }

    #[test]
    fn sdr_rearranges_contexts() {
        // u1 p u2 q u3 p u4 q u5 with u2 = 5, u3 = 6 6, u4 = -5
        let u = s("2 5 3 6 6 2 -5 3");
        assert_eq!(apply_rule(&u, r("sdr:2,3")).unwrap().to_string(), "-5 6 6 5");
        assert!(matches!(
            apply_rule(&u, r("sdr:3,2")),
            Err(RuleError::Pattern { condition: PatternCondition::NotInterleaved, .. })
        ));
        assert!(matches!(
            apply_rule(&u, r("ssdr:2,3")),
            Err(RuleError::Pattern { condition: PatternCondition::BlocksNotAdjacent, .. })
        ));
    }

    #[test]
    fn failure_conditions_are_named() {
        let u = s(RUNNING_U);
        let cond = |rule: &str| match apply_rule(&u, r(rule)) {
            Err(RuleError::Pattern { condition, .. }) => condition,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(cond("snr:-4"), PatternCondition::FirstOccurrence);
        assert_eq!(cond("snr:3"), PatternCondition::NotAdjacent);
        assert_eq!(cond("snr:5"), PatternCondition::SecondOccurrence);
        assert_eq!(cond("sspr:5"), PatternCondition::IntervalLength(3));
        assert!(matches!(
            apply_rule(&u, r("snr:7")),
            Err(RuleError::UnknownPointer { pointer: 7, .. })
        ));
    }

    #[test]
    fn match_sites_are_checked() {
        let u = s(RUNNING_U);
        assert_eq!(match_site(&u, r("snr:4")), Ok(MatchSite::Single(2, 3)));
        let pinned = r("snr:4").at(MatchSite::Single(3, 4));
        assert!(matches!(apply_rule(&u, pinned), Err(RuleError::SiteMismatch { .. })));
    }

    #[test]
    fn running_reduction_succeeds() {
        let rules = parse_rule_list("sspr:-6, snr:4, sspr:5, sspr:2, sspr:-3").unwrap();
        let trace = apply_reduction(&s(RUNNING_U), &rules).unwrap();
        assert_eq!(trace.final_string().to_string(), "-b -e");
        assert!(trace.success);
        assert_eq!(trace.steps.len(), 5);
        assert!(rules.iter().all(|r| RuleSet::SIMPLE.contains(r.kind())));
    }

    #[test]
    fn empty_reduction() {
        let trace = apply_reduction(&s(RUNNING_U), &[]).unwrap();
        assert_eq!(trace.final_string(), &s(RUNNING_U));
        assert!(!trace.success);
    }

    #[test]
    fn reduction_aborts_at_inapplicable_step() {
        let err = apply_reduction(&s(RUNNING_U), &[r("snr:4"), r("snr:4")]).unwrap_err();
        assert_eq!(err.step, 1);
        assert_eq!(err.partial.steps.len(), 1);
        assert!(matches!(err.error, RuleError::UnknownPointer { pointer: 4, .. }));
    }

    #[test]
    fn success_set() {
        for ok in ["b e", "e b", "-e -b", "-b -e"] {
            assert!(is_terminal_success(&s(ok)), "{ok}");
        }
        for bad in ["b -e", "-b e", "e -b", "-e b", "2 2", "b 2 2 e"] {
            assert!(!is_terminal_success(&s(bad)), "{bad}");
        }
        assert!(is_terminal_success(&GeneString::empty()));
    }

    #[test]
    fn two_symbol_success_is_negative_m() {
        use crate::strings::{Identity, Sign};
        for a in [Marker::B, Marker::E] {
            let b = if a == Marker::B { Marker::E } else { Marker::B };
            for bars in 0..4 {
                let u = GeneString::new(alloc::vec![
                    Symbol::marker(a, bars & 1 != 0),
                    Symbol::marker(b, bars & 2 != 0)
                ]);
                if is_terminal_success(&u) {
                    assert_eq!(u.sign_of(Identity::M), Ok(Sign::Negative));
                }
            }
        }
    }

    #[test]
    fn rule_syntax() {
        assert_eq!(r("ssdr:2,3").q(), Some(Pointer::new(3, false)));
        assert_eq!(r(" sspr:-6 ").to_string(), "sspr:-6");
        assert_eq!("ssdr:2,-2".parse::<RuleInstance>(), Err(RuleParseError::SameIdentity("ssdr:2,-2".into())));
        assert!(matches!("snr:2,3".parse::<RuleInstance>(), Err(RuleParseError::Arity(_))));
        assert!(matches!("sdr:2".parse::<RuleInstance>(), Err(RuleParseError::Arity(_))));
        assert!(matches!("xyz:2".parse::<RuleInstance>(), Err(RuleParseError::UnknownRule(_))));
        assert!(matches!("snr:b".parse::<RuleInstance>(), Err(RuleParseError::BadPointer(_))));
        assert!(matches!("snr".parse::<RuleInstance>(), Err(RuleParseError::MissingParameter(_))));
        let list = parse_rule_list("snr:4, ssdr:2,3, sspr:-6").unwrap();
        assert_eq!(list.iter().map(|r| format!("{r}")).collect::<Vec<_>>(), ["snr:4", "ssdr:2,3", "sspr:-6"]);
    }

    fn arb_valid_string() -> impl Strategy<Value = GeneString> {
        (0u32..5, any::<bool>())
            .prop_flat_map(|(k, markers)| {
                let mut skeleton = Vec::new();
                for p in 2..k + 2 {
                    skeleton.push(Symbol::pointer(p, false));
                    skeleton.push(Symbol::pointer(p, false));
                }
                if markers {
                    skeleton.push(Symbol::marker(Marker::B, false));
                    skeleton.push(Symbol::marker(Marker::E, false));
                }
                let n = skeleton.len();
                (Just(skeleton).prop_shuffle(), proptest::collection::vec(any::<bool>(), n))
            })
            .prop_map(|(skeleton, bars)| {
                GeneString::new(
                    skeleton.into_iter().zip(bars).map(|(s, b)| if b { s.inverted() } else { s }).collect(),
                )
            })
    }

    proptest! {
        #[test]
        fn rules_preserve_class_and_shrink(u in arb_valid_string()) {
            let all: RuleSet = RuleKind::ALL.into_iter().collect();
            for rule in applicable_instances(&u, all).unwrap() {
                let v = apply_rule(&u, rule).unwrap();
                prop_assert_eq!(v.validity(), u.validity());
                let shrink = if rule.kind().is_double() { 4 } else { 2 };
                prop_assert_eq!(v.len() + shrink, u.len());
                let mut dom = u.domain();
                for id in rule.consumed() {
                    prop_assert!(dom.remove(&id));
                }
                prop_assert_eq!(v.domain(), dom);
                prop_assert_eq!(
                    v.symbols().iter().filter(|s| s.is_marker()).count(),
                    u.symbols().iter().filter(|s| s.is_marker()).count()
                );
            }
        }

        #[test]
        fn simple_instances_are_general_instances(u in arb_valid_string()) {
            let general = applicable_rules(&u, RuleSystem::General).unwrap();
            for rule in applicable_rules(&u, RuleSystem::Simple).unwrap() {
                prop_assert!(general.contains(&rule.generalized()));
                prop_assert_eq!(apply_rule(&u, rule), apply_rule(&u, rule.generalized()));
            }
        }

        #[test]
        fn enumeration_agrees_with_matching(u in arb_valid_string()) {
            let all: RuleSet = RuleKind::ALL.into_iter().collect();
            let found = applicable_instances(&u, all).unwrap();
            for id in u.domain().into_iter().filter_map(|i| i.pointer()) {
                for barred in [false, true] {
                    let p = Pointer::new(id, barred);
                    for rule in [RuleInstance::snr(p), RuleInstance::spr(p), RuleInstance::sspr(p)] {
                        prop_assert_eq!(is_applicable(&u, rule), found.iter().any(|f| f.without_site() == rule));
                    }
                }
            }
        }
    }
}
