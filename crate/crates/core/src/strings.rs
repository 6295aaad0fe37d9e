//! Legal strings and extended legal strings.
//!
//! A [`GeneString`] is a finite sequence of pointer and marker occurrences.
//! Every pointer identity of a legal string occurs exactly twice (barred or
//! not). An extended legal string additionally carries exactly one occurrence
//! of each marker `b` and `e`, both of which have the identity `m`.
//!
//! The token form is whitespace separated, with a leading `-` for a barred
//! symbol: `5 -2 4 4 -5 3 -6 2 6 b 3 -e`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// Combining macron, as produced when copying `2̄` out of a typeset document.
const COMBINING_MACRON: char = '\u{0304}';
/// Combining overline.
const COMBINING_OVERLINE: char = '\u{0305}';
/// Typographic minus, accepted like `-`.
const MINUS_SIGN: char = '\u{2212}';

/// One of the two gene markers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marker {
    /// Beginning marker.
    B,
    /// Ending marker.
    E,
}

impl Marker {
    pub fn letter(self) -> char {
        match self {
            Marker::B => 'b',
            Marker::E => 'e',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    /// A pointer with value `>= 2`.
    Pointer(u32),
    Marker(Marker),
}

/// A single occurrence in a gene string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub barred: bool,
}

/// The unbarred name of an occurrence: a pointer value, or `m` for either marker.
///
/// Ordering puts every pointer before `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    Pointer(u32),
    M,
}

impl Identity {
    pub fn is_m(self) -> bool {
        matches!(self, Identity::M)
    }

    pub fn pointer(self) -> Option<u32> {
        match self {
            Identity::Pointer(p) => Some(p),
            Identity::M => None,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::Pointer(p) => write!(f, "{p}"),
            Identity::M => f.write_str("m"),
        }
    }
}

impl FromStr for Identity {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let token = s.trim();
        if token == "m" {
            return Ok(Identity::M);
        }
        match parse_symbol(token, 0)? {
            Symbol { kind: SymbolKind::Pointer(p), barred: false } => Ok(Identity::Pointer(p)),
            _ => Err(ParseError {
                position: 0,
                token: token.to_string(),
                kind: ParseErrorKind::Malformed,
            }),
        }
    }
}

/// Orientation class of an identity (in a string) or a vertex (in a graph).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl Symbol {
    /// Panics if `value < 2`.
    pub fn pointer(value: u32, barred: bool) -> Symbol {
        assert!(value >= 2, "pointer values start at 2");
        Symbol { kind: SymbolKind::Pointer(value), barred }
    }

    pub fn marker(marker: Marker, barred: bool) -> Symbol {
        Symbol { kind: SymbolKind::Marker(marker), barred }
    }

    pub fn identity(self) -> Identity {
        match self.kind {
            SymbolKind::Pointer(p) => Identity::Pointer(p),
            SymbolKind::Marker(_) => Identity::M,
        }
    }

    pub fn is_marker(self) -> bool {
        matches!(self.kind, SymbolKind::Marker(_))
    }

    pub fn inverted(self) -> Symbol {
        Symbol { barred: !self.barred, ..self }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            f.write_str("-")?;
        }
        match self.kind {
            SymbolKind::Pointer(p) => write!(f, "{p}"),
            SymbolKind::Marker(m) => write!(f, "{}", m.letter()),
        }
    }
}

impl FromStr for Symbol {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_symbol(s.trim(), 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    /// Digits that do not fit a pointer value.
    InvalidInteger,
    PointerTooSmall(u32),
    UnknownMarker(char),
    /// Anything else, including a doubled bar.
    Malformed,
}

/// A token that could not be read; `position` is the zero-based token index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub token: String,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "token {} `{}`: ", self.position, self.token)?;
        match &self.kind {
            ParseErrorKind::Empty => f.write_str("empty token"),
            ParseErrorKind::InvalidInteger => f.write_str("not a valid pointer value"),
            ParseErrorKind::PointerTooSmall(n) => write!(f, "pointer {n} is below 2"),
            ParseErrorKind::UnknownMarker(c) => write!(f, "unknown marker `{c}` (expected b or e)"),
            ParseErrorKind::Malformed => f.write_str("malformed symbol"),
        }
    }
}

impl core::error::Error for ParseError {}

fn parse_symbol(token: &str, position: usize) -> Result<Symbol, ParseError> {
    let err = |kind| ParseError { position, token: token.to_string(), kind };
    let mut body = token;
    let mut barred = false;
    if let Some(rest) = body.strip_prefix('-').or_else(|| body.strip_prefix(MINUS_SIGN)) {
        barred = true;
        body = rest;
    }
    if let Some(rest) = body
        .strip_suffix(COMBINING_MACRON)
        .or_else(|| body.strip_suffix(COMBINING_OVERLINE))
    {
        if barred {
            return Err(err(ParseErrorKind::Malformed));
        }
        barred = true;
        body = rest;
    }
    if body.is_empty() {
        return Err(err(if token.is_empty() { ParseErrorKind::Empty } else { ParseErrorKind::Malformed }));
    }
    if body.bytes().all(|b| b.is_ascii_digit()) {
        let value: u32 = body.parse().map_err(|_| err(ParseErrorKind::InvalidInteger))?;
        if value < 2 {
            return Err(err(ParseErrorKind::PointerTooSmall(value)));
        }
        return Ok(Symbol::pointer(value, barred));
    }
    let mut chars = body.chars();
    match (chars.next(), chars.next()) {
        (Some('b'), None) => Ok(Symbol::marker(Marker::B, barred)),
        (Some('e'), None) => Ok(Symbol::marker(Marker::E, barred)),
        (Some(c), None) if c.is_alphabetic() => Err(err(ParseErrorKind::UnknownMarker(c))),
        _ => Err(err(ParseErrorKind::Malformed)),
    }
}

/// Why a sequence of symbols is neither legal nor extended legal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InvalidReason {
    /// A pointer identity occurs a number of times other than two.
    PointerCount { pointer: u32, count: usize },
    /// A marker letter occurs a number of times other than one.
    MarkerCount { marker: Marker, count: usize },
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvalidReason::PointerCount { pointer, count } => {
                write!(f, "pointer {pointer} occurs {count} time(s), expected exactly 2")
            }
            InvalidReason::MarkerCount { marker, count } => {
                write!(f, "marker {} occurs {count} time(s), expected exactly 1", marker.letter())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Validity {
    Legal,
    ExtendedLegal,
    Invalid(InvalidReason),
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Validity::Legal => f.write_str("legal"),
            Validity::ExtendedLegal => f.write_str("extended-legal"),
            Validity::Invalid(reason) => write!(f, "invalid: {reason}"),
        }
    }
}

fn classify(symbols: &[Symbol]) -> Validity {
    let mut pointers: BTreeMap<u32, usize> = BTreeMap::new();
    let (mut b, mut e) = (0, 0);
    for s in symbols {
        match s.kind {
            SymbolKind::Pointer(p) => *pointers.entry(p).or_default() += 1,
            SymbolKind::Marker(Marker::B) => b += 1,
            SymbolKind::Marker(Marker::E) => e += 1,
        }
    }
    if let Some((&pointer, &count)) = pointers.iter().find(|(_, &c)| c != 2) {
        return Validity::Invalid(InvalidReason::PointerCount { pointer, count });
    }
    match (b, e) {
        (0, 0) => Validity::Legal,
        (1, 1) => Validity::ExtendedLegal,
        (1, count) => Validity::Invalid(InvalidReason::MarkerCount { marker: Marker::E, count }),
        (count, _) => Validity::Invalid(InvalidReason::MarkerCount { marker: Marker::B, count }),
    }
}

/// Errors from queries that need a legal or extended legal string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StringError {
    Invalid(InvalidReason),
    UnknownIdentity(Identity),
}

impl fmt::Display for StringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StringError::Invalid(reason) => write!(f, "string is not (extended) legal: {reason}"),
            StringError::UnknownIdentity(id) => write!(f, "identity {id} does not occur in the string"),
        }
    }
}

impl core::error::Error for StringError {}

/// A sequence of symbols together with its validity class.
///
/// Validity is recomputed on construction and never fails: an invalid
/// sequence is still a `GeneString`, classified as [`Validity::Invalid`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneString {
    symbols: Vec<Symbol>,
    validity: Validity,
}

/// Orientation and interval of one identity inside a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointerProfile {
    pub sign: Sign,
    /// Zero-based positions of the two occurrences, `span.0 < span.1`.
    pub span: (usize, usize),
    /// The interval including both endpoints.
    pub interval: GeneString,
    /// The interval without its endpoints.
    pub content: GeneString,
}

impl GeneString {
    pub fn new(symbols: Vec<Symbol>) -> GeneString {
        let validity = classify(&symbols);
        GeneString { symbols, validity }
    }

    pub fn empty() -> GeneString {
        GeneString::new(Vec::new())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn validity(&self) -> Validity {
        self.validity
    }

    pub fn is_legal(&self) -> bool {
        self.validity == Validity::Legal
    }

    pub fn is_extended_legal(&self) -> bool {
        self.validity == Validity::ExtendedLegal
    }

    /// Legal or extended legal.
    pub fn is_valid(&self) -> bool {
        !matches!(self.validity, Validity::Invalid(_))
    }

    pub(crate) fn ensure_valid(&self) -> Result<(), StringError> {
        match self.validity {
            Validity::Invalid(reason) => Err(StringError::Invalid(reason)),
            _ => Ok(()),
        }
    }

    /// Reverses the string and toggles every bar.
    pub fn invert(&self) -> GeneString {
        GeneString {
            symbols: self.symbols.iter().rev().map(|s| s.inverted()).collect(),
            validity: self.validity,
        }
    }

    /// Deletes every marker occurrence.
    pub fn remove_markers(&self) -> GeneString {
        GeneString::new(self.symbols.iter().copied().filter(|s| !s.is_marker()).collect())
    }

    /// Identities occurring in the string, pointers ascending and `m` last.
    pub fn domain(&self) -> BTreeSet<Identity> {
        self.symbols.iter().map(|s| s.identity()).collect()
    }

    /// Zero-based positions of every occurrence with identity `id`.
    pub fn occurrences(&self, id: Identity) -> Vec<usize> {
        self.symbols
            .iter()
            .enumerate()
            .filter(|(_, s)| s.identity() == id)
            .map(|(i, _)| i)
            .collect()
    }

    /// Positions of both occurrences of every identity, for a valid string.
    pub(crate) fn occurrence_pairs(&self) -> BTreeMap<Identity, (usize, usize)> {
        let mut first: BTreeMap<Identity, usize> = BTreeMap::new();
        let mut pairs = BTreeMap::new();
        for (i, s) in self.symbols.iter().enumerate() {
            let id = s.identity();
            match first.get(&id) {
                Some(&start) => {
                    pairs.insert(id, (start, i));
                }
                None => {
                    first.insert(id, i);
                }
            }
        }
        pairs
    }

    pub fn sign_of(&self, id: Identity) -> Result<Sign, StringError> {
        Ok(self.pointer_profile(id)?.sign)
    }

    pub fn pointer_profile(&self, id: Identity) -> Result<PointerProfile, StringError> {
        self.ensure_valid()?;
        let (i, j) = *self
            .occurrence_pairs()
            .get(&id)
            .ok_or(StringError::UnknownIdentity(id))?;
        let sign = if self.symbols[i].barred != self.symbols[j].barred {
            Sign::Positive
        } else {
            Sign::Negative
        };
        Ok(PointerProfile {
            sign,
            span: (i, j),
            interval: GeneString::new(self.symbols[i..=j].to_vec()),
            content: GeneString::new(self.symbols[i + 1..j].to_vec()),
        })
    }
}

impl fmt::Display for GeneString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for GeneString {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gene_string(s)
    }
}

impl From<Vec<Symbol>> for GeneString {
    fn from(symbols: Vec<Symbol>) -> Self {
        GeneString::new(symbols)
    }
}

/// Parses whitespace separated tokens. A lone `λ` denotes the empty string.
///
/// Bars may be written as a leading `-` or `−` (U+2212), or a trailing
/// combining macron or overline. Validity problems are classified on the result, not reported
/// as errors.
pub fn parse_gene_string(text: &str) -> Result<GeneString, ParseError> {
    if text.trim() == "λ" {
        return Ok(GeneString::empty());
    }
    let symbols = text
        .split_whitespace()
        .enumerate()
        .map(|(i, t)| parse_symbol(t, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GeneString::new(symbols))
}

/// One MDS in a micronuclear arrangement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MdsEntry {
    /// One-based MDS number.
    pub index: u32,
    pub inverted: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescriptorError {
    /// Fewer than two MDSs.
    TooFew(usize),
    Duplicate(u32),
    Missing(u32),
    OutOfRange(u32),
}

impl fmt::Display for DescriptorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DescriptorError::TooFew(n) => write!(f, "a gene needs at least 2 MDSs, got {n}"),
            DescriptorError::Duplicate(i) => write!(f, "MDS {i} listed more than once"),
            DescriptorError::Missing(i) => write!(f, "MDS {i} is missing"),
            DescriptorError::OutOfRange(i) => write!(f, "MDS {i} is out of range"),
        }
    }
}

impl core::error::Error for DescriptorError {}

/// Order and orientation of the MDSs `M_1 .. M_kappa` in a micronuclear gene.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdsDescriptor {
    entries: Vec<MdsEntry>,
    kappa: u32,
}

impl MdsDescriptor {
    /// `kappa` is the number of entries; each of `1..=kappa` must appear once.
    pub fn new(entries: Vec<MdsEntry>) -> Result<MdsDescriptor, DescriptorError> {
        let kappa = entries.len();
        if kappa < 2 {
            return Err(DescriptorError::TooFew(kappa));
        }
        let kappa = kappa as u32;
        let mut seen = BTreeSet::new();
        for e in &entries {
            if e.index == 0 || e.index > kappa {
                return Err(DescriptorError::OutOfRange(e.index));
            }
            if !seen.insert(e.index) {
                return Err(DescriptorError::Duplicate(e.index));
            }
        }
        // With no duplicates and no out-of-range index every index is present.
        debug_assert_eq!(seen.len(), entries.len());
        Ok(MdsDescriptor { entries, kappa })
    }

    pub fn entries(&self) -> &[MdsEntry] {
        &self.entries
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    /// The pointer-and-marker string of the arrangement.
    ///
    /// `M_i` contributes `i (i+1)`, except that `M_1` starts with `b` and
    /// `M_kappa` ends with `e`. An inverted MDS contributes the inverse pair.
    pub fn to_gene_string(&self) -> GeneString {
        let mut symbols = Vec::with_capacity(2 * self.entries.len());
        for e in &self.entries {
            let left = if e.index == 1 {
                Symbol::marker(Marker::B, false)
            } else {
                Symbol::pointer(e.index, false)
            };
            let right = if e.index == self.kappa {
                Symbol::marker(Marker::E, false)
            } else {
                Symbol::pointer(e.index + 1, false)
            };
            if e.inverted {
                symbols.push(right.inverted());
                symbols.push(left.inverted());
            } else {
                symbols.push(left);
                symbols.push(right);
            }
        }
        GeneString::new(symbols)
    }
}

/// Descriptor parse failure: either a bad token or a bad arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescriptorParseError {
    Token { position: usize, token: String },
    Descriptor(DescriptorError),
}

impl fmt::Display for DescriptorParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DescriptorParseError::Token { position, token } => {
                write!(f, "descriptor token {position} `{token}` is not of the form M3 or -M3")
            }
            DescriptorParseError::Descriptor(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for DescriptorParseError {}

impl FromStr for MdsDescriptor {
    type Err = DescriptorParseError;

    /// Accepts tokens such as `M3`, `-M2`, `M2̄`, or bare `3` separated by
    /// whitespace or commas, optionally wrapped in brackets.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut entries = Vec::new();
        for (position, token) in trimmed
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .enumerate()
        {
            let bad = || DescriptorParseError::Token { position, token: token.to_string() };
            let mut body = token;
            let mut inverted = false;
            if let Some(rest) = body.strip_prefix('-') {
                inverted = true;
                body = rest;
            }
            if let Some(rest) = body
                .strip_suffix(COMBINING_MACRON)
                .or_else(|| body.strip_suffix(COMBINING_OVERLINE))
            {
                if inverted {
                    return Err(bad());
                }
                inverted = true;
                body = rest;
            }
            let body = body.strip_prefix(['M', 'm']).unwrap_or(body);
            let index: u32 = body.parse().map_err(|_| bad())?;
            entries.push(MdsEntry { index, inverted });
        }
        MdsDescriptor::new(entries).map_err(DescriptorParseError::Descriptor)
    }
}

impl fmt::Display for MdsDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}M{}", if e.inverted { "-" } else { "" }, e.index)?;
        }
        Ok(())
    }
}
