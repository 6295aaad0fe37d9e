//! Simple marked graphs and the extended overlap graph of a string.
//!
//! A simple marked graph has signed vertices named by identities, one set of
//! undirected edges and one set of directed edges. Between two vertices there
//! is at most one relationship: nothing, an undirected edge, or a single
//! directed edge.
//!
//! In the extended overlap graph of a string, overlapping intervals give an
//! undirected edge and a directed edge `q -> p` means both occurrences of `q`
//! lie strictly inside the `p`-interval.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::digraph;
use crate::strings::{GeneString, Identity, Sign, StringError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphError {
    DuplicateVertex(Identity),
    MissingVertex(Identity),
    SelfLoop(Identity),
    /// The pair already has a different relationship.
    Conflict(Identity, Identity),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::DuplicateVertex(v) => write!(f, "vertex {v} added twice"),
            GraphError::MissingVertex(v) => write!(f, "edge endpoint {v} is not a vertex"),
            GraphError::SelfLoop(v) => write!(f, "self-loop at {v}"),
            GraphError::Conflict(a, b) => write!(f, "vertices {a} and {b} already have a relationship"),
        }
    }
}

impl core::error::Error for GraphError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelabelError {
    MovesM,
    /// Two vertices are sent to the same name.
    NotInjective(Identity),
    UnknownVertex(Identity),
}

impl fmt::Display for RelabelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelabelError::MovesM => f.write_str("relabelling must fix m"),
            RelabelError::NotInjective(v) => write!(f, "two vertices are renamed to {v}"),
            RelabelError::UnknownVertex(v) => write!(f, "{v} is not a vertex"),
        }
    }
}

impl core::error::Error for RelabelError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirectedProperties {
    pub acyclic: bool,
    pub transitively_closed: bool,
}

/// Signed vertices with disjoint undirected and directed edge sets.
///
/// Equality is labelled equality. The derived ordering is used as a
/// canonical key when memoizing searches.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleMarkedGraph {
    vertices: BTreeMap<Identity, Sign>,
    /// Stored with the smaller identity first.
    undirected: BTreeSet<(Identity, Identity)>,
    directed: BTreeSet<(Identity, Identity)>,
}

fn unordered(a: Identity, b: Identity) -> (Identity, Identity) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl SimpleMarkedGraph {
    pub fn new() -> SimpleMarkedGraph {
        SimpleMarkedGraph::default()
    }

    /// The successful end state: a single negative `m`.
    pub fn lone_m(sign: Sign) -> SimpleMarkedGraph {
        let mut g = SimpleMarkedGraph::new();
        g.vertices.insert(Identity::M, sign);
        g
    }

    pub fn add_vertex(&mut self, id: Identity, sign: Sign) -> Result<(), GraphError> {
        if self.vertices.contains_key(&id) {
            return Err(GraphError::DuplicateVertex(id));
        }
        self.vertices.insert(id, sign);
        Ok(())
    }

    fn check_new_pair(&self, a: Identity, b: Identity) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        for v in [a, b] {
            if !self.vertices.contains_key(&v) {
                return Err(GraphError::MissingVertex(v));
            }
        }
        if self.related(a, b) {
            return Err(GraphError::Conflict(a, b));
        }
        Ok(())
    }

    pub fn add_undirected(&mut self, a: Identity, b: Identity) -> Result<(), GraphError> {
        self.check_new_pair(a, b)?;
        self.undirected.insert(unordered(a, b));
        Ok(())
    }

    pub fn add_directed(&mut self, from: Identity, to: Identity) -> Result<(), GraphError> {
        self.check_new_pair(from, to)?;
        self.directed.insert((from, to));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (Identity, Sign)> + '_ {
        self.vertices.iter().map(|(&v, &s)| (v, s))
    }

    pub fn vertex_set(&self) -> BTreeSet<Identity> {
        self.vertices.keys().copied().collect()
    }

    pub fn contains(&self, v: Identity) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn sign(&self, v: Identity) -> Option<Sign> {
        self.vertices.get(&v).copied()
    }

    pub fn has_m(&self) -> bool {
        self.contains(Identity::M)
    }

    /// Undirected edges `(a, b)` with `a < b`.
    pub fn undirected_edges(&self) -> &BTreeSet<(Identity, Identity)> {
        &self.undirected
    }

    pub fn directed_edges(&self) -> &BTreeSet<(Identity, Identity)> {
        &self.directed
    }

    pub fn has_undirected(&self, a: Identity, b: Identity) -> bool {
        self.undirected.contains(&unordered(a, b))
    }

    pub fn has_directed(&self, from: Identity, to: Identity) -> bool {
        self.directed.contains(&(from, to))
    }

    fn related(&self, a: Identity, b: Identity) -> bool {
        self.has_undirected(a, b) || self.has_directed(a, b) || self.has_directed(b, a)
    }

    pub fn undirected_neighbors(&self, v: Identity) -> impl Iterator<Item = Identity> + '_ {
        self.undirected.iter().filter_map(move |&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn undirected_degree(&self, v: Identity) -> usize {
        self.undirected_neighbors(v).count()
    }

    /// Sources of directed edges into `v`.
    pub fn incoming(&self, v: Identity) -> impl Iterator<Item = Identity> + '_ {
        self.directed.iter().filter(move |e| e.1 == v).map(|e| e.0)
    }

    /// Targets of directed edges out of `v`.
    pub fn outgoing(&self, v: Identity) -> impl Iterator<Item = Identity> + '_ {
        self.directed.iter().filter(move |e| e.0 == v).map(|e| e.1)
    }

    pub(crate) fn remove_vertex(&mut self, v: Identity) {
        self.vertices.remove(&v);
        self.undirected.retain(|&(a, b)| a != v && b != v);
        self.directed.retain(|&(a, b)| a != v && b != v);
    }

    pub(crate) fn flip_sign(&mut self, v: Identity) {
        if let Some(s) = self.vertices.get_mut(&v) {
            *s = s.flipped();
        }
    }

    /// The extended overlap graph of a legal or extended legal string.
    pub fn from_string(s: &GeneString) -> Result<SimpleMarkedGraph, StringError> {
        build_extended_overlap_graph(s)
    }

    /// Drops the directed edges, leaving the classical overlap graph.
    pub fn overlap_projection(&self) -> SimpleMarkedGraph {
        SimpleMarkedGraph { directed: BTreeSet::new(), ..self.clone() }
    }

    /// Drops the undirected edges, leaving the nesting relation.
    pub fn directed_projection(&self) -> SimpleMarkedGraph {
        SimpleMarkedGraph { undirected: BTreeSet::new(), ..self.clone() }
    }

    pub fn directed_properties(&self) -> DirectedProperties {
        DirectedProperties {
            acyclic: digraph::is_acyclic(&self.vertex_set(), &self.directed),
            transitively_closed: digraph::is_transitively_closed(&self.directed),
        }
    }

    /// Renames vertices. Vertices missing from `mapping` keep their name.
    pub fn relabel(&self, mapping: &BTreeMap<Identity, Identity>) -> Result<SimpleMarkedGraph, RelabelError> {
        for (&from, &to) in mapping {
            if !self.contains(from) {
                return Err(RelabelError::UnknownVertex(from));
            }
            if from.is_m() != to.is_m() {
                return Err(RelabelError::MovesM);
            }
        }
        let rename = |v: Identity| mapping.get(&v).copied().unwrap_or(v);
        let mut out = SimpleMarkedGraph::new();
        for (v, sign) in self.vertices() {
            out.add_vertex(rename(v), sign).map_err(|_| RelabelError::NotInjective(rename(v)))?;
        }
        out.undirected = self.undirected.iter().map(|&(a, b)| unordered(rename(a), rename(b))).collect();
        out.directed = self.directed.iter().map(|&(a, b)| (rename(a), rename(b))).collect();
        Ok(out)
    }
}

impl fmt::Display for SimpleMarkedGraph {
    /// `V: 2+ 3- m+ | U: 2-3 3-m | D: 4>2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("V:")?;
        for (v, s) in self.vertices() {
            write!(f, " {v}{s}")?;
        }
        f.write_str(" | U:")?;
        for (a, b) in &self.undirected {
            write!(f, " {a}-{b}")?;
        }
        f.write_str(" | D:")?;
        for (a, b) in &self.directed {
            write!(f, " {a}>{b}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphParseError {
    /// A section label or token that does not fit the text form.
    Malformed(alloc::string::String),
    Graph(GraphError),
}

impl fmt::Display for GraphParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphParseError::Malformed(token) => write!(f, "malformed graph text near `{token}`"),
            GraphParseError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for GraphParseError {}

impl FromStr for SimpleMarkedGraph {
    type Err = GraphParseError;

    /// Reads the form written by `Display`. The `U:` and `D:` sections may
    /// be omitted.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let malformed = |t: &str| GraphParseError::Malformed(t.into());
        let mut g = SimpleMarkedGraph::new();
        let mut edges = Vec::new();
        for section in text.split('|').map(str::trim) {
            let (label, body) = section.split_once(':').ok_or_else(|| malformed(section))?;
            let label = label.trim();
            for token in body.split_whitespace() {
                match label {
                    "V" => {
                        let (name, sign) = token.split_at(token.len().saturating_sub(1));
                        let sign = match sign {
                            "+" => Sign::Positive,
                            "-" => Sign::Negative,
                            _ => return Err(malformed(token)),
                        };
                        let id: Identity = name.parse().map_err(|_| malformed(token))?;
                        g.add_vertex(id, sign).map_err(GraphParseError::Graph)?;
                    }
                    "U" | "D" => {
                        let sep = if label == "U" { '-' } else { '>' };
                        let (a, b) = token.split_once(sep).ok_or_else(|| malformed(token))?;
                        let a: Identity = a.parse().map_err(|_| malformed(token))?;
                        let b: Identity = b.parse().map_err(|_| malformed(token))?;
                        edges.push((label == "U", a, b));
                    }
                    _ => return Err(malformed(label)),
                }
            }
        }
        for (undirected, a, b) in edges {
            let added = if undirected { g.add_undirected(a, b) } else { g.add_directed(a, b) };
            added.map_err(GraphParseError::Graph)?;
        }
        Ok(g)
    }
}

/// Builds the extended overlap graph: `q -> p` when `q` occurs twice inside
/// the `p`-interval, `q - p` when each occurs once inside the other's.
pub fn build_extended_overlap_graph(s: &GeneString) -> Result<SimpleMarkedGraph, StringError> {
    s.ensure_valid()?;
    let pairs = s.occurrence_pairs();
    let symbols = s.symbols();
    let mut g = SimpleMarkedGraph::new();
    for (&id, &(i, j)) in &pairs {
        let sign = if symbols[i].barred != symbols[j].barred { Sign::Positive } else { Sign::Negative };
        g.vertices.insert(id, sign);
    }
    for (&p, &(i, j)) in &pairs {
        let mut inside: BTreeMap<Identity, usize> = BTreeMap::new();
        for sym in &symbols[i + 1..j] {
            *inside.entry(sym.identity()).or_default() += 1;
        }
        for (q, count) in inside {
            match count {
                2 => {
                    g.directed.insert((q, p));
                }
                _ => {
                    g.undirected.insert(unordered(p, q));
                }
            }
        }
    }
    Ok(g)
}

pub fn overlap_projection(g: &SimpleMarkedGraph) -> SimpleMarkedGraph {
    g.overlap_projection()
}

pub fn directed_projection(g: &SimpleMarkedGraph) -> SimpleMarkedGraph {
    g.directed_projection()
}

pub fn directed_properties(g: &SimpleMarkedGraph) -> DirectedProperties {
    g.directed_properties()
}
