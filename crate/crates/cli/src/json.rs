//! JSON forms of strings, graphs, verdicts, traces and reports.
//!
//! A string is an array of `{"kind", "value", "barred"}` objects; a graph is
//! `{"vertices": [{"id", "sign"}], "undirected": [[x, y]], "directed": [[x, y]]}`
//! with pointer ids as numbers and `m` as the string `"m"`.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use ciliate_core::characterize::{OrderingCertificate, RuleSubset, SuccessVerdict};
use ciliate_core::graph_rules::GraphReductionTrace;
use ciliate_core::marked_graph::SimpleMarkedGraph;
use ciliate_core::oracle::{CrossValidationReport, EquivalenceReport, SimulationReport};
use ciliate_core::string_rules::ReductionTrace;
use ciliate_core::strings::{GeneString, Identity, Marker, Sign, Symbol, SymbolKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Name {
    Number(u32),
    Text(String),
}

impl From<Identity> for Name {
    fn from(id: Identity) -> Self {
        match id {
            Identity::Pointer(p) => Name::Number(p),
            Identity::M => Name::Text("m".into()),
        }
    }
}

impl TryFrom<&Name> for Identity {
    type Error = anyhow::Error;

    fn try_from(name: &Name) -> Result<Identity> {
        match name {
            Name::Number(p) if *p >= 2 => Ok(Identity::Pointer(*p)),
            Name::Number(p) => bail!("vertex id {p} is not a pointer (must be at least 2)"),
            Name::Text(t) if t == "m" => Ok(Identity::M),
            Name::Text(t) => bail!("unknown vertex id {t:?}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindJson {
    Pointer,
    Marker,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolJson {
    pub kind: KindJson,
    pub value: Name,
    pub barred: bool,
}

pub fn string_to_json(s: &GeneString) -> Vec<SymbolJson> {
    s.symbols()
        .iter()
        .map(|sym| match sym.kind {
            SymbolKind::Pointer(p) => SymbolJson { kind: KindJson::Pointer, value: Name::Number(p), barred: sym.barred },
            SymbolKind::Marker(m) => SymbolJson {
                kind: KindJson::Marker,
                value: Name::Text(m.letter().to_string()),
                barred: sym.barred,
            },
        })
        .collect()
}

pub fn string_from_json(symbols: &[SymbolJson]) -> Result<GeneString> {
    let mut out = Vec::with_capacity(symbols.len());
    for (i, sym) in symbols.iter().enumerate() {
        let symbol = match (&sym.kind, &sym.value) {
            (KindJson::Pointer, Name::Number(p)) if *p >= 2 => Symbol::pointer(*p, sym.barred),
            (KindJson::Marker, Name::Text(t)) if t == "b" => Symbol::marker(Marker::B, sym.barred),
            (KindJson::Marker, Name::Text(t)) if t == "e" => Symbol::marker(Marker::E, sym.barred),
            (kind, value) => bail!("symbol {i}: {kind:?} with value {value:?} is not a pointer >= 2, b or e"),
        };
        out.push(symbol);
    }
    Ok(GeneString::new(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: Name,
    pub sign: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub undirected: Vec<[Name; 2]>,
    pub directed: Vec<[Name; 2]>,
}

pub fn graph_to_json(g: &SimpleMarkedGraph) -> GraphJson {
    let pair = |&(a, b): &(Identity, Identity)| [Name::from(a), Name::from(b)];
    GraphJson {
        vertices: g.vertices().map(|(v, s)| VertexJson { id: v.into(), sign: s.to_string() }).collect(),
        undirected: g.undirected_edges().iter().map(pair).collect(),
        directed: g.directed_edges().iter().map(pair).collect(),
    }
}

pub fn graph_from_json(json: &GraphJson) -> Result<SimpleMarkedGraph> {
    let mut g = SimpleMarkedGraph::new();
    for v in &json.vertices {
        let sign = match v.sign.as_str() {
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            other => bail!("sign must be \"+\" or \"-\", not {other:?}"),
        };
        g.add_vertex(Identity::try_from(&v.id)?, sign)?;
    }
    for [a, b] in &json.undirected {
        g.add_undirected(a.try_into()?, b.try_into()?)?;
    }
    for [a, b] in &json.directed {
        g.add_directed(a.try_into()?, b.try_into()?)?;
    }
    Ok(g)
}

pub fn parse_string_json(text: &str) -> Result<GeneString> {
    let symbols: Vec<SymbolJson> = serde_json::from_str(text).context("string JSON")?;
    string_from_json(&symbols)
}

pub fn parse_graph_json(text: &str) -> Result<SimpleMarkedGraph> {
    let json: GraphJson = serde_json::from_str(text).context("graph JSON")?;
    graph_from_json(&json)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub ordering: Vec<Name>,
    /// Rule name for every pointer vertex, keyed by vertex.
    pub roles: BTreeMap<String, String>,
}

pub fn certificate_to_json(cert: &OrderingCertificate) -> CertificateJson {
    CertificateJson {
        ordering: cert.ordering.iter().map(|&v| v.into()).collect(),
        roles: cert
            .roles
            .iter()
            .map(|(p, &r)| (p.to_string(), ciliate_core::GraphRuleKind::from(r).to_string()))
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub rules_set: String,
    pub successful: bool,
    pub failed_condition: Option<String>,
    pub certificate: Option<CertificateJson>,
}

pub fn verdict_to_json(subset: RuleSubset, v: &SuccessVerdict) -> VerdictJson {
    VerdictJson {
        rules_set: subset.to_string(),
        successful: v.successful,
        failed_condition: v.failed_condition.map(|c| c.tag().to_string()),
        certificate: v.certificate.as_ref().map(certificate_to_json),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson<T> {
    pub rule: String,
    pub result: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson<T> {
    pub initial: T,
    pub steps: Vec<StepJson<T>>,
    pub success: bool,
}

pub fn string_trace_to_json(t: &ReductionTrace) -> TraceJson<String> {
    TraceJson {
        initial: t.initial.to_string(),
        steps: t.steps.iter().map(|s| StepJson { rule: s.rule.to_string(), result: s.result.to_string() }).collect(),
        success: t.success,
    }
}

pub fn graph_trace_to_json(t: &GraphReductionTrace) -> TraceJson<GraphJson> {
    TraceJson {
        initial: graph_to_json(&t.initial),
        steps: t
            .steps
            .iter()
            .map(|s| StepJson { rule: s.rule.to_string(), result: graph_to_json(&s.result) })
            .collect(),
        success: t.success,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SimulationViolationJson {
    pub string: String,
    pub pointer: u32,
    pub rule: String,
    pub problem: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimulationJson {
    pub strings: usize,
    pub checks: usize,
    pub commuting: usize,
    pub violations: Vec<SimulationViolationJson>,
}

pub fn simulation_to_json(r: &SimulationReport) -> SimulationJson {
    SimulationJson {
        strings: r.strings,
        checks: r.checks,
        commuting: r.commuting,
        violations: r
            .violations
            .iter()
            .map(|v| SimulationViolationJson {
                string: v.string.to_string(),
                pointer: v.pointer,
                rule: format!("{:?}", v.rule).to_lowercase(),
                problem: format!("{:?}", v.problem),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DisagreementJson {
    pub string: String,
    pub rules_set: String,
    pub checker: String,
    pub claimed: bool,
    pub oracle: bool,
    pub m_outgoing: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateFailureJson {
    pub string: String,
    pub rules_set: String,
    pub source: String,
    pub certificate: CertificateJson,
    pub problem: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossValidationJson {
    pub strings: usize,
    pub checks: usize,
    pub oracle_successes: usize,
    pub corrected_agreements: usize,
    pub literal_agreements: usize,
    pub certificates_replayed: usize,
    pub disagreements: Vec<DisagreementJson>,
    pub certificate_failures: Vec<CertificateFailureJson>,
}

pub fn cross_validation_to_json(r: &CrossValidationReport) -> CrossValidationJson {
    CrossValidationJson {
        strings: r.strings,
        checks: r.checks,
        oracle_successes: r.oracle_successes,
        corrected_agreements: r.corrected_agreements,
        literal_agreements: r.literal_agreements,
        certificates_replayed: r.certificates_replayed,
        disagreements: r
            .disagreements
            .iter()
            .map(|d| DisagreementJson {
                string: d.string.to_string(),
                rules_set: d.subset.to_string(),
                checker: format!("{:?}", d.checker).to_lowercase(),
                claimed: d.claimed,
                oracle: d.oracle,
                m_outgoing: d.m_outgoing,
            })
            .collect(),
        certificate_failures: r
            .certificate_failures
            .iter()
            .map(|f| CertificateFailureJson {
                string: f.string.to_string(),
                rules_set: f.subset.to_string(),
                source: format!("{:?}", f.source),
                certificate: certificate_to_json(&f.certificate),
                problem: format!("{:?}", f.problem),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceJson {
    pub strings: usize,
    pub successes: usize,
    pub mismatches: Vec<String>,
}

pub fn equivalence_to_json(r: &EquivalenceReport) -> EquivalenceJson {
    EquivalenceJson {
        strings: r.strings,
        successes: r.successes,
        mismatches: r.mismatches.iter().map(|s| s.to_string()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        let s: GeneString = "5 -2 4 4 -5 3 -6 2 6 b 3 -e".parse().unwrap();
        let text = serde_json::to_string(&string_to_json(&s)).unwrap();
        assert!(text.starts_with(r#"[{"kind":"pointer","value":5,"barred":false},"#));
        assert!(text.contains(r#"{"kind":"marker","value":"e","barred":true}"#));
        assert_eq!(parse_string_json(&text).unwrap(), s);
    }

    #[test]
    fn graph_round_trip() {
        let s: GeneString = "-4 2 3 -2 4 -e -3 b".parse().unwrap();
        let g = SimpleMarkedGraph::from_string(&s).unwrap();
        let text = serde_json::to_string(&graph_to_json(&g)).unwrap();
        assert_eq!(
            text,
            r#"{"vertices":[{"id":2,"sign":"+"},{"id":3,"sign":"+"},{"id":4,"sign":"+"},{"id":"m","sign":"+"}],"undirected":[[2,3],[3,4],[3,"m"]],"directed":[[2,4]]}"#
        );
        assert_eq!(parse_graph_json(&text).unwrap(), g);
    }

    #[test]
    fn bad_json_is_rejected() {
        assert!(parse_string_json(r#"[{"kind":"pointer","value":1,"barred":false}]"#).is_err());
        assert!(parse_string_json(r#"[{"kind":"marker","value":"x","barred":false}]"#).is_err());
        assert!(parse_graph_json(r#"{"vertices":[{"id":2,"sign":"?"}],"undirected":[],"directed":[]}"#).is_err());
        assert!(parse_graph_json(r#"{"vertices":[{"id":2,"sign":"+"}],"undirected":[[2,"m"]],"directed":[]}"#).is_err());
    }
}
