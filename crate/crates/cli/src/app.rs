use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ciliate_core::characterize::{
    check_success, enumerate_successful_orderings, literal_theorem_check, CharacterizeError, RuleSubset,
    DEFAULT_ENUMERATION_CAP,
};
use ciliate_core::graph_rules::{apply_graph_reduction, parse_graph_rule_list};
use ciliate_core::marked_graph::{DirectedProperties, SimpleMarkedGraph};
use ciliate_core::oracle::{
    brute_force_graph, brute_force_string, check_subsystem_equivalence, cross_validate_strings,
    enumerate_extended_legal_strings, random_extended_legal_string, verify_simulation, Checker,
    CrossValidationReport, EquivalenceReport, ExplorationOrder, OracleError, SearchConfig, SimulationReport,
    DEFAULT_STATE_CAP,
};
use ciliate_core::string_rules::{apply_reduction, parse_rule_list, RuleKind, RuleSet};
use ciliate_core::strings::{GeneString, Validity};

use crate::dot::to_dot;
use crate::input::Input;
use crate::json;

#[derive(Parser, Debug)]
#[command(name = "ciliate", version, about = "String and graph rewriting for simple gene assembly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// A gene string such as "b 2 -3 2 3 e", a graph in text form
    /// ("V: 2+ m- | U: 2-m | D:"), or either in JSON.
    input: Option<String>,
    /// Read the input from a file instead.
    #[arg(long)]
    file: Option<PathBuf>,
    /// An MDS descriptor such as "M3 -M2 M1".
    #[arg(long)]
    mds: Option<String>,
}

impl Source {
    fn read(&self) -> Result<Input> {
        match (&self.input, &self.file, &self.mds) {
            (Some(text), _, _) => Input::parse(text),
            (_, Some(path), _) => Input::read_file(path),
            (_, _, Some(descriptor)) => Input::from_mds(descriptor),
            _ => bail!("no input given"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Projection {
    Full,
    Overlap,
    Nesting,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the input as legal, extended legal or invalid.
    Validate {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the input string, e.g. the string of an MDS descriptor.
    Convert {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the extended overlap graph or one of its projections.
    Graph {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, value_enum, default_value = "full")]
        projection: Projection,
    },
    /// Apply a list of rules and print the trace.
    Reduce {
        #[command(flatten)]
        source: Source,
        /// Comma separated rules: "snr:4, sspr:-6" or "gnr:4, sgpr:6".
        #[arg(long)]
        rules: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Search exhaustively for a successful reduction.
    Search {
        #[command(flatten)]
        source: Source,
        /// simple, general, a list of string rule kinds, or a subset of
        /// gnr,sgpr to search on the graph.
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        state_cap: usize,
        /// Shuffle the exploration order with this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide graph success in a subset of {gnr, sgpr} from closed-form conditions.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long = "rules-set", default_value = "gnr,sgpr")]
        rules_set: RuleSubset,
        /// Use the conditions as usually stated, without the m-outgoing requirement.
        #[arg(long)]
        literal: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List every successful ordering.
    Orderings {
        #[command(flatten)]
        source: Source,
        #[arg(long = "rules-set", default_value = "gnr,sgpr")]
        rules_set: RuleSubset,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the rules and the characterization against brute force.
    Verify {
        /// Largest pointer count checked exhaustively, or the pointer count
        /// of the random sample.
        #[arg(long)]
        k: usize,
        /// Check only the simulation, nesting and subsystem properties.
        #[arg(long, conflicts_with = "theorems")]
        lemmas: bool,
        /// Check only the success characterization.
        #[arg(long)]
        theorems: bool,
        /// Check this many random strings with exactly k pointers instead.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Verdict of a command that succeeded in running.
enum Verdict {
    True,
    False,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

fn inconclusive(e: &anyhow::Error) -> bool {
    e.chain().any(|cause| {
        matches!(
            cause.downcast_ref::<OracleError>(),
            Some(OracleError::Inconclusive { .. } | OracleError::CapExceeded { .. })
        ) || matches!(cause.downcast_ref::<CharacterizeError>(), Some(CharacterizeError::EnumerationCap { .. }))
    })
}

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 for a true verdict, 1 for a false one, 2 for bad input and 3
/// when a cap was reached.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(Verdict::True) => 0,
        Ok(Verdict::False) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            if inconclusive(&e) {
                3
            } else {
                2
            }
        }
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn no_dot(format: Format) -> Result<()> {
    if format == Format::Dot {
        bail!("--format dot is only available for the graph command");
    }
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<Verdict> {
    match command {
        Command::Validate { source, format } => validate(&source.read()?, format, out),
        Command::Convert { source, format } => convert(&source.read()?, format, out),
        Command::Graph { source, format, projection } => graph(&source.read()?, format, projection, out),
        Command::Reduce { source, rules, format } => reduce(&source.read()?, &rules, format, out),
        Command::Search { source, system, state_cap, seed, format } => {
            let order = seed.map_or(ExplorationOrder::Canonical, ExplorationOrder::Shuffled);
            search(&source.read()?, &system, SearchConfig { state_cap, order }, format, out)
        }
        Command::Check { source, rules_set, literal, format } => {
            check(&source.read()?, rules_set, literal, format, out)
        }
        Command::Orderings { source, rules_set, cap, format } => {
            orderings(&source.read()?, rules_set, cap, format, out)
        }
        Command::Verify { k, lemmas, theorems, sample, seed, format } => {
            let (lemmas, theorems) = if lemmas || theorems { (lemmas, theorems) } else { (true, true) };
            verify(k, lemmas, theorems, sample.map(|n| (n, seed)), format, out)
        }
    }
}

#[derive(Serialize)]
struct ValidationJson {
    string: String,
    validity: &'static str,
    reason: Option<String>,
    domain: Vec<json::Name>,
    signs: Vec<(json::Name, String)>,
}

fn validate(input: &Input, format: Format, out: &mut dyn Write) -> Result<Verdict> {
    no_dot(format)?;
    let Input::String(s) = input else {
        bail!("validate needs a string, not a graph");
    };
    let validity = s.validity();
    let signs: Vec<_> = if s.is_valid() {
        s.domain().into_iter().map(|id| (id, s.sign_of(id).expect("identity of a valid string"))).collect()
    } else {
        Vec::new()
    };
    match format {
        Format::Json => {
            let (name, reason) = match validity {
                Validity::Legal => ("legal", None),
                Validity::ExtendedLegal => ("extended-legal", None),
                Validity::Invalid(r) => ("invalid", Some(r.to_string())),
            };
            emit_json(
                out,
                &ValidationJson {
                    string: s.to_string(),
                    validity: name,
                    reason,
                    domain: s.domain().into_iter().map(Into::into).collect(),
                    signs: signs.iter().map(|&(id, sign)| (id.into(), sign.to_string())).collect(),
                },
            )?;
        }
        _ => {
            writeln!(out, "{validity}")?;
            if s.is_valid() {
                let signs: Vec<String> = signs.iter().map(|(id, sign)| format!("{id}{sign}")).collect();
                writeln!(out, "dom: {}", signs.join(" "))?;
            }
        }
    }
    Ok(s.is_valid().into())
}

fn convert(input: &Input, format: Format, out: &mut dyn Write) -> Result<Verdict> {
    no_dot(format)?;
    let Input::String(s) = input else {
        bail!("convert needs a string or an MDS descriptor, not a graph");
    };
    match format {
        Format::Json => emit_json(out, &json::string_to_json(s))?,
        _ => writeln!(out, "{s}")?,
    }
    Ok(Verdict::True)
}

fn graph(input: &Input, format: Format, projection: Projection, out: &mut dyn Write) -> Result<Verdict> {
    let g = input.graph()?;
    let g = match projection {
        Projection::Full => g,
        Projection::Overlap => g.overlap_projection(),
        Projection::Nesting => g.directed_projection(),
    };
    match format {
        Format::Text => writeln!(out, "{g}")?,
        Format::Json => emit_json(out, &json::graph_to_json(&g))?,
        Format::Dot => write!(out, "{}", to_dot(&g))?,
    }
    Ok(Verdict::True)
}

fn reduce(input: &Input, rules: &str, format: Format, out: &mut dyn Write) -> Result<Verdict> {
    no_dot(format)?;
    match input {
        Input::String(s) => {
            input.valid_string()?;
            let rules = parse_rule_list(rules)?;
            let (trace, failure) = match apply_reduction(s, &rules) {
                Ok(trace) => (trace, None),
                Err(f) => (f.partial.clone(), Some(f)),
            };
            if format == Format::Json {
                emit_json(out, &json::string_trace_to_json(&trace))?;
            } else {
                writeln!(out, "{}", trace.initial)?;
                for step in &trace.steps {
                    writeln!(out, "{} -> {}", step.rule, step.result)?;
                }
            }
            if let Some(f) = failure {
                writeln!(out, "stopped at step {}: {}", f.step + 1, f.error)?;
                return Ok(Verdict::False);
            }
            if format == Format::Text {
                writeln!(out, "{}", if trace.success { "successful" } else { "not successful" })?;
            }
            Ok(trace.success.into())
        }
        Input::Graph(g) => {
            let rules = parse_graph_rule_list(rules)?;
            let (trace, failure) = match apply_graph_reduction(g, &rules) {
                Ok(trace) => (trace, None),
                Err(f) => (f.partial.clone(), Some(f)),
            };
            if format == Format::Json {
                emit_json(out, &json::graph_trace_to_json(&trace))?;
            } else {
                writeln!(out, "{}", trace.initial)?;
                for step in &trace.steps {
                    writeln!(out, "{} -> {}", step.rule, step.result)?;
                }
            }
            if let Some(f) = failure {
                writeln!(out, "stopped at step {}: {}", f.step + 1, f.error)?;
                return Ok(Verdict::False);
            }
            if format == Format::Text {
                writeln!(out, "{}", if trace.success { "successful" } else { "not successful" })?;
            }
            Ok(trace.success.into())
        }
    }
}

enum System {
    Strings(RuleSet),
    Graph(RuleSubset),
}

fn parse_system(text: &str) -> Result<System> {
    match text.trim().to_ascii_lowercase().as_str() {
        "simple" => return Ok(System::Strings(RuleSet::SIMPLE)),
        "general" => return Ok(System::Strings(RuleSet::GENERAL)),
        _ => {}
    }
    let kinds: Result<RuleSet, _> = text.split(',').map(|t| t.trim().parse::<RuleKind>()).collect();
    if let Ok(kinds) = kinds {
        return Ok(System::Strings(kinds));
    }
    text.parse::<RuleSubset>()
        .map(System::Graph)
        .map_err(|_| anyhow!("unknown system `{text}`: use simple, general, string rule kinds or gnr,sgpr"))
}

#[derive(Serialize)]
struct SearchJson<T> {
    successful: bool,
    states_explored: usize,
    witness: Option<json::TraceJson<T>>,
}

fn search(input: &Input, system: &str, config: SearchConfig, format: Format, out: &mut dyn Write) -> Result<Verdict> {
    no_dot(format)?;
    match parse_system(system)? {
        System::Strings(rules) => {
            let s = input.valid_string()?;
            let result = brute_force_string(s, rules, config)?;
            if format == Format::Json {
                let witness = result.witness.as_ref().map(json::string_trace_to_json);
                emit_json(
                    out,
                    &SearchJson { successful: result.successful, states_explored: result.states_explored, witness },
                )?;
            } else {
                writeln!(out, "{}", if result.successful { "successful" } else { "unsuccessful" })?;
                if let Some(w) = &result.witness {
                    let rules: Vec<String> = w.rules().map(|r| r.to_string()).collect();
                    writeln!(out, "witness: {}", rules.join(", "))?;
                    for step in &w.steps {
                        writeln!(out, "{} -> {}", step.rule, step.result)?;
                    }
                }
                writeln!(out, "states explored: {}", result.states_explored)?;
            }
            Ok(result.successful.into())
        }
        System::Graph(subset) => {
            let g = input.graph()?;
            let result = brute_force_graph(&g, subset, config)?;
            if format == Format::Json {
                let witness = result.witness.as_ref().map(json::graph_trace_to_json);
                emit_json(
                    out,
                    &SearchJson { successful: result.successful, states_explored: result.states_explored, witness },
                )?;
            } else {
                writeln!(out, "{}", if result.successful { "successful" } else { "unsuccessful" })?;
                if let Some(w) = &result.witness {
                    let rules: Vec<String> = w.rules().map(|r| r.to_string()).collect();
                    writeln!(out, "witness: {}", rules.join(", "))?;
                }
                writeln!(out, "states explored: {}", result.states_explored)?;
            }
            Ok(result.successful.into())
        }
    }
}

fn ordering_text(ordering: &[ciliate_core::Identity]) -> String {
    let names: Vec<String> = ordering.iter().map(|v| v.to_string()).collect();
    format!("({})", names.join(","))
}

#[derive(Serialize)]
struct LiteralJson {
    rules_set: String,
    literal: bool,
    successful: bool,
}

fn check(input: &Input, subset: RuleSubset, literal: bool, format: Format, out: &mut dyn Write) -> Result<Verdict> {
    no_dot(format)?;
    let g = input.graph()?;
    if literal {
        let successful = literal_theorem_check(&g, subset)?;
        if format == Format::Json {
            emit_json(out, &LiteralJson { rules_set: subset.to_string(), literal: true, successful })?;
        } else {
            writeln!(out, "{}", if successful { "successful" } else { "unsuccessful" })?;
        }
        return Ok(successful.into());
    }
    let verdict = check_success(&g, subset)?;
    if format == Format::Json {
        emit_json(out, &json::verdict_to_json(subset, &verdict))?;
    } else {
        writeln!(out, "{}", if verdict.successful { "successful" } else { "unsuccessful" })?;
        if let Some(c) = &verdict.failed_condition {
            writeln!(out, "failed condition: {c}")?;
        }
        if let Some(cert) = &verdict.certificate {
            writeln!(out, "certificate: {}", ordering_text(&cert.ordering))?;
            writeln!(out, "rules: {cert}")?;
        }
    }
    Ok(verdict.successful.into())
}

fn orderings(input: &Input, subset: RuleSubset, cap: usize, format: Format, out: &mut dyn Write) -> Result<Verdict> {
    no_dot(format)?;
    let g = input.graph()?;
    let found = enumerate_successful_orderings(&g, subset, cap)?;
    if format == Format::Json {
        let certs: Vec<_> = found.iter().map(json::certificate_to_json).collect();
        emit_json(out, &certs)?;
    } else {
        for cert in &found {
            writeln!(out, "{}  {cert}", ordering_text(&cert.ordering))?;
        }
        writeln!(out, "{} successful ordering{}", found.len(), if found.len() == 1 { "" } else { "s" })?;
    }
    Ok((!found.is_empty()).into())
}

#[derive(Serialize)]
struct LemmasJson {
    simulation: json::SimulationJson,
    nesting_violations: Vec<String>,
    subsystem: json::EquivalenceJson,
}

#[derive(Serialize)]
struct VerifyJson {
    corpus: String,
    lemmas: Option<LemmasJson>,
    theorems: Option<json::CrossValidationJson>,
    passed: bool,
}

fn corpus(k: usize, sample: Option<(u64, u64)>) -> Result<(String, Vec<GeneString>)> {
    match sample {
        Some((n, seed)) => Ok((
            format!("{n} random strings with k = {k}, seed {seed}"),
            (0..n).map(|i| random_extended_legal_string(k, seed.wrapping_add(i))).collect(),
        )),
        None => {
            let mut all = Vec::new();
            for j in 0..=k {
                all.extend(enumerate_extended_legal_strings(j)?);
            }
            Ok((format!("all {} strings with k <= {k}", all.len()), all))
        }
    }
}

fn literal_gap_only(report: &CrossValidationReport) -> bool {
    report.of(Checker::Literal).all(|d| d.subset.gnr && d.m_outgoing)
}

fn verify(
    k: usize,
    lemmas: bool,
    theorems: bool,
    sample: Option<(u64, u64)>,
    format: Format,
    out: &mut dyn Write,
) -> Result<Verdict> {
    no_dot(format)?;
    let (description, strings) = corpus(k, sample)?;
    let mut passed = true;
    let mut lemma_results: Option<(SimulationReport, Vec<GeneString>, EquivalenceReport)> = None;
    if lemmas {
        let mut simulation = SimulationReport::default();
        let mut nesting = Vec::new();
        let closed = DirectedProperties { acyclic: true, transitively_closed: true };
        for s in &strings {
            simulation.merge(verify_simulation(s)?);
            if SimpleMarkedGraph::from_string(s)?.directed_properties() != closed {
                nesting.push(s.clone());
            }
        }
        let subsystem = check_subsystem_equivalence(strings.iter().cloned())?;
        passed &= simulation.passed() && nesting.is_empty() && subsystem.mismatches.is_empty();
        lemma_results = Some((simulation, nesting, subsystem));
    }
    let theorem_report = if theorems {
        let report = cross_validate_strings(strings.iter().cloned())?;
        passed &= report.corrected_passed() && literal_gap_only(&report);
        Some(report)
    } else {
        None
    };

    if format == Format::Json {
        let lemmas = lemma_results.as_ref().map(|(sim, nesting, sub)| LemmasJson {
            simulation: json::simulation_to_json(sim),
            nesting_violations: nesting.iter().map(|s| s.to_string()).collect(),
            subsystem: json::equivalence_to_json(sub),
        });
        let theorems = theorem_report.as_ref().map(json::cross_validation_to_json);
        emit_json(out, &VerifyJson { corpus: description, lemmas, theorems, passed })?;
        return Ok(passed.into());
    }

    writeln!(out, "corpus: {description}")?;
    if let Some((sim, nesting, sub)) = &lemma_results {
        writeln!(out, "{:<28} {:>10} {:>12}", "lemma", "checked", "violations")?;
        writeln!(out, "{:<28} {:>10} {:>12}", "snr/gnr, sspr/sgpr", sim.checks, sim.violations.len())?;
        writeln!(out, "{:<28} {:>10} {:>12}", "nesting acyclic and closed", strings.len(), nesting.len())?;
        writeln!(out, "{:<28} {:>10} {:>12}", "{snr,sspr} = {gnr,sgpr}", sub.strings, sub.mismatches.len())?;
        for v in &sim.violations {
            writeln!(out, "  simulation: {} pointer {} {:?}: {:?}", v.string, v.pointer, v.rule, v.problem)?;
        }
        for s in nesting {
            writeln!(out, "  nesting: {s}")?;
        }
        for s in &sub.mismatches {
            writeln!(out, "  subsystem: {s}")?;
        }
    }
    if let Some(r) = &theorem_report {
        writeln!(out, "{:<28} {:>10} {:>12}", "characterization", "agree", "disagree")?;
        for (name, checker, agree) in [
            ("corrected", Checker::Corrected, r.corrected_agreements),
            ("literal", Checker::Literal, r.literal_agreements),
            ("enumeration", Checker::Enumeration, r.checks - r.of(Checker::Enumeration).count()),
        ] {
            writeln!(out, "{:<28} {:>10} {:>12}", name, agree, r.of(checker).count())?;
        }
        writeln!(out, "{:<28} {:>10} {:>12}", "certificates replayed", r.certificates_replayed, r.certificate_failures.len())?;
        if r.of(Checker::Literal).next().is_some() {
            let verdict = if literal_gap_only(r) { "all" } else { "NOT all" };
            writeln!(out, "literal disagreements: {verdict} have gnr allowed and an edge leaving m")?;
        }
        for d in r.of(Checker::Corrected).chain(r.of(Checker::Enumeration)) {
            writeln!(out, "  {:?}: {} {} claimed {} oracle {}", d.checker, d.string, d.subset, d.claimed, d.oracle)?;
        }
    }
    writeln!(out, "{}", if passed { "PASS" } else { "FAIL" })?;
    Ok(passed.into())
}
