//! Reading strings and graphs from the command line or a file.
//!
//! Text starting with `[` is a JSON string, `{` a JSON graph, `V:` a graph
//! in text form; anything else is a gene string in token form.

use anyhow::{bail, Context, Result};

use ciliate_core::marked_graph::SimpleMarkedGraph;
use ciliate_core::strings::{GeneString, MdsDescriptor};

use crate::json;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    String(GeneString),
    Graph(SimpleMarkedGraph),
}

impl Input {
    pub fn parse(text: &str) -> Result<Input> {
        let text = text.trim();
        if text.starts_with('[') {
            Ok(Input::String(json::parse_string_json(text)?))
        } else if text.starts_with('{') {
            Ok(Input::Graph(json::parse_graph_json(text)?))
        } else if text.starts_with("V:") {
            Ok(Input::Graph(text.parse().context("graph text")?))
        } else {
            Ok(Input::String(text.parse().context("gene string")?))
        }
    }

    pub fn from_mds(descriptor: &str) -> Result<Input> {
        let d: MdsDescriptor = descriptor.parse().context("MDS descriptor")?;
        Ok(Input::String(d.to_gene_string()))
    }

    pub fn read_file(path: &std::path::Path) -> Result<Input> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Input::parse(&text)
    }

    /// The input string, which must be legal or extended legal.
    pub fn valid_string(&self) -> Result<&GeneString> {
        match self {
            Input::String(s) if s.is_valid() => Ok(s),
            Input::String(s) => bail!("`{s}` is {}", s.validity()),
            Input::Graph(_) => bail!("this command needs a string, not a graph"),
        }
    }

    /// The input graph, or the extended overlap graph of the input string.
    pub fn graph(&self) -> Result<SimpleMarkedGraph> {
        match self {
            Input::Graph(g) => Ok(g.clone()),
            Input::String(s) => {
                SimpleMarkedGraph::from_string(s).with_context(|| format!("no overlap graph for `{s}`"))
            }
        }
    }
}
