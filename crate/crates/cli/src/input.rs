use std::path::{Path, PathBuf};

use clap::Args;
use selfsim::fixtures::{builtin, Fixture};
use selfsim::{Error, MealyAutomaton, OrientedGraph};
use sha2::{Digest, Sha256};

use crate::Failure;

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Built-in fixture name (star3, path_N, cycle_N, cycle_N_acyclic,
    /// fig5_tree, adding_machine, basilica, non_reducible_demo)
    #[arg(long)]
    pub builtin: Option<String>,
    /// Automaton in JSON form
    #[arg(long)]
    pub automaton: Option<PathBuf>,
    /// Graph as `name tail head` lines
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

/// Same sources as [`Input`], all optional.
#[derive(Debug, Clone, Args)]
#[group(required = false, multiple = false)]
pub struct OptionalInput {
    #[arg(long)]
    pub builtin: Option<String>,
    #[arg(long)]
    pub automaton: Option<PathBuf>,
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

impl OptionalInput {
    pub fn into_input(self) -> Option<Input> {
        if self.builtin.is_none() && self.automaton.is_none() && self.graph.is_none() {
            return None;
        }
        Some(Input {
            builtin: self.builtin,
            automaton: self.automaton,
            graph: self.graph,
        })
    }
}

pub struct Loaded {
    pub automaton: MealyAutomaton,
    pub graph: Option<OrientedGraph>,
    /// `kind:name-or-path sha256`
    pub digest: String,
}

impl Loaded {
    pub fn graph(&self) -> Result<&OrientedGraph, Failure> {
        self.graph.as_ref().ok_or_else(|| {
            Failure::from(Error::InvalidGraph(
                "this command needs a graph input (--graph or a graph fixture)".into(),
            ))
        })
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new("Io", format!("cannot read {}: {e}", path.display())))
}

pub fn file_digest(kind: &str, path: &Path, text: &str) -> String {
    format!("{kind}:{} {}", path.display(), sha256_hex(text.as_bytes()))
}

pub fn load(input: &Input) -> Result<Loaded, Failure> {
    if let Some(name) = &input.builtin {
        let fixture = builtin(name)?;
        let canonical = match &fixture {
            Fixture::Graph(g) => g.to_text(),
            Fixture::Automaton(a) => a.to_json(),
        };
        return Ok(Loaded {
            automaton: fixture.automaton()?,
            graph: fixture.graph().cloned(),
            digest: format!("builtin:{name} {}", sha256_hex(canonical.as_bytes())),
        });
    }
    if let Some(path) = &input.automaton {
        let text = read_file(path)?;
        let automaton = MealyAutomaton::from_json(&text)?;
        return Ok(Loaded {
            automaton,
            graph: None,
            digest: file_digest("automaton", path, &text),
        });
    }
    let path = input.graph.as_ref().expect("clap enforces one input");
    let text = read_file(path)?;
    let graph = OrientedGraph::parse(&text)?;
    Ok(Loaded {
        automaton: selfsim::build_graph_automaton(&graph)?,
        graph: Some(graph),
        digest: file_digest("graph", path, &text),
    })
}
