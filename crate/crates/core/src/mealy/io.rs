use serde::{Deserialize, Serialize};

use super::{MealyAutomaton, Transition};
use crate::error::{Error, Result};
use crate::symbol::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionRecord {
    pub state: String,
    pub input: String,
    pub next: String,
    pub output: String,
}

/// On-disk form of an automaton (JSON).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonFile {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sink: Option<String>,
    pub transitions: Vec<TransitionRecord>,
}

impl AutomatonFile {
    pub fn into_automaton(self) -> Result<MealyAutomaton> {
        let transitions: Vec<Transition> = self
            .transitions
            .iter()
            .map(|t| Transition::new(&t.state, &t.input, &t.output, &t.next))
            .collect();
        MealyAutomaton::new(
            self.states.iter().map(|s| Symbol::parse(s)).collect(),
            self.alphabet.iter().map(|s| Symbol::parse(s)).collect(),
            &transitions,
            self.sink.as_deref().map(Symbol::parse),
        )
    }
}

impl From<&MealyAutomaton> for AutomatonFile {
    fn from(aut: &MealyAutomaton) -> Self {
        AutomatonFile {
            states: aut.states().iter().map(ToString::to_string).collect(),
            alphabet: aut.alphabet().iter().map(ToString::to_string).collect(),
            sink: aut.sink().map(|s| aut.state(s).to_string()),
            transitions: aut
                .transitions()
                .map(|t| TransitionRecord {
                    state: t.state.to_string(),
                    input: t.input.to_string(),
                    next: t.next.to_string(),
                    output: t.output.to_string(),
                })
                .collect(),
        }
    }
}

impl MealyAutomaton {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: AutomatonFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_automaton()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AutomatonFile::from(self)).expect("serializable")
    }
}
