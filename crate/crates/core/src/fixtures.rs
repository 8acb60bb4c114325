//! Built-in graphs and automata, addressed by name.

use crate::error::{Error, Result};
use crate::graphgroup::{build_graph_automaton, OrientedGraph};
use crate::mealy::{MealyAutomaton, Transition};
use crate::symbol::Symbol;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    Graph(OrientedGraph),
    Automaton(MealyAutomaton),
}

impl Fixture {
    pub fn automaton(&self) -> Result<MealyAutomaton> {
        match self {
            Fixture::Graph(g) => build_graph_automaton(g),
            Fixture::Automaton(a) => Ok(a.clone()),
        }
    }

    pub fn graph(&self) -> Option<&OrientedGraph> {
        match self {
            Fixture::Graph(g) => Some(g),
            Fixture::Automaton(_) => None,
        }
    }
}

/// Names accepted by [`builtin`]; `N` stands for a vertex count.
pub const NAMES: &[&str] = &[
    "star3",
    "path_N",
    "cycle_N",
    "cycle_N_acyclic",
    "fig5_tree",
    "adding_machine",
    "basilica",
    "non_reducible_demo",
];

pub fn builtin(name: &str) -> Result<Fixture> {
    let unknown = || Error::UnknownFixture(name.to_string());
    let sized = |prefix: &str, min: usize| -> Option<Result<usize>> {
        let n = name.strip_prefix(prefix)?;
        Some(match n.parse::<usize>() {
            Ok(n) if n >= min => Ok(n),
            _ => Err(unknown()),
        })
    };
    if let Some(n) = name
        .strip_suffix("_acyclic")
        .and_then(|base| base.strip_prefix("cycle_"))
    {
        let n: usize = n.parse().ok().filter(|&n| n >= 3).ok_or_else(unknown)?;
        return Ok(Fixture::Graph(cycle(n, false)));
    }
    if let Some(n) = sized("path_", 2) {
        return Ok(Fixture::Graph(path(n?)));
    }
    if let Some(n) = sized("cycle_", 3) {
        return Ok(Fixture::Graph(cycle(n?, true)));
    }
    match name {
        "star3" => Ok(Fixture::Graph(star3())),
        "fig5_tree" => Ok(Fixture::Graph(fig5_tree())),
        "adding_machine" => Ok(Fixture::Graph(
            OrientedGraph::from_edges(&[("e", "0", "1")]).expect("valid"),
        )),
        "basilica" => Ok(Fixture::Automaton(basilica())),
        "non_reducible_demo" => Ok(Fixture::Automaton(non_reducible_demo())),
        _ => Err(unknown()),
    }
}

/// Star with centre 0 and edges a = (0,1), b = (0,2), c = (0,3).
pub fn star3() -> OrientedGraph {
    OrientedGraph::from_edges(&[("a", "0", "1"), ("b", "0", "2"), ("c", "0", "3")]).expect("valid")
}

/// Six-vertex tree e1=(1,2), e2=(2,3), e3=(2,4), e4=(1,5), e5=(5,6).
pub fn fig5_tree() -> OrientedGraph {
    OrientedGraph::from_edges(&[
        ("e1", "1", "2"),
        ("e2", "2", "3"),
        ("e3", "2", "4"),
        ("e4", "1", "5"),
        ("e5", "5", "6"),
    ])
    .expect("valid")
}

fn numbered_edges(pairs: &[(usize, usize)]) -> OrientedGraph {
    let owned: Vec<(String, String, String)> = pairs
        .iter()
        .enumerate()
        .map(|(i, (t, h))| (format!("e{}", i + 1), t.to_string(), h.to_string()))
        .collect();
    let borrowed: Vec<(&str, &str, &str)> = owned
        .iter()
        .map(|(n, t, h)| (n.as_str(), t.as_str(), h.as_str()))
        .collect();
    OrientedGraph::from_edges(&borrowed).expect("valid")
}

/// Path on vertices 1..n with e_i = (i, i+1).
pub fn path(n: usize) -> OrientedGraph {
    numbered_edges(&(1..n).map(|i| (i, i + 1)).collect::<Vec<_>>())
}

/// Cycle on vertices 1..n with e_i = (i, i+1). The closing edge is (n, 1)
/// when `oriented`, giving an oriented cycle, and (1, n) otherwise.
pub fn cycle(n: usize, oriented: bool) -> OrientedGraph {
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
    pairs.push(if oriented { (n, 1) } else { (1, n) });
    numbered_edges(&pairs)
}

fn automaton(states: &[&str], rows: &[(&str, &str, &str, &str)]) -> MealyAutomaton {
    let transitions: Vec<Transition> = rows
        .iter()
        .map(|&(s, x, y, t)| Transition::new(s, x, y, t))
        .collect();
    MealyAutomaton::new(
        states.iter().map(|s| Symbol::new(*s)).collect(),
        vec![Symbol::new("0"), Symbol::new("1")],
        &transitions,
        Some(Symbol::new("id")),
    )
    .expect("valid")
}

/// a = (b, id)σ, b = (a, id).
pub fn basilica() -> MealyAutomaton {
    automaton(
        &["a", "b", "id"],
        &[
            ("a", "0", "1", "b"),
            ("a", "1", "0", "id"),
            ("b", "0", "0", "a"),
            ("b", "1", "1", "id"),
            ("id", "0", "0", "id"),
            ("id", "1", "1", "id"),
        ],
    )
}

/// s = (s, t), t = σ: the state s fixes 0 and restricts to itself there.
pub fn non_reducible_demo() -> MealyAutomaton {
    automaton(
        &["s", "t", "id"],
        &[
            ("s", "0", "0", "s"),
            ("s", "1", "1", "t"),
            ("t", "0", "1", "id"),
            ("t", "1", "0", "id"),
            ("id", "0", "0", "id"),
            ("id", "1", "1", "id"),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_resolves() {
        for name in [
            "star3",
            "path_3",
            "cycle_3",
            "cycle_4_acyclic",
            "fig5_tree",
            "adding_machine",
            "basilica",
            "non_reducible_demo",
        ] {
            let aut = builtin(name).unwrap().automaton().unwrap();
            assert!(aut.is_invertible(), "{name}");
            assert_eq!(aut.is_bounded(), Ok(true), "{name}");
        }
        assert_eq!(
            builtin("cycle_2"),
            Err(Error::UnknownFixture("cycle_2".into()))
        );
        assert!(builtin("nope").is_err());
    }

    #[test]
    fn cycles() {
        assert!(cycle(3, true).has_oriented_cycle());
        assert!(!cycle(3, false).has_oriented_cycle());
        assert!(path(5).is_tree());
        assert!(fig5_tree().is_tree());
        assert_eq!(basilica().num_states(), 3);
    }
}
