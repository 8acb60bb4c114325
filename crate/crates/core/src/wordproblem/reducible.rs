use std::collections::HashMap;

use rayon::prelude::*;

use crate::action::{generators, reduced_words, section, GroupWord};
use crate::error::Result;
use crate::mealy::MealyAutomaton;

use super::check_invertible;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReducibleReport {
    /// Every word checked shortens along every fixed branch.
    Pass { checked: usize },
    /// Restricting `word` at fixed words starting with `letter` can go on
    /// forever without shortening.
    Counterexample { word: GroupWord, letter: usize },
    /// Words whose fixed branches outgrew the depth budget.
    Inconclusive { unresolved: Vec<GroupWord> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Shortens,
    Cycle,
    TooDeep,
}

struct Search<'a> {
    aut: &'a MealyAutomaton,
    len: usize,
    max_depth: usize,
    settled: HashMap<GroupWord, Outcome>,
    path: Vec<GroupWord>,
}

impl Search<'_> {
    /// Follows `g` along the letters it fixes. A branch ends well once the
    /// restriction is shorter than the original word or fixes no letter.
    fn explore(&mut self, g: GroupWord, depth: usize) -> Outcome {
        if g.len() < self.len {
            return Outcome::Shortens;
        }
        if let Some(&o) = self.settled.get(&g) {
            return o;
        }
        if self.path.contains(&g) {
            return Outcome::Cycle;
        }
        let fixed: Vec<GroupWord> = (0..self.aut.num_letters())
            .filter_map(|x| {
                let (y, s) = section(self.aut, g.letters(), x);
                (y == x).then_some(s)
            })
            .collect();
        if fixed.is_empty() {
            return Outcome::Shortens;
        }
        if depth >= self.max_depth {
            return Outcome::TooDeep;
        }
        self.path.push(g.clone());
        let mut result = Outcome::Shortens;
        for s in fixed {
            match self.explore(s, depth + 1) {
                Outcome::Cycle => {
                    result = Outcome::Cycle;
                    break;
                }
                Outcome::TooDeep => result = Outcome::TooDeep,
                Outcome::Shortens => {}
            }
        }
        self.path.pop();
        if result != Outcome::TooDeep {
            self.settled.insert(g, result);
        }
        result
    }
}

/// Outcome per fixed letter of `w`, in letter order.
fn check_word(aut: &MealyAutomaton, w: &GroupWord, max_depth: usize) -> Vec<(usize, Outcome)> {
    let mut search = Search {
        aut,
        len: w.len(),
        max_depth,
        settled: HashMap::new(),
        path: vec![w.clone()],
    };
    (0..aut.num_letters())
        .filter_map(|x| {
            let (y, s) = section(aut, w.letters(), x);
            (y == x).then(|| (x, search.explore(s, 1)))
        })
        .collect()
}

/// Bounded reducibility check over all reduced words of length
/// `1..=max_len`. For each word `w` and letter `x` it fixes, the restrictions
/// of `w` along words fixed by `w` and starting with `x` must eventually
/// become shorter than `w`. A cycle of such restrictions that never
/// shortens is a counterexample.
pub fn check_reducible(
    aut: &MealyAutomaton,
    max_len: usize,
    max_depth: usize,
) -> Result<ReducibleReport> {
    check_invertible(aut)?;
    let gens = generators(aut);
    let words: Vec<GroupWord> = (1..=max_len)
        .flat_map(|l| reduced_words(&gens, l))
        .collect();
    let results: Vec<Vec<(usize, Outcome)>> = words
        .par_iter()
        .map(|w| check_word(aut, w, max_depth))
        .collect();
    let mut unresolved = Vec::new();
    for (w, outcomes) in words.iter().zip(&results) {
        if let Some(&(x, _)) = outcomes.iter().find(|(_, o)| *o == Outcome::Cycle) {
            return Ok(ReducibleReport::Counterexample {
                word: w.clone(),
                letter: x,
            });
        }
        if outcomes.iter().any(|(_, o)| *o == Outcome::TooDeep) {
            unresolved.push(w.clone());
        }
    }
    Ok(if unresolved.is_empty() {
        ReducibleReport::Pass {
            checked: words.len(),
        }
    } else {
        ReducibleReport::Inconclusive { unresolved }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::parse_word;
    use crate::fixtures::builtin;

    fn aut(name: &str) -> MealyAutomaton {
        builtin(name).unwrap().automaton().unwrap()
    }

    #[test]
    fn trees_pass() {
        let f = aut("fig5_tree");
        assert!(matches!(
            check_reducible(&f, 3, 4).unwrap(),
            ReducibleReport::Pass { .. }
        ));
    }

    #[test]
    fn demo_fails_at_self_loop() {
        let d = aut("non_reducible_demo");
        let report = check_reducible(&d, 2, 4).unwrap();
        assert_eq!(
            report,
            ReducibleReport::Counterexample {
                word: parse_word(&d, "s").unwrap(),
                letter: 0
            }
        );
    }

    #[test]
    fn zero_depth_budget_is_inconclusive_when_branches_continue() {
        let b = aut("basilica");
        let report = check_reducible(&b, 2, 1).unwrap();
        assert!(!matches!(report, ReducibleReport::Counterexample { .. }));
    }
}
