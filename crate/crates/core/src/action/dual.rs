use crate::error::{Error, Result};
use crate::mealy::MealyAutomaton;

use super::Letter;

/// The walk of a positive word through the dual automaton from a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPath {
    /// Visited vertices, one more than the word length.
    pub vertices: Vec<usize>,
    /// `(input state, output state)` per step; the output is the
    /// restriction of the input state at the current vertex.
    pub steps: Vec<(usize, usize)>,
    /// `vertices` with consecutive repetitions collapsed.
    pub condensed: Vec<usize>,
}

impl DualPath {
    pub fn outputs(&self) -> Vec<usize> {
        self.steps.iter().map(|&(_, o)| o).collect()
    }

    /// `1 -(e2|id)-> 1 -(e1|e1)-> 2`
    pub fn format(&self, aut: &MealyAutomaton) -> String {
        let mut text = aut.letter(self.vertices[0]).to_string();
        for (i, &(a, b)) in self.steps.iter().enumerate() {
            text.push_str(&format!(
                " -({}|{})-> {}",
                aut.state(a),
                aut.state(b),
                aut.letter(self.vertices[i + 1])
            ));
        }
        text
    }

    pub fn format_condensed(&self, aut: &MealyAutomaton) -> String {
        let parts: Vec<String> = self
            .condensed
            .iter()
            .map(|&v| aut.letter(v).to_string())
            .collect();
        parts.join(" ")
    }
}

pub fn dual_path(aut: &MealyAutomaton, x: usize, u: &[usize]) -> Result<DualPath> {
    if x >= aut.num_letters() {
        return Err(Error::AlphabetMismatch);
    }
    if let Some(&s) = u.iter().find(|&&s| s >= aut.num_states()) {
        return Err(Error::UnknownState(format!("state index {s}")));
    }
    let mut vertices = vec![x];
    let mut steps = Vec::with_capacity(u.len());
    let mut v = x;
    for &s in u {
        steps.push((s, aut.next(s, v)));
        v = aut.out(s, v);
        vertices.push(v);
    }
    let mut condensed = vertices.clone();
    condensed.dedup();
    Ok(DualPath {
        vertices,
        steps,
        condensed,
    })
}

/// States `a` with a loop `x -(a|id)-> x` in the dual automaton.
pub fn loops_at(aut: &MealyAutomaton, x: usize) -> Vec<usize> {
    let Some(sink) = aut.sink() else {
        return Vec::new();
    };
    (0..aut.num_states())
        .filter(|&a| aut.out(a, x) == x && aut.next(a, x) == sink)
        .collect()
}

/// A factor `v[start..end]` whose dual walk from `x` leaves `x` at once and
/// first comes back at its last letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Noose {
    pub start: usize,
    pub end: usize,
    pub outputs: Vec<usize>,
}

impl Noose {
    pub fn first_letter(&self, v: &[usize]) -> usize {
        v[self.start]
    }

    pub fn last_letter(&self, v: &[usize]) -> usize {
        v[self.end - 1]
    }
}

/// The noose with the least start, then the least end.
pub fn find_noose(aut: &MealyAutomaton, x: usize, v: &[usize]) -> Option<Noose> {
    for start in 0..v.len() {
        let mut at = x;
        let mut outputs = Vec::new();
        for (offset, &s) in v[start..].iter().enumerate() {
            outputs.push(aut.next(s, at));
            at = aut.out(s, at);
            if offset == 0 && at == x {
                break;
            }
            if offset > 0 && at == x {
                return Some(Noose {
                    start,
                    end: start + offset + 1,
                    outputs,
                });
            }
        }
    }
    None
}

/// Drops occurrences of the sink and its inverse.
pub fn erase_id(aut: &MealyAutomaton, letters: &[Letter]) -> Vec<Letter> {
    letters
        .iter()
        .copied()
        .filter(|l| Some(l.generator()) != aut.sink())
        .collect()
}

pub fn erase_id_positive(aut: &MealyAutomaton, letters: &[usize]) -> Vec<usize> {
    letters
        .iter()
        .copied()
        .filter(|&s| Some(s) != aut.sink())
        .collect()
}
