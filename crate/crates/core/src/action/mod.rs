//! Words over the states of an automaton and their action on the tree of
//! words over its alphabet.
//!
//! A word acts letter by letter, its leftmost state first. Reading `x`,
//! the word `s1 … sn` outputs the letter produced by passing `x` through the
//! states in order, and restricts to the word of their restrictions, also
//! in order. Hence `apply(w1 w2, u) = apply(w2, apply(w1, u))` and
//! `restrict(w1 w2, u) = restrict(w1, u) · restrict(w2, apply(w1, u))`.

mod dual;
mod word;

use std::collections::HashSet;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graphgroup::OrientedGraph;
use crate::mealy::MealyAutomaton;
use crate::symbol::Symbol;

pub use dual::{dual_path, erase_id, erase_id_positive, find_noose, loops_at, DualPath, Noose};
pub use word::{format_letters, parse_letters, positive_words, reduced_words, GroupWord, Letter};

/// Non-sink states, the generators of the group.
pub fn generators(aut: &MealyAutomaton) -> Vec<usize> {
    (0..aut.num_states()).filter(|&s| !aut.is_sink(s)).collect()
}

/// Parses a word over the automaton's state names and reduces it.
pub fn parse_word(aut: &MealyAutomaton, text: &str) -> Result<GroupWord> {
    Ok(reduce(aut, &parse_raw(aut, text)?))
}

/// Parses without reducing.
pub fn parse_raw(aut: &MealyAutomaton, text: &str) -> Result<Vec<Letter>> {
    parse_letters(text, |s| aut.state_index(s))
}

/// Parses a word of states with no inverses.
pub fn parse_positive(aut: &MealyAutomaton, text: &str) -> Result<Vec<usize>> {
    parse_raw(aut, text)?
        .into_iter()
        .map(|l| {
            if l.is_inverse() {
                Err(Error::Parse(format!(
                    "`{}` is not a positive letter",
                    aut.state(l.generator()).inverse()
                )))
            } else {
                Ok(l.generator())
            }
        })
        .collect()
}

/// Parses whitespace-separated letters of the alphabet.
pub fn parse_input(aut: &MealyAutomaton, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| {
            aut.letter_index(&Symbol::parse(t))
                .ok_or_else(|| Error::UnknownLetter(t.to_string()))
        })
        .collect()
}

pub fn format_word(aut: &MealyAutomaton, w: &GroupWord) -> String {
    w.format(aut.states())
}

pub fn format_input(aut: &MealyAutomaton, u: &[usize]) -> String {
    let parts: Vec<String> = u.iter().map(|&x| aut.letter(x).to_string()).collect();
    parts.join(" ")
}

pub fn format_positive(aut: &MealyAutomaton, u: &[usize]) -> String {
    let parts: Vec<String> = u.iter().map(|&s| aut.state(s).to_string()).collect();
    parts.join(" ")
}

/// Free reduction with sink letters deleted first.
pub fn reduce(aut: &MealyAutomaton, raw: &[Letter]) -> GroupWord {
    GroupWord::reduce(raw.iter().copied(), aut.sink())
}

/// The word with every generator replaced by its inverse and the order
/// reversed, i.e. the group inverse.
pub fn inverse(w: &GroupWord) -> GroupWord {
    w.inverse()
}

/// Output letter and restriction of a single letter of a word on `x`.
#[inline]
pub(crate) fn step(aut: &MealyAutomaton, l: Letter, x: usize) -> (usize, Letter) {
    let g = l.generator();
    if l.is_inverse() {
        let y = aut
            .inverse_out(g, x)
            .expect("inverse letters need an invertible automaton");
        (y, Letter::new(aut.next(g, y), true))
    } else {
        (aut.out(g, x), Letter::positive(aut.next(g, x)))
    }
}

/// Image of `x` and the reduced restriction of `w` at `x`.
#[inline]
pub(crate) fn section(aut: &MealyAutomaton, w: &[Letter], x: usize) -> (usize, GroupWord) {
    let mut z = x;
    let sink = aut.sink();
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        let (y, s) = step(aut, l, z);
        z = y;
        if Some(s.generator()) == sink {
            continue;
        }
        if stack.last() == Some(&s.inverse()) {
            stack.pop();
        } else {
            stack.push(s);
        }
    }
    (z, GroupWord::reduce(stack, None))
}

/// Image of `x` only.
#[inline]
pub(crate) fn image(aut: &MealyAutomaton, w: &[Letter], x: usize) -> usize {
    let mut z = x;
    for &l in w {
        z = step(aut, l, z).0;
    }
    z
}

fn check_word(aut: &MealyAutomaton, w: &[Letter]) -> Result<()> {
    if w.iter().any(|l| l.generator() >= aut.num_states()) {
        return Err(Error::UnknownGenerator(format!(
            "generator index out of range for {} states",
            aut.num_states()
        )));
    }
    if !aut.is_invertible() && w.iter().any(|l| l.is_inverse()) {
        return Err(Error::NotInvertible);
    }
    Ok(())
}

fn check_input(aut: &MealyAutomaton, u: &[usize]) -> Result<()> {
    if u.iter().any(|&x| x >= aut.num_letters()) {
        return Err(Error::AlphabetMismatch);
    }
    Ok(())
}

/// The image `w∘u`.
pub fn apply(aut: &MealyAutomaton, w: &GroupWord, u: &[usize]) -> Result<Vec<usize>> {
    check_word(aut, w.letters())?;
    check_input(aut, u)?;
    Ok(apply_raw(aut, w.letters(), u))
}

/// `w∘u` for an unreduced letter sequence; sink letters act trivially.
pub fn apply_raw(aut: &MealyAutomaton, w: &[Letter], u: &[usize]) -> Vec<usize> {
    let mut current = w.to_vec();
    u.iter()
        .map(|&x| {
            let mut z = x;
            for l in current.iter_mut() {
                let (y, s) = step(aut, *l, z);
                z = y;
                *l = s;
            }
            z
        })
        .collect()
}

/// The reduced restriction `w·u`.
pub fn restrict(aut: &MealyAutomaton, w: &GroupWord, u: &[usize]) -> Result<GroupWord> {
    check_word(aut, w.letters())?;
    check_input(aut, u)?;
    let mut current = w.clone();
    for &x in u {
        current = section(aut, current.letters(), x).1;
    }
    Ok(current)
}

/// `w = (w·x1, …, w·xn)σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfSimilarRep {
    pub perm: Vec<usize>,
    pub sections: Vec<GroupWord>,
}

pub fn wreath(aut: &MealyAutomaton, w: &GroupWord) -> Result<SelfSimilarRep> {
    check_word(aut, w.letters())?;
    let (perm, sections) = (0..aut.num_letters())
        .map(|x| section(aut, w.letters(), x))
        .unzip();
    Ok(SelfSimilarRep { perm, sections })
}

pub fn level1_permutation(aut: &MealyAutomaton, w: &GroupWord) -> Result<Vec<usize>> {
    check_word(aut, w.letters())?;
    Ok((0..aut.num_letters())
        .map(|x| image(aut, w.letters(), x))
        .collect())
}

/// Distinct reduced restrictions at each depth `0..=k`, stopping early with
/// `None` if some restriction at depth `< k` moves a letter.
pub(crate) fn level_sections(
    aut: &MealyAutomaton,
    w: &GroupWord,
    k: usize,
) -> Option<Vec<HashSet<GroupWord>>> {
    let mut levels = vec![HashSet::from([w.clone()])];
    for _ in 0..k {
        let mut next = HashSet::new();
        for g in levels.last().expect("nonempty") {
            if g.is_empty() {
                next.insert(GroupWord::empty());
                continue;
            }
            for x in 0..aut.num_letters() {
                let (y, s) = section(aut, g.letters(), x);
                if y != x {
                    return None;
                }
                next.insert(s);
            }
        }
        levels.push(next);
    }
    Some(levels)
}

/// True iff `w` fixes every word of length `k`.
pub fn stabilizes_level(
    aut: &MealyAutomaton,
    w: &GroupWord,
    k: usize,
    caps: &Caps,
) -> Result<bool> {
    check_word(aut, w.letters())?;
    caps.check_level(aut.num_letters(), k)?;
    Ok(level_sections(aut, w, k).is_some())
}

/// A word acting on the vertex set as the transposition `(i j)`: for a path
/// `e1^ε1 … ek^εk` from `i` to `j`, returns `e1^ε1 … ek^εk (e1^ε1 … e(k-1)^ε(k-1))^-1`.
/// Generator indices are edge indices, as in the graph automaton.
pub fn transposition_word(g: &OrientedGraph, i: usize, j: usize) -> Result<GroupWord> {
    let steps = g
        .path(i, j)
        .ok_or_else(|| Error::Disconnected(g.vertices()[i].clone(), g.vertices()[j].clone()))?;
    let letters: Vec<Letter> = steps.iter().map(|&(e, fwd)| Letter::new(e, !fwd)).collect();
    if letters.is_empty() {
        return Ok(GroupWord::empty());
    }
    let head = GroupWord::reduce(letters.iter().copied(), None);
    let prefix = GroupWord::reduce(letters[..letters.len() - 1].iter().copied(), None);
    Ok(head.concat(&prefix.inverse()))
}
