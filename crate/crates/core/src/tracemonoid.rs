//! Positive words over a tree automaton up to the commutations of
//! non-incident edges, plus exact action-based comparison and the
//! orientation checks for graphs with cycles.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;

use crate::action::{positive_words, section, GroupWord, Letter};
use crate::error::{Error, Result};
use crate::graphgroup::{build_graph_automaton, OrientedGraph, IDENTITY};
use crate::mealy::MealyAutomaton;
use crate::symbol::Symbol;
use crate::wordproblem::acts_trivially;

/// Letters are the edges in declaration order followed by `id`, matching
/// the state order of the graph automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracePresentation {
    letters: Vec<Symbol>,
    identity: usize,
    independent: Vec<Vec<bool>>,
}

impl TracePresentation {
    fn from_graph(g: &OrientedGraph) -> Arc<Self> {
        let complement = g.line_graph_complement();
        let m = g.edges().len();
        let mut independent = vec![vec![false; m + 1]; m + 1];
        for (i, row) in independent.iter_mut().take(m).enumerate() {
            for (j, cell) in row.iter_mut().take(m).enumerate() {
                *cell = complement.is_adjacent(i, j);
            }
        }
        let letters = g
            .edges()
            .iter()
            .map(|e| Symbol::new(e.name.clone()))
            .chain(std::iter::once(Symbol::new(IDENTITY)))
            .collect();
        Arc::new(TracePresentation {
            letters,
            identity: m,
            independent,
        })
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Commutation relation between two distinct edge letters.
    pub fn independent(&self, a: usize, b: usize) -> bool {
        self.independent[a][b]
    }

    /// Pairs of edge letters `(a, b)`, `a <= b`, that do not commute.
    pub fn dependent_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.identity;
        (0..m)
            .flat_map(|a| (a..m).map(move |b| (a, b)))
            .filter(|&(a, b)| !self.independent[a][b])
            .collect()
    }

    pub fn word(self: &Arc<Self>, letters: Vec<usize>) -> Result<TraceWord> {
        if let Some(&l) = letters.iter().find(|&&l| l >= self.letters.len()) {
            return Err(Error::UnknownGenerator(format!("letter index {l}")));
        }
        Ok(TraceWord {
            presentation: Arc::clone(self),
            letters,
        })
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<TraceWord> {
        let letters = text
            .split_whitespace()
            .map(|t| {
                let sym = Symbol::parse(t);
                if sym.is_inverse() {
                    return Err(Error::Parse(format!("`{t}` is not a positive letter")));
                }
                self.letters
                    .iter()
                    .position(|l| *l == sym)
                    .ok_or_else(|| Error::UnknownGenerator(t.to_string()))
            })
            .collect::<Result<Vec<usize>>>()?;
        self.word(letters)
    }
}

#[derive(Debug, Clone)]
pub struct TraceWord {
    presentation: Arc<TracePresentation>,
    letters: Vec<usize>,
}

impl PartialEq for TraceWord {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && same_presentation(self, other)
    }
}

impl Eq for TraceWord {}

fn same_presentation(u: &TraceWord, v: &TraceWord) -> bool {
    Arc::ptr_eq(&u.presentation, &v.presentation) || u.presentation == v.presentation
}

impl TraceWord {
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn presentation(&self) -> &Arc<TracePresentation> {
        &self.presentation
    }

    pub fn erased(&self) -> Vec<usize> {
        let id = self.presentation.identity;
        self.letters.iter().copied().filter(|&l| l != id).collect()
    }

    fn with_letters(&self, letters: Vec<usize>) -> TraceWord {
        TraceWord {
            presentation: Arc::clone(&self.presentation),
            letters,
        }
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| self.presentation.letters[l].to_string())
            .collect();
        parts.join(" ")
    }
}

pub fn presentation_from_tree(t: &OrientedGraph) -> Result<Arc<TracePresentation>> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    Ok(TracePresentation::from_graph(t))
}

pub fn presentation_from_forest(f: &OrientedGraph) -> Result<Arc<TracePresentation>> {
    if !f.is_forest() {
        return Err(Error::NotAForest);
    }
    Ok(TracePresentation::from_graph(f))
}

/// Words one step away: the erased word when `id` occurs, and every swap of
/// two adjacent commuting letters of the erased word. Sorted, no repeats.
pub fn rewrite_step(u: &TraceWord) -> Vec<TraceWord> {
    let p = &u.presentation;
    let base = u.erased();
    let mut out: Vec<Vec<usize>> = Vec::new();
    if base.len() != u.letters.len() {
        out.push(base.clone());
    }
    for i in 0..base.len().saturating_sub(1) {
        if p.independent(base[i], base[i + 1]) {
            let mut w = base.clone();
            w.swap(i, i + 1);
            out.push(w);
        }
    }
    out.sort();
    out.dedup();
    out.into_iter().map(|w| u.with_letters(w)).collect()
}

/// Lexicographically least word of the class: repeatedly emit the least
/// letter that commutes with everything before it.
pub fn normal_form(u: &TraceWord) -> TraceWord {
    let p = &u.presentation;
    let mut rest = u.erased();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            let movable = rest[..i].iter().all(|&b| p.independent(b, rest[i]));
            if movable && best.is_none_or(|j| rest[i] < rest[j]) {
                best = Some(i);
            }
        }
        let i = best.expect("the first letter is always movable");
        out.push(rest.remove(i));
    }
    u.with_letters(out)
}

pub fn equivalent(u: &TraceWord, v: &TraceWord) -> Result<bool> {
    if !same_presentation(u, v) {
        return Err(Error::PresentationMismatch);
    }
    Ok(normal_form(u).letters == normal_form(v).letters)
}

/// Equal projections onto every pair of non-commuting letters.
pub fn projection_equivalent(u: &TraceWord, v: &TraceWord) -> Result<bool> {
    if !same_presentation(u, v) {
        return Err(Error::PresentationMismatch);
    }
    let (eu, ev) = (u.erased(), v.erased());
    Ok(u.presentation.dependent_pairs().into_iter().all(|(a, b)| {
        let keep = |w: &[usize]| -> Vec<usize> {
            w.iter().copied().filter(|&l| l == a || l == b).collect()
        };
        keep(&eu) == keep(&ev)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionComparison {
    pub equal: bool,
    /// Shortest input on which the two words act differently.
    pub distinguishing: Option<Vec<usize>>,
}

/// Whether two positive words act identically on every input, by
/// breadth-first search over pairs of restrictions.
pub fn semigroup_eq_via_action(
    aut: &MealyAutomaton,
    u: &[usize],
    v: &[usize],
) -> Result<ActionComparison> {
    if u.iter().chain(v).any(|&s| s >= aut.num_states()) {
        return Err(Error::UnknownState("state index out of range".into()));
    }
    let positive =
        |w: &[usize]| GroupWord::reduce(w.iter().map(|&s| Letter::positive(s)), aut.sink());
    let start = (positive(u), positive(v));
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, Vec::new())]);
    while let Some(((p, q), prefix)) = queue.pop_front() {
        for x in 0..aut.num_letters() {
            let (py, ps) = section(aut, p.letters(), x);
            let (qy, qs) = section(aut, q.letters(), x);
            let mut path = prefix.clone();
            path.push(x);
            if py != qy {
                return Ok(ActionComparison {
                    equal: false,
                    distinguishing: Some(path),
                });
            }
            if seen.insert((ps.clone(), qs.clone())) {
                queue.push_back(((ps, qs), path));
            }
        }
    }
    Ok(ActionComparison {
        equal: true,
        distinguishing: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositiveIdentityReport {
    Pass {
        checked: usize,
    },
    /// A nonempty positive word over the edges acting trivially.
    Violation {
        word: Vec<usize>,
    },
}

/// Searches positive words of length `1..=max_len` over the edges for one
/// acting as the identity. The orientation must have no oriented cycle.
pub fn check_acyclic_no_positive_identity(
    g: &OrientedGraph,
    max_len: usize,
) -> Result<PositiveIdentityReport> {
    if g.has_oriented_cycle() {
        return Err(Error::OrientedCycle);
    }
    let aut = build_graph_automaton(g)?;
    let edges: Vec<usize> = (0..g.edges().len()).collect();
    let mut checked = 0;
    for len in 1..=max_len {
        let words = positive_words(&edges, len);
        checked += words.len();
        let hit = words.into_par_iter().find_first(|w| {
            acts_trivially(
                &aut,
                &GroupWord::reduce(w.iter().map(|&s| Letter::positive(s)), None),
            )
        });
        if let Some(word) = hit {
            return Ok(PositiveIdentityReport::Violation { word });
        }
    }
    Ok(PositiveIdentityReport::Pass { checked })
}

/// For an oriented cycle `w = a1 … ak` of `g` (edge indices), whether
/// `w^(k-1)` acts as the identity.
pub fn check_cycle_torsion(g: &OrientedGraph, w: &[usize], k: usize) -> Result<bool> {
    let edges = g.edges();
    if w.len() != k {
        return Err(Error::NotACycle(format!(
            "word has length {}, expected {k}",
            w.len()
        )));
    }
    if k < 3 {
        return Err(Error::NotACycle(
            "a cycle of a simple graph has at least 3 edges".into(),
        ));
    }
    if w.iter().any(|&e| e >= edges.len()) {
        return Err(Error::NotACycle("unknown edge".into()));
    }
    if w.iter().collect::<HashSet<_>>().len() != k {
        return Err(Error::NotACycle("repeated edge".into()));
    }
    for i in 0..k {
        let (a, b) = (&edges[w[i]], &edges[w[(i + 1) % k]]);
        if a.head != b.tail {
            return Err(Error::NotACycle(format!(
                "`{}` does not end where `{}` starts",
                a.name, b.name
            )));
        }
    }
    let aut = build_graph_automaton(g)?;
    let word = GroupWord::reduce(w.iter().map(|&e| Letter::positive(e)), None);
    Ok(acts_trivially(&aut, &word.pow(k as i64 - 1)))
}
