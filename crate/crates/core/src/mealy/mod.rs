//! Finite Mealy automata: the transducers whose states act on words over a
//! finite alphabet.
//!
//! A state `s` reading letter `x` writes `out(s, x)` and moves to
//! `next(s, x)`; on the tree of words these are the action `s∘x` and the
//! restriction `s·x`. Tables are stored densely, row-major by state.

mod bisim;
mod dot;
mod io;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::symbol::Symbol;

pub use bisim::Partition;
pub use io::{AutomatonFile, TransitionRecord};

/// One row entry of the transition table, `state --input|output--> next`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub state: Symbol,
    pub input: Symbol,
    pub next: Symbol,
    pub output: Symbol,
}

impl Transition {
    pub fn new(state: &str, input: &str, output: &str, next: &str) -> Self {
        Transition {
            state: Symbol::parse(state),
            input: Symbol::parse(input),
            next: Symbol::parse(next),
            output: Symbol::parse(output),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MealyAutomaton {
    states: Vec<Symbol>,
    alphabet: Vec<Symbol>,
    state_index: HashMap<Symbol, usize>,
    letter_index: HashMap<Symbol, usize>,
    next: Vec<usize>,
    out: Vec<usize>,
    sink: Option<usize>,
    // For invertible automata: inv_out[s * n + y] = x with out(s, x) = y.
    inv_out: Option<Vec<usize>>,
}

impl PartialEq for MealyAutomaton {
    fn eq(&self, other: &Self) -> bool {
        self.table_eq(other) && self.sink == other.sink
    }
}

impl Eq for MealyAutomaton {}

fn index_of(symbols: &[Symbol]) -> Result<HashMap<Symbol, usize>> {
    let mut map = HashMap::with_capacity(symbols.len());
    for (i, s) in symbols.iter().enumerate() {
        if map.insert(s.clone(), i).is_some() {
            return Err(Error::DuplicateName(s.to_string()));
        }
    }
    Ok(map)
}

impl MealyAutomaton {
    /// Validates a transition list. Every `(state, letter)` pair must be
    /// covered exactly once and a declared sink must fix every letter and
    /// restrict to itself.
    pub fn new(
        states: Vec<Symbol>,
        alphabet: Vec<Symbol>,
        transitions: &[Transition],
        sink: Option<Symbol>,
    ) -> Result<Self> {
        let state_index = index_of(&states)?;
        let letter_index = index_of(&alphabet)?;
        let n = alphabet.len();
        let mut next = vec![usize::MAX; states.len() * n];
        let mut out = vec![usize::MAX; states.len() * n];
        let find_state = |s: &Symbol| {
            state_index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownState(s.to_string()))
        };
        let find_letter = |x: &Symbol| {
            letter_index
                .get(x)
                .copied()
                .ok_or_else(|| Error::UnknownLetter(x.to_string()))
        };
        for t in transitions {
            let s = find_state(&t.state)?;
            let x = find_letter(&t.input)?;
            let cell = s * n + x;
            if next[cell] != usize::MAX {
                return Err(Error::DuplicateTransition {
                    state: t.state.to_string(),
                    letter: t.input.to_string(),
                });
            }
            next[cell] = find_state(&t.next)?;
            out[cell] = find_letter(&t.output)?;
        }
        if let Some(cell) = next.iter().position(|&t| t == usize::MAX) {
            return Err(Error::MissingTransition {
                state: states[cell / n].to_string(),
                letter: alphabet[cell % n].to_string(),
            });
        }
        let sink = sink.map(|s| find_state(&s)).transpose()?;
        Self::from_tables(states, alphabet, next, out, sink)
    }

    /// Builds from dense tables; only the sink laws are checked here.
    pub(crate) fn from_tables(
        states: Vec<Symbol>,
        alphabet: Vec<Symbol>,
        next: Vec<usize>,
        out: Vec<usize>,
        sink: Option<usize>,
    ) -> Result<Self> {
        let n = alphabet.len();
        debug_assert_eq!(next.len(), states.len() * n);
        debug_assert_eq!(out.len(), states.len() * n);
        let state_index = index_of(&states)?;
        let letter_index = index_of(&alphabet)?;
        if let Some(s) = sink {
            for x in 0..n {
                if next[s * n + x] != s || out[s * n + x] != x {
                    return Err(Error::BadSink(states[s].to_string()));
                }
            }
        }
        let mut aut = MealyAutomaton {
            states,
            alphabet,
            state_index,
            letter_index,
            next,
            out,
            sink,
            inv_out: None,
        };
        aut.inv_out = aut.compute_inverse_outputs();
        Ok(aut)
    }

    fn compute_inverse_outputs(&self) -> Option<Vec<usize>> {
        let n = self.num_letters();
        let mut inv = vec![usize::MAX; self.out.len()];
        for s in 0..self.num_states() {
            for x in 0..n {
                let y = self.out[s * n + x];
                if inv[s * n + y] != usize::MAX {
                    return None;
                }
                inv[s * n + y] = x;
            }
        }
        Some(inv)
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn states(&self) -> &[Symbol] {
        &self.states
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn state(&self, s: usize) -> &Symbol {
        &self.states[s]
    }

    pub fn letter(&self, x: usize) -> &Symbol {
        &self.alphabet[x]
    }

    pub fn state_index(&self, s: &Symbol) -> Option<usize> {
        self.state_index.get(s).copied()
    }

    pub fn letter_index(&self, x: &Symbol) -> Option<usize> {
        self.letter_index.get(x).copied()
    }

    /// The restriction `s·x`.
    #[inline]
    pub fn next(&self, s: usize, x: usize) -> usize {
        self.next[s * self.alphabet.len() + x]
    }

    /// The action `s∘x`.
    #[inline]
    pub fn out(&self, s: usize, x: usize) -> usize {
        self.out[s * self.alphabet.len() + x]
    }

    /// The letter `x` with `s∘x = y`, if the automaton is invertible.
    #[inline]
    pub fn inverse_out(&self, s: usize, y: usize) -> Option<usize> {
        self.inv_out
            .as_ref()
            .map(|inv| inv[s * self.alphabet.len() + y])
    }

    pub fn sink(&self) -> Option<usize> {
        self.sink
    }

    pub fn is_sink(&self, s: usize) -> bool {
        self.sink == Some(s)
    }

    /// Every state's output row is a permutation of the alphabet.
    pub fn is_invertible(&self) -> bool {
        self.inv_out.is_some()
    }

    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        let n = self.num_letters();
        (0..self.num_states()).flat_map(move |s| {
            (0..n).map(move |x| Transition {
                state: self.states[s].clone(),
                input: self.alphabet[x].clone(),
                next: self.states[self.next(s, x)].clone(),
                output: self.alphabet[self.out(s, x)].clone(),
            })
        })
    }

    /// Equality of names and tables, ignoring the sink declaration.
    pub fn table_eq(&self, other: &Self) -> bool {
        self.states == other.states
            && self.alphabet == other.alphabet
            && self.next == other.next
            && self.out == other.out
    }

    /// Same automaton with `sink` declared.
    pub fn with_sink(&self, sink: &Symbol) -> Result<Self> {
        let s = self
            .state_index(sink)
            .ok_or_else(|| Error::UnknownState(sink.to_string()))?;
        Self::from_tables(
            self.states.clone(),
            self.alphabet.clone(),
            self.next.clone(),
            self.out.clone(),
            Some(s),
        )
    }

    /// Formal inverse: `s --x|y--> t` becomes `s^-1 --y|x--> t^-1`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let n = self.num_letters();
        let mut next = vec![0; self.next.len()];
        let mut out = vec![0; self.out.len()];
        for s in 0..self.num_states() {
            for x in 0..n {
                let y = self.out(s, x);
                next[s * n + y] = self.next(s, x);
                out[s * n + y] = x;
            }
        }
        Self::from_tables(
            self.states.iter().map(Symbol::inverse).collect(),
            self.alphabet.clone(),
            next,
            out,
            self.sink,
        )
    }

    /// Tagged union over a common alphabet. States of `other` whose names
    /// clash with `self` are primed. The sink of `self` (if any) stays the
    /// declared sink; sinks are never merged.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut states = self.states.clone();
        for s in &other.states {
            let mut name = s.clone();
            while states.contains(&name) || (name != *s && other.states.contains(&name)) {
                name = name.primed();
            }
            states.push(name);
        }
        let offset = self.num_states();
        let mut next = self.next.clone();
        next.extend(other.next.iter().map(|t| t + offset));
        let mut out = self.out.clone();
        out.extend_from_slice(&other.out);
        let sink = self.sink.or(other.sink.map(|s| s + offset));
        Self::from_tables(states, self.alphabet.clone(), next, out, sink)
    }

    /// The dual automaton: states and letters swap roles, so
    /// `x --s|t--> y` exists iff `s --x|y--> t` does. No sink is declared.
    pub fn dual(&self) -> Self {
        let n = self.num_letters();
        let m = self.num_states();
        let mut next = vec![0; n * m];
        let mut out = vec![0; n * m];
        for s in 0..m {
            for x in 0..n {
                next[x * m + s] = self.out(s, x);
                out[x * m + s] = self.next(s, x);
            }
        }
        Self::from_tables(self.alphabet.clone(), self.states.clone(), next, out, None)
            .expect("dual of a valid automaton is valid")
    }

    /// Dual of `self ⊔ self^-1`; its input letters are the states and their
    /// formal inverses.
    pub fn enriched_dual(&self) -> Result<Self> {
        Ok(self.disjoint_union(&self.inverse()?)?.dual())
    }

    /// The `n`-th power. A tuple `(s1, …, sn)` feeds its input to `s1` first
    /// and passes each output on to the next coordinate.
    pub fn power(&self, n: usize) -> Result<PowerAutomaton> {
        if n < 1 {
            return Err(Error::BadPower(n));
        }
        let m = self.num_states();
        let letters = self.num_letters();
        let count = m.checked_pow(n as u32).ok_or(Error::BadPower(n))?;
        let mut tuples = Vec::with_capacity(count);
        let mut current = vec![0usize; n];
        for _ in 0..count {
            tuples.push(PowerState(current.clone()));
            for slot in current.iter_mut().rev() {
                *slot += 1;
                if *slot < m {
                    break;
                }
                *slot = 0;
            }
        }
        let mut next = Vec::with_capacity(count * letters);
        let mut out = Vec::with_capacity(count * letters);
        for tuple in &tuples {
            for x in 0..letters {
                let mut letter = x;
                let mut target = 0;
                for &s in &tuple.0 {
                    target = target * m + self.next(s, letter);
                    letter = self.out(s, letter);
                }
                next.push(target);
                out.push(letter);
            }
        }
        let states = tuples
            .iter()
            .map(|t| {
                let parts: Vec<String> = t.0.iter().map(|&s| self.states[s].to_string()).collect();
                Symbol::new(parts.join(","))
            })
            .collect();
        let automaton = Self::from_tables(states, self.alphabet.clone(), next, out, None)?;
        Ok(PowerAutomaton { automaton, tuples })
    }

    /// Bounded activity test: in the Moore diagram with the sink removed,
    /// every strongly connected component is at most a single simple cycle
    /// and no directed path joins two distinct cycles.
    pub fn is_bounded(&self) -> Result<bool> {
        let sink = self.sink.ok_or(Error::NoSink)?;
        let m = self.num_states();
        let adj: Vec<Vec<usize>> = (0..m)
            .map(|s| {
                if s == sink {
                    return Vec::new();
                }
                (0..self.num_letters())
                    .map(|x| self.next(s, x))
                    .filter(|&t| t != sink)
                    .collect()
            })
            .collect();
        let comp = strongly_connected_components(&adj);
        let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut size = vec![0usize; ncomp];
        let mut internal = vec![0usize; ncomp];
        for s in 0..m {
            if s == sink {
                continue;
            }
            size[comp[s]] += 1;
            internal[comp[s]] += adj[s].iter().filter(|&&t| comp[t] == comp[s]).count();
        }
        let cyclic: Vec<bool> = (0..ncomp).map(|c| internal[c] > 0).collect();
        if (0..ncomp).any(|c| cyclic[c] && internal[c] > size[c]) {
            return Ok(false);
        }
        // condensation edges
        let mut cadj = vec![Vec::new(); ncomp];
        for s in 0..m {
            for &t in &adj[s] {
                if comp[s] != comp[t] {
                    cadj[comp[s]].push(comp[t]);
                }
            }
        }
        for start in (0..ncomp).filter(|&c| cyclic[c]) {
            let mut seen = vec![false; ncomp];
            let mut stack = cadj[start].clone();
            while let Some(c) = stack.pop() {
                if std::mem::replace(&mut seen[c], true) {
                    continue;
                }
                if cyclic[c] {
                    return Ok(false);
                }
                stack.extend_from_slice(&cadj[c]);
            }
        }
        Ok(true)
    }

    pub fn bisimulation_classes(&self) -> Partition {
        bisim::coarsest_partition(self)
    }

    /// The automaton with bisimilar states merged into the first member of
    /// their class.
    pub fn quotient(&self) -> Self {
        bisim::quotient(self)
    }

    /// No two distinct states are bisimilar.
    pub fn is_reduced(&self) -> bool {
        self.bisimulation_classes()
            .classes()
            .iter()
            .all(|c| c.len() == 1)
    }

    pub fn to_dot(&self) -> String {
        dot::render(self)
    }
}

/// Tarjan's algorithm, iterative; returns the component id of each vertex.
fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut work = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut edge)) = work.last_mut() {
            if *edge == 0 && index[v] == usize::MAX {
                index[v] = counter;
                low[v] = counter;
                counter += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if *edge < adj[v].len() {
                let w = adj[v][*edge];
                *edge += 1;
                if index[w] == usize::MAX {
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    comp
}

/// A state of the `n`-th power: one state index per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerState(pub Vec<usize>);

impl PowerState {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct PowerAutomaton {
    pub automaton: MealyAutomaton,
    pub tuples: Vec<PowerState>,
}

impl PowerAutomaton {
    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.tuples.iter().position(|t| t.0 == tuple)
    }
}

impl fmt::Display for MealyAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.transitions() {
            writeln!(f, "{} --{}|{}--> {}", t.state, t.input, t.output, t.next)?;
        }
        if let Some(s) = self.sink {
            writeln!(f, "sink: {}", self.states[s])?;
        }
        Ok(())
    }
}
