//! Deciding whether a word acts trivially, and the machinery built on top:
//! fragile words and groups, the nucleus, reducibility, the level-one
//! quotient and the abelian/free dichotomy.

mod dichotomy;
mod fragile;
mod nucleus;
mod quotient;
mod reducible;

use std::collections::{HashSet, VecDeque};

use crate::action::{section, GroupWord};
use crate::error::{Error, Result};
use crate::mealy::MealyAutomaton;

pub use dichotomy::{dichotomy, Dichotomy};
pub use fragile::{
    embed_in_product, fragile_index, fragile_member, is_identity_in_gk, virtual_endo,
};
pub use nucleus::{nucleus, Nucleus};
pub use quotient::sym_quotient_order;
pub use reducible::{check_reducible, ReducibleReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Identity,
    NonIdentity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Every restriction of the word, each fixing all letters.
    Closure(Vec<GroupWord>),
    /// Least `k` at which the word is fragile.
    FragileIndex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpVerdict {
    pub decision: Decision,
    /// For a non-identity word, a shortest input it moves.
    pub witness: Option<Vec<usize>>,
    pub certificate: Option<Certificate>,
}

impl WpVerdict {
    pub fn is_identity(&self) -> bool {
        self.decision == Decision::Identity
    }
}

fn check_invertible(aut: &MealyAutomaton) -> Result<()> {
    if aut.is_invertible() {
        Ok(())
    } else {
        Err(Error::NotInvertible)
    }
}

/// All reduced restrictions `w·u`, `u` ranging over every input word, in
/// shortlex order.
pub fn restriction_closure(aut: &MealyAutomaton, w: &GroupWord) -> Result<Vec<GroupWord>> {
    check_invertible(aut)?;
    let mut seen = HashSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(g) = queue.pop_front() {
        for x in 0..aut.num_letters() {
            let (_, s) = section(aut, g.letters(), x);
            if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    let mut out: Vec<GroupWord> = seen.into_iter().collect();
    out.sort_by(|a, b| a.shortlex_cmp(b));
    Ok(out)
}

/// Breadth-first over restrictions; the first section that moves a letter
/// yields a shortest witness.
pub fn is_identity(aut: &MealyAutomaton, w: &GroupWord) -> Result<WpVerdict> {
    check_invertible(aut)?;
    let mut seen = HashSet::from([w.clone()]);
    let mut order = vec![w.clone()];
    let mut queue = VecDeque::from([(w.clone(), Vec::new())]);
    while let Some((g, prefix)) = queue.pop_front() {
        if g.is_empty() {
            continue;
        }
        let mut children = Vec::with_capacity(aut.num_letters());
        for x in 0..aut.num_letters() {
            let (y, s) = section(aut, g.letters(), x);
            if y != x {
                let mut witness = prefix;
                witness.push(x);
                return Ok(WpVerdict {
                    decision: Decision::NonIdentity,
                    witness: Some(witness),
                    certificate: None,
                });
            }
            children.push(s);
        }
        for (x, s) in children.into_iter().enumerate() {
            if seen.insert(s.clone()) {
                order.push(s.clone());
                let mut p = prefix.clone();
                p.push(x);
                queue.push_back((s, p));
            }
        }
    }
    if !seen.contains(&GroupWord::empty()) {
        order.push(GroupWord::empty());
    }
    order.sort_by(|a, b| a.shortlex_cmp(b));
    Ok(WpVerdict {
        decision: Decision::Identity,
        witness: None,
        certificate: Some(Certificate::Closure(order)),
    })
}

/// The same decision as [`is_identity`] without witness bookkeeping.
pub fn acts_trivially(aut: &MealyAutomaton, w: &GroupWord) -> bool {
    let mut seen: HashSet<GroupWord> = HashSet::new();
    let mut stack = vec![w.clone()];
    while let Some(g) = stack.pop() {
        if g.is_empty() || !seen.insert(g.clone()) {
            continue;
        }
        for x in 0..aut.num_letters() {
            let (y, s) = section(aut, g.letters(), x);
            if y != x {
                return false;
            }
            if !s.is_empty() && !seen.contains(&s) {
                stack.push(s);
            }
        }
    }
    true
}

/// Signed occurrence count of each listed generator.
pub fn exponent_sums(w: &GroupWord, generators: &[usize]) -> Vec<i64> {
    generators
        .iter()
        .map(|&g| {
            w.letters()
                .iter()
                .filter(|l| l.generator() == g)
                .map(|l| if l.is_inverse() { -1 } else { 1 })
                .sum()
        })
        .collect()
}
