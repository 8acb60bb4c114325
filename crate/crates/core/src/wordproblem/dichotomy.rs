use crate::action::GroupWord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dichotomy {
    Abelian,
    /// Tuples `s` and `t` whose entries at `component` do not commute, so
    /// together they generate a free group of rank two.
    FreePair {
        component: usize,
        s: usize,
        t: usize,
    },
}

/// Componentwise commutation test for tuples of free-group elements.
/// Components are numbered from 0.
pub fn dichotomy(tuples: &[Vec<GroupWord>]) -> Result<Dichotomy> {
    let width = tuples.first().map_or(0, Vec::len);
    if tuples.iter().any(|t| t.len() != width) {
        return Err(Error::RaggedTuples);
    }
    for s in 0..tuples.len() {
        for t in s + 1..tuples.len() {
            let clash = tuples[s]
                .iter()
                .zip(&tuples[t])
                .position(|(x, y)| !x.commutes_with(y));
            if let Some(component) = clash {
                return Ok(Dichotomy::FreePair { component, s, t });
            }
        }
    }
    Ok(Dichotomy::Abelian)
}
