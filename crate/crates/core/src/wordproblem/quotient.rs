use std::collections::HashSet;

use crate::action::generators;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::mealy::MealyAutomaton;

use super::check_invertible;

/// Order of the group of level-one permutations generated by the states.
pub fn sym_quotient_order(aut: &MealyAutomaton, caps: &Caps) -> Result<u64> {
    check_invertible(aut)?;
    let n = aut.num_letters();
    if n > caps.quotient_degree {
        return Err(Error::QuotientTooLarge {
            degree: n,
            cap: caps.quotient_degree,
        });
    }
    let gens: Vec<Vec<u8>> = generators(aut)
        .into_iter()
        .map(|s| (0..n).map(|x| aut.out(s, x) as u8).collect())
        .collect();
    let identity: Vec<u8> = (0..n as u8).collect();
    let mut seen = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in &gens {
            // apply p first, then g
            let q: Vec<u8> = p.iter().map(|&x| g[x as usize]).collect();
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    Ok(seen.len() as u64)
}
