use crate::action::{level_sections, restrict, section, GroupWord};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::mealy::MealyAutomaton;

use super::check_invertible;

/// `w` fixes level `k` and every restriction at depth `k` reduces to the
/// empty word.
pub fn fragile_member(aut: &MealyAutomaton, w: &GroupWord, k: usize, caps: &Caps) -> Result<bool> {
    check_invertible(aut)?;
    caps.check_level(aut.num_letters(), k)?;
    Ok(match level_sections(aut, w, k) {
        Some(levels) => levels[k].iter().all(GroupWord::is_empty),
        None => false,
    })
}

/// Least `k` in `1..=kmax` at which `w` is fragile.
pub fn fragile_index(
    aut: &MealyAutomaton,
    w: &GroupWord,
    kmax: usize,
    caps: &Caps,
) -> Result<Option<usize>> {
    check_invertible(aut)?;
    let mut level = vec![w.clone()];
    for k in 1..=kmax {
        caps.check_level(aut.num_letters(), k)?;
        let mut next = Vec::new();
        for g in &level {
            for x in 0..aut.num_letters() {
                let (y, s) = section(aut, g.letters(), x);
                if y != x {
                    return Ok(None);
                }
                if !s.is_empty() && !next.contains(&s) {
                    next.push(s);
                }
            }
        }
        if next.is_empty() {
            if caps.check_level(aut.num_letters(), k + 1).is_ok() {
                assert!(
                    fragile_member(aut, w, k + 1, caps)?,
                    "fragile sets grow with k"
                );
            }
            return Ok(Some(k));
        }
        level = next;
    }
    Ok(None)
}

fn require_stabilizer(aut: &MealyAutomaton, w: &GroupWord, k: usize) -> Result<()> {
    match level_sections(aut, w, k) {
        Some(_) => Ok(()),
        None => Err(Error::NotInStabilizer(k)),
    }
}

/// `φ_u(w)`: the erased, reduced restriction of `w` at `u`, defined when
/// `w` fixes every word of length `|u|`.
pub fn virtual_endo(aut: &MealyAutomaton, u: &[usize], w: &GroupWord) -> Result<GroupWord> {
    check_invertible(aut)?;
    require_stabilizer(aut, w, u.len())?;
    restrict(aut, w, u)
}

/// `(φ_u(w))` for `u` over all words of length `k` in lexicographic order.
pub fn embed_in_product(
    aut: &MealyAutomaton,
    w: &GroupWord,
    k: usize,
    caps: &Caps,
) -> Result<Vec<GroupWord>> {
    check_invertible(aut)?;
    caps.check_level(aut.num_letters(), k)?;
    require_stabilizer(aut, w, k)?;
    let mut level = vec![w.clone()];
    for _ in 0..k {
        level = level
            .iter()
            .flat_map(|g| (0..aut.num_letters()).map(move |x| section(aut, g.letters(), x).1))
            .collect();
    }
    Ok(level)
}

/// Triviality in the `k`-th fragile group, which coincides with
/// membership in the `k`-th fragile set.
pub fn is_identity_in_gk(
    aut: &MealyAutomaton,
    w: &GroupWord,
    k: usize,
    caps: &Caps,
) -> Result<bool> {
    fragile_member(aut, w, k, caps)
}
