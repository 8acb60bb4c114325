use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// A generator or its formal inverse, packed as `2 * generator + sign`.
/// The derived order puts each generator just before its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn positive(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

/// A freely reduced word in the free group on the generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        GroupWord(vec![Letter::positive(g)])
    }

    /// Deletes occurrences of `sink`, then cancels adjacent inverse pairs.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>, sink: Option<usize>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            if Some(l.generator()) == sink {
                continue;
            }
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        GroupWord(stack)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn has_inverse_letters(&self) -> bool {
        self.0.iter().any(|l| l.is_inverse())
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &GroupWord) -> Self {
        GroupWord::reduce(self.0.iter().chain(other.0.iter()).copied(), None)
    }

    /// Reduced `self^k`; negative exponents invert.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `a b a^-1 b^-1`, reduced.
    pub fn commutator(a: &GroupWord, b: &GroupWord) -> Self {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    pub fn commutes_with(&self, other: &GroupWord) -> bool {
        GroupWord::commutator(self, other).is_empty()
    }

    /// Length first, then letters.
    pub fn shortlex_cmp(&self, other: &GroupWord) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Space-separated names with the `^-1` suffix for inverses.
    pub fn format(&self, names: &[Symbol]) -> String {
        format_letters(&self.0, names)
    }

    /// Per-generator signed occurrence counts over `generators` symbols.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut sums = vec![0; generators];
        for l in &self.0 {
            if l.generator() < generators {
                sums[l.generator()] += if l.is_inverse() { -1 } else { 1 };
            }
        }
        sums
    }
}

impl From<GroupWord> for Vec<Letter> {
    fn from(w: GroupWord) -> Self {
        w.0
    }
}

pub fn format_letters(letters: &[Letter], names: &[Symbol]) -> String {
    let parts: Vec<String> = letters
        .iter()
        .map(|l| {
            let base = &names[l.generator()];
            if l.is_inverse() {
                base.inverse().to_string()
            } else {
                base.to_string()
            }
        })
        .collect();
    parts.join(" ")
}

/// Parses whitespace-separated generator names with optional `^-1`.
pub fn parse_letters(text: &str, lookup: impl Fn(&Symbol) -> Option<usize>) -> Result<Vec<Letter>> {
    text.split_whitespace()
        .map(|token| {
            let sym = Symbol::parse(token);
            let base = Symbol::new(sym.name());
            lookup(&base)
                .map(|g| Letter::new(g, sym.is_inverse()))
                .ok_or_else(|| Error::UnknownGenerator(token.to_string()))
        })
        .collect()
}

/// All reduced words of length exactly `len` over `generators` and their
/// inverses, in lexicographic order.
pub fn reduced_words(generators: &[usize], len: usize) -> Vec<GroupWord> {
    let mut alphabet: Vec<Letter> = generators
        .iter()
        .flat_map(|&g| [Letter::positive(g), Letter::new(g, true)])
        .collect();
    alphabet.sort();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn extend(
        alphabet: &[Letter],
        len: usize,
        current: &mut Vec<Letter>,
        out: &mut Vec<GroupWord>,
    ) {
        if current.len() == len {
            out.push(GroupWord(current.clone()));
            return;
        }
        for &l in alphabet {
            if current.last() == Some(&l.inverse()) {
                continue;
            }
            current.push(l);
            extend(alphabet, len, current, out);
            current.pop();
        }
    }
    extend(&alphabet, len, &mut current, &mut out);
    out
}

/// All words of length exactly `len` over `letters`, lexicographic.
pub fn positive_words(letters: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}^-1", self.generator())
        } else {
            write!(f, "g{}", self.generator())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(pairs: &[(usize, bool)]) -> Vec<Letter> {
        pairs.iter().map(|&(g, i)| Letter::new(g, i)).collect()
    }

    #[test]
    fn free_reduction() {
        // a b b^-1 c -> a c
        let r = GroupWord::reduce(w(&[(0, false), (1, false), (1, true), (2, false)]), None);
        assert_eq!(r.letters(), &w(&[(0, false), (2, false)])[..]);
        // id a id^-1 -> a
        let r = GroupWord::reduce(w(&[(3, false), (0, false), (3, true)]), Some(3));
        assert_eq!(r, GroupWord::generator(0));
        assert!(GroupWord::reduce(w(&[(0, true), (0, false)]), None).is_empty());
    }

    #[test]
    fn counts_of_reduced_words() {
        assert_eq!(reduced_words(&[0, 1, 2], 0).len(), 1);
        assert_eq!(reduced_words(&[0, 1, 2], 3).len(), 6 * 5 * 5);
        let words = reduced_words(&[0, 1], 2);
        assert!(words.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(positive_words(&[0, 1, 2], 2).len(), 9);
    }

    #[test]
    fn powers_and_commutators() {
        let a = GroupWord::generator(0);
        let b = GroupWord::generator(1);
        assert_eq!(a.pow(3).len(), 3);
        assert_eq!(a.pow(-2), a.inverse().pow(2));
        assert!(a.pow(2).commutes_with(&a.pow(5)));
        assert!(!a.commutes_with(&b));
        assert_eq!(GroupWord::commutator(&a, &b).exponent_sums(2), vec![0, 0]);
    }

    #[test]
    fn parse_names() {
        let names = [Symbol::new("a"), Symbol::new("b")];
        let lookup = |s: &Symbol| names.iter().position(|n| n == s);
        let l = parse_letters("a b^-1  a", lookup).unwrap();
        assert_eq!(format_letters(&l, &names), "a b^-1 a");
        assert_eq!(
            parse_letters("a z", lookup),
            Err(Error::UnknownGenerator("z".into()))
        );
    }
}
