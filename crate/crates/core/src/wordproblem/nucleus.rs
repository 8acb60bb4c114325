use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::action::{apply_raw, generators, positive_words, reduced_words, section, GroupWord};
use crate::error::{Error, Result};
use crate::mealy::MealyAutomaton;

use super::{acts_trivially, check_invertible};

/// Nucleus elements with their self-similar tables. Element 0 is the
/// identity; representatives are shortlex-least words, sorted shortlex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nucleus {
    pub elements: Vec<GroupWord>,
    /// `perms[i][x]`: image of letter `x` under element `i`.
    pub perms: Vec<Vec<usize>>,
    /// `sections[i][x]`: index of the restriction of element `i` at `x`.
    pub sections: Vec<Vec<usize>>,
}

impl Nucleus {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Index of the element represented by `w`, if it lies in the nucleus.
    pub fn index_of(&self, aut: &MealyAutomaton, w: &GroupWord) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| acts_trivially(aut, &w.concat(&e.inverse())))
    }

    pub fn max_rep_len(&self) -> usize {
        self.elements.iter().map(GroupWord::len).max().unwrap_or(0)
    }
}

/// Group elements met so far, identified up to equality in the group.
struct ElementTable<'a> {
    aut: &'a MealyAutomaton,
    probes: Vec<Vec<usize>>,
    reps: Vec<GroupWord>,
    buckets: HashMap<Vec<usize>, Vec<usize>>,
    edges: Vec<Option<Vec<usize>>>,
}

impl<'a> ElementTable<'a> {
    fn new(aut: &'a MealyAutomaton) -> Self {
        let n = aut.num_letters().max(1);
        let mut depth = 1;
        while n.pow(depth as u32 + 1) <= 128 {
            depth += 1;
        }
        let letters: Vec<usize> = (0..aut.num_letters()).collect();
        ElementTable {
            aut,
            probes: positive_words(&letters, depth),
            reps: Vec::new(),
            buckets: HashMap::new(),
            edges: Vec::new(),
        }
    }

    fn portrait(&self, w: &GroupWord) -> Vec<usize> {
        self.probes
            .iter()
            .flat_map(|u| apply_raw(self.aut, w.letters(), u))
            .collect()
    }

    fn find(&self, w: &GroupWord, key: &[usize]) -> Option<usize> {
        self.buckets.get(key)?.iter().copied().find(|&i| {
            let rep = &self.reps[i];
            rep == w || acts_trivially(self.aut, &w.concat(&rep.inverse()))
        })
    }

    /// Index of `w`'s element, adding it if new. A shorter equal word
    /// replaces the stored representative.
    fn intern(&mut self, w: &GroupWord) -> usize {
        let key = self.portrait(w);
        if let Some(i) = self.find(w, &key) {
            if w.shortlex_cmp(&self.reps[i]).is_lt() {
                self.reps[i] = w.clone();
            }
            return i;
        }
        let i = self.reps.len();
        self.reps.push(w.clone());
        self.edges.push(None);
        self.buckets.entry(key).or_default().push(i);
        i
    }

    fn sections(&mut self, i: usize) -> Vec<usize> {
        if let Some(e) = &self.edges[i] {
            return e.clone();
        }
        let rep = self.reps[i].clone();
        let e: Vec<usize> = (0..self.aut.num_letters())
            .map(|x| {
                let (_, s) = section(self.aut, rep.letters(), x);
                self.intern(&s)
            })
            .collect();
        self.edges[i] = Some(e.clone());
        e
    }

    /// Elements of the restriction graph of `w` that lie on a cycle or are
    /// reachable from one.
    fn limit(&mut self, w: &GroupWord, depth_cap: usize, size_cap: usize) -> Result<Vec<usize>> {
        let start = self.intern(w);
        let mut depth = HashMap::from([(start, 0usize)]);
        let mut order = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let d = depth[&i];
            for j in self.sections(i) {
                if depth.contains_key(&j) {
                    continue;
                }
                if d + 1 > depth_cap {
                    return Err(Error::NotContractingWithinCaps(format!(
                        "restrictions deeper than {depth_cap}"
                    )));
                }
                if depth.len() >= size_cap {
                    return Err(Error::NotContractingWithinCaps(format!(
                        "more than {size_cap} restrictions of one product"
                    )));
                }
                depth.insert(j, d + 1);
                order.push(j);
                queue.push_back(j);
            }
        }
        let local: HashMap<usize, usize> = order.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let adj: Vec<Vec<usize>> = order
            .iter()
            .map(|&i| {
                self.edges[i]
                    .as_ref()
                    .expect("explored")
                    .iter()
                    .map(|j| local[j])
                    .collect()
            })
            .collect();
        let on_cycle = nodes_on_cycles(&adj);
        let mut keep = vec![false; adj.len()];
        let mut stack: Vec<usize> = (0..adj.len()).filter(|&v| on_cycle[v]).collect();
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut keep[v], true) {
                continue;
            }
            stack.extend(adj[v].iter().copied().filter(|&w| !keep[w]));
        }
        Ok((0..adj.len())
            .filter(|&v| keep[v])
            .map(|v| order[v])
            .collect())
    }
}

/// Vertices lying on a directed cycle (including self-loops).
fn nodes_on_cycles(adj: &[Vec<usize>]) -> Vec<bool> {
    let n = adj.len();
    // v is on a cycle iff v is reachable from one of its successors
    (0..n)
        .map(|v| {
            let mut seen = vec![false; n];
            let mut stack = adj[v].clone();
            while let Some(w) = stack.pop() {
                if w == v {
                    return true;
                }
                if !std::mem::replace(&mut seen[w], true) {
                    stack.extend_from_slice(&adj[w]);
                }
            }
            false
        })
        .collect()
}

/// Fixpoint search: start from the limits of the generators and their
/// inverses, then add the limit of every product of two elements found,
/// until nothing new appears.
pub fn nucleus(aut: &MealyAutomaton, depth_cap: usize, size_cap: usize) -> Result<Nucleus> {
    check_invertible(aut)?;
    let mut table = ElementTable::new(aut);
    let mut members: BTreeSet<usize> = BTreeSet::new();
    members.extend(table.limit(&GroupWord::empty(), depth_cap, size_cap)?);
    for g in generators(aut) {
        let w = GroupWord::generator(g);
        members.extend(table.limit(&w, depth_cap, size_cap)?);
        members.extend(table.limit(&w.inverse(), depth_cap, size_cap)?);
    }
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    loop {
        let snapshot: Vec<usize> = members.iter().copied().collect();
        let mut grew = false;
        for &g in &snapshot {
            for &h in &snapshot {
                if !done.insert((g, h)) {
                    continue;
                }
                let product = table.reps[g].concat(&table.reps[h]);
                for i in table.limit(&product, depth_cap, size_cap)? {
                    grew |= members.insert(i);
                }
                if members.len() > size_cap {
                    return Err(Error::NotContractingWithinCaps(format!(
                        "nucleus exceeds {size_cap} elements"
                    )));
                }
            }
        }
        if !grew {
            break;
        }
    }
    canonical_nucleus(aut, &mut table, &members)
}

fn canonical_nucleus(
    aut: &MealyAutomaton,
    table: &mut ElementTable<'_>,
    members: &BTreeSet<usize>,
) -> Result<Nucleus> {
    let gens = generators(aut);
    let longest = members
        .iter()
        .map(|&i| table.reps[i].len())
        .max()
        .unwrap_or(0);
    let mut canonical: HashMap<usize, GroupWord> = HashMap::new();
    'lengths: for len in 0..=longest {
        for w in reduced_words(&gens, len) {
            let key = table.portrait(&w);
            if let Some(i) = table.find(&w, &key) {
                if members.contains(&i) && !canonical.contains_key(&i) {
                    canonical.insert(i, w);
                    if canonical.len() == members.len() {
                        break 'lengths;
                    }
                }
            }
        }
    }
    for &i in members {
        canonical.entry(i).or_insert_with(|| table.reps[i].clone());
    }
    let mut order: Vec<usize> = members.iter().copied().collect();
    order.sort_by(|a, b| canonical[a].shortlex_cmp(&canonical[b]));
    let position: HashMap<usize, usize> = order.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut perms = Vec::with_capacity(order.len());
    let mut sections = Vec::with_capacity(order.len());
    for &i in &order {
        let rep = canonical[&i].clone();
        perms.push(
            (0..aut.num_letters())
                .map(|x| section(aut, rep.letters(), x).0)
                .collect(),
        );
        let row = table
            .sections(i)
            .iter()
            .map(|j| {
                position.get(j).copied().ok_or_else(|| {
                    Error::NotContractingWithinCaps("nucleus not closed under restriction".into())
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        sections.push(row);
    }
    Ok(Nucleus {
        elements: order.iter().map(|i| canonical[i].clone()).collect(),
        perms,
        sections,
    })
}
