//! Reducible automata generated from Schreier graphs.
//!
//! A finite-index subgroup of the free group is given as the stabilizer of
//! a basepoint under a permutation action of the generators. Its Schreier
//! graph is decorated with outputs (`id` off a spanning tree) and read as
//! the enriched dual of a new automaton whose letters are the cosets.

use std::collections::{HashMap, VecDeque};

use crate::action::{reduced_words, GroupWord, Letter};
use crate::error::{Error, Result};
use crate::graphgroup::IDENTITY;
use crate::mealy::{MealyAutomaton, Transition};
use crate::symbol::Symbol;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAction {
    generators: Vec<Symbol>,
    perms: Vec<Vec<usize>>,
    basepoint: usize,
    identity: usize,
}

impl FiniteAction {
    /// Generators act on `0..degree` by the given images. A generator named
    /// `id` must act trivially and is appended if missing.
    pub fn new(degree: usize, basepoint: usize, generators: &[(&str, Vec<usize>)]) -> Result<Self> {
        if basepoint >= degree {
            return Err(Error::BadAction(format!(
                "basepoint {basepoint} outside 0..{degree}"
            )));
        }
        let mut names = Vec::new();
        let mut perms = Vec::new();
        for (name, images) in generators {
            let sym = Symbol::parse(name);
            if sym.is_inverse() {
                return Err(Error::BadAction(format!(
                    "generator `{name}` is an inverse"
                )));
            }
            if names.contains(&sym) {
                return Err(Error::DuplicateName(name.to_string()));
            }
            let mut hit = vec![false; degree];
            if images.len() != degree
                || images
                    .iter()
                    .any(|&i| i >= degree || std::mem::replace(&mut hit[i], true))
            {
                return Err(Error::BadAction(format!(
                    "images of `{name}` are not a permutation of 0..{degree}"
                )));
            }
            if *name == IDENTITY && images.iter().enumerate().any(|(p, &q)| p != q) {
                return Err(Error::BadAction(format!("`{IDENTITY}` must act trivially")));
            }
            names.push(sym);
            perms.push(images.clone());
        }
        let identity = match names.iter().position(|s| s.name() == IDENTITY) {
            Some(i) => i,
            None => {
                names.push(Symbol::new(IDENTITY));
                perms.push((0..degree).collect());
                names.len() - 1
            }
        };
        Ok(FiniteAction {
            generators: names,
            perms,
            basepoint,
            identity,
        })
    }

    /// `degree m`, `basepoint p`, then `name: image image …` lines;
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut degree = None;
        let mut basepoint = None;
        let mut gens: Vec<(String, Vec<usize>)> = Vec::new();
        let number = |s: &str, what: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad {what} `{}`", s.trim())))
        };
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("degree") {
                degree = Some(number(rest, "degree")?);
            } else if let Some(rest) = line.strip_prefix("basepoint") {
                basepoint = Some(number(rest, "basepoint")?);
            } else if let Some((name, images)) = line.split_once(':') {
                let images = images
                    .split_whitespace()
                    .map(|t| number(t, "image"))
                    .collect::<Result<Vec<usize>>>()?;
                gens.push((name.trim().to_string(), images));
            } else {
                return Err(Error::Parse(format!("unrecognized line `{line}`")));
            }
        }
        let degree = degree.ok_or_else(|| Error::Parse("missing `degree`".into()))?;
        let borrowed: Vec<(&str, Vec<usize>)> =
            gens.iter().map(|(n, i)| (n.as_str(), i.clone())).collect();
        Self::new(degree, basepoint.unwrap_or(0), &borrowed)
    }

    pub fn generators(&self) -> &[Symbol] {
        &self.generators
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn degree(&self) -> usize {
        self.perms.first().map_or(0, Vec::len)
    }
}

/// Orbit of the basepoint with one arc per generator at every vertex.
/// Vertex 0 is the basepoint; vertices are numbered in discovery order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierGraph {
    pub points: Vec<usize>,
    pub generators: Vec<Symbol>,
    pub identity: usize,
    /// `targets[v][a]`: vertex reached from `v` along the arc labelled `a`.
    pub targets: Vec<Vec<usize>>,
}

impl SchreierGraph {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Vertex reached along `a^-1`.
    pub fn source(&self, v: usize, a: usize) -> usize {
        (0..self.len())
            .find(|&p| self.targets[p][a] == v)
            .expect("generators act by permutations")
    }

    /// Every arc `(from, letter, to)`, formal inverses included.
    pub fn arcs(&self) -> Vec<(usize, Letter, usize)> {
        let mut arcs = Vec::new();
        for v in 0..self.len() {
            for a in 0..self.generators.len() {
                arcs.push((v, Letter::positive(a), self.targets[v][a]));
                arcs.push((v, Letter::new(a, true), self.source(v, a)));
            }
        }
        arcs
    }
}

pub fn schreier_graph(action: &FiniteAction) -> SchreierGraph {
    let mut index: HashMap<usize, usize> = HashMap::from([(action.basepoint, 0)]);
    let mut points = vec![action.basepoint];
    let mut queue = VecDeque::from([action.basepoint]);
    while let Some(p) = queue.pop_front() {
        for perm in &action.perms {
            let q = perm[p];
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(q) {
                slot.insert(points.len());
                points.push(q);
                queue.push_back(q);
            }
        }
    }
    let targets = points
        .iter()
        .map(|&p| action.perms.iter().map(|perm| index[&perm[p]]).collect())
        .collect();
    SchreierGraph {
        points,
        generators: action.generators.clone(),
        identity: action.identity,
        targets,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeArc {
    pub from: usize,
    pub generator: usize,
    pub to: usize,
}

/// Breadth-first tree over the positive arcs from the basepoint, scanning
/// generators in declaration order.
pub fn spanning_tree(sch: &SchreierGraph) -> Vec<TreeArc> {
    let mut seen = vec![false; sch.len()];
    let mut tree = Vec::new();
    if sch.is_empty() {
        return tree;
    }
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for a in 0..sch.generators.len() {
            let w = sch.targets[v][a];
            if !seen[w] {
                seen[w] = true;
                tree.push(TreeArc {
                    from: v,
                    generator: a,
                    to: w,
                });
                queue.push_back(w);
            }
        }
    }
    tree
}

/// Outputs for tree arcs, keyed by `(vertex, generator)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    outputs: Vec<(String, String, String)>,
}

impl Assignment {
    pub fn new(entries: &[(&str, &str, &str)]) -> Self {
        Assignment {
            outputs: entries
                .iter()
                .map(|(c, g, o)| (c.to_string(), g.to_string(), o.to_string()))
                .collect(),
        }
    }

    /// `<coset> <generator> <output>` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut outputs = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line.split_whitespace().collect::<Vec<_>>().as_slice() {
                [c, g, o] => outputs.push((c.to_string(), g.to_string(), o.to_string())),
                _ => {
                    return Err(Error::Parse(format!(
                        "expected `coset generator output`: `{line}`"
                    )))
                }
            }
        }
        Ok(Assignment { outputs })
    }
}

#[derive(Debug, Clone)]
pub struct SchreierAutomaton {
    /// States are the generators, letters the cosets.
    pub automaton: MealyAutomaton,
    /// The Schreier graph with outputs; equals the enriched dual of
    /// `automaton`.
    pub decorated: MealyAutomaton,
    pub graph: SchreierGraph,
    pub tree: Vec<TreeArc>,
    /// A single coset: the tree is empty and every output is `id`.
    pub degenerate: bool,
}

fn resolve_assignment(
    sch: &SchreierGraph,
    tree: &[TreeArc],
    assignment: Option<&Assignment>,
) -> Result<HashMap<(usize, usize), usize>> {
    let mut outputs: HashMap<(usize, usize), usize> = tree
        .iter()
        .map(|t| ((t.from, t.generator), t.generator))
        .collect();
    let Some(assignment) = assignment else {
        return Ok(outputs);
    };
    let find_gen = |name: &str| sch.generators.iter().position(|g| g.to_string() == name);
    for (coset, gen, out) in &assignment.outputs {
        let v = sch
            .points
            .iter()
            .position(|p| p.to_string() == *coset)
            .ok_or_else(|| Error::BadAssignment(format!("unknown coset `{coset}`")))?;
        let a = find_gen(gen)
            .ok_or_else(|| Error::BadAssignment(format!("unknown generator `{gen}`")))?;
        let o = find_gen(out)
            .ok_or_else(|| Error::BadAssignment(format!("output `{out}` is not a state")))?;
        match outputs.get_mut(&(v, a)) {
            Some(slot) => *slot = o,
            None => {
                return Err(Error::BadAssignment(format!(
                    "arc {coset} --{gen}--> is not a spanning tree arc"
                )))
            }
        }
    }
    Ok(outputs)
}

/// Builds the decorated Schreier graph and the automaton it is the
/// enriched dual of. Off-tree arcs output `id`; tree arcs output their
/// assigned state (by default their own label); reversed arcs output the
/// formal inverse.
pub fn build_reducible_automaton(
    action: &FiniteAction,
    assignment: Option<&Assignment>,
) -> Result<SchreierAutomaton> {
    let sch = schreier_graph(action);
    let tree = spanning_tree(&sch);
    let outputs = resolve_assignment(&sch, &tree, assignment)?;
    let output = |v: usize, a: usize| outputs.get(&(v, a)).copied().unwrap_or(sch.identity);
    let gens = &sch.generators;
    let cosets: Vec<Symbol> = sch
        .points
        .iter()
        .map(|p| Symbol::new(p.to_string()))
        .collect();

    let mut rows = Vec::new();
    for (a, name) in gens.iter().enumerate() {
        for v in 0..sch.len() {
            rows.push(Transition {
                state: name.clone(),
                input: cosets[v].clone(),
                next: gens[output(v, a)].clone(),
                output: cosets[sch.targets[v][a]].clone(),
            });
        }
    }
    let automaton = MealyAutomaton::new(
        gens.clone(),
        cosets.clone(),
        &rows,
        Some(gens[sch.identity].clone()),
    )?;

    let letters: Vec<Symbol> = gens
        .iter()
        .cloned()
        .chain(gens.iter().map(Symbol::inverse))
        .collect();
    let mut arcs = Vec::new();
    for v in 0..sch.len() {
        for (a, name) in gens.iter().enumerate() {
            arcs.push(Transition {
                state: cosets[v].clone(),
                input: name.clone(),
                next: cosets[sch.targets[v][a]].clone(),
                output: gens[output(v, a)].clone(),
            });
        }
        for (a, name) in gens.iter().enumerate() {
            let p = sch.source(v, a);
            arcs.push(Transition {
                state: cosets[v].clone(),
                input: name.inverse(),
                next: cosets[p].clone(),
                output: gens[output(p, a)].inverse(),
            });
        }
    }
    let decorated = MealyAutomaton::new(cosets, letters, &arcs, None)?;
    Ok(SchreierAutomaton {
        automaton,
        decorated,
        degenerate: sch.len() == 1,
        graph: sch,
        tree,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopReport {
    Pass {
        checked: usize,
    },
    /// A closed walk at `vertex` labelled `word` whose output, with `id`
    /// letters erased, is not shorter than the word.
    Violation {
        vertex: usize,
        word: GroupWord,
        output_len: usize,
    },
}

/// Checks every reduced word of length `1..=max_len` over the non-identity
/// generators that labels a closed walk in the decorated graph.
pub fn verify_loop_shortening(sa: &SchreierAutomaton, max_len: usize) -> LoopReport {
    let dec = &sa.decorated;
    let m = sa.graph.generators.len();
    let id = sa.graph.identity;
    let gens: Vec<usize> = (0..m).filter(|&a| a != id).collect();
    let column = |l: Letter| l.generator() + if l.is_inverse() { m } else { 0 };
    let mut checked = 0;
    for len in 1..=max_len {
        for g in reduced_words(&gens, len) {
            for q in 0..dec.num_states() {
                let mut p = q;
                let mut output_len = 0;
                for &l in g.letters() {
                    let c = column(l);
                    if dec.out(p, c) % m != id {
                        output_len += 1;
                    }
                    p = dec.next(p, c);
                }
                if p != q {
                    continue;
                }
                checked += 1;
                if output_len >= g.len() {
                    return LoopReport::Violation {
                        vertex: q,
                        word: g,
                        output_len,
                    };
                }
            }
        }
    }
    LoopReport::Pass { checked }
}
