//! Oriented simple graphs and the automata they define: each oriented edge
//! `e = (x, y)` is a state that swaps `x` and `y`, restricts to itself on
//! `x` and to the identity everywhere else.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::mealy::{MealyAutomaton, Transition};
use crate::symbol::Symbol;

/// Name of the sink state added to every graph automaton.
pub const IDENTITY: &str = "id";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn touches(&self, v: usize) -> bool {
        self.tail == v || self.head == v
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.touches(other.tail) || self.touches(other.head)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl OrientedGraph {
    /// Vertices are listed first in `vertices` order, then any endpoint not
    /// yet seen in order of appearance.
    pub fn new(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        let owned: Vec<(String, String, String)> = edges
            .iter()
            .map(|(n, t, h)| (n.to_string(), t.to_string(), h.to_string()))
            .collect();
        Self::build(vertices.iter().map(|v| v.to_string()).collect(), owned)
    }

    /// Edge list only; the vertex set is inferred.
    pub fn from_edges(edges: &[(&str, &str, &str)]) -> Result<Self> {
        Self::new(&[], edges)
    }

    fn build(mut vertices: Vec<String>, edges: Vec<(String, String, String)>) -> Result<Self> {
        let mut index: HashMap<String, usize> = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let mut vertex = |name: &str, vertices: &mut Vec<String>| {
            *index.entry(name.to_string()).or_insert_with(|| {
                vertices.push(name.to_string());
                vertices.len() - 1
            })
        };
        let mut names = HashSet::new();
        let mut pairs = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (name, tail, head) in edges {
            if !names.insert(name.clone()) {
                return Err(Error::DuplicateName(name));
            }
            if tail == head {
                return Err(Error::InvalidGraph(format!("edge `{name}` is a self-loop")));
            }
            let t = vertex(&tail, &mut vertices);
            let h = vertex(&head, &mut vertices);
            if !pairs.insert((t.min(h), t.max(h))) {
                return Err(Error::InvalidGraph(format!(
                    "edge `{name}` duplicates the pair {{{tail}, {head}}}"
                )));
            }
            out.push(Edge {
                name,
                tail: t,
                head: h,
            });
        }
        Ok(OrientedGraph {
            vertices,
            edges: out,
        })
    }

    /// Parses `name tail head` lines. `#` starts a comment; an optional
    /// `vertices: v1 v2 …` line declares vertices (and their order) up front.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                vertices.extend(rest.split_whitespace().map(str::to_string));
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                [name, tail, head] => {
                    edges.push((name.to_string(), tail.to_string(), head.to_string()))
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected `name tail head`",
                        lineno + 1
                    )))
                }
            }
        }
        Self::build(vertices, edges)
    }

    pub fn to_text(&self) -> String {
        let mut text = String::new();
        writeln!(text, "vertices: {}", self.vertices.join(" ")).unwrap();
        for e in &self.edges {
            writeln!(
                text,
                "{} {} {}",
                e.name, self.vertices[e.tail], self.vertices[e.head]
            )
            .unwrap();
        }
        text
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// The same graph with the orientation of edge `name` flipped.
    pub fn reversed(&self, name: &str) -> Result<Self> {
        let i = self
            .edge_index(name)
            .ok_or_else(|| Error::InvalidGraph(format!("no edge `{name}`")))?;
        let mut g = self.clone();
        let e = &mut g.edges[i];
        std::mem::swap(&mut e.tail, &mut e.head);
        Ok(g)
    }

    fn neighbours(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.tail].push((e.head, i));
            adj[e.head].push((e.tail, i));
        }
        adj
    }

    /// Component id of each vertex in the underlying undirected graph.
    pub fn components(&self) -> Vec<usize> {
        let adj = self.neighbours();
        let mut comp = vec![usize::MAX; self.vertices.len()];
        let mut next = 0;
        for root in 0..self.vertices.len() {
            if comp[root] != usize::MAX {
                continue;
            }
            comp[root] = next;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &(w, _) in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |c| c + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn is_tree(&self) -> bool {
        !self.vertices.is_empty()
            && self.is_connected()
            && self.edges.len() + 1 == self.vertices.len()
    }

    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.component_count() == self.vertices.len()
    }

    /// True if following edges from tail to head can return to a vertex.
    pub fn has_oriented_cycle(&self) -> bool {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        let mut out = vec![Vec::new(); n];
        for e in &self.edges {
            indegree[e.head] += 1;
            out[e.tail].push(e.head);
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop_front() {
            removed += 1;
            for &w in &out[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        removed < n
    }

    /// Breadth-first path from `from` to `to` in the underlying undirected
    /// graph, as `(edge, forward)` steps; `forward` means the step goes from
    /// the edge's tail to its head.
    pub fn path(&self, from: usize, to: usize) -> Option<Vec<(usize, bool)>> {
        let adj = self.neighbours();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, e));
                    queue.push_back(w);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut steps = Vec::new();
        let mut v = to;
        while let Some((u, e)) = parent[v] {
            steps.push((e, self.edges[e].tail == u));
            v = u;
        }
        steps.reverse();
        Some(steps)
    }

    /// Complement of the line graph: edges are adjacent iff they share no
    /// endpoint.
    pub fn line_graph_complement(&self) -> UndirectedGraph {
        let adjacent = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, a)| {
                self.edges
                    .iter()
                    .enumerate()
                    .map(|(j, b)| i != j && !a.shares_endpoint(b))
                    .collect()
            })
            .collect();
        UndirectedGraph {
            vertices: self.edges.iter().map(|e| e.name.clone()).collect(),
            adjacent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    pub vertices: Vec<String>,
    pub adjacent: Vec<Vec<bool>>,
}

impl UndirectedGraph {
    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacent[i][j]
    }

    /// Adjacent pairs `(i, j)` with `i < j`.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adjacent[i][j])
            .collect()
    }
}

/// The graph automaton: states are the edges followed by the sink `id`,
/// the alphabet is the vertex set.
pub fn build_graph_automaton(g: &OrientedGraph) -> Result<MealyAutomaton> {
    if g.edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if g.edges.iter().any(|e| e.name == IDENTITY) {
        return Err(Error::InvalidGraph(format!(
            "`{IDENTITY}` is reserved for the sink state"
        )));
    }
    if let Some(v) = (0..g.vertices.len()).find(|&v| !g.edges.iter().any(|e| e.touches(v))) {
        return Err(Error::IsolatedVertex(g.vertices[v].clone()));
    }
    let mut transitions = Vec::new();
    for e in &g.edges {
        for (z, vertex) in g.vertices.iter().enumerate() {
            let (output, next) = if z == e.tail {
                (&g.vertices[e.head], e.name.as_str())
            } else if z == e.head {
                (&g.vertices[e.tail], IDENTITY)
            } else {
                (vertex, IDENTITY)
            };
            transitions.push(Transition::new(&e.name, vertex, output, next));
        }
    }
    for vertex in &g.vertices {
        transitions.push(Transition::new(IDENTITY, vertex, vertex, IDENTITY));
    }
    let states = g
        .edges
        .iter()
        .map(|e| Symbol::new(e.name.clone()))
        .chain(std::iter::once(Symbol::new(IDENTITY)))
        .collect();
    let alphabet = g.vertices.iter().map(|v| Symbol::new(v.clone())).collect();
    MealyAutomaton::new(states, alphabet, &transitions, Some(Symbol::new(IDENTITY)))
}
