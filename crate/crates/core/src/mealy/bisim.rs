use std::collections::HashMap;

use super::MealyAutomaton;

/// A partition of the state indices into classes. Classes are ordered by
/// their least member and list members in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    fn from_labels(labels: &[usize]) -> Self {
        let mut renumber = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(labels.len());
        for (s, &l) in labels.iter().enumerate() {
            let c = *renumber.entry(l).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(s);
            class_of.push(c);
        }
        Partition { class_of, classes }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, s: usize) -> usize {
        self.class_of[s]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Moore-style refinement: start from equal output rows, split by the
/// classes of the successors until stable.
pub(super) fn coarsest_partition(aut: &MealyAutomaton) -> Partition {
    let m = aut.num_states();
    let n = aut.num_letters();
    let mut labels = {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        (0..m)
            .map(|s| {
                let row: Vec<usize> = (0..n).map(|x| aut.out(s, x)).collect();
                let next_id = ids.len();
                *ids.entry(row).or_insert(next_id)
            })
            .collect::<Vec<_>>()
    };
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let refined: Vec<usize> = (0..m)
            .map(|s| {
                let mut key = Vec::with_capacity(n + 1);
                key.push(labels[s]);
                key.extend((0..n).map(|x| labels[aut.next(s, x)]));
                let next_id = ids.len();
                *ids.entry(key).or_insert(next_id)
            })
            .collect();
        let before = labels
            .iter()
            .collect::<std::collections::HashSet<_>>()
            .len();
        if ids.len() == before {
            return Partition::from_labels(&refined);
        }
        labels = refined;
    }
}

pub(super) fn quotient(aut: &MealyAutomaton) -> MealyAutomaton {
    let p = coarsest_partition(aut);
    let n = aut.num_letters();
    let reps: Vec<usize> = p.classes().iter().map(|c| c[0]).collect();
    let mut next = Vec::with_capacity(reps.len() * n);
    let mut out = Vec::with_capacity(reps.len() * n);
    for &r in &reps {
        for x in 0..n {
            next.push(p.class_of(aut.next(r, x)));
            out.push(aut.out(r, x));
        }
    }
    let states = reps.iter().map(|&r| aut.state(r).clone()).collect();
    let sink = aut.sink().map(|s| p.class_of(s));
    MealyAutomaton::from_tables(states, aut.alphabet().to_vec(), next, out, sink)
        .expect("quotient preserves the sink laws")
}
