//! Exact backward coverability over minimal bases.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use serde::Serialize;

use super::LabeledVass;
use crate::error::{Error, Result};
use crate::ideal::{Config, Control};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BackwardResult {
    /// Some initial configuration can cover a target.
    pub covered: bool,
    /// Minimal basis of the upward-closed set of configurations that can
    /// cover a target, in canonical order.
    #[serde(rename = "preBasis")]
    pub pre_basis: Vec<Config>,
    /// A word leading from an initial configuration to above a target,
    /// present exactly when `covered`.
    pub witness: Option<Word>,
}

struct Entry {
    config: Config,
    /// Transition index and the entry its firing lands above.
    next: Option<(usize, usize)>,
}

/// Antichain of minimal entries, bucketed by control and token sum. A
/// marking can only lie below markings with a sum at least its own.
#[derive(Default)]
struct Basis {
    arena: Vec<Entry>,
    alive: Vec<bool>,
    buckets: BTreeMap<Control, BTreeMap<u64, Vec<usize>>>,
}

fn marking_leq(a: &[u64], b: &[u64]) -> bool {
    a.len() == b.len() && (0..a.len()).all(|i| a[i] <= b[i])
}

impl Basis {
    fn insert(&mut self, e: Entry) -> Option<usize> {
        let m = &e.config.marking;
        let sum: u64 = m.iter().sum();
        let by_sum = self.buckets.entry(e.config.control.clone()).or_default();
        let arena = &self.arena;
        if by_sum
            .range(..=sum)
            .rev()
            .any(|(_, ids)| ids.iter().rev().any(|&b| marking_leq(&arena[b].config.marking, m)))
        {
            return None;
        }
        for (_, ids) in by_sum.range_mut(sum..) {
            ids.retain(|&b| {
                let keep = !marking_leq(m, &arena[b].config.marking);
                self.alive[b] = keep;
                keep
            });
        }
        let id = self.arena.len();
        by_sum.entry(sum).or_default().push(id);
        self.arena.push(e);
        self.alive.push(true);
        Some(id)
    }

    fn sum(&self, id: usize) -> u64 {
        self.arena[id].config.marking.iter().sum()
    }

    fn live(self) -> (Vec<Entry>, Vec<usize>) {
        let ids = self.buckets.into_values().flat_map(|m| m.into_values().flatten()).collect();
        (self.arena, ids)
    }
}

impl LabeledVass {
    /// Minimal pre-image of `↑b` under transition `t`: `take + (b ⊖ put)`.
    fn pre_min(&self, t: usize, b: &Config) -> Option<Config> {
        let t = &self.transitions[t];
        if t.dst != b.control {
            return None;
        }
        let marking = b
            .marking
            .iter()
            .zip(t.take.iter().zip(&t.put))
            .map(|(&x, (&tk, &p))| tk + x.saturating_sub(p))
            .collect();
        Some(Config::new(t.src.clone(), marking))
    }

    /// Backward coverability fixpoint from `↑target`.
    pub fn backward_covers(&self, target: &[Config]) -> Result<BackwardResult> {
        for c in target {
            if c.marking.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: c.marking.len(),
                });
            }
        }
        let mut st = Basis::default();
        // Smallest token sum first keeps most insertions above the basis.
        let mut queue = BinaryHeap::new();
        for c in target {
            if let Some(id) = st.insert(Entry { config: c.clone(), next: None }) {
                queue.push(Reverse((st.sum(id), id)));
            }
        }
        while let Some(Reverse((_, e))) = queue.pop() {
            // Entries subsumed after being queued add nothing new.
            if !st.alive[e] {
                continue;
            }
            for t in 0..self.transitions.len() {
                let Some(pre) = self.pre_min(t, &st.arena[e].config) else {
                    continue;
                };
                if let Some(id) = st.insert(Entry { config: pre, next: Some((t, e)) }) {
                    queue.push(Reverse((st.sum(id), id)));
                }
            }
        }
        let (arena, basis) = st.live();

        let start = self.initial.iter().find_map(|i| {
            basis
                .iter()
                .copied()
                .find(|&b| arena[b].config.leq(i))
                .map(|b| (i.clone(), b))
        });
        let witness = start.map(|(mut cur, mut idx)| {
            let mut word = Vec::new();
            while let Some((t, next)) = arena[idx].next {
                let tr = &self.transitions[t];
                cur = tr.fire(&cur).expect("pre-basis entry enables its transition");
                word.push(tr.letter.clone());
                idx = next;
            }
            debug_assert!(arena[idx].config.leq(&cur));
            word
        });
        let mut pre_basis: Vec<Config> = basis.iter().map(|&b| arena[b].config.clone()).collect();
        pre_basis.sort();
        Ok(BackwardResult {
            covered: witness.is_some(),
            pre_basis,
            witness,
        })
    }

    /// Exact language emptiness.
    pub fn is_empty_language(&self) -> bool {
        !self
            .backward_covers(&self.final_basis)
            .expect("final basis has the net's dimension")
            .covered
    }
}

pub fn backward_covers(v: &LabeledVass, target: &[Config]) -> Result<BackwardResult> {
    v.backward_covers(target)
}
