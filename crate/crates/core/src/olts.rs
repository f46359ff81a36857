//! Explicit finite labeled transition systems equipped with a quasi order.
//!
//! These are the desk-scale stand-ins for general WSTS: the state set is
//! finite and the order is given extensionally, which makes reversal,
//! complementation and determinization effective.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{format_word, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `≤` is a simulation and the final states are upward closed.
    Upward,
    /// `≥` is a simulation and the final states are downward closed.
    Downward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Upward => Direction::Downward,
            Direction::Downward => Direction::Upward,
        }
    }
}

/// On-disk form of an [`ExplicitOlts`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OltsFile {
    pub states: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
    pub initial: Vec<String>,
    #[serde(rename = "final")]
    pub finals: Vec<String>,
    pub alphabet: Vec<Letter>,
    #[serde(default)]
    pub trans: Vec<(String, Letter, Vec<String>)>,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitOlts {
    states: Vec<String>,
    leq: Vec<Vec<bool>>,
    initial: BTreeSet<usize>,
    finals: BTreeSet<usize>,
    alphabet: Vec<Letter>,
    /// `trans[s][a]` is the successor set of state `s` under letter `a`.
    trans: Vec<Vec<BTreeSet<usize>>>,
    direction: Direction,
}

/// A failed compatibility condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `inside` is final, `outside` is not, yet the order relates them in the
    /// direction the final set must be closed under.
    FinalNotClosed { inside: String, outside: String },
    /// The successor `successor` of the simulated state has no matching
    /// successor from the simulating state.
    Simulation {
        smaller: String,
        larger: String,
        letter: Letter,
        successor: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FinalNotClosed { inside, outside } => {
                write!(f, "F not closed: {inside} is final but {outside} is not")
            }
            Violation::Simulation {
                smaller,
                larger,
                letter,
                successor,
            } => write!(
                f,
                "simulation fails at ({smaller}, {larger}, {letter}): successor {successor} unmatched"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedLangReport {
    pub max_len: usize,
    pub words: BTreeSet<Word>,
}

impl BoundedLangReport {
    pub fn contains(&self, w: &[Letter]) -> bool {
        self.words.contains(w)
    }
}

fn index_of(states: &[String], s: &str) -> Result<usize> {
    states
        .iter()
        .position(|x| x == s)
        .ok_or_else(|| Error::UnknownState(s.to_string()))
}

impl ExplicitOlts {
    pub fn from_file(f: OltsFile) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for s in &f.states {
            if !seen.insert(s) {
                return Err(Error::InvalidInput(format!("duplicate state `{s}`")));
            }
        }
        let mut seen = BTreeSet::new();
        for a in &f.alphabet {
            if !seen.insert(a) {
                return Err(Error::InvalidInput(format!("duplicate letter `{a}`")));
            }
        }
        let n = f.states.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (s, t) in &f.leq {
            leq[index_of(&f.states, s)?][index_of(&f.states, t)?] = true;
        }
        for a in 0..n {
            for b in 0..n {
                if !leq[a][b] {
                    continue;
                }
                for c in 0..n {
                    if leq[b][c] && !leq[a][c] {
                        return Err(Error::NotQuasiOrder(format!(
                            "{} ≤ {} and {} ≤ {} but not {} ≤ {}",
                            f.states[a], f.states[b], f.states[b], f.states[c], f.states[a],
                            f.states[c]
                        )));
                    }
                }
            }
        }
        let set = |xs: &[String]| -> Result<BTreeSet<usize>> {
            xs.iter().map(|s| index_of(&f.states, s)).collect()
        };
        let initial = set(&f.initial)?;
        let finals = set(&f.finals)?;
        let mut trans = vec![vec![BTreeSet::new(); f.alphabet.len()]; n];
        for (s, a, ts) in &f.trans {
            let si = index_of(&f.states, s)?;
            let ai = f
                .alphabet
                .iter()
                .position(|x| x == a)
                .ok_or_else(|| Error::UnknownLetter(a.clone()))?;
            for t in ts {
                trans[si][ai].insert(index_of(&f.states, t)?);
            }
        }
        Ok(ExplicitOlts {
            states: f.states,
            leq,
            initial,
            finals,
            alphabet: f.alphabet,
            trans,
            direction: f.direction,
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }

    pub fn to_file(&self) -> OltsFile {
        let name = |i: &usize| self.states[*i].clone();
        let mut leq = Vec::new();
        for (i, row) in self.leq.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b && i != j {
                    leq.push((name(&i), name(&j)));
                }
            }
        }
        let mut trans = Vec::new();
        for (s, row) in self.trans.iter().enumerate() {
            for (a, ts) in row.iter().enumerate() {
                if !ts.is_empty() {
                    trans.push((
                        name(&s),
                        self.alphabet[a].clone(),
                        ts.iter().map(name).collect(),
                    ));
                }
            }
        }
        OltsFile {
            states: self.states.clone(),
            leq,
            initial: self.initial.iter().map(name).collect(),
            finals: self.finals.iter().map(name).collect(),
            alphabet: self.alphabet.clone(),
            trans,
            direction: self.direction,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("model serializes")
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn state_leq(&self, s: usize, t: usize) -> bool {
        self.leq[s][t]
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn successors(&self, s: usize, a: usize) -> &BTreeSet<usize> {
        &self.trans[s][a]
    }

    fn letter_index(&self, a: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|x| x == a)
            .ok_or_else(|| Error::UnknownLetter(a.to_string()))
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial.len() == 1 && self.trans.iter().flatten().all(|ts| ts.len() == 1)
    }

    fn require_deterministic(&self, op: &str) -> Result<()> {
        if self.is_deterministic() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{op} requires a deterministic system (one initial state, exactly one successor per state and letter)"
            )))
        }
    }

    fn post(&self, from: &BTreeSet<usize>, a: usize) -> BTreeSet<usize> {
        from.iter().flat_map(|&s| self.trans[s][a].iter().copied()).collect()
    }

    /// States reached from the initial states along `w`.
    pub fn reach(&self, w: &[Letter]) -> Result<BTreeSet<usize>> {
        let mut cur = self.initial.clone();
        for l in w {
            cur = self.post(&cur, self.letter_index(l)?);
        }
        Ok(cur)
    }

    pub fn accepts(&self, w: &[Letter]) -> Result<bool> {
        Ok(self.reach(w)?.iter().any(|s| self.finals.contains(s)))
    }

    /// Checks final-set closure and the simulation property for the declared
    /// direction. An empty result means the system is compatible.
    pub fn check_compatible(&self) -> Vec<Violation> {
        let n = self.states.len();
        let mut out = Vec::new();
        let name = |i: usize| self.states[i].clone();
        for &f in &self.finals {
            for t in 0..n {
                let related = match self.direction {
                    Direction::Upward => self.leq[f][t],
                    Direction::Downward => self.leq[t][f],
                };
                if related && !self.finals.contains(&t) {
                    out.push(Violation::FinalNotClosed {
                        inside: name(f),
                        outside: name(t),
                    });
                }
            }
        }
        for s in 0..n {
            for t in 0..n {
                if s == t || !self.leq[s][t] {
                    continue;
                }
                for a in 0..self.alphabet.len() {
                    match self.direction {
                        Direction::Upward => {
                            for &s2 in &self.trans[s][a] {
                                if !self.trans[t][a].iter().any(|&t2| self.leq[s2][t2]) {
                                    out.push(Violation::Simulation {
                                        smaller: name(s),
                                        larger: name(t),
                                        letter: self.alphabet[a].clone(),
                                        successor: name(s2),
                                    });
                                }
                            }
                        }
                        Direction::Downward => {
                            for &t2 in &self.trans[t][a] {
                                if !self.trans[s][a].iter().any(|&s2| self.leq[s2][t2]) {
                                    out.push(Violation::Simulation {
                                        smaller: name(s),
                                        larger: name(t),
                                        letter: self.alphabet[a].clone(),
                                        successor: name(t2),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Synchronized product. Its language is the intersection.
    pub fn product(&self, other: &ExplicitOlts) -> Result<ExplicitOlts> {
        let a1: BTreeSet<_> = self.alphabet.iter().collect();
        let a2: BTreeSet<_> = other.alphabet.iter().collect();
        if a1 != a2 {
            return Err(Error::InvalidInput("product requires equal alphabets".into()));
        }
        if self.direction != other.direction {
            return Err(Error::InvalidInput("product requires equal directions".into()));
        }
        let m = other.states.len();
        let pair = |s: usize, t: usize| s * m + t;
        let mut states = Vec::with_capacity(self.states.len() * m);
        for s in &self.states {
            for t in &other.states {
                states.push(format!("({s},{t})"));
            }
        }
        let n = states.len();
        let mut leq = vec![vec![false; n]; n];
        for s in 0..self.states.len() {
            for t in 0..m {
                for s2 in 0..self.states.len() {
                    for t2 in 0..m {
                        leq[pair(s, t)][pair(s2, t2)] = self.leq[s][s2] && other.leq[t][t2];
                    }
                }
            }
        }
        let cross = |x: &BTreeSet<usize>, y: &BTreeSet<usize>| -> BTreeSet<usize> {
            x.iter()
                .flat_map(|&s| y.iter().map(move |&t| pair(s, t)))
                .collect()
        };
        let mut trans = vec![vec![BTreeSet::new(); self.alphabet.len()]; n];
        for s in 0..self.states.len() {
            for t in 0..m {
                for (a, l) in self.alphabet.iter().enumerate() {
                    let b = other.letter_index(l)?;
                    trans[pair(s, t)][a] = cross(&self.trans[s][a], &other.trans[t][b]);
                }
            }
        }
        Ok(ExplicitOlts {
            states,
            leq,
            initial: cross(&self.initial, &other.initial),
            finals: cross(&self.finals, &other.finals),
            alphabet: self.alphabet.clone(),
            trans,
            direction: self.direction,
        })
    }

    /// Reversal: initial and final states swap (the new final set being the
    /// closure of the old initial set), transitions flip and are added from
    /// every state below (resp. above, for downward input) the old target.
    pub fn reverse(&self) -> ExplicitOlts {
        let n = self.states.len();
        let below = |s: usize, t: usize| match self.direction {
            Direction::Upward => self.leq[s][t],
            Direction::Downward => self.leq[t][s],
        };
        let mut trans = vec![vec![BTreeSet::new(); self.alphabet.len()]; n];
        for src in 0..n {
            for a in 0..self.alphabet.len() {
                for &tgt in &self.trans[src][a] {
                    for (s, row) in trans.iter_mut().enumerate() {
                        if below(s, tgt) {
                            row[a].insert(src);
                        }
                    }
                }
            }
        }
        let finals = (0..n)
            .filter(|&s| self.initial.iter().any(|&i| below(s, i)))
            .collect();
        ExplicitOlts {
            states: self.states.clone(),
            leq: self.leq.clone(),
            initial: self.finals.clone(),
            finals,
            alphabet: self.alphabet.clone(),
            trans,
            direction: self.direction.flip(),
        }
    }

    /// Complement of a deterministic system: final states flip and so does
    /// the direction of compatibility.
    pub fn complement(&self) -> Result<ExplicitOlts> {
        self.require_deterministic("complement")?;
        let finals = (0..self.states.len())
            .filter(|s| !self.finals.contains(s))
            .collect();
        Ok(ExplicitOlts {
            finals,
            direction: self.direction.flip(),
            ..self.clone()
        })
    }

    /// Maximal elements of `set`, one representative per equivalence class.
    fn max_antichain(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &x in set {
            let dominated = set.iter().any(|&y| self.leq[x][y] && !self.leq[y][x]);
            let has_earlier_twin = out.iter().any(|&y: &usize| self.leq[x][y] && self.leq[y][x]);
            if !dominated && !has_earlier_twin {
                out.insert(x);
            }
        }
        out
    }

    fn min_elements(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter()
            .copied()
            .filter(|&x| !set.iter().any(|&y| self.leq[y][x] && !self.leq[x][y]))
            .collect()
    }

    /// Determinization of a finitely branching upward-compatible system.
    ///
    /// States are the reachable downward closures of finite sets, each kept
    /// as its antichain of maximal elements and ordered by elementwise
    /// domination. A state is final when it dominates a final state.
    pub fn determinize_fb(&self) -> Result<ExplicitOlts> {
        if self.direction != Direction::Upward {
            return Err(Error::Precondition(
                "determinize_fb requires an upward-compatible system".into(),
            ));
        }
        let start = self.max_antichain(&self.initial);
        let mut ids: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut sets: Vec<BTreeSet<usize>> = Vec::new();
        let mut edges: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        ids.insert(start.clone(), 0);
        sets.push(start);
        queue.push_back(0);
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(self.alphabet.len());
            for a in 0..self.alphabet.len() {
                let next = self.max_antichain(&self.post(&sets[i], a));
                let j = match ids.get(&next) {
                    Some(&j) => j,
                    None => {
                        let j = sets.len();
                        ids.insert(next.clone(), j);
                        sets.push(next);
                        queue.push_back(j);
                        j
                    }
                };
                row.push(j);
            }
            edges.push(row);
        }
        let names: Vec<String> = sets
            .iter()
            .map(|set| {
                let mut ns: Vec<&str> = set.iter().map(|&s| self.states[s].as_str()).collect();
                ns.sort_unstable();
                format!("{{{}}}", ns.join(","))
            })
            .collect();
        let dominated = |x: &BTreeSet<usize>, y: &BTreeSet<usize>| {
            x.iter().all(|&a| y.iter().any(|&b| self.leq[a][b]))
        };
        let leq = sets
            .iter()
            .map(|x| sets.iter().map(|y| dominated(x, y)).collect())
            .collect();
        let finals = sets
            .iter()
            .enumerate()
            .filter(|(_, x)| {
                x.iter()
                    .any(|&a| self.finals.iter().any(|&f| self.leq[f][a]))
            })
            .map(|(i, _)| i)
            .collect();
        let trans = edges
            .into_iter()
            .map(|row| row.into_iter().map(|j| BTreeSet::from([j])).collect())
            .collect();
        Ok(ExplicitOlts {
            states: names,
            leq,
            initial: BTreeSet::from([0]),
            finals,
            alphabet: self.alphabet.clone(),
            trans,
            direction: Direction::Upward,
        })
    }

    /// Removes every transition of a downward-compatible system whose target
    /// is not minimal among the successors for its state and letter.
    pub fn prune_nonminimal(&self) -> Result<ExplicitOlts> {
        if self.direction != Direction::Downward {
            return Err(Error::Precondition(
                "prune_nonminimal requires a downward-compatible system".into(),
            ));
        }
        let trans = self
            .trans
            .iter()
            .map(|row| row.iter().map(|ts| self.min_elements(ts)).collect())
            .collect();
        Ok(ExplicitOlts {
            trans,
            ..self.clone()
        })
    }

    /// Exact `L(u) ∩ Σ^{≤k}` by breadth-first Post-set computation.
    pub fn members_upto(&self, k: usize) -> BoundedLangReport {
        let mut words = BTreeSet::new();
        let mut layer: Vec<(Word, BTreeSet<usize>)> = vec![(Vec::new(), self.initial.clone())];
        for len in 0..=k {
            let mut next = Vec::new();
            for (w, set) in layer {
                if set.iter().any(|s| self.finals.contains(s)) {
                    words.insert(w.clone());
                }
                if len == k || set.is_empty() {
                    continue;
                }
                for (a, l) in self.alphabet.iter().enumerate() {
                    let post = self.post(&set, a);
                    if !post.is_empty() {
                        let mut w2 = w.clone();
                        w2.push(l.clone());
                        next.push((w2, post));
                    }
                }
            }
            layer = next;
        }
        BoundedLangReport { max_len: k, words }
    }

    /// `w ≤ w2` in the word order induced by a deterministic system: the
    /// states reached are related by the state order.
    pub fn word_leq(&self, w: &[Letter], w2: &[Letter]) -> Result<bool> {
        self.require_deterministic("word_leq_dwsts")?;
        let s = *self.reach(w)?.iter().next().expect("deterministic");
        let t = *self.reach(w2)?.iter().next().expect("deterministic");
        Ok(self.leq[s][t])
    }
}

pub fn word_leq_dwsts(d: &ExplicitOlts, w: &[Letter], w2: &[Letter]) -> Result<bool> {
    d.word_leq(w, w2)
}

/// Bounded Nerode comparison: every suffix `u` with `|u| ≤ k` that puts
/// `w·u` in the language also puts `w2·u` in it.
///
/// `false` is a definite refutation of `w ⪯ w2`; `true` only confirms the
/// relation up to the bound.
pub fn nerode_leq_bounded<L, F>(member: F, alphabet: &[L], w: &[L], w2: &[L], k: usize) -> bool
where
    L: Clone,
    F: Fn(&[L]) -> bool,
{
    let mut layer: Vec<Vec<L>> = vec![Vec::new()];
    for len in 0..=k {
        for u in &layer {
            let mut a: Vec<L> = w.to_vec();
            a.extend_from_slice(u);
            if member(&a) {
                let mut b: Vec<L> = w2.to_vec();
                b.extend_from_slice(u);
                if !member(&b) {
                    return false;
                }
            }
        }
        if len < k {
            layer = layer
                .iter()
                .flat_map(|u| {
                    alphabet.iter().map(move |l| {
                        let mut u2 = u.clone();
                        u2.push(l.clone());
                        u2
                    })
                })
                .collect();
        }
    }
    true
}

/// Human-readable listing of a bounded language.
pub fn format_report(r: &BoundedLangReport) -> String {
    r.words
        .iter()
        .map(|w| format_word(w))
        .collect::<Vec<_>>()
        .join("\n")
}
