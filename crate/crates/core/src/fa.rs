//! Finite automata over string letters.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{Config, Control};
use crate::vass::{LabeledVass, Transition};
use crate::word::{Letter, Word};

/// Nondeterministic automaton. States are indices; names are for output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    pub names: Vec<String>,
    pub alphabet: Vec<Letter>,
    pub initial: BTreeSet<usize>,
    pub finals: BTreeSet<usize>,
    /// `delta[s][a]` lists the `a`-successors of `s`.
    pub delta: Vec<BTreeMap<Letter, BTreeSet<usize>>>,
}

/// On-disk automaton: `trans` holds `[src, letter, [dst...]]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NfaFile {
    pub states: Vec<String>,
    pub alphabet: Vec<Letter>,
    pub initial: Vec<String>,
    #[serde(rename = "final")]
    pub finals: Vec<String>,
    pub trans: Vec<(String, Letter, Vec<String>)>,
}

impl Nfa {
    pub fn new(alphabet: Vec<Letter>) -> Self {
        Nfa {
            names: Vec::new(),
            alphabet,
            initial: BTreeSet::new(),
            finals: BTreeSet::new(),
            delta: Vec::new(),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>, is_final: bool) -> usize {
        let id = self.names.len();
        self.names.push(name.into());
        self.delta.push(BTreeMap::new());
        if is_final {
            self.finals.insert(id);
        }
        id
    }

    pub fn add_transition(&mut self, src: usize, letter: &str, dst: usize) {
        self.delta[src]
            .entry(letter.to_string())
            .or_default()
            .insert(dst);
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn successors(&self, s: usize, letter: &str) -> impl Iterator<Item = usize> + '_ {
        self.delta[s].get(letter).into_iter().flatten().copied()
    }

    pub fn step(&self, set: &BTreeSet<usize>, letter: &str) -> BTreeSet<usize> {
        set.iter().flat_map(|&s| self.successors(s, letter)).collect()
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        let mut cur = self.initial.clone();
        for l in w {
            cur = self.step(&cur, l);
        }
        cur.iter().any(|s| self.finals.contains(s))
    }

    /// Subset construction over reachable subsets. The result is total; the
    /// empty subset appears as a state when it is reachable.
    pub fn determinize(&self) -> Dfa {
        let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        index.insert(self.initial.clone(), 0);
        subsets.push(self.initial.clone());
        queue.push_back(0);
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(self.alphabet.len());
            for a in &self.alphabet {
                let next = self.step(&subsets[i], a);
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    subsets.push(next);
                    queue.push_back(subsets.len() - 1);
                    subsets.len() - 1
                });
                row.push(id);
            }
            delta.push(row);
        }
        let names = subsets
            .iter()
            .map(|s| {
                let parts: Vec<&str> = s.iter().map(|&i| self.names[i].as_str()).collect();
                format!("{{{}}}", parts.join(","))
            })
            .collect();
        let finals = subsets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.iter().any(|x| self.finals.contains(x)))
            .map(|(i, _)| i)
            .collect();
        Dfa {
            names,
            alphabet: self.alphabet.clone(),
            initial: 0,
            finals,
            delta,
        }
    }

    /// Shortest accepted word, breadth-first over states.
    pub fn shortest_word(&self) -> Option<Word> {
        let mut prev: BTreeMap<usize, Option<(usize, Letter)>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for &s in &self.initial {
            prev.insert(s, None);
            queue.push_back(s);
        }
        while let Some(s) = queue.pop_front() {
            if self.finals.contains(&s) {
                let mut w = Vec::new();
                let mut cur = s;
                while let Some(Some((p, a))) = prev.get(&cur) {
                    w.push(a.clone());
                    cur = *p;
                }
                w.reverse();
                return Some(w);
            }
            for a in &self.alphabet {
                for t in self.successors(s, a) {
                    if !prev.contains_key(&t) {
                        prev.insert(t, Some((s, a.clone())));
                        queue.push_back(t);
                    }
                }
            }
        }
        None
    }

    pub fn is_language_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    pub fn to_file(&self) -> NfaFile {
        let n = |i: &usize| self.names[*i].clone();
        let mut trans = Vec::new();
        for (s, row) in self.delta.iter().enumerate() {
            for (a, ts) in row {
                trans.push((self.names[s].clone(), a.clone(), ts.iter().map(n).collect()));
            }
        }
        NfaFile {
            states: self.names.clone(),
            alphabet: self.alphabet.clone(),
            initial: self.initial.iter().map(n).collect(),
            finals: self.finals.iter().map(n).collect(),
            trans,
        }
    }

    pub fn from_file(f: NfaFile) -> Result<Self> {
        let mut ids = BTreeMap::new();
        let mut nfa = Nfa::new(f.alphabet);
        for s in &f.states {
            if ids.insert(s.clone(), nfa.add_state(s.clone(), false)).is_some() {
                return Err(Error::InvalidInput(format!("duplicate state `{s}`")));
            }
        }
        let id = |s: &String| ids.get(s).copied().ok_or_else(|| Error::UnknownState(s.clone()));
        for s in &f.initial {
            nfa.initial.insert(id(s)?);
        }
        for s in &f.finals {
            nfa.finals.insert(id(s)?);
        }
        for (s, a, ts) in &f.trans {
            if !nfa.alphabet.contains(a) {
                return Err(Error::UnknownLetter(a.clone()));
            }
            let s = id(s)?;
            for t in ts {
                let t = id(t)?;
                nfa.add_transition(s, a, t);
            }
        }
        Ok(nfa)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("automaton serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph nfa {\n  rankdir=LR;\n");
        for (i, n) in self.names.iter().enumerate() {
            let shape = if self.finals.contains(&i) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  s{i} [label={n:?}, shape={shape}];");
        }
        for &i in &self.initial {
            let _ = writeln!(out, "  init{i} [shape=point];\n  init{i} -> s{i};");
        }
        for (s, row) in self.delta.iter().enumerate() {
            for (a, ts) in row {
                for t in ts {
                    let _ = writeln!(out, "  s{s} -> s{t} [label={a:?}];");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Complete deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub names: Vec<String>,
    pub alphabet: Vec<Letter>,
    pub initial: usize,
    pub finals: BTreeSet<usize>,
    /// `delta[s][i]` is the successor of `s` on `alphabet[i]`.
    pub delta: Vec<Vec<usize>>,
}

impl Dfa {
    /// Accepts a deterministic NFA, adding a rejecting sink for missing
    /// moves. Fails when some state or letter has two successors or there
    /// are several initial states.
    pub fn try_from_nfa(nfa: &Nfa) -> Result<Dfa> {
        if nfa.initial.len() > 1 {
            return Err(Error::Precondition("several initial states".into()));
        }
        let mut names = nfa.names.clone();
        let sink = names.len();
        let mut needs_sink = nfa.initial.is_empty();
        let mut delta = Vec::with_capacity(names.len() + 1);
        for (s, row) in nfa.delta.iter().enumerate() {
            let mut out = Vec::with_capacity(nfa.alphabet.len());
            for a in &nfa.alphabet {
                let ts = row.get(a);
                match ts.map(BTreeSet::len).unwrap_or(0) {
                    0 => {
                        needs_sink = true;
                        out.push(sink);
                    }
                    1 => out.push(*ts.unwrap().first().unwrap()),
                    _ => {
                        return Err(Error::Precondition(format!(
                            "state `{}` has several successors on `{a}`",
                            nfa.names[s]
                        )))
                    }
                }
            }
            delta.push(out);
        }
        if needs_sink {
            names.push("sink".into());
            delta.push(vec![sink; nfa.alphabet.len()]);
        }
        Ok(Dfa {
            names,
            alphabet: nfa.alphabet.clone(),
            initial: nfa.initial.first().copied().unwrap_or(sink),
            finals: nfa.finals.clone(),
            delta,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn letter_index(&self, a: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == a)
    }

    pub fn run(&self, w: &[Letter]) -> Result<usize> {
        w.iter().try_fold(self.initial, |s, a| {
            self.letter_index(a)
                .map(|i| self.delta[s][i])
                .ok_or_else(|| Error::UnknownLetter(a.clone()))
        })
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.run(w).map(|s| self.finals.contains(&s)).unwrap_or(false)
    }

    pub fn complement(&self) -> Dfa {
        let finals = (0..self.len()).filter(|s| !self.finals.contains(s)).collect();
        Dfa {
            finals,
            ..self.clone()
        }
    }

    /// Reachable part of the synchronized product, accepting the
    /// intersection. Alphabets must agree as sequences.
    pub fn product_intersect(&self, other: &Dfa) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::InvalidInput("alphabets differ".into()));
        }
        let mut index = BTreeMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0usize);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let row = (0..self.alphabet.len())
                .map(|a| {
                    let next = (self.delta[p][a], other.delta[q][a]);
                    *index.entry(next).or_insert_with(|| {
                        pairs.push(next);
                        pairs.len() - 1
                    })
                })
                .collect();
            delta.push(row);
            i += 1;
        }
        Ok(Dfa {
            names: pairs
                .iter()
                .map(|&(p, q)| format!("({},{})", self.names[p], other.names[q]))
                .collect(),
            alphabet: self.alphabet.clone(),
            initial: 0,
            finals: pairs
                .iter()
                .enumerate()
                .filter(|(_, (p, q))| self.finals.contains(p) && other.finals.contains(q))
                .map(|(i, _)| i)
                .collect(),
            delta,
        })
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone());
        for (i, n) in self.names.iter().enumerate() {
            nfa.add_state(n.clone(), self.finals.contains(&i));
        }
        nfa.initial.insert(self.initial);
        for (s, row) in self.delta.iter().enumerate() {
            for (a, &t) in self.alphabet.iter().zip(row) {
                nfa.add_transition(s, a, t);
            }
        }
        nfa
    }

    pub fn shortest_word(&self) -> Option<Word> {
        self.to_nfa().shortest_word()
    }

    pub fn is_language_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// The automaton as a VASS of dimension 0 whose final basis is its set
    /// of accepting states. Control `s<i>` stands for state `i`.
    pub fn to_vass(&self) -> LabeledVass {
        let ctl = |i: usize| Control::named(format!("s{i}"));
        let transitions = self
            .delta
            .iter()
            .enumerate()
            .flat_map(|(s, row)| {
                row.iter().zip(&self.alphabet).map(move |(&t, a)| Transition {
                    src: ctl(s),
                    letter: a.clone(),
                    take: vec![],
                    put: vec![],
                    dst: ctl(t),
                })
            })
            .collect();
        LabeledVass::new(
            0,
            (0..self.len()).map(ctl).collect(),
            self.alphabet.clone(),
            transitions,
            vec![Config::new(ctl(self.initial), vec![])],
            self.finals.iter().map(|&f| Config::new(ctl(f), vec![])).collect(),
        )
        .expect("automaton translates to a well-formed net")
    }
}
