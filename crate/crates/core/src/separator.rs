//! Regular separators from ideal-represented invariants of a product.
//!
//! For a net `v1` and a deterministic net `v2`, the product explores `v1`
//! and `v2` in lockstep. Whenever `v2` cannot follow a letter, the product
//! moves its second component to [`Control::Sink`], which sits below every
//! configuration of `v2`. With that completion every run of `v1` survives in
//! the product, so the automaton read off an invariant of the product
//! accepts all of `L(v1)`, while avoiding the jointly final states keeps it
//! disjoint from `L(v2)`.
//!
//! Finality of a separator state only looks at the first factor of its
//! ideal.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fa::Nfa;
use crate::ideal::{join_product, Config, Control, IdealCover, OmegaMarking};
use crate::vass::{check_invariant, karp_miller, InvariantVerdict, LabeledVass, OmegaSystem};
use crate::word::{Letter, Word};

/// Lockstep product of `v1` with the sink-completion of a deterministic
/// `v2`. Ideals are joined ω-markings whose second control may be
/// [`Control::Sink`], in which case the second vector is all zeros.
pub struct SyncProduct<'a> {
    v1: &'a LabeledVass,
    v2: &'a LabeledVass,
}

impl<'a> SyncProduct<'a> {
    /// `v2` must be deterministic.
    pub fn new(v1: &'a LabeledVass, v2: &'a LabeledVass) -> Result<Self> {
        check_alphabets(v1, v2)?;
        v2.require_deterministic()?;
        Ok(SyncProduct { v1, v2 })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.v1.dim(), self.v2.dim())
    }

    /// Splits a product ideal into its factors.
    pub fn split(&self, j: &OmegaMarking) -> (OmegaMarking, OmegaMarking) {
        crate::ideal::split_product(j, self.v1.dim()).expect("product ideal")
    }

    fn sink(&self) -> OmegaMarking {
        OmegaMarking::finite(Control::Sink, &vec![0; self.v2.dim()])
    }

    /// The product ideal reached by concrete `c1` and `v2`'s configuration
    /// (or the sink).
    pub fn join_concrete(&self, c1: &Config, c2: Option<&Config>) -> OmegaMarking {
        let j2 = c2.map_or_else(|| self.sink(), Config::to_omega);
        join_product(&c1.to_omega(), &j2)
    }

    /// Second-factor order: the sink lies below everything.
    fn second_leq(a: &OmegaMarking, b: &OmegaMarking) -> bool {
        a.control == Control::Sink || (b.control != Control::Sink && a.leq_unchecked(b))
    }

    /// Step of the sink-completed `v2` on an ideal.
    fn step2(&self, j2: &OmegaMarking, letter: &str) -> OmegaMarking {
        if j2.control == Control::Sink {
            return j2.clone();
        }
        self.v2
            .transitions()
            .iter()
            .find(|t| t.letter == letter && t.src == j2.control)
            .and_then(|t| t.fire_omega(j2))
            .unwrap_or_else(|| self.sink())
    }

    /// Step of the sink-completed `v2` on a concrete configuration.
    pub fn step2_concrete(&self, c2: Option<&Config>, letter: &str) -> Option<Config> {
        let c2 = c2?;
        self.v2
            .transitions()
            .iter()
            .find(|t| t.letter == letter && t.src == c2.control)
            .and_then(|t| t.fire(c2))
    }

    fn first_meets_final(&self, j1: &OmegaMarking) -> bool {
        self.v1.final_basis().iter().any(|b| j1.contains(b))
    }
}

impl OmegaSystem for SyncProduct<'_> {
    fn alphabet(&self) -> &[Letter] {
        self.v1.alphabet()
    }

    fn initial_ideals(&self) -> Vec<OmegaMarking> {
        let mut out = Vec::new();
        for i1 in self.v1.initial() {
            for i2 in self.v2.initial() {
                out.push(join_product(&i1.to_omega(), &i2.to_omega()));
            }
        }
        out
    }

    fn successors(&self, m: &OmegaMarking, letter: &str) -> Vec<OmegaMarking> {
        let (j1, j2) = self.split(m);
        let next1 = self.v1.successors(&j1, letter);
        if next1.is_empty() {
            return next1;
        }
        let next2 = self.step2(&j2, letter);
        next1.iter().map(|n1| join_product(n1, &next2)).collect()
    }

    fn ideal_leq(&self, a: &OmegaMarking, b: &OmegaMarking) -> bool {
        let (a1, a2) = self.split(a);
        let (b1, b2) = self.split(b);
        a1.leq_unchecked(&b1) && Self::second_leq(&a2, &b2)
    }

    fn meets_final(&self, m: &OmegaMarking) -> bool {
        let (j1, j2) = self.split(m);
        self.first_meets_final(&j1) && self.v2.meets_final(&j2)
    }
}

fn check_alphabets(v1: &LabeledVass, v2: &LabeledVass) -> Result<()> {
    let a1: BTreeSet<_> = v1.alphabet().iter().collect();
    let a2: BTreeSet<_> = v2.alphabet().iter().collect();
    if a1 == a2 {
        Ok(())
    } else {
        Err(Error::InvalidInput("the two nets must share their alphabet".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SepState {
    pub id: usize,
    pub payload: OmegaMarking,
    #[serde(rename = "final")]
    pub is_final: bool,
}

/// Separator automaton whose states carry product ideals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparatorNfa {
    pub states: Vec<SepState>,
    pub initial: Vec<usize>,
    pub trans: Vec<(usize, Letter, Vec<usize>)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alphabet: Vec<Letter>,
}

impl SeparatorNfa {
    /// Plain automaton view over `alphabet`, states named by id.
    pub fn to_nfa(&self, alphabet: &[Letter]) -> Result<Nfa> {
        let mut nfa = Nfa::new(alphabet.to_vec());
        for (i, s) in self.states.iter().enumerate() {
            if s.id != i {
                return Err(Error::InvalidInput(format!(
                    "separator state ids must be 0..n in order, found {} at {i}",
                    s.id
                )));
            }
            nfa.add_state(format!("s{i}"), s.is_final);
        }
        let n = self.states.len();
        let check = |i: usize| {
            if i < n {
                Ok(i)
            } else {
                Err(Error::UnknownState(i.to_string()))
            }
        };
        for &i in &self.initial {
            nfa.initial.insert(check(i)?);
        }
        for (s, a, ts) in &self.trans {
            if !alphabet.contains(a) {
                return Err(Error::UnknownLetter(a.clone()));
            }
            for &t in ts {
                nfa.add_transition(check(*s)?, a, check(t)?);
            }
        }
        Ok(nfa)
    }

    /// Alphabet stored with the automaton, or the letters on its arcs.
    pub fn letters(&self) -> Vec<Letter> {
        if !self.alphabet.is_empty() {
            return self.alphabet.clone();
        }
        let set: BTreeSet<&Letter> = self.trans.iter().map(|(_, a, _)| a).collect();
        set.into_iter().cloned().collect()
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        let mut al = self.letters();
        for l in w {
            if !al.contains(l) {
                al.push(l.clone());
            }
        }
        self.to_nfa(&al).map(|n| n.accepts(w)).unwrap_or(false)
    }

    pub fn payloads(&self) -> impl Iterator<Item = &OmegaMarking> {
        self.states.iter().map(|s| &s.payload)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("separator serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph separator {\n  rankdir=LR;\n");
        for s in &self.states {
            let shape = if s.is_final { "doublecircle" } else { "circle" };
            let label = format!("s{}\n{}", s.id, s.payload);
            let _ = writeln!(out, "  s{} [label={label:?}, shape={shape}];", s.id);
        }
        for &i in &self.initial {
            let _ = writeln!(out, "  init{i} [shape=point];\n  init{i} -> s{i};");
        }
        for (s, a, ts) in &self.trans {
            for t in ts {
                let _ = writeln!(out, "  s{s} -> s{t} [label={a:?}];");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Reads the separator off an invariant `q` of the product.
pub fn build_separator(v1: &LabeledVass, v2: &LabeledVass, q: &IdealCover) -> Result<SeparatorNfa> {
    let prod = SyncProduct::new(v1, v2)?;
    let want = v1.dim() + v2.dim();
    for e in q {
        if e.dim() != want {
            return Err(Error::DimensionMismatch {
                expected: want,
                found: e.dim(),
            });
        }
        if !matches!(e.control, Control::Pair(..)) {
            return Err(Error::InvalidInput(format!("`{e}` is not a product ideal")));
        }
    }
    if let InvariantVerdict::Violation {
        kind,
        element,
        letter,
    } = check_invariant(&prod, q)
    {
        let on = letter.map(|a| format!(" on `{a}`")).unwrap_or_default();
        return Err(Error::Precondition(format!(
            "cover is not an inductive invariant of the product: {kind} fails at {element}{on}"
        )));
    }
    let payloads = q.elements();
    let states = payloads
        .iter()
        .enumerate()
        .map(|(id, p)| SepState {
            id,
            payload: p.clone(),
            is_final: prod.first_meets_final(&prod.split(p).0),
        })
        .collect();
    let inits = prod.initial_ideals();
    let initial = (0..payloads.len())
        .filter(|&i| inits.iter().any(|j| prod.ideal_leq(j, &payloads[i])))
        .collect();
    let mut trans = Vec::new();
    for (i, p) in payloads.iter().enumerate() {
        for a in v1.alphabet() {
            let post = prod.successors(p, a);
            let targets: Vec<usize> = (0..payloads.len())
                .filter(|&r| post.iter().any(|e| prod.ideal_leq(e, &payloads[r])))
                .collect();
            if !targets.is_empty() {
                trans.push((i, a.clone(), targets));
            }
        }
    }
    Ok(SeparatorNfa {
        states,
        initial,
        trans,
        alphabet: v1.alphabet().to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationOutcome {
    Separator(SeparatorNfa),
    /// A word in both languages, already re-checked by membership.
    Witness(Word),
}

/// Decides disjointness exactly and returns either a separator or a joint
/// witness.
pub fn separate(v1: &LabeledVass, v2: &LabeledVass) -> Result<SeparationOutcome> {
    let prod = SyncProduct::new(v1, v2)?;
    let plain = v1.product(v2)?;
    let back = plain.backward_covers(plain.final_basis())?;
    if let Some(w) = back.witness {
        assert!(
            v1.membership(&w)? && v2.membership(&w)?,
            "backward witness must lie in both languages"
        );
        return Ok(SeparationOutcome::Witness(w));
    }
    let km = karp_miller(&prod);
    let sep = build_separator(v1, v2, &km.cover)?;
    Ok(SeparationOutcome::Separator(sep))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// `L(v1) ⊆ L(A)`.
    pub inclusion: bool,
    /// `L(A) ∩ L(v2) = ∅`.
    pub disjointness: bool,
    #[serde(rename = "inclusionCounterexample")]
    pub inclusion_counterexample: Option<Word>,
    #[serde(rename = "disjointnessCounterexample")]
    pub disjointness_counterexample: Option<Word>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.inclusion && self.disjointness
    }
}

/// Exact check that `a` separates `L(v1)` from `L(v2)`, by backward
/// coverability on products with the determinized automaton and its
/// complement.
pub fn verify_separator(v1: &LabeledVass, v2: &LabeledVass, a: &SeparatorNfa) -> Result<VerifyReport> {
    check_alphabets(v1, v2)?;
    let dfa = a.to_nfa(v1.alphabet())?.determinize();
    let check = |net: &LabeledVass, aut: &crate::fa::Dfa| -> Result<Option<Word>> {
        let p = net.product(&aut.to_vass())?;
        Ok(p.backward_covers(p.final_basis())?.witness)
    };
    let (inc, dis) = std::thread::scope(|s| {
        let inc = s.spawn(|| check(v1, &dfa.complement()));
        let dis = check(v2, &dfa);
        (inc.join().expect("inclusion check"), dis)
    });
    let (inc, dis) = (inc?, dis?);
    Ok(VerifyReport {
        inclusion: inc.is_none(),
        disjointness: dis.is_none(),
        inclusion_counterexample: inc,
        disjointness_counterexample: dis,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SimulationReport {
    pub checked: usize,
    pub failures: Vec<(Word, String)>,
}

impl SimulationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Along every prefix of each sample word: each product configuration is
/// below some reached separator state, and `v2`'s configuration is below the
/// second factor of every reached state.
pub fn check_simulation_properties(
    v1: &LabeledVass,
    v2: &LabeledVass,
    a: &SeparatorNfa,
    samples: &[Word],
) -> Result<SimulationReport> {
    let prod = SyncProduct::new(v1, v2)?;
    let nfa = a.to_nfa(v1.alphabet())?;
    let mut report = SimulationReport::default();
    for w in samples {
        report.checked += 1;
        if let Err(msg) = simulate_word(&prod, &nfa, a, w) {
            report.failures.push((w.clone(), msg));
        }
    }
    Ok(report)
}

fn simulate_word(
    prod: &SyncProduct<'_>,
    nfa: &Nfa,
    a: &SeparatorNfa,
    w: &[Letter],
) -> std::result::Result<(), String> {
    let mut r1: BTreeSet<Config> = prod.v1.initial().iter().cloned().collect();
    let mut c2: Option<Config> = prod.v2.initial().first().cloned();
    let mut states = nfa.initial.clone();
    for k in 0..=w.len() {
        for c1 in &r1 {
            let j = prod.join_concrete(c1, c2.as_ref());
            if !states.iter().any(|&s| prod.ideal_leq(&j, &a.states[s].payload)) {
                return Err(format!("prefix {k}: {j} is not dominated by a reached state"));
            }
        }
        let j2 = c2.as_ref().map_or_else(|| prod.sink(), Config::to_omega);
        for &s in &states {
            let (_, second) = prod.split(&a.states[s].payload);
            if !SyncProduct::second_leq(&j2, &second) {
                return Err(format!(
                    "prefix {k}: second net at {j2} exceeds reached state s{s}"
                ));
            }
        }
        if k == w.len() {
            break;
        }
        let l = &w[k];
        r1 = prod
            .v1
            .post_concrete(&r1, l)
            .map_err(|e| e.to_string())?;
        c2 = prod.step2_concrete(c2.as_ref(), l);
        states = nfa.step(&states, l);
    }
    Ok(())
}
