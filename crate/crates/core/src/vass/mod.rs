//! Labeled VASS with coverability acceptance.
//!
//! A transition `(src, a, take, put, dst)` is enabled at `(src, m)` when
//! `m ≥ take` and leads to `(dst, m − take + put)`. A word is accepted when
//! some run over it ends above an element of the final basis.

mod backward;
mod km;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{Config, Control, IdealCover, OmegaMarking, OmegaNat};
use crate::word::Letter;

pub use backward::{backward_covers, BackwardResult};
pub use km::{
    check_invariant, karp_miller, InvariantVerdict, KmNode, KmResult, KmTree, OmegaSystem,
    ViolationKind,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Transition {
    pub src: Control,
    pub letter: Letter,
    pub take: Vec<u64>,
    pub put: Vec<u64>,
    pub dst: Control,
}

impl Transition {
    pub fn enabled(&self, c: &Config) -> bool {
        c.control == self.src && c.marking.iter().zip(&self.take).all(|(m, t)| m >= t)
    }

    pub fn fire(&self, c: &Config) -> Option<Config> {
        if !self.enabled(c) {
            return None;
        }
        let marking = c
            .marking
            .iter()
            .zip(self.take.iter().zip(&self.put))
            .map(|(m, (t, p))| m - t + p)
            .collect();
        Some(Config::new(self.dst.clone(), marking))
    }

    /// Firing on an ideal: enabled when every finite entry covers `take`;
    /// `ω` absorbs both subtraction and addition.
    pub fn fire_omega(&self, m: &OmegaMarking) -> Option<OmegaMarking> {
        if m.control != self.src {
            return None;
        }
        let vec = m
            .vec
            .iter()
            .zip(self.take.iter().zip(&self.put))
            .map(|(e, (&t, &p))| e.sub(t).map(|x| x.add(p)))
            .collect::<Option<Vec<_>>>()?;
        Some(OmegaMarking::new(self.dst.clone(), vec))
    }
}

/// On-disk form of a [`LabeledVass`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetFile {
    pub dim: usize,
    pub controls: Vec<Control>,
    pub alphabet: Vec<Letter>,
    pub transitions: Vec<Transition>,
    pub initial: Vec<Config>,
    #[serde(rename = "finalBasis")]
    pub final_basis: Vec<Config>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledVass {
    dim: usize,
    controls: Vec<Control>,
    alphabet: Vec<Letter>,
    transitions: Vec<Transition>,
    initial: Vec<Config>,
    final_basis: Vec<Config>,
}

impl LabeledVass {
    pub fn new(
        dim: usize,
        controls: Vec<Control>,
        alphabet: Vec<Letter>,
        transitions: Vec<Transition>,
        initial: Vec<Config>,
        final_basis: Vec<Config>,
    ) -> Result<Self> {
        let declared: BTreeSet<&Control> = controls.iter().collect();
        if declared.len() != controls.len() {
            return Err(Error::InvalidInput("duplicate control".into()));
        }
        let letters: BTreeSet<&Letter> = alphabet.iter().collect();
        if letters.len() != alphabet.len() {
            return Err(Error::InvalidInput("duplicate letter".into()));
        }
        let check_control = |c: &Control| {
            if declared.contains(c) {
                Ok(())
            } else {
                Err(Error::UnknownState(c.to_string()))
            }
        };
        let check_len = |v: &[u64]| {
            if v.len() == dim {
                Ok(())
            } else {
                Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                })
            }
        };
        for t in &transitions {
            check_control(&t.src)?;
            check_control(&t.dst)?;
            check_len(&t.take)?;
            check_len(&t.put)?;
            if !letters.contains(&t.letter) {
                return Err(Error::UnknownLetter(t.letter.clone()));
            }
        }
        for c in initial.iter().chain(&final_basis) {
            check_control(&c.control)?;
            check_len(&c.marking)?;
        }
        Ok(LabeledVass {
            dim,
            controls,
            alphabet,
            transitions,
            initial,
            final_basis,
        })
    }

    pub fn from_file(f: NetFile) -> Result<Self> {
        Self::new(
            f.dim,
            f.controls,
            f.alphabet,
            f.transitions,
            f.initial,
            f.final_basis,
        )
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }

    pub fn to_file(&self) -> NetFile {
        NetFile {
            dim: self.dim,
            controls: self.controls.clone(),
            alphabet: self.alphabet.clone(),
            transitions: self.transitions.clone(),
            initial: self.initial.clone(),
            final_basis: self.final_basis.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("net serializes")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn controls(&self) -> &[Control] {
        &self.controls
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn initial(&self) -> &[Config] {
        &self.initial
    }

    pub fn final_basis(&self) -> &[Config] {
        &self.final_basis
    }

    fn check_letter(&self, a: &str) -> Result<()> {
        if self.alphabet.iter().any(|l| l == a) {
            Ok(())
        } else {
            Err(Error::UnknownLetter(a.to_string()))
        }
    }

    pub fn is_final(&self, c: &Config) -> bool {
        self.final_basis.iter().any(|b| b.leq(c))
    }

    /// One initial configuration and at most one transition per control and
    /// letter.
    pub fn is_deterministic(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.initial.len() == 1
            && self
                .transitions
                .iter()
                .all(|t| seen.insert((&t.src, &t.letter)))
    }

    pub fn require_deterministic(&self) -> Result<()> {
        if self.is_deterministic() {
            Ok(())
        } else {
            Err(Error::Precondition(
                "second net must be deterministic (one initial configuration, at most one \
                 transition per control and letter); determinize explicit models with \
                 `det` or revise the net"
                    .into(),
            ))
        }
    }

    /// All firings of `letter`-labeled transitions from `configs`.
    pub fn post_concrete(&self, configs: &BTreeSet<Config>, letter: &str) -> Result<BTreeSet<Config>> {
        self.check_letter(letter)?;
        Ok(configs
            .iter()
            .flat_map(|c| {
                self.transitions
                    .iter()
                    .filter(move |t| t.letter == letter)
                    .filter_map(move |t| t.fire(c))
            })
            .collect())
    }

    /// Configurations reached from the initial ones along `w`.
    pub fn reach(&self, w: &[Letter]) -> Result<BTreeSet<Config>> {
        let mut cur: BTreeSet<Config> = self.initial.iter().cloned().collect();
        for l in w {
            cur = self.post_concrete(&cur, l)?;
        }
        Ok(cur)
    }

    pub fn membership(&self, w: &[Letter]) -> Result<bool> {
        Ok(self.reach(w)?.iter().any(|c| self.is_final(c)))
    }

    /// Ideal decomposition of `↓Post(m, letter)`.
    pub fn post_omega(&self, m: &OmegaMarking, letter: &str) -> Result<IdealCover> {
        self.check_letter(letter)?;
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.dim(),
            });
        }
        IdealCover::normalize(self.successors(m, letter))
    }

    /// Synchronized product: controls pair up, counters are juxtaposed and
    /// equally-labeled transitions fire together.
    pub fn product(&self, other: &LabeledVass) -> Result<LabeledVass> {
        let a1: BTreeSet<_> = self.alphabet.iter().collect();
        let a2: BTreeSet<_> = other.alphabet.iter().collect();
        if a1 != a2 {
            return Err(Error::InvalidInput(
                "synchronized product requires equal alphabets".into(),
            ));
        }
        let cat = |x: &[u64], y: &[u64]| -> Vec<u64> { x.iter().chain(y).copied().collect() };
        let cross = |xs: &[Config], ys: &[Config]| -> Vec<Config> {
            xs.iter()
                .flat_map(|x| {
                    ys.iter().map(move |y| {
                        Config::new(
                            Control::pair(x.control.clone(), y.control.clone()),
                            cat(&x.marking, &y.marking),
                        )
                    })
                })
                .collect()
        };
        let controls = self
            .controls
            .iter()
            .flat_map(|c| other.controls.iter().map(move |d| Control::pair(c.clone(), d.clone())))
            .collect();
        let mut by_letter: BTreeMap<&Letter, Vec<&Transition>> = BTreeMap::new();
        for t in &other.transitions {
            by_letter.entry(&t.letter).or_default().push(t);
        }
        let mut transitions = Vec::new();
        for t1 in &self.transitions {
            for t2 in by_letter.get(&t1.letter).into_iter().flatten() {
                transitions.push(Transition {
                    src: Control::pair(t1.src.clone(), t2.src.clone()),
                    letter: t1.letter.clone(),
                    take: cat(&t1.take, &t2.take),
                    put: cat(&t1.put, &t2.put),
                    dst: Control::pair(t1.dst.clone(), t2.dst.clone()),
                });
            }
        }
        LabeledVass::new(
            self.dim + other.dim,
            controls,
            self.alphabet.clone(),
            transitions,
            cross(&self.initial, &other.initial),
            cross(&self.final_basis, &other.final_basis),
        )
    }

    pub fn karp_miller(&self) -> KmResult {
        karp_miller(self)
    }

    pub fn check_invariant(&self, x: &IdealCover) -> Result<InvariantVerdict> {
        if let Some(d) = x.dim() {
            if d != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: d,
                });
            }
        }
        Ok(check_invariant(self, x))
    }
}

impl OmegaSystem for LabeledVass {
    fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    fn initial_ideals(&self) -> Vec<OmegaMarking> {
        self.initial.iter().map(Config::to_omega).collect()
    }

    fn successors(&self, m: &OmegaMarking, letter: &str) -> Vec<OmegaMarking> {
        self.transitions
            .iter()
            .filter(|t| t.letter == letter)
            .filter_map(|t| t.fire_omega(m))
            .collect()
    }

    fn meets_final(&self, m: &OmegaMarking) -> bool {
        self.final_basis.iter().any(|b| m.contains(b))
    }
}

pub fn membership(v: &LabeledVass, w: &[Letter]) -> Result<bool> {
    v.membership(w)
}

pub fn post_concrete(v: &LabeledVass, configs: &BTreeSet<Config>, letter: &str) -> Result<BTreeSet<Config>> {
    v.post_concrete(configs, letter)
}

pub fn post_omega(v: &LabeledVass, m: &OmegaMarking, letter: &str) -> Result<IdealCover> {
    v.post_omega(m, letter)
}

/// `ω`-free marking helper used throughout the tests.
pub fn omega_vec(v: &[Option<u64>]) -> Vec<OmegaNat> {
    v.iter().map(|e| e.map_or(OmegaNat::Omega, OmegaNat::Fin)).collect()
}
