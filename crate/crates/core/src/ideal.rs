//! Ideals of `(control × ℕ^d, = × ≤)` encoded as ω-markings.
//!
//! An [`OmegaMarking`] `(q, v)` with `v ∈ (ℕ ∪ {ω})^d` denotes the ideal
//! `{(q, m) : m ≤ v}`, where `ω` bounds nothing. Every downward-closed set of
//! configurations is a finite union of such ideals; an [`IdealCover`] keeps
//! the inclusion-maximal ones.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A natural number or `ω`. `Fin(n) < Omega` for every `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaNat {
    Fin(u64),
    Omega,
}

impl OmegaNat {
    pub fn is_omega(self) -> bool {
        matches!(self, OmegaNat::Omega)
    }

    /// `ω + k = ω`.
    pub fn add(self, k: u64) -> OmegaNat {
        match self {
            OmegaNat::Fin(n) => OmegaNat::Fin(n + k),
            OmegaNat::Omega => OmegaNat::Omega,
        }
    }

    /// `ω − k = ω`; `None` when a finite entry would drop below zero.
    pub fn sub(self, k: u64) -> Option<OmegaNat> {
        match self {
            OmegaNat::Fin(n) => n.checked_sub(k).map(OmegaNat::Fin),
            OmegaNat::Omega => Some(OmegaNat::Omega),
        }
    }

    /// Whether the concrete value `k` lies below this bound.
    pub fn bounds(self, k: u64) -> bool {
        match self {
            OmegaNat::Fin(n) => k <= n,
            OmegaNat::Omega => true,
        }
    }
}

impl From<u64> for OmegaNat {
    fn from(n: u64) -> Self {
        OmegaNat::Fin(n)
    }
}

impl fmt::Display for OmegaNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaNat::Fin(n) => write!(f, "{n}"),
            OmegaNat::Omega => write!(f, "ω"),
        }
    }
}

impl Serialize for OmegaNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            OmegaNat::Fin(n) => s.serialize_u64(*n),
            OmegaNat::Omega => s.serialize_str("w"),
        }
    }
}

impl<'de> Deserialize<'de> for OmegaNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(OmegaNat::Fin(n)),
            Raw::S(s) if s == "w" || s == "ω" => Ok(OmegaNat::Omega),
            Raw::S(s) => Err(serde::de::Error::custom(format!(
                "expected a natural number or \"w\", found \"{s}\""
            ))),
        }
    }
}

/// Control state of a model. Synchronized products pair controls; `Sink` is
/// the rejecting completion state added to deterministic components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Control {
    Named(String),
    Pair(Box<Control>, Box<Control>),
    Sink,
}

impl Control {
    pub fn named(s: impl Into<String>) -> Self {
        Control::Named(s.into())
    }

    pub fn pair(a: Control, b: Control) -> Self {
        Control::Pair(Box::new(a), Box::new(b))
    }

    /// Validates a user-supplied control name.
    pub fn parse_name(s: &str) -> Result<Self> {
        if s.is_empty() || s.contains(['(', ')', ',']) || s == "⊥" {
            return Err(Error::InvalidInput(format!(
                "control name `{s}` must be non-empty and free of '(', ')', ',' and '⊥'"
            )));
        }
        Ok(Control::Named(s.to_string()))
    }
}

impl fmt::Display for Control {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Control::Named(s) => f.write_str(s),
            Control::Pair(a, b) => write!(f, "({a},{b})"),
            Control::Sink => f.write_str("⊥"),
        }
    }
}

impl FromStr for Control {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "⊥" {
            return Ok(Control::Sink);
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let mut depth = 0usize;
            for (i, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => {
                        depth = depth.checked_sub(1).ok_or_else(|| {
                            Error::InvalidInput(format!("unbalanced control `{s}`"))
                        })?
                    }
                    ',' if depth == 0 => {
                        let a = inner[..i].parse()?;
                        let b = inner[i + 1..].parse()?;
                        return Ok(Control::pair(a, b));
                    }
                    _ => {}
                }
            }
            return Err(Error::InvalidInput(format!("malformed pair control `{s}`")));
        }
        Control::parse_name(s)
    }
}

impl Serialize for Control {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Control {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A concrete configuration `(control, marking)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Config {
    pub control: Control,
    pub marking: Vec<u64>,
}

impl Config {
    pub fn new(control: Control, marking: Vec<u64>) -> Self {
        Config { control, marking }
    }

    /// Same control and componentwise `≤`.
    pub fn leq(&self, other: &Config) -> bool {
        self.control == other.control
            && self.marking.len() == other.marking.len()
            && self.marking.iter().zip(&other.marking).all(|(a, b)| a <= b)
    }

    pub fn to_omega(&self) -> OmegaMarking {
        OmegaMarking {
            control: self.control.clone(),
            vec: self.marking.iter().map(|&n| OmegaNat::Fin(n)).collect(),
        }
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?})", self.control, self.marking)
    }
}

/// An ideal of `control × ℕ^d`.
///
/// The derived order (control, then entries lexicographically with `ω`
/// greatest) is the canonical storage order of covers, not inclusion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OmegaMarking {
    pub control: Control,
    pub vec: Vec<OmegaNat>,
}

impl OmegaMarking {
    pub fn new(control: Control, vec: Vec<OmegaNat>) -> Self {
        OmegaMarking { control, vec }
    }

    pub fn finite(control: Control, vec: &[u64]) -> Self {
        OmegaMarking {
            control,
            vec: vec.iter().map(|&n| OmegaNat::Fin(n)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn is_finite(&self) -> bool {
        self.vec.iter().all(|e| !e.is_omega())
    }

    /// Ideal inclusion: equal controls and componentwise `≤`, `ω` on top.
    pub fn leq(&self, other: &OmegaMarking) -> Result<bool> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.leq_unchecked(other))
    }

    pub(crate) fn leq_unchecked(&self, other: &OmegaMarking) -> bool {
        self.control == other.control && self.vec.iter().zip(&other.vec).all(|(a, b)| a <= b)
    }

    /// Membership of a concrete configuration in the denoted ideal.
    pub fn contains(&self, c: &Config) -> bool {
        self.control == c.control
            && self.vec.len() == c.marking.len()
            && self.vec.iter().zip(&c.marking).all(|(b, &k)| b.bounds(k))
    }

    /// The concrete point obtained by reading `ω` as `bound`, capped entries
    /// otherwise kept. Used by box-restricted oracles.
    pub fn concretize(&self, bound: u64) -> Config {
        Config {
            control: self.control.clone(),
            marking: self
                .vec
                .iter()
                .map(|e| match e {
                    OmegaNat::Fin(n) => *n,
                    OmegaNat::Omega => bound,
                })
                .collect(),
        }
    }
}

impl fmt::Display for OmegaMarking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, [", self.control)?;
        for (i, e) in self.vec.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("])")
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub fn omega_leq(u: &OmegaMarking, v: &OmegaMarking) -> Result<bool> {
    u.leq(v)
}

/// Maximal elements of `items` under a partial order `leq`, deduplicated and
/// in canonical order.
pub fn maximal_by<F>(items: impl IntoIterator<Item = OmegaMarking>, leq: F) -> Vec<OmegaMarking>
where
    F: Fn(&OmegaMarking, &OmegaMarking) -> bool,
{
    let mut all: Vec<OmegaMarking> = items.into_iter().collect();
    all.sort();
    all.dedup();
    let keep: Vec<bool> = all
        .iter()
        .enumerate()
        .map(|(i, e)| {
            !all.iter()
                .enumerate()
                .any(|(j, f)| i != j && leq(e, f))
        })
        .collect();
    all.into_iter()
        .zip(keep)
        .filter_map(|(e, k)| k.then_some(e))
        .collect()
}

/// A finite inclusion-antichain of ideals, denoting their union.
///
/// The empty cover denotes the empty set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct IdealCover {
    elements: Vec<OmegaMarking>,
}

impl IdealCover {
    pub fn empty() -> Self {
        IdealCover::default()
    }

    /// Keeps the inclusion-maximal elements. The denoted set is unchanged.
    pub fn normalize(ms: impl IntoIterator<Item = OmegaMarking>) -> Result<Self> {
        let ms: Vec<OmegaMarking> = ms.into_iter().collect();
        if let Some(first) = ms.first() {
            for m in &ms {
                check_dim(first.dim(), m.dim())?;
            }
        }
        Ok(IdealCover {
            elements: maximal_by(ms, OmegaMarking::leq_unchecked),
        })
    }

    /// Normalization under a coarser partial order on ideals than plain
    /// inclusion, e.g. one where some controls sit below others. The result
    /// is still an inclusion-antichain.
    pub fn normalize_by<F>(ms: impl IntoIterator<Item = OmegaMarking>, leq: F) -> Self
    where
        F: Fn(&OmegaMarking, &OmegaMarking) -> bool,
    {
        IdealCover {
            elements: maximal_by(ms, leq),
        }
    }

    pub fn elements(&self) -> &[OmegaMarking] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.elements.first().map(OmegaMarking::dim)
    }

    /// Whether the ideal `m` lies inside the denoted set. Since ideals are
    /// irreducible, this reduces to inclusion in a single element.
    pub fn covers(&self, m: &OmegaMarking) -> Result<bool> {
        if let Some(d) = self.dim() {
            check_dim(d, m.dim())?;
        }
        Ok(self.elements.iter().any(|e| m.leq_unchecked(e)))
    }

    pub fn covers_config(&self, c: &Config) -> bool {
        self.elements.iter().any(|e| e.contains(c))
    }

    /// Denoted-set inclusion, decided elementwise.
    pub fn leq(&self, other: &IdealCover) -> Result<bool> {
        if let (Some(a), Some(b)) = (self.dim(), other.dim()) {
            check_dim(b, a)?;
        }
        Ok(self
            .elements
            .iter()
            .all(|e| other.elements.iter().any(|f| e.leq_unchecked(f))))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, OmegaMarking> {
        self.elements.iter()
    }
}

impl<'de> Deserialize<'de> for IdealCover {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let ms = Vec::<OmegaMarking>::deserialize(d)?;
        IdealCover::normalize(ms).map_err(serde::de::Error::custom)
    }
}

impl<'a> IntoIterator for &'a IdealCover {
    type Item = &'a OmegaMarking;
    type IntoIter = std::slice::Iter<'a, OmegaMarking>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

pub fn covers_point(c: &IdealCover, m: &OmegaMarking) -> Result<bool> {
    c.covers(m)
}

pub fn cover_leq(a: &IdealCover, b: &IdealCover) -> Result<bool> {
    a.leq(b)
}

/// `J₁ × J₂` for ideals of two models: controls pair up, vectors concatenate.
pub fn join_product(j1: &OmegaMarking, j2: &OmegaMarking) -> OmegaMarking {
    let mut vec = j1.vec.clone();
    vec.extend_from_slice(&j2.vec);
    OmegaMarking {
        control: Control::pair(j1.control.clone(), j2.control.clone()),
        vec,
    }
}

/// Inverse of [`join_product`]; `d1` is the dimension of the first factor.
pub fn split_product(j: &OmegaMarking, d1: usize) -> Result<(OmegaMarking, OmegaMarking)> {
    if d1 > j.dim() {
        return Err(Error::InvalidInput(format!(
            "split index {d1} exceeds dimension {}",
            j.dim()
        )));
    }
    let Control::Pair(a, b) = &j.control else {
        return Err(Error::InvalidInput(format!(
            "control `{}` is not a product control",
            j.control
        )));
    };
    Ok((
        OmegaMarking::new((**a).clone(), j.vec[..d1].to_vec()),
        OmegaMarking::new((**b).clone(), j.vec[d1..].to_vec()),
    ))
}

/// Cover of the downward closure of finitely many concrete configurations.
pub fn down_of_finite(ms: impl IntoIterator<Item = Config>) -> Result<IdealCover> {
    IdealCover::normalize(ms.into_iter().map(|c| c.to_omega()))
}

/// Componentwise comparison of two vectors, used by callers that need the
/// strict/non-strict distinction without controls.
pub fn vec_cmp(a: &[OmegaNat], b: &[OmegaNat]) -> Option<Ordering> {
    let le = a.iter().zip(b).all(|(x, y)| x <= y);
    let ge = a.iter().zip(b).all(|(x, y)| x >= y);
    match (le, ge) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (false, false) => None,
    }
}
