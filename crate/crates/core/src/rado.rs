//! The Rado order and its witness transition system.
//!
//! Points `(c, r)` with `c < r` are ordered by
//! `(c₁, r₁) ≤ (c₂, r₂) ⇔ r₁ ≤ c₂ ∨ (c₁ = c₂ ∧ r₁ ≤ r₂)`. The witness system
//! reads `<`, `>` and `0`, starts from the whole column `C₀` and accepts
//! whenever some run survives. Reachable sets are kept exactly as a finite
//! set of points plus a finite set of full columns `Cᵢ = {(i, r) : r > i}`.
//!
//! The words `<ⁱ` reach exactly `Cᵢ`, and for `i < j` they are separated by
//! two suffixes in opposite directions, so they form an infinite antichain
//! of the Nerode quasi-order of the accepted language.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

pub const OPEN: &str = "<";
pub const CLOSE: &str = ">";
pub const ZERO: &str = "0";
pub const HASH: &str = "#";

pub fn alphabet() -> Vec<Letter> {
    vec![OPEN.into(), CLOSE.into(), ZERO.into()]
}

pub fn k_alphabet() -> Vec<Letter> {
    vec![OPEN.into(), CLOSE.into(), ZERO.into(), HASH.into()]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RadoLetter {
    Open,
    Close,
    Zero,
}

impl RadoLetter {
    pub const ALL: [RadoLetter; 3] = [RadoLetter::Open, RadoLetter::Close, RadoLetter::Zero];

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            OPEN | "⟨" => Ok(RadoLetter::Open),
            CLOSE | "⟩" => Ok(RadoLetter::Close),
            ZERO => Ok(RadoLetter::Zero),
            _ => Err(Error::UnknownLetter(s.to_string())),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RadoLetter::Open => OPEN,
            RadoLetter::Close => CLOSE,
            RadoLetter::Zero => ZERO,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RadoPoint {
    c: usize,
    r: usize,
}

impl RadoPoint {
    pub fn new(c: usize, r: usize) -> Result<Self> {
        if c < r {
            Ok(RadoPoint { c, r })
        } else {
            Err(Error::InvalidRadoPoint { c, r })
        }
    }

    pub fn c(self) -> usize {
        self.c
    }

    pub fn r(self) -> usize {
        self.r
    }

    pub fn leq(self, other: RadoPoint) -> bool {
        self.r <= other.c || (self.c == other.c && self.r <= other.r)
    }

    /// Successor under the transition table; `None` when undefined.
    pub fn post(self, a: RadoLetter) -> Option<RadoPoint> {
        let RadoPoint { c, r } = self;
        match a {
            RadoLetter::Open => Some(RadoPoint { c: c + 1, r: r + 1 }),
            RadoLetter::Close if c >= 1 => Some(RadoPoint { c: c - 1, r: r - 1 }),
            RadoLetter::Close => None,
            // (c, r) ↦ (0, c − 1), defined when c − 1 ≥ 1.
            RadoLetter::Zero if c >= 2 => Some(RadoPoint { c: 0, r: c - 1 }),
            RadoLetter::Zero if c == 1 => None,
            // (0, r) ↦ (0, r − 1); (0, 0) is not a point.
            RadoLetter::Zero => (r >= 2).then_some(RadoPoint { c: 0, r: r - 1 }),
        }
    }
}

impl fmt::Display for RadoPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c, self.r)
    }
}

/// Validating form of the order; rejects pairs that are not points.
pub fn rado_leq(p: (usize, usize), q: (usize, usize)) -> Result<bool> {
    Ok(RadoPoint::new(p.0, p.1)?.leq(RadoPoint::new(q.0, q.1)?))
}

/// A finite union of points and full columns. Canonical: no listed point
/// lies in a listed column.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct RadoRegion {
    points: BTreeSet<RadoPoint>,
    columns: BTreeSet<usize>,
}

impl RadoRegion {
    pub fn new(points: impl IntoIterator<Item = RadoPoint>, columns: impl IntoIterator<Item = usize>) -> Self {
        let columns: BTreeSet<usize> = columns.into_iter().collect();
        let points = points
            .into_iter()
            .filter(|p| !columns.contains(&p.c))
            .collect();
        RadoRegion { points, columns }
    }

    pub fn initial() -> Self {
        RadoRegion::column(0)
    }

    pub fn column(i: usize) -> Self {
        RadoRegion::new([], [i])
    }

    pub fn points(&self) -> &BTreeSet<RadoPoint> {
        &self.points
    }

    pub fn columns(&self) -> &BTreeSet<usize> {
        &self.columns
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.columns.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.points.iter().all(|p| !self.columns.contains(&p.c))
    }

    pub fn contains(&self, p: RadoPoint) -> bool {
        self.columns.contains(&p.c) || self.points.contains(&p)
    }

    pub fn post(&self, a: RadoLetter) -> RadoRegion {
        let mut points: Vec<RadoPoint> = self.points.iter().filter_map(|p| p.post(a)).collect();
        let mut columns = Vec::new();
        for &i in &self.columns {
            match a {
                RadoLetter::Open => columns.push(i + 1),
                RadoLetter::Close if i >= 1 => columns.push(i - 1),
                RadoLetter::Close => {}
                RadoLetter::Zero if i == 0 => columns.push(0),
                RadoLetter::Zero if i == 1 => {}
                RadoLetter::Zero => points.push(RadoPoint { c: 0, r: i - 1 }),
            }
        }
        RadoRegion::new(points, columns)
    }
}

impl fmt::Display for RadoRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        let cols: Vec<String> = self.columns.iter().map(|i| format!("C{i}")).collect();
        write!(f, "{{points: [{}], columns: [{}]}}", pts.join(","), cols.join(","))
    }
}

pub fn region_post(reg: &RadoRegion, a: RadoLetter) -> RadoRegion {
    reg.post(a)
}

pub fn parse_letters(w: &[Letter]) -> Result<Vec<RadoLetter>> {
    w.iter().map(|l| RadoLetter::parse(l)).collect()
}

/// Region reached from `C₀` along `w`.
pub fn reach(w: &[RadoLetter]) -> RadoRegion {
    w.iter().fold(RadoRegion::initial(), |reg, &a| reg.post(a))
}

pub fn witness_member(w: &[Letter]) -> Result<bool> {
    Ok(!reach(&parse_letters(w)?).is_empty())
}

/// Membership of `<ⁿ >ᵏ 0ⁱ` by the closed formula.
pub fn fragment_oracle(n: usize, k: usize, i: usize) -> bool {
    n == k || (n > k && n - k > i)
}

pub fn fragment_word(n: usize, k: usize, i: usize) -> Word {
    std::iter::repeat(OPEN)
        .take(n)
        .chain(std::iter::repeat(CLOSE).take(k))
        .chain(std::iter::repeat(ZERO).take(i))
        .map(String::from)
        .collect()
}

/// `<ⁱ`, which reaches exactly the column `Cᵢ`.
pub fn column_word(i: usize) -> Word {
    let w = fragment_word(i, 0, 0);
    debug_assert_eq!(reach(&parse_letters(&w).expect("rado letters")), RadoRegion::column(i));
    w
}

/// Suffixes separating `<ⁱ` from `<ʲ` in both directions, with the four
/// simulator verdicts that certify them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NerodeCertificate {
    pub i: usize,
    pub j: usize,
    /// `<ʲu` is accepted, `<ⁱu` is not.
    pub u: Word,
    /// `<ⁱv` is accepted, `<ʲv` is not.
    pub v: Word,
    pub j_u: bool,
    pub i_u: bool,
    pub i_v: bool,
    pub j_v: bool,
}

impl NerodeCertificate {
    pub fn is_valid(&self) -> bool {
        self.j_u && !self.i_u && self.i_v && !self.j_v
    }
}

pub fn distinguishing_suffixes(i: usize, j: usize) -> Result<NerodeCertificate> {
    if i >= j {
        return Err(Error::InvalidInput(format!(
            "distinguishing suffixes need i < j, got ({i}, {j})"
        )));
    }
    let u = fragment_word(0, j, 0);
    let v = fragment_word(0, i, j - i);
    let run = |prefix: usize, suffix: &Word| -> Result<bool> {
        let mut w = column_word(prefix);
        w.extend_from_slice(suffix);
        witness_member(&w)
    };
    Ok(NerodeCertificate {
        i,
        j,
        j_u: run(j, &u)?,
        i_u: run(i, &u)?,
        i_v: run(i, &v)?,
        j_v: run(j, &v)?,
        u,
        v,
    })
}

/// Whether `↓Cᵢ ⊆ ↓Cⱼ`, where `↓Cᵢ = Cᵢ ∪ {(c, r) : r ≤ i}`.
///
/// The infinite column part is decided symbolically: `Cᵢ` meets the
/// triangle of `↓Cⱼ` in finitely many points only, so it must sit inside
/// `Cⱼ`. The finite triangle of `↓Cᵢ` is checked point by point.
pub fn downcls_column_leq(i: usize, j: usize) -> bool {
    let in_down_j = |p: RadoPoint| p.c == j || p.r <= j;
    let column_ok = i == j;
    let triangle_ok = (1..=i).all(|r| (0..r).all(|c| in_down_j(RadoPoint { c, r })));
    column_ok && triangle_ok
}

/// Membership in `W · # · reverse(complement(W))`.
pub fn k_member(w: &[Letter]) -> Result<bool> {
    for l in w {
        if l != HASH {
            RadoLetter::parse(l)?;
        }
    }
    let mut parts = w.split(|l| l == HASH);
    let (Some(w1), Some(w2), None) = (parts.next(), parts.next(), parts.next()) else {
        return Ok(false);
    };
    let rev: Word = w2.iter().rev().cloned().collect();
    Ok(witness_member(w1)? && !witness_member(&rev)?)
}
