//! Oracles shared by the integration tests. They work on raw JSON and plain
//! collections so that they do not lean on the library code under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub type Word = Vec<String>;

pub fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sepwsts"));
    c.env_remove("SEPWSTS_BOUND");
    c
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).expect("readable")).expect("json")
}

pub fn w(s: &str) -> Word {
    s.chars().map(|c| c.to_string()).collect()
}

pub fn words_upto(alphabet: &[String], k: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..k {
        layer = layer
            .iter()
            .flat_map(|u| {
                alphabet.iter().map(move |a| {
                    let mut v = u.clone();
                    v.push(a.clone());
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Set-of-states automaton over string names.
#[derive(Clone, Debug, Default)]
pub struct RawAutomaton {
    pub alphabet: Vec<String>,
    pub initial: BTreeSet<String>,
    pub finals: BTreeSet<String>,
    pub delta: BTreeMap<(String, String), BTreeSet<String>>,
}

impl RawAutomaton {
    pub fn accepts(&self, word: &[String]) -> bool {
        let mut cur = self.initial.clone();
        for a in word {
            cur = cur
                .iter()
                .flat_map(|s| {
                    self.delta
                        .get(&(s.clone(), a.clone()))
                        .into_iter()
                        .flatten()
                        .cloned()
                })
                .collect();
        }
        cur.iter().any(|s| self.finals.contains(s))
    }

    pub fn language(&self, k: usize) -> BTreeSet<Word> {
        words_upto(&self.alphabet, k)
            .into_iter()
            .filter(|u| self.accepts(u))
            .collect()
    }

    /// Explicit-model JSON: `trans` holds `[s, a, [t...]]`.
    pub fn from_olts_json(v: &Value) -> Self {
        let strs = |key: &str| -> Vec<String> {
            v[key]
                .as_array()
                .expect("array")
                .iter()
                .map(|x| x.as_str().expect("string").to_string())
                .collect()
        };
        let mut delta: BTreeMap<(String, String), BTreeSet<String>> = BTreeMap::new();
        for t in v["trans"].as_array().into_iter().flatten() {
            let s = t[0].as_str().unwrap().to_string();
            let a = t[1].as_str().unwrap().to_string();
            for d in t[2].as_array().unwrap() {
                delta
                    .entry((s.clone(), a.clone()))
                    .or_default()
                    .insert(d.as_str().unwrap().to_string());
            }
        }
        RawAutomaton {
            alphabet: strs("alphabet"),
            initial: strs("initial").into_iter().collect(),
            finals: strs("final").into_iter().collect(),
            delta,
        }
    }

    /// Separator JSON: numeric ids, finality on the state records.
    pub fn from_separator_json(v: &Value, alphabet: &[String]) -> Self {
        let id = |x: &Value| x.as_u64().expect("id").to_string();
        let mut delta: BTreeMap<(String, String), BTreeSet<String>> = BTreeMap::new();
        for t in v["trans"].as_array().unwrap() {
            for d in t[2].as_array().unwrap() {
                delta
                    .entry((id(&t[0]), t[1].as_str().unwrap().to_string()))
                    .or_default()
                    .insert(id(d));
            }
        }
        RawAutomaton {
            alphabet: alphabet.to_vec(),
            initial: v["initial"].as_array().unwrap().iter().map(id).collect(),
            finals: v["states"]
                .as_array()
                .unwrap()
                .iter()
                .filter(|s| s["final"].as_bool().unwrap())
                .map(|s| id(&s["id"]))
                .collect(),
            delta,
        }
    }
}

/// Explicit forward simulation of a net from its JSON, with coverability
/// acceptance.
pub struct RawNet {
    pub alphabet: Vec<String>,
    trans: Vec<(String, String, Vec<u64>, Vec<u64>, String)>,
    initial: Vec<(String, Vec<u64>)>,
    finals: Vec<(String, Vec<u64>)>,
}

fn nums(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

fn config(v: &Value) -> (String, Vec<u64>) {
    (v["control"].as_str().unwrap().to_string(), nums(&v["marking"]))
}

impl RawNet {
    pub fn load(path: &Path) -> Self {
        let v = read_json(path);
        RawNet {
            alphabet: v["alphabet"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_str().unwrap().to_string())
                .collect(),
            trans: v["transitions"]
                .as_array()
                .unwrap()
                .iter()
                .map(|t| {
                    (
                        t["src"].as_str().unwrap().to_string(),
                        t["letter"].as_str().unwrap().to_string(),
                        nums(&t["take"]),
                        nums(&t["put"]),
                        t["dst"].as_str().unwrap().to_string(),
                    )
                })
                .collect(),
            initial: v["initial"].as_array().unwrap().iter().map(config).collect(),
            finals: v["finalBasis"].as_array().unwrap().iter().map(config).collect(),
        }
    }

    pub fn accepts(&self, word: &[String]) -> bool {
        let mut cur: BTreeSet<(String, Vec<u64>)> = self.initial.iter().cloned().collect();
        for a in word {
            let mut next = BTreeSet::new();
            for (q, m) in &cur {
                for (src, l, take, put, dst) in &self.trans {
                    if src == q && l == a && m.iter().zip(take).all(|(x, t)| x >= t) {
                        let m2 = m
                            .iter()
                            .zip(take.iter().zip(put))
                            .map(|(x, (t, p))| x - t + p)
                            .collect();
                        next.insert((dst.clone(), m2));
                    }
                }
            }
            cur = next;
        }
        cur.iter().any(|(q, m)| {
            self.finals
                .iter()
                .any(|(f, b)| f == q && b.iter().zip(m).all(|(x, y)| x <= y))
        })
    }
}

/// Pointwise Rado witness simulation on the box of initial rows `1..=rows`,
/// straight from the transition table.
pub fn rado_box_member(word: &[char], rows: usize) -> bool {
    let mut cur: BTreeSet<(usize, usize)> = (1..=rows).map(|r| (0, r)).collect();
    for &a in word {
        cur = cur.iter().filter_map(|&p| rado_step(p, a)).collect();
    }
    !cur.is_empty()
}

/// `δ((c,r),<) = (c+1,r+1)`, `δ((c+1,r+1),>) = (c,r)`,
/// `δ((c+1,r),0) = (0,c)`, `δ((0,r+1),0) = (0,r)`, restricted to `c < r`.
pub fn rado_step((c, r): (usize, usize), a: char) -> Option<(usize, usize)> {
    let out = match a {
        '<' => Some((c + 1, r + 1)),
        '>' => (c >= 1).then(|| (c - 1, r - 1)),
        '0' if c >= 1 => Some((0, c - 1)),
        '0' => r.checked_sub(1).map(|r2| (0, r2)),
        _ => panic!("letter {a}"),
    };
    out.filter(|&(c2, r2)| c2 < r2)
}

pub fn rado_leq((c1, r1): (usize, usize), (c2, r2): (usize, usize)) -> bool {
    r1 <= c2 || (c1 == c2 && r1 <= r2)
}
