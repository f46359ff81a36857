//! Words over string letters.
//!
//! Models name their letters with arbitrary strings. When every letter of an
//! alphabet is a single character, words are written by juxtaposition
//! (`aab`); otherwise letters are separated by whitespace or commas.

use crate::error::{Error, Result};

pub type Letter = String;
pub type Word = Vec<Letter>;

fn single_char(alphabet: &[Letter]) -> bool {
    alphabet.iter().all(|l| l.chars().count() == 1)
}

/// Parses a word against an alphabet. The strings `""` and `ε` denote the
/// empty word.
pub fn parse_word(s: &str, alphabet: &[Letter]) -> Result<Word> {
    let s = s.trim();
    if s.is_empty() || s == "ε" {
        return Ok(Vec::new());
    }
    let letters: Vec<String> = if single_char(alphabet) && !s.contains([' ', ',']) {
        s.chars().map(|c| c.to_string()).collect()
    } else {
        s.split([' ', ','])
            .filter(|p| !p.is_empty())
            .map(str::to_string)
            .collect()
    };
    for l in &letters {
        if !alphabet.contains(l) {
            return Err(Error::UnknownLetter(l.clone()));
        }
    }
    Ok(letters)
}

pub fn format_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    if w.iter().all(|l| l.chars().count() == 1) {
        w.concat()
    } else {
        w.join(" ")
    }
}

/// All words of length at most `k`, shortest first, each length in
/// lexicographic order of letter indices.
pub fn words_upto(alphabet: &[Letter], k: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for a in alphabet {
                let mut w2 = w.clone();
                w2.push(a.clone());
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn letters(s: &[&str]) -> Vec<Letter> {
    s.iter().map(|x| x.to_string()).collect()
}
