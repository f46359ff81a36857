//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::panic;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use sepwsts_core::fa::Nfa;
use sepwsts_core::ideal::Config;
use sepwsts_core::olts::{Direction, ExplicitOlts};
use sepwsts_core::rado::{self, RadoLetter, RadoPoint};
use sepwsts_core::vass::LabeledVass;

use common::{corpus, rado_box_member, rado_leq, rado_step, read_json, run, w, RawAutomaton, RawNet, Word};

type Criterion = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("rado fragment regression", c1_fragment),
        ("nerode antichain certificates", c2_nerode),
        ("rado simulation compatibility", c3_simulation),
        ("column antichain", c4_columns),
        ("cross-oracle coverability", c5_coverability),
        ("invariant soundness", c6_invariants),
        ("end-to-end separation", c7_separation),
        ("non-disjoint detection", c8_witnesses),
        ("determinization and closure laws", c9_closure_laws),
        ("fa toolbox", c10_fa),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(f).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({t:.2?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({t:.2?})", i + 1);
            }
        }
    }
    let _ = panic::take_hook();
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t < limit {
        Ok(())
    } else {
        Err(format!("took {t:.2?}, limit {limit:?}"))
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rado_word(s: &str) -> Word {
    s.chars().map(|c| c.to_string()).collect()
}

fn repeat(s: &str, n: usize) -> String {
    s.repeat(n)
}

fn c1_fragment() -> Result<String, String> {
    let start = Instant::now();
    let max = 12;
    let (mut checked, mut mismatches) = (0, Vec::new());
    for n in 0..=max {
        for k in 0..=max - n {
            for i in 0..=max - n - k {
                let s = format!("{}{}{}", repeat("<", n), repeat(">", k), repeat("0", i));
                let sim = rado::witness_member(&rado_word(&s)).map_err(|e| e.to_string())?;
                let formula = n == k || (n >= k && n - k > i);
                let oracle = rado::fragment_oracle(n, k, i);
                checked += 1;
                if sim != formula || oracle != formula {
                    mismatches.push(s);
                }
            }
        }
    }
    within(start, Duration::from_secs(1))?;
    // Pointwise simulation on a large finite start box agrees as well.
    for n in 0..=max {
        for k in 0..=max - n {
            for i in 0..=max - n - k {
                let s = format!("{}{}{}", repeat("<", n), repeat(">", k), repeat("0", i));
                let chars: Vec<char> = s.chars().collect();
                if rado_box_member(&chars, 64) != (n == k || (n >= k && n - k > i)) {
                    mismatches.push(format!("box:{s}"));
                }
            }
        }
    }
    check(mismatches.is_empty(), || format!("mismatches: {mismatches:?}"))?;
    Ok(format!("{checked} words, 0 mismatches"))
}

fn c2_nerode() -> Result<String, String> {
    let start = Instant::now();
    let mut pairs = 0;
    for j in 1..=6 {
        for i in 0..j {
            let c = rado::distinguishing_suffixes(i, j).map_err(|e| e.to_string())?;
            check(c.is_valid(), || format!("({i},{j}) certificate invalid: {c:?}"))?;
            let u = repeat(">", j);
            let v = format!("{}{}", repeat(">", i), repeat("0", j - i));
            check(c.u == rado_word(&u) && c.v == rado_word(&v), || {
                format!("({i},{j}) unexpected suffixes {:?} {:?}", c.u, c.v)
            })?;
            let boxed = |p: usize, s: &str| {
                let chars: Vec<char> = format!("{}{s}", repeat("<", p)).chars().collect();
                rado_box_member(&chars, 64)
            };
            check(
                boxed(j, &u) && !boxed(i, &u) && boxed(i, &v) && !boxed(j, &v),
                || format!("({i},{j}) box simulation disagrees"),
            )?;
            pairs += 1;
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{pairs} pairs certified"))
}

fn c3_simulation() -> Result<String, String> {
    let pts: Vec<(usize, usize)> = (1..=25).flat_map(|r| (0..r).map(move |c| (c, r))).collect();
    let letters = [('<', RadoLetter::Open), ('>', RadoLetter::Close), ('0', RadoLetter::Zero)];
    let mut table_errors = 0;
    for &p in &pts {
        let rp = RadoPoint::new(p.0, p.1).map_err(|e| e.to_string())?;
        for (ch, l) in letters {
            let lib = rp.post(l).map(|x| (x.c(), x.r()));
            if lib != rado_step(p, ch) {
                table_errors += 1;
            }
        }
    }
    let (mut pairs, mut violations) = (0usize, 0usize);
    for &p in &pts {
        for &q in &pts {
            let lib = rado::rado_leq(p, q).map_err(|e| e.to_string())?;
            if lib != rado_leq(p, q) {
                violations += 1;
            }
            if !lib {
                continue;
            }
            pairs += 1;
            for (ch, _) in letters {
                if let Some(p2) = rado_step(p, ch) {
                    match rado_step(q, ch) {
                        Some(q2) if rado_leq(p2, q2) => {}
                        _ => violations += 1,
                    }
                }
            }
        }
    }
    check(table_errors == 0 && violations == 0, || {
        format!("{table_errors} table disagreements, {violations} violations")
    })?;
    Ok(format!("{} points, {pairs} ordered pairs, 0 violations", pts.len()))
}

fn c4_columns() -> Result<String, String> {
    // ↓Cᵢ on rows ≤ 30: points below some (i, r') with i < r' ≤ 31.
    let down = |i: usize| -> BTreeSet<(usize, usize)> {
        (1..=30)
            .flat_map(|r| (0..r).map(move |c| (c, r)))
            .filter(|&p| (i + 1..=31).any(|r2| rado_leq(p, (i, r2))))
            .collect()
    };
    let mut bad = Vec::new();
    for i in 0..=10 {
        for j in 0..=10 {
            let lib = rado::downcls_column_leq(i, j);
            let boxed = down(i).is_subset(&down(j));
            if lib != (i == j) || boxed != (i == j) {
                bad.push((i, j));
            }
        }
    }
    check(bad.is_empty(), || format!("wrong at {bad:?}"))?;
    Ok("121 pairs, inclusion iff i = j".into())
}

fn corpus_nets() -> Result<Vec<(String, LabeledVass)>, String> {
    let mut paths: Vec<PathBuf> = fs::read_dir(corpus().join("nets"))
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let v = LabeledVass::from_json(&fs::read_to_string(p).unwrap()).map_err(|e| e.to_string())?;
            Ok((p.file_stem().unwrap().to_string_lossy().into_owned(), v))
        })
        .collect()
}

fn box_points(dim: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=max).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn c5_coverability() -> Result<String, String> {
    let start = Instant::now();
    let nets = corpus_nets()?;
    check(nets.len() >= 5, || format!("only {} corpus nets", nets.len()))?;
    let (mut targets, mut disagreements) = (0usize, Vec::new());
    for (name, v) in &nets {
        check(v.dim() <= 4 && v.transitions().len() <= 6, || format!("{name} too large"))?;
        let km = v.karp_miller();
        for q in v.controls() {
            for m in box_points(v.dim(), 4) {
                let target = Config::new(q.clone(), m);
                let back = v.backward_covers(std::slice::from_ref(&target)).map_err(|e| e.to_string())?;
                let fwd = km.cover.covers(&target.to_omega()).map_err(|e| e.to_string())?;
                targets += 1;
                if back.covered != fwd {
                    disagreements.push(format!("{name}:{target}"));
                }
                if let Some(word) = &back.witness {
                    let reach = v.reach(word).map_err(|e| e.to_string())?;
                    if !reach.iter().any(|c| target.leq(c)) {
                        disagreements.push(format!("{name}:{target} bad witness"));
                    }
                }
            }
        }
    }
    within(start, Duration::from_secs(10))?;
    check(disagreements.is_empty(), || format!("disagreements: {disagreements:?}"))?;
    Ok(format!("{} nets, {targets} targets, 0 disagreements", nets.len()))
}

fn c6_invariants() -> Result<String, String> {
    let mut empty = Vec::new();
    for (name, v) in corpus_nets()? {
        let back = v.backward_covers(v.final_basis()).map_err(|e| e.to_string())?;
        if back.covered {
            continue;
        }
        let raw = RawNet::load(&corpus().join(format!("nets/{name}.json")));
        let accepted = common::words_upto(&raw.alphabet, 6).into_iter().find(|u| raw.accepts(u));
        check(accepted.is_none(), || format!("{name} certified empty but accepts {accepted:?}"))?;
        let verdict = v.check_invariant(&v.karp_miller().cover).map_err(|e| e.to_string())?;
        check(verdict.is_ok(), || format!("{name}: {verdict}"))?;
        empty.push(name);
    }
    check(!empty.is_empty(), || "no empty-language net in the corpus".into())?;
    Ok(format!("KM cover is an inductive invariant of {} empty nets {empty:?}", empty.len()))
}

fn pair_dirs(kind: &str) -> Vec<PathBuf> {
    let mut dirs: Vec<PathBuf> = fs::read_dir(corpus().join("pairs").join(kind))
        .expect("pairs dir")
        .map(|e| e.unwrap().path())
        .collect();
    dirs.sort();
    dirs
}

fn s(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

fn c7_separation() -> Result<String, String> {
    let start = Instant::now();
    let dirs = pair_dirs("disjoint");
    let names: Vec<String> = dirs
        .iter()
        .map(|d| d.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    check(dirs.len() >= 3, || "fewer than 3 disjoint pairs".into())?;
    check(
        names.iter().any(|n| n == "a_vs_b") && names.iter().any(|n| n == "counter"),
        || "corpus lacks the a-vs-b or counter pair".into(),
    )?;
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut shadow_words = 0;
    for (dir, name) in dirs.iter().zip(&names) {
        let (n1, n2) = (dir.join("net1.json"), dir.join("net2.json"));
        let out = tmp.path().join(name);
        let o = run(&["separate", s(&n1), s(&n2), "-o", s(&out), "--bound", "8"]);
        check(o.status.code() == Some(0), || format!("{name}: separate exited {:?}", o.status.code()))?;
        let sep_path = out.join("separator.json");
        check(sep_path.exists() && out.join("separator.dot").exists(), || {
            format!("{name}: artifacts missing")
        })?;
        let o = run(&["verify", s(&n1), s(&n2), s(&sep_path)]);
        check(o.status.code() == Some(0), || {
            format!("{name}: verify exited {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stdout))
        })?;

        let again = tmp.path().join(format!("{name}-again"));
        run(&["separate", s(&n1), s(&n2), "-o", s(&again)]);
        for f in ["separator.json", "separator.dot"] {
            let a = fs::read(out.join(f)).unwrap();
            let b = fs::read(again.join(f)).unwrap();
            check(a == b, || format!("{name}: {f} not byte-stable"))?;
        }

        let (v1, v2) = (RawNet::load(&n1), RawNet::load(&n2));
        let sep = RawAutomaton::from_separator_json(&read_json(&sep_path), &v1.alphabet);
        for u in common::words_upto(&v1.alphabet, 8) {
            shadow_words += 1;
            check(!v1.accepts(&u) || sep.accepts(&u), || format!("{name}: {u:?} ∈ L1 rejected"))?;
            check(!v2.accepts(&u) || !sep.accepts(&u), || format!("{name}: {u:?} ∈ L2 accepted"))?;
        }
        if name == "a_vs_b" {
            let lang = sep.language(3);
            check(lang == BTreeSet::from([w("a")]), || format!("a_vs_b separator language {lang:?}"))?;
        }
        if name == "counter" {
            let golden = fs::read(corpus().join("golden/counter_separator.json")).unwrap();
            check(fs::read(&sep_path).unwrap() == golden, || "counter separator differs from golden".into())?;
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "{} pairs separated and verified; bounded shadow k=8 on {shadow_words} words",
        dirs.len()
    ))
}

fn c8_witnesses() -> Result<String, String> {
    let dirs = pair_dirs("intersecting");
    check(dirs.len() >= 2, || "fewer than 2 intersecting pairs".into())?;
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut found = Vec::new();
    for dir in &dirs {
        let name = dir.file_name().unwrap().to_string_lossy().into_owned();
        let (n1, n2) = (dir.join("net1.json"), dir.join("net2.json"));
        let out = tmp.path().join(&name);
        let o = run(&["separate", s(&n1), s(&n2), "-o", s(&out)]);
        check(o.status.code() == Some(10), || format!("{name}: exited {:?}", o.status.code()))?;
        check(!out.join("separator.json").exists(), || format!("{name}: separator written"))?;
        let report = read_json(&out.join("report.json"));
        let word: Word = report["verdicts"]["witnessLetters"]
            .as_array()
            .ok_or(format!("{name}: no witness in report"))?
            .iter()
            .map(|x| x.as_str().unwrap().to_string())
            .collect();
        let (v1, v2) = (RawNet::load(&n1), RawNet::load(&n2));
        check(v1.accepts(&word) && v2.accepts(&word), || format!("{name}: witness {word:?} rejected"))?;
        found.push(format!("{name}={}", if word.is_empty() { "ε".into() } else { word.concat() }));
    }
    Ok(format!("witnesses confirmed: {}", found.join(", ")))
}

/// Random compatible model over a chain `s0 ≤ s1 ≤ …`. Upward: states
/// with successors form a suffix and the largest successor grows with the
/// state. Downward: a prefix, with the smallest successor growing.
fn random_chain_model(rng: &mut ChaCha8Rng, dir: Direction, deterministic: bool) -> ExplicitOlts {
    let n = rng.gen_range(2..=5);
    let name = |i: usize| format!("s{i}");
    let states: Vec<String> = (0..n).map(name).collect();
    let leq: Vec<[String; 2]> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| [name(i), name(j)]))
        .collect();
    let mut trans = Vec::new();
    for a in ["a", "b"] {
        let cut = if deterministic { 0 } else { rng.gen_range(0..=n) };
        let active: Vec<usize> = match dir {
            Direction::Upward => (cut..n).collect(),
            Direction::Downward => (0..n - cut).collect(),
        };
        let mut bound: Vec<usize> = active.iter().map(|_| rng.gen_range(0..n)).collect();
        bound.sort_unstable();
        for (&s, &b) in active.iter().zip(&bound) {
            let mut succ = BTreeSet::from([b]);
            if !deterministic {
                let extra: Vec<usize> = match dir {
                    Direction::Upward => (0..b).collect(),
                    Direction::Downward => (b + 1..n).collect(),
                };
                for x in extra {
                    if rng.gen_bool(0.4) {
                        succ.insert(x);
                    }
                }
            }
            trans.push(json!([name(s), a, succ.iter().map(|&x| name(x)).collect::<Vec<_>>()]));
        }
    }
    let f = rng.gen_range(0..=n);
    let finals: Vec<String> = match dir {
        Direction::Upward => (f..n).map(name).collect(),
        Direction::Downward => (0..f).map(name).collect(),
    };
    let initial: Vec<String> = if deterministic {
        vec![name(rng.gen_range(0..n))]
    } else {
        let mut all: Vec<usize> = (0..n).collect();
        all.shuffle(rng);
        all[..rng.gen_range(1..=n)].iter().map(|&i| name(i)).collect()
    };
    let dir_s = match dir {
        Direction::Upward => "upward",
        Direction::Downward => "downward",
    };
    let v = json!({"states": states, "leq": leq, "initial": initial, "final": finals,
                   "alphabet": ["a", "b"], "trans": trans, "direction": dir_s});
    ExplicitOlts::from_json(&v.to_string()).expect("generated model loads")
}

fn lang(u: &ExplicitOlts, k: usize) -> BTreeSet<Word> {
    let v: serde_json::Value = serde_json::from_str(&u.to_json()).unwrap();
    RawAutomaton::from_olts_json(&v).language(k)
}

fn c9_closure_laws() -> Result<String, String> {
    const K: usize = 6;
    let mut models: Vec<(String, ExplicitOlts)> = Vec::new();
    let mut paths: Vec<PathBuf> = fs::read_dir(corpus().join("olts"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    for p in &paths {
        let u = ExplicitOlts::from_json(&fs::read_to_string(p).unwrap()).map_err(|e| e.to_string())?;
        models.push((p.file_stem().unwrap().to_string_lossy().into_owned(), u));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..15 {
        models.push((format!("rand-up-{i}"), random_chain_model(&mut rng, Direction::Upward, false)));
        models.push((format!("rand-down-{i}"), random_chain_model(&mut rng, Direction::Downward, false)));
        models.push((format!("rand-down-det-{i}"), random_chain_model(&mut rng, Direction::Downward, true)));
    }
    let (mut n_det, mut n_prune, mut n_rev, mut n_comp) = (0, 0, 0, 0);
    let mut deterministic = Vec::new();
    for (name, u) in &models {
        let compat = u.check_compatible();
        check(compat.is_empty(), || format!("{name} not compatible: {compat:?}"))?;
        let l = lang(u, K);
        check(u.members_upto(K).words == l, || format!("{name}: members_upto differs from oracle"))?;

        let r = u.reverse();
        let reversed: BTreeSet<Word> = l.iter().map(|x| x.iter().rev().cloned().collect()).collect();
        check(lang(&r, K) == reversed, || format!("{name}: reverse language"))?;
        check(lang(&r.reverse(), K) == l, || format!("{name}: reverse of reverse"))?;
        check(r.check_compatible().is_empty(), || format!("{name}: reverse not compatible"))?;
        n_rev += 1;

        match u.direction() {
            Direction::Upward => {
                let d = u.determinize_fb().map_err(|e| e.to_string())?;
                check(d.is_deterministic(), || format!("{name}: determinize_fb not deterministic"))?;
                check(d.check_compatible().is_empty(), || format!("{name}: determinized not compatible"))?;
                check(lang(&d, K) == l, || format!("{name}: determinize_fb language"))?;
                n_det += 1;
                deterministic.push((format!("det({name})"), d));
            }
            Direction::Downward => {
                let p = u.prune_nonminimal().map_err(|e| e.to_string())?;
                check(p.check_compatible().is_empty(), || format!("{name}: pruned not compatible"))?;
                check(lang(&p, K) == l, || format!("{name}: prune_nonminimal language"))?;
                n_prune += 1;
            }
        }
        if u.is_deterministic() {
            deterministic.push((name.clone(), u.clone()));
        }
    }
    for (name, d) in &deterministic {
        let sigma: BTreeSet<Word> = common::words_upto(d.alphabet(), K).into_iter().collect();
        let l = lang(d, K);
        let c = d.complement().map_err(|e| e.to_string())?;
        let expect: BTreeSet<Word> = sigma.difference(&l).cloned().collect();
        check(lang(&c, K) == expect, || format!("{name}: complement language"))?;
        check(c.check_compatible().is_empty(), || format!("{name}: complement not compatible"))?;
        let cc = c.complement().map_err(|e| e.to_string())?;
        check(lang(&cc, K) == l, || format!("{name}: complement twice"))?;
        n_comp += 1;
    }
    check(n_det >= 5 && n_prune >= 5 && n_rev >= 5 && n_comp >= 5, || {
        format!("too few models: det {n_det}, prune {n_prune}, reverse {n_rev}, complement {n_comp}")
    })?;
    Ok(format!(
        "k={K}: determinize_fb {n_det}, prune_nonminimal {n_prune}, reverse {n_rev}, complement {n_comp} models"
    ))
}

fn c10_fa() -> Result<String, String> {
    const K: usize = 6;
    let alphabet = vec!["a".to_string(), "b".to_string()];
    let sigma: BTreeSet<Word> = common::words_upto(&alphabet, K).into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut autos = Vec::new();
    for _ in 0..250 {
        let n = rng.gen_range(1..=5);
        let mut nfa = Nfa::new(alphabet.clone());
        let mut raw = RawAutomaton {
            alphabet: alphabet.clone(),
            ..Default::default()
        };
        for i in 0..n {
            let fin = rng.gen_bool(0.3);
            nfa.add_state(i.to_string(), fin);
            if fin {
                raw.finals.insert(i.to_string());
            }
            if rng.gen_bool(0.3) || i == 0 {
                nfa.initial.insert(i);
                raw.initial.insert(i.to_string());
            }
        }
        for _ in 0..rng.gen_range(0..=2 * n) {
            let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let a = alphabet.choose(&mut rng).unwrap().clone();
            nfa.add_transition(s, &a, t);
            raw.delta
                .entry((s.to_string(), a))
                .or_default()
                .insert(t.to_string());
        }
        autos.push((nfa, raw));
    }
    let mut nonempty = 0;
    for (idx, (nfa, raw)) in autos.iter().enumerate() {
        let l = raw.language(K);
        let d = nfa.determinize();
        let dl: BTreeSet<Word> = sigma.iter().filter(|u| d.accepts(u)).cloned().collect();
        check(dl == l, || format!("automaton {idx}: determinize"))?;
        let c = d.complement();
        let cl: BTreeSet<Word> = sigma.iter().filter(|u| c.accepts(u)).cloned().collect();
        check(cl == sigma.difference(&l).cloned().collect(), || format!("automaton {idx}: complement"))?;

        let (_, other_raw) = &autos[(idx + 1) % autos.len()];
        let other = autos[(idx + 1) % autos.len()].0.determinize();
        let p = d.product_intersect(&other).map_err(|e| e.to_string())?;
        for u in &sigma {
            check(p.accepts(u) == (raw.accepts(u) && other_raw.accepts(u)), || {
                format!("automaton {idx}: product on {u:?}")
            })?;
        }

        // Shortest accepted words are shorter than the state count.
        let deep = raw.language(K.max(nfa.len()));
        match nfa.shortest_word() {
            Some(u) => {
                nonempty += 1;
                check(nfa.accepts(&u) && raw.accepts(&u), || format!("automaton {idx}: bad witness"))?;
                let min = deep.iter().map(Vec::len).min().unwrap();
                check(u.len() == min, || format!("automaton {idx}: witness not shortest"))?;
                check(!d.is_language_empty(), || format!("automaton {idx}: dfa emptiness"))?;
            }
            None => {
                check(deep.is_empty(), || format!("automaton {idx}: reported empty"))?;
                check(d.is_language_empty(), || format!("automaton {idx}: dfa emptiness"))?;
            }
        }
    }
    Ok(format!(
        "{} random automata ({nonempty} non-empty), words ≤ {K}",
        autos.len()
    ))
}
