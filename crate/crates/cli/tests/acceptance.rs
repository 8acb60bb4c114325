//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use selfsim::action::{
    apply, format_word, generators, level1_permutation, positive_words, reduced_words, restrict,
    GroupWord, Letter,
};
use selfsim::fixtures::{fig5_tree, star3};
use selfsim::tracemonoid::{
    equivalent, presentation_from_tree, projection_equivalent, semigroup_eq_via_action,
};
use selfsim::wordproblem::{
    acts_trivially, dichotomy, embed_in_product, exponent_sums, fragile_member, virtual_endo,
    Dichotomy,
};
use selfsim::{build_graph_automaton, Caps, MealyAutomaton};
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn cli(args: &[&str]) -> Result<Value, String> {
    let mut argv = vec!["selfsim"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--format", "structured"]);
    let out = selfsim_cli::run(argv);
    if out.status != 0 {
        return Err(format!(
            "`{}` exited {}: {}",
            args.join(" "),
            out.status,
            out.stderr.trim()
        ));
    }
    serde_json::from_str(&out.stdout).map_err(|e| e.to_string())
}

fn text(v: &Value, key: &str) -> String {
    v[key].as_str().unwrap_or_default().to_string()
}

fn list(v: &Value, key: &str) -> Vec<String> {
    v[key]
        .as_array()
        .map(|a| {
            a.iter()
                .filter_map(|s| s.as_str().map(String::from))
                .collect()
        })
        .unwrap_or_default()
}

fn expect(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn fixture_path(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    root.to_string_lossy().into_owned()
}

fn words_up_to(aut: &MealyAutomaton, len: usize) -> Vec<GroupWord> {
    let gens = generators(aut);
    (0..=len).flat_map(|l| reduced_words(&gens, l)).collect()
}

fn fixture_fidelity() -> Check {
    let a = cli(&["build-graph-automaton", "--builtin", "star3"])?;
    let rows: BTreeSet<String> = list(&a, "transitions").into_iter().collect();
    let expected = set(&[
        "a --0|1--> a",
        "a --1|0--> id",
        "a --2|2--> id",
        "a --3|3--> id",
        "b --0|2--> b",
        "b --1|1--> id",
        "b --2|0--> id",
        "b --3|3--> id",
        "c --0|3--> c",
        "c --1|1--> id",
        "c --2|2--> id",
        "c --3|0--> id",
        "id --0|0--> id",
        "id --1|1--> id",
        "id --2|2--> id",
        "id --3|3--> id",
    ]);
    expect(
        rows == expected,
        format!("automaton table differs: {rows:?}"),
    )?;

    let d = cli(&["dual", "--builtin", "star3"])?;
    let drawn: BTreeSet<String> = list(&d, "transitions")
        .into_iter()
        .filter(|r| !r.contains("--id|"))
        .collect();
    let expected = set(&[
        "0 --a|a--> 1",
        "1 --a|id--> 0",
        "2 --a|id--> 2",
        "3 --a|id--> 3",
        "0 --b|b--> 2",
        "1 --b|id--> 1",
        "2 --b|id--> 0",
        "3 --b|id--> 3",
        "0 --c|c--> 3",
        "1 --c|id--> 1",
        "2 --c|id--> 2",
        "3 --c|id--> 0",
    ]);
    expect(drawn == expected, format!("dual table differs: {drawn:?}"))?;

    let e = cli(&["enriched-dual", "--builtin", "star3"])?;
    let (states, letters) = (list(&e, "states").len(), list(&e, "alphabet").len());
    expect(
        states == 4 && letters == 8,
        format!("enriched dual is {states} x {letters}"),
    )?;
    let drawn: BTreeSet<String> = list(&e, "transitions")
        .into_iter()
        .map(|r| r.replace("id^-1", "id"))
        .filter(|r| !r.contains("--id|"))
        .collect();
    let expected = set(&[
        "0 --a|a--> 1",
        "0 --a^-1|id--> 1",
        "1 --a|id--> 0",
        "1 --a^-1|a^-1--> 0",
        "0 --b|b--> 2",
        "0 --b^-1|id--> 2",
        "2 --b|id--> 0",
        "2 --b^-1|b^-1--> 0",
        "0 --c|c--> 3",
        "0 --c^-1|id--> 3",
        "3 --c|id--> 0",
        "3 --c^-1|c^-1--> 0",
        "1 --b|id--> 1",
        "1 --b^-1|id--> 1",
        "1 --c|id--> 1",
        "1 --c^-1|id--> 1",
        "2 --a|id--> 2",
        "2 --a^-1|id--> 2",
        "2 --c|id--> 2",
        "2 --c^-1|id--> 2",
        "3 --a|id--> 3",
        "3 --a^-1|id--> 3",
        "3 --b|id--> 3",
        "3 --b^-1|id--> 3",
    ]);
    expect(
        drawn == expected,
        format!("enriched dual differs: {drawn:?}"),
    )?;
    Ok("three tables match".into())
}

fn worked_path() -> Check {
    let p = cli(&[
        "dual-path",
        "--builtin",
        "fig5_tree",
        "-x",
        "1",
        "-u",
        "e2 e1 e1 e4",
    ])?;
    let path = text(&p, "path");
    expect(
        path == "1 -(e2|id)-> 1 -(e1|e1)-> 2 -(e1|id)-> 1 -(e4|e4)-> 5",
        format!("path {path}"),
    )?;
    let condensed = text(&p, "condensed");
    expect(condensed == "1 2 1 5", format!("condensed {condensed}"))?;
    Ok(format!("p = {condensed}"))
}

fn wp_agreement() -> Check {
    let a = build_graph_automaton(&star3()).unwrap();
    let words: Vec<String> = words_up_to(&a, 6)
        .iter()
        .map(|w| format_word(&a, w))
        .collect();
    let disagreements: Vec<String> = words
        .par_iter()
        .filter_map(|w| {
            let closure = cli(&["wp", "--builtin", "star3", "-w", w, "--method", "closure"]);
            let fragile = cli(&[
                "wp",
                "--builtin",
                "star3",
                "-w",
                w,
                "--method",
                "fragile",
                "--kmax",
                "8",
            ]);
            match (closure, fragile) {
                (Ok(c), Ok(f)) if text(&c, "verdict") == text(&f, "verdict") => None,
                (c, f) => Some(format!("{w}: {c:?} vs {f:?}")),
            }
        })
        .collect();
    expect(
        disagreements.is_empty(),
        format!(
            "{} disagreements, first {:?}",
            disagreements.len(),
            disagreements.first()
        ),
    )?;
    Ok(format!("{} words agree", words.len()))
}

fn commutation_criterion() -> Check {
    let t = fig5_tree();
    let a = build_graph_automaton(&t).unwrap();
    let complement = t.line_graph_complement();
    let m = t.edges().len();
    let mut pairs = 0;
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let c = GroupWord::commutator(&GroupWord::generator(i), &GroupWord::generator(j));
            let trivial = selfsim::wordproblem::is_identity(&a, &c)
                .unwrap()
                .is_identity();
            expect(
                trivial == complement.is_adjacent(i, j),
                format!("pair ({}, {})", t.edges()[i].name, t.edges()[j].name),
            )?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} ordered pairs"))
}

fn exponent_sum_theorem() -> Check {
    let a = build_graph_automaton(&fig5_tree()).unwrap();
    let gens = generators(&a);
    let words = words_up_to(&a, 6);
    let (identities, violations): (usize, Vec<String>) = words
        .par_iter()
        .map(|w| {
            let zero = exponent_sums(w, &gens).iter().all(|&s| s == 0);
            let trivial = acts_trivially(&a, w);
            let bad = (trivial && !zero).then(|| format_word(&a, w));
            (usize::from(trivial), bad.into_iter().collect::<Vec<_>>())
        })
        .reduce(
            || (0, Vec::new()),
            |(n, mut v), (m, w)| {
                v.extend(w);
                (n + m, v)
            },
        );
    expect(violations.is_empty(), format!("violations {violations:?}"))?;
    Ok(format!(
        "{} words, {identities} identities, all with zero sums",
        words.len()
    ))
}

fn trace_theorem() -> Check {
    let mut total = 0;
    for g in [fig5_tree(), star3()] {
        let a = build_graph_automaton(&g).unwrap();
        let p = presentation_from_tree(&g).unwrap();
        let letters: Vec<usize> = (0..p.letters().len()).collect();
        let words: Vec<Vec<usize>> = (0..=4).flat_map(|l| positive_words(&letters, l)).collect();
        let traces: Vec<_> = words.iter().map(|w| p.word(w.clone()).unwrap()).collect();
        let bad: Vec<String> = (0..words.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let (a, traces, words) = (&a, &traces, &words);
                (i..words.len()).filter_map(move |j| {
                    let t = equivalent(&traces[i], &traces[j]).unwrap();
                    let s = semigroup_eq_via_action(a, &words[i], &words[j])
                        .unwrap()
                        .equal;
                    let q = projection_equivalent(&traces[i], &traces[j]).unwrap();
                    (t != s || t != q).then(|| {
                        format!(
                            "{} / {}: {t} {s} {q}",
                            traces[i].format(),
                            traces[j].format()
                        )
                    })
                })
            })
            .collect();
        expect(
            bad.is_empty(),
            format!("{} disagreements, first {:?}", bad.len(), bad.first()),
        )?;
        total += words.len() * (words.len() + 1) / 2;
    }
    Ok(format!("{total} pairs agree"))
}

fn orientation_sensitivity() -> Check {
    let acyclic = cli(&[
        "check-acyclic",
        "--builtin",
        "cycle_3_acyclic",
        "--max-len",
        "6",
    ])?;
    expect(
        text(&acyclic, "result") == "Pass",
        format!("acyclic: {acyclic}"),
    )?;
    let torsion = cli(&[
        "cycle-torsion",
        "--builtin",
        "cycle_3",
        "-w",
        "e1 e2 e3",
        "-k",
        "3",
    ])?;
    expect(
        text(&torsion, "torsion") == "true",
        format!("torsion: {torsion}"),
    )?;
    let square = cli(&["wp", "--builtin", "cycle_3", "-w", "e1 e2 e3 e1 e2 e3"])?;
    expect(
        text(&square, "verdict") == "Identity",
        format!("square: {square}"),
    )?;
    let single = cli(&["wp", "--builtin", "cycle_3", "-w", "e1 e2 e3"])?;
    expect(
        text(&single, "verdict") == "NonIdentity",
        "the cycle word itself is trivial",
    )?;
    Ok(format!(
        "{} positive words checked; (e1 e2 e3)^2 acts trivially",
        text(&acyclic, "checked")
    ))
}

fn symmetric_quotient() -> Check {
    let star = text(&cli(&["sym-quotient", "--builtin", "star3"])?, "order");
    let tree = text(&cli(&["sym-quotient", "--builtin", "fig5_tree"])?, "order");
    expect(
        star == "24" && tree == "720",
        format!("orders {star}, {tree}"),
    )?;
    Ok("24 and 720".into())
}

fn nucleus_check() -> Check {
    let adding = cli(&["nucleus", "--builtin", "adding_machine"])?;
    let elements = list(&adding, "elements");
    expect(
        elements == ["id", "e", "e^-1"],
        format!("adding machine nucleus {elements:?}"),
    )?;
    let star = cli(&["nucleus", "--builtin", "star3"])?;
    let longest: usize = text(&star, "max-representative-length")
        .parse()
        .unwrap_or(usize::MAX);
    expect(longest <= 4, format!("representative of length {longest}"))?;
    Ok(format!(
        "adding machine {{id, e, e^-1}}; star nucleus has {} elements, longest {longest}",
        text(&star, "size")
    ))
}

fn restriction_shortening() -> Check {
    let a = build_graph_automaton(&fig5_tree()).unwrap();
    let words = words_up_to(&a, 5);
    let checked: usize = words
        .par_iter()
        .filter(|w| !w.is_empty())
        .map(|w| {
            (0..a.num_letters())
                .filter(|&x| apply(&a, w, &[x]).unwrap() == [x])
                .map(|x| {
                    let r = restrict(&a, w, &[x]).unwrap();
                    assert!(r.len() < w.len(), "{} at {x}", format_word(&a, w));
                    1
                })
                .sum::<usize>()
        })
        .sum();
    Ok(format!("{checked} fixed (word, vertex) pairs shorten"))
}

fn reducibility() -> Check {
    let mut notes = Vec::new();
    for (fixture, len, depth) in [
        ("star3", "5", "8"),
        ("fig5_tree", "4", "4"),
        ("basilica", "4", "4"),
    ] {
        let r = cli(&[
            "check-reducible",
            "--builtin",
            fixture,
            "--max-len",
            len,
            "--max-depth",
            depth,
        ])?;
        expect(text(&r, "result") == "Pass", format!("{fixture}: {r}"))?;
        notes.push(format!("{fixture} {}", text(&r, "checked")));
    }
    let demo = cli(&[
        "check-reducible",
        "--builtin",
        "non_reducible_demo",
        "--max-len",
        "4",
        "--max-depth",
        "4",
    ])?;
    expect(
        text(&demo, "result") == "Counterexample",
        format!("demo: {demo}"),
    )?;
    Ok(format!(
        "pass: {}; demo counterexample {}",
        notes.join(", "),
        text(&demo, "word")
    ))
}

fn schreier_pipeline() -> Check {
    let action = fixture_path("triangle.action");
    let g = cli(&["schreier-gen", "--action", &action])?;
    expect(
        text(&g, "invertible") == "true",
        "generated automaton is not invertible",
    )?;
    expect(
        text(&g, "round-trip") == "true",
        "enriched dual differs from decorated graph",
    )?;
    let v = cli(&["verify-loops", "--action", &action, "--max-len", "6"])?;
    expect(text(&v, "result") == "Pass", format!("loops: {v}"))?;
    Ok(format!("{} closed walks shorten", text(&v, "checked")))
}

/// Reduced word of 1..=max_len random letters (shorter after reduction).
fn random_word(rng: &mut ChaCha8Rng, gens: usize, max_len: usize) -> GroupWord {
    let len = rng.gen_range(1..=max_len);
    GroupWord::reduce(
        (0..len).map(|_| Letter::new(rng.gen_range(0..gens), rng.gen_bool(0.5))),
        None,
    )
}

fn stabilizer(aut: &MealyAutomaton, r: &GroupWord) -> GroupWord {
    let perm = level1_permutation(aut, r).unwrap();
    let mut p = perm.clone();
    let mut k = 1;
    while p.iter().enumerate().any(|(i, &x)| i != x) {
        p = p.iter().map(|&x| perm[x]).collect();
        k += 1;
    }
    r.pow(k)
}

fn fragile_algebra() -> Check {
    let a = build_graph_automaton(&star3()).unwrap();
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f);
    let mut fragile = 0;
    for _ in 0..100 {
        let s = stabilizer(&a, &random_word(&mut rng, 3, 5));
        let t = stabilizer(&a, &random_word(&mut rng, 3, 5));
        for w in [&s, &t] {
            let image = embed_in_product(&a, w, 1, &caps).unwrap();
            let member = fragile_member(&a, w, 1, &caps).unwrap();
            expect(
                image.iter().all(GroupWord::is_empty) == member,
                "kernel law",
            )?;
        }
        let x = rng.gen_range(0..4);
        let lhs = virtual_endo(&a, &[x], &s.concat(&t)).unwrap();
        let rhs = virtual_endo(&a, &[x], &s)
            .unwrap()
            .concat(&virtual_endo(&a, &[x], &t).unwrap());
        expect(lhs == rhs, format!("multiplicativity at {x}"))?;
    }
    let f = build_graph_automaton(&fig5_tree()).unwrap();
    for _ in 0..100 {
        let u = random_word(&mut rng, 5, 3);
        let v = random_word(&mut rng, 5, 3);
        let w = GroupWord::commutator(&u, &v);
        for k in 1..=3 {
            if fragile_member(&f, &w, k, &caps).unwrap() {
                fragile += 1;
                expect(
                    fragile_member(&f, &w, k + 1, &caps).unwrap(),
                    "monotonicity",
                )?;
            }
        }
    }
    Ok(format!(
        "100 stabilizer pairs, 100 words ({fragile} fragile memberships)"
    ))
}

fn dichotomy_check() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let commuting = dir.path().join("commuting.tuples");
    std::fs::write(&commuting, "a | b c\na a | b c b c\na^-1 | c^-1 b^-1\n").unwrap();
    let r = cli(&[
        "dichotomy",
        "--builtin",
        "star3",
        "--tuples",
        commuting.to_str().unwrap(),
    ])?;
    expect(
        text(&r, "result") == "Abelian",
        format!("commuting family: {r}"),
    )?;

    let a = build_graph_automaton(&star3()).unwrap();
    let word = |s: &str| selfsim::action::parse_word(&a, s).unwrap();
    let (s, t) = (word("a a"), word("b b"));
    expect(
        stabilizer(&a, &s) == s && stabilizer(&a, &t) == t,
        "squares fix level one",
    )?;
    expect(
        !acts_trivially(&a, &GroupWord::commutator(&s, &t)),
        "squares commute",
    )?;
    let mut lines = String::new();
    for w in [&s, &t] {
        let e = cli(&[
            "embed",
            "--builtin",
            "star3",
            "-w",
            &format_word(&a, w),
            "-k",
            "1",
        ])?;
        let parts: Vec<String> = list(&e, "components")
            .iter()
            .map(|c| {
                c.split_once("] ")
                    .map(|(_, w)| w.to_string())
                    .unwrap_or_default()
            })
            .collect();
        lines.push_str(&parts.join(" | "));
        lines.push('\n');
    }
    let free = dir.path().join("free.tuples");
    std::fs::write(&free, &lines).unwrap();
    let r = cli(&[
        "dichotomy",
        "--builtin",
        "star3",
        "--tuples",
        free.to_str().unwrap(),
    ])?;
    expect(
        text(&r, "result") == "FreePair",
        format!("embedded pair: {r}"),
    )?;
    let tuples: Vec<Vec<GroupWord>> = [&s, &t]
        .iter()
        .map(|w| embed_in_product(&a, w, 1, &Caps::default()).unwrap())
        .collect();
    expect(
        matches!(dichotomy(&tuples).unwrap(), Dichotomy::FreePair { .. }),
        "library disagrees with the command line",
    )?;
    Ok(format!("free pair at component {}", text(&r, "component")))
}

fn bounded_center() -> Check {
    let a = build_graph_automaton(&star3()).unwrap();
    let gens: Vec<GroupWord> = generators(&a)
        .into_iter()
        .map(GroupWord::generator)
        .collect();
    let mut checked = 0;
    let mut violations = Vec::new();
    for w in words_up_to(&a, 3) {
        if acts_trivially(&a, &w) {
            continue;
        }
        checked += 1;
        if gens
            .iter()
            .all(|g| acts_trivially(&a, &GroupWord::commutator(&w, g)))
        {
            violations.push(format_word(&a, &w));
        }
    }
    expect(
        violations.is_empty(),
        format!("central words {violations:?}"),
    )?;
    Ok(format!("{checked} nontrivial words are not central"))
}

fn main() {
    let criteria: [Criterion; 15] = [
        ("fixture fidelity", fixture_fidelity),
        ("worked dual path", worked_path),
        ("word problem method agreement", wp_agreement),
        ("commutation criterion", commutation_criterion),
        ("exponent sums", exponent_sum_theorem),
        ("trace monoid equality", trace_theorem),
        ("orientation sensitivity", orientation_sensitivity),
        ("symmetric quotient", symmetric_quotient),
        ("nucleus", nucleus_check),
        ("restriction shortening", restriction_shortening),
        ("reducibility", reducibility),
        ("schreier pipeline", schreier_pipeline),
        ("fragile algebra", fragile_algebra),
        ("dichotomy", dichotomy_check),
        ("bounded center", bounded_center),
    ];
    let mut results: HashMap<usize, bool> = HashMap::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = started.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}; {secs:.2}s)", i + 1),
            Err(why) => println!("criterion {:>2} {name}: FAIL ({why}; {secs:.2}s)", i + 1),
        }
        results.insert(i, outcome.is_ok());
    }
    let failed = results.values().filter(|ok| !**ok).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
