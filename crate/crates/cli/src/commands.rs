use std::path::Path;

use selfsim::action::{
    dual_path, format_input, format_positive, format_word, generators, level1_permutation,
    parse_positive, parse_word, stabilizes_level, GroupWord, Letter,
};
use selfsim::schreier::{
    build_reducible_automaton, verify_loop_shortening, Assignment, FiniteAction, LoopReport,
    SchreierAutomaton,
};
use selfsim::tracemonoid::{
    check_acyclic_no_positive_identity, check_cycle_torsion, equivalent, normal_form,
    presentation_from_forest, projection_equivalent, semigroup_eq_via_action,
    PositiveIdentityReport,
};
use selfsim::wordproblem::{
    check_reducible, dichotomy, embed_in_product, exponent_sums, fragile_index, fragile_member,
    is_identity, is_identity_in_gk, nucleus, sym_quotient_order, Certificate, Decision, Dichotomy,
    ReducibleReport,
};
use selfsim::{Caps, Error, MealyAutomaton, Symbol};

use crate::input::{file_digest, load, read_file, Input, Loaded};
use crate::{Cli, Command, Failure, Method, Oracle, Report};

type Outcome = Result<(), Failure>;

pub fn dispatch(cli: &Cli, caps: &Caps, r: &mut Report) -> Outcome {
    let out = cli.output.as_deref();
    match &cli.command {
        Command::BuildGraphAutomaton { input } => {
            let l = open(input, r)?;
            l.graph()?;
            describe(&l.automaton, r, out)
        }
        Command::Dual { input } => {
            let l = open(input, r)?;
            describe(&l.automaton.dual(), r, out)
        }
        Command::EnrichedDual { input } => {
            let l = open(input, r)?;
            describe(&l.automaton.enriched_dual()?, r, out)
        }
        Command::Power { input, n } => {
            let l = open(input, r)?;
            let p = l.automaton.power(*n)?;
            r.text("n", n);
            describe(&p.automaton, r, out)
        }
        Command::ExportDot { input } => {
            let l = open(input, r)?;
            let dot = l.automaton.to_dot();
            write_artifact(out, &dot, r)?;
            r.block("dot", dot);
            Ok(())
        }
        Command::Wp {
            input,
            word,
            method,
            kmax,
        } => {
            let l = open(input, r)?;
            wp(&l.automaton, word, *method, *kmax, caps, r)
        }
        Command::Nucleus {
            input,
            depth_cap,
            size_cap,
        } => {
            let l = open(input, r)?;
            let a = &l.automaton;
            let n = nucleus(a, *depth_cap, *size_cap)?;
            r.text("size", n.len())
                .text("max-representative-length", n.max_rep_len())
                .list("elements", n.elements.iter().map(|w| show(a, w)));
            let rows = (0..n.len()).map(|i| {
                let perm: Vec<String> = n.perms[i]
                    .iter()
                    .map(|&y| a.letter(y).to_string())
                    .collect();
                let secs: Vec<String> = n.sections[i]
                    .iter()
                    .map(|&j| show(a, &n.elements[j]))
                    .collect();
                format!(
                    "{} = ({})[{}]",
                    show(a, &n.elements[i]),
                    secs.join(", "),
                    perm.join(" ")
                )
            });
            r.list("recursion", rows);
            Ok(())
        }
        Command::Fragile { input, word, k } => {
            let l = open(input, r)?;
            let w = word_arg(&l.automaton, word, r)?;
            r.text("k", k)
                .text("member", fragile_member(&l.automaton, &w, *k, caps)?);
            Ok(())
        }
        Command::Embed { input, word, k } => {
            let l = open(input, r)?;
            let a = &l.automaton;
            let w = word_arg(a, word, r)?;
            let image = embed_in_product(a, &w, *k, caps)?;
            let labels =
                selfsim::action::positive_words(&(0..a.num_letters()).collect::<Vec<_>>(), *k);
            r.text("k", k)
                .text("all-empty", image.iter().all(GroupWord::is_empty))
                .list(
                    "components",
                    labels
                        .iter()
                        .zip(&image)
                        .map(|(u, g)| format!("[{}] {}", format_input(a, u), show(a, g))),
                );
            Ok(())
        }
        Command::GkIdentity { input, word, k } => {
            let l = open(input, r)?;
            let w = word_arg(&l.automaton, word, r)?;
            r.text("k", k).text(
                "identity-in-gk",
                is_identity_in_gk(&l.automaton, &w, *k, caps)?,
            );
            Ok(())
        }
        Command::ExponentSums { input, word } => {
            let l = open(input, r)?;
            let a = &l.automaton;
            let w = word_arg(a, word, r)?;
            let gens = generators(a);
            let sums = exponent_sums(&w, &gens);
            r.list(
                "sums",
                gens.iter()
                    .zip(&sums)
                    .map(|(&g, s)| format!("{} {s}", a.state(g))),
            )
            .text("all-zero", sums.iter().all(|&s| s == 0));
            Ok(())
        }
        Command::CheckReducible {
            input,
            max_len,
            max_depth,
        } => {
            let l = open(input, r)?;
            let a = &l.automaton;
            r.text("max-len", max_len).text("max-depth", max_depth);
            match check_reducible(a, *max_len, *max_depth)? {
                ReducibleReport::Pass { checked } => {
                    r.text("result", "Pass").text("checked", checked);
                }
                ReducibleReport::Counterexample { word, letter } => {
                    r.text("result", "Counterexample")
                        .text("word", show(a, &word))
                        .text("letter", a.letter(letter));
                }
                ReducibleReport::Inconclusive { unresolved } => {
                    r.text("result", "Inconclusive")
                        .list("unresolved", unresolved.iter().map(|w| show(a, w)));
                }
            }
            Ok(())
        }
        Command::SymQuotient { input } => {
            let l = open(input, r)?;
            r.text("degree", l.automaton.num_letters())
                .text("order", sym_quotient_order(&l.automaton, caps)?);
            Ok(())
        }
        Command::Dichotomy { input, tuples } => {
            let loaded = match input.clone().into_input() {
                Some(i) => Some(open(&i, r)?),
                None => None,
            };
            dichotomy_cmd(loaded.as_ref().map(|l| &l.automaton), tuples, r)
        }
        Command::TraceNf { input, u } => {
            let l = open(input, r)?;
            let p = presentation_from_forest(l.graph()?)?;
            let w = p.parse(u)?;
            r.text("word", w.format())
                .text("normal-form", normal_form(&w).format());
            Ok(())
        }
        Command::TraceEq {
            input,
            u,
            v,
            oracle,
        } => {
            let l = open(input, r)?;
            trace_eq(&l, u, v, *oracle, r)
        }
        Command::DualPath { input, x, u } => {
            let l = open(input, r)?;
            let a = &l.automaton;
            let start = a
                .letter_index(&Symbol::parse(x))
                .ok_or_else(|| Error::UnknownLetter(x.clone()))?;
            let word = parse_positive(a, u)?;
            let path = dual_path(a, start, &word)?;
            r.text("word", format_positive(a, &word))
                .text("path", path.format(a))
                .text("outputs", format_positive(a, &path.outputs()))
                .text("condensed", path.format_condensed(a));
            Ok(())
        }
        Command::CheckAcyclic { input, max_len } => {
            let l = open(input, r)?;
            let g = l.graph()?;
            r.text("max-len", max_len);
            match check_acyclic_no_positive_identity(g, *max_len)? {
                PositiveIdentityReport::Pass { checked } => {
                    r.text("result", "Pass").text("checked", checked);
                }
                PositiveIdentityReport::Violation { word } => {
                    r.text("result", "Violation")
                        .text("word", format_positive(&l.automaton, &word));
                }
            }
            Ok(())
        }
        Command::CycleTorsion { input, word, k } => {
            let l = open(input, r)?;
            let g = l.graph()?;
            let w = parse_positive(&l.automaton, word)?;
            r.text("word", format_positive(&l.automaton, &w))
                .text("k", k)
                .text("torsion", check_cycle_torsion(g, &w, *k)?);
            Ok(())
        }
        Command::SchreierGen { action, assignment } => {
            let sa = schreier(action, assignment.as_deref(), r)?;
            let a = &sa.automaton;
            let tree = sa.tree.iter().map(|t| {
                format!(
                    "{} --{}--> {}",
                    sa.graph.points[t.from],
                    sa.graph.generators[t.generator],
                    sa.graph.points[t.to]
                )
            });
            r.text("cosets", sa.graph.len())
                .list("tree", tree)
                .text("degenerate", sa.degenerate)
                .text("invertible", a.is_invertible())
                .text("round-trip", a.enriched_dual()?.table_eq(&sa.decorated));
            describe(a, r, out)
        }
        Command::VerifyLoops {
            action,
            assignment,
            max_len,
        } => {
            let sa = schreier(action, assignment.as_deref(), r)?;
            r.text("max-len", max_len).text("degenerate", sa.degenerate);
            match verify_loop_shortening(&sa, *max_len) {
                LoopReport::Pass { checked } => {
                    r.text("result", "Pass").text("checked", checked);
                }
                LoopReport::Violation {
                    vertex,
                    word,
                    output_len,
                } => {
                    r.text("result", "Violation")
                        .text("vertex", sa.graph.points[vertex])
                        .text("word", word.format(&sa.graph.generators))
                        .text("output-length", output_len);
                }
            }
            Ok(())
        }
    }
}

fn open(input: &Input, r: &mut Report) -> Result<Loaded, Failure> {
    let l = load(input)?;
    r.text("input", &l.digest);
    Ok(l)
}

/// The empty word prints as `id`.
fn show(a: &MealyAutomaton, w: &GroupWord) -> String {
    if w.is_empty() {
        "id".to_string()
    } else {
        format_word(a, w)
    }
}

fn word_arg(a: &MealyAutomaton, text: &str, r: &mut Report) -> Result<GroupWord, Failure> {
    let w = parse_word(a, text)?;
    r.text("word", show(a, &w));
    Ok(w)
}

fn write_artifact(out: Option<&Path>, content: &str, r: &mut Report) -> Outcome {
    if let Some(path) = out {
        std::fs::write(path, content)
            .map_err(|e| Failure::new("Io", format!("cannot write {}: {e}", path.display())))?;
        r.text("written", path.display());
    }
    Ok(())
}

fn describe(a: &MealyAutomaton, r: &mut Report, out: Option<&Path>) -> Outcome {
    let json = a.to_json();
    write_artifact(out, &json, r)?;
    r.list("states", a.states())
        .list("alphabet", a.alphabet())
        .text(
            "sink",
            a.sink()
                .map_or_else(|| "none".to_string(), |s| a.state(s).to_string()),
        )
        .text("invertible", a.is_invertible());
    if a.sink().is_some() {
        r.text("bounded", a.is_bounded()?);
    }
    r.list(
        "transitions",
        a.transitions()
            .map(|t| format!("{} --{}|{}--> {}", t.state, t.input, t.output, t.next)),
    );
    Ok(())
}

fn wp(
    a: &MealyAutomaton,
    text: &str,
    method: Method,
    kmax: usize,
    caps: &Caps,
    r: &mut Report,
) -> Outcome {
    let w = word_arg(a, text, r)?;
    match method {
        Method::Closure => {
            let v = is_identity(a, &w)?;
            r.text("method", "closure");
            match v.decision {
                Decision::Identity => {
                    r.text("verdict", "Identity");
                    if let Some(Certificate::Closure(words)) = &v.certificate {
                        r.list("closure", words.iter().map(|g| show(a, g)));
                    }
                }
                Decision::NonIdentity => {
                    let witness = v.witness.expect("non-identity verdicts carry a witness");
                    let image = selfsim::action::apply(a, &w, &witness)?;
                    r.text("verdict", "NonIdentity")
                        .text("witness", format_input(a, &witness))
                        .text("image", format_input(a, &image));
                }
            }
        }
        Method::Fragile => {
            r.text("method", "fragile").text("kmax", kmax);
            if let Some(k) = fragile_index(a, &w, kmax, caps)? {
                r.text("verdict", "Identity").text("fragile-index", k);
            } else if let Some(depth) = (1..=kmax)
                .map(|k| stabilizes_level(a, &w, k, caps).map(|s| (k, s)))
                .find(|res| !matches!(res, Ok((_, true))))
            {
                let (k, _) = depth?;
                r.text("verdict", "NonIdentity").text("moves-level", k);
                if k == 1 {
                    let perm = level1_permutation(a, &w)?;
                    r.text("level-1-permutation", format_input(a, &perm));
                }
            } else {
                return Err(Error::FragileInconclusive(kmax).into());
            }
        }
    }
    Ok(())
}

fn dichotomy_cmd(aut: Option<&MealyAutomaton>, path: &Path, r: &mut Report) -> Outcome {
    let text = read_file(path)?;
    r.text("tuples-file", file_digest("tuples", path, &text));
    let mut names: Vec<Symbol> = aut.map(|a| a.states().to_vec()).unwrap_or_default();
    let sink = aut.and_then(MealyAutomaton::sink);
    let mut tuples = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tuple = Vec::new();
        for component in line.split('|') {
            let mut letters = Vec::new();
            for token in component.split_whitespace() {
                let sym = Symbol::parse(token);
                let base = if sym.is_inverse() {
                    sym.inverse()
                } else {
                    sym.clone()
                };
                let g = match names.iter().position(|n| *n == base) {
                    Some(g) => g,
                    None if aut.is_none() => {
                        names.push(base);
                        names.len() - 1
                    }
                    None => return Err(Error::UnknownGenerator(token.to_string()).into()),
                };
                letters.push(Letter::new(g, sym.is_inverse()));
            }
            tuple.push(GroupWord::reduce(letters, sink));
        }
        tuples.push(tuple);
    }
    r.text("tuples", tuples.len());
    match dichotomy(&tuples)? {
        Dichotomy::Abelian => {
            r.text("result", "Abelian");
        }
        Dichotomy::FreePair { component, s, t } => {
            r.text("result", "FreePair")
                .text("component", component)
                .text("first", s)
                .text("second", t)
                .text("first-entry", tuples[s][component].format(&names))
                .text("second-entry", tuples[t][component].format(&names));
        }
    }
    Ok(())
}

fn trace_eq(l: &Loaded, u: &str, v: &str, oracle: Oracle, r: &mut Report) -> Outcome {
    let p = presentation_from_forest(l.graph()?)?;
    let (tu, tv) = (p.parse(u)?, p.parse(v)?);
    r.text("u", tu.format()).text("v", tv.format());
    match oracle {
        Oracle::Trace => {
            r.text("oracle", "trace")
                .text("equivalent", equivalent(&tu, &tv)?);
        }
        Oracle::Projection => {
            r.text("oracle", "projection")
                .text("equivalent", projection_equivalent(&tu, &tv)?);
        }
        Oracle::Action => {
            let c = semigroup_eq_via_action(&l.automaton, tu.letters(), tv.letters())?;
            r.text("oracle", "action").text("equivalent", c.equal);
            if let Some(x) = c.distinguishing {
                r.text("distinguishing-input", format_input(&l.automaton, &x));
            }
        }
    }
    Ok(())
}

fn schreier(
    action: &Path,
    assignment: Option<&Path>,
    r: &mut Report,
) -> Result<SchreierAutomaton, Failure> {
    let text = read_file(action)?;
    r.text("action", file_digest("action", action, &text));
    let fa = FiniteAction::parse(&text)?;
    let assignment = match assignment {
        Some(path) => {
            let text = read_file(path)?;
            r.text("assignment", file_digest("assignment", path, &text));
            Some(Assignment::parse(&text)?)
        }
        None => None,
    };
    Ok(build_reducible_automaton(&fa, assignment.as_ref())?)
}
