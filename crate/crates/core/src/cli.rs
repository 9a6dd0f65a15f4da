//! The `parmon` command line.
//!
//! [`run`] parses arguments and returns the exit code with the text to print,
//! so the binary stays a thin wrapper and commands are testable in-process.
//!
//! Exit codes: 0 success or affirmative verdict, 1 invalid input, 2 usage
//! error, 3 negative verdict.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::confluence::{
    essential_critical_pairs, is_confluent, newman_report, EssentialTriple, PairClass,
};
use crate::error::Error;
use crate::limits::Limits;
use crate::magma::{evaluate, parse_tree, BracketingChecker};
use crate::monoid::{
    gen_disjoint_union_monoid, gen_no_common_letters_monoid, parse_monoid_with, serialize_monoid,
    Elem, PartialMonoid,
};
use crate::random::{random_monoids, Family};
use crate::rewriting::{lstd, lstd_traced, normal_forms, Convertibility};
use crate::star::{
    associativity_search, quotient_representatives, star, verify_assoc_iff_confluent,
};
use crate::words::{parse_word, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(exit_code: i32, stdout: String) -> Self {
        Self {
            exit_code,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(exit_code: i32, stderr: String) -> Self {
        Self {
            exit_code,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "parmon",
    version,
    about = "Partial monoids, rewriting and confluence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the partial monoid axiom on a multiplication table.
    Validate {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide confluence from the essential critical triples.
    Confluence {
        file: String,
        /// Also run the generic critical-pair check and compare.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// List every essential critical triple with its class.
    CriticalPairs {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Left-standard normal form of a word.
    Normalize {
        file: String,
        /// Element names; several arguments are joined.
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
        /// List every normal form reachable by rewriting.
        #[arg(long)]
        all: bool,
        /// Print each left-standard move.
        #[arg(long)]
        trace: bool,
        /// With --trace, print one JSON object per move.
        #[arg(long)]
        jsonl: bool,
        #[arg(long)]
        json: bool,
    },
    /// The product u ⋆ v of two irreducible words.
    Star {
        file: String,
        u: String,
        v: String,
        #[arg(long)]
        json: bool,
    },
    /// Search for a failure of associativity of ⋆.
    AssocTest {
        file: String,
        /// Longest irreducible word tried.
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        /// Report every counterexample instead of the first.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
    },
    /// Group words by normal form (confluent monoids only).
    Quotient {
        file: String,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        #[arg(long)]
        json: bool,
    },
    /// Normal form with `!` between adjacent letters.
    Simulate {
        file: String,
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Rank, rewrites, right comb and evaluations of a bracketed tree.
    MagmaDemo {
        file: String,
        /// Fully bracketed tree; several arguments are joined.
        #[arg(required = true, num_args = 1..)]
        tree: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print a generated monoid in the table format.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Check the main theorems on seeded random monoids.
    Selfcheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_carrier: usize,
        /// Word-length bound for the associativity search.
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum GenFamily {
    /// Subsets of an n-element set under disjoint union.
    DisjointUnion { n: usize },
    /// Words with distinct letters under concatenation.
    NoCommonLetters { letters: String },
}

struct Failure {
    exit_code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit_code = if e == Error::NotConfluent {
            EXIT_NEGATIVE
        } else {
            EXIT_INVALID
        };
        Failure {
            exit_code,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<(i32, String), Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome::fail(EXIT_USAGE, text)
            } else {
                CommandOutcome::ok(EXIT_OK, text)
            };
        }
    };
    match dispatch(cli.command, &Limits::from_env()) {
        Ok((code, out)) => CommandOutcome::ok(code, out),
        Err(f) => CommandOutcome::fail(f.exit_code, format!("error: {}\n", f.message)),
    }
}

fn dispatch(cmd: Command, limits: &Limits) -> Outcome {
    match cmd {
        Command::Validate { file, json } => cmd_validate(&file, json, limits),
        Command::Confluence { file, oracle, json } => {
            cmd_confluence(&load(&file, limits)?, oracle, json)
        }
        Command::CriticalPairs { file, json } => cmd_critical_pairs(&load(&file, limits)?, json),
        Command::Normalize {
            file,
            word,
            all,
            trace,
            jsonl,
            json,
        } => cmd_normalize(
            &load(&file, limits)?,
            &word.join(" "),
            all,
            trace,
            jsonl,
            json,
        ),
        Command::Star { file, u, v, json } => cmd_star(&load(&file, limits)?, &u, &v, json),
        Command::AssocTest {
            file,
            max_len,
            all,
            json,
        } => cmd_assoc_test(&load(&file, limits)?, max_len, all, json, limits),
        Command::Quotient {
            file,
            max_len,
            json,
        } => cmd_quotient(&load(&file, limits)?, max_len, json, limits),
        Command::Simulate { file, word, json } => {
            cmd_simulate(&load(&file, limits)?, &word.join(" "), json)
        }
        Command::MagmaDemo { file, tree, json } => {
            cmd_magma_demo(&load(&file, limits)?, &tree.join(" "), json)
        }
        Command::Gen { family } => cmd_gen(family, limits),
        Command::Selfcheck {
            seed,
            count,
            max_carrier,
            max_len,
            json,
        } => cmd_selfcheck(seed, count, max_carrier, max_len, json, limits),
    }
}

fn read(file: &str) -> Result<String, Failure> {
    let text = if file == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(file)
    };
    text.map_err(|e| Failure {
        exit_code: EXIT_INVALID,
        message: format!("cannot read `{file}`: {e}"),
    })
}

/// Parses and validates; every command but `validate` needs a valid table.
fn load(file: &str, limits: &Limits) -> Result<PartialMonoid, Failure> {
    let m = parse_monoid_with(&read(file)?, limits)?;
    let report = m.validate();
    if let Some(v) = report.violations.first() {
        return Err(Failure {
            exit_code: EXIT_INVALID,
            message: format!("not a partial monoid: {}", v.message),
        });
    }
    Ok(m)
}

fn names<'a>(m: &'a PartialMonoid, w: &Word) -> Vec<&'a str> {
    w.letters().iter().map(|&x| m.name(x)).collect()
}

fn triple_names(m: &PartialMonoid, t: [Elem; 3]) -> String {
    format!("({}, {}, {})", m.name(t[0]), m.name(t[1]), m.name(t[2]))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn convertibility_json(m: &PartialMonoid, c: &Convertibility) -> Value {
    match c {
        Convertibility::Yes(path) => json!({
            "result": "yes",
            "path": path.iter().map(|w| names(m, w)).collect::<Vec<_>>(),
        }),
        Convertibility::Unknown => json!({ "result": "unknown", "path": null }),
    }
}

fn convertibility_text(m: &PartialMonoid, c: &Convertibility) -> String {
    match c {
        Convertibility::Yes(path) => {
            let steps: Vec<String> = path.iter().map(|w| w.render(m)).collect();
            format!("{c}: {}", steps.join(" ⟺ "))
        }
        Convertibility::Unknown => c.to_string(),
    }
}

fn cmd_validate(file: &str, json: bool, limits: &Limits) -> Outcome {
    let m = parse_monoid_with(&read(file)?, limits)?;
    let report = m.validate();
    let code = if report.valid { EXIT_OK } else { EXIT_INVALID };
    if json {
        let violations: Vec<Value> = report
            .violations
            .iter()
            .map(|v| {
                json!({
                    "x": m.name(v.x), "y": m.name(v.y), "z": m.name(v.z),
                    "kind": v.kind.code(),
                    "message": v.message,
                })
            })
            .collect();
        let v = json!({
            "valid": report.valid,
            "elements": m.len(),
            "defined_products": m.domain_size(),
            "violations": violations,
        });
        return Ok((code, pretty(&v)));
    }
    let mut out = String::new();
    if report.valid {
        writeln!(
            out,
            "valid partial monoid: {} elements, {} defined products",
            m.len(),
            m.domain_size()
        )
        .unwrap();
    } else {
        writeln!(
            out,
            "invalid: {} associativity violations",
            report.violations.len()
        )
        .unwrap();
        for v in &report.violations {
            writeln!(
                out,
                "  {} {}: {}",
                triple_names(&m, v.triple()),
                v.kind.code(),
                v.message
            )
            .unwrap();
        }
    }
    Ok((code, out))
}

fn triple_json(m: &PartialMonoid, t: &EssentialTriple) -> Value {
    json!({
        "x": m.name(t.x), "y": m.name(t.y), "z": m.name(t.z),
        "a": m.name(t.a), "b": m.name(t.b),
        "class": format!("{:?}", t.class),
        "pair": [names(m, &t.pair.0), names(m, &t.pair.1)],
    })
}

fn cmd_confluence(m: &PartialMonoid, oracle: bool, json: bool) -> Outcome {
    let verdict = is_confluent(m);
    let catenary = m.is_catenary();
    let newman = oracle.then(|| newman_report(m));
    let agrees = newman.as_ref().map(|r| r.confluent() == verdict.confluent);
    let code = match agrees {
        Some(false) => EXIT_INVALID,
        _ if verdict.confluent => EXIT_OK,
        _ => EXIT_NEGATIVE,
    };
    if json {
        let v = json!({
            "confluent": verdict.confluent,
            "method": "essential",
            "catenary": catenary.catenary,
            "a0_witnesses": verdict.a0_witnesses.iter().map(|t| triple_json(m, t)).collect::<Vec<_>>(),
            "oracle": newman.as_ref().map(|r| json!({
                "method": "generic-newman",
                "critical_pairs": r.critical_pairs,
                "non_convergent": r.non_convergent.len(),
                "confluent": r.confluent(),
                "agrees": agrees,
            })),
        });
        return Ok((code, pretty(&v)));
    }
    let mut out = String::new();
    writeln!(
        out,
        "confluent: {}",
        if verdict.confluent { "yes" } else { "no" }
    )
    .unwrap();
    writeln!(
        out,
        "catenary: {}",
        if catenary.catenary { "yes" } else { "no" }
    )
    .unwrap();
    if !verdict.confluent {
        writeln!(out, "A0 witnesses:").unwrap();
        for t in &verdict.a0_witnesses {
            writeln!(
                out,
                "  {}: {} vs {}",
                triple_names(m, [t.x, t.y, t.z]),
                t.pair.0.render(m),
                t.pair.1.render(m)
            )
            .unwrap();
        }
    }
    if let Some(r) = &newman {
        writeln!(
            out,
            "generic critical pairs: {}, non-convergent: {}",
            r.critical_pairs,
            r.non_convergent.len()
        )
        .unwrap();
        writeln!(
            out,
            "{}",
            if agrees == Some(true) {
                "oracle agrees"
            } else {
                "oracle disagrees"
            }
        )
        .unwrap();
    }
    Ok((code, out))
}

fn cmd_critical_pairs(m: &PartialMonoid, json: bool) -> Outcome {
    let triples = essential_critical_pairs(m);
    let mut counts = BTreeMap::from([("A0", 0usize), ("A1", 0), ("B", 0)]);
    for t in &triples {
        *counts
            .get_mut(match t.class {
                PairClass::A0 => "A0",
                PairClass::A1 => "A1",
                PairClass::B => "B",
            })
            .expect("all classes counted") += 1;
    }
    if json {
        let v = json!({
            "triples": triples.iter().map(|t| triple_json(m, t)).collect::<Vec<_>>(),
            "counts": counts,
        });
        return Ok((EXIT_OK, pretty(&v)));
    }
    let rows: Vec<[String; 7]> = triples
        .iter()
        .map(|t| {
            [
                m.name(t.x).to_string(),
                m.name(t.y).to_string(),
                m.name(t.z).to_string(),
                m.name(t.a).to_string(),
                m.name(t.b).to_string(),
                format!("{:?}", t.class),
                format!("{} | {}", t.pair.0.render(m), t.pair.1.render(m)),
            ]
        })
        .collect();
    let header = ["x", "y", "z", "a", "b", "class", "pair"].map(String::from);
    let mut widths = header.clone().map(|h| h.chars().count());
    for r in &rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    for r in std::iter::once(&header).chain(&rows) {
        let cells: Vec<String> = r
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
    }
    writeln!(
        out,
        "A0: {}  A1: {}  B: {}",
        counts["A0"], counts["A1"], counts["B"]
    )
    .unwrap();
    Ok((EXIT_OK, out))
}

fn cmd_normalize(
    m: &PartialMonoid,
    text: &str,
    all: bool,
    trace: bool,
    jsonl: bool,
    json: bool,
) -> Outcome {
    let w = parse_word(m, text)?;
    let traced = lstd_traced(m, &w);
    let result = traced.result().clone();
    let mut forms: Vec<Word> = if all {
        normal_forms(m, &w).into_iter().collect()
    } else {
        Vec::new()
    };
    forms.sort_by(Word::shortlex_cmp);
    if json {
        let mut v = json!({ "input": names(m, &w), "lstd": names(m, &result) });
        if all {
            v["normal_forms"] = json!(forms.iter().map(|f| names(m, f)).collect::<Vec<_>>());
        }
        if trace {
            v["trace"] = json!(traced
                .steps
                .iter()
                .enumerate()
                .map(|(i, s)| json!({
                    "step": i,
                    "word": names(m, &s.word),
                    "rule": s.applied.describe(m),
                    "position": s.applied.position(),
                    "result": names(m, &s.result),
                }))
                .collect::<Vec<_>>());
        }
        return Ok((EXIT_OK, pretty(&v)));
    }
    let mut out = String::new();
    if trace {
        out.push_str(&if jsonl {
            traced.render_jsonl(m)
        } else {
            traced.render_text(m)
        });
    }
    if all {
        writeln!(out, "normal forms: {}", forms.len()).unwrap();
        for f in &forms {
            let mark = if *f == result {
                "  (left-standard)"
            } else {
                ""
            };
            writeln!(out, "  {}{mark}", f.render(m)).unwrap();
        }
    } else if !trace {
        writeln!(out, "{}", result.render(m)).unwrap();
    }
    Ok((EXIT_OK, out))
}

fn cmd_star(m: &PartialMonoid, u: &str, v: &str, json: bool) -> Outcome {
    let (u, v) = (parse_word(m, u)?, parse_word(m, v)?);
    let r = star(m, &u, &v)?;
    if json {
        let j = json!({ "u": names(m, &u), "v": names(m, &v), "result": names(m, &r) });
        return Ok((EXIT_OK, pretty(&j)));
    }
    Ok((EXIT_OK, format!("{}\n", r.render(m))))
}

fn cmd_assoc_test(
    m: &PartialMonoid,
    max_len: usize,
    all: bool,
    json: bool,
    limits: &Limits,
) -> Outcome {
    let report = associativity_search(m, max_len, all, limits)?;
    let confluent = is_confluent(m).confluent;
    let code = if report.associative {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    if json {
        let cx: Vec<Value> = report
            .counterexamples
            .iter()
            .map(|c| {
                json!({
                    "u": names(m, &c.u), "v": names(m, &c.v), "w": names(m, &c.w),
                    "left": names(m, &c.left), "right": names(m, &c.right),
                    "congruence": convertibility_json(m, &c.congruence),
                })
            })
            .collect();
        let v = json!({
            "max_len": report.bound,
            "triples_checked": report.triples_checked,
            "associative": report.associative,
            "confluent": confluent,
            "associative_iff_confluent": report.associative == confluent,
            "counterexamples": cx,
        });
        return Ok((code, pretty(&v)));
    }
    let mut out = String::new();
    writeln!(
        out,
        "checked {} triples of irreducible words of length <= {}",
        report.triples_checked, report.bound
    )
    .unwrap();
    writeln!(
        out,
        "associative: {}",
        if report.associative { "yes" } else { "no" }
    )
    .unwrap();
    for c in &report.counterexamples {
        writeln!(
            out,
            "counterexample: u = {}, v = {}, w = {}",
            c.u.render(m),
            c.v.render(m),
            c.w.render(m)
        )
        .unwrap();
        writeln!(out, "  (u⋆v)⋆w = {}", c.left.render(m)).unwrap();
        writeln!(out, "  u⋆(v⋆w) = {}", c.right.render(m)).unwrap();
        writeln!(
            out,
            "  convertible: {}",
            convertibility_text(m, &c.congruence)
        )
        .unwrap();
    }
    writeln!(out, "confluent: {}", if confluent { "yes" } else { "no" }).unwrap();
    writeln!(
        out,
        "associative iff confluent: {}",
        if report.associative == confluent {
            "holds"
        } else {
            "fails"
        }
    )
    .unwrap();
    Ok((code, out))
}

fn cmd_quotient(m: &PartialMonoid, max_len: usize, json: bool, limits: &Limits) -> Outcome {
    let q = quotient_representatives(m, max_len, limits)?;
    let code = if q.consistent() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    if json {
        let classes: Vec<Value> = q
            .classes
            .iter()
            .map(|c| {
                json!({
                    "representative": names(m, &c.representative),
                    "size": c.members.len(),
                    "irreducible_members": c.irreducible_members,
                    "all_convertible": c.all_convertible,
                })
            })
            .collect();
        let v = json!({ "max_len": q.bound, "consistent": q.consistent(), "classes": classes });
        return Ok((code, pretty(&v)));
    }
    let mut out = String::new();
    writeln!(
        out,
        "{} classes of words of length <= {}",
        q.classes.len(),
        q.bound
    )
    .unwrap();
    for c in &q.classes {
        writeln!(
            out,
            "  {}: {} word{}, {} irreducible, convertible: {}",
            c.representative.render(m),
            c.members.len(),
            if c.members.len() == 1 { "" } else { "s" },
            c.irreducible_members,
            if c.all_convertible { "yes" } else { "unknown" }
        )
        .unwrap();
    }
    Ok((code, out))
}

/// `lstd(w)` with ` ! ` between letters: each factor is a run without
/// errors, each separator an undefined product.
pub fn render_simulation(m: &PartialMonoid, w: &Word) -> String {
    w.display(m, " ! ").to_string()
}

fn cmd_simulate(m: &PartialMonoid, text: &str, json: bool) -> Outcome {
    let w = parse_word(m, text)?;
    let r = lstd(m, &w);
    if json {
        let v = json!({
            "input": names(m, &w),
            "segments": names(m, &r),
            "errors": r.len().saturating_sub(1),
            "rendered": render_simulation(m, &r),
        });
        return Ok((EXIT_OK, pretty(&v)));
    }
    Ok((EXIT_OK, format!("{}\n", render_simulation(m, &r))))
}

fn cmd_magma_demo(m: &PartialMonoid, text: &str, json: bool) -> Outcome {
    let t = parse_tree(m, text)?;
    let comb = t.right_comb();
    let successors: Vec<_> = t.ass_one_step().into_iter().collect();
    let value = evaluate(m, &t)?;
    let comb_value = evaluate(m, &comb)?;
    let entries = BracketingChecker::new(m).entries(&t)?;
    let comb_conv = &entries
        .iter()
        .find(|e| e.tree == comb)
        .expect("the right comb is reachable")
        .convertibility;
    let holds = entries.iter().all(|e| e.convertibility.is_yes());
    let code = if holds { EXIT_OK } else { EXIT_NEGATIVE };
    if json {
        let v = json!({
            "tree": t.render(m),
            "leaves": t.leaves(),
            "rank": t.rank(),
            "successors": successors.iter().map(|s| s.render(m)).collect::<Vec<_>>(),
            "right_comb": comb.render(m),
            "evaluation": names(m, &value),
            "comb_evaluation": names(m, &comb_value),
            "convertibility": convertibility_json(m, comb_conv),
            "reachable": entries.len(),
            "all_convertible": holds,
        });
        return Ok((code, pretty(&v)));
    }
    let mut out = String::new();
    writeln!(out, "tree: {}", t.render(m)).unwrap();
    writeln!(out, "leaves: {}", t.leaves()).unwrap();
    writeln!(out, "rank: {}", t.rank()).unwrap();
    writeln!(out, "successors: {}", successors.len()).unwrap();
    for s in &successors {
        writeln!(out, "  {}", s.render(m)).unwrap();
    }
    writeln!(out, "right comb: {}", comb.render(m)).unwrap();
    writeln!(out, "evaluation: {}", value.render(m)).unwrap();
    writeln!(out, "comb evaluation: {}", comb_value.render(m)).unwrap();
    writeln!(out, "convertible: {}", convertibility_text(m, comb_conv)).unwrap();
    writeln!(
        out,
        "reachable trees: {}, all convertible: {}",
        entries.len(),
        if holds { "yes" } else { "no" }
    )
    .unwrap();
    Ok((code, out))
}

fn cmd_gen(family: GenFamily, limits: &Limits) -> Outcome {
    let m = match family {
        GenFamily::DisjointUnion { n } => gen_disjoint_union_monoid(n, limits)?,
        GenFamily::NoCommonLetters { letters } => {
            let letters: Vec<char> = letters
                .chars()
                .filter(|c| !c.is_whitespace() && *c != ',')
                .collect();
            gen_no_common_letters_monoid(&letters, limits)?
        }
    };
    Ok((EXIT_OK, serialize_monoid(&m)))
}

fn cmd_selfcheck(
    seed: u64,
    count: usize,
    max_carrier: usize,
    max_len: usize,
    json: bool,
    limits: &Limits,
) -> Outcome {
    if max_carrier < 2 || max_carrier > limits.max_carrier {
        return Err(Failure {
            exit_code: EXIT_INVALID,
            message: format!("--max-carrier must be between 2 and {}", limits.max_carrier),
        });
    }
    let monoids = random_monoids(seed, count, max_carrier);
    let mut families: BTreeMap<String, usize> = Family::ALL
        .iter()
        .map(|f| (json!(f).as_str().expect("unit variant").to_string(), 0))
        .collect();
    let (
        mut valid,
        mut oracle,
        mut assoc_iff,
        mut catenary,
        mut catenary_ok,
        mut total,
        mut total_ok,
    ) = (0, 0, 0, 0, 0, 0, 0);
    let mut failures = Vec::new();
    for (i, r) in monoids.iter().enumerate() {
        let m = &r.monoid;
        *families
            .get_mut(json!(r.family).as_str().expect("unit variant"))
            .expect("known family") += 1;
        let mut fail = |what: &str| failures.push(format!("monoid #{i} ({:?}): {what}", r.family));
        if m.validate().valid {
            valid += 1;
        } else {
            fail("invalid table");
            continue;
        }
        let confluent = is_confluent(m).confluent;
        if newman_report(m).confluent() == confluent {
            oracle += 1;
        } else {
            fail("confluence verdicts disagree");
        }
        if verify_assoc_iff_confluent(m, max_len, limits)?.holds {
            assoc_iff += 1;
        } else {
            fail("associativity of ⋆ differs from confluence");
        }
        let cat = m.is_catenary().catenary;
        if cat {
            catenary += 1;
            if confluent {
                catenary_ok += 1;
            } else {
                fail("catenary but not confluent");
            }
        }
        if m.is_total() {
            total += 1;
            if cat {
                total_ok += 1;
            } else {
                fail("total but not catenary");
            }
        }
    }
    let passed = failures.is_empty();
    let code = if passed { EXIT_OK } else { EXIT_NEGATIVE };
    if json {
        let v = json!({
            "seed": seed,
            "count": count,
            "families": families,
            "valid": valid,
            "oracle_agreement": oracle,
            "associative_iff_confluent": assoc_iff,
            "catenary": catenary,
            "catenary_confluent": catenary_ok,
            "total": total,
            "total_catenary": total_ok,
            "failures": failures,
            "passed": passed,
        });
        return Ok((code, pretty(&v)));
    }
    let mut out = String::new();
    let fam: Vec<String> = families.iter().map(|(k, v)| format!("{k} {v}")).collect();
    writeln!(out, "seed {seed}: {count} monoids ({})", fam.join(", ")).unwrap();
    writeln!(out, "valid: {valid}/{count}").unwrap();
    writeln!(out, "confluence oracle agreement: {oracle}/{count}").unwrap();
    writeln!(
        out,
        "associative iff confluent (max len {max_len}): {assoc_iff}/{count}"
    )
    .unwrap();
    writeln!(out, "catenary and confluent: {catenary_ok}/{catenary}").unwrap();
    writeln!(out, "total and catenary: {total_ok}/{total}").unwrap();
    for f in &failures {
        writeln!(out, "FAIL {f}").unwrap();
    }
    writeln!(
        out,
        "{}",
        if passed {
            "all checks passed"
        } else {
            "some checks failed"
        }
    )
    .unwrap();
    Ok((code, out))
}
