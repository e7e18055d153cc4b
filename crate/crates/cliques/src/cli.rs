//! Command-line front end. `run` parses arguments, executes one command and returns the
//! process exit status: 0 on success, 1 when a verification finds a counterexample, 2 on a
//! usage error.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::acceptance;
use crate::bases::{compose_h_lin, compose_k_lin, BasisTag};
use crate::clique::Clique;
use crate::enumeration::{
    check_prime_divisibility, clique_count, colored_dyck_words, compute_sequence, count_minimal_prime, dyck_decode,
    dyck_encode, export_sequence, generate_cliques, ExportFormat, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::io::{clique_from_json, clique_to_json, element_from_json, lincomb_to_json, CliqueJson};
use crate::known_operads::{verify_grav_closure, verify_known_operads};
use crate::magma::{parse_magma_spec, MagmaRef};
use crate::operad::{
    partial_compose_lin, verify_basic_set_operad, verify_cyclic, verify_operad_axioms, verify_symmetries, LinComb,
};
use crate::ratfct::verify_rf_laws;
use crate::substructures::{verify_closure, verify_ideal, verify_inclusions, Status, Variant};

/// Environment variable holding the default worker thread count.
pub const THREADS_ENV: &str = "CLIQUES_THREADS";

#[derive(Debug, Parser)]
#[command(name = "cliques", version, about = "Operads of decorated cliques over unitary magmas")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for exhaustive checks (default from CLIQUES_THREADS, else all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest number of cliques a single enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Properties of a magma: unit, cancelability, monoid test, unit divisors.
    MagmaCheck {
        #[arg(long)]
        magma: String,
    },
    /// Partial composition of two elements read from JSON files.
    Compose(ComposeArgs),
    /// List the cliques of one arity, optionally restricted to a variant.
    Enumerate {
        #[arg(long)]
        magma: String,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        variant: Option<String>,
        /// Print at most this many cliques (the count is always complete).
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Dimension sequence of a variant.
    Sequence {
        #[arg(long)]
        variant: String,
        #[arg(long)]
        magma: String,
        #[arg(long)]
        max_arity: usize,
        /// b (OEIS b-file), csv or json.
        #[arg(long, default_value = "b")]
        format: String,
    },
    /// Exhaustive verifiers.
    Verify(VerifyArgs),
    /// Prime, white prime and minimal prime counts.
    Primes {
        #[arg(long)]
        magma: String,
        #[arg(long)]
        max_size: usize,
    },
    /// Colored Dyck words: all words of one arity, or the word of one clique.
    Dyck {
        #[arg(long)]
        magma: String,
        #[arg(long)]
        arity: Option<usize>,
        /// JSON file holding a clique to encode.
        #[arg(long)]
        clique: Option<String>,
    },
    /// Laws of the map to rational functions.
    RatfctCheck {
        #[arg(long, default_value_t = 3)]
        max_arity: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Multi-tildes, double multi-tildes and gravity chord diagrams.
    KnownOpsCheck {
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        /// Largest composite arity of the associativity check of multi-tildes.
        #[arg(long, default_value_t = 5)]
        assoc_arity: usize,
    },
}

#[derive(Debug, Args)]
pub struct ComposeArgs {
    #[arg(long)]
    pub magma: String,
    #[arg(long)]
    pub lhs: String,
    #[arg(long)]
    pub rhs: String,
    #[arg(long)]
    pub index: usize,
    /// Basis in which both inputs and the output are read.
    #[arg(long, default_value = "fundamental")]
    pub basis: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyWhat {
    Axioms,
    Symmetries,
    Cyclic,
    Basic,
    Ideal,
    Closure,
    Inclusions,
    Grav,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub what: VerifyWhat,
    #[arg(long, default_value = "D:0")]
    pub magma: String,
    #[arg(long, default_value_t = 4)]
    pub max_arity: usize,
    /// Variant for `ideal` and `closure`; `ideal` defaults to every quotient variant.
    #[arg(long)]
    pub variant: Option<String>,
}

/// Result of a command: output text and whether a counterexample was found.
struct Outcome {
    text: String,
    counterexample: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, counterexample: false }
    }
}

/// Runs the command line `args` (program name first), writing to `out` and `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    configure_threads(cli.threads);
    match execute(&cli) {
        Ok(o) => {
            let _ = write!(out, "{}", o.text);
            if !o.text.ends_with('\n') {
                let _ = writeln!(out);
            }
            i32::from(o.counterexample)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, Error::BudgetExceeded { .. }) {
                let _ = writeln!(err, "hint: raise the limit with --budget");
            }
            2
        }
    }
}

/// Runs the process command line against stdout and stderr.
pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}

fn configure_threads(flag: Option<usize>) {
    let threads = flag.or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()));
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::MagmaCheck { magma } => magma_check(cli, &parse_magma_spec(magma)?),
        Command::Compose(a) => compose(cli, a),
        Command::Enumerate { magma, arity, variant, limit } => {
            enumerate(cli, &parse_magma_spec(magma)?, *arity, variant.as_deref(), *limit)
        }
        Command::Sequence { variant, magma, max_arity, format } => {
            let m = parse_magma_spec(magma)?;
            let v = Variant::parse(variant, &m)?;
            let fmt = if cli.json { ExportFormat::Json } else { format.parse()? };
            let rec = compute_sequence(&v, *max_arity, cli.budget)?;
            let mut text = export_sequence(&rec, fmt);
            if let (Some(w), false) = (v.warning(), cli.json) {
                text = format!("# warning: {w}\n{text}");
            }
            Ok(Outcome::ok(text))
        }
        Command::Verify(a) => verify(cli, a),
        Command::Primes { magma, max_size } => primes(cli, &parse_magma_spec(magma)?, *max_size),
        Command::Dyck { magma, arity, clique } => dyck(cli, &parse_magma_spec(magma)?, *arity, clique.as_deref()),
        Command::RatfctCheck { max_arity, samples } => {
            let r = verify_rf_laws(*max_arity, *samples, cli.seed)?;
            let text = if cli.json {
                pretty(&json!({
                    "ok": r.ok(),
                    "morphism_instances": r.morphism_instances,
                    "product_instances": r.product_instances,
                    "inverse_instances": r.inverse_instances,
                    "laurent_instances": r.laurent_instances,
                    "counterexample": r.failure,
                }))
            } else {
                format!(
                    "morphism law: {} instances\nmultiplicativity: {}\ninverse: {}\nLaurent monomials: {}\n{}",
                    r.morphism_instances,
                    r.product_instances,
                    r.inverse_instances,
                    r.laurent_instances,
                    r.failure.clone().map_or("ok".to_string(), |f| format!("counterexample: {f}"))
                )
            };
            Ok(Outcome { text, counterexample: !r.ok() })
        }
        Command::KnownOpsCheck { max_arity, assoc_arity } => {
            let r = verify_known_operads(*max_arity, *assoc_arity)?;
            let text = if cli.json {
                let checks: Vec<Value> =
                    r.checks.iter().map(|(n, k, f)| json!({"check": n, "instances": k, "counterexample": f})).collect();
                pretty(&json!({"ok": r.ok(), "checks": checks}))
            } else {
                r.to_string()
            };
            Ok(Outcome { text, counterexample: !r.ok() })
        }
    }
}

fn magma_check(cli: &Cli, m: &MagmaRef) -> Result<Outcome> {
    let finite = m.is_finite();
    let elements: Vec<String> = if finite { m.elements()?.iter().map(|&e| m.name_of(e)).collect() } else { vec![] };
    let cancel = if finite { Some(m.is_right_cancelable()?) } else { None };
    let witness = if finite { m.right_cancel_witness()? } else { None };
    if cli.json {
        let table: Option<Vec<Vec<String>>> = finite.then(|| {
            let es = m.elements().expect("finite");
            es.iter().map(|&a| es.iter().map(|&b| m.name_of(m.op(a, b))).collect()).collect()
        });
        return Ok(Outcome::ok(pretty(&json!({
            "magma": m.name(),
            "size": m.size(),
            "unit": m.name_of(m.unit()),
            "elements": elements,
            "table": table,
            "unit_two_sided": m.check_unit(),
            "right_cancelable": cancel,
            "cancel_witness": witness.map(|(x, y, z)| [m.name_of(x), m.name_of(y), m.name_of(z)]),
            "monoid": m.is_monoid(),
            "nontrivial_unit_divisors": m.has_nontrivial_unit_divisors(),
        }))));
    }
    let mut s = format!("magma {}\n", m.name());
    match m.size() {
        Some(k) => s += &format!("size {k}: {}\n", elements.join(" ")),
        None => s += "size infinite\n",
    }
    s += &format!("unit {} (two-sided: {})\n", m.name_of(m.unit()), m.check_unit());
    if finite {
        let es = m.elements()?;
        let width = elements.iter().map(|e| e.chars().count()).max().unwrap_or(1);
        let cell = |t: &str| format!("{t:>width$}");
        s += &format!("{} |", cell("⋆"));
        for e in &elements {
            s += &format!(" {}", cell(e));
        }
        s += "\n";
        for &a in &es {
            s += &format!("{} |", cell(&m.name_of(a)));
            for &b in &es {
                s += &format!(" {}", cell(&m.name_of(m.op(a, b))));
            }
            s += "\n";
        }
    }
    if let Some(c) = cancel {
        s += &format!("right cancelable: {c}");
        if let Some((x, y, z)) = witness {
            s += &format!(" (witness {} ⋆ {} = {} ⋆ {})", m.name_of(y), m.name_of(x), m.name_of(z), m.name_of(x));
        }
        s += "\n";
    }
    s += &format!("monoid: {}\n", m.is_monoid());
    s += &format!("nontrivial unit divisors: {}\n", m.has_nontrivial_unit_divisors());
    Ok(Outcome::ok(s))
}

fn compose(cli: &Cli, a: &ComposeArgs) -> Result<Outcome> {
    let m = parse_magma_spec(&a.magma)?;
    let basis: BasisTag = a.basis.parse()?;
    let (lhs_text, rhs_text) = (read(&a.lhs)?, read(&a.rhs)?);
    let f = element_from_json(&lhs_text, &m)?;
    let g = element_from_json(&rhs_text, &m)?;
    let r = match basis {
        BasisTag::Fundamental => partial_compose_lin(&f, &g, a.index)?,
        BasisTag::H => compose_h_lin(&f, &g, a.index)?,
        BasisTag::K => compose_k_lin(&f, &g, a.index)?,
    };
    let single = single_clique(&r);
    let both_cliques = !lhs_text.trim_start().starts_with('[') && !rhs_text.trim_start().starts_with('[');
    let text = match (cli.json, single) {
        (true, Some(p)) if both_cliques => clique_to_json(&p),
        (true, _) => lincomb_to_json(&r),
        (false, Some(p)) => format!("{}{}", prefix(basis), p.to_table()),
        (false, None) => format!("{}{r}", prefix(basis)),
    };
    Ok(Outcome::ok(text))
}

fn prefix(basis: BasisTag) -> String {
    match basis {
        BasisTag::Fundamental => String::new(),
        b => format!("in the {b} basis:\n"),
    }
}

fn single_clique(f: &LinComb) -> Option<Clique> {
    let mut it = f.iter();
    match (it.next(), it.next()) {
        (Some((p, c)), None) if c == &num::BigRational::from_integer(1.into()) => Some(p),
        _ => None,
    }
}

fn enumerate(cli: &Cli, m: &MagmaRef, n: usize, variant: Option<&str>, limit: Option<usize>) -> Result<Outcome> {
    let size = m.require_finite()?;
    let total = clique_count(size, n);
    if total > cli.budget {
        return Err(Error::BudgetExceeded { needed: total, budget: cli.budget });
    }
    let v = variant.map(|s| Variant::parse(s, m)).transpose()?;
    let mut shown = Vec::new();
    let mut count = 0u128;
    for p in generate_cliques(m, n)? {
        if let Some(v) = &v {
            if !v.member_labels(n, p.labels()) {
                continue;
            }
        }
        count += 1;
        if limit.is_none_or(|l| shown.len() < l) {
            shown.push(p);
        }
    }
    let text = if cli.json {
        let list: Vec<CliqueJson> = shown.iter().map(CliqueJson::from_clique).collect();
        pretty(&json!({"magma": m.name(), "arity": n, "count": count.to_string(), "cliques": list}))
    } else {
        let mut s: String = shown.iter().map(|p| format!("{p}\n")).collect();
        s += &format!("{count} cliques\n");
        s
    };
    Ok(Outcome::ok(text))
}

fn report(cli: &Cli, name: &str, instances: u128, failure: Option<String>) -> Outcome {
    let text = if cli.json {
        pretty(
            &json!({"check": name, "ok": failure.is_none(), "instances": instances.to_string(), "counterexample": failure}),
        )
    } else {
        match &failure {
            None => format!("{name}: ok ({instances} instances)"),
            Some(f) => format!("{name}: counterexample\n{f}"),
        }
    };
    Outcome { text, counterexample: failure.is_some() }
}

fn combine(cli: &Cli, parts: Vec<Outcome>) -> Outcome {
    let counterexample = parts.iter().any(|o| o.counterexample);
    let text = if cli.json {
        let values: Vec<Value> = parts.iter().map(|o| serde_json::from_str(&o.text).expect("json part")).collect();
        pretty(&Value::Array(values))
    } else {
        parts.iter().map(|o| o.text.trim_end().to_string()).collect::<Vec<_>>().join("\n")
    };
    Outcome { text, counterexample }
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<Outcome> {
    if a.what == VerifyWhat::All {
        let results = acceptance::run_all();
        let failed = results.iter().any(|c| !c.passed);
        let text = if cli.json {
            let list: Vec<Value> = results
                .iter()
                .map(|c| {
                    json!({"criterion": c.id, "title": c.title, "passed": c.passed, "detail": c.detail,
                           "seconds": c.elapsed.as_secs_f64()})
                })
                .collect();
            pretty(&Value::Array(list))
        } else {
            results.iter().map(|c| format!("{c}\n")).collect()
        };
        return Ok(Outcome { text, counterexample: failed });
    }
    let m = parse_magma_spec(&a.magma)?;
    let n = a.max_arity;
    Ok(match a.what {
        VerifyWhat::Axioms => {
            let r = verify_operad_axioms(&m, n)?;
            let failure = r.counterexample.as_ref().map(|c| c.to_string());
            let failure = failure.or_else(|| (!r.complete).then(|| "some shapes were not covered".to_string()));
            report(
                cli,
                &format!("operad axioms of {} at composite arity ≤ {n}", m.name()),
                r.literal_instances,
                failure,
            )
        }
        VerifyWhat::Symmetries => {
            let r = verify_symmetries(&m, n)?;
            report(cli, &r.name, r.instances as u128, r.failure)
        }
        VerifyWhat::Cyclic => {
            let r = verify_cyclic(&m, n)?;
            report(cli, &r.name, r.instances as u128, r.failure)
        }
        VerifyWhat::Basic => {
            let r = verify_basic_set_operad(&m, n)?;
            let failure = (!r.agrees()).then(|| {
                format!("injectivity {} disagrees with right cancelability {}", r.injective, r.right_cancelable)
            });
            let mut o = report(
                cli,
                &format!("basic criterion agrees with right cancelability for {}", m.name()),
                r.maps_checked as u128,
                failure,
            );
            if !cli.json {
                o.text += &format!("\ninjective: {}\nright cancelable: {}", r.injective, r.right_cancelable);
                if let Some((x1, x2, q, i)) = &r.witness {
                    o.text += &format!("\nwitness: {x1} ∘_{i} {q} = {x2} ∘_{i} {q}");
                }
            }
            o
        }
        VerifyWhat::Ideal => {
            let variants = match &a.variant {
                Some(s) => vec![Variant::parse(s, &m)?],
                None => acceptance::quotient_variants(&m),
            };
            let mut parts = Vec::new();
            for v in variants {
                if v.status() == Status::Suboperad {
                    return Err(Error::NotApplicable(v.to_string(), "not a quotient".into()));
                }
                let r = verify_ideal(&v, n)?;
                parts.push(report(cli, &r.name, r.instances as u128, r.failure));
            }
            combine(cli, parts)
        }
        VerifyWhat::Closure => {
            let s = a.variant.as_deref().ok_or_else(|| Error::Parse("verify closure needs --variant".into()))?;
            let r = verify_closure(&Variant::parse(s, &m)?, n)?;
            report(cli, &r.name, r.instances as u128, r.failure)
        }
        VerifyWhat::Inclusions => {
            let r = verify_inclusions(&m, n)?;
            let parts = r
                .lemma
                .iter()
                .chain(&r.diagram_arrows)
                .map(|i| report(cli, &i.label, i.checked as u128, i.witness.as_ref().map(|w| format!("witness {w}"))))
                .collect();
            combine(cli, parts)
        }
        VerifyWhat::Grav => {
            let (k, failure) = verify_grav_closure(&m, n)?;
            report(cli, &format!("gravity closure over {}", m.name()), k as u128, failure)
        }
        VerifyWhat::All => unreachable!("handled above"),
    })
}

fn primes(cli: &Cli, m: &MagmaRef, max: usize) -> Result<Outcome> {
    let mut rows = Vec::new();
    for n in 1..=max {
        let (p, w) = check_prime_divisibility(m, n, cli.budget)?;
        let mp = count_minimal_prime(m, n, cli.budget)?;
        rows.push((n, p, w, mp));
    }
    let text = if cli.json {
        let list: Vec<Value> = rows
            .iter()
            .map(|(n, p, w, mp)| {
                json!({"size": n, "prime": p.to_string(), "white_prime": w.to_string(), "minimal_prime": mp.to_string()})
            })
            .collect();
        pretty(&json!({"magma": m.name(), "rows": list}))
    } else {
        let mut s = format!("{:>4} {:>12} {:>12} {:>12}\n", "n", "prime", "white prime", "minimal");
        for (n, p, w, mp) in rows {
            s += &format!("{n:>4} {p:>12} {w:>12} {mp:>12}\n");
        }
        s
    };
    Ok(Outcome::ok(text))
}

fn dyck(cli: &Cli, m: &MagmaRef, arity: Option<usize>, clique: Option<&str>) -> Result<Outcome> {
    match (arity, clique) {
        (_, Some(path)) => {
            let p = clique_from_json(&read(path)?, Some(m))?;
            let w = dyck_encode(&p)?;
            let back = dyck_decode(&w, m)?;
            if back != p {
                return Err(Error::Internal(format!("decoding {w} gives {back}, not {p}")));
            }
            let text = if cli.json {
                pretty(&json!({"clique": CliqueJson::from_clique(&p), "word": w.render(m)}))
            } else {
                w.render(m)
            };
            Ok(Outcome::ok(text))
        }
        (Some(n), None) => {
            let words = colored_dyck_words(m, n)?;
            let text = if cli.json {
                let list: Vec<String> = words.iter().map(|w| w.render(m)).collect();
                pretty(&json!({"magma": m.name(), "arity": n, "count": list.len(), "words": list}))
            } else {
                let mut s: String = words.iter().map(|w| format!("{}\n", w.render(m))).collect();
                s += &format!("{} words\n", words.len());
                s
            };
            Ok(Outcome::ok(text))
        }
        (None, None) => Err(Error::Parse("dyck needs --arity or --clique".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("cliques").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        let (code, _, err) = call(&["sequence", "--variant", "deg:1", "--magma", "Q:1", "--max-arity", "3"]);
        assert_eq!(code, 2);
        assert!(err.contains("Q:1"));
        assert_eq!(call(&["enumerate", "--magma", "N:4", "--arity", "9"]).0, 2);
    }

    #[test]
    fn deg1_b_file() {
        let (code, out, _) =
            call(&["sequence", "--variant", "deg:1", "--magma", "D:0", "--max-arity", "6", "--format", "b"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1 1\n2 4\n3 10\n4 26\n5 76\n6 232\n");
    }

    #[test]
    fn magma_check_json() {
        let (code, out, _) = call(&["--json", "magma-check", "--magma", "D:0"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["right_cancelable"], json!(false));
        assert_eq!(v["unit"], json!("𝟙"));
    }
}
