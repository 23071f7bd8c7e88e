//! Command-line front end: check condition batteries, derive operation
//! pairs, reconstruct residuals, translate between orthomodular lattices and
//! pseudorings, and drive the enumeration/countermodel engines.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sasaki_core::algebra::{self, Kind};
use sasaki_core::fixtures;
use sasaki_core::format;
use sasaki_core::laws::{self, law};
use sasaki_core::sasaki::{
    check_adjointness_on, condition_battery, derive_sasaki, residual_imp_from_odot,
    residual_odot_from_imp, ResidualOutcome, SasakiPair, Scheme,
};
use sasaki_core::search;
use sasaki_core::terms::check_law;
use sasaki_core::{Algebra, BinaryTable, Error, Result, Verdict};

#[derive(Parser)]
#[command(name = "sasaki", version, about = "Finite ordered-algebra workbench")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    #[value(name = "json-lines")]
    JsonLines,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check conditions on an algebra (default: the scheme's battery plus
    /// A1/A2, or the file's `expect` keys when present).
    Check {
        /// `fixture:NAME` or a path to an algebra file.
        input: String,
        #[arg(long)]
        scheme: Option<String>,
        /// Comma-separated condition names, e.g. B1,B2,A1,A2.
        #[arg(long, value_delimiter = ',')]
        conditions: Vec<String>,
    },
    /// Derive the scheme's operation pair.
    Derive {
        input: String,
        #[arg(long)]
        scheme: Option<String>,
        #[arg(long)]
        print_tables: bool,
    },
    /// Reconstruct each operation of the derived pair as the residual of the
    /// other; reports the first cell without an extremum on failure.
    Residual {
        input: String,
        #[arg(long)]
        scheme: Option<String>,
        #[arg(long)]
        print_tables: bool,
    },
    /// Translate an orthomodular lattice to its pseudoring, or back.
    Translate { input: String },
    /// Direct product of two algebras of the same kind.
    Product {
        left: String,
        right: String,
        #[arg(long)]
        print_tables: bool,
    },
    /// Subalgebra generated by the named elements.
    Subalgebra {
        input: String,
        /// Comma-separated generator names.
        #[arg(long, value_delimiter = ',')]
        generators: Vec<String>,
        #[arg(long)]
        print_tables: bool,
    },
    /// Enumerate unary operations or completions of an order.
    Enumerate {
        what: EnumerateWhat,
        input: String,
        /// Unary-op filters: complementation, involution, antitone, surjective.
        #[arg(long, value_delimiter = ',')]
        filters: Vec<String>,
        /// Cap on the number of completions to keep.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        print_tables: bool,
    },
    /// Sweep all models up to --bound for countermodels to a conjecture.
    Falsify {
        /// Conjecture name; omit to list the registry.
        conjecture: Option<String>,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        /// Exit 0 only if the sweep finds nothing.
        #[arg(long)]
        expect_empty: bool,
    },
    /// List the built-in fixtures and recheck their stored verdict maps.
    Fixtures,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum EnumerateWhat {
    Unary,
    Completions,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_input(spec: &str) -> Result<(String, Algebra, BTreeMap<String, bool>)> {
    if let Some(id) = spec.strip_prefix("fixture:") {
        // short form for the one id that carries an example suffix
        let id = if id == "fig7" { "fig7_ex2" } else { id };
        let a = fixtures::fixture(id)?;
        let expect =
            fixtures::expected(id)?.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        Ok((id.to_string(), a, expect))
    } else {
        let f = format::load(Path::new(spec))?;
        Ok((f.name, f.algebra, f.expect))
    }
}

fn scheme_for(a: &Algebra, flag: &Option<String>) -> Result<Scheme> {
    match flag {
        Some(s) => Scheme::parse(s),
        None => match a.kind() {
            Kind::Lattice => Ok(Scheme::S1),
            Kind::Lambda => Ok(Scheme::S2),
            Kind::Semiring => Ok(Scheme::S3),
            Kind::Pseudoring => Ok(Scheme::S4),
            Kind::Poset => Err(Error::KindMismatch),
        },
    }
}

/// One machine-readable record per verdict; in text mode, one line.
fn emit_verdict(fmt: Format, a: &Algebra, name: &str, v: &Verdict) {
    match fmt {
        Format::JsonLines => {
            let witness = v
                .witness_names(a.elements())
                .map(|w| json!(w))
                .unwrap_or(serde_json::Value::Null);
            println!(
                "{}",
                json!({
                    "name": name,
                    "holds": v.holds,
                    "witness": witness,
                    "checked_count": v.checked_count,
                })
            );
        }
        Format::Text => {
            if v.holds {
                println!("{name}: holds (checked {})", v.checked_count);
            } else {
                let w = v
                    .witness_names(a.elements())
                    .map(|w| {
                        w.iter()
                            .map(|(var, el)| format!("{var}={el}"))
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .unwrap_or_default();
                println!("{name}: fails at {w} (checked {})", v.checked_count);
            }
        }
    }
}

fn render_table(a: &Algebra, name: &str, t: &BinaryTable) -> String {
    let mut out = format!("binop {name}:\n");
    for r in 0..a.len() {
        let row: Vec<&str> = (0..a.len()).map(|c| a.name(t.apply(r, c))).collect();
        out.push_str(&format!("row {}: {}\n", a.name(r), row.join(" ")));
    }
    out
}

fn condition_verdict(a: &Algebra, scheme: Scheme, cond: &str) -> Result<Verdict> {
    match cond {
        "A1" | "A2" => {
            let rep = check_adjointness_on(a, &derive_sasaki(a, scheme)?)?;
            Ok(if cond == "A1" { rep.a1 } else { rep.a2 })
        }
        "F1" | "F2" => {
            let pair = derive_sasaki(a, scheme)?;
            let probe = a.with_binary("odot", pair.odot).with_binary("imp", pair.imp);
            check_law(&probe, law(cond))
        }
        _ if laws::has_law(cond) => check_law(a, law(cond)),
        // composite flags (orthomodular, is_lattice, ...) have no single
        // witnessing assignment
        _ => fixtures::computed_value(a, cond).map(|holds| Verdict {
            holds,
            witness: None,
            checked_count: 0,
        }),
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let fmt = cli.format;
    match &cli.cmd {
        Cmd::Check { input, scheme, conditions } => {
            let (_, a, expect) = load_input(input)?;
            let scheme = scheme_for(&a, scheme)?;
            let conditions: Vec<String> = if !conditions.is_empty() {
                conditions.clone()
            } else if !expect.is_empty() {
                expect.keys().cloned().collect()
            } else {
                let mut names: Vec<String> =
                    condition_battery(&a, scheme)?.into_keys().collect();
                names.extend(["A1".to_string(), "A2".to_string()]);
                names
            };
            let mut ok = true;
            for cond in &conditions {
                let v = condition_verdict(&a, scheme, cond)?;
                ok &= v.holds;
                emit_verdict(fmt, &a, cond, &v);
            }
            Ok(ok)
        }
        Cmd::Derive { input, scheme, print_tables } => {
            let (name, a, _) = load_input(input)?;
            let scheme = scheme_for(&a, scheme)?;
            let pair = derive_sasaki(&a, scheme)?;
            print_pair(fmt, &name, &a, &pair, *print_tables);
            Ok(true)
        }
        Cmd::Residual { input, scheme, print_tables } => {
            let (_, a, _) = load_input(input)?;
            let scheme = scheme_for(&a, scheme)?;
            let pair = derive_sasaki(&a, scheme)?;
            let order = a.order().ok_or(Error::MissingOrder)?;
            let mut ok = true;
            let directions = [
                ("residual_imp", residual_imp_from_odot(order, &pair.odot), &pair.imp),
                ("residual_odot", residual_odot_from_imp(order, &pair.imp), &pair.odot),
            ];
            let n = (a.len() * a.len()) as u64;
            for (name, outcome, expected) in &directions {
                let v = match outcome {
                    ResidualOutcome::Table(t) => {
                        debug_assert_eq!(&t, expected);
                        Verdict::passing(n)
                    }
                    ResidualOutcome::Failure { row, col } => Verdict {
                        holds: false,
                        witness: Some(vec![
                            ("row".to_string(), *row),
                            ("col".to_string(), *col),
                        ]),
                        checked_count: n,
                    },
                };
                ok &= v.holds;
                emit_verdict(fmt, &a, name, &v);
                if *print_tables && v.holds {
                    print!("{}", render_table(&a, name, expected));
                }
            }
            Ok(ok)
        }
        Cmd::Translate { input } => {
            let (name, a, _) = load_input(input)?;
            let (out_name, out) = match a.kind() {
                Kind::Lattice => (format!("{name}_pseudoring"), algebra::oml_to_pseudoring(&a)?),
                Kind::Pseudoring => (format!("{name}_oml"), algebra::pseudoring_to_oml(&a)?),
                _ => return Err(Error::KindMismatch),
            };
            print!("{}", format::dump(&out_name, &out));
            Ok(true)
        }
        Cmd::Product { left, right, print_tables } => {
            let (ln, a, _) = load_input(left)?;
            let (rn, b, _) = load_input(right)?;
            let p = algebra::direct_product(&a, &b)?;
            let name = format!("{ln}_x_{rn}");
            if *print_tables {
                print!("{}", format::dump(&name, &p));
            } else {
                println!("{name}: kind {} with {} elements", p.kind(), p.len());
            }
            Ok(true)
        }
        Cmd::Subalgebra { input, generators, print_tables } => {
            let (name, a, _) = load_input(input)?;
            let gens: Vec<&str> = generators.iter().map(|s| s.as_str()).collect();
            let sub = algebra::subalgebra_generated_by_names(&a, &gens)?;
            let name = format!("{name}_sub");
            if *print_tables {
                print!("{}", format::dump(&name, &sub));
            } else {
                println!("{name}: kind {} with {} elements", sub.kind(), sub.len());
            }
            Ok(true)
        }
        Cmd::Enumerate { what, input, filters, bound, print_tables } => {
            let (_, a, _) = load_input(input)?;
            match what {
                EnumerateWhat::Unary => {
                    let filters: Vec<&str> = filters.iter().map(|s| s.as_str()).collect();
                    let ops = search::enumerate_unary_ops(&a, &filters)?;
                    report_count(fmt, "unary_ops", ops.len() as u64, true);
                    if *print_tables {
                        for t in &ops {
                            let cells: Vec<String> = (0..a.len())
                                .map(|i| format!("{}={}", a.name(i), a.name(t.apply(i))))
                                .collect();
                            println!("unary neg: {}", cells.join(" "));
                        }
                    }
                    Ok(true)
                }
                EnumerateWhat::Completions => {
                    let order = a.order().ok_or(Error::MissingOrder)?;
                    let (completions, exhausted) =
                        search::enumerate_lambda_completions(order, *bound)?;
                    report_count(fmt, "completions", completions.len() as u64, exhausted);
                    if *print_tables {
                        for (i, c) in completions.iter().enumerate() {
                            print!("{}", format::dump(&format!("completion_{i}"), c));
                        }
                    }
                    Ok(true)
                }
            }
        }
        Cmd::Falsify { conjecture, bound, expect_empty: _ } => {
            let Some(conjecture) = conjecture else {
                for name in search::conjectures() {
                    println!("{name}");
                }
                return Ok(true);
            };
            let result = search::falsify(conjecture, *bound)?;
            match fmt {
                Format::JsonLines => println!(
                    "{}",
                    json!({
                        "name": conjecture,
                        "holds": result.hits.is_empty(),
                        "witness": serde_json::Value::Null,
                        "checked_count": result.models_examined,
                    })
                ),
                Format::Text => {
                    println!(
                        "{conjecture}: {} hits in {} models (exhausted: {})",
                        result.hits.len(),
                        result.models_examined,
                        result.exhausted
                    );
                    for hit in &result.hits {
                        let verdicts: Vec<String> = hit
                            .verdicts
                            .iter()
                            .map(|(k, v)| format!("{k}={v}"))
                            .collect();
                        println!("hit [{}]", verdicts.join(" "));
                        print!("{}", hit.description);
                    }
                }
            }
            Ok(result.hits.is_empty())
        }
        Cmd::Fixtures => {
            let mut ok = true;
            for id in fixtures::FIXTURE_IDS {
                let a = fixtures::fixture(id)?;
                let bad = fixtures::verify_fixture(id)?;
                ok &= bad.is_empty();
                match fmt {
                    Format::JsonLines => println!(
                        "{}",
                        json!({
                            "name": id,
                            "holds": bad.is_empty(),
                            "witness": if bad.is_empty() {
                                serde_json::Value::Null
                            } else {
                                json!(bad)
                            },
                            "checked_count": a.len() as u64,
                        })
                    ),
                    Format::Text => {
                        if bad.is_empty() {
                            println!("{id}: kind {} with {} elements, verdicts ok", a.kind(), a.len());
                        } else {
                            println!("{id}: MISMATCH on {}", bad.join(", "));
                        }
                    }
                }
            }
            Ok(ok)
        }
    }
}

fn print_pair(fmt: Format, name: &str, a: &Algebra, pair: &SasakiPair, tables: bool) {
    match fmt {
        Format::JsonLines => {
            for (op, t) in [("odot", &pair.odot), ("imp", &pair.imp)] {
                let rows: Vec<Vec<&str>> = (0..a.len())
                    .map(|r| (0..a.len()).map(|c| a.name(t.apply(r, c))).collect())
                    .collect();
                println!(
                    "{}",
                    json!({ "name": format!("{name}.{op}"), "scheme": pair.scheme.to_string(), "rows": rows })
                );
            }
        }
        Format::Text => {
            println!("{name}: derived {} pair on {} elements", pair.scheme, a.len());
            if tables {
                print!("{}", render_table(a, "odot", &pair.odot));
                print!("{}", render_table(a, "imp", &pair.imp));
            }
        }
    }
}

fn report_count(fmt: Format, what: &str, count: u64, exhausted: bool) {
    match fmt {
        Format::JsonLines => println!(
            "{}",
            json!({ "name": what, "holds": exhausted, "witness": serde_json::Value::Null, "checked_count": count })
        ),
        Format::Text => println!("{what}: {count} (exhausted: {exhausted})"),
    }
}
