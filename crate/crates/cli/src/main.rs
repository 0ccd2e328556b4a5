//! `schublas`: compute Schubert, key and top Lascoux polynomials, their
//! pipedreams, supports and structure constants, and run the verification
//! battery.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 resource limit.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use schublas::expansion::BasisKind;
use schublas::pipedream::{self, PipeGrid};
use schublas::poly::format_coeff;
use schublas::verify::{self, Suite};
use schublas::{
    snp, tableau, Config, Engine, Error, OutputFormat, Parallelism, Permutation, Polynomial,
    WeakComposition,
};

#[derive(Parser)]
#[command(name = "schublas", version, about = "Exact Schubert, key and top Lascoux polynomial toolkit")]
struct Cli {
    /// Output format; overrides the config file.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// JSON config file with limits, format and parallelism.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Recursive,
    Bpd,
    Reverse,
}

#[derive(Clone, Copy, ValueEnum)]
enum Render {
    Ascii,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Schubert,
    Key,
    Toplascoux,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Examples,
    Operators,
    Bpd,
    Support,
    Structure,
    Hilbert,
    All,
}

fn perm(s: &str) -> Result<Permutation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn comp(s: &str) -> Result<WeakComposition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Schubert polynomial of a permutation.
    Schubert {
        #[arg(long, value_name = "L", value_parser = perm)]
        perm: Permutation,
    },
    /// Key polynomial of a weak composition.
    Key {
        #[arg(long, value_name = "L", value_parser = comp)]
        comp: WeakComposition,
    },
    /// Top Lascoux polynomial of a snowy weak composition.
    Toplascoux {
        #[arg(long, value_name = "L", value_parser = comp)]
        comp: WeakComposition,
        #[arg(long, value_enum, default_value = "recursive")]
        method: Method,
    },
    /// Reduced bumpless pipedreams of a permutation.
    Bpd {
        #[arg(long, value_name = "L", value_parser = perm)]
        perm: Permutation,
        #[arg(long, value_enum)]
        render: Option<Render>,
    },
    /// Left-to-top bumpless pipedreams of a snowy weak composition.
    Ltbpd {
        #[arg(long, value_name = "L", value_parser = comp)]
        comp: WeakComposition,
        #[arg(long, value_enum)]
        render: Option<Render>,
    },
    /// Support via perfect tableaux.
    Support {
        #[arg(long, value_name = "L", value_parser = perm, conflicts_with = "toplascoux", required_unless_present = "toplascoux")]
        schubert: Option<Permutation>,
        #[arg(long, value_name = "L", value_parser = comp)]
        toplascoux: Option<WeakComposition>,
    },
    /// Saturated Newton polytope check of a polynomial given as JSON.
    Snp {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// Expand a product of two basis elements in the same basis.
    Product {
        #[arg(long, value_enum)]
        basis: Basis,
        #[arg(long, value_name = "L")]
        left: String,
        #[arg(long, value_name = "L")]
        right: String,
    },
    /// Compare top Lascoux and Schubert structure constants.
    Structconst {
        #[arg(long, value_name = "L", value_parser = comp)]
        alpha: WeakComposition,
        #[arg(long, value_name = "L", value_parser = comp)]
        gamma: WeakComposition,
        #[arg(long, value_name = "I")]
        m1: u32,
        #[arg(long, value_name = "I")]
        m2: u32,
        #[arg(long, value_name = "I")]
        n: usize,
    },
    /// Key expansion of a top Lascoux polynomial.
    Keyexpand {
        #[arg(long, value_name = "L", value_parser = comp)]
        comp: WeakComposition,
        #[arg(long, value_name = "I")]
        m: u32,
        #[arg(long, value_name = "I")]
        n: usize,
    },
    /// Hilbert series coefficients of the span of top Lascoux polynomials.
    Hilbert {
        #[arg(long, value_name = "D")]
        max_degree: usize,
    },
    /// Replay worked examples and theorem sweeps.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, value_name = "N", default_value_t = 4)]
        max_n: usize,
    },
}

/// What a command produced: JSON and text renderings plus its verdict.
struct Output {
    json: Value,
    text: String,
    passed: bool,
}

impl Output {
    fn ok(json: Value, text: impl Into<String>) -> Self {
        Output {
            json,
            text: text.into(),
            passed: true,
        }
    }
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, format)) => {
            let mut stdout = std::io::stdout().lock();
            let body = match format {
                OutputFormat::Json => out.json.to_string(),
                OutputFormat::Text => out.text.trim_end().to_string(),
            };
            let _ = writeln!(stdout, "{body}");
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource_limit() { 3 } else { 2 })
        }
    }
}

fn load_config(path: Option<&PathBuf>) -> Result<Config, Failure> {
    let Some(path) = path else { return Ok(Config::default()) };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("--config {}: {e}", path.display())))?;
    Config::from_json(&text).map_err(|e| Failure::Usage(format!("--config {}: {e}", path.display())))
}

fn configure_threads(cfg: &Config) -> Result<(), Failure> {
    let parallelism = match std::env::var("SCHUBLAS_THREADS") {
        Ok(v) => v
            .parse::<Parallelism>()
            .map_err(|e| Failure::Usage(format!("SCHUBLAS_THREADS={v:?}: {e}")))?,
        Err(_) => cfg.parallelism,
    };
    if let Parallelism::Threads(n) = parallelism {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn poly_json(p: &Polynomial) -> Value {
    serde_json::from_str(&p.to_json()).expect("polynomial JSON is valid")
}

fn grids_output(grids: &[PipeGrid], poly: &Polynomial, render: Option<Render>, weight: fn(&PipeGrid) -> WeakComposition) -> (Value, String) {
    let json = json!({
        "count": grids.len(),
        "grids": grids.iter().map(|g| {
            let mut v: Value = serde_json::from_str(&g.to_json()).expect("grid JSON is valid");
            v["weight"] = json!(weight(g).entries());
            if render.is_some() {
                v["ascii"] = json!(g.ascii_rows());
            }
            v
        }).collect::<Vec<_>>(),
        "polynomial": poly_json(poly),
    });
    let mut text = String::new();
    for g in grids {
        text.push_str(&format!("weight ({})\n", weight(g)));
        text.push_str(&g.render_ascii());
        text.push('\n');
    }
    text.push_str(&format!("{} pipedreams\n{poly}", grids.len()));
    (json, text)
}

fn support_output(s: &[WeakComposition]) -> Output {
    Output::ok(
        json!({ "support": s.iter().map(|a| a.entries().to_vec()).collect::<Vec<_>>() }),
        s.iter().map(|a| format!("({a})")).collect::<Vec<_>>().join("\n"),
    )
}

fn run(cli: Cli) -> Result<(Output, OutputFormat), Failure> {
    let cfg = load_config(cli.config.as_ref())?;
    let format = match cli.format {
        Some(Format::Json) => OutputFormat::Json,
        Some(Format::Text) => OutputFormat::Text,
        None => cfg.format,
    };
    configure_threads(&cfg)?;
    let engine = Engine::new(cfg.limits());
    let limit = cfg.term_limit;

    let out = match cli.command {
        Command::Schubert { perm } => {
            let p = engine.schubert(&perm)?;
            Output::ok(poly_json(&p), p.to_string())
        }
        Command::Key { comp } => {
            let p = engine.key(&comp)?;
            Output::ok(poly_json(&p), p.to_string())
        }
        Command::Toplascoux { comp, method } => {
            let p = match method {
                Method::Recursive => engine.top_lascoux(&comp)?,
                Method::Bpd => {
                    let grids = pipedream::enumerate_ltbpd_limited(&comp, limit)?;
                    Polynomial::from_int_terms(grids.iter().map(|g| (g.nonblank_weight(), 1)))
                }
                Method::Reverse => engine.top_lascoux_via_reverse(&comp, comp.max_entry(), comp.len())?,
            };
            Output::ok(poly_json(&p), p.to_string())
        }
        Command::Bpd { perm, render } => {
            let grids = pipedream::enumerate_bpd_limited(&perm, perm.len(), limit)?;
            let poly = Polynomial::from_int_terms(grids.iter().map(|g| (g.blank_weight(), 1)));
            let (json, text) = grids_output(&grids, &poly, render, PipeGrid::blank_weight);
            Output::ok(json, text)
        }
        Command::Ltbpd { comp, render } => {
            let grids = pipedream::enumerate_ltbpd_limited(&comp, limit)?;
            let poly = Polynomial::from_int_terms(grids.iter().map(|g| (g.nonblank_weight(), 1)));
            let (json, text) = grids_output(&grids, &poly, render, PipeGrid::nonblank_weight);
            Output::ok(json, text)
        }
        Command::Support { schubert, toplascoux } => match (schubert, toplascoux) {
            (Some(w), _) => support_output(&tableau::schubert_support(&w)),
            (None, Some(a)) => support_output(&tableau::top_lascoux_support(&a)?),
            (None, None) => return Err(Failure::Usage("support needs --schubert or --toplascoux".into())),
        },
        Command::Snp { input } => {
            let text = std::fs::read_to_string(&input)
                .map_err(|e| Failure::Usage(format!("--input {}: {e}", input.display())))?;
            let f = Polynomial::from_json(&text)?;
            let r = snp::snp_check_limited(&f, cfg.box_limit)?;
            let witness = r.witness.as_ref().map(|w| w.entries().to_vec());
            let summary = match &r.witness {
                None => format!("saturated ({} candidates)", r.candidates),
                Some(w) => format!("not saturated: ({w}) is in the hull but not the support"),
            };
            Output::ok(
                json!({ "saturated": r.saturated, "witness": witness, "candidates": r.candidates }),
                summary,
            )
        }
        Command::Product { basis, left, right } => {
            let e = match basis {
                Basis::Schubert => engine.schubert_product(&parse_perm("--left", &left)?, &parse_perm("--right", &right)?)?,
                Basis::Toplascoux => {
                    engine.top_lascoux_product(&parse_comp("--left", &left)?, &parse_comp("--right", &right)?)?
                }
                Basis::Key => {
                    let f = engine
                        .key(&parse_comp("--left", &left)?)?
                        .checked_mul(&engine.key(&parse_comp("--right", &right)?)?, limit)?;
                    engine.expand_in_basis(&f, BasisKind::Key)?
                }
            };
            Output::ok(serde_json::from_str(&e.to_json()).expect("expansion JSON is valid"), e.to_string())
        }
        Command::Structconst { alpha, gamma, m1, m2, n } => {
            let r = engine.verify_structure_theorem(&alpha, &gamma, m1, m2, n)?;
            let mut text = format!("u = [{}], v = [{}]\n", r.u, r.v);
            for e in &r.entries {
                let mark = if e.equal { "ok" } else { "MISMATCH" };
                text.push_str(&format!(
                    "delta ({}) w [{}]: d = {}, c = {} {mark}\n",
                    e.delta,
                    e.w,
                    format_coeff(&e.d),
                    format_coeff(&e.c)
                ));
            }
            text.push_str(if r.passed { "PASS" } else { "FAIL" });
            Output {
                json: r.to_json(),
                text,
                passed: r.passed,
            }
        }
        Command::Keyexpand { comp, m, n } => {
            let k = engine.key_expand_top_lascoux(&comp, m, n)?;
            let expansion: Value = serde_json::from_str(&k.expansion.to_json()).expect("expansion JSON is valid");
            let schubert: Value = serde_json::from_str(&k.schubert.to_json()).expect("expansion JSON is valid");
            Output {
                json: json!({
                    "expansion": expansion,
                    "schubert_keys": schubert,
                    "reverse_key_holds": k.reverse_key_holds,
                }),
                text: format!(
                    "{}\nreverse key check: {}",
                    k.expansion,
                    if k.reverse_key_holds { "PASS" } else { "FAIL" }
                ),
                passed: k.reverse_key_holds,
            }
        }
        Command::Hilbert { max_degree } => {
            let h = schublas::expansion::hilbert_coefficients(max_degree)?;
            let text = h.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
            Output::ok(json!(h), text)
        }
        Command::Verify { suite, max_n } => {
            let suite = match suite {
                SuiteArg::Examples => Suite::Examples,
                SuiteArg::Operators => Suite::Operators,
                SuiteArg::Bpd => Suite::Bpd,
                SuiteArg::Support => Suite::Support,
                SuiteArg::Structure => Suite::Structure,
                SuiteArg::Hilbert => Suite::Hilbert,
                SuiteArg::All => Suite::All,
            };
            if max_n < 2 {
                return Err(Failure::Usage(format!("--max-n must be at least 2, got {max_n}")));
            }
            let r = verify::run(&engine, suite, max_n)?;
            Output {
                json: r.to_json(),
                text: r.to_string(),
                passed: r.passed(),
            }
        }
    };
    Ok((out, format))
}

fn parse_perm(flag: &str, s: &str) -> Result<Permutation, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(format!("invalid value '{s}' for '{flag}': {e}")))
}

fn parse_comp(flag: &str, s: &str) -> Result<WeakComposition, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(format!("invalid value '{s}' for '{flag}': {e}")))
}
