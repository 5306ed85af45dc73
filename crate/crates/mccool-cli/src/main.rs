//! `mccool`: exact computations in the basis-conjugating automorphism
//! groups of free groups.
//!
//! Output is deterministic: identical invocations produce byte-identical
//! stdout (timings go to stderr).  Exit codes: 0 success, 1 domain error,
//! 2 usage error.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mccool::cohomology;
use mccool::graded::{self, GrVariant};
use mccool::relations::{self, Family};
use mccool::suites;
use mccool::tower;
use mccool::GroupExpression;

#[derive(Parser)]
#[command(
    name = "mccool",
    version,
    about = "Exact computations in the basis-conjugating automorphism groups of free groups",
    after_help = "Word grammar: tokens `x<k>` / `X<k>` (inverse) separated by spaces or `*`.\n\
                  Expression grammar: factors `c[k,i]`, `th[k;s,t]`, `xi[i]`, `tau[i]`, `delta`,\n\
                  `s[i]`, each with optional `^-1`, separated by `*` or whitespace.\n\
                  Monomial grammar: factors `d[i,j]` joined by `*`."
)]
struct Cli {
    /// Output format (text for humans, json for machines, csv for tables)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Key=value file supplying defaults for n, m, degree, max-degree, seed, format
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Full,
    Plus,
}

impl From<VariantArg> for tower::Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Full => tower::Variant::Full,
            VariantArg::Plus => tower::Variant::Plus,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every relation of the catalog at one rank
    Verify {
        #[arg(long)]
        n: Option<u32>,
        /// Restrict to one family (e.g. mccool-1, xi-conjugation, kernel-iii, bp-mixed)
        #[arg(long)]
        family: Option<String>,
    },
    /// Automorphism evaluation and composition
    #[command(subcommand)]
    Aut(AutCommand),
    /// Delete the generators touching the top index (one level down)
    Project {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value = "full")]
        variant: VariantArg,
    },
    /// Split an expression into a section head and a kernel tail
    Decompose {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value = "full")]
        variant: VariantArg,
    },
    /// Recover the free-group word behind an upper-triangular kernel element
    Retract {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        expr: String,
    },
    /// Signed exponent sums of the column-n kernel generators
    Gamma {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        expr: String,
    },
    /// Free Lie algebra tables
    #[command(subcommand)]
    Lie(LieCommand),
    /// Graded Lie algebra ranks and enveloping-algebra series
    #[command(subcommand)]
    Gr(GrCommand),
    /// Cohomology ring of the upper-triangular groups
    #[command(subcommand)]
    Coh(CohCommand),
    /// Braid–permutation group operations
    #[command(subcommand)]
    Bp(BpCommand),
    /// Run the acceptance criteria (one PASS/FAIL line each)
    Acceptance {
        /// Run a single criterion (1..=8)
        #[arg(long)]
        criterion: Option<u32>,
        /// Seed for the randomized suites
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum AutCommand {
    /// Evaluate an expression to its generator images
    Eval {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        expr: String,
    },
    /// Compose two expressions (right one acts first)
    Compose {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Subcommand)]
enum LieCommand {
    /// Lyndon basis of one degree
    Basis {
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Witt rank of one degree
    Witt {
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        degree: Option<u32>,
    },
}

#[derive(Subcommand)]
enum GrCommand {
    /// Graded ranks (exact for plus; an upper bound for full)
    Ranks {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_enum, default_value = "plus")]
        variant: VariantArg,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Also run the relations-quotient oracle and compare (plus only)
        #[arg(long)]
        oracle: bool,
    },
    /// Euler–Poincaré series of the enveloping algebra
    Series {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
}

#[derive(Subcommand)]
enum CohCommand {
    /// Admissible monomial basis of one degree
    Basis {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Cup product of two monomials
    Mult {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Poincaré polynomial coefficients
    Poincare {
        #[arg(long)]
        n: Option<u32>,
    },
}

#[derive(Subcommand)]
enum BpCommand {
    /// Split a permutation–conjugacy automorphism into pure and permutation parts
    Split {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        expr: String,
    },
}

/// Usage problems exit 2, domain problems exit 1.
enum CliError {
    Usage(String),
    Domain(String),
}

impl From<mccool::Error> for CliError {
    fn from(e: mccool::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

struct Ctx {
    format: Format,
    config: HashMap<String, String>,
}

impl Ctx {
    fn lookup_u32(&self, flag: Option<u32>, key: &str) -> Result<u32, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        if let Some(raw) = self.config.get(key) {
            return raw.parse().map_err(|_| {
                CliError::Usage(format!("config key `{key}` is not an integer: `{raw}`"))
            });
        }
        Err(CliError::Usage(format!(
            "missing --{key} (pass the flag or set `{key}` in a --config file)"
        )))
    }

    fn emit(&self, value: &Value, text: String) {
        match self.format {
            Format::Json => println!("{value}"),
            _ => {
                if !text.is_empty() {
                    println!("{text}");
                } else {
                    println!();
                }
            }
        }
    }
}

fn load_config(path: &PathBuf) -> Result<HashMap<String, String>, CliError> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = HashMap::new();
    for (lineno, line) in body.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "config line {} is not key=value: `{line}`",
                lineno + 1
            )));
        };
        out.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(message)) => {
            eprintln!("usage error: {message}");
            eprintln!("run `mccool --help` for the grammar reference");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(path) => load_config(path)?,
        None => HashMap::new(),
    };
    let format = match cli.format {
        Some(f) => f,
        None => match config.get("format").map(String::as_str) {
            Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            Some("text") | None => Format::Text,
            Some(other) => {
                return Err(CliError::Usage(format!("unknown format in config: `{other}`")))
            }
        },
    };
    let ctx = Ctx { format, config };
    match cli.command {
        Command::Verify { n, family } => verify(&ctx, n, family),
        Command::Aut(cmd) => aut(&ctx, cmd),
        Command::Project { n, expr, variant } => project(&ctx, n, &expr, variant.into()),
        Command::Decompose { n, expr, variant } => decompose(&ctx, n, &expr, variant.into()),
        Command::Retract { n, expr } => retract(&ctx, n, &expr),
        Command::Gamma { n, expr } => gamma(&ctx, n, &expr),
        Command::Lie(cmd) => lie_cmd(&ctx, cmd),
        Command::Gr(cmd) => gr(&ctx, cmd),
        Command::Coh(cmd) => coh(&ctx, cmd),
        Command::Bp(cmd) => bp(&ctx, cmd),
        Command::Acceptance { criterion, seed } => acceptance(&ctx, criterion, seed),
    }
}

fn parse_expression(text: &str, n: u32) -> Result<GroupExpression, CliError> {
    GroupExpression::parse(text, n).map_err(CliError::from)
}

fn verify(ctx: &Ctx, n: Option<u32>, family: Option<String>) -> Result<(), CliError> {
    let n = ctx.lookup_u32(n, "n")?;
    let family = match family {
        None => None,
        Some(name) => Some(Family::from_name(&name).ok_or_else(|| {
            let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
            CliError::Usage(format!(
                "unknown family `{name}`; known families: {}",
                names.join(", ")
            ))
        })?),
    };
    let report = relations::verify_families(n, family)?;
    eprintln!("verified in {:.3}s", report.elapsed.as_secs_f64());
    let counts = report.family_counts();
    let instances: Vec<Value> = report
        .instances
        .iter()
        .map(|i| json!({"family": i.family.name(), "indices": i.indices, "ok": i.ok}))
        .collect();
    let families: Vec<Value> = counts
        .iter()
        .map(|(f, (total, failed))| json!({"family": f.name(), "count": total, "failed": failed}))
        .collect();
    let value = json!({
        "n": n,
        "instances": instances,
        "summary": {
            "total": report.total(),
            "failed": report.failures().len(),
            "families": families,
        },
    });
    let mut text = String::new();
    for (f, (total, failed)) in &counts {
        text.push_str(&format!("{}: {} instances, {} failures\n", f.name(), total, failed));
    }
    for failure in report.failures() {
        text.push_str(&format!("FAIL {} {:?}\n", failure.family.name(), failure.indices));
    }
    text.push_str(&format!(
        "total: {} instances, {} failures",
        report.total(),
        report.failures().len()
    ));
    ctx.emit(&value, text);
    if report.is_ok() {
        Ok(())
    } else {
        Err(CliError::Domain("relation verification failed".to_string()))
    }
}

fn images_json(f: &mccool::Endomorphism) -> Value {
    Value::Array(
        f.images()
            .iter()
            .map(|w| Value::String(w.to_string()))
            .collect(),
    )
}

fn images_text(f: &mccool::Endomorphism) -> String {
    f.images()
        .iter()
        .enumerate()
        .map(|(i, w)| format!("x{} -> {}", i + 1, w))
        .collect::<Vec<_>>()
        .join("\n")
}

fn aut(ctx: &Ctx, cmd: AutCommand) -> Result<(), CliError> {
    match cmd {
        AutCommand::Eval { n, expr } => {
            let n = ctx.lookup_u32(n, "n")?;
            let f = parse_expression(&expr, n)?.evaluate();
            let value = json!({"n": n, "expr": expr, "images": images_json(&f)});
            ctx.emit(&value, images_text(&f));
        }
        AutCommand::Compose { n, a, b } => {
            let n = ctx.lookup_u32(n, "n")?;
            let fa = parse_expression(&a, n)?.evaluate();
            let fb = parse_expression(&b, n)?.evaluate();
            let f = fa.compose(&fb).map_err(CliError::from)?;
            let value = json!({"n": n, "a": a, "b": b, "images": images_json(&f)});
            ctx.emit(&value, images_text(&f));
        }
    }
    Ok(())
}

fn project(ctx: &Ctx, n: Option<u32>, expr: &str, variant: tower::Variant) -> Result<(), CliError> {
    let n = ctx.lookup_u32(n, "n")?;
    let e = parse_expression(expr, n)?;
    let projected = tower::project(&e, variant)?;
    let value = json!({"n": n, "expr": expr, "projected": projected.to_string()});
    ctx.emit(&value, projected.to_string());
    Ok(())
}

fn decompose(ctx: &Ctx, n: Option<u32>, expr: &str, variant: tower::Variant) -> Result<(), CliError> {
    let n = ctx.lookup_u32(n, "n")?;
    let e = parse_expression(expr, n)?;
    let d = tower::decompose(&e, variant)?;
    // the tail has a kernel word whenever the expression is upper-triangular
    let kernel_word = tower::retract_plus(&d.x_tail.evaluate())
        .ok()
        .map(|w| w.to_string());
    let mut value = json!({
        "n": n,
        "expr": expr,
        "w_head": d.w_head.to_string(),
        "x_tail": d.x_tail.to_string(),
    });
    let mut text = format!("w_head: {}\nx_tail: {}", d.w_head, d.x_tail);
    if let Some(word) = &kernel_word {
        value["kernel_word"] = Value::String(word.clone());
        text.push_str(&format!("\nkernel_word: {word}"));
    }
    ctx.emit(&value, text);
    Ok(())
}

fn retract(ctx: &Ctx, n: Option<u32>, expr: &str) -> Result<(), CliError> {
    let n = ctx.lookup_u32(n, "n")?;
    let f = parse_expression(expr, n)?.evaluate();
    let word = tower::retract_plus(&f)?;
    let value = json!({"n": n, "expr": expr, "word": word.to_string()});
    ctx.emit(&value, word.to_string());
    Ok(())
}

fn gamma(ctx: &Ctx, n: Option<u32>, expr: &str) -> Result<(), CliError> {
    let n = ctx.lookup_u32(n, "n")?;
    let e = parse_expression(expr, n)?;
    let sums = tower::gamma(&e)?;
    let value = json!({"n": n, "expr": expr, "gamma": sums});
    let text = sums
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    ctx.emit(&value, text);
    Ok(())
}

fn lie_cmd(ctx: &Ctx, cmd: LieCommand) -> Result<(), CliError> {
    match cmd {
        LieCommand::Basis { m, degree } => {
            let m = ctx.lookup_u32(m, "m")?;
            let degree = ctx.lookup_u32(degree, "degree")?;
            if degree == 0 {
                return Err(CliError::Domain("degree must be at least 1".to_string()));
            }
            let words = mccool::lie::lyndon_words(m, degree);
            let basis: Vec<Value> = words
                .iter()
                .map(|w| json!({"word": w, "bracket": mccool::lie::bracket_string(w)}))
                .collect();
            let value = json!({"m": m, "degree": degree, "basis": basis});
            let text = words
                .iter()
                .map(|w| mccool::lie::bracket_string(w))
                .collect::<Vec<_>>()
                .join("\n");
            ctx.emit(&value, text);
        }
        LieCommand::Witt { m, degree } => {
            let m = ctx.lookup_u32(m, "m")?;
            let degree = ctx.lookup_u32(degree, "degree")?;
            if degree == 0 {
                return Err(CliError::Domain("degree must be at least 1".to_string()));
            }
            let rank = mccool::lie::witt_rank(m as u64, degree as u64);
            let value = json!({"m": m, "degree": degree, "rank": rank.to_string()});
            ctx.emit(&value, rank.to_string());
        }
    }
    Ok(())
}

fn ranks_json(table: &graded::RankTable) -> Value {
    let map: serde_json::Map<String, Value> = table
        .iter()
        .map(|(d, r)| (d.to_string(), Value::String(r.to_string())))
        .collect();
    Value::Object(map)
}

fn ranks_text(table: &graded::RankTable, csv: bool) -> String {
    let sep = if csv { "," } else { " " };
    let mut lines = Vec::new();
    if csv {
        lines.push("degree,rank".to_string());
    }
    for (d, r) in table.iter() {
        lines.push(format!("{d}{sep}{r}"));
    }
    lines.join("\n")
}

fn gr(ctx: &Ctx, cmd: GrCommand) -> Result<(), CliError> {
    match cmd {
        GrCommand::Ranks { n, variant, max_degree, oracle } => {
            let n = ctx.lookup_u32(n, "n")?;
            let max_degree = ctx.lookup_u32(max_degree, "max-degree")?;
            if max_degree == 0 {
                return Err(CliError::Domain("max-degree must be at least 1".to_string()));
            }
            match variant {
                VariantArg::Plus => {
                    let model = graded::model_ranks(n, max_degree)?;
                    let mut value = json!({
                        "n": n,
                        "variant": "plus",
                        "interpretation": "exact",
                        "ranks": ranks_json(&model),
                    });
                    let mut text = ranks_text(&model, ctx.format == Format::Csv);
                    if oracle {
                        let quotient = graded::quotient_ranks(n, GrVariant::Plus, max_degree)?;
                        let agrees = quotient == model;
                        value["oracle"] = json!({
                            "ranks": ranks_json(&quotient),
                            "agrees": agrees,
                        });
                        text.push_str(&format!(
                            "\noracle: {}",
                            if agrees { "agrees" } else { "DISAGREES" }
                        ));
                        if !agrees {
                            ctx.emit(&value, text);
                            return Err(CliError::Domain(
                                "relations-quotient oracle disagrees with the row model".to_string(),
                            ));
                        }
                    }
                    ctx.emit(&value, text);
                }
                VariantArg::Full => {
                    if oracle {
                        return Err(CliError::Usage(
                            "--oracle applies to the plus variant; the full variant is itself \
                             the relations quotient"
                                .to_string(),
                        ));
                    }
                    let table = graded::quotient_ranks(n, GrVariant::Full, max_degree)?;
                    let value = json!({
                        "n": n,
                        "variant": "full",
                        "interpretation": "upper-bound",
                        "ranks": ranks_json(&table),
                    });
                    let mut text = ranks_text(&table, ctx.format == Format::Csv);
                    if ctx.format != Format::Csv {
                        text.push_str("\n(upper bound for the graded ranks of the full group)");
                    }
                    ctx.emit(&value, text);
                }
            }
        }
        GrCommand::Series { n, max_degree } => {
            let n = ctx.lookup_u32(n, "n")?;
            let max_degree = ctx.lookup_u32(max_degree, "max-degree")?;
            let series = graded::closed_form_series(n, max_degree);
            let check = graded::uea_series(&graded::model_ranks(n, max_degree)?, max_degree);
            if series != check {
                return Err(CliError::Domain(
                    "series mismatch between the closed form and the model ranks".to_string(),
                ));
            }
            let coeffs: Vec<String> = series.coefficients().iter().map(|c| c.to_string()).collect();
            let value = json!({"n": n, "max_degree": max_degree, "coefficients": coeffs});
            let text = if ctx.format == Format::Csv {
                let mut lines = vec!["degree,coefficient".to_string()];
                lines.extend(coeffs.iter().enumerate().map(|(d, c)| format!("{d},{c}")));
                lines.join("\n")
            } else {
                coeffs.join(" ")
            };
            ctx.emit(&value, text);
        }
    }
    Ok(())
}

fn coh(ctx: &Ctx, cmd: CohCommand) -> Result<(), CliError> {
    match cmd {
        CohCommand::Basis { n, degree } => {
            let n = ctx.lookup_u32(n, "n")?;
            let degree = ctx.lookup_u32(degree, "degree")?;
            let basis = cohomology::basis(n, degree)?;
            let names: Vec<String> = basis.iter().map(|m| m.to_string()).collect();
            let value = json!({"n": n, "degree": degree, "basis": names});
            ctx.emit(&value, names.join("\n"));
        }
        CohCommand::Mult { n, a, b } => {
            let n = ctx.lookup_u32(n, "n")?;
            let fa = cohomology::parse_monomial(&a, n)?;
            let fb = cohomology::parse_monomial(&b, n)?;
            let ca = cohomology::normalize(n, &fa, 1.into())?;
            let cb = cohomology::normalize(n, &fb, 1.into())?;
            let product = cohomology::multiply(&ca, &cb)?;
            let map: serde_json::Map<String, Value> = product
                .terms()
                .iter()
                .map(|(m, c)| (m.to_string(), Value::String(c.to_string())))
                .collect();
            let value = json!({"n": n, "a": a, "b": b, "product": Value::Object(map)});
            ctx.emit(&value, product.to_string());
        }
        CohCommand::Poincare { n } => {
            let n = ctx.lookup_u32(n, "n")?;
            let p = cohomology::poincare_polynomial(n)?;
            let coeffs: Vec<String> = p.coefficients().iter().map(|c| c.to_string()).collect();
            let value = json!({"n": n, "coefficients": coeffs});
            let text = if ctx.format == Format::Csv {
                let mut lines = vec!["degree,coefficient".to_string()];
                lines.extend(coeffs.iter().enumerate().map(|(d, c)| format!("{d},{c}")));
                lines.join("\n")
            } else {
                coeffs.join(" ")
            };
            ctx.emit(&value, text);
        }
    }
    Ok(())
}

fn bp(ctx: &Ctx, cmd: BpCommand) -> Result<(), CliError> {
    match cmd {
        BpCommand::Split { n, expr } => {
            let n = ctx.lookup_u32(n, "n")?;
            let f = parse_expression(&expr, n)?.evaluate();
            let data = mccool::braid::detect(&f)?;
            let (pure, lambda) = mccool::braid::split(&f)?;
            let conjugators: Vec<String> =
                data.conjugators.iter().map(|w| w.to_string()).collect();
            let value = json!({
                "n": n,
                "expr": expr,
                "lambda": lambda.to_string(),
                "pure": images_json(&pure),
                "conjugators": conjugators,
            });
            let text = format!(
                "lambda: {}\npure:\n{}\nconjugators: [{}]",
                lambda,
                images_text(&pure),
                conjugators.join(", ")
            );
            ctx.emit(&value, text);
        }
    }
    Ok(())
}

fn acceptance(ctx: &Ctx, criterion: Option<u32>, seed: Option<u64>) -> Result<(), CliError> {
    let seed = match seed {
        Some(s) => s,
        None => match ctx.config.get("seed") {
            Some(raw) => raw
                .parse()
                .map_err(|_| CliError::Usage(format!("config key `seed` is not an integer: `{raw}`")))?,
            None => suites::DEFAULT_SEED,
        },
    };
    let outcomes = match criterion {
        Some(id) if (1..=8).contains(&id) => vec![suites::criterion(id, seed)],
        Some(id) => {
            return Err(CliError::Usage(format!("criterion {id} out of range 1..=8")));
        }
        None => suites::run_all(seed),
    };
    let ok = outcomes.iter().all(|o| o.passed);
    let criteria: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({"id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail}))
        .collect();
    let value = json!({"seed": seed, "criteria": criteria, "ok": ok});
    let text = outcomes
        .iter()
        .map(|o| {
            format!(
                "{} {} {} ({})",
                if o.passed { "PASS" } else { "FAIL" },
                o.id,
                o.name,
                o.detail
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    for o in &outcomes {
        eprintln!("criterion {} took {:.2}s", o.id, o.elapsed.as_secs_f64());
    }
    ctx.emit(&value, text);
    if ok {
        Ok(())
    } else {
        Err(CliError::Domain("acceptance criteria failed".to_string()))
    }
}
