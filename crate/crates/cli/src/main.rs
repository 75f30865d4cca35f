//! `abszeta`: absolute zeta functions of counting polynomials from the shell.

use std::fmt;
use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use abszeta::catalog::{parse_count_spec, CatalogError, CountKind};
use abszeta::numerics::{eval_factored, eval_gamma_product, ComplexPoint, Tolerances};
use abszeta::suite::Suite;
use abszeta::{
    check_convergence, infinite_shifted_product, Convergence, FactoredRational, GammaError, LaurentPoly, RenderStyle,
    VerificationReport,
};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "abszeta", version, about = "Absolute zeta functions over F1")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Tolerance overrides, e.g. "mellin=1e-9,partial_product=1e-4".
    #[arg(long, global = true)]
    tol: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Latex,
    Json,
}

impl Format {
    fn style(self) -> RenderStyle {
        match self {
            Format::Plain => RenderStyle::Plain,
            Format::Latex => RenderStyle::Latex,
            Format::Json => RenderStyle::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Terms {
    Finite(u64),
    Infinite,
}

impl FromStr for Terms {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Terms::Infinite),
            _ => s
                .parse()
                .map(Terms::Finite)
                .map_err(|_| format!("`{s}` is neither a non-negative integer nor `inf`")),
        }
    }
}

impl fmt::Display for Terms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Terms::Finite(k) => write!(f, "{k}"),
            Terms::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(clap::Args, Debug)]
struct CountArgs {
    /// Catalog name (gl:r, sl:r, gm^r, quartic:a,b,c,d) or a polynomial in x.
    count: String,

    /// Rank for a catalog name given without one (`gl`, `sl`, `gm`).
    #[arg(long = "r")]
    rank: Option<u32>,
}

fn parse_modulus(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) | Err(_) => Err(format!("`{s}` is not a positive integer")),
        Ok(n) => Ok(n),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the absolute zeta function of a counting polynomial.
    Zeta {
        #[command(flatten)]
        count: CountArgs,
        /// Also evaluate at this point ("re,im").
        #[arg(long = "s", allow_hyphen_values = true)]
        s: Option<ComplexPoint>,
    },
    /// Print the shifted product Z_N^K(s), or its closed form for K = inf.
    Product {
        #[command(flatten)]
        count: CountArgs,
        #[arg(long = "N", default_value = "1", value_parser = parse_modulus)]
        modulus: u64,
        #[arg(long = "K")]
        terms: Terms,
        #[arg(long = "s", allow_hyphen_values = true)]
        s: Option<ComplexPoint>,
    },
    /// Decide convergence of Z_N^inf.
    Convergence {
        #[command(flatten)]
        count: CountArgs,
        #[arg(long = "N", default_value = "1", value_parser = parse_modulus)]
        modulus: u64,
    },
    /// Decide whether Z_N^inf is a rational function of s.
    Rationality {
        #[command(flatten)]
        count: CountArgs,
        #[arg(long = "N", default_value = "1", value_parser = parse_modulus)]
        modulus: u64,
    },
    /// Find functional equations Z(D-s) = Z(s)^C.
    Fe {
        #[command(flatten)]
        count: CountArgs,
        /// Apply to Z_N^K instead of the zeta function itself.
        #[arg(long = "N", value_parser = parse_modulus)]
        modulus: Option<u64>,
        #[arg(long = "K")]
        terms: Option<Terms>,
    },
    /// Detect f(1/x) = C x^-D f(x), or the same for f/(1-x^-N) with --N.
    Automorphy {
        #[command(flatten)]
        count: CountArgs,
        #[arg(long = "N", value_parser = parse_modulus)]
        modulus: Option<u64>,
    },
    /// Run verification suites (`all` or one of the names from `--help`).
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
    /// List catalog counting polynomials.
    Catalog {
        /// Largest rank to list.
        #[arg(long = "r", default_value_t = 3)]
        rank: u32,
    },
}

/// Error carrying the exit code it maps to.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        CliError::Usage(e.to_string())
    }
}

struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: impl Into<String>) -> Self {
        Output { text: text.into(), ok: true }
    }
}

fn resolve_count(args: &CountArgs) -> Result<(String, LaurentPoly), CliError> {
    let trimmed = args.count.trim();
    let spec = match (trimmed, args.rank) {
        ("gl" | "sl", Some(r)) => format!("{trimmed}:{r}"),
        ("gl:" | "sl:" | "gm^", Some(r)) => format!("{trimmed}{r}"),
        ("gm", Some(r)) => format!("gm^{r}"),
        ("gl" | "sl" | "gm" | "gl:" | "sl:" | "gm^", None) => {
            return Err(CliError::Usage(format!("`{trimmed}` needs a rank (append it or pass --r)")))
        }
        _ => trimmed.to_string(),
    };
    let (kind, poly) = parse_count_spec(&spec)?;
    let label = kind.map(|k: CountKind| k.to_string()).unwrap_or_else(|| poly.to_string());
    Ok((label, poly))
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn complex_text(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.15e}", z.re)
    } else {
        format!("{:.15e}{:+.15e}i", z.re, z.im)
    }
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes")
}

fn divergence_message(c: &Convergence) -> String {
    match c {
        Convergence::Converges => "converges".into(),
        Convergence::Diverges { value_at_one, derivative_at_one } => {
            format!("diverges (f(1) = {value_at_one}, f'(1) = {derivative_at_one})")
        }
    }
}

fn run_zeta(format: Format, count: &CountArgs, s: Option<ComplexPoint>) -> Result<Output, CliError> {
    let (label, f) = resolve_count(count)?;
    let z = FactoredRational::zeta_of_poly(&f);
    let value = s
        .map(|p| eval_factored(&z, p.value()).map_err(|e| CliError::Failed(e.to_string())))
        .transpose()?;
    Ok(Output::ok(match format {
        Format::Json => json_text(&json!({
            "count": label,
            "poly": f.to_json(),
            "zeta": z.to_json(),
            "value": value.map(complex_json),
        })),
        _ => {
            let mut out = z.render(format.style());
            if let (Some(v), Some(p)) = (value, s) {
                out.push_str(&format!("\nvalue at s = {p}: {}", complex_text(v)));
            }
            out
        }
    }))
}

fn run_product(
    format: Format,
    count: &CountArgs,
    modulus: u64,
    terms: Terms,
    s: Option<ComplexPoint>,
) -> Result<Output, CliError> {
    let (label, f) = resolve_count(count)?;
    let (rendered, json_expr, value) = match terms {
        Terms::Finite(k) => {
            let z = FactoredRational::zeta_of_poly(&f).finite_shifted_product(modulus, k);
            let value = s
                .map(|p| eval_factored(&z, p.value()).map_err(|e| CliError::Failed(e.to_string())))
                .transpose()?;
            (z.render(format.style()), z.to_json(), value)
        }
        Terms::Infinite => {
            let g = infinite_shifted_product(&f, modulus).map_err(|e| match e {
                GammaError::Divergent { .. } => CliError::Failed(e.to_string()),
                other => CliError::Usage(other.to_string()),
            })?;
            let value = s
                .map(|p| eval_gamma_product(&g, p.value()).map_err(|e| CliError::Failed(e.to_string())))
                .transpose()?;
            match g.extract_rational() {
                Some(r) => (r.render(format.style()), r.to_json(), value),
                None => (g.render(format.style()), g.to_json(), value),
            }
        }
    };
    Ok(Output::ok(match format {
        Format::Json => json_text(&json!({
            "count": label,
            "N": modulus,
            "K": terms.to_string(),
            "product": json_expr,
            "value": value.map(complex_json),
        })),
        _ => {
            let mut out = rendered;
            if let (Some(v), Some(p)) = (value, s) {
                out.push_str(&format!("\nvalue at s = {p}: {}", complex_text(v)));
            }
            out
        }
    }))
}

fn run_convergence(format: Format, count: &CountArgs, modulus: u64) -> Result<Output, CliError> {
    let (label, f) = resolve_count(count)?;
    let c = check_convergence(&f, modulus);
    Ok(Output::ok(match format {
        Format::Json => json_text(&json!({
            "count": label,
            "N": modulus,
            "converges": c.converges(),
            "f(1)": f.eval_at_one().to_string(),
            "f'(1)": f.derivative_at_one().to_string(),
        })),
        _ => divergence_message(&c),
    }))
}

fn run_rationality(format: Format, count: &CountArgs, modulus: u64) -> Result<Output, CliError> {
    let (label, f) = resolve_count(count)?;
    let g = match infinite_shifted_product(&f, modulus) {
        Ok(g) => g,
        Err(GammaError::Divergent { .. }) => {
            let c = check_convergence(&f, modulus);
            return Ok(Output::ok(match format {
                Format::Json => json_text(&json!({ "count": label, "N": modulus, "converges": false, "rational": null })),
                _ => format!("not rational (product {})", divergence_message(&c)),
            }));
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    let extracted = g.extract_rational();
    Ok(Output::ok(match format {
        Format::Json => json_text(&json!({
            "count": label,
            "N": modulus,
            "converges": true,
            "rational": extracted.as_ref().map(FactoredRational::to_json),
            "residue_class_sums": f.residue_class_sums(modulus).iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
        _ => match extracted {
            Some(r) => format!("rational: {}", r.render(format.style())),
            None => "not rational (gamma factors remain)".into(),
        },
    }))
}

fn run_fe(format: Format, count: &CountArgs, modulus: Option<u64>, terms: Option<Terms>) -> Result<Output, CliError> {
    let (label, f) = resolve_count(count)?;
    let zeta = FactoredRational::zeta_of_poly(&f);
    let target = match (modulus, terms) {
        (None, None) => zeta,
        (_, None) => return Err(CliError::Usage("--N needs --K".into())),
        (n, Some(Terms::Finite(k))) => zeta.finite_shifted_product(n.unwrap_or(1), k),
        (n, Some(Terms::Infinite)) => {
            let n = n.unwrap_or(1);
            let g = infinite_shifted_product(&f, n).map_err(|e| CliError::Failed(e.to_string()))?;
            match g.extract_rational() {
                Some(r) => r,
                None => {
                    return Err(CliError::Failed(
                        "Z_N^inf is not rational; functional equations are only detected on factored rationals".into(),
                    ))
                }
            }
        }
    };
    let found = target.detect_functional_equation();
    Ok(Output::ok(match format {
        Format::Json => json_text(&json!({
            "count": label,
            "expression": target.to_json(),
            "trivial": found.trivial,
            "equations": found.equations.iter().map(|fe| fe.to_json()).collect::<Vec<_>>(),
        })),
        _ if found.trivial => "trivial (constant expression)".into(),
        _ if found.equations.is_empty() => "none".into(),
        _ => found.equations.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"),
    }))
}

fn run_automorphy(format: Format, count: &CountArgs, modulus: Option<u64>) -> Result<Output, CliError> {
    let (label, f) = resolve_count(count)?;
    let found = match modulus {
        None => f.detect_automorphy(),
        Some(n) => {
            if f.divide_by_one_minus_x_neg(n).is_none() {
                return Err(CliError::Failed(format!("1 - x^-{n} does not divide {f}")));
            }
            f.quotient_automorphy(n)
        }
    };
    Ok(Output::ok(match format {
        Format::Json => json_text(&json!({
            "count": label,
            "N": modulus,
            "automorphy": found.map(|a| json!({ "C": a.sign.as_i64(), "D": a.degree })),
        })),
        _ => match found {
            Some(a) => format!("C = {}, D = {}", a.sign, a.degree),
            None => "none".into(),
        },
    }))
}

fn run_verify(format: Format, suite: &str, tol: &Tolerances) -> Result<Output, CliError> {
    let suites: Vec<Suite> = match suite {
        "all" => Suite::ALL.to_vec(),
        name => vec![name.parse::<Suite>().map_err(CliError::Usage)?],
    };
    let mut lines = Vec::new();
    let mut ok = true;
    for s in suites {
        let reports: Vec<VerificationReport> = s.run(tol);
        for r in &reports {
            ok &= r.passed();
            lines.push(match format {
                Format::Json => {
                    let mut v = serde_json::to_value(r).expect("report serializes");
                    v["suite"] = json!(s.name());
                    serde_json::to_string(&v).expect("json serializes")
                }
                _ => format!("[{s}] {r}"),
            });
        }
    }
    if format != Format::Json {
        let failed = lines.iter().filter(|l| l.contains("] FAIL")).count();
        lines.push(format!("{} checks, {failed} failed", lines.len()));
    }
    Ok(Output { text: lines.join("\n"), ok })
}

fn run_catalog(format: Format, max_rank: u32) -> Result<Output, CliError> {
    if max_rank == 0 {
        return Err(CliError::Usage("`--r 0`: rank must be at least 1".into()));
    }
    let mut kinds = Vec::new();
    for r in 1..=max_rank {
        kinds.push(CountKind::Gl(r));
        kinds.push(CountKind::Sl(r));
        kinds.push(CountKind::GmPower(r));
    }
    let mut entries = Vec::new();
    for k in kinds {
        let (_, poly) = parse_count_spec(&k.to_string())?;
        entries.push((k.to_string(), poly));
    }
    Ok(Output::ok(match format {
        Format::Json => json_text(&Value::Array(
            entries.iter().map(|(n, p)| json!({ "name": n, "poly": p.to_json() })).collect(),
        )),
        _ => {
            let width = entries.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
            entries
                .iter()
                .map(|(n, p)| format!("{n:<width$}  {p}"))
                .collect::<Vec<_>>()
                .join("\n")
        }
    }))
}

fn tolerances(cli_tol: Option<&str>) -> Result<Tolerances, CliError> {
    let base = Tolerances::from_env().map_err(|e| CliError::Usage(format!("{}: {e}", Tolerances::ENV_VAR)))?;
    match cli_tol {
        Some(spec) => base.with_overrides(spec).map_err(|e| CliError::Usage(format!("--tol: {e}"))),
        None => Ok(base),
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let tol = tolerances(cli.tol.as_deref())?;
    let format = cli.format;
    match &cli.command {
        Command::Zeta { count, s } => run_zeta(format, count, *s),
        Command::Product { count, modulus, terms, s } => run_product(format, count, *modulus, *terms, *s),
        Command::Convergence { count, modulus } => run_convergence(format, count, *modulus),
        Command::Rationality { count, modulus } => run_rationality(format, count, *modulus),
        Command::Fe { count, modulus, terms } => run_fe(format, count, *modulus, *terms),
        Command::Automorphy { count, modulus } => run_automorphy(format, count, *modulus),
        Command::Verify { suite } => run_verify(format, suite, &tol),
        Command::Catalog { rank } => run_catalog(format, *rank),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
