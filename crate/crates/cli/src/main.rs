use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maxclass::counting::{count_with, CountReport, EnumerationOptions, Method, DEFAULT_BUDGET};
use maxclass::verify::{run_all, run_suite, Cell, PropertyOutcome, Suite};
use maxclass::zeta::{functional_equation_of, series_coefficients, zeta_closed_form, Monomial};
use maxclass::{build_rep, Error, LambdaSpec, PrimePower};
use serde_json::{json, Value};

macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).expect("writing to a String cannot fail")
    };
}

const BUDGET_ENV: &str = "MAXCLASS_BUDGET";

/// Twist isoclass counts and representation zeta functions of the maximal class groups M_n.
#[derive(Debug, Parser)]
#[command(name = "maxclass", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count twist isoclasses of irreducible p^N-dimensional representations.
    Count(CountArgs),
    /// Print the p-local zeta function, its abscissa and functional equation.
    Zeta(ZetaArgs),
    /// Run invariant suites and report pass/fail per property.
    Verify(VerifyArgs),
    /// Tabulate counts for N = 0..=max-N as TSV.
    Table(TableArgs),
    /// Print the standard-form exponent table of a lambda tuple as JSON.
    Dump(DumpArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Enum,
    Closed,
    Series,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Enum => vec![Method::Enumerate],
            MethodArg::Closed => vec![Method::ClosedForm],
            MethodArg::Series => vec![Method::Series],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Debug, Args)]
struct Enumeration {
    /// Worker threads for enumeration (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Largest tail space to enumerate; overrides MAXCLASS_BUDGET.
    #[arg(long)]
    budget: Option<u64>,
}

impl Enumeration {
    fn options(&self) -> Result<EnumerationOptions, Error> {
        let budget = match self.budget {
            Some(b) => b,
            None => match std::env::var(BUDGET_ENV) {
                Ok(v) => v.trim().parse().map_err(|_| {
                    Error::InvalidArgument(format!(
                        "{BUDGET_ENV} must be a non-negative integer, got {v:?}"
                    ))
                })?,
                Err(_) => DEFAULT_BUDGET,
            },
        };
        Ok(EnumerationOptions {
            budget,
            threads: self.threads,
        })
    }
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u64,
    #[arg(long = "N")]
    exponent: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    enumeration: Enumeration,
}

#[derive(Debug, Args)]
struct ZetaArgs {
    #[arg(long)]
    n: usize,
    /// Prime at which to expand the series.
    #[arg(long, requires = "series")]
    p: Option<u64>,
    /// Print series coefficients for N = 0..=N_max.
    #[arg(long, value_name = "N_MAX", requires = "p")]
    series: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Simplex,
    Standardform,
    Stability,
    Shout,
    Counting,
    Zeta,
    Oracle,
    All,
}

impl SuiteArg {
    fn suite(self) -> Option<Suite> {
        match self {
            SuiteArg::Simplex => Some(Suite::Simplex),
            SuiteArg::Standardform => Some(Suite::StandardForm),
            SuiteArg::Stability => Some(Suite::Stability),
            SuiteArg::Shout => Some(Suite::Shout),
            SuiteArg::Counting => Some(Suite::Counting),
            SuiteArg::Zeta => Some(Suite::Zeta),
            SuiteArg::Oracle => Some(Suite::Oracle),
            SuiteArg::All => None,
        }
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Restrict to a single grid cell (requires --p and --N).
    #[arg(long, requires_all = ["p", "exponent"])]
    n: Option<usize>,
    #[arg(long, requires_all = ["n", "exponent"])]
    p: Option<u64>,
    #[arg(long = "N", requires_all = ["n", "p"])]
    exponent: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u64,
    #[arg(long = "max-N")]
    max_exponent: u32,
    #[command(flatten)]
    enumeration: Enumeration,
}

#[derive(Debug, Args)]
struct DumpArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u64,
    #[arg(long = "N")]
    exponent: u32,
    /// Exponents e_1,...,e_n of lambda_i = zeta^{e_i}, with e_1 = 0.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    lambda: Vec<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = match cli.command {
        Command::Count(args) => cmd_count(&args, &mut out),
        Command::Zeta(args) => cmd_zeta(&args, &mut out),
        Command::Verify(args) => cmd_verify(&args, &mut out),
        Command::Table(args) => cmd_table(&args, &mut out),
        Command::Dump(args) => cmd_dump(&args, &mut out),
    };
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout
        .write_all(out.as_bytes())
        .and_then(|()| stdout.flush())
    {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn print_json(out: &mut String, value: &Value) {
    outln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("values serialize")
    );
}

fn decimal<T: ToString>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "-".to_string(), ToString::to_string)
}

fn count_json(report: &CountReport) -> Value {
    let mut v = serde_json::to_value(report).expect("report serializes");
    v["agree"] = json!(report.agree());
    v["r"] = json!(report.r().map(ToString::to_string));
    v
}

fn cmd_count(args: &CountArgs, out: &mut String) -> Result<bool, Error> {
    let opts = args.enumeration.options()?;
    let report = count_with(args.n, args.p, args.exponent, &args.method.methods(), opts)?;
    let agree = report.agree();
    match args.format {
        Format::Json => print_json(out, &count_json(&report)),
        Format::Tsv => {
            outln!(out, "n\tp\tN\tr_enum\tr_closed\tr_series\tagree");
            outln!(out, "{}", tsv_row(&report));
        }
        Format::Text => {
            outln!(out, "n={} p={} N={}", report.n, report.p, report.exponent);
            for (label, v) in [
                ("enumerated", &report.r_enumerated),
                ("closed form", &report.r_closed_form),
                ("series", &report.r_series),
            ] {
                if let Some(v) = v {
                    outln!(out, "  {label:<12} {v}");
                }
            }
            if let Some(census) = &report.orbit_census {
                let parts: Vec<String> = census
                    .iter()
                    .map(|(size, k)| format!("{k} of size {size}"))
                    .collect();
                outln!(out, "  orbits       {}", parts.join(", "));
            }
            match report.r() {
                Some(r) => outln!(out, "r = {r} (agree)"),
                None => outln!(out, "methods disagree"),
            }
        }
    }
    Ok(agree)
}

fn tsv_row(report: &CountReport) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        report.n,
        report.p,
        report.exponent,
        decimal(&report.r_enumerated),
        decimal(&report.r_closed_form),
        decimal(&report.r_series),
        if report.agree() { "yes" } else { "no" }
    )
}

fn cmd_zeta(args: &ZetaArgs, out: &mut String) -> Result<bool, Error> {
    let f = zeta_closed_form(args.n)?;
    let abscissa = f
        .abscissa()
        .ok_or_else(|| Error::InvalidArgument("zeta function has no poles".to_string()))?;
    let expected = Monomial::new(1, args.n as i64 - 1, 0);
    let eq = functional_equation_of(&f);
    let holds = eq.holds_with(&expected);
    let series = match (args.p, args.series) {
        (Some(p), Some(n_max)) => {
            PrimePower::new(p, 0)?;
            Some((p, series_coefficients(&f.to_rational(), p, n_max)?))
        }
        _ => None,
    };
    match args.format {
        Format::Json => {
            let mut v = json!({
                "n": args.n,
                "closed_form": f.render_text(),
                "rational": f.to_json(),
                "abscissa": abscissa.to_string(),
                "functional_equation": {
                    "holds": holds,
                    "factor": eq.factor.as_ref().map(ToString::to_string),
                },
            });
            if let Some((p, coeffs)) = &series {
                v["series"] = json!({
                    "p": p,
                    "coefficients": coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
                });
            }
            print_json(out, &v);
        }
        Format::Text | Format::Tsv => {
            outln!(out, "Z(p, t) = {}", f.render_text());
            outln!(out, "abscissa: {abscissa}");
            match (&eq.factor, holds) {
                (Some(m), true) => outln!(out, "functional equation: OK (factor {m})"),
                (Some(m), false) => outln!(
                    out,
                    "functional equation: FAILED (factor {m}, expected {expected})"
                ),
                (None, _) => outln!(out, "functional equation: FAILED (no monomial factor)"),
            }
            if let Some((p, coeffs)) = &series {
                let list: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
                outln!(out, "series at p={p}: {}", list.join(", "));
            }
        }
    }
    Ok(holds)
}

fn outcome_json(o: &PropertyOutcome) -> Value {
    json!({
        "suite": o.suite.name(),
        "property": o.property,
        "checked": o.checked,
        "passed": o.passed(),
        "counterexample": o.counterexample,
    })
}

fn cmd_verify(args: &VerifyArgs, out: &mut String) -> Result<bool, Error> {
    let target = match (args.n, args.p, args.exponent) {
        (Some(n), Some(p), Some(e)) => Some(Cell::new(n, p, e)),
        _ => None,
    };
    let outcomes = match args.suite.suite() {
        Some(suite) => run_suite(suite, target)?,
        None => run_all(target)?,
    };
    let passed = outcomes.iter().all(PropertyOutcome::passed);
    match args.format {
        Format::Json => print_json(
            out,
            &json!({
                "passed": passed,
                "properties": outcomes.iter().map(outcome_json).collect::<Vec<_>>(),
            }),
        ),
        Format::Text | Format::Tsv => {
            for o in &outcomes {
                outln!(out, "{o}");
            }
            let failed = outcomes.iter().filter(|o| !o.passed()).count();
            outln!(out, "{} passed, {failed} failed", outcomes.len() - failed);
        }
    }
    Ok(passed)
}

fn cmd_table(args: &TableArgs, out: &mut String) -> Result<bool, Error> {
    let opts = args.enumeration.options()?;
    let rows: Vec<(String, Option<String>)> = (0..=args.max_exponent)
        .map(
            |exponent| match count_with(args.n, args.p, exponent, &Method::ALL, opts) {
                Ok(report) => (tsv_row(&report), None),
                Err(e) => (
                    format!("{}\t{}\t{exponent}\t-\t-\t-\tno", args.n, args.p),
                    Some(e.to_string()),
                ),
            },
        )
        .collect();
    let any_error = rows.iter().any(|(_, e)| e.is_some());
    let mut header = "n\tp\tN\tr_enum\tr_closed\tr_series\tagree".to_string();
    if any_error {
        header.push_str("\terror");
    }
    outln!(out, "{header}");
    for (row, error) in &rows {
        match (any_error, error) {
            (false, _) => outln!(out, "{row}"),
            (true, e) => outln!(out, "{row}\t{}", e.as_deref().unwrap_or("")),
        }
    }
    Ok(!any_error && rows.iter().all(|(row, _)| row.ends_with("\tyes")))
}

fn cmd_dump(args: &DumpArgs, out: &mut String) -> Result<bool, Error> {
    if args.lambda.len() != args.n {
        return Err(Error::InvalidArgument(format!(
            "--lambda has {} entries but n = {}",
            args.lambda.len(),
            args.n
        )));
    }
    let pp = PrimePower::new(args.p, args.exponent)?;
    let spec = LambdaSpec::new(pp, args.lambda.clone())?;
    let rep = build_rep(&spec)?;
    print_json(out, &rep.to_json());
    Ok(true)
}
