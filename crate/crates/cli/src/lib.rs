//! Command-line front end. [`run`] takes the argument list and output
//! streams so it can be driven from tests.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use lusztig_q::identities::{verify_all, verify_by_name, Report, Status, IDENTITY_NAMES};
use lusztig_q::{CartanType, Engine, Error, QPoly, RootSystem, Weight};

/// Exit status on success or passing verification.
pub const EXIT_OK: i32 = 0;
/// Exit status when an identity fails.
pub const EXIT_FAILED: i32 = 1;
/// Exit status for bad arguments or inputs.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Defining,
    Induction,
    Kernel,
}

#[derive(Debug, Parser)]
#[command(
    name = "lusztig-q",
    version,
    about = "Lusztig q-analogues of weight multiplicity"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    /// Allow Weyl groups above the default size limit (E7, E8, large ranks).
    #[arg(long, global = true)]
    unsafe_large_rank: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Root-system data: Cartan matrix, positive roots, θ, θ_s, ρ, exponents.
    Roots {
        #[arg(value_name = "TYPE")]
        cartan_type: String,
    },
    /// m_λ^μ(q) for one pair of weights.
    Qanalogue {
        #[arg(value_name = "TYPE")]
        cartan_type: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_weight)]
        lambda: Weight,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_weight)]
        mu: Weight,
        #[arg(long, value_enum, default_value = "defining")]
        method: Method,
    },
    /// Every weight of V(λ) with its multiplicity and q-analogue.
    Table {
        #[arg(value_name = "TYPE")]
        cartan_type: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_weight)]
        lambda: Weight,
    },
    /// Coefficients m_0^{-ν}(q) of the kernel for ν in Q+ up to a height.
    Cherednik {
        #[arg(value_name = "TYPE")]
        cartan_type: String,
        #[arg(long)]
        max_height: u32,
    },
    /// Generalized exponents of V(λ), λ in the root lattice.
    GenExponents {
        #[arg(value_name = "TYPE")]
        cartan_type: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_weight)]
        lambda: Weight,
    },
    /// Check an identity (or `all`) on a root system.
    Verify {
        #[arg(value_name = "IDENTITY")]
        identity: String,
        #[arg(value_name = "TYPE")]
        cartan_type: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_weight)]
        lambda: Option<Weight>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_weight)]
        gamma: Option<Weight>,
    },
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    s.parse::<Weight>().map_err(|e| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(std::io::Error),
    Csv(csv::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Csv(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn build_engine(name: &str, unsafe_large: bool) -> CliResult<Engine> {
    let ct: CartanType = name.parse()?;
    Ok(Engine::new(RootSystem::with_options(ct, unsafe_large)?)?)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    let fmt = cli.format;
    let large = cli.unsafe_large_rank;
    match &cli.command {
        Command::Roots { cartan_type } => {
            let ct: CartanType = cartan_type.parse()?;
            let rs = RootSystem::with_options(ct, large)?;
            roots(&rs, fmt, out)?;
        }
        Command::Qanalogue {
            cartan_type,
            lambda,
            mu,
            method,
        } => {
            let e = build_engine(cartan_type, large)?;
            let p = match method {
                Method::Defining => e.lusztig_q_analogue(lambda, mu)?,
                Method::Induction => e.q_analogue_by_induction(lambda, mu)?,
                Method::Kernel => e.q_analogue_via_kernel(lambda, mu)?,
            };
            qanalogue(&e, lambda, mu, &p, fmt, out)?;
        }
        Command::Table {
            cartan_type,
            lambda,
        } => {
            let e = build_engine(cartan_type, large)?;
            table(&e, lambda, fmt, out)?;
        }
        Command::Cherednik {
            cartan_type,
            max_height,
        } => {
            let e = build_engine(cartan_type, large)?;
            cherednik(&e, i64::from(*max_height), fmt, out)?;
        }
        Command::GenExponents {
            cartan_type,
            lambda,
        } => {
            let e = build_engine(cartan_type, large)?;
            let exps = e.generalized_exponents(lambda)?;
            gen_exponents(&e, lambda, &exps, fmt, out)?;
        }
        Command::Verify {
            identity,
            cartan_type,
            lambda,
            gamma,
        } => {
            if identity != "all" && !IDENTITY_NAMES.contains(&identity.as_str()) {
                return Err(Error::Parse(format!(
                    "unknown identity '{identity}'; expected all or one of {}",
                    IDENTITY_NAMES.join(", ")
                ))
                .into());
            }
            let e = build_engine(cartan_type, large)?;
            let reports = if identity == "all" {
                verify_all(&e)?
            } else {
                verify_by_name(&e, identity, lambda.as_ref(), gamma.as_ref())?
            };
            verify_output(&reports, fmt, out)?;
            if reports.iter().any(|r| r.status == Status::Fail) {
                return Ok(EXIT_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| CliError::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn write_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(&mut *out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn latex_escape(s: &str) -> String {
    s.replace('_', "\\_")
}

/// Descending powers, e.g. `q^{3} + q^{2} - q`.
pub fn latex_poly(p: &QPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (e, c)) in p.terms().rev().enumerate() {
        let text = c.to_string();
        let neg = text.starts_with('-');
        let abs = text.trim_start_matches('-').to_string();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let coeff = if abs == "1" && e != 0 {
            String::new()
        } else {
            abs
        };
        let var = match e {
            0 => String::new(),
            1 => "q".into(),
            _ => format!("q^{{{e}}}"),
        };
        s.push_str(&coeff);
        s.push_str(&var);
    }
    s
}

fn latex_table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> CliResult<()> {
    writeln!(out, "\\begin{{tabular}}{{{}}}", "l".repeat(header.len()))?;
    writeln!(out, "\\hline")?;
    writeln!(out, "{} \\\\", header.join(" & "))?;
    writeln!(out, "\\hline")?;
    for row in rows {
        writeln!(out, "{} \\\\", row.join(" & "))?;
    }
    writeln!(out, "\\hline")?;
    writeln!(out, "\\end{{tabular}}")?;
    Ok(())
}

fn weight_tex(w: &Weight) -> String {
    format!("$({w})$")
}

fn roots(rs: &RootSystem, fmt: Format, out: &mut dyn Write) -> CliResult<()> {
    let rows: Vec<Vec<String>> = rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(k, root)| {
            vec![
                format!("{root:?}").replace(' ', ""),
                rs.positive_roots_as_weights()[k].to_string(),
                rs.heights()[k].to_string(),
                if rs.is_short_root(k) { "short" } else { "long" }.to_string(),
            ]
        })
        .collect();
    match fmt {
        Format::Text => {
            writeln!(out, "type: {}", rs.name())?;
            writeln!(out, "rank: {}", rs.rank())?;
            writeln!(out, "cartan matrix:")?;
            for row in rs.cartan() {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                writeln!(out, "  {}", cells.join(""))?;
            }
            writeln!(out, "symmetrizer: {:?}", rs.symmetrizer())?;
            writeln!(out, "weyl group order: {}", rs.weyl_order())?;
            writeln!(out, "coxeter number: {}", rs.coxeter_number())?;
            writeln!(out, "exponents: {:?}", rs.exponents())?;
            writeln!(out, "rho: {}", rs.rho())?;
            writeln!(out, "theta: {}", rs.theta())?;
            writeln!(out, "theta_s: {}", rs.theta_s())?;
            writeln!(out, "positive roots ({}):", rows.len())?;
            writeln!(
                out,
                "  {:<16} {:<16} {:>6}  length",
                "root coords", "weight", "height"
            )?;
            for r in &rows {
                writeln!(out, "  {:<16} {:<16} {:>6}  {}", r[0], r[1], r[2], r[3])?;
            }
        }
        Format::Json => {
            let roots: Vec<_> = rs
                .positive_roots()
                .iter()
                .enumerate()
                .map(|(k, root)| {
                    json!({
                        "root_coords": root,
                        "weight": rs.positive_roots_as_weights()[k],
                        "height": rs.heights()[k],
                        "short": rs.is_short_root(k),
                    })
                })
                .collect();
            let v = json!({
                "type": rs.name(),
                "rank": rs.rank(),
                "cartan_matrix": rs.cartan(),
                "symmetrizer": rs.symmetrizer(),
                "weyl_order": rs.weyl_order().to_string(),
                "coxeter_number": rs.coxeter_number(),
                "exponents": rs.exponents(),
                "rho": rs.rho(),
                "theta": rs.theta(),
                "theta_s": rs.theta_s(),
                "positive_roots": roots,
            });
            write_json(out, &v)?;
        }
        Format::Csv => write_csv(out, &["root_coords", "weight", "height", "length"], &rows)?,
        Format::Latex => {
            let rows: Vec<Vec<String>> = rows
                .into_iter()
                .map(|r| {
                    vec![
                        format!("${}$", r[0]),
                        format!("$({})$", r[1]),
                        r[2].clone(),
                        r[3].clone(),
                    ]
                })
                .collect();
            latex_table(out, &["root", "weight", "height", "length"], &rows)?;
        }
    }
    Ok(())
}

fn qanalogue(
    e: &Engine,
    lambda: &Weight,
    mu: &Weight,
    p: &QPoly,
    fmt: Format,
    out: &mut dyn Write,
) -> CliResult<()> {
    let name = e.root_system().name();
    match fmt {
        Format::Text => writeln!(out, "{p}")?,
        Format::Json => write_json(
            out,
            &json!({
                "type": name,
                "lambda": lambda,
                "mu": mu,
                "q_analogue": p,
                "text": p.to_string(),
            }),
        )?,
        Format::Csv => write_csv(
            out,
            &["type", "lambda", "mu", "q_analogue"],
            &[vec![
                name.to_string(),
                lambda.to_string(),
                mu.to_string(),
                p.to_string(),
            ]],
        )?,
        Format::Latex => writeln!(
            out,
            "$m_{{{}}}^{{{}}}(q) = {}$",
            weight_tex(lambda).trim_matches('$'),
            weight_tex(mu).trim_matches('$'),
            latex_poly(p)
        )?,
    }
    Ok(())
}

fn table(e: &Engine, lambda: &Weight, fmt: Format, out: &mut dyn Write) -> CliResult<()> {
    let rs = e.root_system();
    let chi = e.character(lambda)?;
    let mut rows = Vec::new();
    for (mu, m) in chi.sorted_from(rs, lambda) {
        let p = e.lusztig_q_analogue(lambda, &mu)?;
        rows.push((mu, m, p));
    }
    match fmt {
        Format::Text => {
            writeln!(
                out,
                "V({lambda}) of {}: dimension {}",
                rs.name(),
                chi.total()
            )?;
            let width = rows
                .iter()
                .map(|(mu, _, _)| mu.to_string().len())
                .max()
                .unwrap_or(6)
                .max(6);
            writeln!(out, "{:<width$}  {:>4}  q-analogue", "weight", "mult")?;
            for (mu, m, p) in &rows {
                writeln!(out, "{:<width$}  {:>4}  {}", mu.to_string(), m, p)?;
            }
        }
        Format::Json => {
            let entries: Vec<_> = rows
                .iter()
                .map(|(mu, m, p)| json!({"weight": mu, "multiplicity": m, "q_analogue": p, "text": p.to_string()}))
                .collect();
            write_json(
                out,
                &json!({"type": rs.name(), "lambda": lambda, "dimension": chi.total().to_string(), "weights": entries}),
            )?;
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(mu, m, p)| vec![mu.to_string(), m.to_string(), p.to_string()])
                .collect();
            write_csv(out, &["weight", "multiplicity", "q_analogue"], &rows)?;
        }
        Format::Latex => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(mu, m, p)| {
                    vec![
                        weight_tex(mu),
                        m.to_string(),
                        format!("${}$", latex_poly(p)),
                    ]
                })
                .collect();
            latex_table(
                out,
                &["$\\mu$", "$m_\\lambda^\\mu$", "$m_\\lambda^\\mu(q)$"],
                &rows,
            )?;
        }
    }
    Ok(())
}

/// Root-coordinate vectors with nonnegative entries and sum `1..=max`,
/// ordered by height and then lexicographically.
fn cone_points(rank: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    fn go(i: usize, left: i64, cur: &mut Vec<i64>, rank: usize, out: &mut Vec<Vec<i64>>) {
        if i == rank {
            out.push(cur.clone());
            return;
        }
        for c in 0..=left {
            cur.push(c);
            go(i + 1, left - c, cur, rank, out);
            cur.pop();
        }
    }
    go(0, max, &mut Vec::new(), rank, &mut out);
    out.retain(|v| v.iter().any(|x| *x != 0));
    out.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    out
}

fn cherednik(e: &Engine, max: i64, fmt: Format, out: &mut dyn Write) -> CliResult<()> {
    let rs = e.root_system();
    let mut rows = Vec::new();
    for v in cone_points(rs.rank(), max) {
        let nu = rs.root_to_weight_basis(&v);
        let p = e.cherednik_coefficient(&nu)?;
        rows.push((v, nu, p));
    }
    match fmt {
        Format::Text => {
            writeln!(
                out,
                "{:<16} {:<16} {:>6}  m_0^(-nu)(q)",
                "nu (roots)", "nu (weight)", "height"
            )?;
            for (v, nu, p) in &rows {
                let rc = format!("{v:?}").replace(' ', "");
                writeln!(
                    out,
                    "{:<16} {:<16} {:>6}  {}",
                    rc,
                    nu.to_string(),
                    v.iter().sum::<i64>(),
                    p
                )?;
            }
        }
        Format::Json => {
            let entries: Vec<_> = rows
                .iter()
                .map(|(v, nu, p)| {
                    json!({"root_coords": v, "weight": nu, "height": v.iter().sum::<i64>(), "coefficient": p, "text": p.to_string()})
                })
                .collect();
            write_json(
                out,
                &json!({"type": rs.name(), "max_height": max, "coefficients": entries}),
            )?;
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(v, nu, p)| {
                    vec![
                        format!("{v:?}").replace(' ', ""),
                        nu.to_string(),
                        v.iter().sum::<i64>().to_string(),
                        p.to_string(),
                    ]
                })
                .collect();
            write_csv(
                out,
                &["root_coords", "weight", "height", "coefficient"],
                &rows,
            )?;
        }
        Format::Latex => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(v, nu, p)| {
                    vec![
                        format!("${}$", format!("{v:?}").replace(' ', "")),
                        weight_tex(nu),
                        v.iter().sum::<i64>().to_string(),
                        format!("${}$", latex_poly(p)),
                    ]
                })
                .collect();
            latex_table(
                out,
                &["$\\nu$", "weight", "height", "$m_0^{-\\nu}(q)$"],
                &rows,
            )?;
        }
    }
    Ok(())
}

fn gen_exponents(
    e: &Engine,
    lambda: &Weight,
    exps: &[i64],
    fmt: Format,
    out: &mut dyn Write,
) -> CliResult<()> {
    let name = e.root_system().name();
    match fmt {
        Format::Text => writeln!(out, "{exps:?}")?,
        Format::Json => write_json(
            out,
            &json!({"type": name, "lambda": lambda, "exponents": exps}),
        )?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = exps.iter().map(|x| vec![x.to_string()]).collect();
            write_csv(out, &["exponent"], &rows)?;
        }
        Format::Latex => {
            let parts: Vec<String> = exps.iter().map(|x| x.to_string()).collect();
            writeln!(out, "${}$", parts.join(", "))?;
        }
    }
    Ok(())
}

fn inputs_str(r: &Report) -> String {
    r.inputs
        .iter()
        .map(|(k, v)| format!("{k}=({v})"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn verify_output(reports: &[Report], fmt: Format, out: &mut dyn Write) -> CliResult<()> {
    match fmt {
        Format::Text => {
            for r in reports {
                let tag = match r.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                writeln!(
                    out,
                    "{tag} {} {} {}",
                    r.identity,
                    r.root_system,
                    inputs_str(r)
                )?;
                for f in &r.failures {
                    writeln!(
                        out,
                        "  {}: expected {}, got {}",
                        f.subject, f.expected, f.actual
                    )?;
                }
            }
            let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
            let skipped = reports
                .iter()
                .filter(|r| r.status == Status::Skipped)
                .count();
            writeln!(
                out,
                "{} checks: {} passed, {} failed, {} skipped",
                reports.len(),
                reports.len() - failed - skipped,
                failed,
                skipped
            )?;
        }
        Format::Json => write_json(out, &reports)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.identity.clone(),
                        r.root_system.clone(),
                        inputs_str(r),
                        r.status.to_string(),
                        r.failures.len().to_string(),
                    ]
                })
                .collect();
            write_csv(
                out,
                &["identity", "root_system", "inputs", "status", "failures"],
                &rows,
            )?;
        }
        Format::Latex => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        latex_escape(&r.identity),
                        r.root_system.clone(),
                        latex_escape(&inputs_str(r)),
                        r.status.to_string(),
                    ]
                })
                .collect();
            latex_table(out, &["identity", "type", "inputs", "status"], &rows)?;
        }
    }
    Ok(())
}
