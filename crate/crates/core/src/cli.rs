//! Command-line front end.

use std::fmt::Write as _;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::active_set::Method;
use crate::config::ConstructionConfig;
use crate::enumeration::DEFAULT_L_MAX;
use crate::error::{Error, Result};
use crate::notation::compress_members;
use crate::report::{run_construct, run_normalized, ConstructionReport};
use crate::subset::Subset;
use crate::weights::{SpaceExponent, WeightParams};

#[derive(Debug, Parser)]
#[command(
    name = "mdm-active",
    version,
    about = "Active sets for the multivariate decomposition method"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct one active set.
    Construct(ConstructArgs),
    /// Sizes and dimensions of active sets over a grid of (a, c).
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFormat {
    Csv,
    Table,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// Space exponent p: 1, 2, …, or inf.
    #[arg(long, value_parser = parse_p)]
    pub p: SpaceExponent,
    /// Weight decay a.
    #[arg(long, value_parser = parse_number)]
    pub a: f64,
    /// Weight scale c.
    #[arg(long, default_value = "1", value_parser = parse_number)]
    pub c: f64,
    /// Target error ε.
    #[arg(long, value_parser = parse_number)]
    pub eps: f64,
    #[arg(long, default_value = "opt", value_parser = parse_method)]
    pub method: Method,
    /// Use the normalized error ε·‖S‖.
    #[arg(long)]
    pub normalized: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub limits: LimitArgs,
    /// Print the members (default).
    #[arg(long, overrides_with = "no_list")]
    pub list: bool,
    /// Omit the members.
    #[arg(long = "no-list", overrides_with = "list")]
    pub no_list: bool,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct LimitArgs {
    /// Number of intervals searched.
    #[arg(long)]
    pub jmax: Option<usize>,
    /// Largest cardinality considered.
    #[arg(long, default_value_t = DEFAULT_L_MAX)]
    pub lmax: usize,
    /// Truncation point of the tail bounds.
    #[arg(long)]
    pub s: Option<u64>,
}

impl LimitArgs {
    pub fn config(&self) -> ConstructionConfig {
        ConstructionConfig {
            truncation: self.s,
            j_max: self.jmax,
            l_max: self.lmax,
            partition: None,
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_p)]
    pub p: SpaceExponent,
    #[arg(long, value_parser = parse_number)]
    pub eps: f64,
    /// Comma-separated values of a.
    #[arg(long, value_delimiter = ',', default_value = "4,3,2", value_parser = parse_number)]
    pub a: Vec<f64>,
    /// Comma-separated values of c.
    #[arg(long, value_delimiter = ',', default_value = "1/2,1,2", value_parser = parse_number)]
    pub c: Vec<f64>,
    #[arg(long, default_value = "opt", value_parser = parse_method)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
    pub format: SweepFormat,
    #[command(flatten)]
    pub limits: LimitArgs,
}

fn parse_p(s: &str) -> std::result::Result<SpaceExponent, String> {
    s.parse::<SpaceExponent>().map_err(|e| e.to_string())
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse::<Method>().map_err(|e| e.to_string())
}

/// A decimal number or a fraction `n/d`.
pub fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let value = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n
                .trim()
                .parse()
                .map_err(|_| format!("invalid number {s:?}"))?;
            let d: f64 = d
                .trim()
                .parse()
                .map_err(|_| format!("invalid number {s:?}"))?;
            n / d
        }
        None => s
            .trim()
            .parse()
            .map_err(|_| format!("invalid number {s:?}"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("invalid number {s:?}"))
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    params: &'a WeightParams,
    method: Method,
    eps: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized_eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    norm: Option<f64>,
    size: usize,
    d: usize,
    residual: f64,
    slack_bound: f64,
    intervals: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    members: Option<Vec<Subset>>,
}

pub fn render_json(report: &ConstructionReport, list: bool) -> String {
    let json = JsonReport {
        params: &report.params,
        method: report.method,
        eps: report.eps,
        normalized_eps: report.norm.map(|_| report.effective_eps),
        norm: report.norm,
        size: report.size,
        d: report.d,
        residual: report.residual,
        slack_bound: report.slack_bound,
        intervals: report.intervals,
        members: list.then(|| report.members()),
    };
    serde_json::to_string_pretty(&json).expect("report serializes")
}

pub fn render_text(report: &ConstructionReport, list: bool) -> String {
    let mut out = String::new();
    let p = &report.params;
    let _ = writeln!(out, "method:    {}", report.method);
    let _ = writeln!(
        out,
        "params:    p = {}, p* = {}, a = {}, c = {}",
        p.p(),
        p.p_star(),
        p.a(),
        p.c()
    );
    let _ = writeln!(out, "eps:       {}", report.eps);
    if let Some(norm) = report.norm {
        let _ = writeln!(out, "norm:      {norm} (eps' = {})", report.effective_eps);
    }
    let _ = writeln!(out, "size:      {}", report.size);
    let _ = writeln!(out, "d:         {}", report.d);
    let _ = writeln!(out, "residual:  {:e}", report.residual);
    let _ = writeln!(out, "slack:     {:e}", report.slack_bound);
    if let Some(s) = report.truncation {
        let _ = writeln!(out, "s:         {s}");
    }
    let _ = writeln!(out, "intervals: {}", report.intervals);
    if list {
        let _ = writeln!(out, "members:   {}", compress_members(&report.members()));
    }
    out
}

fn params_for(p: SpaceExponent, a: f64, c: f64) -> Result<WeightParams> {
    WeightParams::new(a, c, p)
}

pub fn run_construct_cmd(args: &ConstructArgs, out: &mut dyn Write) -> Result<()> {
    let params = params_for(args.p, args.a, args.c)?;
    let config = args.limits.config();
    let report = if args.normalized {
        run_normalized(&params, args.eps, args.method, &config)?
    } else {
        run_construct(&params, args.eps, args.method, &config)?
    };
    let list = !args.no_list;
    let text = match args.format {
        Format::Json => render_json(&report, list) + "\n",
        Format::Paper => compress_members(&report.members()) + "\n",
        Format::Text => {
            eprintln!("time: {:.3?}", report.wall_time);
            render_text(&report, list)
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::InvalidParams(format!("write failed: {e}")))
}

/// One cell of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepCell {
    pub a: f64,
    pub c: f64,
    pub outcome: std::result::Result<(usize, usize), Error>,
}

/// Runs every `(c, a)` cell on its own thread. Rows follow `c`, columns `a`.
pub fn sweep(
    p: SpaceExponent,
    eps: f64,
    a_values: &[f64],
    c_values: &[f64],
    method: Method,
    config: &ConstructionConfig,
) -> Vec<SweepCell> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = c_values
            .iter()
            .flat_map(|&c| a_values.iter().map(move |&a| (a, c)))
            .map(|(a, c)| {
                scope.spawn(move || {
                    let outcome = params_for(p, a, c)
                        .and_then(|params| run_construct(&params, eps, method, config))
                        .map(|r| (r.size, r.d));
                    SweepCell { a, c, outcome }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep cell panicked"))
            .collect()
    })
}

pub fn render_csv(cells: &[SweepCell]) -> String {
    let mut out = String::from("c,a,size,d\n");
    for cell in cells {
        match &cell.outcome {
            Ok((size, d)) => {
                let _ = writeln!(out, "{},{},{size},{d}", cell.c, cell.a);
            }
            Err(e) => {
                let msg = e.to_string().replace('"', "'");
                let _ = writeln!(out, "{},{},\"error: {msg}\",", cell.c, cell.a);
            }
        }
    }
    out
}

pub fn render_table(cells: &[SweepCell], a_values: &[f64], c_values: &[f64]) -> String {
    let mut out = String::new();
    for (title, pick) in [("size", 0usize), ("d", 1)] {
        let _ = write!(out, "{title:>8}");
        for a in a_values {
            let _ = write!(out, " {:>10}", format!("a={a}"));
        }
        out.push('\n');
        for &c in c_values {
            let _ = write!(out, "{:>8}", format!("c={c}"));
            for &a in a_values {
                let cell = cells.iter().find(|x| x.a == a && x.c == c);
                let text = match cell.map(|x| &x.outcome) {
                    Some(Ok((size, d))) => if pick == 0 { size } else { d }.to_string(),
                    _ => "error".to_string(),
                };
                let _ = write!(out, " {text:>10}");
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

pub fn run_sweep_cmd(args: &SweepArgs, out: &mut dyn Write) -> Result<()> {
    let cells = sweep(
        args.p,
        args.eps,
        &args.a,
        &args.c,
        args.method,
        &args.limits.config(),
    );
    for cell in &cells {
        if let Err(e) = &cell.outcome {
            eprintln!("a = {}, c = {}: {e}", cell.a, cell.c);
        }
    }
    let text = match args.format {
        SweepFormat::Csv => render_csv(&cells),
        SweepFormat::Table => render_table(&cells, &args.a, &args.c),
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::InvalidParams(format!("write failed: {e}")))
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let result = match &cli.command {
        Command::Construct(args) => run_construct_cmd(args, &mut lock),
        Command::Sweep(args) => run_sweep_cmd(args, &mut lock),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_and_fractions() {
        assert_eq!(parse_number("1/2"), Ok(0.5));
        assert_eq!(parse_number("1e-3"), Ok(1e-3));
        assert!(parse_number("x").is_err());
        assert!(parse_number("1/0").is_err());
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from([
            "mdm-active",
            "construct",
            "--p",
            "inf",
            "--a",
            "2",
            "--eps",
            "1e-2",
            "--method",
            "q-opt",
            "--format",
            "json",
            "--no-list",
        ])
        .unwrap();
        let Command::Construct(args) = cli.command else {
            panic!()
        };
        assert_eq!(args.p, SpaceExponent::Infinity);
        assert_eq!(args.c, 1.0);
        assert_eq!(args.method, Method::Qopt);
        assert!(args.no_list);
    }

    #[test]
    fn csv_layout() {
        let cells = vec![
            SweepCell {
                a: 4.0,
                c: 0.5,
                outcome: Ok((3, 1)),
            },
            SweepCell {
                a: 3.0,
                c: 0.5,
                outcome: Err(Error::CardinalityLimit { l_max: 2 }),
            },
        ];
        let csv = render_csv(&cells);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("c,a,size,d"));
        assert_eq!(lines.next(), Some("0.5,4,3,1"));
        assert!(lines.next().unwrap().starts_with("0.5,3,\"error:"));
    }
}
