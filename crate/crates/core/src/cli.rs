//! Command-line front end. Exit codes: 0 success, 1 usage error,
//! 2 verification failure.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::arith::frac_part;
use crate::error::Error;
use crate::numbertheory::{
    bernoulli2, closed_residue, cong5_table, cong7_table, pb2_residue, vsc_defect, ResidueTable,
};
use crate::polynum::{pb2_explicit, pc2_explicit, Pb2Index};
use crate::stirling::{Kind, StirlingTable};
use crate::verify::{all_passed, run_all, Config};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

/// Largest row index, subscript or half index accepted on the command line.
pub const MAX_INDEX: usize = 400;
pub const MAX_LEVEL: u32 = 32;
pub const MAX_ABS_K: i64 = 400;
pub const MAX_TABLE_ROWS: usize = 60;

#[derive(Parser, Debug)]
#[command(name = "levelstir", version, about = "Exact level-s Stirling numbers and level-2 poly-Bernoulli/poly-Cauchy numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Plain,
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Level-s Stirling number of either kind.
    Stirling {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        kind: u8,
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Level-2 poly-Bernoulli number B_n^(k); n is the (even) subscript.
    Pb2 {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Level-2 poly-Cauchy number C_n^(k); n is the (even) subscript.
    Pc2 {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Level-2 Bernoulli number B_n = B_n^(1); n is the (even) subscript.
    Bernoulli2 {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Tables of fractional parts, residues, Stirling triangles or values.
    Table {
        #[arg(value_enum)]
        which: TableKind,
        /// Largest subscript (frac, pb2, pc2) or index (cong --mod 6).
        #[arg(long)]
        max: Option<usize>,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long, default_value_t = 1)]
        level: u32,
        /// Last row of a Stirling triangle.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Von Staudt-Clausen type report for B_{2n}; n is the half index.
    Vsc {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Residue of B_{2n}^(-k) modulo m; n is the half index.
    Congruence {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Runs the identity verification suite.
    Verify {
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long, default_value_t = 15)]
        order: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableKind {
    Frac,
    Cong,
    Stirling1,
    Stirling2,
    Pb2,
    Pc2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Body {
    Value(String),
    Table { columns: Vec<String>, rows: Vec<Vec<String>> },
    Report { lines: Vec<String>, result: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct OutputRecord {
    command: &'static str,
    params: Vec<(&'static str, String)>,
    body: Body,
}

impl OutputRecord {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => match &self.body {
                Body::Value(v) => v.clone(),
                Body::Report { lines, .. } => lines.join("\n"),
                Body::Table { columns, rows } => plain_table(columns, rows),
            },
            Format::Csv => {
                let (columns, rows) = match &self.body {
                    Body::Table { columns, rows } => (columns.clone(), rows.clone()),
                    Body::Value(v) | Body::Report { result: v, .. } => {
                        let mut columns: Vec<String> = self.params.iter().map(|(k, _)| k.to_string()).collect();
                        columns.push("value".into());
                        let mut row: Vec<String> = self.params.iter().map(|(_, v)| v.clone()).collect();
                        row.push(v.clone());
                        (columns, vec![row])
                    }
                };
                let mut out = csv_line(&columns);
                for row in &rows {
                    out.push('\n');
                    out.push_str(&csv_line(row));
                }
                out
            }
            Format::Json => {
                let params: Map<String, Value> = self
                    .params
                    .iter()
                    .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
                    .collect();
                let mut obj = json!({ "command": self.command, "params": params });
                match &self.body {
                    Body::Value(v) | Body::Report { result: v, .. } => obj["result"] = json!(v),
                    Body::Table { columns, rows } => {
                        obj["columns"] = json!(columns);
                        obj["result"] = json!(rows);
                    }
                }
                obj.to_string()
            }
        }
    }
}

fn csv_line(cells: &[String]) -> String {
    cells
        .iter()
        .map(|c| {
            if c.contains([',', '"', '\n']) {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn plain_table(columns: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..columns.len())
        .map(|i| {
            rows.iter()
                .map(|r| r[i].len())
                .chain([columns[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let fmt_row = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = fmt_row(columns);
    for row in rows {
        out.push('\n');
        out.push_str(&fmt_row(row));
    }
    out
}

/// Failure of a single command, mapped onto an exit code.
enum Failure {
    Usage(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TheoremViolation(_) | Error::Inconsistency(_) => Failure::Verify(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn guard<T: PartialOrd + std::fmt::Display>(name: &str, value: T, max: T) -> Result<T, Failure> {
    if value > max {
        return Err(Failure::Usage(format!("--{name} {value} exceeds the limit {max}")));
    }
    Ok(value)
}

fn guard_k(k: i64) -> Result<i64, Failure> {
    if k.abs() > MAX_ABS_K {
        return Err(Failure::Usage(format!("--k {k} exceeds the limit {MAX_ABS_K} in absolute value")));
    }
    Ok(k)
}

fn guard_level(level: u32) -> Result<u32, Failure> {
    if level < 1 {
        return Err(Failure::Usage("--level must be at least 1".into()));
    }
    guard("level", level, MAX_LEVEL)
}

/// Runs the command line `argv` (including the program name), writing to the
/// given streams, and returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
            return code;
        }
    };
    if let Command::Verify { nmax, kmax, order, inject_fault } = cli.command {
        return verify(Config { nmax, kmax, order, inject_fault }, out, err);
    }
    let (format, result) = dispatch(cli.command);
    match result {
        Ok(record) => {
            let _ = writeln!(out, "{}", record.render(format));
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(err, "verification failure: {msg}");
            EXIT_VERIFY
        }
    }
}

/// Runs `argv` against the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn verify(cfg: Config, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if cfg.nmax > 20 || cfg.kmax > 8 || cfg.order > 40 {
        let _ = writeln!(err, "error: verify bounds are limited to --nmax 20, --kmax 8, --order 40");
        return EXIT_USAGE;
    }
    let results = run_all(&cfg);
    for r in &results {
        let _ = writeln!(out, "{}", r.line());
    }
    if all_passed(&results) {
        let _ = writeln!(out, "all identity groups passed");
        EXIT_OK
    } else {
        let failed = results.iter().filter(|r| !r.passed && !r.diagnostic).count();
        let _ = writeln!(out, "{failed} identity group(s) failed");
        EXIT_VERIFY
    }
}

fn dispatch(command: Command) -> (Format, Result<OutputRecord, Failure>) {
    match command {
        Command::Stirling { kind, level, n, k, fmt } => (fmt.format, stirling(kind, level, n, k)),
        Command::Pb2 { n, k, fmt } => (fmt.format, level2("pb2", n, k)),
        Command::Pc2 { n, k, fmt } => (fmt.format, level2("pc2", n, k)),
        Command::Bernoulli2 { n, fmt } => (fmt.format, bernoulli(n)),
        Command::Table { which, max, modulus, level, n, k, fmt } => {
            (fmt.format, table(which, max, modulus, level, n, k))
        }
        Command::Vsc { n, fmt } => (fmt.format, vsc(n)),
        Command::Congruence { modulus, n, k, fmt } => (fmt.format, congruence(modulus, n, k)),
        Command::Verify { .. } => unreachable!("handled before dispatch"),
    }
}

fn stirling(kind: u8, level: u32, n: usize, k: usize) -> Result<OutputRecord, Failure> {
    let level = guard_level(level)?;
    let n = guard("n", n, MAX_INDEX)?;
    let kind_enum = if kind == 1 { Kind::First } else { Kind::Second };
    let value = StirlingTable::shared(kind_enum, level)?.get(n, k);
    Ok(OutputRecord {
        command: "stirling",
        params: vec![
            ("kind", kind.to_string()),
            ("level", level.to_string()),
            ("n", n.to_string()),
            ("k", k.to_string()),
        ],
        body: Body::Value(value.to_string()),
    })
}

fn level2(command: &'static str, n: usize, k: i64) -> Result<OutputRecord, Failure> {
    let idx = Pb2Index::from_subscript(guard("n", n, MAX_INDEX)?, guard_k(k)?)?;
    let value = if command == "pb2" { pb2_explicit(idx.n, idx.k) } else { pc2_explicit(idx.n, idx.k) };
    Ok(OutputRecord {
        command,
        params: vec![("n", n.to_string()), ("k", k.to_string())],
        body: Body::Value(value.to_string()),
    })
}

fn bernoulli(n: usize) -> Result<OutputRecord, Failure> {
    let idx = Pb2Index::from_subscript(guard("n", n, MAX_INDEX)?, 1)?;
    Ok(OutputRecord {
        command: "bernoulli2",
        params: vec![("n", n.to_string())],
        body: Body::Value(bernoulli2(idx.n).to_string()),
    })
}

fn vsc(n: u64) -> Result<OutputRecord, Failure> {
    let n = guard("n", n, MAX_INDEX as u64)?;
    let report = vsc_defect(n)?;
    let sub = 2 * n;
    let mut lines = vec![
        format!("B_{sub} = {}", report.value),
        format!("frac(B_{sub}) = {}", frac_part(&report.value)),
    ];
    let primes: Vec<String> = report.terms.iter().map(|(p, _)| p.to_string()).collect();
    lines.push(format!("primes p with (p-1)/2 <= {n} and 2n+1 = 0 mod p: {}", primes.join(", ")));
    for (p, t) in &report.terms {
        lines.push(format!("  term for p = {p}: {t}"));
    }
    lines.push(format!("B_{sub} + sum of terms = {}", report.defect));
    lines.push(format!("defect = {}", report.reduced_defect));
    Ok(OutputRecord {
        command: "vsc",
        params: vec![("n", n.to_string())],
        body: Body::Report { lines, result: report.reduced_defect.to_string() },
    })
}

fn congruence(m: u64, n: usize, k: usize) -> Result<OutputRecord, Failure> {
    let n = guard("n", n, MAX_INDEX)?;
    let k = guard("k", k, MAX_INDEX)?;
    let residue = pb2_residue(n, k, m)?;
    if matches!(m, 5..=7) {
        let closed = closed_residue(n as u64, k as u64, m)?;
        if closed != residue {
            return Err(Failure::Verify(format!(
                "B_{}^(-{k}) = {residue} mod {m}, closed form gives {closed}",
                2 * n
            )));
        }
    }
    Ok(OutputRecord {
        command: "congruence",
        params: vec![("mod", m.to_string()), ("n", n.to_string()), ("k", k.to_string())],
        body: Body::Value(residue.to_string()),
    })
}

fn residue_rows(t: &ResidueTable) -> (Vec<String>, Vec<Vec<String>>) {
    let mut columns = vec![format!("n mod {}", t.row_period)];
    columns.extend((0..t.col_period).map(|c| format!("k={c} mod {}", t.col_period)));
    let rows = t
        .entries
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut cells = vec![r.to_string()];
            cells.extend(row.iter().map(u64::to_string));
            cells
        })
        .collect();
    (columns, rows)
}

fn table(
    which: TableKind,
    max: Option<usize>,
    modulus: Option<u64>,
    level: u32,
    n: Option<usize>,
    k: Option<i64>,
) -> Result<OutputRecord, Failure> {
    let mut params = Vec::new();
    let (columns, rows) = match which {
        TableKind::Frac => {
            let max = guard("max", max.unwrap_or(20), 2 * MAX_TABLE_ROWS)?;
            params.push(("max", max.to_string()));
            let rows = (0..=max / 2)
                .map(|h| {
                    let v = bernoulli2(h);
                    vec![(2 * h).to_string(), v.to_string(), frac_part(&v).to_string()]
                })
                .collect();
            (vec!["2n".into(), "B_2n".into(), "frac".into()], rows)
        }
        TableKind::Cong => {
            let m = modulus.ok_or_else(|| Failure::Usage("table cong needs --mod".into()))?;
            params.push(("mod", m.to_string()));
            match m {
                5 => residue_rows(&cong5_table()?),
                7 => residue_rows(&cong7_table()?),
                _ => {
                    let max = guard("max", max.unwrap_or(10), MAX_TABLE_ROWS)?;
                    params.push(("max", max.to_string()));
                    let t = ResidueTable::build(m, max, max, |n, k| pb2_residue(n, k, m))?;
                    let mut columns = vec!["n".to_string()];
                    columns.extend((1..=max).map(|k| format!("k={k}")));
                    // row/column 0 holds the representative n = max (k = max)
                    let rows = (1..=max)
                        .map(|n| {
                            let mut cells = vec![n.to_string()];
                            cells.extend((1..=max).map(|k| t.get(n, k).to_string()));
                            cells
                        })
                        .collect();
                    (columns, rows)
                }
            }
        }
        TableKind::Stirling1 | TableKind::Stirling2 => {
            let level = guard_level(level)?;
            let last = guard("n", n.unwrap_or(8), MAX_TABLE_ROWS)?;
            params.push(("level", level.to_string()));
            params.push(("n", last.to_string()));
            let kind = if matches!(which, TableKind::Stirling1) { Kind::First } else { Kind::Second };
            let t = StirlingTable::shared(kind, level)?;
            let mut columns = vec!["n".to_string()];
            columns.extend((0..=last).map(|k| format!("k={k}")));
            let rows = (0..=last)
                .map(|row| {
                    let mut cells = vec![row.to_string()];
                    cells.extend((0..=last).map(|k| t.get(row, k).to_string()));
                    cells
                })
                .collect();
            (columns, rows)
        }
        TableKind::Pb2 | TableKind::Pc2 => {
            let max = guard("max", max.unwrap_or(20), 2 * MAX_TABLE_ROWS)?;
            let k = guard_k(k.unwrap_or(1))?;
            params.push(("max", max.to_string()));
            params.push(("k", k.to_string()));
            let f = if matches!(which, TableKind::Pb2) { pb2_explicit } else { pc2_explicit };
            let rows = (0..=max / 2).map(|h| vec![(2 * h).to_string(), f(h, k).to_string()]).collect();
            (vec!["2n".into(), "value".into()], rows)
        }
    };
    let command = match which {
        TableKind::Frac => "table frac",
        TableKind::Cong => "table cong",
        TableKind::Stirling1 => "table stirling1",
        TableKind::Stirling2 => "table stirling2",
        TableKind::Pb2 => "table pb2",
        TableKind::Pc2 => "table pc2",
    };
    Ok(OutputRecord { command, params, body: Body::Table { columns, rows } })
}
