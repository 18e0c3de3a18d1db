//! The `boolbell` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 computation or I/O error.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use boolbell::bell::{
    max_violation_with, mermin_coefficients, mermin_function, MerminForm, ViolationOptions,
};
use boolbell::boolfn::{degree, mobius, TruthTable, MAX_TABLE_ARITY};
use boolbell::equivalence::classify;
use boolbell::polya::{count_nbar, cycle_index_jevons};
use boolbell::spectral::{
    nonlinearity_of_spectrum, uncertainty_parts, wht_fast, wht_naive, Uncertainty,
};
use boolbell::viz::{grid_csv, legend_csv, render, write_ppm, ColorMap, Metric};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTE: i32 = 2;

/// Significant digits for every printed float.
pub const FLOAT_DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "boolbell",
    version,
    about = "Boolean functions, Bell inequalities and their classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Walsh-Hadamard spectrum as a JSON array.
    Wht {
        #[command(flatten)]
        f: FunctionArgs,
        /// Use the O(4^n) definition instead of the butterfly.
        #[arg(long)]
        naive: bool,
    },
    /// ANF, degree, weight, nonlinearity and uncertainty as JSON.
    Analyze {
        #[command(flatten)]
        f: FunctionArgs,
    },
    /// Maximal quantum violation of one inequality, or CSV over all of F_n.
    Violation {
        #[arg(long)]
        n: usize,
        /// Decimal index or 0b truth-table bits.
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        index: Option<String>,
        /// Every function of arity n, as CSV rows `B,class,v`.
        #[arg(long)]
        all: bool,
        /// Stop a start when a sweep gains less than this.
        #[arg(long)]
        tol: Option<f64>,
        /// Number of pseudo-random starts.
        #[arg(long)]
        starts: Option<usize>,
    },
    /// Mermin coefficients and the matching function.
    Mermin {
        #[arg(long)]
        n: usize,
    },
    /// Equivalence classes under G_n as CSV plus a JSON summary line.
    Classify {
        #[arg(long)]
        n: usize,
        /// Add a space-separated member list to every row.
        #[arg(long)]
        members: bool,
    },
    /// Jevons cycle index and the class count with output negation.
    Polya {
        #[arg(long)]
        n: usize,
    },
    /// Square-grid picture of F_n as PPM, with a CSV legend next to it.
    Viz {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        metric: MetricArg,
        /// PPM output path; the legend goes to `<stem>.legend.csv`.
        #[arg(long)]
        out: PathBuf,
        /// Pixels per cell side.
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u16).range(1..))]
        scale: u16,
        /// Also write `B,i,j,metric` rows to this path.
        #[arg(long)]
        cells: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct FunctionArgs {
    #[arg(long)]
    n: usize,
    /// Decimal index or 0b truth-table bits (first bit is f at 2^n - 1).
    #[arg(long)]
    index: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MetricArg {
    Degree,
    Uncertainty,
    Class,
    Violation,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Degree => Metric::Degree,
            MetricArg::Uncertainty => Metric::Uncertainty,
            MetricArg::Class => Metric::Class,
            MetricArg::Violation => Metric::Violation,
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(boolbell::Error),
    Io(PathBuf, std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Compute(e) => write!(f, "error: {e}"),
            CliError::Io(path, e) => write!(f, "error: {}: {e}", path.display()),
        }
    }
}

impl From<boolbell::Error> for CliError {
    fn from(e: boolbell::Error) -> Self {
        CliError::Compute(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses `argv` (program name first), runs one subcommand and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let result = dispatch(cli.command).and_then(|text| {
        out.write_all(text.as_bytes())
            .map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e))
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            match e {
                CliError::Usage(_) => EXIT_USAGE,
                _ => EXIT_COMPUTE,
            }
        }
    }
}

fn dispatch(command: Command) -> CliResult<String> {
    match command {
        Command::Wht { f, naive } => {
            let t = parse_function(f.n, &f.index)?;
            let w = if naive { wht_naive(&t) } else { wht_fast(&t) };
            Ok(format!("{}\n", json!(w.coeffs())))
        }
        Command::Analyze { f } => analyze(&parse_function(f.n, &f.index)?),
        Command::Violation {
            n,
            index,
            all,
            tol,
            starts,
        } => {
            let mut opts = ViolationOptions::default();
            if let Some(tol) = tol {
                if !(tol > 0.0 && tol.is_finite()) {
                    return Err(CliError::Usage(format!(
                        "--tol must be positive, got {tol}"
                    )));
                }
                opts.tol = tol;
            }
            if let Some(starts) = starts {
                opts.random_starts = starts;
            }
            match index {
                Some(index) if !all => violation_one(&parse_function(n, &index)?, &opts),
                _ => violation_all(n, &opts),
            }
        }
        Command::Mermin { n } => mermin(n),
        Command::Classify { n, members } => classify_cmd(n, members),
        Command::Polya { n } => {
            let z = cycle_index_jevons(n)?;
            Ok(format!("Z_J{n} = {z}\nNbar_{n} = {}\n", count_nbar(n)?))
        }
        Command::Viz {
            n,
            metric,
            out,
            scale,
            cells,
        } => viz(n, metric.into(), &out, scale.into(), cells.as_deref()),
    }
}

/// Decimal `B_n(f)` for `n <= 6`, or `0b` followed by exactly `2^n` bits, `f(2^n - 1)` first.
fn parse_function(n: usize, text: &str) -> CliResult<TruthTable> {
    if let Some(bits) = text.strip_prefix("0b") {
        if n > MAX_TABLE_ARITY {
            return Err(boolbell::Error::ArityTooLarge {
                n,
                max: MAX_TABLE_ARITY,
                what: "truth tables",
            }
            .into());
        }
        if bits.len() != 1 << n {
            return Err(CliError::Usage(format!(
                "expected {} bits for n = {n}, got {}",
                1usize << n,
                bits.len()
            )));
        }
        let mut values = Vec::with_capacity(bits.len());
        for c in bits.chars().rev() {
            match c {
                '0' => values.push(false),
                '1' => values.push(true),
                other => return Err(CliError::Usage(format!("invalid bit '{other}' in --index"))),
            }
        }
        return Ok(TruthTable::from_values(&values)?);
    }
    let index: u64 = text
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid --index '{text}'")))?;
    Ok(TruthTable::from_index(n, index)?)
}

/// `x` rounded to [`FLOAT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let decimals = (FLOAT_DIGITS as i32 - 1 - x.abs().log10().floor() as i32).max(0) as usize;
    format!("{x:.decimals$}").parse().unwrap_or(x)
}

fn exact_uncertainty(u: &Uncertainty) -> String {
    format!("{}/{}", u.value.numer(), u.value.denom())
}

fn analyze(t: &TruthTable) -> CliResult<String> {
    let w = wht_fast(t);
    let u = uncertainty_parts(t);
    let v = json!({
        "n": t.arity(),
        "anf": mobius(t).monomials(),
        "degree": degree(t),
        "weight": t.weight(),
        "balanced": t.is_balanced(),
        "nonlinearity": nonlinearity_of_spectrum(&w),
        "NW": u.nw,
        "NDelta": u.ndelta,
        "uncertainty": exact_uncertainty(&u),
    });
    Ok(format!("{v}\n"))
}

fn violation_one(t: &TruthTable, opts: &ViolationOptions) -> CliResult<String> {
    let r = max_violation_with(t, opts)?;
    let phases: Vec<f64> = r.phases.phases().iter().map(|&p| round_sig(p)).collect();
    let v = json!({
        "n": t.arity(),
        "v": round_sig(r.value),
        "phases": phases,
        "starts": r.starts_used,
    });
    Ok(format!("{v}\n"))
}

fn violation_all(n: usize, opts: &ViolationOptions) -> CliResult<String> {
    let p = classify(n)?;
    let mut per_class = Vec::with_capacity(p.num_classes());
    for &r in p.representatives() {
        per_class.push(max_violation_with(&TruthTable::from_index(n, r)?, opts)?.value);
    }
    let mut out = String::from("B,class,v\n");
    for b in 0..1u64 << (1 << n) {
        let c = p.class_of(b);
        out.push_str(&format!("{b},{c},{}\n", round_sig(per_class[c])));
    }
    Ok(out)
}

fn mermin(n: usize) -> CliResult<String> {
    let m = mermin_coefficients(n)?;
    let f = mermin_function(n)?;
    let form = match MerminForm::of_arity(n) {
        MerminForm::Odd(r) => format!("odd, n mod 8 = {r}"),
        MerminForm::EvenRecursion => "even recursion".to_string(),
    };
    let index = f.index().map(Value::from).unwrap_or(Value::Null);
    let v = json!({ "n": n, "coefficients": m.coeffs(), "index": index, "form": form });
    Ok(format!("{v}\n"))
}

fn classify_cmd(n: usize, members: bool) -> CliResult<String> {
    let p = classify(n)?;
    let mut out = String::from(if members {
        "class,representative,size,members\n"
    } else {
        "class,representative,size\n"
    });
    for (c, (&r, &s)) in p.representatives().iter().zip(p.sizes()).enumerate() {
        out.push_str(&format!("{c},{r},{s}"));
        if members {
            let list: Vec<String> = p.members(c).iter().map(u64::to_string).collect();
            out.push_str(&format!(",{}", list.join(" ")));
        }
        out.push('\n');
    }
    out.push_str(&format!("{}\n", json!({ "n": n, "N_n": p.num_classes() })));
    Ok(out)
}

/// `<dir>/<stem>.legend.csv` next to the PPM.
pub fn legend_path(ppm: &Path) -> PathBuf {
    let stem = ppm
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    ppm.with_file_name(format!("{stem}.legend.csv"))
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    std::fs::write(path, bytes).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn viz(
    n: usize,
    metric: Metric,
    out: &Path,
    scale: usize,
    cells: Option<&Path>,
) -> CliResult<String> {
    let grid = render(n, metric)?;
    let colors = ColorMap::for_grid(&grid);
    write_file(out, &write_ppm(&grid, &colors, scale)?)?;
    let legend = legend_path(out);
    write_file(&legend, legend_csv(&colors).as_bytes())?;
    if let Some(path) = cells {
        write_file(path, grid_csv(&grid).as_bytes())?;
    }
    let v = json!({
        "n": n,
        "metric": metric.name(),
        "side": grid.side(),
        "values": colors.entries().len(),
        "ppm": out.display().to_string(),
        "legend": legend.display().to_string(),
    });
    Ok(format!("{v}\n"))
}
