use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use stable_cantor::arith::{gamma, parse_rational, Rat};
use stable_cantor::cantor::{criteria_report, difference_scan, parse_set_spec, CriteriaReport, PlacedCantorSet, Verdict};
use stable_cantor::recurrence::certificate::Certificate;
use stable_cantor::recurrence::options::{Fault, VerifyOptions, DEFAULT_GRID, DEFAULT_PIECES};
use stable_cantor::recurrence::oracle::{steer_point, OracleOptions};
use stable_cantor::recurrence::plot::{intervals_at, intervals_sweep, region_table, squares_at, Table};
use stable_cantor::recurrence::table::constants_table;
use stable_cantor::recurrence::theorem::verify_theorem2;
use stable_cantor::recurrence::{consts, RegionL};
use std::process::ExitCode;

const THEOREM_K: &str = r#"{"kind":"middle","p":{"gamma_exp":40}}"#;
const THEOREM_KP: &str = r#"{"kind":"middle","p":{"gamma_exp":31}}"#;

#[derive(Parser, Debug)]
#[command(name = "stable-cantor", version, about = "Middle Cantor sets, renormalization and the recurrence certificate")]
struct Cli {
    /// Significant digits in printed numbers.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(6..=50))]
    digits: u32,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Sample,
    Rigorous,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PlotKind {
    Region,
    Intervals,
    Squares,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Regenerate the printed constants beside their printed values.
    Constants,
    /// Thickness, dimension, linkedness and the classical criteria for a pair.
    Analyze {
        /// Set spec: inline JSON or a path. Defaults to the theorem pair.
        k: Option<String>,
        kp: Option<String>,
    },
    /// Run the recurrence certificate.
    Verify {
        #[arg(long, value_enum, default_value = "sample")]
        mode: ModeArg,
        /// Sample count, or subinterval count in rigorous mode.
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        grid: Option<u64>,
        /// Test hook: shift delta1 by this amount.
        #[arg(long, hide = true, allow_hyphen_values = true)]
        fault_delta1: Option<String>,
    },
    /// Finite-level difference set K - lambda K'.
    Difference {
        k: Option<String>,
        kp: Option<String>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 8)]
        level: u32,
    },
    /// Find an operator word taking (s, t) into the region interior.
    Steer {
        #[arg(allow_hyphen_values = true)]
        s: String,
        #[arg(allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value_t = 3)]
        max_cycles: usize,
        #[arg(long, default_value_t = 0)]
        min_cycles: usize,
    },
    /// CSV data for the region, the interval families or the squares.
    PlotData {
        #[arg(value_enum)]
        kind: PlotKind,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, default_value_t = 65, value_parser = clap::value_parser!(u64).range(2..))]
        grid: u64,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

type Outcome = Result<String, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Rationals plus `gamma^k` and the named scales.
fn number(text: &str) -> Result<Rat, Failure> {
    let c = consts();
    let t = text.trim();
    let named = match t {
        "s1" => Some(c.s1.clone()),
        "s2" => Some(c.s2.clone()),
        "s_lo" => Some(c.s_lo.clone()),
        "s_hi" => Some(c.s_hi.clone()),
        "gamma" => Some(c.gamma.clone()),
        _ => None,
    };
    if let Some(v) = named {
        return Ok(v);
    }
    if let Some(e) = t.strip_prefix("gamma^") {
        let e: i32 = e.parse().map_err(|_| usage(format!("bad exponent in {t:?}")))?;
        if e.abs() > 10_000 {
            return Err(usage("gamma exponent too large"));
        }
        return Ok(gamma().pow(e));
    }
    parse_rational(t).map_err(|e| usage(format!("{t:?}: {e}")))
}

fn set_spec(arg: Option<&str>, default: &str) -> Result<PlacedCantorSet, Failure> {
    let text = match arg {
        None => default.to_string(),
        Some(a) if a.trim_start().starts_with('{') => a.to_string(),
        Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?,
    };
    parse_set_spec(&text).map_err(|e| usage(format!("set spec: {e}")))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn cmd_constants(digits: u32, as_json: bool) -> Outcome {
    let rows = constants_table();
    if as_json {
        return Ok(pretty(&Value::Array(rows.iter().map(|e| e.to_json(digits)).collect())));
    }
    let mut out = format!("{:<22} {:<28} {:<26} {}\n", "id", "regenerated", "printed", "match");
    for e in &rows {
        let v = if e.lo == e.hi {
            e.lo.to_sig(digits)
        } else {
            format!("[{}, {}]", e.lo.to_sig(digits), e.hi.to_sig(digits))
        };
        let m = match e.paper_match {
            Some(true) => "yes",
            Some(false) => "NO",
            None => "-",
        };
        out += &format!("{:<22} {:<28} {:<26} {}\n", e.id, v, e.paper_value.as_deref().unwrap_or("-"), m);
    }
    let bad = rows.iter().filter(|e| e.paper_match == Some(false)).count();
    out += &format!("{} rows, {} differing from the printed digits\n", rows.len(), bad);
    Ok(out)
}

fn newhouse_line(r: &CriteriaReport, digits: u32) -> String {
    let prod = r.tau_product.to_sig(digits);
    let one = Rat::one();
    match r.newhouse {
        Verdict::Satisfied => format!("Newhouse test: stable intersection (linked, product {prod})"),
        Verdict::NotSatisfied => "Newhouse test: not applicable (unlinked)".to_string(),
        Verdict::Inconclusive if r.tau_product == one => format!("Newhouse test: inconclusive (product {prod}, boundary)"),
        Verdict::Inconclusive => format!("Newhouse test: inconclusive ({prod} < 1)"),
    }
}

fn cmd_analyze(k: Option<&str>, kp: Option<&str>, digits: u32, as_json: bool) -> Outcome {
    let k = set_spec(k, THEOREM_K)?;
    let kp = set_spec(kp, THEOREM_KP)?;
    let r = criteria_report(&k, &kp);
    if as_json {
        return Ok(pretty(&serde_json::to_value(&r).expect("serializable")));
    }
    let mut out = String::new();
    out += &format!("thickness: {}, {}\n", r.tau[0].to_sig(digits), r.tau[1].to_sig(digits));
    out += &format!("thickness product: {}\n", r.tau_product.to_sig(digits));
    out += &format!(
        "dimension: {:.9} + {:.9} = {:.9}{}\n",
        r.hd[0],
        r.hd[1],
        r.hd_sum,
        if r.hd_sum_exact { " (sign exact)" } else { "" }
    );
    out += &format!("linked: {}\n", r.linked);
    out += &format!("criterion I (dimension sum < 1): {}\n", r.dimension_test);
    out += &(newhouse_line(&r, digits) + "\n");
    out += &format!("criterion III (generic, dimension sum > 1): {}\n", r.generic);
    out += &format!(
        "lateral thickness products: {}, {} ({})\n",
        r.lateral_products[0].to_sig(digits),
        r.lateral_products[1].to_sig(digits),
        r.moreira
    );
    out += &format!("Omega member: {}\n", r.omega_member);
    Ok(out)
}

fn cmd_verify(mode: ModeArg, grid: Option<u64>, fault: Option<&str>, digits: u32, as_json: bool, to_file: bool) -> Outcome {
    let mut opts = match mode {
        ModeArg::Sample => VerifyOptions::sample(grid.map_or(DEFAULT_GRID, |g| g as usize)),
        ModeArg::Rigorous => VerifyOptions::rigorous(grid.map_or(DEFAULT_PIECES, |g| g as usize)),
    };
    if let Some(f) = fault {
        opts = opts.with_fault(Fault::Delta1Offset(number(f)?));
    }
    let cert = verify_theorem2(&opts);
    let body = if as_json || to_file {
        pretty(&cert.to_json(digits))
    } else {
        summary(&cert)
    };
    if cert.passed() {
        Ok(body)
    } else {
        // the certificate still goes out; the failing ids go to stderr
        let ids: Vec<&str> = cert.failures().iter().map(|e| e.id.as_str()).collect();
        Err(Failure::Check(format!("{body}\u{0}failed entries: {}", ids.join(", "))))
    }
}

fn summary(cert: &Certificate) -> String {
    let mut out = format!("{} ({} mode)\n", cert.title, cert.mode);
    for n in &cert.notes {
        out += &format!("note: {n}\n");
    }
    out += &format!(
        "{} entries, {} failed, {} differing from printed values\n",
        cert.entries.len(),
        cert.failures().len(),
        cert.paper_mismatches().len()
    );
    out += &format!("verdict: {}\n", if cert.passed() { "pass" } else { "fail" });
    out
}

fn cmd_difference(k: Option<&str>, kp: Option<&str>, lambda: &str, level: u32, digits: u32, as_json: bool) -> Outcome {
    let k = set_spec(k, THEOREM_K)?;
    let kp = set_spec(kp, THEOREM_KP)?;
    let lambda = number(lambda)?;
    if lambda.is_zero() {
        return Err(usage("lambda must be nonzero"));
    }
    let d = difference_scan(&k, &kp, &lambda, level).map_err(usage)?;
    let largest = d.largest().map(|iv| iv.len()).unwrap_or_else(Rat::zero);
    let gaps = d.gaps();
    let max_gap = gaps.iter().map(|g| g.len()).max();
    let min_gap = gaps.iter().map(|g| g.len()).min();
    let opt = |x: &Option<Rat>| x.as_ref().map(|v| v.to_sig(digits));
    if as_json {
        let ivs: Vec<Value> = d
            .intervals()
            .iter()
            .map(|iv| json!([iv.lo.to_sig(digits), iv.hi.to_sig(digits)]))
            .collect();
        return Ok(pretty(&json!({
            "level": level,
            "lambda": lambda.to_sig(digits),
            "intervals": ivs,
            "largest": largest.to_sig(digits),
            "gap_count": gaps.len(),
            "max_gap": opt(&max_gap),
            "min_gap": opt(&min_gap),
        })));
    }
    let mut out = String::new();
    for iv in d.intervals() {
        out += &format!("[{}, {}]\n", iv.lo.to_sig(digits), iv.hi.to_sig(digits));
    }
    out += &format!("intervals: {}\n", d.len());
    out += &format!("largest interval length: {}\n", largest.to_sig(digits));
    out += &format!(
        "gaps: {} (largest {}, smallest {})\n",
        gaps.len(),
        opt(&max_gap).unwrap_or_else(|| "-".into()),
        opt(&min_gap).unwrap_or_else(|| "-".into())
    );
    Ok(out)
}

fn cmd_steer(s: &str, t: &str, max_cycles: usize, min_cycles: usize, digits: u32, as_json: bool) -> Outcome {
    let s = number(s)?;
    let t = number(t)?;
    if !s.is_positive() {
        return Err(usage("s must be positive"));
    }
    let region = RegionL::new();
    if !region.contains(&s, &t, false) {
        eprintln!("warning: ({}, {}) is outside the region; trying anyway", s.to_sig(digits), t.to_sig(digits));
    }
    let opts = OracleOptions {
        max_cycles,
        min_cycles,
        ..OracleOptions::default()
    };
    let o = steer_point(&s, &t, &opts);
    let body = if as_json {
        pretty(&serde_json::to_value(&o).expect("serializable"))
    } else {
        let mut out = format!("word_K: {:?}\nword_Kp: {:?}\ncycles: {}\n", o.word_k, o.word_kp, o.cycles);
        if let Some((m, n)) = o.lattice_move {
            out += &format!("lattice move: ({m}, {n})\n");
        }
        out += &format!("in interior: {}\n", o.success);
        out
    };
    if o.success {
        Ok(body)
    } else {
        Err(Failure::Check(format!("{body}\u{0}no word found within {max_cycles} cycles")))
    }
}

fn cmd_plot(kind: PlotKind, s: Option<&str>, grid: u64, digits: u32) -> Outcome {
    let s = s.map(number).transpose()?;
    let table: Table = match (kind, s) {
        (PlotKind::Region, _) => region_table(digits),
        (PlotKind::Intervals, None) => intervals_sweep(grid as usize, digits),
        (PlotKind::Intervals, Some(s)) => intervals_at(&s, digits).map_err(usage)?,
        (PlotKind::Squares, Some(s)) => squares_at(&s, digits).map_err(usage)?,
        (PlotKind::Squares, None) => return Err(usage("squares needs --s")),
    };
    Ok(table.to_csv())
}

fn emit(body: &str, out: Option<&std::path::Path>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, body).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let d = cli.digits;
    let res = match &cli.cmd {
        Cmd::Constants => cmd_constants(d, cli.json),
        Cmd::Analyze { k, kp } => cmd_analyze(k.as_deref(), kp.as_deref(), d, cli.json),
        Cmd::Verify { mode, grid, fault_delta1 } => {
            cmd_verify(*mode, *grid, fault_delta1.as_deref(), d, cli.json, cli.out.is_some())
        }
        Cmd::Difference { k, kp, lambda, level } => {
            cmd_difference(k.as_deref(), kp.as_deref(), lambda, *level, d, cli.json)
        }
        Cmd::Steer { s, t, max_cycles, min_cycles } => cmd_steer(s, t, *max_cycles, *min_cycles, d, cli.json),
        Cmd::PlotData { kind, s, grid } => cmd_plot(*kind, s.as_deref(), *grid, d),
    };
    let out = cli.out.as_deref();
    match res {
        Ok(body) => match emit(&body, out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(Failure::Usage(m)) | Err(Failure::Check(m)) => {
                eprintln!("error: {m}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            let (body, msg) = m.split_once('\u{0}').unwrap_or(("", &m));
            if emit(body, out).is_err() {
                return ExitCode::from(2);
            }
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}
