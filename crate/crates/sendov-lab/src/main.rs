//! Command-line laboratory over `sendov-core`: one-shot polynomial
//! queries, deformation sweeps, and the acceptance-suite runner.
//!
//! Exit codes: 0 success, 2 verdict-negative (not zero-maximal, not
//! linearly inextensible, failed acceptance criterion), 1 error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sendov_core::maximal::{classify_zero_maximal, Verdict, ZeroMaximalSpec};
use sendov_core::metrics::{delta, sendov_d};
use sendov_core::variation::{
    boundary_push_scan, derive_quartic_coefficients, quartic_family, quintic_family,
    DeformationFamily,
};
use sendov_core::{classify_inextensible, Complex64, InextVerdict};

use sendov_lab::config::{OutFormat, RunConfig};
use sendov_lab::formats::{pair, read_poly, roots_json};
use sendov_lab::verify;

#[derive(Parser)]
#[command(name = "sendov-lab", about = "Numerical laboratory for extremal polynomial families")]
struct Cli {
    /// Optional key=value config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for randomized sweeps (overrides config and SENDOV_LAB_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (defaults to standard output).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format for tabular subcommands.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Quartic,
    Quintic,
}

#[derive(Subcommand)]
enum Cmd {
    /// Roots of a polynomial file.
    Roots {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Bottleneck distance between two polynomials.
    Delta {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "with")]
        other: PathBuf,
    },
    /// Sendov objective d(p) and its achieving zero.
    Sendov {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Membership test for the 0-maximal families.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Classification tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// First-order extensibility of the Sendov objective.
    Inextensible {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Sweep a deformation family and report growth of d.
    Deform {
        #[arg(value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 1e-3)]
        a_min: f64,
        #[arg(long, default_value_t = 1e-2)]
        a_max: f64,
        #[arg(long, default_value_t = 12)]
        steps: usize,
        /// Worker threads for the sweep.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Re-derive the quartic deformation coefficients numerically.
    DeriveQuartic,
    /// Scan |r_zeta|_zeta over boundary zeros for a range of degrees.
    PushScan {
        #[arg(long, default_value_t = 5)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Run acceptance criteria (all, or a single 1-based id).
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = RunConfig::from_env()?;
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    if let Some(format) = cli.format {
        cfg.format = match format {
            Format::Json => OutFormat::Json,
            Format::Csv => OutFormat::Csv,
        };
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    let cfg = build_config(&cli)?;
    let mut code = ExitCode::SUCCESS;
    match &cli.cmd {
        Cmd::Roots { input } => {
            let p = read_poly(input)?;
            let roots = p.roots(cfg.tols.root_residual_tol).map_err(|e| anyhow::anyhow!("{e}"))?;
            emit(&cfg, &(roots_json(&roots) + "\n"))?;
        }
        Cmd::Delta { input, other } => {
            let p = read_poly(input)?;
            let q = read_poly(other)?;
            let result = delta(&p, &q).map_err(|e| anyhow::anyhow!("{e}"))?;
            let doc = json!({ "value": result.value });
            emit(&cfg, &format!("{doc:#}\n"))?;
        }
        Cmd::Sendov { input } => {
            let p = read_poly(input)?;
            let (value, witness) = sendov_d(&p).map_err(|e| anyhow::anyhow!("{e}"))?;
            let doc = json!({ "value": value, "witness": pair(witness) });
            emit(&cfg, &format!("{doc:#}\n"))?;
        }
        Cmd::Classify { input, tol } => {
            let p = read_poly(input)?;
            let tol = tol.unwrap_or(cfg.tols.classify_tol);
            if tol <= 0.0 {
                bail!("tolerance must be positive (got {tol})");
            }
            let cl = classify_zero_maximal(&p, tol);
            let verdict = match cl.verdict {
                Verdict::ZeroMaximalEven => "zero_maximal_even",
                Verdict::ZeroMaximalOdd => "zero_maximal_odd",
                Verdict::NotZeroMaximal => "not_zero_maximal",
            };
            let spec = cl.recovered.map(|s| match s {
                ZeroMaximalSpec::Even { m, theta } => json!({ "m": m, "theta": theta }),
                ZeroMaximalSpec::Odd { m, theta, lambda } => {
                    json!({ "m": m, "theta": theta, "lambda": lambda })
                }
            });
            let doc = json!({
                "verdict": verdict,
                "spec": spec,
                "max_residual": cl.residuals.max(),
            });
            emit(&cfg, &format!("{doc:#}\n"))?;
            if cl.verdict == Verdict::NotZeroMaximal {
                code = ExitCode::from(2);
            }
        }
        Cmd::Inextensible { input } => {
            let p = read_poly(input)?;
            let report =
                classify_inextensible(&p, &cfg.tols).map_err(|e| anyhow::anyhow!("{e}"))?;
            let verdict = match report.verdict {
                InextVerdict::LinearlyInextensible => "linearly_inextensible",
                InextVerdict::LinearlyExtensible => "linearly_extensible",
                InextVerdict::Inapplicable => "inapplicable",
            };
            let doc = json!({
                "verdict": verdict,
                "d": report.d,
                "achieving": report.achieving,
                "note": report.note,
            });
            emit(&cfg, &format!("{doc:#}\n"))?;
            if report.verdict != InextVerdict::LinearlyInextensible {
                code = ExitCode::from(2);
            }
        }
        Cmd::Deform { family, a_min, a_max, steps, jobs } => {
            let fam = match family {
                FamilyArg::Quartic => quartic_family(),
                FamilyArg::Quintic => quintic_family().0,
            };
            let rows = deform_sweep(&fam, *a_min, *a_max, *steps, *jobs)?;
            emit_table(&cfg, &["a", "d", "predicted", "residual"], &rows)?;
        }
        Cmd::DeriveQuartic => {
            let sol = derive_quartic_coefficients().map_err(|e| anyhow::anyhow!("{e}"))?;
            let doc = json!({
                "x1": sol.x1, "x2": sol.x2, "x3": sol.x3,
                "y1": sol.y1, "y2": sol.y2, "y3": sol.y3,
                "residuals": sol.residuals,
                "max_residual": sol.max_residual,
            });
            emit(&cfg, &format!("{doc:#}\n"))?;
        }
        Cmd::PushScan { n_min, n_max, grid } => {
            if *n_min < 4 || n_max < n_min {
                bail!("need 4 <= n_min <= n_max");
            }
            let rows: Vec<Vec<f64>> = (*n_min..=*n_max)
                .map(|n| {
                    let (max_v, gap) = boundary_push_scan(n, *grid);
                    vec![n as f64, max_v, gap]
                })
                .collect();
            emit_table(&cfg, &["n", "max_value", "gap"], &rows)?;
        }
        Cmd::Verify { suite } => {
            let outcomes = match suite.as_str() {
                "all" => verify::run_all(cfg.seed),
                single => {
                    let id: usize = single
                        .parse()
                        .with_context(|| format!("--suite must be 'all' or 1..13, got {single:?}"))?;
                    if !(1..=13).contains(&id) {
                        bail!("criterion id {id} out of range 1..13");
                    }
                    vec![verify::run_criterion(id, cfg.seed)]
                }
            };
            let mut text = String::new();
            let mut failed = false;
            for o in &outcomes {
                let status = if o.passed { "pass" } else { "FAIL" };
                text.push_str(&format!(
                    "criterion {:2} {:<28} {} ({:.2}s) — {}\n",
                    o.id, o.name, status, o.seconds, o.detail
                ));
                failed |= !o.passed;
            }
            emit(&cfg, &text)?;
            if failed {
                code = ExitCode::from(2);
            }
        }
    }
    Ok(code)
}

/// Evaluates the family on a log-spaced grid; rows ordered by input
/// index regardless of which worker produced them.
fn deform_sweep(
    family: &DeformationFamily,
    a_min: f64,
    a_max: f64,
    steps: usize,
    jobs: usize,
) -> Result<Vec<Vec<f64>>> {
    if !(a_min > 0.0 && a_max > a_min) || steps < 2 {
        bail!("need 0 < a-min < a-max and steps >= 2");
    }
    if jobs == 0 {
        bail!("jobs must be at least 1");
    }
    let grid: Vec<f64> = (0..steps)
        .map(|k| a_min * (a_max / a_min).powf(k as f64 / (steps as f64 - 1.0)))
        .collect();
    let c2 = family.predicted_c2.unwrap_or(0.0);
    let baseline = sendov_core::metrics::crit_dist(&family.baseline, Complex64::new(0.0, 0.0))
        .map_err(|e| anyhow::anyhow!("{e}"))?;

    let eval_one = |&a: &f64| -> Result<Vec<f64>> {
        let p = family.eval(a);
        // The deformed zero sits exactly at a for both built-in families.
        let d = sendov_core::metrics::crit_dist(&p, Complex64::new(a, 0.0))
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        let predicted = baseline + c2 * a * a;
        Ok(vec![a, d, predicted, d - predicted])
    };

    let workers = jobs.min(grid.len());
    if workers <= 1 {
        return grid.iter().map(eval_one).collect();
    }
    let mut rows: Vec<Option<Vec<f64>>> = vec![None; grid.len()];
    std::thread::scope(|scope| -> Result<()> {
        let mut handles = Vec::new();
        for w in 0..workers {
            let grid = &grid;
            handles.push(scope.spawn(move || -> Result<Vec<(usize, Vec<f64>)>> {
                let mut out = Vec::new();
                for i in (w..grid.len()).step_by(workers) {
                    out.push((i, eval_one(&grid[i])?));
                }
                Ok(out)
            }));
        }
        for h in handles {
            for (i, row) in h.join().expect("worker panicked")? {
                rows[i] = Some(row);
            }
        }
        Ok(())
    })?;
    Ok(rows.into_iter().map(|r| r.expect("all indices filled")).collect())
}

/// 17 significant digits, '.' decimal, locale-independent.
fn fmt_val(v: f64) -> String {
    format!("{v:.16e}")
}

fn emit_table(cfg: &RunConfig, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let text = match cfg.format {
        OutFormat::Csv => {
            let mut s = header.join(",") + "\n";
            for row in rows {
                let cells: Vec<String> = row.iter().map(|&v| fmt_val(v)).collect();
                s.push_str(&(cells.join(",") + "\n"));
            }
            s
        }
        OutFormat::Json => {
            let objs: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let mut obj = serde_json::Map::new();
                    for (k, &v) in header.iter().zip(row) {
                        obj.insert(k.to_string(), json!(v));
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            format!("{:#}\n", serde_json::Value::Array(objs))
        }
    };
    emit(cfg, &text)
}
