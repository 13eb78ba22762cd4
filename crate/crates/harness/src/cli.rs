use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kdq_core::measures::{
    disturbance_term, l1_coherence, mse_sq_term, ncl, normalized_trace_norm_asymmetry, nre, robertson_bound,
    rotated_disturbance_term, rs_bound, trace_norm_asymmetry,
};
use kdq_core::optimizer::{
    commutator_sup, covariance_sup, delta, epsilon, outcome_probabilities, q_ncl, q_nre, qubit_analytic, sup_robertson,
    sup_rs, OptConfig, OptResult,
};
use kdq_core::quantum::kd_distribution;
use serde::Serialize;

use crate::error::{HarnessError, Result};
use crate::instance::{parse_instance, Instance};
use crate::report::{emit_report, kd_to_csv, real, to_json, ReportFormat};
use crate::suites::{appendix_c_scan, qubit_grid, run_suite, SuiteConfig};

pub const SEED_ENV: &str = "KDQ_SEED";
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "kdq", version, about = "Kirkwood-Dirac quasiprobability measures and bound verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Search {
    /// Master seed; falls back to $KDQ_SEED, then to 1.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
    /// Nelder-Mead convergence tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 2000)]
    pub max_iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanKind {
    /// Commutator supremum against its closed form on an (alpha, phi_z) grid.
    AppendixC,
    /// NRe and NCl of one qubit instance over an (alpha, beta) grid of bases.
    Grid,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// KD table and every fixed-input measure of an instance.
    Compute {
        instance: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Best-found suprema over the second basis for one instance.
    Optimize {
        instance: PathBuf,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        output: Output,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 20)]
        instances: usize,
        /// Dimensions cycled over instances, comma separated.
        #[arg(long, value_delimiter = ',')]
        dim: Vec<usize>,
        /// Allowed negative slack on inequalities with numeric suprema.
        #[arg(long, default_value_t = 1e-6)]
        slack: f64,
        /// Omit the wall time so repeated runs give identical output.
        #[arg(long)]
        comparison: bool,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        output: Output,
    },
    /// Qubit grid scans.
    Scan {
        #[arg(long, value_enum, default_value = "appendix-c")]
        kind: ScanKind,
        /// Qubit instance for `--kind grid`.
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Bloch radius for `--kind appendix-c`.
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        /// Azimuth of the second basis for `--kind appendix-c`.
        #[arg(long, default_value_t = FRAC_PI_2)]
        beta: f64,
        #[arg(long, default_value_t = 50)]
        resolution: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Write a random instance.
    Random {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Rank of the state; defaults to full rank.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Include a second random basis.
        #[arg(long)]
        with_b: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Seed from the flag, then the environment, then the default, with its source.
pub fn resolve_seed(flag: Option<u64>) -> Result<(u64, String)> {
    if let Some(s) = flag {
        return Ok((s, "flag".into()));
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(|s| (s, format!("env:{SEED_ENV}")))
            .map_err(|_| HarnessError::Config(format!("{SEED_ENV}={v} is not an unsigned integer"))),
        Err(_) => Ok((DEFAULT_SEED, "default".into())),
    }
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| HarnessError::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct KdEntry {
    a: usize,
    b: usize,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct ComputeOutput {
    label: String,
    dim: usize,
    kd: Vec<KdEntry>,
    measures: BTreeMap<&'static str, f64>,
}

fn compute(inst: &Instance) -> Result<(ComputeOutput, kdq_core::quantum::KdDistribution)> {
    let b = inst
        .basis_b
        .as_ref()
        .ok_or(HarnessError::Invariant { field: "basis_b", message: "compute needs a second basis".into() })?;
    let (rho, a) = (&inst.rho, &inst.basis_a);
    let kd = kd_distribution(rho, a, b)?;
    let mut m = BTreeMap::new();
    m.insert("nre", nre(&kd).value);
    m.insert("ncl", ncl(&kd).value);
    m.insert("l1_coherence_a", l1_coherence(rho, a)?.value);
    m.insert("l1_coherence_b", l1_coherence(rho, b)?.value);
    m.insert("mse_sq_term", mse_sq_term(rho, a, b)?.value);
    m.insert("disturbance_term", disturbance_term(rho, a, b)?.value);
    m.insert("rotated_disturbance_term", rotated_disturbance_term(rho, a, b)?.value);
    m.insert("commutator_sup", commutator_sup(&kd).0);
    m.insert("covariance_sup", covariance_sup(&kd, &outcome_probabilities(rho, a), &outcome_probabilities(rho, b)).0);
    if let Some(oa) = inst.observable_a() {
        m.insert("asymmetry_a", trace_norm_asymmetry(&oa, rho)?.value);
        m.insert("normalized_asymmetry_a", normalized_trace_norm_asymmetry(&oa, rho)?.value);
        if let Some(ob) = inst.observable_b() {
            m.insert("robertson_bound", robertson_bound(&oa, &ob, rho)?.value);
            m.insert("rs_bound", rs_bound(&oa, &ob, rho)?.value);
        }
    }
    let entries = kd.entries().map(|(a, b, z)| KdEntry { a, b, re: z.re, im: z.im }).collect();
    Ok((ComputeOutput { label: inst.label.clone(), dim: inst.dim(), kd: entries, measures: m }, kd))
}

#[derive(Serialize)]
struct SupEntry {
    name: &'static str,
    value: f64,
    converged: bool,
    restarts_used: usize,
    evaluations: usize,
}

#[derive(Serialize)]
struct OptimizeOutput {
    label: String,
    dim: usize,
    seed: u64,
    seed_source: String,
    config: OptConfig,
    results: Vec<SupEntry>,
}

fn optimize(inst: &Instance, cfg: &OptConfig) -> Result<Vec<SupEntry>> {
    let (rho, a) = (&inst.rho, &inst.basis_a);
    let entry = |name, r: OptResult| SupEntry {
        name,
        value: r.value,
        converged: r.converged,
        restarts_used: r.restarts_used,
        evaluations: r.evaluations,
    };
    let mut out = vec![
        entry("q_nre", q_nre(rho, a, cfg)?),
        entry("q_ncl", q_ncl(rho, a, cfg)?),
        entry("epsilon", epsilon(rho, a, cfg)?),
        entry("delta", delta(rho, a, cfg)?),
        entry("sup_robertson", sup_robertson(rho, a, cfg)?),
        entry("sup_rs", sup_rs(rho, a, cfg)?),
    ];
    if inst.dim() == 2 {
        let q = qubit_analytic(rho, a)?;
        out.push(SupEntry {
            name: "q_nre_analytic",
            value: q.q_nre,
            converged: true,
            restarts_used: 0,
            evaluations: 0,
        });
    }
    Ok(out)
}

fn rows_to_csv(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Runs one command and returns the process exit status: 0, or 1 when a
/// suite reports failures.
pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Compute { instance, output } => {
            let inst = parse_instance(&instance)?;
            let (res, kd) = compute(&inst)?;
            let text = match output.format {
                ReportFormat::Json => to_json(&res)?,
                ReportFormat::Csv => kd_to_csv(&kd)?,
                ReportFormat::Text => {
                    let mut s = format!("{} (d = {})\n", res.label, res.dim);
                    for (k, v) in &res.measures {
                        let _ = writeln!(s, "  {k:<26} {v:.12}");
                    }
                    for e in &res.kd {
                        let _ = writeln!(s, "  K({}, {}) = {:+.12} {:+.12}i", e.a, e.b, e.re, e.im);
                    }
                    s
                }
            };
            write_output(&output.out, &text)?;
            Ok(0)
        }
        Command::Optimize { instance, search, output } => {
            let inst = parse_instance(&instance)?;
            let (seed, seed_source) = resolve_seed(search.seed)?;
            let cfg = OptConfig {
                restarts: search.restarts,
                max_iterations: search.max_iterations,
                tolerance: search.tol,
                seed,
            };
            let results = optimize(&inst, &cfg)?;
            let res =
                OptimizeOutput { label: inst.label.clone(), dim: inst.dim(), seed, seed_source, config: cfg, results };
            let text = match output.format {
                ReportFormat::Json => to_json(&res)?,
                ReportFormat::Csv => rows_to_csv(
                    &["name", "value", "converged", "restarts_used", "evaluations"],
                    res.results.iter().map(|r| {
                        vec![
                            r.name.to_string(),
                            real(r.value),
                            r.converged.to_string(),
                            r.restarts_used.to_string(),
                            r.evaluations.to_string(),
                        ]
                    }),
                )?,
                ReportFormat::Text => {
                    let mut s =
                        format!("{} (d = {}, seed {} from {})\n", res.label, res.dim, res.seed, res.seed_source);
                    for r in &res.results {
                        let flag = if r.converged { "" } else { "  (not converged)" };
                        let _ = writeln!(s, "  {:<16} {:.12}{flag}", r.name, r.value);
                    }
                    s
                }
            };
            write_output(&output.out, &text)?;
            Ok(0)
        }
        Command::Verify { suite, instances, dim, slack, comparison, search, output } => {
            let (seed, seed_source) = resolve_seed(search.seed)?;
            let cfg = SuiteConfig {
                instances,
                dims: dim,
                seed,
                restarts: search.restarts,
                max_iterations: search.max_iterations,
                tolerance: search.tol,
                slack,
            };
            let mut report = run_suite(&suite, &cfg)?;
            report.seed_source = seed_source;
            if comparison {
                report = report.without_wall_time();
            }
            write_output(&output.out, &emit_report(&report, output.format)?)?;
            if output.out.is_some() {
                eprintln!("suite {}: {} checks, {} failures", report.suite_name, report.checks.len(), report.failures);
            }
            Ok(u8::from(report.failures > 0))
        }
        Command::Scan { kind, instance, r, beta, resolution, output } => {
            let text = match kind {
                ScanKind::AppendixC => {
                    let pts = appendix_c_scan(r, beta, resolution, resolution)?;
                    match output.format {
                        ReportFormat::Json => to_json(&pts)?,
                        ReportFormat::Csv => rows_to_csv(
                            &["alpha", "phi_z", "computed", "closed_form", "abs_error"],
                            pts.iter().map(|p| {
                                vec![
                                    real(p.alpha),
                                    real(p.phi_z),
                                    real(p.computed),
                                    real(p.closed_form),
                                    real((p.computed - p.closed_form).abs()),
                                ]
                            }),
                        )?,
                        ReportFormat::Text => {
                            let worst = pts.iter().map(|p| (p.computed - p.closed_form).abs()).fold(0.0, f64::max);
                            format!("appendix-c scan r = {r} beta = {beta}: {} points, max |computed - closed form| = {worst:.3e}\n", pts.len())
                        }
                    }
                }
                ScanKind::Grid => {
                    let path = instance.ok_or(HarnessError::Config("--kind grid needs --instance".into()))?;
                    let inst = parse_instance(&path)?;
                    let pts = qubit_grid(&inst.rho, &inst.basis_a, resolution, resolution)?;
                    match output.format {
                        ReportFormat::Json => to_json(&pts)?,
                        ReportFormat::Csv => rows_to_csv(
                            &["alpha", "beta", "nre", "ncl"],
                            pts.iter().map(|p| vec![real(p.alpha), real(p.beta), real(p.nre), real(p.ncl)]),
                        )?,
                        ReportFormat::Text => {
                            let best_nre = pts.iter().max_by(|x, y| x.nre.total_cmp(&y.nre)).expect("nonempty grid");
                            let best_ncl = pts.iter().max_by(|x, y| x.ncl.total_cmp(&y.ncl)).expect("nonempty grid");
                            format!(
                                "{}: {} points\n  max nre {:.9} at alpha {:.6} beta {:.6}\n  max ncl {:.9} at alpha {:.6} beta {:.6}\n",
                                inst.label,
                                pts.len(),
                                best_nre.nre,
                                best_nre.alpha,
                                best_nre.beta,
                                best_ncl.ncl,
                                best_ncl.alpha,
                                best_ncl.beta
                            )
                        }
                    }
                }
            };
            write_output(&output.out, &text)?;
            Ok(0)
        }
        Command::Random { dim, rank, seed, with_b, out } => {
            let (seed, _) = resolve_seed(seed)?;
            let inst = Instance::random(dim, rank.unwrap_or(dim), seed, with_b)?;
            write_output(&out, &inst.to_json())?;
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn dims_are_comma_separated() {
        let cli = Cli::try_parse_from(["kdq", "verify", "prop1", "--dim", "2,3", "--seed", "4"]).unwrap();
        match cli.command {
            Command::Verify { dim, search, .. } => {
                assert_eq!(dim, vec![2, 3]);
                assert_eq!(search.seed, Some(4));
            }
            _ => panic!("expected verify"),
        }
    }
}
