//! Seeded verification suites, one per inequality family.
//!
//! Instance `i` draws its state, bases and spectra from stream `i + 1` of the
//! suite seed and gets its own optimizer seed, so a suite run is a pure
//! function of its [`SuiteConfig`].

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use kdq_core::linalg::seeded_rng;
use kdq_core::measures::{
    disturbance_term, l1_coherence, ncl, normalized_trace_norm_asymmetry, nre, robertson_bound,
    rotated_disturbance_term, rs_bound,
};
use kdq_core::optimizer::{
    additive_closed_form, bloch_basis, commutator_sup, covariance_sup, delta, epsilon, max_trace_norm_asymmetry,
    outcome_probabilities, q_ncl, q_nre, qubit_analytic, sign_operator_witness, sup_robertson, sup_rs, tradeoff_bound,
    OptConfig, TradeoffKind,
};
use kdq_core::quantum::{johansen_decomposition, kd_distribution, DensityOperator, Observable, PvmBasis};
use kdq_core::BoundReport;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

pub const SUITE_NAMES: [&str; 16] = [
    "lemma1",
    "lemma2",
    "prop1",
    "prop2",
    "prop3",
    "prop4",
    "prop5",
    "additive",
    "cor-ordering",
    "cor5a",
    "cor5b",
    "cor6a",
    "cor6b",
    "johansen",
    "qubit-exact",
    "appendix-c",
];

/// Tolerance for exact identities and pointwise inequalities.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Tolerance for numeric suprema checked against qubit closed forms.
pub const QUBIT_TOL: f64 = 1e-5;
/// Tolerance for the unbiasedness of optimal qubit witnesses.
pub const MUB_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub instances: usize,
    /// Dimensions cycled over the instances; empty selects the suite default.
    pub dims: Vec<usize>,
    pub seed: u64,
    pub restarts: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
    /// Allowed negative slack for inequalities involving numeric suprema.
    pub slack: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let opt = OptConfig::default();
        Self {
            instances: 20,
            dims: Vec::new(),
            seed: 1,
            restarts: opt.restarts,
            max_iterations: opt.max_iterations,
            tolerance: opt.tolerance,
            slack: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite_name: String,
    pub instances: usize,
    pub checks: Vec<BoundReport>,
    pub failures: usize,
    pub seed: u64,
    /// Where the seed came from: `config`, `flag`, `env:KDQ_SEED` or `default`.
    pub seed_source: String,
    pub config: SuiteConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
}

impl SuiteReport {
    pub fn new(suite_name: impl Into<String>, config: SuiteConfig, checks: Vec<BoundReport>) -> Self {
        Self {
            suite_name: suite_name.into(),
            instances: config.instances,
            failures: checks.iter().filter(|c| !c.pass).count(),
            checks,
            seed: config.seed,
            seed_source: "config".into(),
            config,
            wall_time_secs: None,
        }
    }

    /// Drops the wall time so reports of identical runs compare equal.
    pub fn without_wall_time(mut self) -> Self {
        self.wall_time_secs = None;
        self
    }
}

fn default_dims(name: &str) -> Vec<usize> {
    match name {
        "qubit-exact" | "appendix-c" => vec![2],
        "lemma1" | "lemma2" => vec![2, 3, 4, 5],
        "johansen" => vec![2, 3, 4, 5, 6],
        _ => vec![2, 3, 4],
    }
}

struct Sample {
    d: usize,
    rho: DensityOperator,
    a: PvmBasis,
    b: PvmBasis,
    spectrum_a: Vec<f64>,
    spectrum_b: Vec<f64>,
}

impl Sample {
    fn draw(seed: u64, i: usize, d: usize) -> Result<Self> {
        let mut rng = seeded_rng(seed, i as u64 + 1);
        let rank = rng.random_range(1..=d);
        let rho = DensityOperator::random_with(&mut rng, d, rank)?;
        let a = PvmBasis::random_with(&mut rng, d)?;
        let b = PvmBasis::random_with(&mut rng, d)?;
        let spectrum_a = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let spectrum_b = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        Ok(Self { d, rho, a, b, spectrum_a, spectrum_b })
    }

    fn observables(&self) -> Result<(Observable, Observable)> {
        Ok((
            Observable::new(self.a.clone(), self.spectrum_a.clone())?,
            Observable::new(self.b.clone(), self.spectrum_b.clone())?,
        ))
    }
}

struct Ctx<'a> {
    cfg: &'a SuiteConfig,
    opt: OptConfig,
    tag: String,
    heuristic: bool,
}

impl Ctx<'_> {
    fn ineq(&self, id: &str, lhs: f64, rhs: f64) -> BoundReport {
        BoundReport::new(id, lhs, rhs, self.cfg.slack).heuristic(self.heuristic).with_witness(self.tag.clone())
    }

    fn exact(&self, id: &str, lhs: f64, rhs: f64) -> BoundReport {
        BoundReport::new(id, lhs, rhs, IDENTITY_TOL).with_witness(self.tag.clone())
    }

    fn identity(&self, id: &str, error: f64, tol: f64) -> BoundReport {
        BoundReport::identity(id, error, tol).with_witness(self.tag.clone())
    }

    /// Closed form for qubits, best-found otherwise.
    fn q_nre(&self, rho: &DensityOperator, a: &PvmBasis) -> Result<f64> {
        if rho.dim() == 2 {
            Ok(qubit_analytic(rho, a)?.q_nre)
        } else {
            Ok(q_nre(rho, a, &self.opt)?.value)
        }
    }

    fn retol(&self, mut r: BoundReport) -> BoundReport {
        r.pass = r.slack >= -self.cfg.slack;
        r.witness = format!("{} {}", self.tag, r.witness);
        r
    }
}

fn instance_checks(name: &str, cfg: &SuiteConfig, i: usize, d: usize) -> Result<Vec<BoundReport>> {
    let opt = OptConfig {
        restarts: cfg.restarts,
        max_iterations: cfg.max_iterations,
        tolerance: cfg.tolerance,
        seed: cfg.seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
    };
    let mut ctx = Ctx { cfg, opt, tag: format!("#{i} d={d}"), heuristic: true };
    if name == "appendix-c" {
        return appendix_c(&mut ctx, cfg.seed, i);
    }
    let s = Sample::draw(cfg.seed, i, d)?;
    let (rho, a, b) = (&s.rho, &s.a, &s.b);
    let mut out = Vec::new();
    match name {
        "lemma1" => {
            let (oa, ob) = s.observables()?;
            out.push(ctx.exact(
                "lemma1",
                nre(&kd_distribution(rho, a, b)?).value,
                robertson_bound(&oa, &ob, rho)?.value,
            ));
        }
        "lemma2" => {
            let (oa, ob) = s.observables()?;
            out.push(ctx.exact("lemma2", ncl(&kd_distribution(rho, a, b)?).value, rs_bound(&oa, &ob, rho)?.value));
        }
        "prop1" => {
            ctx.heuristic = s.d > 2;
            let lhs = ctx.q_nre(rho, a)?;
            out.push(ctx.ineq("prop1", lhs, sup_robertson(rho, a, &ctx.opt)?.value));
        }
        "prop2" => {
            ctx.heuristic = s.d > 2;
            let (asym, spectrum) = max_trace_norm_asymmetry(rho, a)?;
            let oa = Observable::new(a.clone(), spectrum)?;
            let ob = sign_operator_witness(&oa, rho)?;
            out.push(ctx.ineq("prop2", ctx.q_nre(rho, a)?, asym));
            let fixed = Observable::new(a.clone(), s.spectrum_a.clone())?;
            out.push(ctx.ineq(
                "prop2-fixed-a",
                ctx.q_nre(rho, a)?,
                normalized_trace_norm_asymmetry(&fixed, rho)?.value,
            ));
            let attained = robertson_bound(&oa, &ob, rho)?.value;
            out.push(ctx.identity("prop2-sign-operator", (attained - asym).abs(), IDENTITY_TOL));
        }
        "prop3" | "additive" | "prop5" => {
            let kind = match name {
                "prop3" => TradeoffKind::NreProduct,
                "additive" => TradeoffKind::NreAdditive,
                _ => TradeoffKind::NclProduct,
            };
            let r = tradeoff_bound(rho, a, b, &ctx.opt, kind)?;
            out.push(ctx.retol(r));
        }
        "prop4" => {
            out.push(ctx.ineq("prop4", q_ncl(rho, a, &ctx.opt)?.value, sup_rs(rho, a, &ctx.opt)?.value));
        }
        "cor-ordering" => {
            ctx.heuristic = s.d > 2;
            let l1 = l1_coherence(rho, a)?.value;
            let l1_b = l1_coherence(rho, b)?.value;
            let qn = ctx.q_nre(rho, a)?;
            let qr = sup_robertson(rho, a, &ctx.opt)?.value;
            out.push(ctx.ineq("cor2-l1-nre", l1, qn));
            out.push(ctx.ineq("cor2-nre-robertson", qn, qr));
            out.push(ctx.exact("cor1", l1, qr));
            let kd = kd_distribution(rho, a, b)?;
            let (comm, _, _) = commutator_sup(&kd);
            let (cov, _, _) = covariance_sup(&kd, &outcome_probabilities(rho, a), &outcome_probabilities(rho, b));
            out.push(ctx.exact("cor3", l1 * l1_b, 0.25 * comm * comm));
            out.push(ctx.exact("cor3-additive", l1 + l1_b, comm));
            out.push(ctx.exact("cor5", (l1 + 1.0) * (l1_b + 1.0), cov * cov));
            out.push(ctx.exact("cor5-additive", l1 + l1_b, cov - 2.0));
            ctx.heuristic = true;
            out.push(ctx.ineq("ceiling-ncl", l1, q_ncl(rho, a, &ctx.opt)?.value));
            out.push(ctx.ineq("cor4", l1, sup_rs(rho, a, &ctx.opt)?.value));
        }
        "cor5a" => {
            let eps = epsilon(rho, a, &ctx.opt)?.value;
            let qn = ctx.q_nre(rho, a)?;
            out.push(ctx.ineq("cor5a", eps, sup_robertson(rho, a, &ctx.opt)?.value));
            out.push(ctx.ineq("cor5a-nre", eps, qn));
            out.push(ctx.ineq("cor5a-dimension-weighted", (s.d as f64).sqrt() * eps, qn));
        }
        "cor5b" => {
            let ea = epsilon(rho, a, &ctx.opt)?.value;
            let eb = epsilon(rho, b, &ctx.opt)?.value;
            let (comm, _, _) = commutator_sup(&kd_distribution(rho, a, b)?);
            out.push(ctx.ineq("cor5b", ea * eb, 0.25 * comm * comm));
            out.push(ctx.ineq("cor5b-dimension-weighted", s.d as f64 * ea * eb, 0.25 * comm * comm));
        }
        "cor6a" => {
            let dl = delta(rho, a, &ctx.opt)?.value;
            out.push(ctx.ineq("cor6a", dl, sup_rs(rho, a, &ctx.opt)?.value));
            out.push(ctx.ineq("cor6a-ncl", dl, q_ncl(rho, a, &ctx.opt)?.value));
        }
        "cor6b" => {
            let da = delta(rho, a, &ctx.opt)?.value;
            let db = delta(rho, b, &ctx.opt)?.value;
            // sup of the square root in the bracket, without its factor 1/2
            let root = 2.0 * (sup_rs(rho, a, &ctx.opt)?.value + 1.0);
            out.push(ctx.ineq("cor6b", da * db, 0.25 * (root - 1.0) * (root - 1.0)));
        }
        "johansen" => {
            let kd = kd_distribution(rho, a, b)?;
            let terms = johansen_decomposition(rho, a, b)?;
            out.push(ctx.identity("johansen", terms.reconstruct().max_abs_diff(kd.table()), IDENTITY_TOL));
            out.push(ctx.identity("johansen-classical-sum", (terms.classical.sum() - 1.0).abs(), IDENTITY_TOL));
            let bound = 0.5 * disturbance_term(rho, a, b)?.value + 0.5 * rotated_disturbance_term(rho, a, b)?.value;
            out.push(ctx.exact("johansen-pointwise", bound, ncl(&kd).value));
        }
        "qubit-exact" => {
            let exact = qubit_analytic(rho, a)?;
            let numeric = q_nre(rho, a, &ctx.opt)?.value;
            let rob = sup_robertson(rho, a, &ctx.opt)?;
            out.push(ctx.identity("qubit-q_nre", (numeric - exact.q_nre).abs(), QUBIT_TOL));
            out.push(ctx.identity("qubit-sup-robertson", (rob.value - exact.q_nre).abs(), QUBIT_TOL));
            out.push(ctx.identity("qubit-l1", (l1_coherence(rho, a)?.value - exact.q_nre).abs(), IDENTITY_TOL));
            let at_b = nre(&kd_distribution(rho, a, &exact.optimal_b)?).value;
            out.push(ctx.identity("qubit-analytic-witness", (at_b - exact.q_nre).abs(), IDENTITY_TOL));
            if exact.phase_defined {
                let witness = rob.witness_basis.as_ref().expect("sup_robertson reports its witness");
                out.push(ctx.identity("qubit-mub-witness", witness.unbiasedness_defect(a), MUB_TOL));
            }
        }
        _ => return Err(HarnessError::UnknownSuite(name.into())),
    }
    Ok(out)
}

/// Instance 0 is the pure state unbiased with both measured bases; the rest
/// are random Bloch configurations against the computational basis.
fn appendix_c(ctx: &mut Ctx, seed: u64, i: usize) -> Result<Vec<BoundReport>> {
    let a = PvmBasis::computational(2);
    ctx.heuristic = false;
    if i == 0 {
        let rho = DensityOperator::from_bloch(1.0, 0.0, 0.0)?;
        let b = bloch_basis(FRAC_PI_2, FRAC_PI_2);
        let r = tradeoff_bound(&rho, &a, &b, &ctx.opt, TradeoffKind::NreAdditive)?;
        return Ok(vec![
            ctx.identity("appendix-c-mub-lhs", (r.lhs - 2.0).abs(), MUB_TOL),
            ctx.identity("appendix-c-mub-rhs", (r.rhs - 2.0).abs(), MUB_TOL),
            ctx.retol(r),
        ]);
    }
    let mut rng = seeded_rng(seed, i as u64 + 1);
    let r: f64 = rng.random_range(0.0..=1.0);
    let phi_z = rng.random_range(0.0..=PI);
    let chi = rng.random_range(0.0..2.0 * PI);
    let alpha = rng.random_range(0.0..=PI);
    let beta = rng.random_range(0.0..2.0 * PI);
    let rho = DensityOperator::from_bloch(r * phi_z.sin() * chi.cos(), r * phi_z.sin() * chi.sin(), r * phi_z.cos())?;
    let b = bloch_basis(alpha, beta);
    ctx.tag = format!("{} r={r:.6} phi_z={phi_z:.6} phi01={chi:.6} alpha={alpha:.6} beta={beta:.6}", ctx.tag);
    let (sup, _, _) = commutator_sup(&kd_distribution(&rho, &a, &b)?);
    let closed = additive_closed_form(r, phi_z, alpha, beta - chi);
    let report = tradeoff_bound(&rho, &a, &b, &ctx.opt, TradeoffKind::NreAdditive)?;
    Ok(vec![ctx.identity("appendix-c-closed-form", (sup - closed).abs(), MUB_TOL), ctx.retol(report)])
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if !SUITE_NAMES.contains(&name) {
        return Err(HarnessError::UnknownSuite(name.into()));
    }
    let dims = if cfg.dims.is_empty() { default_dims(name) } else { cfg.dims.clone() };
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(HarnessError::Config(format!("dimension {d} is below 2")));
    }
    if matches!(name, "qubit-exact" | "appendix-c") && dims.iter().any(|&d| d != 2) {
        return Err(HarnessError::Config(format!("suite `{name}` is defined for d = 2 only")));
    }
    if cfg.restarts == 0 || cfg.tolerance.is_nan() || cfg.tolerance <= 0.0 || cfg.slack.is_nan() || cfg.slack < 0.0 {
        return Err(HarnessError::Config("restarts, tolerance and slack must be positive".into()));
    }
    let start = Instant::now();
    let mut checks = Vec::new();
    for i in 0..cfg.instances {
        checks.extend(instance_checks(name, cfg, i, dims[i % dims.len()])?);
    }
    let mut report = SuiteReport::new(name, SuiteConfig { dims, ..cfg.clone() }, checks);
    report.wall_time_secs = Some(start.elapsed().as_secs_f64());
    Ok(report)
}

/// Pointwise check of the closed form on the `(alpha, phi_z)` grid: the state
/// has Bloch radius `r`, polar angle `phi_z` and `phi01 = 0`, and the second
/// basis has polar angle `alpha` and azimuth `beta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub alpha: f64,
    pub phi_z: f64,
    pub computed: f64,
    pub closed_form: f64,
}

pub fn appendix_c_scan(r: f64, beta: f64, n_alpha: usize, n_phi: usize) -> Result<Vec<ScanPoint>> {
    if !(0.0..=1.0).contains(&r) || n_alpha < 2 || n_phi < 2 {
        return Err(HarnessError::Config("scan needs 0 <= r <= 1 and at least 2 points per axis".into()));
    }
    let a = PvmBasis::computational(2);
    let mut out = Vec::with_capacity(n_alpha * n_phi);
    for i in 0..n_alpha {
        let alpha = PI * i as f64 / (n_alpha - 1) as f64;
        let b = bloch_basis(alpha, beta);
        for j in 0..n_phi {
            let phi_z = PI * j as f64 / (n_phi - 1) as f64;
            let rho = DensityOperator::from_bloch(r * phi_z.sin(), 0.0, r * phi_z.cos())?;
            let (computed, _, _) = commutator_sup(&kd_distribution(&rho, &a, &b)?);
            out.push(ScanPoint { alpha, phi_z, computed, closed_form: additive_closed_form(r, phi_z, alpha, beta) });
        }
    }
    Ok(out)
}

/// NRe and NCl of the table against every basis on an `(alpha, beta)` grid
/// relative to `basis_a`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub alpha: f64,
    pub beta: f64,
    pub nre: f64,
    pub ncl: f64,
}

pub fn qubit_grid(rho: &DensityOperator, basis_a: &PvmBasis, n_alpha: usize, n_beta: usize) -> Result<Vec<GridPoint>> {
    if rho.dim() != 2 || n_alpha < 2 || n_beta < 1 {
        return Err(HarnessError::Config("grid scans need a qubit instance and a nonempty grid".into()));
    }
    let mut out = Vec::with_capacity(n_alpha * n_beta);
    for i in 0..n_alpha {
        let alpha = PI * i as f64 / (n_alpha - 1) as f64;
        for j in 0..n_beta {
            let beta = 2.0 * PI * j as f64 / n_beta as f64;
            let b = kdq_core::optimizer::bloch_basis_in(basis_a, alpha, beta);
            let kd = kd_distribution(rho, basis_a, &b)?;
            out.push(GridPoint { alpha, beta, nre: nre(&kd).value, ncl: ncl(&kd).value });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(instances: usize) -> SuiteConfig {
        SuiteConfig { instances, restarts: 4, ..SuiteConfig::default() }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run_suite("prop9", &small(1)), Err(HarnessError::UnknownSuite(_))));
    }

    #[test]
    fn qubit_suites_reject_other_dimensions() {
        let cfg = SuiteConfig { dims: vec![3], ..small(1) };
        assert!(matches!(run_suite("qubit-exact", &cfg), Err(HarnessError::Config(_))));
    }

    #[test]
    fn failures_count_failing_checks() {
        let r = run_suite("cor5a", &SuiteConfig { dims: vec![2], ..small(3) }).unwrap();
        assert_eq!(r.failures, r.checks.iter().filter(|c| !c.pass).count());
        assert_eq!(r.instances, 3);
    }

    #[test]
    fn empty_suite_has_no_checks() {
        let r = run_suite("johansen", &small(0)).unwrap();
        assert!(r.checks.is_empty());
        assert_eq!(r.failures, 0);
    }

    #[test]
    fn exact_suites_pass() {
        for name in ["lemma1", "lemma2", "johansen", "qubit-exact", "appendix-c"] {
            let r = run_suite(name, &small(12)).unwrap();
            assert_eq!(r.failures, 0, "{name}: {:?}", r.checks.iter().find(|c| !c.pass));
        }
    }

    #[test]
    fn scan_matches_closed_form() {
        let pts = appendix_c_scan(0.8, 1.1, 7, 9).unwrap();
        assert_eq!(pts.len(), 63);
        assert!(pts.iter().all(|p| (p.computed - p.closed_form).abs() < 1e-12));
    }
}
