use alloc::format;
use alloc::vec::Vec;

use crate::error::Result;
use crate::optimizer::{
    commutator_sup, covariance_sup, outcome_probabilities, q_ncl, q_nre, qubit_analytic, OptConfig,
};
use crate::quantum::{kd::check_dims, kd_distribution, DensityOperator, PvmBasis};
use crate::report::BoundReport;

/// Slack allowed on trade-off checks.
pub const TRADEOFF_SLACK: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TradeoffKind {
    /// `Q_a Q_b >= sup |Tr([A, B] rho)|^2 / 4`.
    NreProduct,
    /// `Q_a + Q_b >= sup |Tr([A, B] rho)|`.
    NreAdditive,
    /// `(Q'_a + 1)(Q'_b + 1) >= sup` of the squared Robertson-Schroedinger bracket.
    NclProduct,
}

impl TradeoffKind {
    pub fn id(self) -> &'static str {
        match self {
            Self::NreProduct => "prop3",
            Self::NreAdditive => "additive",
            Self::NclProduct => "prop5",
        }
    }
}

fn fmt_spectrum(v: &[f64]) -> alloc::string::String {
    let parts: Vec<_> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("[{}]", parts.join(", "))
}

/// Checks one trade-off relation. For qubits the nonreality suprema come from
/// the closed form; otherwise all suprema are best-found and the report is
/// marked heuristic.
pub fn tradeoff_bound(
    rho: &DensityOperator,
    basis_a: &PvmBasis,
    basis_b: &PvmBasis,
    cfg: &OptConfig,
    kind: TradeoffKind,
) -> Result<BoundReport> {
    let d = check_dims(rho, basis_a, basis_b)?;
    let kd = kd_distribution(rho, basis_a, basis_b)?;
    let nre_pair = || -> Result<(f64, f64)> {
        if d == 2 {
            Ok((qubit_analytic(rho, basis_a)?.q_nre, qubit_analytic(rho, basis_b)?.q_nre))
        } else {
            Ok((q_nre(rho, basis_a, cfg)?.value, q_nre(rho, basis_b, cfg)?.value))
        }
    };
    let (lhs, rhs, witness) = match kind {
        TradeoffKind::NreProduct | TradeoffKind::NreAdditive => {
            let (qa, qb) = nre_pair()?;
            let (sup, s, t) = commutator_sup(&kd);
            let witness = format!("A={} B={}", fmt_spectrum(&s), fmt_spectrum(&t));
            if kind == TradeoffKind::NreProduct {
                (qa * qb, 0.25 * sup * sup, witness)
            } else {
                (qa + qb, sup, witness)
            }
        }
        TradeoffKind::NclProduct => {
            let qa = q_ncl(rho, basis_a, cfg)?.value;
            let qb = q_ncl(rho, basis_b, cfg)?.value;
            let p_a = outcome_probabilities(rho, basis_a);
            let p_b = outcome_probabilities(rho, basis_b);
            let (sup, x, y) = covariance_sup(&kd, &p_a, &p_b);
            ((qa + 1.0) * (qb + 1.0), sup * sup, format!("A={} B={}", fmt_spectrum(&x), fmt_spectrum(&y)))
        }
    };
    Ok(BoundReport::new(kind.id(), lhs, rhs, TRADEOFF_SLACK).heuristic(d > 2).with_witness(witness))
}
