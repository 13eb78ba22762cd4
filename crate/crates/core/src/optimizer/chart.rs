//! Coordinates on the set of rank-one projective bases.
//!
//! A parameter vector `[theta_1..theta_m, phi_1..phi_m, chi_1..chi_{d-1}]`
//! (`m = d(d-1)/2`) decodes to `D(chi) T_1 ... T_m`, where each `T_k` is a
//! two-level rotation on adjacent rows `(p, p+1)`
//!
//! ```text
//! [ cos(theta/2)               sin(theta/2)            ]
//! [ e^{i phi} sin(theta/2)    -e^{i phi} cos(theta/2)  ]
//! ```
//!
//! and `D(chi) = diag(1, e^{i chi_1}, ...)`. The pair sequence is the one a
//! column-by-column reduction of a unitary visits, which is what makes
//! [`encode_pvm`] an exact inverse up to column phases.

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::quantum::PvmBasis;

#[derive(Clone, Debug, PartialEq)]
pub struct PvmParams {
    dim: usize,
    values: Vec<f64>,
}

impl PvmParams {
    pub fn count(d: usize) -> usize {
        d * d - 1
    }

    pub fn new(d: usize, values: Vec<f64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if values.len() != Self::count(d) {
            return Err(Error::BadParameterCount { expected: Self::count(d), found: values.len() });
        }
        Ok(Self { dim: d, values })
    }

    pub fn zeros(d: usize) -> Self {
        Self { dim: d, values: alloc::vec![0.0; Self::count(d)] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn decode(&self) -> PvmBasis {
        PvmBasis::from_unitary_unchecked(decode_unitary(self.dim, &self.values))
    }
}

/// Row pairs `(q - 1, q)` together with the column whose entry `q` they null.
pub(crate) fn rotation_pairs(d: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..d).flat_map(move |j| (j + 1..d).rev().map(move |q| (q - 1, q, j)))
}

pub(crate) fn decode_unitary(d: usize, values: &[f64]) -> ComplexMatrix {
    let m = d * (d - 1) / 2;
    let (thetas, rest) = values.split_at(m);
    let (phis, chis) = rest.split_at(m);
    let mut u = ComplexMatrix::identity(d);
    for (k, (p, q, _)) in rotation_pairs(d).enumerate() {
        let (s, c) = (0.5 * thetas[k]).sin_cos();
        let e = C64::from_polar(1.0, phis[k]);
        // U <- U T on columns p, q
        for row in 0..d {
            let (x, y) = (u[(row, p)], u[(row, q)]);
            u[(row, p)] = x * c + y * e * s;
            u[(row, q)] = x * s - y * e * c;
        }
    }
    for (i, chi) in chis.iter().enumerate() {
        let e = C64::from_polar(1.0, *chi);
        for col in 0..d {
            u[(i + 1, col)] *= e;
        }
    }
    u
}

/// Parameters decoding to `basis` (same projectors, possibly different column phases).
pub fn decode_pvm(params: &PvmParams, d: usize) -> Result<PvmBasis> {
    if params.values.len() != PvmParams::count(d) || params.dim != d {
        return Err(Error::BadParameterCount { expected: PvmParams::count(d), found: params.values.len() });
    }
    Ok(params.decode())
}

pub fn encode_pvm(basis: &PvmBasis) -> PvmParams {
    let d = basis.dim();
    let m = d * (d - 1) / 2;
    let mut w = basis.matrix().clone();
    let mut thetas = Vec::with_capacity(m);
    let mut phis = Vec::with_capacity(m);
    for (p, q, j) in rotation_pairs(d) {
        let (x, y) = (w[(p, j)], w[(q, j)]);
        let theta = 2.0 * y.norm().atan2(x.norm());
        let phi = if y.norm() == 0.0 {
            0.0
        } else if x.norm() == 0.0 {
            y.arg()
        } else {
            y.arg() - x.arg()
        };
        let (s, c) = (0.5 * theta).sin_cos();
        let e = C64::from_polar(1.0, -phi);
        // W <- T^dagger W on rows p, q
        for col in 0..d {
            let (a, b) = (w[(p, col)], w[(q, col)]);
            w[(p, col)] = a * c + b * e * s;
            w[(q, col)] = a * s - b * e * c;
        }
        thetas.push(theta);
        phis.push(phi);
    }
    let mut values = thetas;
    values.extend(phis);
    values.extend(core::iter::repeat(0.0).take(d - 1));
    PvmParams { dim: d, values }
}

/// Largest entrywise difference between the projectors of two bases.
pub fn projector_distance(a: &PvmBasis, b: &PvmBasis) -> f64 {
    (0..a.dim()).map(|k| a.projector(k).max_abs_diff(&b.projector(k))).fold(0.0, f64::max)
}
