use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{inner, ComplexMatrix, C64};
use crate::quantum::{DensityOperator, PvmBasis};

/// Postselection probabilities at or below this make a weak value undefined.
pub const POSTSELECTION_TOL: f64 = 1e-14;

/// Content fingerprints of the inputs a table was computed from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub state: u64,
    pub basis_a: u64,
    pub basis_b: u64,
}

/// FNV-1a over the bit patterns of the entries.
pub fn fingerprint(m: &ComplexMatrix) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        for byte in x.to_le_bytes() {
            h ^= u64::from(byte);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    eat(m.rows() as u64);
    eat(m.cols() as u64);
    for z in m.as_slice() {
        eat(z.re.to_bits());
        eat(z.im.to_bits());
    }
    h
}

/// Kirkwood-Dirac table `K(a, b) = Tr(Pi_b Pi_a rho)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KdDistribution {
    table: ComplexMatrix,
    provenance: Provenance,
}

impl KdDistribution {
    pub fn dim(&self) -> usize {
        self.table.rows()
    }

    pub fn table(&self) -> &ComplexMatrix {
        &self.table
    }

    pub fn get(&self, a: usize, b: usize) -> C64 {
        self.table[(a, b)]
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn total(&self) -> C64 {
        self.table.as_slice().iter().sum()
    }

    /// `sum_b K(a, b)` for each `a`.
    pub fn marginal_a(&self) -> Vec<C64> {
        (0..self.table.rows()).map(|a| (0..self.table.cols()).map(|b| self.table[(a, b)]).sum()).collect()
    }

    /// `sum_a K(a, b)` for each `b`.
    pub fn marginal_b(&self) -> Vec<C64> {
        (0..self.table.cols()).map(|b| (0..self.table.rows()).map(|a| self.table[(a, b)]).sum()).collect()
    }

    /// `(a, b, K(a, b))` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        let cols = self.table.cols();
        self.table.as_slice().iter().enumerate().map(move |(k, z)| (k / cols, k % cols, *z))
    }
}

pub(crate) fn check_dims(rho: &DensityOperator, a: &PvmBasis, b: &PvmBasis) -> Result<usize> {
    let d = rho.dim();
    a.check_dim(d)?;
    b.check_dim(d)?;
    Ok(d)
}

pub fn kd_distribution(rho: &DensityOperator, basis_a: &PvmBasis, basis_b: &PvmBasis) -> Result<KdDistribution> {
    check_dims(rho, basis_a, basis_b)?;
    let va = basis_a.matrix();
    let vb = basis_b.matrix();
    // W = Va^dagger rho Vb holds <a|rho|b>; O = Vb^dagger Va holds <b|a>.
    let w = &(&va.adjoint() * rho.matrix()) * vb;
    let o = &vb.adjoint() * va;
    let table = ComplexMatrix::from_fn(w.rows(), w.cols(), |a, b| o[(b, a)] * w[(a, b)]);
    let provenance =
        Provenance { state: fingerprint(rho.matrix()), basis_a: fingerprint(va), basis_b: fingerprint(vb) };
    Ok(KdDistribution { table, provenance })
}

/// Weak value `Tr(Pi_b Pi_a rho) / Tr(Pi_b rho)` of `Pi_a` postselected on `post`.
pub fn weak_value(a: usize, rho: &DensityOperator, basis_a: &PvmBasis, post: &[C64]) -> Result<C64> {
    let d = rho.dim();
    basis_a.check_dim(d)?;
    if a >= d {
        return Err(Error::IndexOutOfRange { index: a, dim: d });
    }
    if post.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: post.len() });
    }
    let p_b = rho.element(post, post).re;
    if !(p_b > POSTSELECTION_TOL) {
        return Err(Error::ZeroPostselectionProbability(p_b));
    }
    let ka = basis_a.ket(a);
    let joint = inner(post, &ka) * rho.element(&ka, post);
    Ok(joint / p_b)
}
