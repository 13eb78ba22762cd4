//! Reference computations written directly from the definitions, with plain
//! nested-vector complex matrices and no shared code with `kdq-core`'s
//! linear algebra. The acceptance run compares the library against these.

use std::f64::consts::PI;

use kdq_core::linalg::ComplexMatrix;
use num_complex::Complex64 as C;

pub type Mat = Vec<Vec<C>>;

pub fn to_mat(m: &ComplexMatrix) -> Mat {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)]).collect()).collect()
}

pub fn zeros(d: usize) -> Mat {
    vec![vec![C::new(0.0, 0.0); d]; d]
}

pub fn mul(x: &Mat, y: &Mat) -> Mat {
    let d = x.len();
    let mut out = zeros(d);
    for i in 0..d {
        for k in 0..d {
            let xik = x[i][k];
            for j in 0..d {
                out[i][j] += xik * y[k][j];
            }
        }
    }
    out
}

pub fn adjoint(x: &Mat) -> Mat {
    let d = x.len();
    (0..d).map(|i| (0..d).map(|j| x[j][i].conj()).collect()).collect()
}

pub fn sub(x: &Mat, y: &Mat) -> Mat {
    x.iter().zip(y).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - b).collect()).collect()
}

pub fn trace(x: &Mat) -> C {
    (0..x.len()).map(|i| x[i][i]).sum()
}

/// `V diag(spectrum) V^dagger` for a basis given by the columns of `v`.
pub fn observable(v: &Mat, spectrum: &[f64]) -> Mat {
    let d = v.len();
    let mut out = zeros(d);
    for (k, &s) in spectrum.iter().enumerate() {
        for i in 0..d {
            for j in 0..d {
                out[i][j] += v[i][k] * v[j][k].conj() * s;
            }
        }
    }
    out
}

/// `K(a, b) = <b|a><a|rho|b>` for bases given as columns.
pub fn kd_table(rho: &Mat, va: &Mat, vb: &Mat) -> Mat {
    let d = rho.len();
    let mut k = zeros(d);
    for a in 0..d {
        for b in 0..d {
            let mut overlap = C::new(0.0, 0.0);
            let mut sandwich = C::new(0.0, 0.0);
            for i in 0..d {
                overlap += vb[i][b].conj() * va[i][a];
                for j in 0..d {
                    sandwich += va[i][a].conj() * rho[i][j] * vb[j][b];
                }
            }
            k[a][b] = overlap * sandwich;
        }
    }
    k
}

pub fn nre(k: &Mat) -> f64 {
    k.iter().flatten().map(|z| z.im.abs()).sum()
}

pub fn ncl(k: &Mat) -> f64 {
    k.iter().flatten().map(|z| z.norm()).sum::<f64>() - 1.0
}

/// Sum of off-diagonal moduli of `rho` in the basis.
pub fn l1_coherence(rho: &Mat, v: &Mat) -> f64 {
    let r = mul(&mul(&adjoint(v), rho), v);
    let mut s = 0.0;
    for (i, row) in r.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            if i != j {
                s += z.norm();
            }
        }
    }
    s
}

fn max_abs(spectrum: &[f64]) -> f64 {
    spectrum.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// `|Tr(B [A, rho])| / 2` with `A`, `B` scaled to unit operator norm.
pub fn robertson(rho: &Mat, va: &Mat, sa: &[f64], vb: &Mat, sb: &[f64]) -> f64 {
    let a = observable(va, &sa.iter().map(|x| x / max_abs(sa)).collect::<Vec<_>>());
    let b = observable(vb, &sb.iter().map(|x| x / max_abs(sb)).collect::<Vec<_>>());
    let comm = sub(&mul(&a, rho), &mul(rho, &a));
    0.5 * trace(&mul(&b, &comm)).norm()
}

/// Robertson-Schroedinger type bound with `X / max_i |x_i - <X>|`.
pub fn robertson_schroedinger(rho: &Mat, va: &Mat, sa: &[f64], vb: &Mat, sb: &[f64]) -> f64 {
    let shift_normalized = |v: &Mat, s: &[f64]| {
        let raw = observable(v, s);
        let mean = trace(&mul(&raw, rho)).re;
        let norm = s.iter().fold(0.0, |m: f64, x| m.max((x - mean).abs()));
        observable(v, &s.iter().map(|x| x / norm).collect::<Vec<_>>())
    };
    let a = shift_normalized(va, sa);
    let b = shift_normalized(vb, sb);
    let ab = mul(&a, &b);
    let ba = mul(&b, &a);
    let ea = trace(&mul(&a, rho));
    let eb = trace(&mul(&b, rho));
    let comm = trace(&mul(rho, &sub(&ab, &ba)));
    let anti = trace(&mul(rho, &ab)) + trace(&mul(rho, &ba)) - ea * eb * 2.0;
    0.5 * (comm.norm_sqr() + anti.norm_sqr()).sqrt() - 1.0
}

/// The four basis-dependent objectives of a qubit, evaluated in the frame of
/// the first basis.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QubitObjectives {
    pub nre: f64,
    pub ncl: f64,
    /// Mean-squared-error term, before the square root.
    pub mse_sq: f64,
    pub disturbance: f64,
}

/// `rho` expressed in the eigenbasis `va`.
pub fn in_frame(rho: &Mat, va: &Mat) -> Mat {
    mul(&mul(&adjoint(va), rho), va)
}

/// Columns `cos(alpha/2) e0 + e^{i beta} sin(alpha/2) e1` and its orthogonal partner.
pub fn bloch_kets(alpha: f64, beta: f64) -> [[C; 2]; 2] {
    let (c, s) = ((alpha / 2.0).cos(), (alpha / 2.0).sin());
    let e = C::from_polar(1.0, beta);
    [[C::new(c, 0.0), e * s], [C::new(s, 0.0), -e * c]]
}

pub fn qubit_objectives(frame_rho: &Mat, alpha: f64, beta: f64) -> QubitObjectives {
    let kets = bloch_kets(alpha, beta);
    let mut o = QubitObjectives { ncl: -1.0, ..Default::default() };
    for ket in &kets {
        let rho_b =
            [frame_rho[0][0] * ket[0] + frame_rho[0][1] * ket[1], frame_rho[1][0] * ket[0] + frame_rho[1][1] * ket[1]];
        let k = [ket[0].conj() * rho_b[0], ket[1].conj() * rho_b[1]];
        let p_b = (k[0] + k[1]).re;
        for z in k {
            o.nre += z.im.abs();
            o.ncl += z.norm();
            if p_b > 1e-14 {
                o.mse_sq += z.im * z.im / p_b;
            }
        }
        // rho minus its binary-measurement update keeps the entries linking a to the rest
        for a in 0..2 {
            let mut x = [[C::new(0.0, 0.0); 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    if (i == a) != (j == a) {
                        x[i][j] = frame_rho[i][j];
                    }
                }
            }
            let mut v = C::new(0.0, 0.0);
            for i in 0..2 {
                for j in 0..2 {
                    v += ket[i].conj() * x[i][j] * ket[j];
                }
            }
            o.disturbance += v.norm();
        }
    }
    o
}

/// Maxima of each objective over `alpha = pi i / (n - 1)`, `beta = 2 pi j / n`.
pub fn qubit_grid_maxima(frame_rho: &Mat, n: usize) -> QubitObjectives {
    let mut best = QubitObjectives {
        nre: f64::NEG_INFINITY,
        ncl: f64::NEG_INFINITY,
        mse_sq: f64::NEG_INFINITY,
        disturbance: f64::NEG_INFINITY,
    };
    for i in 0..n {
        let alpha = PI * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let o = qubit_objectives(frame_rho, alpha, 2.0 * PI * j as f64 / n as f64);
            best.nre = best.nre.max(o.nre);
            best.ncl = best.ncl.max(o.ncl);
            best.mse_sq = best.mse_sq.max(o.mse_sq);
            best.disturbance = best.disturbance.max(o.disturbance);
        }
    }
    best
}

/// Best `|Tr([A, B] rho)|` over qubit spectra on an `m`-point-per-side
/// boundary grid of `[-1, 1]^2` (corners included), for the two bases.
pub fn qubit_commutator_sup_grid(rho: &Mat, va: &Mat, vb: &Mat, m: usize) -> f64 {
    let boundary: Vec<[f64; 2]> = (0..m)
        .flat_map(|k| {
            let t = -1.0 + 2.0 * k as f64 / (m - 1) as f64;
            [[1.0, t], [-1.0, t], [t, 1.0], [t, -1.0]]
        })
        .collect();
    let mut best: f64 = 0.0;
    for sa in &boundary {
        let a = observable(va, sa);
        for sb in &boundary {
            let b = observable(vb, sb);
            let comm = sub(&mul(&a, &b), &mul(&b, &a));
            best = best.max(trace(&mul(&comm, rho)).norm());
        }
    }
    best
}

/// `2 r |sin phi_z| |sin alpha| |sin(beta - phi01)|`.
pub fn appendix_c_closed_form(r: f64, phi_z: f64, alpha: f64, beta_minus_phi01: f64) -> f64 {
    2.0 * r * phi_z.sin().abs() * alpha.sin().abs() * beta_minus_phi01.sin().abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn identity(d: usize) -> Mat {
        (0..d).map(|i| (0..d).map(|j| c(if i == j { 1.0 } else { 0.0 }, 0.0)).collect()).collect()
    }

    #[test]
    fn plus_state_against_y_basis() {
        let rho = vec![vec![c(0.5, 0.0), c(0.5, 0.0)], vec![c(0.5, 0.0), c(0.5, 0.0)]];
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let vy = vec![vec![c(h, 0.0), c(h, 0.0)], vec![c(0.0, h), c(0.0, -h)]];
        let k = kd_table(&rho, &identity(2), &vy);
        assert!((nre(&k) - 1.0).abs() < 1e-15);
        assert!((l1_coherence(&rho, &identity(2)) - 1.0).abs() < 1e-15);
        let o = qubit_objectives(&rho, std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2);
        assert!((o.nre - 1.0).abs() < 1e-15);
        assert!((o.mse_sq - 0.5).abs() < 1e-15);
    }

    #[test]
    fn commutator_grid_hits_the_corners() {
        let rho = vec![vec![c(0.5, 0.0), c(0.5, 0.0)], vec![c(0.5, 0.0), c(0.5, 0.0)]];
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let vy = vec![vec![c(h, 0.0), c(h, 0.0)], vec![c(0.0, h), c(0.0, -h)]];
        assert!((qubit_commutator_sup_grid(&rho, &identity(2), &vy, 5) - 2.0).abs() < 1e-14);
    }
}
