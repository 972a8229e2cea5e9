//! Discrete Fourier machinery for circulant and skew circulant matrices.
//!
//! With `ω = exp(2πi/n)` and `ι = exp(πi/n)`:
//!
//! * `F[p][q] = ω^{pq} / √n` is the unitary DFT matrix, `F² = F Fᵀ = Γn`.
//! * `G[p][q] = ω^{p(q+½)} / √n = (diag(1, ι, …, ι^{n−1}) F)[p][q]`, unitary
//!   with `G Gᵀ = Ξn`.
//! * `circ(s) = F Λ(s) Fᴴ` with `λ_k(s) = Σ_j s_j ω^{kj}` (so `λ = √n F s`).
//! * `skwcirc(c) = G M(c) Gᴴ` with `μ_k(c) = Σ_j c_j ω^{(k+½)j}` (so
//!   `μ = √n Gᵀ c`).
//!
//! The inverse maps are `s_k = (1/n) Σ_j λ_j ω^{−kj}` and
//! `c_k = (1/n) Σ_j μ_j ω^{−(j+½)k}`.
//!
//! Evaluation is the naive O(n²) sum; every power of a root of unity is taken
//! from an exponent reduced modulo the period so no error accumulates.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;
use crate::spectra::ComplexList;
use crate::{Error, Result};

/// Relative tolerance on the imaginary residue of a recovered first row.
pub const ROW_RECOVERY_RTOL: f64 = 1e-10;

/// Real first row of a circulant or skew circulant matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstRow(Vec<f64>);

impl FirstRow {
    /// Rejects empty rows and non-finite entries.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("first row must be nonempty".into()));
        }
        if let Some(i) = values.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "first row entry {i} is not finite"
            )));
        }
        Ok(FirstRow(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn l1_norm(&self) -> f64 {
        self.0.iter().map(|x| x.abs()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl TryFrom<&[f64]> for FirstRow {
    type Error = Error;

    fn try_from(values: &[f64]) -> Result<Self> {
        FirstRow::new(values.to_vec())
    }
}

/// `ω = exp(2πi/n)` and its square root `ι = exp(πi/n)` for a fixed order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOfUnity {
    n: usize,
}

impl RootOfUnity {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "root of unity of order 0");
        RootOfUnity { n }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> Complex64 {
        self.omega_pow(1)
    }

    pub fn iota(&self) -> Complex64 {
        self.iota_pow(1)
    }

    /// `ω^e`, with `e` reduced modulo `n`.
    pub fn omega_pow(&self, e: i64) -> Complex64 {
        let n = self.n as i64;
        unit(2.0 * PI * (e.rem_euclid(n) as f64) / self.n as f64)
    }

    /// `ι^e = ω^{e/2}`, with `e` reduced modulo `2n`.
    pub fn iota_pow(&self, e: i64) -> Complex64 {
        let period = 2 * self.n as i64;
        unit(PI * (e.rem_euclid(period) as f64) / self.n as f64)
    }
}

fn unit(theta: f64) -> Complex64 {
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

/// Unitary DFT matrix `F[p][q] = ω^{pq}/√n`.
pub fn dft_matrix(n: usize) -> ComplexMatrix {
    let root = RootOfUnity::new(n);
    let scale = 1.0 / libm::sqrt(n as f64);
    ComplexMatrix::from_fn(n, n, |p, q| root.omega_pow((p * q) as i64) * scale)
}

/// `G[p][q] = ω^{p(q+½)}/√n`, i.e. `diag(1, ι, …, ι^{n−1}) · F`.
pub fn g_matrix(n: usize) -> ComplexMatrix {
    let root = RootOfUnity::new(n);
    let scale = 1.0 / libm::sqrt(n as f64);
    ComplexMatrix::from_fn(n, n, |p, q| root.iota_pow((p * (2 * q + 1)) as i64) * scale)
}

/// `Γn`: 1 in the corner and the exchange matrix `J_{n−1}` below-right.
pub fn gamma_matrix(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |p, q| {
        Complex64::new(if (p + q) % n == 0 { 1.0 } else { 0.0 }, 0.0)
    })
}

/// `Ξn`: 1 in the corner and `−J_{n−1}` below-right.
pub fn xi_matrix(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |p, q| {
        let v = if p == 0 && q == 0 {
            1.0
        } else if p + q == n {
            -1.0
        } else {
            0.0
        };
        Complex64::new(v, 0.0)
    })
}

/// `λ_k(s) = Σ_j s_j ω^{kj}`, `k = 0…n−1`.
pub fn circulant_eigenvalues(s: &FirstRow) -> ComplexList {
    let n = s.len();
    let root = RootOfUnity::new(n);
    (0..n)
        .map(|k| {
            s.values()
                .iter()
                .enumerate()
                .map(|(j, &v)| root.omega_pow((k * j) as i64) * v)
                .sum()
        })
        .collect()
}

/// `μ_k(c) = Σ_j c_j ω^{(k+½)j}`, `k = 0…n−1`.
pub fn skew_eigenvalues(c: &FirstRow) -> ComplexList {
    let n = c.len();
    let root = RootOfUnity::new(n);
    (0..n)
        .map(|k| {
            c.values()
                .iter()
                .enumerate()
                .map(|(j, &v)| root.iota_pow(((2 * k + 1) * j) as i64) * v)
                .sum()
        })
        .collect()
}

/// Inverts [`circulant_eigenvalues`]: `s_k = (1/n) Σ_j λ_j ω^{−kj}`.
///
/// The list must already be in circulant-paired index order, otherwise the
/// recovered row is not real and a pairing violation is returned.
pub fn circulant_row_from_spectrum(lambdas: &ComplexList) -> Result<FirstRow> {
    let n = lambdas.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty spectrum".into()));
    }
    let root = RootOfUnity::new(n);
    let row: Vec<Complex64> = (0..n)
        .map(|k| {
            lambdas
                .iter()
                .enumerate()
                .map(|(j, &l)| l * root.omega_pow(-((k * j) as i64)))
                .sum::<Complex64>()
                / n as f64
        })
        .collect();
    real_row(row, lambdas.max_modulus())
}

/// Inverts [`skew_eigenvalues`]: `c_k = (1/n) Σ_j μ_j ω^{−(j+½)k}`.
pub fn skew_row_from_spectrum(mus: &ComplexList) -> Result<FirstRow> {
    skew_row_complex(mus).and_then(|row| real_row(row, mus.max_modulus()))
}

/// The (possibly complex) inverse skew map, before the realness check.
pub(crate) fn skew_row_complex(mus: &ComplexList) -> Result<Vec<Complex64>> {
    let n = mus.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty spectrum".into()));
    }
    let root = RootOfUnity::new(n);
    Ok((0..n)
        .map(|k| {
            mus.iter()
                .enumerate()
                .map(|(j, &m)| m * root.iota_pow(-(((2 * j + 1) * k) as i64)))
                .sum::<Complex64>()
                / n as f64
        })
        .collect())
}

fn real_row(row: Vec<Complex64>, scale: f64) -> Result<FirstRow> {
    let tol = ROW_RECOVERY_RTOL * scale;
    let worst = row.iter().fold(0.0, |m: f64, z| m.max(z.im.abs()));
    if worst > tol {
        return Err(Error::PairingViolation(format!(
            "recovered first row has imaginary residue {worst:e} (tolerance {tol:e})"
        )));
    }
    FirstRow::new(row.iter().map(|z| z.re).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn row(v: &[f64]) -> FirstRow {
        FirstRow::new(v.to_vec()).unwrap()
    }

    fn assert_list_close(got: &ComplexList, want: &[Complex64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).norm() <= tol, "{g} vs {w}");
        }
    }

    fn assert_row_close(got: &FirstRow, want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.values().iter().zip(want) {
            assert!((g - w).abs() <= tol, "{:?} vs {want:?}", got.values());
        }
    }

    #[test]
    fn roots_of_unity() {
        for n in 1..20 {
            let r = RootOfUnity::new(n);
            assert!((r.omega_pow(n as i64) - c(1.0, 0.0)).norm() < 1e-14);
            assert!((r.iota() * r.iota() - r.omega()).norm() < 1e-14);
        }
    }

    #[test]
    fn small_dft_matrices() {
        assert_eq!(dft_matrix(1)[(0, 0)], c(1.0, 0.0));
        let f2 = dft_matrix(2);
        let h = 1.0 / libm::sqrt(2.0);
        let want = ComplexMatrix::from_fn(2, 2, |p, q| c(if p * q == 1 { -h } else { h }, 0.0));
        assert!(f2.max_abs_diff(&want) < 1e-15);
        assert_eq!(g_matrix(1)[(0, 0)], c(1.0, 0.0));
    }

    #[test]
    fn gamma_and_xi_identities() {
        let f4 = dft_matrix(4);
        assert!(f4.matmul(&f4).unwrap().max_abs_diff(&gamma_matrix(4)) < 1e-12);
        let g2 = g_matrix(2);
        let xi2 = g2.matmul(&g2.transpose()).unwrap();
        let want = ComplexMatrix::from_fn(2, 2, |p, q| {
            c(if p != q { 0.0 } else if p == 0 { 1.0 } else { -1.0 }, 0.0)
        });
        assert!(xi2.max_abs_diff(&want) < 1e-12);
        assert!(xi2.max_abs_diff(&xi_matrix(2)) < 1e-12);
    }

    #[test]
    fn g_is_row_scaled_dft() {
        let n = 5;
        let root = RootOfUnity::new(n);
        let d: Vec<Complex64> = (0..n).map(|p| root.iota_pow(p as i64)).collect();
        let scaled = ComplexMatrix::diagonal(&d).matmul(&dft_matrix(n)).unwrap();
        assert!(scaled.max_abs_diff(&g_matrix(n)) < 1e-13);
        let g3 = g_matrix(3);
        let gg = g3.matmul(&g3.adjoint()).unwrap();
        assert!(gg.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn circulant_spectra_of_examples() {
        let l = circulant_eigenvalues(&row(&[2.0, 4.0, 0.0, 2.0]));
        assert_list_close(&l, &[c(8.0, 0.0), c(2.0, 2.0), c(-4.0, 0.0), c(2.0, -2.0)], 1e-12);
        let l = circulant_eigenvalues(&row(&[5.0, 6.0, 3.0, 1.0]));
        assert_list_close(&l, &[c(15.0, 0.0), c(2.0, 5.0), c(1.0, 0.0), c(2.0, -5.0)], 1e-12);
        let l = circulant_eigenvalues(&row(&[3.5, 0.0, 0.0]));
        assert_list_close(&l, &[c(3.5, 0.0); 3], 1e-15);
    }

    #[test]
    fn skew_spectra_of_examples() {
        let h = libm::sqrt(3.0) / 2.0;
        let m = skew_eigenvalues(&row(&[4.0, -2.0, 1.0]));
        assert_list_close(&m, &[c(2.5, -h), c(7.0, 0.0), c(2.5, h)], 1e-12);

        let r2 = libm::sqrt(2.0);
        let m = skew_eigenvalues(&row(&[-1.0, 1.0, 0.0, 1.0]));
        assert_list_close(
            &m,
            &[c(-1.0, r2), c(-1.0, r2), c(-1.0, -r2), c(-1.0, -r2)],
            1e-12,
        );
        let m = skew_eigenvalues(&row(&[-2.0, 0.0, 0.0, 0.0]));
        assert_list_close(&m, &[c(-2.0, 0.0); 4], 1e-15);
    }

    #[test]
    fn circulant_inverse_examples() {
        let s = circulant_row_from_spectrum(&ComplexList::new(vec![
            c(8.0, 0.0),
            c(2.0, 2.0),
            c(-4.0, 0.0),
            c(2.0, -2.0),
        ]))
        .unwrap();
        assert_row_close(&s, &[2.0, 4.0, 0.0, 2.0], 1e-12);
        let s = circulant_row_from_spectrum(&ComplexList::new(vec![
            c(15.0, 0.0),
            c(2.0, 5.0),
            c(1.0, 0.0),
            c(2.0, -5.0),
        ]))
        .unwrap();
        assert_row_close(&s, &[5.0, 6.0, 3.0, 1.0], 1e-12);
        let s = circulant_row_from_spectrum(&ComplexList::from_reals(&[1.5; 5])).unwrap();
        assert_row_close(&s, &[1.5, 0.0, 0.0, 0.0, 0.0], 1e-14);
    }

    #[test]
    fn skew_inverse_examples() {
        let h = libm::sqrt(3.0) / 2.0;
        let cr = skew_row_from_spectrum(&ComplexList::new(vec![c(2.5, -h), c(7.0, 0.0), c(2.5, h)]))
            .unwrap();
        assert_row_close(&cr, &[4.0, -2.0, 1.0], 1e-12);

        let mus = skew_eigenvalues(&row(&[-1.0, 1.0, 0.0, 1.0]));
        let cr = skew_row_from_spectrum(&mus).unwrap();
        assert_row_close(&cr, &[-1.0, 1.0, 0.0, 1.0], 1e-12);

        let cr = skew_row_from_spectrum(&ComplexList::from_reals(&[-0.25; 3])).unwrap();
        assert_row_close(&cr, &[-0.25, 0.0, 0.0], 1e-14);
    }

    #[test]
    fn inverse_rejects_unpaired_order() {
        // Circulant pairing broken: λ_1 and λ_3 are not conjugates in index order.
        let bad = ComplexList::new(vec![c(15.0, 0.0), c(2.0, 5.0), c(2.0, -5.0), c(1.0, 0.0)]);
        assert!(matches!(
            circulant_row_from_spectrum(&bad),
            Err(Error::PairingViolation(_))
        ));
        let bad = ComplexList::new(vec![c(7.0, 0.0), c(2.5, 1.0), c(2.5, -1.0)]);
        assert!(matches!(
            skew_row_from_spectrum(&bad),
            Err(Error::PairingViolation(_))
        ));
    }

    #[test]
    fn first_row_validation() {
        assert!(FirstRow::new(vec![]).is_err());
        assert!(FirstRow::new(vec![1.0, f64::NAN]).is_err());
        assert_eq!(row(&[1.0, -2.0]).l1_norm(), 3.0);
    }
}
