mod common;

use common::{assert_spectrum, c, real_row};
use niep_core::dft::{circulant_eigenvalues, skew_eigenvalues, FirstRow};
use niep_core::oracle::{match_spectra, spectrum};
use niep_core::structured::{materialize_circulant, materialize_skew};
use niep_core::{ComplexList, RealMatrix};
use proptest::prelude::*;

fn square(max_n: usize) -> impl Strategy<Value = RealMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-5.0f64..5.0, n * n).prop_map(move |v| {
            RealMatrix::from_fn(n, n, |i, j| v[i * n + j])
        })
    })
}

fn norm(m: &RealMatrix) -> f64 {
    m.max_abs() * m.rows() as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eigenvalue_sum_is_trace(m in square(16)) {
        let s = spectrum(&m).unwrap();
        let sum: f64 = s.iter().map(|z| z.re).sum();
        let im: f64 = s.iter().map(|z| z.im).sum();
        prop_assert!((sum - m.trace()).abs() <= 1e-9 * norm(&m).max(1.0));
        prop_assert!(im.abs() <= 1e-9 * norm(&m).max(1.0));
    }

    #[test]
    fn spectrum_is_conjugate_closed(m in square(12)) {
        let s = spectrum(&m).unwrap();
        let conj: Vec<_> = s.iter().map(|z| z.conj()).collect();
        let r = match_spectra(&s, &conj, 1e-9 * norm(&m).max(1.0)).unwrap();
        prop_assert!(r.matched, "{:?}", r);
    }

    #[test]
    fn structured_spectra_match_analytic(v in real_row(1, 16)) {
        let row = FirstRow::new(v).unwrap();
        let tol = 1e-9 * row.l1_norm().max(1.0);
        assert_spectrum(&materialize_circulant(&row), &circulant_eigenvalues(&row), tol);
        assert_spectrum(&materialize_skew(&row), &skew_eigenvalues(&row), tol);
    }

    #[test]
    fn triangular_spectrum_is_diagonal(m in square(10)) {
        let n = m.rows();
        let t = RealMatrix::from_fn(n, n, |i, j| if i <= j { m[(i, j)] } else { 0.0 });
        let diag: Vec<_> = (0..n).map(|i| c(t[(i, i)], 0.0)).collect();
        // Repeated diagonal values make this a defective case; allow sqrt(eps).
        assert_spectrum(&t, &diag, 1e-6 * norm(&m).max(1.0));
    }

    #[test]
    fn matching_is_permutation_invariant(v in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..12), rot in 0usize..12) {
        let x: ComplexList = v.iter().map(|&(a, b)| c(a, b)).collect();
        let mut y = x.to_vec();
        let len = y.len();
        y.rotate_left(rot % len);
        let r = match_spectra(&x, &y, 0.0).unwrap();
        prop_assert!(r.matched);
        let mut seen = r.pairing.clone();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..len).collect::<Vec<_>>());
        for (i, &j) in r.pairing.iter().enumerate() {
            prop_assert_eq!(x[i], y[j]);
        }
    }
}

#[test]
fn fixture_spectra() {
    let m = materialize_circulant(&FirstRow::new(vec![5.0, 6.0, 3.0, 1.0]).unwrap());
    assert_spectrum(&m, &[c(15.0, 0.0), c(1.0, 0.0), c(2.0, 5.0), c(2.0, -5.0)], 1e-8 * norm(&m));
    assert_spectrum(&RealMatrix::identity(3), &[c(1.0, 0.0); 3], 0.0);
}

#[test]
fn large_orders_converge() {
    // A nonnormal, nonsymmetric order-64 matrix with a known spectrum:
    // upper triangular plus a similarity by a unit lower bidiagonal matrix.
    let n = 64;
    let t = RealMatrix::from_fn(n, n, |i, j| {
        if i == j {
            (i as f64) - 20.0
        } else if i < j {
            ((i * 7 + j * 3) % 5) as f64 / 5.0
        } else {
            0.0
        }
    });
    let l = RealMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else if i == j + 1 { 0.5 } else { 0.0 });
    let l_inv = RealMatrix::from_fn(n, n, |i, j| if i >= j { (-0.5f64).powi((i - j) as i32) } else { 0.0 });
    let m = l.matmul(&t).unwrap().matmul(&l_inv).unwrap();
    let expected: Vec<_> = (0..n).map(|i| c(i as f64 - 20.0, 0.0)).collect();
    assert_spectrum(&m, &expected, 1e-7 * norm(&m));
    assert!(spectrum(&RealMatrix::identity(65)).is_err());
}
