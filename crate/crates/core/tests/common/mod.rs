#![allow(dead_code)]

use niep_core::dft::FirstRow;
use niep_core::oracle::verify_spectrum;
use niep_core::{Complex64, ComplexList, RealMatrix};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn row(v: &[f64]) -> FirstRow {
    FirstRow::new(v.to_vec()).unwrap()
}

/// Panics with the match report when `m` does not have spectrum `expected`.
pub fn assert_spectrum(m: &RealMatrix, expected: &[Complex64], tol: f64) {
    let report = verify_spectrum(m, expected, tol).unwrap();
    assert!(
        report.matched,
        "spectrum mismatch: distance {:e} > {tol:e}\n{m:?}\nexpected {expected:?}",
        report.max_pair_distance
    );
}

pub fn uniform_row(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// A row with `|c_k| <= bound_k`, including some entries on the boundary.
pub fn dominated_row(rng: &mut impl Rng, bound: &[f64]) -> Vec<f64> {
    bound
        .iter()
        .map(|&b| {
            let t = if rng.gen_bool(0.2) { 1.0 } else { rng.gen_range(-1.0..=1.0) };
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            sign * t * b
        })
        .collect()
}

/// `Λ` with its head kept in place and the tail shuffled.
pub fn shuffle_tail(rng: &mut impl Rng, list: &ComplexList) -> ComplexList {
    let mut v = list.to_vec();
    v[1..].shuffle(rng);
    ComplexList::new(v)
}

pub fn shuffle_all(rng: &mut impl Rng, list: &ComplexList) -> ComplexList {
    let mut v = list.to_vec();
    v.shuffle(rng);
    ComplexList::new(v)
}

pub fn nonneg_matrix(rng: &mut impl Rng, n: usize) -> RealMatrix {
    RealMatrix::from_fn(n, n, |_, _| if rng.gen_bool(0.15) { 0.0 } else { rng.gen_range(0.0..4.0) })
}

/// `C` with `|c_ij| <= s_ij`.
pub fn dominated_matrix(rng: &mut impl Rng, s: &RealMatrix) -> RealMatrix {
    RealMatrix::from_fn(s.rows(), s.cols(), |i, j| {
        let t: f64 = rng.gen_range(-1.0..=1.0);
        t * s[(i, j)]
    })
}

/// Integer-valued real rows: these produce repeated eigenvalues often.
pub fn small_int_row(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((-3i32..=3).prop_map(f64::from), 1..=max_len)
}

pub fn real_row(min_len: usize, max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, min_len..=max_len)
}
