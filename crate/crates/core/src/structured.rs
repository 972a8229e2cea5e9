//! Circulant, skew circulant and absolutely circulant matrices, and
//! recognition of permutative matrices.

use alloc::format;
use alloc::vec::Vec;

use crate::dft::FirstRow;
use crate::matrix::RealMatrix;
use crate::{Error, Result};

/// Relative tolerance for comparing sorted rows in [`is_permutative`].
pub const PERMUTATIVE_RTOL: f64 = 1e-9;

/// `circ(s)`: entry `(i, j)` is `s_{(j−i) mod n}`.
pub fn materialize_circulant(row: &FirstRow) -> RealMatrix {
    let s = row.values();
    let n = s.len();
    RealMatrix::from_fn(n, n, |i, j| if j >= i { s[j - i] } else { s[n - i + j] })
}

/// `skwcirc(c)`: `c_{j−i}` on and above the diagonal, `−c_{n−i+j}` below.
pub fn materialize_skew(row: &FirstRow) -> RealMatrix {
    let c = row.values();
    let n = c.len();
    RealMatrix::from_fn(n, n, |i, j| if j >= i { c[j - i] } else { -c[n - i + j] })
}

/// Per-entry signs (`+1`/`−1`) turning a nonnegative circulant into an
/// absolutely circulant matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignPattern {
    n: usize,
    signs: Vec<i8>,
}

impl SignPattern {
    pub fn from_rows<R: AsRef<[i8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut signs = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::InvalidSignPattern(format!(
                    "row {i} has length {} in a pattern of order {n}",
                    r.len()
                )));
            }
            if let Some(&bad) = r.iter().find(|&&s| s != 1 && s != -1) {
                return Err(Error::InvalidSignPattern(format!(
                    "sign {bad} in row {i} is not ±1"
                )));
            }
            signs.extend_from_slice(r);
        }
        Ok(SignPattern { n, signs })
    }

    pub fn all_plus(n: usize) -> Self {
        SignPattern {
            n,
            signs: alloc::vec![1; n * n],
        }
    }

    /// The pattern of a skew circulant: `−1` strictly below the diagonal.
    pub fn skew(n: usize) -> Self {
        let mut signs = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                signs.push(if i > j { -1 } else { 1 });
            }
        }
        SignPattern { n, signs }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.signs[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, s: i8) {
        self.signs[i * self.n + j] = s;
    }
}

/// A matrix whose entrywise absolute value is circulant and whose diagonal
/// has constant sign.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsolutelyCirculant {
    magnitude: FirstRow,
    signs: SignPattern,
}

impl AbsolutelyCirculant {
    /// Validates a nonnegative magnitude row and a sign pattern of matching
    /// order. Signs at zero-magnitude positions are canonicalized to `+1`
    /// before the diagonal check.
    pub fn new(magnitude: FirstRow, mut signs: SignPattern) -> Result<Self> {
        let n = magnitude.len();
        if signs.order() != n {
            return Err(Error::Dimension(format!(
                "sign pattern of order {} for a magnitude row of length {n}",
                signs.order()
            )));
        }
        if let Some(i) = magnitude.values().iter().position(|&x| x < 0.0) {
            return Err(Error::InvalidInput(format!(
                "magnitude entry {i} is negative"
            )));
        }
        let m = magnitude.values();
        for i in 0..n {
            for j in 0..n {
                let k = if j >= i { j - i } else { n - i + j };
                if m[k] == 0.0 {
                    signs.set(i, j, 1);
                }
            }
        }
        let d = signs.get(0, 0);
        if (1..n).any(|i| signs.get(i, i) != d) {
            return Err(Error::InvalidSignPattern(
                "diagonal signs are not all equal".into(),
            ));
        }
        Ok(AbsolutelyCirculant { magnitude, signs })
    }

    /// Recognizes an absolutely circulant matrix from its entries.
    pub fn from_matrix(c: &RealMatrix) -> Result<Self> {
        let n = c.order()?;
        if n == 0 {
            return Err(Error::InvalidInput("empty matrix".into()));
        }
        let magnitude = FirstRow::new(c.row(0).iter().map(|x| x.abs()).collect())?;
        let abs = materialize_circulant(&magnitude);
        if abs.max_abs_diff(&c.map(f64::abs)) != 0.0 {
            return Err(Error::InvalidInput(
                "absolute value of the matrix is not circulant".into(),
            ));
        }
        let rows: Vec<Vec<i8>> = (0..n)
            .map(|i| {
                c.row(i)
                    .iter()
                    .map(|&x| if x < 0.0 { -1 } else { 1 })
                    .collect()
            })
            .collect();
        Self::new(magnitude, SignPattern::from_rows(&rows)?)
    }

    pub fn magnitude(&self) -> &FirstRow {
        &self.magnitude
    }

    pub fn signs(&self) -> &SignPattern {
        &self.signs
    }

    pub fn order(&self) -> usize {
        self.magnitude.len()
    }
}

/// Entry `(i, j)` is `signs(i, j) · |circ(magnitude)|_{ij}`.
pub fn materialize_abscirc(m: &AbsolutelyCirculant) -> RealMatrix {
    let abs = materialize_circulant(m.magnitude());
    RealMatrix::from_fn(m.order(), m.order(), |i, j| {
        f64::from(m.signs().get(i, j)) * abs[(i, j)]
    })
}

/// Returns, for every row `i`, a permutation `τ_i` with
/// `M[i][j] = M[0][τ_i(j)]`, or `None` if some row is not a rearrangement of
/// the first row (compared with tolerance `1e−9 · max|entry|`).
pub fn is_permutative(m: &RealMatrix) -> Option<Vec<Vec<usize>>> {
    let n = m.order().ok()?;
    if n == 0 {
        return Some(Vec::new());
    }
    let tol = PERMUTATIVE_RTOL * m.max_abs();
    let sorted_indices = |i: usize| {
        let r = m.row(i);
        let mut idx: Vec<usize> = (0..r.len()).collect();
        idx.sort_by(|&a, &b| r[a].total_cmp(&r[b]));
        idx
    };
    let base = sorted_indices(0);
    let first = m.row(0);
    let mut witness = Vec::with_capacity(n);
    for i in 0..n {
        let idx = sorted_indices(i);
        let r = m.row(i);
        let mut tau = alloc::vec![0; n];
        for (t, &j) in idx.iter().enumerate() {
            if (r[j] - first[base[t]]).abs() > tol {
                return None;
            }
            tau[j] = base[t];
        }
        witness.push(tau);
    }
    Some(witness)
}
