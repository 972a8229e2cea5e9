//! Matrices partitioned into symmetric 2×2 blocks `[[a, b], [b, a]]`.
//!
//! Such a matrix of order `2n` has spectrum `σ(S) ∪ σ(C)` with `S = (a + b)`
//! and `C = (a − b)` blockwise. Conversely, given `S` and `C` with
//! `|c_ij| ≤ s_ij`, the blocks `[[s ± γc, s ∓ γc], [s ∓ γc, s ± γc]] / 2` give a
//! nonnegative matrix `M±γ` with spectrum `σ(S) ∪ (±γ)σ(C)`. The odd-order
//! variant borders the block matrix with a duplicated last column and a last
//! row whose block entries may be split freely.

use alloc::format;
use alloc::vec::Vec;

use crate::dft::FirstRow;
use crate::matrix::RealMatrix;
use crate::structured::materialize_skew;
use crate::{Error, Result};

/// Relative tolerance (of `max|S|`) for majorization checks and for clamping
/// rounding-level negatives to zero.
pub const NONNEG_RTOL: f64 = 1e-12;

/// Relative tolerance for recognizing 2×2 block structure.
pub const BLOCK_RTOL: f64 = 1e-12;

/// Selects `M₊γ` or `M₋γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Parameters of a block build.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockBuildSpec {
    pub gamma: f64,
    pub sign: Sign,
    /// Last-row block entries `(s¹_j, s²_j)` for odd-order builds; `None`
    /// splits every `s_{n+1,j}` into equal halves.
    pub last_row_split: Option<Vec<(f64, f64)>>,
}

impl Default for BlockBuildSpec {
    fn default() -> Self {
        BlockBuildSpec {
            gamma: 1.0,
            sign: Sign::Plus,
            last_row_split: None,
        }
    }
}

impl BlockBuildSpec {
    pub fn new(gamma: f64, sign: Sign) -> Result<Self> {
        let spec = BlockBuildSpec {
            gamma,
            sign,
            last_row_split: None,
        };
        spec.validate_gamma()?;
        Ok(spec)
    }

    pub fn with_split(mut self, split: Vec<(f64, f64)>) -> Self {
        self.last_row_split = Some(split);
        self
    }

    fn validate_gamma(&self) -> Result<()> {
        if (0.0..=1.0).contains(&self.gamma) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "gamma = {} is outside [0, 1]",
                self.gamma
            )))
        }
    }

    /// `±γ`.
    fn signed_gamma(&self) -> f64 {
        self.sign.factor() * self.gamma
    }
}

fn block_entries(s: f64, c: f64, sg: f64) -> (f64, f64) {
    ((s + sg * c) / 2.0, (s - sg * c) / 2.0)
}

/// Splits a `2n`-order matrix of symmetric 2×2 blocks into `(S, C)`.
pub fn split_spectrum_even(a: &RealMatrix) -> Result<(RealMatrix, RealMatrix)> {
    let order = a.order()?;
    if order % 2 != 0 {
        return Err(Error::Dimension(format!(
            "expected an even order, got {order}"
        )));
    }
    let n = order / 2;
    let tol = BLOCK_RTOL * a.max_abs();
    check_blocks(a, n, tol)?;
    let s = RealMatrix::from_fn(n, n, |i, j| a[(2 * i, 2 * j)] + a[(2 * i, 2 * j + 1)]);
    let c = RealMatrix::from_fn(n, n, |i, j| a[(2 * i, 2 * j)] - a[(2 * i, 2 * j + 1)]);
    Ok((s, c))
}

/// Splits a `2n+1`-order bordered block matrix into `S` (order `n+1`) and `C`
/// (order `n`).
pub fn split_spectrum_odd(a: &RealMatrix) -> Result<(RealMatrix, RealMatrix)> {
    let order = a.order()?;
    if order % 2 != 1 {
        return Err(Error::Dimension(format!("expected an odd order, got {order}")));
    }
    let n = order / 2;
    let tol = BLOCK_RTOL * a.max_abs();
    check_blocks(a, n, tol)?;
    for i in 0..n {
        if (a[(2 * i, 2 * n)] - a[(2 * i + 1, 2 * n)]).abs() > tol {
            return Err(Error::BlockStructure {
                row: 2 * i + 1,
                col: 2 * n,
            });
        }
    }
    let s = RealMatrix::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
        (true, true) => a[(2 * i, 2 * j)] + a[(2 * i, 2 * j + 1)],
        (true, false) => a[(2 * i, 2 * n)],
        (false, true) => a[(2 * n, 2 * j)] + a[(2 * n, 2 * j + 1)],
        (false, false) => a[(2 * n, 2 * n)],
    });
    let c = RealMatrix::from_fn(n, n, |i, j| a[(2 * i, 2 * j)] - a[(2 * i, 2 * j + 1)]);
    Ok((s, c))
}

fn check_blocks(a: &RealMatrix, n: usize, tol: f64) -> Result<()> {
    for i in 0..n {
        for j in 0..n {
            let (r, c) = (2 * i, 2 * j);
            if (a[(r, c)] - a[(r + 1, c + 1)]).abs() > tol {
                return Err(Error::BlockStructure { row: r + 1, col: c + 1 });
            }
            if (a[(r, c + 1)] - a[(r + 1, c)]).abs() > tol {
                return Err(Error::BlockStructure { row: r + 1, col: c });
            }
        }
    }
    Ok(())
}

/// Positions of the leading `n×n` block where `|c_ij| > s_ij + tol`.
fn majorization_failures(s: &RealMatrix, c: &RealMatrix, n: usize, tol: f64) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if c[(i, j)].abs() > s[(i, j)] + tol {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Replaces entries in `[−tol, 0)` by zero; anything more negative is an error.
fn clamp_nonnegative(m: &mut RealMatrix, tol: f64) -> Result<()> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m[(i, j)];
            if v < 0.0 {
                if v < -tol {
                    return Err(Error::Negative { row: i, col: j, value: v });
                }
                m[(i, j)] = 0.0;
            }
        }
    }
    Ok(())
}

/// `M±γ` from square `S` and `C` of equal order with `|c_ij| ≤ s_ij`.
pub fn build_even(s: &RealMatrix, c: &RealMatrix, spec: &BlockBuildSpec) -> Result<RealMatrix> {
    spec.validate_gamma()?;
    let n = s.order()?;
    if c.order()? != n {
        return Err(Error::Dimension(format!(
            "S has order {n} but C has order {}",
            c.order()?
        )));
    }
    let tol = NONNEG_RTOL * s.max_abs();
    let bad = majorization_failures(s, c, n, tol);
    if !bad.is_empty() {
        return Err(Error::Majorization { positions: bad });
    }
    let sg = spec.signed_gamma();
    let mut m = RealMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let (x, y) = block_entries(s[(i, j)], c[(i, j)], sg);
            m[(2 * i, 2 * j)] = x;
            m[(2 * i, 2 * j + 1)] = y;
            m[(2 * i + 1, 2 * j)] = y;
            m[(2 * i + 1, 2 * j + 1)] = x;
        }
    }
    clamp_nonnegative(&mut m, tol)?;
    Ok(m)
}

/// `N±γ` from a circulant first row `s` and a skew circulant first row `c`
/// with `|c_k| ≤ s_k`. Block `(i, j)` is `N_{j−i}` on and above the block
/// diagonal and `J·N_{n−i+j}` below it, where `J` swaps the two rows.
pub fn build_circ_skew(
    s_row: &FirstRow,
    c_row: &FirstRow,
    spec: &BlockBuildSpec,
) -> Result<RealMatrix> {
    spec.validate_gamma()?;
    let n = s_row.len();
    if c_row.len() != n {
        return Err(Error::Dimension(format!(
            "circulant row has length {n} but skew row has length {}",
            c_row.len()
        )));
    }
    let (s, c) = (s_row.values(), c_row.values());
    let tol = NONNEG_RTOL * s_row.max_abs();
    let bad: Vec<(usize, usize)> = (0..n)
        .filter(|&k| c[k].abs() > s[k] + tol)
        .map(|k| (0, k))
        .collect();
    if !bad.is_empty() {
        return Err(Error::Majorization { positions: bad });
    }
    let sg = spec.signed_gamma();
    let blocks: Vec<(f64, f64)> = (0..n).map(|k| block_entries(s[k], c[k], sg)).collect();
    let mut m = RealMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let (x, y, swapped) = if j >= i {
                let (x, y) = blocks[j - i];
                (x, y, false)
            } else {
                let (x, y) = blocks[n - i + j];
                (x, y, true)
            };
            let (top, bottom) = if swapped { ((y, x), (x, y)) } else { ((x, y), (y, x)) };
            m[(2 * i, 2 * j)] = top.0;
            m[(2 * i, 2 * j + 1)] = top.1;
            m[(2 * i + 1, 2 * j)] = bottom.0;
            m[(2 * i + 1, 2 * j + 1)] = bottom.1;
        }
    }
    clamp_nonnegative(&mut m, tol)?;
    Ok(m)
}

/// The bordered matrix of order `2n+1` from `S` (order `n+1`) and the skew
/// circulant `skwcirc(c_row)` (order `n`).
pub fn build_odd(s: &RealMatrix, c_row: &FirstRow, spec: &BlockBuildSpec) -> Result<RealMatrix> {
    build_odd_general(s, &materialize_skew(c_row), spec)
}

/// [`build_odd`] for an arbitrary real `C` of order `n`.
pub fn build_odd_general(
    s: &RealMatrix,
    c: &RealMatrix,
    spec: &BlockBuildSpec,
) -> Result<RealMatrix> {
    spec.validate_gamma()?;
    let n = c.order()?;
    if s.order()? != n + 1 {
        return Err(Error::Dimension(format!(
            "S must have order {} for C of order {n}, got {}",
            n + 1,
            s.rows()
        )));
    }
    let tol = NONNEG_RTOL * s.max_abs();
    for i in 0..=n {
        for j in 0..=n {
            if s[(i, j)] < -tol {
                return Err(Error::Negative {
                    row: i,
                    col: j,
                    value: s[(i, j)],
                });
            }
        }
    }
    let bad = majorization_failures(s, c, n, tol);
    if !bad.is_empty() {
        return Err(Error::Majorization { positions: bad });
    }
    let split: Vec<(f64, f64)> = match &spec.last_row_split {
        None => (0..n).map(|j| (s[(n, j)] / 2.0, s[(n, j)] / 2.0)).collect(),
        Some(split) => {
            if split.len() != n {
                return Err(Error::InvalidSplit(format!(
                    "expected {n} pairs, got {}",
                    split.len()
                )));
            }
            for (j, &(a, b)) in split.iter().enumerate() {
                if a < -tol || b < -tol {
                    return Err(Error::InvalidSplit(format!(
                        "pair {j} = ({a}, {b}) has a negative part"
                    )));
                }
                if (a + b - s[(n, j)]).abs() > tol.max(NONNEG_RTOL) {
                    return Err(Error::InvalidSplit(format!(
                        "pair {j} = ({a}, {b}) does not sum to s[{n}][{j}] = {}",
                        s[(n, j)]
                    )));
                }
            }
            split.clone()
        }
    };

    let sg = spec.signed_gamma();
    let order = 2 * n + 1;
    let mut m = RealMatrix::zeros(order, order);
    for i in 0..n {
        for j in 0..n {
            let (x, y) = block_entries(s[(i, j)], c[(i, j)], sg);
            m[(2 * i, 2 * j)] = x;
            m[(2 * i, 2 * j + 1)] = y;
            m[(2 * i + 1, 2 * j)] = y;
            m[(2 * i + 1, 2 * j + 1)] = x;
        }
        m[(2 * i, 2 * n)] = s[(i, n)];
        m[(2 * i + 1, 2 * n)] = s[(i, n)];
    }
    for (j, &(a, b)) in split.iter().enumerate() {
        m[(2 * n, 2 * j)] = a;
        m[(2 * n, 2 * j + 1)] = b;
    }
    m[(2 * n, 2 * n)] = s[(n, n)];
    clamp_nonnegative(&mut m, tol)?;
    Ok(m)
}
