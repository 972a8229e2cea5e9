//! End-to-end realizers.
//!
//! * [`realize_four`]: closed-form permutative realization of
//!   `{λ₁, λ₂, λ₃, conj λ₃}`.
//! * [`realize_region`]: the `{1, r, a ± ib}` family.
//! * [`check_conditions`]: the sufficient condition for `Λ ∪ (±γ)Υ`, searched
//!   over the pairing-preserving reorderings `P × Q`.
//! * [`brauer_augment`]: realization of `{ρ, λ₁, …, λₙ} ∪ (±γ)Υ` through a
//!   rank-one shift `R = B + χ·eeᵀ`.
//! * [`build_abscirc_combination`]: circulant plus absolutely circulant blocks.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::block::{build_circ_skew, build_even, build_odd, BlockBuildSpec, Sign, NONNEG_RTOL};
use crate::dft::{circulant_row_from_spectrum, skew_row_complex, skew_row_from_spectrum, FirstRow};
use crate::matrix::RealMatrix;
use crate::spectra::{
    classify_pairing, enumerate_p, enumerate_q, ComplexList, Enumeration, PairingPermutation,
    SpectrumPair,
};
use crate::structured::{materialize_abscirc, materialize_circulant, AbsolutelyCirculant};
use crate::{Error, Result};

/// A point `(r, a, b)` standing for the list `{1, r, a + ib, a − ib}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionPoint {
    pub r: f64,
    pub a: f64,
    pub b: f64,
}

impl RegionPoint {
    pub fn new(r: f64, a: f64, b: f64) -> Result<Self> {
        if !(r.is_finite() && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidInput("region point must be finite".into()));
        }
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidInput(format!("r = {r} is outside [0, 1]")));
        }
        Ok(RegionPoint { r, a, b })
    }

    /// `{1, r, a + ib, a − ib}`.
    pub fn target_spectrum(&self) -> ComplexList {
        ComplexList::new(alloc::vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(self.r, 0.0),
            Complex64::new(self.a, self.b),
            Complex64::new(self.a, -self.b),
        ])
    }
}

/// The permutative pattern `[[a b c d] [b a d c] [d c a b] [c d b a]]`.
fn four_pattern(a: f64, b: f64, c: f64, d: f64) -> RealMatrix {
    RealMatrix::from_rows(&[[a, b, c, d], [b, a, d, c], [d, c, a, b], [c, d, b, a]])
        .expect("fixed 4x4 shape")
}

/// A labeling `(λ₁, λ₂, λ₃)` with `λ₁ ≥ λ₂` real and `Im λ₃ ≥ 0`.
type Labeling = (f64, f64, Complex64);

fn four_labelings(sigma: &ComplexList) -> Result<Vec<Labeling>> {
    let tol = sigma.pairing_tolerance();
    let (reals, complex): (Vec<usize>, Vec<usize>) =
        (0..4).partition(|&i| sigma[i].im.abs() <= tol);
    let ordered = |i: usize, j: usize| {
        let (x, y) = (sigma[i].re, sigma[j].re);
        if x >= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    match complex.len() {
        2 => {
            let (u, v) = (sigma[complex[0]], sigma[complex[1]]);
            if (u - v.conj()).norm() > tol {
                return Err(Error::PairingViolation(format!(
                    "{u} and {v} are not complex conjugates"
                )));
            }
            let top = if u.im >= 0.0 { u } else { v };
            let (l1, l2) = ordered(reals[0], reals[1]);
            Ok(alloc::vec![(l1, l2, top)])
        }
        0 => {
            // λ₃ = λ₄ must be an equal real pair; try every such pair.
            let mut out = Vec::new();
            for i in 0..4 {
                for j in i + 1..4 {
                    if (sigma[i].re - sigma[j].re).abs() <= tol {
                        let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
                        let (l1, l2) = ordered(rest[0], rest[1]);
                        out.push((l1, l2, Complex64::new(sigma[i].re, 0.0)));
                    }
                }
            }
            if out.is_empty() {
                return Err(Error::PairingViolation(
                    "four distinct reals leave no conjugate pair for λ3, λ4".into(),
                ));
            }
            Ok(out)
        }
        _ => Err(Error::PairingViolation(
            "need two reals and one conjugate pair".into(),
        )),
    }
}

fn four_entries(l1: f64, l2: f64, l3: Complex64, tol: f64) -> Result<[f64; 4]> {
    let sum = l1 + l2 + 2.0 * l3.re;
    if sum < -tol {
        return Err(Error::Condition(format!(
            "λ1 + λ2 + λ3 + λ4 ≥ 0 fails: sum = {sum}"
        )));
    }
    if l1 + l2 - 2.0 * l3.re < -tol {
        return Err(Error::Condition(format!(
            "λ1 + λ2 ≥ 2 Re λ3 fails: {} < {}",
            l1 + l2,
            2.0 * l3.re
        )));
    }
    if l1 - l2 - 2.0 * l3.im.abs() < -tol {
        return Err(Error::Condition(format!(
            "λ1 - λ2 ≥ 2|Im λ3| fails: {} < {}",
            l1 - l2,
            2.0 * l3.im.abs()
        )));
    }
    Ok([
        (sum / 4.0).max(0.0),
        ((l1 + l2 - 2.0 * l3.re) / 4.0).max(0.0),
        ((l1 - l2 + 2.0 * l3.im) / 4.0).max(0.0),
        ((l1 - l2 - 2.0 * l3.im) / 4.0).max(0.0),
    ])
}

/// Nonnegative permutative 4×4 matrix with spectrum `σ`, where `σ` holds two
/// reals and a conjugate pair (an equal real pair counts as one). The list is
/// relabeled with `λ₁ ≥ λ₂` real and `Im λ₃ ≥ 0`, and the construction needs
///
/// * `λ₁ + λ₂ + λ₃ + λ₄ ≥ 0`,
/// * `λ₁ + λ₂ ≥ 2 Re λ₃`,
/// * `λ₁ − λ₂ ≥ 2 |Im λ₃|`.
pub fn realize_four(sigma: &ComplexList) -> Result<RealMatrix> {
    if sigma.len() != 4 {
        return Err(Error::Dimension(format!(
            "expected 4 eigenvalues, got {}",
            sigma.len()
        )));
    }
    if sigma.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::InvalidInput("eigenvalues must be finite".into()));
    }
    let tol = NONNEG_RTOL * sigma.max_modulus();
    let mut first_err = None;
    for (l1, l2, l3) in four_labelings(sigma)? {
        match four_entries(l1, l2, l3, tol) {
            Ok([a, b, c, d]) => return Ok(four_pattern(a, b, c, d)),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    Err(first_err.expect("at least one labeling was tried"))
}

/// `|a| ≤ (1 + r)/2` and `|b| ≤ (1 − r)/2`.
pub fn region_check(p: &RegionPoint) -> bool {
    p.a.abs() <= (1.0 + p.r) / 2.0 && p.b.abs() <= (1.0 - p.r) / 2.0
}

/// The region matrix with entries `(1 + r ± 2a)/4` and `(1 − r ± 2b)/4`.
pub fn realize_region(p: &RegionPoint) -> Result<RealMatrix> {
    if !region_check(p) {
        return Err(Error::Condition(format!(
            "(r, a, b) = ({}, {}, {}) violates |a| ≤ (1+r)/2 or |b| ≤ (1-r)/2",
            p.r, p.a, p.b
        )));
    }
    let (r, a, b) = (p.r, p.a, p.b);
    Ok(four_pattern(
        (1.0 + r + 2.0 * a) / 4.0,
        (1.0 + r - 2.0 * a) / 4.0,
        (1.0 - r + 2.0 * b) / 4.0,
        (1.0 - r - 2.0 * b) / 4.0,
    ))
}

/// `Re z ≤ 0` and `|Im z| ≤ |Re z|`.
pub fn in_gamma_region(z: Complex64) -> bool {
    z.re <= 0.0 && z.im.abs() <= z.re.abs()
}

/// How [`check_conditions`] decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckMode {
    /// Closed-form bound on `λ₀` alone; no witness.
    Formula,
    /// Search `P × Q` for real rows with `|c| ≤ s`.
    #[default]
    Constructive,
}

/// A satisfying pair of reorderings and the rows it produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub alpha: PairingPermutation,
    pub beta: PairingPermutation,
    /// First row of the circulant `S` (length `|Λ|`).
    pub s_row: FirstRow,
    /// First row of the skew circulant `C` (length `|Υ|`).
    pub c_row: FirstRow,
    /// Per entry of `s_row`: `s_k` minus the largest `|c|` it has to dominate.
    pub margins: Vec<f64>,
}

/// Outcome of [`check_conditions`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub satisfied: bool,
    pub witness: Option<Witness>,
    /// `min_α max_k` of the closed-form lower bound for `λ₀`.
    pub bound_value: f64,
    pub mode: CheckMode,
}

/// Sufficient condition for `Λ ∪ (±γ)Υ` to be realized by the block builds,
/// with the default enumeration settings.
pub fn check_conditions(pair: &SpectrumPair, mode: CheckMode) -> Result<ConditionReport> {
    check_conditions_with(pair, mode, &Enumeration::default())
}

/// [`check_conditions`] with explicit enumeration settings for `P` and `Q`.
pub fn check_conditions_with(
    pair: &SpectrumPair,
    mode: CheckMode,
    opts: &Enumeration,
) -> Result<ConditionReport> {
    let lambda = &pair.circ_part;
    let alphas = enumerate_p(lambda, opts)?;
    if alphas.is_empty() {
        return Err(Error::PairingViolation(
            "no reordering fixing λ0 keeps the circulant pairing".into(),
        ));
    }
    let bound_value = alphas
        .iter()
        .map(|alpha| head_bound(&alpha.apply(lambda)))
        .fold(f64::INFINITY, f64::min);

    match mode {
        CheckMode::Formula => {
            let tol = NONNEG_RTOL * lambda.max_modulus();
            Ok(ConditionReport {
                satisfied: lambda[0].re >= bound_value - tol,
                witness: None,
                bound_value,
                mode,
            })
        }
        CheckMode::Constructive => {
            let betas = enumerate_q(&pair.skew_part, opts)?;
            let c_rows: Vec<(PairingPermutation, FirstRow)> = betas
                .into_iter()
                .filter_map(|beta| {
                    skew_row_from_spectrum(&beta.apply(&pair.skew_part))
                        .ok()
                        .map(|c| (beta, c))
                })
                .collect();
            let odd = pair.is_odd();
            for alpha in alphas {
                let Ok(s_row) = circulant_row_from_spectrum(&alpha.apply(lambda)) else {
                    continue;
                };
                let tol = NONNEG_RTOL * s_row.max_abs();
                for (beta, c_row) in &c_rows {
                    let margins = row_margins(s_row.values(), c_row.values(), odd);
                    if margins.iter().all(|&m| m >= -tol) {
                        return Ok(ConditionReport {
                            satisfied: true,
                            witness: Some(Witness {
                                alpha,
                                beta: beta.clone(),
                                s_row,
                                c_row: c_row.clone(),
                                margins,
                            }),
                            bound_value,
                            mode,
                        });
                    }
                }
            }
            Ok(ConditionReport {
                satisfied: false,
                witness: None,
                bound_value,
                mode,
            })
        }
    }
}

/// `max_k` of the value `λ₀` must reach for the recovered circulant row to be
/// nonnegative at position `k`.
///
/// For `N = 2m+1` this is `−2 Σ_{j=1}^{m} (Re λ_j cos θ_kj + Im λ_j sin θ_kj)`,
/// and for `N = 2m` the middle term `−(−1)^k λ_m` is added with the sum
/// running to `m − 1`; `θ_kj = 2πkj/N`, `k = 0…N−1`.
fn head_bound(list: &ComplexList) -> f64 {
    let n = list.len();
    let m = n / 2;
    let paired = if n % 2 == 1 { m } else { m.saturating_sub(1) };
    (0..n)
        .map(|k| {
            let mut v = 0.0;
            for j in 1..=paired {
                let theta = 2.0 * PI * ((k * j) % n) as f64 / n as f64;
                v -= 2.0 * (list[j].re * libm::cos(theta) + list[j].im * libm::sin(theta));
            }
            if n.is_multiple_of(2) && n >= 2 {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                v -= sign * list[m].re;
            }
            v
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Margins of `|skwcirc(c)| ≤ circ(s)` on the leading block. Even pairs need
/// `|c_k| ≤ s_k`; odd pairs (`|s| = |c| + 1`) additionally need
/// `|c_k| ≤ s_{k+1}` for `k ≥ 1`, coming from the wrapped entries.
fn row_margins(s: &[f64], c: &[f64], odd: bool) -> Vec<f64> {
    let n = c.len();
    (0..s.len())
        .map(|k| {
            let mut need: f64 = if k < n { c[k].abs() } else { 0.0 };
            if odd && k >= 2 {
                need = need.max(c[k - 1].abs());
            }
            s[k] - need
        })
        .collect()
}

/// Target list `Λ ∪ (±γ)Υ`.
pub fn target_spectrum(pair: &SpectrumPair, sign: Sign) -> ComplexList {
    pair.circ_part
        .union(&pair.skew_part.scaled(sign.factor() * pair.gamma))
}

/// Builds the matrix certified by a constructive witness: `N±γ` for even
/// pairs, the bordered build with even last-row split for odd pairs.
pub fn build_from_witness(pair: &SpectrumPair, witness: &Witness, sign: Sign) -> Result<RealMatrix> {
    let spec = BlockBuildSpec::new(pair.gamma, sign)?;
    if pair.is_odd() {
        build_odd(&materialize_circulant(&witness.s_row), &witness.c_row, &spec)
    } else {
        build_circ_skew(&witness.s_row, &witness.c_row, &spec)
    }
}

/// Result of [`brauer_augment`].
#[derive(Debug, Clone, PartialEq)]
pub struct BrauerAugmentation {
    /// The realizing matrix of order `2n+1`.
    pub matrix: RealMatrix,
    /// `max_{β∈Q, k} |c_k(β)|`.
    pub chi: f64,
    /// Reordering of Υ giving the skew row (smallest `max|c_k|`).
    pub beta: PairingPermutation,
    pub c_row: FirstRow,
    /// Reordering of `Λ̃` giving the nonnegative circulant `B`.
    pub alpha: PairingPermutation,
    pub b_row: FirstRow,
    /// `R = B + χ·eeᵀ`.
    pub r: RealMatrix,
}

/// Realizes `{ρ, λ₁, …, λₙ} ∪ (±γ)Υ` for `|Υ| = n`.
///
/// With `χ` the largest `|c_k|` over all skew rows recovered from reorderings
/// of Υ, a nonnegative circulant `B` with spectrum `{ρ − (n+1)χ, λ₁, …, λₙ}` is
/// required. Then `R = B + χ·eeᵀ` has spectrum `{ρ, λ₁, …, λₙ}` and every
/// entry at least `χ`, so `R` dominates any recovered skew row and the
/// bordered build applies. The last row of the build is split as
/// `((r_{n,j} ± γc_j)/2, (r_{n,j} ∓ γc_j)/2)`, mirroring the interior blocks.
pub fn brauer_augment(
    upsilon: &ComplexList,
    tail: &ComplexList,
    rho: f64,
    gamma: f64,
    sign: Sign,
) -> Result<BrauerAugmentation> {
    let n = upsilon.len();
    if n == 0 {
        return Err(Error::InvalidInput("skew part must be nonempty".into()));
    }
    if tail.len() != n {
        return Err(Error::Dimension(format!(
            "tail has length {} but the skew part has length {n}",
            tail.len()
        )));
    }
    if !rho.is_finite() {
        return Err(Error::InvalidInput("rho must be finite".into()));
    }
    let spec = BlockBuildSpec::new(gamma, sign)?;
    if !classify_pairing(upsilon).is_skew_compatible {
        return Err(Error::PairingViolation(
            "skew part cannot be ordered as μ_{n-1-k} = conj μ_k".into(),
        ));
    }

    let opts = Enumeration::default();
    let mut chi: f64 = 0.0;
    let mut best: Option<(f64, PairingPermutation)> = None;
    for beta in enumerate_q(upsilon, &opts)? {
        let row = skew_row_complex(&beta.apply(upsilon))?;
        let worst = row.iter().fold(0.0, |m: f64, z| m.max(z.norm()));
        chi = chi.max(worst);
        if best.as_ref().is_none_or(|(w, _)| worst < *w) {
            best = Some((worst, beta));
        }
    }
    let (_, beta) = best.ok_or_else(|| {
        Error::PairingViolation("skew part admits no pairing-preserving order".into())
    })?;
    let c_row = skew_row_from_spectrum(&beta.apply(upsilon))?;

    let mut shifted = Vec::with_capacity(n + 1);
    shifted.push(Complex64::new(rho - (n + 1) as f64 * chi, 0.0));
    shifted.extend_from_slice(tail);
    let shifted = ComplexList::new(shifted);
    let tol = NONNEG_RTOL * shifted.max_modulus().max(rho.abs());
    let mut found = None;
    for alpha in enumerate_p(&shifted, &opts)? {
        let Ok(b) = circulant_row_from_spectrum(&alpha.apply(&shifted)) else {
            continue;
        };
        if b.values().iter().all(|&x| x >= -tol) {
            found = Some((alpha, b));
            break;
        }
    }
    let (alpha, b_row) = found.ok_or(Error::NoNonnegativeCirculant)?;
    let b_row = FirstRow::new(b_row.values().iter().map(|&x| x.max(0.0)).collect())?;

    let r = materialize_circulant(&b_row).map(|x| x + chi);
    let slack = NONNEG_RTOL * r.max_abs().max(chi);
    if r.min_entry() < chi - slack {
        return Err(Error::Domination(format!(
            "min r_ij = {} < chi = {chi}",
            r.min_entry()
        )));
    }
    if let Some(k) = c_row.values().iter().position(|c| c.abs() > chi + slack) {
        return Err(Error::Domination(format!(
            "|c_{k}| = {} > chi = {chi}",
            c_row.values()[k].abs()
        )));
    }

    let sg = sign.factor() * gamma;
    let split = (0..n)
        .map(|j| {
            let (rv, c) = (r[(n, j)], c_row.values()[j]);
            (((rv + sg * c) / 2.0).max(0.0), ((rv - sg * c) / 2.0).max(0.0))
        })
        .collect();
    let matrix = build_odd(&r, &c_row, &spec.with_split(split))?;
    Ok(BrauerAugmentation {
        matrix,
        chi,
        beta,
        c_row,
        alpha,
        b_row,
        r,
    })
}

/// `M±γ` from `circ(s)` and an absolutely circulant `C` with `|c_k| ≤ s_k`.
pub fn build_abscirc_combination(
    s_row: &FirstRow,
    m: &AbsolutelyCirculant,
    spec: &BlockBuildSpec,
) -> Result<RealMatrix> {
    if m.order() != s_row.len() {
        return Err(Error::Dimension(format!(
            "circulant row has length {} but the absolutely circulant matrix has order {}",
            s_row.len(),
            m.order()
        )));
    }
    let tol = NONNEG_RTOL * s_row.max_abs();
    let bad: Vec<(usize, usize)> = s_row
        .values()
        .iter()
        .zip(m.magnitude().values())
        .enumerate()
        .filter(|(_, (s, c))| **c > **s + tol)
        .map(|(k, _)| (0, k))
        .collect();
    if !bad.is_empty() {
        return Err(Error::Majorization { positions: bad });
    }
    build_even(&materialize_circulant(s_row), &materialize_abscirc(m), spec)
}
