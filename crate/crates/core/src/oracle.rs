//! Independent eigenvalue computation and multiset comparison of spectra.
//!
//! [`spectrum`] balances the matrix, reduces it to upper Hessenberg form with
//! Householder reflections and runs the Francis double-shift QR iteration.
//! Nothing here relies on the circulant structure used by the constructions,
//! so it can be used to check them.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::matrix::RealMatrix;
use crate::spectra::ComplexList;
use crate::{Error, Result};

/// Largest order accepted by [`spectrum`].
pub const MAX_ORDER: usize = 64;

/// QR sweeps allowed per eigenvalue before giving up.
pub const MAX_ITERATIONS: usize = 60;

const RADIX: f64 = 2.0;

/// All eigenvalues of a real square matrix, with multiplicity, sorted by
/// decreasing real part and then decreasing imaginary part.
pub fn spectrum(m: &RealMatrix) -> Result<ComplexList> {
    let n = m.order()?;
    if n > MAX_ORDER {
        return Err(Error::Dimension(format!(
            "order {n} exceeds the oracle limit of {MAX_ORDER}"
        )));
    }
    if !m.is_finite() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    // 1-based working copy, which keeps the QR sweep indices readable.
    let mut a = RealMatrix::from_fn(n + 1, n + 1, |i, j| {
        if i == 0 || j == 0 {
            0.0
        } else {
            m[(i - 1, j - 1)]
        }
    });
    balance(&mut a, n);
    hessenberg(&mut a, n);
    let mut eig = hqr(&mut a, n)?;
    eig.sort_by(|x, y| y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im)));
    Ok(ComplexList::new(eig))
}

/// Diagonal similarity scaling by powers of two so that row and column norms
/// are comparable.
fn balance(a: &mut RealMatrix, n: usize) {
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 1..=n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 1..=n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut g = r / RADIX;
            let mut f = 1.0;
            let s = c + r;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 1..=n {
                    a[(i, j)] *= g;
                }
                for j in 1..=n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form (similarity transform).
fn hessenberg(a: &mut RealMatrix, n: usize) {
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n + 1];
    for k in 1..=n - 2 {
        let norm = libm::sqrt((k + 1..=n).map(|i| a[(i, k)] * a[(i, k)]).sum::<f64>());
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[(k + 1, k)] > 0.0 { -norm } else { norm };
        for i in k + 1..=n {
            v[i] = a[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm2: f64 = (k + 1..=n).map(|i| v[i] * v[i]).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // A <- (I - 2vvᵀ/vᵀv) A
        for j in k..=n {
            let dot: f64 = (k + 1..=n).map(|i| v[i] * a[(i, j)]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in k + 1..=n {
                a[(i, j)] -= f * v[i];
            }
        }
        // A <- A (I - 2vvᵀ/vᵀv)
        for i in 1..=n {
            let dot: f64 = (k + 1..=n).map(|j| a[(i, j)] * v[j]).sum();
            let f = 2.0 * dot / vnorm2;
            for j in k + 1..=n {
                a[(i, j)] -= f * v[j];
            }
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..=n {
            a[(i, k)] = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (1-based).
fn hqr(a: &mut RealMatrix, n: usize) -> Result<Vec<Complex64>> {
    let mut wr = vec![0.0; n + 1];
    let mut wi = vec![0.0; n + 1];
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in (i.max(2) - 1)..=n {
            anorm += a[(i, j)].abs();
        }
    }
    let eps = f64::EPSILON;
    let mut nn = n;
    let mut t = 0.0;
    let (mut p, mut q, mut r, mut x, mut y, mut z);
    while nn >= 1 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l >= 2 {
                let mut s = a[(l - 1, l - 1)].abs() + a[(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[(l, l - 1)].abs() <= eps * s {
                    a[(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            x = a[(nn, nn)];
            if l == nn {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                nn -= 1;
                break;
            }
            y = a[(nn - 1, nn - 1)];
            let mut w = a[(nn, nn - 1)] * a[(nn - 1, nn)];
            if l == nn - 1 {
                p = 0.5 * (y - x);
                q = p * p + w;
                z = libm::sqrt(q.abs());
                x += t;
                if q >= 0.0 {
                    z = p + sign(z, p);
                    wr[nn - 1] = x + z;
                    wr[nn] = x + z;
                    if z != 0.0 {
                        wr[nn] = x - w / z;
                    }
                    wi[nn - 1] = 0.0;
                    wi[nn] = 0.0;
                } else {
                    wr[nn - 1] = x + p;
                    wr[nn] = x + p;
                    wi[nn - 1] = -z;
                    wi[nn] = z;
                }
                nn -= 2;
                break;
            }
            if its == MAX_ITERATIONS {
                return Err(Error::NonConvergence(its));
            }
            if its > 0 && its % 10 == 0 {
                t += x;
                for i in 1..=nn {
                    a[(i, i)] -= x;
                }
                let s = a[(nn, nn - 1)].abs() + a[(nn - 1, nn - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            let mut m = nn - 2;
            loop {
                z = a[(m, m)];
                r = x - z;
                let s = y - z;
                p = (r * s - w) / a[(m + 1, m)] + a[(m, m + 1)];
                q = a[(m + 1, m + 1)] - z - r - s;
                r = a[(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[(m - 1, m - 1)].abs() + z.abs() + a[(m + 1, m + 1)].abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nn {
                a[(i, i - 2)] = 0.0;
                if i != m + 2 {
                    a[(i, i - 3)] = 0.0;
                }
            }
            for k in m..nn {
                if k != m {
                    p = a[(k, k - 1)];
                    q = a[(k + 1, k - 1)];
                    r = 0.0;
                    if k != nn - 1 {
                        r = a[(k + 2, k - 1)];
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign(libm::sqrt(p * p + q * q + r * r), p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[(k, k - 1)] = -a[(k, k - 1)];
                    }
                } else {
                    a[(k, k - 1)] = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;
                for j in k..=nn {
                    p = a[(k, j)] + q * a[(k + 1, j)];
                    if k != nn - 1 {
                        p += r * a[(k + 2, j)];
                        a[(k + 2, j)] -= p * z;
                    }
                    a[(k + 1, j)] -= p * y;
                    a[(k, j)] -= p * x;
                }
                let mmin = nn.min(k + 3);
                for i in l..=mmin {
                    p = x * a[(i, k)] + y * a[(i, k + 1)];
                    if k != nn - 1 {
                        p += z * a[(i, k + 2)];
                        a[(i, k + 2)] -= p * r;
                    }
                    a[(i, k + 1)] -= p * q;
                    a[(i, k)] -= p;
                }
            }
        }
    }
    Ok((1..=n).map(|i| Complex64::new(wr[i], wi[i])).collect())
}

/// Outcome of [`match_spectra`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMatchReport {
    pub matched: bool,
    /// Bottleneck distance: the smallest achievable maximum `|x_i − y_π(i)|`
    /// over all bijections `π`.
    pub max_pair_distance: f64,
    /// `pairing[i]` is the index in `y` matched to `x[i]`.
    pub pairing: Vec<usize>,
}

/// Compares two lists as multisets. The pairing minimizes the largest pair
/// distance exactly, and `matched` holds iff that distance is at most `tol`.
pub fn match_spectra(x: &[Complex64], y: &[Complex64], tol: f64) -> Result<SpectrumMatchReport> {
    let n = x.len();
    if y.len() != n {
        return Err(Error::Dimension(format!(
            "cannot match {n} values against {}",
            y.len()
        )));
    }
    if n == 0 {
        return Ok(SpectrumMatchReport {
            matched: true,
            max_pair_distance: 0.0,
            pairing: Vec::new(),
        });
    }
    let dist: Vec<f64> = x
        .iter()
        .flat_map(|a| y.iter().map(move |b| (a - b).norm()))
        .collect();
    if dist.iter().any(|d| d.is_nan()) {
        return Err(Error::InvalidInput("spectra contain NaN".into()));
    }
    let mut levels = dist.clone();
    levels.sort_by(f64::total_cmp);
    levels.dedup();

    let (mut lo, mut hi) = (0, levels.len() - 1);
    let mut best = perfect_matching(n, &dist, levels[hi]).expect("complete graph always matches");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match perfect_matching(n, &dist, levels[mid]) {
            Some(p) => {
                best = p;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    if lo == levels.len() - 1 {
        best = perfect_matching(n, &dist, levels[lo]).expect("complete graph always matches");
    }
    let max_pair_distance = (0..n).map(|i| dist[i * n + best[i]]).fold(0.0, f64::max);
    Ok(SpectrumMatchReport {
        matched: max_pair_distance <= tol,
        max_pair_distance,
        pairing: best,
    })
}

/// Augmenting-path matching on the graph of pairs at distance `≤ limit`.
fn perfect_matching(n: usize, dist: &[f64], limit: f64) -> Option<Vec<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(i, n, dist, limit, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut pairing = vec![0; n];
    for (j, o) in owner.iter().enumerate() {
        pairing[o.expect("perfect matching covers every column")] = j;
    }
    Some(pairing)
}

fn augment(
    i: usize,
    n: usize,
    dist: &[f64],
    limit: f64,
    seen: &mut [bool],
    owner: &mut [Option<usize>],
) -> bool {
    for j in 0..n {
        if dist[i * n + j] <= limit && !seen[j] {
            seen[j] = true;
            let free = match owner[j] {
                None => true,
                Some(k) => augment(k, n, dist, limit, seen, owner),
            };
            if free {
                owner[j] = Some(i);
                return true;
            }
        }
    }
    false
}

/// Oracle spectrum of `m` matched against `expected` within `tol`.
pub fn verify_spectrum(m: &RealMatrix, expected: &[Complex64], tol: f64) -> Result<SpectrumMatchReport> {
    let computed = spectrum(m)?;
    match_spectra(&computed, expected, tol)
}
