//! Candidate spectra and their conjugate-pairing structure.
//!
//! A circulant spectrum `(λ₀, …, λ_{n−1})` satisfies `λ_{n−k} = conj λ_k` with
//! `λ₀` real; a skew circulant spectrum `(μ₀, …, μ_{n−1})` satisfies
//! `μ_{n−1−k} = conj μ_k`. The sets `P` and `Q` enumerated here are the
//! reorderings of a list that keep those pairings, `P` additionally fixing
//! index 0.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use num_complex::Complex64;

use crate::{Error, Result};

/// Relative tolerance for deciding that two list entries are conjugates.
pub const PAIRING_RTOL: f64 = 1e-12;

/// Default bound on the list length for exhaustive enumeration of `P`/`Q`.
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

/// Ordered multiset of complex numbers, usually a candidate spectrum.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexList(Vec<Complex64>);

impl ComplexList {
    pub fn new(entries: Vec<Complex64>) -> Self {
        ComplexList(entries)
    }

    pub fn from_reals(values: &[f64]) -> Self {
        values.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    pub fn zeros(n: usize) -> Self {
        ComplexList(vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.0
    }

    pub fn max_modulus(&self) -> f64 {
        self.0.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Absolute tolerance used for conjugate matching: `1e−12 · max|entry|`.
    pub fn pairing_tolerance(&self) -> f64 {
        PAIRING_RTOL * self.max_modulus()
    }

    /// The list reordered so that entry `k` is `self[order[k]]`.
    pub fn reorder(&self, order: &[usize]) -> ComplexList {
        order.iter().map(|&i| self.0[i]).collect()
    }

    pub fn scaled(&self, factor: f64) -> ComplexList {
        self.0.iter().map(|z| z * factor).collect()
    }

    /// Concatenation `self ∪ other`, preserving order.
    pub fn union(&self, other: &ComplexList) -> ComplexList {
        self.0.iter().chain(other.0.iter()).copied().collect()
    }

    /// Moves the largest real entry to index 0 (swapping it with the old head).
    pub fn with_perron_first(&self) -> ComplexList {
        let tol = self.pairing_tolerance();
        let mut out = self.clone();
        let best = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, z)| z.im.abs() <= tol)
            .fold(None, |best: Option<(usize, f64)>, (i, z)| match best {
                Some((_, v)) if v >= z.re => best,
                _ => Some((i, z.re)),
            });
        if let Some((i, _)) = best {
            out.0.swap(0, i);
        }
        out
    }

    /// `λ_{n−k} = conj λ_k` for `k = 1…n−1` and `λ₀` real, in index order.
    pub fn is_circulant_paired(&self) -> bool {
        let tol = self.pairing_tolerance();
        let n = self.len();
        n > 0
            && self.0[0].im.abs() <= tol
            && (1..n).all(|k| conj_close(self.0[n - k], self.0[k], tol))
    }

    /// `μ_{n−1−k} = conj μ_k` for `k = 0…n−1`, in index order.
    pub fn is_skew_paired(&self) -> bool {
        let tol = self.pairing_tolerance();
        let n = self.len();
        (0..n).all(|k| conj_close(self.0[n - 1 - k], self.0[k], tol))
    }
}

impl Deref for ComplexList {
    type Target = [Complex64];

    fn deref(&self) -> &[Complex64] {
        &self.0
    }
}

impl From<Vec<Complex64>> for ComplexList {
    fn from(v: Vec<Complex64>) -> Self {
        ComplexList(v)
    }
}

impl FromIterator<Complex64> for ComplexList {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        ComplexList(iter.into_iter().collect())
    }
}

fn conj_close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b.conj()).norm() <= tol
}

/// Which pairing a reordering preserves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairingKind {
    /// Member of `P`: fixes 0 and keeps `λ_{n−k} = conj λ_k`.
    Circulant,
    /// Member of `Q`: keeps `μ_{n−1−k} = conj μ_k`.
    Skew,
}

/// A reordering `α` (or `β`) of a list: position `k` receives `list[mapping[k]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairingPermutation {
    pub mapping: Vec<usize>,
    pub kind: PairingKind,
}

impl PairingPermutation {
    pub fn apply(&self, list: &ComplexList) -> ComplexList {
        list.reorder(&self.mapping)
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(k, &m)| k == m)
    }
}

/// Outcome of [`classify_pairing`].
#[derive(Debug, Clone, PartialEq)]
pub struct PairingReport {
    pub is_circulant_compatible: bool,
    pub is_skew_compatible: bool,
    /// Input indices in an order satisfying the circulant pairing, with the
    /// largest admissible real entry first.
    pub circulant_witness: Option<Vec<usize>>,
    /// Input indices in an order satisfying the skew pairing.
    pub skew_witness: Option<Vec<usize>>,
    /// For every entry, the index of the entry it is matched with as a
    /// conjugate (itself for reals); `None` when no partner exists.
    pub conjugate_pairs: Vec<Option<usize>>,
}

/// Decides whether a list can be reordered into a circulant and/or a skew
/// circulant spectrum, and produces witness orderings.
pub fn classify_pairing(list: &ComplexList) -> PairingReport {
    let n = list.len();
    let tol = list.pairing_tolerance();
    let mut partner: Vec<Option<usize>> = vec![None; n];

    let mut reals = Vec::new();
    let mut complex_pairs = Vec::new();
    let mut closed = true;
    for i in 0..n {
        let z = list[i];
        if z.im.abs() <= tol {
            partner[i] = Some(i);
            reals.push(i);
        } else if z.im > 0.0 {
            let found = (0..n).find(|&j| {
                partner[j].is_none() && list[j].im < -tol && conj_close(list[j], z, tol)
            });
            match found {
                Some(j) => {
                    partner[i] = Some(j);
                    partner[j] = Some(i);
                    complex_pairs.push((i, j));
                }
                None => closed = false,
            }
        }
    }
    if partner.iter().any(Option::is_none) {
        closed = false;
    }

    let (circulant_witness, skew_witness) = if closed && n > 0 {
        let classes = real_classes(list, &reals, tol);
        (
            arrange(n, &classes, &complex_pairs, PairingKind::Circulant),
            arrange(n, &classes, &complex_pairs, PairingKind::Skew),
        )
    } else {
        (None, None)
    };

    debug_assert!(circulant_witness
        .as_ref()
        .is_none_or(|w| list.reorder(w).is_circulant_paired()));
    debug_assert!(skew_witness
        .as_ref()
        .is_none_or(|w| list.reorder(w).is_skew_paired()));

    PairingReport {
        is_circulant_compatible: circulant_witness.is_some(),
        is_skew_compatible: skew_witness.is_some(),
        circulant_witness,
        skew_witness,
        conjugate_pairs: partner,
    }
}

/// Groups real entries into classes of (numerically) equal values, largest
/// value first.
fn real_classes(list: &ComplexList, reals: &[usize], tol: f64) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &i in reals {
        match classes
            .iter_mut()
            .find(|c| (list[c[0]].re - list[i].re).abs() <= tol)
        {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes.sort_by(|a, b| list[b[0]].re.total_cmp(&list[a[0]].re));
    classes
}

/// Places real classes and conjugate pairs into the slots of a circulant or
/// skew pairing. Returns `None` when the multiplicities do not fit.
fn arrange(
    n: usize,
    classes: &[Vec<usize>],
    complex_pairs: &[(usize, usize)],
    kind: PairingKind,
) -> Option<Vec<usize>> {
    let (self_slots, pair_slots): (Vec<usize>, Vec<(usize, usize)>) = match kind {
        PairingKind::Circulant => {
            let mut s = vec![0];
            if n.is_multiple_of(2) && n > 1 {
                s.push(n / 2);
            }
            (s, (1..n).filter(|&k| k < n - k).map(|k| (k, n - k)).collect())
        }
        PairingKind::Skew => {
            let s = if n % 2 == 1 { vec![n / 2] } else { vec![] };
            (s, (0..n).filter(|&k| k < n - 1 - k).map(|k| (k, n - 1 - k)).collect())
        }
    };

    let mut singles: Vec<usize> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for class in classes {
        let mut members = class.as_slice();
        if members.len() % 2 == 1 {
            singles.push(members[0]);
            members = &members[1..];
        }
        for p in members.chunks(2) {
            pairs.push((p[0], p[1]));
        }
    }
    if singles.len() > self_slots.len() {
        return None;
    }
    // Fill leftover self slots by splitting a real pair, largest first.
    if singles.len() + 2 == self_slots.len() && !pairs.is_empty() {
        let (a, b) = pairs.remove(0);
        singles.push(a);
        singles.push(b);
    }
    if singles.len() != self_slots.len() {
        return None;
    }
    pairs.splice(0..0, complex_pairs.iter().copied());
    if pairs.len() != pair_slots.len() {
        return None;
    }

    let mut order = vec![usize::MAX; n];
    for (slot, idx) in self_slots.iter().zip(&singles) {
        order[*slot] = *idx;
    }
    for ((lo, hi), (a, b)) in pair_slots.iter().zip(&pairs) {
        order[*lo] = *a;
        order[*hi] = *b;
    }
    Some(order)
}

/// Controls enumeration of `P` and `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Enumeration {
    /// Stop after this many members; `None` means exhaustive.
    pub limit: Option<usize>,
    /// Longest list that may be enumerated exhaustively.
    pub cap: usize,
    /// Permit exhaustive enumeration beyond `cap`.
    pub allow_over_cap: bool,
    /// Drop reorderings that produce an already-seen reordered list.
    pub dedup: bool,
}

impl Default for Enumeration {
    fn default() -> Self {
        Enumeration {
            limit: None,
            cap: DEFAULT_ENUMERATION_CAP,
            allow_over_cap: false,
            dedup: true,
        }
    }
}

impl Enumeration {
    pub fn first(limit: usize) -> Self {
        Enumeration {
            limit: Some(limit),
            ..Self::default()
        }
    }
}

/// Reorderings fixing index 0 that keep the circulant pairing (the set `P`),
/// in lexicographic order of the mapping.
pub fn enumerate_p(list: &ComplexList, opts: &Enumeration) -> Result<Vec<PairingPermutation>> {
    enumerate(list, opts, PairingKind::Circulant)
}

/// Reorderings that keep the skew pairing (the set `Q`), in lexicographic
/// order of the mapping.
pub fn enumerate_q(list: &ComplexList, opts: &Enumeration) -> Result<Vec<PairingPermutation>> {
    enumerate(list, opts, PairingKind::Skew)
}

fn enumerate(
    list: &ComplexList,
    opts: &Enumeration,
    kind: PairingKind,
) -> Result<Vec<PairingPermutation>> {
    let n = list.len();
    if opts.limit.is_none() && n > opts.cap && !opts.allow_over_cap {
        return Err(Error::CapExceeded { n, cap: opts.cap });
    }
    let limit = opts.limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if n == 0 || limit == 0 {
        return Ok(out);
    }

    let tol = list.pairing_tolerance();
    // Entries that compare equal share a class; dedup skips repeated classes
    // at the same search position.
    let class: Vec<usize> = (0..n)
        .map(|i| (0..=i).find(|&j| (list[j] - list[i]).norm() <= tol).unwrap_or(i))
        .collect();

    let mut search = Search {
        list,
        kind,
        tol,
        class,
        dedup: opts.dedup,
        limit,
        mapping: vec![0; n],
        used: vec![false; n],
        out: &mut out,
    };
    match kind {
        PairingKind::Circulant => {
            search.mapping[0] = 0;
            search.used[0] = true;
            search.descend(1);
        }
        PairingKind::Skew => {
            search.descend(0);
        }
    }
    Ok(out)
}

struct Search<'a> {
    list: &'a ComplexList,
    kind: PairingKind,
    tol: f64,
    class: Vec<usize>,
    dedup: bool,
    limit: usize,
    mapping: Vec<usize>,
    used: Vec<bool>,
    out: &'a mut Vec<PairingPermutation>,
}

impl Search<'_> {
    fn partner(&self, k: usize) -> Option<usize> {
        let n = self.mapping.len();
        match self.kind {
            PairingKind::Circulant if k == 0 => None,
            PairingKind::Circulant => Some(n - k),
            PairingKind::Skew => Some(n - 1 - k),
        }
    }

    /// Returns false once the limit is reached.
    fn descend(&mut self, pos: usize) -> bool {
        let n = self.mapping.len();
        if pos == n {
            self.out.push(PairingPermutation {
                mapping: self.mapping.clone(),
                kind: self.kind,
            });
            return self.out.len() < self.limit;
        }
        let mut tried: Vec<usize> = Vec::new();
        for idx in 0..n {
            if self.used[idx] {
                continue;
            }
            if self.dedup {
                if tried.contains(&self.class[idx]) {
                    continue;
                }
                tried.push(self.class[idx]);
            }
            if let Some(p) = self.partner(pos) {
                if p <= pos {
                    let other = if p == pos { idx } else { self.mapping[p] };
                    if !conj_close(self.list[other], self.list[idx], self.tol) {
                        continue;
                    }
                }
            }
            self.mapping[pos] = idx;
            self.used[idx] = true;
            let go_on = self.descend(pos + 1);
            self.used[idx] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Λ (circulant part), Υ (skew part) and the scale γ of a target
/// `Λ ∪ (±γ)Υ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumPair {
    pub circ_part: ComplexList,
    pub skew_part: ComplexList,
    pub gamma: f64,
}

impl SpectrumPair {
    /// Validates lengths (`|Λ| ∈ {n, n+1}` with `n = |Υ|`), `γ ∈ [0, 1]`, a
    /// real head `λ₀`, and that both lists admit their pairing.
    pub fn new(circ_part: ComplexList, skew_part: ComplexList, gamma: f64) -> Result<Self> {
        let n = skew_part.len();
        if n == 0 {
            return Err(Error::InvalidInput("skew part must be nonempty".into()));
        }
        if circ_part.len() != n && circ_part.len() != n + 1 {
            return Err(Error::Dimension(format!(
                "circulant part has length {} but skew part has length {n}; expected {n} or {}",
                circ_part.len(),
                n + 1
            )));
        }
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::InvalidInput(format!("gamma = {gamma} is outside [0, 1]")));
        }
        if circ_part[0].im.abs() > circ_part.pairing_tolerance() {
            return Err(Error::PairingViolation(format!(
                "leading entry {} of the circulant part is not real",
                circ_part[0]
            )));
        }
        let report = classify_pairing(&circ_part);
        if !report.is_circulant_compatible {
            return Err(Error::PairingViolation(
                "circulant part cannot be ordered as λ_{n-k} = conj λ_k".into(),
            ));
        }
        if !classify_pairing(&skew_part).is_skew_compatible {
            return Err(Error::PairingViolation(
                "skew part cannot be ordered as μ_{n-1-k} = conj μ_k".into(),
            ));
        }
        Ok(SpectrumPair {
            circ_part,
            skew_part,
            gamma,
        })
    }

    /// True when Λ has one more entry than Υ (order `2n+1` target).
    pub fn is_odd(&self) -> bool {
        self.circ_part.len() == self.skew_part.len() + 1
    }
}
