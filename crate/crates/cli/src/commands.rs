//! One function per subcommand. Each returns a JSON report, the matrix it
//! built (if any) and the exit status.

use std::path::Path;

use niep_core::block::{
    build_circ_skew, build_even, build_odd, build_odd_general, BlockBuildSpec, Sign, NONNEG_RTOL,
};
use niep_core::dft::{circulant_eigenvalues, skew_eigenvalues};
use niep_core::oracle::{match_spectra, spectrum, verify_spectrum};
use niep_core::realize::{
    brauer_augment, build_abscirc_combination, build_from_witness, check_conditions,
    realize_four, realize_region, target_spectrum, CheckMode, ConditionReport, RegionPoint,
};
use niep_core::spectra::{PairingPermutation, SpectrumPair};
use niep_core::structured::materialize_abscirc;
use niep_core::{Complex64, ComplexList, RealMatrix};
use serde_json::{json, Value};

use crate::input::{self, BuildInput, RowOrMatrix};
use crate::CliError;

/// Default oracle tolerance relative to `max(1, max|λ|)`. Loose enough for
/// the double eigenvalues the block builds produce.
pub const VERIFY_RTOL: f64 = 1e-6;

/// Exit status for a clean negative.
pub const NOT_MET: u8 = 2;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub matrix: Option<RealMatrix>,
    pub code: u8,
}

impl Outcome {
    fn success(report: Value, matrix: Option<RealMatrix>) -> Self {
        Outcome {
            report,
            matrix,
            code: 0,
        }
    }
}

pub fn default_tol(expected: &ComplexList) -> f64 {
    VERIFY_RTOL * expected.max_modulus().max(1.0)
}

fn complex_json(list: &[Complex64]) -> Value {
    list.iter().map(|z| json!([z.re, z.im])).collect()
}

fn matrix_json(m: &RealMatrix) -> Value {
    json!(m.to_rows())
}

fn mapping_json(p: &PairingPermutation) -> Value {
    json!(p.mapping)
}

/// Re-checks a construction with the eigenvalue oracle. Any failure here is
/// a bug in a construction, so it is reported as a verification error.
pub fn certify(m: &RealMatrix, expected: &ComplexList, tol: Option<f64>) -> Result<Value, CliError> {
    let tol = tol.unwrap_or_else(|| default_tol(expected));
    let floor = -NONNEG_RTOL * m.max_abs().max(1.0);
    if m.min_entry() < floor {
        return Err(CliError::Verification(format!(
            "constructed matrix has a negative entry {}",
            m.min_entry()
        )));
    }
    let rep = verify_spectrum(m, expected, tol)
        .map_err(|e| CliError::Verification(format!("oracle failed: {e}")))?;
    if !rep.matched {
        return Err(CliError::Verification(format!(
            "oracle spectrum is {} away from the target (tolerance {tol})",
            rep.max_pair_distance
        )));
    }
    log::info!("verified: max pair distance {}", rep.max_pair_distance);
    Ok(json!({ "max_pair_distance": rep.max_pair_distance, "tolerance": tol }))
}

pub fn realize4(path: &Path, tol: Option<f64>) -> Result<Outcome, CliError> {
    let values: Vec<input::ComplexInput> = input::read_json(path)?;
    let sigma = input::complex_list(&values)?;
    let m = realize_four(&sigma)?;
    let verification = certify(&m, &sigma, tol)?;
    let report = json!({
        "matrix": matrix_json(&m),
        "spectrum": complex_json(&sigma),
        "verification": verification,
    });
    Ok(Outcome::success(report, Some(m)))
}

pub fn realize_region_point(path: &Path, tol: Option<f64>) -> Result<Outcome, CliError> {
    let p: input::RegionInput = input::read_json(path)?;
    let point = RegionPoint::new(p.r, p.a, p.b)?;
    let m = realize_region(&point)?;
    let target = point.target_spectrum();
    let verification = certify(&m, &target, tol)?;
    let report = json!({
        "matrix": matrix_json(&m),
        "spectrum": complex_json(&target),
        "verification": verification,
    });
    Ok(Outcome::success(report, Some(m)))
}

/// Options shared by the block builds.
#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub gamma: f64,
    pub sign: Sign,
}

impl BuildOptions {
    fn spec(&self) -> Result<BlockBuildSpec, CliError> {
        Ok(BlockBuildSpec::new(self.gamma, self.sign)?)
    }

    fn scale(&self) -> f64 {
        self.sign.factor() * self.gamma
    }
}

pub fn build(
    path: &Path,
    opts: BuildOptions,
    split: Option<Vec<(f64, f64)>>,
    tol: Option<f64>,
) -> Result<Outcome, CliError> {
    let doc: BuildInput = input::read_json(path)?;
    let mut spec = opts.spec()?;
    let is_odd = matches!(doc, BuildInput::Odd { .. });
    if let Some(split) = split {
        if !is_odd {
            return Err(CliError::Input(
                "--split only applies to odd builds".into(),
            ));
        }
        spec = spec.with_split(split);
    }
    let (m, expected) = match &doc {
        BuildInput::CircSkew { s, c } => {
            let (s, c) = (input::first_row(s)?, input::first_row(c)?);
            let m = build_circ_skew(&s, &c, &spec)?;
            let expected =
                circulant_eigenvalues(&s).union(&skew_eigenvalues(&c).scaled(opts.scale()));
            (m, expected)
        }
        BuildInput::Even { s, c } => {
            let (s, c) = (input::matrix(s)?, input::matrix(c)?);
            let m = build_even(&s, &c, &spec)?;
            let expected = spectrum(&s)?.union(&spectrum(&c)?.scaled(opts.scale()));
            (m, expected)
        }
        BuildInput::Odd { s, c } => {
            let s = input::matrix(s)?;
            match c {
                RowOrMatrix::Row(c) => {
                    let c = input::first_row(c)?;
                    let m = build_odd(&s, &c, &spec)?;
                    (m, spectrum(&s)?.union(&skew_eigenvalues(&c).scaled(opts.scale())))
                }
                RowOrMatrix::Matrix(c) => {
                    let c = input::matrix(c)?;
                    let m = build_odd_general(&s, &c, &spec)?;
                    (m, spectrum(&s)?.union(&spectrum(&c)?.scaled(opts.scale())))
                }
            }
        }
        BuildInput::Abscirc {
            s,
            magnitude,
            signs,
        } => {
            let s = input::first_row(s)?;
            let c = BuildInput::abscirc(magnitude, signs)?;
            let m = build_abscirc_combination(&s, &c, &spec)?;
            let expected = circulant_eigenvalues(&s)
                .union(&spectrum(&materialize_abscirc(&c))?.scaled(opts.scale()));
            (m, expected)
        }
    };
    let verification = certify(&m, &expected, tol)?;
    let report = json!({
        "matrix": matrix_json(&m),
        "spectrum": complex_json(&expected),
        "verification": verification,
    });
    Ok(Outcome::success(report, Some(m)))
}

fn condition_json(rep: &ConditionReport) -> Value {
    let mode = match rep.mode {
        CheckMode::Formula => "formula",
        CheckMode::Constructive => "constructive",
    };
    let witness = rep.witness.as_ref().map(|w| {
        json!({
            "alpha": mapping_json(&w.alpha),
            "beta": mapping_json(&w.beta),
            "s_row": w.s_row.values(),
            "c_row": w.c_row.values(),
            "margins": w.margins,
        })
    });
    json!({
        "satisfied": rep.satisfied,
        "mode": mode,
        "bound_value": rep.bound_value,
        "witness": witness,
    })
}

/// Exit 0 when the sufficient condition holds, 2 otherwise. A constructive
/// witness is also built and verified.
pub fn check(
    path: &Path,
    opts: BuildOptions,
    mode: CheckMode,
    tol: Option<f64>,
) -> Result<Outcome, CliError> {
    let doc: input::PairInput = input::read_json(path)?;
    let pair = SpectrumPair::new(
        input::complex_list(&doc.circ_part)?,
        input::complex_list(&doc.skew_part)?,
        opts.gamma,
    )?;
    let rep = check_conditions(&pair, mode)?;
    let mut report = condition_json(&rep);
    if !rep.satisfied {
        log::info!("sufficient condition not met (bound {})", rep.bound_value);
        return Ok(Outcome {
            report,
            matrix: None,
            code: NOT_MET,
        });
    }
    let mut matrix = None;
    if let Some(w) = &rep.witness {
        let m = build_from_witness(&pair, w, opts.sign)?;
        let target = target_spectrum(&pair, opts.sign);
        report["verification"] = certify(&m, &target, tol)?;
        report["matrix"] = matrix_json(&m);
        report["spectrum"] = complex_json(&target);
        matrix = Some(m);
    }
    Ok(Outcome::success(report, matrix))
}

pub fn augment(path: &Path, opts: BuildOptions, tol: Option<f64>) -> Result<Outcome, CliError> {
    let doc: input::AugmentInput = input::read_json(path)?;
    if !doc.rho.is_finite() {
        return Err(CliError::Input("rho must be finite".into()));
    }
    let upsilon = input::complex_list(&doc.skew_part)?;
    let tail = input::complex_list(&doc.tail)?;
    let aug = brauer_augment(&upsilon, &tail, doc.rho, opts.gamma, opts.sign)?;
    let expected = ComplexList::from_reals(&[doc.rho])
        .union(&tail)
        .union(&upsilon.scaled(opts.scale()));
    let verification = certify(&aug.matrix, &expected, tol)?;
    let report = json!({
        "matrix": matrix_json(&aug.matrix),
        "spectrum": complex_json(&expected),
        "chi": aug.chi,
        "beta": mapping_json(&aug.beta),
        "c_row": aug.c_row.values(),
        "alpha": mapping_json(&aug.alpha),
        "b_row": aug.b_row.values(),
        "r": matrix_json(&aug.r),
        "verification": verification,
    });
    Ok(Outcome::success(report, Some(aug.matrix)))
}

/// Compares the oracle spectrum of a matrix with a claimed spectrum. A
/// mismatch exits 2.
pub fn verify(path: &Path, tol: Option<f64>) -> Result<Outcome, CliError> {
    let doc: input::VerifyInput = input::read_json(path)?;
    let m = input::matrix(&doc.matrix)?;
    let claimed = input::complex_list(&doc.spectrum)?;
    let tol = tol.unwrap_or_else(|| default_tol(&claimed));
    let computed = spectrum(&m)?;
    let rep = match_spectra(&computed, &claimed, tol)?;
    let report = json!({
        "matched": rep.matched,
        "max_pair_distance": rep.max_pair_distance,
        "tolerance": tol,
        "spectrum": complex_json(&computed),
        "pairing": rep.pairing,
    });
    Ok(Outcome {
        report,
        matrix: None,
        code: if rep.matched { 0 } else { NOT_MET },
    })
}
