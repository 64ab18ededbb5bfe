//! Job dispatch and exit-code policy.

use std::time::Instant;

use quotcoh::complex::CochainComplex;
use quotcoh::lie::{ce_complex, quotient, LieAlgebra, Subspace};
use quotcoh::torus::{build_mode_complex, cross_check_ce, torus_betti, Mode, TorusSpec};
use quotcoh::witness::{build_bumps, degree_one_obstruction, verify_bounds, BOUND_SLACK};
use quotcoh::{LieError, TorusError};

use crate::config::{Job, JobConfig, LieJob, WitnessJob};
use crate::report::{
    Certificates, LieCertificates, Report, TorusCertificates, WitnessCertificates, FOURIER_NORMALIZATION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Run the cross-checks and exit 3 on mismatch.
    pub check: bool,
    /// Overrides the audit truncation of a torus job.
    pub truncation: Option<u32>,
}

/// Result of one job: a report when the computation went through, the exit
/// code, and diagnostics destined for stderr.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Option<Report>,
    pub exit: i32,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn refused(message: String) -> Self {
        Outcome { report: None, exit: EXIT_REFUSED, diagnostics: vec![message] }
    }

    fn internal(message: String) -> Self {
        Outcome { report: None, exit: EXIT_INTERNAL, diagnostics: vec![message] }
    }
}

pub fn run(config: &JobConfig, options: &RunOptions) -> Outcome {
    let start = Instant::now();
    let mut outcome = match &config.job {
        Job::Lie(job) => run_lie(job, options),
        Job::Torus(spec) => {
            let mut spec = spec.clone();
            if let Some(n) = options.truncation {
                spec.truncation = n;
            }
            run_torus(&spec, options)
        }
        Job::Witness(job) => run_witness(job),
    };
    if let Some(report) = outcome.report.as_mut() {
        report.exit = outcome.exit;
        report.timing_us = Some(start.elapsed().as_micros() as u64);
    }
    outcome
}

fn lie_refusal(e: LieError) -> Outcome {
    Outcome::refused(e.to_string())
}

fn run_lie(job: &LieJob, options: &RunOptions) -> Outcome {
    let g = match LieAlgebra::from_brackets(job.dim, &job.brackets) {
        Ok(g) => g,
        Err(e) => return lie_refusal(e),
    };
    if let quotcoh::lie::JacobiOutcome::Violated { triple: (i, j, k) } = g.jacobi_check() {
        return lie_refusal(LieError::Jacobi(i, j, k));
    }
    let h = match Subspace::span(job.dim, &job.ideal) {
        Ok(h) => h,
        Err(e) => return lie_refusal(e),
    };
    let q = match quotient(&g, &h) {
        Ok(q) => q,
        Err(e) => return lie_refusal(e),
    };
    let complex = ce_complex(&q);
    let betti = complex.betti();
    let d_squared_zero = complex.d_squared_violation().is_none();
    let phi_sign = complex.phi_sign_check();
    let coords = q.complement_coords().to_vec();
    let generators = betti
        .generators
        .iter()
        .map(|gens| gens.iter().map(|c| c.render(|i| format!("e^{}", coords[i]))).collect())
        .collect();
    let certificates = LieCertificates {
        dim: job.dim,
        ideal_dim: h.dim(),
        quotient_dim: q.algebra().dim(),
        complement_coords: coords,
        jacobi: true,
        ideal: true,
        d_squared_zero,
        phi_sign,
        euler_characteristic: betti.euler_characteristic(),
    };
    let mut diagnostics = Vec::new();
    let mut exit = EXIT_OK;
    if !d_squared_zero {
        exit = EXIT_INTERNAL;
        diagnostics.push("internal error: d^2 != 0 for a Jacobi-valid quotient".to_string());
    } else if options.check && !phi_sign {
        exit = EXIT_CHECK_FAILED;
        diagnostics.push("check failed: sign twist is not a cochain map".to_string());
    }
    let report = Report {
        mode: crate::config::JobMode::Lie,
        betti: betti.betti,
        ranks: betti.ranks,
        generators,
        certificates: Certificates::Lie(certificates),
        audited_modes: 0,
        exit,
        timing_us: None,
    };
    Outcome { report: Some(report), exit, diagnostics }
}

fn mode_zero_complex(spec: &TorusSpec) -> Result<CochainComplex, TorusError> {
    Ok(build_mode_complex(&Mode::zero(spec.n), spec)?.complex)
}

fn run_torus(spec: &TorusSpec, options: &RunOptions) -> Outcome {
    let r = match torus_betti(spec) {
        Ok(r) => r,
        Err(e) => return Outcome::refused(e.to_string()),
    };
    let phi_sign = match mode_zero_complex(spec) {
        Ok(c) => c.phi_sign_check(),
        Err(e) => return Outcome::internal(e.to_string()),
    };
    let cross = if options.check {
        match cross_check_ce(spec) {
            Ok(ok) => Some(ok),
            Err(e) => return Outcome::refused(e.to_string()),
        }
    } else {
        None
    };
    let mut diagnostics = Vec::new();
    let mut exit = EXIT_OK;
    if !r.all_certified() {
        exit = EXIT_INTERNAL;
        diagnostics.push(format!("internal error: Koszul certification failed: {:?}", r.failures));
    } else if options.check && (cross == Some(false) || !phi_sign) {
        exit = EXIT_CHECK_FAILED;
        diagnostics.push("check failed: torus Betti numbers disagree with the CE side".to_string());
    }
    let certificates = TorusCertificates {
        n: spec.n,
        leaf_dim: spec.leaf_dim(),
        foliation: spec.foliation_dirs.iter().map(|v| v.iter().map(ToString::to_string).collect()).collect(),
        invariance: spec.invariance_coords.iter().copied().collect(),
        transverse_coords: r.frame.transverse.iter().map(|&c| spec.coordinate_name(c)).collect(),
        normalization: FOURIER_NORMALIZATION.to_string(),
        truncation: r.truncation,
        koszul: r.certificates.clone(),
        failures: r.failures.clone(),
        phi_sign,
        cross_check_ce: cross,
    };
    let report = Report {
        mode: crate::config::JobMode::Torus,
        betti: r.betti.clone(),
        ranks: r.ranks.clone(),
        generators: r.generator_labels(spec),
        certificates: Certificates::Torus(certificates),
        audited_modes: r.audited_modes,
        exit,
        timing_us: None,
    };
    Outcome { report: Some(report), exit, diagnostics }
}

fn run_witness(job: &WitnessJob) -> Outcome {
    let family = match build_bumps(&job.k_range(), job.max_derivative_order, job.samples) {
        Ok(f) => f,
        Err(e) => return Outcome::refused(e.to_string()),
    };
    let measurements = match verify_bounds(&family) {
        Ok(m) => m,
        // The chain rule makes the bound an identity; a violation is a bug.
        Err(e) => return Outcome::internal(format!("internal error: {e}")),
    };
    let certificates = WitnessCertificates {
        k_range: family.k_range.clone(),
        max_derivative_order: family.max_derivative_order,
        samples: family.samples_per_interval,
        slack: BOUND_SLACK,
        bounds_hold: true,
        monotone_in_k: measurements.all_monotone(),
        forced_levels_match: measurements.forced_levels_match(),
        lift_obstruction: measurements.lift_obstruction,
        measurements,
        degree_one: degree_one_obstruction(),
    };
    let report = Report {
        mode: crate::config::JobMode::Witness,
        betti: Vec::new(),
        ranks: Vec::new(),
        generators: Vec::new(),
        certificates: Certificates::Witness(certificates),
        audited_modes: 0,
        exit: EXIT_OK,
        timing_us: None,
    };
    Outcome { report: Some(report), exit: EXIT_OK, diagnostics: Vec::new() }
}
