use nalgebra::DMatrix;
use rand::Rng;
use rayon::prelude::*;

use super::{CodewordSource, ExperimentConfig, Report, TrialRecord};
use crate::decoder::{t_max, DecodeOutcome, DecoderKind, StackedSystem, SyndromeSet};
use crate::errmodel::{inject, sample_error, trial_rng, ErrorModelSpec};
use crate::error::{invalid, Result};
use crate::field::{Field, FieldSpec, PrimeField, RealField};
use crate::grs::GrsCode;
use crate::matrix::Matrix;

/// Relative tolerance for deciding that a real-field decoder output equals
/// the transmitted codeword.
pub(crate) const REAL_MATCH_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Success,
    Failure,
    Undetected,
}

struct TrialOutcome {
    class: Class,
    disagree: bool,
    cond: Option<f64>,
}

type CondFn<E> = dyn Fn(&Matrix<E>) -> f64 + Sync;

/// Estimates `P_F`, `P_ML` and `P_e` for every `(L, t)` cell.
///
/// Each trial draws an IRS codeword (see [`CodewordSource`]), a column error of weight exactly
/// `t`, decodes, and compares with the transmitted codeword. Trial `i` of
/// cell `(L, t)` uses its own ChaCha stream, so the report does not depend
/// on how rayon schedules trials.
pub fn run_monte_carlo(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    match config.field {
        FieldSpec::Prime { p } => run_with(PrimeField::new(p)?, config, None),
        FieldSpec::Real(tol) => {
            let cond: Option<&CondFn<f64>> = if config.measure_cond { Some(&gram_condition_number) } else { None };
            run_with(RealField::new(tol)?, config, cond)
        }
    }
}

/// Monte Carlo run that also averages the 2-norm condition number of
/// `S_L(t)^T S_L(t)` at the true `t` over all trials of each cell, decoded
/// or not. Pair with [`MultiplierRule::UnitDual`](super::MultiplierRule) to
/// measure the syndromes of the error pattern itself. Cells
/// with `t = 0` or `t > t_max(L)` carry no condition number.
pub fn condnum_study(config: &ExperimentConfig) -> Result<Report> {
    if matches!(config.field, FieldSpec::Prime { .. }) {
        return invalid("condition numbers are only measured over the reals");
    }
    run_monte_carlo(&ExperimentConfig { measure_cond: true, ..config.clone() })
}

/// `cond_2(S^T S)`, computed as `(sigma_max / sigma_min)^2` of `S` itself:
/// squaring happens after the SVD, so values past 1e16 stay finite.
fn gram_condition_number(s: &Matrix<f64>) -> f64 {
    let sv = DMatrix::from_row_slice(s.rows(), s.cols(), s.as_slice()).singular_values();
    let ratio = sv.max() / sv.min();
    ratio * ratio
}

fn run_with<F: Field>(field: F, cfg: &ExperimentConfig, cond: Option<&CondFn<F::Elem>>) -> Result<Report> {
    let alphas = cfg.alphas.points(&field, cfg.n)?;
    let code = cfg.multipliers.code(field, cfg.k, alphas)?;
    let mut ls = cfg.interleavings.clone();
    ls.sort_unstable();
    ls.dedup();
    let mut records = Vec::new();
    for &l in &ls {
        for t in cfg.t_min..=cfg.t_max {
            let outcomes = (0..cfg.trials as u64)
                .into_par_iter()
                .map(|i| {
                    let stream = ((l as u64) << 48) | ((t as u64) << 32) | i;
                    run_trial(&code, cfg, l, t, stream, cond)
                })
                .collect::<Result<Vec<_>>>()?;
            records.push(tally(l, t, &outcomes));
        }
    }
    Ok(Report { records })
}

/// Compensated summation; condition numbers span ~15 orders of magnitude.
fn neumaier_sum(xs: &[f64]) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &x in xs {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
        sum = t;
    }
    sum + comp
}

fn tally(l: usize, t: usize, outcomes: &[TrialOutcome]) -> TrialRecord {
    let count = |c: Class| outcomes.iter().filter(|o| o.class == c).count() as u64;
    // Summed in trial order, so the mean does not depend on scheduling.
    let conds: Vec<f64> = outcomes.iter().filter_map(|o| o.cond).collect();
    let mean_cond = (!conds.is_empty()).then(|| neumaier_sum(&conds) / conds.len() as f64);
    TrialRecord {
        t,
        l,
        trials: outcomes.len() as u64,
        successes: count(Class::Success),
        failures: count(Class::Failure),
        undetected: count(Class::Undetected),
        disagreements: outcomes.iter().filter(|o| o.disagree).count() as u64,
        mean_cond,
    }
}

/// Random `L x N` IRS codeword. Over the reals, message coefficient `k` is
/// `N(0,1) / rho^k` with `rho = max(1, max |alpha|)`, which keeps codeword
/// symbols comparable to unit-variance errors when the points are large.
pub(crate) fn random_codeword<F: Field, R: Rng + ?Sized>(code: &GrsCode<F>, l: usize, rng: &mut R) -> Result<Matrix<F::Elem>> {
    let f = code.field();
    let rho = code.alphas().iter().map(|&a| f.magnitude(a)).fold(1.0, f64::max);
    let scales: Vec<Option<F::Elem>> = (0..code.dimension())
        .map(|k| if f.is_exact() { None } else { f.from_f64(rho.powi(-(k as i32))) })
        .collect();
    let rows = (0..l)
        .map(|_| {
            let msg: Vec<F::Elem> = scales
                .iter()
                .map(|s| {
                    let x = f.sample(rng);
                    s.map_or(x, |s| f.mul(x, s))
                })
                .collect();
            code.encode(&msg)
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(&rows)
}

/// Exact equality over GF(p); relative agreement within [`REAL_MATCH_TOL`] over the reals.
pub(crate) fn matches_codeword<F: Field>(f: &F, got: &Matrix<F::Elem>, want: &Matrix<F::Elem>) -> bool {
    if f.is_exact() {
        return got == want;
    }
    let scale = want.as_slice().iter().map(|&x| f.magnitude(x)).fold(1.0, f64::max);
    got.as_slice().iter().zip(want.as_slice()).all(|(&a, &b)| f.magnitude(f.sub(a, b)) <= REAL_MATCH_TOL * scale)
}

fn classify<F: Field>(f: &F, outcome: &DecodeOutcome<F::Elem>, d: &Matrix<F::Elem>) -> Class {
    match outcome {
        DecodeOutcome::Failure(_) => Class::Failure,
        DecodeOutcome::Success(x) if matches_codeword(f, &x.corrected, d) => Class::Success,
        DecodeOutcome::Success(_) => Class::Undetected,
    }
}

fn run_trial<F: Field>(
    code: &GrsCode<F>,
    cfg: &ExperimentConfig,
    l: usize,
    t: usize,
    stream: u64,
    cond: Option<&CondFn<F::Elem>>,
) -> Result<TrialOutcome> {
    let f = code.field();
    let mut rng = trial_rng(cfg.seed, stream);
    let d = match cfg.codeword {
        CodewordSource::Random => random_codeword(code, l, &mut rng)?,
        CodewordSource::Zero => Matrix::filled(l, code.len(), f.zero()),
    };
    let spec = ErrorModelSpec { model: cfg.model, t, seed: cfg.seed };
    let e = sample_error(f, &spec, l, code.len(), &mut rng)?;
    let r = inject(f, &d, &e.values)?;
    let primary = cfg.decoder.primary();
    let outcome = primary.decode(code, &r)?;
    let class = classify(f, &outcome, &d);
    let disagree = match cfg.decoder {
        super::DecoderChoice::Both => classify(f, &DecoderKind::Mssr.decode(code, &r)?, &d) != class,
        super::DecoderChoice::Single(_) => false,
    };
    let cond = match cond {
        Some(g) if t >= 1 && t <= t_max(code.len(), code.dimension(), l) => {
            let syn = SyndromeSet::compute(code, &r)?;
            Some(g(&StackedSystem::from_syndromes(f, &syn, t)?.matrix))
        }
        _ => None,
    };
    Ok(TrialOutcome { class, disagree, cond })
}
