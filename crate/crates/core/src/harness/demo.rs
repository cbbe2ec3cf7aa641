use super::montecarlo::matches_codeword;
use super::AlphaRule;
use crate::decoder::{cpda_decode, t_max, DecodeOutcome, FailureReason};
use crate::errmodel::{inject, sample_error, trial_rng, ErrorModel, ErrorModelSpec};
use crate::error::{invalid, Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, RealField};
use crate::matrix::Matrix;
use crate::polycode::{compute_codeword, recover_product, transpose_product, BlockMatrices, PolyCodeParams};

/// End-to-end coded `A^T B` with `A` of size `inner x (m * block_rows)` and
/// `B` of size `inner x (nblocks * block_cols)`. The IRS word then has
/// `L = block_rows * block_cols` rows.
#[derive(Debug, Clone, PartialEq)]
pub struct DemoConfig {
    pub field: FieldSpec,
    pub m: usize,
    pub nblocks: usize,
    pub workers: usize,
    pub t: usize,
    pub seed: u64,
    pub block_rows: usize,
    pub block_cols: usize,
    pub inner: usize,
}

impl DemoConfig {
    /// 2 x 2 product blocks (`L = 4`) and inner dimension 3.
    pub fn new(field: FieldSpec, m: usize, nblocks: usize, workers: usize, t: usize, seed: u64) -> Self {
        Self { field, m, nblocks, workers, t, seed, block_rows: 2, block_cols: 2, inner: 3 }
    }

    pub fn interleaving(&self) -> usize {
        self.block_rows * self.block_cols
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DemoReport {
    pub t: usize,
    pub t_max: usize,
    pub interleaving: usize,
    /// Decoder failure, if any.
    pub failure: Option<FailureReason>,
    /// The recovered product matches the direct one (exactly over GF(p),
    /// within relative `1e-6` over the reals).
    pub recovered: bool,
    /// `max |C^ - C| / max(max |C|, 1)`; `None` when decoding failed.
    pub max_rel_error: Option<f64>,
}

/// Random `A`, `B`; polynomial-code encoding; `N` simulated workers of
/// which `t` return corrupted products; collaborative decoding; recovery.
///
/// Worker points are the primitive-root powers over GF(p) and `0.9^i` over
/// the reals. Errors are uniform over GF(p) and standard Gaussian over the reals.
pub fn demo_matmul(cfg: &DemoConfig) -> Result<DemoReport> {
    match cfg.field {
        FieldSpec::Prime { p } => run(PrimeField::new(p)?, AlphaRule::Primitive, ErrorModel::Uref, cfg),
        FieldSpec::Real(tol) => run(RealField::new(tol)?, AlphaRule::Power(0.9), ErrorModel::standard_gaussian(), cfg),
    }
}

fn run<F: Field>(f: F, rule: AlphaRule, model: ErrorModel, cfg: &DemoConfig) -> Result<DemoReport> {
    let k = cfg.m * cfg.nblocks;
    if cfg.m == 0 || cfg.nblocks == 0 || cfg.workers <= k {
        return invalid(format!("need N > m*n, got N={} m={} n={}", cfg.workers, cfg.m, cfg.nblocks));
    }
    if cfg.block_rows == 0 || cfg.block_cols == 0 || cfg.inner == 0 {
        return invalid("block dimensions must be positive");
    }
    let l = cfg.interleaving();
    let tm = t_max(cfg.workers, k, l);
    if cfg.t > tm {
        return invalid(format!("t = {} exceeds t_max = {tm}", cfg.t));
    }
    let params = PolyCodeParams::new(f.clone(), cfg.m, cfg.nblocks, rule.points(&f, cfg.workers)?)?;
    let mut rng = trial_rng(cfg.seed, 0);
    let a = Matrix::from_fn(cfg.inner, cfg.m * cfg.block_rows, |_, _| f.sample(&mut rng));
    let b = Matrix::from_fn(cfg.inner, cfg.nblocks * cfg.block_cols, |_, _| f.sample(&mut rng));
    let truth = transpose_product(&f, &a, &b)?;
    let (word, code) = compute_codeword(&params, &BlockMatrices::new(a, b, cfg.m, cfg.nblocks)?)?;

    let spec = ErrorModelSpec { model, t: cfg.t, seed: cfg.seed };
    let e = sample_error(&f, &spec, l, cfg.workers, &mut rng)?;
    let received = inject(&f, &word.symbols, &e.values)?;

    let mut report = DemoReport { t: cfg.t, t_max: tm, interleaving: l, failure: None, recovered: false, max_rel_error: None };
    let corrected = match cpda_decode(&code, &received)? {
        DecodeOutcome::Success(d) => d.corrected,
        DecodeOutcome::Failure(reason) => {
            report.failure = Some(reason);
            return Ok(report);
        }
    };
    let product = match recover_product(&params, &code, &word.with_symbols(corrected)) {
        Ok(p) => p,
        // A miscorrected real word may fail the interpolation residual check.
        Err(Error::NotACodeword { .. }) => return Ok(report),
        Err(other) => return Err(other),
    };
    let scale = truth.as_slice().iter().map(|&x| f.magnitude(x)).fold(1.0, f64::max);
    let err = product.as_slice().iter().zip(truth.as_slice()).map(|(&x, &y)| f.magnitude(f.sub(x, y))).fold(0.0, f64::max);
    // Over GF(p) magnitudes are 0 or 1, so this is 0 exactly when the product is right.
    report.max_rel_error = Some(err / scale);
    report.recovered = matches_codeword(&f, &product, &truth);
    Ok(report)
}
