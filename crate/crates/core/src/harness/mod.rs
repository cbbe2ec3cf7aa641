//! Monte Carlo experiments: error rates of the collaborative decoders, the
//! finite-field failure bound, condition numbers of the stacked syndrome
//! matrix, and an end-to-end coded matrix multiplication.

mod bound;
mod demo;
mod montecarlo;
mod report;

use std::fmt;
use std::str::FromStr;

pub use bound::{emit_bound_csv, pf_bound, BoundRow};
pub use demo::{demo_matmul, DemoConfig, DemoReport};
pub use montecarlo::{condnum_study, run_monte_carlo};
pub use report::{emit_csv, parse_csv, write_csv, Report, TrialRecord};

use crate::decoder::DecoderKind;
use crate::errmodel::{ErrorModel, ErrorModelSpec};
use crate::error::{invalid, Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, ToleranceProfile};
use crate::grs::{primitive_points, GrsCode};

/// How the evaluation points `alpha_1, ..., alpha_N` are chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaRule {
    /// `alpha_i = base^i`, `i = 1..=N`. Over GF(p) the base must be an integer.
    Power(f64),
    /// `alpha_i = i`, `i = 1..=N`.
    Linear,
    /// `alpha_i = g^(i-1)` for the smallest primitive root `g` of GF(p).
    Primitive,
}

impl AlphaRule {
    pub fn points<F: Field>(&self, field: &F, n: usize) -> Result<Vec<F::Elem>> {
        let points = match *self {
            AlphaRule::Power(base) => {
                let b = if field.is_exact() {
                    if base.fract() != 0.0 || base < 1.0 {
                        return invalid(format!("pow base {base} is not a positive integer"));
                    }
                    field.from_i64(base as i64)
                } else {
                    if !base.is_finite() || base == 0.0 {
                        return invalid(format!("pow base {base} is not a finite nonzero number"));
                    }
                    field.from_f64(base).expect("real field embeds floats")
                };
                (1..=n as u64).map(|i| field.pow(b, i)).collect()
            }
            AlphaRule::Linear => (1..=n as i64).map(|i| field.from_i64(i)).collect(),
            AlphaRule::Primitive => match field.spec() {
                FieldSpec::Prime { p } => primitive_points(&PrimeField::new(p)?, n)?
                    .into_iter()
                    .map(|x| field.from_i64(x as i64))
                    .collect(),
                FieldSpec::Real(_) => return invalid("primitive points need a prime field"),
            },
        };
        let points: Vec<F::Elem> = points;
        for i in 0..n {
            if field.magnitude(points[i]) == 0.0 {
                return invalid(format!("evaluation point {} is zero", i + 1));
            }
            if (0..i).any(|j| field.approx_eq(points[i], points[j])) {
                return invalid(format!("evaluation point {} repeats an earlier one", i + 1));
            }
        }
        Ok(points)
    }
}

impl FromStr for AlphaRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(AlphaRule::Linear),
            "primitive" => Ok(AlphaRule::Primitive),
            _ => match s.strip_prefix("pow:").map(str::parse::<f64>) {
                Some(Ok(b)) => Ok(AlphaRule::Power(b)),
                _ => invalid(format!("alphas must be pow:<base>, linear or primitive, got `{s}`")),
            },
        }
    }
}

impl fmt::Display for AlphaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaRule::Power(b) => write!(f, "pow:{b}"),
            AlphaRule::Linear => f.write_str("linear"),
            AlphaRule::Primitive => f.write_str("primitive"),
        }
    }
}

/// Which decoder(s) a simulation runs. `Both` reports CPDA's counts and
/// tallies the trials where MSSR classified differently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderChoice {
    Single(DecoderKind),
    Both,
}

impl DecoderChoice {
    fn primary(self) -> DecoderKind {
        match self {
            DecoderChoice::Single(k) => k,
            DecoderChoice::Both => DecoderKind::Cpda,
        }
    }
}

impl FromStr for DecoderChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "both" {
            Ok(DecoderChoice::Both)
        } else {
            s.parse().map(DecoderChoice::Single)
        }
    }
}

/// Transmitted codeword distribution. The decoders are translation
/// invariant in exact arithmetic, so this only matters over the reals:
/// rounding in an O(1) codeword leaks into the syndromes, which swamps
/// errors at positions with tiny dual multipliers (e.g. `alpha_i = i`, N=20).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodewordSource {
    /// Uniform messages over GF(p); `N(0,1) / rho^k` coefficients over the reals.
    Random,
    Zero,
}

impl FromStr for CodewordSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(CodewordSource::Random),
            "zero" => Ok(CodewordSource::Zero),
            _ => invalid(format!("codeword must be random or zero, got `{s}`")),
        }
    }
}

/// Column multipliers of the GRS code under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplierRule {
    /// `v = 1`: the evaluation code of a polynomial-coded computation.
    Unit,
    /// `u = 1`: syndromes are plain power sums of the error values. Gaussian
    /// errors then have identically distributed syndrome contributions,
    /// independent of how the dual multipliers grade across positions.
    UnitDual,
}

impl MultiplierRule {
    pub fn code<F: Field>(self, field: F, k: usize, alphas: Vec<F::Elem>) -> Result<GrsCode<F>> {
        match self {
            MultiplierRule::Unit => GrsCode::with_unit_multipliers(field, k, alphas),
            MultiplierRule::UnitDual => GrsCode::with_unit_dual_multipliers(field, k, alphas),
        }
    }
}

impl FromStr for MultiplierRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(MultiplierRule::Unit),
            "unit-dual" => Ok(MultiplierRule::UnitDual),
            _ => invalid(format!("multipliers must be unit or unit-dual, got `{s}`")),
        }
    }
}

/// One experiment: every `(L, t)` cell with `L` in `interleavings` and
/// `t` in `t_min..=t_max` gets `trials` independent trials.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub field: FieldSpec,
    pub n: usize,
    pub k: usize,
    pub interleavings: Vec<usize>,
    pub alphas: AlphaRule,
    pub t_min: usize,
    pub t_max: usize,
    pub trials: usize,
    pub model: ErrorModel,
    pub decoder: DecoderChoice,
    pub seed: u64,
    pub codeword: CodewordSource,
    pub multipliers: MultiplierRule,
    /// Record the mean condition number of `S_L^T S_L` at the true `t` (reals only).
    pub measure_cond: bool,
}

impl ExperimentConfig {
    /// Real-field Gaussian-error defaults with CPDA: zero codeword and the
    /// precise tolerance profile.
    pub fn real(n: usize, k: usize, interleavings: Vec<usize>, alphas: AlphaRule) -> Self {
        Self {
            field: FieldSpec::Real(ToleranceProfile::precise()),
            n,
            k,
            interleavings,
            alphas,
            t_min: 1,
            t_max: n - k,
            trials: 2000,
            model: ErrorModel::standard_gaussian(),
            decoder: DecoderChoice::Single(DecoderKind::Cpda),
            seed: 0,
            codeword: CodewordSource::Zero,
            multipliers: MultiplierRule::Unit,
            measure_cond: false,
        }
    }

    /// GF(p) with uniform errors, primitive points and CPDA.
    pub fn prime(p: u64, n: usize, k: usize, interleavings: Vec<usize>) -> Self {
        Self {
            field: FieldSpec::Prime { p },
            alphas: AlphaRule::Primitive,
            model: ErrorModel::Uref,
            codeword: CodewordSource::Random,
            ..Self::real(n, k, interleavings, AlphaRule::Primitive)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k >= self.n {
            return invalid(format!("need 0 < K < N, got N={} K={}", self.n, self.k));
        }
        if self.t_min > self.t_max {
            return invalid(format!("empty t range {}:{}", self.t_min, self.t_max));
        }
        if self.t_max >= 1 << 16 {
            return invalid("t must be below 65536");
        }
        if self.trials == 0 || self.trials > u32::MAX as usize {
            return invalid("trials must be in 1..2^32");
        }
        if self.interleavings.is_empty() || self.interleavings.iter().any(|&l| l == 0 || l >= 1 << 16) {
            return invalid("every L must be in 1..65536");
        }
        if self.measure_cond && matches!(self.field, FieldSpec::Prime { .. }) {
            return invalid("condition numbers are only measured over the reals");
        }
        let spec = ErrorModelSpec { model: self.model, t: self.t_max, seed: self.seed };
        spec.validate(self.field, self.n)?;
        if let FieldSpec::Real(tol) = self.field {
            tol.validate()?;
        }
        Ok(())
    }
}

/// `a:b` or a single value `a`.
pub fn parse_range(s: &str) -> Result<(usize, usize)> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::InvalidParameters(format!("bad range `{s}`")));
    let (lo, hi) = match s.split_once(':') {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return invalid(format!("empty range `{s}`"));
    }
    Ok((lo, hi))
}
