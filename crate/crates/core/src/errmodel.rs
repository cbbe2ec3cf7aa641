//! Error matrices and the random worker-fault models.
//!
//! A faulty worker corrupts its whole output, so errors are column-structured:
//! column `j` of the `L x N` error matrix is nonzero iff worker `j` is faulty.

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{invalid, Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ErrorModel {
    /// Nonzero columns uniform over `GF(q)^L \ {0}`.
    Uref,
    /// Nonzero-column entries i.i.d. `Normal(mean, variance)`.
    Gre { mean: f64, variance: f64 },
}

impl ErrorModel {
    pub fn standard_gaussian() -> Self {
        ErrorModel::Gre { mean: 0.0, variance: 1.0 }
    }
}

impl std::str::FromStr for ErrorModel {
    type Err = Error;

    /// `uref`, or `gre` for standard Gaussian values.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uref" => Ok(ErrorModel::Uref),
            "gre" => Ok(ErrorModel::standard_gaussian()),
            _ => invalid(format!("error model must be uref or gre, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorModelSpec {
    pub model: ErrorModel,
    /// Number of corrupted columns.
    pub t: usize,
    pub seed: u64,
}

impl ErrorModelSpec {
    /// RNG for this spec's seed.
    pub fn rng(&self) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(self.seed)
    }

    pub fn validate(&self, field: FieldSpec, n: usize) -> Result<()> {
        if self.t > n {
            return invalid(format!("t = {} exceeds N = {n}", self.t));
        }
        match (self.model, field) {
            (ErrorModel::Uref, FieldSpec::Prime { .. }) => Ok(()),
            (ErrorModel::Gre { mean, variance }, FieldSpec::Real(_)) => {
                if mean.is_finite() && variance.is_finite() && variance > 0.0 {
                    Ok(())
                } else {
                    invalid(format!("GRE needs finite mean and positive variance, got ({mean}, {variance})"))
                }
            }
            (ErrorModel::Uref, _) => invalid("UREF requires a prime field"),
            (ErrorModel::Gre { .. }, _) => invalid("GRE requires the real field"),
        }
    }
}

/// Per-trial RNG stream: ChaCha keyed by the master seed, with the stream id
/// selecting an independent keystream. Trials can run in any order.
pub fn trial_rng(master_seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorMatrix<E> {
    pub values: Matrix<E>,
    /// Corrupted worker indices, ascending.
    pub support: Vec<usize>,
}

impl<E: Copy> ErrorMatrix<E> {
    pub fn zero(rows: usize, cols: usize, zero: E) -> Self {
        Self { values: Matrix::filled(rows, cols, zero), support: Vec::new() }
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }
}

/// Draws an `L x N` error matrix of Hamming weight exactly `spec.t`, with the
/// support uniform over all `t`-subsets of the `N` columns.
pub fn sample_error<F: Field, R: Rng + ?Sized>(
    field: &F,
    spec: &ErrorModelSpec,
    l: usize,
    n: usize,
    rng: &mut R,
) -> Result<ErrorMatrix<F::Elem>> {
    spec.validate(field.spec(), n)?;
    if l == 0 {
        return invalid("interleaving depth L must be positive");
    }
    let mut support = sample(rng, n, spec.t).into_vec();
    support.sort_unstable();
    let mut values = Matrix::filled(l, n, field.zero());
    for &j in &support {
        loop {
            for r in 0..l {
                values[(r, j)] = match spec.model {
                    ErrorModel::Uref => field.sample(rng),
                    ErrorModel::Gre { mean, variance } => {
                        let z = field.sample(rng);
                        let shift = field.from_f64(mean).expect("validated real field");
                        let sd = field.from_f64(variance.sqrt()).expect("validated real field");
                        field.add(shift, field.mul(sd, z))
                    }
                };
            }
            if values.column(j).any(|x| field.magnitude(x) != 0.0) {
                break;
            }
        }
    }
    Ok(ErrorMatrix { values, support })
}

/// Number of nonzero columns. Over the reals an entry counts as zero when
/// `is_zero(x, scale)` holds with `scale` the largest magnitude in the same
/// column of `reference` (typically the received word), or 0 without one.
pub fn hamming_weight<F: Field>(field: &F, e: &Matrix<F::Elem>, reference: Option<&Matrix<F::Elem>>) -> usize {
    (0..e.cols())
        .filter(|&j| {
            let scale = reference.map_or(0.0, |r| r.column(j).map(|x| field.magnitude(x)).fold(0.0, f64::max));
            e.column(j).any(|x| !field.is_zero(x, scale))
        })
        .count()
}

/// `R = D + E`.
pub fn inject<F: Field>(field: &F, d: &Matrix<F::Elem>, e: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if d.shape() != e.shape() {
        return Err(Error::DimensionMismatch(format!("codeword {:?} vs error {:?}", d.shape(), e.shape())));
    }
    Ok(Matrix::from_fn(d.rows(), d.cols(), |r, c| field.add(d[(r, c)], e[(r, c)])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RealField};
    use proptest::prelude::*;

    fn uref(t: usize, seed: u64) -> ErrorModelSpec {
        ErrorModelSpec { model: ErrorModel::Uref, t, seed }
    }

    /// Direct column scan.
    fn scan_weight(e: &Matrix<u64>) -> usize {
        let mut count = 0;
        for c in 0..e.cols() {
            let mut nonzero = false;
            for r in 0..e.rows() {
                nonzero |= e[(r, c)] != 0;
            }
            count += usize::from(nonzero);
        }
        count
    }

    #[test]
    fn weight_extremes() {
        let f = PrimeField::new(7).unwrap();
        let spec = uref(0, 1);
        let e = sample_error(&f, &spec, 3, 5, &mut spec.rng()).unwrap();
        assert_eq!(e.values, Matrix::filled(3, 5, 0));
        assert_eq!(hamming_weight(&f, &e.values, None), 0);
        let spec = uref(5, 1);
        let e = sample_error(&f, &spec, 1, 5, &mut spec.rng()).unwrap();
        assert_eq!(hamming_weight(&f, &e.values, None), 5);
        assert_eq!(e.support, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn invalid_specs() {
        let f = PrimeField::new(7).unwrap();
        let spec = uref(6, 1);
        assert!(matches!(sample_error(&f, &spec, 2, 5, &mut spec.rng()), Err(Error::InvalidParameters(_))));
        let gre = ErrorModelSpec { model: ErrorModel::standard_gaussian(), t: 1, seed: 0 };
        assert!(sample_error(&f, &gre, 2, 5, &mut gre.rng()).is_err());
        let r = RealField::default();
        let spec = uref(1, 1);
        assert!(sample_error(&r, &spec, 2, 5, &mut spec.rng()).is_err());
        let bad = ErrorModelSpec { model: ErrorModel::Gre { mean: 0.0, variance: -1.0 }, t: 1, seed: 0 };
        assert!(sample_error(&r, &bad, 2, 5, &mut bad.rng()).is_err());
    }

    #[test]
    fn single_entry_weight() {
        let f = PrimeField::new(7).unwrap();
        let mut e = Matrix::filled(3, 4, 0);
        e[(2, 1)] = 5;
        assert_eq!(hamming_weight(&f, &e, None), 1);
    }

    #[test]
    fn real_weight_uses_reference_scale() {
        let f = RealField::default();
        let mut e = Matrix::filled(2, 3, 0.0);
        e[(0, 0)] = 1e-3;
        e[(1, 2)] = 1e-12;
        let r = Matrix::filled(2, 3, 1e10);
        assert_eq!(hamming_weight(&f, &e, None), 1);
        assert_eq!(hamming_weight(&f, &e, Some(&r)), 0);
    }

    #[test]
    fn uref_marginal_is_uniform() {
        // q = 7, L = 1, t = 1: the nonzero value is uniform over 1..=6.
        let f = PrimeField::new(7).unwrap();
        let spec = uref(1, 99);
        let mut rng = spec.rng();
        let trials = 100_000;
        let mut counts = [0usize; 7];
        for _ in 0..trials {
            let e = sample_error(&f, &spec, 1, 4, &mut rng).unwrap();
            counts[e.values[(0, e.support[0])] as usize] += 1;
        }
        assert_eq!(counts[0], 0);
        let expected = trials as f64 / 6.0;
        let sigma = (trials as f64 * (1.0 / 6.0) * (5.0 / 6.0)).sqrt();
        let mut chi2 = 0.0;
        for &c in &counts[1..] {
            assert!((c as f64 - expected).abs() <= 3.0 * sigma, "{counts:?}");
            chi2 += (c as f64 - expected).powi(2) / expected;
        }
        // 5 degrees of freedom, 0.999 quantile
        assert!(chi2 < 20.52, "chi2 = {chi2}");
    }

    #[test]
    fn support_is_uniform_over_positions() {
        let f = PrimeField::new(257).unwrap();
        let spec = uref(2, 5);
        let mut rng = spec.rng();
        let mut hits = [0usize; 6];
        for _ in 0..30_000 {
            for j in sample_error(&f, &spec, 2, 6, &mut rng).unwrap().support {
                hits[j] += 1;
            }
        }
        // each position is hit with probability 2/6
        for h in hits {
            assert!((h as f64 - 10_000.0).abs() < 4.0 * (30_000.0f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt());
        }
    }

    #[test]
    fn inject_examples() {
        let f = PrimeField::new(257).unwrap();
        let spec = uref(3, 8);
        let mut rng = spec.rng();
        let d = Matrix::from_fn(4, 9, |_, _| f.sample(&mut rng));
        let e = sample_error(&f, &spec, 4, 9, &mut rng).unwrap();
        let r = inject(&f, &d, &e.values).unwrap();
        for row in 0..4 {
            for col in 0..9 {
                assert_eq!(r[(row, col)], (d[(row, col)] + e.values[(row, col)]) % 257);
            }
        }
        let neg = e.values.map(|x| f.neg(x));
        assert_eq!(inject(&f, &r, &neg).unwrap(), d);
        assert_eq!(inject(&f, &d, &Matrix::filled(4, 9, 0)).unwrap(), d);
        assert!(inject(&f, &d, &Matrix::filled(4, 8, 0)).is_err());
    }

    #[test]
    fn gre_entries_have_requested_moments() {
        let f = RealField::default();
        let spec = ErrorModelSpec { model: ErrorModel::Gre { mean: 2.0, variance: 4.0 }, t: 3, seed: 4 };
        let mut rng = spec.rng();
        let mut xs = Vec::new();
        for _ in 0..5_000 {
            let e = sample_error(&f, &spec, 2, 6, &mut rng).unwrap();
            for &j in &e.support {
                xs.extend(e.values.column(j));
            }
        }
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / xs.len() as f64;
        assert!((mean - 2.0).abs() < 0.05, "{mean}");
        assert!((var - 4.0).abs() < 0.15, "{var}");
    }

    #[test]
    fn trial_streams_are_independent_of_order() {
        let f = PrimeField::new(257).unwrap();
        let spec = uref(4, 0);
        let draw = |stream| sample_error(&f, &spec, 3, 10, &mut trial_rng(42, stream)).unwrap();
        let forward: Vec<_> = (0..8).map(draw).collect();
        let backward: Vec<_> = (0..8).rev().map(draw).collect();
        for (a, b) in forward.iter().zip(backward.iter().rev()) {
            assert_eq!(a, b);
        }
        assert_ne!(forward[0], forward[1]);
    }

    proptest! {
        #[test]
        fn sampled_weight_is_t(t in 0usize..=9, l in 1usize..5, seed: u64) {
            let f = PrimeField::new(7).unwrap();
            let spec = uref(t, seed);
            let e = sample_error(&f, &spec, l, 9, &mut spec.rng()).unwrap();
            prop_assert_eq!(hamming_weight(&f, &e.values, None), t);
            prop_assert_eq!(scan_weight(&e.values), t);
            prop_assert_eq!(e.weight(), t);
        }

        #[test]
        fn same_seed_same_matrix(seed: u64, t in 0usize..6) {
            let f = RealField::default();
            let spec = ErrorModelSpec { model: ErrorModel::standard_gaussian(), t, seed };
            let a = sample_error(&f, &spec, 3, 6, &mut spec.rng()).unwrap();
            let b = sample_error(&f, &spec, 3, 6, &mut spec.rng()).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn weight_matches_scan(entries in proptest::collection::vec(0u64..3, 24)) {
            let f = PrimeField::new(3).unwrap();
            let e = Matrix::from_vec(4, 6, entries).unwrap();
            prop_assert_eq!(hamming_weight(&f, &e, None), scan_weight(&e));
        }
    }
}
