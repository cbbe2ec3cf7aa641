//! Field abstraction shared by every code and decoder in the crate.
//!
//! Two concrete fields are provided: [`PrimeField`] (exact arithmetic modulo a
//! prime `p < 2^32`) and [`RealField`] (binary64 floats with a scale-relative
//! zero policy described by a [`ToleranceProfile`]). Linear-system solving
//! and rank decisions live on the field as well, because they are exact
//! elimination over GF(p) and singular-value based over the reals.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Error, Result};
use crate::matrix::Matrix;

/// Relative thresholds governing real-field equality, rank and consistency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceProfile {
    /// Scalar equality: `|a| <= eq_tol * scale`.
    pub eq_tol: f64,
    /// Singular values at or below `rank_tol * sigma_max * max_dim` count as zero.
    pub rank_tol: f64,
    /// Locator root acceptance, relative to the absolute-value evaluation.
    pub root_tol: f64,
    /// Linear-system consistency, relative to the right-hand side magnitude.
    pub residual_tol: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self { eq_tol: 1e-9, rank_tol: 1e-10, root_tol: 1e-6, residual_tol: 1e-8 }
    }
}

impl ToleranceProfile {
    /// Tight thresholds for experiments whose only rounding comes from the
    /// error pattern itself (zero transmitted codeword). Rank and residual
    /// cut-offs sit a few ulps above the noise floor so that errors at
    /// positions with tiny dual multipliers still register; roots are
    /// accepted more loosely because clustered locator roots lose digits.
    pub fn precise() -> Self {
        Self { eq_tol: 1e-9, rank_tol: 1e-14, root_tol: 1e-4, residual_tol: 1e-12 }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.eq_tol, self.rank_tol, self.root_tol, self.residual_tol];
        if all.iter().all(|t| t.is_finite() && *t > 0.0) {
            Ok(())
        } else {
            invalid(format!("tolerances must be positive and finite: {self:?}"))
        }
    }
}

impl FromStr for ToleranceProfile {
    type Err = Error;

    /// `standard` (the [`Default`]) or `precise`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Self::default()),
            "precise" => Ok(Self::precise()),
            _ => invalid(format!("tolerance profile must be standard or precise, got `{s}`")),
        }
    }
}

/// Runtime description of a field, as selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSpec {
    Prime { p: u64 },
    Real(ToleranceProfile),
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `gf:<p>` or `real`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "real" {
            return Ok(FieldSpec::Real(ToleranceProfile::default()));
        }
        let p = s
            .strip_prefix("gf:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidParameters(format!("unknown field `{s}`, expected gf:<p> or real")))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime { p })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "gf:{p}"),
            FieldSpec::Real(_) => f.write_str("real"),
        }
    }
}

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearSolve<E> {
    /// `A` has full column rank and `b` lies in its range.
    Unique(Vec<E>),
    /// `A` has fewer than `cols` independent columns.
    RankDeficient { rank: usize },
    /// Full column rank but `b` is not in the range; `residual` is relative.
    Inconsistent { residual: f64 },
}

pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Copy + PartialEq + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Embeds a real number; `None` for fields that have no such embedding.
    fn from_f64(&self, v: f64) -> Option<Self::Elem>;

    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn pow(&self, mut base: Self::Elem, mut exp: u64) -> Self::Elem {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Absolute value over the reals; 0 or 1 over a finite field.
    fn magnitude(&self, a: Self::Elem) -> f64;

    /// `|a| <= eq_tol * reference` over the reals; exact zero test over GF(p).
    fn is_negligible(&self, a: Self::Elem, reference: f64) -> bool;

    /// Zero test with a magnitude reference for the computation producing `a`.
    fn is_zero(&self, a: Self::Elem, scale: f64) -> bool {
        self.is_negligible(a, scale.max(1.0))
    }

    /// Root acceptance: exact over GF(p); over the reals `|value| <= root_tol * reference`,
    /// where the caller supplies `|x| |p'(x)|` as the reference.
    fn is_root_residual(&self, value: Self::Elem, reference: f64) -> bool;

    fn is_exact(&self) -> bool;

    /// Uniform element over GF(p); standard normal sample over the reals.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn rank(&self, a: &Matrix<Self::Elem>) -> usize;

    /// Solves `a x = b`, deciding rank before consistency.
    fn solve(&self, a: &Matrix<Self::Elem>, b: &[Self::Elem]) -> LinearSolve<Self::Elem>;

    /// Exact equality over GF(p); relative equality (`eq_tol`) over the reals.
    fn approx_eq(&self, a: Self::Elem, b: Self::Elem) -> bool {
        let scale = self.magnitude(a).max(self.magnitude(b));
        self.is_negligible(self.sub(a, b), scale)
    }

    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        a.iter().zip(b).fold(self.zero(), |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

/// Deterministic primality by trial division (inputs are below 2^32).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// GF(p) for a prime `p < 2^32`. Elements are `u64` values reduced into `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return invalid(format!("modulus {p} exceeds 2^32"));
        }
        if !is_prime(p) {
            return invalid(format!("modulus {p} is not prime"));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Validated element constructor.
    pub fn elem(&self, v: u64) -> Result<u64> {
        if v < self.p {
            Ok(v)
        } else {
            invalid(format!("{v} is not reduced modulo {}", self.p))
        }
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> u64 {
        if self.p == 2 {
            return 1;
        }
        let order = self.p - 1;
        let factors = distinct_prime_factors(order);
        (2..self.p)
            .find(|&g| factors.iter().all(|&f| self.pow(g, order / f) != 1))
            .expect("every prime field has a primitive root")
    }

    /// Gauss-Jordan elimination on `[a | b]`; returns (rank of `a`, reduced rows, pivot columns).
    fn eliminate(&self, a: &Matrix<u64>, b: Option<&[u64]>) -> (usize, Vec<Vec<u64>>, Vec<usize>) {
        let (rows, cols) = a.shape();
        let width = cols + usize::from(b.is_some());
        let mut m: Vec<Vec<u64>> = (0..rows)
            .map(|r| {
                let mut row = a.row(r).to_vec();
                if let Some(b) = b {
                    row.push(b[r]);
                }
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            let Some(pr) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, pr);
            let inv = self.inv(m[rank][c]).expect("pivot is nonzero");
            for x in m[rank].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..rows {
                if r != rank && m[r][c] != 0 {
                    let f = m[r][c];
                    for k in c..width {
                        let v = self.mul(f, m[rank][k]);
                        m[r][k] = self.sub(m[r][k], v);
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        (rank, m, pivots)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn from_f64(&self, _v: f64) -> Option<u64> {
        None
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        a * b % self.p
    }

    fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: a^(p-2)
        Ok(self.pow(a, self.p - 2))
    }

    fn magnitude(&self, a: u64) -> f64 {
        if a == 0 {
            0.0
        } else {
            1.0
        }
    }

    fn is_negligible(&self, a: u64, _reference: f64) -> bool {
        a == 0
    }

    fn is_root_residual(&self, value: u64, _reference: f64) -> bool {
        value == 0
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn rank(&self, a: &Matrix<u64>) -> usize {
        self.eliminate(a, None).0
    }

    fn solve(&self, a: &Matrix<u64>, b: &[u64]) -> LinearSolve<u64> {
        assert_eq!(a.rows(), b.len(), "right-hand side length");
        let cols = a.cols();
        let (rank, m, pivots) = self.eliminate(a, Some(b));
        if rank < cols {
            return LinearSolve::RankDeficient { rank };
        }
        if m[rank..].iter().any(|row| row[cols] != 0) {
            return LinearSolve::Inconsistent { residual: 1.0 };
        }
        let mut x = vec![0; cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = m[r][cols];
        }
        LinearSolve::Unique(x)
    }
}

/// Scales each equation to unit max-magnitude, then each column to unit
/// norm; returns the scaled matrix, scaled right-hand side and the column
/// factors needed to recover the original unknowns.
///
/// Rounding noise is relative to each row, so on graded systems (Vandermonde
/// and Hankel rows growing like alpha^k) row scaling keeps the small rows
/// visible to the rank test. Column scaling stops graded unknowns (locator
/// coefficients grow like prod alpha) from masquerading as rank loss.
fn equilibrate(a: &Matrix<f64>, b: &[f64]) -> (DMatrix<f64>, DVector<f64>, Vec<f64>) {
    let (rows, cols) = a.shape();
    let mut m = DMatrix::from_row_slice(rows, cols, a.as_slice());
    let mut rhs = DVector::from_column_slice(b);
    for r in 0..rows {
        let scale = m.row(r).amax();
        if scale > 0.0 && scale.is_finite() {
            m.row_mut(r).unscale_mut(scale);
            rhs[r] /= scale;
        }
    }
    let col_scale: Vec<f64> = (0..cols)
        .map(|c| {
            let n = m.column(c).norm();
            if n > 0.0 && n.is_finite() {
                1.0 / n
            } else {
                1.0
            }
        })
        .collect();
    for (c, &k) in col_scale.iter().enumerate() {
        m.column_mut(c).scale_mut(k);
    }
    (m, rhs, col_scale)
}

/// The real numbers as binary64 floats.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RealField {
    pub tol: ToleranceProfile,
}

impl RealField {
    pub fn new(tol: ToleranceProfile) -> Result<Self> {
        tol.validate()?;
        Ok(Self { tol })
    }

    /// (rank, largest singular value).
    fn numerical_rank(&self, m: &DMatrix<f64>) -> (usize, f64) {
        let sv = m.clone().singular_values();
        let sigma_max = sv.max();
        let threshold = self.tol.rank_tol * sigma_max * m.nrows().max(m.ncols()) as f64;
        (sv.iter().filter(|&&s| s > threshold).count(), sigma_max)
    }
}

impl Field for RealField {
    type Elem = f64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Real(self.tol)
    }

    fn zero(&self) -> f64 {
        0.0
    }

    fn one(&self) -> f64 {
        1.0
    }

    fn from_i64(&self, v: i64) -> f64 {
        v as f64
    }

    fn from_f64(&self, v: f64) -> Option<f64> {
        v.is_finite().then_some(v)
    }

    fn add(&self, a: f64, b: f64) -> f64 {
        a + b
    }

    fn sub(&self, a: f64, b: f64) -> f64 {
        a - b
    }

    fn mul(&self, a: f64, b: f64) -> f64 {
        a * b
    }

    fn neg(&self, a: f64) -> f64 {
        -a
    }

    fn inv(&self, a: f64) -> Result<f64> {
        if a == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let r = 1.0 / a;
        if r.is_finite() {
            Ok(r)
        } else {
            Err(Error::DivisionByZero)
        }
    }

    fn magnitude(&self, a: f64) -> f64 {
        a.abs()
    }

    fn is_negligible(&self, a: f64, reference: f64) -> bool {
        a.abs() <= self.tol.eq_tol * reference
    }

    fn is_root_residual(&self, value: f64, reference: f64) -> bool {
        value.abs() <= self.tol.root_tol * reference
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        rng.sample(StandardNormal)
    }

    fn rank(&self, a: &Matrix<f64>) -> usize {
        let (rows, cols) = a.shape();
        if rows == 0 || cols == 0 {
            return 0;
        }
        let (m, _, _) = equilibrate(a, &vec![0.0; rows]);
        self.numerical_rank(&m).0
    }

    fn solve(&self, a: &Matrix<f64>, b: &[f64]) -> LinearSolve<f64> {
        assert_eq!(a.rows(), b.len(), "right-hand side length");
        let (rows, cols) = a.shape();
        let rhs = DVector::from_column_slice(b);
        if cols == 0 {
            return if rhs.norm() == 0.0 {
                LinearSolve::Unique(Vec::new())
            } else {
                LinearSolve::Inconsistent { residual: 1.0 }
            };
        }
        if rows < cols {
            return LinearSolve::RankDeficient { rank: self.rank(a) };
        }
        let (m, rhs, col_scale) = equilibrate(a, rhs.as_slice());
        let (rank, sigma_max) = self.numerical_rank(&m);
        if rank < cols {
            return LinearSolve::RankDeficient { rank };
        }
        // Rank comes from the SVD, but the solution from Householder QR: the
        // SVD's small singular vectors lose accuracy on strongly graded
        // systems such as Hankel syndrome matrices.
        let qr = m.clone().qr();
        let qtb = qr.q().transpose() * &rhs;
        let Some(x) = qr.r().solve_upper_triangular(&qtb) else {
            return LinearSolve::RankDeficient { rank: rank.saturating_sub(1) };
        };
        let residual = (&m * &x - &rhs).norm();
        let reference = rhs.norm().max(sigma_max * x.norm());
        if !x.iter().all(|v| v.is_finite()) || residual > self.tol.residual_tol * reference {
            let rel = if reference > 0.0 { residual / reference } else { f64::INFINITY };
            return LinearSolve::Inconsistent { residual: rel };
        }
        LinearSolve::Unique(x.iter().zip(&col_scale).map(|(v, k)| v * k).collect())
    }
}
