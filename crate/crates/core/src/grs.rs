//! Generalized Reed-Solomon codes.
//!
//! A codeword of `GRS(N, K, alpha, v)` is `c_i = v_i * m(alpha_i)` for a
//! message polynomial `m` of degree below `K`. The dual multipliers
//! `u_i = 1 / (v_i * prod_{j != i} (alpha_i - alpha_j))` give the parity
//! checks `sum_j u_j c_j alpha_j^i = 0` for `i` in `0..N-K`, which are the
//! syndromes consumed by the decoders.

use crate::error::{invalid, Error, Result};
use crate::field::{Field, LinearSolve, PrimeField};
use crate::matrix::Matrix;

#[derive(Debug, Clone)]
pub struct GrsCode<F: Field> {
    field: F,
    k: usize,
    alphas: Vec<F::Elem>,
    v: Vec<F::Elem>,
    u: Vec<F::Elem>,
}

impl<F: Field> GrsCode<F> {
    /// Builds the code and derives the dual multipliers.
    ///
    /// Evaluation points must be distinct and nonzero (a zero point cannot be
    /// located by the error-locator polynomial), multipliers nonzero and
    /// `1 <= K < N`.
    pub fn new(field: F, k: usize, alphas: Vec<F::Elem>, v: Vec<F::Elem>) -> Result<Self> {
        let n = alphas.len();
        if k == 0 || k >= n {
            return invalid(format!("need 1 <= K < N, got N={n}, K={k}"));
        }
        if v.len() != n {
            return invalid(format!("{} multipliers for length {n}", v.len()));
        }
        if let Some(i) = v.iter().position(|&x| field.magnitude(x) == 0.0) {
            return invalid(format!("multiplier v_{i} is zero"));
        }
        if let Some(i) = alphas.iter().position(|&x| field.magnitude(x) == 0.0) {
            return invalid(format!("evaluation point alpha_{i} is zero"));
        }
        for i in 0..n {
            for j in i + 1..n {
                if field.approx_eq(alphas[i], alphas[j]) {
                    return invalid(format!("evaluation points alpha_{i} and alpha_{j} coincide"));
                }
            }
        }
        let u = (0..n)
            .map(|i| {
                let prod = (0..n)
                    .filter(|&j| j != i)
                    .fold(v[i], |acc, j| field.mul(acc, field.sub(alphas[i], alphas[j])));
                field.inv(prod)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { field, k, alphas, v, u })
    }

    /// `v = 1` with the given evaluation points.
    pub fn with_unit_multipliers(field: F, k: usize, alphas: Vec<F::Elem>) -> Result<Self> {
        let v = vec![field.one(); alphas.len()];
        Self::new(field, k, alphas, v)
    }

    /// `v_i = 1 / prod_{j != i} (alpha_i - alpha_j)`, so that every `u_i = 1`
    /// and the parity checks are the plain Vandermonde `sum_j c_j alpha_j^i`.
    pub fn with_unit_dual_multipliers(field: F, k: usize, alphas: Vec<F::Elem>) -> Result<Self> {
        let unit = Self::with_unit_multipliers(field, k, alphas)?;
        Self::new(unit.field.clone(), k, unit.alphas.clone(), unit.u)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// `N - K`, the number of syndromes per codeword.
    pub fn redundancy(&self) -> usize {
        self.len() - self.k
    }

    pub fn min_distance(&self) -> usize {
        self.redundancy() + 1
    }

    pub fn alphas(&self) -> &[F::Elem] {
        &self.alphas
    }

    pub fn multipliers(&self) -> &[F::Elem] {
        &self.v
    }

    pub fn dual_multipliers(&self) -> &[F::Elem] {
        &self.u
    }

    pub fn encode(&self, msg: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if msg.len() != self.k {
            return Err(Error::DimensionMismatch(format!("message of length {} for K={}", msg.len(), self.k)));
        }
        let f = &self.field;
        Ok(self
            .alphas
            .iter()
            .zip(&self.v)
            .map(|(&a, &v)| {
                // Horner
                let m = msg.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, a), c));
                f.mul(v, m)
            })
            .collect())
    }

    /// `S_i = sum_j u_j r_j alpha_j^i` for `i` in `0..N-K`.
    pub fn syndromes(&self, received: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.check_len(received)?;
        let f = &self.field;
        let mut terms: Vec<F::Elem> = received.iter().zip(&self.u).map(|(&r, &u)| f.mul(u, r)).collect();
        let mut out = Vec::with_capacity(self.redundancy());
        for _ in 0..self.redundancy() {
            out.push(terms.iter().fold(f.zero(), |acc, &x| f.add(acc, x)));
            for (t, &a) in terms.iter_mut().zip(&self.alphas) {
                *t = f.mul(*t, a);
            }
        }
        Ok(out)
    }

    /// Magnitude reference for each syndrome: `sum_j |u_j r_j| |alpha_j|^i`.
    pub fn syndrome_scales(&self, received: &[F::Elem]) -> Vec<f64> {
        let f = &self.field;
        let mut terms: Vec<f64> =
            received.iter().zip(&self.u).map(|(&r, &u)| f.magnitude(r) * f.magnitude(u)).collect();
        let mags: Vec<f64> = self.alphas.iter().map(|&a| f.magnitude(a)).collect();
        let mut out = Vec::with_capacity(self.redundancy());
        for _ in 0..self.redundancy() {
            out.push(terms.iter().sum());
            for (t, m) in terms.iter_mut().zip(&mags) {
                *t *= m;
            }
        }
        out
    }

    /// True when every dual check vanishes (relative to the syndrome scale over the reals).
    pub fn is_codeword(&self, word: &[F::Elem]) -> bool {
        let Ok(s) = self.syndromes(word) else { return false };
        let scales = self.syndrome_scales(word);
        s.iter().zip(&scales).all(|(&x, &sc)| self.field.is_negligible(x, sc))
    }

    /// Recovers the message of a codeword by solving the `N x K` evaluation
    /// system over all positions (least squares with a residual check over
    /// the reals). Columns are equilibrated by powers of `max |alpha|`.
    pub fn interpolate(&self, symbols: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.check_len(symbols)?;
        let f = &self.field;
        let rho = if f.is_exact() {
            f.one()
        } else {
            let m = self.alphas.iter().map(|&a| f.magnitude(a)).fold(1.0, f64::max);
            f.from_f64(1.0 / m).expect("real field embeds floats")
        };
        let scaled: Vec<F::Elem> = self.alphas.iter().map(|&a| f.mul(a, rho)).collect();
        let a = Matrix::from_fn(self.len(), self.k, |r, c| f.mul(self.v[r], f.pow(scaled[r], c as u64)));
        match f.solve(&a, symbols) {
            LinearSolve::Unique(x) => {
                Ok(x.into_iter().enumerate().map(|(c, y)| f.mul(y, f.pow(rho, c as u64))).collect())
            }
            LinearSolve::Inconsistent { residual } => Err(Error::NotACodeword { residual }),
            LinearSolve::RankDeficient { .. } => Err(Error::NotACodeword { residual: f64::INFINITY }),
        }
    }

    fn check_len(&self, word: &[F::Elem]) -> Result<()> {
        if word.len() == self.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!("word of length {} for N={}", word.len(), self.len())))
        }
    }
}

impl GrsCode<PrimeField> {
    /// Classical construction: `alpha_j = g^j` for the smallest primitive root
    /// `g`, and `v = 1`. Requires `N <= p - 1`.
    pub fn primitive(field: PrimeField, n: usize, k: usize) -> Result<Self> {
        let alphas = primitive_points(&field, n)?;
        Self::with_unit_multipliers(field, k, alphas)
    }
}

/// `N` distinct nonzero points `g^0, g^1, ...` of GF(p).
pub fn primitive_points(field: &PrimeField, n: usize) -> Result<Vec<u64>> {
    if n as u64 > field.modulus() - 1 {
        return invalid(format!("GF({}) has only {} nonzero points, need {n}", field.modulus(), field.modulus() - 1));
    }
    let g = field.primitive_root();
    Ok((0..n as u64).map(|j| field.pow(g, j)).collect())
}
