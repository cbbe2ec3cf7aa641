//! Multi-sequence shift-register synthesis.

use super::{correct_with_locator, t_max, unchanged, DecodeOutcome, ErrorLocator, FailureReason, SyndromeSet};
use crate::error::Result;
use crate::field::Field;
use crate::grs::GrsCode;
use crate::matrix::Matrix;

/// Shortest linear feedback shift register generating every sequence:
/// `sum_{i=0}^{length} coeffs[i] S^(l)_{k-i} = 0` for all `l` and
/// `length <= k < N-K`, with `coeffs[0] = 1`. `coeffs` is padded to
/// `length + 1` entries, so its last entry may be zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftRegister<E> {
    pub coeffs: Vec<E>,
    pub length: usize,
}

struct Auxiliary<E> {
    poly: Vec<E>,
    discrepancy: E,
    /// Index of the step that stored this polynomial; `-1` before any.
    step: isize,
    length: usize,
}

/// Berlekamp-Massey generalized to several sequences, one auxiliary
/// register per sequence. Steps run over `(k, l)` with `k` outer.
pub fn synthesize<F: Field>(field: &F, sequences: &[Vec<F::Elem>]) -> ShiftRegister<F::Elem> {
    let f = field;
    let n = sequences.iter().map(Vec::len).max().unwrap_or(0);
    let mut lambda = vec![f.one()];
    let mut length = 0usize;
    let mut aux: Vec<Auxiliary<F::Elem>> = sequences
        .iter()
        .map(|_| Auxiliary { poly: vec![f.one()], discrepancy: f.one(), step: -1, length: 0 })
        .collect();
    for k in 0..n {
        for (l, s) in sequences.iter().enumerate() {
            if k < length {
                continue;
            }
            let mut delta = f.zero();
            let mut reference = 0.0;
            for (i, &c) in lambda.iter().enumerate().take(length.min(k) + 1) {
                let term = f.mul(c, s[k - i]);
                reference += f.magnitude(c) * f.magnitude(s[k - i]);
                delta = f.add(delta, term);
            }
            if f.is_negligible(delta, reference) {
                continue;
            }
            let a = &aux[l];
            let shift = (k as isize - a.step) as usize;
            let factor = f.div(delta, a.discrepancy).expect("stored discrepancies are nonzero");
            let mut next = lambda.clone();
            if next.len() < a.poly.len() + shift {
                next.resize(a.poly.len() + shift, f.zero());
            }
            for (i, &b) in a.poly.iter().enumerate() {
                next[i + shift] = f.sub(next[i + shift], f.mul(factor, b));
            }
            let next_length = length.max(shift + a.length);
            if next_length > length {
                aux[l] = Auxiliary { poly: std::mem::replace(&mut lambda, next), discrepancy: delta, step: k as isize, length };
                length = next_length;
            } else {
                lambda = next;
            }
        }
    }
    lambda.resize(length + 1, f.zero());
    ShiftRegister { coeffs: lambda, length }
}

/// Decodes by synthesizing the shortest register shared by all syndrome
/// sequences; its connection polynomial is the candidate locator.
///
/// Errors only on a shape mismatch between `received` and the code.
pub fn mssr_decode<F: Field>(code: &GrsCode<F>, received: &Matrix<F::Elem>) -> Result<DecodeOutcome<F::Elem>> {
    let syn = SyndromeSet::compute(code, received)?;
    let f = code.field();
    if syn.all_zero(f) {
        return Ok(unchanged(code, received));
    }
    let reg = synthesize(f, &syn.layers);
    if reg.length == 0 || reg.length > t_max(code.len(), code.dimension(), received.rows()) {
        return Ok(DecodeOutcome::Failure(FailureReason::NoConsistentT));
    }
    let locator = ErrorLocator { coeffs: reg.coeffs };
    Ok(match correct_with_locator(code, received, &syn, locator) {
        Ok(d) => DecodeOutcome::Success(d),
        Err(reason) => DecodeOutcome::Failure(reason),
    })
}
