//! Collaborative Peterson decoding.

use super::{correct_with_locator, t_max, unchanged, DecodeOutcome, ErrorLocator, FailureReason, StackedSystem, SyndromeSet};
use crate::error::Result;
use crate::field::{Field, LinearSolve};
use crate::grs::GrsCode;
use crate::matrix::Matrix;

/// Tries `t = 1, ..., t_max` in order and stops at the first `t` whose
/// stacked Hankel system is consistent.
///
/// A consistent system with a unique solution gives the locator, which must
/// then be `t`-valid. A consistent but rank-deficient system ends decoding
/// with [`FailureReason::RankDeficient`]: once some length `t` admits a
/// recurrence, every longer system is rank-deficient too, so nothing later
/// could be unique. The system is solved directly (Gauss-Jordan over GF(p),
/// SVD least squares over the reals) rather than through the normal
/// equations, whose Gram matrix can be singular over a finite field even
/// when `S_L(t)` has full column rank.
///
/// Errors only on a shape mismatch between `received` and the code.
pub fn cpda_decode<F: Field>(code: &GrsCode<F>, received: &Matrix<F::Elem>) -> Result<DecodeOutcome<F::Elem>> {
    let syn = SyndromeSet::compute(code, received)?;
    if syn.all_zero(code.field()) {
        return Ok(unchanged(code, received));
    }
    let f = code.field();
    let limit = t_max(code.len(), code.dimension(), received.rows());
    for t in 1..=limit {
        let mut sys = StackedSystem::from_syndromes(f, &syn, t)?;
        equilibrate_rows(f, &mut sys);
        match f.solve(&sys.matrix, &sys.rhs) {
            LinearSolve::Unique(lambda) => {
                let locator = ErrorLocator::from_solution(f, &lambda);
                return Ok(match correct_with_locator(code, received, &syn, locator) {
                    Ok(d) => DecodeOutcome::Success(d),
                    Err(reason) => DecodeOutcome::Failure(reason),
                });
            }
            LinearSolve::RankDeficient { rank } => {
                if augmented_rank(f, &sys) == rank {
                    return Ok(DecodeOutcome::Failure(FailureReason::RankDeficient));
                }
            }
            LinearSolve::Inconsistent { .. } => {}
        }
    }
    Ok(DecodeOutcome::Failure(FailureReason::NoConsistentT))
}

/// Scales every equation `[S row | rhs]` to unit max-magnitude over the
/// reals. Hankel rows grow like `alpha^i`, and rounding noise in each row is
/// relative to that row, so this keeps small-but-genuine contributions above
/// the rank threshold. No-op over GF(p).
fn equilibrate_rows<F: Field>(f: &F, sys: &mut StackedSystem<F::Elem>) {
    if f.is_exact() {
        return;
    }
    for r in 0..sys.matrix.rows() {
        let m = sys.matrix.row(r).iter().chain(std::iter::once(&sys.rhs[r])).map(|&x| f.magnitude(x)).fold(0.0, f64::max);
        if let Some(s) = f.from_f64(1.0 / m).filter(|_| m > 0.0 && m.is_finite()) {
            for x in sys.matrix.row_mut(r) {
                *x = f.mul(*x, s);
            }
            sys.rhs[r] = f.mul(sys.rhs[r], s);
        }
    }
}

fn augmented_rank<F: Field>(f: &F, sys: &StackedSystem<F::Elem>) -> usize {
    let (rows, cols) = sys.matrix.shape();
    let aug = Matrix::from_fn(rows, cols + 1, |r, c| if c < cols { sys.matrix[(r, c)] } else { sys.rhs[r] });
    f.rank(&aug)
}
