//! Polynomial codes for distributed `A^T B`, and their view as an
//! interleaved GRS codeword.
//!
//! `A` (s x r) is split column-wise into `m` blocks and `B` (s x r') into
//! `n` blocks. Worker `i` receives `A~_i = sum_j A_j x_i^(j*ea)` and
//! `B~_i = sum_k B_k x_i^(k*eb)` and returns `C~_i = A~_i^T B~_i`. Flattening
//! every `C~_i` row-major and placing it in column `i` gives an `L x N`
//! matrix whose rows are codewords of `GRS(N, mn, xs, 1)`, with
//! `L = (r/m)(r'/n)`.

use crate::error::{invalid, Error, Result};
use crate::field::Field;
use crate::grs::GrsCode;
use crate::matrix::Matrix;

/// Exponents `(ea, eb)` such that `j*ea + k*eb` enumerates `0..m*n` exactly once.
pub fn choose_exponents(m: usize, _n: usize) -> (usize, usize) {
    (1, m)
}

#[derive(Debug, Clone)]
pub struct PolyCodeParams<F: Field> {
    field: F,
    m: usize,
    n: usize,
    xs: Vec<F::Elem>,
    exp_a: usize,
    exp_b: usize,
}

impl<F: Field> PolyCodeParams<F> {
    /// Parameters with the default exponents `(1, m)`.
    pub fn new(field: F, m: usize, n: usize, xs: Vec<F::Elem>) -> Result<Self> {
        let (ea, eb) = choose_exponents(m, n);
        Self::with_exponents(field, m, n, xs, ea, eb)
    }

    /// The exponent set `{j*ea + k*eb}` must be exactly `0..m*n`, so that the
    /// worker outputs form a GRS code of dimension `mn`.
    pub fn with_exponents(field: F, m: usize, n: usize, xs: Vec<F::Elem>, exp_a: usize, exp_b: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return invalid("block counts m and n must be positive");
        }
        if xs.len() < m * n {
            return invalid(format!("{} workers cannot recover {} blocks", xs.len(), m * n));
        }
        let mut hit = vec![false; m * n];
        for j in 0..m {
            for k in 0..n {
                let e = j * exp_a + k * exp_b;
                if e >= m * n || std::mem::replace(&mut hit[e], true) {
                    return invalid(format!("exponents ({exp_a}, {exp_b}) do not enumerate 0..{}", m * n));
                }
            }
        }
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                if field.approx_eq(xs[i], xs[j]) {
                    return invalid(format!("worker points x_{i} and x_{j} coincide"));
                }
            }
        }
        Ok(Self { field, m, n, xs, exp_a, exp_b })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn workers(&self) -> usize {
        self.xs.len()
    }

    pub fn points(&self) -> &[F::Elem] {
        &self.xs
    }

    pub fn exponents(&self) -> (usize, usize) {
        (self.exp_a, self.exp_b)
    }

    /// The GRS code every row of the assembled IRS word belongs to.
    pub fn code(&self) -> Result<GrsCode<F>> {
        if self.workers() == self.m * self.n {
            return invalid("N = mn leaves no redundancy for error correction");
        }
        GrsCode::with_unit_multipliers(self.field.clone(), self.m * self.n, self.xs.clone())
    }
}

/// `A` and `B` with their column partitions.
#[derive(Debug, Clone)]
pub struct BlockMatrices<E> {
    pub a: Matrix<E>,
    pub b: Matrix<E>,
    m: usize,
    n: usize,
}

impl<E: Copy> BlockMatrices<E> {
    pub fn new(a: Matrix<E>, b: Matrix<E>, m: usize, n: usize) -> Result<Self> {
        if a.rows() != b.rows() {
            return Err(Error::DimensionMismatch(format!("A has {} rows, B has {}", a.rows(), b.rows())));
        }
        if m == 0 || n == 0 || !a.cols().is_multiple_of(m) || !b.cols().is_multiple_of(n) {
            return invalid(format!("cannot split {} columns into {m} and {} into {n}", a.cols(), b.cols()));
        }
        Ok(Self { a, b, m, n })
    }

    pub fn a_block(&self, j: usize) -> Matrix<E> {
        let w = self.a.cols() / self.m;
        self.a.column_block(j * w, w)
    }

    pub fn b_block(&self, k: usize) -> Matrix<E> {
        let w = self.b.cols() / self.n;
        self.b.column_block(k * w, w)
    }

    /// `(r/m, r'/n)`, the shape of every worker product.
    pub fn product_block_shape(&self) -> (usize, usize) {
        (self.a.cols() / self.m, self.b.cols() / self.n)
    }
}

#[derive(Debug, Clone)]
pub struct WorkerTask<E> {
    pub worker: usize,
    pub a_tilde: Matrix<E>,
    pub b_tilde: Matrix<E>,
}

/// `L x N` codeword of the interleaved code, remembering the worker-product shape.
#[derive(Debug, Clone, PartialEq)]
pub struct IrsWord<E> {
    pub symbols: Matrix<E>,
    pub block_rows: usize,
    pub block_cols: usize,
}

impl<E: Copy> IrsWord<E> {
    pub fn interleaving(&self) -> usize {
        self.symbols.rows()
    }

    pub fn with_symbols(&self, symbols: Matrix<E>) -> Self {
        Self { symbols, block_rows: self.block_rows, block_cols: self.block_cols }
    }
}

fn combine<F: Field>(field: &F, blocks: &[Matrix<F::Elem>], x: F::Elem, step: usize) -> Matrix<F::Elem> {
    let (rows, cols) = blocks[0].shape();
    let mut acc = Matrix::filled(rows, cols, field.zero());
    for (j, blk) in blocks.iter().enumerate() {
        let w = field.pow(x, (j * step) as u64);
        for r in 0..rows {
            for c in 0..cols {
                acc[(r, c)] = field.add(acc[(r, c)], field.mul(blk[(r, c)], w));
            }
        }
    }
    acc
}

pub fn encode_tasks<F: Field>(params: &PolyCodeParams<F>, blocks: &BlockMatrices<F::Elem>) -> Result<Vec<WorkerTask<F::Elem>>> {
    if blocks.m != params.m || blocks.n != params.n {
        return invalid("block partition does not match the code parameters");
    }
    let f = &params.field;
    let a_parts: Vec<_> = (0..params.m).map(|j| blocks.a_block(j)).collect();
    let b_parts: Vec<_> = (0..params.n).map(|k| blocks.b_block(k)).collect();
    Ok(params
        .xs
        .iter()
        .enumerate()
        .map(|(worker, &x)| WorkerTask {
            worker,
            a_tilde: combine(f, &a_parts, x, params.exp_a),
            b_tilde: combine(f, &b_parts, x, params.exp_b),
        })
        .collect())
}

/// `X^T Y` over the field.
pub fn transpose_product<F: Field>(field: &F, x: &Matrix<F::Elem>, y: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if x.rows() != y.rows() {
        return Err(Error::DimensionMismatch(format!("{} vs {} rows", x.rows(), y.rows())));
    }
    Ok(Matrix::from_fn(x.cols(), y.cols(), |p, q| {
        (0..x.rows()).fold(field.zero(), |acc, s| field.add(acc, field.mul(x[(s, p)], y[(s, q)])))
    }))
}

/// The worker's job: `C~_i = A~_i^T B~_i`.
pub fn worker_compute<F: Field>(field: &F, task: &WorkerTask<F::Elem>) -> Result<Matrix<F::Elem>> {
    transpose_product(field, &task.a_tilde, &task.b_tilde)
}

/// Row-major flattening: entry `(i, j)` of an `a x b` matrix lands at `i*b + j`.
pub fn vectorize<E: Copy>(w: &Matrix<E>) -> Vec<E> {
    w.as_slice().to_vec()
}

/// Places `vectorize(C~_i)` in column `i` and returns the word with its code.
pub fn assemble_irs<F: Field>(
    params: &PolyCodeParams<F>,
    outputs: &[Matrix<F::Elem>],
) -> Result<(IrsWord<F::Elem>, GrsCode<F>)> {
    if outputs.len() != params.workers() {
        return invalid(format!("{} worker outputs for {} workers", outputs.len(), params.workers()));
    }
    let (br, bc) = outputs[0].shape();
    if br == 0 || bc == 0 || outputs.iter().any(|o| o.shape() != (br, bc)) {
        return invalid("worker outputs are empty or of differing shapes");
    }
    let columns: Vec<Vec<F::Elem>> = outputs.iter().map(vectorize).collect();
    let symbols = Matrix::from_fn(br * bc, outputs.len(), |l, i| columns[i][l]);
    Ok((IrsWord { symbols, block_rows: br, block_cols: bc }, params.code()?))
}

/// Interpolates every row to its `mn` coefficients and reassembles `A^T B`.
///
/// Coefficient `j + k*m` of row `p*(r'/n) + q` is `[A_j^T B_k](p, q)`.
pub fn recover_product<F: Field>(
    params: &PolyCodeParams<F>,
    code: &GrsCode<F>,
    corrected: &IrsWord<F::Elem>,
) -> Result<Matrix<F::Elem>> {
    let (br, bc) = (corrected.block_rows, corrected.block_cols);
    if corrected.symbols.rows() != br * bc || corrected.symbols.cols() != params.workers() {
        return invalid("IRS word shape does not match the parameters");
    }
    let (m, n) = (params.m, params.n);
    let mut out = Matrix::filled(m * br, n * bc, params.field.zero());
    for l in 0..br * bc {
        let coeffs = code.interpolate(corrected.symbols.row(l))?;
        let (p, q) = (l / bc, l % bc);
        for j in 0..m {
            for k in 0..n {
                out[(j * br + p, k * bc + q)] = coeffs[j * params.exp_a + k * params.exp_b];
            }
        }
    }
    Ok(out)
}

/// Encode, run every worker, and assemble: the error-free master view.
pub fn compute_codeword<F: Field>(
    params: &PolyCodeParams<F>,
    blocks: &BlockMatrices<F::Elem>,
) -> Result<(IrsWord<F::Elem>, GrsCode<F>)> {
    let outputs = encode_tasks(params, blocks)?
        .iter()
        .map(|t| worker_compute(&params.field, t))
        .collect::<Result<Vec<_>>>()?;
    assemble_irs(params, &outputs)
}
