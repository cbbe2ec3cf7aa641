use std::io::Write;

use serde::Serialize;

use crate::decoder::t_max;
use crate::error::{invalid, Result};

/// Upper bound on the failure probability of collaborative decoding over
/// GF(q) under uniform column errors of weight `t <= t_max`:
/// `((q^L - 1/q) / (q^L - 1)) q^(-(L+1)(t_max - t)) / (q - 1)`, clamped to `[0, 1]`.
pub fn pf_bound(q: u64, n: usize, k: usize, l: usize, t: usize) -> Result<f64> {
    if q < 2 {
        return invalid(format!("q = {q} is not a field size"));
    }
    if k == 0 || k >= n || l == 0 {
        return invalid(format!("need 0 < K < N and L >= 1, got N={n} K={k} L={l}"));
    }
    let tm = t_max(n, k, l);
    if t > tm {
        return invalid(format!("t = {t} exceeds t_max = {tm}"));
    }
    let q = q as f64;
    // (q^L - 1/q)/(q^L - 1) rewritten to stay finite for large q^L.
    let lead = (1.0 - q.powi(-(l as i32) - 1)) / (1.0 - q.powi(-(l as i32)));
    let decay = q.powf(-((l + 1) as f64) * (tm - t) as f64);
    Ok((lead * decay / (q - 1.0)).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub t: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub t_max: usize,
    pub pf_bound: f64,
}

/// Bound for every `t` in `t_min..=t_hi`, written as CSV with header
/// `t,L,q,n,k,t_max,pf_bound`. Fails if any `t` exceeds `t_max`.
pub fn emit_bound_csv<W: Write>(q: u64, n: usize, k: usize, l: usize, t_min: usize, t_hi: usize, out: W) -> Result<Vec<BoundRow>> {
    let rows = (t_min..=t_hi)
        .map(|t| {
            Ok(BoundRow { t, l, q, n, k, t_max: t_max(n, k, l), pf_bound: pf_bound(q, n, k, l, t)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut w = csv::Writer::from_writer(out);
    for r in &rows {
        w.serialize(r)?;
    }
    if rows.is_empty() {
        w.write_record(["t", "L", "q", "n", "k", "t_max", "pf_bound"])?;
    }
    w.flush()?;
    Ok(rows)
}
