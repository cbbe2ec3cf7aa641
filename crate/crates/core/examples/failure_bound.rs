//! Empirical failure rate over GF(257) against the analytic bound, N=16,
//! K=4, L=4, uniform column errors.

use polyirs::harness::{pf_bound, run_monte_carlo, ExperimentConfig};

fn main() -> polyirs::Result<()> {
    let mut cfg = ExperimentConfig::prime(257, 16, 4, vec![4]);
    cfg.t_min = 7;
    cfg.t_max = 9;
    cfg.trials = 5000;
    let report = run_monte_carlo(&cfg)?;
    println!("   t   P_F empirical   bound          P_ML");
    for r in &report.records {
        println!("{:>4}   {:<13.5} {:<14.3e} {}", r.t, r.p_f(), pf_bound(257, 16, 4, 4, r.t)?, r.p_ml());
    }
    Ok(())
}
