//! Error probability versus number of faulty workers over the reals, N=8,
//! K=2, alpha_i = 0.9^i, Gaussian errors: row-by-row decoding (L=1) against
//! collaborative decoding with L=6.
//!
//! `cargo run --release --example fig1_error_rates [trials]`

use polyirs::harness::{run_monte_carlo, AlphaRule, ExperimentConfig};

fn main() -> polyirs::Result<()> {
    let trials = std::env::args().nth(1).map_or(Ok(2000), |s| s.parse()).expect("trials");
    let mut cfg = ExperimentConfig::real(8, 2, vec![1, 6], AlphaRule::Power(0.9));
    cfg.trials = trials;
    let report = run_monte_carlo(&cfg)?;
    println!("   t   P_e(L=1)  P_e(L=6)");
    for t in 1..=6 {
        let pe = |l| report.get(l, t).unwrap().p_e();
        println!("{t:>4} {:>9.4} {:>9.4}", pe(1), pe(6));
    }
    Ok(())
}
