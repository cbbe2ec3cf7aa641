//! CPDA error probability over the reals for N=20, K=12, alpha_i = i and
//! several interleaving depths. Cells beyond t_max(L) print as "-".
//!
//! `cargo run --release --example table1_error_rates [trials]`

use polyirs::decoder::t_max;
use polyirs::harness::{run_monte_carlo, AlphaRule, ExperimentConfig};

fn main() -> polyirs::Result<()> {
    let trials = std::env::args().nth(1).map_or(Ok(2000), |s| s.parse()).expect("trials");
    let ls = vec![1, 2, 3, 4, 5, 6, 7, 8, 20];
    let mut cfg = ExperimentConfig::real(20, 12, ls.clone(), AlphaRule::Linear);
    cfg.t_max = 7;
    cfg.trials = trials;
    let report = run_monte_carlo(&cfg)?;
    print!("L \\ t");
    (1..=7).for_each(|t| print!("{t:>8}"));
    println!();
    for l in ls {
        print!("{l:>5}");
        for t in 1..=7 {
            if t > t_max(20, 12, l) {
                print!("{:>8}", "-");
            } else {
                print!("{:>8.4}", report.get(l, t).unwrap().p_e());
            }
        }
        println!();
    }
    Ok(())
}
