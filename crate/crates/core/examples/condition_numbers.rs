//! Mean condition number of S^T S for the stacked syndrome matrix S at the
//! true error count, N=8, K=2, alpha_i = 0.9^i. Deeper interleaving makes
//! the locator system better conditioned.

use polyirs::harness::{condnum_study, AlphaRule, ExperimentConfig, MultiplierRule};

fn main() -> polyirs::Result<()> {
    let mut cfg = ExperimentConfig::real(8, 2, (1..=5).collect(), AlphaRule::Power(0.9));
    cfg.multipliers = MultiplierRule::UnitDual;
    cfg.t_max = 4;
    cfg.trials = 500;
    cfg.seed = 1;
    let report = condnum_study(&cfg)?;
    println!("  L      t=1        t=2        t=3        t=4");
    for l in 1..=5 {
        print!("{l:>3}");
        for t in 1..=4 {
            match report.get(l, t).and_then(|r| r.mean_cond) {
                Some(c) => print!(" {c:>10.3e}"),
                None => print!(" {:>10}", "-"),
            }
        }
        println!();
    }
    Ok(())
}
