//! Writing and reading the CSV report, plus the bound table.

use polyirs::harness::{emit_bound_csv, parse_csv, run_monte_carlo, write_csv, ExperimentConfig};

fn main() -> polyirs::Result<()> {
    let mut cfg = ExperimentConfig::prime(257, 12, 4, vec![2, 4]);
    cfg.t_min = 4;
    cfg.t_max = 6;
    cfg.trials = 500;
    let mut buf = Vec::new();
    write_csv(&run_monte_carlo(&cfg)?, &mut buf)?;
    print!("{}", String::from_utf8_lossy(&buf));
    let back = parse_csv(buf.as_slice())?;
    println!("parsed {} rows back\n", back.records.len());
    emit_bound_csv(257, 12, 4, 4, 4, 6, std::io::stdout())?;
    Ok(())
}
