//! The full master/worker flow over GF(257), one step at a time: split,
//! encode, compute, corrupt six workers, decode, recover A^T B.

use polyirs::decoder::{cpda_decode, t_max, DecodeOutcome};
use polyirs::errmodel::{inject, sample_error, trial_rng, ErrorModel, ErrorModelSpec};
use polyirs::field::{Field, PrimeField};
use polyirs::grs::primitive_points;
use polyirs::matrix::Matrix;
use polyirs::polycode::{assemble_irs, encode_tasks, recover_product, transpose_product, worker_compute, BlockMatrices, PolyCodeParams};

fn main() -> polyirs::Result<()> {
    let f = PrimeField::new(257)?;
    let (m, n, workers) = (2, 2, 12);
    let mut rng = trial_rng(2024, 0);
    // A is 3 x 4 and B is 3 x 4: each product block is 2 x 2, so L = 4.
    let a = Matrix::from_fn(3, 4, |_, _| f.sample(&mut rng));
    let b = Matrix::from_fn(3, 4, |_, _| f.sample(&mut rng));

    let params = PolyCodeParams::new(f, m, n, primitive_points(&f, workers)?)?;
    let tasks = encode_tasks(&params, &BlockMatrices::new(a.clone(), b.clone(), m, n)?)?;
    let outputs = tasks.iter().map(|t| worker_compute(&f, t)).collect::<polyirs::Result<Vec<_>>>()?;
    let (word, code) = assemble_irs(&params, &outputs)?;
    let l = word.interleaving();
    let tm = t_max(workers, m * n, l);
    println!("N={workers} K={} L={l}: classical radius {}, collaborative t_max {tm}", m * n, (workers - m * n) / 2);

    let spec = ErrorModelSpec { model: ErrorModel::Uref, t: tm, seed: 0 };
    let e = sample_error(&f, &spec, l, workers, &mut rng)?;
    println!("faulty workers: {:?}", e.support);
    let received = inject(&f, &word.symbols, &e.values)?;

    match cpda_decode(&code, &received)? {
        DecodeOutcome::Success(d) => {
            println!("located: {:?}", d.locations);
            let c = recover_product(&params, &code, &word.with_symbols(d.corrected))?;
            assert_eq!(c, transpose_product(&f, &a, &b)?);
            println!("A^T B recovered exactly");
        }
        DecodeOutcome::Failure(reason) => println!("decoder failure: {reason}"),
    }
    Ok(())
}
