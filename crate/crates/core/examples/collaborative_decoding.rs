//! Why interleaving helps: the same burst of column errors defeats
//! row-by-row decoding but not joint decoding. Also shows CPDA and the
//! shift-register decoder reaching the same decision.

use polyirs::decoder::{cpda_decode, mssr_decode, synthesize, t_max, SyndromeSet};
use polyirs::errmodel::{inject, sample_error, trial_rng, ErrorModel, ErrorModelSpec};
use polyirs::field::{Field, PrimeField};
use polyirs::grs::GrsCode;
use polyirs::matrix::Matrix;

fn main() -> polyirs::Result<()> {
    let f = PrimeField::new(257)?;
    let code = GrsCode::primitive(f, 16, 4)?;
    let mut rng = trial_rng(7, 0);
    let t = 9;
    for l in [1, 2, 4, 8] {
        let spec = ErrorModelSpec { model: ErrorModel::Uref, t, seed: 0 };
        let e = sample_error(&f, &spec, l, 16, &mut rng)?;
        let zero = Matrix::filled(l, 16, f.zero());
        let r = inject(&f, &zero, &e.values)?;
        let cpda = cpda_decode(&code, &r)?;
        let mssr = mssr_decode(&code, &r)?;
        let verdict = match cpda.decoded() {
            Some(d) if d.locations == e.support => "corrected".to_string(),
            Some(_) => "wrong codeword".to_string(),
            None => format!("{cpda:?}"),
        };
        println!(
            "L={l}: t={t} vs t_max={} -> {verdict}; decoders agree: {}",
            t_max(16, 4, l),
            cpda.same_decision(&mssr)
        );
        if l == 4 {
            let syn = SyndromeSet::compute(&code, &r)?;
            let reg = synthesize(&f, &syn.layers);
            println!("  shortest shared recurrence has length {}", reg.length);
        }
    }
    Ok(())
}
