//! Encode a message with a GRS code over GF(257) and over the reals, check
//! the parity checks vanish, and interpolate the message back.

use polyirs::field::{Field, PrimeField, RealField};
use polyirs::grs::GrsCode;
use polyirs::harness::AlphaRule;

fn main() -> polyirs::Result<()> {
    let gf = PrimeField::new(257)?;
    let code = GrsCode::primitive(gf, 16, 4)?;
    let msg = vec![3, 141, 59, 26];
    let word = code.encode(&msg)?;
    println!("GF(257) N=16 K=4 codeword: {word:?}");
    println!("  syndromes: {:?}", code.syndromes(&word)?);
    assert_eq!(code.interpolate(&word)?, msg);

    let mut bad = word.clone();
    bad[5] = gf.add(bad[5], 1);
    println!("  one corrupted symbol -> codeword? {}", code.is_codeword(&bad));

    let re = RealField::default();
    let alphas = AlphaRule::Power(0.9).points(&re, 8)?;
    let code = GrsCode::with_unit_multipliers(re, 2, alphas)?;
    let word = code.encode(&[1.5, -0.25])?;
    let back = code.interpolate(&word)?;
    println!("real N=8 K=2: message back as {back:?}");
    println!("  dual multipliers u_j: {:?}", code.dual_multipliers());
    Ok(())
}
