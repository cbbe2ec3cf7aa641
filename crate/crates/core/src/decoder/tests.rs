use super::*;
use crate::errmodel::{inject, sample_error, ErrorModel, ErrorModelSpec};
use crate::field::{PrimeField, RealField};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn random_codeword_matrix<F: Field, R: Rng>(code: &GrsCode<F>, l: usize, rng: &mut R) -> Matrix<F::Elem> {
    let f = code.field();
    let rows: Vec<Vec<F::Elem>> = (0..l)
        .map(|_| {
            let msg: Vec<F::Elem> = (0..code.dimension()).map(|_| f.sample(rng)).collect();
            code.encode(&msg).unwrap()
        })
        .collect();
    Matrix::from_rows(&rows).unwrap()
}

fn uref_instance<R: Rng>(code: &GrsCode<PrimeField>, l: usize, t: usize, rng: &mut R) -> (Matrix<u64>, Matrix<u64>) {
    let f = code.field();
    let d = random_codeword_matrix(code, l, rng);
    let spec = ErrorModelSpec { model: ErrorModel::Uref, t, seed: 0 };
    let e = sample_error(f, &spec, l, code.len(), rng).unwrap();
    (d.clone(), inject(f, &d, &e.values).unwrap())
}

/// Smallest `t` for which the stacked system has any solution, by rank comparison.
fn minimal_consistent_length(f: &PrimeField, seqs: &[Vec<u64>]) -> usize {
    let nk = seqs[0].len();
    for t in 0..=nk {
        let rho = nk - t;
        let rows = seqs.len() * rho;
        if rows == 0 {
            return t;
        }
        let a = Matrix::from_fn(rows, t, |r, c| seqs[r / rho][r % rho + c]);
        let aug = Matrix::from_fn(rows, t + 1, |r, c| {
            if c < t {
                a[(r, c)]
            } else {
                f.neg(seqs[r / rho][r % rho + t])
            }
        });
        if f.rank(&a) == f.rank(&aug) {
            return t;
        }
    }
    unreachable!()
}

fn generates(f: &PrimeField, reg: &ShiftRegister<u64>, seqs: &[Vec<u64>]) -> bool {
    seqs.iter().all(|s| {
        (reg.length..s.len()).all(|k| {
            let acc = (0..=reg.length).fold(0, |acc, i| f.add(acc, f.mul(reg.coeffs[i], s[k - i])));
            acc == 0
        })
    })
}

#[test]
fn t_max_values() {
    assert_eq!(t_max(8, 2, 6), 5);
    assert_eq!(t_max(8, 2, 1), 3);
    assert_eq!(t_max(20, 12, 20), 7);
    assert_eq!(t_max(20, 12, 2), 5);
    assert_eq!(t_max(16, 4, 4), 9);
    assert_eq!(t_max(6, 1, 2), 3);
}

#[test]
fn stacked_system_layout() {
    let f = gf(7);
    let syn = SyndromeSet { layers: vec![vec![1, 2, 3, 4], vec![5, 6, 0, 1]], scales: vec![vec![0.0; 4]; 2] };
    let sys = StackedSystem::from_syndromes(&f, &syn, 2).unwrap();
    assert_eq!(sys.matrix, Matrix::from_rows(&[vec![1, 2], vec![2, 3], vec![5, 6], vec![6, 0]]).unwrap());
    assert_eq!(sys.rhs, vec![f.neg(3), f.neg(4), f.neg(0), f.neg(1)]);
    assert!(StackedSystem::from_syndromes(&f, &syn, 0).is_err());
    assert!(StackedSystem::from_syndromes(&f, &syn, 4).is_err());
}

#[test]
fn build_stacked_rejects_t_outside_range() {
    let code = GrsCode::primitive(gf(7), 6, 1).unwrap();
    let r = Matrix::filled(2, 6, 0u64);
    assert!(build_stacked(&code, &r, 0).is_err());
    assert!(build_stacked(&code, &r, 4).is_err());
    assert_eq!(build_stacked(&code, &r, 3).unwrap().matrix.shape(), (4, 3));
}

#[test]
fn single_error_locator() {
    let f = gf(7);
    let code = GrsCode::primitive(f, 6, 2).unwrap();
    for j in 0..6 {
        let mut r = Matrix::filled(1, 6, 0u64);
        r[(0, j)] = 4;
        for decoder in [DecoderKind::Cpda, DecoderKind::Mssr] {
            let d = decoder.decode(&code, &r).unwrap();
            let d = d.decoded().expect("single error is within radius");
            assert_eq!(d.locator.coeffs, vec![1, f.neg(code.alphas()[j])]);
            assert_eq!(d.locations, vec![j]);
            assert_eq!(d.values[(0, 0)], 4);
            assert!(d.corrected.as_slice().iter().all(|&x| x == 0));
        }
    }
}

#[test]
fn locator_validity() {
    let f = gf(7);
    let code = GrsCode::primitive(f, 6, 1).unwrap();
    // alphas = 1,3,2,6,4,5; roots at alpha^-1.
    let a = code.alphas();
    let two = ErrorLocator { coeffs: vec![1, f.neg(f.add(a[1], a[4])), f.mul(a[1], a[4])] };
    assert_eq!(is_t_valid(&code, &two), TValidity { valid: true, positions: vec![1, 4] });
    // (1 - 3z)^2 has a repeated root.
    let repeated = ErrorLocator { coeffs: vec![1, f.neg(6), 2] };
    assert!(!is_t_valid(&code, &repeated).valid);
    // 1 + z^2 has no roots in GF(7).
    let off_grid = ErrorLocator { coeffs: vec![1, 0, 1] };
    let v = is_t_valid(&code, &off_grid);
    assert!(!v.valid && v.positions.is_empty());
    // Zero leading coefficient.
    let short = ErrorLocator { coeffs: vec![1, f.neg(a[2]), 0] };
    assert!(!is_t_valid(&code, &short).valid);
}

#[test]
fn zero_syndrome_returns_input() {
    let code = GrsCode::primitive(gf(257), 16, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let d = random_codeword_matrix(&code, 4, &mut rng);
    for decoder in [DecoderKind::Cpda, DecoderKind::Mssr] {
        let out = decoder.decode(&code, &d).unwrap();
        assert_eq!(out.decoded().unwrap().corrected, d);
        assert!(out.decoded().unwrap().locations.is_empty());
    }
}

#[test]
fn shape_mismatch_is_an_error() {
    let code = GrsCode::primitive(gf(7), 6, 1).unwrap();
    let r = Matrix::filled(2, 5, 0u64);
    assert!(cpda_decode(&code, &r).is_err());
    assert!(mssr_decode(&code, &r).is_err());
}

#[test]
fn synthesis_is_minimal_over_small_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for &(p, nk, l) in &[(7u64, 5usize, 1usize), (7, 5, 2), (7, 6, 3), (5, 4, 2), (257, 8, 3), (257, 12, 4), (2, 6, 3)] {
        let f = gf(p);
        for _ in 0..3000 {
            let seqs: Vec<Vec<u64>> = (0..l)
                .map(|_| {
                    // Mix dense random sequences with sparse ones to hit short recurrences.
                    let sparse = rng.gen_bool(0.3);
                    (0..nk).map(|_| if sparse && rng.gen_bool(0.6) { 0 } else { f.sample(&mut rng) }).collect()
                })
                .collect();
            let reg = synthesize(&f, &seqs);
            assert!(generates(&f, &reg, &seqs), "p={p} {seqs:?} -> {reg:?}");
            assert_eq!(reg.length, minimal_consistent_length(&f, &seqs), "p={p} {seqs:?}");
        }
    }
}

#[test]
fn synthesis_minimal_on_error_syndromes() {
    let f = gf(257);
    let code = GrsCode::primitive(f, 16, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..2000 {
        let t = trial % 13;
        let (_, r) = uref_instance(&code, 4, t, &mut rng);
        let syn = SyndromeSet::compute(&code, &r).unwrap();
        let reg = synthesize(&f, &syn.layers);
        assert_eq!(reg.length, minimal_consistent_length(&f, &syn.layers));
    }
}

#[test]
fn unique_radius_exhaustive_gf7() {
    // N=6, K=1, L=2: every support of size <= floor((N-K)/2) = 2 with
    // arbitrary nonzero columns is corrected.
    let f = gf(7);
    let code = GrsCode::primitive(f, 6, 1).unwrap();
    let nonzero_columns: Vec<[u64; 2]> =
        (0..7).flat_map(|a| (0..7).map(move |b| [a, b])).filter(|c| c != &[0, 0]).collect();
    let mut supports: Vec<Vec<usize>> = (0..6).map(|j| vec![j]).collect();
    for a in 0..6 {
        for b in a + 1..6 {
            supports.push(vec![a, b]);
        }
    }
    let base = Matrix::from_rows(&[code.encode(&[3]).unwrap(), code.encode(&[5]).unwrap()]).unwrap();
    let mut checked = 0;
    for s in &supports {
        let combos: Vec<Vec<[u64; 2]>> = if s.len() == 1 {
            nonzero_columns.iter().map(|c| vec![*c]).collect()
        } else {
            nonzero_columns.iter().flat_map(|a| nonzero_columns.iter().map(move |b| vec![*a, *b])).collect()
        };
        for cols in combos {
            let mut r = base.clone();
            for (&j, c) in s.iter().zip(&cols) {
                for l in 0..2 {
                    r[(l, j)] = f.add(r[(l, j)], c[l]);
                }
            }
            for decoder in [DecoderKind::Cpda, DecoderKind::Mssr] {
                let out = decoder.decode(&code, &r).unwrap();
                assert_eq!(out.decoded().map(|d| &d.corrected), Some(&base), "{decoder} {s:?} {cols:?}");
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 6 * 48 + 15 * 48 * 48);
}

/// All 49 IRS codewords of the GF(7), N=6, K=1, L=2 code.
fn all_codewords(code: &GrsCode<PrimeField>) -> Vec<Matrix<u64>> {
    let mut out = Vec::new();
    for a in 0..7 {
        for b in 0..7 {
            out.push(Matrix::from_rows(&[code.encode(&[a]).unwrap(), code.encode(&[b]).unwrap()]).unwrap());
        }
    }
    out
}

fn column_distance(a: &Matrix<u64>, b: &Matrix<u64>) -> usize {
    (0..a.cols()).filter(|&j| (0..a.rows()).any(|l| a[(l, j)] != b[(l, j)])).count()
}

#[test]
fn successes_are_maximum_likelihood() {
    let f = gf(7);
    let code = GrsCode::primitive(f, 6, 1).unwrap();
    let words = all_codewords(&code);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let t = rng.gen_range(0..=3);
        let (_, r) = uref_instance(&code, 2, t, &mut rng);
        let min = words.iter().map(|w| column_distance(w, &r)).min().unwrap();
        for decoder in [DecoderKind::Cpda, DecoderKind::Mssr] {
            if let DecodeOutcome::Success(d) = decoder.decode(&code, &r).unwrap() {
                assert!(words.contains(&d.corrected));
                assert_eq!(column_distance(&d.corrected, &r), min);
            }
        }
    }
}

#[test]
fn decoders_agree_gf257() {
    let f = gf(257);
    let code = GrsCode::primitive(f, 16, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut disagreements = 0;
    for _ in 0..3000 {
        let t = rng.gen_range(0..=12);
        let (_, r) = uref_instance(&code, 4, t, &mut rng);
        let a = cpda_decode(&code, &r).unwrap();
        let b = mssr_decode(&code, &r).unwrap();
        if !a.same_decision(&b) {
            disagreements += 1;
        }
    }
    assert_eq!(disagreements, 0);
}

#[test]
fn corrects_t8_gf257() {
    let f = gf(257);
    let code = GrsCode::primitive(f, 16, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut ok = 0;
    let trials = 1000;
    for _ in 0..trials {
        let (d, r) = uref_instance(&code, 4, 8, &mut rng);
        if cpda_decode(&code, &r).unwrap().decoded().map(|x| &x.corrected) == Some(&d) {
            ok += 1;
        }
    }
    // Failure bound at t = t_max - 1 is about 257^-5.
    assert!(ok >= trials - 2, "{ok}/{trials}");
}

#[test]
fn real_field_example() {
    let f = RealField::default();
    let alphas: Vec<f64> = (0..8).map(|i| 0.9f64.powi(i)).collect();
    let code = GrsCode::with_unit_multipliers(f, 2, alphas).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for t in 1..=5 {
        let d = random_codeword_matrix(&code, 6, &mut rng);
        let spec = ErrorModelSpec { model: ErrorModel::standard_gaussian(), t, seed: 0 };
        let e = sample_error(&f, &spec, 6, 8, &mut rng).unwrap();
        let r = inject(&f, &d, &e.values).unwrap();
        for decoder in [DecoderKind::Cpda, DecoderKind::Mssr] {
            let out = decoder.decode(&code, &r).unwrap();
            let got = out.decoded().unwrap_or_else(|| panic!("{decoder} t={t} {out:?}"));
            assert_eq!(got.locations, e.support);
            let err = got.corrected.as_slice().iter().zip(d.as_slice()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(err < 1e-6, "{decoder} t={t} err={err}");
        }
    }
}

#[test]
fn decoder_kind_parsing() {
    assert_eq!("cpda".parse::<DecoderKind>().unwrap(), DecoderKind::Cpda);
    assert_eq!("mssr".parse::<DecoderKind>().unwrap(), DecoderKind::Mssr);
    assert!("both".parse::<DecoderKind>().is_err());
    assert_eq!(DecoderKind::Mssr.to_string(), "mssr");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn corrects_within_classical_radius(seed in any::<u64>(), t in 0usize..=6, l in 1usize..=4) {
        let code = GrsCode::primitive(gf(257), 16, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d, r) = uref_instance(&code, l, t, &mut rng);
        for decoder in [DecoderKind::Cpda, DecoderKind::Mssr] {
            let out = decoder.decode(&code, &r).unwrap();
            prop_assert_eq!(out.decoded().map(|x| &x.corrected), Some(&d));
        }
    }

    #[test]
    fn success_yields_codewords(seed in any::<u64>(), t in 0usize..=12) {
        let code = GrsCode::primitive(gf(257), 16, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, r) = uref_instance(&code, 4, t, &mut rng);
        for decoder in [DecoderKind::Cpda, DecoderKind::Mssr] {
            if let DecodeOutcome::Success(x) = decoder.decode(&code, &r).unwrap() {
                for l in 0..4 {
                    prop_assert!(code.is_codeword(x.corrected.row(l)));
                }
                prop_assert!(x.locations.len() <= t_max(16, 4, 4));
            }
        }
    }
}
