use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rm_mwpc::adapt::{build_tailored_matrix, ReliabilityPartition, TailoredMatrixConfig};
use rm_mwpc::decoders::{
    admm_lp_decode, bp_decode, ml_bec_decode, ml_bruteforce, mrb_decode, AdmmParams, BpParams,
};
use rm_mwpc::{BinaryWord, Channel, LlrVector, RmCode};

fn random_codeword(code: &RmCode, rng: &mut ChaCha8Rng) -> BinaryWord {
    let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
    code.encode(&BinaryWord::from_bits(&info)).unwrap()
}

/// Correlation metric minimized by ML decoding.
fn cost(word: &BinaryWord, llr: &LlrVector) -> f64 {
    word.support().map(|i| llr[i]).sum()
}

#[test]
fn full_order_mrb_is_maximum_likelihood() {
    for (r, m) in [(1, 3), (1, 4)] {
        let code = RmCode::new(r, m).unwrap();
        let channel = Channel::bi_awgn(1.0, code.rate()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let c = random_codeword(&code, &mut rng);
            let llr = channel.transmit(&c, &mut rng).llr();
            let ml = ml_bruteforce(&code, &llr).unwrap();
            let mrb = mrb_decode(&code, &llr, code.k());
            assert!((cost(&ml.word, &llr) - cost(&mrb.word, &llr)).abs() < 1e-9);
        }
    }
}

#[test]
fn bruteforce_agrees_with_erasure_ml() {
    let code = RmCode::new(1, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..300 {
        let c = random_codeword(&code, &mut rng);
        let obs = Channel::bec(0.4).unwrap().transmit(&c, &mut rng);
        let erased = obs.erasures().unwrap();
        let bec = ml_bec_decode(&code, &obs.hard_decision(), erased);
        if bec.is_success() {
            let bf = ml_bruteforce(&code, &obs.llr()).unwrap();
            assert_eq!(bf.word, bec.word);
        }
    }
}

#[test]
fn iterative_decoders_accept_only_codewords() {
    let code = RmCode::new(2, 5).unwrap();
    let h = code.enumerate_mwpc().unwrap();
    let channel = Channel::bi_awgn(3.0, code.rate()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let c = random_codeword(&code, &mut rng);
        let llr = channel.transmit(&c, &mut rng).llr();
        let bp = bp_decode(&code, &h, &llr, BpParams { weight: 0.2, iterations: 30 });
        let lp = admm_lp_decode(&code, &h, &llr, AdmmParams::default());
        for res in [bp, lp] {
            assert_eq!(res.is_success(), code.is_codeword(&res.word));
        }
    }
}

#[test]
fn tailored_rows_touch_a_bad_position() {
    let code = RmCode::new(2, 5).unwrap();
    let channel = Channel::bi_awgn(3.0, code.rate()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let c = random_codeword(&code, &mut rng);
        let llr = channel.transmit(&c, &mut rng).llr();
        let partition = ReliabilityPartition::classify(&llr, 0.25).unwrap();
        assert_eq!(partition.bad().len(), 24);
        let h = build_tailored_matrix(&code, &partition, TailoredMatrixConfig::new(124), &mut rng).unwrap();
        assert_eq!(h.num_rows(), 124);
        assert!(code.checks_are_valid(&h));
        for row in h.rows() {
            assert_eq!(row.len(), 8);
            assert!(row.iter().any(|&i| partition.bad().contains(&(i as usize))));
        }
    }
}

#[test]
fn tailored_matrix_is_reproducible() {
    let code = RmCode::new(3, 7).unwrap();
    let llr = LlrVector::new((0..128).map(|i| ((i * 37) % 101) as f64 / 10.0 - 2.0).collect());
    let partition = ReliabilityPartition::classify(&llr, 0.25).unwrap();
    let build = |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        build_tailored_matrix(&code, &partition, TailoredMatrixConfig::new(2835), &mut rng).unwrap()
    };
    assert_eq!(build(1), build(1));
    assert_ne!(build(1), build(2));
}
