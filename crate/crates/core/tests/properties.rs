use std::collections::HashSet;

use proptest::prelude::*;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rm_mwpc::decoders::{bit_flip_decode, ml_bec_decode, peel, project_parity_polytope};
use rm_mwpc::{count_mwpc, mwpc_support, BinaryWord, Channel, RmCode};

/// Points of an affine subspace are closed under `a ^ b ^ c`.
fn is_affine_flat(support: &[u32]) -> bool {
    let set: HashSet<u32> = support.iter().copied().collect();
    support.iter().all(|&a| {
        support
            .iter()
            .all(|&b| support.iter().all(|&c| set.contains(&(a ^ b ^ c))))
    })
}

#[test]
fn mwpc_postconditions_on_random_positions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (r, m) in [(1, 3), (2, 5), (3, 7)] {
        let code = RmCode::new(r, m).unwrap();
        let n = code.n();
        let weight = code.params().dual_d_min;
        for _ in 0..10_000 {
            let positions = index::sample(&mut rng, n, r + 2).into_vec();
            let support = mwpc_support(r, m, &positions).unwrap();
            assert_eq!(support.len(), weight);
            assert!(support.windows(2).all(|w| w[0] < w[1]));
            for p in &positions {
                assert!(support.binary_search(&(*p as u32)).is_ok());
            }
            assert!(is_affine_flat(&support));
            let word = BinaryWord::from_support(n, support.iter().map(|&i| i as usize));
            assert!(code.generator().annihilates(&word));
        }
    }
}

#[test]
fn enumeration_matches_count_for_m_up_to_8() {
    for m in 1..=8 {
        for r in 0..m {
            let code = RmCode::new(r, m).unwrap();
            let h = code.enumerate_mwpc().unwrap();
            assert_eq!(h.num_rows() as u128, count_mwpc(r, m).unwrap(), "RM({r},{m})");
            let distinct: HashSet<&[u32]> = h.rows().collect();
            assert_eq!(distinct.len(), h.num_rows());
        }
    }
}

#[test]
fn rm25_checks_are_exactly_the_light_dual_words() {
    // every dual codeword of weight 8, found by walking all 2^16 dual words
    let code = RmCode::new(2, 5).unwrap();
    let dual = code.reference_checks().rows();
    let mut light = HashSet::new();
    let mut word = BinaryWord::zeros(32);
    for step in 1u32..(1 << dual.len()) {
        word.xor_assign(&dual[step.trailing_zeros() as usize]);
        if word.weight() == 8 {
            light.insert(word.support().map(|i| i as u32).collect::<Vec<_>>());
        }
    }
    let enumerated: HashSet<Vec<u32>> = code.enumerate_mwpc().unwrap().rows().map(<[u32]>::to_vec).collect();
    assert_eq!(light.len(), 620);
    assert_eq!(enumerated, light);
}

fn even_vertices(d: usize) -> Vec<Vec<f64>> {
    (0u32..1 << d)
        .filter(|s| s.count_ones() % 2 == 0)
        .map(|s| (0..d).map(|i| ((s >> i) & 1) as f64).collect())
        .collect()
}

fn in_parity_polytope(u: &[f64], tol: f64) -> bool {
    let d = u.len();
    if u.iter().any(|&x| x < -tol || x > 1.0 + tol) {
        return false;
    }
    (0u32..1 << d).filter(|s| s.count_ones() % 2 == 1).all(|s| {
        let lhs: f64 = (0..d)
            .map(|i| if (s >> i) & 1 == 1 { u[i] } else { -u[i] })
            .sum();
        lhs <= s.count_ones() as f64 - 1.0 + tol
    })
}

fn dot_diff(a: &[f64], b: &[f64], c: &[f64], e: &[f64]) -> f64 {
    a.iter().zip(b).zip(c.iter().zip(e)).map(|((a, b), (c, e))| (a - b) * (c - e)).sum()
}

fn point(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..2.0, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn projection_is_the_nearest_polytope_point(v in (0usize..3).prop_flat_map(|i| point(4 + 2 * i))) {
        let d = v.len();
        let mut p = vec![0.0; d];
        project_parity_polytope(&v, &mut p);
        prop_assert!(in_parity_polytope(&p, 1e-9));
        // optimality against the vertex description: <v - p, z - p> <= 0
        for z in even_vertices(d) {
            prop_assert!(dot_diff(&v, &p, &z, &p) <= 1e-9);
        }
        let mut again = vec![0.0; d];
        project_parity_polytope(&p, &mut again);
        for (a, b) in p.iter().zip(&again) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn projection_is_nonexpansive(pair in (0usize..3).prop_flat_map(|i| (point(4 + 2 * i), point(4 + 2 * i)))) {
        let (a, b) = pair;
        let d = a.len();
        let (mut pa, mut pb) = (vec![0.0; d], vec![0.0; d]);
        project_parity_polytope(&a, &mut pa);
        project_parity_polytope(&b, &mut pb);
        let dist = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
        prop_assert!(dist(&pa, &pb) <= dist(&a, &b) + 1e-9);
    }

    #[test]
    fn encoding_is_linear(a in prop::collection::vec(0u8..2, 16), b in prop::collection::vec(0u8..2, 16)) {
        let code = RmCode::new(2, 5).unwrap();
        let (ua, ub) = (BinaryWord::from_bits(&a), BinaryWord::from_bits(&b));
        let sum = code.encode(&ua.xor(&ub)).unwrap();
        let ca = code.encode(&ua).unwrap();
        prop_assert_eq!(sum, ca.xor(&code.encode(&ub).unwrap()));
        prop_assert!(code.is_codeword(&ca));
    }
}

#[test]
fn peeling_success_implies_ml_success() {
    let code = RmCode::new(2, 5).unwrap();
    let h = code.enumerate_mwpc().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut peeled = 0;
    for frame in 0..10_000 {
        let eps = [0.3, 0.4, 0.5][frame % 3];
        let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
        let c = code.encode(&BinaryWord::from_bits(&info)).unwrap();
        let obs = Channel::bec(eps).unwrap().transmit(&c, &mut rng);
        let erased = obs.erasures().unwrap().to_vec();
        let received = obs.hard_decision();
        let pd = peel(&code, &h, &received, &erased);
        let ml = ml_bec_decode(&code, &received, &erased);
        if pd.is_success() {
            peeled += 1;
            assert!(ml.is_success());
            assert_eq!(pd.word, c);
            assert_eq!(ml.word, c);
        }
        if ml.is_success() {
            assert_eq!(ml.word, c);
        }
    }
    assert!(peeled > 1000);
}

#[test]
fn bit_flipping_strictly_lowers_violated_checks() {
    let code = RmCode::new(2, 5).unwrap();
    let h = code.enumerate_mwpc().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let mut received = BinaryWord::zeros(32);
        for _ in 0..rng.random_range(1..6) {
            received.flip(rng.random_range(0..32));
        }
        let full = bit_flip_decode(&code, &h, &received, 64);
        let mut previous = h.unsatisfied(&received);
        for t in 1..=full.iterations {
            let partial = bit_flip_decode(&code, &h, &received, t);
            assert_eq!(partial.iterations, t);
            let now = h.unsatisfied(&partial.word);
            assert!(now < previous);
            previous = now;
        }
        assert_eq!(h.unsatisfied(&full.word), previous);
    }
}
