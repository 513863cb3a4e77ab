//! Exact maximum-likelihood references.

use crate::channels::LlrVector;
use crate::code::RmCode;
use crate::error::{Error, Result};
use crate::gf2::BinaryWord;

use super::{DecodeResult, Verdict};

/// Largest dimension accepted by [`ml_bruteforce`].
pub const MAX_BRUTEFORCE_K: usize = 20;

/// ML erasure decoding: solves the reference parity checks for the erased
/// positions by Gaussian elimination. A unique solution is a success; any
/// free erased coordinate makes the frame ambiguous.
pub fn ml_bec_decode(code: &RmCode, received: &BinaryWord, erased: &[bool]) -> DecodeResult {
    let n = code.n();
    assert_eq!(received.len(), n, "received word length mismatch");
    assert_eq!(erased.len(), n, "erasure mask length mismatch");

    let unknowns: Vec<usize> = (0..n).filter(|&i| erased[i]).collect();
    let mut word = received.clone();
    for &i in &unknowns {
        word.set(i, false);
    }
    if unknowns.is_empty() {
        return DecodeResult::finish(code, word, 0);
    }

    // One equation per reference check: columns are the unknowns, and the
    // extra last column holds the parity of the known bits.
    let u = unknowns.len();
    let mut system: Vec<BinaryWord> = code
        .reference_checks()
        .rows()
        .iter()
        .map(|row| {
            let mut eq = BinaryWord::zeros(u + 1);
            for (c, &i) in unknowns.iter().enumerate() {
                if row.get(i) {
                    eq.set(c, true);
                }
            }
            eq.set(u, row.dot(&word));
            eq
        })
        .collect();

    let mut pivot_cols = Vec::with_capacity(u);
    let mut rank = 0;
    for c in 0..u {
        let Some(found) = (rank..system.len()).find(|&r| system[r].get(c)) else {
            continue;
        };
        system.swap(rank, found);
        let pivot = system[rank].clone();
        for (r, eq) in system.iter_mut().enumerate() {
            if r != rank && eq.get(c) {
                eq.xor_assign(&pivot);
            }
        }
        pivot_cols.push(c);
        rank += 1;
    }

    if rank < u {
        return DecodeResult {
            verdict: Verdict::Ambiguous,
            valid: code.is_codeword(&word),
            word,
            iterations: 0,
        };
    }
    for (r, &c) in pivot_cols.iter().enumerate() {
        word.set(unknowns[c], system[r].get(u));
    }
    DecodeResult::finish(code, word, 0)
}

/// Exhaustive ML decoding: the codeword minimizing `Σ_{c_i = 1} γ_i`, ties
/// going to the smallest information word. Only for `k ≤ 20`.
pub fn ml_bruteforce(code: &RmCode, llr: &LlrVector) -> Result<DecodeResult> {
    let k = code.k();
    if k > MAX_BRUTEFORCE_K {
        return Err(Error::TooLarge {
            what: "code dimension for exhaustive decoding",
            value: k as u128,
            limit: MAX_BRUTEFORCE_K as u128,
        });
    }
    if llr.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: llr.len(),
        });
    }
    let gamma = llr.as_slice();
    let rows = code.generator().rows();

    // Gray-code walk: consecutive information words differ in one bit.
    let mut c = BinaryWord::zeros(code.n());
    let mut best = (0.0f64, 0u64);
    for step in 1u64..(1u64 << k) {
        let bit = step.trailing_zeros() as usize;
        c.xor_assign(&rows[bit]);
        let info = step ^ (step >> 1);
        let score: f64 = c.support().map(|i| gamma[i]).sum();
        if score < best.0 || (score == best.0 && info < best.1) {
            best = (score, info);
        }
    }

    let info = BinaryWord::from_bits(&(0..k).map(|i| ((best.1 >> i) & 1) as u8).collect::<Vec<_>>());
    let word = code.encode(&info)?;
    Ok(DecodeResult::finish(code, word, 0))
}
