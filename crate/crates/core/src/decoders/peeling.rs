use crate::code::RmCode;
use crate::gf2::BinaryWord;
use crate::pcmatrix::PcMatrix;

use super::{DecodeResult, Verdict};

/// Erasure decoding by repeatedly solving checks with a single unknown bit.
///
/// `received` must hold the known bit values; entries at erased positions
/// are ignored. Each check tracks its unknown count and the XOR of its
/// unknown indices, so the lone unknown of a degree-one check is found
/// without scanning.
pub fn peel(code: &RmCode, h: &PcMatrix, received: &BinaryWord, erased: &[bool]) -> DecodeResult {
    let n = code.n();
    assert_eq!(h.n(), n, "matrix width must equal the code length");
    assert_eq!(received.len(), n, "received word length mismatch");
    assert_eq!(erased.len(), n, "erasure mask length mismatch");

    let mut word = received.clone();
    let mut unknown_count = vec![0u32; h.num_rows()];
    let mut unknown_xor = vec![0u32; h.num_rows()];
    let mut remaining = 0usize;
    for (i, _) in erased.iter().enumerate().filter(|(_, &e)| e) {
        word.set(i, false);
        remaining += 1;
        for &e in h.col_edges(i) {
            let j = h.edge_row(e as usize);
            unknown_count[j] += 1;
            unknown_xor[j] ^= i as u32;
        }
    }

    let mut ready: Vec<usize> = (0..h.num_rows()).filter(|&j| unknown_count[j] == 1).collect();
    let mut solved = 0usize;
    while let Some(j) = ready.pop() {
        if unknown_count[j] != 1 {
            continue;
        }
        let i = unknown_xor[j] as usize;
        // the unknown bit still reads 0, so the row parity is its value
        let value = h.check_violated(j, &word);
        word.set(i, value);
        solved += 1;
        for &e in h.col_edges(i) {
            let j2 = h.edge_row(e as usize);
            unknown_count[j2] -= 1;
            unknown_xor[j2] ^= i as u32;
            if unknown_count[j2] == 1 {
                ready.push(j2);
            }
        }
    }

    if solved == remaining {
        DecodeResult::finish(code, word, solved)
    } else {
        let valid = code.is_codeword(&word);
        DecodeResult {
            verdict: Verdict::Ambiguous,
            word,
            iterations: solved,
            valid,
        }
    }
}
