use crate::channels::LlrVector;
use crate::code::RmCode;
use crate::gf2::BinaryWord;

use super::DecodeResult;

/// Most-reliable-basis (ordered statistics) decoding of order `order`.
///
/// The generator is reduced to systematic form on the `k` most reliable
/// independent positions. Starting from the hard decisions there, every
/// error pattern of weight `0..=order` on the basis is re-encoded and scored
/// by its discrepancy `Σ_{c_i ≠ hard_i} |γ_i|`; the lowest score wins, ties
/// going to the pattern enumerated first (by weight, then
/// lexicographically).
pub fn mrb_decode(code: &RmCode, llr: &LlrVector, order: usize) -> DecodeResult {
    let n = code.n();
    let k = code.k();
    assert_eq!(llr.len(), n, "LLR length mismatch");
    let gamma = llr.as_slice();
    let hard = llr.hard_decision();

    let mut by_reliability: Vec<usize> = (0..n).collect();
    by_reliability.sort_by(|&a, &b| gamma[b].abs().total_cmp(&gamma[a].abs()));
    let mut gen = code.generator().clone();
    let basis = gen.rref_with_order(&by_reliability);
    assert_eq!(basis.len(), k, "generator must have full rank");
    let rows = gen.rows();

    // Candidates are tracked by their discrepancy pattern `candidate ^ hard`.
    let mut base = hard.clone();
    for (row, &pos) in rows.iter().zip(&basis) {
        if hard.get(pos) {
            base.xor_assign(row);
        }
    }
    let reliability: Vec<f64> = gamma.iter().map(|g| g.abs()).collect();
    let score = |diff: &BinaryWord| -> f64 { diff.support().map(|i| reliability[i]).sum() };

    let mut best = base.clone();
    let mut best_score = score(&base);

    // partial[t] = base ^ rows[idx[0]] ^ ... ^ rows[idx[t-1]]
    let mut partial: Vec<BinaryWord> = vec![base; order.min(k) + 1];
    for weight in 1..=order.min(k) {
        let mut idx: Vec<usize> = (0..weight).collect();
        let mut from = 0;
        loop {
            for t in from..weight {
                let (done, rest) = partial.split_at_mut(t + 1);
                rest[0].assign_xor(&done[t], &rows[idx[t]]);
            }
            let s = score(&partial[weight]);
            if s < best_score {
                best_score = s;
                best.clone_from(&partial[weight]);
            }
            let Some(t) = (0..weight).rev().find(|&t| idx[t] < k - weight + t) else {
                break;
            };
            idx[t] += 1;
            for u in t + 1..weight {
                idx[u] = idx[u - 1] + 1;
            }
            from = t;
        }
    }

    best.xor_assign(&hard);
    DecodeResult::finish(code, best, 0)
}
