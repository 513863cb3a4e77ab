use crate::code::RmCode;
use crate::gf2::BinaryWord;
use crate::pcmatrix::PcMatrix;

use super::{DecodeResult, Verdict};

/// Greedy hard-decision bit flipping.
///
/// Each step flips the bit whose flip lowers the number of violated checks
/// the most (ties to the lowest index); the gain of bit `i` is
/// `violated_i − satisfied_i` over its checks. Stops when no check is
/// violated, no flip helps, or `max_flips` flips were made. The count of
/// violated checks strictly decreases with every flip.
pub fn bit_flip_decode(code: &RmCode, h: &PcMatrix, received: &BinaryWord, max_flips: usize) -> DecodeResult {
    let n = code.n();
    assert_eq!(h.n(), n, "matrix width must equal the code length");
    assert_eq!(received.len(), n, "received word length mismatch");

    let mut word = received.clone();
    let mut violated: Vec<bool> = (0..h.num_rows()).map(|j| h.check_violated(j, &word)).collect();
    let mut unsatisfied = violated.iter().filter(|&&v| v).count();
    // number of violated checks on each bit
    let mut bad_checks = vec![0i64; n];
    for (j, _) in violated.iter().enumerate().filter(|(_, &v)| v) {
        for &c in h.row(j) {
            bad_checks[c as usize] += 1;
        }
    }

    let mut flips = 0;
    while unsatisfied > 0 && flips < max_flips {
        let (best, gain) = (0..n)
            .map(|i| (i, 2 * bad_checks[i] - h.col_degree(i) as i64))
            .fold((0, i64::MIN), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if gain <= 0 {
            break;
        }
        word.flip(best);
        flips += 1;
        for &e in h.col_edges(best) {
            let j = h.edge_row(e as usize);
            let now = !violated[j];
            violated[j] = now;
            let delta = if now { 1 } else { -1 };
            if now {
                unsatisfied += 1;
            } else {
                unsatisfied -= 1;
            }
            for &c in h.row(j) {
                bad_checks[c as usize] += delta;
            }
        }
    }

    let mut result = DecodeResult::finish(code, word, flips);
    if unsatisfied > 0 {
        result.verdict = Verdict::Failure;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codeword_needs_no_flips() {
        let code = RmCode::new(2, 5).unwrap();
        let h = code.enumerate_mwpc().unwrap();
        let c = code.generator().rows()[3].clone();
        let res = bit_flip_decode(&code, &h, &c, 64);
        assert!(res.is_success());
        assert_eq!(res.iterations, 0);
        assert_eq!(res.word, c);
    }

    #[test]
    fn corrects_up_to_three_errors_in_rm25() {
        let code = RmCode::new(2, 5).unwrap();
        let h = code.enumerate_mwpc().unwrap();
        let c = code.generator().rows()[12].clone();
        for errs in [vec![0usize], vec![3, 17], vec![1, 9, 30]] {
            let mut y = c.clone();
            for &i in &errs {
                y.flip(i);
            }
            let res = bit_flip_decode(&code, &h, &y, 64);
            assert!(res.is_success(), "{errs:?}");
            assert_eq!(res.word, c);
            assert_eq!(res.iterations, errs.len());
        }
    }

    #[test]
    fn flip_budget_is_respected() {
        let code = RmCode::new(2, 5).unwrap();
        let h = code.enumerate_mwpc().unwrap();
        let y = BinaryWord::from_support(32, [2usize, 11]);
        let res = bit_flip_decode(&code, &h, &y, 1);
        assert_eq!(res.iterations, 1);
        assert_eq!(res.verdict, Verdict::Failure);
    }
}
