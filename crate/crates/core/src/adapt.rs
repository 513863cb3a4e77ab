//! Observation-tailored redundant parity-check matrices.
//!
//! A minimum-weight check of RM(r, m) is the indicator of an
//! (r+1)-dimensional affine subspace of F_2^m, so any `r + 2` bit positions
//! can be completed to such a check. Pairing one unreliable position with
//! `r + 1` reliable ones yields checks that carry information about the
//! unreliable bit; collecting `s` distinct such checks gives a matrix
//! tailored to the received word.

use std::collections::HashSet;

use rand::seq::index;
use rand::Rng;
use thiserror::Error;

use crate::channels::LlrVector;
use crate::code::{span_points, RmCode};
use crate::error::{Error, Result};
use crate::gf2::BinaryWord;
use crate::pcmatrix::PcMatrix;

/// Support (ascending bit indices) of the minimum-weight check of RM(r, m)
/// through the given `r + 2` distinct positions (0-based).
///
/// The differences to the last position are row-reduced; if they are
/// linearly dependent the basis is completed with unit vectors at the
/// lowest non-pivot coordinates, so the resulting affine subspace always
/// has dimension `r + 1` and contains every requested point.
pub fn mwpc_support(r: usize, m: usize, positions: &[usize]) -> Result<Vec<u32>> {
    if m > crate::code::MAX_M || r >= m {
        return Err(Error::InvalidCode {
            r,
            m,
            reason: "need r < m <= 20",
        });
    }
    if positions.len() != r + 2 {
        return Err(Error::LengthMismatch {
            expected: r + 2,
            got: positions.len(),
        });
    }
    let n = 1usize << m;
    if let Some(&bad) = positions.iter().find(|&&p| p >= n) {
        return Err(Error::InvalidParameter(format!(
            "position {bad} outside 0..{n}"
        )));
    }
    for (i, p) in positions.iter().enumerate() {
        if positions[..i].contains(p) {
            return Err(Error::InvalidParameter(format!("position {p} repeated")));
        }
    }
    Ok(mwpc_support_unchecked(r, m, positions))
}

pub(crate) fn mwpc_support_unchecked(r: usize, m: usize, positions: &[usize]) -> Vec<u32> {
    let dim = r + 1;
    let anchor = positions[dim] as u32;

    // Row-reduce the difference vectors; bit c of a row is coordinate c.
    let mut rows: Vec<u32> = positions[..dim].iter().map(|&p| p as u32 ^ anchor).collect();
    let mut pivot_mask = 0u32;
    let mut rank = 0;
    for c in 0..m {
        let bit = 1u32 << c;
        let Some(found) = (rank..dim).find(|&i| rows[i] & bit != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot = rows[rank];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && *row & bit != 0 {
                *row ^= pivot;
            }
        }
        pivot_mask |= bit;
        rank += 1;
    }

    // Fill the zero rows with unit vectors at unused coordinates.
    for row in rows.iter_mut().skip(rank) {
        let c = (0..m)
            .find(|&c| pivot_mask & (1 << c) == 0)
            .expect("dimension r + 1 <= m leaves a free coordinate");
        *row = 1 << c;
        pivot_mask |= 1 << c;
    }

    let mut support: Vec<u32> = span_points(&rows).into_iter().map(|p| p ^ anchor).collect();
    support.sort_unstable();
    support
}

/// Minimum-weight check of RM(r, m) through the given `r + 2` distinct
/// positions (0-based), as a length-`2^m` word.
pub fn mwpc_from_positions(r: usize, m: usize, positions: &[usize]) -> Result<BinaryWord> {
    let support = mwpc_support(r, m, positions)?;
    Ok(BinaryWord::from_support(1 << m, support.into_iter().map(|i| i as usize)))
}

/// Split of bit positions into reliable (`good`) and unreliable (`bad`).
/// Both lists are sorted ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct ReliabilityPartition {
    good: Vec<usize>,
    bad: Vec<usize>,
    fraction: Option<f64>,
}

impl ReliabilityPartition {
    /// Marks the `round(f·n)` positions of largest `|γ|` as good (half-up
    /// rounding; ties in `|γ|` favor the lower index).
    pub fn classify(llr: &LlrVector, f: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::InvalidParameter(format!("fraction {f} outside [0, 1]")));
        }
        let n = llr.len();
        let mut order: Vec<usize> = (0..n).collect();
        // stable sort keeps ascending index among equal magnitudes
        order.sort_by(|&a, &b| llr[b].abs().total_cmp(&llr[a].abs()));
        let n_good = ((f * n as f64) + 0.5).floor() as usize;
        let n_good = n_good.min(n);
        let mut good = order[..n_good].to_vec();
        let mut bad = order[n_good..].to_vec();
        good.sort_unstable();
        bad.sort_unstable();
        Ok(Self {
            good,
            bad,
            fraction: Some(f),
        })
    }

    /// Erasure-channel partition: known positions are good, erased ones bad.
    pub fn from_erasures(erased: &[bool]) -> Self {
        let (bad, good): (Vec<usize>, Vec<usize>) = (0..erased.len()).partition(|&i| erased[i]);
        Self {
            good,
            bad,
            fraction: None,
        }
    }

    pub fn good(&self) -> &[usize] {
        &self.good
    }

    pub fn bad(&self) -> &[usize] {
        &self.bad
    }

    /// The fraction used by [`ReliabilityPartition::classify`], if any.
    pub fn fraction(&self) -> Option<f64> {
        self.fraction
    }

    pub fn n(&self) -> usize {
        self.good.len() + self.bad.len()
    }
}

/// Row target and generation budget for [`build_tailored_matrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TailoredMatrixConfig {
    pub rows: usize,
    pub max_attempts: usize,
}

impl TailoredMatrixConfig {
    /// `rows` target with the default budget of 50 attempts per row.
    pub fn new(rows: usize) -> Self {
        Self {
            rows,
            max_attempts: rows.saturating_mul(50),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AdaptError {
    /// The partition cannot seed a single check (no unreliable positions,
    /// or fewer than `r + 1` reliable ones).
    #[error("partition unusable: {bad} bad and {good} good positions, need >= 1 bad and >= {needed} good")]
    Fallback {
        good: usize,
        bad: usize,
        needed: usize,
    },
    /// The attempt budget ran out before the target row count was reached.
    #[error("reached only {} of {target} rows within the attempt budget", partial.num_rows())]
    Saturated { target: usize, partial: PcMatrix },
    #[error(transparent)]
    Invalid(#[from] Error),
}

/// Builds a matrix of exactly `config.rows` distinct minimum-weight checks,
/// each through one bad position and `r + 1` uniformly drawn good positions.
///
/// Bad positions are visited in ascending order, sweep after sweep, until
/// the target is met.
pub fn build_tailored_matrix<R: Rng + ?Sized>(
    code: &RmCode,
    partition: &ReliabilityPartition,
    config: TailoredMatrixConfig,
    rng: &mut R,
) -> Result<PcMatrix, AdaptError> {
    let (r, m) = (code.r(), code.m());
    if partition.n() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: partition.n(),
        }
        .into());
    }
    let total = code.mwpc_count()?;
    if config.rows == 0 || config.rows as u128 > total {
        return Err(Error::InvalidParameter(format!(
            "row target {} outside 1..={total}",
            config.rows
        ))
        .into());
    }
    let (good, bad) = (partition.good(), partition.bad());
    if bad.is_empty() || good.len() < r + 1 {
        return Err(AdaptError::Fallback {
            good: good.len(),
            bad: bad.len(),
            needed: r + 1,
        });
    }

    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(config.rows);
    let mut seen: HashSet<Vec<u32>> = HashSet::with_capacity(config.rows);
    let mut positions = vec![0usize; r + 2];
    let mut attempts = 0usize;
    'sweeps: loop {
        for &b in bad {
            if attempts == config.max_attempts {
                break 'sweeps;
            }
            attempts += 1;
            for (slot, g) in positions.iter_mut().zip(index::sample(rng, good.len(), r + 1)) {
                *slot = good[g];
            }
            positions[r + 1] = b;
            let support = mwpc_support_unchecked(r, m, &positions);
            if !seen.contains(&support) {
                seen.insert(support.clone());
                rows.push(support);
                if rows.len() == config.rows {
                    break 'sweeps;
                }
            }
        }
    }

    let matrix = PcMatrix::from_supports_unchecked(code.n(), rows);
    if matrix.num_rows() < config.rows {
        return Err(AdaptError::Saturated {
            target: config.rows,
            partial: matrix,
        });
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_points_give_their_line() {
        // 1-based positions {1, 3} of RM(0, 2)
        let w = mwpc_from_positions(0, 2, &[0, 2]).unwrap();
        assert_eq!(w.to_bits(), vec![1, 0, 1, 0]);
    }

    #[test]
    fn three_points_in_rm13() {
        // 1-based positions {1, 2, 3}: the plane x_3 = 0
        let w = mwpc_from_positions(1, 3, &[0, 1, 2]).unwrap();
        assert_eq!(w.to_bits(), vec![1, 1, 1, 1, 0, 0, 0, 0]);
        let code = RmCode::new(1, 3).unwrap();
        assert!(code.generator().annihilates(&w));
    }

    #[test]
    fn dependent_points_are_completed() {
        // 0, 1, 2, 3 form a 2-flat; r = 2 asks for a 3-flat through them
        let support = mwpc_support(2, 4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(support.len(), 8);
        for p in [0, 1, 2, 3] {
            assert!(support.contains(&p));
        }
        // completion uses the lowest free coordinate, bit 2
        assert_eq!(support, vec![0, 1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn rejects_bad_positions() {
        assert!(mwpc_support(1, 3, &[0, 0, 1]).is_err());
        assert!(mwpc_support(1, 3, &[0, 1]).is_err());
        assert!(mwpc_support(1, 3, &[0, 1, 8]).is_err());
        assert!(mwpc_support(3, 3, &[0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn classify_examples() {
        let llr = LlrVector::new(vec![0.1, -3.0, 0.0, 2.0]);
        let p = ReliabilityPartition::classify(&llr, 0.5).unwrap();
        assert_eq!(p.good(), &[1, 3]);
        assert_eq!(p.bad(), &[0, 2]);

        let none = ReliabilityPartition::classify(&llr, 0.0).unwrap();
        assert!(none.good().is_empty());
        assert_eq!(none.bad().len(), 4);
        let all = ReliabilityPartition::classify(&llr, 1.0).unwrap();
        assert_eq!(all.good().len(), 4);
        assert!(all.bad().is_empty());
        assert!(ReliabilityPartition::classify(&llr, 1.5).is_err());
    }

    #[test]
    fn classify_rounds_half_up_and_breaks_ties_by_index() {
        let llr = LlrVector::new(vec![1.0; 6]);
        // 0.25 * 6 = 1.5 -> 2
        let p = ReliabilityPartition::classify(&llr, 0.25).unwrap();
        assert_eq!(p.good(), &[0, 1]);
    }

    #[test]
    fn erasure_partition() {
        let p = ReliabilityPartition::from_erasures(&[false, true, false, true]);
        assert_eq!(p.good(), &[0, 2]);
        assert_eq!(p.bad(), &[1, 3]);
        assert_eq!(p.fraction(), None);
    }

    #[test]
    fn single_row_contains_a_bad_position() {
        let code = RmCode::new(2, 5).unwrap();
        let erased: Vec<bool> = (0..32).map(|i| i % 5 == 0).collect();
        let p = ReliabilityPartition::from_erasures(&erased);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let h = build_tailored_matrix(&code, &p, TailoredMatrixConfig::new(1), &mut rng).unwrap();
        assert_eq!(h.num_rows(), 1);
        assert!(h.row(0).iter().any(|&c| erased[c as usize]));
        assert_eq!(h.row(0).len(), 8);
    }

    #[test]
    fn fallback_and_saturation() {
        let code = RmCode::new(2, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let none_bad = ReliabilityPartition::from_erasures(&[false; 32]);
        assert!(matches!(
            build_tailored_matrix(&code, &none_bad, TailoredMatrixConfig::new(4), &mut rng),
            Err(AdaptError::Fallback { bad: 0, .. })
        ));
        let mut erased = [true; 32];
        erased[0] = false;
        erased[1] = false;
        let few_good = ReliabilityPartition::from_erasures(&erased);
        assert!(matches!(
            build_tailored_matrix(&code, &few_good, TailoredMatrixConfig::new(4), &mut rng),
            Err(AdaptError::Fallback { good: 2, needed: 3, .. })
        ));

        // Only r + 1 good positions: each bad position admits one check.
        let p = ReliabilityPartition {
            good: vec![0, 1, 2],
            bad: (3..32).collect(),
            fraction: None,
        };
        // 29 bad positions, each gives one check; 29 distinct at most
        let config = TailoredMatrixConfig {
            rows: 100,
            max_attempts: 200,
        };
        match build_tailored_matrix(&code, &p, config, &mut rng) {
            Err(AdaptError::Saturated { target, partial }) => {
                assert_eq!(target, 100);
                assert!(partial.num_rows() < 100);
                assert!(code.checks_are_valid(&partial));
            }
            other => panic!("expected saturation, got {other:?}"),
        }
    }

    #[test]
    fn rejects_oversized_targets() {
        let code = RmCode::new(2, 5).unwrap();
        let p = ReliabilityPartition::from_erasures(&[true; 32]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(matches!(
            build_tailored_matrix(&code, &p, TailoredMatrixConfig::new(621), &mut rng),
            Err(AdaptError::Invalid(_))
        ));
    }
}
