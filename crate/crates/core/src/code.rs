//! Reed–Muller codes and their minimum-weight parity checks.
//!
//! Bit position `i` of a codeword is the evaluation at the point of
//! F_2^m whose coordinate `j` is bit `j` of `i` (least significant bit
//! first). Generator rows are the evaluations of the monomials
//! `x_{j1} ⋯ x_{jd}` with `d ≤ r`, ordered by degree and then
//! lexicographically by their variable index sets.

use crate::error::{Error, Result};
use crate::gf2::{BinaryWord, BitMatrix};
use crate::pcmatrix::PcMatrix;

/// Largest `m` accepted anywhere in the crate.
pub const MAX_M: usize = 20;

/// Enumerating more minimum-weight checks than this is refused.
pub const MAX_ENUMERATED_CHECKS: u128 = 10_000_000;

/// Length, dimension and distances of RM(r, m) and its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d_min: usize,
    pub dual_d_min: usize,
}

fn validate(r: usize, m: usize) -> Result<()> {
    if m > MAX_M {
        return Err(Error::InvalidCode {
            r,
            m,
            reason: "m exceeds the supported maximum of 20",
        });
    }
    if r > m {
        return Err(Error::InvalidCode {
            r,
            m,
            reason: "order r must not exceed m",
        });
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Parameters of RM(r, m). `dual_d_min` is `2^(r+1)`; for `r = m` the dual
/// code is trivial and the value is only nominal.
pub fn code_params(r: usize, m: usize) -> Result<CodeParams> {
    validate(r, m)?;
    Ok(CodeParams {
        n: 1 << m,
        k: (0..=r).map(|i| binomial(m, i)).sum(),
        d_min: 1 << (m - r),
        dual_d_min: 1 << (r + 1),
    })
}

/// Number of minimum-weight parity checks of RM(r, m), i.e. the number of
/// (r+1)-dimensional affine subspaces of F_2^m:
/// `2^(m-r-1) · Π_{i=0..r} (2^(m-i) - 1) / (2^(r+1-i) - 1)`.
///
/// The product is accumulated as a chain of Gaussian binomials, each of
/// which is an integer, so every division is exact.
pub fn count_mwpc(r: usize, m: usize) -> Result<u128> {
    validate(r, m)?;
    if r == m {
        return Err(Error::InvalidCode {
            r,
            m,
            reason: "RM(m, m) has no nonzero parity checks",
        });
    }
    let overflow = || Error::TooLarge {
        what: "check count",
        value: u128::MAX,
        limit: u128::MAX,
    };
    let t = r + 1;
    // After step j the accumulator equals the Gaussian binomial [m-t+j, j]_2.
    let mut acc: u128 = 1;
    for j in 1..=t {
        let num = (1u128 << (m - t + j)) - 1;
        let den = (1u128 << j) - 1;
        acc = acc.checked_mul(num).ok_or_else(overflow)?;
        debug_assert_eq!(acc % den, 0);
        acc /= den;
    }
    acc.checked_mul(1u128 << (m - t)).ok_or_else(overflow)
}

/// Variable index sets of all monomials of degree at most `r` in `m`
/// variables, graded by degree then lexicographic.
fn monomials(r: usize, m: usize) -> Vec<u32> {
    let mut out = Vec::new();
    for d in 0..=r {
        let mut combo: Vec<usize> = (0..d).collect();
        loop {
            out.push(combo.iter().fold(0u32, |mask, &v| mask | (1 << v)));
            // advance to the next d-subset of 0..m in lexicographic order
            let Some(pos) = (0..d).rev().find(|&i| combo[i] < m - d + i) else {
                break;
            };
            combo[pos] += 1;
            for i in pos + 1..d {
                combo[i] = combo[i - 1] + 1;
            }
        }
    }
    out
}

fn generator_matrix(r: usize, m: usize) -> BitMatrix {
    let n = 1usize << m;
    let rows = monomials(r, m)
        .into_iter()
        .map(|mask| {
            BinaryWord::from_support(n, (0..n).filter(|&p| (p as u32) & mask == mask))
        })
        .collect();
    BitMatrix::from_rows(n, rows)
}

/// The Reed–Muller code RM(r, m).
#[derive(Clone, Debug)]
pub struct RmCode {
    r: usize,
    m: usize,
    params: CodeParams,
    gen: BitMatrix,
    h_ref: BitMatrix,
}

impl RmCode {
    /// Builds RM(r, m) with its generator matrix and a full-rank reference
    /// parity-check matrix (the row-reduced generator of RM(m-r-1, m); empty
    /// when `r = m`).
    pub fn new(r: usize, m: usize) -> Result<Self> {
        let params = code_params(r, m)?;
        let gen = generator_matrix(r, m);
        let h_ref = if r == m {
            BitMatrix::new(params.n)
        } else {
            let mut h = generator_matrix(m - r - 1, m);
            h.rref();
            h
        };
        debug_assert_eq!(gen.num_rows(), params.k);
        debug_assert_eq!(h_ref.num_rows(), params.n - params.k);
        Ok(Self {
            r,
            m,
            params,
            gen,
            h_ref,
        })
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.params.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.params.k
    }

    #[inline]
    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn rate(&self) -> f64 {
        self.params.k as f64 / self.params.n as f64
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.gen
    }

    pub fn reference_checks(&self) -> &BitMatrix {
        &self.h_ref
    }

    /// Minimum-weight parity-check count; errors for `r = m`.
    pub fn mwpc_count(&self) -> Result<u128> {
        count_mwpc(self.r, self.m)
    }

    /// `u · G` over GF(2).
    pub fn encode(&self, u: &BinaryWord) -> Result<BinaryWord> {
        if u.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                got: u.len(),
            });
        }
        let mut c = BinaryWord::zeros(self.n());
        for i in u.support() {
            c.xor_assign(&self.gen.rows()[i]);
        }
        Ok(c)
    }

    /// True iff `x` has zero syndrome against the reference parity checks.
    ///
    /// # Panics
    ///
    /// Panics if `x` does not have length `n`.
    #[inline]
    pub fn is_codeword(&self, x: &BinaryWord) -> bool {
        self.h_ref.annihilates(x)
    }

    /// True iff every row of `h` is a dual codeword.
    pub fn checks_are_valid(&self, h: &PcMatrix) -> bool {
        h.n() == self.n() && (0..h.num_rows()).all(|j| self.gen.annihilates(&h.row_word(j)))
    }

    /// All minimum-weight parity checks: the indicator vectors of every
    /// (r+1)-dimensional affine subspace of F_2^m.
    ///
    /// Linear subspaces are enumerated through their reduced row echelon
    /// bases (a pivot set plus free entries right of each pivot outside the
    /// pivot set); cosets through representatives supported off the pivots.
    pub fn enumerate_mwpc(&self) -> Result<PcMatrix> {
        let count = self.mwpc_count()?;
        if count > MAX_ENUMERATED_CHECKS {
            return Err(Error::TooLarge {
                what: "minimum-weight check count",
                value: count,
                limit: MAX_ENUMERATED_CHECKS,
            });
        }
        let (m, t) = (self.m, self.r + 1);
        let mut rows = Vec::with_capacity(count as usize);

        let mut pivots: Vec<usize> = (0..t).collect();
        loop {
            let pivot_mask = pivots.iter().fold(0u32, |acc, &p| acc | (1 << p));
            // (row, coordinate) slots that may hold either bit
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(row, &p)| {
                    (p + 1..m)
                        .filter(move |&c| pivot_mask & (1 << c) == 0)
                        .map(move |c| (row, c))
                })
                .collect();
            let off_pivot: Vec<usize> = (0..m).filter(|&c| pivot_mask & (1 << c) == 0).collect();

            for assignment in 0u64..(1u64 << free.len()) {
                let mut basis: Vec<u32> = pivots.iter().map(|&p| 1u32 << p).collect();
                for (bit, &(row, c)) in free.iter().enumerate() {
                    if (assignment >> bit) & 1 == 1 {
                        basis[row] |= 1 << c;
                    }
                }
                let span = span_points(&basis);
                for rep_bits in 0u32..(1u32 << off_pivot.len()) {
                    let rep = off_pivot
                        .iter()
                        .enumerate()
                        .filter(|&(b, _)| (rep_bits >> b) & 1 == 1)
                        .fold(0u32, |acc, (_, &c)| acc | (1 << c));
                    let mut support: Vec<u32> = span.iter().map(|&s| s ^ rep).collect();
                    support.sort_unstable();
                    rows.push(support);
                }
            }

            let Some(pos) = (0..t).rev().find(|&i| pivots[i] < m - t + i) else {
                break;
            };
            pivots[pos] += 1;
            for i in pos + 1..t {
                pivots[i] = pivots[i - 1] + 1;
            }
        }
        debug_assert_eq!(rows.len() as u128, count);
        Ok(PcMatrix::from_supports_unchecked(self.n(), rows))
    }
}

/// All `2^len` points of the linear span of `basis`.
pub(crate) fn span_points(basis: &[u32]) -> Vec<u32> {
    let mut points = Vec::with_capacity(1 << basis.len());
    points.push(0u32);
    for &b in basis {
        for i in 0..points.len() {
            points.push(points[i] ^ b);
        }
    }
    points
}
