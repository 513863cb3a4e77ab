//! Bit-packed vectors and small dense matrices over GF(2).

use std::fmt;

const WORD_BITS: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A fixed-length binary vector packed into 64-bit words.
///
/// Bit `i` lives in word `i / 64` at position `i % 64`. Bits past `len` in
/// the last word are always zero, so word-wise equality and hashing agree
/// with bitwise equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryWord {
    len: usize,
    words: Vec<u64>,
}

impl BinaryWord {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut w = Self {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        w.clear_tail();
        w
    }

    /// Builds a word from a slice of bits; any nonzero entry counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut w = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                w.set(i, true);
            }
        }
        w
    }

    /// Builds a word of length `len` with ones exactly at `support`.
    ///
    /// # Panics
    ///
    /// Panics if an index is out of range.
    pub fn from_support<I>(len: usize, support: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<usize>,
    {
        let mut w = Self::zeros(len);
        for i in support {
            w.set(i.into(), true);
        }
        w
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `self ^= other`.
    ///
    /// # Panics
    ///
    /// Panics on length mismatch.
    #[inline]
    pub fn xor_assign(&mut self, other: &BinaryWord) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// `self = a ^ b` without reallocating.
    #[inline]
    pub fn assign_xor(&mut self, a: &BinaryWord, b: &BinaryWord) {
        assert!(self.len == a.len && a.len == b.len, "length mismatch in xor");
        for ((o, x), y) in self.words.iter_mut().zip(&a.words).zip(&b.words) {
            *o = x ^ y;
        }
    }

    pub fn xor(&self, other: &BinaryWord) -> BinaryWord {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2).
    #[inline]
    pub fn dot(&self, other: &BinaryWord) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot product");
        let acc = self
            .words
            .iter()
            .zip(&other.words)
            .fold(0u64, |acc, (a, b)| acc ^ (a & b));
        acc.count_ones() % 2 == 1
    }

    /// Number of positions where the two words differ.
    pub fn distance(&self, other: &BinaryWord) -> usize {
        assert_eq!(self.len, other.len, "length mismatch in distance");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Ascending indices of the set bits.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD_BITS + bit)
            })
        })
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryWord(")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, ")")
    }
}

/// Dense GF(2) matrix stored as a list of equal-length rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BinaryWord>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    /// # Panics
    ///
    /// Panics if any row has a length other than `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BinaryWord>) -> Self {
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "all rows must have length {cols}"
        );
        Self { cols, rows }
    }

    pub fn push_row(&mut self, row: BinaryWord) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.rows.push(row);
    }

    #[inline]
    pub fn rows(&self) -> &[BinaryWord] {
        &self.rows
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    /// `M · xᵀ`, one bit per row.
    pub fn mul_vec(&self, x: &BinaryWord) -> BinaryWord {
        let mut out = BinaryWord::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(x) {
                out.set(i, true);
            }
        }
        out
    }

    /// True iff every row is orthogonal to `x`.
    pub fn annihilates(&self, x: &BinaryWord) -> bool {
        self.rows.iter().all(|row| !row.dot(x))
    }

    /// Reduces the matrix in place to reduced row echelon form, dropping
    /// zero rows. Pivots are chosen scanning columns in ascending order.
    /// Returns the pivot column of each remaining row.
    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_with_order(&(0..self.cols).collect::<Vec<_>>())
    }

    /// Like [`BitMatrix::rref`] but scans candidate pivot columns in the
    /// given order. Columns not listed are never used as pivots.
    pub fn rref_with_order(&mut self, column_order: &[usize]) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for &col in column_order {
            if next == self.rows.len() {
                break;
            }
            let Some(found) = (next..self.rows.len()).find(|&i| self.rows[i].get(col)) else {
                continue;
            };
            self.rows.swap(next, found);
            let pivot_row = self.rows[next].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
        }
        self.rows.truncate(next);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_bits_stay_clear() {
        let w = BinaryWord::ones(70);
        assert_eq!(w.weight(), 70);
        assert_eq!(w.words()[1], (1u64 << 6) - 1);
    }

    #[test]
    fn support_is_ascending() {
        let w = BinaryWord::from_support(130, [129usize, 0, 64, 63]);
        assert_eq!(w.support().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
    }

    #[test]
    fn dot_and_distance() {
        let a = BinaryWord::from_bits(&[1, 1, 0, 1]);
        let b = BinaryWord::from_bits(&[1, 0, 1, 1]);
        assert!(!a.dot(&b));
        assert_eq!(a.distance(&b), 2);
        assert_eq!(a.xor(&b).to_bits(), vec![0, 1, 1, 0]);
    }

    #[test]
    fn rref_rank_and_pivots() {
        let rows = [[1, 1, 0, 0], [0, 1, 1, 0], [1, 0, 1, 0]]
            .iter()
            .map(|r| BinaryWord::from_bits(r))
            .collect();
        let mut m = BitMatrix::from_rows(4, rows);
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.num_rows(), 2);
        assert_eq!(m.rows()[0].to_bits(), vec![1, 0, 1, 0]);
        assert_eq!(m.rows()[1].to_bits(), vec![0, 1, 1, 0]);
    }

    #[test]
    fn rref_respects_column_order() {
        let rows = vec![BinaryWord::from_bits(&[1, 1, 0]), BinaryWord::from_bits(&[0, 1, 1])];
        let mut m = BitMatrix::from_rows(3, rows);
        let pivots = m.rref_with_order(&[2, 1, 0]);
        assert_eq!(pivots, vec![2, 1]);
    }
}
