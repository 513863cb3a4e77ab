//! Sparse parity-check matrices with Tanner-graph adjacency.
//!
//! Edges are numbered row-major: the edges of check `j` occupy the
//! contiguous range [`PcMatrix::row_edges`]. Decoders key their per-edge
//! message buffers by this numbering, and walk the variable side through
//! [`PcMatrix::col_edges`].

use std::collections::HashSet;
use std::fmt::Write as _;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::gf2::{BinaryWord, BitMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    row_idx: Vec<u32>,
    edge_row: Vec<u32>,
    col_ptr: Vec<usize>,
    col_edges: Vec<u32>,
}

impl PcMatrix {
    /// A matrix with no checks over `n` variables.
    pub fn empty(n: usize) -> Self {
        Self::build(n, Vec::new())
    }

    /// Builds a matrix from check supports.
    ///
    /// Every support must be non-empty, strictly ascending and inside
    /// `0..n`; supports must be pairwise distinct.
    pub fn from_supports(n: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(rows.len());
        for (j, row) in rows.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::InvalidParameter(format!("check {j} is empty")));
            }
            if !row.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "support of check {j} is not strictly ascending"
                )));
            }
            if let Some(&last) = row.last() {
                if last as usize >= n {
                    return Err(Error::InvalidParameter(format!(
                        "check {j} touches column {last} but n = {n}"
                    )));
                }
            }
            if !seen.insert(row.as_slice()) {
                return Err(Error::InvalidParameter(format!("check {j} is a duplicate")));
            }
        }
        Ok(Self::build(n, rows))
    }

    /// Builds a matrix from supports the caller already knows are valid and
    /// distinct.
    pub(crate) fn from_supports_unchecked(n: usize, rows: Vec<Vec<u32>>) -> Self {
        debug_assert!(Self::from_supports(n, rows.clone()).is_ok());
        Self::build(n, rows)
    }

    fn build(n: usize, rows: Vec<Vec<u32>>) -> Self {
        let num_edges: usize = rows.iter().map(Vec::len).sum();
        let mut row_ptr = Vec::with_capacity(rows.len() + 1);
        let mut row_idx = Vec::with_capacity(num_edges);
        let mut edge_row = Vec::with_capacity(num_edges);
        let mut col_deg = vec![0usize; n];
        row_ptr.push(0);
        for (j, row) in rows.iter().enumerate() {
            for &c in row {
                row_idx.push(c);
                edge_row.push(j as u32);
                col_deg[c as usize] += 1;
            }
            row_ptr.push(row_idx.len());
        }

        let mut col_ptr = Vec::with_capacity(n + 1);
        col_ptr.push(0);
        for d in &col_deg {
            col_ptr.push(col_ptr.last().unwrap() + d);
        }
        let mut fill = col_ptr[..n].to_vec();
        let mut col_edges = vec![0u32; num_edges];
        for (e, &c) in row_idx.iter().enumerate() {
            let slot = &mut fill[c as usize];
            col_edges[*slot] = e as u32;
            *slot += 1;
        }

        Self {
            n,
            row_ptr,
            row_idx,
            edge_row,
            col_ptr,
            col_edges,
        }
    }

    /// Number of columns (code length).
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.row_ptr.len() - 1
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.row_idx.len()
    }

    /// Sorted support of check `j`.
    #[inline]
    pub fn row(&self, j: usize) -> &[u32] {
        &self.row_idx[self.row_ptr[j]..self.row_ptr[j + 1]]
    }

    #[inline]
    pub fn row_edges(&self, j: usize) -> Range<usize> {
        self.row_ptr[j]..self.row_ptr[j + 1]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        (0..self.num_rows()).map(move |j| self.row(j))
    }

    /// Column (variable) index of edge `e`.
    #[inline]
    pub fn edge_col(&self, e: usize) -> usize {
        self.row_idx[e] as usize
    }

    /// Check index of edge `e`.
    #[inline]
    pub fn edge_row(&self, e: usize) -> usize {
        self.edge_row[e] as usize
    }

    /// Edge ids incident to variable `i`, in ascending check order.
    #[inline]
    pub fn col_edges(&self, i: usize) -> &[u32] {
        &self.col_edges[self.col_ptr[i]..self.col_ptr[i + 1]]
    }

    /// Checks incident to variable `i`, ascending.
    pub fn col_rows(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.col_edges(i).iter().map(|&e| self.edge_row[e as usize] as usize)
    }

    #[inline]
    pub fn col_degree(&self, i: usize) -> usize {
        self.col_ptr[i + 1] - self.col_ptr[i]
    }

    pub fn max_row_degree(&self) -> usize {
        (0..self.num_rows()).map(|j| self.row(j).len()).max().unwrap_or(0)
    }

    pub fn max_col_degree(&self) -> usize {
        (0..self.n).map(|i| self.col_degree(i)).max().unwrap_or(0)
    }

    pub fn row_word(&self, j: usize) -> BinaryWord {
        BinaryWord::from_support(self.n, self.row(j).iter().map(|&c| c as usize))
    }

    pub fn to_dense(&self) -> BitMatrix {
        BitMatrix::from_rows(self.n, (0..self.num_rows()).map(|j| self.row_word(j)).collect())
    }

    /// Whether check `j` is violated by `x`.
    #[inline]
    pub fn check_violated(&self, j: usize, x: &BinaryWord) -> bool {
        self.row(j).iter().fold(false, |acc, &c| acc ^ x.get(c as usize))
    }

    /// Number of violated checks.
    pub fn unsatisfied(&self, x: &BinaryWord) -> usize {
        (0..self.num_rows()).filter(|&j| self.check_violated(j, x)).count()
    }

    /// A new matrix made of the given rows, in the given order.
    ///
    /// # Panics
    ///
    /// Panics if an index is out of range or repeated.
    pub fn select_rows(&self, indices: &[usize]) -> PcMatrix {
        let rows = indices.iter().map(|&j| self.row(j).to_vec()).collect();
        Self::from_supports(self.n, rows).expect("row selection must be distinct")
    }

    /// Serializes into the alist text format: column count and row count,
    /// maximum degrees, per-node degrees, then 1-indexed neighbor lists for
    /// every column followed by every row.
    pub fn to_alist(&self) -> String {
        let mut out = String::new();
        let m = self.num_rows();
        let join = |it: &mut dyn Iterator<Item = usize>| {
            it.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
        };
        writeln!(out, "{} {}", self.n, m).unwrap();
        writeln!(out, "{} {}", self.max_col_degree(), self.max_row_degree()).unwrap();
        writeln!(out, "{}", join(&mut (0..self.n).map(|i| self.col_degree(i)))).unwrap();
        writeln!(out, "{}", join(&mut (0..m).map(|j| self.row(j).len()))).unwrap();
        for i in 0..self.n {
            writeln!(out, "{}", join(&mut self.col_rows(i).map(|j| j + 1))).unwrap();
        }
        for j in 0..m {
            writeln!(out, "{}", join(&mut self.row(j).iter().map(|&c| c as usize + 1))).unwrap();
        }
        out
    }

    /// Parses the alist text format. Zero padding in neighbor lists is
    /// accepted and ignored. Row lists are authoritative; column lists are
    /// checked against them.
    pub fn from_alist(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let mut next_numbers = |what: &str| -> Result<Vec<usize>> {
            let line = lines
                .next()
                .ok_or_else(|| Error::Alist(format!("missing {what}")))?;
            line.split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|e| Error::Alist(format!("bad number {t:?} in {what}: {e}")))
                })
                .collect()
        };

        let header = next_numbers("dimensions")?;
        let [n, m] = header[..] else {
            return Err(Error::Alist("first line must hold two numbers".into()));
        };
        next_numbers("maximum degrees")?;
        let col_deg = next_numbers("column degrees")?;
        let row_deg = next_numbers("row degrees")?;
        if col_deg.len() != n || row_deg.len() != m {
            return Err(Error::Alist("degree list lengths disagree with dimensions".into()));
        }

        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let mut list: Vec<usize> = next_numbers("column neighbor list")?
                .into_iter()
                .filter(|&v| v != 0)
                .collect();
            if list.len() != col_deg[i] {
                return Err(Error::Alist(format!("column {} degree mismatch", i + 1)));
            }
            list.sort_unstable();
            cols.push(list);
        }

        let mut rows = Vec::with_capacity(m);
        for j in 0..m {
            let mut list = Vec::with_capacity(row_deg[j]);
            for v in next_numbers("row neighbor list")?.into_iter().filter(|&v| v != 0) {
                if v > n {
                    return Err(Error::Alist(format!("row {} references column {v}", j + 1)));
                }
                list.push((v - 1) as u32);
            }
            if list.len() != row_deg[j] {
                return Err(Error::Alist(format!("row {} degree mismatch", j + 1)));
            }
            list.sort_unstable();
            rows.push(list);
        }

        let h = Self::from_supports(n, rows)?;
        for (i, expected) in cols.iter().enumerate() {
            if !h.col_rows(i).map(|j| j + 1).eq(expected.iter().copied()) {
                return Err(Error::Alist(format!(
                    "column {} neighbors disagree with the row lists",
                    i + 1
                )));
            }
        }
        Ok(h)
    }
}
