//! Bit-packed linear algebra over GF(2).
//!
//! [`BitMatrix`] stores rows as runs of `u64` words, so row operations during
//! elimination are word-wide XORs. Everything else in the crate (parity-check
//! matrices, meta-checks, generator matrices) is carried in this type.

mod io;
mod reduce;

pub use io::{read_alist, read_dense, write_alist, write_dense};
pub use reduce::{RowReduction, RowSpace};

use std::fmt;

use crate::error::{Error, Result};

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.toggle(i);
        }
        v
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        Self { len, words }
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
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Indices of the set bits in increasing order.
    pub fn support(&self) -> Vec<usize> {
        ones_in(&self.words)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        xor_into(&mut self.words, &other.words);
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// GF(2) inner product.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        parity_and(&self.words, &other.words)
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.support() {
            out.set(i, true);
        }
        for i in other.support() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Kronecker product of two vectors, `self` index major.
    pub fn kron(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len * other.len);
        let b = other.support();
        for i in self.support() {
            for &j in &b {
                out.set(i * other.len + j, true);
            }
        }
        out
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector[")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, "]")
    }
}

/// Dense row-major binary matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    /// The `1 × cols` all-ones matrix.
    pub fn ones_row(cols: usize) -> Self {
        let mut m = Self::zeros(1, cols);
        for j in 0..cols {
            m.set(0, j, true);
        }
        m
    }

    /// Build from rows of 0/1 bytes. All rows must have length `cols`.
    pub fn from_rows<R: AsRef<[u8]>>(cols: usize, rows: &[R]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "row {i} has length {} != {cols}", r.len());
            for (j, &b) in r.iter().enumerate() {
                if b & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Build from a list of row supports.
    pub fn from_row_supports(cols: usize, supports: &[Vec<usize>]) -> Self {
        let mut m = Self::zeros(supports.len(), cols);
        for (i, s) in supports.iter().enumerate() {
            for &j in s {
                m.toggle(i, j);
            }
        }
        m
    }

    pub fn from_row_vectors(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// Parse whitespace-separated 0/1 row strings, e.g. `"110 011"`.
    pub fn parse_rows(text: &str) -> Self {
        let rows: Vec<Vec<u8>> = text
            .split_whitespace()
            .map(|r| r.bytes().map(|b| (b == b'1') as u8).collect())
            .collect();
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(cols, &rows)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of range");
        let w = &mut self.data[r * self.stride + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of range");
        self.data[r * self.stride + c / WORD_BITS] ^= 1u64 << (c % WORD_BITS);
    }

    #[inline]
    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    /// Column indices of the set entries of row `r`.
    pub fn row_support(&self, r: usize) -> Vec<usize> {
        ones_in(self.row_words(r))
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn column_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for r in 0..self.rows {
            for c in self.row_support(r) {
                w[c] += 1;
            }
        }
        w
    }

    pub fn max_row_weight(&self) -> usize {
        (0..self.rows).map(|r| self.row_weight(r)).max().unwrap_or(0)
    }

    pub fn max_column_weight(&self) -> usize {
        self.column_weights().into_iter().max().unwrap_or(0)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Adjacency view: set column positions for every row.
    pub fn row_supports(&self) -> Vec<Vec<usize>> {
        (0..self.rows).map(|r| self.row_support(r)).collect()
    }

    /// Adjacency view: set row positions for every column.
    pub fn column_supports(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.cols];
        for r in 0..self.rows {
            for c in self.row_support(r) {
                out[c].push(r);
            }
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_support(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// `self · v` over GF(2).
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(self.cols, v.len(), "mul_vec: {} columns vs length {}", self.cols, v.len());
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if parity_and(self.row_words(r), v.words()) {
                out.set(r, true);
            }
        }
        out
    }

    /// `vᵀ · self`, i.e. the sum of the rows selected by `v`.
    pub fn left_mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(self.rows, v.len());
        let mut acc = vec![0u64; self.stride];
        for r in v.support() {
            xor_into(&mut acc, self.row_words(r));
        }
        BitVector::from_words(self.cols, acc)
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(
            self.cols, other.rows,
            "mul: {}x{} times {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let (head, tail) = (r * out.stride, (r + 1) * out.stride);
            for k in self.row_support(r) {
                xor_into(&mut out.data[head..tail], other.row_words(k));
            }
        }
        out
    }

    /// Kronecker product, `(a⊗b)[i·rb+k, j·cb+l] = a[i,j]·b[k,l]`.
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let (rb, cb) = (other.rows, other.cols);
        let mut out = BitMatrix::zeros(self.rows * rb, self.cols * cb);
        let b_rows: Vec<Vec<usize>> = other.row_supports();
        for i in 0..self.rows {
            let a_support = self.row_support(i);
            for (k, bs) in b_rows.iter().enumerate() {
                let r = i * rb + k;
                for &j in &a_support {
                    for &l in bs {
                        out.set(r, j * cb + l, true);
                    }
                }
            }
        }
        out
    }

    /// Kronecker product of a sequence of factors, left to right.
    pub fn kron_all<'a, I>(factors: I) -> BitMatrix
    where
        I: IntoIterator<Item = &'a BitMatrix>,
    {
        factors
            .into_iter()
            .fold(BitMatrix::identity(1), |acc, f| acc.kron(f))
    }

    /// Concatenate rows of `parts` in order. All parts must share a column count.
    pub fn stack(parts: &[BitMatrix]) -> Result<BitMatrix> {
        let Some(first) = parts.first() else {
            return Ok(BitMatrix::zeros(0, 0));
        };
        let cols = first.cols;
        if let Some((i, p)) = parts.iter().enumerate().find(|(_, p)| p.cols != cols) {
            return Err(Error::Dimension(format!(
                "stack: part {i} has {} columns, expected {cols}",
                p.cols
            )));
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut data = Vec::with_capacity(rows * first.stride);
        for p in parts {
            data.extend_from_slice(&p.data);
        }
        Ok(BitMatrix {
            rows,
            cols,
            stride: first.stride,
            data,
        })
    }

    /// Concatenate columns of `parts` in order. All parts must share a row count.
    pub fn hstack(parts: &[BitMatrix]) -> Result<BitMatrix> {
        let Some(first) = parts.first() else {
            return Ok(BitMatrix::zeros(0, 0));
        };
        let rows = first.rows;
        if let Some((i, p)) = parts.iter().enumerate().find(|(_, p)| p.rows != rows) {
            return Err(Error::Dimension(format!(
                "hstack: part {i} has {} rows, expected {rows}",
                p.rows
            )));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = BitMatrix::zeros(rows, cols);
        let mut offset = 0;
        for p in parts {
            for r in 0..rows {
                for c in p.row_support(r) {
                    out.set(r, offset + c, true);
                }
            }
            offset += p.cols;
        }
        Ok(out)
    }

    /// Sub-matrix made of the listed columns, in the listed order.
    pub fn select_columns(&self, columns: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, columns.len());
        for r in 0..self.rows {
            for (k, &c) in columns.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, k, true);
                }
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(rows.len(), self.cols);
        for (k, &r) in rows.iter().enumerate() {
            out.row_words_mut(k).copy_from_slice(self.row_words(r));
        }
        out
    }

    /// Rows `start..end`.
    pub fn row_range(&self, start: usize, end: usize) -> BitMatrix {
        assert!(start <= end && end <= self.rows);
        BitMatrix {
            rows: end - start,
            cols: self.cols,
            stride: self.stride,
            data: self.data[start * self.stride..end * self.stride].to_vec(),
        }
    }

    /// Apply a column permutation: output column `perm[c]` is input column `c`.
    pub fn permute_columns(&self, perm: &[usize]) -> BitMatrix {
        assert_eq!(perm.len(), self.cols);
        let mut out = BitMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in self.row_support(r) {
                out.set(r, perm[c], true);
            }
        }
        out
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        xor_into(&mut out.data, &other.data);
        out
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        let (lo, hi) = (a.min(b), a.max(b));
        let (left, right) = self.data.split_at_mut(hi * s);
        left[lo * s..(lo + 1) * s].swap_with_slice(&mut right[..s]);
    }

    /// `row[dst] ^= row[src]`.
    pub(crate) fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        if src < dst {
            let (left, right) = self.data.split_at_mut(dst * s);
            xor_into(&mut right[..s], &left[src * s..(src + 1) * s]);
        } else {
            let (left, right) = self.data.split_at_mut(src * s);
            xor_into(&mut left[dst * s..(dst + 1) * s], &right[..s]);
        }
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows.min(64) {
            for c in 0..self.cols.min(128) {
                write!(f, "{}", self.get(r, c) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
pub(crate) fn parity_and(a: &[u64], b: &[u64]) -> bool {
    a.iter()
        .zip(b)
        .fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones())
        & 1
        == 1
}

pub(crate) fn ones_in(words: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (k, &w) in words.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let t = w.trailing_zeros() as usize;
            out.push(k * WORD_BITS + t);
            w &= w - 1;
        }
    }
    out
}

/// GF(2) rank.
pub fn rank(m: &BitMatrix) -> usize {
    reduce::rank_of(m.clone())
}

/// Basis of the right kernel, one basis vector per column.
pub fn kernel_basis(m: &BitMatrix) -> BitMatrix {
    kernel_rows(m).transpose()
}

/// Basis of the right kernel, one basis vector per row.
pub fn kernel_rows(m: &BitMatrix) -> BitMatrix {
    reduce::kernel_rows(m)
}

/// Any `x` with `m·x = s`, free variables zero; `None` if `s` is outside the column span.
pub fn solve(m: &BitMatrix, s: &BitVector) -> Option<BitVector> {
    reduce::solve(m, s)
}

/// Reduced row echelon form with the transformation that produced it.
pub fn row_reduce(m: &BitMatrix) -> RowReduction {
    RowReduction::new(m)
}

pub fn kron(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    a.kron(b)
}

pub fn stack(parts: &[BitMatrix]) -> Result<BitMatrix> {
    BitMatrix::stack(parts)
}

/// Whether `v` is a GF(2) combination of the rows of `m`.
pub fn in_rowspan(m: &BitMatrix, v: &BitVector) -> bool {
    RowSpace::new(m).contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_basics() {
        let mut v = BitVector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.weight(), 3);
        assert_eq!(v.support(), vec![0, 64, 129]);
        v.toggle(64);
        assert_eq!(v.support(), vec![0, 129]);
        assert!(!v.is_zero());
    }

    #[test]
    fn kron_examples() {
        let h = BitMatrix::parse_rows("11");
        assert_eq!(h.kron(&h), BitMatrix::parse_rows("1111"));
        let i2 = BitMatrix::identity(2);
        assert_eq!(i2.kron(&h), BitMatrix::parse_rows("1100 0011"));
    }

    #[test]
    fn stack_examples() {
        let a = BitMatrix::parse_rows("11");
        assert_eq!(BitMatrix::stack(&[a.clone()]).unwrap(), a);
        let s = BitMatrix::stack(&[a.clone(), BitMatrix::parse_rows("10")]).unwrap();
        assert_eq!(s, BitMatrix::parse_rows("11 10"));
        assert!(matches!(
            BitMatrix::stack(&[a, BitMatrix::zeros(1, 3)]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn stack_of_product_blocks() {
        // (H⊗I / I⊗H) for H = (1 1), expanded by hand.
        let h = BitMatrix::parse_rows("11");
        let i = BitMatrix::identity(2);
        let s = BitMatrix::stack(&[h.kron(&i), i.kron(&h)]).unwrap();
        assert_eq!(s, BitMatrix::parse_rows("1010 0101 1100 0011"));
        // The displayed block order puts H⊗I first.
        let want = BitMatrix::parse_rows("1100 0011 1010 0101");
        let swapped = BitMatrix::stack(&[i.kron(&h), h.kron(&i)]).unwrap();
        assert_eq!(swapped, want);
    }

    #[test]
    fn hstack_and_selection() {
        let a = BitMatrix::parse_rows("10 01");
        let b = BitMatrix::parse_rows("1 1");
        let h = BitMatrix::hstack(&[a.clone(), b]).unwrap();
        assert_eq!(h, BitMatrix::parse_rows("101 011"));
        assert_eq!(h.select_columns(&[2, 0]), BitMatrix::parse_rows("11 10"));
        assert_eq!(h.select_rows(&[1]), BitMatrix::parse_rows("011"));
        assert!(BitMatrix::hstack(&[a, BitMatrix::zeros(3, 1)]).is_err());
    }

    #[test]
    fn products() {
        let a = BitMatrix::parse_rows("110 011");
        let v = BitVector::from_bits(&[1, 1, 1]);
        assert_eq!(a.mul_vec(&v).to_bits(), vec![0, 0]);
        assert_eq!(a.mul(&a.transpose()), BitMatrix::parse_rows("01 10"));
        assert_eq!(a.left_mul_vec(&BitVector::from_bits(&[1, 1])).to_bits(), vec![1, 0, 1]);
    }

    #[test]
    fn swap_and_xor_rows() {
        let mut m = BitMatrix::parse_rows("100 010 001");
        m.swap_rows(0, 2);
        assert_eq!(m, BitMatrix::parse_rows("001 010 100"));
        m.xor_row_into(2, 0);
        m.xor_row_into(0, 1);
        assert_eq!(m, BitMatrix::parse_rows("101 111 100"));
    }
}
