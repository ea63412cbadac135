//! Gaussian elimination. Pivoting is always leftmost nonzero column, topmost
//! available row, so transforms and solutions are reproducible.

use super::{xor_into, BitMatrix, BitVector, WORD_BITS};

/// Reduced row echelon form `E` of a matrix `H` together with an invertible
/// `T` such that `T·H = E`. Zero rows of `E` sit at the bottom, so the last
/// `rows − rank` rows of `T` annihilate the column space of `H`.
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub echelon: BitMatrix,
    pub transform: BitMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl RowReduction {
    pub fn new(m: &BitMatrix) -> Self {
        let mut echelon = m.clone();
        let mut transform = BitMatrix::identity(m.rows());
        let pivot_cols = rref(&mut echelon, m.cols(), Some(&mut transform));
        Self {
            rank: pivot_cols.len(),
            echelon,
            transform,
            pivot_cols,
        }
    }

    /// The last `rows − rank` rows of the transform.
    pub fn annihilator(&self) -> BitMatrix {
        self.transform.row_range(self.rank, self.transform.rows())
    }
}

#[inline]
fn bit(words: &[u64], c: usize) -> bool {
    (words[c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
}

/// In-place RREF; pivots are searched only among the first `pivot_limit`
/// columns. Row operations are mirrored into `shadow` when given.
pub(crate) fn rref(
    m: &mut BitMatrix,
    pivot_limit: usize,
    mut shadow: Option<&mut BitMatrix>,
) -> Vec<usize> {
    let rows = m.rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_limit {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| bit(m.row_words(i), c)) else {
            continue;
        };
        m.swap_rows(r, p);
        if let Some(t) = shadow.as_deref_mut() {
            t.swap_rows(r, p);
        }
        for i in 0..rows {
            if i != r && bit(m.row_words(i), c) {
                m.xor_row_into(r, i);
                if let Some(t) = shadow.as_deref_mut() {
                    t.xor_row_into(r, i);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank_of(mut m: BitMatrix) -> usize {
    let rows = m.rows();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| bit(m.row_words(i), c)) else {
            continue;
        };
        m.swap_rows(r, p);
        for i in r + 1..rows {
            if bit(m.row_words(i), c) {
                m.xor_row_into(r, i);
            }
        }
        r += 1;
    }
    r
}

pub(crate) fn kernel_rows(m: &BitMatrix) -> BitMatrix {
    let mut e = m.clone();
    let pivots = rref(&mut e, m.cols(), None);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..m.cols()).filter(|&c| !is_pivot[c]).collect();
    let mut out = BitMatrix::zeros(free.len(), m.cols());
    for (k, &f) in free.iter().enumerate() {
        out.set(k, f, true);
        for (r, &p) in pivots.iter().enumerate() {
            if e.get(r, f) {
                out.set(k, p, true);
            }
        }
    }
    out
}

pub(crate) fn solve(m: &BitMatrix, s: &BitVector) -> Option<BitVector> {
    assert_eq!(s.len(), m.rows(), "solve: rhs length {} vs {} rows", s.len(), m.rows());
    let cols = m.cols();
    let mut aug = BitMatrix::zeros(m.rows(), cols + 1);
    for r in 0..m.rows() {
        let src = m.row_words(r);
        let dst = aug.row_words_mut(r);
        dst[..src.len()].copy_from_slice(src);
        if s.get(r) {
            dst[cols / WORD_BITS] |= 1u64 << (cols % WORD_BITS);
        }
    }
    let pivots = rref(&mut aug, cols, None);
    if (pivots.len()..m.rows()).any(|r| aug.get(r, cols)) {
        return None;
    }
    let mut x = BitVector::zeros(cols);
    for (r, &p) in pivots.iter().enumerate() {
        if aug.get(r, cols) {
            x.set(p, true);
        }
    }
    Some(x)
}

/// Row space of a matrix in reduced echelon form, for repeated membership tests.
#[derive(Clone, Debug)]
pub struct RowSpace {
    basis: BitMatrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(m: &BitMatrix) -> Self {
        let mut e = m.clone();
        let pivots = rref(&mut e, m.cols(), None);
        let basis = e.row_range(0, pivots.len());
        Self { basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &BitMatrix {
        &self.basis
    }

    /// Remainder of `v` after eliminating every pivot of the basis.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.basis.cols(), "vector length does not match row space");
        let mut w = v.words().to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if bit(&w, p) {
                xor_into(&mut w, self.basis.row_words(r));
            }
        }
        BitVector::from_words(v.len(), w)
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    pub(crate) fn contains_support(&self, len: usize, support: &[usize]) -> bool {
        self.contains(&BitVector::from_support(len, support))
    }
}
