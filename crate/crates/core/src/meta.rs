//! Meta-checks: linear dependencies among check rows, used to detect and
//! locate syndrome read-out errors.

use std::collections::HashMap;

use crate::bitlin::{rank, row_reduce, BitMatrix, BitVector};
use crate::build::{spc, SpcParams};
use crate::css::{min_kernel_weight, CssCode};
use crate::error::{Error, Result};

/// A matrix `M` whose kernel is the column span of a parent PCM `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaCheck {
    m: BitMatrix,
    parent_rows: usize,
    parent_rank: usize,
}

impl MetaCheck {
    /// Wrap `m` after checking `M·H = 0` and `dim ker M = rank H`.
    pub fn new(m: BitMatrix, parent: &BitMatrix) -> Result<Self> {
        if m.cols() != parent.rows() {
            return Err(Error::Dimension(format!(
                "meta-check has {} columns, parent has {} rows",
                m.cols(),
                parent.rows()
            )));
        }
        if !m.mul(parent).is_zero() {
            return Err(Error::InvalidParameter("meta-check does not annihilate the PCM".into()));
        }
        let parent_rank = rank(parent);
        let rm = rank(&m);
        if rm != parent.rows() - parent_rank {
            return Err(Error::RankDeficient {
                rank: rm,
                rows: parent.rows() - parent_rank,
            });
        }
        Ok(Self {
            m,
            parent_rows: parent.rows(),
            parent_rank,
        })
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.m
    }

    pub fn rows(&self) -> usize {
        self.m.rows()
    }

    pub fn parent_rows(&self) -> usize {
        self.parent_rows
    }

    pub fn parent_rank(&self) -> usize {
        self.parent_rank
    }

    /// `σ = M·s`.
    pub fn meta_syndrome(&self, s: &BitVector) -> BitVector {
        self.m.mul_vec(s)
    }

    /// Smallest weight of a read-out error invisible to `M`, if at most `max_weight`.
    pub fn distance(&self, max_weight: usize) -> Option<usize> {
        min_kernel_weight(&self.m, max_weight).map(|(w, _)| w)
    }
}

/// The last `m − r` rows of the Gaussian-elimination transform of `h`.
pub fn metacheck_from_pcm(h: &BitMatrix) -> MetaCheck {
    let rr = row_reduce(h);
    MetaCheck {
        m: rr.annihilator(),
        parent_rows: h.rows(),
        parent_rank: rr.rank,
    }
}

/// Sparse meta-check of `Hx` for SPC(3,s).
///
/// The qubits split into three groups of `G = 8s` coordinates `(g1, g2, g3)`
/// and `Hx` has blocks `H_s⊗I⊗I`, `I⊗H_s⊗I`, `I⊗I⊗H_s` whose rows are indexed
/// by `(g2,g3)`, `(g1,g3)` and `(g1,g2)`. A row of `M` fixes one coordinate
/// value and adds the two blocks that still carry it, summed over the free
/// coordinate. Each qubit then hits every row twice or not at all. The `24s`
/// rows sum to zero, so `M` has rank `24s − 1`.
pub fn spc3_metacheck(s: usize) -> Result<MetaCheck> {
    let params = SpcParams::new(3, s)?;
    let code = spc(params);
    Ok(structured(s, code.hx()))
}

/// The same construction for `Hz`, carried over by the qubit permutation that
/// maps `Hz` onto `Hx`.
pub fn spc3_metacheck_z(s: usize) -> Result<MetaCheck> {
    let params = SpcParams::new(3, s)?;
    let code = spc(params);
    let mx = structured(s, code.hx());
    let moved = code.hz().permute_columns(&transpose_components(params));
    let index: HashMap<Vec<usize>, usize> = code
        .hx()
        .row_supports()
        .into_iter()
        .enumerate()
        .map(|(i, r)| (r, i))
        .collect();
    // Row i of Hz is row pi[i] of Hx after relabelling qubits.
    let pi: Vec<usize> = (0..moved.rows())
        .map(|i| index[&moved.row_support(i)])
        .collect();
    let mz = mx.m.select_columns(&pi);
    debug_assert!(mz.mul(code.hz()).is_zero());
    Ok(MetaCheck {
        m: mz,
        parent_rows: mx.parent_rows,
        parent_rank: code.rank_z(),
    })
}

fn structured(s: usize, hx: &BitMatrix) -> MetaCheck {
    let g = 8 * s;
    let off = g * g;
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(3 * g);
    for a in 0..g {
        let mut r: Vec<usize> = (0..g).map(|t| off + a * g + t).collect();
        r.extend((0..g).map(|t| 2 * off + a * g + t));
        rows.push(r);
    }
    for b in 0..g {
        let mut r: Vec<usize> = (0..g).map(|t| b * g + t).collect();
        r.extend((0..g).map(|t| 2 * off + t * g + b));
        rows.push(r);
    }
    for c in 0..g {
        let mut r: Vec<usize> = (0..g).map(|t| t * g + c).collect();
        r.extend((0..g).map(|t| off + t * g + c));
        rows.push(r);
    }
    for r in &mut rows {
        r.sort_unstable();
    }
    let m = BitMatrix::from_row_supports(3 * off, &rows);
    debug_assert!(m.mul(hx).is_zero());
    MetaCheck {
        m,
        parent_rows: hx.rows(),
        parent_rank: rank(hx),
    }
}

/// Qubit permutation `perm[q]` sending component `3r + c` to `3c + r`.
fn transpose_components(params: SpcParams) -> Vec<usize> {
    let lens: Vec<usize> = (0..9)
        .map(|l| if params.is_diagonal(l) { 2 * params.s } else { 2 })
        .collect();
    let n: usize = lens.iter().product();
    let sigma = |l: usize| 3 * (l % 3) + l / 3;
    (0..n)
        .map(|q| {
            let mut digits = [0usize; 9];
            let mut rest = q;
            for l in (0..9).rev() {
                digits[l] = rest % lens[l];
                rest /= lens[l];
            }
            let mut moved = [0usize; 9];
            for l in 0..9 {
                moved[sigma(l)] = digits[l];
            }
            moved.iter().zip(&lens).fold(0, |acc, (&d, &len)| acc * len + d)
        })
        .collect()
}

/// `((H | I_m) / (0 | M))`.
#[derive(Clone, Debug)]
pub struct ExtendedPcm {
    h_ext: BitMatrix,
    n: usize,
    m: usize,
}

impl ExtendedPcm {
    pub fn matrix(&self) -> &BitMatrix {
        &self.h_ext
    }

    /// Data columns.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Parent check rows, also the number of read-out columns.
    pub fn m(&self) -> usize {
        self.m
    }

    /// `H̃·(e ‖ e_s)`, split into the measured syndrome and the meta-syndrome.
    pub fn syndrome(&self, e: &BitVector, e_s: &BitVector) -> ExtendedSyndrome {
        let full = self.h_ext.mul_vec(&e.concat(e_s));
        let bits = full.support();
        let s_prime = BitVector::from_support(
            self.m,
            &bits.iter().copied().filter(|&i| i < self.m).collect::<Vec<_>>(),
        );
        let sigma = BitVector::from_support(
            self.h_ext.rows() - self.m,
            &bits.iter().filter(|&&i| i >= self.m).map(|&i| i - self.m).collect::<Vec<_>>(),
        );
        ExtendedSyndrome { s_prime, sigma }
    }
}

pub fn extend_pcm(h: &BitMatrix, meta: &MetaCheck) -> Result<ExtendedPcm> {
    let (m, n) = (h.rows(), h.cols());
    if meta.parent_rows != m || meta.m.cols() != m {
        return Err(Error::Dimension(format!(
            "meta-check expects {} rows, PCM has {m}",
            meta.parent_rows
        )));
    }
    let top = BitMatrix::hstack(&[h.clone(), BitMatrix::identity(m)])?;
    let bottom = BitMatrix::hstack(&[BitMatrix::zeros(meta.rows(), n), meta.m.clone()])?;
    Ok(ExtendedPcm {
        h_ext: BitMatrix::stack(&[top, bottom])?,
        n,
        m,
    })
}

/// A measured syndrome together with its meta-syndrome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedSyndrome {
    pub s_prime: BitVector,
    pub sigma: BitVector,
}

impl ExtendedSyndrome {
    pub fn new(meta: &MetaCheck, s_prime: BitVector) -> Self {
        let sigma = meta.meta_syndrome(&s_prime);
        Self { s_prime, sigma }
    }
}

/// Measurement counts: stabilizing needs `r^x + r^z` checks, the PCMs use `m^x + m^z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementOverhead {
    pub minimum: usize,
    pub actual: usize,
    /// `(actual − minimum) / minimum`.
    pub ratio: f64,
}

pub fn measurement_overhead(code: &CssCode) -> MeasurementOverhead {
    let minimum = code.rank_x() + code.rank_z();
    let actual = code.hx().rows() + code.hz().rows();
    let ratio = if minimum == 0 {
        0.0
    } else {
        (actual - minimum) as f64 / minimum as f64
    };
    MeasurementOverhead {
        minimum,
        actual,
        ratio,
    }
}
