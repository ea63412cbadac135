//! CSS codes: validation, parameters, syndromes and distance search.

mod pauli;
pub(crate) mod search;

pub use pauli::{Pauli, PauliVector, F4_INNER_PRODUCT};
pub use search::{kernel_supports, min_kernel_weight};

use std::fmt;
use std::sync::OnceLock;

use crate::bitlin::{self, parity_and, BitMatrix, BitVector, RowSpace};
use crate::error::{Error, Result};

/// A CSS code given by its X and Z parity-check matrices.
///
/// Construction checks `Hx·Hzᵀ = 0`; ranks are cached and the row spaces
/// used for the stabilizer membership test are built lazily.
#[derive(Clone)]
pub struct CssCode {
    hx: BitMatrix,
    hz: BitMatrix,
    rx: usize,
    rz: usize,
    x_span: OnceLock<RowSpace>,
    z_span: OnceLock<RowSpace>,
}

impl CssCode {
    pub fn new(hx: BitMatrix, hz: BitMatrix) -> Result<Self> {
        if hx.cols() != hz.cols() {
            return Err(Error::Dimension(format!(
                "Hx has {} columns but Hz has {}",
                hx.cols(),
                hz.cols()
            )));
        }
        for i in 0..hx.rows() {
            for j in 0..hz.rows() {
                if parity_and(hx.row_words(i), hz.row_words(j)) {
                    return Err(Error::NotCommuting { row_x: i, row_z: j });
                }
            }
        }
        let rx = bitlin::rank(&hx);
        let rz = bitlin::rank(&hz);
        Ok(Self {
            hx,
            hz,
            rx,
            rz,
            x_span: OnceLock::new(),
            z_span: OnceLock::new(),
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.hx.cols()
    }

    pub fn k(&self) -> usize {
        self.n() - self.rx - self.rz
    }

    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    pub fn rank_x(&self) -> usize {
        self.rx
    }

    pub fn rank_z(&self) -> usize {
        self.rz
    }

    /// Row space of `Hx` (the X-type stabilizers).
    pub fn x_stabilizers(&self) -> &RowSpace {
        self.x_span.get_or_init(|| RowSpace::new(&self.hx))
    }

    /// Row space of `Hz` (the Z-type stabilizers).
    pub fn z_stabilizers(&self) -> &RowSpace {
        self.z_span.get_or_init(|| RowSpace::new(&self.hz))
    }

    pub fn stats(&self) -> CodeStats {
        CodeStats {
            n: self.n(),
            k: self.k(),
            m_x: self.hx.rows(),
            m_z: self.hz.rows(),
            meta_x: self.hx.rows() - self.rx,
            meta_z: self.hz.rows() - self.rz,
            row_weight_x: self.hx.max_row_weight(),
            row_weight_z: self.hz.max_row_weight(),
            col_weight_x: self.hx.max_column_weight(),
            col_weight_z: self.hz.max_column_weight(),
        }
    }

    /// `(sx, sz) = (Hx·vz, Hz·vx)`.
    pub fn syndromes(&self, e: &PauliVector) -> (BitVector, BitVector) {
        assert_eq!(e.n(), self.n(), "error length does not match the code");
        (self.hx.mul_vec(e.vz()), self.hz.mul_vec(e.vx()))
    }

    /// For a residual with zero syndrome: whether it acts nontrivially on the code space.
    pub fn is_logical_failure(&self, residual: &PauliVector) -> Result<bool> {
        let (sx, sz) = self.syndromes(residual);
        if !sx.is_zero() || !sz.is_zero() {
            return Err(Error::NonZeroSyndrome);
        }
        Ok(!self.x_stabilizers().contains(residual.vx())
            || !self.z_stabilizers().contains(residual.vz()))
    }

    /// Exact minimum weight of a pure X, Y or Z logical error up to `max_weight`,
    /// with multiplicities per type at that weight.
    pub fn search_min_logical(&self, max_weight: usize) -> DistanceReport {
        assert!(max_weight >= 1, "max_weight must be at least 1");
        let n = self.n();
        let both = BitMatrix::stack(&[self.hx.clone(), self.hz.clone()])
            .expect("Hx and Hz share a column count");
        let xs = self.x_stabilizers();
        let zs = self.z_stabilizers();
        for w in 1..=max_weight {
            let x: Vec<Vec<u32>> = search::kernel_supports(&self.hz, w)
                .into_iter()
                .filter(|s| !xs.contains_support(n, &widen(s)))
                .collect();
            let z: Vec<Vec<u32>> = search::kernel_supports(&self.hx, w)
                .into_iter()
                .filter(|s| !zs.contains_support(n, &widen(s)))
                .collect();
            let y: Vec<Vec<u32>> = search::kernel_supports(&both, w)
                .into_iter()
                .filter(|s| {
                    let s = widen(s);
                    !xs.contains_support(n, &s) || !zs.contains_support(n, &s)
                })
                .collect();
            if x.is_empty() && y.is_empty() && z.is_empty() {
                continue;
            }
            let witness = if let Some(s) = x.first() {
                PauliVector::x_type(BitVector::from_support(n, &widen(s)))
            } else if let Some(s) = z.first() {
                PauliVector::z_type(BitVector::from_support(n, &widen(s)))
            } else {
                PauliVector::y_type(BitVector::from_support(n, &widen(&y[0])))
            };
            return DistanceReport {
                searched_up_to: max_weight,
                found_weight: Some(w),
                multiplicity_x: x.len(),
                multiplicity_y: y.len(),
                multiplicity_z: z.len(),
                witness: Some(witness),
            };
        }
        DistanceReport {
            searched_up_to: max_weight,
            found_weight: None,
            multiplicity_x: 0,
            multiplicity_y: 0,
            multiplicity_z: 0,
            witness: None,
        }
    }

    /// `(δx, δz)`: smallest nonzero kernel weights of `Hz` and `Hx`, searched up to `max_weight`.
    pub fn pure_distance(&self, max_weight: usize) -> (Option<usize>, Option<usize>) {
        assert!(max_weight >= 1, "max_weight must be at least 1");
        (
            search::min_kernel_weight(&self.hz, max_weight).map(|(w, _)| w),
            search::min_kernel_weight(&self.hx, max_weight).map(|(w, _)| w),
        )
    }
}

impl fmt::Debug for CssCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CssCode [[{}, {}]] ({}x{} / {}x{})",
            self.n(),
            self.k(),
            self.hx.rows(),
            self.n(),
            self.hz.rows(),
            self.n()
        )
    }
}

impl PartialEq for CssCode {
    fn eq(&self, other: &Self) -> bool {
        self.hx == other.hx && self.hz == other.hz
    }
}

fn widen(s: &[u32]) -> Vec<usize> {
    s.iter().map(|&i| i as usize).collect()
}

/// Structural parameters of a CSS code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeStats {
    pub n: usize,
    pub k: usize,
    pub m_x: usize,
    pub m_z: usize,
    pub meta_x: usize,
    pub meta_z: usize,
    pub row_weight_x: usize,
    pub row_weight_z: usize,
    pub col_weight_x: usize,
    pub col_weight_z: usize,
}

impl fmt::Display for CodeStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[[{},{}]]", self.n, self.k)?;
        writeln!(f, "X checks: {} (meta-checks {})", self.m_x, self.meta_x)?;
        writeln!(f, "Z checks: {} (meta-checks {})", self.m_z, self.meta_z)?;
        writeln!(
            f,
            "row weight: X {} / Z {}",
            self.row_weight_x, self.row_weight_z
        )?;
        write!(
            f,
            "column weight: X {} / Z {}",
            self.col_weight_x, self.col_weight_z
        )
    }
}

/// Outcome of [`CssCode::search_min_logical`].
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceReport {
    pub searched_up_to: usize,
    pub found_weight: Option<usize>,
    pub multiplicity_x: usize,
    pub multiplicity_y: usize,
    pub multiplicity_z: usize,
    pub witness: Option<PauliVector>,
}

impl fmt::Display for DistanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.found_weight {
            Some(w) => {
                writeln!(f, "d = {w}")?;
                write!(
                    f,
                    "weight-{w} logical errors: {} X, {} Y, {} Z",
                    self.multiplicity_x, self.multiplicity_y, self.multiplicity_z
                )
            }
            None => write!(f, "d >= {}", self.searched_up_to + 1),
        }
    }
}

/// Checked constructor, same as [`CssCode::new`].
pub fn new_css(hx: BitMatrix, hz: BitMatrix) -> Result<CssCode> {
    CssCode::new(hx, hz)
}

/// The 9-qubit Shor code.
pub fn shor_code() -> CssCode {
    let hx = BitMatrix::parse_rows("111111000 000111111");
    let hz = BitMatrix::parse_rows(
        "110000000 011000000 000110000 000011000 000000110 000000011",
    );
    CssCode::new(hx, hz).expect("Shor code commutes")
}

/// The 2-qubit code stabilized by `XX` and `ZZ`.
pub fn bell_pair_code() -> CssCode {
    let h = BitMatrix::ones_row(2);
    CssCode::new(h.clone(), h).expect("XX and ZZ commute")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_qubit_code() {
        let c = bell_pair_code();
        assert_eq!((c.n(), c.k()), (2, 0));
        let st = c.stats();
        assert_eq!((st.meta_x, st.meta_z), (0, 0));
        assert_eq!(c.pure_distance(4), (Some(2), Some(2)));
        assert_eq!(c.search_min_logical(2).found_weight, None);
    }

    #[test]
    fn anticommuting_rejected() {
        let err = CssCode::new(BitMatrix::parse_rows("11"), BitMatrix::parse_rows("10"));
        assert!(matches!(err, Err(Error::NotCommuting { row_x: 0, row_z: 0 })));
        let err = CssCode::new(BitMatrix::parse_rows("11"), BitMatrix::parse_rows("101"));
        assert!(matches!(err, Err(Error::Dimension(_))));
    }

    #[test]
    fn offending_pair_is_reported() {
        let hx = BitMatrix::parse_rows("1100 0011");
        let hz = BitMatrix::parse_rows("1100 0010");
        assert!(matches!(
            CssCode::new(hx, hz),
            Err(Error::NotCommuting { row_x: 1, row_z: 1 })
        ));
    }

    #[test]
    fn shor_code_parameters() {
        let c = shor_code();
        assert_eq!((c.n(), c.k()), (9, 1));
        assert_eq!(c.pure_distance(9), (Some(3), Some(2)));
        let r = c.search_min_logical(9);
        assert_eq!(r.found_weight, Some(3));
        // Z-type logicals need one qubit in each block of three.
        assert_eq!(r.multiplicity_z, 27);
        // X-type logicals are whole blocks.
        assert_eq!(r.multiplicity_x, 3);
    }

    #[test]
    fn syndromes_of_single_z() {
        let c = bell_pair_code();
        let e: PauliVector = "ZI".parse().unwrap();
        let (sx, sz) = c.syndromes(&e);
        assert_eq!(sx.to_bits(), vec![1]);
        assert_eq!(sz.to_bits(), vec![0]);
        let (sx, sz) = c.syndromes(&PauliVector::identity(2));
        assert!(sx.is_zero() && sz.is_zero());
    }

    #[test]
    fn logical_failure_classification() {
        let c = shor_code();
        assert!(!c.is_logical_failure(&PauliVector::identity(9)).unwrap());
        let stab = PauliVector::x_type(c.hx().row(0));
        assert!(!c.is_logical_failure(&stab).unwrap());
        let logical = PauliVector::z_type(BitVector::from_support(9, &[0, 3, 6]));
        assert!(c.is_logical_failure(&logical).unwrap());
        let detected = PauliVector::z_type(BitVector::from_support(9, &[0]));
        assert!(matches!(c.is_logical_failure(&detected), Err(Error::NonZeroSyndrome)));
    }
}
