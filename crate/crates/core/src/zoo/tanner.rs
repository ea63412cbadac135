//! Quantum Tanner code on the left-right Cayley complex of the order-20 group
//! `⟨s,t | s⁴ = t⁵ = 1, ts = st²⟩`.

use std::fmt;
use std::ops::Mul;

use crate::bitlin::BitMatrix;
use crate::build::difference_matrix;
use crate::css::CssCode;
use crate::error::{Error, Result};

/// Group element `s^a t^b` in normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyGroupElement {
    a: u8,
    b: u8,
}

impl CayleyGroupElement {
    pub const ORDER: usize = 20;
    pub const IDENTITY: Self = Self { a: 0, b: 0 };
    pub const S: Self = Self { a: 1, b: 0 };
    pub const T: Self = Self { a: 0, b: 1 };

    pub fn new(a: u8, b: u8) -> Self {
        Self { a: a % 4, b: b % 5 }
    }

    pub fn s_exp(self) -> u8 {
        self.a
    }

    pub fn t_exp(self) -> u8 {
        self.b
    }

    /// Position in the frozen `(a, b)` lexicographic order.
    pub fn index(self) -> usize {
        5 * self.a as usize + self.b as usize
    }

    pub fn from_index(i: usize) -> Self {
        assert!(i < Self::ORDER);
        Self::new((i / 5) as u8, (i % 5) as u8)
    }

    pub fn all() -> impl Iterator<Item = Self> {
        (0..Self::ORDER).map(Self::from_index)
    }

    pub fn pow(self, k: u32) -> Self {
        (0..k).fold(Self::IDENTITY, |acc, _| acc * self)
    }

    pub fn inverse(self) -> Self {
        let c = (4 - self.a) % 4;
        // (a,b)(c,d) = (0, b·2^c + d).
        let d = (5 - (self.b as u32 * (1 << c)) % 5) % 5;
        Self::new(c, d as u8)
    }

    /// Reduce a word given as a product of `(generator, exponent)` factors.
    pub fn word(factors: &[(char, u32)]) -> Self {
        factors.iter().fold(Self::IDENTITY, |acc, &(g, k)| {
            let gen = match g {
                's' => Self::S,
                't' => Self::T,
                other => panic!("unknown generator {other:?}"),
            };
            acc * gen.pow(k)
        })
    }
}

impl Mul for CayleyGroupElement {
    type Output = Self;

    /// `(s^a t^b)(s^c t^d) = s^(a+c) t^(b·2^c + d)`, from `t^b s^c = s^c t^(b·2^c)`.
    fn mul(self, rhs: Self) -> Self {
        let b = (self.b as u32 * (1 << rhs.a) + rhs.b as u32) % 5;
        Self::new((self.a + rhs.a) % 4, b as u8)
    }
}

impl fmt::Display for CayleyGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s^{} t^{}", self.a, self.b)
    }
}

/// Group subsets and local codes of a quantum Tanner code.
#[derive(Clone, Debug)]
pub struct TannerSpec {
    pub a: Vec<CayleyGroupElement>,
    pub b: Vec<CayleyGroupElement>,
    pub h_a: BitMatrix,
    pub h_a_perp: BitMatrix,
    pub h_b: BitMatrix,
    pub h_b_perp: BitMatrix,
}

impl TannerSpec {
    /// The instance with `Δ = 5`, `m = 1` and the subsets
    /// `A = {1, s, s³, t²s², t³s²}`, `B = {1, ts³, t²s, t²s², t⁴s²}`.
    pub fn reference() -> Self {
        type G = CayleyGroupElement;
        let a = vec![
            G::IDENTITY,
            G::word(&[('s', 1)]),
            G::word(&[('s', 3)]),
            G::word(&[('t', 2), ('s', 2)]),
            G::word(&[('t', 3), ('s', 2)]),
        ];
        let b = vec![
            G::IDENTITY,
            G::word(&[('t', 1), ('s', 3)]),
            G::word(&[('t', 2), ('s', 1)]),
            G::word(&[('t', 2), ('s', 2)]),
            G::word(&[('t', 4), ('s', 2)]),
        ];
        let ones = BitMatrix::ones_row(5);
        let diff = difference_matrix(5);
        Self {
            a,
            b,
            h_a: ones.clone(),
            h_a_perp: diff.clone(),
            h_b: diff,
            h_b_perp: ones,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (da, db) = (self.a.len(), self.b.len());
        let closed = |set: &[CayleyGroupElement]| set.iter().all(|x| set.contains(&x.inverse()));
        if !closed(&self.a) || !closed(&self.b) {
            return Err(Error::InvalidParameter("A and B must be closed under inversion".into()));
        }
        for (name, h, cols) in [
            ("H_A", &self.h_a, da),
            ("H_A⊥", &self.h_a_perp, da),
            ("H_B", &self.h_b, db),
            ("H_B⊥", &self.h_b_perp, db),
        ] {
            if h.cols() != cols {
                return Err(Error::Dimension(format!("{name} needs {cols} columns")));
            }
        }
        if !self.h_a.mul(&self.h_a_perp.transpose()).is_zero()
            || !self.h_b.mul(&self.h_b_perp.transpose()).is_zero()
        {
            return Err(Error::InvalidParameter("local codes are not orthogonal".into()));
        }
        Ok(())
    }
}

/// Qubits are the squares `(g, a, b)`, indexed `g·|A||B| + a·|B| + b`. X checks
/// sit on vertices `(g,0,0)` and `(g,1,1)`, Z checks on `(g,0,1)` and `(g,1,0)`,
/// each vertex applying its local code to the 25 incident squares in `(a, b)`
/// order.
pub fn quantum_tanner(spec: &TannerSpec) -> Result<CssCode> {
    type G = CayleyGroupElement;
    spec.validate()?;
    let (da, db) = (spec.a.len(), spec.b.len());
    let n = G::ORDER * da * db;
    let qubit = |g: G, ia: usize, ib: usize| g.index() * da * db + ia * db + ib;

    // Square `(g', a, b)` seen from a vertex `(g, i, j)`.
    let square = |g: G, i: u8, j: u8, a: G, b: G| -> G {
        match (i, j) {
            (0, 0) => g,
            (0, 1) => a.inverse() * g,
            (1, 1) => a.inverse() * g * b.inverse(),
            (1, 0) => g * b.inverse(),
            _ => unreachable!(),
        }
    };

    let vertex_rows = |local: &BitMatrix, i: u8, j: u8| -> Vec<Vec<usize>> {
        let mut rows = Vec::new();
        for g in G::all() {
            let cols: Vec<usize> = (0..da)
                .flat_map(|ia| (0..db).map(move |ib| (ia, ib)))
                .map(|(ia, ib)| qubit(square(g, i, j, spec.a[ia], spec.b[ib]), ia, ib))
                .collect();
            for r in 0..local.rows() {
                let mut support: Vec<usize> =
                    local.row_support(r).into_iter().map(|c| cols[c]).collect();
                support.sort_unstable();
                rows.push(support);
            }
        }
        rows
    };

    let x_local = spec.h_a.kron(&spec.h_b);
    let z_local = spec.h_a_perp.kron(&spec.h_b_perp);
    let mut x_rows = vertex_rows(&x_local, 0, 0);
    x_rows.extend(vertex_rows(&x_local, 1, 1));
    let mut z_rows = vertex_rows(&z_local, 0, 1);
    z_rows.extend(vertex_rows(&z_local, 1, 0));
    CssCode::new(
        BitMatrix::from_row_supports(n, &x_rows),
        BitMatrix::from_row_supports(n, &z_rows),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = CayleyGroupElement;

    #[test]
    fn group_axioms() {
        let all: Vec<G> = G::all().collect();
        assert_eq!(all.len(), 20);
        for &x in &all {
            assert_eq!(x * G::IDENTITY, x);
            assert_eq!(G::IDENTITY * x, x);
            assert_eq!(x * x.inverse(), G::IDENTITY);
            assert_eq!(x.inverse() * x, G::IDENTITY);
            for &y in &all {
                for &z in &all {
                    assert_eq!((x * y) * z, x * (y * z));
                }
            }
        }
    }

    #[test]
    fn defining_relations() {
        assert_eq!(G::S.pow(4), G::IDENTITY);
        assert_eq!(G::T.pow(5), G::IDENTITY);
        assert_eq!(G::T * G::S, G::S * G::T.pow(2));
        assert_ne!(G::S * G::T, G::T * G::S);
    }

    #[test]
    fn word_normal_form() {
        assert_eq!(G::word(&[('t', 2), ('s', 2)]), G::new(2, 3));
    }

    #[test]
    fn reference_spec_is_valid() {
        let spec = TannerSpec::reference();
        spec.validate().unwrap();
        let mut a = spec.a.clone();
        a.sort();
        a.dedup();
        assert_eq!(a.len(), 5);
    }

    #[test]
    fn reference_code_parameters() {
        let c = quantum_tanner(&TannerSpec::reference()).unwrap();
        let st = c.stats();
        assert_eq!((st.n, st.k, st.m_x, st.m_z), (500, 188, 160, 160));
        assert_eq!((c.rank_x(), c.rank_z()), (156, 156));
        assert!(c.hx().row_supports().iter().all(|r| r.len() == 10));
        assert!(c.hz().row_supports().iter().all(|r| r.len() == 10));
        for h in [c.hx(), c.hz()] {
            assert!(h.column_weights().iter().all(|&w| w == 2 || w == 4));
        }
    }
}
