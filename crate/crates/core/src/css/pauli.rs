use std::fmt;
use std::str::FromStr;

use crate::bitlin::BitVector;
use crate::error::{Error, Result};

/// Single-qubit Pauli operator, phase ignored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Fixed symbol order, also used for hard-decision tie breaks.
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Pauli {
        Self::ALL[i]
    }

    /// `(x, z)` bits of the symplectic representation.
    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// Trace inner product over F4: 1 iff the two operators anticommute.
    #[inline]
    pub fn inner(self, other: Pauli) -> bool {
        let (ax, az) = self.bits();
        let (bx, bz) = other.bits();
        (ax & bz) ^ (az & bx)
    }

    /// Product up to phase.
    #[inline]
    pub fn mul(self, other: Pauli) -> Pauli {
        let (ax, az) = self.bits();
        let (bx, bz) = other.bits();
        Pauli::from_bits(ax ^ bx, az ^ bz)
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// The 4×4 commutation table indexed by `Pauli::index`.
pub const F4_INNER_PRODUCT: [[u8; 4]; 4] = [
    [0, 0, 0, 0],
    [0, 0, 1, 1],
    [0, 1, 0, 1],
    [0, 1, 1, 0],
];

/// An `n`-qubit Pauli error stored as its `(vx, vz)` binary parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliVector {
    vx: BitVector,
    vz: BitVector,
}

impl PauliVector {
    pub fn identity(n: usize) -> Self {
        Self {
            vx: BitVector::zeros(n),
            vz: BitVector::zeros(n),
        }
    }

    pub fn from_parts(vx: BitVector, vz: BitVector) -> Self {
        assert_eq!(vx.len(), vz.len(), "x and z parts differ in length");
        Self { vx, vz }
    }

    pub fn x_type(v: BitVector) -> Self {
        let n = v.len();
        Self::from_parts(v, BitVector::zeros(n))
    }

    pub fn z_type(v: BitVector) -> Self {
        let n = v.len();
        Self::from_parts(BitVector::zeros(n), v)
    }

    pub fn y_type(v: BitVector) -> Self {
        Self::from_parts(v.clone(), v)
    }

    pub fn from_symbols(symbols: &[Pauli]) -> Self {
        let mut p = Self::identity(symbols.len());
        for (j, &s) in symbols.iter().enumerate() {
            p.set(j, s);
        }
        p
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.vx.len()
    }

    pub fn vx(&self) -> &BitVector {
        &self.vx
    }

    pub fn vz(&self) -> &BitVector {
        &self.vz
    }

    #[inline]
    pub fn get(&self, j: usize) -> Pauli {
        Pauli::from_bits(self.vx.get(j), self.vz.get(j))
    }

    #[inline]
    pub fn set(&mut self, j: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.vx.set(j, x);
        self.vz.set(j, z);
    }

    pub fn symbols(&self) -> Vec<Pauli> {
        (0..self.n()).map(|j| self.get(j)).collect()
    }

    /// Number of non-identity positions.
    pub fn weight(&self) -> usize {
        self.vx
            .words()
            .iter()
            .zip(self.vz.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.vx.is_zero() && self.vz.is_zero()
    }

    /// Product up to phase.
    pub fn mul(&self, other: &PauliVector) -> PauliVector {
        PauliVector {
            vx: self.vx.xor(&other.vx),
            vz: self.vz.xor(&other.vz),
        }
    }

    /// Positions carrying a non-identity symbol.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self
            .vx
            .support()
            .into_iter()
            .chain(self.vz.support())
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

impl fmt::Display for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.n() {
            write!(f, "{}", self.get(j).symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliVector({self})")
    }
}

impl FromStr for PauliVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .trim()
            .chars()
            .map(|c| match c {
                'I' | '_' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::Parse {
                    line: 1,
                    msg: format!("bad Pauli symbol {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_symbols(&symbols))
    }
}
