//! Classical and quantum product constructions.
//!
//! Stacked PCMs list their row blocks in the displayed order and qubits are
//! indexed in mixed-radix Kronecker order, first factor most significant.

use crate::bitlin::{BitMatrix, BitVector};
use crate::css::{CodeStats, CssCode};
use crate::error::{Error, Result};

/// `(H₁⊗I / I⊗H₂)`: PCM of the classical product code.
pub fn classical_product_pcm(h1: &BitMatrix, h2: &BitMatrix) -> BitMatrix {
    let top = h1.kron(&BitMatrix::identity(h2.cols()));
    let bottom = BitMatrix::identity(h1.cols()).kron(h2);
    BitMatrix::stack(&[top, bottom]).expect("both blocks have n1·n2 columns")
}

/// `H₁⊗H₂`: PCM of the tensor product code.
pub fn tensor_product_pcm(h1: &BitMatrix, h2: &BitMatrix) -> BitMatrix {
    h1.kron(h2)
}

/// A validated pair of component PCMs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCss {
    hx: BitMatrix,
    hz: BitMatrix,
}

impl ComponentCss {
    pub fn new(hx: BitMatrix, hz: BitMatrix) -> Result<Self> {
        let code = CssCode::new(hx, hz)?;
        Ok(Self::from(&code))
    }

    /// Single-parity-check component with `hx = hz = (1 ⋯ 1)`.
    pub fn spc(len: usize) -> Self {
        assert!(len >= 2 && len % 2 == 0, "SPC component length must be even");
        let h = BitMatrix::ones_row(len);
        Self { hx: h.clone(), hz: h }
    }

    /// Shor(D): `hx = H_D ⊗ 1ᵀ`, `hz = I_D ⊗ H_D` with `H_D` the difference matrix.
    pub fn shor(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("Shor(D) needs D >= 2, got {d}")));
        }
        let hd = difference_matrix(d);
        Self::new(
            hd.kron(&BitMatrix::ones_row(d)),
            BitMatrix::identity(d).kron(&hd),
        )
    }

    pub fn n(&self) -> usize {
        self.hx.cols()
    }

    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }
}

impl From<&CssCode> for ComponentCss {
    fn from(c: &CssCode) -> Self {
        Self {
            hx: c.hx().clone(),
            hz: c.hz().clone(),
        }
    }
}

/// The `(d−1)×d` matrix with rows `e_i + e_{i+1}`.
pub fn difference_matrix(d: usize) -> BitMatrix {
    let rows: Vec<Vec<usize>> = (0..d.saturating_sub(1)).map(|i| vec![i, i + 1]).collect();
    BitMatrix::from_row_supports(d, &rows)
}

/// `Hx = (H₁ˣ⊗I / I⊗H₂ˣ)`, `Hz = H₁ᶻ⊗H₂ᶻ`.
pub fn asymmetric_product(c1: &ComponentCss, c2: &ComponentCss) -> Result<CssCode> {
    let hx = classical_product_pcm(&c1.hx, &c2.hx);
    let hz = tensor_product_pcm(&c1.hz, &c2.hz);
    CssCode::new(hx, hz)
}

/// The symmetric 2-fold product of four components.
pub fn symmetric_product(
    c1: &ComponentCss,
    c2: &ComponentCss,
    c3: &ComponentCss,
    c4: &ComponentCss,
) -> Result<CssCode> {
    let i = |c: &ComponentCss| BitMatrix::identity(c.n());
    let hx = BitMatrix::stack(&[
        BitMatrix::kron_all([&c1.hx, &c2.hx, &i(c3), &i(c4)]),
        BitMatrix::kron_all([&i(c1), &i(c2), &c3.hx, &c4.hx]),
    ])?;
    let hz = BitMatrix::stack(&[
        BitMatrix::kron_all([&c1.hz, &i(c2), &c3.hz, &i(c4)]),
        BitMatrix::kron_all([&i(c1), &c2.hz, &i(c3), &c4.hz]),
    ])?;
    CssCode::new(hx, hz)
}

/// The symmetric D-fold product of `D²` components.
///
/// Block `j` of `Hx` applies components `jD..(j+1)D` (0-based); block `j` of
/// `Hz` applies every component with index `≡ j (mod D)`.
pub fn dfold_product(components: &[ComponentCss], d: usize) -> Result<CssCode> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("D-fold product needs D >= 2, got {d}")));
    }
    if components.len() != d * d {
        return Err(Error::InvalidParameter(format!(
            "D = {d} needs {} components, got {}",
            d * d,
            components.len()
        )));
    }
    let ids: Vec<BitMatrix> = components.iter().map(|c| BitMatrix::identity(c.n())).collect();
    let hx: Vec<BitMatrix> = (0..d)
        .map(|j| {
            BitMatrix::kron_all(
                (0..d * d).map(|l| if l / d == j { &components[l].hx } else { &ids[l] }),
            )
        })
        .collect();
    let hz: Vec<BitMatrix> = (0..d)
        .map(|j| {
            BitMatrix::kron_all(
                (0..d * d).map(|l| if l % d == j { &components[l].hz } else { &ids[l] }),
            )
        })
        .collect();
    CssCode::new(BitMatrix::stack(&hx)?, BitMatrix::stack(&hz)?)
}

/// Parameters of the single-parity-check D-fold family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpcParams {
    pub d: usize,
    pub s: usize,
}

impl SpcParams {
    pub fn new(d: usize, s: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("SPC needs D >= 2, got {d}")));
        }
        if s < 1 {
            return Err(Error::InvalidParameter("SPC needs s >= 1".into()));
        }
        Ok(Self { d, s })
    }

    /// Row weight `s·2^D` of every check.
    pub fn block_length(&self) -> usize {
        self.s << self.d
    }

    /// Whether component `l` (0-based) sits on the diagonal `l = i(D+1)`.
    pub fn is_diagonal(&self, l: usize) -> bool {
        l % (self.d + 1) == 0
    }

    fn component_len(&self, l: usize) -> usize {
        if self.is_diagonal(l) {
            2 * self.s
        } else {
            2
        }
    }
}

/// SPC(D,s): all-ones components of length `2s` on the diagonal and `(1 1)` elsewhere.
pub fn spc(params: SpcParams) -> CssCode {
    let comps: Vec<ComponentCss> = (0..params.d * params.d)
        .map(|l| ComponentCss::spc(params.component_len(l)))
        .collect();
    dfold_product(&comps, params.d).expect("SPC components always commute")
}

/// Closed-form parameters of SPC(D,s), including the pure distances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PredictedStats {
    pub stats: CodeStats,
    pub delta_x: usize,
    pub delta_z: usize,
}

pub fn predict_spc_stats(params: SpcParams) -> PredictedStats {
    let d = params.d as u32;
    let b = params.block_length();
    let n = b.pow(d);
    let m = params.d * b.pow(d - 1);
    let meta = m + (b - 1).pow(d) - n;
    let k = 2 * (b - 1).pow(d) - n;
    let dist = 1usize << d;
    PredictedStats {
        stats: CodeStats {
            n,
            k,
            m_x: m,
            m_z: m,
            meta_x: meta,
            meta_z: meta,
            row_weight_x: b,
            row_weight_z: b,
            col_weight_x: params.d,
            col_weight_z: params.d,
        },
        delta_x: dist,
        delta_z: dist,
    }
}

/// The pair `(w, v)` with `Hx·w = Hz·w = 0`, `Hx·v = Hz·v = 0` and `wᵀv = 1`.
///
/// `w` has weight `2^D`, so either as an X or a Z error it is a minimum-weight
/// logical operator; `v` certifies that `w` is not a stabilizer.
pub fn spc_logical_witnesses(params: SpcParams) -> (BitVector, BitVector) {
    let mut w = BitVector::from_bits(&[1]);
    let mut v = BitVector::from_bits(&[1]);
    for l in 0..params.d * params.d {
        let len = params.component_len(l);
        let (a, b) = if params.is_diagonal(l) {
            (
                BitVector::from_support(len, &[0, 1]),
                BitVector::from_support(len, &[0]),
            )
        } else {
            (
                BitVector::from_support(2, &[0]),
                BitVector::from_support(2, &[0, 1]),
            )
        };
        w = w.kron(&a);
        v = v.kron(&b);
    }
    (w, v)
}
