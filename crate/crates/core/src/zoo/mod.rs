//! Comparison code families: bicycle, hypergraph product, quantum Tanner and
//! random dense CSS codes.

mod tanner;

pub use tanner::{quantum_tanner, CayleyGroupElement, TannerSpec};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitlin::{rank, row_reduce, BitMatrix, BitVector};
use crate::css::CssCode;
use crate::error::{Error, Result};

const MAX_ATTEMPTS: usize = 10_000;

/// Parameters of a bicycle code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BicycleSpec {
    pub n: usize,
    /// Row weight of `H₀ = (C | Cᵀ)`; the circulant has half of it.
    pub row_weight: usize,
    pub k: usize,
    pub seed: u64,
}

impl BicycleSpec {
    pub fn reference(seed: u64) -> Self {
        Self {
            n: 512,
            row_weight: 8,
            k: 174,
            seed,
        }
    }
}

/// Circulant `C` with a random first row of weight `row_weight / 2`,
/// `H₀ = (C | Cᵀ)`, then `k/2` rows
/// removed greedily to keep the column weights level. A draw whose remaining
/// rows are dependent (so `k` would exceed the target) is discarded and `C`
/// is redrawn from the same stream.
pub fn bicycle(spec: &BicycleSpec) -> Result<CssCode> {
    let half = spec.n / 2;
    if spec.n % 2 != 0 || spec.k % 2 != 0 || spec.row_weight % 2 != 0 {
        return Err(Error::InvalidParameter("n, k and row weight must be even".into()));
    }
    if spec.row_weight == 0 || spec.row_weight / 2 >= half || spec.k / 2 >= half {
        return Err(Error::InvalidParameter(format!(
            "row weight {} must be positive, and row weight / 2 and k/2 = {} below n/2 = {half}",
            spec.row_weight,
            spec.k / 2
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let keep = half - spec.k / 2;
    for _ in 0..MAX_ATTEMPTS {
        let first: Vec<usize> = sample(&mut rng, half, spec.row_weight / 2).into_vec();
        let h0 = bicycle_h0(half, &first);
        let h1 = h0.select_rows(&greedy_keep(&h0, keep));
        if rank(&h1) == keep {
            return CssCode::new(h1.clone(), h1);
        }
    }
    Err(Error::SearchExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

/// `(C | Cᵀ)` for the circulant whose first row has the given support.
pub fn bicycle_h0(half: usize, first_row: &[usize]) -> BitMatrix {
    let mut h = BitMatrix::zeros(half, 2 * half);
    for r in 0..half {
        for &c in first_row {
            // C[r][(r + c) mod half] and Cᵀ[r][(r − c) mod half].
            h.set(r, (r + c) % half, true);
            h.set(r, half + (r + half - c) % half, true);
        }
    }
    h
}

/// Indices of the `keep` rows left after deleting rows one at a time, each
/// time minimizing the variance of the column weights (lowest index on ties).
fn greedy_keep(h: &BitMatrix, keep: usize) -> Vec<usize> {
    let supports = h.row_supports();
    let mut weights: Vec<i64> = h.column_weights().into_iter().map(|w| w as i64).collect();
    let mut alive = vec![true; h.rows()];
    let n = h.cols() as i64;
    let mut total: i64 = weights.iter().sum();
    let mut squares: i64 = weights.iter().map(|w| w * w).sum();
    for _ in keep..h.rows() {
        // n²·variance = n·Σw² − (Σw)², compared exactly in integers.
        let mut best: Option<(i64, usize)> = None;
        for (r, supp) in supports.iter().enumerate() {
            if !alive[r] {
                continue;
            }
            let t = total - supp.len() as i64;
            let q = squares + supp.iter().map(|&c| 1 - 2 * weights[c]).sum::<i64>();
            let score = n * q - t * t;
            if best.is_none_or(|(s, _)| score < s) {
                best = Some((score, r));
            }
        }
        let (_, r) = best.expect("rows remain while deleting");
        alive[r] = false;
        for &c in &supports[r] {
            squares += 1 - 2 * weights[c];
            weights[c] -= 1;
        }
        total -= supports[r].len() as i64;
    }
    (0..h.rows()).filter(|&r| alive[r]).collect()
}

/// `Hx = (H⊗I_n | I_m⊗Hᵀ)`, `Hz = (I_n⊗H | Hᵀ⊗I_m)` for a full-rank `m×n` matrix `H`.
pub fn hypergraph_product(h: &BitMatrix) -> Result<CssCode> {
    let (m, n) = (h.rows(), h.cols());
    let r = rank(h);
    if r != m {
        return Err(Error::RankDeficient { rank: r, rows: m });
    }
    let ht = h.transpose();
    let hx = BitMatrix::hstack(&[
        h.kron(&BitMatrix::identity(n)),
        BitMatrix::identity(m).kron(&ht),
    ])?;
    let hz = BitMatrix::hstack(&[
        BitMatrix::identity(n).kron(h),
        ht.kron(&BitMatrix::identity(m)),
    ])?;
    CssCode::new(hx, hz)
}

/// Seed passed to [`find_hpc_seed`] to produce [`HPC_SEED_MATRIX`].
pub const HPC_SEED: u64 = 7;

/// Parity-check matrix of a [21,13,4] code, one string per row.
pub const HPC_SEED_MATRIX: [&str; 8] = [
    "100010110000110011001",
    "000001011110000010000",
    "010101000010111101110",
    "001000001001100100000",
    "001111110001000010010",
    "110101100000000110100",
    "111000110100000001000",
    "110100000101011100001",
];

/// The vendored seed matrix of the hypergraph product instance.
pub fn hpc_seed_matrix() -> BitMatrix {
    BitMatrix::parse_rows(&HPC_SEED_MATRIX.join(" "))
}

/// Random search for a full-rank 8×21 matrix with column weights 2 to 4 whose
/// kernel has minimum distance exactly 4.
pub fn find_hpc_seed(seed: u64) -> Result<BitMatrix> {
    const M: usize = 8;
    const N: usize = 21;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let cols: Vec<Vec<usize>> = (0..N)
            .map(|_| {
                let w = rng.random_range(2..=4);
                let mut s = sample(&mut rng, M, w).into_vec();
                s.sort_unstable();
                s
            })
            .collect();
        let h = BitMatrix::from_row_supports(M, &cols).transpose();
        if rank(&h) == M && classical_distance(&h, 4) == Some(4) {
            return Ok(h);
        }
    }
    Err(Error::SearchExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

/// Minimum weight of a nonzero kernel vector, if at most `max_weight`.
pub fn classical_distance(h: &BitMatrix, max_weight: usize) -> Option<usize> {
    crate::css::min_kernel_weight(h, max_weight).map(|(w, _)| w)
}

/// Random CSS code from an invertible `n×n` matrix `A`: `Hx` is the first `r`
/// rows of `A`, `Hz` rows `r..2r` of `(A⁻¹)ᵀ`.
pub fn random_css(n: usize, r: usize, seed: u64) -> Result<CssCode> {
    if 2 * r > n {
        return Err(Error::InvalidParameter(format!("need 2r <= n, got r = {r}, n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let rows: Vec<BitVector> = (0..n)
            .map(|_| {
                let bits: Vec<u8> = (0..n).map(|_| rng.random::<bool>() as u8).collect();
                BitVector::from_bits(&bits)
            })
            .collect();
        let a = BitMatrix::from_row_vectors(n, &rows);
        let rr = row_reduce(&a);
        if rr.rank < n {
            continue;
        }
        // T·A = I, so T is the inverse.
        let inv_t = rr.transform.transpose();
        let hx = a.row_range(0, r);
        let hz = inv_t.row_range(r, 2 * r);
        return CssCode::new(hx, hz);
    }
    Err(Error::SearchExhausted {
        attempts: MAX_ATTEMPTS,
    })
}
