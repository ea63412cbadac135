//! Maximum-likelihood erasure decoding and quaternary belief propagation.

mod bp;
mod graph;

pub use bp::{maxs, BpConfig, BpDecoder, BpResult};
pub use graph::{EdgeKind, TannerGraph};

use std::sync::Arc;

use crate::bitlin::{rank, solve, BitVector};
use crate::css::{CssCode, PauliVector};
use crate::error::{Error, Result};
use crate::meta::{ExtendedSyndrome, MetaCheck};

/// Some Pauli error supported on `erased` with syndromes `(sx, sz)`.
///
/// The X part solves `Hz[:, erased]·x = sz` and the Z part solves
/// `Hx[:, erased]·z = sx`, with free variables set to zero. On the erasure
/// channel every such solution is equally likely, so this is an ML decoder.
pub fn decode_erasure(
    code: &CssCode,
    erased: &[usize],
    sx: &BitVector,
    sz: &BitVector,
) -> Result<PauliVector> {
    let n = code.n();
    let x_part = solve(&code.hz().select_columns(erased), sz).ok_or(Error::NoErasureSolution)?;
    let z_part = solve(&code.hx().select_columns(erased), sx).ok_or(Error::NoErasureSolution)?;
    let lift = |v: &BitVector| {
        let support: Vec<usize> = v.support().into_iter().map(|i| erased[i]).collect();
        BitVector::from_support(n, &support)
    };
    Ok(PauliVector::from_parts(lift(&x_part), lift(&z_part)))
}

/// Numbers of independent logical X and Z operators supported on `erased`.
///
/// Given the syndrome, `2^(jx + jz)` cosets are equally likely, so any decoder
/// of a fully depolarized erasure succeeds with probability `2^−(jx + jz)`.
pub fn erased_logicals(code: &CssCode, erased: &[usize]) -> (usize, usize) {
    let mut inside = vec![false; code.n()];
    for &q in erased {
        inside[q] = true;
    }
    let outside: Vec<usize> = (0..code.n()).filter(|&q| !inside[q]).collect();
    // dim{x ∈ ker H supported on E} − dim{stabilizers from G supported on E}.
    let count = |h: &crate::bitlin::BitMatrix, g: &crate::bitlin::BitMatrix, rank_g: usize| {
        let kernel = erased.len() - rank(&h.select_columns(erased));
        let stabilizers = rank_g - rank(&g.select_columns(&outside));
        kernel - stabilizers
    };
    (
        count(code.hz(), code.hx(), code.rank_x()),
        count(code.hx(), code.hz(), code.rank_z()),
    )
}

/// One-shot plain BP in double precision.
pub fn bp_decode(code: &CssCode, sx: &BitVector, sz: &BitVector, cfg: BpConfig) -> Result<BpResult> {
    let mut dec = BpDecoder::<f64>::new(Arc::new(TannerGraph::new(code)), cfg)?;
    Ok(dec.decode(sx, sz))
}

/// One-shot BP on the extended graph with read-out bits and meta-checks.
pub fn bp_decode_extended(
    code: &CssCode,
    meta_x: &MetaCheck,
    meta_z: &MetaCheck,
    sx: &ExtendedSyndrome,
    sz: &ExtendedSyndrome,
    cfg: BpConfig,
) -> Result<BpResult> {
    let graph = TannerGraph::extended(code, meta_x, meta_z);
    let mut dec = BpDecoder::<f64>::new(Arc::new(graph), cfg)?;
    Ok(dec.decode_extended(&sx.s_prime, &sx.sigma, &sz.s_prime, &sz.sigma))
}
