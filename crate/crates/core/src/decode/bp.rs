use std::sync::Arc;

use num_traits::Float;

use super::graph::{EdgeKind, TannerGraph};
use crate::bitlin::BitVector;
use crate::css::{Pauli, PauliVector};
use crate::error::{Error, Result};

/// Decoder settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BpConfig {
    /// Depolarizing probability assumed by the qubit priors.
    pub epsilon: f64,
    /// Read-out flip probability assumed by the read-out priors.
    pub p_readout: f64,
    pub max_iters: usize,
    /// Bound on LLR magnitudes; a prior at the bound is treated as certain.
    pub llr_clamp: f64,
}

impl BpConfig {
    pub const DEFAULT_MAX_ITERS: usize = 64;
    pub const DEFAULT_CLAMP: f64 = 30.0;

    pub fn new(epsilon: f64) -> Self {
        Self {
            epsilon,
            p_readout: 0.0,
            max_iters: Self::DEFAULT_MAX_ITERS,
            llr_clamp: Self::DEFAULT_CLAMP,
        }
    }

    pub fn with_readout(mut self, p: f64) -> Self {
        self.p_readout = p;
        self
    }

    pub fn with_max_iters(mut self, iters: usize) -> Self {
        self.max_iters = iters;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..0.75).contains(&self.epsilon) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must lie in [0, 3/4), got {}",
                self.epsilon
            )));
        }
        if !(0.0..0.5).contains(&self.p_readout) {
            return Err(Error::InvalidParameter(format!(
                "read-out probability must lie in [0, 1/2), got {}",
                self.p_readout
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be at least 1".into()));
        }
        if self.llr_clamp.is_nan() || self.llr_clamp <= 0.0 {
            return Err(Error::InvalidParameter("llr_clamp must be positive".into()));
        }
        Ok(())
    }

    /// Prior LLR `log(ε / 3(1−ε))` of each non-identity symbol, clamped.
    pub fn qubit_prior(&self) -> f64 {
        let l = (self.epsilon / (3.0 * (1.0 - self.epsilon))).ln();
        l.clamp(-self.llr_clamp, self.llr_clamp)
    }

    /// Prior LLR `log((1−p)/p)` of a read-out bit, clamped.
    pub fn readout_prior(&self) -> f64 {
        let l = ((1.0 - self.p_readout) / self.p_readout).ln();
        l.clamp(-self.llr_clamp, self.llr_clamp)
    }

    /// First variable-to-check message, `log((3−2ε)/2ε)`.
    pub fn initial_message(&self) -> f64 {
        let p = self.qubit_prior();
        maxs(0.0, p) - maxs(p, p)
    }
}

/// `log(eᵃ + eᵇ)` in the overflow-free form.
#[inline]
pub fn maxs<F: Float>(a: F, b: F) -> F {
    a.max(b) + (-(a - b).abs()).exp().ln_1p()
}

/// Decoder output.
#[derive(Clone, Debug, PartialEq)]
pub struct BpResult {
    pub estimate: PauliVector,
    /// Estimated read-out flips, X checks first. Empty unless decoding the extended graph.
    pub readout_estimate: BitVector,
    pub converged: bool,
    pub iterations_used: usize,
}

/// Flooding quaternary belief propagation over a [`TannerGraph`].
///
/// The graph is shared; each decoder owns its message buffers.
pub struct BpDecoder<F: Float> {
    graph: Arc<TannerGraph>,
    cfg: BpConfig,
    clamp: F,
    qubit_prior: F,
    readout_prior: F,
    v2c: Vec<F>,
    c2v: Vec<F>,
    factors: Vec<F>,
    suffix: Vec<F>,
    // Per-qubit totals for X, Y, Z; I is the zero reference.
    totals: Vec<[F; 3]>,
    readout_totals: Vec<F>,
    syndrome: Vec<bool>,
    estimate: Vec<Pauli>,
    readout: Vec<bool>,
}

impl<F: Float> BpDecoder<F> {
    pub fn new(graph: Arc<TannerGraph>, cfg: BpConfig) -> Result<Self> {
        cfg.validate()?;
        let c = |x: f64| F::from(x).expect("float conversion");
        let edges = graph.edges();
        let checks = graph.checks();
        let max_deg = (0..checks).map(|i| graph.check_edges(i).len()).max().unwrap_or(0);
        Ok(Self {
            clamp: c(cfg.llr_clamp),
            qubit_prior: c(cfg.qubit_prior()),
            readout_prior: c(cfg.readout_prior()),
            v2c: vec![F::zero(); edges],
            c2v: vec![F::zero(); edges],
            factors: vec![F::zero(); max_deg],
            suffix: vec![F::zero(); max_deg + 1],
            totals: vec![[F::zero(); 3]; graph.qubits()],
            readout_totals: vec![F::zero(); graph.readout_bits()],
            syndrome: vec![false; checks],
            estimate: vec![Pauli::I; graph.qubits()],
            readout: vec![false; graph.readout_bits()],
            graph,
            cfg,
        })
    }

    pub fn graph(&self) -> &TannerGraph {
        &self.graph
    }

    pub fn config(&self) -> &BpConfig {
        &self.cfg
    }

    /// Check-to-variable messages of the last iteration, indexed by edge.
    pub fn check_messages(&self) -> &[F] {
        &self.c2v
    }

    /// Variable-to-check messages of the last iteration, indexed by edge.
    pub fn variable_messages(&self) -> &[F] {
        &self.v2c
    }

    /// Decode on a plain graph: `sx = Hx·vz`, `sz = Hz·vx`.
    pub fn decode(&mut self, sx: &BitVector, sz: &BitVector) -> BpResult {
        assert!(!self.graph.is_extended(), "use decode_extended on an extended graph");
        let (mx, mz) = self.graph.check_rows();
        assert_eq!((sx.len(), sz.len()), (mx, mz), "syndrome lengths do not match the code");
        for i in 0..mx {
            self.syndrome[i] = sx.get(i);
        }
        for i in 0..mz {
            self.syndrome[mx + i] = sz.get(i);
        }
        self.run()
    }

    /// Decode on an extended graph from measured syndromes and meta-syndromes.
    pub fn decode_extended(
        &mut self,
        sx: &BitVector,
        sigma_x: &BitVector,
        sz: &BitVector,
        sigma_z: &BitVector,
    ) -> BpResult {
        assert!(self.graph.is_extended(), "decode_extended needs an extended graph");
        let (mx, mz) = self.graph.check_rows();
        assert_eq!((sx.len(), sz.len()), (mx, mz), "syndrome lengths do not match the code");
        let meta_x = sigma_x.len();
        assert_eq!(mx + mz + meta_x + sigma_z.len(), self.graph.checks());
        let bits = sx
            .to_bits()
            .into_iter()
            .chain(sz.to_bits())
            .chain(sigma_x.to_bits())
            .chain(sigma_z.to_bits());
        for (slot, b) in self.syndrome.iter_mut().zip(bits) {
            *slot = b == 1;
        }
        self.run()
    }

    fn run(&mut self) -> BpResult {
        self.initialize();
        let mut converged = false;
        let mut iters = 0;
        while iters < self.cfg.max_iters {
            iters += 1;
            self.check_update();
            self.variable_update();
            if self.satisfies_syndrome() {
                converged = true;
                break;
            }
        }
        self.result(converged, iters)
    }

    fn initialize(&mut self) {
        let l0 = self.quaternary_to_binary(EdgeKind::X, [self.qubit_prior; 3]);
        for e in 0..self.graph.edges() {
            let v = self.graph.edge_var(e);
            self.v2c[e] = if v < self.graph.qubits() {
                l0
            } else {
                self.readout_prior
            };
        }
    }

    #[inline]
    fn tanh_factor(&self, l: F) -> F {
        if l >= self.clamp {
            F::one()
        } else if l <= -self.clamp {
            -F::one()
        } else {
            (l / (F::one() + F::one())).tanh()
        }
    }

    pub(crate) fn check_update(&mut self) {
        let two = F::one() + F::one();
        let limit = F::one() - F::from(1e-15).unwrap();
        for c in 0..self.graph.checks() {
            let range = self.graph.check_edges(c);
            let deg = range.len();
            for (k, e) in range.clone().enumerate() {
                self.factors[k] = self.tanh_factor(self.v2c[e]);
            }
            self.suffix[deg] = F::one();
            for k in (0..deg).rev() {
                self.suffix[k] = self.suffix[k + 1] * self.factors[k];
            }
            let sign = if self.syndrome[c] { -F::one() } else { F::one() };
            let mut prefix = F::one();
            for (k, e) in range.enumerate() {
                let prod = (prefix * self.suffix[k + 1]).max(-limit).min(limit);
                let l = sign * two * prod.atanh();
                self.c2v[e] = l.max(-self.clamp).min(self.clamp);
                prefix = prefix * self.factors[k];
            }
        }
    }

    pub(crate) fn variable_update(&mut self) {
        let n = self.graph.qubits();
        for j in 0..n {
            let mut t = [self.qubit_prior; 3];
            for &e in self.graph.var_edges(j) {
                let e = e as usize;
                add_check_message(&mut t, self.graph.edge_kind(e), self.c2v[e], F::one());
            }
            self.totals[j] = t;
            for &e in self.graph.var_edges(j) {
                let e = e as usize;
                let kind = self.graph.edge_kind(e);
                let mut q = t;
                add_check_message(&mut q, kind, self.c2v[e], -F::one());
                self.v2c[e] = self.quaternary_to_binary(kind, q);
            }
            self.estimate[j] = hard_decision(t);
        }
        let certain = self.readout_prior.abs() >= self.clamp;
        for r in 0..self.graph.readout_bits() {
            let v = n + r;
            let total = if certain {
                self.readout_prior
            } else {
                self.graph
                    .var_edges(v)
                    .iter()
                    .fold(self.readout_prior, |acc, &e| acc + self.c2v[e as usize])
            };
            self.readout_totals[r] = total;
            for &e in self.graph.var_edges(v) {
                let e = e as usize;
                self.v2c[e] = if certain { total } else { total - self.c2v[e] };
            }
            self.readout[r] = total < F::zero();
        }
    }

    /// `maxs` over the commuting symbols minus `maxs` over the anticommuting ones.
    #[inline]
    fn quaternary_to_binary(&self, kind: EdgeKind, q: [F; 3]) -> F {
        let [x, y, z] = q;
        match kind {
            EdgeKind::X => maxs(F::zero(), x) - maxs(y, z),
            EdgeKind::Z => maxs(F::zero(), z) - maxs(x, y),
            EdgeKind::Binary => unreachable!("binary edges carry scalar messages"),
        }
    }

    fn satisfies_syndrome(&self) -> bool {
        let n = self.graph.qubits();
        (0..self.graph.checks()).all(|c| {
            let mut parity = false;
            for e in self.graph.check_edges(c) {
                let v = self.graph.edge_var(e);
                parity ^= if v < n {
                    self.graph.edge_kind(e).anticommutes(self.estimate[v])
                } else {
                    self.readout[v - n]
                };
            }
            parity == self.syndrome[c]
        })
    }

    fn result(&self, converged: bool, iterations_used: usize) -> BpResult {
        let readout = BitVector::from_support(
            self.readout.len(),
            &(0..self.readout.len()).filter(|&i| self.readout[i]).collect::<Vec<_>>(),
        );
        BpResult {
            estimate: PauliVector::from_symbols(&self.estimate),
            readout_estimate: readout,
            converged,
            iterations_used,
        }
    }
}

/// Add `scale·conv(L)`: `−L` on the symbols anticommuting with the edge label.
#[inline]
fn add_check_message<F: Float>(t: &mut [F; 3], kind: EdgeKind, l: F, scale: F) {
    let d = -l * scale;
    match kind {
        EdgeKind::X => {
            t[1] = t[1] + d;
            t[2] = t[2] + d;
        }
        EdgeKind::Z => {
            t[0] = t[0] + d;
            t[1] = t[1] + d;
        }
        EdgeKind::Binary => unreachable!("qubits only have X and Z edges"),
    }
}

/// Argmax over `(I, X, Y, Z) = (0, t)`; the first maximum wins.
#[inline]
fn hard_decision<F: Float>(t: [F; 3]) -> Pauli {
    let mut best = Pauli::I;
    let mut value = F::zero();
    for (k, &v) in t.iter().enumerate() {
        if v > value {
            best = Pauli::from_index(k + 1);
            value = v;
        }
    }
    best
}
