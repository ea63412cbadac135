//! Noise channels and the seeded Monte Carlo engine.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitlin::BitVector;
use crate::css::{CssCode, Pauli, PauliVector};
use crate::decode::{decode_erasure, BpConfig, BpDecoder, TannerGraph};
use crate::error::{Error, Result};
use crate::meta::{ExtendedSyndrome, MetaCheck};

/// Noise model applied independently to every qubit (and syndrome bit).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChannelSpec {
    /// Each qubit is erased with probability `beta` and then fully depolarized.
    Erasure(f64),
    /// X, Y, Z each with probability `epsilon / 3`.
    Depolarizing(f64),
    /// Depolarizing data noise plus syndrome bits flipped with probability `p`.
    DepolarizingWithReadout(f64, f64),
}

impl ChannelSpec {
    pub fn validate(&self) -> Result<()> {
        let (name, v, hi) = match *self {
            ChannelSpec::Erasure(b) => ("beta", b, 1.0),
            ChannelSpec::Depolarizing(e) => ("epsilon", e, 0.75),
            ChannelSpec::DepolarizingWithReadout(e, p) => {
                if !(0.0..=0.5).contains(&p) {
                    return Err(Error::InvalidParameter(format!("p must lie in [0, 1/2], got {p}")));
                }
                ("epsilon", e, 0.75)
            }
        };
        if !(0.0..=hi).contains(&v) {
            return Err(Error::InvalidParameter(format!("{name} must lie in [0, {hi}], got {v}")));
        }
        Ok(())
    }

    pub fn name(&self) -> &'static str {
        match self {
            ChannelSpec::Erasure(_) => "erasure",
            ChannelSpec::Depolarizing(_) => "depolarizing",
            ChannelSpec::DepolarizingWithReadout(..) => "depolarizing-readout",
        }
    }

    /// The channel parameters; the second is 0 when unused.
    pub fn params(&self) -> (f64, f64) {
        match *self {
            ChannelSpec::Erasure(b) => (b, 0.0),
            ChannelSpec::Depolarizing(e) => (e, 0.0),
            ChannelSpec::DepolarizingWithReadout(e, p) => (e, p),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    ErasureMl,
    Bp,
    BpExtended,
}

impl DecoderKind {
    pub fn name(&self) -> &'static str {
        match self {
            DecoderKind::ErasureMl => "erasure-ml",
            DecoderKind::Bp => "bp",
            DecoderKind::BpExtended => "bp-extended",
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "erasure-ml" => Ok(DecoderKind::ErasureMl),
            "bp" => Ok(DecoderKind::Bp),
            "bp-extended" => Ok(DecoderKind::BpExtended),
            _ => Err(Error::Config(format!("unknown decoder {s:?}"))),
        }
    }
}

/// One draw from a channel.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledError {
    pub error: PauliVector,
    /// Erased qubits in increasing order (erasure channel only).
    pub erased: Option<Vec<usize>>,
    /// Read-out flips on the X and Z syndromes (read-out channel only).
    pub readout: Option<(BitVector, BitVector)>,
}

/// Draw an error for `code` from `channel`.
pub fn sample_error<R: Rng + ?Sized>(channel: &ChannelSpec, code: &CssCode, rng: &mut R) -> SampledError {
    let n = code.n();
    let mut error = PauliVector::identity(n);
    match *channel {
        ChannelSpec::Erasure(beta) => {
            let mut erased = Vec::new();
            for q in 0..n {
                if rng.random::<f64>() < beta {
                    erased.push(q);
                    error.set(q, Pauli::from_index(rng.random_range(0..4)));
                }
            }
            SampledError {
                error,
                erased: Some(erased),
                readout: None,
            }
        }
        ChannelSpec::Depolarizing(eps) | ChannelSpec::DepolarizingWithReadout(eps, _) => {
            for q in 0..n {
                if rng.random::<f64>() < eps {
                    error.set(q, Pauli::from_index(rng.random_range(1..4)));
                }
            }
            let readout = match *channel {
                ChannelSpec::DepolarizingWithReadout(_, p) => {
                    let mut flips = |m: usize| {
                        let bits: Vec<u8> = (0..m).map(|_| (rng.random::<f64>() < p) as u8).collect();
                        BitVector::from_bits(&bits)
                    };
                    let fx = flips(code.hx().rows());
                    let fz = flips(code.hz().rows());
                    Some((fx, fz))
                }
                _ => None,
            };
            SampledError {
                error,
                erased: None,
                readout,
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub failed: bool,
    pub converged: bool,
    pub residual_weight: usize,
}

/// Aggregated result of one channel setting.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimPoint {
    pub channel: ChannelSpec,
    pub decoder: DecoderKind,
    pub trials: u64,
    pub failures: u64,
    pub seed: u64,
}

impl SimPoint {
    pub fn rate(&self) -> f64 {
        self.failures as f64 / self.trials as f64
    }

    /// Binomial standard error of [`rate`](Self::rate).
    pub fn stderr(&self) -> f64 {
        let r = self.rate();
        (r * (1.0 - r) / self.trials as f64).sqrt()
    }

    pub fn csv_row(&self, code: &str) -> String {
        let (p1, p2) = self.channel.params();
        format!(
            "{code},{},{},{},{},{},{},{},{},{}",
            self.decoder,
            self.channel.name(),
            sig17(p1),
            sig17(p2),
            self.trials,
            self.failures,
            sig17(self.rate()),
            sig17(self.stderr()),
            self.seed
        )
    }
}

pub const CSV_HEADER: &str = "code,decoder,channel,param1,param2,trials,failures,rate,stderr,seed";

/// Header plus one row per point.
pub fn write_csv<W: Write>(out: &mut W, code: &str, points: &[SimPoint]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for p in points {
        writeln!(out, "{}", p.csv_row(code))?;
    }
    Ok(())
}

fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A code paired with a decoder, ready to run trials.
pub struct Experiment {
    code: Arc<CssCode>,
    decoder: DecoderKind,
    meta: Option<(MetaCheck, MetaCheck)>,
    graph: Option<Arc<TannerGraph>>,
    max_iters: usize,
}

/// Per-thread decoder state.
pub struct Workspace {
    bp: Option<BpDecoder<f64>>,
}

impl Experiment {
    pub fn new(code: CssCode, decoder: DecoderKind) -> Self {
        let code = Arc::new(code);
        let graph = (decoder == DecoderKind::Bp).then(|| Arc::new(TannerGraph::new(&code)));
        Self {
            code,
            decoder,
            meta: None,
            graph,
            max_iters: BpConfig::DEFAULT_MAX_ITERS,
        }
    }

    /// Attach meta-checks for the X and Z checks; required by `bp-extended`.
    pub fn with_metachecks(mut self, mx: MetaCheck, mz: MetaCheck) -> Result<Self> {
        if mx.parent_rows() != self.code.hx().rows() || mz.parent_rows() != self.code.hz().rows() {
            return Err(Error::Config("meta-checks do not match the code".into()));
        }
        if self.decoder == DecoderKind::BpExtended {
            self.graph = Some(Arc::new(TannerGraph::extended(&self.code, &mx, &mz)));
        }
        self.meta = Some((mx, mz));
        Ok(self)
    }

    pub fn with_max_iters(mut self, iters: usize) -> Self {
        self.max_iters = iters;
        self
    }

    pub fn code(&self) -> &CssCode {
        &self.code
    }

    pub fn decoder(&self) -> DecoderKind {
        self.decoder
    }

    fn bp_config(&self, channel: &ChannelSpec) -> BpConfig {
        let (eps, p) = match *channel {
            ChannelSpec::DepolarizingWithReadout(e, p) => (e, p),
            ChannelSpec::Depolarizing(e) | ChannelSpec::Erasure(e) => (e, 0.0),
        };
        BpConfig::new(eps).with_readout(p).with_max_iters(self.max_iters)
    }

    /// Reject decoder/channel combinations that cannot run.
    pub fn check(&self, channel: &ChannelSpec) -> Result<()> {
        channel.validate()?;
        match (self.decoder, channel) {
            (DecoderKind::ErasureMl, ChannelSpec::Erasure(_)) => Ok(()),
            (DecoderKind::ErasureMl, _) => Err(Error::Config("erasure-ml needs the erasure channel".into())),
            (_, ChannelSpec::Erasure(_)) => Err(Error::Config(format!(
                "{} needs a depolarizing channel",
                self.decoder
            ))),
            (DecoderKind::BpExtended, ChannelSpec::Depolarizing(_)) => {
                Err(Error::Config("bp-extended needs a read-out error probability".into()))
            }
            (DecoderKind::BpExtended, _) if self.meta.is_none() => {
                Err(Error::Config("bp-extended needs meta-checks".into()))
            }
            _ => self.bp_config(channel).validate(),
        }
    }

    pub fn workspace(&self, channel: &ChannelSpec) -> Result<Workspace> {
        self.check(channel)?;
        let bp = match &self.graph {
            Some(g) => Some(BpDecoder::new(g.clone(), self.bp_config(channel))?),
            None => None,
        };
        Ok(Workspace { bp })
    }

    /// Sample, decode and classify one trial.
    ///
    /// A trial fails when the residual `error · estimate` on the data qubits
    /// has a nonzero syndrome or is a logical operator.
    pub fn run_trial<R: Rng + ?Sized>(
        &self,
        channel: &ChannelSpec,
        rng: &mut R,
        ws: &mut Workspace,
    ) -> Result<TrialOutcome> {
        let code = &*self.code;
        let sample = sample_error(channel, code, rng);
        let (mut sx, mut sz) = code.syndromes(&sample.error);
        if let Some((fx, fz)) = &sample.readout {
            sx.xor_assign(fx);
            sz.xor_assign(fz);
        }
        let (estimate, converged) = match self.decoder {
            DecoderKind::ErasureMl => {
                let erased = sample.erased.as_deref().unwrap_or(&[]);
                (decode_erasure(code, erased, &sx, &sz)?, true)
            }
            DecoderKind::Bp => {
                let r = ws.bp.as_mut().expect("workspace built for bp").decode(&sx, &sz);
                (r.estimate, r.converged)
            }
            DecoderKind::BpExtended => {
                let (mx, mz) = self.meta.as_ref().expect("checked by Experiment::check");
                let ex = ExtendedSyndrome::new(mx, sx);
                let ez = ExtendedSyndrome::new(mz, sz);
                let r = ws.bp.as_mut().expect("workspace built for bp").decode_extended(
                    &ex.s_prime,
                    &ex.sigma,
                    &ez.s_prime,
                    &ez.sigma,
                );
                (r.estimate, r.converged)
            }
        };
        let residual = sample.error.mul(&estimate);
        let (rx, rz) = code.syndromes(&residual);
        let failed = if rx.is_zero() && rz.is_zero() {
            code.is_logical_failure(&residual)?
        } else {
            true
        };
        Ok(TrialOutcome {
            failed,
            converged,
            residual_weight: residual.weight(),
        })
    }

    /// Run `trials` independent trials in parallel. Trial `t` draws from
    /// [`trial_rng`]`(seed, t)`, so the result does not depend on scheduling.
    pub fn run_point(&self, channel: ChannelSpec, trials: u64, seed: u64) -> Result<SimPoint> {
        self.run_range(&channel, 0..trials, seed).map(|failures| SimPoint {
            channel,
            decoder: self.decoder,
            trials,
            failures,
            seed,
        })
    }

    /// Like [`run_point`](Self::run_point) but stops after the first batch of
    /// `batch` trials that brings the failure count to `min_failures`.
    pub fn run_point_until(
        &self,
        channel: ChannelSpec,
        max_trials: u64,
        min_failures: u64,
        batch: u64,
        seed: u64,
    ) -> Result<SimPoint> {
        let batch = batch.max(1);
        let (mut done, mut failures) = (0, 0);
        while done < max_trials && failures < min_failures {
            let end = (done + batch).min(max_trials);
            failures += self.run_range(&channel, done..end, seed)?;
            done = end;
        }
        Ok(SimPoint {
            channel,
            decoder: self.decoder,
            trials: done,
            failures,
            seed,
        })
    }

    fn run_range(&self, channel: &ChannelSpec, range: std::ops::Range<u64>, seed: u64) -> Result<u64> {
        if range.is_empty() {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        self.check(channel)?;
        range
            .into_par_iter()
            .map_init(
                || self.workspace(channel),
                |ws, t| {
                    let ws = ws.as_mut().map_err(|e| Error::Config(e.to_string()))?;
                    let outcome = self.run_trial(channel, &mut trial_rng(seed, t), ws)?;
                    Ok(outcome.failed as u64)
                },
            )
            .try_reduce(|| 0, |a, b| Ok(a + b))
    }
}
