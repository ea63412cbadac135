use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use prodcss::bitlin::read_alist;
use prodcss::build::{asymmetric_product, dfold_product, spc, symmetric_product, ComponentCss, SpcParams};
use prodcss::meta::{metacheck_from_pcm, spc3_metacheck, spc3_metacheck_z, MetaCheck};
use prodcss::zoo::{
    bicycle, find_hpc_seed, hpc_seed_matrix, hypergraph_product, quantum_tanner, random_css, BicycleSpec,
    TannerSpec,
};
use prodcss::CssCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Spc,
    Asymmetric,
    Symmetric,
    Dfold,
    Shor,
    Bicycle,
    Hpc,
    Tanner,
    RandomCss,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComponentKind {
    Spc,
    Shor,
}

/// Where a code comes from: a named family or a pair of alist files.
#[derive(Args, Debug, Clone)]
pub struct CodeArgs {
    /// Code family.
    #[arg(value_enum)]
    pub family: Option<Family>,

    /// Code family (same as the positional argument).
    #[arg(long = "code-family", value_enum, conflicts_with = "family")]
    pub code_family: Option<Family>,

    /// Number of product factors (spc, dfold) or Shor distance (shor).
    #[arg(long = "D")]
    pub d: Option<usize>,

    /// Scale of the SPC components, which have length s·2^D.
    #[arg(long = "s")]
    pub s: Option<usize>,

    /// Component used by the asymmetric, symmetric and dfold families.
    #[arg(long, value_enum, default_value = "spc")]
    pub component: ComponentKind,

    /// SPC component length, or Shor component distance.
    #[arg(long, default_value_t = 2)]
    pub len: usize,

    /// Seed for the randomized families.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Block length (bicycle, random-css).
    #[arg(long)]
    pub n: Option<usize>,

    /// Number of logical qubits (bicycle).
    #[arg(long)]
    pub k: Option<usize>,

    /// Row weight of the bicycle check matrix.
    #[arg(long = "row-weight")]
    pub row_weight: Option<usize>,

    /// Rows per check matrix (random-css).
    #[arg(long)]
    pub r: Option<usize>,

    /// X check matrix in alist format (instead of a family).
    #[arg(long, requires = "hz", conflicts_with_all = ["family", "code_family"])]
    pub hx: Option<PathBuf>,

    /// Z check matrix in alist format.
    #[arg(long, requires = "hx")]
    pub hz: Option<PathBuf>,
}

/// A code together with the label used in reports and CSV rows.
pub struct NamedCode {
    pub name: String,
    pub code: CssCode,
    pub spc: Option<SpcParams>,
}

impl CodeArgs {
    pub fn family(&self) -> Option<Family> {
        self.family.or(self.code_family)
    }

    pub fn spc_params(&self) -> Result<SpcParams> {
        Ok(SpcParams::new(self.d.unwrap_or(3), self.s.unwrap_or(1))?)
    }

    fn component(&self) -> Result<ComponentCss> {
        Ok(match self.component {
            ComponentKind::Spc => {
                if self.len < 2 || self.len % 2 != 0 {
                    bail!(prodcss::Error::InvalidParameter(format!(
                        "SPC component length must be even and at least 2, got {}",
                        self.len
                    )));
                }
                ComponentCss::spc(self.len)
            }
            ComponentKind::Shor => ComponentCss::shor(self.len)?,
        })
    }

    pub fn load(&self) -> Result<NamedCode> {
        if let (Some(hx), Some(hz)) = (&self.hx, &self.hz) {
            let read = |p: &PathBuf| -> Result<_> {
                let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                Ok(read_alist(&text)?)
            };
            let code = CssCode::new(read(hx)?, read(hz)?)?;
            return Ok(NamedCode {
                name: "file".into(),
                code,
                spc: None,
            });
        }
        let Some(family) = self.family() else {
            bail!(prodcss::Error::Config("give a code family or --hx/--hz files".into()));
        };
        let mut spc_params = None;
        let (name, code) = match family {
            Family::Spc => {
                let p = self.spc_params()?;
                spc_params = Some(p);
                (format!("spc({},{})", p.d, p.s), spc(p))
            }
            Family::Asymmetric => {
                let c = self.component()?;
                (format!("asymmetric({})", self.component_label()), asymmetric_product(&c, &c)?)
            }
            Family::Symmetric => {
                let c = self.component()?;
                (format!("symmetric({})", self.component_label()), symmetric_product(&c, &c, &c, &c)?)
            }
            Family::Dfold => {
                let d = self.d.unwrap_or(2);
                let c = self.component()?;
                let parts = vec![c; d * d];
                (format!("dfold({d},{})", self.component_label()), dfold_product(&parts, d)?)
            }
            Family::Shor => {
                let d = self.d.unwrap_or(3);
                let c = ComponentCss::shor(d)?;
                (format!("shor({d})"), CssCode::new(c.hx().clone(), c.hz().clone())?)
            }
            Family::Bicycle => {
                let mut spec = BicycleSpec::reference(self.seed.unwrap_or(1));
                spec.n = self.n.unwrap_or(spec.n);
                spec.k = self.k.unwrap_or(spec.k);
                spec.row_weight = self.row_weight.unwrap_or(spec.row_weight);
                (format!("bicycle(seed={})", spec.seed), bicycle(&spec)?)
            }
            Family::Hpc => {
                let (label, h) = match self.seed {
                    Some(seed) => (format!("hpc(seed={seed})"), find_hpc_seed(seed)?),
                    None => ("hpc".to_string(), hpc_seed_matrix()),
                };
                (label, hypergraph_product(&h)?)
            }
            Family::Tanner => ("tanner".into(), quantum_tanner(&TannerSpec::reference())?),
            Family::RandomCss => {
                let (n, r, seed) = (self.n.unwrap_or(512), self.r.unwrap_or(169), self.seed.unwrap_or(1));
                (format!("random-css(seed={seed})"), random_css(n, r, seed)?)
            }
        };
        Ok(NamedCode {
            name,
            code,
            spc: spc_params,
        })
    }

    fn component_label(&self) -> String {
        match self.component {
            ComponentKind::Spc => format!("spc{}", self.len),
            ComponentKind::Shor => format!("shor{}", self.len),
        }
    }
}

impl NamedCode {
    /// Sparse structured meta-checks for SPC(3,s), otherwise a basis from elimination.
    pub fn metachecks(&self) -> Result<(MetaCheck, MetaCheck)> {
        match self.spc {
            Some(p) if p.d == 3 => Ok((spc3_metacheck(p.s)?, spc3_metacheck_z(p.s)?)),
            _ => Ok((metacheck_from_pcm(self.code.hx()), metacheck_from_pcm(self.code.hz()))),
        }
    }
}
