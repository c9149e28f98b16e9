//! Flat `key = value` pipeline configuration.
//!
//! ```text
//! generator = vdc          # vdc | halton | sobol | random
//! base = 2                 # vdc
//! bases = 2,3              # halton
//! s = 1
//! max_degree = 2           # or: m = 3
//! N = 4096
//! n_inner = 2
//! sigma = 0.1
//! seed = 7
//! theta_target = 2
//! coef.0 = 1.0             # truth coefficient for multi-index (0)
//! coef.1_0 = 0.5           # ... for (1,0) in two dimensions
//! out_of_span_exp = 0.1    # optional amplitude·exp(Σx) term
//! validation_n = 1024
//! direction_file = path/to/new-joe-kuo-6.21201
//! ```
//!
//! Without `coef.*` keys the truth is `Σ_α φ_α / (1 + |α|)` over the basis.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use super::{fit, simulate_responses, validate, FitResult, OutOfSpan, TruthSpec, Validation};
use crate::basis::{graded_index_set, MultiIndex, TensorBasis};
use crate::error::{Error, Result};
use crate::gram::build_design;
use crate::sequences::{generate, DirectionTable, GeneratorSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub generator: GeneratorSpec,
    pub m: Option<usize>,
    pub max_degree: Option<u32>,
    pub n: usize,
    pub n_inner: u32,
    pub sigma: f64,
    pub seed: u64,
    pub theta_target: Option<f64>,
    pub coefficients: BTreeMap<MultiIndex, f64>,
    pub out_of_span: Option<OutOfSpan>,
    pub validation_n: usize,
}

impl PipelineConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut kv: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config {
                    line: k + 1,
                    reason: format!("expected key = value, got {line:?}"),
                });
            };
            let key = key.trim().to_string();
            if kv.insert(key.clone(), (k + 1, value.trim().to_string())).is_some() {
                return Err(Error::Config {
                    line: k + 1,
                    reason: format!("duplicate key {key}"),
                });
            }
        }
        Parser { kv }.build()
    }

    pub fn from_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn basis(&self) -> Result<TensorBasis> {
        TensorBasis::new(
            self.generator.dimension,
            graded_index_set(self.generator.dimension, self.m, self.max_degree)?,
        )
    }

    fn truth(&self, basis: &TensorBasis) -> TruthSpec {
        let coefficients = if self.coefficients.is_empty() {
            basis
                .index_set()
                .iter()
                .map(|mi| (mi.clone(), 1.0 / (1.0 + f64::from(mi.total_degree()))))
                .collect()
        } else {
            self.coefficients.clone()
        };
        TruthSpec {
            coefficients,
            out_of_span: self.out_of_span,
            noise_sigma: self.sigma,
            n_inner: self.n_inner,
            seed: self.seed,
        }
    }
}

struct Parser {
    kv: BTreeMap<String, (usize, String)>,
}

impl Parser {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.kv.remove(key)
    }

    fn parse_opt<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        match self.take(key) {
            None => Ok(None),
            Some((line, v)) => v.parse().map(Some).map_err(|_| Error::Config {
                line,
                reason: format!("cannot parse {key} = {v:?}"),
            }),
        }
    }

    fn required<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        self.parse_opt(key)?.ok_or_else(|| Error::Config {
            line: 0,
            reason: format!("missing key {key}"),
        })
    }

    fn build(mut self) -> Result<PipelineConfig> {
        let kind: String = self.required("generator")?;
        let s: Option<usize> = self.parse_opt("s")?;
        let generator = match kind.as_str() {
            "vdc" => GeneratorSpec::van_der_corput(self.parse_opt("base")?.unwrap_or(2)),
            "halton" => {
                let (line, raw) = self.take("bases").ok_or_else(|| Error::Config {
                    line: 0,
                    reason: "halton needs bases".into(),
                })?;
                let bases = raw
                    .split(',')
                    .map(|b| b.trim().parse::<u64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::Config {
                        line,
                        reason: format!("bad base list {raw:?}"),
                    })?;
                GeneratorSpec::halton(bases)
            }
            "sobol" => {
                let dim = s.unwrap_or(1);
                match self.take("direction_file") {
                    Some((_, path)) => GeneratorSpec::sobol_with_table(
                        dim,
                        Arc::new(DirectionTable::from_file(path)?),
                    ),
                    None => GeneratorSpec::sobol(dim),
                }
            }
            "random" => GeneratorSpec::pseudo_random(
                s.unwrap_or(1),
                self.parse_opt("point_seed")?.unwrap_or(0),
            ),
            other => {
                return Err(Error::Config {
                    line: 0,
                    reason: format!("unknown generator {other:?}"),
                })
            }
        };
        if let Some(s) = s {
            if s != generator.dimension {
                return Err(Error::Config {
                    line: 0,
                    reason: format!(
                        "s = {s} conflicts with generator dimension {}",
                        generator.dimension
                    ),
                });
            }
        }
        let skip = self.parse_opt("skip")?.unwrap_or(0);
        let generator = generator.with_skip(skip);
        generator.validate()?;

        let m = self.parse_opt("m")?;
        let max_degree = self.parse_opt("max_degree")?;
        if m.is_none() && max_degree.is_none() {
            return Err(Error::Config {
                line: 0,
                reason: "one of m or max_degree is required".into(),
            });
        }
        let n: usize = self.required("N")?;
        let validation_n = self.parse_opt("validation_n")?.unwrap_or(n);
        let n_inner = self.parse_opt("n_inner")?.unwrap_or(1);
        let sigma = self.parse_opt("sigma")?.unwrap_or(0.0);
        let seed = self.parse_opt("seed")?.unwrap_or(0);
        let theta_target = self.parse_opt("theta_target")?;
        let out_of_span = self
            .parse_opt::<f64>("out_of_span_exp")?
            .map(|amplitude| OutOfSpan::Exponential { amplitude });

        let mut coefficients = BTreeMap::new();
        let coef_keys: Vec<String> = self
            .kv
            .keys()
            .filter(|k| k.starts_with("coef."))
            .cloned()
            .collect();
        for key in coef_keys {
            let (line, value) = self.take(&key).expect("key listed above");
            let bad = |reason: String| Error::Config { line, reason };
            let indices = key["coef.".len()..]
                .split('_')
                .map(|d| d.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad(format!("bad multi-index in {key}")))?;
            if indices.len() != generator.dimension {
                return Err(bad(format!("{key} does not match dimension")));
            }
            let v = value
                .parse::<f64>()
                .map_err(|_| bad(format!("bad coefficient {value:?}")))?;
            coefficients.insert(MultiIndex::new(indices), v);
        }

        if let Some((key, (line, _))) = self.kv.into_iter().next() {
            return Err(Error::Config {
                line,
                reason: format!("unknown key {key}"),
            });
        }
        Ok(PipelineConfig {
            generator,
            m,
            max_degree,
            n,
            n_inner,
            sigma,
            seed,
            theta_target,
            coefficients,
            out_of_span,
            validation_n,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineResult {
    pub n: usize,
    pub m: usize,
    pub s: usize,
    pub fit: FitResult,
    pub validation: Validation,
    /// `Some(true)` when `κ ≤ theta_target`.
    pub theta_met: Option<bool>,
}

impl PipelineResult {
    /// Header `N,m,s,kappa,rmse,max_abs_error,beta_hat_1..beta_hat_m` and one row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,m,s,kappa,rmse,max_abs_error");
        for j in 1..=self.m {
            let _ = write!(out, ",beta_hat_{j}");
        }
        let _ = write!(
            out,
            "\n{},{},{},{},{},{}",
            self.n, self.m, self.s, self.fit.kappa_used, self.validation.rmse, self.validation.max_abs_error
        );
        for b in &self.fit.beta_hat {
            let _ = write!(out, ",{b}");
        }
        out.push('\n');
        out
    }
}

/// Generates scenarios, simulates responses, fits, and validates on the
/// `validation_n` points that follow the fitting points in the sequence.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<PipelineResult> {
    let basis = cfg.basis()?;
    let truth = cfg.truth(&basis);
    let ps = generate(&cfg.generator, cfg.n)?;
    let y = simulate_responses(&truth, &ps)?;
    let design = build_design(&ps, &basis)?;
    let fit = fit(&design, &y)?;
    let validation_spec = cfg
        .generator
        .clone()
        .with_skip(cfg.generator.skip + cfg.n as u64);
    let vps = generate(&validation_spec, cfg.validation_n)?;
    let validation = validate(&fit, &truth, &basis, &vps)?;
    Ok(PipelineResult {
        n: cfg.n,
        m: basis.len(),
        s: basis.dimension(),
        theta_met: cfg.theta_target.map(|t| fit.kappa_used <= t),
        fit,
        validation,
    })
}
