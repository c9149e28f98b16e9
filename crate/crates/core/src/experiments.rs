//! The four conditioning experiments: κ − 1 against the QMC rate (fig1),
//! κ against basis size (fig2), V_max against basis size (fig3) and the
//! effect of the van der Corput base (fig4).
//!
//! All runs are one-dimensional with graded shifted Legendre bases. Rows
//! are computed in parallel and returned in key order.

use std::fmt;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::basis::TensorBasis;
use crate::error::{Error, Result};
use crate::gram::GramReport;
use crate::sequences::{generate, GeneratorSpec, PointSet};
use crate::variation::{v_max, v_max_expanded, VariationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 4] = [Self::Fig1, Self::Fig2, Self::Fig3, Self::Fig4];

    pub fn name(self) -> &'static str {
        match self {
            Self::Fig1 => "fig1",
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
        }
    }
}

impl std::str::FromStr for ExperimentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown experiment {s:?}")))
    }
}

/// Inclusive range with stride.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub start: usize,
    pub end: usize,
    pub stride: usize,
}

impl Range {
    pub fn new(start: usize, end: usize, stride: usize) -> Self {
        Self { start, end, stride }
    }

    pub fn values(&self) -> Vec<usize> {
        (self.start..=self.end).step_by(self.stride.max(1)).collect()
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..={} step {}", self.start, self.end, self.stride)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub id: ExperimentId,
    /// Scenario counts (fig1, fig4).
    pub n_range: Range,
    /// Fixed scenario count (fig2).
    pub n_fixed: usize,
    /// Basis sizes (fig2, fig3); fixed basis size for fig1/fig4 is `m_fixed`.
    pub m_range: Range,
    pub m_fixed: usize,
    /// van der Corput base (fig1–fig3).
    pub base: u64,
    /// Bases compared in fig4.
    pub bases: Vec<u64>,
    /// fig3 only: add the monomial-expansion column.
    pub include_expanded: bool,
}

impl ExperimentConfig {
    /// Setups of the published experiments.
    pub fn defaults(id: ExperimentId) -> Self {
        let base = Self {
            id,
            n_range: Range::new(10, 5000, 10),
            n_fixed: 200,
            m_range: Range::new(1, 45, 1),
            m_fixed: 3,
            base: 2,
            bases: vec![2, 3, 5, 7, 11, 16],
            include_expanded: false,
        };
        match id {
            ExperimentId::Fig3 => Self {
                m_range: Range::new(1, 25, 1),
                ..base
            },
            _ => base,
        }
    }

    /// Human-readable dump of the parameters that matter for `id`.
    pub fn describe(&self) -> String {
        match self.id {
            ExperimentId::Fig1 => format!(
                "fig1: vdc base {}, m = {} (degree <= {}), N = {}",
                self.base,
                self.m_fixed,
                self.m_fixed - 1,
                self.n_range
            ),
            ExperimentId::Fig2 => format!(
                "fig2: vdc base {}, N = {}, m = {} (degree <= m - 1)",
                self.base, self.n_fixed, self.m_range
            ),
            ExperimentId::Fig3 => format!(
                "fig3: V_max of graded 1D basis, m = {}",
                self.m_range
            ),
            ExperimentId::Fig4 => format!(
                "fig4: vdc bases {:?}, m = {} (degree <= {}), N = {}",
                self.bases,
                self.m_fixed,
                self.m_fixed - 1,
                self.n_range
            ),
        }
    }

    fn check(&self) -> Result<()> {
        if self.n_range.values().iter().any(|&n| n < 2) && matches!(self.id, ExperimentId::Fig1 | ExperimentId::Fig4) {
            return Err(Error::InvalidArgument("N values must be at least 2".into()));
        }
        if self.m_fixed == 0 || self.m_range.start == 0 {
            return Err(Error::InvalidArgument("basis sizes must be at least 1".into()));
        }
        Ok(())
    }
}

/// `defaults` for every experiment, one line each.
pub fn print_defaults() -> String {
    ExperimentId::ALL
        .iter()
        .map(|&id| ExperimentConfig::defaults(id).describe() + "\n")
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig1Row {
    pub n: usize,
    pub kappa_minus_1: f64,
    /// `(κ - 1) / (N⁻¹ ln N)`.
    pub quotient: f64,
}

fn kappa_rows(points: &PointSet, basis: &TensorBasis, ns: &[usize]) -> Result<Vec<(usize, f64)>> {
    ns.par_iter()
        .map(|&n| {
            let report = GramReport::compute(&points.prefix(n), basis, None)?;
            Ok((n, report.kappa))
        })
        .collect()
}

pub fn run_fig1(cfg: &ExperimentConfig) -> Result<Vec<Fig1Row>> {
    cfg.check()?;
    let ns = cfg.n_range.values();
    let largest = ns.iter().copied().max().unwrap_or(0);
    let points = generate(&GeneratorSpec::van_der_corput(cfg.base), largest)?;
    let basis = TensorBasis::graded(1, cfg.m_fixed)?;
    Ok(kappa_rows(&points, &basis, &ns)?
        .into_iter()
        .map(|(n, kappa)| {
            let nf = n as f64;
            Fig1Row {
                n,
                kappa_minus_1: kappa - 1.0,
                quotient: (kappa - 1.0) / (nf.ln() / nf),
            }
        })
        .collect())
}

pub fn fig1_csv(rows: &[Fig1Row]) -> String {
    let mut out = String::from("N,kappa_minus_1,quotient\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.n, r.kappa_minus_1, r.quotient);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramStatus {
    Ok,
    /// Smallest computed eigenvalue is not positive.
    Singular,
}

impl fmt::Display for GramStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GramStatus::Ok => "ok",
            GramStatus::Singular => "singular",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig2Row {
    pub m: usize,
    pub n: usize,
    pub kappa: f64,
    pub quotient_by_m: f64,
    /// `(κ - 1) / (N⁻¹ ln N)`.
    pub quotient_by_rate: f64,
    pub status: GramStatus,
}

pub fn run_fig2(cfg: &ExperimentConfig) -> Result<Vec<Fig2Row>> {
    cfg.check()?;
    let n = cfg.n_fixed;
    let points = generate(&GeneratorSpec::van_der_corput(cfg.base), n)?;
    let nf = n as f64;
    cfg.m_range
        .values()
        .into_par_iter()
        .map(|m| {
            let basis = TensorBasis::graded(1, m)?;
            let report = GramReport::compute(&points, &basis, None)?;
            let status = if report.is_positive_definite() {
                GramStatus::Ok
            } else {
                GramStatus::Singular
            };
            Ok(Fig2Row {
                m,
                n,
                kappa: report.kappa,
                quotient_by_m: report.kappa / m as f64,
                quotient_by_rate: (report.kappa - 1.0) / (nf.ln() / nf),
                status,
            })
        })
        .collect()
}

pub fn fig2_csv(rows: &[Fig2Row]) -> String {
    let mut out = String::from("m,kappa,quotient_by_m,quotient_by_rate,status\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.m, r.kappa, r.quotient_by_m, r.quotient_by_rate, r.status
        );
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig3Row {
    pub m: usize,
    pub v_max: f64,
    pub v_max_expanded: Option<f64>,
}

/// Largest entry of the leading `m × m` block.
fn leading_max(report: &VariationReport, m: usize) -> f64 {
    let mut best = 0.0f64;
    for i in 0..m {
        for j in 0..m {
            best = best.max(report.get(i, j));
        }
    }
    best
}

/// Graded bases are nested, so one pair sweep at the largest `m` serves
/// every row.
pub fn run_fig3(cfg: &ExperimentConfig) -> Result<Vec<Fig3Row>> {
    cfg.check()?;
    let ms = cfg.m_range.values();
    let largest = ms.iter().copied().max().unwrap_or(1);
    let basis = TensorBasis::graded(1, largest)?;
    let stable = v_max(&basis);
    let expanded = if cfg.include_expanded {
        Some(v_max_expanded(&basis)?)
    } else {
        None
    };
    Ok(ms
        .into_iter()
        .map(|m| Fig3Row {
            m,
            v_max: leading_max(&stable, m),
            v_max_expanded: expanded.as_ref().map(|r| leading_max(r, m)),
        })
        .collect())
}

pub fn fig3_csv(rows: &[Fig3Row]) -> String {
    let expanded = rows.iter().any(|r| r.v_max_expanded.is_some());
    let mut out = String::from(if expanded {
        "m,v_max,v_max_expanded\n"
    } else {
        "m,v_max\n"
    });
    for r in rows {
        match r.v_max_expanded {
            Some(e) if expanded => {
                let _ = writeln!(out, "{},{},{}", r.m, r.v_max, e);
            }
            _ => {
                let _ = writeln!(out, "{},{}", r.m, r.v_max);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig4Row {
    pub base: u64,
    pub n: usize,
    pub kappa_minus_1: f64,
}

pub fn run_fig4(cfg: &ExperimentConfig) -> Result<Vec<Fig4Row>> {
    cfg.check()?;
    let ns = cfg.n_range.values();
    let largest = ns.iter().copied().max().unwrap_or(0);
    let basis = TensorBasis::graded(1, cfg.m_fixed)?;
    let mut rows = Vec::with_capacity(cfg.bases.len() * ns.len());
    for &b in &cfg.bases {
        let points = generate(&GeneratorSpec::van_der_corput(b), largest)?;
        rows.extend(
            kappa_rows(&points, &basis, &ns)?
                .into_iter()
                .map(|(n, kappa)| Fig4Row {
                    base: b,
                    n,
                    kappa_minus_1: kappa - 1.0,
                }),
        );
    }
    Ok(rows)
}

pub fn fig4_csv(rows: &[Fig4Row]) -> String {
    let mut out = String::from("base,N,kappa_minus_1\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.base, r.n, r.kappa_minus_1);
    }
    out
}
