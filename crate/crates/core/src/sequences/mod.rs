//! Point sets in `[0,1)^s`: van der Corput, Halton, Sobol and seeded
//! pseudo-random generators, plus star-discrepancy measurement.

mod discrepancy;
mod radical;
mod sobol;

use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use discrepancy::{
    empirical_c, star_discrepancy, star_discrepancy_1d, star_discrepancy_nd_bruteforce,
    star_discrepancy_nd_bruteforce_with_limit, DiscrepancyMethod, DiscrepancyResult,
    DEFAULT_ORACLE_LIMIT,
};
pub use radical::radical_inverse;
pub use sobol::{DirectionRow, DirectionTable};

/// Which sequence family produces the points.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorKind {
    VanDerCorput { base: u64 },
    Halton { bases: Vec<u64> },
    Sobol { table: Arc<DirectionTable> },
    PseudoRandom { seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub dimension: usize,
    /// Leading indices discarded before the first emitted point.
    pub skip: u64,
}

impl GeneratorSpec {
    pub fn van_der_corput(base: u64) -> Self {
        Self {
            kind: GeneratorKind::VanDerCorput { base },
            dimension: 1,
            skip: 0,
        }
    }

    pub fn halton(bases: Vec<u64>) -> Self {
        let dimension = bases.len();
        Self {
            kind: GeneratorKind::Halton { bases },
            dimension,
            skip: 0,
        }
    }

    /// Sobol points backed by the embedded Joe–Kuo table.
    pub fn sobol(dimension: usize) -> Self {
        Self::sobol_with_table(dimension, Arc::new(DirectionTable::embedded()))
    }

    pub fn sobol_with_table(dimension: usize, table: Arc<DirectionTable>) -> Self {
        Self {
            kind: GeneratorKind::Sobol { table },
            dimension,
            skip: 0,
        }
    }

    pub fn pseudo_random(dimension: usize, seed: u64) -> Self {
        Self {
            kind: GeneratorKind::PseudoRandom { seed },
            dimension,
            skip: 0,
        }
    }

    pub fn with_skip(mut self, skip: u64) -> Self {
        self.skip = skip;
        self
    }

    /// Checks the invariants tying the generator kind to the dimension.
    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        match &self.kind {
            GeneratorKind::VanDerCorput { base } => {
                if self.dimension != 1 {
                    return Err(Error::InvalidArgument(
                        "van der Corput sequences are one-dimensional".into(),
                    ));
                }
                if *base < 2 {
                    return Err(Error::InvalidBase(*base));
                }
            }
            GeneratorKind::Halton { bases } => {
                if bases.len() != self.dimension {
                    return Err(Error::DimensionMismatch {
                        expected: self.dimension,
                        actual: bases.len(),
                    });
                }
                if let Some(&b) = bases.iter().find(|&&b| b < 2) {
                    return Err(Error::InvalidBase(b));
                }
                for (i, &a) in bases.iter().enumerate() {
                    for &b in &bases[i + 1..] {
                        if gcd(a, b) != 1 {
                            return Err(Error::BasesNotCoprime(a, b));
                        }
                    }
                }
            }
            GeneratorKind::Sobol { table } => {
                if self.dimension > table.max_dimension() {
                    return Err(Error::SobolDimension {
                        requested: self.dimension,
                        available: table.max_dimension(),
                    });
                }
            }
            GeneratorKind::PseudoRandom { .. } => {}
        }
        Ok(())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `N` points in generation order, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dimension: usize,
    coords: Vec<f64>,
    provenance: Option<GeneratorSpec>,
}

impl PointSet {
    /// Wraps explicit points. Every coordinate must lie in `[0, 1)`.
    pub fn from_points(dimension: usize, points: &[Vec<f64>]) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        let mut coords = Vec::with_capacity(points.len() * dimension);
        for p in points {
            if p.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    actual: p.len(),
                });
            }
            if let Some(&x) = p.iter().find(|x| !(0.0..1.0).contains(*x)) {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {x} outside [0, 1)"
                )));
            }
            coords.extend_from_slice(p);
        }
        Ok(Self {
            dimension,
            coords,
            provenance: None,
        })
    }

    /// One-dimensional convenience constructor.
    pub fn from_1d(xs: &[f64]) -> Result<Self> {
        let pts: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x]).collect();
        Self::from_points(1, &pts)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dimension
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dimension)
    }

    /// All values of coordinate `axis`, in point order.
    pub fn axis(&self, axis: usize) -> Vec<f64> {
        self.iter().map(|p| p[axis]).collect()
    }

    pub fn provenance(&self) -> Option<&GeneratorSpec> {
        self.provenance.as_ref()
    }

    /// First index reported by [`PointSet::to_csv`].
    fn first_index(&self) -> u64 {
        self.provenance.as_ref().map_or(0, |s| s.skip)
    }

    /// CSV with header `index,x1,...,xs`; `index` is the generation index.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index");
        for k in 1..=self.dimension {
            let _ = write!(out, ",x{k}");
        }
        out.push('\n');
        let start = self.first_index();
        for (i, p) in self.iter().enumerate() {
            let _ = write!(out, "{}", start + i as u64);
            for x in p {
                let _ = write!(out, ",{x}");
            }
            out.push('\n');
        }
        out
    }
}

/// Generates `count` points from `spec`, starting at index `spec.skip`.
pub fn generate(spec: &GeneratorSpec, count: usize) -> Result<PointSet> {
    if count == 0 {
        return Err(Error::InvalidArgument("point count must be at least 1".into()));
    }
    spec.validate()?;
    let s = spec.dimension;
    let mut coords = Vec::with_capacity(count * s);
    let indices = spec.skip..spec.skip + count as u64;
    match &spec.kind {
        GeneratorKind::VanDerCorput { base } => {
            coords.extend(indices.map(|n| radical::radical_inverse_unchecked(n, *base)));
        }
        GeneratorKind::Halton { bases } => {
            for n in indices {
                coords.extend(bases.iter().map(|&b| radical::radical_inverse_unchecked(n, b)));
            }
        }
        GeneratorKind::Sobol { table } => {
            let directions = table.direction_integers(s)?;
            for n in indices {
                sobol::sobol_point(&directions, n, &mut coords);
            }
        }
        GeneratorKind::PseudoRandom { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..spec.skip.saturating_mul(s as u64) {
                let _: f64 = rng.random();
            }
            coords.extend((0..count * s).map(|_| rng.random::<f64>()));
        }
    }
    Ok(PointSet {
        dimension: s,
        coords,
        provenance: Some(spec.clone()),
    })
}
