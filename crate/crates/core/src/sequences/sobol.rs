//! Sobol points from Joe–Kuo direction numbers.
//!
//! Points are produced in Gray-code order with 32-bit direction integers.
//! Dimension 1 uses all-ones initial numbers (it is van der Corput base 2
//! up to point order); dimension `d >= 2` reads row `d` of the table.

use std::path::Path;

use crate::error::{Error, Result};

const BITS: u32 = 32;

/// First rows of `new-joe-kuo-6.21201`, dimensions 2..=16.
const EMBEDDED: &str = "\
d       s       a       m_i
2       1       0       1
3       2       1       1 3
4       3       1       1 3 1
5       3       2       1 1 1
6       4       1       1 1 3 3
7       4       4       1 3 5 13
8       5       2       1 1 5 5 17
9       5       4       1 1 5 5 5
10      5       7       1 1 7 11 19
11      5       11      1 1 5 1 1
12      5       13      1 1 1 3 11
13      5       14      1 3 5 5 31
14      6       1       1 3 3 9 7 49
15      6       13      1 1 1 15 21 21
16      6       16      1 3 1 13 27 49
";

/// One row of a Joe–Kuo file: primitive polynomial degree `s`, its
/// interior coefficients packed into `a`, and initial numbers `m_1..m_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionRow {
    pub d: usize,
    pub s: u32,
    pub a: u64,
    pub m: Vec<u64>,
}

/// Parsed direction-number table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionTable {
    rows: Vec<DirectionRow>,
}

impl DirectionTable {
    /// Table for dimensions up to 16, compiled into the crate.
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED).expect("embedded table is well formed")
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Parses whitespace-separated `d s a m_1 .. m_s` lines. Lines whose first
    /// token is not an integer (headers, blanks) are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<DirectionRow> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let mut tokens = line.split_whitespace();
            let Some(first) = tokens.next() else { continue };
            let Ok(d) = first.parse::<usize>() else { continue };
            let bad = |reason: &str| Error::DirectionFile {
                line: line_no,
                reason: reason.to_string(),
            };
            let nums: Vec<u64> = tokens
                .map(|t| t.parse::<u64>().map_err(|_| bad("non-integer token")))
                .collect::<Result<_>>()?;
            if nums.len() < 2 {
                return Err(bad("expected at least d, s, a"));
            }
            let s = u32::try_from(nums[0]).map_err(|_| bad("degree too large"))?;
            if s == 0 || s >= BITS {
                return Err(bad("polynomial degree out of range"));
            }
            let a = nums[1];
            let m = nums[2..].to_vec();
            if m.len() != s as usize {
                return Err(bad("number of m_i differs from s"));
            }
            for (k, &mk) in m.iter().enumerate() {
                if mk % 2 == 0 || mk >= 1 << (k + 1) {
                    return Err(bad("m_k must be odd and below 2^k"));
                }
            }
            let expected = rows.last().map_or(2, |r| r.d + 1);
            if d != expected {
                return Err(bad("dimensions must be consecutive starting at 2"));
            }
            rows.push(DirectionRow { d, s, a, m });
        }
        Ok(Self { rows })
    }

    /// Number of dimensions this table can drive (dimension 1 is implicit).
    pub fn max_dimension(&self) -> usize {
        self.rows.len() + 1
    }

    /// Direction integers `v_1..v_32` for each of the first `dim` coordinates.
    pub(crate) fn direction_integers(&self, dim: usize) -> Result<Vec<[u32; BITS as usize]>> {
        if dim > self.max_dimension() {
            return Err(Error::SobolDimension {
                requested: dim,
                available: self.max_dimension(),
            });
        }
        let mut out = Vec::with_capacity(dim);
        let mut first = [0u32; BITS as usize];
        for (k, v) in first.iter_mut().enumerate() {
            *v = 1u32 << (BITS - 1 - k as u32);
        }
        out.push(first);
        for row in &self.rows[..dim - 1] {
            out.push(row_direction_integers(row));
        }
        Ok(out)
    }
}

fn row_direction_integers(row: &DirectionRow) -> [u32; BITS as usize] {
    let s = row.s as usize;
    let mut v = [0u32; BITS as usize];
    for k in 0..s {
        v[k] = (row.m[k] as u32) << (BITS as usize - 1 - k);
    }
    for k in s..BITS as usize {
        let mut x = v[k - s] ^ (v[k - s] >> s);
        for j in 1..s {
            if (row.a >> (s - 1 - j)) & 1 == 1 {
                x ^= v[k - j];
            }
        }
        v[k] = x;
    }
    v
}

/// Coordinates of the Sobol point with index `n` (Gray-code ordering).
pub(crate) fn sobol_point(directions: &[[u32; BITS as usize]], n: u64, out: &mut Vec<f64>) {
    let gray = n ^ (n >> 1);
    let scale = 1.0 / (1u64 << BITS) as f64;
    for v in directions {
        let mut x = 0u32;
        let mut g = gray;
        let mut k = 0;
        while g != 0 && k < BITS as usize {
            if g & 1 == 1 {
                x ^= v[k];
            }
            g >>= 1;
            k += 1;
        }
        out.push(f64::from(x) * scale);
    }
}
