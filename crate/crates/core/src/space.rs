//! Box-bounded search spaces, observation storage and seeded sampling.
//!
//! Every surrogate and the acquisition search work in the unit cube
//! `[0, 1]^d`; user-facing points stay in original units. [`SearchSpace`]
//! converts between the two.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned box `[lower, upper]` with strictly positive width on every axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpace", into = "RawSpace")]
pub struct SearchSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl TryFrom<RawSpace> for SearchSpace {
    type Error = Error;

    fn try_from(raw: RawSpace) -> Result<Self> {
        SearchSpace::new(raw.lower, raw.upper)
    }
}

impl From<SearchSpace> for RawSpace {
    fn from(space: SearchSpace) -> Self {
        RawSpace {
            lower: space.lower,
            upper: space.upper,
        }
    }
}

impl SearchSpace {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidSpace("dimension must be at least 1".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::InvalidSpace(format!(
                "lower has {} entries but upper has {}",
                lower.len(),
                upper.len()
            )));
        }
        for (j, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidSpace(format!("bound {j} is not finite")));
            }
            if lo >= hi {
                return Err(Error::InvalidSpace(format!(
                    "bound {j}: lower {lo} must be strictly below upper {hi}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval on every axis.
    pub fn cube(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn unit(dim: usize) -> Result<Self> {
        Self::cube(dim, 0.0, 1.0)
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| v >= lo && v <= hi)
    }

    pub fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        if !self.contains(x) {
            return Err(Error::OutOfBounds { x: x.to_vec() });
        }
        Ok(())
    }

    /// Maps an in-bounds point to the unit cube.
    pub fn normalize(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check(x)?;
        Ok(x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&v, (&lo, &hi))| (v - lo) / (hi - lo))
            .collect())
    }

    /// Inverse of [`normalize`](Self::normalize). Inputs are clamped to `[0, 1]`
    /// so rounding in the unit cube can never produce an out-of-bounds point.
    pub fn denormalize(&self, z: &[f64]) -> Vec<f64> {
        z.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&v, (&lo, &hi))| (lo + v.clamp(0.0, 1.0) * (hi - lo)).clamp(lo, hi))
            .collect()
    }
}

/// One evaluated point, in original units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub x: Vec<f64>,
    pub y: f64,
}

/// Observations in acquisition order. Appending never reorders.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Dataset {
    observations: Vec<Observation>,
}

impl Dataset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Validates against `space` and appends.
    pub fn push(&mut self, space: &SearchSpace, x: Vec<f64>, y: f64) -> Result<()> {
        space.check(&x)?;
        if !y.is_finite() {
            return Err(Error::NonFiniteObjective { x, y });
        }
        self.observations.push(Observation { x, y });
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    pub fn ys(&self) -> Vec<f64> {
        self.observations.iter().map(|o| o.y).collect()
    }

    /// Inputs mapped to the unit cube, in insertion order.
    pub fn normalized_inputs(&self, space: &SearchSpace) -> Vec<Vec<f64>> {
        self.observations
            .iter()
            .map(|o| {
                o.x.iter()
                    .zip(space.lower().iter().zip(space.upper()))
                    .map(|(&v, (&lo, &hi))| (v - lo) / (hi - lo))
                    .collect()
            })
            .collect()
    }

    pub fn best_y(&self) -> Option<f64> {
        self.observations.iter().map(|o| o.y).reduce(f64::max)
    }
}

/// Purpose tag for deriving independent random streams from one trial seed.
///
/// Each purpose gets its own ChaCha stream, so consuming randomness in one
/// part of the loop (say, bootstrapping a forest) never shifts another
/// (say, the acquisition candidates).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    InitialDesign = 1,
    GpRestarts = 2,
    Acquisition = 3,
    Regressor = 4,
    RandomSearch = 5,
    User = 15,
}

/// Seeded generator: ChaCha8 keyed by `seed` (expanded with rand_core's
/// documented PCG32-based `seed_from_u64`), stream id `purpose << 48 | index`.
/// Uniform reals use the top 53 bits of each 64-bit word.
#[derive(Debug, Clone)]
pub struct Rng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self::derive(seed, Stream::User, 0)
    }

    pub fn derive(seed: u64, purpose: Stream, index: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(((purpose as u64) << 48) | (index & 0xFFFF_FFFF_FFFF));
        Self { seed, inner }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of 32-bit words consumed so far.
    pub fn word_pos(&self) -> u128 {
        self.inner.get_word_pos()
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `0..n` (`n > 0`), via Lemire's widening multiply.
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.inner.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// A fresh seed, for handing to a sub-component.
    pub fn next_seed(&mut self) -> u64 {
        self.inner.next_u64()
    }
}

/// `n` independent uniform points inside `space`, in original units.
pub fn sample_uniform(space: &SearchSpace, n: usize, rng: &mut Rng) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            let z: Vec<f64> = (0..space.dim()).map(|_| rng.uniform()).collect();
            space.denormalize(&z)
        })
        .collect()
}

/// `n` uniform points in the unit cube of dimension `dim`.
pub fn sample_unit(dim: usize, n: usize, rng: &mut Rng) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..dim).map(|_| rng.uniform()).collect()).collect()
}
