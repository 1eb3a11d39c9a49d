//! The three random 0/1 polytope models with deterministic seeded sampling.
//!
//! Streams are ChaCha8 (a counter-based generator with published constants)
//! seeded through SplitMix64 so that per-trial streams derive from
//! `(master seed, trial index)` and results are schedule-independent.
//! Bernoulli draws against a rational `p` use exact integer rejection, so
//! the trial distribution is exactly the model's; the large-dimension
//! binomial path jumps over excluded candidates with geometric gaps.

use std::collections::HashSet;

use num::{BigRational, One, ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitgeom::{BitGeomError, BitPoint, PointSet};
use crate::Rational;

/// Binomial sampling enumerates all 2^d candidates up to this dimension and
/// switches to geometric gap-jumping above it.
pub const BINOMIAL_ENUM_MAX_D: usize = 26;

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("binomial sample came out empty")]
    EmptySample,
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error(transparent)]
    Geom(#[from] BitGeomError),
}

/// SplitMix64 step (Steele, Lea & Flood constants).
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Fold `parts` into `master` with SplitMix64; the published per-trial seed
/// derivation used everywhere in this crate.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    let mut state = master;
    let mut out = splitmix64(&mut state);
    for &p in parts {
        state ^= p;
        out = splitmix64(&mut state);
    }
    out
}

/// The value-semantic per-trial stream.
pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One uniform point of `{0,1}^d`: words drawn low-index first, last word
/// masked to `d` bits.
pub fn random_point(rng: &mut impl RngCore, d: usize) -> BitPoint {
    if d <= 64 {
        BitPoint::from_index(d, rng.next_u64())
    } else {
        let words = (0..d.div_ceil(64)).map(|_| rng.next_u64()).collect();
        BitPoint::from_words(d, words)
    }
}

/// Exact uniform draw from `[0, bound)` by rejection.
fn uniform_below(rng: &mut impl RngCore, bound: u128) -> u128 {
    debug_assert!(bound > 0);
    let zone = u128::MAX - u128::MAX % bound;
    loop {
        let hi = rng.next_u64() as u128;
        let lo = rng.next_u64() as u128;
        let x = hi << 64 | lo;
        if x < zone {
            return x % bound;
        }
    }
}

/// Exact Bernoulli(p) for rational p in (0,1).
fn bernoulli(rng: &mut impl RngCore, numer: u128, denom: u128) -> bool {
    uniform_below(rng, denom) < numer
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    BallsIntoBins,
    Binomial,
    Uniform,
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ModelKind::BallsIntoBins => "bins",
            ModelKind::Binomial => "binomial",
            ModelKind::Uniform => "uniform",
        })
    }
}

/// Parameters of one model instance; exactly the fields its kind needs.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelParams {
    BallsIntoBins { n: u64 },
    Binomial { p: Rational },
    Uniform { n: u64 },
}

impl ModelParams {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelParams::BallsIntoBins { .. } => ModelKind::BallsIntoBins,
            ModelParams::Binomial { .. } => ModelKind::Binomial,
            ModelParams::Uniform { .. } => ModelKind::Uniform,
        }
    }
}

/// A fully resolved trial input: model kind with parameters, dimension and
/// seed.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub d: usize,
    pub params: ModelParams,
    pub seed: u64,
}

impl ModelSpec {
    pub fn kind(&self) -> ModelKind {
        self.params.kind()
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if self.d == 0 {
            return Err(ModelError::InvalidParam("d must be positive".into()));
        }
        match &self.params {
            ModelParams::BallsIntoBins { n } | ModelParams::Uniform { n } if *n == 0 => {
                Err(ModelError::InvalidParam("n must be positive".into()))
            }
            ModelParams::Uniform { n } => {
                if self.d < 64 && *n > 1u64 << self.d {
                    Err(ModelError::InvalidParam(format!(
                        "uniform model needs n <= 2^d, got n = {n}, d = {}",
                        self.d
                    )))
                } else {
                    Ok(())
                }
            }
            ModelParams::Binomial { p } => {
                if p <= &BigRational::zero() || p >= &BigRational::one() {
                    Err(ModelError::InvalidParam("p must lie strictly in (0, 1)".into()))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Sample this model to a deduplicated point set (dropping the raw
    /// multiset for balls-into-bins, without ever cloning it).
    pub fn sample_points(&self) -> Result<PointSet, ModelError> {
        match &self.params {
            ModelParams::BallsIntoBins { n } => {
                if self.d == 0 || *n == 0 {
                    return Err(ModelError::InvalidParam("need d >= 1 and n >= 1".into()));
                }
                let mut rng = stream(self.seed);
                let raw: Vec<BitPoint> =
                    (0..*n).map(|_| random_point(&mut rng, self.d)).collect();
                Ok(PointSet::new(self.d, raw)?)
            }
            ModelParams::Binomial { p } => sample_binomial(self.d, p, self.seed),
            ModelParams::Uniform { n } => sample_uniform(self.d, *n, self.seed),
        }
    }
}

/// Balls-into-bins model: `n` i.i.d. uniform draws from `{0,1}^d`,
/// repetition allowed. Returns the raw draw sequence and the deduplicated
/// vertex set.
pub fn sample_balls_into_bins(
    d: usize,
    n: u64,
    seed: u64,
) -> Result<(Vec<BitPoint>, PointSet), ModelError> {
    if d == 0 || n == 0 {
        return Err(ModelError::InvalidParam("need d >= 1 and n >= 1".into()));
    }
    let mut rng = stream(seed);
    let raw: Vec<BitPoint> = (0..n).map(|_| random_point(&mut rng, d)).collect();
    let ps = PointSet::new(d, raw.clone())?;
    Ok((raw, ps))
}

fn rational_parts(p: &Rational) -> Result<(u128, u128), ModelError> {
    let numer = p.numer().to_u128();
    let denom = p.denom().to_u128();
    match (numer, denom) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(ModelError::InvalidParam(
            "p numerator/denominator must fit in 128 bits".into(),
        )),
    }
}

/// Binomial model: each point of `{0,1}^d` kept independently with
/// probability `p`. An empty draw is reported as [`ModelError::EmptySample`]
/// so callers can decide between resampling and recording a degenerate
/// trial.
pub fn sample_binomial(d: usize, p: &Rational, seed: u64) -> Result<PointSet, ModelError> {
    if d == 0 {
        return Err(ModelError::InvalidParam("d must be positive".into()));
    }
    if p <= &BigRational::zero() || p >= &BigRational::one() {
        return Err(ModelError::InvalidParam("p must lie strictly in (0, 1)".into()));
    }
    let mut rng = stream(seed);
    let mut points = Vec::new();
    if d <= BINOMIAL_ENUM_MAX_D {
        let (numer, denom) = rational_parts(p)?;
        for idx in 0..1u64 << d {
            if bernoulli(&mut rng, numer, denom) {
                points.push(BitPoint::from_index(d, idx));
            }
        }
    } else {
        if d > 63 {
            return Err(ModelError::ResourceLimit(
                "binomial gap sampling indexes candidates in a 64-bit word; d must be <= 63".into(),
            ));
        }
        // Geometric gap jumps; the gap law uses the f64 image of p, which
        // is deterministic for a fixed build.
        let pf = p.to_f64().ok_or_else(|| {
            ModelError::InvalidParam("p is not representable as f64".into())
        })?;
        let ln_q = (1.0 - pf).ln();
        let total = 1u64 << d;
        let mut idx: u64 = 0;
        loop {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0);
            let gap = (1.0 - u).ln() / ln_q;
            if !gap.is_finite() || gap >= (total - idx) as f64 {
                break;
            }
            idx += gap as u64;
            if idx >= total {
                break;
            }
            points.push(BitPoint::from_index(d, idx));
            idx += 1;
            if idx >= total {
                break;
            }
        }
    }
    if points.is_empty() {
        return Err(ModelError::EmptySample);
    }
    Ok(PointSet::new(d, points)?)
}

/// Uniform model: a uniformly random `n`-element subset of `{0,1}^d`.
/// Rejection-samples distinct points when `n <= 2^(d-1)` and samples the
/// complement otherwise.
pub fn sample_uniform(d: usize, n: u64, seed: u64) -> Result<PointSet, ModelError> {
    if d == 0 || n == 0 {
        return Err(ModelError::InvalidParam("need d >= 1 and n >= 1".into()));
    }
    if d < 64 && n > 1u64 << d {
        return Err(ModelError::InvalidParam(format!(
            "uniform model needs n <= 2^d, got n = {n}, d = {d}"
        )));
    }
    let mut rng = stream(seed);
    let small_side = d >= 64 || n <= 1u64 << (d - 1);
    if small_side {
        let mut set: HashSet<BitPoint> = HashSet::with_capacity(n as usize);
        while (set.len() as u64) < n {
            set.insert(random_point(&mut rng, d));
        }
        Ok(PointSet::new(d, set.into_iter().collect())?)
    } else {
        let total = 1u64 << d;
        let m = total - n;
        let mut excluded: HashSet<u64> = HashSet::with_capacity(m as usize);
        while (excluded.len() as u64) < m {
            excluded.insert(uniform_below(&mut rng, total as u128) as u64);
        }
        let points: Vec<BitPoint> = (0..total)
            .filter(|idx| !excluded.contains(idx))
            .map(|idx| BitPoint::from_index(d, idx))
            .collect();
        Ok(PointSet::new(d, points)?)
    }
}
