//! Random-walk machinery connecting expansion to mixing: a lazy
//! degree-padded Metropolis chain whose stationary distribution is uniform
//! over the vertices, exact total-variation trajectories by dense matrix
//! iteration, and mixing-time computation from the worst start.

use nalgebra::DMatrix;
use num::{BigRational, ToPrimitive};
use rand_chacha::rand_core::RngCore;

use crate::expansion::DENSE_CAP;
use crate::hullgraph::SkeletonGraph;
use crate::randmodels::{derive_seed, stream};
use crate::Rational;

/// Hard cap on trajectory length / mixing-time search.
pub const TMAX_CAP: usize = 100_000;

#[derive(Debug, thiserror::Error)]
pub enum WalkError {
    #[error("chain construction requires a connected graph")]
    Disconnected,
    #[error("laziness must lie in [1/2, 1), got {0}")]
    BadLaziness(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("graph has {n} vertices, dense chain cap is {cap}")]
    DenseCap { n: usize, cap: usize },
    #[error("tmax {tmax} exceeds cap {cap}")]
    TmaxCap { tmax: usize, cap: usize },
    #[error("target tv {eps} not reached within {cap} steps")]
    NotMixed { eps: f64, cap: usize, trajectory: Vec<f64> },
}

/// A lazy uniform-stationary chain on a skeleton.
///
/// `P(u -> v) = (1 - laziness)/max_degree` for each neighbor `v`, the rest
/// stays at `u`. Padding every vertex to the maximum degree makes the
/// matrix symmetric and doubly stochastic, so the uniform distribution is
/// stationary; laziness >= 1/2 makes it aperiodic.
#[derive(Clone, Debug)]
pub struct ChainSpec {
    n: usize,
    laziness: Rational,
    max_degree: usize,
    transition: DMatrix<f64>,
}

impl ChainSpec {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn laziness(&self) -> &Rational {
        &self.laziness
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn transition(&self) -> &DMatrix<f64> {
        &self.transition
    }

    /// Spectral gap `1 - lambda_2(P)` of the (symmetric) transition matrix.
    pub fn spectral_gap(&self) -> f64 {
        let mut eigs: Vec<f64> =
            self.transition.symmetric_eigenvalues().iter().copied().collect();
        eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        if eigs.len() < 2 {
            return 1.0;
        }
        1.0 - eigs[1]
    }
}

pub fn build_chain(g: &SkeletonGraph, laziness: &Rational) -> Result<ChainSpec, WalkError> {
    let half = BigRational::new(1.into(), 2.into());
    let one = BigRational::from_integer(1.into());
    if laziness < &half || laziness >= &one {
        return Err(WalkError::BadLaziness(laziness.to_string()));
    }
    if !g.is_connected() {
        return Err(WalkError::Disconnected);
    }
    let n = g.n();
    if n > DENSE_CAP {
        return Err(WalkError::DenseCap { n, cap: DENSE_CAP });
    }
    let max_degree = g.max_degree();
    let beta = (one - laziness).to_f64().expect("laziness fits f64");
    let step = if max_degree == 0 { 0.0 } else { beta / max_degree as f64 };
    let mut transition = DMatrix::zeros(n, n);
    for u in 0..n {
        for &v in g.neighbors(u) {
            transition[(u, v)] = step;
        }
        transition[(u, u)] = 1.0 - g.degree(u) as f64 * step;
    }
    Ok(ChainSpec { n, laziness: laziness.clone(), max_degree, transition })
}

fn tv_from_uniform(row: &[f64]) -> f64 {
    let n = row.len() as f64;
    0.5 * row.iter().map(|x| (x - 1.0 / n).abs()).sum::<f64>()
}

/// Total-variation distance to uniform after `0..=tmax` steps from `start`,
/// by exact dense matrix-vector iteration.
pub fn tv_trajectory(
    chain: &ChainSpec,
    start: usize,
    tmax: usize,
) -> Result<Vec<f64>, WalkError> {
    if start >= chain.n {
        return Err(WalkError::InvalidArgument(format!(
            "start {start} out of range for {} vertices",
            chain.n
        )));
    }
    if tmax > TMAX_CAP {
        return Err(WalkError::TmaxCap { tmax, cap: TMAX_CAP });
    }
    let n = chain.n;
    let mut dist = vec![0.0; n];
    dist[start] = 1.0;
    let mut out = Vec::with_capacity(tmax + 1);
    out.push(tv_from_uniform(&dist));
    let mut next = vec![0.0; n];
    for _ in 0..tmax {
        next.iter_mut().for_each(|x| *x = 0.0);
        for (u, &pu) in dist.iter().enumerate() {
            if pu != 0.0 {
                for (v, nv) in next.iter_mut().enumerate() {
                    *nv += pu * chain.transition[(u, v)];
                }
            }
        }
        std::mem::swap(&mut dist, &mut next);
        out.push(tv_from_uniform(&dist));
    }
    Ok(out)
}

/// Worst-start TV to uniform per step, advancing all starts at once; used
/// by [`mixing_time`]. Entry `t` is `max_i TV(P^t(i, .), uniform)`.
pub fn worst_start_trajectory(
    chain: &ChainSpec,
    tmax: usize,
) -> Result<Vec<f64>, WalkError> {
    if tmax > TMAX_CAP {
        return Err(WalkError::TmaxCap { tmax, cap: TMAX_CAP });
    }
    let n = chain.n;
    let mut power = DMatrix::<f64>::identity(n, n);
    let mut scratch = DMatrix::<f64>::zeros(n, n);
    let worst = |m: &DMatrix<f64>| -> f64 {
        (0..n)
            .map(|i| tv_from_uniform(m.row(i).transpose().as_slice()))
            .fold(0.0, f64::max)
    };
    let mut out = Vec::with_capacity(tmax + 1);
    out.push(worst(&power));
    for _ in 0..tmax {
        power.mul_to(&chain.transition, &mut scratch);
        std::mem::swap(&mut power, &mut scratch);
        out.push(worst(&power));
    }
    Ok(out)
}

/// Smallest `t` with worst-start TV at most `eps`.
pub fn mixing_time(chain: &ChainSpec, eps: f64) -> Result<usize, WalkError> {
    mixing_profile(chain, eps).map(|(t, _)| t)
}

/// Mixing time together with the worst-start trajectory `0..=t`.
pub fn mixing_profile(chain: &ChainSpec, eps: f64) -> Result<(usize, Vec<f64>), WalkError> {
    if !(0.0..1.0).contains(&eps) || eps <= 0.0 {
        return Err(WalkError::InvalidArgument(format!("eps must lie in (0,1), got {eps}")));
    }
    let n = chain.n;
    let mut power = DMatrix::<f64>::identity(n, n);
    let mut scratch = DMatrix::<f64>::zeros(n, n);
    let worst = |m: &DMatrix<f64>| -> f64 {
        (0..n)
            .map(|i| tv_from_uniform(m.row(i).transpose().as_slice()))
            .fold(0.0, f64::max)
    };
    let mut trajectory = Vec::new();
    for t in 0..=TMAX_CAP {
        let tv = worst(&power);
        trajectory.push(tv);
        if tv <= eps {
            return Ok((t, trajectory));
        }
        power.mul_to(&chain.transition, &mut scratch);
        std::mem::swap(&mut power, &mut scratch);
    }
    Err(WalkError::NotMixed { eps, cap: TMAX_CAP, trajectory })
}

/// Empirical TV trajectory from many independent walkers; a sampling stand-
/// in for graphs too large for the dense path. Carries no acceptance
/// weight. Walker `w` uses the derived stream `(seed, w)`.
pub fn empirical_tv_trajectory(
    g: &SkeletonGraph,
    laziness: &Rational,
    start: usize,
    tmax: usize,
    walkers: usize,
    seed: u64,
) -> Result<Vec<f64>, WalkError> {
    if start >= g.n() {
        return Err(WalkError::InvalidArgument("start out of range".into()));
    }
    if walkers == 0 {
        return Err(WalkError::InvalidArgument("need at least one walker".into()));
    }
    if tmax > TMAX_CAP {
        return Err(WalkError::TmaxCap { tmax, cap: TMAX_CAP });
    }
    let half = BigRational::new(1.into(), 2.into());
    let one = BigRational::from_integer(1.into());
    if laziness < &half || laziness >= &one {
        return Err(WalkError::BadLaziness(laziness.to_string()));
    }
    if !g.is_connected() {
        return Err(WalkError::Disconnected);
    }
    let n = g.n();
    let max_degree = g.max_degree().max(1);
    let beta = (one - laziness).to_f64().expect("laziness fits f64");
    let move_scale = beta / max_degree as f64;

    let mut positions = vec![start; walkers];
    let mut streams: Vec<_> =
        (0..walkers).map(|w| stream(derive_seed(seed, &[w as u64]))).collect();
    let mut counts = vec![0u64; n];
    let mut out = Vec::with_capacity(tmax + 1);
    let empirical_tv = |counts: &[u64]| -> f64 {
        0.5 * counts
            .iter()
            .map(|&c| (c as f64 / walkers as f64 - 1.0 / n as f64).abs())
            .sum::<f64>()
    };
    counts[start] = walkers as u64;
    out.push(empirical_tv(&counts));
    for _ in 0..tmax {
        counts.iter_mut().for_each(|c| *c = 0);
        for (pos, rng) in positions.iter_mut().zip(&mut streams) {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0);
            let deg = g.degree(*pos);
            let move_mass = deg as f64 * move_scale;
            if u < move_mass {
                let pick = (u / move_scale) as usize;
                *pos = g.neighbors(*pos)[pick.min(deg - 1)];
            }
            counts[*pos] += 1;
        }
        out.push(empirical_tv(&counts));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitgeom::hypercube_skeleton;

    fn half() -> Rational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn single_edge_chain_is_all_half() {
        let g = hypercube_skeleton(1).unwrap();
        let chain = build_chain(&g, &half()).unwrap();
        for u in 0..2 {
            for v in 0..2 {
                assert!((chain.transition()[(u, v)] - 0.5).abs() < 1e-15);
            }
        }
        let tv = tv_trajectory(&chain, 0, 1).unwrap();
        assert!((tv[0] - 0.5).abs() < 1e-12);
        assert!(tv[1].abs() < 1e-12);
        assert_eq!(mixing_time(&chain, 0.25).unwrap(), 1);
    }

    #[test]
    fn four_cycle_chain_probabilities() {
        let g = hypercube_skeleton(2).unwrap();
        let chain = build_chain(&g, &half()).unwrap();
        for u in 0..4 {
            assert!((chain.transition()[(u, u)] - 0.5).abs() < 1e-15);
            for &v in g.neighbors(u) {
                assert!((chain.transition()[(u, v)] - 0.25).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn doubly_stochastic_and_uniform_stationary() {
        for k in 1..=4 {
            let g = hypercube_skeleton(k).unwrap();
            let chain = build_chain(&g, &half()).unwrap();
            let n = chain.n();
            for j in 0..n {
                let col: f64 = (0..n).map(|i| chain.transition()[(i, j)]).sum();
                assert!((col - 1.0).abs() < 1e-12, "column {j} sums to {col}");
                let row: f64 = (0..n).map(|i| chain.transition()[(j, i)]).sum();
                assert!((row - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn tv_starts_at_point_mass_distance() {
        let g = hypercube_skeleton(3).unwrap();
        let chain = build_chain(&g, &half()).unwrap();
        let tv = tv_trajectory(&chain, 5, 0).unwrap();
        assert!((tv[0] - (1.0 - 1.0 / 8.0)).abs() < 1e-12);
    }

    #[test]
    fn tv_nonincreasing_on_cycle() {
        let g = hypercube_skeleton(2).unwrap();
        let chain = build_chain(&g, &half()).unwrap();
        let tv = tv_trajectory(&chain, 0, 60).unwrap();
        for w in tv.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        assert!(tv[60] < 1e-12);
    }

    #[test]
    fn mixing_time_at_least_one_for_two_vertices() {
        for k in 1..=3 {
            let g = hypercube_skeleton(k).unwrap();
            let chain = build_chain(&g, &half()).unwrap();
            assert!(mixing_time(&chain, 0.25).unwrap() >= 1);
        }
    }

    #[test]
    fn mixing_time_vs_spectral_estimate() {
        let g = hypercube_skeleton(4).unwrap();
        let chain = build_chain(&g, &half()).unwrap();
        let gap = chain.spectral_gap();
        assert!(gap > 0.0);
        let t = mixing_time(&chain, 0.25).unwrap();
        let estimate = ((4.0 * 16.0f64).ln() / gap).ceil() as usize;
        assert!(t <= estimate, "t = {t}, spectral estimate {estimate}");
    }

    #[test]
    fn laziness_validation() {
        let g = hypercube_skeleton(2).unwrap();
        let third = BigRational::new(1.into(), 3.into());
        assert!(matches!(build_chain(&g, &third), Err(WalkError::BadLaziness(_))));
        let one = BigRational::from_integer(1.into());
        assert!(build_chain(&g, &one).is_err());
        let three_quarters = BigRational::new(3.into(), 4.into());
        assert!(build_chain(&g, &three_quarters).is_ok());
    }

    #[test]
    fn empirical_sampler_roughly_tracks_exact() {
        let g = hypercube_skeleton(3).unwrap();
        let chain = build_chain(&g, &half()).unwrap();
        let exact = tv_trajectory(&chain, 0, 20).unwrap();
        let emp = empirical_tv_trajectory(&g, &half(), 0, 20, 20_000, 123).unwrap();
        assert_eq!(emp.len(), exact.len());
        for (e, x) in emp.iter().zip(&exact) {
            assert!((e - x).abs() < 0.05, "empirical {e} vs exact {x}");
        }
        let emp2 = empirical_tv_trajectory(&g, &half(), 0, 20, 20_000, 123).unwrap();
        assert_eq!(emp, emp2);
    }
}
