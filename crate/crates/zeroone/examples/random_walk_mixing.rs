//! The expansion -> mixing pipeline: build a lazy uniform-stationary chain
//! on a skeleton, watch total variation decay, and compare the mixing time
//! with the spectral estimate.
//!
//! Run with: cargo run --example random_walk_mixing

use num::BigRational;
use zeroone::bitgeom::hypercube_skeleton;
use zeroone::expansion::edge_expansion_exact;
use zeroone::hullgraph::extract_skeleton;
use zeroone::randmodels::sample_uniform;
use zeroone::walk::{build_chain, empirical_tv_trajectory, mixing_profile, tv_trajectory};

fn main() -> anyhow::Result<()> {
    let half = BigRational::new(1.into(), 2.into());

    // Lazy walk on the 4-cube.
    let g = hypercube_skeleton(4)?;
    let chain = build_chain(&g, &half)?;
    let (t, tv) = mixing_profile(&chain, 0.25)?;
    println!("4-cube, laziness 1/2:");
    println!("  spectral gap  = {:.6}", chain.spectral_gap());
    println!("  mixing_time(1/4) = {t}");
    println!("  worst-start TV per step: {:?}", &tv[..tv.len().min(8)]);

    // TV from a fixed start is nonincreasing and hits uniform.
    let traj = tv_trajectory(&chain, 0, 40)?;
    assert!(traj.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    println!("  TV from vertex 0 after 40 steps: {:.2e}", traj[40]);

    // Empirical walkers track the exact trajectory (sampling stand-in for
    // graphs too large to hold the dense matrix).
    let emp = empirical_tv_trajectory(&g, &half, 0, 10, 50_000, 9)?;
    println!(
        "  exact vs 50k-walker empirical TV at t=5: {:.4} vs {:.4}",
        traj[5], emp[5]
    );

    // A certified random instance: expansion lower-bounds the gap, the gap
    // upper-bounds mixing.
    let ps = sample_uniform(5, 16, 21)?;
    let g = extract_skeleton(&ps)?;
    let h = edge_expansion_exact(&g)?.value;
    let chain = build_chain(&g, &half)?;
    let t = mixing_profile(&chain, 0.25)?.0;
    let delta = g.max_degree() as f64;
    let hf = {
        use num::ToPrimitive;
        h.to_f64().unwrap()
    };
    let budget = 64.0 * (delta / (hf * hf)) * (g.n() as f64).ln();
    println!("\nrandom d=5 |V|={}: h = {h}, mixing_time = {t}", g.n());
    println!("  64 (Delta/h^2) ln|V| = {budget:.1} (mixing stays well under)");
    assert!((t as f64) <= budget);
    Ok(())
}
