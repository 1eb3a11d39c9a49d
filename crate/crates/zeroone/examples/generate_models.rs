//! Sample the three random 0/1 polytope models and show what they produce.
//!
//! Run with: cargo run --example generate_models

use num::BigRational;
use zeroone::randmodels::{
    derive_seed, sample_balls_into_bins, sample_binomial, sample_uniform,
};

fn main() -> anyhow::Result<()> {
    let d = 8;
    let seed = 2024;

    // Balls into bins: n i.i.d. uniform draws, repetition allowed.
    let n = 40;
    let (raw, ps) = sample_balls_into_bins(d, n, seed)?;
    println!("balls-into-bins d={d} n={n}: {} draws, {} distinct", raw.len(), ps.len());

    // Binomial: every cube vertex kept with probability p.
    let p = BigRational::new(1.into(), 8.into());
    match sample_binomial(d, &p, seed) {
        Ok(ps) => println!("binomial      d={d} p=1/8: {} points (mean would be 32)", ps.len()),
        Err(e) => println!("binomial      d={d} p=1/8: {e}"),
    }

    // Uniform: an exactly-n-element random subset.
    let ps = sample_uniform(d, 40, seed)?;
    println!("uniform       d={d} n=40: {} points (always exact)", ps.len());

    // Same seed, same sample: streams are pure functions of (params, seed).
    let again = sample_uniform(d, 40, seed)?;
    assert_eq!(ps, again);
    println!("resampling with the same seed reproduces the set exactly");

    // Per-trial seeds derive from a master seed and a trial index.
    let sizes: Vec<usize> = (0..5u64)
        .map(|trial| {
            let s = derive_seed(seed, &[trial]);
            sample_balls_into_bins(d, n, s).map(|(_, ps)| ps.len()).unwrap_or(0)
        })
        .collect();
    println!("distinct-point counts across 5 derived trials: {sizes:?}");

    // The point-set text format used by the CLI.
    let tiny = sample_uniform(4, 6, seed)?;
    let mut text = Vec::new();
    tiny.write_text(&mut text)?;
    println!("\npoint-set text format (d=4, n=6):\n{}", String::from_utf8_lossy(&text));
    Ok(())
}
