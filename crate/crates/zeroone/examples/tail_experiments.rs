//! Balls-into-bins tails behind the theorems: the maximum fiber load stays
//! under 6k, and d*2^d draws cover the cube with failure probability under
//! (2/e)^d.
//!
//! Run with: cargo run --example tail_experiments

use zeroone::harness::{coverage_experiment, max_load_experiment};

fn main() -> anyhow::Result<()> {
    println!("max fiber load for n = k*2^k balls in 2^k bins (threshold 6k):");
    for k in [4, 6, 8] {
        let r = max_load_experiment(12, k, 300, 5)?;
        let (lo, hi) = (
            r.histogram.keys().next().copied().unwrap_or(0),
            r.histogram.keys().last().copied().unwrap_or(0),
        );
        println!(
            "  k={k}: n={:5}, max load in [{lo}, {hi}], threshold {}, exceedance {:.3}",
            r.n, r.threshold, r.exceedance
        );
    }

    println!("\ncoverage failure for n = d*2^d draws vs the (2/e)^d bound:");
    for d in [4, 6, 8] {
        let r = coverage_experiment(d, 300, 5)?;
        println!(
            "  d={d}: n={:5}, observed {:.4}, bound {:.4}",
            r.n, r.failure_fraction, r.bound
        );
    }

    // d = 1 closed form: two draws land in the same bin with probability
    // exactly 1/2.
    let r = coverage_experiment(1, 2000, 5)?;
    println!(
        "\nd=1 sanity: observed failure {:.3} (exact probability 0.5)",
        r.failure_fraction
    );
    Ok(())
}
