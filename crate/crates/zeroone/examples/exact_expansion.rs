//! Exact edge and vertex expansion by cut enumeration, the spectral
//! Cheeger sandwich, and the exact cube profile from Harper's theorem.
//!
//! Run with: cargo run --example exact_expansion

use zeroone::bitgeom::hypercube_skeleton;
use zeroone::expansion::{
    cheeger_bounds, edge_expansion_exact, harper_vertex_bound, vertex_expansion_exact,
};
use zeroone::hullgraph::extract_skeleton;
use zeroone::randmodels::sample_uniform;

fn main() -> anyhow::Result<()> {
    println!("hypercubes (edge expansion is 1 for every k):");
    for k in 1..=4 {
        let g = hypercube_skeleton(k)?;
        let e = edge_expansion_exact(&g)?;
        let v = vertex_expansion_exact(&g)?;
        let b = cheeger_bounds(&g)?;
        println!(
            "  k={k}: edge = {} (witness {:?}), vertex = {}, sandwich [{:.3}, {:.3}]",
            e.value, e.witness, v.value, b.lower, b.upper
        );
    }

    println!("\ncube vertex expansion from Harper's theorem, no enumeration:");
    for k in [1, 2, 3, 4, 8, 16, 30] {
        let h = harper_vertex_bound(k)?;
        println!("  k={k:2}: {h}   (k^(1/2) * value = {:.4})", rational_to_f64(&h) * (k as f64).sqrt());
    }

    // A random polytope: exact values plus the spectral side.
    let ps = sample_uniform(5, 14, 99)?;
    let g = extract_skeleton(&ps)?;
    let e = edge_expansion_exact(&g)?;
    let v = vertex_expansion_exact(&g)?;
    let b = cheeger_bounds(&g)?;
    println!("\nrandom d=5 |ps|=14:");
    println!("  edge expansion   = {} with witness {:?}", e.value, e.witness);
    println!("  vertex expansion = {} (always <= edge)", v.value);
    println!(
        "  lambda2 = {:.6}; Cheeger sandwich {:.4} <= {:.4} <= {:.4}",
        b.lambda2,
        b.lower,
        rational_to_f64(&e.value),
        b.upper
    );
    assert!(v.value <= e.value);
    Ok(())
}

fn rational_to_f64(r: &zeroone::Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap()
}
