//! Certify expansion lower bounds through coordinate projections: choose
//! k, verify surjectivity and the max fiber load c, and read off the
//! 1/(2c) bound, then compare with ground truth on a small instance.
//!
//! Run with: cargo run --example projection_certificate

use num::BigRational;
use zeroone::bitgeom::{project, PointSet};
use zeroone::certify::{certify_auto, certify_projection, fiber_histogram};
use zeroone::expansion::{edge_expansion_exact, vertex_expansion_exact};
use zeroone::hullgraph::extract_skeleton;
use zeroone::randmodels::{ModelParams, ModelSpec};

fn main() -> anyhow::Result<()> {
    // Identity projection of the full cube: every fiber is a singleton,
    // bound 1/2.
    let cube = PointSet::full_cube(3)?;
    let cert = certify_projection(&cube, &[0, 1, 2])?;
    println!(
        "cube, identity projection: surjective = {}, c = {}, edge bound = {}",
        cert.surjective,
        cert.max_fiber,
        cert.edge_bound.as_ref().unwrap()
    );

    // Coarse projection to one coordinate: two fibers of four points each.
    let cert = certify_projection(&cube, &[0])?;
    let (_, fibers) = project(&cube, &[0])?;
    println!(
        "cube, projection to coordinate 0: c = {}, edge bound = {}, histogram {:?}",
        cert.max_fiber,
        cert.edge_bound.as_ref().unwrap(),
        fiber_histogram(&fibers)
    );

    // The automatic pipeline on a balls-into-bins instance at d = 10:
    // k = 6 (the largest k with n >= k 2^k for n = 384), 6d flag on means
    // the bound clears 1/(12d).
    let spec = ModelSpec {
        d: 10,
        params: ModelParams::BallsIntoBins { n: 384 },
        seed: 11,
    };
    let ps = spec.sample_points()?;
    let auto = certify_auto(&ps, &spec)?;
    let c = &auto.certificate;
    println!("\nbins d=10 n=384 ({} distinct points):", ps.len());
    println!("  k = {}, surjective = {}, max fiber = {}", c.k(), c.surjective, c.max_fiber);
    if let Some(eb) = &c.edge_bound {
        let threshold = BigRational::new(1.into(), 120.into());
        println!(
            "  certified edge bound {eb} {} 1/(12d) = 1/120  (six_d flag: {})",
            if *eb >= threshold { ">=" } else { "<" },
            auto.six_d
        );
        println!("  certified vertex bound {}", c.vertex_bound.as_ref().unwrap());
    } else {
        println!("  not surjective (coverage {}), no bound this trial", c.coverage);
    }

    // Soundness on a fully computable instance: certified <= exact.
    let spec = ModelSpec { d: 4, params: ModelParams::Uniform { n: 12 }, seed: 3 };
    let ps = spec.sample_points()?;
    let auto = certify_auto(&ps, &spec)?;
    let g = extract_skeleton(&ps)?;
    let exact_edge = edge_expansion_exact(&g)?;
    let exact_vertex = vertex_expansion_exact(&g)?;
    let c = &auto.certificate;
    println!("\nuniform d=4 n=12, certificate vs exact:");
    println!(
        "  edge:   certified {} <= exact {}",
        c.edge_bound.as_ref().unwrap(),
        exact_edge.value
    );
    println!(
        "  vertex: certified {} <= exact {}",
        c.vertex_bound.as_ref().unwrap(),
        exact_vertex.value
    );
    assert!(c.edge_bound.as_ref().unwrap() <= &exact_edge.value);
    assert!(c.vertex_bound.as_ref().unwrap() <= &exact_vertex.value);
    Ok(())
}
