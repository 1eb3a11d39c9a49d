//! Extract polytope graphs from 0/1 vertex sets with the exact LP
//! adjacency test, and cross-check against the brute-force facet oracle.
//!
//! Run with: cargo run --example extract_skeleton

use zeroone::bitgeom::{hypercube_skeleton, BitPoint, PointSet};
use zeroone::hullgraph::{extract_skeleton, is_edge, lp_membership, midpoint, LpOutcome};
use zeroone::oracle::skeleton_by_facet_enumeration;
use zeroone::randmodels::sample_uniform;

fn pt(s: &str) -> BitPoint {
    BitPoint::from_bitstring(s).unwrap()
}

fn main() -> anyhow::Result<()> {
    // The unit square: edges are the four sides, the diagonals are not.
    let square = PointSet::full_cube(2)?;
    println!("square: is_edge(00,01) = {}", is_edge(&square, &pt("00"), &pt("01"))?);
    println!("square: is_edge(00,11) = {} (a diagonal)", is_edge(&square, &pt("00"), &pt("11"))?);

    // The adjacency test asks whether the midpoint (u+v)/2 can carry any
    // weight outside {u, v} when written over the whole point set; here
    // the diagonal's midpoint is even a plain combination of the others.
    let mid = midpoint(&pt("00"), &pt("11"));
    let rest = [pt("01"), pt("10")];
    match lp_membership(&mid, &rest)? {
        LpOutcome::Feasible { coefficients } => {
            println!("midpoint of the diagonal = {coefficients:?} combination of 01 and 10")
        }
        LpOutcome::Infeasible { .. } => unreachable!(),
    }

    // Full skeleton of a regular tetrahedron inside the 3-cube: complete.
    let tetra = PointSet::new(3, vec![pt("000"), pt("011"), pt("101"), pt("110")])?;
    let g = extract_skeleton(&tetra)?;
    println!("tetrahedron: {} vertices, {} edges (complete graph)", g.n(), g.edge_count());

    // extract_skeleton of the full cube reproduces the combinatorial cube.
    let cube = PointSet::full_cube(3)?;
    let extracted = extract_skeleton(&cube)?;
    assert_eq!(extracted, hypercube_skeleton(3)?);
    println!("extract_skeleton({{0,1}}^3) == hypercube_skeleton(3)");

    // A random 10-point set in dimension 4, checked against the
    // structurally independent facet-enumeration oracle.
    let ps = sample_uniform(4, 10, 7)?;
    let lp = extract_skeleton(&ps)?;
    let brute = skeleton_by_facet_enumeration(&ps)?;
    assert_eq!(lp, brute);
    println!(
        "random d=4 |ps|=10: LP and facet oracle agree on all {} edges",
        lp.edge_count()
    );
    println!("\nskeleton JSON:\n{}", lp.to_json_string());
    Ok(())
}
