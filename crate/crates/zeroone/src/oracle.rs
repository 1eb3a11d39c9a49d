//! Brute-force facet-enumeration reference for small instances.
//!
//! Cross-validates the LP adjacency test in [`crate::hullgraph`] with a
//! structurally different algorithm: enumerate all supporting hyperplanes
//! spanned by point subsets (inside the affine hull), collect facets as
//! their zero sets, and declare `[u,v]` an edge iff the smallest face
//! containing both (the intersection of all facets containing both) has
//! vertex set exactly `{u, v}`. Only intended for `dim <= 4` and
//! `|ps| <= 16`; everything is exact rational arithmetic.

use num::{BigRational, Signed, Zero};

use crate::bitgeom::PointSet;
use crate::hullgraph::{HullError, SkeletonGraph};
use crate::Rational;

pub const ORACLE_DIM_CAP: usize = 4;
pub const ORACLE_POINT_CAP: usize = 16;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("oracle supports dim <= {cap}, got {dim}")]
    DimCap { dim: usize, cap: usize },
    #[error("oracle supports at most {cap} points, got {points}")]
    PointCap { points: usize, cap: usize },
    #[error("oracle internal failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Skeleton(#[from] HullError),
}

fn point_coords(ps: &PointSet) -> Vec<Vec<Rational>> {
    ps.iter()
        .map(|p| {
            (0..ps.dim())
                .map(|i| BigRational::from_integer((p.get(i) as u8).into()))
                .collect()
        })
        .collect()
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Row-reduce `rows` in place (Gauss-Jordan); returns pivot column per row.
fn reduce(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x /= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    let d = &f * p;
                    *x -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Coordinates of each point inside its affine hull: returns `(a, ys)` with
/// `a` the affine dimension and `ys[i]` in `Q^a`.
fn affine_coordinates(coords: &[Vec<Rational>]) -> Result<(usize, Vec<Vec<Rational>>), OracleError> {
    let n = coords.len();
    let base = &coords[0];
    // Select affinely independent generators greedily.
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    for (i, point) in coords.iter().enumerate().skip(1) {
        let mut v = sub(point, base);
        // reduce v against current echelon
        for row in &echelon {
            let pc = row.iter().position(|x| !x.is_zero()).unwrap();
            if !v[pc].is_zero() {
                let f = v[pc].clone();
                for (vj, rj) in v.iter_mut().zip(row) {
                    let d = &f * rj;
                    *vj -= d;
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            chosen.push(i);
            echelon.push(sub(point, base));
            let _ = reduce(&mut echelon);
        }
    }
    let a = chosen.len();
    // Solve U y = v for each point, U columns = chosen difference vectors.
    let d = base.len();
    let mut ys = Vec::with_capacity(n);
    for point in coords {
        let v = sub(point, base);
        let mut aug: Vec<Vec<Rational>> = (0..d)
            .map(|row| {
                let mut line: Vec<Rational> = chosen
                    .iter()
                    .map(|&ci| &coords[ci][row] - &base[row])
                    .collect();
                line.push(v[row].clone());
                line
            })
            .collect();
        let pivots = reduce(&mut aug);
        let mut y = vec![BigRational::zero(); a];
        for (row, &pc) in pivots.iter().enumerate() {
            if pc == a {
                return Err(OracleError::Internal("point outside affine hull".into()));
            }
            y[pc] = aug[row][a].clone();
        }
        ys.push(y);
    }
    Ok((a, ys))
}

/// Null vector of an `(a-1) x a` full-rank system, or `None` if the rows do
/// not span a hyperplane.
fn hyperplane_normal(rows: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let a = rows.first()?.len();
    let mut rows = rows;
    let pivots = reduce(&mut rows);
    if rows.len() != a - 1 {
        return None;
    }
    let free = (0..a).find(|c| !pivots.contains(c))?;
    let mut h = vec![BigRational::zero(); a];
    h[free] = BigRational::from_integer(1.into());
    for (row, &pc) in pivots.iter().enumerate() {
        h[pc] = -rows[row][free].clone();
    }
    Some(h)
}

/// Extract the skeleton by explicit facet enumeration. Independent of the
/// LP path in `hullgraph`; see the module docs for the method.
pub fn skeleton_by_facet_enumeration(ps: &PointSet) -> Result<SkeletonGraph, OracleError> {
    if ps.dim() > ORACLE_DIM_CAP {
        return Err(OracleError::DimCap { dim: ps.dim(), cap: ORACLE_DIM_CAP });
    }
    if ps.len() > ORACLE_POINT_CAP {
        return Err(OracleError::PointCap { points: ps.len(), cap: ORACLE_POINT_CAP });
    }
    let n = ps.len();
    let labels = ps.points().to_vec();
    if n == 1 {
        return Ok(SkeletonGraph::new(ps.dim(), labels, &[])?);
    }
    let coords = point_coords(ps);
    let (a, ys) = affine_coordinates(&coords)?;
    if a == 0 {
        return Err(OracleError::Internal("duplicate points".into()));
    }
    if a == 1 {
        // No three 0/1 points are collinear, so the hull is one segment.
        if n != 2 {
            return Err(OracleError::Internal("collinear 0/1 points".into()));
        }
        return Ok(SkeletonGraph::new(ps.dim(), labels, &[(0, 1)])?);
    }

    // Facets as bitmasks over point indices.
    let mut facets: Vec<u32> = Vec::new();
    let mut subset: Vec<usize> = (0..a).collect();
    loop {
        let anchor = subset[0];
        let rows: Vec<Vec<Rational>> =
            subset[1..].iter().map(|&i| sub(&ys[i], &ys[anchor])).collect();
        if let Some(h) = hyperplane_normal(rows) {
            let h0 = dot(&h, &ys[anchor]);
            let sides: Vec<Rational> = ys.iter().map(|y| dot(&h, y) - &h0).collect();
            let nonneg = sides.iter().all(|s| !s.is_negative());
            let nonpos = sides.iter().all(|s| !s.is_positive());
            if nonneg || nonpos {
                let mask: u32 = sides
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.is_zero())
                    .map(|(i, _)| 1u32 << i)
                    .sum();
                if !facets.contains(&mask) {
                    facets.push(mask);
                }
            }
        }
        // next a-subset of 0..n in lexicographic order
        let mut idx = a;
        let mut advanced = false;
        while idx > 0 {
            idx -= 1;
            if subset[idx] < n - a + idx {
                subset[idx] += 1;
                for j in idx + 1..a {
                    subset[j] = subset[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }

    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let pair = (1u32 << i) | (1u32 << j);
            let mut common = full;
            let mut count = 0usize;
            for &f in &facets {
                if f & pair == pair {
                    common &= f;
                    count += 1;
                }
            }
            if common == pair {
                debug_assert!(count >= a - 1, "an edge lies on >= a-1 facets");
                edges.push((i, j));
            }
        }
    }
    Ok(SkeletonGraph::new(ps.dim(), labels, &edges)?)
}
