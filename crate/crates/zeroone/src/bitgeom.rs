//! Core 0/1 geometry: packed bit-vector points, duplicate-free point sets,
//! coordinate projections with fiber bookkeeping, and the hypercube
//! skeleton.
//!
//! Points are stored as packed 64-bit words so that Hamming distance and
//! projections stay cheap inside million-trial loops. Coordinate indices
//! are 0-based everywhere; coordinate `i` is bit `i % 64` of word `i / 64`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};

use crate::hullgraph::SkeletonGraph;

/// Largest `k` accepted by [`hypercube_skeleton`]; adjacency lists for
/// 2^20 vertices (~10M edges) are the desk-scale memory bound.
pub const HYPERCUBE_CAP: usize = 20;

#[derive(Debug, thiserror::Error)]
pub enum BitGeomError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid coordinate selection: {0}")]
    InvalidCoords(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("hypercube dimension {k} exceeds cap {cap}")]
    HypercubeCap { k: usize, cap: usize },
    #[error("malformed point-set text at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// A point of `{0,1}^d`, packed into 64-bit words.
///
/// Dimensions up to 64 live inline in a single word; larger dimensions
/// spill to a boxed slice. Unused high bits of the last word are always
/// zero, so derived equality and hashing are coordinate equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitPoint {
    dim: u32,
    words: Words,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Words {
    Inline(u64),
    Heap(Box<[u64]>),
}

impl BitPoint {
    /// The all-zeros point of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        let words = if dim <= 64 {
            Words::Inline(0)
        } else {
            Words::Heap(vec![0u64; dim.div_ceil(64)].into_boxed_slice())
        };
        BitPoint { dim: dim as u32, words }
    }

    /// Build from the low `dim` bits of `value` (coordinate `i` = bit `i`).
    /// Only valid for `dim <= 64`.
    pub fn from_index(dim: usize, value: u64) -> Self {
        assert!((1..=64).contains(&dim), "from_index requires 1 <= dim <= 64");
        let mask = if dim == 64 { u64::MAX } else { (1u64 << dim) - 1 };
        BitPoint { dim: dim as u32, words: Words::Inline(value & mask) }
    }

    /// Build from already-packed words (word `i/64`, bit `i%64`). High bits
    /// beyond `dim` are masked off.
    pub fn from_words(dim: usize, mut words: Vec<u64>) -> Self {
        assert!(dim >= 1 && words.len() == dim.div_ceil(64), "word count must match dim");
        let used = dim % 64;
        if used != 0 {
            let last = words.len() - 1;
            words[last] &= (1u64 << used) - 1;
        }
        if dim <= 64 {
            BitPoint { dim: dim as u32, words: Words::Inline(words[0]) }
        } else {
            BitPoint { dim: dim as u32, words: Words::Heap(words.into_boxed_slice()) }
        }
    }

    /// Parse a bitstring such as `"0110"`; character `i` is coordinate `i`.
    pub fn from_bitstring(s: &str) -> Result<Self, BitGeomError> {
        if s.is_empty() {
            return Err(BitGeomError::InvalidArgument("empty bitstring".into()));
        }
        let dim = s.len();
        let mut words = vec![0u64; dim.div_ceil(64)];
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => words[i / 64] |= 1u64 << (i % 64),
                other => {
                    return Err(BitGeomError::InvalidArgument(format!(
                        "bitstring may contain only 0/1, found {other:?}"
                    )))
                }
            }
        }
        Ok(Self::from_words(dim, words))
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// Coordinate `i` as a bool.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.dim(), "coordinate out of range");
        self.words()[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.words().iter().map(|w| w.count_ones()).sum()
    }

    fn words(&self) -> &[u64] {
        match &self.words {
            Words::Inline(w) => std::slice::from_ref(w),
            Words::Heap(ws) => ws,
        }
    }

    /// Restriction to `coords` (assumed valid, strictly increasing).
    pub fn restrict(&self, coords: &[usize]) -> BitPoint {
        let k = coords.len();
        let mut words = vec![0u64; k.div_ceil(64)];
        for (j, &c) in coords.iter().enumerate() {
            if self.get(c) {
                words[j / 64] |= 1u64 << (j % 64);
            }
        }
        BitPoint::from_words(k, words)
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.dim()).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for BitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

impl fmt::Debug for BitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPoint({})", self.to_bitstring())
    }
}

impl Ord for BitPoint {
    /// Lexicographic order of the bitstring (coordinate 0 first). With the
    /// packed layout this is numeric order of bit-reversed words.
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| {
                for (a, b) in self.words().iter().zip(other.words()) {
                    match a.reverse_bits().cmp(&b.reverse_bits()) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for BitPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Number of coordinates where `u` and `v` differ.
pub fn hamming_distance(u: &BitPoint, v: &BitPoint) -> Result<u32, BitGeomError> {
    if u.dim != v.dim {
        return Err(BitGeomError::DimensionMismatch { left: u.dim(), right: v.dim() });
    }
    Ok(u.words().iter().zip(v.words()).map(|(a, b)| (a ^ b).count_ones()).sum())
}

/// A duplicate-free set of 0/1 points of a common dimension, kept sorted in
/// bitstring-lexicographic order. Every 0/1 point is a vertex of the convex
/// hull of the set, so this is exactly a polytope's vertex set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointSet {
    dim: usize,
    points: Vec<BitPoint>,
}

impl PointSet {
    /// Deduplicates and sorts. Errors on empty input or mixed dimensions.
    pub fn new(dim: usize, mut points: Vec<BitPoint>) -> Result<Self, BitGeomError> {
        if dim == 0 {
            return Err(BitGeomError::InvalidArgument("dimension must be positive".into()));
        }
        if points.is_empty() {
            return Err(BitGeomError::InvalidArgument("point set may not be empty".into()));
        }
        for p in &points {
            if p.dim() != dim {
                return Err(BitGeomError::DimensionMismatch { left: dim, right: p.dim() });
            }
        }
        points.sort_unstable();
        points.dedup();
        Ok(PointSet { dim, points })
    }

    /// All 2^d points of the cube; `d` is capped like [`hypercube_skeleton`].
    pub fn full_cube(d: usize) -> Result<Self, BitGeomError> {
        if d == 0 {
            return Err(BitGeomError::InvalidArgument("dimension must be positive".into()));
        }
        if d > HYPERCUBE_CAP {
            return Err(BitGeomError::HypercubeCap { k: d, cap: HYPERCUBE_CAP });
        }
        let points = (0..1u64 << d).map(|v| BitPoint::from_index(d, v)).collect();
        PointSet::new(d, points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[BitPoint] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BitPoint> {
        self.points.iter()
    }

    pub fn contains(&self, p: &BitPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn index_of(&self, p: &BitPoint) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// Read the point-set text format: first line `d n`, then `n` lines of
    /// d-character bitstrings. Duplicates are rejected.
    pub fn read_text<R: BufRead>(reader: R) -> Result<Self, BitGeomError> {
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| BitGeomError::Parse { line: 1, msg: "missing header".into() })??;
        let mut it = header.split_whitespace();
        let parse_num = |tok: Option<&str>, what: &str| -> Result<usize, BitGeomError> {
            tok.ok_or_else(|| BitGeomError::Parse { line: 1, msg: format!("missing {what}") })?
                .parse::<usize>()
                .map_err(|e| BitGeomError::Parse { line: 1, msg: format!("bad {what}: {e}") })
        };
        let d = parse_num(it.next(), "dimension")?;
        let n = parse_num(it.next(), "point count")?;
        if it.next().is_some() {
            return Err(BitGeomError::Parse { line: 1, msg: "trailing tokens in header".into() });
        }
        if d == 0 || n == 0 {
            return Err(BitGeomError::Parse { line: 1, msg: "d and n must be positive".into() });
        }
        let mut points = Vec::with_capacity(n);
        for i in 0..n {
            let line_no = i + 2;
            let line = lines
                .next()
                .ok_or_else(|| BitGeomError::Parse { line: line_no, msg: "missing point".into() })??;
            let s = line.trim();
            if s.len() != d {
                return Err(BitGeomError::Parse {
                    line: line_no,
                    msg: format!("expected {d} characters, found {}", s.len()),
                });
            }
            points.push(BitPoint::from_bitstring(s).map_err(|e| BitGeomError::Parse {
                line: line_no,
                msg: e.to_string(),
            })?);
        }
        let ps = PointSet::new(d, points)?;
        if ps.len() != n {
            return Err(BitGeomError::Parse {
                line: n + 1,
                msg: format!("duplicate points: {n} listed, {} distinct", ps.len()),
            });
        }
        Ok(ps)
    }

    /// Write the point-set text format (points in lexicographic order).
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<(), BitGeomError> {
        writeln!(w, "{} {}", self.dim, self.points.len())?;
        for p in &self.points {
            writeln!(w, "{p}")?;
        }
        Ok(())
    }
}

/// Fibers of a coordinate projection: for each image point, the number of
/// source points restricting to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberMap {
    coords: Vec<usize>,
    loads: BTreeMap<BitPoint, u64>,
}

impl FiberMap {
    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn loads(&self) -> &BTreeMap<BitPoint, u64> {
        &self.loads
    }

    /// Largest fiber cardinality.
    pub fn max_load(&self) -> u64 {
        self.loads.values().copied().max().unwrap_or(0)
    }

    /// Sum of all loads, i.e. the source point count.
    pub fn total(&self) -> u64 {
        self.loads.values().sum()
    }

    /// Number of nonempty fibers, i.e. the image size.
    pub fn fiber_count(&self) -> usize {
        self.loads.len()
    }
}

fn validate_coords(coords: &[usize], dim: usize) -> Result<(), BitGeomError> {
    if coords.is_empty() {
        return Err(BitGeomError::InvalidCoords("empty coordinate list".into()));
    }
    for w in coords.windows(2) {
        if w[0] >= w[1] {
            return Err(BitGeomError::InvalidCoords(format!(
                "coordinates must be strictly increasing, found {} before {}",
                w[0], w[1]
            )));
        }
    }
    let last = *coords.last().unwrap();
    if last >= dim {
        return Err(BitGeomError::InvalidCoords(format!(
            "coordinate {last} out of range for dimension {dim}"
        )));
    }
    Ok(())
}

/// Orthogonal projection of a point set onto `coords`, returning the image
/// set together with the fiber loads. The sum of the loads equals `ps.len()`.
pub fn project(ps: &PointSet, coords: &[usize]) -> Result<(PointSet, FiberMap), BitGeomError> {
    validate_coords(coords, ps.dim())?;
    let mut loads: BTreeMap<BitPoint, u64> = BTreeMap::new();
    for p in ps.iter() {
        *loads.entry(p.restrict(coords)).or_insert(0) += 1;
    }
    let image = PointSet {
        dim: coords.len(),
        points: loads.keys().cloned().collect(),
    };
    Ok((image, FiberMap { coords: coords.to_vec(), loads }))
}

/// The skeleton of the k-cube: 2^k vertices, adjacency = Hamming distance 1.
///
/// Vertex `v` is labeled with the bitstring whose coordinate `j` is bit
/// `k-1-j` of `v`, so labels come out in lexicographic order and agree
/// index-for-index with `extract_skeleton` of the full cube.
pub fn hypercube_skeleton(k: usize) -> Result<SkeletonGraph, BitGeomError> {
    if k == 0 {
        return Err(BitGeomError::InvalidArgument("cube dimension must be positive".into()));
    }
    if k > HYPERCUBE_CAP {
        return Err(BitGeomError::HypercubeCap { k, cap: HYPERCUBE_CAP });
    }
    let n = 1usize << k;
    let labels: Vec<BitPoint> = (0..n as u64)
        .map(|v| {
            let mut words = vec![0u64];
            for j in 0..k {
                if v >> (k - 1 - j) & 1 == 1 {
                    words[0] |= 1u64 << j;
                }
            }
            BitPoint::from_words(k, words)
        })
        .collect();
    let mut edges = Vec::with_capacity(k * n / 2);
    for v in 0..n {
        for b in 0..k {
            let u = v ^ (1 << b);
            if v < u {
                edges.push((v, u));
            }
        }
    }
    SkeletonGraph::new(k, labels, &edges)
        .map_err(|e| BitGeomError::InvalidArgument(format!("cube construction: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(s: &str) -> BitPoint {
        BitPoint::from_bitstring(s).unwrap()
    }

    #[test]
    fn hamming_basics() {
        assert_eq!(hamming_distance(&pt("000"), &pt("000")).unwrap(), 0);
        assert_eq!(hamming_distance(&pt("000"), &pt("111")).unwrap(), 3);
        assert_eq!(hamming_distance(&pt("0110"), &pt("0101")).unwrap(), 2);
        assert!(hamming_distance(&pt("01"), &pt("011")).is_err());
    }

    #[test]
    fn point_order_is_bitstring_lex() {
        let mut v = [pt("10"), pt("01"), pt("11"), pt("00")];
        v.sort();
        let strs: Vec<String> = v.iter().map(|p| p.to_bitstring()).collect();
        assert_eq!(strs, ["00", "01", "10", "11"]);
    }

    #[test]
    fn point_order_wide_dimension() {
        // 70 coordinates: order decided by coordinate 65 in the second word.
        let mut a = vec![0u64; 2];
        a[1] = 1 << 1; // coordinate 65
        let mut b = vec![0u64; 2];
        b[1] = 1 << 2; // coordinate 66
        let pa = BitPoint::from_words(70, a);
        let pb = BitPoint::from_words(70, b);
        // A one at an earlier coordinate sorts later ('1' > '0' at the
        // first differing position), so pa > pb.
        assert!(pa > pb);
        assert_eq!(pa.weight(), 1);
        assert!(pa.get(65) && !pa.get(66));
    }

    #[test]
    fn project_cube_to_two_coords() {
        let ps = PointSet::full_cube(3).unwrap();
        let (image, fibers) = project(&ps, &[0, 1]).unwrap();
        assert_eq!(image.len(), 4);
        assert_eq!(image.dim(), 2);
        assert!(fibers.loads().values().all(|&l| l == 2));
        assert_eq!(fibers.total(), 8);
    }

    #[test]
    fn project_singleton_identity() {
        let ps = PointSet::new(3, vec![pt("000")]).unwrap();
        let (image, fibers) = project(&ps, &[0, 1, 2]).unwrap();
        assert_eq!(image.len(), 1);
        assert_eq!(fibers.max_load(), 1);
    }

    #[test]
    fn project_collapses_pair() {
        let ps = PointSet::new(3, vec![pt("000"), pt("001")]).unwrap();
        let (image, fibers) = project(&ps, &[0, 1]).unwrap();
        assert_eq!(image.len(), 1);
        assert_eq!(image.points()[0], pt("00"));
        assert_eq!(fibers.max_load(), 2);
    }

    #[test]
    fn project_rejects_bad_coords() {
        let ps = PointSet::full_cube(3).unwrap();
        assert!(project(&ps, &[]).is_err());
        assert!(project(&ps, &[1, 1]).is_err());
        assert!(project(&ps, &[2, 1]).is_err());
        assert!(project(&ps, &[0, 3]).is_err());
    }

    #[test]
    fn cube_skeleton_counts() {
        let g1 = hypercube_skeleton(1).unwrap();
        assert_eq!((g1.n(), g1.edge_count()), (2, 1));
        let g2 = hypercube_skeleton(2).unwrap();
        assert_eq!((g2.n(), g2.edge_count()), (4, 4));
        assert!((0..4).all(|v| g2.degree(v) == 2));
        let g3 = hypercube_skeleton(3).unwrap();
        assert_eq!(g3.edge_count(), 12);
        assert!((0..8).all(|v| g3.degree(v) == 3));
        assert!(g3.is_connected());
        assert!(hypercube_skeleton(0).is_err());
        assert!(hypercube_skeleton(HYPERCUBE_CAP + 1).is_err());
    }

    #[test]
    fn cube_skeleton_labels_lex_sorted() {
        let g = hypercube_skeleton(3).unwrap();
        let labels: Vec<String> = g.labels().iter().map(|p| p.to_bitstring()).collect();
        let mut sorted = labels.clone();
        sorted.sort();
        assert_eq!(labels, sorted);
    }

    #[test]
    fn text_format_round_trip() {
        let ps = PointSet::new(3, vec![pt("010"), pt("000"), pt("111")]).unwrap();
        let mut buf = Vec::new();
        ps.write_text(&mut buf).unwrap();
        assert_eq!(String::from_utf8_lossy(&buf), "3 3\n000\n010\n111\n");
        let back = PointSet::read_text(&buf[..]).unwrap();
        assert_eq!(back, ps);
    }

    #[test]
    fn text_format_rejects_duplicates() {
        let text = "2 2\n01\n01\n";
        assert!(PointSet::read_text(text.as_bytes()).is_err());
    }

    proptest! {
        #[test]
        fn project_identity_when_all_coords(seed in 0u64..1000) {
            let d = 4usize;
            let mut points = Vec::new();
            let mut x = seed;
            for _ in 0..6 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                points.push(BitPoint::from_index(d, x >> 32));
            }
            let ps = PointSet::new(d, points).unwrap();
            let coords: Vec<usize> = (0..d).collect();
            let (image, fibers) = project(&ps, &coords).unwrap();
            prop_assert_eq!(&image, &ps);
            prop_assert!(fibers.loads().values().all(|&l| l == 1));
        }

        #[test]
        fn project_load_sum_and_composition(seed in 0u64..1000) {
            let d = 6usize;
            let mut points = Vec::new();
            let mut x = seed.wrapping_add(17);
            for _ in 0..12 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                points.push(BitPoint::from_index(d, x >> 32));
            }
            let ps = PointSet::new(d, points).unwrap();
            let a = vec![0usize, 2, 3, 5];
            let (img_a, fib_a) = project(&ps, &a).unwrap();
            prop_assert_eq!(fib_a.total(), ps.len() as u64);
            prop_assert!(img_a.len() <= ps.len().min(1 << a.len()));
            // Projecting to coords {2,5} of the original equals projecting
            // the image to the reindexed positions {1,3} within `a`.
            let (direct, _) = project(&ps, &[2, 5]).unwrap();
            let (via, _) = project(&img_a, &[1, 3]).unwrap();
            prop_assert_eq!(direct, via);
        }
    }
}
