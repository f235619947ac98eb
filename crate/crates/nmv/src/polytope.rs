//! Exact lattice-polytope geometry: Newton polytopes, coordinate
//! projections, Minkowski sums, rational volumes and mixed volumes.
//!
//! Everything is computed over the integers / arbitrary-precision rationals;
//! no floating point. Hulls are restricted to ambient dimension <= 4, which
//! covers source dimension up to 4 with headroom over the instances this
//! library targets.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial::{binomial, MonomialIdeal};

/// Largest coordinate magnitude accepted by `hull`; keeps every determinant
/// this module computes comfortably inside i128.
const COORD_BOUND: i64 = 1 << 20;

/// A lattice polytope given by its vertex set (extreme points only).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
}

impl LatticePolytope {
    /// Convex hull of an integer point set; the stored vertices are exactly
    /// the extreme points, sorted.
    pub fn hull(points: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::EmptyPointSet);
        };
        let dim = first.len();
        if dim == 0 || dim > 4 {
            return Err(Error::AmbientTooLarge(dim));
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::MixedLengths(dim, p.len()));
            }
            if p.iter().any(|&c| c.abs() > COORD_BOUND) {
                return Err(Error::Validation(format!(
                    "coordinate magnitude exceeds {COORD_BOUND}"
                )));
            }
        }
        let mut pts = points;
        pts.sort();
        pts.dedup();
        let keep = extreme_indices(&pts);
        let vertices = keep.into_iter().map(|i| pts[i].clone()).collect();
        Ok(LatticePolytope { dim, vertices })
    }

    /// Newton polytope: hull of the exponent vectors of the minimal
    /// generators.
    pub fn newton(ideal: &MonomialIdeal) -> Result<Self> {
        if ideal.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let pts = ideal
            .gens()
            .iter()
            .map(|g| g.exps().iter().map(|&e| e as i64).collect())
            .collect();
        Self::hull(pts)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Dimension of the affine hull of the vertex set.
    pub fn affine_rank(&self) -> usize {
        affine_rank_pivots(&self.vertices).0
    }

    /// Drop the first coordinate of every vertex and re-hull.
    pub fn project_away_first(&self) -> Result<Self> {
        if self.dim < 2 {
            return Err(Error::Validation(
                "cannot project a polytope of ambient dimension 1".into(),
            ));
        }
        let pts = self.vertices.iter().map(|v| v[1..].to_vec()).collect();
        Self::hull(pts)
    }

    /// Minkowski sum, as the hull of pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::AmbientMismatch(self.dim, other.dim));
        }
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Self::hull(sums)
    }

    /// Integer dilation k*P; k = 0 collapses to the origin.
    pub fn dilate(&self, k: u32) -> Self {
        if k == 0 {
            return LatticePolytope { dim: self.dim, vertices: vec![vec![0; self.dim]] };
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|&c| c * k as i64).collect())
            .collect();
        LatticePolytope { dim: self.dim, vertices }
    }

    /// Translate by a lattice vector.
    pub fn translate(&self, shift: &[i64]) -> Result<Self> {
        if shift.len() != self.dim {
            return Err(Error::MixedLengths(self.dim, shift.len()));
        }
        let mut vertices: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(shift).map(|(c, s)| c + s).collect())
            .collect();
        vertices.sort();
        Ok(LatticePolytope { dim: self.dim, vertices })
    }

    /// Exact Euclidean volume in the ambient space; zero when the polytope
    /// is not full-dimensional.
    pub fn volume(&self) -> BigRational {
        let d = self.dim;
        if affine_rank_pivots(&self.vertices).0 < d {
            return BigRational::zero();
        }
        let simplices = triangulate_fulldim(&self.vertices, d);
        let mut total = BigInt::zero();
        for s in &simplices {
            let base = &self.vertices[s[0]];
            let rows: Vec<Vec<i128>> = s[1..]
                .iter()
                .map(|&i| {
                    self.vertices[i]
                        .iter()
                        .zip(base)
                        .map(|(a, b)| (*a - *b) as i128)
                        .collect()
                })
                .collect();
            total += BigInt::from(det(&rows).abs());
        }
        BigRational::new(total, BigInt::from(factorial(d)))
    }
}

impl Serialize for LatticePolytope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            vertices: &'a [Vec<i64>],
        }
        Raw { vertices: &self.vertices }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LatticePolytope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            vertices: Vec<Vec<i64>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        LatticePolytope::hull(raw.vertices).map_err(D::Error::custom)
    }
}

/// A multiset of polytopes in a common ambient space; the collection of
/// arguments of a mixed volume.
#[derive(Clone, Debug)]
pub struct PolytopeMultiset {
    entries: Vec<(LatticePolytope, usize)>,
}

impl PolytopeMultiset {
    pub fn new(entries: Vec<(LatticePolytope, usize)>) -> Result<Self> {
        let Some(dim) = entries.first().map(|(p, _)| p.ambient_dim()) else {
            return Err(Error::Validation("empty polytope multiset".into()));
        };
        for (p, mult) in &entries {
            if p.ambient_dim() != dim {
                return Err(Error::AmbientMismatch(dim, p.ambient_dim()));
            }
            if *mult == 0 {
                return Err(Error::Validation("zero multiplicity in multiset".into()));
            }
        }
        Ok(PolytopeMultiset { entries })
    }

    pub fn entries(&self) -> &[(LatticePolytope, usize)] {
        &self.entries
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn ambient_dim(&self) -> usize {
        self.entries[0].0.ambient_dim()
    }
}

/// Mixed volume under the normalization MV_r(K,...,K) = r! Vol_r(K),
/// by polarization inclusion-exclusion over sub-multisets:
///
///   MV_r(K_1,...,K_r) = sum_{0 != c <= mult} (-1)^(r-|c|) prod_i C(mult_i, c_i)
///                       Vol_r(c_1 K_1 + ... + c_q K_q).
///
/// Volumes of repeated sub-multisets are cached. The result is always an
/// integer for lattice polytopes; a non-integer result is a hard internal
/// error since it certifies broken normalization wiring.
pub fn mixed_volume(ms: &PolytopeMultiset) -> Result<BigRational> {
    let r = ms.ambient_dim();
    let total = ms.total_multiplicity();
    if total != r {
        return Err(Error::MultisetArity { got: total, want: r });
    }
    let mults: Vec<usize> = ms.entries.iter().map(|(_, m)| *m).collect();
    let mut cache: HashMap<Vec<u32>, BigRational> = HashMap::new();
    let mut acc = BigRational::zero();
    let mut c = vec![0u32; mults.len()];
    loop {
        // advance odometer over 0..=mult_i
        let mut pos = 0;
        loop {
            if pos == c.len() {
                break;
            }
            if (c[pos] as usize) < mults[pos] {
                c[pos] += 1;
                for slot in c.iter_mut().take(pos) {
                    *slot = 0;
                }
                break;
            }
            pos += 1;
        }
        if pos == c.len() {
            break;
        }
        let chosen: u32 = c.iter().sum();
        let vol = match cache.get(&c) {
            Some(v) => v.clone(),
            None => {
                let v = subset_sum_volume(ms, &c)?;
                cache.insert(c.clone(), v.clone());
                v
            }
        };
        let mut weight = BigInt::from(1u32);
        for (i, &ci) in c.iter().enumerate() {
            weight *= BigInt::from(binomial(mults[i] as u64, ci as u64));
        }
        let signed = if (r as u32 - chosen) % 2 == 0 { weight } else { -weight };
        acc += BigRational::from(signed) * vol;
    }
    if !acc.is_integer() || acc.is_negative() {
        return Err(Error::Internal(format!(
            "mixed volume evaluated to {acc}, expected a nonnegative integer"
        )));
    }
    Ok(acc)
}

/// Convenience wrapper returning the certified integer value.
pub fn mixed_volume_integer(ms: &PolytopeMultiset) -> Result<u64> {
    let v = mixed_volume(ms)?;
    let int = v.to_integer();
    u64::try_from(int.clone())
        .map_err(|_| Error::Internal(format!("mixed volume {int} out of u64 range")))
}

fn subset_sum_volume(ms: &PolytopeMultiset, coeffs: &[u32]) -> Result<BigRational> {
    let mut sum: Option<LatticePolytope> = None;
    for ((p, _), &c) in ms.entries.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        let scaled = p.dilate(c);
        sum = Some(match sum {
            None => scaled,
            Some(acc) => acc.minkowski_sum(&scaled)?,
        });
    }
    Ok(sum.expect("nonzero coefficient vector").volume())
}

// --- exact linear algebra helpers -----------------------------------------

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Determinant of a small square integer matrix by Laplace expansion.
fn det(rows: &[Vec<i128>]) -> i128 {
    let n = rows.len();
    match n {
        0 => 1,
        1 => rows[0][0],
        2 => rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0],
        _ => {
            let mut acc = 0i128;
            for j in 0..n {
                if rows[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = rows[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let term = rows[0][j] * det(&minor);
                acc += if j % 2 == 0 { term } else { -term };
            }
            acc
        }
    }
}

/// Affine rank of a point set together with a set of pivot coordinates on
/// which the projection restricted to the affine hull stays injective.
fn affine_rank_pivots(pts: &[Vec<i64>]) -> (usize, Vec<usize>) {
    let Some(base) = pts.first() else {
        return (0, Vec::new());
    };
    let dim = base.len();
    let mut rows: Vec<Vec<i128>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| (*a - *b) as i128).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..dim {
        let Some(pos) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pos);
        let (pivot_row, rest) = {
            let (a, b) = rows.split_at_mut(rank + 1);
            (&a[rank], b)
        };
        let pv = pivot_row[col];
        for row in rest.iter_mut() {
            if row[col] != 0 {
                let rv = row[col];
                for j in 0..dim {
                    row[j] = row[j] * pv - pivot_row[j] * rv;
                }
                reduce_row(row);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() || rank == dim {
            break;
        }
    }
    (rank, pivots)
}

fn reduce_row(row: &mut [i128]) {
    let mut g: i128 = 0;
    for &v in row.iter() {
        g = gcd_i128(g, v.abs());
    }
    if g > 1 {
        for v in row.iter_mut() {
            *v /= g;
        }
    }
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Hyperplane {
    normal: Vec<i128>,
    offset: i128,
}

impl Hyperplane {
    fn eval(&self, p: &[i64]) -> i128 {
        self.normal.iter().zip(p).map(|(n, &c)| n * c as i128).sum()
    }
}

/// All supporting hyperplanes spanned by point subsets of a full-dimensional
/// set; these are exactly the facet hyperplanes of the hull. Oriented so
/// that `normal . x <= offset` holds on the set, normals primitive.
fn supporting_hyperplanes(pts: &[Vec<i64>], d: usize) -> Vec<Hyperplane> {
    let mut seen: HashMap<Hyperplane, ()> = HashMap::new();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        if let Some(h) = hyperplane_through(pts, &idx) {
            let mut lower = false;
            let mut upper = false;
            let c = h.eval(&pts[idx[0]]);
            for p in pts {
                match h.eval(p).cmp(&c) {
                    std::cmp::Ordering::Less => lower = true,
                    std::cmp::Ordering::Greater => upper = true,
                    std::cmp::Ordering::Equal => {}
                }
                if lower && upper {
                    break;
                }
            }
            if !(lower && upper) {
                // orient: keep the polytope on the <= side
                let flip = upper;
                let mut normal = h.normal;
                let mut offset = c;
                if flip {
                    for v in normal.iter_mut() {
                        *v = -*v;
                    }
                    offset = -offset;
                }
                let hp = Hyperplane { normal, offset };
                if seen.insert(hp.clone(), ()).is_none() {
                    out.push(hp);
                }
            }
        }
        if !next_combination(&mut idx, pts.len()) {
            break;
        }
    }
    out
}

/// Hyperplane through `d` points (None when they are affinely dependent),
/// with primitive integer normal.
fn hyperplane_through(pts: &[Vec<i64>], idx: &[usize]) -> Option<Hyperplane> {
    let d = idx.len();
    let base = &pts[idx[0]];
    let vecs: Vec<Vec<i128>> = idx[1..]
        .iter()
        .map(|&i| pts[i].iter().zip(base).map(|(a, b)| (*a - *b) as i128).collect())
        .collect();
    // generalized cross product: cofactors along an appended row
    let mut normal = vec![0i128; d];
    for (j, slot) in normal.iter_mut().enumerate() {
        let minor: Vec<Vec<i128>> = vecs
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let m = det(&minor);
        *slot = if j % 2 == 0 { m } else { -m };
    }
    if normal.iter().all(|&v| v == 0) {
        return None;
    }
    let mut g = 0i128;
    for &v in &normal {
        g = gcd_i128(g, v.abs());
    }
    if g > 1 {
        for v in normal.iter_mut() {
            *v /= g;
        }
    }
    let offset = normal.iter().zip(base).map(|(n, &c)| n * c as i128).sum();
    Some(Hyperplane { normal, offset })
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    if k > n {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Indices of the extreme points of a deduplicated point set. Degenerate
/// (lower-dimensional) sets are reduced to injective pivot coordinates
/// first; extremeness is preserved under that affine isomorphism.
fn extreme_indices(pts: &[Vec<i64>]) -> Vec<usize> {
    if pts.len() <= 1 {
        return (0..pts.len()).collect();
    }
    let d = pts[0].len();
    let (rank, pivots) = affine_rank_pivots(pts);
    if rank == 0 {
        return vec![0];
    }
    if rank < d {
        let projected: Vec<Vec<i64>> = pts
            .iter()
            .map(|p| pivots.iter().map(|&j| p[j]).collect())
            .collect();
        return extreme_indices(&projected);
    }
    let hps = supporting_hyperplanes(pts, d);
    let mut keep = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let active: Vec<&Hyperplane> = hps.iter().filter(|h| h.eval(p) == h.offset).collect();
        if active.len() < d {
            continue;
        }
        if normal_rank(&active, d) == d {
            keep.push(i);
        }
    }
    keep
}

/// Rank of a set of (possibly large) integer normals, over the rationals.
fn normal_rank(hps: &[&Hyperplane], d: usize) -> usize {
    let mut rows: Vec<Vec<BigInt>> = hps
        .iter()
        .map(|h| h.normal.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..d {
        let Some(pos) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pos);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if !row[col].is_zero() {
                let (pv, rv) = (pivot[col].clone(), row[col].clone());
                for j in 0..d {
                    row[j] = &row[j] * &pv - &pivot[j] * &rv;
                }
            }
        }
        rank += 1;
        if rank == rows.len() || rank == d {
            break;
        }
    }
    rank
}

/// Fan triangulation of a full-dimensional polytope from its lex-least
/// vertex: every facet not containing the anchor is triangulated
/// recursively (projected injectively one dimension down) and coned.
fn triangulate_fulldim(pts: &[Vec<i64>], d: usize) -> Vec<Vec<usize>> {
    if d == 1 {
        let lo = (0..pts.len()).min_by_key(|&i| pts[i][0]).expect("nonempty");
        let hi = (0..pts.len()).max_by_key(|&i| pts[i][0]).expect("nonempty");
        return vec![vec![lo, hi]];
    }
    let anchor = (0..pts.len()).min_by_key(|&i| pts[i].clone()).expect("nonempty");
    let mut out = Vec::new();
    for h in supporting_hyperplanes(pts, d) {
        if h.eval(&pts[anchor]) == h.offset {
            continue;
        }
        let active: Vec<usize> = (0..pts.len()).filter(|&i| h.eval(&pts[i]) == h.offset).collect();
        let drop = h
            .normal
            .iter()
            .position(|&v| v != 0)
            .expect("nonzero normal");
        let projected: Vec<Vec<i64>> = active
            .iter()
            .map(|&i| {
                pts[i]
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != drop)
                    .map(|(_, &c)| c)
                    .collect()
            })
            .collect();
        for sub in triangulate_fulldim(&projected, d - 1) {
            let mut simplex = Vec::with_capacity(d + 1);
            simplex.push(anchor);
            simplex.extend(sub.into_iter().map(|k| active[k]));
            out.push(simplex);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn poly(pts: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::hull(pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn hull_removes_collinear_point() {
        let p = poly(&[&[0, 0], &[2, 0], &[1, 0]]);
        assert_eq!(p.vertices(), &[vec![0, 0], vec![2, 0]]);
    }

    #[test]
    fn hull_keeps_triangle() {
        let p = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(p.vertices().len(), 3);
    }

    #[test]
    fn hull_removes_interior_point() {
        let p = poly(&[&[3, 0], &[0, 1], &[1, 2], &[1, 1]]);
        assert_eq!(p.vertices(), &[vec![0, 1], vec![1, 2], vec![3, 0]]);
    }

    #[test]
    fn hull_of_point() {
        let p = poly(&[&[5, 7, 9]]);
        assert_eq!(p.vertices().len(), 1);
        assert_eq!(p.affine_rank(), 0);
    }

    #[test]
    fn hull_empty_errors() {
        assert!(matches!(LatticePolytope::hull(vec![]), Err(Error::EmptyPointSet)));
    }

    #[test]
    fn hull_degenerate_3d_edge_midpoint() {
        // three collinear points in R^3: midpoint must go
        let p = poly(&[&[0, 0, 0], &[1, 1, 1], &[2, 2, 2]]);
        assert_eq!(p.vertices(), &[vec![0, 0, 0], vec![2, 2, 2]]);
    }

    #[test]
    fn newton_polytope_of_squares() {
        let i = MonomialIdeal::new(
            3,
            vec![
                crate::monomial::Monomial::new(vec![2, 0, 0]),
                crate::monomial::Monomial::new(vec![0, 2, 0]),
                crate::monomial::Monomial::new(vec![0, 0, 2]),
            ],
        )
        .unwrap();
        let p = LatticePolytope::newton(&i).unwrap();
        assert_eq!(p.vertices().len(), 3);
    }

    #[test]
    fn newton_of_zero_ideal_errors() {
        let z = MonomialIdeal::zero(3);
        assert!(matches!(LatticePolytope::newton(&z), Err(Error::ZeroIdeal)));
    }

    #[test]
    fn project_tetrahedron_from_p3_example() {
        let p = poly(&[&[1, 2, 0, 0], &[1, 0, 0, 2], &[0, 1, 1, 1], &[0, 0, 2, 1]]);
        let q = p.project_away_first().unwrap();
        assert_eq!(
            q.vertices(),
            &[vec![0, 0, 2], vec![0, 2, 1], vec![1, 1, 1], vec![2, 0, 0]]
        );
    }

    #[test]
    fn project_point() {
        let p = poly(&[&[3, 4]]);
        assert_eq!(p.project_away_first().unwrap().vertices(), &[vec![4]]);
    }

    #[test]
    fn project_unit_triangle() {
        // Gamma((x,y,z)) projected away from x is the unit triangle
        let p = poly(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let q = p.project_away_first().unwrap();
        assert_eq!(q.vertices(), &[vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn minkowski_identity_element() {
        let p = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        let origin = poly(&[&[0, 0]]);
        assert_eq!(p.minkowski_sum(&origin).unwrap(), p);
    }

    #[test]
    fn minkowski_pentagon() {
        // (2,2) lands on the edge from (4,0) to (1,3), so the sum has five
        // vertices, not six
        let a = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        let b = poly(&[&[3, 0], &[0, 1], &[1, 2]]);
        let sum = a.minkowski_sum(&b).unwrap();
        let mut expected = vec![vec![3, 0], vec![4, 0], vec![1, 3], vec![0, 2], vec![0, 1]];
        expected.sort();
        assert_eq!(sum.vertices(), &expected[..]);
        assert_eq!(sum.volume(), rat(11, 2));
    }

    #[test]
    fn minkowski_commutes() {
        let a = poly(&[&[0, 0], &[2, 1], &[1, 3]]);
        let b = poly(&[&[0, 0], &[1, 0], &[0, 2], &[1, 1]]);
        assert_eq!(a.minkowski_sum(&b).unwrap(), b.minkowski_sum(&a).unwrap());
    }

    #[test]
    fn volume_unit_triangle() {
        let p = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(p.volume(), rat(1, 2));
    }

    #[test]
    fn volume_p3_example_tetrahedron() {
        let p = poly(&[&[2, 0, 0], &[0, 0, 2], &[1, 1, 1], &[0, 2, 1]]);
        assert_eq!(p.volume(), rat(1, 3));
    }

    #[test]
    fn volume_degenerate_is_zero() {
        let p = poly(&[&[0, 0], &[1, 0], &[2, 0]]);
        assert!(p.volume().is_zero());
    }

    #[test]
    fn volume_unit_cube() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        let p = LatticePolytope::hull(pts).unwrap();
        assert_eq!(p.vertices().len(), 8);
        assert!(p.volume().is_one());
    }

    #[test]
    fn mixed_volume_diagonal_is_factorial_times_volume() {
        let k = poly(&[&[0, 0], &[2, 0], &[0, 2], &[1, 2]]);
        let ms = PolytopeMultiset::new(vec![(k.clone(), 2)]).unwrap();
        let mv = mixed_volume(&ms).unwrap();
        assert_eq!(mv, BigRational::from(BigInt::from(2)) * k.volume());
    }

    #[test]
    fn mixed_volume_squares_example() {
        // pi(Gamma((x^2,y^2,z^2))) twice: 2! Vol = 4
        let k = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
        let ms = PolytopeMultiset::new(vec![(k, 2)]).unwrap();
        assert_eq!(mixed_volume_integer(&ms).unwrap(), 4);
    }

    #[test]
    fn mixed_volume_hexagon_example() {
        let a = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        let b = poly(&[&[3, 0], &[0, 1], &[1, 2]]);
        let ms = PolytopeMultiset::new(vec![(a, 1), (b, 1)]).unwrap();
        assert_eq!(mixed_volume_integer(&ms).unwrap(), 3);
    }

    #[test]
    fn mixed_volume_arity_mismatch() {
        let a = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        let ms = PolytopeMultiset::new(vec![(a, 3)]).unwrap();
        assert!(matches!(mixed_volume(&ms), Err(Error::MultisetArity { .. })));
    }

    #[test]
    fn mixed_volume_permutation_invariant() {
        let a = poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let b = poly(&[&[2, 0, 0], &[0, 0, 2], &[1, 1, 1], &[0, 2, 1]]);
        let m1 = PolytopeMultiset::new(vec![(a.clone(), 2), (b.clone(), 1)]).unwrap();
        let m2 = PolytopeMultiset::new(vec![(b, 1), (a, 2)]).unwrap();
        assert_eq!(mixed_volume(&m1).unwrap(), mixed_volume(&m2).unwrap());
    }

    #[test]
    fn p3_example_volumes_and_mixed_volumes() {
        let a = poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let b = poly(&[&[2, 0, 0], &[0, 0, 2], &[1, 1, 1], &[0, 2, 1]]);
        assert_eq!(a.volume(), rat(1, 6));
        assert_eq!(b.volume(), rat(1, 3));
        assert_eq!(a.minkowski_sum(&b).unwrap().volume(), rat(9, 2));
        let two_a_b = a.dilate(2).minkowski_sum(&b).unwrap();
        assert_eq!(two_a_b.volume(), rat(38, 3));
        let aab = PolytopeMultiset::new(vec![(a.clone(), 2), (b.clone(), 1)]).unwrap();
        let abb = PolytopeMultiset::new(vec![(a, 1), (b, 2)]).unwrap();
        assert_eq!(mixed_volume_integer(&aab).unwrap(), 3);
        assert_eq!(mixed_volume_integer(&abb).unwrap(), 5);
    }

    #[test]
    fn translate_preserves_volume() {
        let p = poly(&[&[0, 0], &[3, 0], &[1, 2]]);
        let q = p.translate(&[5, -2]).unwrap();
        assert_eq!(p.volume(), q.volume());
    }

    #[test]
    fn serde_round_trip() {
        let p = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"vertices":[[0,0],[0,1],[1,0],[1,1]]}"#);
        let back: LatticePolytope = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
