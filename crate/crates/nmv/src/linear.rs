//! Classical (linear) multiview varieties: camera kernels as base points,
//! the exact support criterion deciding which multidegrees equal one, and a
//! bridge exporting coordinate-aligned configurations to the monomial
//! engine for cross-validation.
//!
//! All linear algebra is exact rational; rank decisions are never
//! approximate.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::engine::{MapSpec, MultidegreeTable};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

pub type Rat = BigRational;

/// A configuration of cameras: camera i is an (m_i + 1) x (r + 1) matrix
/// with exact rational entries, defining a linear map to P^{m_i}.
#[derive(Clone, Debug)]
pub struct CameraConfig {
    r: usize,
    cameras: Vec<Vec<Vec<Rat>>>,
}

impl CameraConfig {
    pub fn new(r: usize, cameras: Vec<Vec<Vec<Rat>>>) -> Result<Self> {
        if r == 0 {
            return Err(Error::Validation("source dimension r must be >= 1".into()));
        }
        if cameras.is_empty() {
            return Err(Error::Validation("at least one camera is required".into()));
        }
        for (i, cam) in cameras.iter().enumerate() {
            if cam.is_empty() {
                return Err(Error::Validation(format!("camera {} has no rows", i + 1)));
            }
            for row in cam {
                if row.len() != r + 1 {
                    return Err(Error::Validation(format!(
                        "camera {} has a row of length {}, expected {}",
                        i + 1,
                        row.len(),
                        r + 1
                    )));
                }
            }
        }
        Ok(CameraConfig { r, cameras })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn p(&self) -> usize {
        self.cameras.len()
    }

    pub fn cameras(&self) -> &[Vec<Vec<Rat>>] {
        &self.cameras
    }
}

/// A base point of the configuration: the kernel of one or more cameras,
/// in canonical projective normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePoint {
    pub coords: Vec<Rat>,
    /// Indices of the cameras whose kernel this is.
    pub cameras: Vec<usize>,
}

/// Reduced row echelon form; returns the rank. Rows of zeros sink to the
/// bottom.
fn rref(matrix: &mut Vec<Vec<Rat>>) -> usize {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&i| !matrix[i][col].is_zero()) else {
            continue;
        };
        matrix.swap(rank, pivot);
        let pv = matrix[rank][col].clone();
        for entry in matrix[rank].iter_mut() {
            *entry /= &pv;
        }
        for i in 0..rows {
            if i != rank && !matrix[i][col].is_zero() {
                let factor = matrix[i][col].clone();
                for k in 0..cols {
                    let delta = &factor * &matrix[rank][k];
                    matrix[i][k] -= delta;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Kernel point of one camera. `None` when the camera has full rank r+1;
/// an error when the rank is below r (positive-dimensional kernel).
fn kernel_point(camera: &[Vec<Rat>], r: usize, index: usize) -> Result<Option<Vec<Rat>>> {
    let mut m: Vec<Vec<Rat>> = camera.to_vec();
    let rank = rref(&mut m);
    if rank == r + 1 {
        return Ok(None);
    }
    if rank < r {
        return Err(Error::Hypothesis(format!(
            "camera {} has rank {rank} < r = {r}: the base locus is positive-dimensional",
            index + 1
        )));
    }
    // rank == r: one free column determines the kernel line
    let mut pivots = Vec::with_capacity(rank);
    let mut row = 0;
    for col in 0..=r {
        if row < rank && m[row][col].is_one() && pivots.len() == row {
            // confirm this is the leading entry of the row
            if m[row][..col].iter().all(|v| v.is_zero()) {
                pivots.push(col);
                row += 1;
                continue;
            }
        }
    }
    let free = (0..=r).find(|c| !pivots.contains(c)).expect("rank r leaves one free column");
    let mut v = vec![Rat::zero(); r + 1];
    v[free] = Rat::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[row][free].clone();
    }
    Ok(Some(normalize_projective(v)))
}

/// Scale so the first nonzero coordinate is 1; deterministic grouping key.
fn normalize_projective(mut v: Vec<Rat>) -> Vec<Rat> {
    if let Some(first) = v.iter().find(|c| !c.is_zero()).cloned() {
        for c in v.iter_mut() {
            *c /= &first;
        }
    }
    v
}

/// Kernel points of all cameras with rank exactly r, grouped by point.
/// Cameras of full rank r+1 contribute no base point.
pub fn camera_base_points(cfg: &CameraConfig) -> Result<Vec<BasePoint>> {
    let mut points: Vec<BasePoint> = Vec::new();
    for (i, cam) in cfg.cameras.iter().enumerate() {
        if let Some(coords) = kernel_point(cam, cfg.r, i)? {
            match points.iter_mut().find(|p| p.coords == coords) {
                Some(p) => p.cameras.push(i),
                None => points.push(BasePoint { coords, cameras: vec![i] }),
            }
        }
    }
    Ok(points)
}

/// The multiplicity-free support table: entry(d) is 1 exactly when, for
/// every base point, some factor with d_i >= 1 has an ideal different from
/// that point's prime (i.e. a kernel elsewhere or no kernel at all).
pub fn multidegree_support(cfg: &CameraConfig) -> Result<MultidegreeTable> {
    let kernels: Vec<Option<Vec<Rat>>> = cfg
        .cameras
        .iter()
        .enumerate()
        .map(|(i, cam)| kernel_point(cam, cfg.r, i))
        .collect::<Result<_>>()?;
    let points = camera_base_points(cfg)?;
    MultidegreeTable::from_fn(cfg.r as u32, cfg.p(), |d| {
        let ok = points.iter().all(|pt| {
            kernels
                .iter()
                .zip(d)
                .any(|(k, &di)| di >= 1 && k.as_ref() != Some(&pt.coords))
        });
        Ok(ok as u64)
    })
}

/// When every camera's row space is spanned by coordinate vectors, the
/// configuration is equivalent to a monomial map generated by variables;
/// returns that spec for cross-validation, or `None` otherwise.
pub fn coordinate_aligned_spec(cfg: &CameraConfig) -> Result<Option<MapSpec>> {
    let nvars = cfg.r + 1;
    let mut ideals = Vec::with_capacity(cfg.p());
    for cam in &cfg.cameras {
        let mut m = cam.clone();
        let rank = rref(&mut m);
        let mut gens = Vec::with_capacity(rank);
        for row in m.iter().take(rank) {
            let nonzero: Vec<usize> = (0..nvars).filter(|&c| !row[c].is_zero()).collect();
            match nonzero.as_slice() {
                [single] => {
                    let mut exps = vec![0u16; nvars];
                    exps[*single] = 1;
                    gens.push(Monomial::new(exps));
                }
                _ => return Ok(None),
            }
        }
        ideals.push(MonomialIdeal::new(nvars, gens)?);
    }
    MapSpec::new(ideals).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn matrix(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    /// Camera with rows x, y, z in P^3 (kernel at the w point).
    fn cam_xyz() -> Vec<Vec<Rat>> {
        matrix(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]])
    }

    /// Camera with rows x, y, w in P^3 (kernel at the z point).
    fn cam_xyw() -> Vec<Vec<Rat>> {
        matrix(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])
    }

    #[test]
    fn two_distinct_cameras_two_points() {
        let cfg = CameraConfig::new(3, vec![cam_xyz(), cam_xyw()]).unwrap();
        let pts = camera_base_points(&cfg).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].coords, vec![rat(0), rat(0), rat(0), rat(1)]);
        assert_eq!(pts[1].coords, vec![rat(0), rat(0), rat(1), rat(0)]);
    }

    #[test]
    fn invertible_camera_contributes_no_point() {
        let id4 = matrix(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let cfg = CameraConfig::new(3, vec![id4]).unwrap();
        assert!(camera_base_points(&cfg).unwrap().is_empty());
    }

    #[test]
    fn duplicate_cameras_grouped() {
        let cfg = CameraConfig::new(3, vec![cam_xyz(), cam_xyz()]).unwrap();
        let pts = camera_base_points(&cfg).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].cameras, vec![0, 1]);
    }

    #[test]
    fn rank_deficient_camera_errors() {
        let bad = matrix(&[&[1, 0, 0, 0], &[2, 0, 0, 0], &[3, 0, 0, 0]]);
        let cfg = CameraConfig::new(3, vec![bad]).unwrap();
        assert!(matches!(camera_base_points(&cfg), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn support_two_cameras_p3() {
        let cfg = CameraConfig::new(3, vec![cam_xyz(), cam_xyw()]).unwrap();
        let t = multidegree_support(&cfg).unwrap();
        assert_eq!(t.get(&[3, 0]), Some(0));
        assert_eq!(t.get(&[2, 1]), Some(1));
        assert_eq!(t.get(&[1, 2]), Some(1));
        assert_eq!(t.get(&[0, 3]), Some(0));
    }

    #[test]
    fn support_identity_map() {
        let id4 = matrix(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let cfg = CameraConfig::new(3, vec![id4]).unwrap();
        let t = multidegree_support(&cfg).unwrap();
        assert_eq!(t.get(&[3]), Some(1));
    }

    #[test]
    fn support_three_cameras_p3() {
        let cam_xzw = matrix(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let cfg = CameraConfig::new(3, vec![cam_xyz(), cam_xyw(), cam_xzw]).unwrap();
        let t = multidegree_support(&cfg).unwrap();
        assert_eq!(t.get(&[1, 1, 1]), Some(1));
        assert_eq!(t.get(&[3, 0, 0]), Some(0));
        assert_eq!(t.get(&[2, 1, 0]), Some(1));
        assert_eq!(t.get(&[0, 0, 3]), Some(0));
    }

    #[test]
    fn support_invariant_under_row_operations() {
        let mixed = matrix(&[&[1, 2, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]); // row space = <x,y,z>
        let cfg1 = CameraConfig::new(3, vec![cam_xyz(), cam_xyw()]).unwrap();
        let cfg2 = CameraConfig::new(3, vec![mixed, cam_xyw()]).unwrap();
        assert_eq!(
            multidegree_support(&cfg1).unwrap(),
            multidegree_support(&cfg2).unwrap()
        );
    }

    #[test]
    fn alignment_exports_monomial_spec() {
        let cfg = CameraConfig::new(3, vec![cam_xyz(), cam_xyw()]).unwrap();
        let spec = coordinate_aligned_spec(&cfg).unwrap().unwrap();
        assert_eq!(spec.p(), 2);
        assert_eq!(spec.deltas(), &[1, 1]);
    }

    #[test]
    fn alignment_accepts_row_operations_within_coordinate_span() {
        // rows span <x, y, z> even though entries are mixed
        let mixed = matrix(&[&[2, 3, 0, 0], &[0, 5, 0, 0], &[0, 0, 7, 0]]);
        let cfg = CameraConfig::new(3, vec![mixed]).unwrap();
        assert!(coordinate_aligned_spec(&cfg).unwrap().is_some());
    }

    #[test]
    fn alignment_rejects_generic_camera() {
        let generic = matrix(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]]);
        let cfg = CameraConfig::new(3, vec![generic]).unwrap();
        assert!(coordinate_aligned_spec(&cfg).unwrap().is_none());
    }

    #[test]
    fn identity_camera_exports_irrelevant_ideal() {
        let id3 = matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let cfg = CameraConfig::new(2, vec![id3]).unwrap();
        let spec = coordinate_aligned_spec(&cfg).unwrap().unwrap();
        assert_eq!(spec.ideals()[0], MonomialIdeal::irrelevant(3));
    }

    #[test]
    fn kernel_of_scaled_rows() {
        // non-coordinate camera with kernel (1 : -1 : 1)
        let cam = matrix(&[&[1, 1, 0], &[0, 1, 1]]);
        let cfg = CameraConfig::new(2, vec![cam]).unwrap();
        let pts = camera_base_points(&cfg).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].coords, vec![rat(1), rat(-1), rat(1)]);
    }
}
