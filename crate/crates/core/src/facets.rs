//! Exact facet enumeration for the projected polytope.
//!
//! Points are projected to image coordinates (dimension (n−1)²), where the
//! polytope is full-dimensional, and the complete irredundant set of
//! facet-inducing inequalities is computed by the double-description
//! method: a valid inequality a·x ≤ b is a ray (a, b) of the cone
//! C = {(a, b) : a·vᵢ − b ≤ 0 for every point vᵢ}, and for a bounded
//! full-dimensional polytope the extreme rays of C are exactly the facets.
//! All arithmetic is integer (rows are scaled, rays gcd-reduced), so the
//! facet list is exact and canonical.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::perm::check_n;
use crate::rational::{
    insert_into_echelon, integer_rank, integer_row, reduce_by_gcd, ExactScalar, ExactVector,
};
use crate::transform::{image_coords, PointSet};

/// Image-space coordinates of one transformed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedPoint {
    pub source_index: usize,
    pub coords: ExactVector,
}

/// Drops the last row and column of every point's matrix; lossless on the
/// affine hull of the point set.
pub fn project(ps: &PointSet) -> Vec<ProjectedPoint> {
    ps.points()
        .iter()
        .enumerate()
        .map(|(source_index, q)| ProjectedPoint {
            source_index,
            coords: image_coords(q.coords(), ps.n()),
        })
        .collect()
}

/// Dimension of the affine hull, by exact rank of differences.
pub fn affine_dim(points: &[ProjectedPoint]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0].coords;
    let dim = base.len();
    let diffs = points[1..].iter().map(|p| {
        let diff: Vec<ExactScalar> = (0..dim).map(|k| &p.coords[k] - &base[k]).collect();
        integer_row(&diff)
    });
    integer_rank(diffs, dim)
}

/// One facet-inducing inequality coeffs·x ≤ rhs in image coordinates.
/// Coefficients are integers with overall gcd 1; the orientation is fixed
/// by the ≤ direction (the sign pattern itself is not canonicalized).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
}

impl Facet {
    /// Normalizes by the gcd of all entries (sign preserved).
    pub fn new(coeffs: Vec<BigInt>, rhs: BigInt) -> Result<Self> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::BadShape("facet needs a nonzero normal".into()));
        }
        let mut all = coeffs;
        all.push(rhs);
        reduce_by_gcd(&mut all);
        let rhs = all.pop().expect("rhs present");
        Ok(Self { coeffs: all, rhs })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn rhs(&self) -> &BigInt {
        &self.rhs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// coeffs·x − rhs; a point satisfies the facet when this is ≤ 0.
    pub fn slack(&self, point: &ExactVector) -> ExactScalar {
        let mut acc = -ExactScalar::from(self.rhs.clone());
        for (c, x) in self.coeffs.iter().zip(point.iter()) {
            if !c.is_zero() && !x.is_zero() {
                acc += ExactScalar::from(c.clone()) * x;
            }
        }
        acc
    }

    pub fn satisfied_by(&self, point: &ExactVector) -> bool {
        self.slack(point) <= ExactScalar::zero()
    }

    pub fn tight_at(&self, point: &ExactVector) -> bool {
        self.slack(point).is_zero()
    }
}

/// The complete facet list, sorted lexicographically for byte-stable output.
#[derive(Clone, Debug)]
pub struct HRepresentation {
    pub dimension: usize,
    pub facets: Vec<Facet>,
    pub is_full_dimensional: bool,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FacetOptions {
    /// Enumeration beyond dimension 9 (that is, beyond n = 4) must be
    /// requested explicitly; ray counts explode combinatorially.
    pub allow_large: bool,
}

const DEFAULT_DIM_LIMIT: usize = 9;
const MAX_POINTS: usize = 128;

pub fn enumerate_facets(points: &[ProjectedPoint], options: &FacetOptions) -> Result<HRepresentation> {
    if points.is_empty() {
        return Err(Error::BadShape("no points to enumerate facets of".into()));
    }
    let dim = points[0].coords.len();
    if points.iter().any(|p| p.coords.len() != dim) {
        return Err(Error::BadShape("projected points have mixed dimensions".into()));
    }
    if dim > DEFAULT_DIM_LIMIT && !options.allow_large {
        return Err(Error::FacetSizeGuard {
            dim,
            limit: DEFAULT_DIM_LIMIT,
        });
    }
    if points.len() > MAX_POINTS {
        return Err(Error::Internal(format!(
            "facet enumeration supports at most {MAX_POINTS} points, got {}",
            points.len()
        )));
    }
    let found = affine_dim(points);
    if found != dim {
        return Err(Error::NotFullDimensional {
            found,
            ambient: dim,
        });
    }

    // Homogenized integer rows: (a, b) ∈ C iff (v_i, −1)·(a, b) ≤ 0 for all
    // i; scaling each row to integers changes nothing.
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut vals: Vec<ExactScalar> = p.coords.as_slice().to_vec();
            vals.push(ExactScalar::from(BigInt::from(-1)));
            integer_row(&vals)
        })
        .collect();

    let rays = double_description(&rows, dim)?;

    let mut facets = Vec::with_capacity(rays.len());
    for ray in rays {
        let mut v = ray.v;
        let rhs = v.pop().expect("homogeneous coordinate present");
        if v.iter().all(|c| c.is_zero()) {
            return Err(Error::Internal(
                "trivial ray (0, b) survived as extreme; the polytope cannot be \
                 bounded and full-dimensional"
                    .into(),
            ));
        }
        facets.push(Facet::new(v, rhs)?);
    }
    facets.sort();
    for pair in facets.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::Internal("duplicate facet escaped the double description".into()));
        }
    }
    for f in &facets {
        for p in points {
            if !f.satisfied_by(&p.coords) {
                return Err(Error::Internal(format!(
                    "enumerated facet violated by point {}",
                    p.source_index
                )));
            }
        }
    }

    Ok(HRepresentation {
        dimension: dim,
        facets,
        is_full_dimensional: true,
    })
}

/// Extreme ray of the current cone, with the set of processed rows it is
/// tight on as a bitmask.
struct Ray {
    v: Vec<BigInt>,
    zeros: u128,
}

fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Extreme rays of {y : rows·y ≤ 0}, assuming the rows have full column
/// rank (the cone is pointed).
fn double_description(rows: &[Vec<BigInt>], dim: usize) -> Result<Vec<Ray>> {
    let width = dim + 1;
    // Initial simplicial cone from the first maximal independent row set.
    let mut echelon: Vec<(usize, Vec<BigInt>)> = Vec::new();
    let mut base_rows: Vec<usize> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if insert_into_echelon(&mut echelon, row.clone()) {
            base_rows.push(i);
            if base_rows.len() == width {
                break;
            }
        }
    }
    if base_rows.len() < width {
        return Err(Error::Internal(
            "homogenized rows do not span; affine-dimension check should have caught this".into(),
        ));
    }

    let r_mat: Vec<Vec<BigInt>> = base_rows.iter().map(|&i| rows[i].clone()).collect();
    let det = bareiss_det(r_mat.clone());
    debug_assert!(!det.is_zero());
    let det_positive = det.is_positive();

    let mut processed: u128 = 0;
    for &i in &base_rows {
        processed |= 1u128 << i;
    }

    // Ray k is −sign(det) times column k of the adjugate: the unique ray
    // tight on every base row except base_rows[k].
    let mut rays: Vec<Ray> = (0..width)
        .map(|k| {
            let mut v: Vec<BigInt> = (0..width)
                .map(|j| {
                    let minor = bareiss_det(minor_matrix(&r_mat, k, j));
                    let signed = if (k + j) % 2 == 0 { minor } else { -minor };
                    if det_positive {
                        -signed
                    } else {
                        signed
                    }
                })
                .collect();
            reduce_by_gcd(&mut v);
            let zeros = processed & !(1u128 << base_rows[k]);
            Ray { v, zeros }
        })
        .collect();

    #[cfg(debug_assertions)]
    for (k, ray) in rays.iter().enumerate() {
        for (j, &ri) in base_rows.iter().enumerate() {
            let d = dot_int(&rows[ri], &ray.v);
            if j == k {
                debug_assert!(d.is_negative());
            } else {
                debug_assert!(d.is_zero());
            }
        }
    }

    let min_common = (dim.saturating_sub(1)) as u32;
    for (t, row) in rows.iter().enumerate() {
        if processed & (1u128 << t) != 0 {
            continue;
        }
        let dots: Vec<BigInt> = rays.iter().map(|r| dot_int(row, &r.v)).collect();
        let keep_idx: Vec<usize> = (0..rays.len()).filter(|&i| !dots[i].is_positive()).collect();
        let neg_idx: Vec<usize> = keep_idx
            .iter()
            .copied()
            .filter(|&i| dots[i].is_negative())
            .collect();
        let pos_idx: Vec<usize> = (0..rays.len()).filter(|&i| dots[i].is_positive()).collect();

        let mut next: Vec<Ray> = Vec::with_capacity(keep_idx.len() + neg_idx.len());
        for &i in &keep_idx {
            let zeros = rays[i].zeros | if dots[i].is_zero() { 1u128 << t } else { 0 };
            next.push(Ray {
                v: rays[i].v.clone(),
                zeros,
            });
        }

        // Each adjacent (kept, cut) pair meets the new hyperplane in one
        // new extreme ray. Adjacency is the standard combinatorial test:
        // no third ray is tight on the pair's common tight set.
        for &p in &neg_idx {
            for &q in &pos_idx {
                let common = rays[p].zeros & rays[q].zeros;
                if common.count_ones() < min_common {
                    continue;
                }
                let blocked = (0..rays.len()).any(|r| {
                    r != p && r != q && (rays[r].zeros & common) == common
                });
                if blocked {
                    continue;
                }
                // s_q·p − s_p·q is a positive combination (s_p < 0 < s_q)
                // lying on the new hyperplane.
                let mut v: Vec<BigInt> = (0..width)
                    .map(|j| &dots[q] * &rays[p].v[j] - &dots[p] * &rays[q].v[j])
                    .collect();
                reduce_by_gcd(&mut v);
                let mut zeros = 0u128;
                let mask = processed | (1u128 << t);
                for i in 0..rows.len() {
                    if mask & (1u128 << i) != 0 && dot_int(&rows[i], &v).is_zero() {
                        zeros |= 1u128 << i;
                    }
                }
                debug_assert!(zeros & (1u128 << t) != 0);
                next.push(Ray { v, zeros });
            }
        }

        processed |= 1u128 << t;
        rays = next;
    }
    Ok(rays)
}

fn minor_matrix(m: &[Vec<BigInt>], skip_row: usize, skip_col: usize) -> Vec<Vec<BigInt>> {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|&(j, _)| j != skip_col)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination; exact integer determinant.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign_positive = true;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign_positive = !sign_positive;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if sign_positive {
        det
    } else {
        -det
    }
}

/// Independent re-check of an H-representation against the points it came
/// from and the externally expected set of extreme points.
#[derive(Clone, Debug)]
pub struct HrepVerification {
    pub facet_count: usize,
    /// (a) every point satisfies every facet.
    pub all_points_valid: bool,
    /// (b) every facet is tight on a point set of affine rank dim−1.
    pub tight_sets_span_facets: bool,
    /// (c) the normalized facet list has no duplicates.
    pub no_duplicate_facets: bool,
    /// (d) points whose tight facet normals span the full dimension are
    /// exactly the expected extreme points.
    pub vertex_set_matches: bool,
}

impl HrepVerification {
    pub fn passed(&self) -> bool {
        self.all_points_valid
            && self.tight_sets_span_facets
            && self.no_duplicate_facets
            && self.vertex_set_matches
    }
}

pub fn verify_hrep(
    h: &HRepresentation,
    points: &[ProjectedPoint],
    expected_extreme: &BTreeSet<usize>,
) -> HrepVerification {
    let dim = h.dimension;

    let all_points_valid = h
        .facets
        .iter()
        .all(|f| points.iter().all(|p| f.satisfied_by(&p.coords)));

    let tight_sets_span_facets = h.facets.iter().all(|f| {
        let tight: Vec<&ProjectedPoint> = points
            .iter()
            .filter(|p| f.tight_at(&p.coords))
            .collect();
        if tight.is_empty() {
            return false;
        }
        let base = &tight[0].coords;
        let diffs = tight[1..].iter().map(|p| {
            let diff: Vec<ExactScalar> = (0..dim).map(|k| &p.coords[k] - &base[k]).collect();
            integer_row(&diff)
        });
        integer_rank(diffs, dim) == dim - 1
    });

    let mut seen: BTreeSet<&Facet> = BTreeSet::new();
    let no_duplicate_facets = h.facets.iter().all(|f| seen.insert(f));

    // A point is a vertex of the H-representation iff its tight facet
    // normals span R^dim.
    let vertices: BTreeSet<usize> = points
        .iter()
        .filter(|p| {
            let tight_normals = h
                .facets
                .iter()
                .filter(|f| f.tight_at(&p.coords))
                .map(|f| f.coeffs().to_vec());
            integer_rank(tight_normals, dim) == dim
        })
        .map(|p| p.source_index)
        .collect();
    let vertex_set_matches = &vertices == expected_extreme;

    HrepVerification {
        facet_count: h.facets.len(),
        all_points_valid,
        tight_sets_span_facets,
        no_duplicate_facets,
        vertex_set_matches,
    }
}

/// Convenience constructor for tests and callers holding raw coordinates.
pub fn projected_from_raw(coords: Vec<Vec<ExactScalar>>) -> Vec<ProjectedPoint> {
    coords
        .into_iter()
        .enumerate()
        .map(|(source_index, v)| ProjectedPoint {
            source_index,
            coords: ExactVector::new(v),
        })
        .collect()
}

/// Guard consistent with the CLI: facet enumeration defaults to n ≤ 4.
pub fn guard_n(n: usize, allow_large: bool) -> Result<()> {
    check_n(n)?;
    let dim = (n - 1) * (n - 1);
    if dim > DEFAULT_DIM_LIMIT && !allow_large {
        return Err(Error::FacetSizeGuard {
            dim,
            limit: DEFAULT_DIM_LIMIT,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremality::classify_extrema_for;
    use crate::rational::{int, normalize};
    use crate::transform::{build_point_set, Epsilon};

    fn r(num: i64, den: i64) -> ExactScalar {
        normalize(num, den).unwrap()
    }

    fn pts(raw: Vec<Vec<i64>>) -> Vec<ProjectedPoint> {
        projected_from_raw(
            raw.into_iter()
                .map(|v| v.into_iter().map(int).collect())
                .collect(),
        )
    }

    fn enumerate(points: &[ProjectedPoint]) -> HRepresentation {
        enumerate_facets(points, &FacetOptions::default()).unwrap()
    }

    fn all_indices(points: &[ProjectedPoint]) -> BTreeSet<usize> {
        points.iter().map(|p| p.source_index).collect()
    }

    #[test]
    fn triangle_has_three_facets() {
        let points = pts(vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let h = enumerate(&points);
        assert_eq!(h.facets.len(), 3);
        let v = verify_hrep(&h, &points, &all_indices(&points));
        assert!(v.passed(), "{v:?}");
    }

    #[test]
    fn cube_has_six_facets() {
        let mut raw = Vec::new();
        for x in 0..2i64 {
            for y in 0..2i64 {
                for z in 0..2i64 {
                    raw.push(vec![x, y, z]);
                }
            }
        }
        let points = pts(raw);
        let h = enumerate(&points);
        assert_eq!(h.facets.len(), 6);
        assert!(verify_hrep(&h, &points, &all_indices(&points)).passed());
    }

    #[test]
    fn cross_polytope_has_eight_facets() {
        let points = pts(vec![
            vec![1, 0, 0],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
        ]);
        let h = enumerate(&points);
        assert_eq!(h.facets.len(), 8);
        assert!(verify_hrep(&h, &points, &all_indices(&points)).passed());
        // Octahedron facets are ±x±y±z ≤ 1.
        for f in &h.facets {
            assert!(f.coeffs().iter().all(|c| c.abs() == BigInt::from(1)));
            assert_eq!(*f.rhs(), BigInt::from(1));
        }
    }

    #[test]
    fn nine_dimensional_simplex_has_ten_facets() {
        let mut raw = vec![vec![0i64; 9]];
        for k in 0..9 {
            let mut v = vec![0i64; 9];
            v[k] = 1;
            raw.push(v);
        }
        let points = pts(raw);
        let h = enumerate(&points);
        assert_eq!(h.facets.len(), 10);
        assert!(verify_hrep(&h, &points, &all_indices(&points)).passed());
    }

    #[test]
    fn interior_point_is_not_a_vertex() {
        let mut points = pts(vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        points.push(ProjectedPoint {
            source_index: 4,
            coords: ExactVector::new(vec![r(1, 3), r(2, 5)]),
        });
        let h = enumerate(&points);
        assert_eq!(h.facets.len(), 4);
        let expected: BTreeSet<usize> = [0, 1, 2, 3].into_iter().collect();
        assert!(verify_hrep(&h, &points, &expected).passed());
        // Declaring the interior point a vertex must fail the check.
        let wrong: BTreeSet<usize> = [0, 1, 2, 3, 4].into_iter().collect();
        assert!(!verify_hrep(&h, &points, &wrong).passed());
    }

    #[test]
    fn size_guard_requires_override() {
        let mut raw = vec![vec![0i64; 10]];
        for k in 0..10 {
            let mut v = vec![0i64; 10];
            v[k] = 1;
            raw.push(v);
        }
        let points = pts(raw);
        assert!(matches!(
            enumerate_facets(&points, &FacetOptions::default()),
            Err(Error::FacetSizeGuard { dim: 10, limit: 9 })
        ));
        let h = enumerate_facets(&points, &FacetOptions { allow_large: true }).unwrap();
        assert_eq!(h.facets.len(), 11);

        assert!(guard_n(4, false).is_ok());
        assert!(matches!(guard_n(5, false), Err(Error::FacetSizeGuard { .. })));
        assert!(guard_n(5, true).is_ok());
    }

    #[test]
    fn degenerate_input_is_rejected() {
        let collinear = pts(vec![vec![0, 0], vec![1, 1], vec![2, 2]]);
        assert!(matches!(
            enumerate_facets(&collinear, &FacetOptions::default()),
            Err(Error::NotFullDimensional { found: 1, ambient: 2 })
        ));
    }

    #[test]
    fn verify_rejects_perturbed_and_duplicated_facets() {
        let points = pts(vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let h = enumerate(&points);
        let expected = all_indices(&points);

        let mut shrunk = h.clone();
        let f = &shrunk.facets[0];
        shrunk.facets[0] =
            Facet::new(f.coeffs().to_vec(), f.rhs() - BigInt::from(1)).unwrap();
        assert!(!verify_hrep(&shrunk, &points, &expected).all_points_valid);

        let mut duplicated = h.clone();
        duplicated.facets.push(duplicated.facets[0].clone());
        let v = verify_hrep(&duplicated, &points, &expected);
        assert!(!v.no_duplicate_facets);
        assert!(!v.passed());
    }

    #[test]
    fn projection_shapes_and_distinctness() {
        let ps = build_point_set(4, &Epsilon::from_int(1).unwrap()).unwrap();
        let projected = project(&ps);
        assert_eq!(projected.len(), 24);
        assert!(projected.iter().all(|p| p.coords.len() == 9));
        for i in 0..projected.len() {
            for j in i + 1..projected.len() {
                assert_ne!(projected[i].coords, projected[j].coords);
            }
        }
        assert_eq!(affine_dim(&projected), 9);

        let ps5 = build_point_set(5, &Epsilon::from_int(1).unwrap()).unwrap();
        assert_eq!(affine_dim(&project(&ps5)), 16);
        assert_eq!(affine_dim(&project(&ps)[..1]), 0);
    }

    #[test]
    fn facet_normalization_is_canonical() {
        let f = Facet::new(vec![BigInt::from(4), BigInt::from(-6)], BigInt::from(10)).unwrap();
        assert_eq!(f.coeffs(), &[BigInt::from(2), BigInt::from(-3)]);
        assert_eq!(*f.rhs(), BigInt::from(5));
        // Scalar multiples collapse to the same normal form; opposite
        // orientations stay distinct.
        let g = Facet::new(vec![BigInt::from(2), BigInt::from(-3)], BigInt::from(5)).unwrap();
        assert_eq!(f, g);
        let flipped = Facet::new(vec![BigInt::from(-2), BigInt::from(3)], BigInt::from(-5)).unwrap();
        assert_ne!(f, flipped);
        assert!(Facet::new(vec![BigInt::zero()], BigInt::from(3)).is_err());
    }

    #[test]
    fn bareiss_matches_known_determinants() {
        let m = |rows: Vec<Vec<i64>>| -> Vec<Vec<BigInt>> {
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect()
        };
        assert_eq!(bareiss_det(m(vec![vec![2]])), BigInt::from(2));
        assert_eq!(
            bareiss_det(m(vec![vec![1, 2], vec![3, 4]])),
            BigInt::from(-2)
        );
        assert_eq!(
            bareiss_det(m(vec![vec![0, 1], vec![1, 0]])),
            BigInt::from(-1)
        );
        assert_eq!(
            bareiss_det(m(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]])),
            BigInt::zero()
        );
        // Vandermonde on 2, 3, 5: det = (3−2)(5−2)(5−3) = 6.
        assert_eq!(
            bareiss_det(m(vec![vec![1, 2, 4], vec![1, 3, 9], vec![1, 5, 25]])),
            BigInt::from(6)
        );
    }

    #[test]
    fn t4_eps1_has_exactly_508_facets() {
        let ps = build_point_set(4, &Epsilon::from_int(1).unwrap()).unwrap();
        let projected = project(&ps);
        let h = enumerate(&projected);
        assert_eq!(h.dimension, 9);
        assert!(h.is_full_dimensional);
        // 508 was published as a probabilistic lower bound; the exact
        // enumeration shows it is the true count.
        assert_eq!(h.facets.len(), 508);
        let report = classify_extrema_for(&ps).unwrap();
        let expected: BTreeSet<usize> = report
            .per_point
            .iter()
            .filter(|v| v.is_extreme())
            .map(|v| v.index)
            .collect();
        assert_eq!(expected.len(), 24);
        let v = verify_hrep(&h, &projected, &expected);
        assert!(v.passed(), "{v:?}");
    }

    // Small end-to-end round trip on real data: the n=3 point set is
    // full-dimensional in image space, and the H-representation's vertex
    // set must match the extremality module's verdicts exactly.
    #[test]
    fn n3_round_trip_against_extremality() {
        let ps = build_point_set(3, &Epsilon::from_int(1).unwrap()).unwrap();
        let projected = project(&ps);
        let h = enumerate(&projected);
        let report = classify_extrema_for(&ps).unwrap();
        let expected: BTreeSet<usize> = report
            .per_point
            .iter()
            .filter(|v| v.is_extreme())
            .map(|v| v.index)
            .collect();
        let v = verify_hrep(&h, &projected, &expected);
        assert!(v.passed(), "{v:?}");
        assert!(h.facets.len() >= 5);
    }
}
