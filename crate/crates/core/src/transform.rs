//! Construction of the point set Q = Q_t ∪ Q_nt for a given (n, ε).
//!
//! Starting from the permutation matrices (the extrema of the Birkhoff
//! polytope), tours are stretched away from the center matrix by factor ε
//! and every point is then translated into the positive orthant:
//!
//!   tours:     Q_t  = (1+ε)·P_t        (stretch P + ε(P − center), then add ε·center)
//!   non-tours: Q_nt = P_nt + (ε/n)·J    (J = all-ones)
//!
//! The polytope under study is the convex hull of these n! points. Every
//! point satisfies the scaled doubly stochastic constraints: each row and
//! column sums to 1+ε.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm::{check_n, classify, enumerate_permutations, PermClass, Permutation};
use crate::rational::{normalize, rank, ExactMatrix, ExactScalar, ExactVector};

/// A verified-positive rational stretch factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Epsilon {
    value: ExactScalar,
}

impl Epsilon {
    pub fn new(value: ExactScalar) -> Result<Self> {
        if value <= ExactScalar::zero() {
            return Err(Error::NonPositiveEpsilon(value.to_string()));
        }
        Ok(Self { value })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(crate::rational::parse_rational(text)?)
    }

    pub fn from_int(value: i64) -> Result<Self> {
        Self::new(crate::rational::int(value))
    }

    pub fn value(&self) -> &ExactScalar {
        &self.value
    }

    /// 1 + ε, the common row/column sum of every transformed point.
    pub fn one_plus(&self) -> ExactScalar {
        ExactScalar::one() + &self.value
    }
}

impl std::fmt::Display for Epsilon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The constant matrix with every entry 1/n: the arithmetic center of the
/// Birkhoff polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterMatrix {
    n: usize,
    matrix: ExactMatrix,
}

impl CenterMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_matrix(&self) -> &ExactMatrix {
        &self.matrix
    }
}

pub fn center(n: usize) -> Result<CenterMatrix> {
    check_n(n)?;
    let inv = normalize(1, n as i64)?;
    let mut matrix = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            matrix.set(i, j, inv.clone());
        }
    }
    Ok(CenterMatrix { n, matrix })
}

/// Stretch step only: P + ε(P − center). Unit entries become 1+ε−ε/n and
/// zero entries become −ε/n; only tours are stretched.
pub fn stretch_tour(p: &Permutation, eps: &Epsilon) -> Result<ExactMatrix> {
    if classify(p) != PermClass::Tour {
        return Err(Error::NotATour);
    }
    let n = p.n();
    check_n(n)?;
    let eps_over_n = eps.value() / crate::rational::int(n as i64);
    let hi = eps.one_plus() - &eps_over_n;
    let lo = -eps_over_n;
    let mut m = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = if p.apply(i) == j { hi.clone() } else { lo.clone() };
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// One transformed point: the flattened n×n matrix (row-major) plus its
/// provenance.
#[derive(Clone, Debug)]
pub struct QPoint {
    n: usize,
    epsilon: Epsilon,
    class: PermClass,
    source: Permutation,
    coords: ExactVector,
}

impl QPoint {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn epsilon(&self) -> &Epsilon {
        &self.epsilon
    }

    pub fn class(&self) -> PermClass {
        self.class
    }

    pub fn source(&self) -> &Permutation {
        &self.source
    }

    pub fn coords(&self) -> &ExactVector {
        &self.coords
    }

    pub fn entry(&self, i: usize, j: usize) -> &ExactScalar {
        &self.coords[i * self.n + j]
    }

    pub fn row_sums(&self) -> Vec<ExactScalar> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j)).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<ExactScalar> {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.entry(i, j)).sum())
            .collect()
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.n).map(|i| self.entry(i, i)).sum()
    }

    pub fn squared_norm(&self) -> ExactScalar {
        self.coords.iter().map(|v| v * v).sum()
    }

    /// Checks every class invariant of this point exactly: row/column sums
    /// 1+ε; entry levels {0, 1+ε} for tours and {ε/n, 1+ε/n} for non-tours;
    /// zero tour diagonal; squared norm; trace 0 / ε / k+ε by class.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let eps = self.epsilon.value();
        let sum = self.epsilon.one_plus();
        let fail = |what: &str| {
            Err(Error::Internal(format!(
                "point invariant violated ({what}) for {:?} at eps={}",
                self.source.image(),
                self.epsilon
            )))
        };

        for s in self.row_sums().iter().chain(self.col_sums().iter()) {
            if *s != sum {
                return fail("row/column sum");
            }
        }

        let n_rat = crate::rational::int(n as i64);
        let eps_over_n = eps / &n_rat;
        match self.class {
            PermClass::Tour => {
                for i in 0..n {
                    for j in 0..n {
                        let v = self.entry(i, j);
                        let expect_hi = self.source.apply(i) == j;
                        if expect_hi && *v != sum {
                            return fail("tour unit entry");
                        }
                        if !expect_hi && !v.is_zero() {
                            return fail("tour zero entry");
                        }
                    }
                    if !self.entry(i, i).is_zero() {
                        return fail("tour diagonal");
                    }
                }
                if self.squared_norm() != &n_rat * (&sum * &sum) {
                    return fail("tour squared norm");
                }
                if !self.trace().is_zero() {
                    return fail("tour trace");
                }
            }
            PermClass::IrreflexiveNonTour | PermClass::ReflexiveNonTour => {
                let hi = ExactScalar::one() + &eps_over_n;
                for i in 0..n {
                    for j in 0..n {
                        let v = self.entry(i, j);
                        let expect_hi = self.source.apply(i) == j;
                        if expect_hi && *v != hi {
                            return fail("non-tour unit entry");
                        }
                        if !expect_hi && *v != eps_over_n {
                            return fail("non-tour base entry");
                        }
                    }
                }
                // n(1+ε/n)² + (n²−n)(ε/n)², which simplifies to n + ε(2+ε)
                let expect_norm = &n_rat + eps * (crate::rational::int(2) + eps);
                if self.squared_norm() != expect_norm {
                    return fail("non-tour squared norm");
                }
                let k = self.source.fixed_point_count() as i64;
                if self.trace() != crate::rational::int(k) + eps {
                    return fail("non-tour trace");
                }
            }
        }
        Ok(())
    }
}

/// Builds the transformed point for one permutation.
pub fn make_qpoint(p: &Permutation, eps: &Epsilon) -> QPoint {
    let n = p.n();
    let class = classify(p);
    let mut coords = Vec::with_capacity(n * n);
    match class {
        PermClass::Tour => {
            let hi = eps.one_plus();
            for i in 0..n {
                for j in 0..n {
                    coords.push(if p.apply(i) == j {
                        hi.clone()
                    } else {
                        ExactScalar::zero()
                    });
                }
            }
        }
        _ => {
            let base = eps.value() / crate::rational::int(n as i64);
            let hi = ExactScalar::one() + &base;
            for i in 0..n {
                for j in 0..n {
                    coords.push(if p.apply(i) == j { hi.clone() } else { base.clone() });
                }
            }
        }
    }
    QPoint {
        n,
        epsilon: eps.clone(),
        class,
        source: p.clone(),
        coords: ExactVector::new(coords),
    }
}

/// All n! transformed points in permutation-enumeration order.
#[derive(Clone, Debug)]
pub struct PointSet {
    n: usize,
    epsilon: Epsilon,
    points: Vec<QPoint>,
}

impl PointSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn epsilon(&self) -> &Epsilon {
        &self.epsilon
    }

    pub fn points(&self) -> &[QPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Dimension of the affine hull of all points, via exact rank of the
    /// difference matrix against the first point.
    pub fn affine_dim(&self) -> usize {
        let base = &self.points[0].coords;
        let rows: Vec<Vec<ExactScalar>> = self.points[1..]
            .iter()
            .map(|p| {
                (0..base.len())
                    .map(|i| &p.coords[i] - &base[i])
                    .collect()
            })
            .collect();
        if rows.is_empty() {
            return 0;
        }
        rank(&ExactMatrix::from_rows(rows).expect("uniform coordinate length"))
    }

    /// Validates every point's class invariants.
    pub fn validate(&self) -> Result<()> {
        for p in &self.points {
            p.validate()?;
        }
        Ok(())
    }
}

pub fn build_point_set(n: usize, eps: &Epsilon) -> Result<PointSet> {
    check_n(n)?;
    let points = enumerate_permutations(n)?
        .iter()
        .map(|p| make_qpoint(p, eps))
        .collect();
    Ok(PointSet {
        n,
        epsilon: eps.clone(),
        points,
    })
}

/// Image-space coordinates: the entries Q[i,j] with i,j < n−1, row-major
/// (the last row and column are dropped). On the affine hull this map is
/// injective: the dropped entries are recoverable from the row/column-sum
/// invariant, see `unproject_image`.
pub fn image_coords(coords: &ExactVector, n: usize) -> ExactVector {
    let d = n - 1;
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            out.push(coords[i * n + j].clone());
        }
    }
    ExactVector::new(out)
}

/// Reconstructs full n² coordinates from image-space coordinates using the
/// row/column-sum value 1+ε.
pub fn unproject_image(img: &ExactVector, n: usize, eps: &Epsilon) -> ExactVector {
    let d = n - 1;
    debug_assert_eq!(img.len(), d * d);
    let sum = eps.one_plus();
    let mut full = vec![ExactScalar::zero(); n * n];
    for i in 0..d {
        let mut row_rest = sum.clone();
        for j in 0..d {
            full[i * n + j] = img[i * d + j].clone();
            row_rest -= &img[i * d + j];
        }
        full[i * n + d] = row_rest;
    }
    for j in 0..n {
        let mut col_rest = sum.clone();
        for i in 0..d {
            col_rest -= &full[i * n + j];
        }
        full[d * n + j] = col_rest;
    }
    ExactVector::new(full)
}
