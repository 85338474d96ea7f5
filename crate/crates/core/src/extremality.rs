//! Extremality of the transformed points, ε-goodness, and ε_max bracketing.
//!
//! A point q_i is extreme in the convex hull of the point set exactly when
//! the system {Σ_{j≠i} α_j q_j = q_i, Σα = 1, α ≥ 0} is infeasible. The
//! membership LP runs in image coordinates (last row and column dropped),
//! which is a lossless change of coordinates on the affine hull of the
//! point set. Both possible answers come back certified: a feasible system
//! yields explicit convex-combination weights (re-verified against the full
//! n² coordinates), an infeasible one yields a Farkas vector that reads as
//! a separating hyperplane in image space.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lp::{feasible, Feasibility};
use crate::perm::{ClassCounts, PermClass};
use crate::rational::{ExactMatrix, ExactScalar, ExactVector};
use crate::transform::{build_point_set, image_coords, Epsilon, PointSet};

use num_traits::{One, Zero};

/// Convex-combination weights expressing point `target` from the others.
/// Only the nonzero weights are stored, as (point index, weight) pairs.
#[derive(Clone, Debug)]
pub struct MembershipCertificate {
    pub target: usize,
    pub weights: Vec<(usize, ExactScalar)>,
}

/// Hyperplane in image coordinates with every other point on the ≤ side
/// and the certified point strictly beyond: normal·x ≤ rhs for all j ≠ i,
/// normal·(image of q_i) > rhs.
#[derive(Clone, Debug)]
pub struct SeparationCertificate {
    pub normal: ExactVector,
    pub rhs: ExactScalar,
}

#[derive(Clone, Debug)]
pub enum Extremeness {
    Extreme(SeparationCertificate),
    NotExtreme(MembershipCertificate),
}

#[derive(Clone, Debug)]
pub struct PointVerdict {
    pub index: usize,
    pub perm_class: PermClass,
    pub extremeness: Extremeness,
}

impl PointVerdict {
    pub fn is_extreme(&self) -> bool {
        matches!(self.extremeness, Extremeness::Extreme(_))
    }
}

/// Per-point verdicts for one (n, ε) cell, with class counts over the
/// extreme points (the Table-1 triple) and over all points.
#[derive(Clone, Debug)]
pub struct ExtremalityReport {
    pub n: usize,
    pub epsilon: Epsilon,
    pub per_point: Vec<PointVerdict>,
    pub extreme_counts: ClassCounts,
    pub class_totals: ClassCounts,
}

impl ExtremalityReport {
    pub fn all_extreme(&self) -> bool {
        self.extreme_counts.total() == self.per_point.len() as u64
    }

    pub fn first_non_extreme(&self) -> Option<&PointVerdict> {
        self.per_point.iter().find(|v| !v.is_extreme())
    }

    /// (extreme tours, extreme irreflexive non-tours, extreme reflexive
    /// non-tours): one Table-1 grid entry.
    pub fn extreme_triple(&self) -> (u64, u64, u64) {
        self.extreme_counts.triple()
    }
}

/// Goodness summary for one ε: good means every point is extreme.
#[derive(Clone, Debug)]
pub struct EpsilonVerdict {
    pub n: usize,
    pub epsilon: Epsilon,
    pub good: bool,
    pub extreme_counts: ClassCounts,
}

impl EpsilonVerdict {
    pub fn from_report(report: &ExtremalityReport) -> Self {
        Self {
            n: report.n,
            epsilon: report.epsilon.clone(),
            good: report.all_extreme(),
            extreme_counts: report.extreme_counts.clone(),
        }
    }
}

/// Decides extremality of point `i`, returning a verified certificate
/// either way.
pub fn is_extreme(i: usize, ps: &PointSet) -> Result<Extremeness> {
    if i >= ps.len() {
        return Err(Error::BadShape(format!(
            "point index {i} out of range for {} points",
            ps.len()
        )));
    }
    let n = ps.n();
    let d_sq = (n - 1) * (n - 1);
    let images: Vec<ExactVector> = ps
        .points()
        .iter()
        .map(|q| image_coords(q.coords(), n))
        .collect();
    decide_point(i, ps, &images, d_sq)
}

fn decide_point(
    i: usize,
    ps: &PointSet,
    images: &[ExactVector],
    d_sq: usize,
) -> Result<Extremeness> {
    let others: Vec<usize> = (0..ps.len()).filter(|&j| j != i).collect();
    let mut rows: Vec<Vec<ExactScalar>> = Vec::with_capacity(d_sq + 1);
    for k in 0..d_sq {
        rows.push(others.iter().map(|&j| images[j][k].clone()).collect());
    }
    rows.push(vec![ExactScalar::one(); others.len()]);

    let mut b: Vec<ExactScalar> = images[i].as_slice().to_vec();
    b.push(ExactScalar::one());

    let a = ExactMatrix::from_rows(rows).expect("columns are uniform");
    let b = ExactVector::new(b);

    match feasible(&a, &b)? {
        Feasibility::Feasible { point } => {
            let weights: Vec<(usize, ExactScalar)> = point
                .iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .map(|(col, w)| (others[col], w.clone()))
                .collect();
            let cert = MembershipCertificate { target: i, weights };
            if !verify_membership(ps, &cert) {
                return Err(Error::Internal(format!(
                    "membership certificate for point {i} failed exact re-verification"
                )));
            }
            Ok(Extremeness::NotExtreme(cert))
        }
        Feasibility::Infeasible { farkas } => {
            // Farkas y over rows [image; 1]: y·[x;1] ≤ 0 on the others and
            // > 0 at b, i.e. normal·x ≤ −y_last with q_i strictly beyond.
            let normal = ExactVector::new(farkas.as_slice()[..d_sq].to_vec());
            let rhs = -farkas[d_sq].clone();
            let cert = SeparationCertificate { normal, rhs };
            if !verify_separation(ps, i, &cert) {
                return Err(Error::Internal(format!(
                    "separation certificate for point {i} failed exact re-verification"
                )));
            }
            Ok(Extremeness::Extreme(cert))
        }
    }
}

/// Checks a convex-combination certificate against the full n² coordinates:
/// weights positive, indices distinct and ≠ target, Σα = 1, Σα·q_j = q_target.
pub fn verify_membership(ps: &PointSet, cert: &MembershipCertificate) -> bool {
    if cert.target >= ps.len() || cert.weights.is_empty() {
        return false;
    }
    let mut seen = vec![false; ps.len()];
    let mut total = ExactScalar::zero();
    for (j, w) in &cert.weights {
        if *j >= ps.len() || *j == cert.target || seen[*j] || *w <= ExactScalar::zero() {
            return false;
        }
        seen[*j] = true;
        total += w;
    }
    if !total.is_one() {
        return false;
    }
    let dim = ps.n() * ps.n();
    let target = ps.points()[cert.target].coords();
    for k in 0..dim {
        let mut acc = ExactScalar::zero();
        for (j, w) in &cert.weights {
            let c = &ps.points()[*j].coords()[k];
            if !c.is_zero() {
                acc += w * c;
            }
        }
        if acc != target[k] {
            return false;
        }
    }
    true
}

/// Checks a separating hyperplane exactly, in image coordinates.
pub fn verify_separation(ps: &PointSet, i: usize, cert: &SeparationCertificate) -> bool {
    let n = ps.n();
    if i >= ps.len() || cert.normal.len() != (n - 1) * (n - 1) {
        return false;
    }
    for (j, q) in ps.points().iter().enumerate() {
        let img = image_coords(q.coords(), n);
        let mut val = ExactScalar::zero();
        for k in 0..img.len() {
            if !cert.normal[k].is_zero() && !img[k].is_zero() {
                val += &cert.normal[k] * &img[k];
            }
        }
        if j == i {
            if val <= cert.rhs {
                return false;
            }
        } else if val > cert.rhs {
            return false;
        }
    }
    true
}

/// Full per-point classification of an existing point set. Tour points are
/// guaranteed extreme by the construction (they lie strictly outside the
/// hypersphere through the non-tours), so a non-extreme tour is reported as
/// an internal error rather than a finding.
pub fn classify_extrema_for(ps: &PointSet) -> Result<ExtremalityReport> {
    let n = ps.n();
    let d_sq = (n - 1) * (n - 1);
    let images: Vec<ExactVector> = ps
        .points()
        .iter()
        .map(|q| image_coords(q.coords(), n))
        .collect();

    let per_point: Vec<PointVerdict> = (0..ps.len())
        .into_par_iter()
        .map(|i| {
            let extremeness = decide_point(i, ps, &images, d_sq)?;
            Ok(PointVerdict {
                index: i,
                perm_class: ps.points()[i].class(),
                extremeness,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    for v in &per_point {
        if v.perm_class == PermClass::Tour && !v.is_extreme() {
            return Err(Error::Internal(format!(
                "tour point {} classified non-extreme at eps={}",
                v.index,
                ps.epsilon()
            )));
        }
    }

    let count_where = |pred: &dyn Fn(&PointVerdict) -> bool| -> ClassCounts {
        let mut c = ClassCounts {
            tours: 0,
            irreflexive_nontours: 0,
            reflexive_nontours: 0,
        };
        for v in per_point.iter().filter(|v| pred(v)) {
            match v.perm_class {
                PermClass::Tour => c.tours += 1,
                PermClass::IrreflexiveNonTour => c.irreflexive_nontours += 1,
                PermClass::ReflexiveNonTour => c.reflexive_nontours += 1,
            }
        }
        c
    };

    Ok(ExtremalityReport {
        n,
        epsilon: ps.epsilon().clone(),
        extreme_counts: count_where(&|v| v.is_extreme()),
        class_totals: count_where(&|_| true),
        per_point,
    })
}

pub fn classify_extrema(n: usize, eps: &Epsilon) -> Result<ExtremalityReport> {
    classify_extrema_for(&build_point_set(n, eps)?)
}

pub fn is_epsilon_good(n: usize, eps: &Epsilon) -> Result<EpsilonVerdict> {
    Ok(EpsilonVerdict::from_report(&classify_extrema(n, eps)?))
}

/// One bisection probe: the full report is kept so that every verdict in a
/// bracket run carries its certificates.
#[derive(Clone, Debug)]
pub struct ProbeRecord {
    pub epsilon: Epsilon,
    pub report: ExtremalityReport,
}

impl ProbeRecord {
    pub fn good(&self) -> bool {
        self.report.all_extreme()
    }
}

/// Outcome of `bracket_epsilon_max`: lo is good, hi is not, and the width
/// shrank by half per iteration. Goodness is not assumed monotone in ε:
/// every probe is decided independently, and any observed inversion (a bad
/// ε below a good one) is recorded as a finding.
#[derive(Clone, Debug)]
pub struct BracketResult {
    pub n: usize,
    pub lo: Epsilon,
    pub hi: Epsilon,
    pub iterations: usize,
    pub probes: Vec<ProbeRecord>,
    /// Pairs (bad ε, good ε) with bad < good observed among the probes.
    pub monotonicity_findings: Vec<(Epsilon, Epsilon)>,
}

impl BracketResult {
    pub fn width(&self) -> ExactScalar {
        self.hi.value() - self.lo.value()
    }
}

pub fn bracket_epsilon_max(
    n: usize,
    lo: &Epsilon,
    hi: &Epsilon,
    max_iters: usize,
) -> Result<BracketResult> {
    if lo.value() >= hi.value() {
        return Err(Error::BadBracket(format!(
            "lo {} must be below hi {}",
            lo, hi
        )));
    }
    let probe = |eps: &Epsilon| -> Result<ProbeRecord> {
        Ok(ProbeRecord {
            epsilon: eps.clone(),
            report: classify_extrema(n, eps)?,
        })
    };

    let mut probes = Vec::new();
    let lo_probe = probe(lo)?;
    if !lo_probe.good() {
        return Err(Error::BadBracket(format!(
            "eps {} is not good for n={n}, so it cannot anchor the bracket",
            lo
        )));
    }
    probes.push(lo_probe);
    let hi_probe = probe(hi)?;
    if hi_probe.good() {
        return Err(Error::BadBracket(format!(
            "eps {} is good for n={n}, so it cannot cap the bracket",
            hi
        )));
    }
    probes.push(hi_probe);

    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    for _ in 0..max_iters {
        let mid = Epsilon::new((lo.value() + hi.value()) / crate::rational::int(2))
            .expect("midpoint of positive endpoints is positive");
        let rec = probe(&mid)?;
        let good = rec.good();
        probes.push(rec);
        if good {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut monotonicity_findings = Vec::new();
    for bad in probes.iter().filter(|p| !p.good()) {
        for good in probes.iter().filter(|p| p.good()) {
            if bad.epsilon.value() < good.epsilon.value() {
                monotonicity_findings.push((bad.epsilon.clone(), good.epsilon.clone()));
            }
        }
    }

    Ok(BracketResult {
        n,
        lo,
        hi,
        iterations: max_iters,
        probes,
        monotonicity_findings,
    })
}
