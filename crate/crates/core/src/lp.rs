//! Exact-rational linear programming in equality standard form.
//!
//! `solve` maximizes c·x subject to A x = b, x ≥ 0 and returns a fully
//! certified outcome: optimal solutions carry a dual vector proving
//! optimality, infeasibility carries a Farkas vector, unboundedness carries
//! a feasible witness plus an improving ray. `feasible` answers the
//! feasibility question alone. The `verify_*` functions check each
//! certificate from scratch in rational arithmetic, so every answer the
//! solver produces can be validated independently of how it was found.
//!
//! Internally the simplex method (Bland's rule, so termination is
//! guaranteed) runs fraction-free on integer data: rows of [A | b] are
//! scaled to integers with b ≥ 0, and the engine maintains M = D·B⁻¹ for
//! the current basis B, where D = |det B| > 0. Entries of M are minors of
//! an integer matrix, so the pivot update divides exactly and coefficients
//! stay integral throughout.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{to_common_integers, ExactMatrix, ExactScalar, ExactVector};

/// Maximize c·x subject to A x = b, x ≥ 0.
#[derive(Clone, Debug)]
pub struct LpProblem {
    a: ExactMatrix,
    b: ExactVector,
    c: ExactVector,
}

impl LpProblem {
    pub fn new(a: ExactMatrix, b: ExactVector, c: ExactVector) -> Result<Self> {
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::BadShape("lp needs at least one row and one column".into()));
        }
        if b.len() != a.rows() {
            return Err(Error::BadShape(format!(
                "rhs length {} does not match row count {}",
                b.len(),
                a.rows()
            )));
        }
        if c.len() != a.cols() {
            return Err(Error::BadShape(format!(
                "objective length {} does not match column count {}",
                c.len(),
                a.cols()
            )));
        }
        Ok(Self { a, b, c })
    }

    pub fn num_rows(&self) -> usize {
        self.a.rows()
    }

    pub fn num_cols(&self) -> usize {
        self.a.cols()
    }

    pub fn a(&self) -> &ExactMatrix {
        &self.a
    }

    pub fn b(&self) -> &ExactVector {
        &self.b
    }

    pub fn c(&self) -> &ExactVector {
        &self.c
    }

    /// Human-readable listing of the full problem data.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "maximize c.x subject to A x = b, x >= 0");
        let _ = writeln!(s, "rows={} cols={}", self.num_rows(), self.num_cols());
        let _ = writeln!(s, "c = {}", join(self.c.as_slice()));
        for i in 0..self.num_rows() {
            let _ = writeln!(s, "row {i}: {} | {}", join(self.a.row(i)), self.b[i]);
        }
        s
    }
}

fn join(values: &[ExactScalar]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Certified result of `solve`.
#[derive(Clone, Debug)]
pub enum LpOutcome {
    /// `dual` proves optimality: y·A ≥ c componentwise and y·b = value.
    Optimal {
        value: ExactScalar,
        solution: ExactVector,
        dual: ExactVector,
    },
    /// `farkas` proves infeasibility: y·A ≤ 0 componentwise yet y·b > 0.
    Infeasible { farkas: ExactVector },
    /// `witness` is feasible and `ray` an improving recession direction:
    /// A·ray = 0, ray ≥ 0, c·ray > 0.
    Unbounded {
        witness: ExactVector,
        ray: ExactVector,
    },
}

/// Certified result of `feasible`.
#[derive(Clone, Debug)]
pub enum Feasibility {
    Feasible { point: ExactVector },
    Infeasible { farkas: ExactVector },
}

pub fn solve(p: &LpProblem) -> Result<LpOutcome> {
    match phase_one_complete(ScaledSystem::build(p.a(), p.b()))? {
        PhaseOneDone::Infeasible { farkas } => Ok(LpOutcome::Infeasible { farkas }),
        PhaseOneDone::Ready(sx) => phase_two(sx, p),
    }
}

/// Feasibility of A x = b, x ≥ 0 via phase one alone.
pub fn feasible(a: &ExactMatrix, b: &ExactVector) -> Result<Feasibility> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(Error::BadShape("feasibility needs at least one row and one column".into()));
    }
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            got: b.len(),
        });
    }
    let mut sx = Simplex::new(ScaledSystem::build(a, b));
    Ok(match sx.run_phase_one()? {
        PhaseOneStatus::Infeasible => Feasibility::Infeasible {
            farkas: sx.farkas_original(),
        },
        PhaseOneStatus::Feasible => Feasibility::Feasible {
            point: sx.structural_solution(),
        },
    })
}

pub fn verify_feasible_point(a: &ExactMatrix, b: &ExactVector, x: &ExactVector) -> bool {
    if x.len() != a.cols() || b.len() != a.rows() {
        return false;
    }
    if x.iter().any(|v| v < &ExactScalar::zero()) {
        return false;
    }
    (0..a.rows()).all(|i| dot_slice(a.row(i), x.as_slice()) == b[i])
}

pub fn verify_farkas(a: &ExactMatrix, b: &ExactVector, y: &ExactVector) -> bool {
    if y.len() != a.rows() || b.len() != a.rows() {
        return false;
    }
    for j in 0..a.cols() {
        if col_dot(a, y, j) > ExactScalar::zero() {
            return false;
        }
    }
    dot_slice(y.as_slice(), b.as_slice()) > ExactScalar::zero()
}

pub fn verify_optimal(p: &LpProblem, x: &ExactVector, y: &ExactVector, value: &ExactScalar) -> bool {
    if !verify_feasible_point(p.a(), p.b(), x) || y.len() != p.num_rows() {
        return false;
    }
    if dot_slice(p.c().as_slice(), x.as_slice()) != *value {
        return false;
    }
    // Dual feasibility: every column prices out nonpositively.
    for j in 0..p.num_cols() {
        if col_dot(p.a(), y, j) < p.c()[j] {
            return false;
        }
    }
    dot_slice(y.as_slice(), p.b().as_slice()) == *value
}

pub fn verify_unbounded(p: &LpProblem, witness: &ExactVector, ray: &ExactVector) -> bool {
    if !verify_feasible_point(p.a(), p.b(), witness) || ray.len() != p.num_cols() {
        return false;
    }
    if ray.iter().any(|v| v < &ExactScalar::zero()) {
        return false;
    }
    if (0..p.num_rows()).any(|i| !dot_slice(p.a().row(i), ray.as_slice()).is_zero()) {
        return false;
    }
    dot_slice(p.c().as_slice(), ray.as_slice()) > ExactScalar::zero()
}

fn dot_slice(a: &[ExactScalar], b: &[ExactScalar]) -> ExactScalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = ExactScalar::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

fn col_dot(a: &ExactMatrix, y: &ExactVector, j: usize) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for i in 0..a.rows() {
        let entry = a.entry(i, j);
        if !entry.is_zero() && !y[i].is_zero() {
            acc += &y[i] * entry;
        }
    }
    acc
}

/// Rows of [A | b] scaled to integers by a signed multiplier per row so that
/// the scaled rhs is nonnegative. `row_origin` maps current rows back to
/// rows of the problem as given (redundant rows may be dropped later).
struct ScaledSystem {
    orig_rows: usize,
    /// Column-major structural coefficients: cols[j][i] is row i of column j.
    cols: Vec<Vec<BigInt>>,
    rhs: Vec<BigInt>,
    row_mult: Vec<BigInt>,
    row_origin: Vec<usize>,
}

impl ScaledSystem {
    fn build(a: &ExactMatrix, b: &ExactVector) -> Self {
        let m = a.rows();
        let n = a.cols();
        let mut cols = vec![Vec::with_capacity(m); n];
        let mut rhs = Vec::with_capacity(m);
        let mut row_mult = Vec::with_capacity(m);
        for i in 0..m {
            let mut vals: Vec<ExactScalar> = a.row(i).to_vec();
            vals.push(b[i].clone());
            let (mut ints, mut t) = to_common_integers(&vals);
            if ints[n].is_negative() {
                for v in &mut ints {
                    *v = -std::mem::take(v);
                }
                t = -t;
            }
            let b_int = ints.pop().expect("rhs entry present");
            for (j, v) in ints.into_iter().enumerate() {
                cols[j].push(v);
            }
            rhs.push(b_int);
            row_mult.push(t);
        }
        Self {
            orig_rows: m,
            cols,
            rhs,
            row_mult,
            row_origin: (0..m).collect(),
        }
    }

    fn m(&self) -> usize {
        self.rhs.len()
    }

    fn n_struct(&self) -> usize {
        self.cols.len()
    }

    fn remove_rows(self, dead: &[bool]) -> Self {
        let keep: Vec<usize> = (0..self.m()).filter(|&r| !dead[r]).collect();
        let extract_rows = |v: &[BigInt]| -> Vec<BigInt> {
            keep.iter().map(|&r| v[r].clone()).collect()
        };
        Self {
            orig_rows: self.orig_rows,
            cols: self.cols.iter().map(|c| extract_rows(c)).collect(),
            rhs: extract_rows(&self.rhs),
            row_mult: extract_rows(&self.row_mult),
            row_origin: keep.iter().map(|&r| self.row_origin[r]).collect(),
        }
    }
}

enum PhaseOneStatus {
    Feasible,
    Infeasible,
}

enum PhaseOneDone {
    Infeasible { farkas: ExactVector },
    Ready(Simplex),
}

/// Runs phase one to completion, driving artificials out of the basis and
/// dropping redundant rows (re-running on the reduced system) until the
/// basis is entirely structural or infeasibility is certified.
fn phase_one_complete(mut sys: ScaledSystem) -> Result<PhaseOneDone> {
    loop {
        let mut sx = Simplex::new(sys);
        if matches!(sx.run_phase_one()?, PhaseOneStatus::Infeasible) {
            return Ok(PhaseOneDone::Infeasible {
                farkas: sx.farkas_original(),
            });
        }
        let dead = sx.drive_out_artificials();
        if dead.iter().any(|&d| d) {
            sys = sx.sys.remove_rows(&dead);
        } else {
            return Ok(PhaseOneDone::Ready(sx));
        }
    }
}

fn phase_two(mut sx: Simplex, p: &LpProblem) -> Result<LpOutcome> {
    let (c_ints, c_scale) = to_common_integers(p.c().as_slice());
    loop {
        let yhat = sx.yhat(Some(&c_ints));
        match sx.entering(&yhat, Some(&c_ints)) {
            None => {
                let solution = sx.structural_solution();
                let dual = sx.dual_original(&yhat, &c_scale);
                let value = dot_slice(p.c().as_slice(), solution.as_slice());
                return Ok(LpOutcome::Optimal {
                    value,
                    solution,
                    dual,
                });
            }
            Some(j) => {
                let u = sx.u_for(j);
                match sx.ratio_row(&u) {
                    Some(r) => sx.pivot(j, r, &u),
                    None => {
                        let witness = sx.structural_solution();
                        let ray = sx.ray_for(j, &u);
                        return Ok(LpOutcome::Unbounded { witness, ray });
                    }
                }
            }
        }
    }
}

/// Fraction-free revised simplex state. Column ids: 0..n_struct are
/// structural, n_struct + r is the artificial introduced for row r.
struct Simplex {
    sys: ScaledSystem,
    basis: Vec<usize>,
    /// M = D·B⁻¹ for the current basis matrix B.
    minv: Vec<Vec<BigInt>>,
    /// D = |det B| > 0.
    den: BigInt,
    /// D · x_B, componentwise ≥ 0 throughout.
    xb: Vec<BigInt>,
    basic: Vec<bool>,
}

impl Simplex {
    fn new(sys: ScaledSystem) -> Self {
        let m = sys.m();
        let n = sys.n_struct();
        let minv = (0..m)
            .map(|i| {
                (0..m)
                    .map(|k| if i == k { BigInt::from(1) } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        let xb = sys.rhs.clone();
        debug_assert!(xb.iter().all(|v| !v.is_negative()));
        Self {
            basis: (0..m).map(|r| n + r).collect(),
            minv,
            den: BigInt::from(1),
            xb,
            basic: vec![false; n],
            sys,
        }
    }

    fn m(&self) -> usize {
        self.sys.m()
    }

    fn is_artificial(&self, id: usize) -> bool {
        id >= self.sys.n_struct()
    }

    /// ŷ = c_B · M, the dual numerators (actual dual is ŷ/D). With `None`
    /// the phase-one costs apply: 0 structural, −1 per artificial.
    fn yhat(&self, scaled_costs: Option<&[BigInt]>) -> Vec<BigInt> {
        let m = self.m();
        let mut y = vec![BigInt::zero(); m];
        for r in 0..m {
            let id = self.basis[r];
            match scaled_costs {
                None => {
                    if self.is_artificial(id) {
                        for k in 0..m {
                            y[k] -= &self.minv[r][k];
                        }
                    }
                }
                Some(c) => {
                    debug_assert!(!self.is_artificial(id));
                    let cb = &c[id];
                    if !cb.is_zero() {
                        for k in 0..m {
                            y[k] += cb * &self.minv[r][k];
                        }
                    }
                }
            }
        }
        y
    }

    /// Bland's rule: the lowest-index nonbasic structural column with a
    /// positive reduced cost D·c_j − ŷ·Ã_j. Artificial columns never
    /// re-enter. Returns None at optimality.
    fn entering(&self, yhat: &[BigInt], scaled_costs: Option<&[BigInt]>) -> Option<usize> {
        for j in 0..self.sys.n_struct() {
            if self.basic[j] {
                continue;
            }
            let col = &self.sys.cols[j];
            let mut rc = match scaled_costs {
                Some(c) => {
                    if c[j].is_zero() {
                        BigInt::zero()
                    } else {
                        &self.den * &c[j]
                    }
                }
                None => BigInt::zero(),
            };
            for i in 0..self.m() {
                if !col[i].is_zero() && !yhat[i].is_zero() {
                    rc -= &yhat[i] * &col[i];
                }
            }
            if rc.is_positive() {
                return Some(j);
            }
        }
        None
    }

    /// ū = M·Ã_j for structural column j.
    fn u_for(&self, j: usize) -> Vec<BigInt> {
        let col = &self.sys.cols[j];
        let m = self.m();
        (0..m)
            .map(|i| {
                let mut acc = BigInt::zero();
                for k in 0..m {
                    if !col[k].is_zero() && !self.minv[i][k].is_zero() {
                        acc += &self.minv[i][k] * &col[k];
                    }
                }
                acc
            })
            .collect()
    }

    /// Leaving row: minimizes xb_r/ū_r over ū_r > 0, ties broken by the
    /// lowest basic column id (Bland). None means no blocking row.
    fn ratio_row(&self, u: &[BigInt]) -> Option<usize> {
        let mut best: Option<usize> = None;
        for r in 0..self.m() {
            if !u[r].is_positive() {
                continue;
            }
            best = Some(match best {
                None => r,
                Some(b) => {
                    let lhs = &self.xb[r] * &u[b];
                    let rhs = &self.xb[b] * &u[r];
                    if lhs < rhs || (lhs == rhs && self.basis[r] < self.basis[b]) {
                        r
                    } else {
                        b
                    }
                }
            });
        }
        best
    }

    /// Replaces the basic column at row r with column j. With s = sign(ū_r):
    /// D' = |ū_r|, row r of M and xb scale by s, and every other row i
    /// updates by v ← s·(ū_r·v_i − ū_i·v_r)/D, an exact integer division.
    fn pivot(&mut self, j: usize, r: usize, u: &[BigInt]) {
        debug_assert!(!u[r].is_zero());
        let m = self.m();
        let s_pos = u[r].is_positive();
        let ur = u[r].clone();
        for i in 0..m {
            if i == r {
                continue;
            }
            for k in 0..m {
                let t = if u[i].is_zero() {
                    &ur * &self.minv[i][k]
                } else {
                    &ur * &self.minv[i][k] - &u[i] * &self.minv[r][k]
                };
                self.minv[i][k] = exact_div(if s_pos { t } else { -t }, &self.den);
            }
            let t = if u[i].is_zero() {
                &ur * &self.xb[i]
            } else {
                &ur * &self.xb[i] - &u[i] * &self.xb[r]
            };
            self.xb[i] = exact_div(if s_pos { t } else { -t }, &self.den);
        }
        if !s_pos {
            for k in 0..m {
                self.minv[r][k] = -std::mem::take(&mut self.minv[r][k]);
            }
            self.xb[r] = -std::mem::take(&mut self.xb[r]);
        }
        self.den = ur.abs();
        let leaving = self.basis[r];
        if !self.is_artificial(leaving) {
            self.basic[leaving] = false;
        }
        self.basis[r] = j;
        self.basic[j] = true;
        debug_assert!(self.den.is_positive());
        debug_assert!(self.xb.iter().all(|v| !v.is_negative()));
    }

    fn run_phase_one(&mut self) -> Result<PhaseOneStatus> {
        loop {
            let yhat = self.yhat(None);
            let Some(j) = self.entering(&yhat, None) else {
                break;
            };
            let u = self.u_for(j);
            let Some(r) = self.ratio_row(&u) else {
                return Err(Error::Internal(
                    "phase one ratio test failed on a bounded objective".into(),
                ));
            };
            self.pivot(j, r, &u);
        }
        let infeasible = (0..self.m())
            .any(|r| self.is_artificial(self.basis[r]) && !self.xb[r].is_zero());
        Ok(if infeasible {
            PhaseOneStatus::Infeasible
        } else {
            PhaseOneStatus::Feasible
        })
    }

    /// After a zero-value phase-one optimum, pivots each basic artificial
    /// out on any structural column with a nonzero coefficient in its row.
    /// Rows where none exists are redundant; the returned mask marks them.
    fn drive_out_artificials(&mut self) -> Vec<bool> {
        let m = self.m();
        let mut dead = vec![false; m];
        for r in 0..m {
            if !self.is_artificial(self.basis[r]) {
                continue;
            }
            debug_assert!(self.xb[r].is_zero());
            let mut pivoted = false;
            for j in 0..self.sys.n_struct() {
                if self.basic[j] {
                    continue;
                }
                let col = &self.sys.cols[j];
                let mut v = BigInt::zero();
                for k in 0..m {
                    if !col[k].is_zero() && !self.minv[r][k].is_zero() {
                        v += &self.minv[r][k] * &col[k];
                    }
                }
                if !v.is_zero() {
                    let u = self.u_for(j);
                    debug_assert_eq!(u[r], v);
                    self.pivot(j, r, &u);
                    pivoted = true;
                    break;
                }
            }
            if !pivoted {
                dead[r] = true;
            }
        }
        dead
    }

    fn structural_solution(&self) -> ExactVector {
        let mut x = vec![ExactScalar::zero(); self.sys.n_struct()];
        for r in 0..self.m() {
            let id = self.basis[r];
            if !self.is_artificial(id) {
                x[id] = ExactScalar::new(self.xb[r].clone(), self.den.clone());
            }
        }
        ExactVector::new(x)
    }

    /// Recession direction for entering column j when no row blocks:
    /// 1 on column j, −ū_r/D on each basic column, 0 elsewhere.
    fn ray_for(&self, j: usize, u: &[BigInt]) -> ExactVector {
        let mut d = vec![ExactScalar::zero(); self.sys.n_struct()];
        d[j] = ExactScalar::from(BigInt::from(1));
        for r in 0..self.m() {
            let id = self.basis[r];
            debug_assert!(!self.is_artificial(id));
            if !u[r].is_zero() {
                d[id] = ExactScalar::new(-u[r].clone(), self.den.clone());
            }
        }
        ExactVector::new(d)
    }

    /// Farkas vector for the rows as originally given: with ŷ the phase-one
    /// dual numerators, y = −ŷ·t/D per row (t the row's scaling multiplier),
    /// and 0 for rows that were dropped as redundant.
    fn farkas_original(&self) -> ExactVector {
        let yhat = self.yhat(None);
        let mut y = vec![ExactScalar::zero(); self.sys.orig_rows];
        for r in 0..self.m() {
            let num = -(&yhat[r] * &self.sys.row_mult[r]);
            y[self.sys.row_origin[r]] = ExactScalar::new(num, self.den.clone());
        }
        ExactVector::new(y)
    }

    /// Optimal dual for the rows as originally given: y = ŷ·t/(L·D) per row
    /// with L the objective scaling, 0 for dropped redundant rows.
    fn dual_original(&self, yhat: &[BigInt], c_scale: &BigInt) -> ExactVector {
        let mut y = vec![ExactScalar::zero(); self.sys.orig_rows];
        let den = c_scale * &self.den;
        for r in 0..self.m() {
            let num = &yhat[r] * &self.sys.row_mult[r];
            y[self.sys.row_origin[r]] = ExactScalar::new(num, den.clone());
        }
        ExactVector::new(y)
    }
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    debug_assert!((&num % den).is_zero(), "inexact division in pivot update");
    num / den
}
