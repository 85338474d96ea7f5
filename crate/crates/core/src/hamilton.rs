//! Hamiltonicity decided three independent ways: a combinatorial
//! backtracking oracle, brute-force maximization of ⟨G, Q⟩ over the point
//! set, and the LP threshold test (the maximum equals n(1+ε) exactly when
//! the graph has a Hamilton cycle, and the three routes must agree).

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extremality::EpsilonVerdict;
use crate::lp::{solve, LpOutcome, LpProblem};
use crate::perm::{check_n, PermClass};
use crate::rational::{int, ExactMatrix, ExactScalar, ExactVector};
use crate::transform::{Epsilon, PointSet};

/// Simple directed graph: 0/1 adjacency with a zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    adj: Vec<Vec<u8>>,
}

impl Digraph {
    pub fn from_adjacency(adj: Vec<Vec<u8>>) -> Result<Self> {
        let n = adj.len();
        check_n(n)?;
        for (i, row) in adj.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGraph(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v > 1 {
                    return Err(Error::InvalidGraph(format!(
                        "entry ({i},{j}) is {v}, expected 0 or 1"
                    )));
                }
                if i == j && v != 0 {
                    return Err(Error::InvalidGraph(format!("nonzero diagonal at ({i},{i})")));
                }
            }
        }
        Ok(Self { n, adj })
    }

    /// Parses the graph file format: first line n, then n lines of n
    /// space-separated 0/1 digits.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::InvalidGraph("empty graph file".into()))?
            .trim()
            .parse()
            .map_err(|_| Error::InvalidGraph("first line must be the vertex count".into()))?;
        let mut adj = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::InvalidGraph(format!("missing adjacency row {i}")))?;
            let row: Vec<u8> = line
                .split_whitespace()
                .map(|tok| match tok {
                    "0" => Ok(0),
                    "1" => Ok(1),
                    other => Err(Error::InvalidGraph(format!(
                        "row {i} has entry {other:?}, expected 0 or 1"
                    ))),
                })
                .collect::<Result<_>>()?;
            adj.push(row);
        }
        if lines.next().is_some() {
            return Err(Error::InvalidGraph("trailing content after adjacency rows".into()));
        }
        Self::from_adjacency(adj)
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        check_n(n)?;
        let mut adj = vec![vec![0u8; n]; n];
        for &(i, j) in arcs {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!("arc ({i},{j}) out of range")));
            }
            adj[i][j] = 1;
        }
        Self::from_adjacency(adj)
    }

    /// Loopless complete digraph.
    pub fn complete(n: usize) -> Result<Self> {
        check_n(n)?;
        let adj = (0..n)
            .map(|i| (0..n).map(|j| u8::from(i != j)).collect())
            .collect();
        Self::from_adjacency(adj)
    }

    /// Directed cycle 0 → 1 → … → n−1 → 0.
    pub fn cycle(n: usize) -> Result<Self> {
        check_n(n)?;
        Self::from_arcs(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    /// Decodes a graph id: bit k of `code` is the k-th off-diagonal entry
    /// in row-major order. n=4 gives codes 0..4096.
    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        check_n(n)?;
        let bits = (n * n - n) as u32;
        if bits < 64 && code >= 1u64 << bits {
            return Err(Error::InvalidGraph(format!(
                "code {code} out of range for n={n} ({bits} arc bits)"
            )));
        }
        let mut adj = vec![vec![0u8; n]; n];
        let mut k = 0;
        for (i, row) in adj.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if i != j {
                    *cell = ((code >> k) & 1) as u8;
                    k += 1;
                }
            }
        }
        Self::from_adjacency(adj)
    }

    pub fn code(&self) -> u64 {
        let mut code = 0u64;
        let mut k = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    code |= u64::from(self.adj[i][j]) << k;
                    k += 1;
                }
            }
        }
        code
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.adj[i][j] == 1
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().flatten().filter(|&&v| v == 1).count()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.adj[i][j] == 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Row-major 0/1 vector of length n².
    pub fn flatten(&self) -> ExactVector {
        ExactVector::new(
            self.adj
                .iter()
                .flatten()
                .map(|&v| int(i64::from(v)))
                .collect(),
        )
    }
}

/// Ground-truth Hamiltonicity by backtracking, anchored at vertex 0.
pub fn oracle_is_hamiltonian(g: &Digraph) -> bool {
    fn extend(g: &Digraph, at: usize, visited: u32, count: usize) -> bool {
        if count == g.n() {
            return g.has_arc(at, 0);
        }
        for next in 1..g.n() {
            if visited & (1 << next) == 0 && g.has_arc(at, next) {
                if extend(g, next, visited | (1 << next), count + 1) {
                    return true;
                }
            }
        }
        false
    }
    extend(g, 0, 1, 1)
}

/// Exact maximum of ⟨flatten(g), q⟩ over the point set, lowest index wins
/// ties.
#[derive(Clone, Debug)]
pub struct BruteMaxResult {
    pub value: ExactScalar,
    pub argmax_index: usize,
    pub argmax_class: PermClass,
}

fn arc_products(g: &Digraph, ps: &PointSet) -> Result<Vec<ExactScalar>> {
    if g.n() != ps.n() {
        return Err(Error::DimensionMismatch {
            expected: ps.n(),
            got: g.n(),
        });
    }
    let arcs = g.arcs();
    Ok(ps
        .points()
        .iter()
        .map(|q| {
            let mut acc = ExactScalar::zero();
            for &(i, j) in &arcs {
                let v = q.entry(i, j);
                if !v.is_zero() {
                    acc += v;
                }
            }
            acc
        })
        .collect())
}

fn brute_from(products: &[ExactScalar], ps: &PointSet) -> BruteMaxResult {
    let mut best = 0usize;
    for (j, v) in products.iter().enumerate().skip(1) {
        if v > &products[best] {
            best = j;
        }
    }
    BruteMaxResult {
        value: products[best].clone(),
        argmax_index: best,
        argmax_class: ps.points()[best].class(),
    }
}

pub fn brute_max(g: &Digraph, ps: &PointSet) -> Result<BruteMaxResult> {
    Ok(brute_from(&arc_products(g, ps)?, ps))
}

/// The hull LP `lp_decide` solves: maximize Σ αⱼ·⟨g, qⱼ⟩ over Σα = 1,
/// α ≥ 0. Exposed so callers can dump the exact system being solved.
pub fn decision_problem(g: &Digraph, ps: &PointSet) -> Result<LpProblem> {
    let products = arc_products(g, ps)?;
    let ones =
        ExactMatrix::from_rows(vec![vec![int(1); products.len()]]).expect("single uniform row");
    LpProblem::new(
        ones,
        ExactVector::new(vec![int(1)]),
        ExactVector::new(products),
    )
}

/// One verified inequality from the two theorems bounding ⟨G, Q⟩ by class.
#[derive(Clone, Debug)]
pub struct BoundCheck {
    pub name: &'static str,
    pub bound: ExactScalar,
    pub actual: ExactScalar,
    pub satisfied: bool,
}

/// Class-wise maxima of ⟨G, Q⟩ against the theorem bounds: a Hamiltonian
/// graph attains n(1+ε) on a tour while every non-tour stays ≤ n(1+ε)−ε;
/// a non-Hamiltonian graph stays ≤ (n−1)(1+ε) on tours and
/// ≤ n(1+ε/n) + m·ε/n on non-tours (m = arc count).
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub oracle_hamiltonian: bool,
    pub tour_max: ExactScalar,
    pub nontour_max: ExactScalar,
    pub checks: Vec<BoundCheck>,
    pub all_ok: bool,
}

fn bounds_from(
    g: &Digraph,
    ps: &PointSet,
    products: &[ExactScalar],
    oracle_hamiltonian: bool,
) -> BoundsReport {
    let n = int(ps.n() as i64);
    let eps = ps.epsilon().value();
    let one_plus = ps.epsilon().one_plus();

    let class_max = |tour: bool| -> ExactScalar {
        products
            .iter()
            .zip(ps.points())
            .filter(|(_, q)| q.class().is_tour() == tour)
            .map(|(v, _)| v)
            .max()
            .expect("both classes are nonempty for n >= 3")
            .clone()
    };
    let tour_max = class_max(true);
    let nontour_max = class_max(false);

    let mut checks = Vec::with_capacity(2);
    let mut push = |name, bound: ExactScalar, actual: &ExactScalar, exact: bool| {
        let satisfied = if exact { actual == &bound } else { actual <= &bound };
        checks.push(BoundCheck {
            name,
            bound,
            actual: actual.clone(),
            satisfied,
        });
    };

    if oracle_hamiltonian {
        push("tour max equals n(1+eps)", &n * &one_plus, &tour_max, true);
        push(
            "non-tour max at most n(1+eps)-eps",
            &n * &one_plus - eps,
            &nontour_max,
            false,
        );
    } else {
        push(
            "tour max at most (n-1)(1+eps)",
            (&n - int(1)) * &one_plus,
            &tour_max,
            false,
        );
        let eps_over_n = eps / &n;
        push(
            "non-tour max at most n(1+eps/n)+m*eps/n",
            &n * (int(1) + &eps_over_n) + int(g.arc_count() as i64) * &eps_over_n,
            &nontour_max,
            false,
        );
    }
    let all_ok = checks.iter().all(|c| c.satisfied);
    BoundsReport {
        oracle_hamiltonian,
        tour_max,
        nontour_max,
        checks,
        all_ok,
    }
}

pub fn check_theorem_bounds(g: &Digraph, ps: &PointSet) -> Result<BoundsReport> {
    let products = arc_products(g, ps)?;
    Ok(bounds_from(g, ps, &products, oracle_is_hamiltonian(g)))
}

/// How `lp_decide` satisfies its precondition that ε is good: either a
/// goodness verdict for the same (n, ε) is supplied, or the caller takes
/// responsibility explicitly.
#[derive(Clone, Copy, Debug)]
pub enum GoodnessPolicy<'a> {
    Verified(&'a EpsilonVerdict),
    Override,
}

/// The three-route decision record for one graph.
#[derive(Clone, Debug)]
pub struct DecisionReport {
    pub graph_id: String,
    pub n: usize,
    pub epsilon: Epsilon,
    pub oracle_hamiltonian: bool,
    pub lp_value: ExactScalar,
    pub threshold: ExactScalar,
    pub lp_hamiltonian: bool,
    pub brute_value: ExactScalar,
    pub argmax_index: usize,
    pub argmax_class: PermClass,
    pub lp_equals_brute: bool,
    pub bounds: BoundsReport,
}

impl DecisionReport {
    pub fn theorem_bounds_ok(&self) -> bool {
        self.bounds.all_ok
    }

    /// All cross-route invariants at once: LP = brute force, LP verdict =
    /// oracle verdict, theorem bounds hold.
    pub fn consistent(&self) -> bool {
        self.lp_equals_brute
            && self.lp_hamiltonian == self.oracle_hamiltonian
            && self.bounds.all_ok
    }
}

/// Decides Hamiltonicity of g by the LP threshold: maximize Σ α_j·⟨g, q_j⟩
/// subject to Σα = 1, α ≥ 0 (the hull variables are substituted out), then
/// compare the optimum with n(1+ε). Cross-checks against the backtracking
/// oracle and the brute-force maximum are part of the report; disagreement
/// is reported, not silently repaired.
pub fn lp_decide(
    g: &Digraph,
    ps: &PointSet,
    policy: GoodnessPolicy<'_>,
    graph_id: &str,
) -> Result<DecisionReport> {
    match policy {
        GoodnessPolicy::Verified(v) => {
            if v.n != ps.n() || v.epsilon != *ps.epsilon() || !v.good {
                return Err(Error::EpsilonNotVerified);
            }
        }
        GoodnessPolicy::Override => {}
    }
    let products = arc_products(g, ps)?;

    let ones =
        ExactMatrix::from_rows(vec![vec![int(1); products.len()]]).expect("single uniform row");
    let problem = LpProblem::new(
        ones,
        ExactVector::new(vec![int(1)]),
        ExactVector::new(products.clone()),
    )?;
    let lp_value = match solve(&problem)? {
        LpOutcome::Optimal { value, .. } => value,
        other => {
            return Err(Error::Internal(format!(
                "hull LP must have an optimum, got {other:?}"
            )))
        }
    };

    let oracle_hamiltonian = oracle_is_hamiltonian(g);
    let brute = brute_from(&products, ps);
    let bounds = bounds_from(g, ps, &products, oracle_hamiltonian);
    let threshold = int(ps.n() as i64) * ps.epsilon().one_plus();

    Ok(DecisionReport {
        graph_id: graph_id.to_string(),
        n: ps.n(),
        epsilon: ps.epsilon().clone(),
        oracle_hamiltonian,
        lp_hamiltonian: lp_value == threshold,
        lp_equals_brute: lp_value == brute.value,
        lp_value,
        threshold,
        brute_value: brute.value.clone(),
        argmax_index: brute.argmax_index,
        argmax_class: brute.argmax_class,
        bounds,
    })
}

/// Exhaustive n=4 verification over all 2¹² loopless digraphs: the LP
/// verdict must match the oracle, the LP value must match brute force, the
/// theorem bounds must hold, Hamiltonian argmax must be a tour, and the
/// Hamiltonian threshold gap lp_value − nontour_max ≥ ε must be exact.
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub n: usize,
    pub epsilon: Epsilon,
    pub total: usize,
    pub hamiltonian_count: usize,
    pub verdict_mismatches: Vec<u64>,
    pub value_mismatches: Vec<u64>,
    pub bound_violations: Vec<u64>,
    pub argmax_violations: Vec<u64>,
    pub gap_violations: Vec<u64>,
}

impl SweepReport {
    pub fn pass(&self) -> bool {
        self.verdict_mismatches.is_empty()
            && self.value_mismatches.is_empty()
            && self.bound_violations.is_empty()
            && self.argmax_violations.is_empty()
            && self.gap_violations.is_empty()
    }
}

pub fn sweep_all_n4(ps: &PointSet, policy: GoodnessPolicy<'_>) -> Result<SweepReport> {
    if ps.n() != 4 {
        return Err(Error::BadShape(format!(
            "exhaustive sweep is defined for n=4, got n={}",
            ps.n()
        )));
    }
    let reports: Vec<(u64, DecisionReport)> = (0u64..1 << 12)
        .into_par_iter()
        .map(|code| {
            let g = Digraph::from_code(4, code)?;
            let report = lp_decide(&g, ps, policy, &format!("n4-code{code}"))?;
            Ok((code, report))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut out = SweepReport {
        n: 4,
        epsilon: ps.epsilon().clone(),
        total: reports.len(),
        hamiltonian_count: 0,
        verdict_mismatches: Vec::new(),
        value_mismatches: Vec::new(),
        bound_violations: Vec::new(),
        argmax_violations: Vec::new(),
        gap_violations: Vec::new(),
    };
    for (code, r) in &reports {
        if r.oracle_hamiltonian {
            out.hamiltonian_count += 1;
        }
        if r.lp_hamiltonian != r.oracle_hamiltonian {
            out.verdict_mismatches.push(*code);
        }
        if !r.lp_equals_brute {
            out.value_mismatches.push(*code);
        }
        if !r.bounds.all_ok {
            out.bound_violations.push(*code);
        }
        if r.oracle_hamiltonian {
            if r.argmax_class != PermClass::Tour {
                out.argmax_violations.push(*code);
            }
            if &r.lp_value - &r.bounds.nontour_max < *ps.epsilon().value() {
                out.gap_violations.push(*code);
            }
        }
    }
    Ok(out)
}
