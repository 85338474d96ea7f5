//! Acceptance gate: one test per project acceptance criterion. Each test
//! prints a single `ACCEPTANCE <k> <name>: PASS (...)` line on success; a
//! failing criterion prints its audit trail and panics with a FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture --test-threads=1`
//! to see the per-criterion lines in order.
//!
//! Criterion 1 is expected to fail, permanently and by design: exact
//! arithmetic contradicts the published reference counts in three n=6 cells
//! (ε ∈ {5, 10, 20}), where the original floating-point study admits its
//! counts were sensitive to the machine-zero tolerance. The criterion
//! demands the published numbers, so the test asserts them, and the
//! deviation is reported with independently re-verified convex-combination
//! certificates rather than silently overridden. See the README for the
//! full analysis.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tedpoly::extremality::{
    bracket_epsilon_max, classify_extrema_for, is_epsilon_good, verify_membership,
    verify_separation, Extremeness, ExtremalityReport, ProbeRecord,
};
use tedpoly::facets::{
    affine_dim, enumerate_facets, project, verify_hrep, Facet, FacetOptions, ProjectedPoint,
};
use tedpoly::hamilton::{
    check_theorem_bounds, lp_decide, sweep_all_n4, Digraph, GoodnessPolicy,
};
use tedpoly::perm::{class_counts, ClassCounts, PermClass};
use tedpoly::rational::{int, normalize};
use tedpoly::transform::{build_point_set, Epsilon, PointSet};

fn eps_i(v: i64) -> Epsilon {
    Epsilon::from_int(v).expect("positive integer epsilon")
}

fn pass(k: usize, name: &str, detail: &str) {
    println!("ACCEPTANCE {k} {name}: PASS ({detail})");
}

fn fail(k: usize, name: &str, detail: &str) -> ! {
    panic!("ACCEPTANCE {k} {name}: FAIL ({detail})");
}

// ---------------------------------------------------------------------------
// Criterion 1: the full extremality grid against the published reference
// counts, zero tolerance. A deviation fails the criterion but must be
// reported with certificates so it can be audited.
// ---------------------------------------------------------------------------

const C1: &str = "table-1-reproduction";

/// The twelve published (tours, irreflexive non-tours, reflexive non-tours)
/// extreme-point triples, frozen as stated in the reference.
const PUBLISHED_GRID: [(usize, i64, (u64, u64, u64)); 12] = [
    (4, 1, (6, 3, 15)),
    (4, 5, (6, 3, 15)),
    (4, 10, (6, 3, 15)),
    (4, 20, (6, 3, 15)),
    (5, 1, (24, 20, 76)),
    (5, 5, (24, 0, 76)),
    (5, 10, (24, 0, 76)),
    (5, 20, (24, 0, 76)),
    (6, 1, (120, 145, 455)),
    (6, 5, (120, 26, 455)),
    (6, 10, (120, 19, 455)),
    (6, 20, (120, 13, 455)),
];

/// Prints the audit trail for one deviating cell: the class breakdown of the
/// non-extreme points, an independent re-verification of every membership
/// certificate, and one certificate in full as an example.
fn audit_deviating_cell(ps: &PointSet, report: &ExtremalityReport) {
    let non_extreme: Vec<_> = report.per_point.iter().filter(|v| !v.is_extreme()).collect();
    let mut by_class = ClassCounts::default();
    let mut verified = 0usize;
    for v in &non_extreme {
        by_class.add(v.perm_class);
        if let Extremeness::NotExtreme(cert) = &v.extremeness {
            assert!(
                verify_membership(ps, cert),
                "membership certificate for point {} failed re-verification; \
                 that would be an internal bug, not a count discrepancy",
                v.index
            );
            verified += 1;
        }
    }
    println!(
        "    {} non-extreme points (tours {}, irreflexive {}, reflexive {}); \
         all {} membership certificates re-verified: each point is an exact \
         convex combination of other points of the set",
        non_extreme.len(),
        by_class.tours,
        by_class.irreflexive_nontours,
        by_class.reflexive_nontours,
        verified
    );
    if let Some(v) = non_extreme.first() {
        if let Extremeness::NotExtreme(cert) = &v.extremeness {
            let q = &ps.points()[v.index];
            let shown: Vec<String> = cert
                .weights
                .iter()
                .take(4)
                .map(|(j, w)| format!("{w}*q[{j}]"))
                .collect();
            println!(
                "    example certificate: q[{}] ({}, image {:?}) = {}{} \
                 ({} nonzero weights summing to 1, reproducing all {} coordinates exactly)",
                v.index,
                v.perm_class.label(),
                q.source().image(),
                shown.join(" + "),
                if cert.weights.len() > 4 { " + ..." } else { "" },
                cert.weights.len(),
                ps.n() * ps.n()
            );
        }
    }
}

#[test]
fn criterion_1_table1_reproduction() {
    let mut small_secs = 0f64; // n = 4 and n = 5
    let mut n6_secs = 0f64;
    let mut deviations: Vec<String> = Vec::new();

    for (n, e, published) in PUBLISHED_GRID {
        let cell_start = Instant::now();
        let ps = build_point_set(n, &eps_i(e)).expect("grid cell in range");
        let report = classify_extrema_for(&ps).expect("extremality classification");
        let computed = report.extreme_triple();
        let elapsed = cell_start.elapsed().as_secs_f64();
        if n == 6 {
            n6_secs += elapsed;
        } else {
            small_secs += elapsed;
        }
        if computed == published {
            println!("  cell n={n} eps={e}: {computed:?} matches the published counts ({elapsed:.1}s)");
        } else {
            println!(
                "  cell n={n} eps={e}: computed {computed:?}, published {published:?} -- DEVIATION ({elapsed:.1}s)"
            );
            audit_deviating_cell(&ps, &report);
            deviations.push(format!(
                "n={n} eps={e} computed {computed:?} vs published {published:?}"
            ));
        }
    }

    println!("  n=4,5 cells took {small_secs:.1}s; n=6 cells took {n6_secs:.1}s");
    assert!(small_secs < 60.0, "n=4,5 cells must finish within a minute");
    assert!(n6_secs < 3600.0, "n=6 cells must finish within an hour");

    if deviations.is_empty() {
        pass(1, C1, "all twelve cells match exactly");
    } else {
        fail(
            1,
            C1,
            &format!(
                "exact arithmetic contradicts {} published cell(s): {}; every \
                 contradicting point carries a re-verified convex-combination \
                 certificate, printed above. The reference computed these cells \
                 with a floating-point LP and a machine-zero tolerance of 1e-8 \
                 to 1e-10 and reports its counts varied with that tolerance; \
                 the exact counts carry no tolerance at all",
                deviations.len(),
                deviations.join("; ")
            ),
        );
    }
}

// ---------------------------------------------------------------------------
// Criterion 2: Birkhoff class counts against the published column and an
// independent derangement-recurrence oracle.
// ---------------------------------------------------------------------------

const C2: &str = "birkhoff-class-counts";

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// D(n) = (n-1) * (D(n-1) + D(n-2)), the derangement recurrence, kept
/// independent of the library's permutation enumeration.
fn derangements(n: usize) -> u64 {
    let (mut prev, mut cur) = (1u64, 0u64); // D(0), D(1)
    for k in 2..=n {
        let next = (k as u64 - 1) * (cur + prev);
        prev = cur;
        cur = next;
    }
    if n == 0 { 1 } else { cur }
}

#[test]
fn criterion_2_birkhoff_class_counts() {
    for (n, want) in [(4, (6, 3, 15)), (5, (24, 20, 76)), (6, (120, 145, 455))] {
        let got = class_counts(n).expect("count in range").triple();
        assert_eq!(got, want, "published class counts at n={n}");
    }
    for n in 3..=8usize {
        let counts = class_counts(n).expect("count in range");
        let tours = factorial(n - 1);
        let dn = derangements(n);
        assert_eq!(
            counts.triple(),
            (tours, dn - tours, factorial(n) - dn),
            "derangement-recurrence oracle at n={n}"
        );
        assert_eq!(counts.total(), factorial(n), "class partition at n={n}");
    }
    pass(2, C2, "published triples for n=4..6 and recurrence oracle for n=3..8");
}

// ---------------------------------------------------------------------------
// Criterion 3: LP decision = backtracking oracle and LP value = brute-force
// maximum, exhaustively at n=4 and on random corpora at n=5 and n=6.
// ---------------------------------------------------------------------------

const C3: &str = "lemma-equivalence";

fn random_digraph(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Digraph {
    let adj: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| u8::from(i != j && rng.gen_bool(density)))
                .collect()
        })
        .collect();
    Digraph::from_adjacency(adj).expect("loopless adjacency is valid")
}

#[test]
fn criterion_3_lemma_equivalence() {
    let eps = eps_i(1);

    let verdict4 = is_epsilon_good(4, &eps).expect("goodness check");
    assert!(verdict4.good, "eps=1 must be good at n=4");
    let ps4 = build_point_set(4, &eps).expect("n=4 points");
    let sweep = sweep_all_n4(&ps4, GoodnessPolicy::Verified(&verdict4)).expect("sweep");
    assert_eq!(sweep.total, 4096, "all loopless digraphs on 4 vertices");
    assert!(
        sweep.pass(),
        "exhaustive n=4 sweep found disagreements: {sweep:?}"
    );
    assert_eq!(sweep.hamiltonian_count, 1194, "independent Hamiltonian census");
    let mut detail = format!(
        "all 4096 n=4 digraphs agree across LP, oracle, and brute force ({} Hamiltonian)",
        sweep.hamiltonian_count
    );

    for n in [5usize, 6] {
        let verdict = is_epsilon_good(n, &eps).expect("goodness check");
        assert!(verdict.good, "eps=1 must be good at n={n}");
        let ps = build_point_set(n, &eps).expect("point set");
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97 + n as u64);
        let mut hamiltonian = 0usize;
        for k in 0..200usize {
            let density = [0.2, 0.35, 0.5, 0.8][k % 4];
            let g = random_digraph(n, density, &mut rng);
            let r = lp_decide(
                &g,
                &ps,
                GoodnessPolicy::Verified(&verdict),
                &format!("rand-n{n}-{k}"),
            )
            .expect("decision");
            assert!(
                r.lp_equals_brute,
                "LP value {} != brute-force value {} on rand-n{n}-{k}",
                r.lp_value, r.brute_value
            );
            assert_eq!(
                r.lp_hamiltonian, r.oracle_hamiltonian,
                "LP verdict disagrees with the backtracking oracle on rand-n{n}-{k}"
            );
            assert!(r.consistent(), "inconsistent report on rand-n{n}-{k}: {r:?}");
            if r.oracle_hamiltonian {
                hamiltonian += 1;
            }
        }
        assert!(
            hamiltonian > 0 && hamiltonian < 200,
            "the random corpus at n={n} must contain both verdicts, got {hamiltonian}/200"
        );
        detail += &format!("; 200 random n={n} digraphs agree ({hamiltonian} Hamiltonian)");
    }

    pass(3, C3, &detail);
}

// ---------------------------------------------------------------------------
// Criterion 4: the class-wise inner-product bounds over the exhaustive n=4
// corpus, zero violations.
// ---------------------------------------------------------------------------

const C4: &str = "theorem-bound-suite";

#[test]
fn criterion_4_theorem_bound_suite() {
    let ps = build_point_set(4, &eps_i(1)).expect("n=4 points");
    let mut hamiltonian = 0usize;
    let mut violations: Vec<u64> = Vec::new();
    for code in 0..1u64 << 12 {
        let g = Digraph::from_code(4, code).expect("code in range");
        let bounds = check_theorem_bounds(&g, &ps).expect("bound report");
        if bounds.oracle_hamiltonian {
            hamiltonian += 1;
        }
        if !bounds.all_ok {
            if violations.is_empty() {
                for c in &bounds.checks {
                    println!(
                        "  code {code}: {} (bound {}, actual {}, satisfied {})",
                        c.name, c.bound, c.actual, c.satisfied
                    );
                }
            }
            violations.push(code);
        }
    }
    if !violations.is_empty() {
        fail(
            4,
            C4,
            &format!(
                "{} of 4096 graphs violate a bound (first audit above): {:?}",
                violations.len(),
                &violations[..violations.len().min(8)]
            ),
        );
    }
    pass(
        4,
        C4,
        &format!(
            "zero violations over 4096 graphs ({hamiltonian} Hamiltonian, {} not)",
            4096 - hamiltonian
        ),
    );
}

// ---------------------------------------------------------------------------
// Criterion 5: exact geometric invariants of every transformed point over
// the full (n, eps) grid, plus the affine dimension.
// ---------------------------------------------------------------------------

const C5: &str = "geometry-invariants";

#[test]
fn criterion_5_geometry_invariants() {
    for n in [4usize, 5, 6] {
        for e in [1i64, 5, 10, 20] {
            let eps = eps_i(e);
            let ps = build_point_set(n, &eps).expect("grid cell in range");
            ps.validate().expect("library invariant check");

            // The same invariants restated here from the accessor level, so
            // the criterion does not ride on PointSet::validate alone.
            let one_plus = eps.one_plus();
            let n_rat = int(n as i64);
            let tour_norm = &n_rat * (&one_plus * &one_plus);
            let nontour_norm = &n_rat + eps.value() * (int(2) + eps.value());
            for q in ps.points() {
                for s in q.row_sums().iter().chain(q.col_sums().iter()) {
                    assert_eq!(s, &one_plus, "row/column sum at n={n} eps={e}");
                }
                let want_norm = if q.class().is_tour() {
                    tour_norm.clone()
                } else {
                    nontour_norm.clone()
                };
                assert_eq!(q.squared_norm(), want_norm, "squared norm at n={n} eps={e}");
                let want_trace = match q.class() {
                    PermClass::Tour => int(0),
                    PermClass::IrreflexiveNonTour => eps.value().clone(),
                    PermClass::ReflexiveNonTour => {
                        int(q.source().fixed_point_count() as i64) + eps.value()
                    }
                };
                assert_eq!(q.trace(), want_trace, "trace at n={n} eps={e}");
            }
            assert_eq!(
                ps.affine_dim(),
                n * n - 2 * n + 1,
                "affine dimension at n={n} eps={e}"
            );
        }
    }
    pass(5, C5, "sums, norms, traces, and affine dimension exact across the full grid");
}

// ---------------------------------------------------------------------------
// Criterion 6: the facet enumeration at n=4, eps=1, verified and compared
// against a complete-by-construction support-hyperplane oracle.
// ---------------------------------------------------------------------------

const C6: &str = "facet-reproduction";

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Divides a candidate (normal, rhs) by the gcd of all entries. The normal
/// is nonzero, so the gcd is positive.
fn reduce_candidate(mut normal: Vec<i128>, mut rhs: i128) -> (Vec<i128>, i128) {
    let mut g = rhs.unsigned_abs();
    for x in &normal {
        g = gcd_u128(g, x.unsigned_abs());
    }
    let g = g as i128;
    for x in normal.iter_mut() {
        *x /= g;
    }
    rhs /= g;
    (normal, rhs)
}

/// A DD facet in the oracle's key space: coordinates there are scaled by 4,
/// which multiplies the right-hand side and leaves the normal unchanged.
fn facet_key(f: &Facet) -> (Vec<i128>, i128) {
    let normal: Vec<i128> = f
        .coeffs()
        .iter()
        .map(|c| i128::try_from(c).expect("facet coefficient fits i128"))
        .collect();
    let rhs = i128::try_from(f.rhs()).expect("facet rhs fits i128") * 4;
    reduce_candidate(normal, rhs)
}

/// Bareiss determinant of an 8x8 integer matrix. Intermediate values are
/// determinants of minors, bounded here by Hadamard's inequality at 8^12,
/// so products stay far inside i128.
fn det8(m: &mut [[i128; 8]; 8]) -> i128 {
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..7 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..8).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for r in k + 1..8 {
            for c in k + 1..8 {
                m[r][c] = (m[r][c] * m[k][k] - m[r][k] * m[k][c]) / prev;
            }
            m[r][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[7][7]
}

fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every facet of the 9-dimensional hull of the 24 points, found the slow,
/// complete way: for each of the C(24,9) = 1,307,504 point subsets, build
/// the hyperplane they span (when affinely independent) and keep it if the
/// whole point set lies on one side. Every facet has at least 9 affinely
/// independent tight points, so it is found by at least one subset; every
/// kept hyperplane supports a face with 8-dimensional tight span, which in
/// a 9-dimensional polytope is a facet. Coordinates are pre-scaled by 4 to
/// integers, so the whole search runs in i128.
fn support_hyperplane_oracle(points: &[ProjectedPoint]) -> BTreeSet<(Vec<i128>, i128)> {
    let pts: Vec<[i128; 9]> = points
        .iter()
        .map(|p| {
            let mut out = [0i128; 9];
            for (k, c) in p.coords.iter().enumerate() {
                let scaled = c * int(4);
                assert!(scaled.is_integer(), "coordinates have denominator 4");
                out[k] = i128::try_from(scaled.numer()).expect("small integer");
            }
            out
        })
        .collect();
    assert_eq!(pts.len(), 24);

    let mut found: BTreeSet<(Vec<i128>, i128)> = BTreeSet::new();
    for_each_combination(24, 9, |subset| {
        let mut d = [[0i128; 9]; 8];
        for r in 0..8 {
            for c in 0..9 {
                d[r][c] = pts[subset[r + 1]][c] - pts[subset[0]][c];
            }
        }
        // Kernel of the difference matrix by Cramer: the j-th coordinate is
        // the signed maximal minor omitting column j. All zero iff the
        // subset is affinely dependent.
        let mut normal = [0i128; 9];
        let mut nonzero = false;
        for j in 0..9 {
            let mut m = [[0i128; 8]; 8];
            for r in 0..8 {
                let mut cc = 0;
                for c in 0..9 {
                    if c != j {
                        m[r][cc] = d[r][c];
                        cc += 1;
                    }
                }
            }
            let det = det8(&mut m);
            nonzero |= det != 0;
            normal[j] = if j % 2 == 0 { det } else { -det };
        }
        if !nonzero {
            return;
        }
        let rhs: i128 = (0..9).map(|c| normal[c] * pts[subset[0]][c]).sum();
        let mut above = false;
        let mut below = false;
        for p in &pts {
            let side = (0..9).map(|c| normal[c] * p[c]).sum::<i128>() - rhs;
            above |= side > 0;
            below |= side < 0;
            if above && below {
                return; // the hyperplane cuts the polytope: not supporting
            }
        }
        debug_assert!(above || below, "no hyperplane contains a full-dimensional set");
        let (normal, rhs) = if above {
            (normal.iter().map(|x| -x).collect(), -rhs)
        } else {
            (normal.to_vec(), rhs)
        };
        found.insert(reduce_candidate(normal, rhs));
    });
    found
}

#[test]
fn criterion_6_facet_reproduction() {
    let start = Instant::now();
    let ps = build_point_set(4, &eps_i(1)).expect("n=4 points");
    let projected = project(&ps);
    assert_eq!(affine_dim(&projected), 9, "affine dimension of the hull");

    let h = enumerate_facets(&projected, &FacetOptions::default()).expect("facet enumeration");
    assert!(h.is_full_dimensional);
    assert_eq!(h.dimension, 9);
    assert!(
        h.facets.len() >= 508,
        "found {} facets, below the published lower bound of 508",
        h.facets.len()
    );

    // V/H round trip: the vertices recovered from the facet description
    // must be exactly the extreme points the membership LPs certify.
    let report = classify_extrema_for(&ps).expect("extremality classification");
    let expected: BTreeSet<usize> = report
        .per_point
        .iter()
        .filter(|v| v.is_extreme())
        .map(|v| v.index)
        .collect();
    assert_eq!(expected.len(), 24, "all 24 points are extreme at n=4, eps=1");
    let verification = verify_hrep(&h, &projected, &expected);
    assert!(
        verification.passed(),
        "H-representation verification failed: {verification:?}"
    );

    let oracle = support_hyperplane_oracle(&projected);
    let enumerated: BTreeSet<(Vec<i128>, i128)> = h.facets.iter().map(facet_key).collect();
    assert_eq!(enumerated.len(), h.facets.len(), "facet keys are distinct");
    if oracle != enumerated {
        let missing: Vec<_> = oracle.difference(&enumerated).take(3).collect();
        let extra: Vec<_> = enumerated.difference(&oracle).take(3).collect();
        fail(
            6,
            C6,
            &format!(
                "facet sets disagree: oracle found {}, enumeration found {}; \
                 oracle-only samples {missing:?}, enumeration-only samples {extra:?}",
                oracle.len(),
                enumerated.len()
            ),
        );
    }

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 1800.0, "runtime budget is 30 minutes, took {elapsed:.0}s");
    pass(
        6,
        C6,
        &format!(
            "{} facets in dimension 9, H-representation verified, equal to the \
             C(24,9) support-hyperplane oracle, {elapsed:.1}s",
            h.facets.len()
        ),
    );
}

// ---------------------------------------------------------------------------
// Criterion 7: epsilon-max bisection brackets at n=5 and n=6 with certified
// probes. These are new results with no reference number to match, so the
// assertions are bracket validity and certificate soundness.
// ---------------------------------------------------------------------------

const C7: &str = "epsilon-max-brackets";

/// Re-checks the certificates carried by one probe: every membership
/// certificate is re-verified outright; separation certificates, whose full
/// re-verification is quadratic in n!, are spot-checked on a fixed stride
/// (construction already verified every one of them inline, in full
/// coordinates, before the report could exist).
fn verify_probe_certificates(n: usize, probe: &ProbeRecord) -> (usize, usize) {
    let ps = build_point_set(n, &probe.epsilon).expect("probe point set");
    assert_eq!(probe.report.per_point.len(), ps.len(), "verdict per point");
    let mut memberships = 0usize;
    let mut separations = 0usize;
    for (k, v) in probe.report.per_point.iter().enumerate() {
        match &v.extremeness {
            Extremeness::NotExtreme(cert) => {
                assert!(
                    verify_membership(&ps, cert),
                    "membership certificate for point {} at n={n} eps={} failed",
                    v.index,
                    probe.epsilon
                );
                memberships += 1;
            }
            Extremeness::Extreme(cert) => {
                if k % 29 == 0 {
                    assert!(
                        verify_separation(&ps, v.index, cert),
                        "separation certificate for point {} at n={n} eps={} failed",
                        v.index,
                        probe.epsilon
                    );
                    separations += 1;
                }
            }
        }
    }
    (memberships, separations)
}

#[test]
fn criterion_7_epsilon_max_brackets() {
    let lo = eps_i(1);
    let hi = eps_i(5);
    let max_width = normalize(1, 16).expect("1/16");
    let mut details: Vec<String> = Vec::new();

    for n in [5usize, 6] {
        let start = Instant::now();
        let bracket = bracket_epsilon_max(n, &lo, &hi, 6).expect("bracket run");
        assert_eq!(bracket.iterations, 6);
        assert_eq!(bracket.probes.len(), 8, "two endpoints plus six bisections");
        assert!(bracket.lo.value() < bracket.hi.value(), "ordered bracket");
        assert!(
            bracket.width() <= max_width,
            "bracket width at n={n} is {}, wider than 1/16",
            bracket.width()
        );

        // Both returned endpoints must have been probed, with the verdicts
        // that make [lo, hi] a valid bracket.
        let lo_probe = bracket
            .probes
            .iter()
            .find(|p| p.epsilon.value() == bracket.lo.value())
            .expect("lo endpoint was probed");
        assert!(lo_probe.good(), "lo endpoint must be good");
        let hi_probe = bracket
            .probes
            .iter()
            .find(|p| p.epsilon.value() == bracket.hi.value())
            .expect("hi endpoint was probed");
        assert!(!hi_probe.good(), "hi endpoint must be bad");

        for probe in &bracket.probes {
            let (memberships, separations) = verify_probe_certificates(n, probe);
            println!(
                "  probe n={n} eps={} ({}): {} membership certificates re-verified, \
                 {} separation certificates spot-checked",
                probe.epsilon,
                if probe.good() { "good" } else { "bad" },
                memberships,
                separations
            );
        }

        for (bad, good) in &bracket.monotonicity_findings {
            println!("  finding: goodness inversion at n={n}: eps={bad} bad below eps={good} good");
        }

        details.push(format!(
            "eps_max({n}) in [{}, {}] after 6 bisections ({:.0}s)",
            bracket.lo,
            bracket.hi,
            start.elapsed().as_secs_f64()
        ));
    }

    pass(7, C7, &details.join("; "));
}
