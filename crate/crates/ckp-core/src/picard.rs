//! Picard iteration, fixed-point reports, and trace diagnostics.
//!
//! On a finite space the orbit `x_{n+1} = T(x_n)` must either arrive at a
//! fixed point or revisit a point within `n` applications, so "convergence"
//! is exact arrival and every trace terminates with an explicit reason.
//!
//! [`solve`] combines the cyclic Kannan-Pata certificate with iteration from
//! every start and an exhaustive fixed-point scan. When the certificate
//! holds, the report's conformance flags (`unique`, `in_intersection`,
//! `all_converge_to_same`) are the machine-checkable conclusions of the
//! fixed-point theorem; when it fails they are still reported, just not
//! entailed — counterexample instances stay representable.
//!
//! [`check_trace_invariants`] re-checks the proof-level facts a holding
//! certificate forces on each trace (monotone steps, exact arrival, set
//! membership cycling) and records the boundedness diagnostics.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::certify::{certify_cyclic_kannan_pata, Certificate, EpsilonGrid, PataParams};
use crate::cyclic::{wrap_index, CyclicRepresentation, SelfMap};
use crate::error::SolveError;
use crate::metric::AnchoredSpace;

/// Why a trace stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// The last application satisfied `T(x) = x`; the trace ends with the
    /// repeated point and a final step of exactly 0.
    FixedPoint,
    /// A previously visited, non-fixed point recurred.
    CycleDetected,
    /// The iteration cap was reached first.
    MaxIter,
}

/// The recorded orbit of one start point.
///
/// `iterates[0]` is the start; `steps[n] = d(iterates[n+1], iterates[n])`;
/// `norms[n] = d(iterates[n], anchor)`. `set_index[n]` is the 0-based set
/// used to track membership: it starts at the smallest set containing the
/// start and is expected to advance cyclically by one each application.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PicardTrace {
    pub start: usize,
    pub iterates: Vec<usize>,
    pub steps: Vec<f64>,
    pub norms: Vec<f64>,
    pub set_index: Vec<usize>,
    pub terminated: Termination,
}

impl PicardTrace {
    /// The point the trace stopped at.
    pub fn endpoint(&self) -> usize {
        *self.iterates.last().expect("trace has at least the start")
    }

    /// Number of map applications performed.
    pub fn applications(&self) -> usize {
        self.steps.len()
    }
}

/// Tight deterministic iteration cap: after `n + 1` applications a fixed
/// point or a revisit is guaranteed by pigeonhole.
pub fn default_max_iter(n_points: usize) -> usize {
    n_points + 1
}

fn tracked_set(rep: &CyclicRepresentation, point: usize, expected: Option<usize>) -> usize {
    if let Some(set) = expected {
        if rep.contains(set, point) {
            return set;
        }
    }
    rep.memberships(point)
        .into_iter()
        .next()
        .or(expected)
        .unwrap_or(0)
}

/// Runs Picard iteration from `start` until a fixed point, a cycle, or
/// `max_iter` applications.
pub fn iterate(
    anchored: &AnchoredSpace,
    map: &SelfMap,
    rep: &CyclicRepresentation,
    start: usize,
    max_iter: usize,
) -> Result<PicardTrace, SolveError> {
    let space = anchored.space();
    let n = space.len();
    if map.len() != n {
        return Err(crate::error::CertifyError::MapSizeMismatch {
            map_len: map.len(),
            n_points: n,
        }
        .into());
    }
    if rep.n_points() != n {
        return Err(crate::error::CertifyError::RepSizeMismatch {
            rep_points: rep.n_points(),
            n_points: n,
        }
        .into());
    }
    if start >= n {
        return Err(SolveError::StartOutOfRange { start, n });
    }
    if max_iter == 0 {
        return Err(SolveError::ZeroMaxIter);
    }

    let mut iterates = vec![start];
    let mut steps = Vec::new();
    let mut norms = vec![anchored.norm(start)];
    let mut set_index = vec![tracked_set(rep, start, None)];
    let mut visited = vec![false; n];
    visited[start] = true;

    let mut current = start;
    let mut terminated = Termination::MaxIter;
    for _ in 0..max_iter {
        let next = map.apply(current);
        steps.push(space.distance(next, current));
        norms.push(anchored.norm(next));
        let expected = rep.successor(*set_index.last().expect("non-empty"));
        set_index.push(tracked_set(rep, next, Some(expected)));
        iterates.push(next);
        if next == current {
            terminated = Termination::FixedPoint;
            break;
        }
        if visited[next] {
            terminated = Termination::CycleDetected;
            break;
        }
        visited[next] = true;
        current = next;
    }

    Ok(PicardTrace {
        start,
        iterates,
        steps,
        norms,
        set_index,
        terminated,
    })
}

/// Exactly the points with `T(x) = x`, ascending. This is the independent
/// oracle for the uniqueness and convergence claims.
pub fn find_fixed_points_exhaustive(map: &SelfMap) -> Vec<usize> {
    (0..map.len()).filter(|&x| map.apply(x) == x).collect()
}

/// The combined outcome of certification, all-starts iteration, and the
/// exhaustive fixed-point scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointReport {
    /// All fixed points of the map, ascending, found by exhaustive scan.
    pub fixed_points: Vec<usize>,
    /// Exactly one fixed point exists.
    pub unique: bool,
    /// The unique fixed point lies in the intersection of all sets.
    pub in_intersection: bool,
    /// Every trace arrived at one common fixed point.
    pub all_converge_to_same: bool,
    /// One trace per start point, in point order.
    pub traces: Vec<PicardTrace>,
    /// The cyclic Kannan-Pata certificate used as hypothesis.
    pub certificate: Certificate,
}

impl FixedPointReport {
    /// Conformance flags the theorem asserts when the certificate holds.
    pub fn conforms(&self) -> bool {
        self.unique && self.in_intersection && self.all_converge_to_same
    }
}

/// Certifies the cyclic Kannan-Pata condition, iterates from every point,
/// scans for fixed points exhaustively, and reports everything.
///
/// The conformance flags are entailed by the theorem only when the
/// certificate holds; they are reported unconditionally.
pub fn solve(
    anchored: &AnchoredSpace,
    map: &SelfMap,
    rep: &CyclicRepresentation,
    params: &PataParams,
    grid: &EpsilonGrid,
    max_iter: usize,
    tau: f64,
) -> Result<FixedPointReport, SolveError> {
    let certificate = certify_cyclic_kannan_pata(anchored, map, rep, params, grid, tau)?;
    let n = anchored.space().len();

    let mut traces = Vec::with_capacity(n);
    for start in 0..n {
        traces.push(iterate(anchored, map, rep, start, max_iter)?);
    }

    let fixed_points = find_fixed_points_exhaustive(map);
    let unique = fixed_points.len() == 1;
    let in_intersection = unique && rep.intersection().binary_search(&fixed_points[0]).is_ok();
    let all_converge_to_same = traces
        .iter()
        .all(|t| t.terminated == Termination::FixedPoint)
        && traces
            .windows(2)
            .all(|w| w[0].endpoint() == w[1].endpoint());

    Ok(FixedPointReport {
        fixed_points,
        unique,
        in_intersection,
        all_converge_to_same,
        traces,
        certificate,
    })
}

/// One failed trace assertion; indices refer to positions in the trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceViolation {
    /// `steps[n+1] > steps[n] + tau`: the step sequence grew.
    StepIncrease { n: usize, step: f64, next_step: f64 },
    /// The trace did not end at a fixed point with a final step of 0.
    NotFixedPoint { last_step: f64 },
    /// `iterates[n]` is not a member of the tracked set.
    MembershipGap { n: usize, point: usize, set: usize },
    /// The tracked set did not advance cyclically by one.
    MembershipSkip {
        n: usize,
        from_set: usize,
        to_set: usize,
    },
}

/// Pass/fail counts of the positional bound `c_n ≤ (k−1)·c_2` for one `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KBoundCount {
    pub k: usize,
    pub passes: usize,
    pub failures: usize,
}

/// Reported-only boundedness diagnostic, in the frame anchored at the
/// trace's own start: `c_n = d(x_n, x_1)` and `c_2` is the first step.
///
/// Each position `n` (1-based) is checked against `(k−1)·c_2` where
/// `k ≡ n (mod m)`, `1 ≤ k ≤ m`. The bound degenerates for `k = 1` (it
/// forces `c_n = 0`) and is frequently exceeded for `k = 2`, so outcomes
/// are counted per `k` and never asserted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StartBoundDiagnostic {
    pub c2: f64,
    pub passes: usize,
    pub failures: usize,
    pub by_k: Vec<KBoundCount>,
}

/// Outcome of [`check_trace_invariants`]: hard violations plus the reported
/// boundedness diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceDiagnostics {
    /// Whether the certificate supplied as hypothesis holds. Violations
    /// falsify the theorem only under a holding certificate.
    pub hypothesis_holds: bool,
    pub violations: Vec<TraceViolation>,
    /// Largest anchored norm along the trace (boundedness witness).
    pub c_max: f64,
    pub start_bound: StartBoundDiagnostic,
}

impl TraceDiagnostics {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the proof-level invariants on one trace:
///
/// (a) steps never increase (within `tau`),
/// (b) the trace reached a fixed point and its final step is exactly 0,
/// (c) the tracked set membership holds and advances cyclically by one,
/// (d) reports the maximum norm and the per-`k` positional bound counts.
///
/// Every violation names the position and the offending values.
pub fn check_trace_invariants(
    trace: &PicardTrace,
    certificate: &Certificate,
    rep: &CyclicRepresentation,
    anchored: &AnchoredSpace,
    tau: f64,
) -> TraceDiagnostics {
    let mut violations = Vec::new();

    for n in 0..trace.steps.len().saturating_sub(1) {
        if trace.steps[n + 1] > trace.steps[n] + tau {
            violations.push(TraceViolation::StepIncrease {
                n,
                step: trace.steps[n],
                next_step: trace.steps[n + 1],
            });
        }
    }

    let last_step = trace.steps.last().copied().unwrap_or(0.0);
    if trace.terminated != Termination::FixedPoint || last_step != 0.0 {
        violations.push(TraceViolation::NotFixedPoint { last_step });
    }

    for n in 0..trace.iterates.len() {
        let set = trace.set_index[n];
        if !rep.contains(set, trace.iterates[n]) {
            violations.push(TraceViolation::MembershipGap {
                n,
                point: trace.iterates[n],
                set,
            });
        }
        if n + 1 < trace.set_index.len() {
            let expected = rep.successor(set);
            if trace.set_index[n + 1] != expected {
                violations.push(TraceViolation::MembershipSkip {
                    n,
                    from_set: set,
                    to_set: trace.set_index[n + 1],
                });
            }
        }
    }

    let c_max = trace.norms.iter().copied().fold(0.0_f64, f64::max);

    let space = anchored.space();
    let m = rep.m();
    let c2 = trace.steps.first().copied().unwrap_or(0.0);
    let mut by_k: Vec<KBoundCount> = (1..=m)
        .map(|k| KBoundCount {
            k,
            passes: 0,
            failures: 0,
        })
        .collect();
    let mut passes = 0;
    let mut failures = 0;
    for (idx, &point) in trace.iterates.iter().enumerate() {
        let position = (idx + 1) as u64; // 1-based n
        let k = wrap_index(position, m as u64) as usize;
        let bound = (k - 1) as f64 * c2;
        let c_n = space.distance(point, trace.start);
        if c_n <= bound + tau {
            passes += 1;
            by_k[k - 1].passes += 1;
        } else {
            failures += 1;
            by_k[k - 1].failures += 1;
        }
    }

    TraceDiagnostics {
        hypothesis_holds: certificate.holds,
        violations,
        c_max,
        start_bound: StartBoundDiagnostic {
            c2,
            passes,
            failures,
            by_k,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{default_cert_tau, kannan_to_pata, PataParams, PsiSpec};
    use crate::metric::FiniteMetricSpace;
    use alloc::string::String;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| alloc::format!("p{i}")).collect()
    }

    fn e1() -> (AnchoredSpace, SelfMap, CyclicRepresentation) {
        let space =
            FiniteMetricSpace::new(labels(2), vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let anchored = AnchoredSpace::new(space, 0).unwrap();
        let map = SelfMap::new(vec![1, 0]).unwrap();
        let rep = CyclicRepresentation::new(vec![vec![0], vec![1]], 2).unwrap();
        (anchored, map, rep)
    }

    fn e2() -> (AnchoredSpace, SelfMap, CyclicRepresentation) {
        let dist = vec![
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ];
        let space = FiniteMetricSpace::new(labels(3), dist).unwrap();
        let anchored = AnchoredSpace::new(space, 0).unwrap();
        let map = SelfMap::new(vec![2, 2, 2]).unwrap();
        let rep = CyclicRepresentation::new(vec![vec![0, 2], vec![1, 2]], 3).unwrap();
        (anchored, map, rep)
    }

    fn e3() -> (AnchoredSpace, SelfMap, CyclicRepresentation) {
        let dist = vec![
            vec![0.0, 1.0, 3.0],
            vec![1.0, 0.0, 2.0],
            vec![3.0, 2.0, 0.0],
        ];
        let space = FiniteMetricSpace::new(labels(3), dist).unwrap();
        let anchored = AnchoredSpace::new(space, 0).unwrap();
        let map = SelfMap::new(vec![1, 1, 0]).unwrap();
        let rep = CyclicRepresentation::new(vec![vec![0, 1], vec![1, 2]], 3).unwrap();
        (anchored, map, rep)
    }

    #[test]
    fn constant_map_fixes_after_one_application() {
        let (anchored, map, rep) = e2();
        let trace = iterate(&anchored, &map, &rep, 0, 4).unwrap();
        assert_eq!(trace.iterates, vec![0, 2, 2]);
        assert_eq!(trace.steps, vec![1.0, 0.0]);
        assert_eq!(trace.terminated, Termination::FixedPoint);
    }

    #[test]
    fn e3_trace_from_far_point() {
        let (anchored, map, rep) = e3();
        let trace = iterate(&anchored, &map, &rep, 2, 4).unwrap();
        assert_eq!(trace.iterates, vec![2, 0, 1, 1]);
        assert_eq!(trace.steps, vec![3.0, 1.0, 0.0]);
        assert_eq!(trace.norms, vec![3.0, 0.0, 1.0, 1.0]);
        assert_eq!(trace.set_index, vec![1, 0, 1, 0]);
        assert_eq!(trace.terminated, Termination::FixedPoint);
    }

    #[test]
    fn swap_map_is_a_detected_cycle() {
        let (anchored, map, rep) = e1();
        let trace = iterate(&anchored, &map, &rep, 0, 3).unwrap();
        assert_eq!(trace.iterates, vec![0, 1, 0]);
        assert_eq!(trace.terminated, Termination::CycleDetected);
    }

    #[test]
    fn max_iter_stops_early() {
        let (anchored, map, rep) = e1();
        let trace = iterate(&anchored, &map, &rep, 0, 1).unwrap();
        assert_eq!(trace.iterates, vec![0, 1]);
        assert_eq!(trace.terminated, Termination::MaxIter);
    }

    #[test]
    fn iterate_structural_errors() {
        let (anchored, map, rep) = e1();
        assert!(matches!(
            iterate(&anchored, &map, &rep, 5, 3),
            Err(SolveError::StartOutOfRange { start: 5, n: 2 })
        ));
        assert!(matches!(
            iterate(&anchored, &map, &rep, 0, 0),
            Err(SolveError::ZeroMaxIter)
        ));
    }

    #[test]
    fn exhaustive_scan_examples() {
        let identity = SelfMap::new(vec![0, 1, 2]).unwrap();
        assert_eq!(find_fixed_points_exhaustive(&identity), vec![0, 1, 2]);
        let swap = SelfMap::new(vec![1, 0]).unwrap();
        assert!(find_fixed_points_exhaustive(&swap).is_empty());
        let e3_map = SelfMap::new(vec![1, 1, 0]).unwrap();
        assert_eq!(find_fixed_points_exhaustive(&e3_map), vec![1]);
    }

    #[test]
    fn solve_constant_map_conforms() {
        let (anchored, map, rep) = e2();
        let params = PataParams::new(0.0, 1.0, 0.0, PsiSpec::power(1.0, 1.0).unwrap()).unwrap();
        let grid = EpsilonGrid::default_grid();
        let tau = default_cert_tau(anchored.space());
        let report = solve(&anchored, &map, &rep, &params, &grid, 4, tau).unwrap();
        assert!(report.certificate.holds);
        assert_eq!(report.fixed_points, vec![2]);
        assert!(report.unique && report.in_intersection && report.all_converge_to_same);
        assert!(report.traces.iter().all(|t| t.endpoint() == 2));
    }

    #[test]
    fn solve_e3_reduction_instance_conforms() {
        let (anchored, map, rep) = e3();
        let params = kannan_to_pata(2.0 / 3.0).unwrap();
        let grid = EpsilonGrid::default_grid();
        let tau = default_cert_tau(anchored.space());
        let report = solve(&anchored, &map, &rep, &params, &grid, 4, tau).unwrap();
        assert!(report.certificate.holds);
        assert_eq!(report.fixed_points, vec![1]);
        assert_eq!(rep.intersection(), vec![1]);
        assert!(report.conforms());
    }

    #[test]
    fn solve_swap_map_reports_without_asserting() {
        let (anchored, map, rep) = e1();
        let params = kannan_to_pata(0.5).unwrap();
        let grid = EpsilonGrid::default_grid();
        let report = solve(&anchored, &map, &rep, &params, &grid, 3, 1e-12).unwrap();
        assert!(!report.certificate.holds);
        assert!(report.fixed_points.is_empty());
        assert!(!report.unique);
        assert!(!report.all_converge_to_same);
    }

    #[test]
    fn diagnostics_pass_on_certified_trace() {
        let (anchored, map, rep) = e3();
        let params = kannan_to_pata(2.0 / 3.0).unwrap();
        let grid = EpsilonGrid::default_grid();
        let tau = default_cert_tau(anchored.space());
        let report = solve(&anchored, &map, &rep, &params, &grid, 4, tau).unwrap();
        let trace = &report.traces[2];
        let diag = check_trace_invariants(trace, &report.certificate, &rep, &anchored, tau);
        assert!(diag.hypothesis_holds);
        assert!(diag.ok(), "violations: {:?}", diag.violations);
        assert_eq!(diag.c_max, 3.0);
        // positional bound in the start frame: c = [0, 3, 2, 2], c2 = 3,
        // bounds for k = [1, 2, 1, 2] are [0, 3, 0, 3] — position 3 is the
        // k = 1 anomaly.
        assert_eq!(diag.start_bound.c2, 3.0);
        assert_eq!(diag.start_bound.passes, 3);
        assert_eq!(diag.start_bound.failures, 1);
        assert_eq!(diag.start_bound.by_k[0].failures, 1);
    }

    #[test]
    fn diagnostics_flag_cycles() {
        let (anchored, map, rep) = e1();
        let params = kannan_to_pata(0.5).unwrap();
        let grid = EpsilonGrid::default_grid();
        let report = solve(&anchored, &map, &rep, &params, &grid, 3, 1e-12).unwrap();
        let diag = check_trace_invariants(
            &report.traces[0],
            &report.certificate,
            &rep,
            &anchored,
            1e-12,
        );
        assert!(!diag.hypothesis_holds);
        assert!(diag
            .violations
            .iter()
            .any(|v| matches!(v, TraceViolation::NotFixedPoint { .. })));
    }

    #[test]
    fn default_max_iter_is_pigeonhole_tight() {
        assert_eq!(default_max_iter(3), 4);
        // n + 1 applications always suffice to fix or revisit
        let (anchored, map, rep) = e1();
        let trace = iterate(&anchored, &map, &rep, 0, default_max_iter(2)).unwrap();
        assert_ne!(trace.terminated, Termination::MaxIter);
    }
}
