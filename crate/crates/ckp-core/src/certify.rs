//! Exhaustive certification of contractive inequalities.
//!
//! Five conditions are supported, all checked exhaustively over enumerated
//! point pairs (and an ε-grid for the ε-parameterized families):
//!
//! - `kannan` — `d(Tx,Ty) ≤ λ/2·[d(x,Tx) + d(y,Ty)]` for some `λ ∈ (0,1)`,
//!   over all ordered pairs. The certifier computes the least admissible
//!   constant `lambda_min` and holds iff it is strictly below 1.
//! - `cyclic-kannan` — the same inequality quantified only over pairs from
//!   consecutive sets of a cyclic representation.
//! - `cs` — the Kannan-Pata condition
//!   `d(Tx,Ty) ≤ (1−ε)/2·[d(x,Tx)+d(y,Ty)] + Λ ε^α ψ(ε)[1+‖x‖+‖Tx‖+‖y‖+‖Ty‖]^β`
//!   for every ε in `[0,1]` and all ordered pairs.
//! - `ck-pata` — the same family quantified over consecutive pairs of a
//!   cyclic representation. A holding certificate is the hypothesis of the
//!   fixed-point results checked in [`crate::picard`].
//! - `pata` — Pata's strengthening of the Banach condition,
//!   `d(Tx,Ty) ≤ (1−ε)·d(x,y) + Λ ε^α ψ(ε)[1+‖x‖+‖y‖]^β`, with `β ≤ α`.
//!
//! ε is discretized to a finite grid: certification is exact over the grid
//! and reported as such. The checked inequalities are non-strict, so a small
//! tolerance `tau` absorbs floating-point rounding; a check counts as failed
//! only when its slack `rhs − lhs` drops below `−tau`.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::cyclic::{validate_cyclic, ConsecutivePair, CyclicRepresentation, SelfMap};
use crate::error::CertifyError;
use crate::metric::{AnchoredSpace, FiniteMetricSpace};

/// Comparison function ψ weighting the ε-correction term: increasing on
/// [0, 1], vanishing at 0, finite. Only scaled powers `ψ(ε) = c·ε^p` are
/// supported; both parameters must be positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PsiSpec {
    Power { p: f64, c: f64 },
}

impl PsiSpec {
    /// `ψ(ε) = c·ε^p` with `p > 0`, `c > 0`.
    pub fn power(p: f64, c: f64) -> Result<Self, CertifyError> {
        let spec = Self::Power { p, c };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CertifyError> {
        let Self::Power { p, c } = *self;
        if p > 0.0 && c > 0.0 && p.is_finite() && c.is_finite() {
            Ok(())
        } else {
            Err(CertifyError::InvalidPsi { p, c })
        }
    }

    /// Evaluates ψ at `eps`.
    #[inline]
    pub fn eval(&self, eps: f64) -> f64 {
        let Self::Power { p, c } = *self;
        c * libm::pow(eps, p)
    }
}

/// The fixed constants of the ε-parameterized conditions: `Λ ≥ 0`, `α ≥ 1`,
/// `β ≥ 0`, plus the comparison function ψ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PataParams {
    #[serde(rename = "Lambda")]
    pub lambda: f64,
    pub alpha: f64,
    pub beta: f64,
    pub psi: PsiSpec,
}

impl PataParams {
    pub fn new(lambda: f64, alpha: f64, beta: f64, psi: PsiSpec) -> Result<Self, CertifyError> {
        let params = Self {
            lambda,
            alpha,
            beta,
            psi,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), CertifyError> {
        self.psi.validate()?;
        let ok = self.lambda >= 0.0
            && self.alpha >= 1.0
            && self.beta >= 0.0
            && self.lambda.is_finite()
            && self.alpha.is_finite()
            && self.beta.is_finite();
        if ok {
            Ok(())
        } else {
            Err(CertifyError::InvalidParams {
                lambda: self.lambda,
                alpha: self.alpha,
                beta: self.beta,
            })
        }
    }

    /// Same parameters with Λ replaced.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self, CertifyError> {
        Self::new(lambda, self.alpha, self.beta, self.psi)
    }
}

/// Parameters under which any map satisfying the (cyclic) Kannan condition
/// with constant `lambda` satisfies the (cyclic) Kannan-Pata inequality for
/// every ε in [0, 1]: `Λ = 1/(1−λ)`, `α = 1`, `β = 1`, `ψ(ε) = ε`.
///
/// Requires `λ ∈ (0, 1)`.
pub fn kannan_to_pata(lambda: f64) -> Result<PataParams, CertifyError> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(CertifyError::LambdaOutOfRange { lambda });
    }
    PataParams::new(1.0 / (1.0 - lambda), 1.0, 1.0, PsiSpec::power(1.0, 1.0)?)
}

/// A finite discretization of the quantifier "for every ε in [0, 1]":
/// strictly increasing values containing both endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonGrid {
    values: Vec<f64>,
}

impl EpsilonGrid {
    /// Default grid size: 101 uniform points on [0, 1].
    pub const DEFAULT_POINTS: usize = 101;

    /// `n ≥ 2` uniformly spaced values `i/(n−1)` for `i = 0..n`.
    pub fn uniform(n: usize) -> Result<Self, CertifyError> {
        if n < 2 {
            return Err(CertifyError::InvalidGrid);
        }
        let last = (n - 1) as f64;
        let values = (0..n).map(|i| i as f64 / last).collect();
        Ok(Self { values })
    }

    /// The 101-point uniform grid.
    pub fn default_grid() -> Self {
        Self::uniform(Self::DEFAULT_POINTS).expect("101 >= 2")
    }

    /// A caller-chosen grid; must be strictly increasing from exactly 0
    /// to exactly 1 with at least two values.
    pub fn from_values(values: Vec<f64>) -> Result<Self, CertifyError> {
        let ok = values.len() >= 2
            && values.first() == Some(&0.0)
            && values.last() == Some(&1.0)
            && values.iter().all(|v| v.is_finite())
            && values.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(Self { values })
        } else {
            Err(CertifyError::InvalidGrid)
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least two values by construction
    }
}

/// Which inequality a [`Certificate`] speaks about. The serialized tags
/// match the CLI's `--condition` values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "kannan")]
    Kannan,
    #[serde(rename = "cyclic-kannan")]
    CyclicKannan,
    /// The non-cyclic Kannan-Pata condition (the m = 1 specialization).
    #[serde(rename = "cs")]
    KannanPata,
    #[serde(rename = "ck-pata")]
    CyclicKannanPata,
    #[serde(rename = "pata")]
    PataBanach,
}

/// The worst single check: the pair (and ε, for grid conditions) attaining
/// the minimum slack, with both sides of the inequality. Point and set
/// indices are 0-based; ties go to the earliest pair in enumeration order,
/// then the earliest grid value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: usize,
    pub y: usize,
    pub set: usize,
    pub eps: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of exhaustively checking one condition.
///
/// `min_slack` is the minimum of `rhs − lhs` over every check performed.
/// For the grid conditions the certificate holds iff `min_slack ≥ −tau`.
/// For the Kannan-type conditions `holds` is decided by `lambda_min`
/// (strictly below 1, with degenerate zero-sum pairs required to have equal
/// images); there `min_slack` reports the slack at the λ = 1 boundary.
/// A witness is present exactly when the certificate fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub condition: Condition,
    pub holds: bool,
    pub pairs_checked: usize,
    pub eps_checked: usize,
    pub min_slack: f64,
    pub witness: Option<Witness>,
    pub lambda_min: Option<f64>,
}

/// Scale-relative default certification tolerance:
/// `1e-12 · (1 + max distance)`.
pub fn default_cert_tau(space: &FiniteMetricSpace) -> f64 {
    1e-12 * (1.0 + space.max_distance())
}

#[inline]
fn eps_weight(params: &PataParams, eps: f64) -> f64 {
    libm::pow(eps, params.alpha) * params.psi.eval(eps)
}

#[inline]
fn bracket_pow(params: &PataParams, bracket: f64) -> f64 {
    libm::pow(bracket, params.beta)
}

/// The right-hand side of the cyclic Kannan-Pata inequality at one check:
/// `(1−ε)/2·[d(x,Tx)+d(y,Ty)] + Λ ε^α ψ(ε)·[1+‖x‖+‖Tx‖+‖y‖+‖Ty‖]^β`.
///
/// `eps` must lie in [0, 1]; point indices must be valid.
pub fn rhs_cyclic(
    x: usize,
    y: usize,
    eps: f64,
    params: &PataParams,
    anchored: &AnchoredSpace,
    map: &SelfMap,
) -> Result<f64, CertifyError> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(CertifyError::EpsOutOfRange { eps });
    }
    let space = anchored.space();
    let tx = map.apply(x);
    let ty = map.apply(y);
    let base = space.distance(x, tx) + space.distance(y, ty);
    let bracket = 1.0 + anchored.norm(x) + anchored.norm(tx) + anchored.norm(y) + anchored.norm(ty);
    Ok((1.0 - eps) / 2.0 * base
        + params.lambda * eps_weight(params, eps) * bracket_pow(params, bracket))
}

fn check_map_size(map: &SelfMap, space: &FiniteMetricSpace) -> Result<(), CertifyError> {
    if map.len() != space.len() {
        return Err(CertifyError::MapSizeMismatch {
            map_len: map.len(),
            n_points: space.len(),
        });
    }
    Ok(())
}

fn check_rep(
    rep: &CyclicRepresentation,
    map: &SelfMap,
    space: &FiniteMetricSpace,
) -> Result<(), CertifyError> {
    check_map_size(map, space)?;
    if rep.n_points() != space.len() {
        return Err(CertifyError::RepSizeMismatch {
            rep_points: rep.n_points(),
            n_points: space.len(),
        });
    }
    let validation = validate_cyclic(rep, map)?;
    if !validation.is_valid() {
        return Err(CertifyError::InvalidRep(validation));
    }
    Ok(())
}

/// Whether the ε-correction term uses the Kannan-type bracket (both points
/// and both images) or Pata's original one (the two points only).
#[derive(Clone, Copy, PartialEq)]
enum GridForm {
    KannanPata,
    Banach,
}

#[allow(clippy::too_many_arguments)]
fn certify_grid(
    anchored: &AnchoredSpace,
    map: &SelfMap,
    pairs: &[ConsecutivePair],
    params: &PataParams,
    grid: &EpsilonGrid,
    tau: f64,
    condition: Condition,
    form: GridForm,
) -> Certificate {
    let space = anchored.space();
    let weights: Vec<f64> = grid
        .values()
        .iter()
        .map(|&eps| eps_weight(params, eps))
        .collect();

    let mut min_slack = f64::INFINITY;
    let mut worst = None;

    for pair in pairs {
        let tx = map.apply(pair.x);
        let ty = map.apply(pair.y);
        let lhs = space.distance(tx, ty);
        let (base, bracket) = match form {
            GridForm::KannanPata => (
                space.distance(pair.x, tx) + space.distance(pair.y, ty),
                1.0 + anchored.norm(pair.x)
                    + anchored.norm(tx)
                    + anchored.norm(pair.y)
                    + anchored.norm(ty),
            ),
            GridForm::Banach => (
                space.distance(pair.x, pair.y),
                1.0 + anchored.norm(pair.x) + anchored.norm(pair.y),
            ),
        };
        let bpow = bracket_pow(params, bracket);
        let half = match form {
            GridForm::KannanPata => 0.5,
            GridForm::Banach => 1.0,
        };
        for (&eps, &weight) in grid.values().iter().zip(&weights) {
            let rhs = (1.0 - eps) * half * base + params.lambda * weight * bpow;
            let slack = rhs - lhs;
            if slack < min_slack {
                min_slack = slack;
                worst = Some(Witness {
                    x: pair.x,
                    y: pair.y,
                    set: pair.set,
                    eps: Some(eps),
                    lhs,
                    rhs,
                });
            }
        }
    }

    let holds = min_slack >= -tau;
    Certificate {
        condition,
        holds,
        pairs_checked: pairs.len(),
        eps_checked: grid.len(),
        min_slack,
        witness: if holds { None } else { worst },
        lambda_min: None,
    }
}

fn certify_kannan_pairs(
    space: &FiniteMetricSpace,
    map: &SelfMap,
    pairs: &[ConsecutivePair],
    tau: f64,
    condition: Condition,
) -> Certificate {
    let mut lambda_min = 0.0_f64;
    let mut zero_sum_ok = true;
    let mut min_slack = f64::INFINITY;
    let mut worst = None;

    for pair in pairs {
        let tx = map.apply(pair.x);
        let ty = map.apply(pair.y);
        let lhs = space.distance(tx, ty);
        let sum = space.distance(pair.x, tx) + space.distance(pair.y, ty);
        if sum == 0.0 {
            // Both points fixed: the inequality degenerates to d(Tx,Ty) = 0,
            // i.e. the images must coincide.
            if tx != ty {
                zero_sum_ok = false;
            }
        } else {
            let ratio = 2.0 * lhs / sum;
            if ratio > lambda_min {
                lambda_min = ratio;
            }
        }
        // Slack at the λ = 1 boundary of the admissible interval.
        let slack = sum / 2.0 - lhs;
        if slack < min_slack {
            min_slack = slack;
            worst = Some(Witness {
                x: pair.x,
                y: pair.y,
                set: pair.set,
                eps: None,
                lhs,
                rhs: sum / 2.0,
            });
        }
    }

    let _ = tau; // λ strictness is exact; tau applies to grid conditions only
    let holds = zero_sum_ok && lambda_min < 1.0;
    Certificate {
        condition,
        holds,
        pairs_checked: pairs.len(),
        eps_checked: 0,
        min_slack,
        witness: if holds { None } else { worst },
        lambda_min: Some(lambda_min),
    }
}

/// Certifies the Kannan condition over all ordered pairs and computes the
/// least admissible constant. Holds iff `lambda_min < 1` strictly and every
/// degenerate pair (both points fixed) has coinciding images.
pub fn certify_kannan(
    space: &FiniteMetricSpace,
    map: &SelfMap,
    tau: f64,
) -> Result<Certificate, CertifyError> {
    check_map_size(map, space)?;
    let pairs = CyclicRepresentation::full(space.len()).consecutive_pairs();
    Ok(certify_kannan_pairs(
        space,
        map,
        &pairs,
        tau,
        Condition::Kannan,
    ))
}

/// Certifies the Kannan condition quantified only over consecutive pairs of
/// a cyclic representation. The representation must validate for the map.
pub fn certify_cyclic_kannan(
    space: &FiniteMetricSpace,
    map: &SelfMap,
    rep: &CyclicRepresentation,
    tau: f64,
) -> Result<Certificate, CertifyError> {
    check_rep(rep, map, space)?;
    let pairs = rep.consecutive_pairs();
    Ok(certify_kannan_pairs(
        space,
        map,
        &pairs,
        tau,
        Condition::CyclicKannan,
    ))
}

/// Certifies the cyclic Kannan-Pata inequality over every consecutive pair
/// and every grid value. The representation must validate for the map.
pub fn certify_cyclic_kannan_pata(
    anchored: &AnchoredSpace,
    map: &SelfMap,
    rep: &CyclicRepresentation,
    params: &PataParams,
    grid: &EpsilonGrid,
    tau: f64,
) -> Result<Certificate, CertifyError> {
    params.validate()?;
    check_rep(rep, map, anchored.space())?;
    let pairs = rep.consecutive_pairs();
    Ok(certify_grid(
        anchored,
        map,
        &pairs,
        params,
        grid,
        tau,
        Condition::CyclicKannanPata,
        GridForm::KannanPata,
    ))
}

/// Certifies the non-cyclic Kannan-Pata condition: the same check as
/// [`certify_cyclic_kannan_pata`] with the trivial one-set representation,
/// i.e. over all ordered pairs.
pub fn certify_kannan_pata(
    anchored: &AnchoredSpace,
    map: &SelfMap,
    params: &PataParams,
    grid: &EpsilonGrid,
    tau: f64,
) -> Result<Certificate, CertifyError> {
    let rep = CyclicRepresentation::full(anchored.space().len());
    let mut certificate = certify_cyclic_kannan_pata(anchored, map, &rep, params, grid, tau)?;
    certificate.condition = Condition::KannanPata;
    Ok(certificate)
}

/// Certifies Pata's condition `d(Tx,Ty) ≤ (1−ε)·d(x,y) + Λ ε^α ψ(ε)[1+‖x‖+‖y‖]^β`
/// over all ordered pairs and every grid value. This condition additionally
/// requires `β ≤ α`.
pub fn certify_pata_banach(
    anchored: &AnchoredSpace,
    map: &SelfMap,
    params: &PataParams,
    grid: &EpsilonGrid,
    tau: f64,
) -> Result<Certificate, CertifyError> {
    params.validate()?;
    if params.beta > params.alpha {
        return Err(CertifyError::BetaExceedsAlpha {
            beta: params.beta,
            alpha: params.alpha,
        });
    }
    check_map_size(map, anchored.space())?;
    let pairs = CyclicRepresentation::full(anchored.space().len()).consecutive_pairs();
    Ok(certify_grid(
        anchored,
        map,
        &pairs,
        params,
        grid,
        tau,
        Condition::PataBanach,
        GridForm::Banach,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;
    use alloc::vec;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| alloc::format!("p{i}")).collect()
    }

    fn e1() -> (FiniteMetricSpace, SelfMap, CyclicRepresentation) {
        let space =
            FiniteMetricSpace::new(labels(2), vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let map = SelfMap::new(vec![1, 0]).unwrap();
        let rep = CyclicRepresentation::new(vec![vec![0], vec![1]], 2).unwrap();
        (space, map, rep)
    }

    fn e2() -> (FiniteMetricSpace, SelfMap, CyclicRepresentation) {
        let dist = vec![
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ];
        let space = FiniteMetricSpace::new(labels(3), dist).unwrap();
        let map = SelfMap::new(vec![2, 2, 2]).unwrap();
        let rep = CyclicRepresentation::new(vec![vec![0, 2], vec![1, 2]], 3).unwrap();
        (space, map, rep)
    }

    fn e3() -> (FiniteMetricSpace, SelfMap, CyclicRepresentation) {
        let dist = vec![
            vec![0.0, 1.0, 3.0],
            vec![1.0, 0.0, 2.0],
            vec![3.0, 2.0, 0.0],
        ];
        let space = FiniteMetricSpace::new(labels(3), dist).unwrap();
        let map = SelfMap::new(vec![1, 1, 0]).unwrap();
        let rep = CyclicRepresentation::new(vec![vec![0, 1], vec![1, 2]], 3).unwrap();
        (space, map, rep)
    }

    fn tau(space: &FiniteMetricSpace) -> f64 {
        default_cert_tau(space)
    }

    #[test]
    fn rhs_cyclic_endpoints() {
        let (space, map, _) = e3();
        let anchored = AnchoredSpace::new(space, 0).unwrap();
        let params = kannan_to_pata(0.5).unwrap();

        // ε = 0: the correction vanishes, leaving half the step sum.
        let rhs0 = rhs_cyclic(0, 2, 0.0, &params, &anchored, &map).unwrap();
        assert_eq!(rhs0, 2.0); // ½·(d(p0,p1) + d(p2,p0)) = ½·(1+3)

        // ε = 1: the step term vanishes.
        let rhs1 = rhs_cyclic(0, 2, 1.0, &params, &anchored, &map).unwrap();
        let bracket = 1.0 + 0.0 + 1.0 + 3.0 + 0.0; // 1 + ‖p0‖ + ‖Tp0‖ + ‖p2‖ + ‖Tp2‖
        assert_eq!(rhs1, params.lambda * 1.0 * bracket);
    }

    #[test]
    fn rhs_cyclic_rejects_eps_outside_unit_interval() {
        let (space, map, _) = e3();
        let anchored = AnchoredSpace::new(space, 0).unwrap();
        let params = kannan_to_pata(0.5).unwrap();
        assert!(matches!(
            rhs_cyclic(0, 1, 1.5, &params, &anchored, &map),
            Err(CertifyError::EpsOutOfRange { .. })
        ));
        assert!(matches!(
            rhs_cyclic(0, 1, -0.1, &params, &anchored, &map),
            Err(CertifyError::EpsOutOfRange { .. })
        ));
    }

    #[test]
    fn kannan_certificates_on_references() {
        let (e3_space, e3_map, _) = e3();
        let cert = certify_kannan(&e3_space, &e3_map, tau(&e3_space)).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.lambda_min, Some(2.0 / 3.0));
        assert_eq!(cert.pairs_checked, 9);
        assert!(cert.witness.is_none());

        let (e1_space, e1_map, _) = e1();
        let cert = certify_kannan(&e1_space, &e1_map, tau(&e1_space)).unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.lambda_min, Some(1.0));
        let witness = cert.witness.unwrap();
        assert_eq!((witness.x, witness.y), (0, 1));
        assert_eq!((witness.lhs, witness.rhs), (1.0, 1.0));

        let (e2_space, e2_map, _) = e2();
        let cert = certify_kannan(&e2_space, &e2_map, tau(&e2_space)).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.lambda_min, Some(0.0));
    }

    #[test]
    fn cyclic_kannan_on_references() {
        let (space, map, rep) = e3();
        let cert = certify_cyclic_kannan(&space, &map, &rep, tau(&space)).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.lambda_min, Some(2.0 / 3.0));
        assert_eq!(cert.pairs_checked, 8);

        let (space, map, rep) = e1();
        let cert = certify_cyclic_kannan(&space, &map, &rep, tau(&space)).unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.lambda_min, Some(1.0));
    }

    #[test]
    fn cyclic_kannan_with_full_rep_equals_kannan() {
        let (space, map, _) = e3();
        let full = CyclicRepresentation::full(space.len());
        let cyclic = certify_cyclic_kannan(&space, &map, &full, tau(&space)).unwrap();
        let plain = certify_kannan(&space, &map, tau(&space)).unwrap();
        assert_eq!(cyclic.lambda_min, plain.lambda_min);
        assert_eq!(cyclic.holds, plain.holds);
        assert_eq!(cyclic.pairs_checked, plain.pairs_checked);
        assert_eq!(cyclic.min_slack, plain.min_slack);
    }

    #[test]
    fn constant_map_certifies_with_zero_lambda_term() {
        let (space, map, rep) = e2();
        let anchored = AnchoredSpace::new(space, 0).unwrap();
        let params = PataParams::new(0.0, 1.0, 0.0, PsiSpec::power(1.0, 1.0).unwrap()).unwrap();
        let grid = EpsilonGrid::default_grid();
        let cert = certify_cyclic_kannan_pata(
            &anchored,
            &map,
            &rep,
            &params,
            &grid,
            tau(anchored.space()),
        )
        .unwrap();
        assert!(cert.holds);
        assert!(cert.min_slack >= 0.0);
        assert!(cert.witness.is_none());
        assert_eq!(cert.eps_checked, 101);
    }

    #[test]
    fn swap_map_fails_at_eps_one_with_lexicographic_witness() {
        let (space, map, rep) = e1();
        let anchored = AnchoredSpace::new(space, 0).unwrap();
        let params = PataParams::new(0.0, 1.0, 1.0, PsiSpec::power(1.0, 1.0).unwrap()).unwrap();
        let grid = EpsilonGrid::default_grid();
        let cert = certify_cyclic_kannan_pata(
            &anchored,
            &map,
            &rep,
            &params,
            &grid,
            tau(anchored.space()),
        )
        .unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.min_slack, -1.0);
        let witness = cert.witness.unwrap();
        assert_eq!((witness.x, witness.y, witness.set), (0, 1, 0));
        assert_eq!(witness.eps, Some(1.0));
        assert_eq!((witness.lhs, witness.rhs), (1.0, 0.0));
    }

    #[test]
    fn e3_reduction_parameters_certify_on_default_grid() {
        let (space, map, rep) = e3();
        let anchored = AnchoredSpace::new(space, 0).unwrap();
        let params = kannan_to_pata(2.0 / 3.0).unwrap();
        let grid = EpsilonGrid::default_grid();
        let cert = certify_cyclic_kannan_pata(
            &anchored,
            &map,
            &rep,
            &params,
            &grid,
            tau(anchored.space()),
        )
        .unwrap();
        assert!(cert.holds, "min_slack = {}", cert.min_slack);
    }

    #[test]
    fn kannan_pata_equals_cyclic_form_on_full_rep() {
        let (space, map, _) = e3();
        let anchored = AnchoredSpace::new(space, 0).unwrap();
        let params = kannan_to_pata(2.0 / 3.0).unwrap();
        let grid = EpsilonGrid::default_grid();
        let tau = tau(anchored.space());

        let direct = certify_kannan_pata(&anchored, &map, &params, &grid, tau).unwrap();
        let full = CyclicRepresentation::full(anchored.space().len());
        let via_rep =
            certify_cyclic_kannan_pata(&anchored, &map, &full, &params, &grid, tau).unwrap();

        assert_eq!(direct.condition, Condition::KannanPata);
        assert_eq!(via_rep.condition, Condition::CyclicKannanPata);
        assert_eq!(direct.holds, via_rep.holds);
        assert_eq!(direct.pairs_checked, via_rep.pairs_checked);
        assert_eq!(direct.eps_checked, via_rep.eps_checked);
        assert_eq!(direct.min_slack, via_rep.min_slack);
        assert_eq!(direct.witness, via_rep.witness);
        assert_eq!(direct.lambda_min, via_rep.lambda_min);
    }

    #[test]
    fn pata_banach_examples() {
        // identity on two points fails at ε = 1 with Λ = 0
        let space =
            FiniteMetricSpace::new(labels(2), vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let identity = SelfMap::new(vec![0, 1]).unwrap();
        let anchored = AnchoredSpace::new(space, 0).unwrap();
        let params = PataParams::new(0.0, 1.0, 1.0, PsiSpec::power(1.0, 1.0).unwrap()).unwrap();
        let grid = EpsilonGrid::default_grid();
        let t = tau(anchored.space());
        let cert = certify_pata_banach(&anchored, &identity, &params, &grid, t).unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.witness.unwrap().eps, Some(1.0));

        // constant map on two points holds with Λ = 0
        let constant = SelfMap::new(vec![0, 0]).unwrap();
        let cert = certify_pata_banach(&anchored, &constant, &params, &grid, t).unwrap();
        assert!(cert.holds);

        // single-point space: identity holds
        let single = FiniteMetricSpace::new(labels(1), vec![vec![0.0]]).unwrap();
        let single_anchor = AnchoredSpace::new(single, 0).unwrap();
        let id1 = SelfMap::new(vec![0]).unwrap();
        let cert = certify_pata_banach(&single_anchor, &id1, &params, &grid, 1e-12).unwrap();
        assert!(cert.holds);

        // swap fails at ε = 1
        let (e1_space, e1_map, _) = e1();
        let anchored = AnchoredSpace::new(e1_space, 0).unwrap();
        let cert = certify_pata_banach(&anchored, &e1_map, &params, &grid, t).unwrap();
        assert!(!cert.holds);
    }

    #[test]
    fn pata_banach_enforces_beta_within_alpha() {
        let (space, map, _) = e1();
        let anchored = AnchoredSpace::new(space, 0).unwrap();
        let params = PataParams::new(1.0, 1.0, 2.0, PsiSpec::power(1.0, 1.0).unwrap()).unwrap();
        let grid = EpsilonGrid::default_grid();
        assert_eq!(
            certify_pata_banach(&anchored, &map, &params, &grid, 1e-12).unwrap_err(),
            CertifyError::BetaExceedsAlpha {
                beta: 2.0,
                alpha: 1.0
            }
        );
    }

    #[test]
    fn kannan_to_pata_parameter_values() {
        let params = kannan_to_pata(2.0 / 3.0).unwrap();
        assert!((params.lambda - 3.0).abs() < 1e-12);
        assert_eq!((params.alpha, params.beta), (1.0, 1.0));
        assert_eq!(params.psi, PsiSpec::Power { p: 1.0, c: 1.0 });

        let params = kannan_to_pata(0.5).unwrap();
        assert_eq!(params.lambda, 2.0);

        assert!(kannan_to_pata(0.0).is_err());
        assert!(kannan_to_pata(1.0).is_err());
    }

    #[test]
    fn invalid_rep_is_structural_for_certifiers() {
        let (space, map, _) = e3();
        let anchored = AnchoredSpace::new(space.clone(), 0).unwrap();
        // p2 uncovered
        let rep = CyclicRepresentation::new(vec![vec![0], vec![1]], 3).unwrap();
        let params = kannan_to_pata(0.5).unwrap();
        let grid = EpsilonGrid::default_grid();
        assert!(matches!(
            certify_cyclic_kannan_pata(&anchored, &map, &rep, &params, &grid, 1e-12),
            Err(CertifyError::InvalidRep(_))
        ));
        assert!(matches!(
            certify_cyclic_kannan(&space, &map, &rep, 1e-12),
            Err(CertifyError::InvalidRep(_))
        ));
    }

    #[test]
    fn grid_construction_rules() {
        assert!(EpsilonGrid::uniform(1).is_err());
        let grid = EpsilonGrid::uniform(2).unwrap();
        assert_eq!(grid.values(), &[0.0, 1.0]);
        assert!(EpsilonGrid::from_values(vec![0.0, 0.5, 1.0]).is_ok());
        assert!(EpsilonGrid::from_values(vec![0.1, 1.0]).is_err());
        assert!(EpsilonGrid::from_values(vec![0.0, 0.9]).is_err());
        assert!(EpsilonGrid::from_values(vec![0.0, 0.5, 0.5, 1.0]).is_err());
    }

    #[test]
    fn psi_and_params_validation() {
        assert!(PsiSpec::power(0.0, 1.0).is_err());
        assert!(PsiSpec::power(1.0, 0.0).is_err());
        assert!(PsiSpec::power(1.0, 1.0).is_ok());
        assert!(PataParams::new(-1.0, 1.0, 0.0, PsiSpec::power(1.0, 1.0).unwrap()).is_err());
        assert!(PataParams::new(0.0, 0.5, 0.0, PsiSpec::power(1.0, 1.0).unwrap()).is_err());
        assert!(PataParams::new(0.0, 1.0, -0.5, PsiSpec::power(1.0, 1.0).unwrap()).is_err());
    }
}
