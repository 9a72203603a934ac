//! Seeded generation of valid instances and the Kannan/Banach separation
//! search.
//!
//! Reproducibility is part of the contract: the same seed yields the same
//! instance bit-for-bit on every platform. The generator draws from a
//! ChaCha8 stream (a counter-based generator with a platform-independent
//! specification), seeded from the 64-bit config seed by the standard
//! SplitMix64 expansion. Floats are sampled by the fixed 53-bit mantissa
//! procedure `(next_u64() >> 11) · 2⁻⁵³ ∈ [0, 1)`, and bounded indices by
//! `⌊u·k⌋`. Draw order is fixed: space entries first (points in index
//! order, coordinates within a point), then the home-set shuffle, the hub
//! draw, per-point overlap draws in point order, and finally per-point
//! image draws in point order.
//!
//! Construction is total: every emitted instance passes metric validation
//! and is cyclic for its map by construction. Overlapping sets are expected;
//! with probability `overlap_fraction` one hub point is placed in all sets,
//! making the intersection non-empty.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::certify::{
    certify_cyclic_kannan, certify_cyclic_kannan_pata, certify_kannan, default_cert_tau,
    kannan_to_pata, EpsilonGrid,
};
use crate::cyclic::{CyclicRepresentation, SelfMap};
use crate::error::GenError;
use crate::metric::{default_metric_tau, shortest_path_repair, AnchoredSpace, FiniteMetricSpace};

/// How the distance matrix is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenMethod {
    /// Points uniform in `[0,1]^embed_dim`; pairwise Euclidean distances
    /// (a metric by construction).
    EuclideanEmbed,
    /// A symmetric matrix with entries in `[0.5, 1.5)`, relaxed to a metric
    /// by all-pairs shortest paths.
    RandomRepair,
}

/// Generator configuration. `n_points ≥ m_sets ≥ 1` and `embed_dim ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n_points: usize,
    pub m_sets: usize,
    pub method: GenMethod,
    pub embed_dim: usize,
    pub seed: u64,
    pub overlap_fraction: f64,
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.n_points < 1 {
            return Err(GenError::InvalidConfig {
                reason: "n_points must be at least 1",
            });
        }
        if self.m_sets < 1 || self.m_sets > self.n_points {
            return Err(GenError::InvalidConfig {
                reason: "need n_points >= m_sets >= 1",
            });
        }
        if self.embed_dim < 1 {
            return Err(GenError::InvalidConfig {
                reason: "embed_dim must be at least 1",
            });
        }
        if !(0.0..=1.0).contains(&self.overlap_fraction) {
            return Err(GenError::InvalidConfig {
                reason: "overlap_fraction must be in [0, 1]",
            });
        }
        Ok(())
    }

    /// Same configuration with another seed.
    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..*self }
    }
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            n_points: 6,
            m_sets: 2,
            method: GenMethod::EuclideanEmbed,
            embed_dim: 2,
            seed: 0,
            overlap_fraction: 0.25,
        }
    }
}

/// A space plus a map and a representation that is cyclic for it.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedInstance {
    pub space: FiniteMetricSpace,
    pub map: SelfMap,
    pub rep: CyclicRepresentation,
    pub seed: u64,
}

const TWO_NEG_53: f64 = 1.0 / (1u64 << 53) as f64;

/// Uniform in `[0, 1)` by the 53-bit mantissa procedure.
#[inline]
fn next_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * TWO_NEG_53
}

/// Uniform in `0..k` as `⌊u·k⌋`.
#[inline]
fn sample_index(rng: &mut ChaCha8Rng, k: usize) -> usize {
    debug_assert!(k >= 1);
    let idx = (next_f64(rng) * k as f64) as usize;
    idx.min(k - 1)
}

fn point_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

const MAX_RESAMPLE: usize = 16;

#[allow(clippy::needless_range_loop)]
fn sample_dist_matrix(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<f64>>, GenError> {
    let n = cfg.n_points;
    for _ in 0..MAX_RESAMPLE {
        let dist = match cfg.method {
            GenMethod::EuclideanEmbed => {
                let mut coords = Vec::with_capacity(n);
                for _ in 0..n {
                    let point: Vec<f64> = (0..cfg.embed_dim).map(|_| next_f64(rng)).collect();
                    coords.push(point);
                }
                let mut dist = alloc::vec![alloc::vec![0.0; n]; n];
                for i in 0..n {
                    for j in (i + 1)..n {
                        let sq: f64 = coords[i]
                            .iter()
                            .zip(&coords[j])
                            .map(|(a, b)| (a - b) * (a - b))
                            .sum();
                        let d = libm::sqrt(sq);
                        dist[i][j] = d;
                        dist[j][i] = d;
                    }
                }
                dist
            }
            GenMethod::RandomRepair => {
                let mut dist = alloc::vec![alloc::vec![0.0; n]; n];
                for i in 0..n {
                    for j in (i + 1)..n {
                        let d = 0.5 + next_f64(rng);
                        dist[i][j] = d;
                        dist[j][i] = d;
                    }
                }
                shortest_path_repair(&dist).expect("sampled matrix is symmetric and positive")
            }
        };

        // Coincident points make fixed-point uniqueness ambiguous; resample.
        let tau = default_metric_tau(&dist);
        let coincident = (0..n).any(|i| ((i + 1)..n).any(|j| dist[i][j] <= tau));
        if !coincident {
            return Ok(dist);
        }
    }
    Err(GenError::DegenerateSampling {
        retries: MAX_RESAMPLE,
    })
}

/// Samples a valid finite metric space. Deterministic for a fixed seed.
pub fn random_finite_space(cfg: &GenConfig) -> Result<FiniteMetricSpace, GenError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let dist = sample_dist_matrix(cfg, &mut rng)?;
    Ok(FiniteMetricSpace::new(point_labels(cfg.n_points), dist)
        .expect("sampled matrix is a metric by construction"))
}

/// Candidate images for a point: the intersection of the successors of all
/// sets containing it. Non-empty by the way overlap is granted.
fn image_candidates(sets: &[BTreeSet<usize>], x: usize) -> Vec<usize> {
    let m = sets.len();
    let memberships: Vec<usize> = (0..m).filter(|&i| sets[i].contains(&x)).collect();
    let mut candidates: Option<BTreeSet<usize>> = None;
    for &i in &memberships {
        let succ = &sets[(i + 1) % m];
        candidates = Some(match candidates {
            None => succ.clone(),
            Some(current) => current.intersection(succ).copied().collect(),
        });
    }
    candidates
        .map(|s| s.into_iter().collect())
        .unwrap_or_default()
}

/// Samples a space, a cover, and a map that is cyclic for it.
///
/// Every point gets a home set (the first `m_sets` points of a shuffle seed
/// the sets so none is empty); with probability `overlap_fraction` one hub
/// point joins all sets, and each point independently joins one extra set
/// with the same probability when that leaves it a valid image choice and
/// leaves the sets pairwise distinct. The image of a point is drawn
/// uniformly from the intersection of the successors of all sets containing
/// it, so the cyclic inclusions hold by construction.
pub fn random_cyclic_instance(cfg: &GenConfig) -> Result<GeneratedInstance, GenError> {
    cfg.validate()?;
    let n = cfg.n_points;
    let m = cfg.m_sets;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let dist = sample_dist_matrix(cfg, &mut rng)?;
    let space = FiniteMetricSpace::new(point_labels(n), dist)
        .expect("sampled matrix is a metric by construction");

    // Home sets: a shuffle seeds each set with one point, the rest land
    // uniformly.
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = sample_index(&mut rng, i + 1);
        order.swap(i, j);
    }
    let mut sets: Vec<BTreeSet<usize>> = alloc::vec![BTreeSet::new(); m];
    for (rank, &point) in order.iter().enumerate() {
        let home = if rank < m {
            rank
        } else {
            sample_index(&mut rng, m)
        };
        sets[home].insert(point);
    }

    // Hub: one point in every set, granting a non-empty intersection.
    let has_hub = next_f64(&mut rng) < cfg.overlap_fraction;
    if has_hub {
        let hub = sample_index(&mut rng, n);
        for set in &mut sets {
            set.insert(hub);
        }
    }

    // Extra overlap, kept only when the point still has a valid image
    // choice afterwards and no two sets collapse into the same set.
    for x in 0..n {
        if next_f64(&mut rng) < cfg.overlap_fraction {
            let target = sample_index(&mut rng, m);
            if sets[target].insert(x) {
                let duplicate = (0..m).any(|other| other != target && sets[other] == sets[target]);
                if duplicate || image_candidates(&sets, x).is_empty() {
                    sets[target].remove(&x);
                }
            }
        }
    }

    let rep = CyclicRepresentation::new(
        sets.iter().map(|s| s.iter().copied().collect()).collect(),
        n,
    )
    .expect("home assignment leaves no set empty");

    let mut image = Vec::with_capacity(n);
    for x in 0..n {
        let candidates = image_candidates(&sets, x);
        assert!(
            !candidates.is_empty(),
            "overlap grants preserve image choices"
        );
        image.push(candidates[sample_index(&mut rng, candidates.len())]);
    }
    let map = SelfMap::new(image).expect("images drawn from the point set");

    Ok(GeneratedInstance {
        space,
        map,
        rep,
        seed: cfg.seed,
    })
}

/// The minimal Lipschitz constant `L = max_{x≠y} d(Tx,Ty)/d(x,y)`.
/// The Banach contraction condition holds iff `L < 1` strictly.
pub fn lipschitz_constant(space: &FiniteMetricSpace, map: &SelfMap) -> f64 {
    let n = space.len();
    let mut max = 0.0_f64;
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let ratio = space.distance(map.apply(x), map.apply(y)) / space.distance(x, y);
            if ratio > max {
                max = ratio;
            }
        }
    }
    max
}

/// How the search classified the generated instances.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    /// Kannan holds, Banach does not — the interesting direction.
    pub kannan_only: usize,
    /// Banach holds, Kannan does not.
    pub banach_only: usize,
    pub both: usize,
    pub neither: usize,
    /// The cyclic Kannan certificate held (over the instance's own cover).
    pub cyclic_kannan: usize,
    /// The cyclic Kannan-Pata certificate held with the reduction
    /// parameters derived from the cyclic Kannan constant.
    pub ck_pata_reduction: usize,
}

/// An instance landing in one of the separating classes.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifiedInstance {
    pub instance: GeneratedInstance,
    /// Least admissible Kannan constant over all ordered pairs.
    pub lambda_min: f64,
    /// Minimal Lipschitz constant.
    pub lipschitz: f64,
}

/// Result of [`search_separating_instances`]. An empty class is a valid
/// outcome; the counts always cover the whole budget.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub budget: usize,
    pub counts: ClassCounts,
    pub kannan_not_banach: Vec<ClassifiedInstance>,
    pub banach_not_kannan: Vec<ClassifiedInstance>,
}

/// Generates up to `budget` instances (seeds `cfg.seed`, `cfg.seed + 1`, ...)
/// and classifies each by which conditions hold. Instances separating the
/// Kannan and Banach conditions are returned in full.
pub fn search_separating_instances(
    cfg: &GenConfig,
    budget: usize,
) -> Result<SearchOutcome, GenError> {
    cfg.validate()?;
    if budget == 0 {
        return Err(GenError::ZeroBudget);
    }

    let grid = EpsilonGrid::default_grid();
    let mut counts = ClassCounts::default();
    let mut kannan_not_banach = Vec::new();
    let mut banach_not_kannan = Vec::new();

    for i in 0..budget {
        let instance = random_cyclic_instance(&cfg.with_seed(cfg.seed.wrapping_add(i as u64)))?;
        let tau = default_cert_tau(&instance.space);

        let kannan = certify_kannan(&instance.space, &instance.map, tau)
            .expect("generated map acts on the generated space");
        let lambda_min = kannan
            .lambda_min
            .expect("Kannan certificates carry lambda_min");
        let lipschitz = lipschitz_constant(&instance.space, &instance.map);
        let banach_holds = lipschitz < 1.0;

        let cyclic = certify_cyclic_kannan(&instance.space, &instance.map, &instance.rep, tau)
            .expect("generated representation is cyclic for the map");
        if cyclic.holds {
            counts.cyclic_kannan += 1;
            // Any constant >= lambda_min in (0, 1) witnesses the reduction.
            let lambda = cyclic.lambda_min.expect("carries lambda_min").max(0.5);
            let params = kannan_to_pata(lambda).expect("lambda in (0, 1)");
            let anchored = AnchoredSpace::new(instance.space.clone(), 0)
                .expect("spaces have at least one point");
            let pata = certify_cyclic_kannan_pata(
                &anchored,
                &instance.map,
                &instance.rep,
                &params,
                &grid,
                tau,
            )
            .expect("validated instance");
            if pata.holds {
                counts.ck_pata_reduction += 1;
            }
        }

        match (kannan.holds, banach_holds) {
            (true, false) => {
                counts.kannan_only += 1;
                kannan_not_banach.push(ClassifiedInstance {
                    instance,
                    lambda_min,
                    lipschitz,
                });
            }
            (false, true) => {
                counts.banach_only += 1;
                banach_not_kannan.push(ClassifiedInstance {
                    instance,
                    lambda_min,
                    lipschitz,
                });
            }
            (true, true) => counts.both += 1,
            (false, false) => counts.neither += 1,
        }
    }

    Ok(SearchOutcome {
        budget,
        counts,
        kannan_not_banach,
        banach_not_kannan,
    })
}
