//! Self-maps and cyclic representations.
//!
//! A cyclic representation of a point set with respect to a self-map `T` is
//! a cover by non-empty sets `A_1, ..., A_m` such that `T` sends each `A_i`
//! into the next set, wrapping around after `A_m`. The contractive
//! conditions in [`crate::certify`] are quantified over exactly the pairs
//! `(x, y)` with `x ∈ A_i`, `y ∈ A_{i+1}`.
//!
//! Sets are stored as sorted, deduplicated index lists. They may overlap —
//! the fixed-point theorem places the fixed point in the intersection of all
//! sets, which must be able to be non-empty. In code and on the wire, set
//! indices are 0-based; [`wrap_index`] is the 1-based helper matching the
//! usual mathematical convention for the subscript arithmetic.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::CyclicError;

/// A total self-map on a finite point set: `image[i]` is the index of `T(p_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SelfMap {
    image: Vec<usize>,
}

impl SelfMap {
    /// Validates that every image entry is a point index.
    pub fn new(image: Vec<usize>) -> Result<Self, CyclicError> {
        let n = image.len();
        for (point, &target) in image.iter().enumerate() {
            if target >= n {
                return Err(CyclicError::ImageOutOfRange {
                    point,
                    image: target,
                    n,
                });
            }
        }
        Ok(Self { image })
    }

    /// Number of points the map acts on.
    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// `T(x)`. Panics on out-of-range indices.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }
}

/// The unique `i ∈ {1, ..., m}` with `i ≡ j (mod m)`, for 1-based subscripts.
///
/// This is the convention `A_j := A_i` used when following an orbit through
/// the sets: residue 0 maps to `m`, not 0.
///
/// Panics if `j` or `m` is zero.
pub fn wrap_index(j: u64, m: u64) -> u64 {
    assert!(j >= 1 && m >= 1, "wrap_index requires j >= 1 and m >= 1");
    (j - 1) % m + 1
}

/// A candidate cyclic representation: `m ≥ 1` non-empty point sets over a
/// point set of known size.
///
/// Construction checks only structure (non-empty sets, indices in range).
/// Whether the sets cover all points and whether a given map actually cycles
/// through them is decided by [`validate_cyclic`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicRepresentation {
    sets: Vec<Vec<usize>>,
    n_points: usize,
}

impl CyclicRepresentation {
    /// Builds a representation; set contents are sorted and deduplicated.
    pub fn new(sets: Vec<Vec<usize>>, n_points: usize) -> Result<Self, CyclicError> {
        if sets.is_empty() {
            return Err(CyclicError::NoSets);
        }
        let mut normalized = Vec::with_capacity(sets.len());
        for (set, mut members) in sets.into_iter().enumerate() {
            members.sort_unstable();
            members.dedup();
            if members.is_empty() {
                return Err(CyclicError::EmptySet { set });
            }
            if let Some(&point) = members.last() {
                if point >= n_points {
                    return Err(CyclicError::PointOutOfRange {
                        set,
                        point,
                        n: n_points,
                    });
                }
            }
            normalized.push(members);
        }
        Ok(Self {
            sets: normalized,
            n_points,
        })
    }

    /// The trivial one-set representation covering all `n_points` points.
    /// Every self-map is cyclic for it, and the cyclic conditions reduce to
    /// their unrestricted forms over all ordered pairs.
    pub fn full(n_points: usize) -> Self {
        let all: Vec<usize> = (0..n_points).collect();
        Self {
            sets: alloc::vec![all],
            n_points,
        }
    }

    /// Number of sets `m`.
    pub fn m(&self) -> usize {
        self.sets.len()
    }

    /// Size of the underlying point set.
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Members of set `i` (0-based), sorted ascending.
    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    /// 0-based index of the set following set `i` in the cycle.
    #[inline]
    pub fn successor(&self, i: usize) -> usize {
        (i + 1) % self.sets.len()
    }

    /// Whether point `x` belongs to set `i`.
    pub fn contains(&self, i: usize, x: usize) -> bool {
        self.sets[i].binary_search(&x).is_ok()
    }

    /// 0-based indices of all sets containing `x`, ascending.
    pub fn memberships(&self, x: usize) -> Vec<usize> {
        (0..self.sets.len())
            .filter(|&i| self.contains(i, x))
            .collect()
    }

    /// `⋂ A_i`, sorted ascending (possibly empty).
    pub fn intersection(&self) -> Vec<usize> {
        let mut common = self.sets[0].clone();
        for set in &self.sets[1..] {
            common.retain(|x| set.binary_search(x).is_ok());
        }
        common
    }

    /// Exactly the pairs the cyclic condition quantifies over: for each set
    /// `i`, every `x ∈ A_i` paired with every `y` in the successor set, in
    /// lexicographic `(i, x, y)` order. A pair occurring for several `i`
    /// occurs once per `i`.
    pub fn consecutive_pairs(&self) -> Vec<ConsecutivePair> {
        let mut pairs = Vec::new();
        for (set, members) in self.sets.iter().enumerate() {
            let next = &self.sets[self.successor(set)];
            for &x in members {
                for &y in next {
                    pairs.push(ConsecutivePair { x, y, set });
                }
            }
        }
        pairs
    }
}

/// One tuple from [`CyclicRepresentation::consecutive_pairs`]: `x` in set
/// `set`, `y` in its successor. `set` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsecutivePair {
    pub x: usize,
    pub y: usize,
    pub set: usize,
}

/// A point whose image escapes the successor set: `point ∈ A_set` but
/// `T(point) = image ∉ A_{set+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrokenInclusion {
    pub set: usize,
    pub point: usize,
    pub image: usize,
}

/// Outcome of [`validate_cyclic`]: all cover gaps and all broken inclusions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicValidation {
    /// Points in no set, ascending.
    pub uncovered: Vec<usize>,
    /// Every `(i, x ∈ A_i)` with `T(x) ∉ A_{i+1}`, in `(i, x)` order.
    pub broken: Vec<BrokenInclusion>,
}

impl CyclicValidation {
    /// True iff the sets cover the point set and the map cycles through them.
    pub fn is_valid(&self) -> bool {
        self.uncovered.is_empty() && self.broken.is_empty()
    }
}

/// Checks that `rep` is a cyclic representation with respect to `map`:
/// the sets cover all points, and `T(A_i) ⊆ A_{i+1}` for every `i` (with the
/// last set mapping into the first).
///
/// Returns every offending point rather than stopping at the first. A map
/// and representation over different point counts is a structural error.
pub fn validate_cyclic(
    rep: &CyclicRepresentation,
    map: &SelfMap,
) -> Result<CyclicValidation, CyclicError> {
    if map.len() != rep.n_points() {
        return Err(CyclicError::SizeMismatch {
            map_len: map.len(),
            n_points: rep.n_points(),
        });
    }

    let mut covered = alloc::vec![false; rep.n_points()];
    for set in rep.sets() {
        for &x in set {
            covered[x] = true;
        }
    }
    let uncovered: Vec<usize> = (0..rep.n_points()).filter(|&x| !covered[x]).collect();

    let mut broken = Vec::new();
    for (set, members) in rep.sets().iter().enumerate() {
        let next = rep.successor(set);
        for &point in members {
            let image = map.apply(point);
            if !rep.contains(next, image) {
                broken.push(BrokenInclusion { set, point, image });
            }
        }
    }

    Ok(CyclicValidation { uncovered, broken })
}
