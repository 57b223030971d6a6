//! Element frequencies and the abundance summary of a family.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::SetFamily;

/// `count[e]` = number of member sets containing `e`, for every ground element.
pub fn frequency(family: &SetFamily) -> Vec<usize> {
    let n = family.ground().get();
    let mut count = vec![0usize; n];
    for set in family.iter() {
        for e in set.elements() {
            count[e] += 1;
        }
    }
    count
}

/// Strict majority: `2·count > m`.
pub fn is_abundant(count: usize, m: usize) -> bool {
    2 * count > m
}

/// Non-strict threshold used by the original formulations: `2·count ≥ m`.
pub fn is_at_least_half(count: usize, m: usize) -> bool {
    2 * count >= m
}

/// Elements occurring in strictly more than half of the sets.
pub fn abundant_elements(family: &SetFamily) -> Vec<usize> {
    let m = family.len();
    elements_where(family, |c| is_abundant(c, m))
}

/// Elements occurring in at least half of the sets.
pub fn at_least_half_elements(family: &SetFamily) -> Vec<usize> {
    let m = family.len();
    elements_where(family, |c| is_at_least_half(c, m))
}

fn elements_where(family: &SetFamily, keep: impl Fn(usize) -> bool) -> Vec<usize> {
    frequency(family)
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| keep(c))
        .map(|(e, _)| e)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbundanceReport {
    /// Number of sets.
    pub m: usize,
    /// Size of a smallest non-empty set (0 if the family is `{∅}`).
    pub k: usize,
    /// Size of the largest set.
    pub n_max: usize,
    /// Number of abundant elements.
    pub f: usize,
    pub freq: Vec<usize>,
    pub abundant: Vec<usize>,
    pub at_least_half: Vec<usize>,
    /// Every non-abundant element of the largest set occurs in fewer than `m/2` sets.
    pub strict_minority_rest: bool,
    pub contains_empty: bool,
}

impl AbundanceReport {
    /// `(f, k, n)` in the sense of an (f,k,n)-construction.
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.f, self.smallest_size(), self.n_max)
    }

    /// Size of a smallest set, counting the empty set.
    pub fn smallest_size(&self) -> usize {
        if self.contains_empty {
            0
        } else {
            self.k
        }
    }
}

pub fn analyze(family: &SetFamily) -> Result<AbundanceReport> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let m = family.len();
    let freq = frequency(family);
    let abundant: Vec<usize> = (0..freq.len())
        .filter(|&e| is_abundant(freq[e], m))
        .collect();
    let at_least_half: Vec<usize> = (0..freq.len())
        .filter(|&e| is_at_least_half(freq[e], m))
        .collect();
    let top = family.union_of_all();
    let strict_minority_rest = top
        .elements()
        .filter(|&e| !is_abundant(freq[e], m))
        .all(|e| 2 * freq[e] < m);
    Ok(AbundanceReport {
        m,
        k: family.first_nonempty().map_or(0, |s| s.len()),
        n_max: family.largest_size(),
        f: abundant.len(),
        freq,
        abundant,
        at_least_half,
        strict_minority_rest,
        contains_empty: family.contains_empty(),
    })
}
