//! Computable objects behind the abundance bounds: rank profiles of a dual
//! family with respect to a marked element set, domination between elements,
//! heavy elements, crews and relevant sets, and the bound checker itself.

use serde::{Deserialize, Serialize};

use crate::abundance::analyze;
use crate::error::{Error, Result};
use crate::family::{is_intersection_closed, is_union_closed, MemberSet, SetFamily};

/// Rank histogram of a family with respect to a marked set `X`:
/// `r[i]` counts the sets `A` with `|A ∩ X| = i`, for `i = 0..=|X|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    pub marked: MemberSet,
    pub r: Vec<usize>,
    /// Doubled surplus `2·Σ_A |A ∩ X| - |X|·|D|`; exact for odd family sizes.
    pub doubled_surplus: i64,
}

impl RankProfile {
    pub fn width(&self) -> usize {
        self.marked.len()
    }

    pub fn total_sets(&self) -> usize {
        self.r.iter().sum()
    }

    /// `Σ i·r_i`, which equals `Σ_A |A ∩ X|`.
    pub fn weighted_rank_sum(&self) -> usize {
        self.r.iter().enumerate().map(|(i, &c)| i * c).sum()
    }

    pub fn r(&self, i: usize) -> usize {
        self.r.get(i).copied().unwrap_or(0)
    }
}

fn check_marked(family: &SetFamily, marked: MemberSet) -> Result<()> {
    if family.ground().fits(marked.mask()) {
        Ok(())
    } else {
        Err(Error::BadMarkedSet(marked.mask()))
    }
}

pub fn rank_profile(family: &SetFamily, marked: MemberSet) -> Result<RankProfile> {
    check_marked(family, marked)?;
    let width = marked.len();
    let mut r = vec![0usize; width + 1];
    let mut rank_sum = 0i64;
    for set in family.iter() {
        let rank = set.intersection(marked).len();
        r[rank] += 1;
        rank_sum += rank as i64;
    }
    Ok(RankProfile {
        marked,
        r,
        doubled_surplus: 2 * rank_sum - (width * family.len()) as i64,
    })
}

/// Checks `Σ_A (r(X,A) - 3) = r_4 - r_2 - 2r_1 - 3r_0` for a six-element marked
/// set over a family whose sets have at most four elements, and that the stored
/// doubled surplus agrees with it.
pub fn surplus_identity_check(family: &SetFamily, marked: MemberSet) -> Result<bool> {
    check_marked(family, marked)?;
    if marked.len() != 6 {
        return Err(Error::BadMarkedSet(marked.mask()));
    }
    if family.largest_size() > 4 {
        return Err(Error::PreconditionViolated(
            "every set must have at most four elements".into(),
        ));
    }
    let direct: i64 = family
        .iter()
        .map(|a| a.intersection(marked).len() as i64 - 3)
        .sum();
    let p = rank_profile(family, marked)?;
    let r = |i: usize| p.r(i) as i64;
    let from_histogram = r(4) - r(2) - 2 * r(1) - 3 * r(0);
    Ok(direct == from_histogram && p.doubled_surplus == 2 * direct)
}

/// `a` is dominated by `b` when `a ≠ b` and every set containing `a` contains `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationRelation {
    /// `dominators[a]` = all `b` dominating `a`.
    dominators: Vec<MemberSet>,
}

impl DominationRelation {
    pub fn is_dominated_by(&self, a: usize, b: usize) -> bool {
        self.dominators.get(a).is_some_and(|d| d.contains(b))
    }

    pub fn dominators(&self, a: usize) -> MemberSet {
        self.dominators[a]
    }

    pub fn is_dominated(&self, a: usize) -> bool {
        !self.dominators[a].is_empty()
    }

    /// All `(a, b)` with `a` dominated by `b`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.dominators
            .iter()
            .enumerate()
            .flat_map(|(a, d)| d.elements().map(move |b| (a, b)))
            .collect()
    }
}

pub fn dominated_pairs(family: &SetFamily) -> DominationRelation {
    let all = MemberSet::from_mask(family.ground().full_mask());
    let dominators = (0..family.ground().get())
        .map(|a| {
            // An element in no set is dominated by every other element.
            let common = family
                .iter()
                .filter(|s| s.contains(a))
                .fold(all, MemberSet::intersection);
            common.without(a)
        })
        .collect();
    DominationRelation { dominators }
}

/// Every element occurring in some set either has its singleton in the family
/// or is dominated. Holds for every intersection-closed family.
pub fn singleton_or_dominated_check(family: &SetFamily) -> Result<bool> {
    if !is_intersection_closed(family) {
        return Err(Error::NotIntersectionClosed);
    }
    let relation = dominated_pairs(family);
    Ok(family
        .union_of_all()
        .elements()
        .all(|a| family.contains(MemberSet::from_elements([a])) || relation.is_dominated(a)))
}

/// Elements lying in at least half of the sets.
pub fn heavy_elements(family: &SetFamily) -> Result<MemberSet> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let m = family.len();
    let freq = crate::abundance::frequency(family);
    Ok(MemberSet::from_elements(
        (0..freq.len()).filter(|&e| 2 * freq[e] >= m),
    ))
}

/// Sets of rank 4 with respect to the crew `X` that meet every domination pair
/// inside `X` in zero or two elements.
pub fn relevant_sets(family: &SetFamily, crew: MemberSet) -> Result<SetFamily> {
    check_marked(family, crew)?;
    let heavy = heavy_elements(family)?;
    if crew.len() != 6 || !crew.is_subset(heavy) {
        return Err(Error::NotACrew(crew.mask()));
    }
    let relation = dominated_pairs(family);
    let pairs: Vec<MemberSet> = relation
        .pairs()
        .into_iter()
        .filter(|&(a, b)| crew.contains(a) && crew.contains(b))
        .map(|(a, b)| MemberSet::from_elements([a, b]))
        .collect();
    let sets: Vec<MemberSet> = family
        .iter()
        .filter(|s| s.intersection(crew).len() == 4)
        .filter(|s| pairs.iter().all(|&p| s.intersection(p).len() != 1))
        .collect();
    SetFamily::new(family.ground(), sets)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundOutcome {
    NotApplicable,
    Holds,
    Violated,
}

impl BoundOutcome {
    fn of(applicable: bool, holds: bool) -> Self {
        match (applicable, holds) {
            (false, _) => BoundOutcome::NotApplicable,
            (true, true) => BoundOutcome::Holds,
            (true, false) => BoundOutcome::Violated,
        }
    }

    pub fn is_ok(self) -> bool {
        self != BoundOutcome::Violated
    }
}

/// The three abundance bounds evaluated on one family.
///
/// * `near_full`: `k ≥ n - 3 ⇒ f ≥ k`
/// * `gap_four`: `k = n - 4 ⇒ f ≥ k - 1`
/// * `averaging`: `f ≥ min{n, 2k - n + 1}` (always applicable)
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub k: usize,
    pub n: usize,
    pub f: usize,
    pub near_full: BoundOutcome,
    pub gap_four: BoundOutcome,
    pub averaging: BoundOutcome,
    /// `min{n, 2k - n + 1}`, possibly negative.
    pub averaging_bound: i64,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.near_full.is_ok() && self.gap_four.is_ok() && self.averaging.is_ok()
    }
}

pub fn check_abundance_bounds(family: &SetFamily) -> Result<BoundReport> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if family.contains_empty() {
        return Err(Error::ContainsEmptySet);
    }
    if !is_union_closed(family) {
        return Err(Error::NotUnionClosed);
    }
    let report = analyze(family)?;
    Ok(bounds_for(report.f, report.k, report.n_max))
}

/// Evaluates the bounds on a raw `(f, k, n)` triple.
pub fn bounds_for(f: usize, k: usize, n: usize) -> BoundReport {
    let (fi, ki, ni) = (f as i64, k as i64, n as i64);
    let averaging_bound = ni.min(2 * ki - ni + 1);
    BoundReport {
        k,
        n,
        f,
        near_full: BoundOutcome::of(ki >= ni - 3, fi >= ki),
        gap_four: BoundOutcome::of(ki == ni - 4, fi >= ki - 1),
        averaging: BoundOutcome::of(true, fi >= averaging_bound),
        averaging_bound,
    }
}
