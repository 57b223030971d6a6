//! Exhaustive enumeration of union-closed families over small ground sets.
//!
//! Over `{0, …, n-1}` there are `2^n - 1` non-empty sets; a candidate family is a
//! bitmask `s` over those sets (bit `i - 1` stands for the set with mask `i`).
//! Every candidate in `1 .. 2^(2^n - 1)` is tested, which is 32768 candidates at
//! `n = 4`. Larger grounds are only reachable by sampling closures of random
//! generators, see [`sample_ucf`].

use std::collections::BTreeMap;
use std::ops::Range;

use rand::Rng;
use rayon::prelude::*;

use crate::abundance::analyze;
use crate::dual_analysis::check_abundance_bounds;
use crate::error::{Error, Result};
use crate::family::{canonicalize, union_closure, GroundSize, MemberSet, SetFamily};

/// Largest ground size enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: u8 = 4;

/// Maximum number of witness families kept in a [`SearchReport`].
pub const WITNESS_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeBound {
    /// Largest set has exactly this size.
    Exactly(u8),
    /// Largest set has at most this size.
    AtMost(u8),
}

impl SizeBound {
    pub fn n(self) -> u8 {
        match self {
            SizeBound::Exactly(n) | SizeBound::AtMost(n) => n,
        }
    }

    fn admits(self, largest: usize) -> bool {
        match self {
            SizeBound::Exactly(n) => largest == n as usize,
            SizeBound::AtMost(n) => largest <= n as usize,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumFilter {
    pub largest: SizeBound,
    /// Minimum size of the non-empty sets.
    pub k_min: usize,
    /// Require some non-empty set of size exactly `k_min`.
    pub exact_k: bool,
    /// Also emit each family together with the empty set (and `{∅}` itself).
    pub allow_empty_set: bool,
}

impl EnumFilter {
    pub fn at_most(n: u8) -> Self {
        EnumFilter {
            largest: SizeBound::AtMost(n),
            k_min: 0,
            exact_k: false,
            allow_empty_set: false,
        }
    }

    pub fn exactly(n: u8) -> Self {
        EnumFilter {
            largest: SizeBound::Exactly(n),
            ..Self::at_most(n)
        }
    }

    pub fn with_k_min(mut self, k: usize) -> Self {
        self.k_min = k;
        self
    }

    pub fn with_exact_k(mut self) -> Self {
        self.exact_k = true;
        self
    }

    pub fn with_empty_set(mut self) -> Self {
        self.allow_empty_set = true;
        self
    }

    pub fn ground(&self) -> u8 {
        self.largest.n().max(1)
    }

    fn check(&self) -> Result<()> {
        let n = self.largest.n();
        if n > EXHAUSTIVE_LIMIT {
            Err(Error::InfeasibleBound(n))
        } else {
            Ok(())
        }
    }

    /// Filter on the non-empty part of a candidate.
    fn admits(&self, smallest: usize, largest: usize) -> bool {
        self.largest.admits(largest)
            && smallest >= self.k_min
            && (!self.exact_k || smallest == self.k_min)
    }
}

/// Number of candidate subfamilies of non-empty sets over `n` elements.
pub fn candidate_count(n: u8) -> u64 {
    1u64 << ((1u32 << n) - 1)
}

/// Union-closure test on a candidate bitmask.
fn candidate_is_union_closed(s: u64) -> bool {
    let mut rest = s;
    while rest != 0 {
        let i = rest.trailing_zeros() as u64 + 1;
        rest &= rest - 1;
        let mut others = rest;
        while others != 0 {
            let j = others.trailing_zeros() as u64 + 1;
            others &= others - 1;
            if s >> ((i | j) - 1) & 1 == 0 {
                return false;
            }
        }
    }
    true
}

fn candidate_sizes(s: u64) -> (usize, usize) {
    let mut rest = s;
    let (mut lo, mut hi) = (usize::MAX, 0);
    while rest != 0 {
        let len = (rest.trailing_zeros() + 1).count_ones() as usize;
        rest &= rest - 1;
        lo = lo.min(len);
        hi = hi.max(len);
    }
    (lo, hi)
}

fn candidate_family(s: u64, ground: GroundSize, with_empty: bool) -> SetFamily {
    let mut sets: Vec<MemberSet> = Vec::with_capacity(s.count_ones() as usize + 1);
    if with_empty {
        sets.push(MemberSet::EMPTY);
    }
    let mut rest = s;
    while rest != 0 {
        sets.push(MemberSet::from_mask(rest.trailing_zeros() as u64 + 1));
        rest &= rest - 1;
    }
    canonicalize(sets, ground).expect("candidate sets are distinct and in range")
}

/// Families produced by the candidates in `range`, in candidate order.
/// Candidate 0 stands for `{∅}` when the empty set is allowed.
pub fn enumerate_range(filter: &EnumFilter, range: Range<u64>) -> Result<Vec<SetFamily>> {
    filter.check()?;
    let ground = GroundSize::new(filter.ground() as u32)?;
    let mut out = Vec::new();
    for s in range {
        if s == 0 {
            if filter.allow_empty_set && !filter.exact_k && filter.largest.admits(0) {
                out.push(candidate_family(0, ground, true));
            }
            continue;
        }
        let (lo, hi) = candidate_sizes(s);
        if !filter.admits(lo, hi) || !candidate_is_union_closed(s) {
            continue;
        }
        out.push(candidate_family(s, ground, false));
        if filter.allow_empty_set {
            out.push(candidate_family(s, ground, true));
        }
    }
    Ok(out)
}

/// Every union-closed family matching the filter, each exactly once.
pub fn enumerate_ucf(filter: &EnumFilter) -> Result<impl Iterator<Item = SetFamily>> {
    filter.check()?;
    let total = candidate_count(filter.ground());
    let filter = *filter;
    Ok((0..total).flat_map(move |s| enumerate_range(&filter, s..s + 1).expect("bounds checked")))
}

/// Splits the candidate space into `parts` contiguous ranges.
pub fn partition(total: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = (parts.max(1) as u64).min(total.max(1));
    let step = total.div_ceil(parts);
    (0..parts)
        .map(|p| (p * step).min(total)..((p + 1) * step).min(total))
        .filter(|r| !r.is_empty())
        .collect()
}

/// Same output as [`enumerate_ucf`], computed over `parts` ranges in parallel.
pub fn enumerate_partitioned(filter: &EnumFilter, parts: usize) -> Result<Vec<SetFamily>> {
    filter.check()?;
    let ranges = partition(candidate_count(filter.ground()), parts);
    let chunks: Result<Vec<Vec<SetFamily>>> = ranges
        .into_par_iter()
        .map(|r| enumerate_range(filter, r))
        .collect();
    Ok(chunks?.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchReport {
    pub total_families: u64,
    pub min_f: Option<usize>,
    /// Up to [`WITNESS_CAP`] families attaining `min_f`, in canonical order.
    pub witnesses: Vec<SetFamily>,
    /// `(k, n)` → smallest `f`, where `k` is the smallest non-empty set size.
    pub per_kn_table: BTreeMap<(usize, usize), usize>,
}

impl SearchReport {
    fn record(&mut self, family: SetFamily) {
        let report = analyze(&family).expect("enumerated families are non-empty");
        self.total_families += 1;
        let entry = self
            .per_kn_table
            .entry((report.k, report.n_max))
            .or_insert(report.f);
        *entry = (*entry).min(report.f);
        match self.min_f {
            Some(f) if report.f > f => {}
            Some(f) if report.f == f => self.push_witness(family),
            _ => {
                self.min_f = Some(report.f);
                self.witnesses.clear();
                self.witnesses.push(family);
            }
        }
    }

    fn push_witness(&mut self, family: SetFamily) {
        if self.witnesses.len() < WITNESS_CAP {
            self.witnesses.push(family);
        } else if let Some(last) = self.witnesses.last() {
            if &family < last {
                self.witnesses.pop();
                self.witnesses.push(family);
            }
        }
        self.witnesses.sort();
    }

    /// Associative merge of two partial reports.
    pub fn merge(mut self, other: SearchReport) -> SearchReport {
        self.total_families += other.total_families;
        for (kn, f) in other.per_kn_table {
            let entry = self.per_kn_table.entry(kn).or_insert(f);
            *entry = (*entry).min(f);
        }
        match (self.min_f, other.min_f) {
            (_, None) => {}
            (None, Some(_)) => {
                self.min_f = other.min_f;
                self.witnesses = other.witnesses;
            }
            (Some(a), Some(b)) if b < a => {
                self.min_f = Some(b);
                self.witnesses = other.witnesses;
            }
            (Some(a), Some(b)) if a == b => {
                self.witnesses.extend(other.witnesses);
                self.witnesses.sort();
                self.witnesses.dedup();
                self.witnesses.truncate(WITNESS_CAP);
            }
            _ => {}
        }
        self
    }
}

fn search_range(filter: &EnumFilter, range: Range<u64>) -> Result<SearchReport> {
    let mut report = SearchReport::default();
    for family in enumerate_range(filter, range)? {
        report.record(family);
    }
    Ok(report)
}

/// Minimum number of abundant elements over every family matching the filter.
/// `jobs > 1` splits the candidate space over a dedicated thread pool; the
/// report does not depend on `jobs`.
pub fn min_f_search(filter: &EnumFilter, jobs: usize) -> Result<SearchReport> {
    filter.check()?;
    let total = candidate_count(filter.ground());
    if jobs <= 1 {
        return search_range(filter, 0..total);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::BadParams(format!("thread pool: {e}")))?;
    let ranges = partition(total, jobs * 8);
    let partials: Result<Vec<SearchReport>> = pool.install(|| {
        ranges
            .into_par_iter()
            .map(|r| search_range(filter, r))
            .collect()
    });
    Ok(partials?
        .into_iter()
        .fold(SearchReport::default(), SearchReport::merge))
}

/// True iff every union-closed family without the empty set and with largest
/// set of size at most `n_bound` satisfies every applicable abundance bound.
pub fn verify_bounds_exhaustive(n_bound: u8) -> Result<bool> {
    let filter = EnumFilter::at_most(n_bound);
    filter.check()?;
    for family in enumerate_ucf(&filter)? {
        if !check_abundance_bounds(&family)?.all_hold() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Union-closure of `1..=max_generators` random non-empty subsets of `{0..n-1}`.
pub fn sample_ucf<R: Rng + ?Sized>(n: u8, max_generators: usize, rng: &mut R) -> Result<SetFamily> {
    let ground = GroundSize::new(n as u32)?;
    let count = rng.gen_range(1..=max_generators.max(1));
    let full = ground.full_mask();
    let gens: Vec<MemberSet> = (0..count)
        .map(|_| loop {
            let m = rng.gen::<u64>() & full;
            if m != 0 {
                break MemberSet::from_mask(m);
            }
        })
        .collect();
    let mut gens = gens;
    gens.sort_unstable();
    gens.dedup();
    Ok(union_closure(&canonicalize(gens, ground)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::is_union_closed;

    #[test]
    fn tiny_counts() {
        assert_eq!(enumerate_ucf(&EnumFilter::at_most(1)).unwrap().count(), 1);
        let two: Vec<SetFamily> = enumerate_ucf(&EnumFilter::at_most(2)).unwrap().collect();
        assert_eq!(two.len(), 6);
        assert!(two.iter().all(is_union_closed));
        assert!(!two.contains(&SetFamily::from_lists(2, &[&[0], &[1]]).unwrap()));
    }

    #[test]
    fn empty_set_variants() {
        // {∅} plus each of the six families with and without ∅.
        let fams: Vec<SetFamily> = enumerate_ucf(&EnumFilter::at_most(2).with_empty_set())
            .unwrap()
            .collect();
        assert_eq!(fams.len(), 13);
        assert_eq!(fams[0], SetFamily::from_lists(2, &[&[]]).unwrap());
    }

    #[test]
    fn infeasible_bound() {
        assert!(matches!(
            enumerate_ucf(&EnumFilter::at_most(5)),
            Err(Error::InfeasibleBound(5))
        ));
        assert!(matches!(
            min_f_search(&EnumFilter::at_most(5), 1),
            Err(Error::InfeasibleBound(5))
        ));
    }

    #[test]
    fn exact_largest_and_k_filters() {
        let r = min_f_search(&EnumFilter::exactly(2).with_k_min(2), 1).unwrap();
        assert_eq!(r.total_families, 1);
        assert_eq!(r.min_f, Some(2));
        for n in 1..=4u8 {
            let r = min_f_search(&EnumFilter::at_most(n).with_k_min(n as usize), 1).unwrap();
            assert_eq!(r.total_families, 1);
            assert_eq!(r.min_f, Some(n as usize));
        }
    }

    #[test]
    fn partition_covers_everything() {
        for parts in [1, 2, 3, 7, 100] {
            let ranges = partition(129, parts);
            assert_eq!(ranges.first().unwrap().start, 0);
            assert_eq!(ranges.last().unwrap().end, 129);
            assert!(ranges.windows(2).all(|w| w[0].end == w[1].start));
        }
        assert_eq!(partition(3, 10).len(), 3);
    }

    #[test]
    fn report_merge_is_order_independent() {
        let filter = EnumFilter::at_most(3);
        let whole = search_range(&filter, 0..candidate_count(3)).unwrap();
        let parts: Vec<SearchReport> = partition(candidate_count(3), 5)
            .into_iter()
            .map(|r| search_range(&filter, r).unwrap())
            .collect();
        let forward = parts
            .iter()
            .cloned()
            .fold(SearchReport::default(), SearchReport::merge);
        let backward = parts
            .into_iter()
            .rev()
            .fold(SearchReport::default(), SearchReport::merge);
        assert_eq!(forward, whole);
        assert_eq!(backward, whole);
    }

    #[test]
    fn witnesses_are_capped_and_sorted() {
        let r = min_f_search(&EnumFilter::at_most(4), 1).unwrap();
        assert!(r.witnesses.len() <= WITNESS_CAP);
        assert!(r.witnesses.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(r.min_f, Some(1));
    }

    #[test]
    fn sampled_families_are_union_closed() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let f = sample_ucf(5, 6, &mut rng).unwrap();
            assert!(is_union_closed(&f));
            assert!(!f.is_empty() && !f.contains_empty());
        }
    }
}
