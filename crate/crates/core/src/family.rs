//! The family value type: distinct subsets of a ground set `{0, …, n-1}` kept in
//! canonical order (by cardinality, then by mask value).

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use rayon::slice::ParallelSliceMut;

use crate::error::{Error, Result};

/// Largest supported ground set; one machine word per member set.
pub const MAX_GROUND: u8 = 64;

/// Above this ground size membership lookups fall back to a hash set.
const BITMAP_GROUND_LIMIT: u8 = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSize(u8);

impl GroundSize {
    pub fn new(n: u32) -> Result<Self> {
        if (1..=MAX_GROUND as u32).contains(&n) {
            Ok(GroundSize(n as u8))
        } else {
            Err(Error::BadGround(n))
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// Mask with every ground element set.
    pub fn full_mask(self) -> u64 {
        if self.0 == 64 {
            u64::MAX
        } else {
            (1u64 << self.0) - 1
        }
    }

    pub fn fits(self, mask: u64) -> bool {
        mask & !self.full_mask() == 0
    }
}

/// A subset of the ground set, one bit per element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MemberSet(u64);

impl MemberSet {
    pub const EMPTY: MemberSet = MemberSet(0);

    pub const fn from_mask(mask: u64) -> Self {
        MemberSet(mask)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        MemberSet(elements.into_iter().fold(0u64, |acc, e| {
            assert!(e < 64, "element {e} does not fit a 64-bit set");
            acc | (1u64 << e)
        }))
    }

    /// `{lo, lo+1, …, hi-1}`
    pub fn range(lo: usize, hi: usize) -> Self {
        Self::from_elements(lo..hi)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub const fn union(self, other: MemberSet) -> MemberSet {
        MemberSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: MemberSet) -> MemberSet {
        MemberSet(self.0 & other.0)
    }

    pub const fn difference(self, other: MemberSet) -> MemberSet {
        MemberSet(self.0 & !other.0)
    }

    pub const fn with(self, e: usize) -> MemberSet {
        MemberSet(self.0 | 1u64 << e)
    }

    pub const fn without(self, e: usize) -> MemberSet {
        MemberSet(self.0 & !(1u64 << e))
    }

    pub const fn is_subset(self, other: MemberSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let e = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(e)
            }
        })
    }
}

impl Ord for MemberSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for MemberSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MemberSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MemberSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// A family of distinct sets over `{0, …, n-1}` in canonical order.
///
/// The derived ordering compares ground sizes first and then the canonical set
/// lists lexicographically, which is the order used for witness lists.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily {
    ground: GroundSize,
    sets: Vec<MemberSet>,
}

const PARALLEL_SORT_MIN: usize = 1 << 16;

/// Sorts into canonical order. Large inputs are bucketed by cardinality first so
/// the comparison sort only sees plain masks.
fn canonical_sort(sets: &mut Vec<MemberSet>) {
    if sets.len() <= PARALLEL_SORT_MIN {
        sets.sort_unstable();
        return;
    }
    let mut starts = [0usize; 66];
    for s in sets.iter() {
        starts[s.len() + 1] += 1;
    }
    for i in 1..66 {
        starts[i] += starts[i - 1];
    }
    let mut next = starts;
    let mut out = vec![MemberSet::EMPTY; sets.len()];
    for &s in sets.iter() {
        out[next[s.len()]] = s;
        next[s.len()] += 1;
    }
    let mut rest = out.as_mut_slice();
    for i in 0..65 {
        let (bucket, tail) = rest.split_at_mut(starts[i + 1] - starts[i]);
        bucket.par_sort_unstable_by_key(|s| s.mask());
        rest = tail;
    }
    *sets = out;
}

/// Sorts `sets` into canonical order, rejecting duplicates and out-of-range elements.
pub fn canonicalize(mut sets: Vec<MemberSet>, ground: GroundSize) -> Result<SetFamily> {
    if let Some(bad) = sets.iter().find(|s| !ground.fits(s.mask())) {
        return Err(Error::MaskOverflow {
            mask: bad.mask(),
            ground: ground.0,
        });
    }
    canonical_sort(&mut sets);
    if let Some(w) = sets.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateSet(w[0].mask()));
    }
    Ok(SetFamily { ground, sets })
}

impl SetFamily {
    pub fn new<I: IntoIterator<Item = MemberSet>>(ground: GroundSize, sets: I) -> Result<Self> {
        canonicalize(sets.into_iter().collect(), ground)
    }

    pub fn empty(ground: GroundSize) -> Self {
        SetFamily {
            ground,
            sets: Vec::new(),
        }
    }

    /// Convenience constructor from raw masks.
    pub fn from_masks(n: u32, masks: &[u64]) -> Result<Self> {
        let ground = GroundSize::new(n)?;
        canonicalize(
            masks.iter().copied().map(MemberSet::from_mask).collect(),
            ground,
        )
    }

    /// Convenience constructor from element lists, e.g. `&[&[0], &[0, 1]]`.
    pub fn from_lists(n: u32, lists: &[&[usize]]) -> Result<Self> {
        let ground = GroundSize::new(n)?;
        let sets = lists
            .iter()
            .map(|l| MemberSet::from_elements(l.iter().copied()))
            .collect();
        canonicalize(sets, ground)
    }

    pub fn ground(&self) -> GroundSize {
        self.ground
    }

    pub fn sets(&self) -> &[MemberSet] {
        &self.sets
    }

    pub fn iter(&self) -> impl Iterator<Item = MemberSet> + '_ {
        self.sets.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: MemberSet) -> bool {
        self.sets.binary_search(&set).is_ok()
    }

    pub fn contains_empty(&self) -> bool {
        self.sets.first().is_some_and(|s| s.is_empty())
    }

    /// Union of all member sets; the largest set when the family is union-closed.
    pub fn union_of_all(&self) -> MemberSet {
        self.iter().fold(MemberSet::EMPTY, MemberSet::union)
    }

    /// Smallest non-empty set in canonical order.
    pub fn first_nonempty(&self) -> Option<MemberSet> {
        self.iter().find(|s| !s.is_empty())
    }

    pub fn largest_size(&self) -> usize {
        self.sets.last().map_or(0, |s| s.len())
    }

    /// Same sets over a larger (or equal) ground.
    pub fn regrounded(&self, ground: GroundSize) -> Result<Self> {
        canonicalize(self.sets.clone(), ground)
    }

    pub fn into_sets(self) -> Vec<MemberSet> {
        self.sets
    }

    fn membership(&self) -> Membership {
        Membership::new(self)
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily(n={}) ", self.ground.0)?;
        f.debug_list().entries(self.sets.iter()).finish()
    }
}

/// Constant-time membership over a family's masks.
enum Membership {
    Bitmap(Vec<u64>),
    Hashed(HashSet<u64>),
}

impl Membership {
    fn new(family: &SetFamily) -> Self {
        if family.ground.0 <= BITMAP_GROUND_LIMIT {
            let words = (1usize << family.ground.0).div_ceil(64);
            let mut bits = vec![0u64; words];
            for s in family.iter() {
                let m = s.mask() as usize;
                bits[m / 64] |= 1 << (m % 64);
            }
            Membership::Bitmap(bits)
        } else {
            Membership::Hashed(family.iter().map(MemberSet::mask).collect())
        }
    }

    fn contains(&self, mask: u64) -> bool {
        match self {
            Membership::Bitmap(bits) => {
                let m = mask as usize;
                bits[m / 64] >> (m % 64) & 1 == 1
            }
            Membership::Hashed(set) => set.contains(&mask),
        }
    }
}

fn closed_under(family: &SetFamily, op: impl Fn(u64, u64) -> u64) -> bool {
    let lookup = family.membership();
    let sets = family.sets();
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            let c = op(a.mask(), b.mask());
            if c != a.mask() && c != b.mask() && !lookup.contains(c) {
                return false;
            }
        }
    }
    true
}

/// True iff the union of any two members is a member. The empty family is union-closed.
pub fn is_union_closed(family: &SetFamily) -> bool {
    closed_under(family, |a, b| a | b)
}

pub fn is_intersection_closed(family: &SetFamily) -> bool {
    closed_under(family, |a, b| a & b)
}

/// Smallest union-closed family containing `family`.
pub fn union_closure(family: &SetFamily) -> SetFamily {
    let mut seen: HashSet<u64> = family.iter().map(MemberSet::mask).collect();
    let mut all: Vec<u64> = seen.iter().copied().collect();
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &a in &frontier {
            for i in 0..all.len() {
                let u = a | all[i];
                if seen.insert(u) {
                    next.push(u);
                    all.push(u);
                }
            }
        }
        frontier = next;
    }
    let sets = all.into_iter().map(MemberSet::from_mask).collect();
    canonicalize(sets, family.ground).expect("closure of a valid family stays valid")
}

/// `{M \ A : A ∈ F}` where `M` is the largest set of the union-closed family `F`.
pub fn dual(family: &SetFamily) -> Result<SetFamily> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if !is_union_closed(family) {
        return Err(Error::NotUnionClosed);
    }
    let top = family.union_of_all();
    let sets = family.iter().map(|a| top.difference(a)).collect();
    canonicalize(sets, family.ground)
}

/// `{top \ A : A ∈ F}` for an explicit `top` containing every set. Applying it
/// twice with the same `top` is the identity, which [`dual`] alone cannot
/// guarantee once the largest set of the dual has shrunk.
pub fn dual_within(family: &SetFamily, top: MemberSet) -> Result<SetFamily> {
    if !family.ground.fits(top.mask()) {
        return Err(Error::MaskOverflow {
            mask: top.mask(),
            ground: family.ground.0,
        });
    }
    if let Some(a) = family.iter().find(|a| !a.is_subset(top)) {
        return Err(Error::PreconditionViolated(format!(
            "{a} is not inside {top}"
        )));
    }
    let sets = family.iter().map(|a| top.difference(a)).collect();
    canonicalize(sets, family.ground)
}
