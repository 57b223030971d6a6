//! Per-family predicates for the union-closed conjectures and the family
//! transformations used to relate them.
//!
//! Predicates are conditional: when a family does not meet a conjecture's
//! hypotheses the verdict is `holds = true` with `hypotheses_met = false`, so a
//! predicate can be audited over every family of a class.

use std::fmt;
use std::str::FromStr;

use crate::abundance::{abundant_elements, at_least_half_elements, frequency};
use crate::error::{Error, Result};
use crate::family::{canonicalize, is_union_closed, MemberSet, SetFamily};
use crate::search::{enumerate_ucf, EnumFilter, EXHAUSTIVE_LIMIT};
use crate::twins::is_twin_free;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PredicateId {
    /// Some element is abundant.
    Frankl,
    /// A unique abundant element lies in every set.
    Poonen3,
    /// A twin-free family with a unique abundant `x` is `{S ⊆ M : x ∈ S}`.
    Poonen4,
    /// Smallest set of size at least 2 forces two abundant elements.
    CuiHu2,
    /// Original forms: the empty set is allowed and "at least half" is used.
    FranklA,
    Poonen3B,
    Poonen4C,
    CuiHu2D,
}

impl PredicateId {
    pub const ALL: [PredicateId; 8] = [
        PredicateId::Frankl,
        PredicateId::Poonen3,
        PredicateId::Poonen4,
        PredicateId::CuiHu2,
        PredicateId::FranklA,
        PredicateId::Poonen3B,
        PredicateId::Poonen4C,
        PredicateId::CuiHu2D,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PredicateId::Frankl => "frankl",
            PredicateId::Poonen3 => "poonen3",
            PredicateId::Poonen4 => "poonen4",
            PredicateId::CuiHu2 => "cuihu2",
            PredicateId::FranklA => "frankl-a",
            PredicateId::Poonen3B => "poonen3-b",
            PredicateId::Poonen4C => "poonen4-c",
            PredicateId::CuiHu2D => "cuihu2-d",
        }
    }

    pub fn is_original_form(self) -> bool {
        matches!(
            self,
            PredicateId::FranklA
                | PredicateId::Poonen3B
                | PredicateId::Poonen4C
                | PredicateId::CuiHu2D
        )
    }

    /// The strict, empty-set-free counterpart of an original form and vice versa.
    pub fn counterpart(self) -> PredicateId {
        match self {
            PredicateId::Frankl => PredicateId::FranklA,
            PredicateId::Poonen3 => PredicateId::Poonen3B,
            PredicateId::Poonen4 => PredicateId::Poonen4C,
            PredicateId::CuiHu2 => PredicateId::CuiHu2D,
            PredicateId::FranklA => PredicateId::Frankl,
            PredicateId::Poonen3B => PredicateId::Poonen3,
            PredicateId::Poonen4C => PredicateId::Poonen4,
            PredicateId::CuiHu2D => PredicateId::CuiHu2,
        }
    }
}

impl fmt::Display for PredicateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PredicateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        PredicateId::ALL
            .into_iter()
            .find(|id| id.name().replace('-', "") == key)
            .ok_or_else(|| Error::BadParams(format!("unknown conjecture id '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub hypotheses_met: bool,
    pub holds: bool,
}

impl Verdict {
    fn vacuous() -> Self {
        Verdict {
            hypotheses_met: false,
            holds: true,
        }
    }

    fn checked(holds: bool) -> Self {
        Verdict {
            hypotheses_met: true,
            holds,
        }
    }
}

/// Common preconditions of the strict forms.
fn strict_class(family: &SetFamily) -> Result<()> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if family.contains_empty() {
        return Err(Error::ContainsEmptySet);
    }
    if !is_union_closed(family) {
        return Err(Error::NotUnionClosed);
    }
    Ok(())
}

pub fn frankl_holds(family: &SetFamily) -> Result<Verdict> {
    strict_class(family)?;
    Ok(Verdict::checked(!abundant_elements(family).is_empty()))
}

pub fn poonen3_holds(family: &SetFamily) -> Result<Verdict> {
    strict_class(family)?;
    match abundant_elements(family).as_slice() {
        &[x] => Ok(Verdict::checked(family.iter().all(|s| s.contains(x)))),
        _ => Ok(Verdict::vacuous()),
    }
}

/// `{S ⊆ top : x ∈ S}`, optionally with the empty set.
fn principal_filter(family: &SetFamily, top: MemberSet, x: usize, with_empty: bool) -> SetFamily {
    let rest = top.without(x).mask();
    let mut sets = Vec::with_capacity(1 << rest.count_ones());
    let mut sub = rest;
    loop {
        sets.push(MemberSet::from_mask(sub).with(x));
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    if with_empty {
        sets.push(MemberSet::EMPTY);
    }
    canonicalize(sets, family.ground()).expect("subsets of a member set fit the ground")
}

pub fn poonen4_holds(family: &SetFamily) -> Result<Verdict> {
    strict_class(family)?;
    if !is_twin_free(family) {
        return Ok(Verdict::vacuous());
    }
    match abundant_elements(family).as_slice() {
        &[x] => {
            let top = family.union_of_all();
            Ok(Verdict::checked(
                *family == principal_filter(family, top, x, false),
            ))
        }
        _ => Ok(Verdict::vacuous()),
    }
}

pub fn cuihu2_holds(family: &SetFamily) -> Result<Verdict> {
    strict_class(family)?;
    let k = family.sets()[0].len();
    if k < 2 {
        return Ok(Verdict::vacuous());
    }
    Ok(Verdict::checked(abundant_elements(family).len() >= 2))
}

/// No pair of elements of `top` is contained together-or-not-at-all in every set.
fn separates_pairs(family: &SetFamily, top: MemberSet) -> bool {
    let elems: Vec<usize> = top.elements().collect();
    elems.iter().enumerate().all(|(i, &a)| {
        elems[i + 1..].iter().all(|&b| {
            let pair = MemberSet::from_elements([a, b]);
            family.iter().any(|s| s.intersection(pair).len() == 1)
        })
    })
}

fn is_only_empty(family: &SetFamily) -> bool {
    family.len() == 1 && family.contains_empty()
}

/// Evaluates one of the original formulations (empty set permitted, non-strict threshold).
pub fn original_holds(id: PredicateId, family: &SetFamily) -> Result<Verdict> {
    if !id.is_original_form() {
        return Err(Error::BadParams(format!(
            "{id} is not an original formulation"
        )));
    }
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if !is_union_closed(family) {
        return Err(Error::NotUnionClosed);
    }
    if matches!(id, PredicateId::FranklA | PredicateId::CuiHu2D) && is_only_empty(family) {
        return Err(Error::IllegalInput);
    }
    let heavy = at_least_half_elements(family);
    let top = family.union_of_all();
    Ok(match id {
        PredicateId::FranklA => Verdict::checked(!heavy.is_empty()),
        PredicateId::Poonen3B => match heavy.as_slice() {
            &[x] => Verdict::checked(
                family
                    .iter()
                    .filter(|s| !s.is_empty())
                    .all(|s| s.contains(x)),
            ),
            _ => Verdict::vacuous(),
        },
        PredicateId::Poonen4C => match heavy.as_slice() {
            &[x] if separates_pairs(family, top) => {
                let holds = if top.len() >= 2 {
                    *family == principal_filter(family, top, x, true)
                } else {
                    let single = MemberSet::from_elements([x]);
                    family.sets() == [single] || family.sets() == [MemberSet::EMPTY, single]
                };
                Verdict::checked(holds)
            }
            _ => Verdict::vacuous(),
        },
        PredicateId::CuiHu2D => {
            let k = family.first_nonempty().map_or(0, |s| s.len());
            if k < 2 {
                Verdict::vacuous()
            } else {
                Verdict::checked(heavy.len() >= 2)
            }
        }
        _ => unreachable!("checked above"),
    })
}

/// Dispatches to the strict predicates or to [`original_holds`].
pub fn predicate_holds(id: PredicateId, family: &SetFamily) -> Result<Verdict> {
    match id {
        PredicateId::Frankl => frankl_holds(family),
        PredicateId::Poonen3 => poonen3_holds(family),
        PredicateId::Poonen4 => poonen4_holds(family),
        PredicateId::CuiHu2 => cuihu2_holds(family),
        _ => original_holds(id, family),
    }
}

pub fn strip_empty(family: &SetFamily) -> SetFamily {
    let sets = family.iter().filter(|s| !s.is_empty()).collect();
    canonicalize(sets, family.ground()).expect("subfamily stays valid")
}

pub fn add_empty(family: &SetFamily) -> Result<SetFamily> {
    if family.contains_empty() {
        return Err(Error::AlreadyPresent);
    }
    let mut sets = family.sets().to_vec();
    sets.push(MemberSet::EMPTY);
    canonicalize(sets, family.ground())
}

/// Every abundant element of `F \ {∅}` lies in at least half of the sets of
/// `F ∪ {∅}` (from `2c ≥ |F'| + 1`).
pub fn empty_set_threshold_lemma(family: &SetFamily) -> bool {
    let stripped = strip_empty(family);
    let padded = add_empty(&stripped).expect("stripped family has no empty set");
    let heavy = at_least_half_elements(&padded);
    abundant_elements(&stripped)
        .iter()
        .all(|e| heavy.contains(e))
}

/// Replaces the first smallest set `S` (canonical order) by `S \ {x}`, where
/// `x` lies in every set and `|S| ≥ 2`.
pub fn replace_min_set_without(family: &SetFamily, x: usize) -> Result<SetFamily> {
    strict_class(family)?;
    if !family.iter().all(|s| s.contains(x)) {
        return Err(Error::PreconditionViolated(format!(
            "element {x} is not in every set"
        )));
    }
    let smallest = family.sets()[0];
    if smallest.len() < 2 {
        return Err(Error::PreconditionViolated(
            "smallest set has fewer than two elements".into(),
        ));
    }
    let mut sets = family.sets().to_vec();
    sets[0] = smallest.without(x);
    canonicalize(sets, family.ground())
}

/// Replaces every `A` with `A ∪ {y} ∉ F` by `A ∪ {y}`.
pub fn saturate_element(family: &SetFamily, y: usize) -> Result<SetFamily> {
    strict_class(family)?;
    if !family.union_of_all().contains(y) {
        return Err(Error::PreconditionViolated(format!(
            "element {y} is not in the largest set"
        )));
    }
    let sets = family
        .iter()
        .map(|a| {
            let grown = a.with(y);
            if family.contains(grown) {
                a
            } else {
                grown
            }
        })
        .collect();
    canonicalize(sets, family.ground())
}

/// Adds the singleton `{y}`, failing if the result is not union-closed.
pub fn add_singleton(family: &SetFamily, y: usize) -> Result<SetFamily> {
    if !is_union_closed(family) {
        return Err(Error::NotUnionClosed);
    }
    let single = MemberSet::from_elements([y]);
    if !family.ground().fits(single.mask()) {
        return Err(Error::MaskOverflow {
            mask: single.mask(),
            ground: family.ground().get() as u8,
        });
    }
    if family.contains(single) {
        return Err(Error::AlreadyPresent);
    }
    let mut sets = family.sets().to_vec();
    sets.push(single);
    let out = canonicalize(sets, family.ground())?;
    if !is_union_closed(&out) {
        return Err(Error::NotClosedAfterAdd);
    }
    Ok(out)
}

/// The predicate holds on every family of its class whose largest set has at
/// most `n` elements.
///
/// Strict forms range over non-empty union-closed families without `∅`; the
/// original forms also include each such family with `∅` added, and `{∅}`
/// itself except for the two forms that exclude it.
pub fn universal_audit(n: u8, id: PredicateId) -> Result<bool> {
    if n == 0 || n > EXHAUSTIVE_LIMIT {
        return Err(Error::BadParams(format!(
            "audit needs 1 ≤ n ≤ {EXHAUSTIVE_LIMIT}, got {n}"
        )));
    }
    let mut filter = EnumFilter::at_most(n);
    if id.is_original_form() {
        filter = filter.with_empty_set();
    }
    let excludes_only_empty = matches!(id, PredicateId::FranklA | PredicateId::CuiHu2D);
    for family in enumerate_ucf(&filter)? {
        if excludes_only_empty && is_only_empty(&family) {
            continue;
        }
        if !predicate_holds(id, &family)?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Frequencies of every element other than `y`; used to check that saturation
/// leaves them untouched.
pub fn frequencies_except(family: &SetFamily, y: usize) -> Vec<usize> {
    let mut freq = frequency(family);
    freq.remove(y);
    freq
}
