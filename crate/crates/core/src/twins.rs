//! Twin elements and their removal.
//!
//! Elements `a` and `b` are twins when no member set contains exactly one of
//! them. Elements occurring in no set at all are ignored: they would be twins of
//! each other vacuously, but they are artifacts of the declared ground size.

use crate::error::{Error, Result};
use crate::family::{canonicalize, is_union_closed, MemberSet, SetFamily};

/// All twin pairs `(a, b)` with `a < b`, in lexicographic order.
pub fn twins(family: &SetFamily) -> Vec<(usize, usize)> {
    let present: Vec<usize> = family.union_of_all().elements().collect();
    let mut pairs = Vec::new();
    for (i, &a) in present.iter().enumerate() {
        for &b in &present[i + 1..] {
            let pair = MemberSet::from_elements([a, b]);
            let split = family.iter().any(|s| s.intersection(pair).len() == 1);
            if !split {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

pub fn is_twin_free(family: &SetFamily) -> bool {
    let present: Vec<usize> = family.union_of_all().elements().collect();
    present.iter().enumerate().all(|(i, &a)| {
        present[i + 1..].iter().all(|&b| {
            let pair = MemberSet::from_elements([a, b]);
            family.iter().any(|s| s.intersection(pair).len() == 1)
        })
    })
}

/// Repeatedly removes the larger element of the lexicographically first twin
/// pair until the family is twin-free. The ground set is kept as is.
pub fn collapse_twins(family: &SetFamily) -> Result<SetFamily> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if family.contains_empty() {
        return Err(Error::ContainsEmptySet);
    }
    if !is_union_closed(family) {
        return Err(Error::NotUnionClosed);
    }
    let mut current = family.clone();
    while let Some(&(_, b)) = twins(&current).first() {
        let sets = current.iter().map(|s| s.without(b)).collect();
        // Twins never separate two sets, so removing one of them keeps sets distinct.
        current = canonicalize(sets, current.ground())?;
    }
    Ok(current)
}
