//! Builders for the union-closed families with few abundant elements.
//!
//! Naming follows the `(f, k, n)`-construction convention: a union-closed family
//! with exactly `f` abundant elements whose smallest set has size `k` and whose
//! largest set has size `n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::family::{canonicalize, GroundSize, MemberSet, SetFamily, MAX_GROUND};

/// Every `S` with `base ⊆ S ⊆ universe` and `|S| ≥ min_size`.
fn sandwiched(base: MemberSet, universe: MemberSet, min_size: usize) -> Vec<MemberSet> {
    debug_assert!(base.is_subset(universe));
    let free = universe.difference(base).mask();
    let mut out = Vec::new();
    let mut sub = free;
    loop {
        let s = MemberSet::from_mask(base.mask() | sub);
        if s.len() >= min_size {
            out.push(s);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    out
}

fn ground(n: u32) -> Result<GroundSize> {
    GroundSize::new(n).map_err(|_| Error::BadParams(format!("ground size {n} outside 1..=64")))
}

fn family(n: u32, sets: Vec<MemberSet>) -> Result<SetFamily> {
    canonicalize(sets, ground(n)?)
}

fn bad(msg: String) -> Error {
    Error::BadParams(msg)
}

fn p83_sets() -> Vec<MemberSet> {
    let mut sets = sandwiched(MemberSet::from_elements([0, 1]), MemberSet::range(0, 8), 3);
    let evens: [&[usize]; 4] = [&[0, 2, 4], &[0, 2, 6], &[0, 4, 6], &[0, 2, 4, 6]];
    let odds: [&[usize]; 4] = [&[1, 3, 5], &[1, 3, 7], &[1, 5, 7], &[1, 3, 5, 7]];
    for l in evens.iter().chain(odds.iter()) {
        sets.push(MemberSet::from_elements(l.iter().copied()));
    }
    sets
}

/// The (2,3,8)-construction: 63 supersets of `{0,1}` plus four even and four odd sets.
pub fn build_p83() -> SetFamily {
    family(8, p83_sets()).expect("fixed construction is valid")
}

/// Every set of the (2,3,8)-construction extended by element 8; a (3,4,9)-construction.
pub fn build_p94bar() -> SetFamily {
    let sets = p83_sets().into_iter().map(|s| s.with(8)).collect();
    family(9, sets).expect("fixed construction is valid")
}

/// The (4,5,9)-construction. Elements 4..=8 occur in exactly half of the sets.
pub fn build_q95() -> SetFamily {
    let mut sets = sandwiched(MemberSet::range(0, 6), MemberSet::range(0, 9), 0);
    sets.extend(sandwiched(
        MemberSet::from_elements([0, 1, 2]),
        MemberSet::from_elements([0, 1, 2, 3, 6, 7, 8]),
        5,
    ));
    for l in [[0, 1, 3, 4, 5], [0, 2, 3, 4, 5], [1, 2, 3, 4, 5]] {
        sets.push(MemberSet::from_elements(l));
    }
    family(9, sets).expect("fixed construction is valid")
}

/// `G_i` for the (5,6,10)-construction: the core `{0..4}` without `i`, plus the
/// three tail elements `5 + (i+j) mod 5` for `j = 2, 3, 4`.
///
/// Only `G_0 = {1,2,3,4,7,8,9}` is pinned down explicitly; this cyclic rule is the
/// completion in which every tail element lies in exactly three of the five tails.
pub fn r106_tail(i: usize) -> MemberSet {
    assert!(i < 5);
    let core = MemberSet::range(0, 5).without(i);
    (2..5).fold(core, |acc, j| acc.with(5 + (i + j) % 5))
}

/// The (5,6,10)-construction.
pub fn build_r106() -> SetFamily {
    let core = MemberSet::range(0, 5);
    let mut sets = sandwiched(core, MemberSet::range(0, 10), 6);
    for i in 0..5 {
        let g = r106_tail(i);
        sets.push(g);
        // size-6 subsets of G_i keeping all four core elements: drop one tail element.
        for t in g.difference(core).elements() {
            sets.push(g.without(t));
        }
    }
    family(10, sets).expect("fixed construction is valid")
}

/// Parametric extension `P(k, n)`, union-closed and twin-free for `n ≥ k ≥ 3`.
///
/// * `𝓐`: supersets of `{0,1}` within `{0..n-1}` of size at least `k`
/// * `𝓔`: sets of even elements below `2⌊n/2⌋` containing 0, of size at least `k`
/// * `𝓞`: the same on odd elements, containing 1
pub fn build_pnk(k: u32, n: u32) -> Result<SetFamily> {
    if k < 3 || n < k {
        return Err(bad(format!("P(k,n) needs n ≥ k ≥ 3, got k={k}, n={n}")));
    }
    ground(n)?;
    let (k, nu) = (k as usize, n as usize);
    let half = nu / 2;
    let evens = MemberSet::from_elements((0..half).map(|i| 2 * i));
    let odds = MemberSet::from_elements((0..half).map(|i| 2 * i + 1));
    let mut sets = sandwiched(MemberSet::from_elements([0, 1]), MemberSet::range(0, nu), k);
    sets.extend(sandwiched(MemberSet::from_elements([0]), evens, k));
    sets.extend(sandwiched(MemberSet::from_elements([1]), odds, k));
    family(n, sets)
}

/// The (5,6,10)-construction with `n - 10` extra elements added to every set:
/// a `(k-1, k, n)`-construction for `k = n - 4`, `n ≥ 10`.
pub fn build_rnkbar(k: u32, n: u32) -> Result<SetFamily> {
    if n < 10 || k + 4 != n {
        return Err(bad(format!(
            "R̄(k,n) needs k = n-4 and n ≥ 10, got k={k}, n={n}"
        )));
    }
    ground(n)?;
    let extra = MemberSet::range(10, n as usize);
    let sets = build_r106().iter().map(|s| s.union(extra)).collect();
    family(n, sets)
}

/// Sizes of the padding blocks `A_2, …, A_11` for the (2,k,n) extension of `P(4,12)`.
pub fn padding_sizes(k: u32, n: u32) -> [usize; 10] {
    let (k, n) = (k as usize, n as usize);
    let up = (k - 4).div_ceil(2);
    let down = (k - 4) / 2;
    let mut sizes = [up; 10];
    sizes[8] = down;
    sizes[9] = n - 12 - 8 * up - down;
    sizes
}

/// A (2,k,n)-construction for `k ≥ 4`, `n ≥ k + 8⌈k/2⌉ - 8`: every set of
/// `P(4,12)` containing `i ∈ {2..11}` receives the block `A_i` of fresh elements.
/// Blocks are laid out contiguously from element 12 in index order.
pub fn build_pplus_2kn(k: u32, n: u32) -> Result<SetFamily> {
    if k < 4 || n < k + 8 * k.div_ceil(2) - 8 || n > MAX_GROUND as u32 {
        return Err(bad(format!(
            "P⁺ needs k ≥ 4 and k + 8⌈k/2⌉ - 8 ≤ n ≤ 64, got k={k}, n={n}"
        )));
    }
    let mut blocks = [MemberSet::EMPTY; 12];
    let mut next = 12usize;
    for (i, size) in padding_sizes(k, n).into_iter().enumerate() {
        blocks[i + 2] = MemberSet::range(next, next + size);
        next += size;
    }
    debug_assert_eq!(next, n as usize);
    let base = build_pnk(4, 12)?;
    let sets = base
        .iter()
        .map(|s| {
            (2..12)
                .filter(|&i| s.contains(i))
                .fold(s, |acc, i| acc.union(blocks[i]))
        })
        .collect();
    family(n, sets)
}

/// The small (2,k,n)-constructions for `k ≤ 3`; the `k = 0` family contains `∅`.
pub fn build_small_k(k: u32, n: u32) -> Result<SetFamily> {
    if k > 3 || n < 3 || (k == 3 && n < 8) {
        return Err(bad(format!(
            "small-k family needs k ≤ 3, n ≥ 3 (n ≥ 8 for k = 3), got k={k}, n={n}"
        )));
    }
    ground(n)?;
    let top = MemberSet::range(0, n as usize);
    let pair = MemberSet::from_elements([0, 1]);
    let zero = MemberSet::from_elements([0]);
    let one = MemberSet::from_elements([1]);
    let sets = match k {
        0 => vec![MemberSet::EMPTY, zero, one, pair, top],
        1 => vec![zero, one, pair, top],
        2 => vec![pair, top],
        _ => {
            let extra = MemberSet::range(8, n as usize);
            p83_sets()
                .into_iter()
                .map(|s| if s.contains(2) { s.union(extra) } else { s })
                .collect()
        }
    };
    family(n, sets)
}

/// A (k-1,k,n)-construction for `n - 5 ≥ k ≥ 3`, `n ≥ 9`: sets of the
/// (2,3,8)-construction containing 2 receive `{8..n-1}`, the others `{8..k+4}`.
pub fn build_pplus_k1kn(k: u32, n: u32) -> Result<SetFamily> {
    if k < 3 || k + 5 > n || n < 9 || n > MAX_GROUND as u32 {
        return Err(bad(format!(
            "P⁺ needs n - 5 ≥ k ≥ 3 and 9 ≤ n ≤ 64, got k={k}, n={n}"
        )));
    }
    let with_two = MemberSet::range(8, n as usize);
    let without_two = MemberSet::range(8, k as usize + 5);
    let sets = p83_sets()
        .into_iter()
        .map(|s| {
            if s.contains(2) {
                s.union(with_two)
            } else {
                s.union(without_two)
            }
        })
        .collect();
    family(n, sets)
}

/// Names one of the buildable families together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionSpec {
    P83,
    P94Bar,
    Q95,
    R106,
    Pnk {
        k: u32,
        n: u32,
    },
    RnkBar {
        k: u32,
        n: u32,
    },
    /// (2,k,n) extension of `P(4,12)`.
    PPlus23 {
        k: u32,
        n: u32,
    },
    /// (k-1,k,n) extension of the (2,3,8)-construction.
    PPlus4 {
        k: u32,
        n: u32,
    },
    SmallK {
        k: u32,
        n: u32,
    },
}

impl ConstructionSpec {
    pub const IDS: [&'static str; 9] = [
        "p83", "p94bar", "q95", "r106", "pnk", "rnkbar", "pplus23", "pplus4", "smallk",
    ];

    /// Parses a lowercase id; parametric ids require both `k` and `n`.
    pub fn from_id(id: &str, k: Option<u32>, n: Option<u32>) -> Result<Self> {
        let params = || match (k, n) {
            (Some(k), Some(n)) => Ok((k, n)),
            _ => Err(bad(format!("construction '{id}' needs both k and n"))),
        };
        Ok(match id.to_ascii_lowercase().as_str() {
            "p83" => ConstructionSpec::P83,
            "p94bar" => ConstructionSpec::P94Bar,
            "q95" => ConstructionSpec::Q95,
            "r106" => ConstructionSpec::R106,
            "pnk" => {
                let (k, n) = params()?;
                ConstructionSpec::Pnk { k, n }
            }
            "rnkbar" => {
                let (k, n) = params()?;
                ConstructionSpec::RnkBar { k, n }
            }
            "pplus23" => {
                let (k, n) = params()?;
                ConstructionSpec::PPlus23 { k, n }
            }
            "pplus4" => {
                let (k, n) = params()?;
                ConstructionSpec::PPlus4 { k, n }
            }
            "smallk" => {
                let (k, n) = params()?;
                ConstructionSpec::SmallK { k, n }
            }
            other => return Err(bad(format!("unknown construction id '{other}'"))),
        })
    }

    pub fn id(&self) -> &'static str {
        match self {
            ConstructionSpec::P83 => "p83",
            ConstructionSpec::P94Bar => "p94bar",
            ConstructionSpec::Q95 => "q95",
            ConstructionSpec::R106 => "r106",
            ConstructionSpec::Pnk { .. } => "pnk",
            ConstructionSpec::RnkBar { .. } => "rnkbar",
            ConstructionSpec::PPlus23 { .. } => "pplus23",
            ConstructionSpec::PPlus4 { .. } => "pplus4",
            ConstructionSpec::SmallK { .. } => "smallk",
        }
    }
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionSpec::Pnk { k, n }
            | ConstructionSpec::RnkBar { k, n }
            | ConstructionSpec::PPlus23 { k, n }
            | ConstructionSpec::PPlus4 { k, n }
            | ConstructionSpec::SmallK { k, n } => write!(f, "{}(k={k}, n={n})", self.id()),
            _ => f.write_str(self.id()),
        }
    }
}

pub fn build(spec: ConstructionSpec) -> Result<SetFamily> {
    match spec {
        ConstructionSpec::P83 => Ok(build_p83()),
        ConstructionSpec::P94Bar => Ok(build_p94bar()),
        ConstructionSpec::Q95 => Ok(build_q95()),
        ConstructionSpec::R106 => Ok(build_r106()),
        ConstructionSpec::Pnk { k, n } => build_pnk(k, n),
        ConstructionSpec::RnkBar { k: 5, n: 9 } => Ok(build_q95()),
        ConstructionSpec::RnkBar { k, n } => build_rnkbar(k, n),
        ConstructionSpec::PPlus23 { k, n } => build_pplus_2kn(k, n),
        ConstructionSpec::PPlus4 { k, n } => build_pplus_k1kn(k, n),
        ConstructionSpec::SmallK { k, n } => build_small_k(k, n),
    }
}
