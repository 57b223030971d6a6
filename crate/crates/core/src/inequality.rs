//! Exact evaluation of the binomial inequality that decides when the parametric
//! family `P(k, n)` has exactly two abundant elements:
//!
//! ```text
//! Σ_{i=k-1}^{h-1} C(h-1, i)  >  C(n-3, k-3) + C(h-2, k-2),   h = ⌊n/2⌋
//! ```
//!
//! The left side counts the odd-part sets; the right side is the surplus of
//! sets containing element 2 over those avoiding it.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `C(n, r)`, zero when `r > n` or either argument is negative.
pub fn binomial(n: i64, r: i64) -> BigUint {
    if n < 0 || r < 0 || r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..r {
        // Each partial product is itself a binomial coefficient, so the division is exact.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalitySides {
    pub lhs: BigUint,
    pub rhs: BigUint,
}

impl InequalitySides {
    pub fn holds(&self) -> bool {
        self.lhs > self.rhs
    }
}

fn check_params(k: u32, n: u32) -> Result<()> {
    if k < 3 || n < k {
        return Err(Error::BadParams(format!(
            "need n ≥ k ≥ 3, got k={k}, n={n}"
        )));
    }
    Ok(())
}

pub fn pnk_inequality_sides(k: u32, n: u32) -> Result<InequalitySides> {
    check_params(k, n)?;
    let (k, n) = (k as i64, n as i64);
    let h = n / 2;
    let lhs = (k - 1..h).map(|i| binomial(h - 1, i)).sum();
    let rhs = binomial(n - 3, k - 3) + binomial(h - 2, k - 2);
    Ok(InequalitySides { lhs, rhs })
}

pub fn pnk_inequality(k: u32, n: u32) -> Result<bool> {
    Ok(pnk_inequality_sides(k, n)?.holds())
}

/// Smallest `n0` such that the inequality holds for every `n` in `[n0, n_cap]`.
pub fn pnk_inequality_holds_from(k: u32, n_cap: u32) -> Result<u32> {
    check_params(k, n_cap)?;
    if !pnk_inequality(k, n_cap)? {
        return Err(Error::NotFound(n_cap));
    }
    let mut n0 = n_cap;
    while n0 > k && pnk_inequality(k, n0 - 1)? {
        n0 -= 1;
    }
    Ok(n0)
}

/// The exponential-versus-polynomial certificate
/// `2^(h-2) > (n-3)^(k-3) + (h-2)^(k-2)` together with its side condition
/// `k - 1 ≤ (h - 1)/2`. When true, the inequality itself holds at `(k, n)`.
pub fn exponential_certificate(k: u32, n: u32) -> Result<bool> {
    check_params(k, n)?;
    let h = (n / 2) as i64;
    if h < 2 || 2 * (k as i64 - 1) > h - 1 {
        return Ok(false);
    }
    let lhs = BigUint::one() << (h - 2) as usize;
    let poly = |base: i64, exp: u32| BigUint::from(base.max(0) as u64).pow(exp);
    let rhs = poly(n as i64 - 3, k - 3) + poly(h - 2, k - 2);
    Ok(lhs > rhs)
}
