use std::fmt;
use std::str::FromStr;

use super::{homomorphism_check, subalgebra, AbstractDqRA};
use crate::error::{Error, Result};

/// Which derived prime: `▽n` uses `∼²ⁿ`, `△n` uses `−²ⁿ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeriveKind {
    Nabla,
    Delta,
}

impl fmt::Display for DeriveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeriveKind::Nabla => "▽",
            DeriveKind::Delta => "△",
        })
    }
}

impl FromStr for DeriveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "▽" | "nabla" | "down" => Ok(DeriveKind::Nabla),
            "△" | "delta" | "up" => Ok(DeriveKind::Delta),
            _ => Err(Error::Domain(format!("unknown derive kind {s:?} (use nabla/▽ or delta/△)"))),
        }
    }
}

/// The sub-universe `{a | ∼a = −a}` as an algebra.
pub fn cyclic_subuniverse(a: &AbstractDqRA) -> Result<AbstractDqRA> {
    let c: Vec<usize> = (0..a.size()).filter(|&x| a.tilde(x) == a.minus(x)).collect();
    Ok(subalgebra(a, &c)?.with_name(format!("{}|cyclic", a.name())))
}

/// Replace the prime by `a ↦ ∼²ⁿ(a′)` (`▽n`) or `a ↦ −²ⁿ(a′)` (`△n`).
pub fn derive_algebra(a: &AbstractDqRA, kind: DeriveKind, n: usize) -> AbstractDqRA {
    let prime: Vec<usize> = (0..a.size())
        .map(|x| match kind {
            DeriveKind::Nabla => a.tilde_n(a.prime(x), 2 * n),
            DeriveKind::Delta => a.minus_n(a.prime(x), 2 * n),
        })
        .collect();
    a.with_prime(prime)
        .expect("derived prime stays in range")
        .with_name(format!("{}{}{}", a.name(), kind, n))
}

/// For an `n`-periodic algebra with `n` and `m` odd, the isomorphism
/// `A → A^{kind m}`: a power of `−` or `∼` depending on kind and on whether
/// `m ≤ n`. Returns the verified map or the violated operation.
pub fn odd_periodic_iso(a: &AbstractDqRA, kind: DeriveKind, m: usize) -> Result<Vec<usize>> {
    let n = a.periodicity()?;
    if n.is_multiple_of(2) {
        return Err(Error::Domain(format!("algebra is {n}-periodic; an odd period is required")));
    }
    if m.is_multiple_of(2) {
        return Err(Error::Domain(format!("m = {m} must be odd")));
    }
    let use_minus = match kind {
        DeriveKind::Nabla => m <= n,
        DeriveKind::Delta => m > n,
    };
    let k = n.abs_diff(m);
    let map: Vec<usize> = (0..a.size())
        .map(|x| if use_minus { a.minus_n(x, k) } else { a.tilde_n(x, k) })
        .collect();
    let target = derive_algebra(a, kind, m);
    homomorphism_check(a, &target, &map)?;
    let mut seen = vec![false; a.size()];
    for &y in &map {
        if std::mem::replace(&mut seen[y], true) {
            return Err(Error::NotInjective(a.label(y).to_string(), a.label(y).to_string()));
        }
    }
    Ok(map)
}

/// Outcome of the `a·a ≤ 0` test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `0 < a < 1` and `a·a ≤ 0`: the algebra has no finite representation.
    Flagged(usize),
    /// No such element; says nothing about representability.
    Clear,
}

pub fn nonfinrep_detector(a: &AbstractDqRA) -> Verdict {
    let (zero, one) = (a.zero(), a.one());
    (0..a.size())
        .find(|&x| {
            x != zero && x != one && a.leq(zero, x) && a.leq(x, one) && a.leq(a.mult(x, x), zero)
        })
        .map_or(Verdict::Clear, Verdict::Flagged)
}
