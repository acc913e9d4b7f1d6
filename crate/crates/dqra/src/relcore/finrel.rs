use std::fmt;

use crate::error::{Error, Result};
use crate::relcore::Endomap;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A binary relation on `{0, .., n-1}` stored as a dense row-major bit matrix.
///
/// Row `x` holds the set `{y | (x, y) ∈ R}`; each row occupies
/// `ceil(n / 64)` words. Equality, hashing and ordering are by value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinRel {
    n: usize,
    bits: Vec<u64>,
}

/// Which side a map graph is composed on in [`graph_compose_map`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `γ ∘ R`
    Left,
    /// `R ∘ γ`
    Right,
}

impl FinRel {
    pub fn empty(n: usize) -> Self {
        FinRel {
            n,
            bits: vec![0; n * words_for(n)],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }

    pub fn full(n: usize) -> Self {
        let mut r = Self::empty(n);
        for x in 0..n {
            for y in 0..n {
                r.insert(x, y);
            }
        }
        r
    }

    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut r = Self::empty(n);
        for (x, y) in pairs {
            for i in [x, y] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
            }
            r.insert(x, y);
        }
        Ok(r)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(n);
        for x in 0..n {
            for y in 0..n {
                if f(x, y) {
                    r.insert(x, y);
                }
            }
        }
        r
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn w(&self) -> usize {
        words_for(self.n)
    }

    #[inline]
    pub fn row(&self, x: usize) -> &[u64] {
        let w = self.w();
        &self.bits[x * w..(x + 1) * w]
    }

    #[inline]
    fn row_mut(&mut self, x: usize) -> &mut [u64] {
        let w = self.w();
        &mut self.bits[x * w..(x + 1) * w]
    }

    /// Raw words, row-major. Mostly useful for canonical orderings.
    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    #[inline]
    pub fn has(&self, x: usize, y: usize) -> bool {
        let w = self.w();
        self.bits[x * w + y / 64] >> (y % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: usize, y: usize) {
        let w = self.w();
        self.bits[x * w + y / 64] |= 1 << (y % 64);
    }

    #[inline]
    pub fn remove(&mut self, x: usize, y: usize) {
        let w = self.w();
        self.bits[x * w + y / 64] &= !(1 << (y % 64));
    }

    pub fn toggle(&mut self, x: usize, y: usize) {
        if self.has(x, y) {
            self.remove(x, y)
        } else {
            self.insert(x, y)
        }
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |x| self.successors(x).map(move |y| (x, y)))
    }

    /// `{y | (x, y) ∈ R}` in increasing order.
    pub fn successors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        bit_iter(self.row(x))
    }

    fn check_dim(&self, other: &FinRel) -> Result<()> {
        if self.n != other.n {
            Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    /// Relational composition in diagrammatic order:
    /// `(x, y) ∈ R∘S` iff some `z` has `(x, z) ∈ R` and `(z, y) ∈ S`.
    pub fn compose(&self, other: &FinRel) -> Result<FinRel> {
        self.check_dim(other)?;
        Ok(self.then(other))
    }

    /// [`compose`](Self::compose) without the dimension check.
    ///
    /// # Panics
    /// If the carriers differ in size.
    pub fn then(&self, other: &FinRel) -> FinRel {
        assert_eq!(self.n, other.n, "composition of relations on different carriers");
        let mut out = FinRel::empty(self.n);
        let w = self.w();
        for x in 0..self.n {
            let dst = x * w;
            for z in self.successors(x) {
                let src = other.row(z);
                for (d, s) in out.bits[dst..dst + w].iter_mut().zip(src) {
                    *d |= s;
                }
            }
        }
        out
    }

    pub fn converse(&self) -> FinRel {
        let mut out = FinRel::empty(self.n);
        for (x, y) in self.pairs() {
            out.insert(y, x);
        }
        out
    }

    /// `U \ R`, defined only when `R ⊆ U`.
    pub fn complement_in(&self, ambient: &FinRel) -> Result<FinRel> {
        self.check_dim(ambient)?;
        if let Some((x, y)) = self.difference(ambient).pairs().next() {
            return Err(Error::NotContained(x, y));
        }
        Ok(ambient.difference(self))
    }

    fn zip(&self, other: &FinRel, f: impl Fn(u64, u64) -> u64) -> FinRel {
        assert_eq!(self.n, other.n, "set operation on relations over different carriers");
        FinRel {
            n: self.n,
            bits: self.bits.iter().zip(&other.bits).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn union(&self, other: &FinRel) -> FinRel {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &FinRel) -> FinRel {
        self.zip(other, |a, b| a & b)
    }

    /// `self \ other` (pairs of `self` not in `other`).
    pub fn difference(&self, other: &FinRel) -> FinRel {
        self.zip(other, |a, b| a & !b)
    }

    pub fn is_subset_of(&self, other: &FinRel) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & !b == 0)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &FinRel) -> bool {
        other.is_subset_of(self)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.has(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.converse()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.pairs().all(|(x, y)| x == y || !self.has(y, x))
    }

    pub fn is_transitive(&self) -> bool {
        self.then(self).is_subset_of(self)
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_reflexive() && self.is_antisymmetric() && self.is_transitive()
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    /// `R⁰ = id`, `Rᵏ⁺¹ = Rᵏ ∘ R`.
    pub fn power(&self, k: usize) -> FinRel {
        let mut out = FinRel::identity(self.n);
        for _ in 0..k {
            out = out.then(self);
        }
        out
    }

    /// Reflexive-transitive closure (Warshall, row-wise).
    pub fn reflexive_transitive_closure(&self) -> FinRel {
        let mut out = self.union(&FinRel::identity(self.n));
        let w = self.w();
        for k in 0..self.n {
            let rk: Vec<u64> = out.row(k).to_vec();
            for x in 0..self.n {
                if out.has(x, k) {
                    let row = out.row_mut(x);
                    for i in 0..w {
                        row[i] |= rk[i];
                    }
                }
            }
        }
        out
    }

    /// `γ ∘ R`: row `x` of the result is row `γ(x)` of `R`.
    pub fn map_left(&self, gamma: &Endomap) -> FinRel {
        assert_eq!(self.n, gamma.n());
        let mut out = FinRel::empty(self.n);
        let w = self.w();
        for x in 0..self.n {
            let g = gamma.apply(x);
            out.bits[x * w..(x + 1) * w].copy_from_slice(self.row(g));
        }
        out
    }

    /// `R ∘ γ`: row `x` of the result is the γ-image of row `x` of `R`.
    pub fn map_right(&self, gamma: &Endomap) -> FinRel {
        assert_eq!(self.n, gamma.n());
        let mut out = FinRel::empty(self.n);
        for (x, z) in self.pairs() {
            out.insert(x, gamma.apply(z));
        }
        out
    }

    /// The sub-relation on the listed elements, re-indexed `0..idx.len()`.
    pub fn restrict(&self, idx: &[usize]) -> FinRel {
        FinRel::from_fn(idx.len(), |i, j| self.has(idx[i], idx[j]))
    }

    /// Relabel through an injection `0..n → 0..m`.
    pub fn embed(&self, m: usize, f: &[usize]) -> FinRel {
        let mut out = FinRel::empty(m);
        for (x, y) in self.pairs() {
            out.insert(f[x], f[y]);
        }
        out
    }

    /// Writes the pairs using `labels` for element names.
    pub fn display_with<'a>(&'a self, labels: &'a [String]) -> impl fmt::Display + 'a {
        Labelled { rel: self, labels }
    }
}

/// Composition of a map graph with a relation on the chosen side.
pub fn graph_compose_map(gamma: &Endomap, r: &FinRel, side: Side) -> Result<FinRel> {
    if gamma.n() != r.n() {
        return Err(Error::DimensionMismatch {
            left: gamma.n(),
            right: r.n(),
        });
    }
    Ok(match side {
        Side::Left => r.map_left(gamma),
        Side::Right => r.map_right(gamma),
    })
}

pub(crate) fn bit_iter(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            }
        })
    })
}

impl fmt::Debug for FinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinRel[{}]{}", self.n, self)
    }
}

impl fmt::Display for FinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (x, y)) in self.pairs().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({x},{y})")?;
        }
        f.write_str("}")
    }
}

struct Labelled<'a> {
    rel: &'a FinRel,
    labels: &'a [String],
}

impl fmt::Display for Labelled<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |i: usize| -> String {
            self.labels.get(i).cloned().unwrap_or_else(|| i.to_string())
        };
        f.write_str("{")?;
        for (k, (x, y)) in self.rel.pairs().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", name(x), name(y))?;
        }
        f.write_str("}")
    }
}
