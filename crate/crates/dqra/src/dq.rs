//! The concrete algebra `Dq(E)` on the up-sets of a twisted order.

use std::sync::Arc;

use crate::algebra::AbstractDqRA;
use crate::error::{Error, Result};
use crate::relcore::{Endomap, FinRel, Poset};
use crate::twisted::{enumerate_upsets, twisted_order, UpSetLattice};

/// `Dq(E) = ⟨Up(E), ∩, ∪, ∘, ≤, 0, ∼, −, ′⟩` for a validated `(≤, E, α, β)`.
///
/// The up-set lattice sits behind an `Arc`, so algebras that differ only in
/// `α`/`β` share it and cloning is cheap.
#[derive(Clone, Debug)]
pub struct ConcreteDqRA {
    lattice: Arc<UpSetLattice>,
    alpha: Endomap,
    alpha_inv: Endomap,
    beta: Endomap,
    one: FinRel,
    zero: FinRel,
}

/// Check the hypotheses on `α` and `β` in a fixed order, reporting the first
/// failure by name.
pub fn validate_maps(p: &Poset, e: &FinRel, alpha: &Endomap, beta: &Endomap) -> Result<()> {
    let n = p.n();
    for m in [alpha, beta] {
        if m.n() != n {
            return Err(Error::DimensionMismatch { left: m.n(), right: n });
        }
    }
    if !alpha.is_order_automorphism(p) {
        let why = if alpha.is_bijective() {
            "does not preserve and reflect the order"
        } else {
            "is not a bijection"
        };
        return Err(Error::NotOrderAutomorphism(format!("{alpha} {why}")));
    }
    if !beta.is_dual_order_automorphism(p) {
        let why = if beta.is_bijective() {
            "does not reverse the order"
        } else {
            "is not a bijection"
        };
        return Err(Error::BetaNotDualAutomorphism(format!("{beta} {why}")));
    }
    for (name, m) in [("alpha", alpha), ("beta", beta)] {
        if let Some(x) = m.escapes(e) {
            return Err(Error::GammaNotInsideE {
                map: name,
                x,
                image: m.apply(x),
            });
        }
    }
    for x in 0..n {
        let found = alpha.apply(beta.apply(alpha.apply(x)));
        if found != beta.apply(x) {
            return Err(Error::AbaConditionFailed {
                x,
                found,
                expected: beta.apply(x),
            });
        }
    }
    if let Some(x) = (0..n).find(|&x| beta.apply(beta.apply(x)) != x) {
        return Err(Error::BetaNotSelfInverse {
            x,
            image: beta.apply(beta.apply(x)),
        });
    }
    Ok(())
}

/// Validate and construct; the carrier is enumerated up to `cap` elements.
pub fn build(p: &Poset, e: &FinRel, alpha: &Endomap, beta: &Endomap, cap: usize) -> Result<ConcreteDqRA> {
    let t = twisted_order(p, e)?;
    validate_maps(p, e, alpha, beta)?;
    let lattice = enumerate_upsets(t, cap)?;
    ConcreteDqRA::from_lattice(Arc::new(lattice), alpha.clone(), beta.clone())
}

impl ConcreteDqRA {
    /// Reuse an already enumerated lattice.
    pub fn from_lattice(lattice: Arc<UpSetLattice>, alpha: Endomap, beta: Endomap) -> Result<Self> {
        let t = lattice.order();
        validate_maps(t.base(), t.e(), &alpha, &beta)?;
        let one = t.base().leq_rel().clone();
        let nc = t.e().difference(&one).converse();
        let zero = nc.map_left(&alpha);
        if zero != nc.map_right(&alpha) {
            // cannot happen for an order automorphism inside E
            return Err(Error::Domain("α∘(≤ᶜ)⌣ differs from (≤ᶜ)⌣∘α".into()));
        }
        let alpha_inv = alpha.inverse()?;
        Ok(ConcreteDqRA {
            lattice,
            alpha,
            alpha_inv,
            beta,
            one,
            zero,
        })
    }

    pub fn lattice(&self) -> &UpSetLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<UpSetLattice> {
        &self.lattice
    }

    pub fn poset(&self) -> &Poset {
        self.lattice.order().base()
    }

    pub fn e(&self) -> &FinRel {
        self.lattice.order().e()
    }

    pub fn alpha(&self) -> &Endomap {
        &self.alpha
    }

    pub fn beta(&self) -> &Endomap {
        &self.beta
    }

    pub fn one(&self) -> &FinRel {
        &self.one
    }

    pub fn zero(&self) -> &FinRel {
        &self.zero
    }

    pub fn carrier(&self) -> &[FinRel] {
        self.lattice.elements()
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn index_of(&self, r: &FinRel) -> Option<usize> {
        self.lattice.index_of(r)
    }

    pub fn in_carrier(&self, r: &FinRel) -> bool {
        self.lattice.contains(r)
    }

    fn member(&self, r: &FinRel) -> Result<()> {
        if self.in_carrier(r) {
            Ok(())
        } else {
            Err(Error::NotInCarrier(r.display_with(self.poset().labels()).to_string()))
        }
    }

    /// Complement relative to `E`.
    #[inline]
    pub fn comp(&self, r: &FinRel) -> FinRel {
        self.e().difference(r)
    }

    // Unchecked closed forms: callers guarantee carrier membership.

    pub(crate) fn tilde_raw(&self, r: &FinRel) -> FinRel {
        self.comp(r).converse().map_right(&self.alpha)
    }

    pub(crate) fn minus_raw(&self, r: &FinRel) -> FinRel {
        self.comp(r).converse().map_left(&self.alpha)
    }

    pub(crate) fn prime_raw(&self, r: &FinRel) -> FinRel {
        self.comp(r).map_left(&self.alpha.then(&self.beta)).map_right(&self.beta)
    }

    pub(crate) fn residual_left_raw(&self, r: &FinRel, s: &FinRel) -> FinRel {
        self.comp(&r.converse().then(&self.comp(s)))
    }

    pub(crate) fn residual_right_raw(&self, r: &FinRel, s: &FinRel) -> FinRel {
        self.comp(&self.comp(r).then(&s.converse()))
    }

    pub(crate) fn tilde_n_raw(&self, r: &FinRel, n: usize) -> FinRel {
        let k = n / 2;
        if n % 2 == 1 {
            self.comp(r)
                .converse()
                .map_left(&self.alpha_inv.power(k))
                .map_right(&self.alpha.power(k + 1))
        } else {
            r.map_left(&self.alpha_inv.power(k)).map_right(&self.alpha.power(k))
        }
    }

    pub(crate) fn minus_n_raw(&self, r: &FinRel, n: usize) -> FinRel {
        let k = n / 2;
        if n % 2 == 1 {
            self.comp(r)
                .converse()
                .map_left(&self.alpha.power(k + 1))
                .map_right(&self.alpha_inv.power(k))
        } else {
            r.map_left(&self.alpha.power(k)).map_right(&self.alpha_inv.power(k))
        }
    }

    pub(crate) fn plus_raw(&self, r: &FinRel, s: &FinRel) -> FinRel {
        self.tilde_raw(&self.minus_raw(s).then(&self.minus_raw(r)))
    }

    /// `R ∘ S`.
    pub fn fuse(&self, r: &FinRel, s: &FinRel) -> Result<FinRel> {
        self.member(r)?;
        self.member(s)?;
        Ok(r.then(s))
    }

    /// `R\S = (R⌣ ∘ Sᶜ)ᶜ`, the largest `T` with `R∘T ⊆ S`.
    pub fn residual_left(&self, r: &FinRel, s: &FinRel) -> Result<FinRel> {
        self.member(r)?;
        self.member(s)?;
        Ok(self.residual_left_raw(r, s))
    }

    /// `R/S = (Rᶜ ∘ S⌣)ᶜ`, the largest `T` with `T∘S ⊆ R`.
    pub fn residual_right(&self, r: &FinRel, s: &FinRel) -> Result<FinRel> {
        self.member(r)?;
        self.member(s)?;
        Ok(self.residual_right_raw(r, s))
    }

    /// `∼R = (Rᶜ)⌣ ∘ α`.
    pub fn tilde(&self, r: &FinRel) -> Result<FinRel> {
        self.member(r)?;
        Ok(self.tilde_raw(r))
    }

    /// `−R = α ∘ (Rᶜ)⌣`.
    pub fn minus(&self, r: &FinRel) -> Result<FinRel> {
        self.member(r)?;
        Ok(self.minus_raw(r))
    }

    /// `∼ⁿR` in closed form.
    pub fn tilde_n(&self, r: &FinRel, n: usize) -> Result<FinRel> {
        self.member(r)?;
        Ok(self.tilde_n_raw(r, n))
    }

    /// `−ⁿR` in closed form.
    pub fn minus_n(&self, r: &FinRel, n: usize) -> Result<FinRel> {
        self.member(r)?;
        Ok(self.minus_n_raw(r, n))
    }

    /// `R′ = α ∘ β ∘ Rᶜ ∘ β`.
    pub fn prime(&self, r: &FinRel) -> Result<FinRel> {
        self.member(r)?;
        Ok(self.prime_raw(r))
    }

    /// `R + S = ∼(−S ∘ −R)`.
    pub fn plus(&self, r: &FinRel, s: &FinRel) -> Result<FinRel> {
        self.member(r)?;
        self.member(s)?;
        Ok(self.plus_raw(r, s))
    }

    /// `∼R` computed as the join of every carrier `T` with `R∘T ⊆ 0`; an
    /// oracle for the closed form.
    pub fn tilde_by_residual(&self, r: &FinRel) -> FinRel {
        self.join_where(|t| r.then(t).is_subset_of(&self.zero))
    }

    /// `−R` as the join of every carrier `T` with `T∘R ⊆ 0`.
    pub fn minus_by_residual(&self, r: &FinRel) -> FinRel {
        self.join_where(|t| t.then(r).is_subset_of(&self.zero))
    }

    fn join_where(&self, mut keep: impl FnMut(&FinRel) -> bool) -> FinRel {
        let mut acc = FinRel::empty(self.e().n());
        for t in self.carrier() {
            if keep(t) {
                acc = acc.union(t);
            }
        }
        acc
    }

    /// Least `n ≥ 1` with `∼ⁿ = −ⁿ` on the whole carrier.
    pub fn periodicity(&self) -> usize {
        let mut n = 1;
        loop {
            if self.carrier().iter().all(|r| self.tilde_n_raw(r, n) == self.minus_n_raw(r, n)) {
                return n;
            }
            n += 1;
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.periodicity() == 1
    }

    /// Operation tables over the canonical carrier indexing.
    pub fn to_abstract(&self) -> AbstractDqRA {
        let lat = &self.lattice;
        let m = lat.len();
        let idx = |r: &FinRel| lat.index_of(r).expect("closed-form result outside the carrier");
        let elems = lat.elements();
        let mut leq = FinRel::empty(m);
        let mut mult = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                if elems[i].is_subset_of(&elems[j]) {
                    leq.insert(i, j);
                }
                mult[i * m + j] = idx(&elems[i].then(&elems[j]));
            }
        }
        let tilde = elems.iter().map(|r| idx(&self.tilde_raw(r))).collect();
        let minus = elems.iter().map(|r| idx(&self.minus_raw(r))).collect();
        let prime = elems.iter().map(|r| idx(&self.prime_raw(r))).collect();
        let labels: Vec<String> = elems
            .iter()
            .map(|r| r.display_with(self.poset().labels()).to_string())
            .collect();
        AbstractDqRA::from_parts(
            "Dq".to_string(),
            labels,
            leq,
            mult,
            tilde,
            minus,
            prime,
            idx(&self.one),
            idx(&self.zero),
        )
        .expect("an up-set lattice is a lattice")
        .with_provenance("computed-from-relations")
    }

    /// One-line summary such as `carrier=6 zero={(x,y)} cyclic=true period=1`.
    pub fn stats_line(&self) -> String {
        let p = self.periodicity();
        format!(
            "carrier={} zero={} cyclic={} period={}",
            self.len(),
            self.zero.display_with(self.poset().labels()),
            p == 1,
            p
        )
    }
}
