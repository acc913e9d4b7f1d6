//! Finite binary relations, posets and self-maps.

mod endomap;
mod finrel;
mod poset;

pub use endomap::{dual_order_automorphisms, map_order, map_power, order_automorphisms, Endomap};
pub(crate) use endomap::order_bijections;
pub use finrel::{graph_compose_map, FinRel, Side};
pub(crate) use finrel::bit_iter;
pub use poset::{hasse_covers, Poset, PosetJson};
pub(crate) use poset::default_labels;

/// `R ∘ S` with a dimension check.
pub fn compose(r: &FinRel, s: &FinRel) -> crate::Result<FinRel> {
    r.compose(s)
}

pub fn converse(r: &FinRel) -> FinRel {
    r.converse()
}

pub fn complement_in(r: &FinRel, ambient: &FinRel) -> crate::Result<FinRel> {
    r.complement_in(ambient)
}

pub fn is_partial_order(r: &FinRel) -> bool {
    r.is_partial_order()
}

pub fn is_equivalence(r: &FinRel) -> bool {
    r.is_equivalence()
}

/// `S ⊆ R`.
pub fn contains(r: &FinRel, s: &FinRel) -> bool {
    r.contains(s)
}
