//! The twisted order on the pairs of an equivalence relation and its up-set
//! lattice.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relcore::{FinRel, Poset};

pub const DEFAULT_CAP: usize = 1_000_000;

/// `(E, ⪯)` with `(u,v) ⪯ (x,y)` iff `x ≤ u` and `v ≤ y`.
#[derive(Clone, Debug)]
pub struct TwistedOrder {
    base: Poset,
    e: FinRel,
    points: Vec<(usize, usize)>,
    prec: FinRel,
}

/// JSON form of an equivalence: `"full"` or `{"blocks": [[0,1],[2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EquivJson {
    Keyword(String),
    Blocks { blocks: Vec<Vec<usize>> },
}

impl EquivJson {
    pub fn to_relation(&self, n: usize) -> Result<FinRel> {
        match self {
            EquivJson::Keyword(k) if k == "full" => Ok(FinRel::full(n)),
            EquivJson::Keyword(k) => Err(Error::Malformed(format!("unknown E keyword {k:?}"))),
            EquivJson::Blocks { blocks } => equivalence_from_blocks(n, blocks),
        }
    }

    pub fn from_relation(e: &FinRel) -> Self {
        if *e == FinRel::full(e.n()) {
            EquivJson::Keyword("full".into())
        } else {
            EquivJson::Blocks { blocks: blocks_of(e) }
        }
    }
}

/// The equivalence whose classes are `blocks`; the blocks must partition
/// `0..n`.
pub fn equivalence_from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<FinRel> {
    let mut seen = vec![false; n];
    let mut e = FinRel::empty(n);
    for b in blocks {
        for &x in b {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x, n });
            }
            if seen[x] {
                return Err(Error::NotEquivalence(format!("element {x} occurs in two blocks")));
            }
            seen[x] = true;
            for &y in b {
                e.insert(x, y);
            }
        }
    }
    if let Some(x) = seen.iter().position(|s| !s) {
        return Err(Error::NotEquivalence(format!("element {x} is in no block")));
    }
    Ok(e)
}

/// Equivalence classes, each sorted, ordered by least member.
pub fn blocks_of(e: &FinRel) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut done = vec![false; e.n()];
    for x in 0..e.n() {
        if done[x] {
            continue;
        }
        let b: Vec<usize> = e.successors(x).collect();
        for &y in &b {
            done[y] = true;
        }
        out.push(b);
    }
    out
}

pub(crate) fn validate_equivalence(p: &Poset, e: &FinRel) -> Result<()> {
    if e.n() != p.n() {
        return Err(Error::DimensionMismatch {
            left: e.n(),
            right: p.n(),
        });
    }
    if let Some(x) = (0..e.n()).find(|&x| !e.has(x, x)) {
        return Err(Error::NotEquivalence(format!("missing reflexive pair ({x},{x})")));
    }
    if let Some((x, y)) = e.pairs().find(|&(x, y)| !e.has(y, x)) {
        return Err(Error::NotEquivalence(format!("({x},{y}) present but ({y},{x}) missing")));
    }
    if let Some((x, y)) = e.then(e).difference(e).pairs().next() {
        return Err(Error::NotEquivalence(format!("transitivity requires ({x},{y})")));
    }
    if let Some((x, y)) = p.leq_rel().difference(e).pairs().next() {
        return Err(Error::OrderNotInsideE(x, y));
    }
    Ok(())
}

/// Build `(E, ⪯)`.
pub fn twisted_order(p: &Poset, e: &FinRel) -> Result<TwistedOrder> {
    validate_equivalence(p, e)?;
    let points: Vec<(usize, usize)> = e.pairs().collect();
    let prec = FinRel::from_fn(points.len(), |i, j| {
        let (u, v) = points[i];
        let (x, y) = points[j];
        p.leq(x, u) && p.leq(v, y)
    });
    Ok(TwistedOrder {
        base: p.clone(),
        e: e.clone(),
        points,
        prec,
    })
}

impl TwistedOrder {
    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn e(&self) -> &FinRel {
        &self.e
    }

    pub fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    /// `⪯` over point indices.
    pub fn prec(&self) -> &FinRel {
        &self.prec
    }

    pub fn point_labels(&self) -> Vec<String> {
        let l = self.base.labels();
        self.points.iter().map(|&(x, y)| format!("({},{})", l[x], l[y])).collect()
    }

    fn check_inside(&self, r: &FinRel) -> Result<()> {
        if r.n() != self.e.n() {
            return Err(Error::DimensionMismatch {
                left: r.n(),
                right: self.e.n(),
            });
        }
        match r.difference(&self.e).pairs().next() {
            Some((x, y)) => Err(Error::NotContained(x, y)),
            None => Ok(()),
        }
    }

    /// Up-closure is `≤ ∘ R ∘ ≤`: `(x,y)` lies above `(u,v)` exactly when
    /// `x ≤ u` and `v ≤ y`, and such a pair is automatically in `E`.
    pub fn is_upset(&self, r: &FinRel) -> Result<bool> {
        self.check_inside(r)?;
        Ok(self.close(r).is_subset_of(r))
    }

    pub fn up_closure(&self, seed: &FinRel) -> Result<FinRel> {
        self.check_inside(seed)?;
        Ok(self.close(seed))
    }

    fn close(&self, r: &FinRel) -> FinRel {
        let leq = self.base.leq_rel();
        leq.then(r).then(leq)
    }

    pub fn is_downset(&self, r: &FinRel) -> Result<bool> {
        self.check_inside(r)?;
        let geq = self.base.leq_rel().converse();
        Ok(geq.then(r).then(&geq).is_subset_of(r))
    }
}

/// The up-sets of a twisted order, materialised and indexed.
#[derive(Clone, Debug)]
pub struct UpSetLattice {
    order: TwistedOrder,
    elements: Vec<FinRel>,
    index: HashMap<FinRel, usize>,
    cap: usize,
}

/// Enumerate `Up(E, ⪯)`, sorted by cardinality then bit pattern.
///
/// Points are visited in reverse linear extension of `⪯`, so by the time a
/// point is decided all of its strict successors have been; a point may be
/// included iff all of them are. Every branch completes, so the walk is linear
/// in the output.
pub fn enumerate_upsets(t: TwistedOrder, cap: usize) -> Result<UpSetLattice> {
    let m = t.points.len();
    if m > 128 {
        return Err(Error::TooManyPoints(m));
    }
    let succ: Vec<u128> = (0..m)
        .map(|i| {
            t.prec
                .successors(i)
                .filter(|&j| j != i)
                .fold(0u128, |acc, j| acc | 1u128 << j)
        })
        .collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (succ[i].count_ones(), i));

    let mut masks: Vec<u128> = Vec::new();
    let mut stack: Vec<(usize, u128)> = vec![(0, 0)];
    while let Some((k, mask)) = stack.pop() {
        if k == m {
            masks.push(mask);
            if masks.len() > cap {
                return Err(Error::CarrierCapExceeded {
                    found: masks.len(),
                    cap,
                });
            }
            continue;
        }
        let p = order[k];
        if succ[p] & !mask == 0 {
            stack.push((k + 1, mask | 1u128 << p));
        }
        stack.push((k + 1, mask));
    }

    let n = t.base.n();
    let mut elements: Vec<FinRel> = masks
        .into_iter()
        .map(|mask| {
            let mut r = FinRel::empty(n);
            let mut w = mask;
            while w != 0 {
                let i = w.trailing_zeros() as usize;
                w &= w - 1;
                let (x, y) = t.points[i];
                r.insert(x, y);
            }
            r
        })
        .collect();
    elements.sort_by(|a, b| (a.len(), a.words()).cmp(&(b.len(), b.words())));
    let index = elements.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
    Ok(UpSetLattice {
        order: t,
        elements,
        index,
        cap,
    })
}

impl UpSetLattice {
    pub fn order(&self) -> &TwistedOrder {
        &self.order
    }

    pub fn elements(&self) -> &[FinRel] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn get(&self, i: usize) -> &FinRel {
        &self.elements[i]
    }

    pub fn index_of(&self, r: &FinRel) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn contains(&self, r: &FinRel) -> bool {
        self.index.contains_key(r)
    }

    /// Inclusion.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.elements[i].is_subset_of(&self.elements[j])
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].union(&self.elements[j])]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].intersection(&self.elements[j])]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }
}
