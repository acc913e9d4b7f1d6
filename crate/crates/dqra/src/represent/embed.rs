use std::collections::{BTreeMap, HashMap, VecDeque};

use super::Embedding;
use crate::algebra::AbstractDqRA;
use crate::dq::ConcreteDqRA;
use crate::error::{Error, Result};
use crate::relcore::FinRel;

/// A partial map `A → Dq(E)` kept closed under all operations: assigning
/// one element forces the images of everything it combines into.
#[derive(Clone)]
struct Partial<'a> {
    a: &'a AbstractDqRA,
    b: &'a ConcreteDqRA,
    h: Vec<Option<FinRel>>,
    rev: HashMap<FinRel, usize>,
    assigned: Vec<usize>,
    /// The operation and arguments that first forced each image.
    origin: Vec<Option<(&'static str, Vec<usize>)>>,
}

struct Pending {
    x: usize,
    r: FinRel,
    op: &'static str,
    args: Vec<usize>,
}

impl<'a> Partial<'a> {
    fn new(a: &'a AbstractDqRA, b: &'a ConcreteDqRA) -> Self {
        Partial {
            a,
            b,
            h: vec![None; a.size()],
            rev: HashMap::new(),
            assigned: Vec::new(),
            origin: vec![None; a.size()],
        }
    }

    fn show(&self, r: &FinRel) -> String {
        r.display_with(self.b.poset().labels()).to_string()
    }

    fn args(&self, v: &[usize]) -> String {
        v.iter().map(|&x| self.a.label(x)).collect::<Vec<_>>().join(", ")
    }

    /// Cheap pre-check for candidate `r` at `x`: unused and order-compatible
    /// with every assigned element.
    fn admissible(&self, x: usize, r: &FinRel) -> bool {
        !self.rev.contains_key(r)
            && self.assigned.iter().all(|&y| {
                let s = self.h[y].as_ref().unwrap();
                self.a.leq(x, y) == r.is_subset_of(s) && self.a.leq(y, x) == s.is_subset_of(r)
            })
    }

    fn assign(&mut self, x: usize, r: FinRel, op: &'static str, args: Vec<usize>) -> Result<()> {
        let mut work = VecDeque::from([Pending { x, r, op, args }]);
        while let Some(Pending { x, r, op, args }) = work.pop_front() {
            if let Some(cur) = &self.h[x] {
                if *cur != r {
                    // blame the operation rather than the seed that contradicts it
                    let (op, args, forced, given) = match &self.origin[x] {
                        Some((o, a)) if matches!(op, "assignment" | "search" | "0" | "1") => (*o, a.clone(), cur, &r),
                        _ => (op, args, &r, cur),
                    };
                    return Err(Error::Preservation {
                        op,
                        args: self.args(&args),
                        detail: format!(
                            "forces {} ↦ {} but it is {}",
                            self.a.label(x),
                            self.show(forced),
                            self.show(given)
                        ),
                    });
                }
                continue;
            }
            if let Some(&y) = self.rev.get(&r) {
                return Err(Error::NotInjective(self.a.label(y).into(), self.a.label(x).into()));
            }
            for &y in &self.assigned {
                let s = self.h[y].as_ref().unwrap();
                if self.a.leq(x, y) != r.is_subset_of(s) || self.a.leq(y, x) != s.is_subset_of(&r) {
                    return Err(Error::Preservation {
                        op: "≤",
                        args: self.args(&[x, y]),
                        detail: format!("order between {} and {} is not reflected", self.show(&r), self.show(s)),
                    });
                }
            }
            let (a, b) = (self.a, self.b);
            work.push_back(Pending { x: a.tilde(x), r: b.tilde_raw(&r), op: "∼", args: vec![x] });
            work.push_back(Pending { x: a.minus(x), r: b.minus_raw(&r), op: "−", args: vec![x] });
            work.push_back(Pending { x: a.prime(x), r: b.prime_raw(&r), op: "′", args: vec![x] });
            self.h[x] = Some(r.clone());
            self.origin[x] = Some((op, args));
            self.rev.insert(r.clone(), x);
            self.assigned.push(x);
            for &y in &self.assigned {
                let s = self.h[y].as_ref().unwrap();
                for (p, q, rp, rq) in [(x, y, &r, s), (y, x, s, &r)] {
                    work.push_back(Pending { x: a.meet(p, q), r: rp.intersection(rq), op: "∧", args: vec![p, q] });
                    work.push_back(Pending { x: a.join(p, q), r: rp.union(rq), op: "∨", args: vec![p, q] });
                    work.push_back(Pending { x: a.mult(p, q), r: rp.then(rq), op: "·", args: vec![p, q] });
                }
            }
        }
        Ok(())
    }

    fn into_embedding(self) -> Embedding {
        Embedding {
            source: self.a.clone(),
            target: self.b.clone(),
            map: self.h.into_iter().map(|r| r.expect("total")).collect(),
        }
    }
}

/// Seed with `1 ↦ ≤`, then the assignment (by label, in name order), then
/// `0 ↦ zero`, propagating after each; the closure must reach every element.
pub fn verify_assignment(
    a: &AbstractDqRA,
    b: &ConcreteDqRA,
    assignment: &BTreeMap<String, FinRel>,
) -> Result<Embedding> {
    let mut p = Partial::new(a, b);
    p.assign(a.one(), b.one().clone(), "1", vec![])?;
    for (name, r) in assignment {
        let x = a.element(name).ok_or_else(|| Error::UnknownElement(name.clone()))?;
        if !b.in_carrier(r) {
            return Err(Error::NotInCarrier(format!("{name} ↦ {}", p.show(r))));
        }
        p.assign(x, r.clone(), "assignment", vec![x])?;
    }
    p.assign(a.zero(), b.zero().clone(), "0", vec![])?;
    let missing: Vec<&str> = (0..a.size()).filter(|&x| p.h[x].is_none()).map(|x| a.label(x)).collect();
    if !missing.is_empty() {
        return Err(Error::NotGenerated(missing.join(", ")));
    }
    let e = p.into_embedding();
    e.verify()?;
    Ok(e)
}

/// First embedding `A → B` in canonical order, or `None` after exhausting the
/// search space.
pub fn search_embedding(a: &AbstractDqRA, b: &ConcreteDqRA) -> Option<Embedding> {
    search_embedding_counted(a, b).0
}

/// As [`search_embedding`], also returning the number of candidate images
/// tried.
///
/// Variables are the constants (forced), then join-irreducibles, then the
/// rest; each candidate is propagated through every operation before
/// descending.
pub fn search_embedding_counted(a: &AbstractDqRA, b: &ConcreteDqRA) -> (Option<Embedding>, usize) {
    let mut nodes = 0;
    if a.size() > b.len() {
        return (None, nodes);
    }
    let mut p = Partial::new(a, b);
    if p.assign(a.one(), b.one().clone(), "1", vec![]).is_err() || p.assign(a.zero(), b.zero().clone(), "0", vec![]).is_err() {
        return (None, nodes);
    }
    let js = a.join_irreducibles();
    let mut order: Vec<usize> = js.clone();
    order.extend((0..a.size()).filter(|x| !js.contains(x)));

    fn rec(p: Partial<'_>, order: &[usize], nodes: &mut usize) -> Option<Embedding> {
        let Some(&x) = order.iter().find(|&&x| p.h[x].is_none()) else {
            let e = p.into_embedding();
            return e.verify().is_ok().then_some(e);
        };
        for r in p.b.carrier() {
            if !p.admissible(x, r) {
                continue;
            }
            *nodes += 1;
            let mut q = p.clone();
            if q.assign(x, r.clone(), "search", vec![x]).is_ok() {
                if let Some(e) = rec(q, order, nodes) {
                    return Some(e);
                }
            }
        }
        None
    }

    let found = rec(p, &order, &mut nodes);
    (found, nodes)
}
