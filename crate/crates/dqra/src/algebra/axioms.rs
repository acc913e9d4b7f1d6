use std::fmt;

use serde::Serialize;

use super::AbstractDqRA;
use crate::relcore::{bit_iter, FinRel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AxiomGroup {
    Lattice,
    Distributivity,
    Monoid,
    Residuation,
    In,
    Dm,
    Di,
    Dp,
    PrimeInvolution,
}

impl AxiomGroup {
    pub const ALL: [AxiomGroup; 9] = [
        AxiomGroup::Lattice,
        AxiomGroup::Distributivity,
        AxiomGroup::Monoid,
        AxiomGroup::Residuation,
        AxiomGroup::In,
        AxiomGroup::Dm,
        AxiomGroup::Di,
        AxiomGroup::Dp,
        AxiomGroup::PrimeInvolution,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomGroup::Lattice => "lattice",
            AxiomGroup::Distributivity => "distributivity",
            AxiomGroup::Monoid => "monoid",
            AxiomGroup::Residuation => "residuation",
            AxiomGroup::In => "In",
            AxiomGroup::Dm => "Dm",
            AxiomGroup::Di => "Di",
            AxiomGroup::Dp => "Dp",
            AxiomGroup::PrimeInvolution => "prime-involution",
        }
    }
}

impl fmt::Display for AxiomGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A counterexample: the quantified elements plus a labelled explanation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub elements: Vec<usize>,
    pub detail: String,
}

impl Witness {
    pub fn render(&self, a: &AbstractDqRA) -> String {
        let names: Vec<&str> = self.elements.iter().map(|&e| a.label(e)).collect();
        format!("({}): {}", names.join(", "), self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupOutcome {
    pub group: AxiomGroup,
    pub witness: Option<Witness>,
}

impl GroupOutcome {
    pub fn pass(&self) -> bool {
        self.witness.is_none()
    }
}

/// Pass/fail per axiom group, with the first counterexample found for each
/// failing group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    outcomes: Vec<GroupOutcome>,
}

impl AxiomReport {
    pub fn outcomes(&self) -> &[GroupOutcome] {
        &self.outcomes
    }

    pub fn passes(&self, g: AxiomGroup) -> bool {
        self.witness(g).is_none()
    }

    pub fn witness(&self, g: AxiomGroup) -> Option<&Witness> {
        self.outcomes.iter().find(|o| o.group == g).and_then(|o| o.witness.as_ref())
    }

    /// Every group holds: a distributive quasi relation algebra.
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(GroupOutcome::pass)
    }

    /// Everything except distributivity: a quasi relation algebra.
    pub fn is_qra(&self) -> bool {
        self.outcomes
            .iter()
            .all(|o| o.pass() || o.group == AxiomGroup::Distributivity)
    }

    pub fn failed(&self) -> impl Iterator<Item = &GroupOutcome> {
        self.outcomes.iter().filter(|o| !o.pass())
    }

    pub fn render(&self, a: &AbstractDqRA) -> String {
        let mut s = String::new();
        for o in &self.outcomes {
            match &o.witness {
                None => s.push_str(&format!("{}: pass\n", o.group)),
                Some(w) => s.push_str(&format!("{} fails at {}\n", o.group, w.render(a))),
            }
        }
        s
    }
}

struct Ctx<'a> {
    a: &'a AbstractDqRA,
    n: usize,
    geq: FinRel,
    /// `J(x)`: join-irreducibles below `x`, as a bitset row and as a list.
    jbits: FinRel,
    jlist: Vec<Vec<usize>>,
}

fn rows_eq(a: &[u64], b: &[u64]) -> bool {
    a == b
}

impl<'a> Ctx<'a> {
    fn new(a: &'a AbstractDqRA) -> Self {
        let n = a.size();
        let geq = a.leq_rel().converse();
        let js = a.join_irreducibles();
        let mut jset = FinRel::empty(n);
        for &j in &js {
            for x in a.leq_rel().successors(j) {
                jset.insert(x, j);
            }
        }
        let jlist = (0..n).map(|x| jset.successors(x).collect()).collect();
        Ctx {
            a,
            n,
            geq,
            jbits: jset,
            jlist,
        }
    }

    fn l(&self, x: usize) -> &str {
        self.a.label(x)
    }

    fn lattice(&self) -> Option<Witness> {
        let a = self.a;
        let leq = a.leq_rel();
        for x in 0..self.n {
            for y in x..self.n {
                let ub: Vec<u64> = leq.row(x).iter().zip(leq.row(y)).map(|(p, q)| p & q).collect();
                if !rows_eq(&ub, leq.row(a.join(x, y))) {
                    return Some(Witness {
                        elements: vec![x, y],
                        detail: format!("{} is not the least upper bound", self.l(a.join(x, y))),
                    });
                }
                let lb: Vec<u64> = self.geq.row(x).iter().zip(self.geq.row(y)).map(|(p, q)| p & q).collect();
                if !rows_eq(&lb, self.geq.row(a.meet(x, y))) {
                    return Some(Witness {
                        elements: vec![x, y],
                        detail: format!("{} is not the greatest lower bound", self.l(a.meet(x, y))),
                    });
                }
            }
        }
        None
    }

    /// A finite lattice is distributive iff every join-irreducible is
    /// join-prime, i.e. `J(x ∨ y) = J(x) ∪ J(y)`.
    fn distributivity(&self) -> Option<Witness> {
        let a = self.a;
        for x in 0..self.n {
            for y in x + 1..self.n {
                let jv = self.jbits.row(a.join(x, y));
                let jx = self.jbits.row(x);
                let jy = self.jbits.row(y);
                let extra: Vec<u64> = jv.iter().zip(jx).zip(jy).map(|((v, p), q)| v & !(p | q)).collect();
                let first = bit_iter(&extra).next();
                if let Some(j) = first {
                    let rhs = a.join(a.meet(j, x), a.meet(j, y));
                    return Some(Witness {
                        elements: vec![j, x, y],
                        detail: format!(
                            "{j} ∧ ({x} ∨ {y}) = {} but ({j} ∧ {x}) ∨ ({j} ∧ {y}) = {}",
                            self.l(a.meet(j, a.join(x, y))),
                            self.l(rhs),
                            j = self.l(j),
                            x = self.l(x),
                            y = self.l(y)
                        ),
                    });
                }
            }
        }
        None
    }

    fn residuation_direct(&self) -> Option<Witness> {
        let a = self.a;
        let bot = a.bottom();
        for x in 0..self.n {
            for (p, q) in [(a.mult(x, bot), "x·⊥"), (a.mult(bot, x), "⊥·x")] {
                if p != bot {
                    return Some(Witness {
                        elements: vec![x],
                        detail: format!("{} = {} is not ⊥", q.replace('x', self.l(x)), self.l(p)),
                    });
                }
            }
        }
        for x in 0..self.n {
            for y in 0..self.n {
                for z in y + 1..self.n {
                    let yz = a.join(y, z);
                    let r = a.mult(x, yz);
                    let s = a.join(a.mult(x, y), a.mult(x, z));
                    if r != s {
                        return Some(Witness {
                            elements: vec![x, y, z],
                            detail: format!(
                                "{x}·({y} ∨ {z}) = {} but {x}·{y} ∨ {x}·{z} = {}",
                                self.l(r),
                                self.l(s),
                                x = self.l(x),
                                y = self.l(y),
                                z = self.l(z)
                            ),
                        });
                    }
                    let r = a.mult(yz, x);
                    let s = a.join(a.mult(y, x), a.mult(z, x));
                    if r != s {
                        return Some(Witness {
                            elements: vec![x, y, z],
                            detail: format!(
                                "({y} ∨ {z})·{x} = {} but {y}·{x} ∨ {z}·{x} = {}",
                                self.l(r),
                                self.l(s),
                                x = self.l(x),
                                y = self.l(y),
                                z = self.l(z)
                            ),
                        });
                    }
                }
            }
        }
        None
    }

    /// With a distributive lattice, `·` preserves joins (and ⊥) in each
    /// argument iff `x·y = ⋁{j·k | j ∈ J(x), k ∈ J(y)}` for all `x, y`.
    fn residuation(&self, distributive: bool) -> Option<Witness> {
        if distributive {
            let a = self.a;
            let ok = (0..self.n).all(|x| {
                (0..self.n).all(|y| {
                    let v = self.jlist[x]
                        .iter()
                        .flat_map(|&j| self.jlist[y].iter().map(move |&k| (j, k)))
                        .fold(a.bottom(), |acc, (j, k)| a.join(acc, a.mult(j, k)));
                    v == a.mult(x, y)
                })
            });
            if ok {
                return None;
            }
        }
        self.residuation_direct()
    }

    fn monoid(&self, residuated: bool) -> Option<Witness> {
        let a = self.a;
        let one = a.one();
        for x in 0..self.n {
            if a.mult(one, x) != x || a.mult(x, one) != x {
                return Some(Witness {
                    elements: vec![x],
                    detail: format!("1 is not a unit: 1·{x} = {}, {x}·1 = {}", self.l(a.mult(one, x)), self.l(a.mult(x, one)), x = self.l(x)),
                });
            }
        }
        // once · preserves joins, associativity on join-irreducibles suffices
        let dom: Vec<usize> = if residuated {
            a.join_irreducibles()
        } else {
            (0..self.n).collect()
        };
        for &x in &dom {
            for &y in &dom {
                let xy = a.mult(x, y);
                for &z in &dom {
                    let l = a.mult(xy, z);
                    let r = a.mult(x, a.mult(y, z));
                    if l != r {
                        return Some(Witness {
                            elements: vec![x, y, z],
                            detail: format!(
                                "({x}·{y})·{z} = {} but {x}·({y}·{z}) = {}",
                                self.l(l),
                                self.l(r),
                                x = self.l(x),
                                y = self.l(y),
                                z = self.l(z)
                            ),
                        });
                    }
                }
            }
        }
        None
    }

    fn involutive(&self) -> Option<Witness> {
        let a = self.a;
        let zero = a.zero();
        for x in 0..self.n {
            let rt = a.join_all((0..self.n).filter(|&y| a.leq(a.mult(x, y), zero)));
            if a.tilde(x) != rt {
                return Some(Witness {
                    elements: vec![x],
                    detail: format!("∼{} = {} but {}\\0 = {}", self.l(x), self.l(a.tilde(x)), self.l(x), self.l(rt)),
                });
            }
            let rm = a.join_all((0..self.n).filter(|&y| a.leq(a.mult(y, x), zero)));
            if a.minus(x) != rm {
                return Some(Witness {
                    elements: vec![x],
                    detail: format!("−{} = {} but 0/{} = {}", self.l(x), self.l(a.minus(x)), self.l(x), self.l(rm)),
                });
            }
        }
        for x in 0..self.n {
            if a.tilde(a.minus(x)) != x || a.minus(a.tilde(x)) != x {
                return Some(Witness {
                    elements: vec![x],
                    detail: format!(
                        "∼−{x} = {} and −∼{x} = {}",
                        self.l(a.tilde(a.minus(x))),
                        self.l(a.minus(a.tilde(x))),
                        x = self.l(x)
                    ),
                });
            }
        }
        None
    }

    fn prime_involution(&self) -> Option<Witness> {
        let a = self.a;
        (0..self.n).find(|&x| a.prime(a.prime(x)) != x).map(|x| Witness {
            elements: vec![x],
            detail: format!("{}′′ = {}", self.l(x), self.l(a.prime(a.prime(x)))),
        })
    }

    fn dm(&self) -> Option<Witness> {
        let a = self.a;
        for x in 0..self.n {
            for y in x..self.n {
                let l = a.prime(a.join(x, y));
                let r = a.meet(a.prime(x), a.prime(y));
                if l != r {
                    return Some(Witness {
                        elements: vec![x, y],
                        detail: format!("({x} ∨ {y})′ = {} but {x}′ ∧ {y}′ = {}", self.l(l), self.l(r), x = self.l(x), y = self.l(y)),
                    });
                }
            }
        }
        None
    }

    fn di(&self) -> Option<Witness> {
        let a = self.a;
        (0..self.n)
            .find(|&x| a.prime(a.tilde(x)) != a.minus(a.prime(x)))
            .map(|x| Witness {
                elements: vec![x],
                detail: format!(
                    "(∼{x})′ = {} but −({x}′) = {}",
                    self.l(a.prime(a.tilde(x))),
                    self.l(a.minus(a.prime(x))),
                    x = self.l(x)
                ),
            })
    }

    fn dp(&self) -> Option<Witness> {
        let a = self.a;
        for x in 0..self.n {
            for y in 0..self.n {
                let l = a.prime(a.mult(x, y));
                let r = a.plus(a.prime(x), a.prime(y));
                if l != r {
                    return Some(Witness {
                        elements: vec![x, y],
                        detail: format!("({x}·{y})′ = {} but {x}′ + {y}′ = {}", self.l(l), self.l(r), x = self.l(x), y = self.l(y)),
                    });
                }
            }
        }
        None
    }
}

impl AbstractDqRA {
    /// Exhaustively verify every axiom group.
    ///
    /// Quantification runs over join-irreducibles where that is equivalent
    /// (distributivity as join-primeness; residuation and associativity once
    /// the reduction's precondition has been established) and falls back to
    /// the direct scan otherwise, so witnesses are always genuine.
    pub fn axiom_check(&self) -> AxiomReport {
        let c = Ctx::new(self);
        let lattice = c.lattice();
        let distributivity = c.distributivity();
        let residuation = c.residuation(distributivity.is_none() && lattice.is_none());
        let monoid = c.monoid(residuation.is_none());
        let outcomes = vec![
            (AxiomGroup::Lattice, lattice),
            (AxiomGroup::Distributivity, distributivity),
            (AxiomGroup::Monoid, monoid),
            (AxiomGroup::Residuation, residuation),
            (AxiomGroup::In, c.involutive()),
            (AxiomGroup::Dm, c.dm()),
            (AxiomGroup::Di, c.di()),
            (AxiomGroup::Dp, c.dp()),
            (AxiomGroup::PrimeInvolution, c.prime_involution()),
        ]
        .into_iter()
        .map(|(group, witness)| GroupOutcome { group, witness })
        .collect();
        AxiomReport { outcomes }
    }
}

/// Free-function spelling of [`AbstractDqRA::axiom_check`].
pub fn axiom_check(a: &AbstractDqRA) -> AxiomReport {
    a.axiom_check()
}
