use std::collections::BTreeSet;
use std::fmt;

use super::AbstractDqRA;
use crate::error::{Error, Result};
use crate::relcore::{order_bijections, Endomap};

/// The fundamental operations of the signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Meet,
    Join,
    Mult,
    One,
    Zero,
    Tilde,
    Minus,
    Prime,
}

impl Op {
    pub const ALL: [Op; 8] = [Op::Meet, Op::Join, Op::Mult, Op::One, Op::Zero, Op::Tilde, Op::Minus, Op::Prime];

    pub fn name(self) -> &'static str {
        match self {
            Op::Meet => "∧",
            Op::Join => "∨",
            Op::Mult => "·",
            Op::One => "1",
            Op::Zero => "0",
            Op::Tilde => "∼",
            Op::Minus => "−",
            Op::Prime => "′",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn unary(a: &AbstractDqRA, op: Op, x: usize) -> usize {
    match op {
        Op::Tilde => a.tilde(x),
        Op::Minus => a.minus(x),
        Op::Prime => a.prime(x),
        _ => unreachable!(),
    }
}

fn binary(a: &AbstractDqRA, op: Op, x: usize, y: usize) -> usize {
    match op {
        Op::Meet => a.meet(x, y),
        Op::Join => a.join(x, y),
        Op::Mult => a.mult(x, y),
        _ => unreachable!(),
    }
}

const UNARY: [Op; 3] = [Op::Tilde, Op::Minus, Op::Prime];
const BINARY: [Op; 3] = [Op::Meet, Op::Join, Op::Mult];

/// Check that `h : A → B` preserves every operation of the signature.
pub fn homomorphism_check(a: &AbstractDqRA, b: &AbstractDqRA, h: &[usize]) -> Result<()> {
    if h.len() != a.size() {
        return Err(Error::DimensionMismatch {
            left: h.len(),
            right: a.size(),
        });
    }
    if let Some(&bad) = h.iter().find(|&&v| v >= b.size()) {
        return Err(Error::IndexOutOfRange { index: bad, n: b.size() });
    }
    let fail = |op: Op, args: Vec<usize>, want: usize, got: usize| Error::Preservation {
        op: op.name(),
        args: args.iter().map(|&x| a.label(x)).collect::<Vec<_>>().join(", "),
        detail: format!("image of result is {} but operation on images gives {}", b.label(want), b.label(got)),
    };
    if h[a.one()] != b.one() {
        return Err(fail(Op::One, vec![], h[a.one()], b.one()));
    }
    if h[a.zero()] != b.zero() {
        return Err(fail(Op::Zero, vec![], h[a.zero()], b.zero()));
    }
    for op in UNARY {
        for x in 0..a.size() {
            let (want, got) = (h[unary(a, op, x)], unary(b, op, h[x]));
            if want != got {
                return Err(fail(op, vec![x], want, got));
            }
        }
    }
    for op in BINARY {
        for x in 0..a.size() {
            for y in 0..a.size() {
                let (want, got) = (h[binary(a, op, x, y)], binary(b, op, h[x], h[y]));
                if want != got {
                    return Err(fail(op, vec![x, y], want, got));
                }
            }
        }
    }
    Ok(())
}

/// Closure of `seeds ∪ {1, 0}` under every operation, sorted.
pub fn generated_closure(b: &AbstractDqRA, seeds: &[usize]) -> Vec<usize> {
    let mut set: BTreeSet<usize> = seeds.iter().copied().collect();
    set.insert(b.one());
    set.insert(b.zero());
    let mut frontier: Vec<usize> = set.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        let mut new = Vec::new();
        for op in UNARY {
            new.push(unary(b, op, x));
        }
        for &y in &set {
            for op in BINARY {
                new.push(binary(b, op, x, y));
                new.push(binary(b, op, y, x));
            }
        }
        for z in new {
            if set.insert(z) {
                frontier.push(z);
            }
        }
    }
    set.into_iter().collect()
}

/// The subalgebra generated by `seeds`. Bounds are not signature constants
/// and are not added.
pub fn generated_subalgebra(b: &AbstractDqRA, seeds: &[usize]) -> Result<AbstractDqRA> {
    subalgebra(b, &generated_closure(b, seeds))
}

/// Restrict every table to `elems`, which must be closed under all operations.
pub fn subalgebra(a: &AbstractDqRA, elems: &[usize]) -> Result<AbstractDqRA> {
    let mut elems = elems.to_vec();
    elems.sort_unstable();
    elems.dedup();
    let mut pos = vec![usize::MAX; a.size()];
    for (i, &e) in elems.iter().enumerate() {
        pos[e] = i;
    }
    let at = |op: Op, x: usize, args: &str| -> Result<usize> {
        match pos[x] {
            usize::MAX => Err(Error::NotClosed {
                op: op.name(),
                detail: format!("{args} gives {} outside the set", a.label(x)),
            }),
            p => Ok(p),
        }
    };
    let one = at(Op::One, a.one(), "1")?;
    let zero = at(Op::Zero, a.zero(), "0")?;
    let k = elems.len();
    let mut tables: Vec<Vec<usize>> = Vec::new();
    for op in UNARY {
        let mut t = Vec::with_capacity(k);
        for &x in &elems {
            t.push(at(op, unary(a, op, x), a.label(x))?);
        }
        tables.push(t);
    }
    let mut mult = Vec::with_capacity(k * k);
    for &x in &elems {
        for &y in &elems {
            for op in [Op::Meet, Op::Join] {
                at(op, binary(a, op, x, y), &format!("{}, {}", a.label(x), a.label(y)))?;
            }
            mult.push(at(Op::Mult, a.mult(x, y), &format!("{}, {}", a.label(x), a.label(y)))?);
        }
    }
    let leq = a.leq_rel().restrict(&elems);
    let prime = tables.pop().unwrap();
    let minus = tables.pop().unwrap();
    let tilde = tables.pop().unwrap();
    let sub = AbstractDqRA::from_parts(
        format!("{}|sub", a.name()),
        elems.iter().map(|&e| a.label(e).to_string()).collect(),
        leq,
        mult,
        tilde,
        minus,
        prime,
        one,
        zero,
    )?;
    // closure under the parent's ∧/∨ means they coincide with the sub-order's
    Ok(match a.provenance() {
        Some(p) => sub.with_provenance(p),
        None => sub,
    })
}

/// Order isomorphisms `A → B`, i.e. lattice isomorphisms, lexicographic.
pub fn lattice_isomorphisms(a: &AbstractDqRA, b: &AbstractDqRA) -> Vec<Vec<usize>> {
    order_bijections(a.leq_rel(), b.leq_rel(), false)
        .into_iter()
        .map(|m| m.image().to_vec())
        .collect()
}

/// Order-reversing bijections of the lattice onto itself, lexicographic.
pub fn dual_lattice_automorphisms(a: &AbstractDqRA) -> Vec<Endomap> {
    order_bijections(a.leq_rel(), a.leq_rel(), true)
}

fn cycle_len(t: &[usize], x: usize) -> usize {
    let mut k = 1;
    let mut y = t[x];
    while y != x && k <= t.len() {
        y = t[y];
        k += 1;
    }
    k
}

type Fingerprint = (usize, usize, usize, usize, usize, bool, bool, bool, bool);

fn fingerprint(a: &AbstractDqRA, x: usize) -> Fingerprint {
    let n = a.size();
    let down = (0..n).filter(|&y| a.leq(y, x)).count();
    let up = a.leq_rel().successors(x).count();
    (
        down,
        up,
        cycle_len(a.tilde_table(), x),
        cycle_len(a.minus_table(), x),
        cycle_len(a.prime_table(), x),
        x == a.one(),
        x == a.zero(),
        a.mult(x, x) == x,
        a.leq(a.mult(x, x), x),
    )
}

/// First isomorphism `A → B` in lexicographic order of image arrays, if any.
pub fn isomorphism_search(a: &AbstractDqRA, b: &AbstractDqRA) -> Option<Vec<usize>> {
    let n = a.size();
    if b.size() != n {
        return None;
    }
    let fa: Vec<Fingerprint> = (0..n).map(|x| fingerprint(a, x)).collect();
    let fb: Vec<Fingerprint> = (0..n).map(|x| fingerprint(b, x)).collect();
    let mut h = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut assigned: Vec<usize> = Vec::new();

    fn consistent(a: &AbstractDqRA, b: &AbstractDqRA, h: &[usize], assigned: &[usize], x: usize) -> bool {
        let hx = h[x];
        for op in UNARY {
            let ux = unary(a, op, x);
            if h[ux] != usize::MAX && h[ux] != unary(b, op, hx) {
                return false;
            }
        }
        for &y in assigned.iter().chain(std::iter::once(&x)) {
            let hy = h[y];
            if a.leq(x, y) != b.leq(hx, hy) || a.leq(y, x) != b.leq(hy, hx) {
                return false;
            }
            for op in UNARY {
                if unary(a, op, y) == x && unary(b, op, hy) != hx {
                    return false;
                }
            }
            for op in BINARY {
                for (p, q) in [(x, y), (y, x)] {
                    let r = binary(a, op, p, q);
                    if h[r] != usize::MAX && h[r] != binary(b, op, h[p], h[q]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        a: &AbstractDqRA,
        b: &AbstractDqRA,
        fa: &[Fingerprint],
        fb: &[Fingerprint],
        h: &mut Vec<usize>,
        used: &mut Vec<bool>,
        assigned: &mut Vec<usize>,
    ) -> bool {
        let n = a.size();
        if i == n {
            return homomorphism_check(a, b, h).is_ok();
        }
        for c in 0..n {
            if used[c] || fa[i] != fb[c] {
                continue;
            }
            h[i] = c;
            if consistent(a, b, h, assigned, i) {
                used[c] = true;
                assigned.push(i);
                if rec(i + 1, a, b, fa, fb, h, used, assigned) {
                    return true;
                }
                assigned.pop();
                used[c] = false;
            }
            h[i] = usize::MAX;
        }
        false
    }

    if rec(0, a, b, &fa, &fb, &mut h, &mut used, &mut assigned) {
        Some(h)
    } else {
        None
    }
}
