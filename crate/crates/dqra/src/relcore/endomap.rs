use std::fmt;

use crate::error::{Error, Result};
use crate::relcore::{FinRel, Poset};

/// A self-map `γ : X → X` given by its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Endomap {
    image: Vec<usize>,
}

impl Endomap {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if let Some(&bad) = image.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        Ok(Endomap { image })
    }

    pub fn identity(n: usize) -> Self {
        Endomap {
            image: (0..n).collect(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `x ↦ other(self(x))`; its graph is `self ∘ other` in diagrammatic order.
    pub fn then(&self, other: &Endomap) -> Endomap {
        assert_eq!(self.n(), other.n());
        Endomap {
            image: self.image.iter().map(|&i| other.image[i]).collect(),
        }
    }

    pub fn power(&self, k: usize) -> Endomap {
        let mut out = Endomap::identity(self.n());
        for _ in 0..k {
            out = out.then(self);
        }
        out
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.n()];
        for &i in &self.image {
            if seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }

    pub fn inverse(&self) -> Result<Endomap> {
        if !self.is_bijective() {
            return Err(Error::Domain("inverse of a non-bijective map".into()));
        }
        let mut inv = vec![0; self.n()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Ok(Endomap { image: inv })
    }

    /// `|γ|`: the least `k ≥ 1` with `γᵏ = id`.
    pub fn order(&self) -> Result<usize> {
        if !self.is_bijective() {
            return Err(Error::Domain("map order of a non-bijective map".into()));
        }
        let id = Endomap::identity(self.n());
        let mut cur = self.clone();
        let mut k = 1;
        while cur != id {
            cur = cur.then(self);
            k += 1;
        }
        Ok(k)
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_involution(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| self.image[j] == i)
    }

    pub fn graph(&self) -> FinRel {
        let mut r = FinRel::empty(self.n());
        for (x, &y) in self.image.iter().enumerate() {
            r.insert(x, y);
        }
        r
    }

    pub fn is_order_automorphism(&self, p: &Poset) -> bool {
        self.n() == p.n()
            && self.is_bijective()
            && (0..p.n()).all(|x| (0..p.n()).all(|y| p.leq(x, y) == p.leq(self.apply(x), self.apply(y))))
    }

    pub fn is_dual_order_automorphism(&self, p: &Poset) -> bool {
        self.n() == p.n()
            && self.is_bijective()
            && (0..p.n()).all(|x| (0..p.n()).all(|y| p.leq(x, y) == p.leq(self.apply(y), self.apply(x))))
    }

    /// First `x` with `(x, γ(x)) ∉ rel`, if any.
    pub fn escapes(&self, rel: &FinRel) -> Option<usize> {
        (0..self.n()).find(|&x| !rel.has(x, self.apply(x)))
    }
}

impl fmt::Display for Endomap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.image)
    }
}

/// Order-preserving (or, with `dual`, order-reversing) bijections
/// between two orders on the same number of points, in lexicographic order of
/// image arrays.
pub(crate) fn order_bijections(src: &FinRel, dst: &FinRel, dual: bool) -> Vec<Endomap> {
    let n = src.n();
    let mut out = Vec::new();
    if dst.n() != n {
        return out;
    }
    // cheap fingerprint: (|down|, |up|) — swapped when reversing the order
    let fp = |r: &FinRel, x: usize, flip: bool| {
        let down = (0..n).filter(|&y| r.has(y, x)).count();
        let up = r.successors(x).count();
        if flip {
            (up, down)
        } else {
            (down, up)
        }
    };
    let fsrc: Vec<_> = (0..n).map(|x| fp(src, x, false)).collect();
    let fdst: Vec<_> = (0..n).map(|x| fp(dst, x, dual)).collect();
    let mut img = vec![usize::MAX; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        n: usize,
        src: &FinRel,
        dst: &FinRel,
        dual: bool,
        fsrc: &[(usize, usize)],
        fdst: &[(usize, usize)],
        img: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Endomap>,
    ) {
        if i == n {
            out.push(Endomap { image: img.clone() });
            return;
        }
        for a in 0..n {
            if used[a] || fsrc[i] != fdst[a] {
                continue;
            }
            let ok = (0..i).chain(std::iter::once(i)).all(|j| {
                let b = if j == i { a } else { img[j] };
                let (fw, bw) = if dual {
                    (dst.has(b, a), dst.has(a, b))
                } else {
                    (dst.has(a, b), dst.has(b, a))
                };
                src.has(i, j) == fw && src.has(j, i) == bw
            });
            if ok {
                img[i] = a;
                used[a] = true;
                rec(i + 1, n, src, dst, dual, fsrc, fdst, img, used, out);
                used[a] = false;
            }
        }
        img[i] = usize::MAX;
    }
    rec(0, n, src, dst, dual, &fsrc, &fdst, &mut img, &mut used, &mut out);
    out
}

/// All order automorphisms of `p`, lexicographic in the image array.
pub fn order_automorphisms(p: &Poset) -> Vec<Endomap> {
    order_bijections(p.leq_rel(), p.leq_rel(), false)
}

/// All dual order automorphisms of `p`; only involutions when
/// `self_inverse_only` is set.
pub fn dual_order_automorphisms(p: &Poset, self_inverse_only: bool) -> Vec<Endomap> {
    let mut v = order_bijections(p.leq_rel(), p.leq_rel(), true);
    if self_inverse_only {
        v.retain(Endomap::is_involution);
    }
    v
}

/// `γᵏ`.
pub fn map_power(gamma: &Endomap, k: usize) -> Endomap {
    gamma.power(k)
}

/// `|γ|`; errors on non-bijections.
pub fn map_order(gamma: &Endomap) -> Result<usize> {
    gamma.order()
}
