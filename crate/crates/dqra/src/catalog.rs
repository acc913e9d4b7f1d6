//! Posets up to isomorphism, admissible equivalences, and the `(α, β)` pairs
//! over them.
//!
//! Posets of size `n` are produced from those of size `n-1` by adding a new
//! maximal element above an order ideal, then deduplicated by a canonical
//! labelling: among all linear extensions, the one maximising the strict
//! upper-triangle bit string of `≤`. Catalog posets are stored in that
//! labelling, so a chain is always `0 < 1 < ... < n-1`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relcore::{default_labels, dual_order_automorphisms, order_automorphisms, Endomap, FinRel, Poset, PosetJson};

/// Bit string of the strict upper triangle of `≤` under `perm`
/// (`perm[i]` = old element placed at position `i`).
fn code(leq: &FinRel, perm: &[usize]) -> u128 {
    let n = perm.len();
    let mut c = 0u128;
    for i in 0..n {
        for j in i + 1..n {
            c = c << 1 | leq.has(perm[i], perm[j]) as u128;
        }
    }
    c
}

/// Canonical code and labelling of a poset.
pub fn canonical_form(leq: &FinRel) -> (u128, Vec<usize>) {
    let n = leq.n();
    let mut best: Option<(u128, Vec<usize>)> = None;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];

    fn rec(leq: &FinRel, perm: &mut Vec<usize>, used: &mut Vec<bool>, best: &mut Option<(u128, Vec<usize>)>) {
        let n = leq.n();
        if perm.len() == n {
            let c = code(leq, perm);
            if best.as_ref().is_none_or(|(b, _)| c > *b) {
                *best = Some((c, perm.clone()));
            }
            return;
        }
        for x in 0..n {
            // x may come next only once everything strictly below it is placed
            if !used[x] && (0..n).all(|y| y == x || !leq.has(y, x) || used[y]) {
                used[x] = true;
                perm.push(x);
                rec(leq, perm, used, best);
                perm.pop();
                used[x] = false;
            }
        }
    }
    rec(leq, &mut perm, &mut used, &mut best);
    best.unwrap_or((0, vec![]))
}

pub fn canonical_poset(p: &Poset) -> Poset {
    let (_, perm) = canonical_form(p.leq_rel());
    let leq = p.leq_rel().restrict(&perm);
    Poset::new(default_labels(p.n()), leq).expect("relabelled order")
}

pub fn is_isomorphic(p: &Poset, q: &Poset) -> bool {
    p.n() == q.n() && canonical_form(p.leq_rel()).0 == canonical_form(q.leq_rel()).0
}

fn order_ideals(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.n();
    (0u32..1 << n)
        .filter(|&mask| {
            (0..n).all(|x| mask >> x & 1 == 0 || (0..n).all(|y| !p.leq(y, x) || mask >> y & 1 == 1))
        })
        .map(|mask| (0..n).filter(|&x| mask >> x & 1 == 1).collect())
        .collect()
}

/// All posets of each size `0..=max_n`, up to isomorphism.
#[derive(Clone, Debug)]
pub struct PosetCatalog {
    by_size: Vec<Vec<Poset>>,
}

#[derive(Serialize, Deserialize)]
struct CatalogJson {
    posets: Vec<Vec<PosetJson>>,
}

impl PosetCatalog {
    pub fn generate(max_n: usize) -> Self {
        assert!(max_n <= 8, "catalog generation is meant for small sizes");
        let mut by_size: Vec<Vec<Poset>> = vec![vec![Poset::chain(0)]];
        for n in 1..=max_n {
            let mut found: BTreeMap<u128, Poset> = BTreeMap::new();
            for q in &by_size[n - 1] {
                for ideal in order_ideals(q) {
                    let mut leq = FinRel::empty(n);
                    for (x, y) in q.leq_rel().pairs() {
                        leq.insert(x, y);
                    }
                    leq.insert(n - 1, n - 1);
                    for &x in &ideal {
                        leq.insert(x, n - 1);
                    }
                    let (c, perm) = canonical_form(&leq);
                    found.entry(c).or_insert_with(|| {
                        Poset::new(default_labels(n), leq.restrict(&perm)).expect("extension of a poset")
                    });
                }
            }
            // descending code: chains first
            by_size.push(found.into_values().rev().collect());
        }
        PosetCatalog { by_size }
    }

    pub fn max_n(&self) -> usize {
        self.by_size.len() - 1
    }

    pub fn of_size(&self, n: usize) -> &[Poset] {
        self.by_size.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Sizes `1..=max_n` in catalog order.
    pub fn iter_up_to(&self, max_n: usize) -> impl Iterator<Item = &Poset> {
        (1..=max_n.min(self.max_n())).flat_map(move |n| self.by_size[n].iter())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let j = CatalogJson {
            posets: self.by_size.iter().map(|v| v.iter().map(Poset::to_json).collect()).collect(),
        };
        let text = serde_json::to_string(&j).map_err(|e| Error::json("catalog", e))?;
        std::fs::write(path.as_ref(), text).map_err(|source| Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        })
    }

    /// Load a saved catalog; posets appended by hand are canonicalised and
    /// deduplicated.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let j: CatalogJson = serde_json::from_str(&text).map_err(|e| Error::json(path.display().to_string(), e))?;
        let mut by_size: Vec<Vec<Poset>> = vec![vec![Poset::chain(0)]];
        for (n, v) in j.posets.iter().enumerate().skip(1) {
            let mut seen = std::collections::HashSet::new();
            let mut out = Vec::new();
            for pj in v {
                let p = Poset::from_json(pj)?;
                if p.n() != n {
                    return Err(Error::Malformed(format!("poset of size {} listed under size {n}", p.n())));
                }
                if seen.insert(canonical_form(p.leq_rel()).0) {
                    out.push(canonical_poset(&p));
                }
            }
            by_size.push(out);
        }
        Ok(PosetCatalog { by_size })
    }

    /// Reuse the catalog at `path` if it reaches `max_n`; otherwise generate
    /// one and write it there.
    pub fn load_or_generate(path: impl AsRef<Path>, max_n: usize) -> Result<Self> {
        let path = path.as_ref();
        if path.exists() {
            let c = Self::load(path)?;
            if c.max_n() >= max_n {
                return Ok(c);
            }
        }
        let c = Self::generate(max_n);
        c.save(path)?;
        Ok(c)
    }
}

/// Equivalences `E ⊇ ≤`: partitions of the comparability components,
/// coarsest first (by block count, then restricted-growth string).
pub fn equivalence_candidates(p: &Poset) -> Vec<FinRel> {
    let comps = p.components();
    let k = comps.len();
    let mut rgs_all: Vec<Vec<usize>> = Vec::new();
    let mut rgs = vec![0usize; k];

    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == rgs.len() {
            out.push(rgs.clone());
            return;
        }
        for b in 0..=max + 1 {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    if k == 0 {
        return vec![FinRel::empty(0)];
    }
    rgs[0] = 0;
    rec(1, 0, &mut rgs, &mut rgs_all);
    rgs_all.sort_by_key(|r| (r.iter().max().copied().unwrap_or(0), r.clone()));
    rgs_all
        .into_iter()
        .map(|r| {
            let mut blk = vec![0; p.n()];
            for (c, comp) in comps.iter().enumerate() {
                for &x in comp {
                    blk[x] = r[c];
                }
            }
            FinRel::from_fn(p.n(), |x, y| blk[x] == blk[y])
        })
        .collect()
}

/// `(α, β)` pairs satisfying every hypothesis of the construction for this
/// `(≤, E)`, lexicographic in `α` then `β`.
pub fn map_pairs(p: &Poset, e: &FinRel) -> Vec<(Endomap, Endomap)> {
    let alphas: Vec<Endomap> = order_automorphisms(p).into_iter().filter(|a| a.escapes(e).is_none()).collect();
    let betas: Vec<Endomap> = dual_order_automorphisms(p, true)
        .into_iter()
        .filter(|b| b.escapes(e).is_none())
        .collect();
    let mut out = Vec::new();
    for a in &alphas {
        for b in &betas {
            if (0..p.n()).all(|x| a.apply(b.apply(a.apply(x))) == b.apply(x)) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// One valid construction input.
#[derive(Clone, Debug)]
pub struct BuildTuple {
    pub poset: Poset,
    pub e: FinRel,
    pub alpha: Endomap,
    pub beta: Endomap,
}

/// Every valid `(poset, E, α, β)` with `1 ≤ |X| ≤ max_n`, in search order.
pub fn build_tuples(catalog: &PosetCatalog, max_n: usize) -> Vec<BuildTuple> {
    let mut out = Vec::new();
    for p in catalog.iter_up_to(max_n) {
        for e in equivalence_candidates(p) {
            for (alpha, beta) in map_pairs(p, &e) {
                out.push(BuildTuple {
                    poset: p.clone(),
                    e: e.clone(),
                    alpha,
                    beta,
                });
            }
        }
    }
    out
}
