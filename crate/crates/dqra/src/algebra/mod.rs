//! Finite algebras in the signature `⟨∧, ∨, ·, 1, 0, ∼, −, ′⟩` given by
//! tables.

mod axioms;
mod derive;
mod morph;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relcore::{bit_iter, FinRel};

pub use axioms::{axiom_check, AxiomGroup, AxiomReport, GroupOutcome, Witness};
pub use derive::{cyclic_subuniverse, derive_algebra, nonfinrep_detector, odd_periodic_iso, DeriveKind, Verdict};
pub use morph::{
    dual_lattice_automorphisms, generated_closure, generated_subalgebra, homomorphism_check, isomorphism_search, lattice_isomorphisms,
    subalgebra, Op,
};

/// A finite algebra with lattice order, fusion, two negations and a prime.
///
/// Join and meet tables are derived from `leq` at construction and
/// everything is validated to be in range, so the remaining properties are
/// what [`axiom_check`](Self::axiom_check) is for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractDqRA {
    name: String,
    labels: Vec<String>,
    provenance: Option<String>,
    size: usize,
    leq: FinRel,
    join: Vec<usize>,
    meet: Vec<usize>,
    mult: Vec<usize>,
    tilde: Vec<usize>,
    minus: Vec<usize>,
    prime: Vec<usize>,
    one: usize,
    zero: usize,
    bottom: usize,
    top: usize,
}

/// The on-disk shape. Either `leq` (strict or non-strict pairs) or a `join`
/// table must be present; when both are, they must agree.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join: Option<Vec<Vec<usize>>>,
    pub mult: Vec<Vec<usize>>,
    pub tilde: Vec<usize>,
    pub minus: Vec<usize>,
    pub prime: Vec<usize>,
    pub one: usize,
    pub zero: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

fn check_table(name: &str, t: &[usize], len: usize, size: usize) -> Result<()> {
    if t.len() != len {
        return Err(Error::Malformed(format!("{name} has {} entries, expected {len}", t.len())));
    }
    if let Some(p) = t.iter().position(|&v| v >= size) {
        return Err(Error::Malformed(format!("{name}[{p}] = {} is out of range", t[p])));
    }
    Ok(())
}

/// Least upper bounds of every pair, or the first pair without one.
fn lattice_tables(leq: &FinRel) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = leq.n();
    let geq = leq.converse();
    let down_count: Vec<usize> = (0..n).map(|a| geq.successors(a).count()).collect();
    let up_count: Vec<usize> = (0..n).map(|a| leq.successors(a).count()).collect();
    let mut join = vec![0; n * n];
    let mut meet = vec![0; n * n];
    for a in 0..n {
        for b in a..n {
            let ub: Vec<u64> = leq.row(a).iter().zip(leq.row(b)).map(|(x, y)| x & y).collect();
            let j = bit_iter(&ub)
                .min_by_key(|&u| down_count[u])
                .filter(|&u| ub.iter().zip(leq.row(u)).all(|(&x, &y)| x & !y == 0))
                .ok_or_else(|| Error::NotLattice(format!("elements {a} and {b} have no join")))?;
            let lb: Vec<u64> = geq.row(a).iter().zip(geq.row(b)).map(|(x, y)| x & y).collect();
            let m = bit_iter(&lb)
                .min_by_key(|&u| up_count[u])
                .filter(|&u| lb.iter().zip(geq.row(u)).all(|(&x, &y)| x & !y == 0))
                .ok_or_else(|| Error::NotLattice(format!("elements {a} and {b} have no meet")))?;
            join[a * n + b] = j;
            join[b * n + a] = j;
            meet[a * n + b] = m;
            meet[b * n + a] = m;
        }
    }
    Ok((join, meet))
}

impl AbstractDqRA {
    /// Assemble from an order and flat operation tables (`mult` row-major).
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        name: String,
        labels: Vec<String>,
        leq: FinRel,
        mult: Vec<usize>,
        tilde: Vec<usize>,
        minus: Vec<usize>,
        prime: Vec<usize>,
        one: usize,
        zero: usize,
    ) -> Result<Self> {
        let size = leq.n();
        if size == 0 {
            return Err(Error::Malformed("empty algebra".into()));
        }
        if labels.len() != size {
            return Err(Error::Malformed(format!("{} labels for {size} elements", labels.len())));
        }
        check_table("mult", &mult, size * size, size)?;
        check_table("tilde", &tilde, size, size)?;
        check_table("minus", &minus, size, size)?;
        check_table("prime", &prime, size, size)?;
        check_table("constants", &[one, zero], 2, size)?;
        let leq = leq.union(&FinRel::identity(size));
        if !leq.is_partial_order() {
            return Err(Error::NotLattice("leq is not a partial order".into()));
        }
        let (join, meet) = lattice_tables(&leq)?;
        let bottom = (0..size).find(|&a| leq.successors(a).count() == size).expect("finite lattice");
        let top = (0..size).find(|&a| (0..size).all(|b| leq.has(b, a))).expect("finite lattice");
        Ok(AbstractDqRA {
            name,
            labels,
            provenance: None,
            size,
            leq,
            join,
            meet,
            mult,
            tilde,
            minus,
            prime,
            one,
            zero,
            bottom,
            top,
        })
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Self> {
        let size = j.size;
        let labels = j.labels.clone().unwrap_or_else(|| (0..size).map(|i| i.to_string()).collect());
        let order_from_join = |join: &Vec<Vec<usize>>| -> Result<FinRel> {
            if join.len() != size || join.iter().any(|r| r.len() != size) {
                return Err(Error::Malformed("join table has the wrong shape".into()));
            }
            check_table("join", &join.concat(), size * size, size)?;
            Ok(FinRel::from_fn(size, |a, b| join[a][b] == b))
        };
        let leq = match (&j.leq, &j.join) {
            (Some(pairs), _) => FinRel::from_pairs(size, pairs.iter().map(|p| (p[0], p[1])))
                .map_err(|e| Error::Malformed(format!("leq: {e}")))?,
            (None, Some(join)) => order_from_join(join)?,
            (None, None) => return Err(Error::Malformed("neither leq nor join given".into())),
        };
        if j.mult.len() != size || j.mult.iter().any(|r| r.len() != size) {
            return Err(Error::Malformed("mult table has the wrong shape".into()));
        }
        let mut a = Self::from_parts(
            j.name.clone().unwrap_or_default(),
            labels,
            leq,
            j.mult.concat(),
            j.tilde.clone(),
            j.minus.clone(),
            j.prime.clone(),
            j.one,
            j.zero,
        )?;
        if let (Some(_), Some(join)) = (&j.leq, &j.join) {
            let given = order_from_join(join)?;
            if given.union(&FinRel::identity(size)) != a.leq {
                return Err(Error::Malformed("join table disagrees with leq".into()));
            }
            for x in 0..size {
                for y in 0..size {
                    if join[x][y] != a.join(x, y) {
                        return Err(Error::Malformed(format!("join[{x}][{y}] is not the least upper bound")));
                    }
                }
            }
        }
        a.provenance = j.provenance.clone();
        Ok(a)
    }

    pub fn to_json(&self) -> AlgebraJson {
        let n = self.size;
        AlgebraJson {
            name: Some(self.name.clone()),
            labels: Some(self.labels.clone()),
            size: n,
            leq: Some(self.leq.pairs().filter(|(a, b)| a != b).map(|(a, b)| [a, b]).collect()),
            join: None,
            mult: (0..n).map(|a| self.mult[a * n..(a + 1) * n].to_vec()).collect(),
            tilde: self.tilde.clone(),
            minus: self.minus.clone(),
            prime: self.prime.clone(),
            one: self.one,
            zero: self.zero,
            provenance: self.provenance.clone(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let j: AlgebraJson = serde_json::from_str(text).map_err(|e| Error::json("algebra", e))?;
        Self::from_json(&j)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let j: AlgebraJson =
            serde_json::from_str(&text).map_err(|e| Error::json(path.display().to_string(), e))?;
        Self::from_json(&j)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = Some(p.into());
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::Malformed(format!("{} labels for {} elements", labels.len(), self.size)));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Same algebra with a replacement prime table.
    pub fn with_prime(&self, prime: Vec<usize>) -> Result<Self> {
        check_table("prime", &prime, self.size, self.size)?;
        let mut a = self.clone();
        a.prime = prime;
        Ok(a)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// Index of the element with this label, or a decimal index.
    pub fn element(&self, name: &str) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l == name)
            .or_else(|| name.parse().ok().filter(|&i: &usize| i < self.size))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq_rel(&self) -> &FinRel {
        &self.leq
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.has(a, b)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    #[inline]
    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.size + b]
    }

    #[inline]
    pub fn tilde(&self, a: usize) -> usize {
        self.tilde[a]
    }

    #[inline]
    pub fn minus(&self, a: usize) -> usize {
        self.minus[a]
    }

    #[inline]
    pub fn prime(&self, a: usize) -> usize {
        self.prime[a]
    }

    pub fn tilde_table(&self) -> &[usize] {
        &self.tilde
    }

    pub fn minus_table(&self) -> &[usize] {
        &self.minus
    }

    pub fn prime_table(&self) -> &[usize] {
        &self.prime
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `a + b = ∼(−b · −a)`.
    pub fn plus(&self, a: usize, b: usize) -> usize {
        self.tilde(self.mult(self.minus(b), self.minus(a)))
    }

    pub fn tilde_n(&self, a: usize, n: usize) -> usize {
        (0..n).fold(a, |x, _| self.tilde[x])
    }

    pub fn minus_n(&self, a: usize, n: usize) -> usize {
        (0..n).fold(a, |x, _| self.minus[x])
    }

    /// Join of a set of elements (bottom for the empty set).
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// `x\z = ⋁{y | x·y ≤ z}` and `z/y = ⋁{x | x·y ≤ z}`, as row-major tables
    /// `left[x][z]` and `right[z][y]`. Requires join-preserving fusion.
    pub fn residual_tables(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        let report = self.axiom_check();
        if let Some(w) = report.witness(AxiomGroup::Residuation) {
            return Err(Error::Unresiduated(w.render(self)));
        }
        let n = self.size;
        let mut left = vec![0; n * n];
        let mut right = vec![0; n * n];
        for x in 0..n {
            for z in 0..n {
                left[x * n + z] = self.join_all((0..n).filter(|&y| self.leq(self.mult(x, y), z)));
                right[z * n + x] = self.join_all((0..n).filter(|&y| self.leq(self.mult(y, x), z)));
            }
        }
        Ok((left, right))
    }

    /// `∼` and `−` must be mutually inverse for the periodicity notions.
    fn require_involutive(&self) -> Result<()> {
        if let Some(a) = (0..self.size).find(|&a| self.tilde(self.minus(a)) != a || self.minus(self.tilde(a)) != a) {
            return Err(Error::NotInvolutive(format!("fails at {}", self.label(a))));
        }
        Ok(())
    }

    pub fn is_cyclic(&self) -> Result<bool> {
        self.require_involutive()?;
        Ok(self.tilde == self.minus)
    }

    /// Least `n ≥ 1` with `∼ⁿ = −ⁿ` pointwise.
    pub fn periodicity(&self) -> Result<usize> {
        self.require_involutive()?;
        let mut t: Vec<usize> = self.tilde.clone();
        let mut m: Vec<usize> = self.minus.clone();
        let mut n = 1;
        while t != m {
            t = t.iter().map(|&x| self.tilde[x]).collect();
            m = m.iter().map(|&x| self.minus[x]).collect();
            n += 1;
        }
        Ok(n)
    }

    /// Join-irreducible elements (exactly one lower cover).
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let geq = self.leq.converse();
        (0..self.size)
            .filter(|&a| {
                let down = geq.row(a);
                // b ⋖ a iff the interval [b, a] is exactly {a, b}
                let covers = bit_iter(down)
                    .filter(|&b| b != a)
                    .filter(|&b| {
                        let interval: u32 = self.leq.row(b).iter().zip(down).map(|(x, y)| (x & y).count_ones()).sum();
                        interval == 2
                    })
                    .count();
                covers == 1
            })
            .collect()
    }
}

impl fmt::Display for AbstractDqRA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size;
        let w = self.labels.iter().map(String::len).max().unwrap_or(1).max(2);
        writeln!(f, "algebra {} ({} elements, 1 = {}, 0 = {})", self.name, n, self.label(self.one), self.label(self.zero))?;
        writeln!(f, "{:>w$} | {:>w$} {:>w$} {:>w$}", "a", "∼a", "−a", "a′")?;
        for a in 0..n {
            writeln!(
                f,
                "{:>w$} | {:>w$} {:>w$} {:>w$}",
                self.label(a),
                self.label(self.tilde(a)),
                self.label(self.minus(a)),
                self.label(self.prime(a))
            )?;
        }
        writeln!(f)?;
        write!(f, "{:>w$} |", "·")?;
        for b in 0..n {
            write!(f, " {:>w$}", self.label(b))?;
        }
        writeln!(f)?;
        for a in 0..n {
            write!(f, "{:>w$} |", self.label(a))?;
            for b in 0..n {
                write!(f, " {:>w$}", self.label(self.mult(a, b)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
