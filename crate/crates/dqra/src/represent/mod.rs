//! Representations: embeddings of table-given algebras into `Dq(E)`.

mod embed;
mod product;
mod search;

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::AbstractDqRA;
use crate::dq::{build, validate_maps, ConcreteDqRA};
use crate::error::{Error, Result};
use crate::relcore::{Endomap, FinRel, Poset, PosetJson};
use crate::twisted::{validate_equivalence, EquivJson, DEFAULT_CAP};

pub use embed::{search_embedding, search_embedding_counted, verify_assignment};
pub use product::{block_decompose, disjoint_union, product_isomorphism, BlockDecomposition};
pub use search::{search_representation, search_representation_in, SearchBudget, SearchCounters, SearchReport};

/// Construction data `(X, ≤, E, α, β)` plus an optional partial assignment of
/// abstract elements (by label) to relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationSpec {
    pub poset: Poset,
    pub e: FinRel,
    pub alpha: Endomap,
    pub beta: Endomap,
    pub assignment: BTreeMap<String, FinRel>,
}

/// Construction-spec JSON; `assignment` is optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecJson {
    pub poset: PosetJson,
    #[serde(rename = "E")]
    pub e: EquivJson,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub assignment: BTreeMap<String, Vec<[usize; 2]>>,
}

impl RepresentationSpec {
    pub fn new(poset: Poset, e: FinRel, alpha: Endomap, beta: Endomap) -> Self {
        RepresentationSpec {
            poset,
            e,
            alpha,
            beta,
            assignment: BTreeMap::new(),
        }
    }

    pub fn with_assignment(mut self, name: impl Into<String>, r: FinRel) -> Self {
        self.assignment.insert(name.into(), r);
        self
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    pub fn build(&self, cap: usize) -> Result<ConcreteDqRA> {
        build(&self.poset, &self.e, &self.alpha, &self.beta, cap)
    }

    /// Check the construction hypotheses without enumerating the carrier.
    pub fn validate(&self) -> Result<()> {
        validate_equivalence(&self.poset, &self.e)?;
        validate_maps(&self.poset, &self.e, &self.alpha, &self.beta)
    }

    pub fn from_json(j: &SpecJson) -> Result<Self> {
        let poset = Poset::from_json(&j.poset)?;
        let n = poset.n();
        let e = j.e.to_relation(n)?;
        let alpha = Endomap::new(j.alpha.clone())?;
        let beta = Endomap::new(j.beta.clone())?;
        let mut assignment = BTreeMap::new();
        for (k, pairs) in &j.assignment {
            let r = FinRel::from_pairs(n, pairs.iter().map(|p| (p[0], p[1])))?;
            assignment.insert(k.clone(), r);
        }
        Ok(RepresentationSpec {
            poset,
            e,
            alpha,
            beta,
            assignment,
        })
    }

    pub fn to_json(&self) -> SpecJson {
        SpecJson {
            poset: self.poset.to_json(),
            e: EquivJson::from_relation(&self.e),
            alpha: self.alpha.image().to_vec(),
            beta: self.beta.image().to_vec(),
            assignment: self
                .assignment
                .iter()
                .map(|(k, r)| (k.clone(), r.pairs().map(|(x, y)| [x, y]).collect()))
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let j: SpecJson = serde_json::from_str(text).map_err(|e| Error::json("spec", e))?;
        Self::from_json(&j)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let j: SpecJson =
            serde_json::from_str(&text).map_err(|e| Error::json(path.display().to_string(), e))?;
        Self::from_json(&j)
    }

    /// Every spec obtained by changing exactly one entry of `α`, of `β`, or
    /// one pair of one assignment, with a short description of the change.
    pub fn single_field_mutations(&self) -> Vec<(String, RepresentationSpec)> {
        let n = self.n();
        let mut out = Vec::new();
        for (name, which) in [("alpha", 0), ("beta", 1)] {
            let base = if which == 0 { &self.alpha } else { &self.beta };
            for i in 0..n {
                for v in (0..n).filter(|&v| v != base.apply(i)) {
                    let mut img = base.image().to_vec();
                    img[i] = v;
                    let m = Endomap::new(img).expect("in range");
                    let mut s = self.clone();
                    if which == 0 {
                        s.alpha = m;
                    } else {
                        s.beta = m;
                    }
                    out.push((format!("{name}[{i}] := {v}"), s));
                }
            }
        }
        for (k, r) in &self.assignment {
            for x in 0..n {
                for y in 0..n {
                    let mut r2 = r.clone();
                    r2.toggle(x, y);
                    let mut s = self.clone();
                    s.assignment.insert(k.clone(), r2);
                    out.push((format!("assignment[{k}] toggles ({x},{y})"), s));
                }
            }
        }
        out
    }
}

/// An injective map from an abstract algebra into a concrete one.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: AbstractDqRA,
    pub target: ConcreteDqRA,
    pub map: Vec<FinRel>,
}

impl Embedding {
    /// Exhaustively re-check injectivity, membership and preservation of
    /// every operation.
    pub fn verify(&self) -> Result<()> {
        let a = &self.source;
        let b = &self.target;
        let h = &self.map;
        let labels = b.poset().labels();
        let show = |r: &FinRel| r.display_with(labels).to_string();
        if h.len() != a.size() {
            return Err(Error::DimensionMismatch {
                left: h.len(),
                right: a.size(),
            });
        }
        let mut seen: std::collections::HashMap<&FinRel, usize> = Default::default();
        for (x, r) in h.iter().enumerate() {
            if !b.in_carrier(r) {
                return Err(Error::NotInCarrier(show(r)));
            }
            if let Some(&y) = seen.get(r) {
                return Err(Error::NotInjective(a.label(y).into(), a.label(x).into()));
            }
            seen.insert(r, x);
        }
        let fail = |op: &'static str, args: String, want: &FinRel, got: &FinRel| Error::Preservation {
            op,
            args,
            detail: format!("expected {} but found {}", show(want), show(got)),
        };
        if h[a.one()] != *b.one() {
            return Err(fail("1", String::new(), b.one(), &h[a.one()]));
        }
        if h[a.zero()] != *b.zero() {
            return Err(fail("0", String::new(), b.zero(), &h[a.zero()]));
        }
        for x in 0..a.size() {
            let r = &h[x];
            for (op, want, got) in [
                ("∼", &h[a.tilde(x)], b.tilde_raw(r)),
                ("−", &h[a.minus(x)], b.minus_raw(r)),
                ("′", &h[a.prime(x)], b.prime_raw(r)),
            ] {
                if *want != got {
                    return Err(fail(op, a.label(x).into(), want, &got));
                }
            }
            for y in 0..a.size() {
                let s = &h[y];
                for (op, want, got) in [
                    ("∧", &h[a.meet(x, y)], r.intersection(s)),
                    ("∨", &h[a.join(x, y)], r.union(s)),
                    ("·", &h[a.mult(x, y)], r.then(s)),
                ] {
                    if *want != got {
                        return Err(fail(op, format!("{}, {}", a.label(x), a.label(y)), want, &got));
                    }
                }
            }
        }
        Ok(())
    }

    /// The spec of the target with the full assignment by label.
    pub fn to_spec(&self) -> RepresentationSpec {
        let p = self.target.poset();
        let mut s = RepresentationSpec::new(
            p.clone(),
            self.target.e().clone(),
            self.target.alpha().clone(),
            self.target.beta().clone(),
        );
        for (x, r) in self.map.iter().enumerate() {
            s.assignment.insert(self.source.label(x).to_string(), r.clone());
        }
        s
    }
}

/// Build the spec's algebra, close the assignment under every operation and
/// check the result is a total, injective, operation-preserving map.
pub fn verify_representation(a: &AbstractDqRA, spec: &RepresentationSpec) -> Result<Embedding> {
    verify_representation_with_cap(a, spec, DEFAULT_CAP)
}

pub fn verify_representation_with_cap(a: &AbstractDqRA, spec: &RepresentationSpec, cap: usize) -> Result<Embedding> {
    let b = spec.build(cap)?;
    verify_assignment(a, &b, &spec.assignment)
}
