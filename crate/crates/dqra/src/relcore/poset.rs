use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relcore::FinRel;

/// A finite poset. Element order (the canonical ordering used for every bit
/// index downstream) is the input order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    labels: Vec<String>,
    leq: FinRel,
}

/// `{"elements": [...], "leq": [[i, j], ...]}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub leq: Vec<[usize; 2]>,
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    const SMALL: [&str; 3] = ["x", "y", "z"];
    if n <= 3 {
        SMALL[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (0..n).map(|i| format!("p{i}")).collect()
    }
}

impl Poset {
    /// Validates `leq` after adding the reflexive pairs.
    pub fn new(labels: Vec<String>, leq: FinRel) -> Result<Self> {
        if labels.len() != leq.n() {
            return Err(Error::DimensionMismatch {
                left: labels.len(),
                right: leq.n(),
            });
        }
        let leq = leq.union(&FinRel::identity(leq.n()));
        if let Some((x, y)) = leq.pairs().find(|&(x, y)| x != y && leq.has(y, x)) {
            return Err(Error::NotPartialOrder(format!("antisymmetry fails on ({x},{y})")));
        }
        let tt = leq.then(&leq);
        if let Some((x, y)) = tt.difference(&leq).pairs().next() {
            return Err(Error::NotPartialOrder(format!("transitivity requires ({x},{y})")));
        }
        Ok(Poset { labels, leq })
    }

    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let leq = FinRel::from_pairs(labels.len(), pairs.iter().copied())?;
        Self::new(labels, leq)
    }

    /// Order generated by the given covering (or any) pairs.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let r = FinRel::from_pairs(n, covers.iter().copied())?;
        Self::new(default_labels(n), r.reflexive_transitive_closure())
    }

    pub fn chain(n: usize) -> Self {
        Self::new(default_labels(n), FinRel::from_fn(n, |x, y| x <= y)).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        Self::new(default_labels(n), FinRel::identity(n)).expect("antichain")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::DimensionMismatch {
                left: labels.len(),
                right: self.n(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.leq.n()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq.has(x, y)
    }

    pub fn leq_rel(&self) -> &FinRel {
        &self.leq
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Covering pairs `x ⋖ y` of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        hasse_covers(&self.leq)
    }

    /// Connected components of the comparability graph, each sorted, listed by
    /// smallest element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = vec![];
            while let Some(x) = stack.pop() {
                members.push(x);
                for y in 0..n {
                    if comp[y] == usize::MAX && (self.leq(x, y) || self.leq(y, x)) {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Induced sub-poset on `idx` (in that order).
    pub fn restrict(&self, idx: &[usize]) -> Poset {
        Poset {
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            leq: self.leq.restrict(idx),
        }
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.labels.clone(),
            leq: self.leq.pairs().map(|(x, y)| [x, y]).collect(),
        }
    }

    pub fn from_json(j: &PosetJson) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = j.leq.iter().map(|p| (p[0], p[1])).collect();
        Self::from_pairs(j.elements.clone(), &pairs)
    }
}

/// Transitive reduction of a partial order (strict covering pairs).
pub fn hasse_covers(leq: &FinRel) -> Vec<(usize, usize)> {
    let n = leq.n();
    let mut out = Vec::new();
    for x in 0..n {
        for y in leq.successors(x) {
            if x == y {
                continue;
            }
            let between = (0..n).any(|z| z != x && z != y && leq.has(x, z) && leq.has(z, y));
            if !between {
                out.push((x, y));
            }
        }
    }
    out
}
