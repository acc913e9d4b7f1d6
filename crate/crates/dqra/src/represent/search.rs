use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{search_embedding_counted, RepresentationSpec, SpecJson};
use crate::algebra::AbstractDqRA;
use crate::catalog::{equivalence_candidates, map_pairs, PosetCatalog};
use crate::dq::ConcreteDqRA;
use crate::error::Error;
use crate::twisted::{enumerate_upsets, twisted_order, DEFAULT_CAP};

/// Limits for [`search_representation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Stop after this many algebras have been built.
    pub max_builds: Option<usize>,
    /// Up-set enumeration cap per `(≤, E)`; larger lattices are skipped and
    /// counted.
    pub cap: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_builds: None,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchCounters {
    pub posets: usize,
    pub partitions: usize,
    pub pairs: usize,
    pub builds: usize,
    pub embeddings_tried: usize,
    pub skipped_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub algebra: String,
    pub max_n: usize,
    pub counters: SearchCounters,
    pub witness: Option<SpecJson>,
    pub witness_size: Option<usize>,
    pub exhausted_budget: bool,
}

impl SearchReport {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }

    pub fn witness_spec(&self) -> Option<RepresentationSpec> {
        self.witness.as_ref().map(|j| RepresentationSpec::from_json(j).expect("witness is a valid spec"))
    }
}

/// Search the generated catalog of posets with at most `max_n` points.
pub fn search_representation(a: &AbstractDqRA, max_n: usize, budget: SearchBudget) -> SearchReport {
    let catalog = PosetCatalog::generate(max_n);
    search_representation_in(a, &catalog, max_n, budget)
}

/// Walk `(poset, E, α, β)` in catalog order, then coarsest-first partitions,
/// then lexicographic `α`, `β`, and report the first tuple whose algebra
/// admits an embedding of `a`.
///
/// All tuples over one `(poset, E)` share a lattice and are tried in
/// parallel; results are reduced in tuple order, so the witness and the
/// counters do not depend on scheduling.
pub fn search_representation_in(
    a: &AbstractDqRA,
    catalog: &PosetCatalog,
    max_n: usize,
    budget: SearchBudget,
) -> SearchReport {
    let mut c = SearchCounters::default();
    let report = |c: SearchCounters, hit: Option<RepresentationSpec>, exhausted: bool| SearchReport {
        algebra: a.name().to_string(),
        max_n,
        counters: c,
        witness_size: hit.as_ref().map(RepresentationSpec::n),
        witness: hit.map(|s| s.to_json()),
        exhausted_budget: exhausted,
    };

    for p in catalog.iter_up_to(max_n) {
        c.posets += 1;
        for e in equivalence_candidates(p) {
            c.partitions += 1;
            let mut pairs = map_pairs(p, &e);
            if pairs.is_empty() {
                continue;
            }
            let mut exhausted = false;
            if let Some(max) = budget.max_builds {
                let left = max.saturating_sub(c.builds);
                if pairs.len() > left {
                    pairs.truncate(left);
                    exhausted = true;
                }
            }
            let lattice = match twisted_order(p, &e).and_then(|t| enumerate_upsets(t, budget.cap)) {
                Ok(l) => Arc::new(l),
                Err(Error::CarrierCapExceeded { .. }) => {
                    c.pairs += pairs.len();
                    c.skipped_cap += pairs.len();
                    if exhausted {
                        return report(c, None, true);
                    }
                    continue;
                }
                Err(e) => unreachable!("catalog tuples are valid: {e}"),
            };
            let outcomes: Vec<(bool, usize)> = pairs
                .par_iter()
                .map(|(alpha, beta)| {
                    let b = ConcreteDqRA::from_lattice(Arc::clone(&lattice), alpha.clone(), beta.clone())
                        .expect("catalog tuples are valid");
                    let (emb, nodes) = search_embedding_counted(a, &b);
                    (emb.is_some(), nodes)
                })
                .collect();
            for (i, (ok, nodes)) in outcomes.into_iter().enumerate() {
                c.pairs += 1;
                c.builds += 1;
                c.embeddings_tried += nodes;
                if ok {
                    let (alpha, beta) = pairs[i].clone();
                    let b = ConcreteDqRA::from_lattice(Arc::clone(&lattice), alpha, beta).expect("valid");
                    let emb = search_embedding_counted(a, &b).0.expect("found before");
                    return report(c, Some(emb.to_spec()), false);
                }
            }
            if exhausted {
                return report(c, None, true);
            }
        }
    }
    report(c, None, false)
}
