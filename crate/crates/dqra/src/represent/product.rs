use super::RepresentationSpec;
use crate::dq::{build, ConcreteDqRA};
use crate::error::{Error, Result};
use crate::relcore::{Endomap, FinRel, Poset};
use crate::twisted::blocks_of;

/// Tag the components apart (`x` of component `i` becomes `x.i`) and take the
/// union of orders, equivalences and maps. The result has one `E`-block per
/// component block, so its algebra is the product of the component algebras.
pub fn disjoint_union(specs: &[RepresentationSpec]) -> Result<RepresentationSpec> {
    let total: usize = specs.iter().map(RepresentationSpec::n).sum();
    let mut labels = Vec::with_capacity(total);
    let mut leq = FinRel::empty(total);
    let mut e = FinRel::empty(total);
    let mut alpha = vec![0; total];
    let mut beta = vec![0; total];
    let mut off = 0;
    for (i, s) in specs.iter().enumerate() {
        s.validate()?;
        let n = s.n();
        let f: Vec<usize> = (off..off + n).collect();
        labels.extend(s.poset.labels().iter().map(|l| format!("{l}.{i}")));
        leq = leq.union(&s.poset.leq_rel().embed(total, &f));
        e = e.union(&s.e.embed(total, &f));
        for x in 0..n {
            alpha[off + x] = off + s.alpha.apply(x);
            beta[off + x] = off + s.beta.apply(x);
        }
        off += n;
    }
    let spec = RepresentationSpec::new(Poset::new(labels, leq)?, e, Endomap::new(alpha)?, Endomap::new(beta)?);
    spec.validate()?;
    Ok(spec)
}

/// `φ(R)(i) = R ∩ Eᵢ`, read in the coordinates of block `i`.
fn component(r: &FinRel, block: &[usize]) -> FinRel {
    r.restrict(block)
}

/// Check that `φ(R) = (R ∩ Eᵢ)ᵢ` is an isomorphism from `whole` onto the
/// product of `parts`, where `parts[i]` lives on `blocks[i]`.
pub fn product_isomorphism(whole: &ConcreteDqRA, parts: &[ConcreteDqRA], blocks: &[Vec<usize>]) -> Result<()> {
    if parts.len() != blocks.len() {
        return Err(Error::DimensionMismatch {
            left: parts.len(),
            right: blocks.len(),
        });
    }
    let phi = |r: &FinRel| -> Vec<FinRel> { blocks.iter().map(|b| component(r, b)).collect() };
    let labels = whole.poset().labels();
    let show = |r: &FinRel| r.display_with(labels).to_string();

    // onto: same cardinality and injective
    let product_size = parts.iter().try_fold(1usize, |acc, p| acc.checked_mul(p.len()));
    if product_size != Some(whole.len()) {
        return Err(Error::Domain(format!(
            "carrier has {} elements but the product has {}",
            whole.len(),
            product_size.map_or("too many".into(), |s| s.to_string())
        )));
    }
    let images: Vec<Vec<FinRel>> = whole.carrier().iter().map(phi).collect();
    let mut seen = std::collections::HashMap::new();
    for (r, img) in whole.carrier().iter().zip(&images) {
        for (i, c) in img.iter().enumerate() {
            if !parts[i].in_carrier(c) {
                return Err(Error::NotInCarrier(format!("component {i} of {}", show(r))));
            }
        }
        if let Some(prev) = seen.insert(img.clone(), r) {
            return Err(Error::NotInjective(show(prev), show(r)));
        }
    }

    let check = |op: &'static str, args: String, got: &[FinRel], want: Vec<FinRel>| -> Result<()> {
        if got == want.as_slice() {
            Ok(())
        } else {
            Err(Error::Preservation {
                op,
                args,
                detail: "φ does not commute with the operation".into(),
            })
        }
    };
    let parts_apply = |img: &[FinRel], f: &dyn Fn(&ConcreteDqRA, &FinRel) -> FinRel| -> Vec<FinRel> {
        parts.iter().zip(img).map(|(p, c)| f(p, c)).collect()
    };
    check("1", String::new(), &phi(whole.one()), parts.iter().map(|p| p.one().clone()).collect())?;
    check("0", String::new(), &phi(whole.zero()), parts.iter().map(|p| p.zero().clone()).collect())?;
    for (r, img) in whole.carrier().iter().zip(&images) {
        check("∼", show(r), &phi(&whole.tilde_raw(r)), parts_apply(img, &|p, c| p.tilde_raw(c)))?;
        check("−", show(r), &phi(&whole.minus_raw(r)), parts_apply(img, &|p, c| p.minus_raw(c)))?;
        check("′", show(r), &phi(&whole.prime_raw(r)), parts_apply(img, &|p, c| p.prime_raw(c)))?;
    }
    for (r, ri) in whole.carrier().iter().zip(&images) {
        for (s, si) in whole.carrier().iter().zip(&images) {
            let args = || format!("{}, {}", show(r), show(s));
            let zip = |f: &dyn Fn(&FinRel, &FinRel) -> FinRel| -> Vec<FinRel> {
                ri.iter().zip(si).map(|(a, b)| f(a, b)).collect()
            };
            check("∧", args(), &phi(&r.intersection(s)), zip(&|a, b| a.intersection(b)))?;
            check("∨", args(), &phi(&r.union(s)), zip(&|a, b| a.union(b)))?;
            check("·", args(), &phi(&r.then(s)), zip(&|a, b| a.then(b)))?;
        }
    }
    Ok(())
}

/// One full algebra per `E`-block, with the verified product isomorphism.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub blocks: Vec<Vec<usize>>,
    pub parts: Vec<ConcreteDqRA>,
}

/// Split `Dq(E)` along the blocks of `E`: block `b` gets the induced order,
/// `E_b = b²`, and `α`, `β` restricted to `b` (they map `b` into itself since
/// both lie inside `E`).
pub fn block_decompose(b: &ConcreteDqRA) -> Result<BlockDecomposition> {
    let blocks = blocks_of(b.e());
    let mut parts = Vec::with_capacity(blocks.len());
    for blk in &blocks {
        let pos = |x: usize| blk.iter().position(|&y| y == x).expect("maps stay inside E");
        let p = b.poset().restrict(blk);
        let alpha = Endomap::new(blk.iter().map(|&x| pos(b.alpha().apply(x))).collect())?;
        let beta = Endomap::new(blk.iter().map(|&x| pos(b.beta().apply(x))).collect())?;
        parts.push(build(&p, &FinRel::full(blk.len()), &alpha, &beta, b.lattice().cap())?);
    }
    product_isomorphism(b, &parts, &blocks)?;
    Ok(BlockDecomposition { blocks, parts })
}
