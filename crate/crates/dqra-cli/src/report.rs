//! Text and DOT rendering for every JSON document the tool reads or writes.

use std::fmt::Write;

use anyhow::{bail, Result};
use serde_json::Value;

use dqra::algebra::AlgebraJson;
use dqra::dot::hasse_dot;
use dqra::relcore::PosetJson;
use dqra::represent::SpecJson;
use dqra::twisted::blocks_of;
use dqra::{AbstractDqRA, FinRel, Poset, RepresentationSpec};

enum Doc {
    Algebra(AbstractDqRA),
    Spec(RepresentationSpec),
    Poset(Poset),
    Other,
}

fn classify(doc: &Value) -> Result<Doc> {
    let has = |k: &str| doc.get(k).is_some();
    Ok(if has("mult") {
        let j: AlgebraJson = serde_json::from_value(doc.clone())?;
        Doc::Algebra(AbstractDqRA::from_json(&j)?)
    } else if has("poset") && has("alpha") {
        let j: SpecJson = serde_json::from_value(doc.clone())?;
        Doc::Spec(RepresentationSpec::from_json(&j)?)
    } else if has("elements") && has("leq") {
        let j: PosetJson = serde_json::from_value(doc.clone())?;
        Doc::Poset(Poset::from_json(&j)?)
    } else {
        Doc::Other
    })
}

pub fn render(doc: &Value) -> Result<String> {
    match classify(doc)? {
        Doc::Algebra(a) => Ok(algebra_text(&a)),
        Doc::Spec(s) => Ok(spec_text(&s)),
        Doc::Poset(p) => Ok(poset_text(&p)),
        Doc::Other => other_text(doc),
    }
}

/// Hasse diagram of the algebra's lattice, of a spec's carrier, or of a
/// poset.
pub fn dot(doc: &Value, cap: usize) -> Result<String> {
    match classify(doc)? {
        Doc::Algebra(a) => Ok(hasse_dot(a.name(), a.leq_rel(), a.labels())),
        Doc::Spec(s) => {
            let b = s.build(cap)?;
            let c = b.carrier();
            let leq = FinRel::from_fn(c.len(), |i, j| c[i].is_subset_of(&c[j]));
            let labels: Vec<String> = c.iter().map(|r| r.display_with(s.poset.labels()).to_string()).collect();
            Ok(hasse_dot("Dq", &leq, &labels))
        }
        Doc::Poset(p) => Ok(hasse_dot("poset", p.leq_rel(), p.labels())),
        Doc::Other => bail!("no diagram for this document; expected an algebra, a spec or a poset"),
    }
}

pub fn algebra_text(a: &AbstractDqRA) -> String {
    let mut s = String::new();
    let period = a.periodicity().map_or("?".into(), |p| p.to_string());
    writeln!(
        s,
        "{}: {} elements, 1 = {}, 0 = {}, period {}",
        a.name(),
        a.size(),
        a.label(a.one()),
        a.label(a.zero()),
        period
    )
    .unwrap();
    let w = a.labels().iter().map(|l| l.chars().count()).max().unwrap_or(1).max(2);
    writeln!(s, "  {:w$}  {:w$}  {:w$}  {:w$}", "a", "∼a", "−a", "a′").unwrap();
    for x in 0..a.size() {
        writeln!(
            s,
            "  {:w$}  {:w$}  {:w$}  {:w$}",
            a.label(x),
            a.label(a.tilde(x)),
            a.label(a.minus(x)),
            a.label(a.prime(x))
        )
        .unwrap();
    }
    let covers = dqra::relcore::hasse_covers(a.leq_rel());
    let cs: Vec<String> = covers.iter().map(|&(x, y)| format!("{} < {}", a.label(x), a.label(y))).collect();
    writeln!(s, "covers: {}", cs.join(", ")).unwrap();
    if a.size() <= 12 {
        writeln!(s, "fusion:").unwrap();
        write!(s, "  {:w$} ", "·").unwrap();
        for y in 0..a.size() {
            write!(s, " {:w$}", a.label(y)).unwrap();
        }
        s.push('\n');
        for x in 0..a.size() {
            write!(s, "  {:w$} ", a.label(x)).unwrap();
            for y in 0..a.size() {
                write!(s, " {:w$}", a.label(a.mult(x, y))).unwrap();
            }
            s.push('\n');
        }
    } else {
        writeln!(s, "fusion: {}×{} table omitted", a.size(), a.size()).unwrap();
    }
    s
}

fn map_text(m: &dqra::Endomap, labels: &[String]) -> String {
    let v: Vec<String> = (0..m.n()).map(|x| format!("{}↦{}", labels[x], labels[m.apply(x)])).collect();
    v.join(" ")
}

fn spec_text(s: &RepresentationSpec) -> String {
    let labels = s.poset.labels();
    let mut out = poset_text(&s.poset);
    let blocks: Vec<String> = blocks_of(&s.e)
        .iter()
        .map(|b| format!("{{{}}}", b.iter().map(|&x| labels[x].as_str()).collect::<Vec<_>>().join(",")))
        .collect();
    writeln!(out, "E blocks: {}", blocks.join(" ")).unwrap();
    writeln!(out, "α: {}", map_text(&s.alpha, labels)).unwrap();
    writeln!(out, "β: {}", map_text(&s.beta, labels)).unwrap();
    for (name, r) in &s.assignment {
        writeln!(out, "  {name} ↦ {}", r.display_with(labels)).unwrap();
    }
    out
}

fn poset_text(p: &Poset) -> String {
    let covers: Vec<String> = p
        .covers()
        .iter()
        .map(|&(x, y)| format!("{} < {}", p.label(x), p.label(y)))
        .collect();
    format!(
        "poset on {{{}}}; covers: {}\n",
        p.labels().join(","),
        if covers.is_empty() { "none".into() } else { covers.join(", ") }
    )
}

fn other_text(doc: &Value) -> Result<String> {
    let mut s = String::new();
    if let Some(groups) = doc.get("groups").and_then(Value::as_array) {
        writeln!(s, "{} ({} elements)", doc["algebra"].as_str().unwrap_or("?"), doc["size"]).unwrap();
        for g in groups {
            match g["witness"].as_str() {
                None => writeln!(s, "{}: pass", g["group"].as_str().unwrap_or("?")).unwrap(),
                Some(w) => writeln!(s, "{} fails at {w}", g["group"].as_str().unwrap_or("?")).unwrap(),
            }
        }
    } else if let Some(c) = doc.get("counters") {
        writeln!(s, "search for {} up to |X| = {}", doc["algebra"].as_str().unwrap_or("?"), doc["max_n"]).unwrap();
        if let Some(obj) = c.as_object() {
            for (k, v) in obj {
                writeln!(s, "  {k:16} {v}").unwrap();
            }
        }
        match doc.get("witness").filter(|w| !w.is_null()) {
            Some(w) => {
                writeln!(s, "found a representation on {} points:", doc["witness_size"]).unwrap();
                let j: SpecJson = serde_json::from_value(w.clone())?;
                s += &spec_text(&RepresentationSpec::from_json(&j)?);
            }
            None if doc["exhausted_budget"] == Value::Bool(true) => {
                writeln!(s, "none found before the build budget ran out").unwrap()
            }
            None => writeln!(s, "none found").unwrap(),
        }
    } else if let Some(parts) = doc.get("parts").and_then(Value::as_array) {
        writeln!(s, "{} elements split into {} blocks", doc["carrier"], parts.len()).unwrap();
        for (i, p) in parts.iter().enumerate() {
            let j: SpecJson = serde_json::from_value(p.clone())?;
            let spec = RepresentationSpec::from_json(&j)?;
            writeln!(s, "block {}: {}", i, doc["blocks"][i]).unwrap();
            s += &spec_text(&spec);
        }
    } else if let Some(f) = doc.get("flagged") {
        if f == true {
            writeln!(s, "FLAGGED: not finitely representable (witness {})", doc["witness"].as_str().unwrap_or("?")).unwrap();
        } else {
            writeln!(s, "CLEAR").unwrap();
        }
    } else if let Some(v) = doc.get("verified") {
        writeln!(s, "verified: {v}").unwrap();
        if let Some(e) = doc["error"].as_str() {
            writeln!(s, "  {e}").unwrap();
        }
        writeln!(s, "mutations checked: {}", doc["mutations_checked"]).unwrap();
    } else if let Some(i) = doc.get("isomorphic") {
        writeln!(s, "isomorphic: {i}").unwrap();
    } else {
        bail!("unrecognised document: expected output of one of the dqra commands");
    }
    Ok(s)
}
