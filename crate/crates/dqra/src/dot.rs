//! Graphviz output for Hasse diagrams.

use std::fmt::Write;

use crate::relcore::{hasse_covers, FinRel};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A `digraph` with one edge per covering pair of `leq`, drawn bottom-up.
pub fn hasse_dot(name: &str, leq: &FinRel, labels: &[String]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for (i, l) in labels.iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(l)).unwrap();
    }
    for (x, y) in hasse_covers(leq) {
        writeln!(out, "  n{x} -> n{y} [arrowhead=none];").unwrap();
    }
    out.push_str("}\n");
    out
}
