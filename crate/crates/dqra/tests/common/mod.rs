#![allow(dead_code)]

use std::path::PathBuf;

use dqra::{AbstractDqRA, RepresentationSpec};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn algebra(name: &str) -> AbstractDqRA {
    AbstractDqRA::load(data_dir().join("algebras").join(format!("{name}.json")))
        .unwrap_or_else(|e| panic!("loading algebra {name}: {e}"))
}

pub fn spec(name: &str) -> RepresentationSpec {
    RepresentationSpec::load(data_dir().join("specs").join(format!("{name}.json")))
        .unwrap_or_else(|e| panic!("loading spec {name}: {e}"))
}

/// Every shipped algebra, by file name.
pub fn all_algebras() -> Vec<AbstractDqRA> {
    let mut names: Vec<PathBuf> = std::fs::read_dir(data_dir().join("algebras"))
        .expect("algebra directory")
        .map(|e| e.unwrap().path())
        .collect();
    names.sort();
    names
        .iter()
        .map(|p| AbstractDqRA::load(p).unwrap_or_else(|e| panic!("{}: {e}", p.display())))
        .collect()
}

/// The algebras shipped with a representation spec of the same name.
pub const GOLDEN: [&str; 15] = [
    "chain1_trivial",
    "chain2_boolean",
    "chain3_sugihara",
    "chain4_zero_above_one",
    "chain5_a_squared_zero",
    "chain5_a_idempotent",
    "diamond_boolean",
    "diamond_boolean_swap_minus",
    "diamond_a_squared_unit",
    "diamond_zero_squared_one",
    "diamond_zero_squared_top",
    "six_twisted_chain",
    "six_two_blocks",
    "eight_two_blocks",
    "sixteen_noncyclic",
];

/// Seed for randomized suites: `DQRA_SEED` or a fixed default.
pub fn seed() -> u64 {
    std::env::var("DQRA_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x05ee_dd9a)
}

/// Plain `Vec<Vec<bool>>` relations, the reference for bit-matrix results.
pub mod naive {
    pub type M = Vec<Vec<bool>>;

    pub fn of(r: &dqra::FinRel) -> M {
        (0..r.n()).map(|x| (0..r.n()).map(|y| r.has(x, y)).collect()).collect()
    }

    pub fn compose(a: &M, b: &M) -> M {
        let n = a.len();
        (0..n).map(|x| (0..n).map(|y| (0..n).any(|z| a[x][z] && b[z][y])).collect()).collect()
    }

    pub fn converse(a: &M) -> M {
        let n = a.len();
        (0..n).map(|x| (0..n).map(|y| a[y][x]).collect()).collect()
    }

    pub fn complement(a: &M, u: &M) -> M {
        let n = a.len();
        (0..n).map(|x| (0..n).map(|y| u[x][y] && !a[x][y]).collect()).collect()
    }

    pub fn graph(img: &[usize]) -> M {
        let n = img.len();
        (0..n).map(|x| (0..n).map(|y| img[x] == y).collect()).collect()
    }
}
