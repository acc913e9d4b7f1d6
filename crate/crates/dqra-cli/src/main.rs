use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

use dqra::algebra::{
    cyclic_subuniverse, derive_algebra, isomorphism_search, lattice_isomorphisms, nonfinrep_detector, DeriveKind,
    Verdict,
};
use dqra::catalog::PosetCatalog;
use dqra::represent::{
    block_decompose, disjoint_union, search_representation_in, verify_assignment, verify_representation_with_cap,
    SearchBudget,
};
use dqra::twisted::blocks_of;
use dqra::{AbstractDqRA, ConcreteDqRA, RepresentationSpec, DEFAULT_CAP};

mod report;

const DEFAULT_SEED: u64 = 0x05ee_dd9a;

#[derive(Parser)]
#[command(name = "dqra", version, about = "Build, check and represent finite distributive quasi relation algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Largest up-set lattice to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Machine-readable output.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Human-readable output (the default).
    #[arg(long, global = true)]
    text: bool,
    /// Write the produced document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the concrete algebra of a construction spec.
    Build { spec: PathBuf },
    /// Check every axiom group on an algebra file.
    Check { algebra: PathBuf },
    /// Replace the prime by its ▽n or △n variant.
    Derive {
        algebra: PathBuf,
        /// nabla (▽) or delta (△)
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Restrict to the elements with ∼a = −a.
    Cyclic { algebra: PathBuf },
    /// Look for an isomorphism between two algebras.
    Iso { left: PathBuf, right: PathBuf },
    /// Check that a spec's assignment extends to an embedding.
    Verify {
        algebra: PathBuf,
        spec: PathBuf,
        /// Also check this many random single-field mutations all fail.
        #[arg(long, default_value_t = 0)]
        mutate: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Search small posets for a representation.
    Search {
        algebra: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long)]
        max_builds: Option<usize>,
        /// Poset catalog cache; created or extended as needed.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Look for 0 < a < 1 with a·a ≤ 0.
    Detect { algebra: PathBuf },
    /// Split a spec's algebra along the blocks of E.
    Decompose { spec: PathBuf },
    /// Disjoint union of specs.
    Union {
        #[arg(required = true)]
        specs: Vec<PathBuf>,
    },
    /// Render any JSON document produced here.
    Report {
        input: PathBuf,
        /// Also write a Hasse diagram in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

/// Whether the check the command performs came out positive.
enum Status {
    Pass,
    Fail,
}

struct Ctx {
    cap: usize,
    json: bool,
    out: Option<PathBuf>,
}

impl Ctx {
    /// Send a document to `--out` or standard output; `text` is what a
    /// person sees when the document itself is not printed.
    fn emit(&self, doc: &Value, text: &str) -> Result<()> {
        let rendered = serde_json::to_string_pretty(doc)?;
        match &self.out {
            Some(p) => {
                std::fs::write(p, rendered + "\n").with_context(|| format!("writing {}", p.display()))?;
                if !self.json {
                    print!("{text}");
                }
            }
            None if self.json => println!("{rendered}"),
            None => print!("{text}"),
        }
        Ok(())
    }
}

fn load_algebra(p: &Path) -> Result<AbstractDqRA> {
    Ok(AbstractDqRA::load(p)?)
}

fn load_spec(p: &Path) -> Result<RepresentationSpec> {
    Ok(RepresentationSpec::load(p)?)
}

fn algebra_doc(a: &AbstractDqRA) -> Value {
    serde_json::to_value(a.to_json()).expect("algebra JSON")
}

fn spec_doc(s: &RepresentationSpec) -> Value {
    serde_json::to_value(s.to_json()).expect("spec JSON")
}

fn check_doc(a: &AbstractDqRA) -> (Value, String, bool) {
    let rep = a.axiom_check();
    let groups: Vec<Value> = rep
        .outcomes()
        .iter()
        .map(|o| {
            json!({
                "group": o.group.name(),
                "pass": o.pass(),
                "witness": o.witness.as_ref().map(|w| w.render(a)),
            })
        })
        .collect();
    let doc = json!({
        "algebra": a.name(),
        "size": a.size(),
        "pass": rep.all_pass(),
        "qra": rep.is_qra(),
        "groups": groups,
    });
    (doc, rep.render(a), rep.all_pass())
}

fn run(cli: Cli) -> Result<Status> {
    let ctx = Ctx {
        cap: cli.cap,
        json: cli.json,
        out: cli.out,
    };
    match cli.cmd {
        Cmd::Build { spec } => {
            let s = load_spec(&spec)?;
            let b = s.build(ctx.cap)?;
            let a = b.to_abstract();
            let mut text = b.stats_line() + "\n";
            text += &lattice_summary(&b);
            ctx.emit(&algebra_doc(&a), &text)?;
            Ok(Status::Pass)
        }
        Cmd::Check { algebra } => {
            let a = load_algebra(&algebra)?;
            let (doc, text, ok) = check_doc(&a);
            let mut text = text;
            if !ok {
                let qra = a.axiom_check().is_qra();
                text += if qra {
                    "quasi relation algebra, not distributive\n"
                } else {
                    "not a quasi relation algebra\n"
                };
            }
            ctx.emit(&doc, &text)?;
            Ok(if ok { Status::Pass } else { Status::Fail })
        }
        Cmd::Derive { algebra, kind, n } => {
            let a = load_algebra(&algebra)?;
            let kind: DeriveKind = kind.parse()?;
            let d = derive_algebra(&a, kind, n);
            ctx.emit(&algebra_doc(&d), &report::algebra_text(&d))?;
            Ok(Status::Pass)
        }
        Cmd::Cyclic { algebra } => {
            let a = load_algebra(&algebra)?;
            let c = cyclic_subuniverse(&a)?;
            ctx.emit(&algebra_doc(&c), &report::algebra_text(&c))?;
            Ok(Status::Pass)
        }
        Cmd::Iso { left, right } => {
            let (a, b) = (load_algebra(&left)?, load_algebra(&right)?);
            let found = isomorphism_search(&a, &b);
            let tried = lattice_isomorphisms(&a, &b).len();
            let (doc, text) = match &found {
                Some(h) => {
                    let pairs: Vec<String> = h.iter().enumerate().map(|(x, &y)| format!("{} ↦ {}", a.label(x), b.label(y))).collect();
                    (
                        json!({"isomorphic": true, "map": h}),
                        format!("isomorphic: {}\n", pairs.join(", ")),
                    )
                }
                None => (
                    json!({"isomorphic": false, "lattice_isomorphisms": tried}),
                    format!("not isomorphic ({tried} lattice isomorphisms, none preserves the operations)\n"),
                ),
            };
            ctx.emit(&doc, &text)?;
            Ok(if found.is_some() { Status::Pass } else { Status::Fail })
        }
        Cmd::Verify {
            algebra,
            spec,
            mutate,
            seed,
        } => verify(&ctx, &load_algebra(&algebra)?, &load_spec(&spec)?, mutate, seed),
        Cmd::Search {
            algebra,
            max_n,
            max_builds,
            catalog,
        } => {
            let a = load_algebra(&algebra)?;
            if max_n > 8 {
                bail!("--max-n {max_n} is beyond the supported catalog sizes (at most 8)");
            }
            let cat = match catalog {
                Some(p) => PosetCatalog::load_or_generate(&p, max_n)?,
                None => PosetCatalog::generate(max_n),
            };
            let budget = SearchBudget { max_builds, cap: ctx.cap };
            let r = search_representation_in(&a, &cat, max_n, budget);
            let doc = serde_json::to_value(&r)?;
            ctx.emit(&doc, &report::render(&doc)?)?;
            Ok(if r.found() { Status::Pass } else { Status::Fail })
        }
        Cmd::Detect { algebra } => {
            let a = load_algebra(&algebra)?;
            match nonfinrep_detector(&a) {
                Verdict::Flagged(x) => {
                    let w = a.label(x);
                    ctx.emit(
                        &json!({"flagged": true, "witness": w}),
                        &format!("FLAGGED: not finitely representable (witness {w}: 0 < {w} < 1 and {w}·{w} ≤ 0)\n"),
                    )?;
                    Ok(Status::Fail)
                }
                Verdict::Clear => {
                    ctx.emit(
                        &json!({"flagged": false}),
                        "CLEAR: no element with 0 < a < 1 and a·a ≤ 0 (representability undecided)\n",
                    )?;
                    Ok(Status::Pass)
                }
            }
        }
        Cmd::Decompose { spec } => {
            let s = load_spec(&spec)?;
            let b = s.build(ctx.cap)?;
            let d = block_decompose(&b)?;
            let labels = s.poset.labels();
            let parts: Vec<Value> = d.parts.iter().map(|p| spec_doc(&part_spec(p))).collect();
            let blocks: Vec<Vec<&str>> = d.blocks.iter().map(|blk| blk.iter().map(|&x| labels[x].as_str()).collect()).collect();
            let doc = json!({"carrier": b.len(), "blocks": blocks, "parts": parts});
            ctx.emit(&doc, &report::render(&doc)?)?;
            Ok(Status::Pass)
        }
        Cmd::Union { specs } => {
            let parts = specs.iter().map(|p| load_spec(p)).collect::<Result<Vec<_>>>()?;
            let u = disjoint_union(&parts)?;
            let text = format!(
                "union of {} specs: {} points, {} E-blocks\n",
                parts.len(),
                u.n(),
                blocks_of(&u.e).len()
            );
            ctx.emit(&spec_doc(&u), &text)?;
            Ok(Status::Pass)
        }
        Cmd::Report { input, dot } => {
            let text = std::fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let doc: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", input.display()))?;
            if let Some(path) = dot {
                let d = report::dot(&doc, ctx.cap)?;
                std::fs::write(&path, d).with_context(|| format!("writing {}", path.display()))?;
            }
            let rendered = report::render(&doc)?;
            match &ctx.out {
                Some(p) => std::fs::write(p, rendered).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{rendered}"),
            }
            Ok(Status::Pass)
        }
    }
}

fn lattice_summary(b: &ConcreteDqRA) -> String {
    let lat = b.lattice();
    let height = lat.get(lat.top()).len() - lat.get(lat.bottom()).len();
    format!(
        "lattice: {} up-sets of {} points, height {}\n",
        lat.len(),
        lat.order().points().len(),
        height
    )
}

fn part_spec(p: &ConcreteDqRA) -> RepresentationSpec {
    RepresentationSpec::new(p.poset().clone(), p.e().clone(), p.alpha().clone(), p.beta().clone())
}

fn verify(ctx: &Ctx, a: &AbstractDqRA, s: &RepresentationSpec, mutate: usize, seed: u64) -> Result<Status> {
    let b = s.build(ctx.cap)?;
    let main = verify_assignment(a, &b, &s.assignment);
    let mut text = match &main {
        Ok(e) => {
            let labels = s.poset.labels();
            let mut t = format!("verified: {} embeds into {}\n", a.name(), b.stats_line());
            for (x, r) in e.map.iter().enumerate() {
                t += &format!("  {} ↦ {}\n", a.label(x), r.display_with(labels));
            }
            t
        }
        Err(e) => format!("FAILED: {e}\n"),
    };
    let mut survivors = Vec::new();
    let mut checked = 0;
    if mutate > 0 {
        let all = s.single_field_mutations();
        let mut rng = StdRng::seed_from_u64(seed);
        let picks = rand::seq::index::sample(&mut rng, all.len(), mutate.min(all.len()));
        for i in picks.iter() {
            let (what, m) = &all[i];
            checked += 1;
            let outcome = if m.alpha == s.alpha && m.beta == s.beta {
                verify_assignment(a, &b, &m.assignment).map(|_| ())
            } else {
                verify_representation_with_cap(a, m, ctx.cap).map(|_| ())
            };
            if outcome.is_ok() {
                survivors.push(what.clone());
            }
        }
        text += &format!("mutations: {checked} of {} checked (seed {seed}), {} still verify\n", all.len(), survivors.len());
        for w in &survivors {
            text += &format!("  survives: {w}\n");
        }
    }
    let doc = json!({
        "verified": main.is_ok(),
        "error": main.as_ref().err().map(|e| e.to_string()),
        "mutations_checked": checked,
        "surviving_mutations": survivors,
    });
    ctx.emit(&doc, &text)?;
    Ok(if main.is_ok() && survivors.is_empty() { Status::Pass } else { Status::Fail })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
