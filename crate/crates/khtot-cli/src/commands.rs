//! The subcommands. Each returns an [`Outcome`]; report assembly happens in
//! `main`.

use crate::input::{self, DiagramFile, InputArgs};
use crate::report::{InputEcho, Table};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use khtot::algebra::{Mono, Poly};
use khtot::complex::{build_total, BigradedComplex, ComplexExport, Theory};
use khtot::invariants::{default_uprights, SInvariants, UprightSet, Variant};
use khtot::planar::{configuration, resolve, Configuration};
use khtot::{contrib, rules, LinkDiagram, Move};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// What a command produced, before timing and rendering.
pub struct Outcome {
    pub input: Option<InputEcho>,
    pub result: Value,
    pub passed: bool,
    pub tables: Vec<Table>,
}

fn echo(loaded: &input::Loaded) -> InputEcho {
    let d = &loaded.diagram;
    InputEcho {
        digest: loaded.digest.clone(),
        crossings: d.crossing_count(),
        components: d.component_count(),
        writhe: d.writhe(),
    }
}

/// Theory names on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoryArg {
    /// Khovanov homology over F2 (H = W = 0).
    Kh,
    /// Bar-Natan homology over F2[H] (W = 0).
    Bn,
    /// Szabó homology over F2[W] (H = 0).
    Sz,
    /// H = 1, over F2[W].
    #[value(name = "tot-fh", alias = "tot-fH")]
    TotFh,
    /// H = W = 1, over F2.
    Ftot,
    /// H inverted.
    Loc,
    /// Filtered Bar-Natan complex (W = 0, H = 1), over F2.
    Fbn,
    /// The full complex over F2[H,W] (reduce only; homology needs a PID).
    Total,
}

impl TheoryArg {
    pub fn theory(self) -> Theory {
        match self {
            TheoryArg::Kh => Theory::Kh,
            TheoryArg::Bn => Theory::Bn,
            TheoryArg::Sz => Theory::Sz,
            TheoryArg::TotFh => Theory::TotFh,
            TheoryArg::Ftot => Theory::Ftot,
            TheoryArg::Loc => Theory::Loc,
            TheoryArg::Fbn => Theory::Fbn,
            TheoryArg::Total => Theory::Total,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TheoryArg::Kh => "kh",
            TheoryArg::Bn => "bn",
            TheoryArg::Sz => "sz",
            TheoryArg::TotFh => "tot-fh",
            TheoryArg::Ftot => "ftot",
            TheoryArg::Loc => "loc",
            TheoryArg::Fbn => "fbn",
            TheoryArg::Total => "total",
        }
    }
}

fn grading_name(g: khtot::algebra::Grading) -> &'static str {
    match g {
        khtot::algebra::Grading::Bigraded => "bigraded",
        khtot::algebra::Grading::Homological => "homological",
        khtot::algebra::Grading::Ungraded => "ungraded",
    }
}

// ---------------------------------------------------------------- homology

#[derive(Debug, Clone, Args)]
pub struct HomologyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Specializations to compute (repeatable).
    #[arg(long, value_enum, default_values_t = [TheoryArg::Kh])]
    pub theory: Vec<TheoryArg>,
    /// Reduced theory: the subcomplex where the basepoint circle carries `x`
    /// (the smallest edge is used when no basepoint is set).
    #[arg(long)]
    pub reduced: bool,
}

#[derive(Debug, Clone, Serialize)]
struct GroupRow {
    gr_h: i32,
    gr_q: Option<i32>,
    free: usize,
    /// `[k, multiplicity]` for each summand `R/(t^k)`.
    torsion: Vec<(u32, usize)>,
}

#[derive(Debug, Clone, Serialize)]
struct HomologyRow {
    theory: &'static str,
    ring: &'static str,
    grading: &'static str,
    reduced: bool,
    total_free: usize,
    total_torsion: usize,
    groups: Vec<GroupRow>,
}

fn homology_row(total: &BigradedComplex, d: &LinkDiagram, t: TheoryArg, reduced: bool) -> Result<HomologyRow> {
    let mut c = total.theory(t.theory())?;
    if reduced {
        c = c.reduced_split(d)?.0;
    }
    let h = c.homology().with_context(|| format!("homology of {}", t.name()))?;
    Ok(HomologyRow {
        theory: t.name(),
        ring: h.ring.name(),
        grading: grading_name(h.grading),
        reduced,
        total_free: h.free_rank(),
        total_torsion: h.torsion_count(),
        groups: h
            .groups
            .iter()
            .map(|g| GroupRow { gr_h: g.gr_h, gr_q: g.gr_q, free: g.free, torsion: g.torsion.clone() })
            .collect(),
    })
}

fn torsion_text(t: &[(u32, usize)]) -> String {
    t.iter().map(|(k, m)| format!("{k}^{m}")).collect::<Vec<_>>().join(",")
}

pub fn homology(args: &HomologyArgs) -> Result<Outcome> {
    let loaded = args.input.load()?;
    let d = if args.reduced { input::with_default_basepoint(&loaded.diagram)? } else { loaded.diagram.clone() };
    let total = build_total(&d)?;
    let rows = args
        .theory
        .par_iter()
        .map(|&t| homology_row(&total, &d, t, args.reduced))
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new("homology", &["theory", "gr_h", "gr_q", "free", "torsion"]);
    for r in &rows {
        for g in &r.groups {
            table.push(vec![
                r.theory.into(),
                g.gr_h.to_string(),
                g.gr_q.map_or_else(|| "-".into(), |q| q.to_string()),
                g.free.to_string(),
                torsion_text(&g.torsion),
            ]);
        }
    }
    Ok(Outcome {
        input: Some(echo(&loaded)),
        result: json!({ "basepoint": d.basepoint(), "homology": rows }),
        passed: true,
        tables: vec![table],
    })
}

// ---------------------------------------------------------------- s

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    O,
    MinusO,
    Pair,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct SArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Upright set (`min`, `max`, `t=p/q`, `t=..,s=..,r=[...]`,
    /// `corners=[...]`, each with an optional `[n]` suffix); repeatable.
    /// Defaults to min, max, t=0, t=1/2 and t=1.
    #[arg(long = "upright")]
    pub uprights: Vec<String>,
    /// Which representative to use.
    #[arg(long, value_enum, default_value_t = VariantArg::All)]
    pub variant: VariantArg,
}

#[derive(Debug, Clone, Serialize)]
struct SRow {
    upright: String,
    variant: &'static str,
    s: i64,
}

pub fn s_values(args: &SArgs) -> Result<Outcome> {
    let loaded = args.input.load()?;
    let sets: Vec<UprightSet> = if args.uprights.is_empty() {
        default_uprights()
    } else {
        args.uprights
            .iter()
            .map(|s| s.parse::<UprightSet>().map_err(|e| anyhow!("upright set `{s}`: {e}")))
            .collect::<Result<_>>()?
    };
    let variants: Vec<Variant> = match args.variant {
        VariantArg::O => vec![Variant::O],
        VariantArg::MinusO => vec![Variant::MinusO],
        VariantArg::Pair => vec![Variant::Pair],
        VariantArg::All => Variant::ALL.to_vec(),
    };
    let inv = SInvariants::new(&loaded.diagram)?;
    let tasks: Vec<(&UprightSet, Variant)> =
        sets.iter().flat_map(|u| variants.iter().map(move |&v| (u, v))).collect();
    let rows = tasks
        .par_iter()
        .map(|&(u, v)| Ok(SRow { upright: u.to_string(), variant: v.name(), s: inv.s(u, v)? }))
        .collect::<Result<Vec<_>>>()?;
    let best = rows.iter().map(|r| r.s.abs()).max().unwrap_or(0);
    let bound = num_rational::Ratio::new(best, 2);
    let mut table = Table::new("s", &["upright", "variant", "s"]);
    for r in &rows {
        table.push(vec![r.upright.clone(), r.variant.into(), r.s.to_string()]);
    }
    let mut gt = Table::new("genus_bound", &["genus_bound"]);
    gt.push(vec![bound.to_string()]);
    Ok(Outcome {
        input: Some(echo(&loaded)),
        result: json!({ "values": rows, "genus_bound": bound.to_string() }),
        passed: true,
        tables: vec![table, gt],
    })
}

// ---------------------------------------------------------------- verify

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Check that the total differential squares to zero.
    #[arg(long)]
    pub d_squared: bool,
    /// Check that homology tables do not depend on the decoration.
    #[arg(long)]
    pub sweep: bool,
    /// Check the contribution-rule axioms on every cube configuration (for
    /// the given decoration, or all of them with `--all-decorations`).
    #[arg(long)]
    pub axioms: bool,
    /// Check the basepoint subcomplex and the reduced splitting.
    #[arg(long)]
    pub reduced: bool,
    /// Use all 2^n decorations instead of a random sample.
    #[arg(long)]
    pub all_decorations: bool,
    /// Number of random decorations added to the given one.
    #[arg(long, default_value_t = 8)]
    pub samples: usize,
    /// Seed for the random decorations.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Skip axiom checks on configurations with more arcs than this.
    #[arg(long)]
    pub max_index: Option<usize>,
    /// Report at most this many failing cells per check.
    #[arg(long, default_value_t = 20)]
    pub max_failures: usize,
    /// Audit an exported complex (as written by `reduce`) instead of a
    /// diagram: checks that its differential squares to zero.
    #[arg(long, conflicts_with_all = ["input", "pd", "knot"])]
    pub complex: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
struct CheckResult {
    name: &'static str,
    passed: bool,
    cases: usize,
    failures: Vec<Value>,
}

fn mask_text(n: usize, mask: u64) -> String {
    (0..n).map(|c| if (mask >> c) & 1 == 1 { '1' } else { '0' }).collect()
}

fn gen_json(c: &BigradedComplex, g: u32) -> Value {
    let gen = c.generators()[g as usize];
    json!({ "u": gen.u, "x": gen.x, "gr_h": gen.gr_h, "gr_q": gen.gr_q })
}

fn decoration_masks(d: &LinkDiagram, args: &VerifyArgs) -> Result<Vec<u64>> {
    let n = d.crossing_count();
    if args.all_decorations {
        if n > 20 {
            bail!("--all-decorations supports at most 20 crossings, the diagram has {n}");
        }
        return Ok((0..1u64 << n).collect());
    }
    let own = d.decorations().iter().enumerate().fold(0u64, |m, (c, &b)| m | ((b as u64) << c));
    let mut masks = vec![own];
    if n > 0 {
        let full = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        for _ in 0..args.samples {
            let m = rng.gen::<u64>() & full;
            if !masks.contains(&m) {
                masks.push(m);
            }
        }
    }
    Ok(masks)
}

/// The homology tables compared by the decoration sweep and by `moves`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Signature {
    kh: Vec<(i32, Option<i32>, usize)>,
    bn: Vec<(i32, Option<i32>, usize, Vec<(u32, usize)>)>,
    sz: Vec<(i32, Option<i32>, usize, Vec<(u32, usize)>)>,
    ftot_rank: usize,
}

pub fn signature(total: &BigradedComplex) -> Result<Signature> {
    let table = |t: Theory| -> Result<Vec<(i32, Option<i32>, usize, Vec<(u32, usize)>)>> {
        Ok(total.theory(t)?.homology()?.groups.into_iter().map(|g| (g.gr_h, g.gr_q, g.free, g.torsion)).collect())
    };
    Ok(Signature {
        kh: table(Theory::Kh)?.into_iter().map(|(h, q, f, _)| (h, q, f)).collect(),
        bn: table(Theory::Bn)?,
        sz: table(Theory::Sz)?,
        ftot_rank: total.theory(Theory::Ftot)?.homology()?.free_rank(),
    })
}

fn first_difference(a: &Signature, b: &Signature) -> &'static str {
    if a.kh != b.kh {
        "kh"
    } else if a.bn != b.bn {
        "bn"
    } else if a.sz != b.sz {
        "sz"
    } else {
        "ftot"
    }
}

struct MaskReport {
    d_squared: Vec<Value>,
    signature: Option<Signature>,
    reduced: Vec<Value>,
}

fn check_mask(d: &LinkDiagram, mask: u64, args: &VerifyArgs, which: [bool; 4]) -> Result<MaskReport> {
    let n = d.crossing_count();
    let dm = d.with_decoration_mask(mask);
    let total = build_total(&dm)?;
    let deco = mask_text(n, mask);
    let mut out = MaskReport { d_squared: Vec::new(), signature: None, reduced: Vec::new() };
    if which[0] {
        for (s, t, p) in total.verify_d_squared().into_iter().take(args.max_failures) {
            out.d_squared.push(json!({
                "decoration": deco,
                "source": gen_json(&total, s),
                "target": gen_json(&total, t),
                "coefficient": p.to_string(),
            }));
        }
    }
    if which[1] {
        out.signature = Some(signature(&total)?);
    }
    if which[3] {
        let mut fail = |what: &str, detail: Value| {
            out.reduced.push(json!({ "decoration": deco, "check": what, "detail": detail }));
        };
        let mut sub = vec![false; total.len()];
        for (g, gen) in total.generators().iter().enumerate() {
            let bc = resolve(&dm, gen.u).basepoint_circle().expect("basepoint is set");
            sub[g] = (gen.x >> bc) & 1 == 1;
        }
        if !total.is_subcomplex(&sub) {
            for (g, _) in sub.iter().enumerate().filter(|(_, &s)| s) {
                for (t, p) in total.column(g) {
                    if !sub[*t as usize] {
                        fail(
                            "subcomplex",
                            json!({ "source": gen_json(&total, g as u32), "target": gen_json(&total, *t), "coefficient": p.to_string() }),
                        );
                    }
                }
            }
        }
        let (minus, plus) = total.reduced_split(&dm)?;
        for (name, part) in [("sub_d_squared", &minus), ("quotient_d_squared", &plus)] {
            let bad = part.verify_d_squared();
            if !bad.is_empty() {
                fail(name, json!({ "cells": bad.len() }));
            }
        }
        let kh = total.theory(Theory::Kh)?.homology()?.free_rank();
        let khr = minus.theory(Theory::Kh)?.homology()?.free_rank();
        if kh != 2 * khr {
            fail("kh_rank_doubles", json!({ "unreduced": kh, "reduced": khr }));
        }
    }
    Ok(out)
}

fn axiom_pairs(n: usize, max_index: Option<usize>) -> Vec<(u64, u64)> {
    let mut pairs = Vec::new();
    for v in 0..1u64 << n {
        // Enumerate subsets u of v.
        let mut u = v;
        loop {
            if max_index.map_or(true, |k| (v & !u).count_ones() as usize <= k) {
                pairs.push((u, v));
            }
            if u == 0 {
                break;
            }
            u = (u - 1) & v;
        }
    }
    pairs.sort_unstable();
    pairs
}

fn check_axioms(d: &LinkDiagram, masks: &[u64], args: &VerifyArgs) -> Result<CheckResult> {
    let n = d.crossing_count();
    if n > 12 {
        bail!("--axioms supports at most 12 crossings, the diagram has {n}");
    }
    let pairs = axiom_pairs(n, args.max_index);
    let jobs: Vec<(u64, (u64, u64))> =
        masks.iter().flat_map(|&m| pairs.iter().map(move |&p| (m, p))).collect();
    let results: Vec<(u64, (u64, u64), Configuration, Vec<rules::Violation>)> = jobs
        .par_iter()
        .map(|&(m, (u, v))| {
            let dm = d.with_decoration_mask(m);
            let cfg = configuration(&dm, u, v).map_err(|e| anyhow!(e))?;
            let viol = rules::check_configuration(&cfg);
            Ok((m, (u, v), cfg, viol))
        })
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut passed = true;
    for (m, (u, v), cfg, viol) in &results {
        if viol.is_empty() {
            continue;
        }
        passed = false;
        for x in viol.iter() {
            if failures.len() >= args.max_failures {
                break;
            }
            failures.push(json!({
                "decoration": mask_text(n, *m),
                "u": u,
                "v": v,
                "rule": format!("{:?}", x.rule),
                "evaluator": format!("{:?}", x.evaluator),
                "x": x.x,
                "y": x.y,
                "detail": x.detail,
                "configuration": cfg.dump(),
            }));
        }
    }
    Ok(CheckResult { name: "axioms", passed, cases: results.len(), failures })
}

/// Nonzero entries of `delta^2` for an exported complex.
fn export_d_squared(e: &ComplexExport) -> Vec<(u32, u32, Poly)> {
    let mut columns: Vec<Vec<(u32, Poly)>> = vec![Vec::new(); e.generators.len()];
    for entry in &e.entries {
        let mut p = Poly::zero();
        for t in &entry.terms {
            p.add_mono(Mono::new(t[0], t[1]));
        }
        columns[entry.source as usize].push((entry.target, p));
    }
    let mut bad = Vec::new();
    for (s, col) in columns.iter().enumerate() {
        let mut acc: BTreeMap<u32, Poly> = BTreeMap::new();
        for (mid, p) in col {
            for (t, q) in &columns[*mid as usize] {
                acc.entry(*t).or_insert_with(Poly::zero).add_assign(&p.mul(q));
            }
        }
        bad.extend(acc.into_iter().filter(|(_, p)| !p.is_zero()).map(|(t, p)| (s as u32, t, p)));
    }
    bad
}

fn verify_complex(path: &std::path::Path, args: &VerifyArgs) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).context("invalid complex JSON")?;
    // Accept either a bare export or a full `reduce` report.
    let inner = value.pointer("/result/complex").cloned().unwrap_or(value);
    let export: ComplexExport = serde_json::from_value(inner).context("invalid complex JSON")?;
    let n = export.generators.len();
    if let Some(e) = export.entries.iter().find(|e| e.source as usize >= n || e.target as usize >= n) {
        bail!("entry {} -> {} refers to a missing generator", e.source, e.target);
    }
    let bad = export_d_squared(&export);
    let gen = |g: u32| serde_json::to_value(&export.generators[g as usize]).expect("generators serialize");
    let failures: Vec<Value> = bad
        .iter()
        .take(args.max_failures)
        .map(|(s, t, p)| json!({ "source": gen(*s), "target": gen(*t), "coefficient": p.to_string() }))
        .collect();
    let check = CheckResult { name: "d_squared", passed: bad.is_empty(), cases: n, failures };
    let mut table = Table::new("checks", &["check", "passed", "cases", "failures"]);
    table.push(vec![check.name.into(), check.passed.to_string(), n.to_string(), bad.len().to_string()]);
    Ok(Outcome {
        input: None,
        result: json!({ "generators": n, "entries": export.entries.len(), "checks": [check] }),
        passed: bad.is_empty(),
        tables: vec![table],
    })
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    if let Some(path) = &args.complex {
        return verify_complex(path, args);
    }
    let loaded = args.input.load()?;
    let none = !(args.d_squared || args.sweep || args.axioms || args.reduced);
    let which = [args.d_squared || none, args.sweep || none, args.axioms || none, args.reduced || none];
    let d = if which[3] { input::with_default_basepoint(&loaded.diagram)? } else { loaded.diagram.clone() };
    let masks = decoration_masks(&d, args)?;
    let reports =
        masks.par_iter().map(|&m| check_mask(&d, m, args, which)).collect::<Result<Vec<MaskReport>>>()?;
    let n = d.crossing_count();
    let mut checks = Vec::new();
    if which[0] {
        let failures: Vec<Value> =
            reports.iter().flat_map(|r| r.d_squared.iter().cloned()).take(args.max_failures).collect();
        checks.push(CheckResult { name: "d_squared", passed: failures.is_empty(), cases: masks.len(), failures });
    }
    if which[1] {
        let base = reports[0].signature.as_ref().expect("signature computed");
        let failures: Vec<Value> = reports
            .iter()
            .zip(&masks)
            .filter(|(r, _)| r.signature.as_ref() != Some(base))
            .take(args.max_failures)
            .map(|(r, &m)| {
                let sig = r.signature.as_ref().expect("signature computed");
                json!({
                    "decoration": mask_text(n, m),
                    "reference": mask_text(n, masks[0]),
                    "theory": first_difference(base, sig),
                })
            })
            .collect();
        checks.push(CheckResult { name: "sweep", passed: failures.is_empty(), cases: masks.len(), failures });
    }
    if which[2] {
        // Decorations only re-orient arcs, which the disoriented rule already
        // covers; sweep them here only on request.
        let axiom_masks = if args.all_decorations { &masks[..] } else { &masks[..1] };
        checks.push(check_axioms(&d, axiom_masks, args)?);
    }
    if which[3] {
        let failures: Vec<Value> =
            reports.iter().flat_map(|r| r.reduced.iter().cloned()).take(args.max_failures).collect();
        checks.push(CheckResult { name: "reduced", passed: failures.is_empty(), cases: masks.len(), failures });
    }
    let passed = checks.iter().all(|c| c.passed);
    let mut table = Table::new("checks", &["check", "passed", "cases", "failures"]);
    let mut cells = Table::new("failures", &["check", "cell"]);
    for c in &checks {
        table.push(vec![c.name.into(), c.passed.to_string(), c.cases.to_string(), c.failures.len().to_string()]);
        for f in &c.failures {
            cells.push(vec![c.name.into(), f.to_string()]);
        }
    }
    Ok(Outcome {
        input: Some(echo(&loaded)),
        result: json!({
            "decorations": masks.iter().map(|&m| mask_text(n, m)).collect::<Vec<_>>(),
            "checks": checks,
        }),
        passed,
        tables: vec![table, cells],
    })
}

// ---------------------------------------------------------------- reduce

#[derive(Debug, Clone, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Specialization to export.
    #[arg(long, value_enum, default_value_t = TheoryArg::Total)]
    pub theory: TheoryArg,
}

pub fn reduce(args: &ReduceArgs) -> Result<Outcome> {
    let loaded = args.input.load()?;
    let c = build_total(&loaded.diagram)?.theory(args.theory.theory())?;
    let export = c.reduced_export();
    let mut gens = Table::new("generators", &["index", "u", "x", "gr_h", "gr_q"]);
    for (i, g) in export.generators.iter().enumerate() {
        gens.push(vec![i.to_string(), g.u.to_string(), g.x.to_string(), g.gr_h.to_string(), g.gr_q.to_string()]);
    }
    let mut entries = Table::new("entries", &["source", "target", "coefficient"]);
    for e in &export.entries {
        let mut p = Poly::zero();
        for t in &e.terms {
            p.add_mono(Mono::new(t[0], t[1]));
        }
        entries.push(vec![e.source.to_string(), e.target.to_string(), p.to_string()]);
    }
    Ok(Outcome {
        input: Some(echo(&loaded)),
        result: json!({ "theory": args.theory.name(), "original_generators": c.len(), "complex": export }),
        passed: true,
        tables: vec![gens, entries],
    })
}

// ---------------------------------------------------------------- moves

#[derive(Debug, Clone, Args)]
pub struct MovesArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Moves separated by `;`: `R1+:EDGE:L|R`, `R1-:EDGE:L|R`,
    /// `R2:OVER:UNDER:L|R`, `R3:EDGE:L|R`.
    #[arg(long)]
    pub apply: String,
    /// Skip the homology comparison.
    #[arg(long)]
    pub no_check: bool,
}

fn side(s: &str) -> Result<bool> {
    match s {
        "L" | "l" | "left" => Ok(true),
        "R" | "r" | "right" => Ok(false),
        _ => bail!("side must be L or R, got `{s}`"),
    }
}

/// Parses a `;`-separated move list.
pub fn parse_moves(text: &str) -> Result<Vec<Move>> {
    let edge = |s: &str| s.parse::<khtot::EdgeId>().map_err(|_| anyhow!("bad edge id `{s}`"));
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|m| {
            let parts: Vec<&str> = m.split(':').map(str::trim).collect();
            Ok(match parts.as_slice() {
                [kind @ ("R1+" | "R1-"), e, s] => Move::R1 { edge: edge(e)?, positive: *kind == "R1+", left: side(s)? },
                ["R2", o, u, s] => Move::R2 { over: edge(o)?, under: edge(u)?, left: side(s)? },
                ["R3", e, s] => Move::R3 { edge: edge(e)?, left: side(s)? },
                _ => bail!("cannot parse move `{m}`"),
            })
        })
        .collect()
}

fn move_text(m: &Move) -> String {
    let lr = |l: bool| if l { "L" } else { "R" };
    match *m {
        Move::R1 { edge, positive, left } => format!("R1{}:{edge}:{}", if positive { '+' } else { '-' }, lr(left)),
        Move::R2 { over, under, left } => format!("R2:{over}:{under}:{}", lr(left)),
        Move::R3 { edge, left } => format!("R3:{edge}:{}", lr(left)),
    }
}

pub fn moves(args: &MovesArgs) -> Result<Outcome> {
    let loaded = args.input.load()?;
    let list = parse_moves(&args.apply)?;
    let mut d = loaded.diagram.clone();
    for (i, m) in list.iter().enumerate() {
        d = d.apply_move(*m).with_context(|| format!("move {} ({})", i + 1, move_text(m)))?;
    }
    let file = DiagramFile::from_diagram(&d);
    let mut passed = true;
    let mut check = Value::Null;
    let mut ct = Table::new("check", &["table", "equal"]);
    if !args.no_check {
        let (before, after) = rayon::join(
            || build_total(&loaded.diagram).map_err(anyhow::Error::from).and_then(|c| signature(&c)),
            || build_total(&d).map_err(anyhow::Error::from).and_then(|c| signature(&c)),
        );
        let (before, after) = (before?, after?);
        let eq = [
            ("kh", before.kh == after.kh),
            ("bn", before.bn == after.bn),
            ("sz", before.sz == after.sz),
            ("ftot", before.ftot_rank == after.ftot_rank),
        ];
        passed = eq.iter().all(|e| e.1);
        for (name, e) in eq {
            ct.push(vec![name.into(), e.to_string()]);
        }
        check = json!({ "equal": passed, "before": before, "after": after });
    }
    let mut dt = Table::new("diagram", &["crossing", "a", "b", "c", "d", "decoration"]);
    for (i, t) in d.crossings().iter().enumerate() {
        dt.push(vec![
            i.to_string(),
            t[0].to_string(),
            t[1].to_string(),
            t[2].to_string(),
            t[3].to_string(),
            (d.decorations()[i] as u8).to_string(),
        ]);
    }
    let mut tables = vec![dt];
    if !args.no_check {
        tables.push(ct);
    }
    Ok(Outcome {
        input: Some(echo(&loaded)),
        result: json!({
            "moves": list.iter().map(move_text).collect::<Vec<_>>(),
            "diagram": file,
            "digest": input::digest(&d),
            "check": check,
        }),
        passed,
        tables,
    })
}

// ---------------------------------------------------------------- debug

#[derive(Debug, Clone, Args)]
pub struct DebugArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// A configuration dump file to classify instead of a diagram.
    #[arg(long, conflicts_with_all = ["input", "pd", "knot"])]
    pub config: Option<std::path::PathBuf>,
    /// Starting cube vertex (bitmask of 1-resolved crossings).
    #[arg(long, default_value_t = 0)]
    pub u: u64,
    /// Ending cube vertex; defaults to all crossings.
    #[arg(long)]
    pub v: Option<u64>,
    /// Restrict to one starting label.
    #[arg(long)]
    pub x: Option<u64>,
    /// Restrict to one ending label.
    #[arg(long)]
    pub y: Option<u64>,
}

pub fn debug(args: &DebugArgs) -> Result<Outcome> {
    let (input, cfg) = match &args.config {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            (None, Configuration::parse_dump(&text).map_err(|e| anyhow!("invalid configuration dump: {e}"))?)
        }
        None => {
            let loaded = args.input.load()?;
            let n = loaded.diagram.crossing_count();
            let v = args.v.unwrap_or(if n == 0 { 0 } else { u64::MAX >> (64 - n) });
            let cfg = configuration(&loaded.diagram, args.u, v).map_err(|e| anyhow!(e))?;
            (Some(echo(&loaded)), cfg)
        }
    };
    let starts = cfg.circle_count();
    let ends = cfg.surgery().dual.circle_count();
    if starts > 16 || ends > 16 {
        bail!("configuration has too many circles to enumerate labels ({starts} starting, {ends} ending)");
    }
    let mut rows = Vec::new();
    let mut table = Table::new("families", &["x", "y", "families"]);
    for x in 0..1u64 << starts {
        if args.x.is_some_and(|want| want != x) {
            continue;
        }
        for y in 0..1u64 << ends {
            if args.y.is_some_and(|want| want != y) {
                continue;
            }
            let tags = contrib::classify(&cfg, x, y);
            if tags.is_empty() && args.x.is_none() && args.y.is_none() {
                continue;
            }
            let names: Vec<String> = tags.iter().map(|t| format!("{t:?}")).collect();
            table.push(vec![x.to_string(), y.to_string(), names.join(",")]);
            rows.push(json!({ "x": x, "y": y, "families": names }));
        }
    }
    let mut dump = Table::new("configuration", &["line"]);
    for l in cfg.dump().lines() {
        dump.push(vec![l.to_string()]);
    }
    Ok(Outcome {
        input,
        result: json!({
            "configuration": cfg.dump(),
            "index": cfg.index(),
            "starting_circles": starts,
            "ending_circles": ends,
            "labels": rows,
        }),
        passed: true,
        tables: vec![dump, table],
    })
}
