//! Diagram ingestion: JSON files, PD text, and the bundled corpus.

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use khtot::{corpus, parse_pd, DiagramOptions, EdgeId, LinkDiagram};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::PathBuf;

/// The JSON diagram format accepted on input and produced by `moves`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    /// Crossing tuples.
    pub pd: Vec<[EdgeId; 4]>,
    /// One bit per crossing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decorations: Option<Vec<u8>>,
    /// Basepoint edge id.
    #[serde(default)]
    pub basepoint: Option<EdgeId>,
    /// Per-component orientation signs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientations: Option<Vec<i8>>,
    /// Crossingless unknotted components.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub loops: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl DiagramFile {
    /// Canonical file form of a diagram.
    pub fn from_diagram(d: &LinkDiagram) -> Self {
        let pd = d.crossings().to_vec();
        let decorations = d.decorations().iter().map(|&b| b as u8).collect();
        let default = LinkDiagram::new(
            pd.clone(),
            DiagramOptions { loops: d.loops().len(), ..Default::default() },
        )
        .expect("crossings of a valid diagram reassemble");
        let mut signs = vec![1i8; d.component_count()];
        for s in 0..4 * d.crossing_count() {
            let s = s as khtot::Slot;
            if d.is_outgoing(s) != default.is_outgoing(s) {
                signs[default.component_of_slot(s)] = -1;
            }
        }
        let orientations = signs.iter().any(|&s| s < 0).then_some(signs);
        DiagramFile { pd, decorations: Some(decorations), basepoint: d.basepoint(), orientations, loops: d.loops().len() }
    }

    /// Assembles and validates the diagram.
    pub fn to_diagram(&self) -> Result<LinkDiagram> {
        let decorations = match &self.decorations {
            None => None,
            Some(bits) => Some(
                bits.iter()
                    .map(|&b| match b {
                        0 => Ok(false),
                        1 => Ok(true),
                        _ => Err(anyhow!("decoration entries must be 0 or 1, got {b}")),
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let opts = DiagramOptions {
            decorations,
            basepoint: self.basepoint,
            orientations: self.orientations.clone(),
            loops: self.loops,
        };
        Ok(LinkDiagram::new(self.pd.clone(), opts)?)
    }
}

/// Where the diagram comes from, plus per-run overrides.
#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Diagram file: JSON, or PD text such as `PD[X(1,4,2,5),...]`.
    pub input: Option<PathBuf>,
    /// PD text given inline.
    #[arg(long, conflicts_with_all = ["input", "knot"])]
    pub pd: Option<String>,
    /// A diagram from the bundled corpus (e.g. `3_1`, `m4_1`, `T2_5`, `hopf`).
    #[arg(long, conflicts_with = "input")]
    pub knot: Option<String>,
    /// Override the decorations, one `0`/`1` character per crossing.
    #[arg(long)]
    pub decorations: Option<String>,
    /// Override the basepoint edge.
    #[arg(long)]
    pub basepoint: Option<EdgeId>,
    /// Override component orientations, e.g. `1,-1`.
    #[arg(long, allow_hyphen_values = true)]
    pub orientations: Option<String>,
}

/// A loaded diagram together with a digest of its canonical form.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub diagram: LinkDiagram,
    pub digest: String,
}

/// Parses either JSON or PD text.
pub fn parse_text(text: &str) -> Result<LinkDiagram> {
    let t = text.trim_start();
    if t.starts_with('{') {
        let f: DiagramFile = serde_json::from_str(t).context("invalid diagram JSON")?;
        f.to_diagram()
    } else {
        Ok(parse_pd(t, DiagramOptions::default())?)
    }
}

impl InputArgs {
    /// Loads the diagram and applies overrides.
    pub fn load(&self) -> Result<Loaded> {
        let mut d = match (&self.input, &self.pd, &self.knot) {
            (Some(path), _, _) => {
                let text =
                    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
                parse_text(&text).with_context(|| format!("invalid diagram in {}", path.display()))?
            }
            (None, Some(pd), _) => parse_pd(pd, DiagramOptions::default())?,
            (None, None, Some(name)) => {
                corpus::named(name).ok_or_else(|| anyhow!("unknown corpus diagram `{name}`"))?
            }
            (None, None, None) => bail!("no diagram given: pass a file, --pd or --knot"),
        };
        if let Some(bits) = &self.decorations {
            let bits = bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(anyhow!("--decorations takes 0/1 characters, got `{c}`")),
                })
                .collect::<Result<Vec<_>>>()?;
            d = d.with_decorations(bits)?;
        }
        if let Some(b) = self.basepoint {
            d = d.with_basepoint(Some(b))?;
        }
        if let Some(o) = &self.orientations {
            let signs = o
                .split(',')
                .map(|s| match s.trim() {
                    "1" | "+1" | "+" => Ok(1i8),
                    "-1" | "-" => Ok(-1i8),
                    other => Err(anyhow!("orientation signs are 1 or -1, got `{other}`")),
                })
                .collect::<Result<Vec<_>>>()?;
            d = d.with_orientation_signs(&signs)?;
        }
        let digest = digest(&d);
        Ok(Loaded { diagram: d, digest })
    }
}

/// SHA-256 of the canonical JSON form of a diagram.
pub fn digest(d: &LinkDiagram) -> String {
    let canonical = serde_json::to_vec(&DiagramFile::from_diagram(d)).expect("diagram serializes");
    Sha256::digest(&canonical).iter().map(|b| format!("{b:02x}")).collect()
}

/// The basepoint of `d`, or its smallest edge when none is set.
pub fn with_default_basepoint(d: &LinkDiagram) -> Result<LinkDiagram> {
    if d.basepoint().is_some() {
        return Ok(d.clone());
    }
    let first = d
        .crossings()
        .iter()
        .flatten()
        .chain(d.loops())
        .copied()
        .min()
        .ok_or_else(|| anyhow!("the empty diagram has no edge to use as basepoint"))?;
    Ok(d.with_basepoint(Some(first))?)
}
