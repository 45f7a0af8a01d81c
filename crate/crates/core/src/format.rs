//! Code exchange formats.
//!
//! The text format is line based:
//!
//! ```text
//! # comment
//! n=3 k=1
//! X: XXI
//! X: IXX
//! LZ: ZZZ
//! LX: XII
//! ```
//!
//! Generator lines keep their order. `LZ`/`LX` lines pair up in order, one
//! pair per promoted logical class. Flat-region metadata follows as a
//! `GRAPH <type>` line and its `REGION`, `BOUNDARY` and `INCIDENT` lines:
//!
//! ```text
//! GRAPH X
//! REGION 0,1,2 bulk
//! BOUNDARY 0 left
//! INCIDENT 0 0
//! ```
//!
//! The JSON rendering carries the same content under the keys `n`, `k`,
//! `x_gens`, `z_gens`, `logical_x`, `logical_z` and `flat_regions`.

use serde::{Deserialize, Serialize};

use crate::css::{CssCode, GeneratingSet, LogicalClass};
use crate::error::{Error, Result};
use crate::pauli::{CssType, PauliOperator, QubitSet};
use crate::regions::FlatRegionGraph;

fn type_from_str(s: &str) -> Option<CssType> {
    match s {
        "X" => Some(CssType::X),
        "Z" => Some(CssType::Z),
        _ => None,
    }
}

fn render_set(q: &QubitSet) -> String {
    if q.is_empty() {
        "-".to_string()
    } else {
        q.indices()
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn parse_set(s: &str) -> std::result::Result<QubitSet, String> {
    if s == "-" {
        return Ok(QubitSet::empty());
    }
    let mut out = Vec::new();
    for tok in s.split(',') {
        out.push(
            tok.parse::<usize>()
                .map_err(|e| format!("bad qubit index {tok:?}: {e}"))?,
        );
    }
    let set = QubitSet::new(out.iter().copied());
    if set.len() != out.len() {
        return Err(format!("repeated qubit in {s:?}"));
    }
    Ok(set)
}

/// Renders a code in the text exchange format.
pub fn to_text(code: &CssCode) -> String {
    let mut out = format!("n={} k={}\n", code.n(), code.encoded_qubits());
    for t in [CssType::X, CssType::Z] {
        for g in code.gens().gens(t) {
            out.push_str(&format!("{}: {g}\n", t.letter()));
        }
    }
    for l in code.logicals() {
        out.push_str(&format!("LZ: {}\nLX: {}\n", l.z_rep, l.x_rep));
    }
    for g in code.regions() {
        out.push_str(&format!("GRAPH {}\n", g.particle_type.letter()));
        for r in &g.regions {
            out.push_str(&format!("REGION {} {}\n", render_set(&r.qubits), r.label));
        }
        for b in &g.boundaries {
            out.push_str(&format!("BOUNDARY {} {}\n", render_set(&b.qubits), b.label));
        }
        for (r, b) in &g.incidence {
            out.push_str(&format!("INCIDENT {r} {b}\n"));
        }
    }
    out
}

/// Parses the text exchange format, checking the declared `k` against the generators.
pub fn from_text(text: &str) -> Result<CssCode> {
    let mut header: Option<(usize, usize)> = None;
    let mut x_gens = Vec::new();
    let mut z_gens = Vec::new();
    let mut lz = Vec::new();
    let mut lx = Vec::new();
    let mut graphs: Vec<FlatRegionGraph> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((n, _)) = header else {
            header = Some(parse_header(line).map_err(err)?);
            continue;
        };
        if let Some((key, rest)) = line.split_once(':') {
            let key = key.trim();
            if matches!(key, "X" | "Z" | "LX" | "LZ") {
                let op = PauliOperator::parse(rest).map_err(|e| match e {
                    Error::Parse { msg, .. } => err(msg),
                    other => other,
                })?;
                if op.n() != n {
                    return Err(err(format!(
                        "operator has {} qubits, header declares {n}",
                        op.n()
                    )));
                }
                match key {
                    "X" => x_gens.push(op),
                    "Z" => z_gens.push(op),
                    "LX" => lx.push(op),
                    _ => lz.push(op),
                }
                continue;
            }
        }
        let (word, rest) = line.split_once(' ').unwrap_or((line, ""));
        let rest = rest.trim_start();
        match word {
            "GRAPH" => {
                let t = type_from_str(rest)
                    .ok_or_else(|| err(format!("bad particle type {rest:?}")))?;
                graphs.push(FlatRegionGraph::new(t));
            }
            "REGION" | "BOUNDARY" => {
                let g = graphs
                    .last_mut()
                    .ok_or_else(|| err(format!("{word} before any GRAPH line")))?;
                let (set, label) = rest.split_once(' ').unwrap_or((rest, ""));
                let set = parse_set(set).map_err(err)?;
                if word == "REGION" {
                    g.add_region(label, set);
                } else {
                    g.add_boundary(label, set);
                }
            }
            "INCIDENT" => {
                let g = graphs
                    .last_mut()
                    .ok_or_else(|| err("INCIDENT before any GRAPH line".into()))?;
                let nums: Vec<usize> = rest
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| err(format!("bad incidence: {e}")))?;
                let [r, b] = nums[..] else {
                    return Err(err("INCIDENT takes a region and a boundary index".into()));
                };
                if r >= g.regions.len() || b >= g.boundaries.len() {
                    return Err(err(format!("incidence ({r}, {b}) names a missing entry")));
                }
                g.incidence.push((r, b));
            }
            _ => return Err(err(format!("unrecognised line {line:?}"))),
        }
    }

    let (n, k) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing \"n=<int> k=<int>\" header".into(),
    })?;
    if lx.len() != lz.len() {
        return Err(Error::Parse {
            line: 0,
            msg: format!("{} LZ lines but {} LX lines", lz.len(), lx.len()),
        });
    }
    let logicals = lz
        .into_iter()
        .zip(lx)
        .map(|(z_rep, x_rep)| LogicalClass { z_rep, x_rep })
        .collect();
    assemble(n, k, x_gens, z_gens, logicals, graphs)
}

fn parse_header(line: &str) -> std::result::Result<(usize, usize), String> {
    let mut n = None;
    let mut k = None;
    for tok in line.split_whitespace() {
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| format!("malformed header field {tok:?}"))?;
        let v = val
            .parse::<usize>()
            .map_err(|e| format!("bad header value {val:?}: {e}"))?;
        match key {
            "n" if n.is_none() => n = Some(v),
            "k" if k.is_none() => k = Some(v),
            _ => return Err(format!("unexpected header field {key:?}")),
        }
    }
    match (n, k) {
        (Some(n), Some(k)) => Ok((n, k)),
        _ => Err("header must declare n and k".into()),
    }
}

fn assemble(
    n: usize,
    k: usize,
    x_gens: Vec<PauliOperator>,
    z_gens: Vec<PauliOperator>,
    logicals: Vec<LogicalClass>,
    regions: Vec<FlatRegionGraph>,
) -> Result<CssCode> {
    let gens = GeneratingSet::new(n, x_gens, z_gens)?;
    let code = CssCode::new(gens, logicals)?.with_regions(regions)?;
    let computed = code.encoded_qubits();
    if computed != k {
        return Err(Error::DeclaredKMismatch {
            declared: k,
            computed,
        });
    }
    Ok(code)
}

#[derive(Serialize, Deserialize)]
struct CodeDocument {
    n: usize,
    k: usize,
    x_gens: Vec<PauliOperator>,
    z_gens: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    flat_regions: Vec<FlatRegionGraph>,
}

/// Renders a code as pretty-printed JSON.
pub fn to_json(code: &CssCode) -> String {
    let doc = CodeDocument {
        n: code.n(),
        k: code.encoded_qubits(),
        x_gens: code.gens().x_gens().to_vec(),
        z_gens: code.gens().z_gens().to_vec(),
        logical_x: code.logicals().iter().map(|l| l.x_rep.clone()).collect(),
        logical_z: code.logicals().iter().map(|l| l.z_rep.clone()).collect(),
        flat_regions: code.regions().to_vec(),
    };
    serde_json::to_string_pretty(&doc).expect("code documents always serialize")
}

/// Parses the JSON rendering, checking the declared `k` against the generators.
pub fn from_json(text: &str) -> Result<CssCode> {
    let doc: CodeDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    if doc.logical_x.len() != doc.logical_z.len() {
        return Err(Error::Parse {
            line: 0,
            msg: format!(
                "{} logical_z entries but {} logical_x entries",
                doc.logical_z.len(),
                doc.logical_x.len()
            ),
        });
    }
    for op in doc.x_gens.iter().chain(&doc.z_gens) {
        if op.n() != doc.n {
            return Err(Error::LengthMismatch {
                left: op.n(),
                right: doc.n,
            });
        }
    }
    let logicals = doc
        .logical_z
        .into_iter()
        .zip(doc.logical_x)
        .map(|(z_rep, x_rep)| LogicalClass { z_rep, x_rep })
        .collect();
    assemble(doc.n, doc.k, doc.x_gens, doc.z_gens, logicals, doc.flat_regions)
}

/// Reads either format, choosing JSON when the text starts with `{`.
pub fn parse_code(text: &str) -> Result<CssCode> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_text(text)
    }
}
