//! Welding many pieces along a graph.
//!
//! Each graph edge carries a piece with two boundaries; every vertex glues the
//! boundaries of its incident pieces qubit by qubit. [`weld_pieces_direct`]
//! writes down local generators for the result, [`weld_pieces_sequential`]
//! reaches the same group through a chain of two-code welds.

use std::collections::BTreeMap;

use crate::bits::BitVec;
use crate::css::{CssCode, GeneratingSet, LogicalClass};
use crate::error::{Error, Result};
use crate::gf2::{self, Echelon};
use crate::pauli::{CssType, PauliOperator, QubitSet};
use crate::welding::{align_on_weld, weld, weld_oracle, QubitIdentification};

use super::WeldGraph;

/// One code piece placed on a graph edge.
#[derive(Clone, Debug)]
pub struct Piece {
    /// Stabilizer generators of the piece (no logical classes).
    pub gens: GeneratingSet,
    /// First and second boundary, as qubit lists aligned position by position
    /// with the boundaries of other pieces.
    pub boundaries: [Vec<usize>; 2],
    /// Weld-type logical running from one boundary to the other.
    pub string: PauliOperator,
    /// Dual-type logical anticommuting with `string`.
    pub membrane: PauliOperator,
    /// Extra weld-type members of the piece's stabilizer group, offered in
    /// order when the glued generators fall short of the full group.
    pub extras: Vec<PauliOperator>,
}

/// Result of gluing pieces: the code plus where every piece qubit went.
#[derive(Clone, Debug)]
pub struct PieceWeld {
    pub code: CssCode,
    /// Per edge, local qubit -> global qubit.
    pub maps: Vec<Vec<usize>>,
    /// Per vertex, the global boundary qubits (empty for isolated vertices).
    pub vertex_qubits: Vec<Vec<usize>>,
}

struct Layout {
    n: usize,
    maps: Vec<Vec<usize>>,
    vertex_qubits: Vec<Vec<usize>>,
}

fn layout(graph: &WeldGraph, pieces: &[Piece]) -> Result<Layout> {
    if pieces.len() != graph.edges().len() {
        return Err(Error::InvalidSpec(format!(
            "{} pieces for {} edges",
            pieces.len(),
            graph.edges().len()
        )));
    }
    let mut vertex_qubits: Vec<Vec<usize>> = vec![Vec::new(); graph.vertex_count()];
    let mut maps = Vec::new();
    let mut n = 0;
    for (e, (&(a, b), piece)) in graph.edges().iter().zip(pieces).enumerate() {
        let local_n = piece.gens.n();
        let [b0, b1] = &piece.boundaries;
        if b0.iter().any(|q| b1.contains(q)) {
            return Err(Error::IncompatibleBoundary(format!(
                "piece {e} has overlapping boundaries"
            )));
        }
        let mut map = vec![usize::MAX; local_n];
        for (v, bq) in [(a, b0), (b, b1)] {
            let existing = &vertex_qubits[v];
            if existing.is_empty() {
                continue;
            }
            if existing.len() != bq.len() {
                return Err(Error::IncompatibleBoundary(format!(
                    "piece {e} has {} qubits at vertex {} which already has {}",
                    bq.len(),
                    graph.labels()[v],
                    existing.len()
                )));
            }
            for (&local, &global) in bq.iter().zip(existing) {
                map[local] = global;
            }
        }
        for slot in map.iter_mut() {
            if *slot == usize::MAX {
                *slot = n;
                n += 1;
            }
        }
        for (v, bq) in [(a, b0), (b, b1)] {
            if vertex_qubits[v].is_empty() {
                vertex_qubits[v] = bq.iter().map(|&q| map[q]).collect();
            }
        }
        maps.push(map);
    }
    Ok(Layout {
        n,
        maps,
        vertex_qubits,
    })
}

fn union_string(pieces: &[Piece], lay: &Layout, t: CssType) -> PauliOperator {
    let mut bits = BitVec::zeros(lay.n);
    for (e, piece) in pieces.iter().enumerate() {
        bits.or_assign(piece.string.embed(&lay.maps[e], lay.n).bits(t));
    }
    PauliOperator::from_type_bits(t, bits)
}

/// Glues pieces with geometric generators.
///
/// Dual-type generators are copied. A weld-type generator touching a vertex
/// shared by several pieces is merged with the generators of the other
/// pieces that have the same pattern on that boundary; the shared qubits
/// appear once. The set is then completed to the full welded group from
/// each piece's `extras`, falling back to kernel vectors. The union of the
/// piece strings becomes the logical, paired with the first piece's
/// membrane when that is still a valid partner.
pub fn weld_pieces_direct(
    graph: &WeldGraph,
    pieces: &[Piece],
    weld_type: CssType,
) -> Result<PieceWeld> {
    let lay = layout(graph, pieces)?;
    let n = lay.n;
    let dual = weld_type.dual();
    let welded: Vec<bool> = (0..graph.vertex_count()).map(|v| graph.degree(v) >= 2).collect();

    let mut out = GeneratingSet::empty(n);
    for (e, piece) in pieces.iter().enumerate() {
        for g in piece.gens.gens(dual) {
            out.push(dual, g.embed(&lay.maps[e], n))?;
        }
    }

    // (vertex, boundary pattern) -> merged operator and contributing pieces
    let mut groups: BTreeMap<(usize, Vec<usize>), (BitVec, Vec<usize>)> = BTreeMap::new();
    for (e, (&(a, b), piece)) in graph.edges().iter().zip(pieces).enumerate() {
        for g in piece.gens.gens(weld_type) {
            let bits = g.bits(weld_type);
            let mut touched = Vec::new();
            for (side, v) in [(0, a), (1, b)] {
                let pattern: Vec<usize> = piece.boundaries[side]
                    .iter()
                    .enumerate()
                    .filter(|(_, &q)| bits.get(q))
                    .map(|(pos, _)| pos)
                    .collect();
                if welded[v] && !pattern.is_empty() {
                    touched.push((v, pattern));
                }
            }
            let mapped = g.embed(&lay.maps[e], n);
            match touched.len() {
                0 => out.push(weld_type, mapped)?,
                1 => {
                    let key = touched.pop().expect("one entry");
                    let entry = groups
                        .entry(key)
                        .or_insert_with(|| (BitVec::zeros(n), Vec::new()));
                    if entry.1.contains(&e) {
                        return Err(Error::NotWellMatched(format!(
                            "piece {e} has two {weld_type}-generators with the same boundary pattern"
                        )));
                    }
                    entry.0.xor_assign(mapped.bits(weld_type));
                    entry.1.push(e);
                }
                _ => {
                    return Err(Error::InvalidSpec(format!(
                        "a {weld_type}-generator of piece {e} touches two welded boundaries"
                    )))
                }
            }
        }
    }
    for ((v, pattern), (mut bits, contributors)) in groups {
        if contributors.len() != graph.degree(v) {
            return Err(Error::NotWellMatched(format!(
                "boundary pattern {pattern:?} at vertex {} appears in {} of {} pieces",
                graph.labels()[v],
                contributors.len(),
                graph.degree(v)
            )));
        }
        for &pos in &pattern {
            bits.set(lay.vertex_qubits[v][pos], true);
        }
        out.push(weld_type, PauliOperator::from_type_bits(weld_type, bits))?;
    }

    let string = union_string(pieces, &lay, weld_type);
    let dual_rows = out.rows(dual);
    let kernel_dim = n - gf2::rank(n, &dual_rows);
    let mut span_rows = out.rows(weld_type);
    span_rows.push(string.bits(weld_type).clone());
    let mut ech = Echelon::new(n, &span_rows);
    let fallback = || gf2::nullspace(n, &dual_rows);
    let extras: Vec<BitVec> = pieces
        .iter()
        .enumerate()
        .flat_map(|(e, p)| {
            let map = &lay.maps[e];
            p.extras
                .iter()
                .map(move |x| x.embed(map, n).bits(weld_type).clone())
        })
        .collect();
    for source in [extras, fallback()] {
        for cand in source {
            if ech.rank() >= kernel_dim {
                break;
            }
            if !ech.contains(&cand) {
                span_rows.push(cand.clone());
                ech = Echelon::new(n, &span_rows);
                out.push(weld_type, PauliOperator::from_type_bits(weld_type, cand))?;
            }
        }
    }
    if dual_rows.iter().any(|r| r.dot(string.bits(weld_type))) {
        return Err(Error::InvalidSpec(
            "glued string does not commute with the glued generators".into(),
        ));
    }

    let membrane = pieces[0].membrane.embed(&lay.maps[0], n);
    let stab = CssCode::from_gens(out.clone())?;
    let membrane = if membrane.bits(dual).dot(string.bits(weld_type))
        && out
            .gens(weld_type)
            .iter()
            .all(|g| !g.bits(weld_type).dot(membrane.bits(dual)))
    {
        membrane
    } else {
        stab.anticommuting_partner(&string)?
    };
    let class = match weld_type {
        CssType::Z => LogicalClass {
            z_rep: string,
            x_rep: membrane,
        },
        CssType::X => LogicalClass {
            z_rep: membrane,
            x_rep: string,
        },
    };
    let code = CssCode::new(out, vec![class])?;
    if code.encoded_qubits() != 1 {
        return Err(Error::InvalidSpec(format!(
            "glued code encodes {} qubits",
            code.encoded_qubits()
        )));
    }
    Ok(PieceWeld {
        code,
        maps: lay.maps,
        vertex_qubits: lay.vertex_qubits,
    })
}

/// Glues pieces by folding each piece's string into its generators and
/// welding them one edge at a time, in edge order. With `oracle` set, each
/// step uses [`weld_oracle`] instead of [`weld`]; otherwise both sides are
/// aligned on the weld first and a failed precondition is returned as an
/// error. The result encodes no qubits and uses the same qubit layout as
/// [`weld_pieces_direct`]; the per-edge qubit maps are returned alongside.
pub fn weld_pieces_sequential(
    graph: &WeldGraph,
    pieces: &[Piece],
    weld_type: CssType,
    oracle: bool,
) -> Result<(CssCode, Vec<Vec<usize>>)> {
    let lay = layout(graph, pieces)?;
    let folded = |p: &Piece| -> Result<CssCode> {
        let mut g = p.gens.clone();
        g.push(weld_type, p.string.clone())?;
        CssCode::from_gens(g)
    };
    let mut acc = folded(&pieces[0])?;
    let mut present = vec![false; graph.vertex_count()];
    let (a0, b0) = graph.edges()[0];
    present[a0] = true;
    present[b0] = true;
    for (e, (&(a, b), piece)) in graph.edges().iter().zip(pieces).enumerate().skip(1) {
        let mut pairs = Vec::new();
        for (side, v) in [(0, a), (1, b)] {
            if present[v] {
                for (&local, &global) in piece.boundaries[side].iter().zip(&lay.vertex_qubits[v]) {
                    pairs.push((global, local));
                }
            }
        }
        let ident = QubitIdentification::new(pairs);
        let next = folded(piece)?;
        acc = if oracle {
            weld_oracle(&acc, &next, &ident, weld_type)?
        } else {
            let s1: QubitSet = ident.pairs().iter().map(|p| p.0).collect();
            let s2: QubitSet = ident.pairs().iter().map(|p| p.1).collect();
            let g1 = CssCode::from_gens(align_on_weld(acc.gens(), &s1, weld_type)?)?;
            let g2 = CssCode::from_gens(align_on_weld(next.gens(), &s2, weld_type)?)?;
            weld(&g1, &g2, &ident, weld_type)?.code
        };
        debug_assert_eq!(acc.n(), lay.maps[..=e].iter().flatten().max().map_or(0, |m| m + 1));
        present[a] = true;
        present[b] = true;
    }
    Ok((acc, lay.maps))
}
