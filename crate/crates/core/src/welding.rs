//! Welding two CSS codes by identifying qubits.
//!
//! A Z-type weld keeps every X-type generator of both codes and replaces the
//! Z-type generators by all Z-type operators that commute with them. When the
//! two generating sets are well matched and linearly independent on the
//! weld, that group is generated by the untouched Z generators plus one
//! product `h1 * h2 * W(h1)` per matched pair; [`weld`] builds exactly that.
//! [`weld_oracle`] computes the same group from the kernel definition and is
//! used to check it. X-type welds are the same with the roles swapped.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::css::{CssCode, GeneratingSet};
use crate::error::{Error, Result};
use crate::gf2::{self, Echelon};
use crate::pauli::{CssType, PauliOperator, QubitSet};

/// Pairs `(qubit of code 1, qubit of code 2)` to be contracted into one qubit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitIdentification {
    pairs: Vec<(usize, usize)>,
}

impl QubitIdentification {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self {
            pairs: self.pairs.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    pub fn validate(&self, n1: usize, n2: usize) -> Result<()> {
        let mut seen1 = vec![false; n1];
        let mut seen2 = vec![false; n2];
        for &(a, b) in &self.pairs {
            if a >= n1 {
                return Err(Error::InvalidIdentification(format!(
                    "qubit {a} out of range for code 1 ({n1} qubits)"
                )));
            }
            if b >= n2 {
                return Err(Error::InvalidIdentification(format!(
                    "qubit {b} out of range for code 2 ({n2} qubits)"
                )));
            }
            if std::mem::replace(&mut seen1[a], true) {
                return Err(Error::InvalidIdentification(format!(
                    "qubit {a} of code 1 identified twice"
                )));
            }
            if std::mem::replace(&mut seen2[b], true) {
                return Err(Error::InvalidIdentification(format!(
                    "qubit {b} of code 2 identified twice"
                )));
            }
        }
        Ok(())
    }

    /// Parses lines of `"i j"`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let mut num = || -> Result<usize> {
                let tok = it.next().ok_or_else(|| Error::Parse {
                    line: ln + 1,
                    msg: "expected two qubit indices".into(),
                })?;
                tok.parse().map_err(|e| Error::Parse {
                    line: ln + 1,
                    msg: format!("bad index {tok:?}: {e}"),
                })
            };
            let a = num()?;
            let b = num()?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: "trailing tokens".into(),
                });
            }
            pairs.push((a, b));
        }
        Ok(Self { pairs })
    }

    pub fn to_text(&self) -> String {
        self.pairs.iter().map(|(a, b)| format!("{a} {b}\n")).collect()
    }
}

/// Where each code's qubits land after contraction.
///
/// Code-1 qubits keep their indices; unshared code-2 qubits are appended in
/// code-2 order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeldLayout {
    pub n: usize,
    pub embed1: Vec<usize>,
    pub embed2: Vec<usize>,
    pub shared: QubitSet,
    pub support1: QubitSet,
    pub support2: QubitSet,
}

impl WeldLayout {
    pub fn new(n1: usize, n2: usize, ident: &QubitIdentification) -> Result<Self> {
        ident.validate(n1, n2)?;
        let mut partner = vec![None; n2];
        for &(a, b) in ident.pairs() {
            partner[b] = Some(a);
        }
        let embed1: Vec<usize> = (0..n1).collect();
        let mut next = n1;
        let embed2: Vec<usize> = partner
            .iter()
            .map(|p| {
                p.unwrap_or_else(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        Ok(Self {
            n: next,
            shared: ident.pairs().iter().map(|&(a, _)| a).collect(),
            support1: QubitSet::range(n1),
            support2: embed2.iter().copied().collect(),
            embed1,
            embed2,
        })
    }

    pub fn embed(&self, side: usize) -> &[usize] {
        if side == 1 {
            &self.embed1
        } else {
            &self.embed2
        }
    }

    pub fn support(&self, side: usize) -> &QubitSet {
        if side == 1 {
            &self.support1
        } else {
            &self.support2
        }
    }

    pub fn shared_mask(&self) -> BitVec {
        BitVec::from_indices(self.n, self.shared.indices().iter().copied())
    }
}

/// Identifies qubits and re-expresses both generating sets on the contracted register.
pub fn contract(
    code1: &CssCode,
    code2: &CssCode,
    ident: &QubitIdentification,
) -> Result<(WeldLayout, GeneratingSet, GeneratingSet)> {
    contract_sets(code1.gens(), code2.gens(), ident)
}

pub fn contract_sets(
    r1: &GeneratingSet,
    r2: &GeneratingSet,
    ident: &QubitIdentification,
) -> Result<(WeldLayout, GeneratingSet, GeneratingSet)> {
    let layout = WeldLayout::new(r1.n(), r2.n(), ident)?;
    let e1 = r1.embed(&layout.embed1, layout.n);
    let e2 = r2.embed(&layout.embed2, layout.n);
    Ok((layout, e1, e2))
}

/// A weld-touching generator with no partner of equal restriction on the other side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unmatched {
    pub side: usize,
    pub index: usize,
    pub restriction: PauliOperator,
}

/// Well-matched check on contracted sets for a weld of type `weld_type`.
pub fn check_well_matched(
    r1: &GeneratingSet,
    r2: &GeneratingSet,
    layout: &WeldLayout,
    weld_type: CssType,
) -> std::result::Result<(), Unmatched> {
    let mask = layout.shared_mask();
    let restricted = |r: &GeneratingSet| -> Vec<BitVec> {
        r.gens(weld_type)
            .iter()
            .map(|g| g.bits(weld_type).masked(&mask))
            .collect()
    };
    let w1 = restricted(r1);
    let w2 = restricted(r2);
    for (side, mine, theirs) in [(1, &w1, &w2), (2, &w2, &w1)] {
        for (i, w) in mine.iter().enumerate() {
            if !w.is_zero() && !theirs.contains(w) {
                return Err(Unmatched {
                    side,
                    index: i,
                    restriction: PauliOperator::from_type_bits(weld_type, w.clone()),
                });
            }
        }
    }
    Ok(())
}

/// Checks that no product of weld-touching `weld_type` generators is trivial
/// on `shared` while nontrivial overall. On failure returns the offending
/// generator indices.
pub fn check_weld_independence(
    r: &GeneratingSet,
    shared: &QubitSet,
    weld_type: CssType,
) -> std::result::Result<(), Vec<usize>> {
    let n = r.n();
    let mask = match shared.to_mask(n) {
        Ok(m) => m,
        Err(_) => return Err(Vec::new()),
    };
    let touching: Vec<usize> = r
        .gens(weld_type)
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.bits(weld_type).masked(&mask).is_zero())
        .map(|(i, _)| i)
        .collect();
    if touching.is_empty() {
        return Ok(());
    }
    let full: Vec<&BitVec> = touching
        .iter()
        .map(|&i| r.gens(weld_type)[i].bits(weld_type))
        .collect();
    // left kernel of the restricted rows: combinations c with sum_i c_i W_i = 0
    let cols: Vec<BitVec> = shared
        .indices()
        .iter()
        .map(|&q| BitVec::from_bools(&full.iter().map(|f| f.get(q)).collect::<Vec<_>>()))
        .collect();
    for c in gf2::nullspace(touching.len(), &cols) {
        let mut prod = BitVec::zeros(n);
        for j in c.ones() {
            prod.xor_assign(full[j]);
        }
        if !prod.is_zero() {
            return Err(c.ones().map(|j| touching[j]).collect());
        }
    }
    Ok(())
}

/// Rewrites the `weld_type` generators that touch `shared` so that their
/// restrictions are in reduced echelon form; products that become trivial on
/// the weld are kept as untouched generators. The group is unchanged.
///
/// Two sets whose weld-touching restrictions span the same space come out
/// well matched and linearly independent on the weld.
pub fn align_on_weld(
    r: &GeneratingSet,
    shared: &QubitSet,
    weld_type: CssType,
) -> Result<GeneratingSet> {
    let n = r.n();
    let mask = shared.to_mask(n)?;
    // shared columns first, so pivots land on the weld whenever possible
    let mut order: Vec<usize> = shared.indices().to_vec();
    order.extend((0..n).filter(|q| !shared.contains(*q)));
    let mut inverse = vec![0; n];
    for (pos, &q) in order.iter().enumerate() {
        inverse[q] = pos;
    }
    let mut untouched = Vec::new();
    let mut touching = Vec::new();
    for g in r.gens(weld_type) {
        if g.bits(weld_type).masked(&mask).is_zero() {
            untouched.push(g.clone());
        } else {
            touching.push(g.bits(weld_type).remap(&inverse, n));
        }
    }
    let ech = Echelon::new(n, &touching);
    let mut aligned: Vec<PauliOperator> = ech
        .rows()
        .iter()
        .map(|row| PauliOperator::from_type_bits(weld_type, row.remap(&order, n)))
        .collect();
    let mut out = r.clone();
    untouched.append(&mut aligned);
    *out.gens_mut(weld_type) = untouched;
    Ok(out)
}

/// Provenance of a welded-type generator in a weld result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenOrigin {
    /// Taken unchanged from code `side` (index into that code's list).
    Adopted { side: usize, index: usize },
    /// `h1 * h2 * W(h1)` for the given generators of codes 1 and 2.
    Welded { index1: usize, index2: usize },
}

/// Output of [`weld`].
#[derive(Clone, Debug)]
pub struct WeldResult {
    pub code: CssCode,
    pub layout: WeldLayout,
    pub weld_type: CssType,
    /// One entry per `weld_type` generator of `code`.
    pub origins: Vec<GenOrigin>,
    /// Contracted input sets, kept for tracing.
    pub inputs: (GeneratingSet, GeneratingSet),
}

fn require_k0(code: &CssCode, side: usize) -> Result<()> {
    let k = code.encoded_qubits();
    if k != 0 {
        return Err(Error::NonzeroK { side, k });
    }
    Ok(())
}

/// Welds two zero-qubit codes through their generating sets.
///
/// Requires the contracted sets to be well matched and linearly
/// independent on the weld; see [`align_on_weld`] for a group-preserving
/// rewrite that establishes both when the restrictions span equal spaces.
pub fn weld(
    code1: &CssCode,
    code2: &CssCode,
    ident: &QubitIdentification,
    weld_type: CssType,
) -> Result<WeldResult> {
    if std::ptr::eq(code1, code2) {
        return Err(Error::SelfWeld);
    }
    require_k0(code1, 1)?;
    require_k0(code2, 2)?;
    let (layout, r1, r2) = contract(code1, code2, ident)?;
    if let Err(u) = check_well_matched(&r1, &r2, &layout, weld_type) {
        return Err(Error::NotWellMatched(format!(
            "{weld_type}-generator {} of code {} has restriction {} with no partner",
            u.index, u.side, u.restriction
        )));
    }
    for (side, r) in [(1, &r1), (2, &r2)] {
        if let Err(subset) = check_weld_independence(r, &layout.shared, weld_type) {
            return Err(Error::NotWeldIndependent { side, subset });
        }
    }

    let n = layout.n;
    let mask = layout.shared_mask();
    let adopted = weld_type.dual();
    let mut out = GeneratingSet::empty(n);
    for g in r1.gens(adopted).iter().chain(r2.gens(adopted)) {
        out.push(adopted, g.clone())?;
    }
    let mut origins = Vec::new();
    let mut touching: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (side, r) in [(1usize, &r1), (2, &r2)] {
        for (i, g) in r.gens(weld_type).iter().enumerate() {
            if g.bits(weld_type).masked(&mask).is_zero() {
                out.push(weld_type, g.clone())?;
                origins.push(GenOrigin::Adopted { side, index: i });
            } else {
                touching[side - 1].push(i);
            }
        }
    }
    for (i1, i2) in pair_on_weld(&r1, &r2, &touching[0], &touching[1], &mask, weld_type) {
        let h1 = &r1.gens(weld_type)[i1];
        let h2 = &r2.gens(weld_type)[i2];
        let w = h1.restrict_mask(&mask);
        let welded = h1.multiply(h2)?.multiply(&w)?;
        out.push(weld_type, welded)?;
        origins.push(GenOrigin::Welded {
            index1: i1,
            index2: i2,
        });
    }
    let code = CssCode::from_gens(out)?;
    Ok(WeldResult {
        code,
        layout,
        weld_type,
        origins,
        inputs: (r1, r2),
    })
}

/// Deterministic pairing of weld-touching generators with equal restrictions.
fn pair_on_weld(
    r1: &GeneratingSet,
    r2: &GeneratingSet,
    t1: &[usize],
    t2: &[usize],
    mask: &BitVec,
    weld_type: CssType,
) -> Vec<(usize, usize)> {
    let keyed = |r: &GeneratingSet, idx: &[usize]| -> Vec<(BitVec, BitVec, usize)> {
        let mut v: Vec<_> = idx
            .iter()
            .map(|&i| {
                let full = r.gens(weld_type)[i].bits(weld_type).clone();
                (full.masked(mask), full, i)
            })
            .collect();
        v.sort_by(|a, b| match a.0.lex_cmp(&b.0) {
            Ordering::Equal => a.1.lex_cmp(&b.1),
            o => o,
        });
        v
    };
    let k1 = keyed(r1, t1);
    let k2 = keyed(r2, t2);
    let mut pairs = Vec::new();
    let mut a = 0;
    while a < k1.len() {
        let w = &k1[a].0;
        let end1 = a + k1[a..].iter().take_while(|e| &e.0 == w).count();
        let group2: Vec<usize> = k2.iter().filter(|e| &e.0 == w).map(|e| e.2).collect();
        let group1: Vec<usize> = k1[a..end1].iter().map(|e| e.2).collect();
        let m = group1.len().max(group2.len());
        for i in 0..m {
            let x = group1.get(i).copied().unwrap_or(group1[0]);
            let y = group2.get(i).copied().unwrap_or(group2[0]);
            pairs.push((x, y));
        }
        a = end1;
    }
    pairs
}

/// Ground-truth weld: adopt the dual-type generators and take the whole
/// space of `weld_type` operators commuting with them.
pub fn weld_oracle(
    code1: &CssCode,
    code2: &CssCode,
    ident: &QubitIdentification,
    weld_type: CssType,
) -> Result<CssCode> {
    require_k0(code1, 1)?;
    require_k0(code2, 2)?;
    let (layout, r1, r2) = contract(code1, code2, ident)?;
    let adopted = weld_type.dual();
    let mut out = GeneratingSet::empty(layout.n);
    for g in r1.gens(adopted).iter().chain(r2.gens(adopted)) {
        out.push(adopted, g.clone())?;
    }
    let rows = out.rows(adopted);
    for v in gf2::nullspace(layout.n, &rows) {
        out.push(weld_type, PauliOperator::from_type_bits(weld_type, v))?;
    }
    CssCode::from_gens(out)
}

/// `θ1(h)`, `θ2(h)` and `W(h)` for one welded-type generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeldTrace {
    pub gen_index: usize,
    pub origin: GenOrigin,
    pub theta1: PauliOperator,
    pub theta2: PauliOperator,
    pub w: PauliOperator,
}

/// Decomposition of every welded-type generator of a weld result.
pub fn welded_operator_trace(result: &WeldResult) -> Vec<WeldTrace> {
    let layout = &result.layout;
    let mask = layout.shared_mask();
    let m1 = BitVec::from_indices(layout.n, layout.support1.indices().iter().copied());
    let m2 = BitVec::from_indices(layout.n, layout.support2.indices().iter().copied());
    let only1 = m1.xor(&mask);
    let only2 = m2.xor(&mask);
    result
        .code
        .gens()
        .gens(result.weld_type)
        .iter()
        .zip(&result.origins)
        .enumerate()
        .map(|(i, (h, origin))| {
            let w = h.restrict_mask(&mask);
            let (theta1, theta2) = match origin {
                GenOrigin::Adopted { side: 1, .. } => (h.clone(), PauliOperator::identity(h.n())),
                GenOrigin::Adopted { .. } => (PauliOperator::identity(h.n()), h.clone()),
                GenOrigin::Welded { .. } => (
                    h.restrict_mask(&only1).multiply(&w).expect("same n"),
                    h.restrict_mask(&only2).multiply(&w).expect("same n"),
                ),
            };
            WeldTrace {
                gen_index: i,
                origin: origin.clone(),
                theta1,
                theta2,
                w,
            }
        })
        .collect()
}

/// Result of checking that a pre-weld partner still singles out its generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartnerCertificate {
    /// Output generators that the embedded operator anticommutes with.
    pub anticommuting: Vec<usize>,
    /// Output generators `h` with `θ_side(h)` equal to the chosen input generator.
    pub expected: Vec<usize>,
}

impl PartnerCertificate {
    pub fn holds(&self) -> bool {
        !self.expected.is_empty() && self.anticommuting == self.expected
    }
}

/// Given `t` on code `side`'s qubits that anticommutes with that code's
/// `weld_type` generator `gen_index` and commutes with every other generator
/// of that code, reports which output generators `t` anticommutes with.
pub fn certify_partner(
    result: &WeldResult,
    side: usize,
    gen_index: usize,
    t: &PauliOperator,
) -> Result<PartnerCertificate> {
    let input = if side == 1 {
        &result.inputs.0
    } else {
        &result.inputs.1
    };
    let layout = &result.layout;
    let embedded = t.embed(layout.embed(side), layout.n);
    for ty in [CssType::X, CssType::Z] {
        for (i, g) in input.gens(ty).iter().enumerate() {
            let anti = !g.commutes(&embedded)?;
            let want = ty == result.weld_type && i == gen_index;
            if anti != want {
                return Err(Error::NotLogical(format!(
                    "operator {t} must anticommute with exactly generator {gen_index} of code {side}"
                )));
            }
        }
    }
    let anticommuting = result
        .code
        .gens()
        .gens(result.weld_type)
        .iter()
        .enumerate()
        .filter(|(_, h)| !h.commutes(&embedded).unwrap_or(true))
        .map(|(i, _)| i)
        .collect();
    let expected = result
        .origins
        .iter()
        .enumerate()
        .filter(|(_, o)| match o {
            GenOrigin::Adopted { side: s, index } => *s == side && *index == gen_index,
            GenOrigin::Welded { index1, index2 } => {
                (side == 1 && *index1 == gen_index) || (side == 2 && *index2 == gen_index)
            }
        })
        .map(|(i, _)| i)
        .collect();
    Ok(PartnerCertificate {
        anticommuting,
        expected,
    })
}
