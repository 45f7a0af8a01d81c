//! Energy barriers of logical operators.
//!
//! Energy is the number of violated generators of the code's stored
//! generating set. A Z-walk flips one qubit at a time with Z and is charged
//! for violated X generators; an X-walk the other way round.
//!
//! [`exact_barrier`] searches the graph whose nodes are error cosets modulo
//! the same-kind stabilizers (syndrome and reachability only depend on the
//! coset) for the path to the logical coset whose highest node is lowest.
//! [`parity_lower_bound`] runs the same search on the spin model of a
//! flat-region graph.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::builders::{SolidSpec, WeldGraph};
use crate::css::CssCode;
use crate::error::{Error, Result};
use crate::gf2::Echelon;
use crate::pauli::{CssType, PauliKind, PauliOperator};
use crate::regions::FlatRegionGraph;

/// Default cap on the number of states a search may enumerate.
pub const DEFAULT_MAX_STATES: u64 = 1 << 22;

/// Ordered single-qubit Pauli flips.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PauliWalk {
    steps: Vec<(usize, PauliKind)>,
}

impl PauliWalk {
    pub fn new(steps: Vec<(usize, PauliKind)>) -> Self {
        Self { steps }
    }

    /// A walk flipping `qubits` in order with one kind.
    pub fn of_kind(kind: CssType, qubits: impl IntoIterator<Item = usize>) -> Self {
        Self {
            steps: qubits.into_iter().map(|q| (q, kind.into())).collect(),
        }
    }

    pub fn steps(&self) -> &[(usize, PauliKind)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The single CSS type of every step, or an error for mixed or Y steps.
    pub fn css_type(&self) -> Result<Option<CssType>> {
        let mut kind = None;
        for &(_, k) in &self.steps {
            let t = match k {
                PauliKind::X => CssType::X,
                PauliKind::Z => CssType::Z,
                PauliKind::Y => return Err(Error::MixedWalk),
            };
            if kind.is_some_and(|prev| prev != t) {
                return Err(Error::MixedWalk);
            }
            kind = Some(t);
        }
        Ok(kind)
    }

    /// Product of all steps on `n` qubits.
    pub fn product(&self, n: usize) -> Result<PauliOperator> {
        let mut op = PauliOperator::identity(n);
        for &(q, k) in &self.steps {
            op = op.multiply(&PauliOperator::single(n, q, k)?)?;
        }
        Ok(op)
    }
}

impl fmt::Display for PauliWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .steps
            .iter()
            .map(|(q, k)| format!("{}{q}", k.letter()))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Peak violated-generator count over every prefix of the walk (the empty
/// prefix included), and the walk's product.
pub fn walk_barrier(code: &CssCode, walk: &PauliWalk) -> Result<(usize, PauliOperator)> {
    let n = code.n();
    for &(q, _) in walk.steps() {
        if q >= n {
            return Err(Error::IndexOutOfRange { index: q, n });
        }
    }
    let Some(t) = walk.css_type()? else {
        return Ok((0, PauliOperator::identity(n)));
    };
    let checks = code.gens().gens(t.dual());
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, g) in checks.iter().enumerate() {
        for q in g.bits(t.dual()).ones() {
            touching[q].push(i);
        }
    }
    let mut violated = vec![false; checks.len()];
    let mut count = 0usize;
    let mut peak = 0;
    let mut bits = BitVec::zeros(n);
    for &(q, _) in walk.steps() {
        bits.flip(q);
        for &i in &touching[q] {
            violated[i] = !violated[i];
            if violated[i] {
                count += 1;
            } else {
                count -= 1;
            }
        }
        peak = peak.max(count);
    }
    Ok((peak, PauliOperator::from_type_bits(t, bits)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BarrierMethod {
    Exact,
    ParityBound,
}

/// Barrier value with a walk attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarrierResult {
    pub method: BarrierMethod,
    pub barrier: usize,
    pub witness: PauliWalk,
    pub states_explored: u64,
}

/// Knobs shared by the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_states: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

/// A state space `GF(2)^dim` where bit `i` of a state adds `contribution[i]`
/// to a syndrome vector, and energy is the syndrome's weight.
struct Landscape {
    dim: usize,
    contribution: Vec<BitVec>,
    /// `(state mask, label)` for each allowed move.
    moves: Vec<(u64, usize)>,
}

struct SearchOutcome {
    barrier: usize,
    labels: Vec<usize>,
    explored: u64,
}

impl Landscape {
    fn check_size(&self, what: &str, opts: SearchOptions) -> Result<()> {
        let size = if self.dim >= 64 { u64::MAX } else { 1u64 << self.dim };
        if self.dim >= 40 || size > opts.max_states {
            return Err(Error::TooLarge {
                what: what.into(),
                size,
                cap: opts.max_states,
            });
        }
        Ok(())
    }

    /// Energy of every state, filled in Gray-code order.
    fn energies(&self) -> Vec<u16> {
        let total = 1usize << self.dim;
        let mut out = vec![0u16; total];
        let width = self.contribution.first().map_or(0, |c| c.len());
        let mut syn = BitVec::zeros(width);
        let mut state = 0usize;
        for i in 1..total {
            let bit = i.trailing_zeros() as usize;
            state ^= 1 << bit;
            syn.xor_assign(&self.contribution[bit]);
            out[state] = syn.count_ones() as u16;
        }
        out
    }

    /// Minimax path from state 0 to `target`; ties prefer fewer steps.
    fn search(&self, target: u64) -> Option<SearchOutcome> {
        let energy = self.energies();
        let total = energy.len();
        const UNSEEN: (u16, u32) = (u16::MAX, u32::MAX);
        let mut best = vec![UNSEEN; total];
        let mut parent: Vec<(u32, u32)> = vec![(u32::MAX, u32::MAX); total];
        let mut done = vec![false; total];
        let mut heap = BinaryHeap::new();
        best[0] = (energy[0], 0);
        heap.push(Reverse((energy[0], 0u32, 0u64)));
        let mut explored = 0u64;
        while let Some(Reverse((b, steps, s))) = heap.pop() {
            let su = s as usize;
            if done[su] {
                continue;
            }
            done[su] = true;
            explored += 1;
            if s == target {
                let mut labels = Vec::new();
                let mut cur = su;
                while cur != 0 {
                    let (prev, label) = parent[cur];
                    labels.push(label as usize);
                    cur = prev as usize;
                }
                labels.reverse();
                return Some(SearchOutcome {
                    barrier: b as usize,
                    labels,
                    explored,
                });
            }
            for &(mask, label) in &self.moves {
                let nx = (s ^ mask) as usize;
                if done[nx] {
                    continue;
                }
                let cand = (b.max(energy[nx]), steps + 1);
                if cand < best[nx] {
                    best[nx] = cand;
                    parent[nx] = (su as u32, label as u32);
                    heap.push(Reverse((cand.0, cand.1, nx as u64)));
                }
            }
        }
        None
    }
}

/// Coset coordinates of single-qubit errors of type `t` modulo the `t`-type
/// stabilizers: each qubit maps to a mask over the free columns.
struct CosetFrame {
    ech: Echelon,
    free: Vec<usize>,
}

impl CosetFrame {
    fn new(code: &CssCode, t: CssType) -> Self {
        let ech = code.gens().echelon(t);
        let free = ech.free_columns();
        Self { ech, free }
    }

    fn coords(&self, v: &BitVec) -> u64 {
        let r = self.ech.reduce(v);
        self.free
            .iter()
            .enumerate()
            .filter(|(_, &c)| r.get(c))
            .fold(0u64, |acc, (i, _)| acc | (1 << i))
    }
}

/// Exact barrier of the logical class `logical` against `kind`-walks.
pub fn exact_barrier(
    code: &CssCode,
    logical: usize,
    kind: CssType,
    opts: SearchOptions,
) -> Result<BarrierResult> {
    let class = code.logicals().get(logical).ok_or(Error::NoLogicalQubits)?;
    exact_barrier_of(code, class.rep(kind), opts)
}

/// Exact barrier of the coset of `target` modulo same-kind stabilizers.
pub fn exact_barrier_of(code: &CssCode, target: &PauliOperator, opts: SearchOptions) -> Result<BarrierResult> {
    let n = code.n();
    if target.n() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: target.n(),
        });
    }
    let kind = match target.pure_type() {
        Some(t) => t,
        None if target.is_identity() => CssType::Z,
        None => return Err(Error::MixedWalk),
    };
    let frame = CosetFrame::new(code, kind);
    let dim = frame.free.len();
    let checks = code.gens().rows(kind.dual());
    let contribution: Vec<BitVec> = frame
        .free
        .iter()
        .map(|&c| BitVec::from_bools(&checks.iter().map(|row| row.get(c)).collect::<Vec<_>>()))
        .collect();
    let mut land = Landscape {
        dim,
        contribution,
        moves: Vec::new(),
    };
    land.check_size(&format!("{kind}-error cosets"), opts)?;
    let mut moves: Vec<(u64, usize)> = Vec::new();
    for q in 0..n {
        let m = frame.coords(&BitVec::from_indices(n, [q]));
        if m != 0 && !moves.iter().any(|&(x, _)| x == m) {
            moves.push((m, q));
        }
    }
    land.moves = moves;
    let goal = frame.coords(target.bits(kind));
    let out = land.search(goal).ok_or(Error::Unreachable)?;
    Ok(BarrierResult {
        method: BarrierMethod::Exact,
        barrier: out.barrier,
        witness: PauliWalk::of_kind(kind, out.labels),
        states_explored: out.explored,
    })
}

/// Minimax value of the spin model of `regions` for flipping, on every
/// boundary, the parity of `logical_rep`'s support there.
///
/// Boundaries are spins; each region contributes one unit whenever the spins
/// of its incident boundaries have odd sum. The witness flips the first
/// qubit of a boundary for each spin flip.
pub fn parity_lower_bound(
    regions: &FlatRegionGraph,
    logical_rep: &PauliOperator,
    opts: SearchOptions,
) -> Result<BarrierResult> {
    let error_type = regions.particle_type.dual();
    if !logical_rep.is_pure(error_type) && !logical_rep.is_identity() {
        return Err(Error::NotLogical(format!(
            "{logical_rep} is not {error_type}-type, which is what creates {}-type particles",
            regions.particle_type
        )));
    }
    regions.check(logical_rep.n())?;
    let nb = regions.boundaries.len();
    let incident = regions.boundary_regions();
    let contribution: Vec<BitVec> = incident
        .iter()
        .map(|rs| BitVec::from_indices(regions.regions.len(), rs.iter().copied()))
        .collect();
    let land = Landscape {
        dim: nb,
        contribution,
        moves: (0..nb).map(|b| (1u64 << b, b)).collect(),
    };
    land.check_size("boundary spin configurations", opts)?;
    let bits = logical_rep.bits(error_type);
    let goal = regions
        .boundaries
        .iter()
        .enumerate()
        .filter(|(_, b)| b.qubits.indices().iter().filter(|&&q| bits.get(q)).count() % 2 == 1)
        .fold(0u64, |acc, (i, _)| acc | (1 << i));
    let out = land.search(goal).ok_or(Error::Unreachable)?;
    let walk = PauliWalk::of_kind(
        error_type,
        out.labels
            .iter()
            .map(|&b| regions.boundaries[b].qubits.indices()[0]),
    );
    Ok(BarrierResult {
        method: BarrierMethod::ParityBound,
        barrier: out.barrier,
        witness: walk,
        states_explored: out.explored,
    })
}

/// Parity bound next to the exact barrier for one logical class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: CssType,
    pub bound: BarrierResult,
    pub exact: BarrierResult,
    pub saturated: bool,
}

/// Checks `parity_lower_bound <= exact_barrier` for `kind`-walks on
/// logical class `logical`, using the code's flat regions for the particles
/// those walks create.
pub fn verify_bound(code: &CssCode, logical: usize, kind: CssType, opts: SearchOptions) -> Result<BoundReport> {
    let class = code.logicals().get(logical).ok_or(Error::NoLogicalQubits)?;
    let regions = code.flat_region_graph(kind.dual())?;
    let bound = parity_lower_bound(regions, class.rep(kind), opts)?;
    let exact = exact_barrier(code, logical, kind, opts)?;
    if bound.barrier > exact.barrier {
        return Err(Error::BoundViolated {
            bound: bound.barrier,
            exact: exact.barrier,
        });
    }
    Ok(BoundReport {
        kind,
        saturated: bound.barrier == exact.barrier,
        bound,
        exact,
    })
}

/// X-membrane barriers of a solid before and after rough welding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoChangeReport {
    pub bound_base: usize,
    pub bound_welded: usize,
    pub exact_base: Option<usize>,
    pub exact_welded: Option<usize>,
}

impl NoChangeReport {
    pub fn unchanged(&self) -> bool {
        self.bound_base == self.bound_welded
            && match (self.exact_base, self.exact_welded) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            }
    }
}

/// Compares the X-logical barrier of `base` with that of `welded` (built
/// from copies of `base`): the parity bound always, exact barriers when both
/// fit under the state cap.
pub fn barrier_unchanged_by_rough_welds(
    base: &CssCode,
    welded: &CssCode,
    opts: SearchOptions,
) -> Result<NoChangeReport> {
    let bound = |c: &CssCode| -> Result<usize> {
        let class = c.logicals().first().ok_or(Error::NoLogicalQubits)?;
        Ok(parity_lower_bound(c.flat_region_graph(CssType::Z)?, &class.x_rep, opts)?.barrier)
    };
    let exact = |c: &CssCode| -> Result<Option<usize>> {
        match exact_barrier(c, 0, CssType::X, opts) {
            Ok(r) => Ok(Some(r.barrier)),
            Err(e) if e.is_feasibility() => Ok(None),
            Err(e) => Err(e),
        }
    };
    Ok(NoChangeReport {
        bound_base: bound(base)?,
        bound_welded: bound(welded)?,
        exact_base: exact(base)?,
        exact_welded: exact(welded)?,
    })
}

/// What the scaling planner is allowed to spend.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalingBudget {
    /// Linear size `L = d * R`.
    SideLength(u64),
    /// Total qubit count.
    Qubits(u64),
}

mod ratio_str {
    use num_rational::Ratio;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }
}

/// Power-law planning for solids of width `d` welded along a cubic graph of
/// side `R`, with `d = R^alpha`.
///
/// Exponents treat the asymptotic growth laws as exact powers: the weld
/// graph's domain-wall barrier grows as `R^2`, a solid's membrane barrier as
/// `d`, the qubit count as `d^3 R^3` and the linear size as `L = d R`.
/// They are planning figures, not verified constants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalingPlan {
    #[serde(with = "ratio_str")]
    pub alpha: Ratio<i64>,
    #[serde(with = "ratio_str")]
    pub barrier_exponent_n: Ratio<i64>,
    #[serde(with = "ratio_str")]
    pub barrier_exponent_l: Ratio<i64>,
    #[serde(with = "ratio_str")]
    pub distance_exponent_l: Ratio<i64>,
    pub d: u64,
    #[serde(rename = "R")]
    pub r: u64,
    /// Exact qubit count of the welded solid for `(d, R)`.
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "L")]
    pub l: u64,
    /// `(R^2, d)`: graph-level and membrane-level barrier figures.
    pub predicted_barriers: (u64, u64),
}

/// Exponent of `R` in the weld graph's domain-wall barrier.
const GRAPH_BARRIER_EXP: i64 = 2;
/// Exponent of `d` in a solid's membrane barrier.
const MEMBRANE_BARRIER_EXP: i64 = 1;

/// Qubits in a solid of width `d` (height `max(d, 2)`) welded along the
/// cubic graph with `R` vertices per side; `R = 1` means a single solid.
pub fn welded_solid_qubits(d: u64, r: u64) -> Result<u64> {
    if d == 0 || r == 0 {
        return Err(Error::InvalidSpec("d and R must be positive".into()));
    }
    let spec = SolidSpec::new(d as usize, d as usize, d.max(2) as usize, false)?;
    let ns = spec.n() as u64;
    if r == 1 {
        return Ok(ns);
    }
    let edges = 3 * r * r * (r - 1);
    let vertices = r * r * r;
    let shared = (2 * edges - vertices) * (d + 1) * (d + 1);
    Ok(edges * ns - shared)
}

/// Cubic weld graph of side `R` (or `None` for a single solid).
pub fn scaling_graph(r: u64) -> Result<Option<WeldGraph>> {
    if r <= 1 {
        return Ok(None);
    }
    let r = r as usize;
    Ok(Some(WeldGraph::cubic(r, r, r)?))
}

/// Picks `alpha` by equalising the two barrier exponents and the integer
/// `(d, R)` within budget that maximises `min(d, R^2)`.
pub fn tune_scaling(budget: ScalingBudget) -> Result<ScalingPlan> {
    let g = Ratio::from_integer(GRAPH_BARRIER_EXP);
    let m = Ratio::from_integer(MEMBRANE_BARRIER_EXP);
    // R^g = d^m = R^(alpha m)
    let alpha = g / m;
    let one = Ratio::from_integer(1);
    let three = Ratio::from_integer(3);
    // N = R^(3(1+alpha)), L = R^(1+alpha)
    let barrier_exponent_n = g / (three * (one + alpha));
    let barrier_exponent_l = g / (one + alpha);
    // distance min(d^2, d R^3) in powers of R
    let dist_r = std::cmp::min(Ratio::from_integer(2) * alpha, alpha + three);
    let distance_exponent_l = dist_r / (one + alpha);

    let mut best: Option<(u64, u64, u64, u64)> = None;
    let fits = |d: u64, r: u64| -> Result<Option<u64>> {
        let n = welded_solid_qubits(d, r)?;
        Ok(match budget {
            ScalingBudget::SideLength(l) => (d * r <= l).then_some(n),
            ScalingBudget::Qubits(cap) => (n <= cap).then_some(n),
        })
    };
    let mut r = 1u64;
    loop {
        if fits(1, r)?.is_none() {
            break;
        }
        let mut d = 1u64;
        while fits(d + 1, r)?.is_some() {
            d += 1;
        }
        let n = fits(d, r)?.expect("checked above");
        let score = d.min(r * r);
        let better = match best {
            None => true,
            Some((bd, br, bn, _)) => {
                let bs = bd.min(br * br);
                score > bs || (score == bs && n < bn)
            }
        };
        if better {
            best = Some((d, r, n, score));
        }
        r += 1;
    }
    let (d, r, n, _) = best.ok_or_else(|| {
        Error::InvalidSpec("budget too small for a single solid of width 1".into())
    })?;
    Ok(ScalingPlan {
        alpha,
        barrier_exponent_n,
        barrier_exponent_l,
        distance_exponent_l,
        d,
        r,
        n,
        l: d * r,
        predicted_barriers: (r * r, d),
    })
}
