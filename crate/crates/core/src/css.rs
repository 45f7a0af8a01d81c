//! CSS stabilizer groups as pairs of GF(2) row spaces.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::{self, Echelon};
use crate::pauli::{CssType, PauliOperator};
use crate::regions::FlatRegionGraph;

/// Refuse exhaustive distance computations when the same-type stabilizer rank exceeds this.
pub const DISTANCE_RANK_CAP: usize = 24;
/// Upper bound on `rank + k` for the distance enumeration.
pub const DISTANCE_TOTAL_CAP: usize = 28;
/// Exhaustive minimum-weight search for logical partners up to this nullspace dimension.
pub const PARTNER_EXHAUSTIVE_DIM: usize = 20;

/// A generating set in standard CSS form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    n: usize,
    x_gens: Vec<PauliOperator>,
    z_gens: Vec<PauliOperator>,
}

/// Reference to one generator by type and position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenRef {
    pub kind: CssType,
    pub index: usize,
}

impl GenRef {
    pub fn x(index: usize) -> Self {
        Self {
            kind: CssType::X,
            index,
        }
    }
    pub fn z(index: usize) -> Self {
        Self {
            kind: CssType::Z,
            index,
        }
    }
}

impl fmt::Display for GenRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.index)
    }
}

impl GeneratingSet {
    /// Checks lengths only; call [`GeneratingSet::validate`] for CSS form and commutation.
    pub fn new(n: usize, x_gens: Vec<PauliOperator>, z_gens: Vec<PauliOperator>) -> Result<Self> {
        for g in x_gens.iter().chain(&z_gens) {
            if g.n() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: g.n(),
                });
            }
        }
        Ok(Self { n, x_gens, z_gens })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            x_gens: Vec::new(),
            z_gens: Vec::new(),
        }
    }

    /// Builds a set from pure generators of each type given as supports.
    pub fn from_supports(n: usize, x: &[Vec<usize>], z: &[Vec<usize>]) -> Self {
        Self {
            n,
            x_gens: x
                .iter()
                .map(|s| PauliOperator::pure(CssType::X, n, s.iter().copied()))
                .collect(),
            z_gens: z
                .iter()
                .map(|s| PauliOperator::pure(CssType::Z, n, s.iter().copied()))
                .collect(),
        }
    }

    /// Parses a list of dense operator strings, sorting each into its type.
    pub fn from_strs(ops: &[&str]) -> Result<Self> {
        let ops: Vec<PauliOperator> = ops
            .iter()
            .map(|s| PauliOperator::parse(s))
            .collect::<Result<_>>()?;
        let n = ops.first().map_or(0, PauliOperator::n);
        let mut x = Vec::new();
        let mut z = Vec::new();
        for (i, op) in ops.into_iter().enumerate() {
            match op.pure_type() {
                Some(CssType::X) => x.push(op),
                Some(CssType::Z) => z.push(op),
                None => {
                    return Err(Error::NotCssForm {
                        kind: '?',
                        index: i,
                        found: op.to_string(),
                    })
                }
            }
        }
        Self::new(n, x, z)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_gens(&self) -> &[PauliOperator] {
        &self.x_gens
    }

    pub fn z_gens(&self) -> &[PauliOperator] {
        &self.z_gens
    }

    pub fn gens(&self, t: CssType) -> &[PauliOperator] {
        match t {
            CssType::X => &self.x_gens,
            CssType::Z => &self.z_gens,
        }
    }

    pub(crate) fn gens_mut(&mut self, t: CssType) -> &mut Vec<PauliOperator> {
        match t {
            CssType::X => &mut self.x_gens,
            CssType::Z => &mut self.z_gens,
        }
    }

    pub fn get(&self, r: GenRef) -> Option<&PauliOperator> {
        self.gens(r.kind).get(r.index)
    }

    pub fn len(&self) -> usize {
        self.x_gens.len() + self.z_gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `t`-type bit rows of the `t`-type generators.
    pub fn rows(&self, t: CssType) -> Vec<BitVec> {
        self.gens(t).iter().map(|g| g.bits(t).clone()).collect()
    }

    pub fn echelon(&self, t: CssType) -> Echelon {
        let rows = self.rows(t);
        Echelon::new(self.n, &rows)
    }

    /// Confirms standard CSS form and that every X generator commutes with every Z generator.
    pub fn validate(&self) -> Result<()> {
        for t in [CssType::X, CssType::Z] {
            for (i, g) in self.gens(t).iter().enumerate() {
                if g.n() != self.n {
                    return Err(Error::LengthMismatch {
                        left: self.n,
                        right: g.n(),
                    });
                }
                if !g.is_pure(t) {
                    return Err(Error::NotCssForm {
                        kind: t.letter(),
                        index: i,
                        found: g.to_string(),
                    });
                }
            }
        }
        for (xi, xg) in self.x_gens.iter().enumerate() {
            for (zi, zg) in self.z_gens.iter().enumerate() {
                if xg.x_bits().dot(zg.z_bits()) {
                    return Err(Error::Anticommuting {
                        x_index: xi,
                        z_index: zi,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn rank_type(&self, t: CssType) -> usize {
        gf2::rank(self.n, &self.rows(t))
    }

    /// Dimension of the generated group as a GF(2) vector space.
    pub fn rank_gf2(&self) -> usize {
        self.rank_type(CssType::X) + self.rank_type(CssType::Z)
    }

    /// True iff both sets generate the same group.
    pub fn groups_equal(&self, other: &GeneratingSet) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok([CssType::X, CssType::Z]
            .iter()
            .all(|&t| self.echelon(t).same_span(&other.echelon(t))))
    }

    /// Whether `op` (pure of some type) lies in the generated group.
    pub fn contains(&self, op: &PauliOperator) -> bool {
        self.echelon(CssType::X).contains(op.x_bits()) && self.echelon(CssType::Z).contains(op.z_bits())
    }

    /// Relabels qubits through `map` onto `n` qubits.
    pub fn embed(&self, map: &[usize], n: usize) -> GeneratingSet {
        GeneratingSet {
            n,
            x_gens: self.x_gens.iter().map(|g| g.embed(map, n)).collect(),
            z_gens: self.z_gens.iter().map(|g| g.embed(map, n)).collect(),
        }
    }

    pub fn push(&mut self, t: CssType, op: PauliOperator) -> Result<()> {
        if op.n() != self.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: op.n(),
            });
        }
        self.gens_mut(t).push(op);
        Ok(())
    }
}

/// One encoded qubit: a Z-type and an X-type representative that anticommute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalClass {
    pub z_rep: PauliOperator,
    pub x_rep: PauliOperator,
}

impl LogicalClass {
    pub fn rep(&self, t: CssType) -> &PauliOperator {
        match t {
            CssType::X => &self.x_rep,
            CssType::Z => &self.z_rep,
        }
    }
}

/// Violated generators, by index into the code's generator lists.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Syndrome {
    pub violated_x: Vec<usize>,
    pub violated_z: Vec<usize>,
}

impl Syndrome {
    pub fn weight(&self) -> usize {
        self.violated_x.len() + self.violated_z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weight() == 0
    }

    /// Symmetric difference of two syndromes.
    pub fn sum(&self, other: &Syndrome) -> Syndrome {
        fn symdiff(a: &[usize], b: &[usize]) -> Vec<usize> {
            let mut out: Vec<usize> = a
                .iter()
                .filter(|i| !b.contains(i))
                .chain(b.iter().filter(|i| !a.contains(i)))
                .copied()
                .collect();
            out.sort_unstable();
            out
        }
        Syndrome {
            violated_x: symdiff(&self.violated_x, &other.violated_x),
            violated_z: symdiff(&self.violated_z, &other.violated_z),
        }
    }
}

/// Minimum logical weights of each type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distance {
    pub d_x: usize,
    pub d_z: usize,
}

impl Distance {
    pub fn min(&self) -> usize {
        self.d_x.min(self.d_z)
    }
}

/// A CSS code: generating set, promoted logical classes and optional
/// flat-region metadata attached by the builders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    gens: GeneratingSet,
    logicals: Vec<LogicalClass>,
    regions: Vec<FlatRegionGraph>,
}

impl CssCode {
    pub fn new(gens: GeneratingSet, logicals: Vec<LogicalClass>) -> Result<Self> {
        gens.validate()?;
        let code = Self {
            gens,
            logicals,
            regions: Vec::new(),
        };
        code.check_logicals()?;
        Ok(code)
    }

    pub fn from_gens(gens: GeneratingSet) -> Result<Self> {
        Self::new(gens, Vec::new())
    }

    fn check_logicals(&self) -> Result<()> {
        let n = self.n();
        for (i, l) in self.logicals.iter().enumerate() {
            let bad = |reason: &str| Error::InvalidLogical {
                index: i,
                reason: reason.to_string(),
            };
            if l.z_rep.n() != n || l.x_rep.n() != n {
                return Err(bad("wrong qubit count"));
            }
            if !l.z_rep.is_pure(CssType::Z) || !l.x_rep.is_pure(CssType::X) {
                return Err(bad("representatives must be pure Z and pure X"));
            }
            if !l.z_rep.z_bits().dot(l.x_rep.x_bits()) {
                return Err(bad("representatives commute"));
            }
            for t in [CssType::X, CssType::Z] {
                let rep = l.rep(t);
                if self
                    .gens
                    .gens(t.dual())
                    .iter()
                    .any(|g| g.bits(t.dual()).dot(rep.bits(t)))
                {
                    return Err(bad("representative anticommutes with a generator"));
                }
            }
            for (j, m) in self.logicals.iter().enumerate() {
                if i != j && l.z_rep.z_bits().dot(m.x_rep.x_bits()) {
                    return Err(bad("representative anticommutes with another class"));
                }
            }
        }
        Ok(())
    }

    pub fn gens(&self) -> &GeneratingSet {
        &self.gens
    }

    pub fn logicals(&self) -> &[LogicalClass] {
        &self.logicals
    }

    pub fn n(&self) -> usize {
        self.gens.n()
    }

    pub fn regions(&self) -> &[FlatRegionGraph] {
        &self.regions
    }

    pub fn with_regions(mut self, regions: Vec<FlatRegionGraph>) -> Result<Self> {
        for r in &regions {
            r.check(self.n())?;
        }
        self.regions = regions;
        Ok(self)
    }

    /// Builder-annotated flat regions for the given particle type.
    pub fn flat_region_graph(&self, particle_type: CssType) -> Result<&FlatRegionGraph> {
        self.regions
            .iter()
            .find(|r| r.particle_type == particle_type)
            .ok_or(Error::MissingRegionMetadata(particle_type.letter()))
    }

    /// `n - rank`, with promoted logicals absent from the generators.
    pub fn encoded_qubits(&self) -> usize {
        self.n() - self.gens.rank_gf2()
    }

    /// Generators anticommuting with `error`.
    pub fn syndrome(&self, error: &PauliOperator) -> Result<Syndrome> {
        if error.n() != self.n() {
            return Err(Error::LengthMismatch {
                left: self.n(),
                right: error.n(),
            });
        }
        let violated = |t: CssType| -> Vec<usize> {
            self.gens
                .gens(t)
                .iter()
                .enumerate()
                .filter(|(_, g)| g.bits(t).dot(error.bits(t.dual())))
                .map(|(i, _)| i)
                .collect()
        };
        Ok(Syndrome {
            violated_x: violated(CssType::X),
            violated_z: violated(CssType::Z),
        })
    }

    /// Removes an independent generator and installs it as a new logical class,
    /// paired with a low-weight anticommuting partner.
    pub fn promote_to_logical(&self, gen: GenRef) -> Result<CssCode> {
        let rep = self
            .gens
            .get(gen)
            .cloned()
            .ok_or_else(|| Error::NoSuchGenerator(gen.to_string()))?;
        let mut gens = self.gens.clone();
        gens.gens_mut(gen.kind).remove(gen.index);
        if gens.rank_type(gen.kind) == self.gens.rank_type(gen.kind) {
            return Err(Error::DependentGenerator(gen.to_string()));
        }
        let reduced = CssCode {
            gens,
            logicals: self.logicals.clone(),
            regions: self.regions.clone(),
        };
        let partner = reduced.anticommuting_partner(&rep)?;
        let class = match gen.kind {
            CssType::Z => LogicalClass {
                z_rep: rep,
                x_rep: partner,
            },
            CssType::X => LogicalClass {
                z_rep: partner,
                x_rep: rep,
            },
        };
        let mut out = reduced;
        out.logicals.push(class);
        out.check_logicals()?;
        Ok(out)
    }

    /// Inverse of [`CssCode::promote_to_logical`]: drops logical class `index`
    /// and appends its `t`-type representative to the generators.
    pub fn fold_logical(&self, index: usize, t: CssType) -> Result<CssCode> {
        let class = self.logicals.get(index).ok_or_else(|| Error::InvalidLogical {
            index,
            reason: "no such logical class".into(),
        })?;
        let mut gens = self.gens.clone();
        gens.gens_mut(t).push(class.rep(t).clone());
        let mut logicals = self.logicals.clone();
        logicals.remove(index);
        let mut out = CssCode::new(gens, logicals)?;
        out.regions = self.regions.clone();
        Ok(out)
    }

    /// Installs an explicit logical class (both representatives given).
    pub fn with_logical(&self, class: LogicalClass) -> Result<CssCode> {
        let mut out = self.clone();
        out.logicals.push(class);
        out.check_logicals()?;
        Ok(out)
    }

    /// A pure operator of the type opposite to `logical_rep` that anticommutes
    /// with it and commutes with all generators and all other logical
    /// representatives. Minimum weight when the solution space is small enough
    /// to enumerate, otherwise greedily reduced; among equal weights the
    /// support starting at the lowest qubit wins.
    pub fn anticommuting_partner(&self, logical_rep: &PauliOperator) -> Result<PauliOperator> {
        let n = self.n();
        let t = logical_rep
            .pure_type()
            .ok_or_else(|| Error::NotLogical(logical_rep.to_string()))?;
        if logical_rep.n() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: logical_rep.n(),
            });
        }
        let pt = t.dual();
        // constraints on the partner's pt-bits: dot with each t-type row
        let mut rows: Vec<BitVec> = self.gens.rows(t);
        let mut rhs = vec![false; rows.len()];
        for l in &self.logicals {
            let r = l.rep(t);
            if r != logical_rep {
                rows.push(r.bits(t).clone());
                rhs.push(false);
            }
        }
        rows.push(logical_rep.bits(t).clone());
        rhs.push(true);
        let particular =
            gf2::solve(n, &rows, &rhs).ok_or_else(|| Error::NotLogical(logical_rep.to_string()))?;
        let null = gf2::nullspace(n, &rows);
        let best = min_weight_in_coset(&particular, &null);
        let op = PauliOperator::from_type_bits(pt, best);
        if self
            .gens
            .gens(pt)
            .iter()
            .any(|g| g.bits(pt).dot(logical_rep.bits(t)))
        {
            return Err(Error::NotLogical(logical_rep.to_string()));
        }
        Ok(op)
    }

    /// A basis of `t`-type logical operators modulo the `t`-type stabilizers.
    pub fn logical_basis(&self, t: CssType) -> Vec<PauliOperator> {
        let n = self.n();
        let dual_rows = self.gens.rows(t.dual());
        let kernel = gf2::nullspace(n, &dual_rows);
        let mut stab = self.gens.rows(t);
        let base = gf2::rank(n, &stab);
        let mut out = Vec::new();
        for v in kernel {
            stab.push(v.clone());
            if gf2::rank(n, &stab) > base + out.len() {
                out.push(PauliOperator::from_type_bits(t, v));
            } else {
                stab.pop();
            }
        }
        out
    }

    /// Exhaustive minimum weight of nontrivial logical operators of each type.
    pub fn distance(&self) -> Result<Distance> {
        if self.encoded_qubits() == 0 {
            return Err(Error::NoLogicalQubits);
        }
        Ok(Distance {
            d_x: self.distance_of_type(CssType::X)?,
            d_z: self.distance_of_type(CssType::Z)?,
        })
    }

    pub fn distance_of_type(&self, t: CssType) -> Result<usize> {
        let n = self.n();
        let stab = self.gens.echelon(t);
        let r = stab.rank();
        if r > DISTANCE_RANK_CAP {
            return Err(Error::TooLarge {
                what: format!("{t}-stabilizer rank"),
                size: r as u64,
                cap: DISTANCE_RANK_CAP as u64,
            });
        }
        let logicals = self.logical_basis(t);
        let k = logicals.len();
        if k == 0 {
            return Err(Error::NoLogicalQubits);
        }
        if r + k > DISTANCE_TOTAL_CAP {
            return Err(Error::TooLarge {
                what: format!("{t}-stabilizer rank + k"),
                size: (r + k) as u64,
                cap: DISTANCE_TOTAL_CAP as u64,
            });
        }
        let mut basis: Vec<BitVec> = stab.rows().to_vec();
        basis.extend(logicals.iter().map(|l| l.bits(t).clone()));
        let mut cur = BitVec::zeros(n);
        let mut best = usize::MAX;
        let total = 1u64 << (r + k);
        // Gray-code walk over the span; the logical part is nonzero whenever
        // some of the top k coordinates are set.
        let mut logical_mask: u64 = 0;
        for step in 1..total {
            let bit = step.trailing_zeros() as usize;
            cur.xor_assign(&basis[bit]);
            if bit >= r {
                logical_mask ^= 1 << (bit - r);
            }
            if logical_mask != 0 {
                let w = cur.count_ones();
                if w < best {
                    best = w;
                }
            }
        }
        Ok(best)
    }
}

/// Minimum-weight vector of `base + span(null)`; ties go to the support that starts earliest.
pub(crate) fn min_weight_in_coset(base: &BitVec, null: &[BitVec]) -> BitVec {
    if null.len() <= PARTNER_EXHAUSTIVE_DIM {
        let mut cur = base.clone();
        let mut best = cur.clone();
        let mut best_w = cur.count_ones();
        for step in 1u64..(1u64 << null.len()) {
            cur.xor_assign(&null[step.trailing_zeros() as usize]);
            let w = cur.count_ones();
            if w < best_w || (w == best_w && cur.lex_cmp(&best).is_gt()) {
                best_w = w;
                best = cur.clone();
            }
        }
        best
    } else {
        let mut cur = base.clone();
        loop {
            let mut improved = false;
            for v in null {
                let cand = cur.xor(v);
                if cand.count_ones() < cur.count_ones() {
                    cur = cand;
                    improved = true;
                }
            }
            if !improved {
                return cur;
            }
        }
    }
}
