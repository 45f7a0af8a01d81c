//! Phase-free Pauli operators as pairs of GF(2) vectors.
//!
//! Operators live in the Pauli group modulo its phase subgroup, so products
//! are XORs, every element is an involution and commutation is the
//! symplectic form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Dense rendering is used up to this many qubits; larger operators use the sparse form.
pub const DENSE_RENDER_LIMIT: usize = 64;

/// Largest qubit count the sparse parser accepts.
pub const MAX_PARSED_QUBITS: usize = 1 << 24;

/// The two generator types of a CSS code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CssType {
    X,
    Z,
}

impl CssType {
    pub fn dual(self) -> CssType {
        match self {
            CssType::X => CssType::Z,
            CssType::Z => CssType::X,
        }
    }

    pub fn letter(self) -> char {
        match self {
            CssType::X => 'X',
            CssType::Z => 'Z',
        }
    }
}

impl fmt::Display for CssType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for CssType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "x" | "X" => Ok(CssType::X),
            "z" | "Z" => Ok(CssType::Z),
            other => Err(Error::Parse {
                line: 0,
                msg: format!("expected x or z, got {other:?}"),
            }),
        }
    }
}

/// A single-qubit Pauli factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliKind {
    X,
    Y,
    Z,
}

impl PauliKind {
    pub fn letter(self) -> char {
        match self {
            PauliKind::X => 'X',
            PauliKind::Y => 'Y',
            PauliKind::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<PauliKind> {
        match c {
            'X' | 'x' => Some(PauliKind::X),
            'Y' | 'y' => Some(PauliKind::Y),
            'Z' | 'z' => Some(PauliKind::Z),
            _ => None,
        }
    }
}

impl From<CssType> for PauliKind {
    fn from(t: CssType) -> Self {
        match t {
            CssType::X => PauliKind::X,
            CssType::Z => PauliKind::Z,
        }
    }
}

/// Ordered set of qubit indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QubitSet {
    indices: Vec<usize>,
}

impl QubitSet {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        Self { indices }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn range(n: usize) -> Self {
        Self {
            indices: (0..n).collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.indices.binary_search(&q).is_ok()
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.indices.last() {
            Some(&last) if last >= n => Err(Error::IndexOutOfRange { index: last, n }),
            _ => Ok(()),
        }
    }

    pub fn to_mask(&self, n: usize) -> Result<BitVec> {
        self.check_range(n)?;
        Ok(BitVec::from_indices(n, self.indices.iter().copied()))
    }

    pub fn union(&self, other: &QubitSet) -> QubitSet {
        QubitSet::new(self.indices.iter().chain(&other.indices).copied())
    }

    pub fn intersection(&self, other: &QubitSet) -> QubitSet {
        QubitSet::new(self.indices.iter().copied().filter(|q| other.contains(*q)))
    }
}

impl FromIterator<usize> for QubitSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        QubitSet::new(iter)
    }
}

/// An `n`-qubit Pauli operator with phase dropped.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn from_bits(x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(Self { x, z })
    }

    /// A pure operator of type `t` acting on `support`.
    pub fn pure(t: CssType, n: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let bits = BitVec::from_indices(n, support);
        Self::from_type_bits(t, bits)
    }

    pub fn from_type_bits(t: CssType, bits: BitVec) -> Self {
        let zero = BitVec::zeros(bits.len());
        match t {
            CssType::X => Self { x: bits, z: zero },
            CssType::Z => Self { x: zero, z: bits },
        }
    }

    pub fn single(n: usize, qubit: usize, kind: PauliKind) -> Result<Self> {
        if qubit >= n {
            return Err(Error::IndexOutOfRange { index: qubit, n });
        }
        let mut p = Self::identity(n);
        match kind {
            PauliKind::X => p.x.set(qubit, true),
            PauliKind::Y => {
                p.x.set(qubit, true);
                p.z.set(qubit, true);
            }
            PauliKind::Z => p.z.set(qubit, true),
        }
        Ok(p)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    /// The bit vector of the given type (x_bits for X, z_bits for Z).
    pub fn bits(&self, t: CssType) -> &BitVec {
        match t {
            CssType::X => &self.x,
            CssType::Z => &self.z,
        }
    }

    fn check_len(&self, other: &PauliOperator) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        self.check_len(other)?;
        Ok(PauliOperator {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        })
    }

    /// Symplectic product: `true` when the operators anticommute.
    pub fn symplectic(&self, other: &PauliOperator) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.x.dot(&other.z) ^ self.z.dot(&other.x))
    }

    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        Ok(!self.symplectic(other)?)
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn support(&self) -> QubitSet {
        self.x.or(&self.z).ones().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// `Some(t)` if the operator is a non-identity pure `t`-type operator.
    pub fn pure_type(&self) -> Option<CssType> {
        match (self.x.is_zero(), self.z.is_zero()) {
            (false, true) => Some(CssType::X),
            (true, false) => Some(CssType::Z),
            _ => None,
        }
    }

    pub fn is_pure(&self, t: CssType) -> bool {
        self.bits(t.dual()).is_zero()
    }

    pub fn restrict_mask(&self, mask: &BitVec) -> PauliOperator {
        PauliOperator {
            x: self.x.masked(mask),
            z: self.z.masked(mask),
        }
    }

    /// Restriction to `support`: factors outside it become identity.
    pub fn restrict_theta(&self, support: &QubitSet) -> Result<PauliOperator> {
        let mask = support.to_mask(self.n())?;
        Ok(self.restrict_mask(&mask))
    }

    /// Restriction to the shared (welded) qubits.
    pub fn weld_restrict(&self, shared: &QubitSet) -> Result<PauliOperator> {
        self.restrict_theta(shared)
    }

    /// Relabels qubit `i` to `map[i]` on a register of `n` qubits.
    pub fn embed(&self, map: &[usize], n: usize) -> PauliOperator {
        PauliOperator {
            x: self.x.remap(map, n),
            z: self.z.remap(map, n),
        }
    }

    pub fn factor(&self, q: usize) -> Option<PauliKind> {
        match (self.x.get(q), self.z.get(q)) {
            (false, false) => None,
            (true, false) => Some(PauliKind::X),
            (true, true) => Some(PauliKind::Y),
            (false, true) => Some(PauliKind::Z),
        }
    }

    pub fn to_dense(&self) -> String {
        (0..self.n())
            .map(|q| self.factor(q).map_or('I', PauliKind::letter))
            .collect()
    }

    pub fn to_sparse(&self) -> String {
        let list = |b: &BitVec| {
            b.ones()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("n={}; X:{}; Z:{}", self.n(), list(&self.x), list(&self.z))
    }

    /// Parses either the dense `"XIZY"` form or the sparse `"n=4; X:0,3; Z:2,3"` form.
    pub fn parse(s: &str) -> Result<PauliOperator> {
        let s = s.trim();
        let err = |msg: String| Error::Parse { line: 0, msg };
        if s.starts_with("n=") || s.starts_with("n =") {
            let mut n = None;
            let mut xs = Vec::new();
            let mut zs = Vec::new();
            for part in s.split(';') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                let (key, val) = part
                    .split_once(['=', ':'])
                    .ok_or_else(|| err(format!("malformed sparse field {part:?}")))?;
                let val = val.trim();
                match key.trim() {
                    "n" => {
                        n = Some(
                            val.parse::<usize>()
                                .map_err(|e| err(format!("bad qubit count {val:?}: {e}")))?,
                        )
                    }
                    k @ ("X" | "Z") => {
                        let target = if k == "X" { &mut xs } else { &mut zs };
                        for tok in val.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                            target.push(
                                tok.parse::<usize>()
                                    .map_err(|e| err(format!("bad index {tok:?}: {e}")))?,
                            );
                        }
                    }
                    other => return Err(err(format!("unknown sparse field {other:?}"))),
                }
            }
            let n = n.ok_or_else(|| err("sparse operator missing n".into()))?;
            if n > MAX_PARSED_QUBITS {
                return Err(err(format!("qubit count {n} exceeds {MAX_PARSED_QUBITS}")));
            }
            if let Some(&bad) = xs.iter().chain(&zs).find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange { index: bad, n });
            }
            let mut x = BitVec::zeros(n);
            let mut z = BitVec::zeros(n);
            for i in xs {
                if x.get(i) {
                    return Err(err(format!("duplicate X index {i}")));
                }
                x.set(i, true);
            }
            for i in zs {
                if z.get(i) {
                    return Err(err(format!("duplicate Z index {i}")));
                }
                z.set(i, true);
            }
            Ok(PauliOperator { x, z })
        } else {
            let chars: Vec<char> = s.chars().collect();
            let n = chars.len();
            let mut x = BitVec::zeros(n);
            let mut z = BitVec::zeros(n);
            for (i, c) in chars.into_iter().enumerate() {
                match c {
                    'I' | 'i' | '_' | '.' => {}
                    c => match PauliKind::from_letter(c) {
                        Some(PauliKind::X) => x.set(i, true),
                        Some(PauliKind::Z) => z.set(i, true),
                        Some(PauliKind::Y) => {
                            x.set(i, true);
                            z.set(i, true);
                        }
                        None => return Err(err(format!("unexpected character {c:?}"))),
                    },
                }
            }
            Ok(PauliOperator { x, z })
        }
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if (1..=DENSE_RENDER_LIMIT).contains(&self.n()) {
            f.write_str(&self.to_dense())
        } else {
            f.write_str(&self.to_sparse())
        }
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PauliOperator::parse(s)
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        PauliOperator::parse(&s).map_err(serde::de::Error::custom)
    }
}
