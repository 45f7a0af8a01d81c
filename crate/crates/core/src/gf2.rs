//! Gaussian elimination over GF(2).
//!
//! Everything here works on rows of [`BitVec`]. [`Echelon`] keeps a reduced
//! row-echelon basis of a row space and can reduce arbitrary vectors against
//! it, which gives canonical coset representatives modulo that space.

use crate::bits::BitVec;

/// Reduced row-echelon basis of a GF(2) row space.
///
/// Every basis row has a distinct pivot column, and every other basis row is
/// zero in that column.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    /// For each basis row, the input rows whose sum it is.
    combos: Vec<BitVec>,
    nin: usize,
}

impl Echelon {
    pub fn new<'a>(ncols: usize, rows: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let rows: Vec<&BitVec> = rows.into_iter().collect();
        let nin = rows.len();
        let mut e = Self {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            nin,
        };
        for (i, r) in rows.into_iter().enumerate() {
            e.insert_tracked(r.clone(), BitVec::from_indices(nin, [i]));
        }
        e.sort_by_pivot();
        e
    }

    /// Inserts a row; returns the input combination that reduced to zero if it was dependent.
    fn insert_tracked(&mut self, mut row: BitVec, mut combo: BitVec) -> Option<BitVec> {
        assert_eq!(row.len(), self.ncols, "row length does not match column count");
        for (b, (p, c)) in self.rows.iter().zip(self.pivots.iter().zip(&self.combos)) {
            if row.get(*p) {
                row.xor_assign(b);
                combo.xor_assign(c);
            }
        }
        match row.first_one() {
            None => Some(combo),
            Some(p) => {
                for (b, c) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
                    if b.get(p) {
                        b.xor_assign(&row);
                        c.xor_assign(&combo);
                    }
                }
                self.rows.push(row);
                self.pivots.push(p);
                self.combos.push(combo);
                None
            }
        }
    }

    fn sort_by_pivot(&mut self) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        self.rows = order.iter().map(|&i| self.rows[i].clone()).collect();
        self.combos = order.iter().map(|&i| self.combos[i].clone()).collect();
        self.pivots = order.iter().map(|&i| self.pivots[i]).collect();
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that are not pivots, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// The input rows summing to basis row `i`.
    pub fn combination(&self, i: usize) -> Vec<usize> {
        self.combos[i].ones().collect()
    }

    pub fn input_count(&self) -> usize {
        self.nin
    }

    /// Canonical representative of `v` modulo the row space: all pivot columns cleared.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        for (b, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(b);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Input rows whose sum equals `v`, if `v` lies in the row space.
    pub fn express(&self, v: &BitVec) -> Option<Vec<usize>> {
        let mut out = v.clone();
        let mut combo = BitVec::zeros(self.nin);
        for ((b, &p), c) in self.rows.iter().zip(&self.pivots).zip(&self.combos) {
            if out.get(p) {
                out.xor_assign(b);
                combo.xor_assign(c);
            }
        }
        out.is_zero().then(|| combo.ones().collect())
    }

    /// Same row space.
    pub fn same_span(&self, other: &Echelon) -> bool {
        self.ncols == other.ncols && self.rows == other.rows
    }
}

pub fn rank(ncols: usize, rows: &[BitVec]) -> usize {
    Echelon::new(ncols, rows).rank()
}

/// A nonempty set of input rows summing to zero, if the rows are dependent.
pub fn dependent_subset(ncols: usize, rows: &[BitVec]) -> Option<Vec<usize>> {
    let mut e = Echelon {
        ncols,
        rows: Vec::new(),
        pivots: Vec::new(),
        combos: Vec::new(),
        nin: rows.len(),
    };
    for (i, r) in rows.iter().enumerate() {
        if let Some(c) = e.insert_tracked(r.clone(), BitVec::from_indices(rows.len(), [i])) {
            return Some(c.ones().collect());
        }
    }
    None
}

/// Basis of `{v : r · v = 0 for every row r}`.
pub fn nullspace(ncols: usize, rows: &[BitVec]) -> Vec<BitVec> {
    let e = Echelon::new(ncols, rows);
    e.free_columns()
        .into_iter()
        .map(|f| {
            let mut v = BitVec::zeros(ncols);
            v.set(f, true);
            for (b, &p) in e.rows.iter().zip(&e.pivots) {
                if b.get(f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Solves `rows[i] · v = rhs[i]` for all `i`. Free variables are set to zero,
/// which yields the solution with the fewest pivot-column choices.
pub fn solve(ncols: usize, rows: &[BitVec], rhs: &[bool]) -> Option<BitVec> {
    assert_eq!(rows.len(), rhs.len());
    let aug: Vec<BitVec> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut a = BitVec::from_indices(ncols + 1, r.ones());
            a.set(ncols, b);
            a
        })
        .collect();
    let e = Echelon::new(ncols + 1, &aug);
    if e.pivots.contains(&ncols) {
        return None;
    }
    let mut v = BitVec::zeros(ncols);
    for (b, &p) in e.rows.iter().zip(&e.pivots) {
        if b.get(ncols) {
            v.set(p, true);
        }
    }
    Some(v)
}
