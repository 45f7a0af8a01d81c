//! Fixed-length bit vectors over GF(2).

use std::cmp::Ordering;
use std::fmt;

/// A fixed-length vector over GF(2), packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.and_assign(other);
        out
    }

    pub fn or(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.or_assign(other);
        out
    }

    /// Parity of the inner product `self · other`.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Number of positions set in both vectors.
    pub fn overlap(&self, other: &BitVec) -> usize {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    /// Keep only the bits selected by `mask`.
    pub fn masked(&self, mask: &BitVec) -> BitVec {
        self.and(mask)
    }

    /// Reindex into a vector of length `len`, sending bit `i` to `map[i]`.
    pub fn remap(&self, map: &[usize], len: usize) -> BitVec {
        assert_eq!(map.len(), self.len);
        BitVec::from_indices(len, self.ones().map(|i| map[i]))
    }

    /// Gather the bits at `positions` into a new, shorter vector.
    pub fn gather(&self, positions: &[usize]) -> BitVec {
        BitVec::from_indices(
            positions.len(),
            positions
                .iter()
                .enumerate()
                .filter(|(_, &p)| self.get(p))
                .map(|(i, _)| i),
        )
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Lexicographic order reading qubit 0 first, with 0 < 1 at the first difference.
    pub fn lex_cmp(&self, other: &BitVec) -> Ordering {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().zip(&other.words) {
            if a != b {
                let diff = a ^ b;
                let pos = diff.trailing_zeros();
                return if (a >> pos) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_across_words() {
        let mut v = BitVec::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.count_ones(), 3);
        v.flip(64);
        assert!(!v.get(64));
    }

    #[test]
    fn dot_and_overlap() {
        let a = BitVec::from_indices(5, [0, 1, 2]);
        let b = BitVec::from_indices(5, [1, 2, 3]);
        assert_eq!(a.overlap(&b), 2);
        assert!(!a.dot(&b));
        assert!(a.dot(&BitVec::from_indices(5, [2])));
    }

    #[test]
    fn lex_order_reads_qubit_zero_first() {
        let a = BitVec::from_indices(4, [1]);
        let b = BitVec::from_indices(4, [0]);
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        assert_eq!(b.lex_cmp(&a), Ordering::Greater);
        assert_eq!(a.lex_cmp(&a), Ordering::Equal);
    }

    #[test]
    fn gather_and_remap() {
        let a = BitVec::from_indices(6, [1, 4]);
        assert_eq!(a.gather(&[4, 0, 1]).ones().collect::<Vec<_>>(), vec![0, 2]);
        let r = a.remap(&[5, 4, 3, 2, 1, 0], 6);
        assert_eq!(r.ones().collect::<Vec<_>>(), vec![1, 4]);
    }
}
