//! Small independent reference computations on `u64` bit masks.

#![allow(dead_code)]

use std::collections::VecDeque;

use codeweld::css::GenRef;
use codeweld::energy::PauliWalk;
use codeweld::sampling::random_zero_k_code;
use codeweld::{BitVec, CssCode, CssType, PauliOperator};
use rand::Rng;

pub fn mask(b: &BitVec) -> u64 {
    assert!(b.len() <= 64);
    b.ones().fold(0, |m, i| m | 1 << i)
}

pub fn masks(ops: &[PauliOperator], t: CssType) -> Vec<u64> {
    ops.iter().map(|p| mask(p.bits(t))).collect()
}

/// Reduces `rows` to an echelon basis keyed by leading bit.
pub fn basis(rows: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for &r in rows {
        let v = reduce(&out, r);
        if v != 0 {
            out.push(v);
            out.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    out
}

pub fn reduce(basis: &[u64], mut v: u64) -> u64 {
    for &b in basis {
        let top = 63 - b.leading_zeros();
        if v >> top & 1 == 1 {
            v ^= b;
        }
    }
    v
}

pub fn rank(rows: &[u64]) -> usize {
    basis(rows).len()
}

pub fn in_span(rows: &[u64], v: u64) -> bool {
    reduce(&basis(rows), v) == 0
}

pub fn encoded_qubits(code: &CssCode) -> usize {
    let g = code.gens();
    code.n() - rank(&masks(g.x_gens(), CssType::X)) - rank(&masks(g.z_gens(), CssType::Z))
}

/// Minimum weight of a `t`-type operator that commutes with every
/// opposite-type generator and lies outside the `t`-type stabilizers,
/// by enumerating all `2^n` operators.
pub fn brute_distance(code: &CssCode, t: CssType) -> Option<usize> {
    let n = code.n();
    assert!(n <= 24);
    let checks = masks(code.gens().gens(t.dual()), t.dual());
    let stab = basis(&masks(code.gens().gens(t), t));
    (1u64..1 << n)
        .filter(|v| checks.iter().all(|c| (c & v).count_ones() % 2 == 0))
        .filter(|&v| reduce(&stab, v) != 0)
        .map(|v| v.count_ones() as usize)
        .min()
}

/// Replays a single-type walk: peak violated-check count over all prefixes
/// and the walk's product.
pub fn replay(code: &CssCode, walk: &PauliWalk) -> (usize, u64) {
    let mut cur = 0u64;
    let mut peak = 0;
    let t = match walk.steps().first() {
        None => return (0, 0),
        Some(&(_, k)) => {
            if k.letter() == 'X' {
                CssType::X
            } else {
                CssType::Z
            }
        }
    };
    let checks = masks(code.gens().gens(t.dual()), t.dual());
    for &(q, _) in walk.steps() {
        cur ^= 1 << q;
        let e = checks.iter().filter(|c| (*c & cur).count_ones() % 2 == 1).count();
        peak = peak.max(e);
    }
    (peak, cur)
}

/// Bottleneck cost of flipping spins `0..nv` from all-zero to `target`
/// one at a time. A term `(a, Some(b))` costs one when spins `a` and `b`
/// differ; `(a, None)` ties `a` to a ghost spin fixed at zero. Searches
/// thresholds upward with plain breadth-first reachability.
pub fn ising_barrier(nv: usize, terms: &[(usize, Option<usize>)], target: u64) -> usize {
    assert!(nv <= 20);
    let energy = |s: u64| {
        terms
            .iter()
            .filter(|&&(a, b)| {
                let sa = s >> a & 1;
                let sb = b.map_or(0, |b| s >> b & 1);
                sa != sb
            })
            .count()
    };
    for threshold in 0..=terms.len() {
        let mut seen = vec![false; 1 << nv];
        let mut queue = VecDeque::from([0u64]);
        seen[0] = true;
        while let Some(s) = queue.pop_front() {
            if s == target {
                return threshold;
            }
            for v in 0..nv {
                let t = s ^ 1 << v;
                if !seen[t as usize] && energy(t) <= threshold {
                    seen[t as usize] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    unreachable!("every configuration is reachable below the term count")
}

/// A random code with one promoted logical class.
pub fn random_code_with_logical<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CssCode {
    loop {
        let c = random_zero_k_code(rng, n);
        let xs = c.gens().x_gens().len();
        let zs = c.gens().z_gens().len();
        let pick = if xs > 0 && (zs == 0 || rng.gen()) {
            GenRef::x(rng.gen_range(0..xs))
        } else if zs > 0 {
            GenRef::z(rng.gen_range(0..zs))
        } else {
            continue;
        };
        if let Ok(p) = c.promote_to_logical(pick) {
            return p;
        }
    }
}
