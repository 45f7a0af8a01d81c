//! Random small codes and weld instances for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bits::BitVec;
use crate::css::{CssCode, GeneratingSet};
use crate::gf2;
use crate::pauli::{CssType, PauliOperator, QubitSet};
use crate::welding::{align_on_weld, QubitIdentification};

fn random_bits<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BitVec {
    let bools: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    BitVec::from_bools(&bools)
}

/// Replaces each row by a random nonzero combination with the rows after
/// it, which keeps the span and the count.
fn scramble<R: Rng + ?Sized>(rng: &mut R, rows: &mut [BitVec]) {
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if rng.gen_bool(0.3) {
                let other = rows[j].clone();
                rows[i].xor_assign(&other);
            }
        }
    }
    rows.shuffle(rng);
}

/// A random CSS code on `n` qubits encoding nothing: random independent
/// X generators, and a scrambled basis of their annihilator as Z generators.
pub fn random_zero_k_code<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CssCode {
    let target = rng.gen_range(0..=n);
    let mut x_rows: Vec<BitVec> = Vec::new();
    for _ in 0..target {
        let v = random_bits(rng, n);
        let mut trial = x_rows.clone();
        trial.push(v.clone());
        if gf2::rank(n, &trial) == trial.len() {
            x_rows = trial;
        }
    }
    let mut z_rows = gf2::nullspace(n, &x_rows);
    scramble(rng, &mut x_rows);
    scramble(rng, &mut z_rows);
    let gens = GeneratingSet::new(
        n,
        x_rows
            .into_iter()
            .map(|b| PauliOperator::from_type_bits(CssType::X, b))
            .collect(),
        z_rows
            .into_iter()
            .map(|b| PauliOperator::from_type_bits(CssType::Z, b))
            .collect(),
    )
    .expect("annihilator rows commute with the X rows");
    CssCode::from_gens(gens).expect("no logicals to check")
}

/// Two zero-qubit codes, a qubit identification and a weld type.
#[derive(Clone, Debug)]
pub struct WeldInstance {
    pub code1: CssCode,
    pub code2: CssCode,
    pub ident: QubitIdentification,
    pub weld_type: CssType,
}

/// Draws two random zero-qubit codes of at most `max_n` qubits each and a
/// random identification of between one and `min(n1, n2)` qubit pairs.
pub fn random_weld_instance<R: Rng + ?Sized>(rng: &mut R, max_n: usize) -> WeldInstance {
    let max_n = max_n.max(1);
    let n1 = rng.gen_range(1..=max_n);
    let n2 = rng.gen_range(1..=max_n);
    let s = rng.gen_range(1..=n1.min(n2));
    let mut q1: Vec<usize> = (0..n1).collect();
    let mut q2: Vec<usize> = (0..n2).collect();
    q1.shuffle(rng);
    q2.shuffle(rng);
    let ident = QubitIdentification::new(q1[..s].iter().copied().zip(q2[..s].iter().copied()).collect());
    WeldInstance {
        code1: random_zero_k_code(rng, n1),
        code2: random_zero_k_code(rng, n2),
        ident,
        weld_type: if rng.gen() { CssType::Z } else { CssType::X },
    }
}

impl WeldInstance {
    /// The same instance with both generating sets rewritten by
    /// [`align_on_weld`], which makes the weld preconditions hold whenever
    /// the two sides' restrictions span the same space.
    pub fn aligned(&self) -> WeldInstance {
        let (w1, w2): (Vec<usize>, Vec<usize>) = self.ident.pairs().iter().copied().unzip();
        let align = |code: &CssCode, w: Vec<usize>| {
            let gens = align_on_weld(code.gens(), &QubitSet::new(w), self.weld_type)
                .expect("identification indices are in range");
            CssCode::from_gens(gens).expect("alignment preserves the group")
        };
        WeldInstance {
            code1: align(&self.code1, w1),
            code2: align(&self.code2, w2),
            ident: self.ident.clone(),
            weld_type: self.weld_type,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_k_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..10 {
            for _ in 0..20 {
                let c = random_zero_k_code(&mut rng, n);
                assert_eq!(c.n(), n);
                assert_eq!(c.encoded_qubits(), 0);
            }
        }
    }

    #[test]
    fn instances_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let inst = random_weld_instance(&mut rng, 6);
            inst.ident.validate(inst.code1.n(), inst.code2.n()).unwrap();
            let a = inst.aligned();
            assert!(a.code1.gens().groups_equal(inst.code1.gens()).unwrap());
        }
    }
}
