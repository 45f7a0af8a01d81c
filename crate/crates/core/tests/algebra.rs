mod common;

use codeweld::builders::{
    build_repetition, build_solid, build_surface, build_two_qubit, SolidSpec, StringLogicals,
    SurfaceSpec,
};
use codeweld::css::GenRef;
use codeweld::sampling::random_zero_k_code;
use codeweld::{
    from_json, from_text, parse_code, to_json, to_text, CssCode, CssType, PauliOperator, QubitSet,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{encoded_qubits, random_code_with_logical};

fn op(max_n: usize) -> impl Strategy<Value = PauliOperator> {
    (0..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::sample::select(vec!['I', 'X', 'Y', 'Z']), n)
            .prop_map(|cs| cs.into_iter().collect::<String>().parse().unwrap())
    })
}

fn ops(count: usize, max_n: usize) -> impl Strategy<Value = Vec<PauliOperator>> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(
            prop::collection::vec(prop::sample::select(vec!['I', 'X', 'Y', 'Z']), n)
                .prop_map(|cs| cs.into_iter().collect::<String>().parse::<PauliOperator>().unwrap()),
            count,
        )
    })
}

/// Multiplies single-qubit matrices up to phase: the product is the letter
/// obtained by XOR of the (x, z) pairs, which is checked against the table.
fn letter_product(a: char, b: char) -> char {
    let table = ['I', 'X', 'Z', 'Y'];
    let idx = |c: char| table.iter().position(|&t| t == c).unwrap();
    table[idx(a) ^ idx(b)]
}

fn any_code(seed: u64) -> CssCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = rng.gen_range(2..=12);
    match seed % 5 {
        0 => build_surface(
            SurfaceSpec::new(rng.gen_range(1..=3), rng.gen_range(1..=3)).unwrap(),
            [StringLogicals::Promote, StringLogicals::Omit, StringLogicals::FoldX, StringLogicals::FoldZ]
                [rng.gen_range(0..4)],
        )
        .unwrap(),
        1 => build_solid(
            SolidSpec::new(rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen())
                .unwrap(),
        )
        .unwrap(),
        2 => random_zero_k_code(&mut rng, size),
        3 => build_repetition(size).unwrap(),
        _ => random_code_with_logical(&mut rng, size),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn commutation_form_is_bilinear(v in ops(3, 6)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        let bc = b.multiply(c).unwrap();
        let lhs = a.commutes(&bc).unwrap();
        let rhs = a.symplectic(b).unwrap() == a.symplectic(c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiply_is_a_commutative_involution(v in ops(2, 70)) {
        let (a, b) = (&v[0], &v[1]);
        prop_assert!(a.multiply(a).unwrap().is_identity());
        prop_assert_eq!(a.multiply(b).unwrap(), b.multiply(a).unwrap());
        prop_assert_eq!(&a.multiply(b).unwrap().multiply(b).unwrap(), a);
    }

    #[test]
    fn multiply_matches_single_qubit_table(v in ops(2, 12)) {
        let (a, b) = (&v[0], &v[1]);
        let want: String = a.to_dense().chars().zip(b.to_dense().chars())
            .map(|(x, y)| letter_product(x, y)).collect();
        prop_assert_eq!(a.multiply(b).unwrap().to_dense(), want);
    }

    #[test]
    fn restriction_is_idempotent_and_multiplicative(v in ops(2, 70), pick in any::<u64>()) {
        let n = v[0].n();
        let w = QubitSet::new((0..n).filter(|q| pick >> (q % 64) & 1 == 1));
        let (a, b) = (&v[0], &v[1]);
        let ra = a.weld_restrict(&w).unwrap();
        prop_assert_eq!(&ra.weld_restrict(&w).unwrap(), &ra);
        prop_assert_eq!(&a.restrict_theta(&w).unwrap(), &ra);
        let lhs = a.multiply(b).unwrap().weld_restrict(&w).unwrap();
        let rhs = ra.multiply(&b.weld_restrict(&w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn operator_text_round_trips(p in op(90)) {
        prop_assert_eq!(&PauliOperator::parse(&p.to_dense()).unwrap(), &p);
        prop_assert_eq!(&PauliOperator::parse(&p.to_sparse()).unwrap(), &p);
        prop_assert_eq!(&PauliOperator::parse(&p.to_string()).unwrap(), &p);
    }

    #[test]
    fn syndrome_is_linear(seed in any::<u64>(), v in ops(2, 10)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_zero_k_code(&mut rng, v[0].n());
        let (a, b) = (&v[0], &v[1]);
        let lhs = code.syndrome(&a.multiply(b).unwrap()).unwrap();
        let rhs = code.syndrome(a).unwrap().sum(&code.syndrome(b).unwrap());
        prop_assert_eq!(lhs, rhs);
        for g in code.gens().x_gens().iter().chain(code.gens().z_gens()) {
            prop_assert!(code.syndrome(g).unwrap().is_empty());
        }
    }

    #[test]
    fn promote_then_reinsert_restores_group(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=10);
        let code = random_zero_k_code(&mut rng, n);
        let gens = code.gens();
        let pick = if !gens.x_gens().is_empty() && (gens.z_gens().is_empty() || rng.gen()) {
            GenRef::x(rng.gen_range(0..gens.x_gens().len()))
        } else {
            GenRef::z(rng.gen_range(0..gens.z_gens().len()))
        };
        let promoted = code.promote_to_logical(pick).unwrap();
        prop_assert_eq!(promoted.encoded_qubits(), 1);
        let rep = gens.get(pick).unwrap().clone();
        let t = rep.pure_type().unwrap();
        let mut back = promoted.gens().clone();
        back.push(t, rep).unwrap();
        prop_assert!(back.groups_equal(gens).unwrap());
    }

    #[test]
    fn partner_anticommutes_with_exactly_its_class(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=10);
        let code = random_code_with_logical(&mut rng, n);
        for t in [CssType::X, CssType::Z] {
            let rep = code.logicals()[0].rep(t);
            let partner = code.anticommuting_partner(rep).unwrap();
            prop_assert!(partner.is_pure(t.dual()));
            prop_assert!(!partner.commutes(rep).unwrap());
            prop_assert!(code.syndrome(&partner).unwrap().is_empty());
        }
    }

    #[test]
    fn exports_round_trip(seed in any::<u64>()) {
        let code = any_code(seed);
        for back in [from_text(&to_text(&code)).unwrap(), from_json(&to_json(&code)).unwrap()] {
            prop_assert_eq!(back.gens().x_gens(), code.gens().x_gens());
            prop_assert_eq!(back.gens().z_gens(), code.gens().z_gens());
            prop_assert!(back.gens().groups_equal(code.gens()).unwrap());
            prop_assert_eq!(&back, &code);
        }
    }

    #[test]
    fn declared_k_matches_generators(seed in any::<u64>()) {
        let code = any_code(seed);
        code.gens().validate().unwrap();
        prop_assert_eq!(code.encoded_qubits(), encoded_qubits(&code));
        prop_assert!(code.logicals().len() <= code.encoded_qubits());
    }
}

#[test]
fn small_codes() {
    let two = build_two_qubit();
    assert_eq!(to_text(&two), "n=2 k=0\nX: XX\nZ: ZZ\n");
    let rep = build_repetition(3).unwrap();
    let partner = rep.anticommuting_partner(&"ZZZ".parse().unwrap()).unwrap();
    assert_eq!(partner.to_string(), "XII");
    assert_eq!(rep.distance().unwrap().d_z, 3);
    assert_eq!(rep.distance().unwrap().d_x, 1);
}

#[test]
fn parse_rejects_bad_input() {
    assert!(PauliOperator::parse("XQZ").is_err());
    assert!(PauliOperator::parse("n=3; X:5").is_err());
    assert!(PauliOperator::parse("n=3; X:1,1").is_err());
    assert!(PauliOperator::parse("n=99999999999; X:1").is_err());
    assert!(parse_code("{\"n\": 2}").is_err());
    assert!(parse_code("n=2 k=0\nX: XX\nZ: ZI\n").is_err());
    assert!(parse_code("n=2 k=0\nX: XX\nZ: ZZ\nLZ: ZZ\n").is_err());
}
