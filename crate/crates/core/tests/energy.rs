mod common;

use codeweld::builders::{
    build_solid, build_surface, build_welded_solid, build_welded_surface, BoundaryKind,
    SolidSpec, StringLogicals, SurfaceSpec, WeldGraph,
};
use codeweld::css::LogicalClass;
use codeweld::energy::{exact_barrier_of, walk_barrier, welded_solid_qubits};
use codeweld::regions::FlatRegionGraph;
use codeweld::{
    exact_barrier, parity_lower_bound, verify_bound, CssCode, CssType, Error, PauliOperator,
    QubitSet, SearchOptions,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{ising_barrier, random_code_with_logical};

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn suite() -> Vec<(String, CssCode)> {
    let mut out = Vec::new();
    for w in 1..=3 {
        for h in 1..=3 {
            let spec = SurfaceSpec::new(w, h).unwrap();
            out.push((format!("surface {w}x{h}"), build_surface(spec, StringLogicals::Promote).unwrap()));
        }
    }
    for (dx, dy, dz) in [(1, 1, 1), (1, 1, 2), (2, 1, 2), (2, 2, 1), (2, 2, 2), (3, 3, 1)] {
        let spec = SolidSpec::new(dx, dy, dz, false).unwrap();
        out.push((format!("solid {dx}x{dy}x{dz}"), build_solid(spec).unwrap()));
    }
    let graphs = [
        ("path(2)", WeldGraph::path(2).unwrap()),
        ("path(3)", WeldGraph::path(3).unwrap()),
        ("star(3)", WeldGraph::star(3).unwrap()),
        ("grid(2,2)", WeldGraph::grid2d(2, 2).unwrap()),
    ];
    for (name, g) in &graphs {
        for kind in [BoundaryKind::Rough, BoundaryKind::Smooth] {
            let spec = SurfaceSpec::new(2, 2).unwrap();
            out.push((
                format!("{kind:?} surfaces on {name}"),
                build_welded_surface(g, kind, spec).unwrap(),
            ));
        }
        let spec = SolidSpec::new(1, 1, 2, false).unwrap();
        out.push((format!("solids on {name}"), build_welded_solid(g, spec).unwrap()));
    }
    out
}

#[test]
fn bound_never_exceeds_exact() {
    let mut checked = 0;
    for (name, code) in suite() {
        for kind in [CssType::X, CssType::Z] {
            match verify_bound(&code, 0, kind, opts()) {
                Ok(rep) => {
                    assert!(rep.bound.barrier <= rep.exact.barrier, "{name} {kind}");
                    checked += 1;
                }
                Err(e) if e.is_feasibility() => {}
                Err(Error::MissingRegionMetadata(_)) => {}
                Err(e) => panic!("{name} {kind}: {e}"),
            }
        }
    }
    assert!(checked >= 30, "only {checked} comparisons fit");
}

#[test]
fn witnesses_replay_to_the_barrier() {
    for (name, code) in suite() {
        for kind in [CssType::X, CssType::Z] {
            let Ok(r) = exact_barrier(&code, 0, kind, opts()) else { continue };
            let (peak, product) = walk_barrier(&code, &r.witness).unwrap();
            assert_eq!(peak, r.barrier, "{name} {kind}");
            let target = code.logicals()[0].rep(kind);
            let diff = product.multiply(target).unwrap();
            assert!(code.gens().contains(&diff), "{name} {kind}: witness leaves the coset");
        }
    }
}

fn relabeled(code: &CssCode, perm: &[usize]) -> CssCode {
    let n = code.n();
    let logicals = code
        .logicals()
        .iter()
        .map(|l| LogicalClass {
            z_rep: l.z_rep.embed(perm, n),
            x_rep: l.x_rep.embed(perm, n),
        })
        .collect();
    CssCode::new(code.gens().embed(perm, n), logicals).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn exact_barrier_is_relabeling_and_coset_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=9);
        let code = random_code_with_logical(&mut rng, n);
        let kind = if rng.gen() { CssType::X } else { CssType::Z };
        let base = exact_barrier(&code, 0, kind, opts()).unwrap();

        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let moved = exact_barrier(&relabeled(&code, &perm), 0, kind, opts()).unwrap();
        prop_assert_eq!(moved.barrier, base.barrier);

        let mut member = code.logicals()[0].rep(kind).clone();
        for g in code.gens().gens(kind) {
            if rng.gen() {
                member = member.multiply(g).unwrap();
            }
        }
        let again = exact_barrier_of(&code, &member, opts()).unwrap();
        prop_assert_eq!(again.barrier, base.barrier);

        let (peak, product) = walk_barrier(&code, &base.witness).unwrap();
        prop_assert_eq!(peak, base.barrier);
        prop_assert!(code.gens().contains(&product.multiply(&member).unwrap()));
    }

    #[test]
    fn parity_bound_is_a_spin_model_barrier(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nv = rng.gen_range(1..=7);
        let mut fr = FlatRegionGraph::new(CssType::X);
        for v in 0..nv {
            fr.add_boundary(format!("{v}"), QubitSet::new([v]));
        }
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(0..=10) {
            let a = rng.gen_range(0..nv);
            let b = rng.gen_range(0..nv);
            let r = fr.add_region("r", QubitSet::new([a, b]));
            fr.connect(r, a);
            if a != b {
                fr.connect(r, b);
                terms.push((a, Some(b)));
            } else {
                terms.push((a, None));
            }
        }
        // every boundary must touch some region
        for v in 0..nv {
            if !terms.iter().any(|&(a, b)| a == v || b == Some(v)) {
                let r = fr.add_region("r", QubitSet::new([v]));
                fr.connect(r, v);
                terms.push((v, None));
            }
        }
        let target: u64 = rng.gen_range(0..1u64 << nv);
        let rep = PauliOperator::pure(CssType::Z, nv, (0..nv).filter(|v| target >> v & 1 == 1));
        let got = parity_lower_bound(&fr, &rep, opts()).unwrap().barrier;
        prop_assert_eq!(got, ising_barrier(nv, &terms, target));
    }
}

#[test]
fn solid_membrane_barrier_grows_with_width() {
    let mut last = 0;
    for d in 1..=3 {
        let code = build_solid(SolidSpec::new(d, d, 1, false).unwrap()).unwrap();
        let b = exact_barrier(&code, 0, CssType::X, opts()).unwrap().barrier;
        assert!(b >= last, "d={d}: {b} < {last}");
        last = b;
    }
}

#[test]
fn welded_solid_string_barrier_grows_with_graph() {
    let spec = SolidSpec::new(1, 1, 2, false).unwrap();
    let mut last = 0;
    for g in [
        WeldGraph::path(1).unwrap(),
        WeldGraph::path(2).unwrap(),
        WeldGraph::path(3).unwrap(),
        WeldGraph::path(4).unwrap(),
    ] {
        let code = build_welded_solid(&g, spec).unwrap();
        let b = exact_barrier(&code, 0, CssType::Z, opts()).unwrap().barrier;
        assert!(b >= last);
        last = b;
    }
    let mut last = 0;
    for (a, b) in [(1, 2), (2, 2), (2, 3)] {
        let code = build_welded_solid(&WeldGraph::grid2d(a, b).unwrap(), spec).unwrap();
        let fr = code.flat_region_graph(CssType::X).unwrap();
        let bound = parity_lower_bound(fr, &code.logicals()[0].z_rep, opts()).unwrap().barrier;
        assert!(bound >= last);
        last = bound;
    }
}

#[test]
fn oversized_searches_are_refused() {
    let code = build_surface(SurfaceSpec::new(3, 3).unwrap(), StringLogicals::Promote).unwrap();
    let e = exact_barrier(&code, 0, CssType::X, SearchOptions { max_states: 8 }).unwrap_err();
    assert!(e.is_feasibility());
    let big = build_solid(SolidSpec::new(4, 4, 4, false).unwrap()).unwrap();
    let e = exact_barrier(&big, 0, CssType::X, opts()).unwrap_err();
    assert!(matches!(e, Error::TooLarge { .. }));
}

#[test]
fn barrier_json_shape() {
    let code = build_surface(SurfaceSpec::new(1, 2).unwrap(), StringLogicals::Promote).unwrap();
    let r = exact_barrier(&code, 0, CssType::Z, opts()).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["method"], "exact");
    assert_eq!(v["barrier"], r.barrier);
    assert_eq!(v["witness"][0][1], "Z");
    assert!(v["states_explored"].as_u64().unwrap() > 0);
}

#[test]
fn qubit_formula_matches_construction() {
    for d in 1..=2 {
        for r in 1..=2 {
            let spec = SolidSpec::new(d, d, d.max(2), false).unwrap();
            let n = if r == 1 {
                build_solid(spec).unwrap().n()
            } else {
                build_welded_solid(&WeldGraph::cubic(r, r, r).unwrap(), spec).unwrap().n()
            };
            assert_eq!(welded_solid_qubits(d as u64, r as u64).unwrap(), n as u64);
        }
    }
}
