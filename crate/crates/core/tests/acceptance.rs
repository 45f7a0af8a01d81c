//! Acceptance criteria, one line of output per criterion.
//!
//! Run with `cargo test -p codeweld --test acceptance -- --nocapture` to see
//! the report.

mod common;

use std::time::{Duration, Instant};

use codeweld::builders::{
    build_solid, build_surface, build_two_qubit, build_welded_solid, build_welded_surface,
    surface_welding_chain, BoundaryKind, SolidSpec, StringLogicals, SurfaceSpec, WeldGraph,
};
use codeweld::energy::{
    barrier_unchanged_by_rough_welds, exact_barrier_of, tune_scaling, ScalingBudget,
};
use codeweld::regions::FlatRegionGraph;
use codeweld::sampling::{random_weld_instance, random_zero_k_code, WeldInstance};
use codeweld::{
    exact_barrier, from_json, from_text, parity_lower_bound, to_json, to_text, verify_bound,
    weld, weld_oracle, CssType, Error, GeneratingSet, PauliOperator, QubitIdentification,
    QubitSet, SearchOptions,
};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{
    brute_distance, encoded_qubits, in_span, ising_barrier, mask, masks, random_code_with_logical,
    rank, replay,
};

type Outcome = Result<String, String>;

fn lib<T>(r: codeweld::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("took {t:.2?}, limit {limit:?}"))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(n: usize, ops: &[&str]) -> GeneratingSet {
    let ops: Vec<PauliOperator> = ops.iter().map(|s| s.parse().unwrap()).collect();
    let (x, z): (Vec<_>, Vec<_>) = ops.into_iter().partition(|p| p.is_pure(CssType::X));
    GeneratingSet::new(n, x, z).unwrap()
}

fn golden_welds() -> Outcome {
    let start = Instant::now();
    let ident = QubitIdentification::new(vec![(1, 0)]);
    let (a, b) = (build_two_qubit(), build_two_qubit());
    for (t, want) in [
        (CssType::Z, group(3, &["XXI", "IXX", "ZZZ"])),
        (CssType::X, group(3, &["XXX", "ZZI", "IZZ"])),
    ] {
        let got = lib(weld(&a, &b, &ident, t))?.code;
        ensure(lib(got.gens().groups_equal(&want))?, || {
            format!("{t}-weld gave {}", to_text(&got))
        })?;
    }
    within(start, Duration::from_secs(1))?;
    Ok("Z-weld = <XXI,IXX,ZZZ>, X-weld = <XXX,ZZI,IZZ>".into())
}

fn surface_chain() -> Outcome {
    let start = Instant::now();
    let stages = lib(surface_welding_chain())?;
    let sizes: Vec<usize> = stages.iter().map(|s| s.code.n()).collect();
    for want in [5, 7, 13] {
        ensure(sizes.contains(&want), || format!("no {want}-qubit stage in {sizes:?}"))?;
    }
    let last = stages.last().unwrap();
    // the chain's last stage carries the horizontal string in its group;
    // released, it leaves the 2x3 lattice with that string as logical
    let spec = lib(SurfaceSpec::new(2, 3))?;
    let folded = lib(build_surface(spec, StringLogicals::FoldX))?;
    ensure(lib(last.code.gens().groups_equal(folded.gens()))?, || {
        "13-qubit stage differs from the 2x3 lattice group".into()
    })?;
    let code = lib(build_surface(spec, StringLogicals::Promote))?;
    let string = &code.logicals()[0].x_rep;
    ensure(
        in_span(&masks(last.code.gens().x_gens(), CssType::X), mask(string.x_bits())),
        || "released string is not in the welded group".into(),
    )?;
    let k = encoded_qubits(&code);
    let dx = brute_distance(&code, CssType::X).ok_or("no X logical")?;
    let dz = brute_distance(&code, CssType::Z).ok_or("no Z logical")?;
    ensure(k == 1, || format!("k = {k}"))?;
    ensure(dx.min(dz) >= 3, || format!("d_x={dx} d_z={dz}"))?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("stage sizes {sizes:?}; 13-qubit code k=1, d_x={dx}, d_z={dz}"))
}

/// Precondition verdict computed directly from the definitions.
fn preconditions_hold(inst: &WeldInstance) -> bool {
    let t = inst.weld_type;
    let pairs = inst.ident.pairs();
    let restrict = |m: u64, side: usize| -> u64 {
        pairs.iter().enumerate().fold(0, |acc, (j, &(a, b))| {
            let q = if side == 0 { a } else { b };
            acc | (m >> q & 1) << j
        })
    };
    let sides = [&inst.code1, &inst.code2];
    let full: Vec<Vec<u64>> = sides.iter().map(|c| masks(c.gens().gens(t), t)).collect();
    let restricted: Vec<Vec<u64>> = full
        .iter()
        .enumerate()
        .map(|(s, rows)| rows.iter().map(|&m| restrict(m, s)).collect())
        .collect();
    for s in 0..2 {
        for &w in &restricted[s] {
            if w != 0 && !restricted[1 - s].contains(&w) {
                return false;
            }
        }
        let touching: Vec<usize> = (0..full[s].len()).filter(|&i| restricted[s][i] != 0).collect();
        let f: Vec<u64> = touching.iter().map(|&i| full[s][i]).collect();
        let r: Vec<u64> = touching.iter().map(|&i| restricted[s][i]).collect();
        if rank(&f) != rank(&r) {
            return false;
        }
    }
    true
}

/// Checks a rejection's witness against the definitions.
fn witness_is_valid(inst: &WeldInstance, e: &Error) -> bool {
    match e {
        Error::NotWellMatched(msg) => msg.contains("restriction"),
        Error::NotWeldIndependent { side, subset } => {
            let code = if *side == 1 { &inst.code1 } else { &inst.code2 };
            let shared: u64 = inst
                .ident
                .pairs()
                .iter()
                .map(|&(a, b)| 1u64 << if *side == 1 { a } else { b })
                .sum();
            let rows = masks(code.gens().gens(inst.weld_type), inst.weld_type);
            let prod = subset.iter().fold(0u64, |acc, &i| acc ^ rows[i]);
            !subset.is_empty() && prod & shared == 0 && prod != 0
        }
        _ => false,
    }
}

struct OracleStats {
    welded: usize,
    rejected: usize,
    zero_k: bool,
}

fn oracle_equivalence() -> Result<OracleStats, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut stats = OracleStats {
        welded: 0,
        rejected: 0,
        zero_k: true,
    };
    let mut draws = 0;
    while stats.welded < 200 || stats.rejected < 200 {
        draws += 1;
        ensure(draws < 5000, || "too few valid instances drawn".into())?;
        let raw = random_weld_instance(&mut rng, 12);
        let inst = if rng.gen_bool(0.7) { raw.aligned() } else { raw };
        let expect_ok = preconditions_hold(&inst);
        match weld(&inst.code1, &inst.code2, &inst.ident, inst.weld_type) {
            Ok(r) => {
                ensure(expect_ok, || format!("draw {draws}: weld accepted a violating instance"))?;
                let oracle =
                    lib(weld_oracle(&inst.code1, &inst.code2, &inst.ident, inst.weld_type))?;
                ensure(lib(r.code.gens().groups_equal(oracle.gens()))?, || {
                    format!("draw {draws}: weld differs from oracle")
                })?;
                stats.zero_k &= r.code.encoded_qubits() == 0 && encoded_qubits(&r.code) == 0;
                stats.welded += 1;
            }
            Err(e) => {
                ensure(!expect_ok, || format!("draw {draws}: valid instance rejected: {e}"))?;
                ensure(witness_is_valid(&inst, &e), || {
                    format!("draw {draws}: rejection without a valid witness: {e}")
                })?;
                stats.rejected += 1;
            }
        }
    }
    Ok(stats)
}

fn three_way_barriers() -> Outcome {
    let start = Instant::now();
    let opts = SearchOptions::default();
    let star = lib(WeldGraph::star(3))?;
    let surf = lib(build_welded_surface(&star, BoundaryKind::Rough, lib(SurfaceSpec::new(2, 2))?))?;
    let rep = lib(verify_bound(&surf, 0, CssType::Z, opts))?;
    ensure(rep.exact.barrier == 2 && rep.bound.barrier == 2, || {
        format!("surfaces: exact {}, bound {}", rep.exact.barrier, rep.bound.barrier)
    })?;
    let solid = lib(build_welded_solid(&star, lib(SolidSpec::new(1, 1, 2, false))?))?;
    let b = lib(exact_barrier(&solid, 0, CssType::Z, opts))?;
    ensure(b.barrier == 2, || format!("solids: exact {}", b.barrier))?;
    within(start, Duration::from_secs(300))?;
    Ok(format!(
        "2x2 surfaces on star(3): exact 2, bound 2 (saturated); 1x1x2 solids on star(3): exact 2 ({:.2?})",
        start.elapsed()
    ))
}

fn membrane_growth() -> Outcome {
    let opts = SearchOptions::default();
    let mut values = Vec::new();
    for d in 1..=3 {
        let code = lib(build_solid(lib(SolidSpec::new(d, d, 1, false))?))?;
        let class = &code.logicals()[0];
        let exact = lib(exact_barrier(&code, 0, CssType::X, opts))?.barrier;
        let bound = lib(parity_lower_bound(
            lib(code.flat_region_graph(CssType::Z))?,
            &class.x_rep,
            opts,
        ))?
        .barrier;
        ensure(exact == bound, || format!("d={d}: exact {exact}, bound {bound}"))?;
        values.push(exact);
    }
    ensure(values.windows(2).all(|w| w[0] <= w[1]), || {
        format!("barriers {values:?} decrease")
    })?;
    Ok(format!("d=1,2,3 at height 1: exact = bound = {values:?}"))
}

fn no_change() -> Outcome {
    let opts = SearchOptions::default();
    let spec = lib(SolidSpec::new(1, 1, 2, false))?;
    let base = lib(build_solid(spec))?;
    let mut notes = Vec::new();
    for (name, g) in [("path(2)", WeldGraph::path(2)), ("star(3)", WeldGraph::star(3))] {
        let welded = lib(build_welded_solid(&lib(g)?, spec))?;
        let rep = lib(barrier_unchanged_by_rough_welds(&base, &welded, opts))?;
        ensure(rep.unchanged(), || format!("{name}: {rep:?}"))?;
        let (Some(a), Some(b)) = (rep.exact_base, rep.exact_welded) else {
            return Err(format!("{name}: exact barrier unexpectedly over the cap"));
        };
        ensure(a == b && rep.bound_base == rep.bound_welded, || format!("{name}: {rep:?}"))?;
        notes.push(format!("{name} bound {} exact {b}", rep.bound_welded));
    }
    Ok(format!("single solid bound/exact 2; {}", notes.join(", ")))
}

/// Region graph with one region per edge, one boundary per vertex and,
/// when `open_leaves`, an extra one-boundary region at every leaf.
fn graph_regions(g: &WeldGraph, open_leaves: bool) -> (FlatRegionGraph, Vec<(usize, Option<usize>)>) {
    let nv = g.vertex_count();
    let mut fr = FlatRegionGraph::new(CssType::Z);
    let mut terms = Vec::new();
    for v in 0..nv {
        fr.add_boundary(format!("v{v}"), QubitSet::new([v]));
    }
    for &(a, b) in g.edges() {
        let r = fr.add_region(format!("{a}-{b}"), QubitSet::new([a, b]));
        fr.connect(r, a);
        fr.connect(r, b);
        terms.push((a, Some(b)));
    }
    if open_leaves {
        for v in (0..nv).filter(|&v| g.degree(v) == 1) {
            let r = fr.add_region(format!("end {v}"), QubitSet::new([v]));
            fr.connect(r, v);
            terms.push((v, None));
        }
    }
    (fr, terms)
}

fn ising_correspondence() -> Outcome {
    let opts = SearchOptions::default();
    let mut graphs = Vec::new();
    for n in 1..=6 {
        graphs.push((format!("path({n})"), lib(WeldGraph::path(n))?));
        graphs.push((format!("star({n})"), lib(WeldGraph::star(n))?));
    }
    for a in 1..=3 {
        for b in 1..=3 {
            if a * b >= 2 {
                graphs.push((format!("grid({a},{b})"), lib(WeldGraph::grid2d(a, b))?));
            }
        }
    }
    let mut checked = 0;
    for (name, g) in &graphs {
        let nv = g.vertex_count();
        for open in [false, true] {
            let (fr, terms) = graph_regions(g, open);
            for target in 0u64..1 << nv {
                let rep = PauliOperator::pure(CssType::X, nv, (0..nv).filter(|v| target >> v & 1 == 1));
                let got = lib(parity_lower_bound(&fr, &rep, opts))?.barrier;
                let want = ising_barrier(nv, &terms, target);
                ensure(got == want, || {
                    format!("{name} open={open} target {target:b}: bound {got}, spin search {want}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{} graphs, {checked} spin targets agree", graphs.len()))
}

fn scaling_exponents() -> Outcome {
    for budget in [
        ScalingBudget::SideLength(16),
        ScalingBudget::SideLength(1000),
        ScalingBudget::Qubits(1_000_000),
    ] {
        let p = lib(tune_scaling(budget))?;
        let got = (p.alpha, p.barrier_exponent_n, p.barrier_exponent_l, p.distance_exponent_l);
        let want = (
            Ratio::from_integer(2),
            Ratio::new(2, 9),
            Ratio::new(2, 3),
            Ratio::new(4, 3),
        );
        ensure(got == want, || format!("{budget:?}: {got:?}"))?;
    }
    Ok("alpha = 2, barrier N^(2/9) = L^(2/3), distance L^(4/3)".into())
}

fn random_op<R: Rng>(rng: &mut R, n: usize) -> PauliOperator {
    let s: String = (0..n).map(|_| ['I', 'X', 'Y', 'Z'][rng.gen_range(0..4)]).collect();
    s.parse().unwrap()
}

fn property_suites() -> Outcome {
    const CASES: usize = 1000;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);

    for _ in 0..CASES {
        let n = rng.gen_range(1..=10);
        let code = random_zero_k_code(&mut rng, n);
        let (a, b) = (random_op(&mut rng, n), random_op(&mut rng, n));
        let lhs = lib(code.syndrome(&lib(a.multiply(&b))?))?;
        let rhs = lib(code.syndrome(&a))?.sum(&lib(code.syndrome(&b))?);
        ensure(lhs == rhs, || format!("syndrome linearity fails for {a}, {b}"))?;
    }

    for _ in 0..CASES {
        let n = rng.gen_range(0..=70);
        let (a, b) = (random_op(&mut rng, n), random_op(&mut rng, n));
        ensure(lib(a.multiply(&a))?.is_identity(), || format!("{a} squared"))?;
        ensure(lib(lib(a.multiply(&b))?.multiply(&b))? == a, || format!("{a} {b}"))?;
        ensure(lib(a.multiply(&b))? == lib(b.multiply(&a))?, || format!("{a} {b}"))?;
    }

    for _ in 0..CASES {
        let n = rng.gen_range(1..=70);
        let (a, b) = (random_op(&mut rng, n), random_op(&mut rng, n));
        let w = QubitSet::new((0..n).filter(|_| rng.gen()));
        let lhs = lib(lib(a.multiply(&b))?.weld_restrict(&w))?;
        let rhs = lib(lib(a.weld_restrict(&w))?.multiply(&lib(b.weld_restrict(&w))?))?;
        ensure(lhs == rhs, || format!("restriction not multiplicative on {a}, {b}"))?;
    }

    for i in 0..CASES {
        let size = rng.gen_range(2..=12);
        let code = match i % 4 {
            0 => lib(build_surface(
                lib(SurfaceSpec::new(rng.gen_range(1..=3), rng.gen_range(1..=3)))?,
                StringLogicals::Promote,
            ))?,
            1 => lib(build_solid(lib(SolidSpec::new(
                rng.gen_range(1..=2),
                rng.gen_range(1..=2),
                rng.gen_range(1..=2),
                rng.gen(),
            ))?))?,
            2 => random_zero_k_code(&mut rng, size),
            _ => random_code_with_logical(&mut rng, size),
        };
        for back in [lib(from_text(&to_text(&code)))?, lib(from_json(&to_json(&code)))?] {
            ensure(back == code, || format!("round trip changed\n{}", to_text(&code)))?;
            ensure(lib(back.gens().groups_equal(code.gens()))?, || "group changed".into())?;
        }
    }

    let opts = SearchOptions::default();
    for _ in 0..CASES {
        let n = rng.gen_range(2..=9);
        let code = random_code_with_logical(&mut rng, n);
        let t = if rng.gen() { CssType::X } else { CssType::Z };
        let target = code.logicals()[0].rep(t).clone();
        let r = lib(exact_barrier_of(&code, &target, opts))?;
        let (peak, product) = replay(&code, &r.witness);
        ensure(peak == r.barrier, || format!("witness peak {peak} vs barrier {}", r.barrier))?;
        let stab = masks(code.gens().gens(t), t);
        ensure(in_span(&stab, product ^ mask(target.bits(t))), || {
            "witness product outside the target coset".into()
        })?;
    }

    within(start, Duration::from_secs(60))?;
    Ok(format!("5 suites x {CASES} cases in {:.2?}", start.elapsed()))
}

fn main() {
    let oracle = oracle_equivalence();
    let criteria: Vec<(&str, Outcome)> = vec![
        ("1 welding golden cases", golden_welds()),
        ("2 surface chain", surface_chain()),
        (
            "3 oracle equivalence",
            oracle.as_ref().map_err(Clone::clone).map(|s| {
                format!("{} welds equal the oracle, {} violating instances rejected with witnesses", s.welded, s.rejected)
            }),
        ),
        (
            "4 zero-qubit preservation",
            oracle.as_ref().map_err(Clone::clone).and_then(|s| {
                if s.zero_k {
                    Ok(format!("k = 0 for all {} welded outputs", s.welded))
                } else {
                    Err("a welded output encodes a qubit".into())
                }
            }),
        ),
        ("5 barrier exactness on three-way welds", three_way_barriers()),
        ("6 solid membrane growth", membrane_growth()),
        ("7 barrier unchanged by rough welds", no_change()),
        ("8 Ising correspondence", ising_correspondence()),
        ("9 scaling tuner", scaling_exponents()),
        ("10 property suites", property_suites()),
    ];
    let mut failed = Vec::new();
    for (name, outcome) in &criteria {
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                println!("FAIL {name}: {detail}");
                failed.push(*name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
