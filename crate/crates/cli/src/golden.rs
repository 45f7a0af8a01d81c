//! Golden suite behind `codeweld verify`.

use std::path::Path;

use codeweld::builders::{
    build_solid, build_surface, build_two_qubit, build_welded_solid, build_welded_surface,
    surface_welding_chain, BoundaryKind, SolidSpec, StringLogicals, SurfaceSpec, WeldGraph,
};
use codeweld::energy::{tune_scaling, ScalingBudget};
use codeweld::sampling::random_weld_instance;
use codeweld::{
    exact_barrier, parse_code, verify_bound, weld, weld_oracle, CssCode, CssType, Error,
    QubitIdentification, SearchOptions,
};
use num_rational::Ratio;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Number of random instances in the seeded weld check.
const RANDOM_WELDS: usize = 100;

#[derive(Debug, Serialize)]
pub struct CaseResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Golden files, embedded at build time and overridable from a directory.
pub struct GoldenFiles {
    pub two_qubit: String,
    pub repetition_weld_z: String,
    pub repetition_weld_x: String,
    pub pair_identification: String,
}

impl GoldenFiles {
    pub fn embedded() -> Self {
        Self {
            two_qubit: include_str!("../golden/two_qubit.txt").into(),
            repetition_weld_z: include_str!("../golden/repetition_weld_z.txt").into(),
            repetition_weld_x: include_str!("../golden/repetition_weld_x.txt").into(),
            pair_identification: include_str!("../golden/pair_identification.txt").into(),
        }
    }

    pub fn from_dir(dir: &Path) -> std::io::Result<Self> {
        let read = |name: &str| std::fs::read_to_string(dir.join(name));
        Ok(Self {
            two_qubit: read("two_qubit.txt")?,
            repetition_weld_z: read("repetition_weld_z.txt")?,
            repetition_weld_x: read("repetition_weld_x.txt")?,
            pair_identification: read("pair_identification.txt")?,
        })
    }
}

type Check = Result<String, String>;
type Case<'a> = Box<dyn Fn() -> Check + 'a>;

fn lib<T>(r: codeweld::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn same_group(got: &CssCode, golden: &str) -> Check {
    let want = lib(parse_code(golden))?;
    if lib(got.gens().groups_equal(want.gens()))? {
        Ok(format!("{} generators, group matches", got.gens().len()))
    } else {
        Err(format!("group differs from golden file: got\n{}", codeweld::to_text(got)))
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn two_qubit(g: &GoldenFiles) -> Check {
    same_group(&build_two_qubit(), &g.two_qubit)
}

fn repetition_weld(g: &GoldenFiles, t: CssType) -> Check {
    let ident = lib(QubitIdentification::parse(&g.pair_identification))?;
    let (a, b) = (build_two_qubit(), build_two_qubit());
    let welded = lib(weld(&a, &b, &ident, t))?;
    let golden = match t {
        CssType::Z => &g.repetition_weld_z,
        CssType::X => &g.repetition_weld_x,
    };
    same_group(&welded.code, golden)
}

fn chain() -> Check {
    let stages = lib(surface_welding_chain())?;
    let sizes: Vec<usize> = stages.iter().map(|s| s.code.n()).collect();
    for want in [5, 7, 13] {
        if !sizes.contains(&want) {
            return Err(format!("no {want}-qubit stage in {sizes:?}"));
        }
    }
    let last = stages.last().expect("chain is nonempty");
    let spec = lib(SurfaceSpec::new(2, 3))?;
    let lattice = lib(build_surface(spec, StringLogicals::FoldX))?;
    if !lib(last.code.gens().groups_equal(lattice.gens()))? {
        return Err("13-qubit stage is not the 2x3 lattice group".into());
    }
    let code = lib(build_surface(spec, StringLogicals::Promote))?;
    let d = lib(code.distance())?;
    expect_eq("k", code.encoded_qubits(), 1)?;
    if d.min() < 3 {
        return Err(format!("distance {d:?} below 3"));
    }
    Ok(format!("sizes {sizes:?}, 13-qubit code k=1 d_x={} d_z={}", d.d_x, d.d_z))
}

fn three_surfaces() -> Check {
    let g = lib(WeldGraph::star(3))?;
    let code = lib(build_welded_surface(&g, BoundaryKind::Rough, lib(SurfaceSpec::new(2, 2))?))?;
    let rep = lib(verify_bound(&code, 0, CssType::Z, SearchOptions::default()))?;
    expect_eq("exact barrier", rep.exact.barrier, 2)?;
    expect_eq("parity bound", rep.bound.barrier, 2)?;
    Ok(format!("n={} exact 2, bound 2", code.n()))
}

fn three_solids() -> Check {
    let g = lib(WeldGraph::star(3))?;
    let code = lib(build_welded_solid(&g, lib(SolidSpec::new(1, 1, 2, false))?))?;
    let b = lib(exact_barrier(&code, 0, CssType::Z, SearchOptions::default()))?;
    expect_eq("exact barrier", b.barrier, 2)?;
    Ok(format!("n={} exact 2", code.n()))
}

fn single_solid() -> Check {
    let code = lib(build_solid(lib(SolidSpec::new(1, 1, 2, false))?))?;
    expect_eq("k", code.encoded_qubits(), 1)?;
    Ok(format!("n={} k=1", code.n()))
}

fn scaling() -> Check {
    let plan = lib(tune_scaling(ScalingBudget::SideLength(64)))?;
    expect_eq("alpha", plan.alpha, Ratio::from_integer(2))?;
    expect_eq("barrier exponent in N", plan.barrier_exponent_n, Ratio::new(2, 9))?;
    expect_eq("barrier exponent in L", plan.barrier_exponent_l, Ratio::new(2, 3))?;
    expect_eq("distance exponent in L", plan.distance_exponent_l, Ratio::new(4, 3))?;
    Ok("alpha=2, N^(2/9), L^(2/3), distance L^(4/3)".into())
}

fn random_welds(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut welded, mut rejected) = (0, 0);
    for i in 0..RANDOM_WELDS {
        let inst = random_weld_instance(&mut rng, 8).aligned();
        let oracle = lib(weld_oracle(&inst.code1, &inst.code2, &inst.ident, inst.weld_type))?;
        match weld(&inst.code1, &inst.code2, &inst.ident, inst.weld_type) {
            Ok(r) => {
                if !lib(r.code.gens().groups_equal(oracle.gens()))? {
                    return Err(format!("instance {i}: weld differs from oracle"));
                }
                welded += 1;
            }
            Err(Error::NotWellMatched(_)) | Err(Error::NotWeldIndependent { .. }) => rejected += 1,
            Err(e) => return Err(format!("instance {i}: {e}")),
        }
    }
    Ok(format!("seed {seed}: {welded} welds match the oracle, {rejected} rejected"))
}

pub fn run_suite(files: &GoldenFiles, seed: u64) -> Vec<CaseResult> {
    let cases: Vec<(&'static str, Case<'_>)> = vec![
        ("two_qubit", Box::new(|| two_qubit(files))),
        ("repetition_weld_z", Box::new(|| repetition_weld(files, CssType::Z))),
        ("repetition_weld_x", Box::new(|| repetition_weld(files, CssType::X))),
        ("surface_chain", Box::new(chain)),
        ("single_solid", Box::new(single_solid)),
        ("three_surfaces_barrier", Box::new(three_surfaces)),
        ("three_solids_barrier", Box::new(three_solids)),
        ("scaling_exponents", Box::new(scaling)),
        ("random_welds", Box::new(move || random_welds(seed))),
    ];
    cases
        .into_iter()
        .map(|(name, f)| {
            let (passed, detail) = match f() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CaseResult { name, passed, detail }
        })
        .collect()
}
