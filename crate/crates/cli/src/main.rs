use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use codeweld::builders::{
    build_repetition, build_solid, build_solid_by_welding, build_surface,
    build_surface_by_welding, build_two_qubit, build_welded_solid,
    build_welded_solid_by_welding, build_welded_surface, build_welded_surface_by_welding,
    BoundaryKind, SolidSpec, StringLogicals, SurfaceSpec, WeldGraph,
};
use codeweld::energy::{scaling_graph, BoundReport, DEFAULT_MAX_STATES};
use codeweld::{
    exact_barrier, parity_lower_bound, parse_code, to_json, to_text, verify_bound, weld,
    weld_oracle, BarrierResult, CssCode, CssType, Error, QubitIdentification, SearchOptions,
};
use serde::Serialize;
use serde_json::json;

mod golden;

#[derive(Parser)]
#[command(name = "codeweld", version, about = "Weld CSS codes and compute their energy barriers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON (results, and errors on stdout).
    #[arg(long, global = true)]
    json: bool,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cap on states enumerated by exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    max_states: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from a family.
    Build(BuildArgs),
    /// Weld two zero-qubit codes.
    Weld(WeldArgs),
    /// Summarise a code file.
    Info { code: PathBuf },
    /// Energy barrier of a logical class.
    Barrier(BarrierArgs),
    /// Parity bound next to the exact barrier.
    Bound(LogicalArgs),
    /// Run the golden suite.
    Verify {
        /// Directory with replacement golden files.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Seed for the randomized weld check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Barriers of welded solids over ranges of d and R, as CSV.
    Sweep(SweepArgs),
    /// Re-render a code file (text by default, JSON with --json).
    Export { code: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    TwoQubit,
    Repetition,
    Surface,
    Solid,
    WeldedSurface,
    WeldedSolid,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strings {
    Promote,
    Omit,
    FoldX,
    FoldZ,
}

#[derive(Clone, Copy, ValueEnum)]
enum Boundary {
    Rough,
    Smooth,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeArg {
    X,
    Z,
}

impl From<TypeArg> for CssType {
    fn from(t: TypeArg) -> CssType {
        match t {
            TypeArg::X => CssType::X,
            TypeArg::Z => CssType::Z,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Bound,
    Both,
}

#[derive(Args)]
struct BuildArgs {
    family: Family,
    /// Repetition code length.
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    width: usize,
    #[arg(long, default_value_t = 2)]
    height: usize,
    #[arg(long, value_enum, default_value_t = Strings::Promote)]
    strings: Strings,
    #[arg(long, value_enum, default_value_t = Boundary::Rough)]
    boundary: Boundary,
    #[arg(long, default_value_t = 1)]
    dx: usize,
    #[arg(long, default_value_t = 1)]
    dy: usize,
    #[arg(long, default_value_t = 2)]
    dz: usize,
    #[arg(long)]
    horizontal_plaquettes: bool,
    /// Weld graph: a file, or path:n, star:n, grid:a,b, cubic:a,b,c.
    #[arg(long)]
    graph: Option<String>,
    /// Assemble by successive welds (strings end up folded into the group).
    #[arg(long)]
    by_welding: bool,
    /// With --by-welding, use the oracle weld at every step.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct WeldArgs {
    code1: PathBuf,
    code2: PathBuf,
    identification: PathBuf,
    #[arg(long = "type", value_enum)]
    weld_type: TypeArg,
    /// Use the oracle construction instead of generator pairing.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct LogicalArgs {
    code: PathBuf,
    #[arg(long, value_enum)]
    logical: TypeArg,
    /// Which promoted logical class.
    #[arg(long, default_value_t = 0)]
    index: usize,
}

#[derive(Args)]
struct BarrierArgs {
    #[command(flatten)]
    logical: LogicalArgs,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    method: Method,
}

#[derive(Args)]
struct SweepArgs {
    /// Solid widths, as "a..b" (inclusive) or a single value.
    #[arg(long, default_value = "1..2")]
    d: String,
    /// Cubic weld-graph sides, as "a..b" (inclusive) or a single value.
    #[arg(long = "r", default_value = "1")]
    r: String,
}

/// Failure carrying its exit status.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let feasibility = e.is_feasibility();
        Failure {
            code: if feasibility { 2 } else { 1 },
            kind: if feasibility { "feasibility" } else { "validation" },
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        kind: "validation",
        message: message.into(),
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn read_code(path: &Path) -> Result<CssCode, Failure> {
    parse_code(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn parse_dims(s: &str, count: usize) -> Result<Vec<usize>, Failure> {
    let dims: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| invalid(format!("bad graph size {s:?}: {e}")))?;
    if dims.len() != count {
        return Err(invalid(format!("expected {count} sizes in {s:?}")));
    }
    Ok(dims)
}

fn parse_graph(arg: &str) -> Result<WeldGraph, Failure> {
    let graph = match arg.split_once(':') {
        Some(("path", n)) => WeldGraph::path(parse_dims(n, 1)?[0])?,
        Some(("star", n)) => WeldGraph::star(parse_dims(n, 1)?[0])?,
        Some(("grid", s)) => {
            let d = parse_dims(s, 2)?;
            WeldGraph::grid2d(d[0], d[1])?
        }
        Some(("cubic", s)) => {
            let d = parse_dims(s, 3)?;
            WeldGraph::cubic(d[0], d[1], d[2])?
        }
        _ => WeldGraph::parse(&read(Path::new(arg))?)?,
    };
    Ok(graph)
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<u64>, Failure> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|e| invalid(format!("bad range {s:?}: {e}")))
    };
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if a == 0 || a > b {
        return Err(invalid(format!("range {s:?} must be nonempty and start at 1 or more")));
    }
    Ok(a..=b)
}

fn render_code(code: &CssCode, json: bool) -> String {
    if json {
        to_json(code) + "\n"
    } else {
        to_text(code)
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn build(args: &BuildArgs, json: bool) -> Outcome {
    let strings = match args.strings {
        Strings::Promote => StringLogicals::Promote,
        Strings::Omit => StringLogicals::Omit,
        Strings::FoldX => StringLogicals::FoldX,
        Strings::FoldZ => StringLogicals::FoldZ,
    };
    let kind = match args.boundary {
        Boundary::Rough => BoundaryKind::Rough,
        Boundary::Smooth => BoundaryKind::Smooth,
    };
    let graph = || -> Result<WeldGraph, Failure> {
        parse_graph(
            args.graph
                .as_deref()
                .ok_or_else(|| invalid("this family needs --graph"))?,
        )
    };
    let surface = || SurfaceSpec::new(args.width, args.height);
    let solid = || SolidSpec::new(args.dx, args.dy, args.dz, args.horizontal_plaquettes);
    let code = match (args.family, args.by_welding) {
        (Family::TwoQubit, _) => build_two_qubit(),
        (Family::Repetition, _) => build_repetition(args.n)?,
        (Family::Surface, false) => build_surface(surface()?, strings)?,
        (Family::Surface, true) => build_surface_by_welding(surface()?)?,
        (Family::Solid, false) => build_solid(solid()?)?,
        (Family::Solid, true) => build_solid_by_welding(solid()?, args.oracle)?,
        (Family::WeldedSurface, false) => build_welded_surface(&graph()?, kind, surface()?)?,
        (Family::WeldedSurface, true) => {
            build_welded_surface_by_welding(&graph()?, kind, surface()?, args.oracle)?
        }
        (Family::WeldedSolid, false) => build_welded_solid(&graph()?, solid()?)?,
        (Family::WeldedSolid, true) => {
            build_welded_solid_by_welding(&graph()?, solid()?, args.oracle)?
        }
    };
    Ok(render_code(&code, json))
}

fn weld_cmd(args: &WeldArgs, json: bool) -> Outcome {
    let c1 = read_code(&args.code1)?;
    let c2 = read_code(&args.code2)?;
    let ident = QubitIdentification::parse(&read(&args.identification)?)?;
    let t = args.weld_type.into();
    let code = if args.oracle {
        weld_oracle(&c1, &c2, &ident, t)?
    } else {
        weld(&c1, &c2, &ident, t)?.code
    };
    Ok(render_code(&code, json))
}

#[derive(Serialize)]
struct Info {
    n: usize,
    k: usize,
    x_generators: usize,
    z_generators: usize,
    promoted_logicals: usize,
    region_graphs: Vec<String>,
    d_x: Option<usize>,
    d_z: Option<usize>,
}

fn info(path: &Path, json: bool) -> Outcome {
    let code = read_code(path)?;
    let k = code.encoded_qubits();
    let dist = |t| {
        if k == 0 {
            Ok(None)
        } else {
            match code.distance_of_type(t) {
                Ok(d) => Ok(Some(d)),
                Err(e) if e.is_feasibility() => Ok(None),
                Err(e) => Err(e),
            }
        }
    };
    let info = Info {
        n: code.n(),
        k,
        x_generators: code.gens().x_gens().len(),
        z_generators: code.gens().z_gens().len(),
        promoted_logicals: code.logicals().len(),
        region_graphs: code
            .regions()
            .iter()
            .map(|g| {
                format!(
                    "{}: {} regions, {} boundaries",
                    g.particle_type,
                    g.regions.len(),
                    g.boundaries.len()
                )
            })
            .collect(),
        d_x: dist(CssType::X)?,
        d_z: dist(CssType::Z)?,
    };
    if json {
        return Ok(pretty(&info));
    }
    let show = |d: Option<usize>| d.map_or("-".to_string(), |d| d.to_string());
    let mut s = format!(
        "n={} k={}\nX generators: {}\nZ generators: {}\npromoted logicals: {}\nd_x={} d_z={}\n",
        info.n,
        info.k,
        info.x_generators,
        info.z_generators,
        info.promoted_logicals,
        show(info.d_x),
        show(info.d_z)
    );
    for g in &info.region_graphs {
        s.push_str(&format!("flat regions {g}\n"));
    }
    Ok(s)
}

fn describe(r: &BarrierResult) -> String {
    let method = match r.method {
        codeweld::BarrierMethod::Exact => "exact",
        codeweld::BarrierMethod::ParityBound => "bound",
    };
    format!(
        "{method}: barrier {} (witness {}, {} states)\n",
        r.barrier, r.witness, r.states_explored
    )
}

fn barrier(args: &BarrierArgs, opts: SearchOptions, json: bool) -> Outcome {
    let la = &args.logical;
    let code = read_code(&la.code)?;
    let kind: CssType = la.logical.into();
    let class = code
        .logicals()
        .get(la.index)
        .ok_or_else(|| invalid(format!("code has no promoted logical {}", la.index)))?;
    let mut results = Vec::new();
    if args.method != Method::Bound {
        results.push(exact_barrier(&code, la.index, kind, opts)?);
    }
    if args.method != Method::Exact {
        let regions = code.flat_region_graph(kind.dual())?;
        results.push(parity_lower_bound(regions, class.rep(kind), opts)?);
    }
    if json {
        return Ok(if results.len() == 1 {
            pretty(&results[0])
        } else {
            pretty(&results)
        });
    }
    Ok(results.iter().map(describe).collect())
}

fn bound(args: &LogicalArgs, opts: SearchOptions, json: bool) -> Outcome {
    let code = read_code(&args.code)?;
    let rep: BoundReport = verify_bound(&code, args.index, args.logical.into(), opts)?;
    if json {
        return Ok(pretty(&rep));
    }
    Ok(format!(
        "{}{}saturated: {}\n",
        describe(&rep.exact),
        describe(&rep.bound),
        rep.saturated
    ))
}

fn verify(dir: Option<&Path>, seed: u64, json: bool) -> Result<(String, bool), Failure> {
    let files = match dir {
        Some(d) => golden::GoldenFiles::from_dir(d)
            .map_err(|e| invalid(format!("{}: {e}", d.display())))?,
        None => golden::GoldenFiles::embedded(),
    };
    let results = golden::run_suite(&files, seed);
    let ok = results.iter().all(|r| r.passed);
    if json {
        return Ok((pretty(&json!({ "passed": ok, "cases": results })), ok));
    }
    let mut s = String::new();
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!("{status} {}: {}\n", r.name, r.detail));
    }
    Ok((s, ok))
}

fn csv_cell(r: codeweld::Result<usize>) -> Result<String, Failure> {
    match r {
        Ok(v) => Ok(v.to_string()),
        Err(e) if e.is_feasibility() => Ok(String::new()),
        Err(e) => Err(e.into()),
    }
}

fn sweep(args: &SweepArgs, opts: SearchOptions) -> Outcome {
    let ds = parse_range(&args.d)?;
    let rs = parse_range(&args.r)?;
    let mut out = String::from("d,R,n,barrier_X,barrier_Z,bound_X,bound_Z,seconds\n");
    for d in ds {
        for r in rs.clone() {
            let start = Instant::now();
            let du = d as usize;
            let spec = SolidSpec::new(du, du, du.max(2), false)?;
            let code = match scaling_graph(r)? {
                None => build_solid(spec)?,
                Some(g) => build_welded_solid(&g, spec)?,
            };
            let class = &code.logicals()[0];
            let exact = |t| exact_barrier(&code, 0, t, opts).map(|b| b.barrier);
            let bound = |t: CssType| {
                code.flat_region_graph(t.dual())
                    .and_then(|g| parity_lower_bound(g, class.rep(t), opts))
                    .map(|b| b.barrier)
            };
            let row = [
                csv_cell(exact(CssType::X))?,
                csv_cell(exact(CssType::Z))?,
                csv_cell(bound(CssType::X))?,
                csv_cell(bound(CssType::Z))?,
            ];
            out.push_str(&format!(
                "{d},{r},{},{},{:.3}\n",
                code.n(),
                row.join(","),
                start.elapsed().as_secs_f64()
            ));
        }
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let opts = SearchOptions {
        max_states: cli.max_states,
    };
    let json = cli.json;
    let text = match &cli.command {
        Command::Build(a) => build(a, json)?,
        Command::Weld(a) => weld_cmd(a, json)?,
        Command::Info { code } => info(code, json)?,
        Command::Barrier(a) => barrier(a, opts, json)?,
        Command::Bound(a) => bound(a, opts, json)?,
        Command::Verify { golden, seed } => return verify(golden.as_deref(), *seed, json),
        Command::Sweep(a) => sweep(a, opts)?,
        Command::Export { code } => render_code(&read_code(code)?, json),
    };
    Ok((text, true))
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| invalid(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    let result = run(&cli).and_then(|(text, ok)| emit(&cli, &text).map(|_| ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            if cli.json {
                println!(
                    "{}",
                    json!({ "error": f.kind, "message": f.message, "exit_code": f.code })
                );
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
