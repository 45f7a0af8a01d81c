use serde::{Deserialize, Serialize};

use crate::css::{CssCode, GeneratingSet, LogicalClass};
use crate::error::{Error, Result};
use crate::pauli::{CssType, PauliOperator, QubitSet};
use crate::regions::FlatRegionGraph;
use crate::welding::{align_on_weld, weld, QubitIdentification};

use super::pieces::{weld_pieces_direct, weld_pieces_sequential, Piece, PieceWeld};
use super::{build_two_qubit, WeldGraph};

/// Planar surface code with rough top and bottom edges and smooth left and
/// right edges.
///
/// Qubits sit on vertical edges `v(r, c)` (rows `0..height`, columns
/// `0..=width`) and horizontal edges `h(r, c)` (rows `1..height`, columns
/// `0..width`). Indices run row by row from the bottom: the vertical edges
/// of row `r` come first, then the horizontal edges above them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub width: usize,
    pub height: usize,
}

impl SurfaceSpec {
    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidSpec(format!(
                "surface needs width, height >= 1 (got {width}x{height})"
            )));
        }
        Ok(Self { width, height })
    }

    pub fn n(&self) -> usize {
        self.height * (self.width + 1) + (self.height - 1) * self.width
    }

    pub fn vertical(&self, r: usize, c: usize) -> usize {
        debug_assert!(r < self.height && c <= self.width);
        r * (2 * self.width + 1) + c
    }

    pub fn horizontal(&self, r: usize, c: usize) -> usize {
        debug_assert!(r >= 1 && r < self.height && c < self.width);
        (r - 1) * (2 * self.width + 1) + self.width + 1 + c
    }

    /// Vertical edges of row `r`, left to right.
    pub fn row(&self, r: usize) -> Vec<usize> {
        (0..=self.width).map(|c| self.vertical(r, c)).collect()
    }

    /// Vertical edges of column `c`, bottom to top.
    pub fn column(&self, c: usize) -> Vec<usize> {
        (0..self.height).map(|r| self.vertical(r, c)).collect()
    }

    fn stars(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for r in 1..self.height {
            for c in 0..=self.width {
                let mut s = vec![self.vertical(r - 1, c), self.vertical(r, c)];
                if c > 0 {
                    s.push(self.horizontal(r, c - 1));
                }
                if c < self.width {
                    s.push(self.horizontal(r, c));
                }
                out.push(s);
            }
        }
        out
    }

    fn plaquettes(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for r in 0..self.height {
            for c in 0..self.width {
                let mut p = vec![self.vertical(r, c), self.vertical(r, c + 1)];
                if r >= 1 {
                    p.push(self.horizontal(r, c));
                }
                if r + 1 < self.height {
                    p.push(self.horizontal(r + 1, c));
                }
                out.push(p);
            }
        }
        out
    }

    /// X on the vertical edges of row `r`, smooth edge to smooth edge.
    pub fn x_string(&self, r: usize) -> PauliOperator {
        PauliOperator::pure(CssType::X, self.n(), self.row(r))
    }

    /// Z on the vertical edges of column `c`, rough edge to rough edge.
    pub fn z_string(&self, c: usize) -> PauliOperator {
        PauliOperator::pure(CssType::Z, self.n(), self.column(c))
    }

    pub(crate) fn gens(&self) -> GeneratingSet {
        GeneratingSet::from_supports(self.n(), &self.stars(), &self.plaquettes())
    }

    fn piece(&self, kind: BoundaryKind) -> Piece {
        match kind {
            BoundaryKind::Rough => Piece {
                gens: self.gens(),
                boundaries: [self.row(0), self.row(self.height - 1)],
                string: self.z_string(0),
                membrane: self.x_string((self.height - 1) / 2),
                extras: Vec::new(),
            },
            BoundaryKind::Smooth => Piece {
                gens: self.gens(),
                boundaries: [self.column(0), self.column(self.width)],
                string: self.x_string(0),
                membrane: self.z_string(self.width / 2),
                extras: Vec::new(),
            },
        }
    }
}

/// What to do with the horizontal X string and vertical Z string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StringLogicals {
    /// Leave them out: one unlabelled encoded qubit.
    Omit,
    /// Install them as the logical class (k = 1).
    Promote,
    /// Add the X string to the generators (k = 0).
    FoldX,
    /// Add the Z string to the generators (k = 0).
    FoldZ,
}

/// Which pair of edges pieces are glued along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryKind {
    /// Top and bottom; glued with Z-type welds.
    Rough,
    /// Left and right; glued with X-type welds.
    Smooth,
}

impl BoundaryKind {
    pub fn weld_type(self) -> CssType {
        match self {
            BoundaryKind::Rough => CssType::Z,
            BoundaryKind::Smooth => CssType::X,
        }
    }
}

fn surface_regions(spec: &SurfaceSpec) -> Vec<FlatRegionGraph> {
    let all = QubitSet::range(spec.n());
    let mut fx = FlatRegionGraph::new(CssType::X);
    let r = fx.add_region("surface", all.clone());
    if spec.height >= 2 {
        let b = fx.add_boundary("bottom", QubitSet::new(spec.row(0)));
        fx.connect(r, b);
        let t = fx.add_boundary("top", QubitSet::new(spec.row(spec.height - 1)));
        fx.connect(r, t);
    }
    let mut fz = FlatRegionGraph::new(CssType::Z);
    let r = fz.add_region("surface", all);
    let l = fz.add_boundary("left", QubitSet::new(spec.column(0)));
    fz.connect(r, l);
    let rt = fz.add_boundary("right", QubitSet::new(spec.column(spec.width)));
    fz.connect(r, rt);
    vec![fx, fz]
}

/// Square-lattice surface code.
pub fn build_surface(spec: SurfaceSpec, strings: StringLogicals) -> Result<CssCode> {
    let spec = SurfaceSpec::new(spec.width, spec.height)?;
    let mut gens = spec.gens();
    let x_bar = spec.x_string(0);
    let z_bar = spec.z_string(0);
    let mut regions = surface_regions(&spec);
    let logicals = match strings {
        StringLogicals::Omit => Vec::new(),
        StringLogicals::Promote => vec![LogicalClass {
            z_rep: z_bar,
            x_rep: x_bar,
        }],
        StringLogicals::FoldX => {
            gens.push(CssType::X, x_bar)?;
            regions.retain(|r| r.particle_type != CssType::X);
            Vec::new()
        }
        StringLogicals::FoldZ => {
            gens.push(CssType::Z, z_bar)?;
            regions.retain(|r| r.particle_type != CssType::Z);
            Vec::new()
        }
    };
    CssCode::new(gens, logicals)?.with_regions(regions)
}

/// Lattice position of a qubit while assembling a surface from pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Edge {
    V(usize, usize),
    H(usize, usize),
}

#[derive(Clone, Debug)]
struct Placed {
    code: CssCode,
    edges: Vec<Edge>,
}

impl Placed {
    fn new(code: CssCode, edges: Vec<Edge>) -> Self {
        Self { code, edges }
    }

    fn shifted(&self, dr: usize, dc: usize) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| match *e {
                Edge::V(r, c) => Edge::V(r + dr, c + dc),
                Edge::H(r, c) => Edge::H(r + dr, c + dc),
            })
            .collect();
        Self::new(self.code.clone(), edges)
    }

    /// Welds on every lattice edge the two pieces have in common, after
    /// aligning both generating sets on those qubits.
    fn weld(&self, other: &Placed, t: CssType) -> Result<Placed> {
        let pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| other.edges.iter().position(|f| f == e).map(|j| (i, j)))
            .collect();
        let s1: QubitSet = pairs.iter().map(|p| p.0).collect();
        let s2: QubitSet = pairs.iter().map(|p| p.1).collect();
        let a = CssCode::from_gens(align_on_weld(self.code.gens(), &s1, t)?)?;
        let b = CssCode::from_gens(align_on_weld(other.code.gens(), &s2, t)?)?;
        let result = weld(&a, &b, &QubitIdentification::new(pairs), t)?;
        let mut edges = self.edges.clone();
        edges.extend(
            other
                .edges
                .iter()
                .filter(|e| !self.edges.contains(e))
                .copied(),
        );
        Ok(Placed::new(result.code, edges))
    }

    /// Re-indexes onto the layout of `spec`.
    fn into_lattice(self, spec: &SurfaceSpec) -> Result<CssCode> {
        let n = spec.n();
        if self.edges.len() != n {
            return Err(Error::InvalidSpec(format!(
                "assembled {} qubits, lattice has {n}",
                self.edges.len()
            )));
        }
        let map: Vec<usize> = self
            .edges
            .iter()
            .map(|e| match *e {
                Edge::V(r, c) => spec.vertical(r, c),
                Edge::H(r, c) => spec.horizontal(r, c),
            })
            .collect();
        CssCode::from_gens(self.code.gens().embed(&map, n))
    }
}

/// `<XX, ZZ>` on two lattice edges.
fn pair(a: Edge, b: Edge) -> Placed {
    Placed::new(build_two_qubit(), vec![a, b])
}

/// The 2x1 unit: two pairs glued into a plaquette-shaped 3-qubit code, twice,
/// then the two halves glued on their middle edge.
fn unit_2x1() -> Result<(Placed, Placed, Placed)> {
    let lower =
        pair(Edge::V(0, 0), Edge::H(1, 0)).weld(&pair(Edge::H(1, 0), Edge::V(0, 1)), CssType::Z)?;
    let upper =
        pair(Edge::V(1, 0), Edge::H(1, 0)).weld(&pair(Edge::H(1, 0), Edge::V(1, 1)), CssType::Z)?;
    let five = lower.weld(&upper, CssType::X)?;
    Ok((lower, upper, five))
}

fn strip(width: usize) -> Result<Placed> {
    let (_, _, unit) = unit_2x1()?;
    let mut acc = unit.clone();
    for c in 1..width {
        acc = acc.weld(&unit.shifted(0, c), CssType::X)?;
    }
    Ok(acc)
}

/// Assembles the surface code from two-qubit codes by welding alone: rows of
/// 2-high units are joined across smooth edges into strips, and strips are
/// joined across rough edges. The X string is folded into the generators,
/// so the result equals `build_surface(spec, StringLogicals::FoldX)` as a
/// group.
pub fn build_surface_by_welding(spec: SurfaceSpec) -> Result<CssCode> {
    let spec = SurfaceSpec::new(spec.width, spec.height)?;
    let placed = if spec.height == 1 {
        let unit = pair(Edge::V(0, 0), Edge::V(0, 1));
        let mut acc = unit.clone();
        for c in 1..spec.width {
            acc = acc.weld(&unit.shifted(0, c), CssType::X)?;
        }
        acc
    } else {
        let s = strip(spec.width)?;
        let mut acc = s.clone();
        for r in 1..spec.height - 1 {
            acc = acc.weld(&s.shifted(r, 0), CssType::Z)?;
        }
        acc
    };
    placed.into_lattice(&spec)
}

/// One step of the small welding chain.
#[derive(Clone, Debug)]
pub struct ChainStage {
    pub label: &'static str,
    pub code: CssCode,
}

/// The chain 2 -> 3 -> 5 -> 7 -> 13 qubits.
///
/// Every stage encodes no qubits; the last three carry one folded string
/// each. The 7-qubit stage glues two 5-qubit codes along their shared
/// plaquette column (three qubits), and the 13-qubit stage glues two 2x2
/// strips along a rough edge.
pub fn surface_welding_chain() -> Result<Vec<ChainStage>> {
    let two = pair(Edge::V(0, 0), Edge::H(1, 0));
    let (three, _, five) = unit_2x1()?;
    // second copy sits to the right, sharing the right column and middle edge
    let five_b = Placed::new(
        five.code.clone(),
        five.edges
            .iter()
            .map(|e| match *e {
                Edge::V(r, c) => Edge::V(r, c + 1),
                h => h,
            })
            .collect(),
    );
    let seven = five.weld(&five_b, CssType::X)?;
    let s = strip(2)?;
    let thirteen = s.weld(&s.shifted(1, 0), CssType::Z)?;
    Ok(vec![
        ChainStage {
            label: "2",
            code: two.code,
        },
        ChainStage {
            label: "3",
            code: three.code,
        },
        ChainStage {
            label: "5",
            code: five.code,
        },
        ChainStage {
            label: "7",
            code: seven.code,
        },
        ChainStage {
            label: "13",
            code: thirteen.into_lattice(&SurfaceSpec::new(2, 3)?)?,
        },
    ])
}

fn glued_regions(
    graph: &WeldGraph,
    spec: &SurfaceSpec,
    kind: BoundaryKind,
    pw: &PieceWeld,
) -> Result<Vec<FlatRegionGraph>> {
    let n = pw.code.n();
    let glued_type = kind.weld_type().dual();
    let mut split = FlatRegionGraph::new(glued_type);
    for (e, map) in pw.maps.iter().enumerate() {
        split.add_region(format!("piece {e}"), map.iter().copied().collect());
    }
    let mut vb = vec![usize::MAX; graph.vertex_count()];
    for (v, qs) in pw.vertex_qubits.iter().enumerate() {
        if !qs.is_empty() && !(kind == BoundaryKind::Rough && spec.height < 2) {
            vb[v] = split.add_boundary(format!("vertex {}", graph.labels()[v]), qs.iter().copied().collect());
        }
    }
    for (e, &(a, b)) in graph.edges().iter().enumerate() {
        for v in [a, b] {
            if vb[v] != usize::MAX {
                split.connect(e, vb[v]);
            }
        }
    }
    let mut whole = FlatRegionGraph::new(glued_type.dual());
    let r = whole.add_region("all", QubitSet::range(n));
    let sides: [Vec<usize>; 2] = match kind {
        BoundaryKind::Rough => [spec.column(0), spec.column(spec.width)],
        BoundaryKind::Smooth => [spec.row(0), spec.row(spec.height - 1)],
    };
    if kind == BoundaryKind::Rough || spec.height >= 2 {
        for (label, local) in ["first side", "second side"].iter().zip(&sides) {
            let qs: QubitSet = pw
                .maps
                .iter()
                .flat_map(|m| local.iter().map(move |&q| m[q]))
                .collect();
            let b = whole.add_boundary(*label, qs);
            whole.connect(r, b);
        }
    }
    Ok(vec![split, whole])
}

/// Identical surface codes glued along a graph: each edge is one surface,
/// each vertex one shared rough (or smooth) edge. The string crossing every
/// piece becomes the logical.
pub fn build_welded_surface(graph: &WeldGraph, kind: BoundaryKind, spec: SurfaceSpec) -> Result<CssCode> {
    let spec = SurfaceSpec::new(spec.width, spec.height)?;
    if kind == BoundaryKind::Rough && spec.height < 2 {
        return Err(Error::IncompatibleBoundary(
            "rough welds need height >= 2 so the two rough edges are disjoint".into(),
        ));
    }
    let pieces = vec![spec.piece(kind); graph.edges().len()];
    let pw = weld_pieces_direct(graph, &pieces, kind.weld_type())?;
    let regions = glued_regions(graph, &spec, kind, &pw)?;
    pw.code.with_regions(regions)
}

/// The group of [`build_welded_surface`] with its logical string folded in,
/// obtained by welding one piece at a time.
pub fn build_welded_surface_by_welding(
    graph: &WeldGraph,
    kind: BoundaryKind,
    spec: SurfaceSpec,
    oracle: bool,
) -> Result<CssCode> {
    let spec = SurfaceSpec::new(spec.width, spec.height)?;
    let pieces = vec![spec.piece(kind); graph.edges().len()];
    Ok(weld_pieces_sequential(graph, &pieces, kind.weld_type(), oracle)?.0)
}
