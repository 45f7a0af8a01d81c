use serde::{Deserialize, Serialize};

use crate::css::{CssCode, GeneratingSet, LogicalClass};
use crate::error::{Error, Result};
use crate::pauli::{CssType, PauliOperator, QubitSet};
use crate::regions::FlatRegionGraph;

use super::pieces::{weld_pieces_direct, weld_pieces_sequential, Piece};
use super::{SurfaceSpec, WeldGraph};

/// Cubic-lattice solid code with rough top and bottom.
///
/// Vertices are `(x, y, z)` with `x <= dx`, `y <= dy`, `z <= dz`; horizontal
/// edges at `z = 0` and `z = dz` are removed. Qubits are indexed layer by
/// layer from the bottom: the vertical edges spanning `z..z+1` (row-major in
/// `(y, x)`), then the horizontal x-edges and y-edges at height `z + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolidSpec {
    pub dx: usize,
    pub dy: usize,
    pub dz: usize,
    pub horizontal_plaquettes: bool,
}

impl SolidSpec {
    pub fn new(dx: usize, dy: usize, dz: usize, horizontal_plaquettes: bool) -> Result<Self> {
        if dx == 0 || dy == 0 || dz == 0 {
            return Err(Error::InvalidSpec(format!(
                "solid needs dx, dy, dz >= 1 (got {dx}x{dy}x{dz})"
            )));
        }
        Ok(Self {
            dx,
            dy,
            dz,
            horizontal_plaquettes,
        })
    }

    fn checked(&self) -> Result<Self> {
        Self::new(self.dx, self.dy, self.dz, self.horizontal_plaquettes)
    }

    fn layer_size(&self) -> usize {
        (self.dx + 1) * (self.dy + 1)
    }

    fn x_edges_per_level(&self) -> usize {
        self.dx * (self.dy + 1)
    }

    fn level_size(&self) -> usize {
        self.x_edges_per_level() + (self.dx + 1) * self.dy
    }

    fn block(&self) -> usize {
        self.layer_size() + self.level_size()
    }

    pub fn n(&self) -> usize {
        self.dz * self.layer_size() + (self.dz - 1) * self.level_size()
    }

    /// Vertical edge from `(x, y, z)` to `(x, y, z + 1)`.
    pub fn z_edge(&self, x: usize, y: usize, z: usize) -> usize {
        debug_assert!(x <= self.dx && y <= self.dy && z < self.dz);
        z * self.block() + y * (self.dx + 1) + x
    }

    /// Edge from `(x, y, z)` to `(x + 1, y, z)`, for `1 <= z < dz`.
    pub fn x_edge(&self, x: usize, y: usize, z: usize) -> usize {
        debug_assert!(x < self.dx && y <= self.dy && (1..self.dz).contains(&z));
        (z - 1) * self.block() + self.layer_size() + y * self.dx + x
    }

    /// Edge from `(x, y, z)` to `(x, y + 1, z)`, for `1 <= z < dz`.
    pub fn y_edge(&self, x: usize, y: usize, z: usize) -> usize {
        debug_assert!(x <= self.dx && y < self.dy && (1..self.dz).contains(&z));
        (z - 1) * self.block() + self.layer_size() + self.x_edges_per_level() + y * (self.dx + 1) + x
    }

    /// Vertical edges spanning `z..z+1`.
    pub fn layer(&self, z: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.layer_size());
        for y in 0..=self.dy {
            for x in 0..=self.dx {
                out.push(self.z_edge(x, y, z));
            }
        }
        out
    }

    /// Vertical edges above `(x, y)`, bottom to top.
    pub fn column(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.dz).map(|z| self.z_edge(x, y, z)).collect()
    }

    fn stars(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for z in 1..self.dz {
            for y in 0..=self.dy {
                for x in 0..=self.dx {
                    let mut s = vec![self.z_edge(x, y, z - 1), self.z_edge(x, y, z)];
                    if x > 0 {
                        s.push(self.x_edge(x - 1, y, z));
                    }
                    if x < self.dx {
                        s.push(self.x_edge(x, y, z));
                    }
                    if y > 0 {
                        s.push(self.y_edge(x, y - 1, z));
                    }
                    if y < self.dy {
                        s.push(self.y_edge(x, y, z));
                    }
                    out.push(s);
                }
            }
        }
        out
    }

    /// Plaquettes in vertical xz and yz faces, halved at the rough top and bottom.
    fn vertical_plaquettes(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for z in 0..self.dz {
            let mut face = |a: (usize, usize), b: (usize, usize), h: &dyn Fn(usize) -> usize| {
                let mut p = vec![self.z_edge(a.0, a.1, z), self.z_edge(b.0, b.1, z)];
                if z >= 1 {
                    p.push(h(z));
                }
                if z + 1 < self.dz {
                    p.push(h(z + 1));
                }
                out.push(p);
            };
            for y in 0..=self.dy {
                for x in 0..self.dx {
                    face((x, y), (x + 1, y), &|l| self.x_edge(x, y, l));
                }
            }
            for y in 0..self.dy {
                for x in 0..=self.dx {
                    face((x, y), (x, y + 1), &|l| self.y_edge(x, y, l));
                }
            }
        }
        out
    }

    /// Plaquettes in horizontal faces at heights `1..dz`.
    pub fn horizontal_plaquettes(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for z in 1..self.dz {
            for y in 0..self.dy {
                for x in 0..self.dx {
                    out.push(vec![
                        self.x_edge(x, y, z),
                        self.x_edge(x, y + 1, z),
                        self.y_edge(x, y, z),
                        self.y_edge(x + 1, y, z),
                    ]);
                }
            }
        }
        out
    }

    fn gens(&self) -> GeneratingSet {
        let mut z = self.vertical_plaquettes();
        if self.horizontal_plaquettes {
            z.extend(self.horizontal_plaquettes());
        }
        GeneratingSet::from_supports(self.n(), &self.stars(), &z)
    }

    /// X on every vertical edge spanning `z..z+1`.
    pub fn membrane(&self, z: usize) -> PauliOperator {
        PauliOperator::pure(CssType::X, self.n(), self.layer(z))
    }

    /// Z on the column of vertical edges above `(x, y)`.
    pub fn string(&self, x: usize, y: usize) -> PauliOperator {
        PauliOperator::pure(CssType::Z, self.n(), self.column(x, y))
    }

    /// Horizontal qubits over the grid edge between two columns, all heights.
    fn strip_qubits(&self, a: (usize, usize), b: (usize, usize)) -> Vec<usize> {
        (1..self.dz)
            .map(|z| {
                if a.1 == b.1 {
                    self.x_edge(a.0.min(b.0), a.1, z)
                } else {
                    self.y_edge(a.0, a.1.min(b.1), z)
                }
            })
            .collect()
    }

    /// Grid edges of the `(dx+1) x (dy+1)` cross-section as column pairs.
    fn grid_edges(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut out = Vec::new();
        for y in 0..=self.dy {
            for x in 0..self.dx {
                out.push(((x, y), (x + 1, y)));
            }
        }
        for y in 0..self.dy {
            for x in 0..=self.dx {
                out.push(((x, y), (x, y + 1)));
            }
        }
        out
    }

    fn columns(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for y in 0..=self.dy {
            for x in 0..=self.dx {
                out.push((x, y));
            }
        }
        out
    }

    fn piece(&self) -> Piece {
        Piece {
            gens: self.gens(),
            boundaries: [self.layer(0), self.layer(self.dz - 1)],
            string: self.string(0, 0),
            membrane: self.membrane((self.dz - 1) / 2),
            extras: self
                .horizontal_plaquettes()
                .into_iter()
                .map(|s| PauliOperator::pure(CssType::Z, self.n(), s))
                .collect(),
        }
    }
}

/// Flat-Z regions of one or more solids sharing a cross-section: one strip
/// per grid edge, bounded by the columns at its ends.
fn strip_regions(spec: &SolidSpec, maps: &[Vec<usize>]) -> FlatRegionGraph {
    let mut g = FlatRegionGraph::new(CssType::Z);
    let lift = |local: Vec<usize>| -> QubitSet {
        maps.iter()
            .flat_map(|m| local.iter().map(move |&q| m[q]))
            .collect()
    };
    let columns = spec.columns();
    let boundary: Vec<usize> = columns
        .iter()
        .map(|&(x, y)| g.add_boundary(format!("column {x},{y}"), lift(spec.column(x, y))))
        .collect();
    for (a, b) in spec.grid_edges() {
        let r = g.add_region(
            format!("strip {},{}-{},{}", a.0, a.1, b.0, b.1),
            lift(spec.strip_qubits(a, b)),
        );
        for end in [a, b] {
            let k = columns.iter().position(|&c| c == end).expect("column exists");
            g.connect(r, boundary[k]);
        }
    }
    g
}

/// Solid code with its membrane and string logicals.
pub fn build_solid(spec: SolidSpec) -> Result<CssCode> {
    let spec = spec.checked()?;
    let n = spec.n();
    let code = CssCode::new(
        spec.gens(),
        vec![LogicalClass {
            z_rep: spec.string(0, 0),
            x_rep: spec.membrane(0),
        }],
    )?;
    let mut fx = FlatRegionGraph::new(CssType::X);
    let r = fx.add_region("solid", QubitSet::range(n));
    if spec.dz >= 2 {
        for (label, z) in [("bottom", 0), ("top", spec.dz - 1)] {
            let b = fx.add_boundary(label, QubitSet::new(spec.layer(z)));
            fx.connect(r, b);
        }
    }
    let mut regions = vec![fx];
    if !spec.horizontal_plaquettes {
        let identity: Vec<usize> = (0..n).collect();
        regions.push(strip_regions(&spec, &[identity]));
    }
    code.with_regions(regions)
}

/// The solid assembled from `dz`-high, one-wide surface strips, one per
/// edge of the cross-section grid, glued with X-type welds along shared
/// columns. Each strip's X string is folded in, so the result is the group
/// of `build_solid` without horizontal plaquettes plus its membrane, in the
/// solid's qubit order.
///
/// Strips closing a cycle of the grid touch two columns that are already
/// present; there the two sides span different spaces on the weld, so this
/// needs `oracle = true` whenever both `dx` and `dy` are positive.
pub fn build_solid_by_welding(spec: SolidSpec, oracle: bool) -> Result<CssCode> {
    let spec = spec.checked()?;
    let columns = spec.columns();
    let col_index = |c: (usize, usize)| columns.iter().position(|&d| d == c).expect("column");
    let grid = spec.grid_edges();
    let graph = WeldGraph::new(
        columns.iter().map(|(x, y)| format!("{x},{y}")).collect(),
        grid.iter().map(|&(a, b)| (col_index(a), col_index(b))).collect(),
    )?;
    let strip = SurfaceSpec::new(1, spec.dz)?;
    let piece = Piece {
        gens: strip.gens(),
        boundaries: [strip.column(0), strip.column(1)],
        string: strip.x_string(0),
        membrane: strip.z_string(0),
        extras: Vec::new(),
    };
    let pieces = vec![piece; grid.len()];
    let (code, maps) = weld_pieces_sequential(&graph, &pieces, CssType::X, oracle)?;
    let mut perm = vec![usize::MAX; code.n()];
    for ((a, b), map) in grid.iter().zip(&maps) {
        for r in 0..spec.dz {
            perm[map[strip.vertical(r, 0)]] = spec.z_edge(a.0, a.1, r);
            perm[map[strip.vertical(r, 1)]] = spec.z_edge(b.0, b.1, r);
            if r >= 1 {
                perm[map[strip.horizontal(r, 0)]] = spec.strip_qubits(*a, *b)[r - 1];
            }
        }
    }
    CssCode::from_gens(code.gens().embed(&perm, spec.n()))
}

fn check_welded_solid_spec(spec: &SolidSpec) -> Result<SolidSpec> {
    let spec = spec.checked()?;
    if spec.horizontal_plaquettes {
        return Err(Error::InvalidSpec(
            "welded solids are built without horizontal plaquettes".into(),
        ));
    }
    if spec.dz < 2 {
        return Err(Error::IncompatibleBoundary(
            "welded solids need dz >= 2 so the two rough boundaries are disjoint".into(),
        ));
    }
    Ok(spec)
}

/// Identical solids glued along a graph: each edge is one solid (bottom at
/// the first endpoint, top at the second), each vertex one shared rough
/// boundary. The union of the solids' Z strings is the logical, paired with
/// a membrane.
pub fn build_welded_solid(graph: &WeldGraph, spec: SolidSpec) -> Result<CssCode> {
    let spec = check_welded_solid_spec(&spec)?;
    let pieces = vec![spec.piece(); graph.edges().len()];
    let pw = weld_pieces_direct(graph, &pieces, CssType::Z)?;
    let mut fx = FlatRegionGraph::new(CssType::X);
    for (e, map) in pw.maps.iter().enumerate() {
        fx.add_region(format!("solid {e}"), map.iter().copied().collect());
    }
    let mut vb = vec![usize::MAX; graph.vertex_count()];
    for (v, qs) in pw.vertex_qubits.iter().enumerate() {
        if !qs.is_empty() {
            vb[v] = fx.add_boundary(format!("vertex {}", graph.labels()[v]), qs.iter().copied().collect());
        }
    }
    for (e, &(a, b)) in graph.edges().iter().enumerate() {
        fx.connect(e, vb[a]);
        fx.connect(e, vb[b]);
    }
    let fz = strip_regions(&spec, &pw.maps);
    pw.code.with_regions(vec![fx, fz])
}

/// The group of [`build_welded_solid`] with its logical string folded in,
/// obtained by welding one solid at a time.
pub fn build_welded_solid_by_welding(graph: &WeldGraph, spec: SolidSpec, oracle: bool) -> Result<CssCode> {
    let spec = check_welded_solid_spec(&spec)?;
    let pieces = vec![spec.piece(); graph.edges().len()];
    Ok(weld_pieces_sequential(graph, &pieces, CssType::Z, oracle)?.0)
}
