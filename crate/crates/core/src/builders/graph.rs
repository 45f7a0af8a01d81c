use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shape a [`WeldGraph`] was generated from, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphGeometry {
    Path(usize),
    Star(usize),
    Grid2d(usize, usize),
    Cubic(usize, usize, usize),
}

/// Vertices are boundaries, edges are code pieces. An edge `(i, j)` places
/// the piece's first boundary (bottom or left) at `i` and its second at `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeldGraph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    geometry: Option<GraphGeometry>,
}

impl WeldGraph {
    pub fn new(labels: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = Self {
            labels,
            edges,
            geometry: None,
        };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<()> {
        let nv = self.labels.len();
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            if a >= nv || b >= nv {
                return Err(Error::InvalidSpec(format!("edge {k} references a missing vertex")));
            }
            if a == b {
                return Err(Error::InvalidSpec(format!("edge {k} is a loop")));
            }
        }
        if self.edges.is_empty() {
            return Err(Error::InvalidSpec("weld graph has no edges".into()));
        }
        Ok(())
    }

    fn numbered(nv: usize, edges: Vec<(usize, usize)>, geometry: GraphGeometry) -> Self {
        Self {
            labels: (0..nv).map(|i| i.to_string()).collect(),
            edges,
            geometry: Some(geometry),
        }
    }

    /// `n` pieces in a row.
    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("path needs at least one edge".into()));
        }
        Ok(Self::numbered(n + 1, (0..n).map(|i| (i, i + 1)).collect(), GraphGeometry::Path(n)))
    }

    /// `n` pieces sharing vertex 0.
    pub fn star(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("star needs at least one edge".into()));
        }
        Ok(Self::numbered(n + 1, (1..=n).map(|i| (0, i)).collect(), GraphGeometry::Star(n)))
    }

    /// Square grid of `a x b` vertices.
    pub fn grid2d(a: usize, b: usize) -> Result<Self> {
        Self::cubic_inner(a, b, 1, GraphGeometry::Grid2d(a, b))
    }

    /// Cubic grid of `a x b x c` vertices.
    pub fn cubic(a: usize, b: usize, c: usize) -> Result<Self> {
        Self::cubic_inner(a, b, c, GraphGeometry::Cubic(a, b, c))
    }

    fn cubic_inner(a: usize, b: usize, c: usize, geometry: GraphGeometry) -> Result<Self> {
        if a == 0 || b == 0 || c == 0 || a * b * c < 2 {
            return Err(Error::InvalidSpec("grid needs at least two vertices".into()));
        }
        let id = |i: usize, j: usize, k: usize| (i * b + j) * c + k;
        let mut edges = Vec::new();
        let mut labels = Vec::new();
        for i in 0..a {
            for j in 0..b {
                for k in 0..c {
                    labels.push(match geometry {
                        GraphGeometry::Cubic(..) => format!("{i},{j},{k}"),
                        _ => format!("{i},{j}"),
                    });
                    if i + 1 < a {
                        edges.push((id(i, j, k), id(i + 1, j, k)));
                    }
                    if j + 1 < b {
                        edges.push((id(i, j, k), id(i, j + 1, k)));
                    }
                    if k + 1 < c {
                        edges.push((id(i, j, k), id(i, j, k + 1)));
                    }
                }
            }
        }
        Ok(Self {
            labels,
            edges,
            geometry: Some(geometry),
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn geometry(&self) -> Option<GraphGeometry> {
        self.geometry
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_connected(&self) -> bool {
        let nv = self.vertex_count();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let used: Vec<usize> = (0..nv).filter(|&v| self.degree(v) > 0).collect();
        let root = used.first().map(|&v| find(&mut parent, v));
        used.iter().all(|&v| Some(find(&mut parent, v)) == root)
    }

    /// Parses `v <label>` and `e <label> <label>` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        let mut edges = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: ln + 1, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["v", label] => {
                    if index.insert(label.to_string(), labels.len()).is_some() {
                        return Err(err(format!("duplicate vertex {label:?}")));
                    }
                    labels.push(label.to_string());
                }
                ["e", a, b] => {
                    let look = |l: &str| {
                        index
                            .get(l)
                            .copied()
                            .ok_or_else(|| err(format!("unknown vertex {l:?}")))
                    };
                    edges.push((look(a)?, look(b)?));
                }
                _ => return Err(err(format!("unrecognised line {line:?}"))),
            }
        }
        Self::new(labels, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for l in &self.labels {
            s.push_str(&format!("v {l}\n"));
        }
        for &(a, b) in &self.edges {
            s.push_str(&format!("e {} {}\n", self.labels[a], self.labels[b]));
        }
        s
    }
}
