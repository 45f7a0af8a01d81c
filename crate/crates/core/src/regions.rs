//! Flat-region graphs: which qubit regions a particle type moves through freely,
//! and which boundaries between them create new particles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{CssType, QubitSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub label: String,
    pub qubits: QubitSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Boundary {
    pub label: String,
    pub qubits: QubitSet,
}

/// Bipartite incidence between flat regions and the boundaries they touch.
///
/// `particle_type` names the quasi-particles that move freely inside each
/// region: `X` for violated X generators (created by Z errors), `Z` for
/// violated Z generators. An error on a boundary qubit creates one particle
/// in every incident region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatRegionGraph {
    pub particle_type: CssType,
    pub regions: Vec<Region>,
    pub boundaries: Vec<Boundary>,
    /// `(region index, boundary index)` pairs.
    pub incidence: Vec<(usize, usize)>,
}

impl FlatRegionGraph {
    pub fn new(particle_type: CssType) -> Self {
        Self {
            particle_type,
            regions: Vec::new(),
            boundaries: Vec::new(),
            incidence: Vec::new(),
        }
    }

    pub fn add_region(&mut self, label: impl Into<String>, qubits: QubitSet) -> usize {
        self.regions.push(Region {
            label: label.into(),
            qubits,
        });
        self.regions.len() - 1
    }

    pub fn add_boundary(&mut self, label: impl Into<String>, qubits: QubitSet) -> usize {
        self.boundaries.push(Boundary {
            label: label.into(),
            qubits,
        });
        self.boundaries.len() - 1
    }

    pub fn connect(&mut self, region: usize, boundary: usize) {
        if !self.incidence.contains(&(region, boundary)) {
            self.incidence.push((region, boundary));
        }
    }

    /// Boundary indices incident to each region.
    pub fn region_boundaries(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.regions.len()];
        for &(r, b) in &self.incidence {
            out[r].push(b);
        }
        for v in &mut out {
            v.sort_unstable();
        }
        out
    }

    /// Region indices incident to each boundary.
    pub fn boundary_regions(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.boundaries.len()];
        for &(r, b) in &self.incidence {
            out[b].push(r);
        }
        for v in &mut out {
            v.sort_unstable();
        }
        out
    }

    /// Checks index ranges, qubit ranges, that boundaries are pairwise disjoint
    /// and that every boundary touches at least one region.
    pub fn check(&self, n: usize) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpec(format!("flat-region graph: {m}")));
        for r in &self.regions {
            r.qubits.check_range(n)?;
        }
        let mut owner = vec![usize::MAX; n];
        for (bi, b) in self.boundaries.iter().enumerate() {
            b.qubits.check_range(n)?;
            for &q in b.qubits.indices() {
                if owner[q] != usize::MAX {
                    return bad(format!(
                        "qubit {q} lies on boundaries {} and {bi}",
                        owner[q]
                    ));
                }
                owner[q] = bi;
            }
        }
        for &(r, b) in &self.incidence {
            if r >= self.regions.len() || b >= self.boundaries.len() {
                return bad(format!("incidence ({r},{b}) out of range"));
            }
        }
        for (bi, regs) in self.boundary_regions().iter().enumerate() {
            if regs.is_empty() {
                return bad(format!("boundary {bi} touches no region"));
            }
        }
        Ok(())
    }
}
