//! Moment polytopes of contact toric manifolds of Reeb type and their
//! one-skeleta as GKM graphs. Everything is combinatorial: facet incidence is
//! part of the input and no convex hulls are computed.

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{shape, Error, Result};
use crate::exactlin::{canonical_subspace, Rational};
use crate::gkm::{GkmEdge, GkmGraph, GkmVertex};
use crate::json::{vec_from_json, vec_to_json, VecJson};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeVertex {
    pub id: String,
    pub coords: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentPolytope {
    pub rank: usize,
    pub vertices: Vec<PolytopeVertex>,
    pub facets: Vec<Facet>,
}

#[derive(Serialize, Deserialize)]
struct VertexWire {
    id: String,
    coords: VecJson,
}

#[derive(Serialize, Deserialize)]
struct FacetWire {
    normal: VecJson,
    vertices: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PolytopeWire {
    rank: usize,
    vertices: Vec<VertexWire>,
    facets: Vec<FacetWire>,
}

impl MomentPolytope {
    pub fn from_json(text: &str) -> Result<Self> {
        let w: PolytopeWire = serde_json::from_str(text)?;
        let p = MomentPolytope {
            rank: w.rank,
            vertices: w
                .vertices
                .into_iter()
                .map(|v| PolytopeVertex {
                    id: v.id,
                    coords: vec_from_json(&v.coords),
                })
                .collect(),
            facets: w
                .facets
                .into_iter()
                .map(|f| Facet {
                    normal: vec_from_json(&f.normal),
                    vertices: f.vertices,
                })
                .collect(),
        };
        p.check_shape()?;
        Ok(p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let w = PolytopeWire {
            rank: self.rank,
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexWire {
                    id: v.id.clone(),
                    coords: vec_to_json(&v.coords),
                })
                .collect(),
            facets: self
                .facets
                .iter()
                .map(|f| FacetWire {
                    normal: vec_to_json(&f.normal),
                    vertices: f.vertices.clone(),
                })
                .collect(),
        };
        serde_json::to_value(w).expect("polytope serializes")
    }

    fn check_shape(&self) -> Result<()> {
        if self.rank < 2 {
            return Err(shape(format!("polytope rank must be at least 2, got {}", self.rank)));
        }
        let mut ids = HashSet::new();
        for v in &self.vertices {
            if !ids.insert(v.id.as_str()) {
                return Err(shape(format!("duplicate vertex id {:?}", v.id)));
            }
            if v.coords.len() != self.rank {
                return Err(shape(format!(
                    "vertex {:?} has {} coordinates, rank is {}",
                    v.id,
                    v.coords.len(),
                    self.rank
                )));
            }
        }
        for (i, f) in self.facets.iter().enumerate() {
            if f.normal.len() != self.rank {
                return Err(shape(format!(
                    "facet {i} normal has {} entries, rank is {}",
                    f.normal.len(),
                    self.rank
                )));
            }
            if let Some(bad) = f.vertices.iter().find(|v| !ids.contains(v.as_str())) {
                return Err(shape(format!("facet {i} references unknown vertex {bad:?}")));
            }
        }
        Ok(())
    }

    /// Affine dimension `n = rank - 1` of the polytope.
    pub fn dim(&self) -> usize {
        self.rank - 1
    }

    /// Facet indices through each vertex.
    fn incidence(&self) -> Vec<BTreeSet<usize>> {
        self.vertices
            .iter()
            .map(|v| {
                self.facets
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.vertices.contains(&v.id))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect()
    }
}

/// One-skeleton of a simple polytope: `t_v` is spanned by the normals of the
/// facets through `v`, and two vertices sharing exactly `n - 1` facets are
/// joined by an edge whose isotropy is spanned by those normals.
pub fn polytope_skeleton(p: &MomentPolytope) -> Result<GkmGraph> {
    p.check_shape()?;
    let n = p.dim();
    let incidence = p.incidence();
    for (v, facets) in p.vertices.iter().zip(&incidence) {
        if facets.len() != n {
            return Err(Error::Simplicity(format!(
                "vertex {:?} lies on {} facets, expected {n}",
                v.id,
                facets.len()
            )));
        }
    }
    let span = |facets: &BTreeSet<usize>| {
        let normals: Vec<Vec<Rational>> = facets.iter().map(|&i| p.facets[i].normal.clone()).collect();
        canonical_subspace(&normals, p.rank)
    };
    let mut vertices = Vec::with_capacity(p.vertices.len());
    for (v, facets) in p.vertices.iter().zip(&incidence) {
        let t = span(facets)?;
        if t.dim() != n {
            return Err(Error::IsotropyRank(format!(
                "normals at vertex {:?} span a {}-dimensional space, expected {n}",
                v.id,
                t.dim()
            )));
        }
        vertices.push(GkmVertex::point(v.id.clone(), t));
    }
    let mut edges = Vec::new();
    for i in 0..p.vertices.len() {
        for j in i + 1..p.vertices.len() {
            let shared: BTreeSet<usize> = incidence[i].intersection(&incidence[j]).copied().collect();
            if shared.len() + 1 != n {
                continue;
            }
            let t = span(&shared)?;
            if t.dim() + 1 != n {
                return Err(Error::IsotropyRank(format!(
                    "normals along edge {}-{} span a {}-dimensional space, expected {}",
                    p.vertices[i].id,
                    p.vertices[j].id,
                    t.dim(),
                    n - 1
                )));
            }
            let (a, b) = (&p.vertices[i].id, &p.vertices[j].id);
            edges.push(GkmEdge::point(format!("{a}-{b}"), a.clone(), b.clone(), t));
        }
    }
    Ok(GkmGraph::new(p.rank, vertices, edges)?
        .with_manifold_dim(Some(2 * n + 1))
        .with_bottom_orbit_dim(Some(1)))
}

/// The simplex with vertices `e_j / a_j` in `Q^{n+1}`, facet `j` having
/// normal `e_j` and containing every vertex but `v_j`.
pub fn simplex_polytope(n: usize, weights: &[Rational]) -> Result<MomentPolytope> {
    if n < 1 {
        return Err(shape("simplex dimension must be at least 1"));
    }
    if weights.len() != n + 1 {
        return Err(shape(format!("expected {} weights, got {}", n + 1, weights.len())));
    }
    if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
        return Err(shape(format!("weights must be positive, got {w}")));
    }
    let unit = |j: usize, c: Rational| {
        let mut v = vec![Rational::zero(); n + 1];
        v[j] = c;
        v
    };
    let vertices = (0..=n)
        .map(|j| PolytopeVertex {
            id: format!("v{j}"),
            coords: unit(j, weights[j].recip()),
        })
        .collect();
    let facets = (0..=n)
        .map(|j| Facet {
            normal: unit(j, Rational::one()),
            vertices: (0..=n).filter(|&k| k != j).map(|k| format!("v{k}")).collect(),
        })
        .collect();
    Ok(MomentPolytope {
        rank: n + 1,
        vertices,
        facets,
    })
}
