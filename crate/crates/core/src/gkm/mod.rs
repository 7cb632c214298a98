//! GKM graphs: data model, validation and the kernel computation of
//! equivariant cohomology.
//!
//! A vertex carries its isotropy algebra `t_v` and the cohomology of its orbit
//! space `B_v/T` (a graded fiber, a single degree-0 class for isolated closed
//! orbits). An edge carries its isotropy algebra `t_e ⊂ t_v` together with the
//! fiber `H(L_e/T)` and the two pullbacks into it. Equivariant cohomology in
//! total degree m is the space of tuples `(f_v)`,
//! `f_v ∈ ⊕_{2d+q=m} S(t_v*)_d ⊗ fiber_v^q`, whose two pullbacks agree on every
//! edge after restricting polynomials to `t_e`.

mod cohomology;
mod validate;
mod wire;

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{shape, Result};
use crate::exactlin::{MatrixQ, SubspaceQ};

pub use cohomology::{
    class_product, equivariant_basis, equivariant_dims, equivariant_dims_with, satisfies_constraints,
    BlockView, EquivariantBasis, EquivariantClass, Parallelism, UnknownBlock, UnknownLayout,
};
pub use validate::{validate_graph, Reason, ValidationCheck, ValidationReport};
pub use wire::GraphWire;

/// Finite graded vector space given by its dimension in each degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedVS {
    dims: BTreeMap<usize, usize>,
    labels: BTreeMap<usize, Vec<String>>,
}

impl GradedVS {
    /// One-dimensional, concentrated in degree 0.
    pub fn point() -> Self {
        Self::new([(0, 1)])
    }

    /// Zero dimensions are dropped.
    pub fn new(dims: impl IntoIterator<Item = (usize, usize)>) -> Self {
        GradedVS {
            dims: dims.into_iter().filter(|&(_, d)| d > 0).collect(),
            labels: BTreeMap::new(),
        }
    }

    /// Dimensions listed by degree starting at 0, e.g. `[1, 2, 1]` for a
    /// genus-one surface.
    pub fn from_dims(by_degree: &[usize]) -> Self {
        Self::new(by_degree.iter().copied().enumerate())
    }

    pub fn with_labels(mut self, degree: usize, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim(degree) {
            return Err(shape(format!(
                "{} labels for a {}-dimensional degree-{degree} piece",
                labels.len(),
                self.dim(degree)
            )));
        }
        self.labels.insert(degree, labels);
        Ok(self)
    }

    pub fn labels(&self, degree: usize) -> Option<&[String]> {
        self.labels.get(&degree).map(Vec::as_slice)
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    /// Nonzero `(degree, dim)` pairs in increasing degree.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.dims.iter().map(|(&q, &d)| (q, d))
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_point(&self) -> bool {
        self.dims.len() == 1 && self.dim(0) == 1
    }

    pub fn is_even_supported(&self) -> bool {
        self.dims.keys().all(|q| q % 2 == 0)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.dims.keys().next_back().copied()
    }

    fn same_dims(&self, other: &GradedVS) -> bool {
        self.dims == other.dims
    }
}

/// Degree-preserving linear map between graded spaces, one block
/// (`target_dim x source_dim`) per degree where both sides are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedVS,
    target: GradedVS,
    blocks: BTreeMap<usize, MatrixQ>,
}

impl GradedMap {
    pub fn new(source: GradedVS, target: GradedVS, blocks: BTreeMap<usize, MatrixQ>) -> Self {
        GradedMap {
            source,
            target,
            blocks,
        }
    }

    pub fn identity(vs: &GradedVS) -> Self {
        let blocks = vs.iter().map(|(q, d)| (q, MatrixQ::identity(d))).collect();
        GradedMap {
            source: vs.clone(),
            target: vs.clone(),
            blocks,
        }
    }

    pub fn source(&self) -> &GradedVS {
        &self.source
    }

    pub fn target(&self) -> &GradedVS {
        &self.target
    }

    pub fn block(&self, degree: usize) -> Option<&MatrixQ> {
        self.blocks.get(&degree)
    }

    pub fn blocks(&self) -> &BTreeMap<usize, MatrixQ> {
        &self.blocks
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == Self::identity(&self.source)
    }

    /// Problems with the block layout; empty when well-formed.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (&q, m) in &self.blocks {
            let (s, t) = (self.source.dim(q), self.target.dim(q));
            if s == 0 || t == 0 {
                out.push(format!("block in degree {q} where source or target vanishes"));
            } else if m.rows() != t || m.cols() != s {
                out.push(format!(
                    "degree-{q} block is {}x{}, expected {t}x{s}",
                    m.rows(),
                    m.cols()
                ));
            }
        }
        for (q, s) in self.source.iter() {
            if self.target.dim(q) > 0 && s > 0 && !self.blocks.contains_key(&q) {
                out.push(format!("missing block in degree {q}"));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmVertex {
    pub id: String,
    pub isotropy: SubspaceQ,
    pub fiber: GradedVS,
}

impl GkmVertex {
    /// An isolated closed orbit: point fiber.
    pub fn point(id: impl Into<String>, isotropy: SubspaceQ) -> Self {
        GkmVertex {
            id: id.into(),
            isotropy,
            fiber: GradedVS::point(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmEdge {
    pub id: String,
    pub source: String,
    pub target: String,
    pub isotropy: SubspaceQ,
    pub edge_fiber: GradedVS,
    pub pullback_source: GradedMap,
    pub pullback_target: GradedMap,
}

impl GkmEdge {
    /// Edge between isolated orbits: point fibers, identity pullbacks.
    pub fn point(
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        isotropy: SubspaceQ,
    ) -> Self {
        let point = GradedVS::point();
        GkmEdge {
            id: id.into(),
            source: source.into(),
            target: target.into(),
            isotropy,
            pullback_source: GradedMap::identity(&point),
            pullback_target: GradedMap::identity(&point),
            edge_fiber: point,
        }
    }

    /// Single-map form: the edge fiber is the source fiber, its pullback is
    /// the identity, and `phi` (target fiber -> source fiber) plays the role
    /// of the target pullback.
    pub fn normalized(
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        isotropy: SubspaceQ,
        source_fiber: &GradedVS,
        phi: GradedMap,
    ) -> Self {
        GkmEdge {
            id: id.into(),
            source: source.into(),
            target: target.into(),
            isotropy,
            edge_fiber: source_fiber.clone(),
            pullback_source: GradedMap::identity(source_fiber),
            pullback_target: phi,
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmGraph {
    rank: usize,
    vertices: Vec<GkmVertex>,
    edges: Vec<GkmEdge>,
    manifold_dim: Option<usize>,
    bottom_orbit_dim: Option<usize>,
    index: HashMap<String, usize>,
}

impl GkmGraph {
    /// Checks identifiers and ambient dimensions; everything else is left to
    /// [`validate_graph`].
    pub fn new(rank: usize, vertices: Vec<GkmVertex>, edges: Vec<GkmEdge>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(shape("graph has no vertices"));
        }
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(shape(format!("duplicate vertex id {:?}", v.id)));
            }
            if v.isotropy.ambient_dim() != rank {
                return Err(shape(format!(
                    "vertex {:?}: isotropy lives in Q^{}, graph rank is {rank}",
                    v.id,
                    v.isotropy.ambient_dim()
                )));
            }
        }
        let mut edge_ids = HashSet::new();
        for e in &edges {
            if !edge_ids.insert(e.id.as_str()) {
                return Err(shape(format!("duplicate edge id {:?}", e.id)));
            }
            for end in [&e.source, &e.target] {
                if !index.contains_key(end) {
                    return Err(shape(format!("edge {:?} references unknown vertex {end:?}", e.id)));
                }
            }
            if e.isotropy.ambient_dim() != rank {
                return Err(shape(format!(
                    "edge {:?}: isotropy lives in Q^{}, graph rank is {rank}",
                    e.id,
                    e.isotropy.ambient_dim()
                )));
            }
        }
        Ok(GkmGraph {
            rank,
            vertices,
            edges,
            manifold_dim: None,
            bottom_orbit_dim: None,
            index,
        })
    }

    pub fn with_manifold_dim(mut self, dim: Option<usize>) -> Self {
        self.manifold_dim = dim;
        self
    }

    pub fn with_bottom_orbit_dim(mut self, dim: Option<usize>) -> Self {
        self.bottom_orbit_dim = dim;
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[GkmVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GkmEdge] {
        &self.edges
    }

    pub fn manifold_dim(&self) -> Option<usize> {
        self.manifold_dim
    }

    pub fn bottom_orbit_dim(&self) -> Option<usize> {
        self.bottom_orbit_dim
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn vertex(&self, id: &str) -> Option<&GkmVertex> {
        self.vertex_index(id).map(|i| &self.vertices[i])
    }

    pub fn endpoints(&self, e: &GkmEdge) -> (usize, usize) {
        (self.index[&e.source], self.index[&e.target])
    }

    pub fn has_point_fibers(&self) -> bool {
        self.vertices.iter().all(|v| v.fiber.is_point())
            && self.edges.iter().all(|e| e.edge_fiber.is_point())
    }

    pub fn fibers_even_supported(&self) -> bool {
        self.vertices.iter().all(|v| v.fiber.is_even_supported())
            && self.edges.iter().all(|e| e.edge_fiber.is_even_supported())
    }

    /// `sum_v dim H(B_v/T)`; the number of vertices for point fibers.
    pub fn total_fiber_dim(&self) -> usize {
        self.vertices.iter().map(|v| v.fiber.total_dim()).sum()
    }

    /// Same graph with every fiber collapsed to a point and identity
    /// pullbacks.
    pub fn skeleton(&self) -> GkmGraph {
        let vertices = self
            .vertices
            .iter()
            .map(|v| GkmVertex::point(v.id.clone(), v.isotropy.clone()))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| GkmEdge::point(e.id.clone(), e.source.clone(), e.target.clone(), e.isotropy.clone()))
            .collect();
        GkmGraph {
            rank: self.rank,
            vertices,
            edges,
            manifold_dim: self.manifold_dim,
            bottom_orbit_dim: self.bottom_orbit_dim,
            index: self.index.clone(),
        }
    }

    /// Default degree cutoff: `max(20, 2 * (vertex count + 2))`.
    pub fn default_max_degree(&self) -> usize {
        20.max(2 * (self.vertices.len() + 2))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: GraphWire = serde_json::from_str(text)?;
        wire.into_graph()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphWire::from_graph(self)).expect("graph wire form serializes")
    }
}
