//! JSON form of a [`GkmGraph`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GkmEdge, GkmGraph, GkmVertex, GradedMap, GradedVS};
use crate::error::{shape, Result};
use crate::exactlin::{canonical_subspace, MatrixQ, SubspaceQ};
use crate::json::{matrix_to_json, vec_from_json, MatrixJson};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberWire {
    /// `[degree, dim]` pairs.
    pub dims: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexWire {
    pub id: String,
    pub isotropy: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber: Option<FiberWire>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeWire {
    pub id: String,
    pub source: String,
    pub target: String,
    pub isotropy: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_fiber: Option<FiberWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pullback_source: Option<BTreeMap<String, MatrixJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pullback_target: Option<BTreeMap<String, MatrixJson>>,
}

/// Serialized graph. Missing fibers are point fibers, a missing edge fiber is
/// the source vertex fiber, and missing pullbacks are identities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphWire {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifold_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom_orbit_dim: Option<usize>,
    pub vertices: Vec<VertexWire>,
    #[serde(default)]
    pub edges: Vec<EdgeWire>,
}

fn parse_degree(key: &str) -> Result<usize> {
    key.trim()
        .parse()
        .map_err(|_| shape(format!("degree key {key:?} is not a nonnegative integer")))
}

fn subspace(rows: &MatrixJson, rank: usize, what: &str) -> Result<SubspaceQ> {
    let vectors: Vec<_> = rows.iter().map(|r| vec_from_json(r)).collect();
    canonical_subspace(&vectors, rank).map_err(|e| shape(format!("{what}: {e}")))
}

fn fiber_from_wire(w: &FiberWire, what: &str) -> Result<GradedVS> {
    let mut dims = BTreeMap::new();
    for &(q, d) in &w.dims {
        if dims.insert(q, d).is_some() {
            return Err(shape(format!("{what}: degree {q} listed twice")));
        }
    }
    let mut vs = GradedVS::new(dims);
    for (key, labels) in &w.labels {
        vs = vs
            .with_labels(parse_degree(key)?, labels.clone())
            .map_err(|e| shape(format!("{what}: {e}")))?;
    }
    Ok(vs)
}

fn fiber_to_wire(vs: &GradedVS) -> FiberWire {
    FiberWire {
        dims: vs.iter().collect(),
        labels: vs
            .labels
            .iter()
            .map(|(q, l)| (q.to_string(), l.clone()))
            .collect(),
    }
}

/// Blocks are taken as given; their shapes are judged by validation.
fn map_from_wire(
    blocks: &BTreeMap<String, MatrixJson>,
    source: &GradedVS,
    target: &GradedVS,
    what: &str,
) -> Result<GradedMap> {
    let mut out = BTreeMap::new();
    for (key, m) in blocks {
        let q = parse_degree(key)?;
        let cols = m.first().map_or(source.dim(q), Vec::len);
        let rows = m.iter().map(|r| vec_from_json(r)).collect();
        let block = MatrixQ::from_rows(rows, cols).map_err(|e| shape(format!("{what}, degree {q}: {e}")))?;
        if out.insert(q, block).is_some() {
            return Err(shape(format!("{what}: degree {q} listed twice")));
        }
    }
    Ok(GradedMap::new(source.clone(), target.clone(), out))
}

/// Identity blocks on every degree of `target`. When `source` has different
/// dimensions there is no identity, and the stray blocks make validation
/// report a malformed fiber map.
fn default_map(source: &GradedVS, target: &GradedVS) -> GradedMap {
    let blocks = target
        .iter()
        .map(|(q, d)| (q, MatrixQ::identity(d)))
        .collect();
    GradedMap::new(source.clone(), target.clone(), blocks)
}

fn map_to_wire(m: &GradedMap) -> BTreeMap<String, MatrixJson> {
    m.blocks()
        .iter()
        .map(|(q, b)| (q.to_string(), matrix_to_json(b)))
        .collect()
}

impl GraphWire {
    pub fn into_graph(self) -> Result<GkmGraph> {
        let rank = self.rank;
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let isotropy = subspace(&v.isotropy, rank, &format!("vertex {:?} isotropy", v.id))?;
            let fiber = match &v.fiber {
                Some(f) => fiber_from_wire(f, &format!("vertex {:?} fiber", v.id))?,
                None => GradedVS::point(),
            };
            vertices.push(GkmVertex {
                id: v.id.clone(),
                isotropy,
                fiber,
            });
        }
        let fiber_of = |id: &str| vertices.iter().find(|v| v.id == id).map(|v| v.fiber.clone());
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let what = format!("edge {:?}", e.id);
            let isotropy = subspace(&e.isotropy, rank, &format!("{what} isotropy"))?;
            let (Some(fs), Some(ft)) = (fiber_of(&e.source), fiber_of(&e.target)) else {
                // Unknown endpoints are reported by `GkmGraph::new`.
                edges.push(GkmEdge::point(e.id.clone(), e.source.clone(), e.target.clone(), isotropy));
                continue;
            };
            let edge_fiber = match &e.edge_fiber {
                Some(f) => fiber_from_wire(f, &format!("{what} edge_fiber"))?,
                None => fs.clone(),
            };
            let pullback_source = match &e.pullback_source {
                Some(b) => map_from_wire(b, &fs, &edge_fiber, &format!("{what} pullback_source"))?,
                None => default_map(&fs, &edge_fiber),
            };
            let pullback_target = match &e.pullback_target {
                Some(b) => map_from_wire(b, &ft, &edge_fiber, &format!("{what} pullback_target"))?,
                None => default_map(&ft, &edge_fiber),
            };
            edges.push(GkmEdge {
                id: e.id.clone(),
                source: e.source.clone(),
                target: e.target.clone(),
                isotropy,
                edge_fiber,
                pullback_source,
                pullback_target,
            });
        }
        Ok(GkmGraph::new(rank, vertices, edges)?
            .with_manifold_dim(self.manifold_dim)
            .with_bottom_orbit_dim(self.bottom_orbit_dim))
    }

    pub fn from_graph(g: &GkmGraph) -> Self {
        let vertices = g
            .vertices()
            .iter()
            .map(|v| VertexWire {
                id: v.id.clone(),
                isotropy: matrix_to_json(v.isotropy.basis()),
                fiber: (!v.fiber.is_point() || !v.fiber.labels.is_empty()).then(|| fiber_to_wire(&v.fiber)),
            })
            .collect();
        let edges = g
            .edges()
            .iter()
            .map(|e| {
                let (s, t) = g.endpoints(e);
                let (fs, ft) = (&g.vertices()[s].fiber, &g.vertices()[t].fiber);
                let implicit = |m: &GradedMap, from: &GradedVS| *m == default_map(from, &e.edge_fiber);
                EdgeWire {
                    id: e.id.clone(),
                    source: e.source.clone(),
                    target: e.target.clone(),
                    isotropy: matrix_to_json(e.isotropy.basis()),
                    edge_fiber: (e.edge_fiber != *fs).then(|| fiber_to_wire(&e.edge_fiber)),
                    pullback_source: (!implicit(&e.pullback_source, fs)).then(|| map_to_wire(&e.pullback_source)),
                    pullback_target: (!implicit(&e.pullback_target, ft)).then(|| map_to_wire(&e.pullback_target)),
                }
            })
            .collect();
        GraphWire {
            rank: g.rank(),
            manifold_dim: g.manifold_dim(),
            bottom_orbit_dim: g.bottom_orbit_dim(),
            vertices,
            edges,
        }
    }
}
