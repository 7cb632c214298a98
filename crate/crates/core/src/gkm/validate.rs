use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::GkmGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Reason {
    Disconnected,
    Containment,
    Dimension,
    GkmCondition,
    SelfLoop,
    EdgeCount,
    FiberMap,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::Disconnected => "DISCONNECTED",
            Reason::Containment => "CONTAINMENT",
            Reason::Dimension => "DIMENSION",
            Reason::GkmCondition => "GKM_CONDITION",
            Reason::SelfLoop => "SELF_LOOP",
            Reason::EdgeCount => "EDGE_COUNT",
            Reason::FiberMap => "FIBER_MAP",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationCheck {
    pub name: String,
    pub reason: Reason,
    pub passed: bool,
    pub advisory: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    /// Reasons of failed mandatory checks.
    pub fn failed_reasons(&self) -> Vec<Reason> {
        self.checks
            .iter()
            .filter(|c| !c.passed && !c.advisory)
            .map(|c| c.reason)
            .collect()
    }

    pub fn advisory_failures(&self) -> Vec<Reason> {
        self.checks
            .iter()
            .filter(|c| !c.passed && c.advisory)
            .map(|c| c.reason)
            .collect()
    }

    pub fn check(&self, reason: Reason) -> Option<&ValidationCheck> {
        self.checks.iter().find(|c| c.reason == reason)
    }
}

fn check(name: &str, reason: Reason, advisory: bool, details: Vec<String>) -> ValidationCheck {
    ValidationCheck {
        name: name.to_string(),
        reason,
        passed: details.is_empty(),
        advisory,
        details,
    }
}

/// Runs every structural check on the graph. Unknown references were already
/// rejected when the graph was built.
pub fn validate_graph(g: &GkmGraph) -> ValidationReport {
    let checks = vec![
        check("connected", Reason::Disconnected, false, connectivity(g)),
        check("isotropy_containment", Reason::Containment, false, containment(g)),
        check("isotropy_dimensions", Reason::Dimension, false, dimensions(g)),
        check("gkm_condition", Reason::GkmCondition, false, gkm_condition(g)),
        check("no_self_loops", Reason::SelfLoop, false, self_loops(g)),
        check("edges_per_vertex", Reason::EdgeCount, true, edge_count(g)),
        check("fiber_maps", Reason::FiberMap, false, fiber_maps(g)),
    ];
    let valid = checks.iter().all(|c| c.passed || c.advisory);
    ValidationReport { valid, checks }
}

fn connectivity(g: &GkmGraph) -> Vec<String> {
    let n = g.vertices().len();
    let mut adj = vec![Vec::new(); n];
    for e in g.edges() {
        let (s, t) = g.endpoints(e);
        adj[s].push(t);
        adj[t].push(s);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    let unreached: Vec<&str> = g
        .vertices()
        .iter()
        .zip(&seen)
        .filter(|(_, &s)| !s)
        .map(|(v, _)| v.id.as_str())
        .collect();
    if unreached.is_empty() {
        Vec::new()
    } else {
        vec![format!(
            "vertices not reachable from {:?}: {}",
            g.vertices()[0].id,
            unreached.join(", ")
        )]
    }
}

fn containment(g: &GkmGraph) -> Vec<String> {
    let mut out = Vec::new();
    for e in g.edges() {
        let (s, t) = g.endpoints(e);
        for &v in &[s, t] {
            let vertex = &g.vertices()[v];
            let contained = vertex.isotropy.contains(&e.isotropy).unwrap_or(false);
            if !contained {
                out.push(format!(
                    "edge {:?}: isotropy not contained in that of vertex {:?}",
                    e.id, vertex.id
                ));
            } else if e.isotropy.dim() + 1 != vertex.isotropy.dim() {
                out.push(format!(
                    "edge {:?}: isotropy has codimension {} in that of vertex {:?}, expected 1",
                    e.id,
                    vertex.isotropy.dim() - e.isotropy.dim(),
                    vertex.id
                ));
            }
        }
    }
    out
}

fn dimensions(g: &GkmGraph) -> Vec<String> {
    let mut out = Vec::new();
    let vertex_dims: BTreeSet<usize> = g.vertices().iter().map(|v| v.isotropy.dim()).collect();
    if vertex_dims.len() > 1 {
        out.push(format!("vertex isotropy dimensions differ: {vertex_dims:?}"));
    }
    let k = *vertex_dims.iter().next().expect("graph has vertices");
    for e in g.edges() {
        if e.isotropy.dim() + 1 != k {
            out.push(format!(
                "edge {:?}: isotropy dimension {}, expected {}",
                e.id,
                e.isotropy.dim(),
                k as i64 - 1
            ));
        }
    }
    out
}

fn gkm_condition(g: &GkmGraph) -> Vec<String> {
    let mut out = Vec::new();
    for (vi, v) in g.vertices().iter().enumerate() {
        let incident: Vec<_> = g
            .edges()
            .iter()
            .filter(|e| !e.is_self_loop())
            .filter(|e| {
                let (s, t) = g.endpoints(e);
                s == vi || t == vi
            })
            .collect();
        for (i, a) in incident.iter().enumerate() {
            for b in &incident[i + 1..] {
                if a.isotropy == b.isotropy {
                    out.push(format!(
                        "vertex {:?}: edges {:?} and {:?} have the same isotropy",
                        v.id, a.id, b.id
                    ));
                }
            }
        }
    }
    out
}

fn self_loops(g: &GkmGraph) -> Vec<String> {
    g.edges()
        .iter()
        .filter(|e| e.is_self_loop())
        .map(|e| format!("edge {:?} is a loop at {:?}", e.id, e.source))
        .collect()
}

/// In dimension 2n+1 with isolated closed orbits every vertex meets exactly
/// n edges, one per isotropy weight.
fn edge_count(g: &GkmGraph) -> Vec<String> {
    let (Some(dim), Some(1)) = (g.manifold_dim(), g.bottom_orbit_dim()) else {
        return Vec::new();
    };
    if dim % 2 == 0 {
        return vec![format!("manifold dimension {dim} is even")];
    }
    let n = (dim - 1) / 2;
    let mut degree = vec![0usize; g.vertices().len()];
    for e in g.edges() {
        let (s, t) = g.endpoints(e);
        degree[s] += 1;
        degree[t] += 1;
    }
    g.vertices()
        .iter()
        .zip(degree)
        .filter(|(_, d)| *d != n)
        .map(|(v, d)| format!("vertex {:?} meets {d} edges, expected {n}", v.id))
        .collect()
}

fn fiber_maps(g: &GkmGraph) -> Vec<String> {
    let mut out = Vec::new();
    for v in g.vertices() {
        if v.fiber.dim(0) == 0 {
            out.push(format!("vertex {:?}: fiber has no degree-0 class", v.id));
        }
    }
    for e in g.edges() {
        if e.edge_fiber.dim(0) == 0 {
            out.push(format!("edge {:?}: edge fiber has no degree-0 class", e.id));
        }
        let (s, t) = g.endpoints(e);
        for (label, map, v) in [
            ("pullback_source", &e.pullback_source, s),
            ("pullback_target", &e.pullback_target, t),
        ] {
            let vertex = &g.vertices()[v];
            if map.source() != &vertex.fiber && !map.source().same_dims(&vertex.fiber) {
                out.push(format!(
                    "edge {:?}: {label} does not start at the fiber of {:?}",
                    e.id, vertex.id
                ));
            }
            if !map.target().same_dims(&e.edge_fiber) {
                out.push(format!("edge {:?}: {label} does not land in the edge fiber", e.id));
            }
            for p in map.problems() {
                out.push(format!("edge {:?}: {label}: {p}", e.id));
            }
        }
    }
    out
}
