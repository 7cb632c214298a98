//! Ready-made graphs for the standard examples.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{shape, Result};
use crate::exactlin::{canonical_subspace, q, MatrixQ, Rational, SubspaceQ};
use crate::gkm::{GkmEdge, GkmGraph, GkmVertex, GradedMap, GradedVS};
use crate::series::GysinData;

const STIEFEL_JSON: &str = include_str!("data/stiefel.json");

/// `{x_j = 0 for j in zeros}` inside `Q^rank`.
fn coordinate_subspace(rank: usize, zeros: &[usize]) -> SubspaceQ {
    let basis: Vec<Vec<Rational>> = (0..rank)
        .filter(|k| !zeros.contains(k))
        .map(|k| (0..rank).map(|i| q(i64::from(i == k))).collect())
        .collect();
    canonical_subspace(&basis, rank).expect("coordinate vectors have the right length")
}

fn simplex_with_fiber(n: usize, fiber: &GradedVS) -> Result<GkmGraph> {
    if n < 1 {
        return Err(shape(format!("simplex needs n >= 1, got {n}")));
    }
    let rank = n + 1;
    let vertices = (0..=n)
        .map(|j| GkmVertex {
            id: format!("v{j}"),
            isotropy: coordinate_subspace(rank, &[j]),
            fiber: fiber.clone(),
        })
        .collect();
    let mut edges = Vec::new();
    for j in 0..=n {
        for k in j + 1..=n {
            let t = coordinate_subspace(rank, &[j, k]);
            let (a, b) = (format!("v{j}"), format!("v{k}"));
            edges.push(GkmEdge::normalized(format!("{a}-{b}"), a, b, t, fiber, GradedMap::identity(fiber)));
        }
    }
    GkmGraph::new(rank, vertices, edges)
}

/// Ellipsoid `S^{2n+1}` with the standard `T^{n+1}`-action: the complete graph
/// on `n + 1` vertices, `t_j = {x_j = 0}`, `t_{jk} = {x_j = x_k = 0}`.
pub fn builtin_simplex(n: usize) -> Result<GkmGraph> {
    Ok(simplex_with_fiber(n, &GradedVS::point())?
        .with_manifold_dim(Some(2 * n + 1))
        .with_bottom_orbit_dim(Some(1)))
}

/// Ellipsoid bundle over a closed genus-`genus` surface X: the simplex
/// skeleton with every fiber `H(X)` and identity pullbacks.
pub fn builtin_fiber_join(n: usize, genus: usize) -> Result<GkmGraph> {
    let fiber = GradedVS::from_dims(&[1, 2 * genus, 1]);
    Ok(simplex_with_fiber(n, &fiber)?
        .with_manifold_dim(Some(2 * n + 3))
        .with_bottom_orbit_dim(Some(3)))
}

/// Boothby-Wang circle bundle over the Hirzebruch surface with the closed
/// orbit set consisting of two lens spaces `L(m,1)` and `L(2m,1)`, whose
/// Euler numbers `m` and `2m` do not enter the rational data. Both orbit
/// spaces have the rational cohomology of `S^2`.
pub fn builtin_hirzebruch(m: usize) -> Result<GkmGraph> {
    builtin_hirzebruch_scaled(m, q(1), q(1))
}

/// As [`builtin_hirzebruch`] with explicit degree-2 pullback scalars.
pub fn builtin_hirzebruch_scaled(m: usize, source_scalar: Rational, target_scalar: Rational) -> Result<GkmGraph> {
    if m < 1 {
        return Err(shape(format!("hirzebruch needs m >= 1, got {m}")));
    }
    let fiber = GradedVS::from_dims(&[1, 0, 1]);
    let line = |v: [i64; 2]| canonical_subspace(&[v.iter().map(|&x| q(x)).collect()], 2).expect("length 2");
    let vertices = vec![
        GkmVertex {
            id: "b1".into(),
            isotropy: line([1, -1]),
            fiber: fiber.clone(),
        },
        GkmVertex {
            id: "b2".into(),
            isotropy: line([0, 1]),
            fiber: fiber.clone(),
        },
    ];
    let pullback = |c: Rational| {
        let blocks: BTreeMap<usize, MatrixQ> = [(0, MatrixQ::identity(1)), (2, MatrixQ::identity(1).scale(&c))].into();
        GradedMap::new(fiber.clone(), fiber.clone(), blocks)
    };
    let edge = GkmEdge {
        id: "b1-b2".into(),
        source: "b1".into(),
        target: "b2".into(),
        isotropy: SubspaceQ::zero(2),
        edge_fiber: fiber.clone(),
        pullback_source: pullback(source_scalar),
        pullback_target: pullback(target_scalar),
    };
    Ok(GkmGraph::new(2, vertices, vec![edge])?.with_manifold_dim(Some(5)))
}

/// `V_2(R^5)` with the `T^3`-action generated by rotations of the `e1e2` and
/// `e3e4` planes and rotation of the frame. Four closed orbits.
pub fn builtin_stiefel() -> GkmGraph {
    GkmGraph::from_json(STIEFEL_JSON).expect("frozen graph parses")
}

/// Gysin data for the Hirzebruch example: `delta_0` injective, `delta_1`
/// surjective.
pub fn hirzebruch_gysin() -> GysinData {
    GysinData {
        basic_dims: vec![1, 2, 1],
        euler_mult: vec![
            MatrixQ::from_i64(&[&[1], &[0]], 1).expect("shape"),
            MatrixQ::from_i64(&[&[1, 0]], 2).expect("shape"),
        ],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExampleSpec {
    Simplex { n: usize },
    FiberJoin { n: usize, genus: usize },
    Hirzebruch { m: usize },
    Stiefel,
}

impl ExampleSpec {
    pub fn graph(&self) -> Result<GkmGraph> {
        match *self {
            ExampleSpec::Simplex { n } => builtin_simplex(n),
            ExampleSpec::FiberJoin { n, genus } => builtin_fiber_join(n, genus),
            ExampleSpec::Hirzebruch { m } => builtin_hirzebruch(m),
            ExampleSpec::Stiefel => Ok(builtin_stiefel()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ExampleSpec::Simplex { .. } => "simplex",
            ExampleSpec::FiberJoin { .. } => "fiber_join",
            ExampleSpec::Hirzebruch { .. } => "hirzebruch",
            ExampleSpec::Stiefel => "stiefel",
        }
    }
}

impl fmt::Display for ExampleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleSpec::Simplex { n } => write!(f, "simplex(n={n})"),
            ExampleSpec::FiberJoin { n, genus } => write!(f, "fiber_join(n={n}, genus={genus})"),
            ExampleSpec::Hirzebruch { m } => write!(f, "hirzebruch(m={m})"),
            ExampleSpec::Stiefel => f.write_str("stiefel"),
        }
    }
}

/// Example names accepted by [`ExampleSpec::from_str`]; parameters take
/// their smallest legal values.
impl FromStr for ExampleSpec {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "simplex" => Ok(ExampleSpec::Simplex { n: 1 }),
            "fiber_join" => Ok(ExampleSpec::FiberJoin { n: 1, genus: 0 }),
            "hirzebruch" => Ok(ExampleSpec::Hirzebruch { m: 1 }),
            "stiefel" => Ok(ExampleSpec::Stiefel),
            other => Err(shape(format!(
                "unknown example {other:?}; expected simplex, fiber_join, hirzebruch or stiefel"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkm::validate_graph;

    #[test]
    fn simplex_shapes() {
        for n in 1..=4 {
            let g = builtin_simplex(n).unwrap();
            assert_eq!(g.vertices().len(), n + 1);
            assert_eq!(g.edges().len(), n * (n + 1) / 2);
            let r = validate_graph(&g);
            assert!(r.valid && r.advisory_failures().is_empty());
        }
        assert!(builtin_simplex(0).is_err());
    }

    #[test]
    fn simplex_two_isotropies() {
        let g = builtin_simplex(2).unwrap();
        assert_eq!(g.vertices()[0].isotropy, coordinate_subspace(3, &[0]));
        assert_eq!(g.vertices()[0].isotropy.basis().row_vecs(), vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
    }

    #[test]
    fn others_validate() {
        for g in [
            builtin_fiber_join(2, 1).unwrap(),
            builtin_hirzebruch(3).unwrap(),
            builtin_stiefel(),
        ] {
            let r = validate_graph(&g);
            assert!(r.valid, "{r:?}");
        }
        assert_eq!(builtin_stiefel().vertices().len(), 4);
        assert!(builtin_hirzebruch(0).is_err());
    }

    #[test]
    fn spec_names() {
        assert_eq!("fiber-join".parse::<ExampleSpec>().unwrap().name(), "fiber_join");
        assert!("torus".parse::<ExampleSpec>().is_err());
    }
}
