use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{validate_graph, GkmGraph};
use crate::error::{shape, Error, Result};
use crate::exactlin::{dense_from_sparse, Rational, SparseEchelon, SparseVec};
use crate::series::DegreeSeries;
use crate::symalg::{multiply_homogeneous, sym_dim, RestrictionCache};

/// How independent degrees are scheduled. Results are identical either way.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    #[default]
    Rayon,
}

/// One summand `S(t_v*)_d ⊗ fiber_v^q` of the unknown space, occupying
/// columns `offset .. offset + poly_dim * fiber_dim`. Column
/// `offset + i * fiber_dim + a` pairs monomial `i` with fiber basis vector `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknownBlock {
    pub vertex: usize,
    pub poly_degree: usize,
    pub fiber_degree: usize,
    pub offset: usize,
    pub poly_dim: usize,
    pub fiber_dim: usize,
}

impl UnknownBlock {
    pub fn len(&self) -> usize {
        self.poly_dim * self.fiber_dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Column layout of the unknowns in one total degree: vertices in graph
/// order, then increasing polynomial degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknownLayout {
    pub degree: usize,
    pub blocks: Vec<UnknownBlock>,
    pub len: usize,
}

impl UnknownLayout {
    pub fn new(g: &GkmGraph, m: usize) -> Self {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for (vi, v) in g.vertices().iter().enumerate() {
            for d in 0..=m / 2 {
                let fiber_dim = v.fiber.dim(m - 2 * d);
                let poly_dim = sym_dim(v.isotropy.dim(), d);
                if fiber_dim == 0 || poly_dim == 0 {
                    continue;
                }
                blocks.push(UnknownBlock {
                    vertex: vi,
                    poly_degree: d,
                    fiber_degree: m - 2 * d,
                    offset,
                    poly_dim,
                    fiber_dim,
                });
                offset += poly_dim * fiber_dim;
            }
        }
        UnknownLayout {
            degree: m,
            blocks,
            len: offset,
        }
    }

    pub fn find(&self, vertex: usize, poly_degree: usize) -> Option<&UnknownBlock> {
        self.blocks
            .iter()
            .find(|b| b.vertex == vertex && b.poly_degree == poly_degree)
    }
}

/// Rows of the constraint map in degree `m`, each sorted by column.
fn constraint_rows(g: &GkmGraph, m: usize, layout: &UnknownLayout, cache: &RestrictionCache) -> Result<Vec<SparseVec>> {
    let mut rows = Vec::new();
    for e in g.edges() {
        let (s, t) = g.endpoints(e);
        for d in 0..=m / 2 {
            let q = m - 2 * d;
            let fe = e.edge_fiber.dim(q);
            let pe = sym_dim(e.isotropy.dim(), d);
            if fe == 0 || pe == 0 {
                continue;
            }
            let mut block_rows: Vec<SparseVec> = vec![Vec::new(); pe * fe];
            for (v, pullback, sign) in [(s, &e.pullback_source, 1i64), (t, &e.pullback_target, -1)] {
                let Some(unknowns) = layout.find(v, d) else { continue };
                let Some(p) = pullback.block(q) else { continue };
                let r = cache.get(&g.vertices()[v].isotropy, &e.isotropy, d)?;
                let r = &r.matrix;
                let sign = Rational::from_integer(sign.into());
                let fv = unknowns.fiber_dim;
                for i in 0..pe {
                    for j in 0..r.cols() {
                        let rij = r.get(i, j);
                        if rij.is_zero() {
                            continue;
                        }
                        for a in 0..fe {
                            for b in 0..fv {
                                let pab = p.get(a, b);
                                if pab.is_zero() {
                                    continue;
                                }
                                let col = unknowns.offset + j * fv + b;
                                block_rows[i * fe + a].push((col, &sign * rij * pab));
                            }
                        }
                    }
                }
            }
            for mut row in block_rows {
                row.sort_by_key(|(c, _)| *c);
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

fn require_valid(g: &GkmGraph) -> Result<()> {
    let report = validate_graph(g);
    if report.valid {
        Ok(())
    } else {
        Err(Error::Validation {
            reasons: report.failed_reasons(),
        })
    }
}

fn kernel_dim(g: &GkmGraph, m: usize, cache: &RestrictionCache) -> Result<usize> {
    let layout = UnknownLayout::new(g, m);
    let mut ech = SparseEchelon::new(layout.len);
    for row in constraint_rows(g, m, &layout, cache)? {
        ech.insert(row);
    }
    Ok(layout.len - ech.rank())
}

/// Dimensions of equivariant cohomology in total degrees `0..=max_degree`.
pub fn equivariant_dims(g: &GkmGraph, max_degree: usize) -> Result<DegreeSeries> {
    equivariant_dims_with(g, max_degree, Parallelism::default())
}

pub fn equivariant_dims_with(g: &GkmGraph, max_degree: usize, parallelism: Parallelism) -> Result<DegreeSeries> {
    require_valid(g)?;
    let cache = RestrictionCache::new();
    let dims: Vec<usize> = match parallelism {
        Parallelism::Sequential => (0..=max_degree)
            .map(|m| kernel_dim(g, m, &cache))
            .collect::<Result<_>>()?,
        // Largest degrees first: they dominate the running time.
        Parallelism::Rayon => {
            let mut out: Vec<(usize, usize)> = (0..=max_degree)
                .rev()
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|m| kernel_dim(g, m, &cache).map(|k| (m, k)))
                .collect::<Result<_>>()?;
            out.sort_unstable();
            out.into_iter().map(|(_, k)| k).collect()
        }
    };
    Ok(DegreeSeries::new(dims.into_iter().map(|k| k as i64).collect(), max_degree))
}

/// The coefficients of one unknown block inside a kernel vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockView<'a> {
    pub vertex: &'a str,
    pub block: &'a UnknownBlock,
    /// `poly_dim * fiber_dim` coefficients, monomial-major.
    pub coeffs: &'a [Rational],
}

/// A homogeneous element of the unknown space of total degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantClass {
    pub degree: usize,
    pub coords: Vec<Rational>,
}

/// Kernel basis in one degree, in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct EquivariantBasis {
    pub layout: UnknownLayout,
    pub vectors: Vec<EquivariantClass>,
}

impl EquivariantBasis {
    pub fn degree(&self) -> usize {
        self.layout.degree
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn blocks<'a>(&'a self, g: &'a GkmGraph, i: usize) -> Vec<BlockView<'a>> {
        let coords = &self.vectors[i].coords;
        self.layout
            .blocks
            .iter()
            .map(|b| BlockView {
                vertex: &g.vertices()[b.vertex].id,
                block: b,
                coeffs: &coords[b.offset..b.offset + b.len()],
            })
            .collect()
    }

    /// Whether `class` lies in the span of the basis.
    pub fn contains(&self, class: &EquivariantClass) -> bool {
        if class.degree != self.degree() || class.coords.len() != self.layout.len {
            return false;
        }
        let mut ech = SparseEchelon::new(self.layout.len);
        for v in &self.vectors {
            ech.insert(sparse(&v.coords));
        }
        !ech.insert(sparse(&class.coords))
    }
}

fn sparse(v: &[Rational]) -> SparseVec {
    crate::exactlin::sparse_from_dense(v)
}

pub fn equivariant_basis(g: &GkmGraph, m: usize) -> Result<EquivariantBasis> {
    require_valid(g)?;
    let cache = RestrictionCache::new();
    let layout = UnknownLayout::new(g, m);
    let mut ech = SparseEchelon::new(layout.len);
    for row in constraint_rows(g, m, &layout, &cache)? {
        ech.insert(row);
    }
    let kernel = dense_from_sparse(&ech.kernel(), layout.len);
    let vectors = (0..kernel.rows())
        .map(|i| EquivariantClass {
            degree: m,
            coords: kernel.row(i).to_vec(),
        })
        .collect();
    Ok(EquivariantBasis { layout, vectors })
}

/// Whether every edge constraint vanishes on `class`.
pub fn satisfies_constraints(g: &GkmGraph, class: &EquivariantClass) -> Result<bool> {
    let layout = UnknownLayout::new(g, class.degree);
    if class.coords.len() != layout.len {
        return Err(shape(format!(
            "class has {} coordinates, degree {} needs {}",
            class.coords.len(),
            class.degree,
            layout.len
        )));
    }
    let cache = RestrictionCache::new();
    let rows = constraint_rows(g, class.degree, &layout, &cache)?;
    Ok(rows.iter().all(|row| {
        row.iter()
            .fold(Rational::zero(), |acc, (c, v)| acc + v * &class.coords[*c])
            .is_zero()
    }))
}

/// Componentwise product of two kernel elements of a graph with point
/// fibers.
pub fn class_product(g: &GkmGraph, a: &EquivariantClass, b: &EquivariantClass) -> Result<EquivariantClass> {
    if !g.has_point_fibers() {
        return Err(Error::UnsupportedRingStructure(
            "products are only defined for point fibers".into(),
        ));
    }
    require_valid(g)?;
    for (name, c) in [("left", a), ("right", b)] {
        if c.degree % 2 == 1 {
            return Err(shape(format!("{name} factor has odd degree {}", c.degree)));
        }
        if !satisfies_constraints(g, c)? {
            return Err(shape(format!("{name} factor violates the edge constraints")));
        }
    }
    let (p, q) = (a.degree / 2, b.degree / 2);
    let (la, lb) = (UnknownLayout::new(g, a.degree), UnknownLayout::new(g, b.degree));
    let out_layout = UnknownLayout::new(g, a.degree + b.degree);
    let mut coords = vec![Rational::zero(); out_layout.len];
    for (vi, v) in g.vertices().iter().enumerate() {
        let (Some(ba), Some(bb), Some(bo)) = (la.find(vi, p), lb.find(vi, q), out_layout.find(vi, p + q)) else {
            continue;
        };
        let prod = multiply_homogeneous(
            v.isotropy.dim(),
            &a.coords[ba.offset..ba.offset + ba.len()],
            p,
            &b.coords[bb.offset..bb.offset + bb.len()],
            q,
        );
        coords[bo.offset..bo.offset + bo.len()].clone_from_slice(&prod);
    }
    let product = EquivariantClass {
        degree: a.degree + b.degree,
        coords,
    };
    assert!(
        satisfies_constraints(g, &product)?,
        "product of kernel elements left the kernel"
    );
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{canonical_subspace, q, SubspaceQ};
    use crate::gkm::{GkmEdge, GkmVertex};

    fn span(rows: &[&[i64]], n: usize) -> SubspaceQ {
        let v: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        canonical_subspace(&v, n).unwrap()
    }

    fn s3() -> GkmGraph {
        GkmGraph::new(
            2,
            vec![
                GkmVertex::point("v0", span(&[&[0, 1]], 2)),
                GkmVertex::point("v1", span(&[&[1, 0]], 2)),
            ],
            vec![GkmEdge::point("v0-v1", "v0", "v1", SubspaceQ::zero(2))],
        )
        .unwrap()
    }

    #[test]
    fn three_sphere_dims() {
        let d = equivariant_dims(&s3(), 8).unwrap();
        assert_eq!(d.coeffs(), &[1, 0, 2, 0, 2, 0, 2, 0, 2]);
        let seq = equivariant_dims_with(&s3(), 8, Parallelism::Sequential).unwrap();
        assert_eq!(seq, d);
    }

    #[test]
    fn single_vertex() {
        let g = GkmGraph::new(2, vec![GkmVertex::point("v", span(&[&[1, 1]], 2))], vec![]).unwrap();
        assert_eq!(equivariant_dims(&g, 6).unwrap().coeffs(), &[1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn basis_in_low_degrees() {
        let g = s3();
        let b0 = equivariant_basis(&g, 0).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(b0.vectors[0].coords, vec![q(1), q(1)]);
        let b2 = equivariant_basis(&g, 2).unwrap();
        assert_eq!(b2.len(), 2);
        let views = b2.blocks(&g, 0);
        assert_eq!(views.len(), 2);
        assert_eq!(views[0].vertex, "v0");
        assert!(equivariant_basis(&g, 3).unwrap().is_empty());
    }

    #[test]
    fn products_on_the_three_sphere() {
        let g = s3();
        let one = equivariant_basis(&g, 0).unwrap().vectors.remove(0);
        let u = EquivariantClass {
            degree: 2,
            coords: vec![q(1), q(0)],
        };
        assert_eq!(class_product(&g, &one, &u).unwrap(), u);
        let uu = class_product(&g, &u, &u).unwrap();
        assert_eq!(uu.coords, vec![q(1), q(0)]);
        assert!(equivariant_basis(&g, 4).unwrap().contains(&uu));
    }

    #[test]
    fn invalid_graph_is_rejected() {
        let g = GkmGraph::new(
            2,
            vec![
                GkmVertex::point("a", span(&[&[0, 1]], 2)),
                GkmVertex::point("b", span(&[&[1, 0]], 2)),
            ],
            vec![],
        )
        .unwrap();
        match equivariant_dims(&g, 4) {
            Err(Error::Validation { reasons }) => assert_eq!(reasons, vec![crate::gkm::Reason::Disconnected]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_kernel_factor_is_rejected() {
        let g = s3();
        let bad = EquivariantClass {
            degree: 0,
            coords: vec![q(1), q(0)],
        };
        assert!(class_product(&g, &bad, &bad).is_err());
    }
}
