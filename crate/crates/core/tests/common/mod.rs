//! Independent oracles shared by the integration tests. Nothing here calls
//! into the elimination or restriction code of the library.
#![allow(dead_code)]

use gkm_core::exactlin::{canonical_subspace, q, MatrixQ, Rational, SubspaceQ};
use gkm_core::gkm::{GkmEdge, GkmGraph, GkmVertex};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// All exponent vectors of total degree `d` in `k` variables.
pub fn compositions(k: usize, d: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in compositions(k - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Dimension in cohomological degree `m` of `Q[x_0..x_n] / (x_0 ... x_n)`
/// with generators in degree 2: monomials missing at least one variable.
pub fn boundary_simplex_oracle(n: usize, m: usize) -> i64 {
    if m % 2 == 1 {
        return 0;
    }
    compositions(n + 1, m / 2)
        .iter()
        .filter(|e| e.contains(&0))
        .count() as i64
}

/// Truncated Cauchy product.
pub fn convolve(a: &[i64], b: &[i64], cutoff: usize) -> Vec<i64> {
    let mut out = vec![0; cutoff + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j <= cutoff {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Textbook Gauss-Jordan over Q: returns the rank and the reduced rows.
pub fn naive_rref(rows: &[Vec<Rational>], cols: usize) -> (usize, Vec<Vec<Rational>>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    (r, m)
}

pub fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=bound.max(1));
    Rational::new(num.into(), den.into())
}

/// An invertible matrix `L U` with unit diagonals and random rational
/// off-diagonal entries.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Rational>> {
    let mut l = vec![vec![Rational::zero(); n]; n];
    let mut u = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        l[i][i] = q(1);
        u[i][i] = q(rng.gen_range(1..=3)) * if rng.gen_bool(0.5) { q(1) } else { q(-1) };
        for j in 0..i {
            l[i][j] = random_rational(rng, 3);
        }
        for j in i + 1..n {
            u[i][j] = random_rational(rng, 3);
        }
    }
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i][j] += &l[i][k] * &u[k][j];
            }
        }
    }
    out
}

/// Same subspace, presented by a random recombination of its basis.
pub fn recombine(s: &SubspaceQ, rng: &mut ChaCha8Rng) -> SubspaceQ {
    let k = s.dim();
    let a = random_invertible(rng, k);
    let rows: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            (0..s.ambient_dim())
                .map(|c| (0..k).map(|j| &a[i][j] * s.basis().get(j, c)).sum())
                .collect()
        })
        .collect();
    canonical_subspace(&rows, s.ambient_dim()).unwrap()
}

/// The graph with every isotropy subspace replaced by a recombined spanning
/// set.
pub fn recombine_graph(g: &GkmGraph, rng: &mut ChaCha8Rng) -> GkmGraph {
    let vertices: Vec<GkmVertex> = g
        .vertices()
        .iter()
        .map(|v| GkmVertex {
            isotropy: recombine(&v.isotropy, rng),
            ..v.clone()
        })
        .collect();
    let edges: Vec<GkmEdge> = g
        .edges()
        .iter()
        .map(|e| GkmEdge {
            isotropy: recombine(&e.isotropy, rng),
            ..e.clone()
        })
        .collect();
    GkmGraph::new(g.rank(), vertices, edges)
        .unwrap()
        .with_manifold_dim(g.manifold_dim())
        .with_bottom_orbit_dim(g.bottom_orbit_dim())
}

pub fn matrix(rows: &[Vec<Rational>], cols: usize) -> MatrixQ {
    MatrixQ::from_rows(rows.to_vec(), cols).unwrap()
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
