//! Graded pieces of symmetric algebras S(V*) over rational subspaces.
//!
//! A subspace V of Q^r is identified with Q^dim V through its canonical rref
//! basis, and S(V*) is the polynomial ring in the dual coordinates. A
//! polynomial of degree d sits in cohomological degree 2d. Restricting along
//! an inclusion W ⊆ V substitutes, for every dual coordinate of V, the linear
//! form it induces on W.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{MatrixQ, Rational, SubspaceQ};

/// `binomial(d + k - 1, k - 1)`, the number of degree-`d` monomials in `k`
/// variables. No variables leaves only the constants.
pub fn sym_dim(var_count: usize, d: usize) -> usize {
    if var_count == 0 {
        return usize::from(d == 0);
    }
    let (n, k) = (d + var_count - 1, var_count - 1);
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1)) as usize
}

pub type Exponent = Vec<u32>;

/// Degree-`d` monomials in `var_count` variables, lexicographically
/// descending (`x1^d` first).
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    var_count: usize,
    degree: usize,
    monomials: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl MonomialBasis {
    pub fn new(var_count: usize, degree: usize) -> Self {
        let mut monomials = Vec::with_capacity(sym_dim(var_count, degree));
        let mut current = vec![0u32; var_count];
        fill_monomials(&mut current, 0, degree as u32, &mut monomials);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialBasis {
            var_count,
            degree,
            monomials,
            index,
        }
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Exponent] {
        &self.monomials
    }

    pub fn index_of(&self, exponent: &[u32]) -> Option<usize> {
        self.index.get(exponent).copied()
    }
}

fn fill_monomials(current: &mut Exponent, pos: usize, remaining: u32, out: &mut Vec<Exponent>) {
    if pos == current.len() {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        current[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill_monomials(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

type Poly = HashMap<Exponent, Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let entry = out.entry(e).or_insert_with(Rational::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Matrix of the restriction S(ambient*)_d -> S(sub*)_d in the canonical
/// monomial bases: columns follow the ambient basis, rows the sub basis.
#[derive(Clone, Debug)]
pub struct RestrictionMap {
    pub source: SubspaceQ,
    pub target: SubspaceQ,
    pub degree: usize,
    pub matrix: MatrixQ,
}

pub fn restriction_matrix(ambient: &SubspaceQ, sub: &SubspaceQ, d: usize) -> Result<RestrictionMap> {
    if !ambient.contains(sub)? {
        return Err(Error::SubspaceContainment(format!(
            "subspace of dimension {} is not contained in the ambient subspace of dimension {}",
            sub.dim(),
            ambient.dim()
        )));
    }
    let (a, b) = (ambient.dim(), sub.dim());
    // y_k restricted to sub is sum_i c[i][k] z_i, where c[i][k] is the
    // coordinate of sub basis vector i along ambient basis vector k.
    let coords: Vec<Vec<Rational>> = (0..b)
        .map(|i| {
            ambient
                .coordinates(sub.basis().row(i))
                .expect("containment checked above")
        })
        .collect();
    let linear: Vec<Poly> = (0..a)
        .map(|k| {
            let mut p = Poly::new();
            for (i, c) in coords.iter().enumerate() {
                if !c[k].is_zero() {
                    let mut e = vec![0u32; b];
                    e[i] = 1;
                    p.insert(e, c[k].clone());
                }
            }
            p
        })
        .collect();
    let one: Poly = [(vec![0u32; b], Rational::one())].into_iter().collect();
    // powers[k][e] = linear[k]^e
    let mut powers: Vec<Vec<Poly>> = vec![vec![one.clone()]; a];
    for (k, pw) in powers.iter_mut().enumerate() {
        for e in 1..=d {
            let next = poly_mul(&pw[e - 1], &linear[k]);
            pw.push(next);
        }
    }

    let src = MonomialBasis::new(a, d);
    let tgt = MonomialBasis::new(b, d);
    let mut matrix = MatrixQ::zeros(tgt.len(), src.len());
    for (col, alpha) in src.monomials().iter().enumerate() {
        let mut image = one.clone();
        for (k, &e) in alpha.iter().enumerate() {
            if e > 0 {
                image = poly_mul(&image, &powers[k][e as usize]);
            }
        }
        for (exp, c) in image {
            let row = tgt.index_of(&exp).expect("homogeneous of degree d");
            matrix.set(row, col, c);
        }
    }
    Ok(RestrictionMap {
        source: ambient.clone(),
        target: sub.clone(),
        degree: d,
        matrix,
    })
}

/// Product of homogeneous polynomials given by coefficient vectors in the
/// canonical monomial bases of degrees `p` and `q`.
pub fn multiply_homogeneous(var_count: usize, a: &[Rational], p: usize, b: &[Rational], q: usize) -> Vec<Rational> {
    let (ba, bb, bc) = (
        MonomialBasis::new(var_count, p),
        MonomialBasis::new(var_count, q),
        MonomialBasis::new(var_count, p + q),
    );
    assert_eq!(a.len(), ba.len());
    assert_eq!(b.len(), bb.len());
    let mut out = vec![Rational::zero(); bc.len()];
    for (ea, ca) in ba.monomials().iter().zip(a) {
        if ca.is_zero() {
            continue;
        }
        for (eb, cb) in bb.monomials().iter().zip(b) {
            if cb.is_zero() {
                continue;
            }
            let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            out[bc.index_of(&e).expect("degree p+q")] += ca * cb;
        }
    }
    out
}

type CacheKey = (SubspaceQ, SubspaceQ, usize);

/// Memoized restriction matrices keyed by canonical subspaces and degree;
/// shareable across worker threads.
#[derive(Default)]
pub struct RestrictionCache {
    maps: RwLock<HashMap<CacheKey, Arc<RestrictionMap>>>,
}

impl RestrictionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, ambient: &SubspaceQ, sub: &SubspaceQ, d: usize) -> Result<Arc<RestrictionMap>> {
        let key = (ambient.clone(), sub.clone(), d);
        if let Some(m) = self.maps.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(m));
        }
        let map = Arc::new(restriction_matrix(ambient, sub, d)?);
        let mut guard = self.maps.write().expect("cache lock");
        Ok(Arc::clone(guard.entry(key).or_insert(map)))
    }

    pub fn len(&self) -> usize {
        self.maps.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
