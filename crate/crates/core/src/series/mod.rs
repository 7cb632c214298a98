//! Truncated degree series and the series-level consequences of equivariant
//! formality: basic Betti numbers, Morse-Bott assembly, Gysin Betti numbers
//! and Stanley-Reisner Hilbert series.

mod checks;
mod gysin;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{shape, Error, Result};

pub use checks::{run_checks, run_checks_with, CheckReport, CheckStatus, TheoremCheck};
pub use gysin::{gysin_betti, BettiTable, GysinData};

/// Integer coefficients in degrees `0..=cutoff`; everything above the cutoff
/// is unknown, never implicitly zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesWire")]
pub struct DegreeSeries {
    cutoff: usize,
    coeffs: Vec<i64>,
}

#[derive(Deserialize)]
struct SeriesWire {
    cutoff: usize,
    coeffs: Vec<i64>,
}

impl TryFrom<SeriesWire> for DegreeSeries {
    type Error = String;

    fn try_from(w: SeriesWire) -> std::result::Result<Self, String> {
        if w.coeffs.len() != w.cutoff + 1 {
            return Err(format!(
                "series with cutoff {} needs {} coefficients, got {}",
                w.cutoff,
                w.cutoff + 1,
                w.coeffs.len()
            ));
        }
        Ok(DegreeSeries {
            cutoff: w.cutoff,
            coeffs: w.coeffs,
        })
    }
}

impl DegreeSeries {
    /// Pads with zeros or truncates so that exactly degrees `0..=cutoff`
    /// are present.
    pub fn new(mut coeffs: Vec<i64>, cutoff: usize) -> Self {
        coeffs.resize(cutoff + 1, 0);
        DegreeSeries { cutoff, coeffs }
    }

    pub fn zero(cutoff: usize) -> Self {
        Self::new(Vec::new(), cutoff)
    }

    pub fn one(cutoff: usize) -> Self {
        Self::new(vec![1], cutoff)
    }

    pub fn monomial(degree: usize, coeff: i64, cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        if degree <= cutoff {
            s.coeffs[degree] = coeff;
        }
        s
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn get(&self, degree: usize) -> i64 {
        self.coeffs.get(degree).copied().unwrap_or(0)
    }

    pub fn truncate(&self, cutoff: usize) -> Self {
        Self::new(self.coeffs[..=cutoff.min(self.cutoff)].to_vec(), cutoff.min(self.cutoff))
    }

    pub fn add(&self, other: &Self) -> Self {
        let cutoff = self.cutoff.min(other.cutoff);
        Self::new(
            (0..=cutoff).map(|i| self.coeffs[i] + other.coeffs[i]).collect(),
            cutoff,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let cutoff = self.cutoff.min(other.cutoff);
        Self::new(
            (0..=cutoff).map(|i| self.coeffs[i] - other.coeffs[i]).collect(),
            cutoff,
        )
    }

    /// Cauchy product, truncated at the smaller cutoff.
    pub fn mul(&self, other: &Self) -> Self {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = vec![0i64; cutoff + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(cutoff + 1) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(cutoff + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out, cutoff)
    }

    /// Multiplies by an exact polynomial (coefficients by degree).
    pub fn mul_poly(&self, poly: &[i64]) -> Self {
        self.mul(&Self::new(poly.to_vec(), self.cutoff))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = vec![0i64; self.cutoff + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i + k <= self.cutoff {
                out[i + k] = c;
            }
        }
        Self::new(out, self.cutoff)
    }

    pub fn sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Highest degree with a nonzero coefficient.
    pub fn top_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn odd_part_vanishes(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|&c| c == 0)
    }
}

/// Hilbert series of a polynomial ring on `k` generators of degree 2:
/// `1 / (1 - t^2)^k`.
pub fn free_hilbert(k: usize, cutoff: usize) -> DegreeSeries {
    let geometric = DegreeSeries::new((0..=cutoff).map(|i| i64::from(i % 2 == 0)).collect(), cutoff);
    (0..k).fold(DegreeSeries::one(cutoff), |acc, _| acc.mul(&geometric))
}

/// Coefficients of `(1 - t^2)^k`.
fn one_minus_t2_pow(k: usize) -> Vec<i64> {
    let mut p = vec![1i64];
    for _ in 0..k {
        let mut next = vec![0i64; p.len() + 2];
        for (i, &c) in p.iter().enumerate() {
            next[i] += c;
            next[i + 2] -= c;
        }
        p = next;
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    PolynomialUpToCutoff,
    InconclusiveAtCutoff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicReport {
    pub rank: usize,
    pub nonnegative: bool,
    pub verdict: Verdict,
    pub top_degree: Option<usize>,
    pub sum: i64,
}

/// Trailing zeros needed before a truncated product is trusted to be a
/// polynomial: two consecutive degrees, i.e. one full even step.
const TRAILING_ZEROS: usize = 2;

/// Divides an equivariant Hilbert series by the Hilbert series of S(a*),
/// `dim a = rank - 1`, i.e. multiplies by `(1 - t^2)^(rank - 1)`.
pub fn basic_from_equivariant(
    eq_dims: &DegreeSeries,
    rank: usize,
    cutoff: usize,
) -> Result<(DegreeSeries, BasicReport)> {
    if rank == 0 {
        return Err(shape("rank must be at least 1"));
    }
    let eq = eq_dims.truncate(cutoff);
    let poly = eq.mul_poly(&one_minus_t2_pow(rank - 1));
    if let Some((degree, &value)) = poly.coeffs().iter().enumerate().find(|(_, &c)| c < 0) {
        return Err(Error::FormalityViolation { degree, value });
    }
    let top_degree = poly.top_degree();
    let verdict = match top_degree {
        Some(t) if t + TRAILING_ZEROS > poly.cutoff() => Verdict::InconclusiveAtCutoff,
        _ => Verdict::PolynomialUpToCutoff,
    };
    let report = BasicReport {
        rank,
        nonnegative: true,
        verdict,
        top_degree,
        sum: poly.sum(),
    };
    Ok((poly, report))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseBottComponent {
    /// Morse-Bott index of the critical component; must be even.
    pub index: usize,
    pub series: DegreeSeries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseBottData {
    pub components: Vec<MorseBottComponent>,
}

/// `sum_B t^{index_B} P_t(B)`, truncated at `cutoff`.
pub fn morse_bott_assemble(data: &MorseBottData, cutoff: usize) -> Result<DegreeSeries> {
    let mut total = DegreeSeries::zero(cutoff);
    for (i, c) in data.components.iter().enumerate() {
        if c.index % 2 != 0 {
            return Err(shape(format!(
                "component {i} has odd index {}; indices must be even",
                c.index
            )));
        }
        let padded = DegreeSeries::new(c.series.coeffs().to_vec(), cutoff);
        total = total.add(&padded.shift(c.index));
    }
    Ok(total)
}

/// All proper subsets of `{0..=n}`: the faces of the boundary of the
/// n-simplex (including the empty face).
pub fn boundary_simplex_faces(n: usize) -> Vec<Vec<usize>> {
    let count = n + 1;
    (0u64..(1u64 << count) - 1)
        .map(|mask| (0..count).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// Hilbert series of the face ring with degree-2 generators:
/// `sum_F (t^2 / (1 - t^2))^{|F|}`.
pub fn stanley_reisner_hilbert(faces: &[Vec<usize>], cutoff: usize) -> Result<DegreeSeries> {
    let family: BTreeSet<BTreeSet<usize>> = faces
        .iter()
        .map(|f| f.iter().copied().collect())
        .collect();
    if !family.contains(&BTreeSet::new()) {
        return Err(shape("face family must contain the empty face"));
    }
    for face in &family {
        for v in face {
            let mut smaller = face.clone();
            smaller.remove(v);
            if !family.contains(&smaller) {
                return Err(shape(format!(
                    "face {face:?} is present but its subset {smaller:?} is not"
                )));
            }
        }
    }
    let max_size = family.iter().map(BTreeSet::len).max().unwrap_or(0);
    let mut counts = vec![0i64; max_size + 1];
    for face in &family {
        counts[face.len()] += 1;
    }
    let x = free_hilbert(1, cutoff).shift(2);
    let mut power = DegreeSeries::one(cutoff);
    let mut total = DegreeSeries::zero(cutoff);
    for &c in &counts {
        total = total.add(&power.mul_poly(&[c]));
        power = power.mul(&x);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], cutoff: usize) -> DegreeSeries {
        DegreeSeries::new(c.to_vec(), cutoff)
    }

    #[test]
    fn free_hilbert_examples() {
        assert_eq!(free_hilbert(1, 6), s(&[1, 0, 1, 0, 1, 0, 1], 6));
        let two = free_hilbert(2, 10);
        for d in 0..=5 {
            assert_eq!(two.get(2 * d), d as i64 + 1);
            assert_eq!(two.get(2 * d + 1), 0);
        }
        assert_eq!(free_hilbert(0, 4), s(&[1], 4));
    }

    fn repeat_even(head: &[i64], tail: i64, cutoff: usize) -> DegreeSeries {
        let mut c = vec![0i64; cutoff + 1];
        for d in (0..=cutoff).step_by(2) {
            c[d] = head.get(d / 2).copied().unwrap_or(tail);
        }
        DegreeSeries::new(c, cutoff)
    }

    #[test]
    fn basic_from_simplex_series() {
        let (p, r) = basic_from_equivariant(&repeat_even(&[1], 2, 20), 2, 20).unwrap();
        assert_eq!(p, s(&[1, 0, 1], 20));
        assert_eq!(r.sum, 2);
        assert_eq!(r.verdict, Verdict::PolynomialUpToCutoff);

        let mut c = vec![0i64; 21];
        for d in 0..=10 {
            c[2 * d] = if d == 0 { 1 } else { 3 * d as i64 };
        }
        let (p, r) = basic_from_equivariant(&DegreeSeries::new(c, 20), 3, 20).unwrap();
        assert_eq!(p, s(&[1, 0, 1, 0, 1], 20));
        assert_eq!(r.sum, 3);
    }

    #[test]
    fn basic_from_hirzebruch_series() {
        let (p, r) = basic_from_equivariant(&repeat_even(&[1, 3], 4, 20), 2, 20).unwrap();
        assert_eq!(p, s(&[1, 0, 2, 0, 1], 20));
        assert_eq!(r.sum, 4);
    }

    #[test]
    fn negative_coefficient_is_a_formality_violation() {
        let e = basic_from_equivariant(&s(&[1, 0, 0], 4), 2, 4).unwrap_err();
        assert!(matches!(e, Error::FormalityViolation { degree: 2, value: -1 }));
    }

    #[test]
    fn inconclusive_when_top_degree_hugs_the_cutoff() {
        let (_, r) = basic_from_equivariant(&repeat_even(&[1, 3], 4, 4), 2, 4).unwrap();
        assert_eq!(r.verdict, Verdict::InconclusiveAtCutoff);
    }

    #[test]
    fn morse_bott_examples() {
        let unit = |i| MorseBottComponent {
            index: i,
            series: s(&[1], 0),
        };
        let data = MorseBottData {
            components: vec![unit(0), unit(2), unit(4)],
        };
        assert_eq!(morse_bott_assemble(&data, 8).unwrap(), s(&[1, 0, 1, 0, 1], 8));

        let sphere = |i| MorseBottComponent {
            index: i,
            series: s(&[1, 0, 1], 2),
        };
        let data = MorseBottData {
            components: vec![sphere(0), sphere(2)],
        };
        assert_eq!(morse_bott_assemble(&data, 8).unwrap(), s(&[1, 0, 2, 0, 1], 8));

        let data = MorseBottData {
            components: vec![unit(0)],
        };
        assert_eq!(morse_bott_assemble(&data, 3).unwrap(), s(&[1], 3));

        let data = MorseBottData {
            components: vec![unit(1)],
        };
        assert!(morse_bott_assemble(&data, 3).is_err());
    }

    #[test]
    fn stanley_reisner_examples() {
        let seg = vec![vec![], vec![0], vec![1]];
        assert_eq!(
            stanley_reisner_hilbert(&seg, 8).unwrap(),
            repeat_even(&[1], 2, 8)
        );
        let tri = boundary_simplex_faces(2);
        assert_eq!(tri.len(), 7);
        assert_eq!(
            stanley_reisner_hilbert(&tri, 8).unwrap(),
            s(&[1, 0, 3, 0, 6, 0, 9, 0, 12], 8)
        );
        let point = vec![vec![], vec![0]];
        assert_eq!(stanley_reisner_hilbert(&point, 6).unwrap(), free_hilbert(1, 6));
    }

    #[test]
    fn stanley_reisner_rejects_non_complexes() {
        assert!(stanley_reisner_hilbert(&[vec![0]], 4).is_err());
        assert!(stanley_reisner_hilbert(&[vec![], vec![0, 1]], 4).is_err());
    }

    #[test]
    fn series_json_shape() {
        let json = serde_json::to_string(&s(&[1, 0, 2], 2)).unwrap();
        assert_eq!(json, r#"{"cutoff":2,"coeffs":[1,0,2]}"#);
        assert!(serde_json::from_str::<DegreeSeries>(r#"{"cutoff":3,"coeffs":[1]}"#).is_err());
    }
}
