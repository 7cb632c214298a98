use serde::{Deserialize, Serialize};

use crate::error::{shape, Error, Result};
use crate::exactlin::MatrixQ;
use crate::json::{matrix_from_json, matrix_to_json, MatrixJson};

/// Even basic Betti numbers together with the maps
/// `delta_k: H^{2k}(M,F) -> H^{2k+2}(M,F)` given by multiplication with the
/// basic Euler class. Odd basic cohomology is assumed to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GysinData {
    pub basic_dims: Vec<usize>,
    pub euler_mult: Vec<MatrixQ>,
}

impl GysinData {
    /// Basic cohomology `Q[z]/(z^{n+1})` with every `delta_k` the identity.
    pub fn minimal(n: usize) -> Self {
        GysinData {
            basic_dims: vec![1; n + 1],
            euler_mult: vec![MatrixQ::identity(1); n],
        }
    }

    pub fn n(&self) -> usize {
        self.basic_dims.len().saturating_sub(1)
    }
}

#[derive(Serialize, Deserialize)]
struct GysinWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    basic_dims: Vec<usize>,
    euler_mult: Vec<MatrixJson>,
}

impl Serialize for GysinData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GysinWire {
            n: Some(self.n()),
            basic_dims: self.basic_dims.clone(),
            euler_mult: self.euler_mult.iter().map(matrix_to_json).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GysinData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = GysinWire::deserialize(d)?;
        if let Some(n) = w.n {
            if w.basic_dims.len() != n + 1 {
                return Err(D::Error::custom(format!(
                    "n = {n} needs {} basic dimensions, got {}",
                    n + 1,
                    w.basic_dims.len()
                )));
            }
        }
        let euler_mult = w
            .euler_mult
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let cols = w.basic_dims.get(k).copied().unwrap_or(0);
                matrix_from_json(m, cols).map_err(|e| D::Error::custom(format!("delta_{k}: {e}")))
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(GysinData {
            basic_dims: w.basic_dims,
            euler_mult,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub n: usize,
    pub manifold_dim: usize,
    /// `b_0 ..= b_{2n+1}`.
    pub betti: Vec<usize>,
}

/// Betti numbers of the (2n+1)-manifold from the split Gysin sequence
/// `0 -> H^{2k+1}(M) -> H^{2k}(M,F) -> H^{2k+2}(M,F) -> H^{2k+2}(M) -> 0`.
pub fn gysin_betti(data: &GysinData, n: usize) -> Result<BettiTable> {
    let dims = &data.basic_dims;
    if dims.len() != n + 1 {
        return Err(shape(format!(
            "expected {} basic dimensions for n = {n}, got {}",
            n + 1,
            dims.len()
        )));
    }
    if dims[0] != 1 {
        return Err(shape(format!("H^0(M,F) must be one-dimensional, got {}", dims[0])));
    }
    if data.euler_mult.len() != n && data.euler_mult.len() != n + 1 {
        return Err(shape(format!(
            "expected {n} (or {}) euler multiplication maps, got {}",
            n + 1,
            data.euler_mult.len()
        )));
    }
    let mut betti = vec![0usize; 2 * n + 2];
    betti[0] = dims[0];
    for k in 0..=n {
        let target = if k < n { dims[k + 1] } else { 0 };
        let (kernel, coker) = match data.euler_mult.get(k) {
            Some(delta) => {
                let target_rows = if k < n { target } else { delta.rows() };
                if delta.cols() != dims[k] || delta.rows() != target_rows {
                    return Err(shape(format!(
                        "delta_{k} has shape {}x{}, expected {}x{}",
                        delta.rows(),
                        delta.cols(),
                        target_rows,
                        dims[k]
                    )));
                }
                let rank = delta.rank();
                (dims[k] - rank, delta.rows() - rank)
            }
            None => (dims[k], 0),
        };
        betti[2 * k + 1] = kernel;
        if k < n {
            betti[2 * k + 2] = coker;
        } else if coker != 0 {
            return Err(Error::GysinInconsistency(format!(
                "b_{} would be {coker}, but a {}-manifold has no cohomology there",
                2 * n + 2,
                2 * n + 1
            )));
        }
    }
    Ok(BettiTable {
        n,
        manifold_dim: 2 * n + 1,
        betti,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_sphere() {
        let t = gysin_betti(&GysinData::minimal(1), 1).unwrap();
        assert_eq!(t.betti, vec![1, 0, 0, 1]);
    }

    #[test]
    fn seven_sphere() {
        let t = gysin_betti(&GysinData::minimal(3), 3).unwrap();
        assert_eq!(t.betti, vec![1, 0, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn injective_then_surjective() {
        let data = GysinData {
            basic_dims: vec![1, 2, 1],
            euler_mult: vec![
                MatrixQ::from_i64(&[&[1], &[0]], 1).unwrap(),
                MatrixQ::from_i64(&[&[1, 0]], 2).unwrap(),
            ],
        };
        assert_eq!(gysin_betti(&data, 2).unwrap().betti, vec![1, 0, 1, 1, 0, 1]);
    }

    #[test]
    fn shape_errors() {
        let data = GysinData {
            basic_dims: vec![1, 1],
            euler_mult: vec![MatrixQ::from_i64(&[&[1, 1]], 2).unwrap()],
        };
        assert!(matches!(gysin_betti(&data, 1), Err(Error::InputShape(_))));
        assert!(gysin_betti(&GysinData::minimal(2), 1).is_err());
    }

    #[test]
    fn top_map_into_nonzero_space_is_inconsistent() {
        let mut data = GysinData::minimal(1);
        data.euler_mult.push(MatrixQ::zeros(1, 1));
        assert!(matches!(gysin_betti(&data, 1), Err(Error::GysinInconsistency(_))));
        // an explicit zero-row top map is fine
        let mut data = GysinData::minimal(1);
        data.euler_mult.push(MatrixQ::zeros(0, 1));
        assert_eq!(gysin_betti(&data, 1).unwrap().betti, vec![1, 0, 0, 1]);
    }

    #[test]
    fn json_round_trip() {
        let data = GysinData::minimal(2);
        let text = serde_json::to_string(&data).unwrap();
        assert_eq!(text, r#"{"n":2,"basic_dims":[1,1,1],"euler_mult":[[[1]],[[1]]]}"#);
        assert_eq!(serde_json::from_str::<GysinData>(&text).unwrap(), data);
    }
}
