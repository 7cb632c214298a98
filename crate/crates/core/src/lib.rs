//! Exact computation of torus-equivariant cohomology from GKM graphs, with
//! the series-level consequences for K-contact manifolds: basic Betti
//! numbers, closed Reeb orbit counts, Morse-Bott series and Gysin Betti
//! numbers.
//!
//! All arithmetic is over `Q` with arbitrary precision.
//!
//! ```
//! use gkm_core::builtin::builtin_simplex;
//! use gkm_core::gkm::equivariant_dims;
//! use gkm_core::series::basic_from_equivariant;
//!
//! let g = builtin_simplex(2).unwrap();
//! let eq = equivariant_dims(&g, 8).unwrap();
//! assert_eq!(eq.coeffs(), &[1, 0, 3, 0, 6, 0, 9, 0, 12]);
//! let (basic, _) = basic_from_equivariant(&eq, 3, 8).unwrap();
//! assert_eq!(basic.coeffs(), &[1, 0, 1, 0, 1, 0, 0, 0, 0]);
//! ```

pub mod builtin;
pub mod error;
pub mod exactlin;
pub mod gkm;
pub mod json;
pub mod series;
pub mod symalg;
pub mod toric;

pub use error::{Error, Result};
