//! The weak order on subsets of finite root systems.
//!
//! A subset `R ⊆ Φ` is compared with `S` by `R ⩽ S ⟺ R⁺ ⊇ S⁺ and R⁻ ⊆ S⁻`.
//! This crate builds root systems with exact coordinates, closes and
//! repairs subsets, computes meets and joins at each level (all subsets,
//! antisymmetric, semiclosed, closed, Φ-posets), and enumerates the
//! element/interval/face families coming from the permutahedron, the
//! generalized associahedra and the cube.

pub mod cambrian;
pub mod census;
pub mod cli;
pub mod coeff;
pub mod cone;
pub mod error;
pub mod families;
pub mod rootset;
pub mod rootsys;
pub mod weakorder;
pub mod weyl;

pub use coeff::Coefficient;
pub use error::{Error, Result};
pub use rootset::RootSet;
pub use rootsys::{CartanType, Family, RootSystem};
