//! Exact enumeration of nine combinatorial models that all share one
//! two-parameter polynomial family, together with the weight-preserving
//! bijections connecting them and a verification harness that checks the
//! whole picture by exhaustive generation and exact arithmetic.
//!
//! The object families are double Callan permutations, alternative tableaux
//! (plain and packed), double alternative trees, and permutations with a
//! prescribed excedance set. Every family carries one or more weight
//! functions; summing `x^weight` over a family must reproduce the closed-form
//! polynomial of [`oracle::spb_formula`] exactly. All arithmetic is
//! arbitrary-precision; nothing here uses floating point.

pub mod bijections;
pub mod callan;
pub mod error;
pub mod excedance;
pub mod oracle;
pub mod poly;
pub mod series;
pub mod tableaux;
#[cfg(test)]
pub(crate) mod testutil;
pub mod trees;

pub use bijections::{MapId, ModelId, VerifyOptions, VerifyReport};
pub use callan::{CallanPerm, Color, Token};
pub use error::{Error, Result};
pub use excedance::ExcPerm;
pub use oracle::{spb_formula, spb_recurrence, SpbTable};
pub use poly::{Poly, RatPoly};
pub use series::BiSeries;
pub use tableaux::{AltTableau, Arrow, ArrowColumn, PackedTableau};
pub use trees::DoubleTree;
