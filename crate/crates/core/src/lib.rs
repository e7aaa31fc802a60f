//! Combinatorial zeta functions, closed geodesics and linking numbers on
//! regular polyhedral complexes.

pub mod complex;
pub mod dual;
pub mod error;
pub mod geodesic;
pub mod homology;
pub mod l2;
pub mod linalg;
pub mod linking;
pub mod spectral;
pub mod zeta;

pub use complex::{Chain, Generator, PolyComplex};
pub use error::{Error, Result};
