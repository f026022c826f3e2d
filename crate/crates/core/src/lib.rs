//! Exact graded linear algebra for standard determinantal schemes: the complexes
//! C_i(φ) and D_i(φ), dimensions of graded Ext groups, closed-form χ bounds and
//! representation-type verdicts, and extension modules of Ulrich modules.
//!
//! All algebra is generic over [`field::Field`]; the aliases below fix the default
//! prime.

pub mod acceptance;
pub mod complexes;
pub mod error;
pub mod extengine;
pub mod extensions;
pub mod field;
pub mod formulas;
pub mod graded;
pub mod linalg;
pub mod model;
pub mod poly;
pub mod report;
pub mod table;

pub use error::{Error, Result};
pub use field::{Field, Fp, DEFAULT_PRIME};

/// The default coefficient field GF(32003).
pub type Gf32003 = Fp<32003>;
pub type Poly = poly::HomogPoly<Gf32003>;
pub type Matrix = graded::HomogMatrix<Gf32003>;
pub type Complex = complexes::GradedComplex<Gf32003>;
pub type Model = model::DeterminantalModel<Gf32003>;
