//! Exact symbolic computation on graded polynomial charts.
//!
//! Coordinates carry integer degrees, coefficients are exact rationals and
//! every sign follows the Koszul rule. On top of the polynomial algebra the
//! crate provides graded vector fields, Cartan calculus on forms, graded
//! symplectic structures with their Poisson brackets, verifiers for algebraic
//! structures encoded as Q-manifolds, coisotropic reduction and AKSZ action
//! expansion, plus a small text format for models.

pub mod aksz;
pub mod courant;
pub mod derivation;
pub mod error;
pub mod forms;
pub mod graded;
pub mod linalg;
pub mod parse;
pub mod reduction;
pub mod render;
pub mod structures;
pub mod symplectic;

pub use derivation::GradedVectorField;
pub use error::{Error, Result};
pub use forms::{DoubledContext, Form};
pub use graded::{rat, ratio, Degree, GradingContext, Monomial, Polynomial, Rational};
pub use symplectic::{Certificate, MasterReport, SymplecticForm};
