//! Exact q-series, Dedekind eta quotients and weight-3 modular forms on
//! `Γ₀(24)`, with representation-number formulas for the diagonal senary
//! quadratic forms with coefficients 1, 2, 3 and 6.

pub mod arith;
pub mod characters;
pub mod eisenstein;
pub mod error;
pub mod etaq;
pub mod etasearch;
pub mod newforms;
pub mod qseries;
pub mod quadforms;
pub mod spaces;

pub use arith::{ExactMatrix, LinearSolution, NumberField, NumberFieldElement, Rational, Scalar};
pub use characters::DirichletChar;
pub use eisenstein::EisensteinSpec;
pub use error::{Error, Result};
pub use etaq::{Cusp, EtaQuotient, ModularityReport};
pub use etasearch::CensusResult;
pub use qseries::QSeries;
pub use spaces::SpaceBasis;
pub use quadforms::{ExponentVector, FormulaRow, QuadForm};
