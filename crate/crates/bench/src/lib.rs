//! Shared fixtures for the criterion benchmarks.

use qformlab::spaces::build_basis;
use qformlab::{DirichletChar, EtaQuotient, ExponentVector};

/// The 20 cusp-basis eta quotients of the four spaces, in basis order.
pub fn cusp_quotients() -> Vec<EtaQuotient> {
    DirichletChar::NEBENTYPES
        .iter()
        .flat_map(|&chi| build_basis(chi).expect("bundled basis").cusp_part)
        .collect()
}

/// A spread of exponent vectors covering all four characters.
pub fn sample_vectors() -> Vec<ExponentVector> {
    ExponentVector::all().into_iter().step_by(7).collect()
}
