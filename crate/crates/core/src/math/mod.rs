//! Numerical building blocks: special functions, quadrature, root finding.

pub mod bessel;
pub mod erf;
pub mod quad;
pub mod roots;
