//! Airy function, Gauss–Legendre rules and Airy-product integrals.

pub mod airy;
pub mod airy_integral;
pub mod quadrature;

pub use airy::{airy_ai, airy_ai_prime, airy_ai_scaled, AIRY_DOMAIN};
pub use airy_integral::{
    airy_head_integral, airy_tail_integral, airy_tail_integral_detailed, airy_tail_integral_to,
    TailIntegral,
};
pub use quadrature::{composite_gauss_legendre, gauss_legendre, QuadratureRule};
