//! Monomials, orders, polynomials and linear coordinate changes over F_p.

pub mod monomial;
pub mod order;
pub mod parse;
pub mod point;
pub mod poly;

pub use monomial::{binomial, count_monomials, monomials_of_degree, Monomial, MAX_VARS};
pub use order::MonomialOrder;
pub use parse::parse_polynomial;
pub use point::PointProj;
pub use poly::{Polynomial, Ring, Term};
