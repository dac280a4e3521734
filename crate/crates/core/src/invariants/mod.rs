//! Hilbert series, graded Betti tables and the numerical invariants read off them.

mod betti;
mod hilbert;

pub use betti::{betti_table, koszul_betti, koszul_betti_seeded, regular_restriction, BettiWindow, Regularity};
pub use hilbert::{hilbert, monomial_numerator, slice_dim_from_generators, HilbertData, IntPoly};

#[cfg(test)]
mod tests;
