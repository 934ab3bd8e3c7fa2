//! Graded invariants of homogeneous ideals.

mod betti;
mod census;
mod hilbert;

pub use betti::{betti_table, betti_table_with, regularity, BettiOptions, BettiTable};
pub use census::{generator_census, minimal_generators, GeneratorCensus};
pub use hilbert::{
    count_standard_monomials, dimension_degree, graded_piece_dimension, hilbert_function, hilbert_series,
    monomial_numerator, HilbertSeries,
};
