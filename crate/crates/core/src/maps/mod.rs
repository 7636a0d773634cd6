//! `T(u)` and its inverse, the named (anti)automorphisms, the Hopf
//! operations, the central series `Z(u)` and the quantum Berezinian.

mod central;
pub mod checks;
mod hopf;
mod matrix;
mod morphism;

pub use central::{permutations, reflect_one_minus_u, to_even_yangian, RttData};
pub use hopf::{coproduct, coproduct_generator, coproduct_on_leg, counit, counit_on_leg, map_leg, multiply_legs};
pub use matrix::{t_series, unit_series, ElementSeries, SeriesMatrix};
pub use morphism::{substitute, MorphismKind, MorphismTable};
