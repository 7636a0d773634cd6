pub mod algebra;
pub mod check;
pub mod error;
pub mod linalg;
pub mod maps;
pub mod scalar;
pub mod series;
pub mod tensor;

pub use algebra::{normal_words, Element, GenIndex, Monomial, SuperDims, Word, Yangian};
pub use check::{CheckReport, Counterexample};
pub use error::{Error, Result};
pub use maps::{ElementSeries, MorphismKind, MorphismTable, RttData, SeriesMatrix};
pub use scalar::{Ring, Scalar};
pub use series::{BiSeriesTail, SeriesTail};
pub use tensor::{EndoSeries, MixedOperator, Operator, Representation};

pub type Rational = num_rational::BigRational;
pub type QElement = Element<Rational>;
pub type QYangian = Yangian<Rational>;
pub type QSeries = SeriesTail<Rational>;
pub type QOperator = Operator<Rational>;
