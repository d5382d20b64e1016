//! An exact engine for partial coactions and their globalizations.
//!
//! The crate decides and constructs globalizations of geometric partial
//! comodules in two computable settings:
//!
//! * finite-dimensional comodules over finite-dimensional coalgebras over
//!   the rationals ([`comod`], [`gpc`], [`globalize`] on top of the exact
//!   linear backend [`exactla`]), and
//! * partial actions of finite groups on finite sets ([`psets`]).
//!
//! All arithmetic is exact — arbitrary-precision rationals on the linear
//! side, finite combinatorics on the set side — so every law check is a
//! literal equality test. The linear core is generic over the scalar field
//! through [`scalar::Scalar`]; the aliases below fix the shipped rational
//! instantiation.

pub mod comod;
pub mod exactla;
pub mod fixtures;
pub mod globalize;
pub mod gpc;
pub mod io;
pub mod laws;
pub mod psets;
pub mod random;
pub mod scalar;

/// Arbitrary-precision rational scalar, always stored in lowest terms
/// with a positive denominator.
pub type Rational = num_rational::BigRational;

pub type QMatrix = exactla::Matrix<Rational>;
pub type QMap = exactla::LinearMap<Rational>;
pub type QPushout = exactla::PushoutResult<Rational>;
pub type QCoalgebra = comod::Coalgebra<Rational>;
pub type QComodule = comod::Comodule<Rational>;
pub type QComoduleMorphism = comod::ComoduleMorphism<Rational>;
pub type QPartialDatum = gpc::PartialDatum<Rational>;
pub type QPartialComodule = gpc::PartialComodule<Rational>;
pub type QPartialMorphism = gpc::PartialMorphism<Rational>;
pub type QCover = gpc::Cover<Rational>;
pub type QGlobalization = globalize::Globalization<Rational>;

pub use exactla::VectorSpace;
