//! Exact engine for central hyperplane arrangements over the rationals.
//!
//! * [`exact`]: rationals, rational matrices, integer polynomials.
//! * [`arrangement`]: hyperplanes, Weyl and generic generators, deletion,
//!   localization, restriction, the `.arr` format.
//! * [`lattice`]: intersection lattice, Möbius function, characteristic and
//!   Poincaré polynomials, Betti numbers.
//! * [`multi`]: multiarrangements, Ziegler restrictions, rank-two exponents
//!   and the local-global second Betti number.
//! * [`freeness`]: the certification engine producing replayable FREE /
//!   NOT-FREE certificates.
//! * [`cli`]: report builders behind the `divfree` binary.

pub mod arrangement;
pub mod cli;
pub mod exact;
pub mod freeness;
pub mod lattice;
pub mod multi;

pub use arrangement::{Arrangement, Flat, Hyperplane};
pub use exact::{IntPolynomial, RatMatrix, Rational};
pub use lattice::IntersectionLattice;
