//! Exact computations with the commutative rings attached to rank-one
//! convolution algebras: affine blow-ups of tori and Cartan algebras,
//! universal-centralizer hypersurfaces, equivariant K-theory and Borel–Moore
//! homology of the affine Grassmannian, and the Heisenberg q-deformation.
//!
//! The algebraic kernel ([`laurent`], [`groebner`], [`ideal`]) is generic over an
//! exact [`Field`]; the domain modules work over [`GaussianRational`].

pub mod action;
pub mod blowup;
pub mod centralizer;
pub mod error;
pub mod fraction;
pub mod fusion;
pub mod groebner;
pub mod heisenberg;
pub mod homology;
pub mod ideal;
pub mod json;
pub mod kring;
pub mod laurent;
pub mod linalg;
pub mod poisson;
pub mod roots;
pub mod relations;
pub mod report;
pub mod scalar;
pub mod screen;
pub mod steinberg;
pub mod suites;
pub mod text;

pub use error::{Error, Result};
pub use scalar::{Field, GaussianRational};

/// Laurent polynomials over `Q(i)`.
pub type Poly = laurent::LaurentPoly<GaussianRational>;
/// Rational functions over `Q(i)`.
pub type Frac = fraction::Fraction<GaussianRational>;
/// Ideals over `Q(i)`.
pub type QIdeal = ideal::Ideal<GaussianRational>;
