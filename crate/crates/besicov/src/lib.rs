//! Averaging operators and Besicovitch ball families on finite discrete
//! metric measure spaces.
//!
//! On a finite space the averaging operator `A_{r,μ}f(x) = (1/μB(x,r))
//! ∫_{B(x,r)} f dμ` has an exactly computable `L¹ → L¹` norm: it equals the
//! maximum of the conjugate function `a_r(y) = Σ_{x∈B(y,r)} w(x)/μB(x,r)`.
//! The supremum of that norm over all radii and measures is a purely
//! geometric constant, the largest cardinality of an equal-radius family of
//! balls that share a point while no ball contains another's center. This
//! crate computes the operator side exactly (rational arithmetic wherever
//! the norm allows), searches for the geometric families, and certifies
//! them in a serializable, independently re-checkable form.
//!
//! # Quick start
//!
//! ```
//! use besicov::besicovitch::{validate_family, BallFamily};
//! use besicov::geometry::{BallKind, NormSpec, Vector};
//! use besicov::scalar::Scalar;
//!
//! // Two closed unit intervals touching at the origin.
//! let family = BallFamily::equal_radius(
//!     NormSpec::L1,
//!     vec![Vector::from_ints(&[-1]), Vector::from_ints(&[1])],
//!     Scalar::one(),
//!     BallKind::Closed,
//!     Vector::from_ints(&[0]),
//! )?;
//! let cert = validate_family(&family, 0.0)?;
//! assert_eq!(cert.cardinality, 2); // the sharp constant on the line
//! # Ok::<(), besicov::Error>(())
//! ```
//!
//! The matching operator-side statement: averaging against
//! `μ = c·δ₀ + δ₋₁ + δ₁` sends a unit-mass spike at the origin to a function
//! whose `L¹` norm exceeds `2/(1+c)`.
//!
//! ```
//! use besicov::besicovitch::one_dim_pair;
//! use besicov::constructions::{build_adversarial, strong_lower_bound_eval};
//! use besicov::scalar::Scalar;
//!
//! let family = one_dim_pair()?.family()?;
//! let inst = build_adversarial(&family, &Scalar::ratio(1, 100))?;
//! let bound = strong_lower_bound_eval(&inst)?;
//! assert!(bound.pass && bound.value > Scalar::ratio(200, 101));
//! # Ok::<(), besicov::Error>(())
//! ```

pub mod besicovitch;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod measure;
pub mod scalar;

pub use error::{Error, Result};

// The guide chapters double as doc-tests so their code can never drift from
// the crate. mdbook itself cannot run examples against a local crate; this
// is the standard workaround.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/scalars-and-norms.md")]
    pub mod scalars_and_norms {}
    #[doc = include_str!("../../../book/src/averaging-operators.md")]
    pub mod averaging_operators {}
    #[doc = include_str!("../../../book/src/besicovitch-families.md")]
    pub mod besicovitch_families {}
    #[doc = include_str!("../../../book/src/search.md")]
    pub mod search {}
    #[doc = include_str!("../../../book/src/adversarial-measures.md")]
    pub mod adversarial_measures {}
    #[doc = include_str!("../../../book/src/constants.md")]
    pub mod constants {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
