//! Besicovitch ball families: validation, certification, search, the greedy
//! covering procedure, open/closed conversion, and the sharp-constant table.
//!
//! A family is *Besicovitch* when no center lies in another family ball, and
//! *intersecting* when a witness point lies in every ball. The cardinality of
//! an equal-radius intersecting family is a lower bound for the constant
//! `E(X, d)`, which in turn equals the supremum of `‖A_{r,μ}‖_{L¹→L¹}`. A
//! [`Certificate`] pins such a family to disk together with the margin by
//! which every inequality holds.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    ball_contains, distance, separated, BallKind, BallSpec, NormSpec, Vector,
};
use crate::scalar::{ArithMode, Scalar};

mod candidates;
mod clique;
mod constants;
mod convert;
mod cover;
mod heuristic;
mod stock;

pub use candidates::CandidateSet;
pub use clique::{clique_search_exact, DEFAULT_CLIQUE_CAP};
pub use constants::{classify, known_constants, table_rows, KnownConstant, SpaceDescriptor};
pub use convert::{equalize_family, open_closed_convert};
pub use cover::{greedy_cover, CoverOutcome};
pub use heuristic::clique_search_heuristic;
pub use stock::{icosahedron, l1_cross, linf_corners, one_dim_pair, pentagon};

/// Default certificate margin for floating-point data. Far above `f64`
/// rounding noise at desk-scale coordinates, far below the slack of every
/// configuration of interest.
pub const DEFAULT_FLOAT_MARGIN: f64 = 1e-9;

/// A candidate intersecting Besicovitch family. Construction checks shape
/// only; [`validate_family`] checks the defining inequalities.
#[derive(Clone, Debug, PartialEq)]
pub struct BallFamily {
    norm: NormSpec,
    centers: Vec<Vector>,
    radii: Vec<Scalar>,
    kind: BallKind,
    witness: Vector,
}

impl BallFamily {
    pub fn new(
        norm: NormSpec,
        centers: Vec<Vector>,
        radii: Vec<Scalar>,
        kind: BallKind,
        witness: Vector,
    ) -> Result<Self> {
        if radii.len() != centers.len() {
            return Err(Error::InvalidFamily(format!(
                "{} centers but {} radii",
                centers.len(),
                radii.len()
            )));
        }
        let dim = witness.dim();
        norm.check_dim(dim)?;
        for c in &centers {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch(dim, c.dim()));
            }
        }
        for r in &radii {
            if !(r > &Scalar::zero()) {
                return Err(Error::NotPositive("radius"));
            }
        }
        Ok(BallFamily {
            norm,
            centers,
            radii,
            kind,
            witness,
        })
    }

    /// Family in which every ball has the same radius.
    pub fn equal_radius(
        norm: NormSpec,
        centers: Vec<Vector>,
        radius: Scalar,
        kind: BallKind,
        witness: Vector,
    ) -> Result<Self> {
        let radii = vec![radius; centers.len()];
        BallFamily::new(norm, centers, radii, kind, witness)
    }

    pub fn norm_spec(&self) -> &NormSpec {
        &self.norm
    }

    pub fn centers(&self) -> &[Vector] {
        &self.centers
    }

    pub fn radii(&self) -> &[Scalar] {
        &self.radii
    }

    pub fn kind(&self) -> BallKind {
        self.kind
    }

    pub fn witness(&self) -> &Vector {
        &self.witness
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// The common radius; errors when empty or genuinely mixed.
    pub fn common_radius(&self) -> Result<&Scalar> {
        let first = self.radii.first().ok_or(Error::EmptyFamily)?;
        if self.radii.iter().any(|r| r != first) {
            return Err(Error::MixedRadii);
        }
        Ok(first)
    }

    /// Exact iff the norm supports exact predicates and every coordinate and
    /// radius is rational.
    pub fn mode(&self) -> ArithMode {
        let exact = self.norm.supports_exact()
            && self.witness.mode() == ArithMode::Exact
            && self.centers.iter().all(|c| c.mode() == ArithMode::Exact)
            && self.radii.iter().all(Scalar::is_exact);
        if exact {
            ArithMode::Exact
        } else {
            ArithMode::Float
        }
    }

    /// The sub-family of the first `len` balls.
    pub fn truncate(&self, len: usize) -> BallFamily {
        BallFamily {
            norm: self.norm.clone(),
            centers: self.centers[..len.min(self.len())].to_vec(),
            radii: self.radii[..len.min(self.len())].to_vec(),
            kind: self.kind,
            witness: self.witness.clone(),
        }
    }
}

/// The first inequality of the family definition that fails, if any.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum FamilyViolation {
    /// The witness is not in ball `index`.
    WitnessOutside {
        index: usize,
        distance: f64,
        radius: f64,
    },
    /// Center `j` lies in ball `i`'s reach (or vice versa): the pair is not
    /// separated at the stated radius plus margin.
    NotSeparated {
        i: usize,
        j: usize,
        distance: f64,
        required: f64,
    },
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyViolation::WitnessOutside {
                index,
                distance,
                radius,
            } => write!(
                f,
                "witness outside ball {index}: distance {distance} vs radius {radius}"
            ),
            FamilyViolation::NotSeparated {
                i,
                j,
                distance,
                required,
            } => write!(
                f,
                "centers {i} and {j} not separated: distance {distance}, required {required}"
            ),
        }
    }
}

/// Checks every defining inequality at the given margin and reports the
/// first failure. `Ok(None)` means the family is valid.
pub fn find_violation(family: &BallFamily, margin: f64) -> Result<Option<FamilyViolation>> {
    let norm = &family.norm;
    for (index, (center, radius)) in family.centers.iter().zip(&family.radii).enumerate() {
        let ball = BallSpec::new(center.clone(), radius.clone(), family.kind)?;
        if !ball_contains(norm, &ball, &family.witness, margin)? {
            return Ok(Some(FamilyViolation::WitnessOutside {
                index,
                distance: distance(norm, center, &family.witness)?.to_f64(),
                radius: radius.to_f64(),
            }));
        }
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            for radius in [&family.radii[i], &family.radii[j]] {
                if !separated(
                    norm,
                    &family.centers[i],
                    &family.centers[j],
                    radius,
                    family.kind,
                    margin,
                )? {
                    return Ok(Some(FamilyViolation::NotSeparated {
                        i,
                        j,
                        distance: distance(norm, &family.centers[i], &family.centers[j])?
                            .to_f64(),
                        required: radius.to_f64() + margin,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Validates and certifies an equal-radius family at the given margin.
pub fn validate_family(family: &BallFamily, margin: f64) -> Result<Certificate> {
    Certificate::from_family(family, margin)
}

/// A serializable proof that an equal-radius intersecting Besicovitch family
/// exists: re-validation is a pure function of this record.
///
/// The cardinality is a certified lower bound for the constant `E` of the
/// ambient space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub norm: NormSpec,
    pub kind: BallKind,
    pub witness: Vector,
    pub centers: Vec<Vector>,
    pub radius: Scalar,
    pub margin: f64,
    pub cardinality: usize,
    pub mode: ArithMode,
}

impl Certificate {
    /// Validates the family and freezes it into a certificate. The family
    /// must be nonempty and equal-radius.
    pub fn from_family(family: &BallFamily, margin: f64) -> Result<Self> {
        let radius = family.common_radius()?.clone();
        if let Some(violation) = find_violation(family, margin)? {
            return Err(Error::InvalidFamily(violation.to_string()));
        }
        Ok(Certificate {
            norm: family.norm.clone(),
            kind: family.kind,
            witness: family.witness.clone(),
            centers: family.centers.clone(),
            radius,
            margin,
            cardinality: family.len(),
            mode: family.mode(),
        })
    }

    /// Certificate for an empty search result; carries the radius the search
    /// ran at and claims nothing.
    pub fn empty(norm: NormSpec, kind: BallKind, witness: Vector, radius: Scalar, margin: f64) -> Self {
        let mode = if norm.supports_exact()
            && witness.mode() == ArithMode::Exact
            && radius.is_exact()
        {
            ArithMode::Exact
        } else {
            ArithMode::Float
        };
        Certificate {
            norm,
            kind,
            witness,
            centers: Vec::new(),
            radius,
            margin,
            cardinality: 0,
            mode,
        }
    }

    /// The family this certificate describes.
    pub fn family(&self) -> Result<BallFamily> {
        BallFamily::equal_radius(
            self.norm.clone(),
            self.centers.clone(),
            self.radius.clone(),
            self.kind,
            self.witness.clone(),
        )
    }

    /// The certified lower bound for `E`.
    pub fn constant_claim(&self) -> usize {
        self.cardinality
    }

    /// Re-validates from the record alone: cardinality, mode tag, and every
    /// family inequality at the stored margin.
    pub fn verify(&self) -> Result<()> {
        self.verify_at(self.margin)
    }

    /// Re-validates at an overriding margin.
    pub fn verify_at(&self, margin: f64) -> Result<()> {
        if self.cardinality != self.centers.len() {
            return Err(Error::InvalidFamily(format!(
                "cardinality field {} but {} centers",
                self.cardinality,
                self.centers.len()
            )));
        }
        let family = self.family()?;
        if family.mode() != self.mode && !family.is_empty() {
            return Err(Error::InvalidFamily(format!(
                "mode tag {:?} but data is {:?}",
                self.mode,
                family.mode()
            )));
        }
        match find_violation(&family, margin)? {
            None => Ok(()),
            Some(v) => Err(Error::InvalidFamily(v.to_string())),
        }
    }
}
