//! Open/closed family conversion and equal-radius normalization.
//!
//! Closed and open families are interchangeable: a closed family reopens at
//! the minimal pairwise center distance, and an open family closes at the
//! original radius minus half the witness's smallest membership slack. In a
//! normed space, any valid intersecting family normalizes to an equal-radius
//! family of the same cardinality with centers on the unit sphere.

use crate::error::{Error, Result};
use crate::geometry::{distance, normalize_to_sphere, BallKind, Vector};
use crate::scalar::{ArithMode, Scalar};

use super::{find_violation, BallFamily};

fn require_valid(family: &BallFamily) -> Result<()> {
    match find_violation(family, 0.0)? {
        None => Ok(()),
        Some(v) => Err(Error::InvalidFamily(v.to_string())),
    }
}

/// Converts a valid equal-radius family to the other ball kind, preserving
/// centers, witness, and cardinality.
///
/// Closed to open: the new radius is the minimal pairwise center distance
/// (any radius in `(r, t]` works; the maximum is taken, and the open-kind
/// separation allows equality). A singleton has no pairs and reopens at
/// `2r`. Open to closed: the new radius is `r − δ` with `δ` half the
/// smallest witness membership slack, which is positive for any valid open
/// family.
pub fn open_closed_convert(family: &BallFamily) -> Result<BallFamily> {
    let radius = family.common_radius()?.clone();
    require_valid(family)?;
    let norm = family.norm_spec();
    let (kind, new_radius) = match family.kind() {
        BallKind::Closed => {
            let mut t: Option<Scalar> = None;
            for i in 0..family.len() {
                for j in i + 1..family.len() {
                    let d = distance(norm, &family.centers()[i], &family.centers()[j])?;
                    t = Some(match t {
                        None => d,
                        Some(t) => t.min(&d),
                    });
                }
            }
            let t = t.unwrap_or_else(|| &radius * &Scalar::from_int(2));
            (BallKind::Open, t)
        }
        BallKind::Open => {
            let mut slack: Option<Scalar> = None;
            for center in family.centers() {
                let s = &radius - &distance(norm, center, family.witness())?;
                slack = Some(match slack {
                    None => s,
                    Some(slack) => slack.min(&s),
                });
            }
            let slack = slack.ok_or(Error::EmptyFamily)?;
            if !(slack > Scalar::zero()) {
                return Err(Error::InvalidFamily(
                    "witness sits on an open ball boundary".into(),
                ));
            }
            let delta = &slack / &Scalar::from_int(2);
            (BallKind::Closed, &radius - &delta)
        }
    };
    BallFamily::equal_radius(
        norm.clone(),
        family.centers().to_vec(),
        new_radius,
        kind,
        family.witness().clone(),
    )
}

/// Normalizes a valid intersecting family (mixed radii allowed) to an
/// equal-radius closed family of the same cardinality: witness at the
/// origin, centers on the unit sphere, pairwise distances above 1.
///
/// The output radius is the largest computed center norm, which is exactly 1
/// whenever the norm evaluates exactly; in float mode it absorbs the last
/// ulp of the projection.
pub fn equalize_family(family: &BallFamily) -> Result<BallFamily> {
    require_valid(family)?;
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let norm = family.norm_spec();
    let centers = normalize_to_sphere(norm, family.centers(), family.witness())?;
    let mut radius = Scalar::zero();
    for c in &centers {
        radius = radius.max(&norm.norm(c)?);
    }
    let origin = Vector::new(vec![Scalar::zero(); family.witness().dim()]);
    let origin = if family.mode() == ArithMode::Float {
        Vector::from_f64s(&vec![0.0; family.witness().dim()])
    } else {
        origin
    };
    BallFamily::equal_radius(norm.clone(), centers, radius, BallKind::Closed, origin)
}
