//! Stock certificates attaining the sharp constants.
//!
//! Each function builds a named reference configuration, validates it, and
//! returns the certificate. Rational configurations certify at margin 0 in
//! exact arithmetic; the two euclidean ones place centers at radius
//! `1 − SPHERE_SHRINK` and certify at [`DEFAULT_FLOAT_MARGIN`].

use crate::error::{Error, Result};
use crate::geometry::{BallKind, NormSpec, Vector};
use crate::scalar::Scalar;

use super::candidates::{icosahedron_points, SPHERE_SHRINK};
use super::{BallFamily, Certificate, DEFAULT_FLOAT_MARGIN};

fn certify_exact(norm: NormSpec, centers: Vec<Vector>, witness: Vector) -> Result<Certificate> {
    let family = BallFamily::equal_radius(norm, centers, Scalar::one(), BallKind::Closed, witness)?;
    Certificate::from_family(&family, 0.0)
}

fn certify_float(norm: NormSpec, centers: Vec<Vector>, dim: usize) -> Result<Certificate> {
    let family = BallFamily::equal_radius(
        norm,
        centers,
        Scalar::from_f64(1.0),
        BallKind::Closed,
        Vector::from_f64s(&vec![0.0; dim]),
    )?;
    Certificate::from_family(&family, DEFAULT_FLOAT_MARGIN)
}

/// Two unit intervals touching at the origin: cardinality 2, the sharp
/// constant on the line.
pub fn one_dim_pair() -> Result<Certificate> {
    certify_exact(
        NormSpec::L1,
        vec![Vector::from_ints(&[-1]), Vector::from_ints(&[1])],
        Vector::from_ints(&[0]),
    )
}

/// The four ℓ¹ unit vectors in the plane: cardinality 4, sharp for norms
/// whose unit ball is a parallelogram.
pub fn l1_cross() -> Result<Certificate> {
    certify_exact(
        NormSpec::L1,
        vec![
            Vector::from_ints(&[1, 0]),
            Vector::from_ints(&[0, 1]),
            Vector::from_ints(&[-1, 0]),
            Vector::from_ints(&[0, -1]),
        ],
        Vector::from_ints(&[0, 0]),
    )
}

/// The `2^dim` corners of `{±1}^dim` under ℓ∞: pairwise distance 2, all on
/// the unit sphere. Sharp for ℓ∞ in every dimension.
pub fn linf_corners(dim: usize) -> Result<Certificate> {
    if dim == 0 {
        return Err(Error::EmptyVector);
    }
    // Validation is quadratic in 2^dim; cap where it stays sub-second.
    if dim > 10 {
        return Err(Error::DimensionCap(dim, 10));
    }
    let mut centers = Vec::with_capacity(1 << dim);
    for mask in 0..1u32 << dim {
        let coords: Vec<i64> = (0..dim)
            .map(|b| if mask >> b & 1 == 1 { 1 } else { -1 })
            .collect();
        centers.push(Vector::from_ints(&coords));
    }
    certify_exact(NormSpec::Linf, centers, Vector::from_ints(&vec![0; dim]))
}

/// Five euclidean unit vectors at angles `2πk/5`: pairwise distance
/// `2 sin(π/5) ≈ 1.1756`, cardinality 5, sharp for every planar norm whose
/// unit ball is not a parallelogram.
pub fn pentagon() -> Result<Certificate> {
    let rho = 1.0 - SPHERE_SHRINK;
    let centers = (0..5)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / 5.0;
            Vector::from_f64s(&[rho * theta.cos(), rho * theta.sin()])
        })
        .collect();
    certify_float(NormSpec::L2, centers, 2)
}

/// The twelve icosahedron vertices: pairwise distance `≈ 1.0515`,
/// cardinality 12, sharp for euclidean three-space.
pub fn icosahedron() -> Result<Certificate> {
    certify_float(NormSpec::L2, icosahedron_points(1.0 - SPHERE_SHRINK), 3)
}
