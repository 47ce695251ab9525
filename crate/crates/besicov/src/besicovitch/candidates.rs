//! Finite candidate universes for family search.
//!
//! After witness normalization every configuration of interest lives on the
//! unit sphere, so sphere samplers are the productive default; lattices cover
//! the polytope norms whose extremal configurations sit at corners.
//!
//! Closed-ball membership at margin η requires `d(p, anchor) ≤ r − η`, so
//! float samplers place points at radius `1 − SPHERE_SHRINK` instead of 1:
//! the shrink is an order of magnitude above the default margin and eight
//! orders above `f64` rounding, and it moves pairwise distances by far less
//! than any separation slack that matters.

use crate::error::{Error, Result};
use crate::geometry::{ball_contains, BallKind, BallSpec, NormSpec, Vector};
use crate::scalar::Scalar;

/// Radial pullback applied by the float sphere samplers.
pub const SPHERE_SHRINK: f64 = 1e-8;

/// Golden ratio, for low-discrepancy angle sequences.
const PHI: f64 = 1.618033988749894848;

/// A finite search universe: points that may serve as centers of radius
/// `radius` balls around `anchor`.
#[derive(Clone, Debug)]
pub struct CandidateSet {
    norm: NormSpec,
    anchor: Vector,
    radius: Scalar,
    points: Vec<Vector>,
}

impl CandidateSet {
    pub fn new(
        norm: NormSpec,
        anchor: Vector,
        radius: Scalar,
        points: Vec<Vector>,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyCandidates);
        }
        if !(radius > Scalar::zero()) {
            return Err(Error::NotPositive("radius"));
        }
        let dim = anchor.dim();
        norm.check_dim(dim)?;
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch(dim, p.dim()));
            }
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&i, &j| points[i].total_cmp(&points[j]));
        for pair in order.windows(2) {
            if points[pair[0]] == points[pair[1]] {
                let (i, j) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                return Err(Error::DuplicateAtom(i, j));
            }
        }
        Ok(CandidateSet {
            norm,
            anchor,
            radius,
            points,
        })
    }

    pub fn norm_spec(&self) -> &NormSpec {
        &self.norm
    }

    pub fn anchor(&self) -> &Vector {
        &self.anchor
    }

    pub fn radius(&self) -> &Scalar {
        &self.radius
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Indices of points whose ball contains the anchor at the given margin;
    /// only these may join a family witnessed at the anchor.
    pub fn admissible(&self, kind: BallKind, margin: f64) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, p) in self.points.iter().enumerate() {
            let ball = BallSpec::new(p.clone(), self.radius.clone(), kind)?;
            if ball_contains(&self.norm, &ball, &self.anchor, margin)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Uniform grid over `[-1, 1]^dim` with `per_axis` float coordinates per
    /// axis, anchored at the origin with unit radius.
    pub fn lattice(norm: NormSpec, dim: usize, per_axis: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        if per_axis < 2 {
            return Err(Error::NotPositive("per_axis - 1"));
        }
        let mut points = Vec::with_capacity(per_axis.pow(dim as u32));
        let mut idx = vec![0usize; dim];
        loop {
            let coords: Vec<f64> = idx
                .iter()
                .map(|&k| -1.0 + 2.0 * k as f64 / (per_axis - 1) as f64)
                .collect();
            points.push(Vector::from_f64s(&coords));
            let mut carry = dim;
            while carry > 0 {
                carry -= 1;
                idx[carry] += 1;
                if idx[carry] < per_axis {
                    break;
                }
                idx[carry] = 0;
                if carry == 0 {
                    return CandidateSet::new(
                        norm,
                        Vector::from_f64s(&vec![0.0; dim]),
                        Scalar::from_f64(1.0),
                        points,
                    );
                }
            }
        }
    }

    /// `n` golden-angle points on the planar circle of radius
    /// `1 − SPHERE_SHRINK`, anchored at the origin with unit radius.
    pub fn fib_circle(norm: NormSpec, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCandidates);
        }
        let rho = 1.0 - SPHERE_SHRINK;
        let points = (0..n)
            .map(|k| {
                let theta = std::f64::consts::TAU * (k as f64 / PHI).fract();
                Vector::from_f64s(&[rho * theta.cos(), rho * theta.sin()])
            })
            .collect();
        CandidateSet::new(
            norm,
            Vector::from_f64s(&[0.0, 0.0]),
            Scalar::from_f64(1.0),
            points,
        )
    }

    /// `n` Fibonacci-lattice points on the 2-sphere of radius
    /// `1 − SPHERE_SHRINK`, anchored at the origin with unit radius.
    pub fn fib_sphere(norm: NormSpec, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCandidates);
        }
        let rho = 1.0 - SPHERE_SHRINK;
        let points = (0..n)
            .map(|k| {
                let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
                let ring = (1.0 - z * z).max(0.0).sqrt();
                let theta = std::f64::consts::TAU * (k as f64 / PHI).fract();
                Vector::from_f64s(&[
                    rho * ring * theta.cos(),
                    rho * ring * theta.sin(),
                    rho * z,
                ])
            })
            .collect();
        CandidateSet::new(
            norm,
            Vector::from_f64s(&[0.0, 0.0, 0.0]),
            Scalar::from_f64(1.0),
            points,
        )
    }

    /// The `2^dim` corners of `{±1}^dim` plus the origin, exact, anchored at
    /// the origin with unit radius.
    pub fn corners(norm: NormSpec, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        if dim > 20 {
            return Err(Error::DimensionCap(dim, 20));
        }
        let mut points = Vec::with_capacity(1 << dim);
        for mask in 0..1u32 << dim {
            let coords: Vec<i64> = (0..dim)
                .map(|b| if mask >> b & 1 == 1 { 1 } else { -1 })
                .collect();
            points.push(Vector::from_ints(&coords));
        }
        points.push(Vector::from_ints(&vec![0; dim]));
        CandidateSet::new(
            norm,
            Vector::from_ints(&vec![0; dim]),
            Scalar::one(),
            points,
        )
    }

    /// The 12 icosahedron vertices on the euclidean 2-sphere (pulled to
    /// radius `1 − SPHERE_SHRINK`), anchored at the origin with unit radius.
    pub fn icosahedron() -> Result<Self> {
        let points = icosahedron_points(1.0 - SPHERE_SHRINK);
        CandidateSet::new(
            NormSpec::L2,
            Vector::from_f64s(&[0.0, 0.0, 0.0]),
            Scalar::from_f64(1.0),
            points,
        )
    }
}

/// Unit icosahedron vertices `(0, ±1, ±φ)/√(1+φ²)` and cyclic shifts,
/// scaled by `rho`.
pub(crate) fn icosahedron_points(rho: f64) -> Vec<Vector> {
    let scale = rho / (1.0 + PHI * PHI).sqrt();
    let mut points = Vec::with_capacity(12);
    for &(a, b) in &[(1.0, PHI), (1.0, -PHI), (-1.0, PHI), (-1.0, -PHI)] {
        points.push(Vector::from_f64s(&[0.0, a * scale, b * scale]));
        points.push(Vector::from_f64s(&[a * scale, b * scale, 0.0]));
        points.push(Vector::from_f64s(&[b * scale, 0.0, a * scale]));
    }
    points
}
