//! Points, norms, and ball predicates with controlled exactness.
//!
//! Everything a family certificate depends on goes through here: distances,
//! ball membership, the separation predicate, and the sphere normalization
//! used to turn an intersecting family into an equal-radius one.

use std::cmp::Ordering;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{ArithMode, Scalar};

mod norm;
mod polytope;

pub use norm::NormSpec;
pub use polytope::PolytopeGauge;

/// A point of d-dimensional coordinate space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }

    pub fn from_f64s(coords: &[f64]) -> Self {
        Vector(coords.iter().map(|&x| Scalar::from_f64(x)).collect())
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn from_ratios(coords: &[(i64, i64)]) -> Self {
        Vector(coords.iter().map(|&(n, d)| Scalar::ratio(n, d)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    /// Exact iff every coordinate is exact.
    pub fn mode(&self) -> ArithMode {
        if self.0.iter().all(Scalar::is_exact) {
            ArithMode::Exact
        } else {
            ArithMode::Float
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn sub(&self, rhs: &Vector) -> Result<Vector> {
        self.check_dim(rhs)?;
        Ok(Vector(
            self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, factor: &Scalar) -> Vector {
        Vector(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn dot(&self, rhs: &Vector) -> Result<Scalar> {
        self.check_dim(rhs)?;
        Ok(self
            .0
            .iter()
            .zip(&rhs.0)
            .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b)))
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.0.iter().map(Scalar::to_f64).collect()
    }

    fn check_dim(&self, rhs: &Vector) -> Result<()> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch(self.dim(), rhs.dim()));
        }
        if self.dim() == 0 {
            return Err(Error::EmptyVector);
        }
        Ok(())
    }

    /// Lexicographic total order, used for deduplication.
    pub fn total_cmp(&self, rhs: &Vector) -> Ordering {
        for (a, b) in self.0.iter().zip(&rhs.0) {
            match a.total_cmp(b) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        self.0.len().cmp(&rhs.0.len())
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

/// Metrically open or metrically closed balls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BallKind {
    Open,
    Closed,
}

/// A ball `B(center, radius)` of the given kind.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BallSpec {
    pub center: Vector,
    pub radius: Scalar,
    pub kind: BallKind,
}

impl BallSpec {
    pub fn new(center: Vector, radius: Scalar, kind: BallKind) -> Result<Self> {
        if !(radius > Scalar::zero()) {
            return Err(Error::NotPositive("radius"));
        }
        Ok(BallSpec {
            center,
            radius,
            kind,
        })
    }
}

/// `‖a − b‖`. Exact for L1/Linf/polytope gauges on rational inputs; the
/// euclidean value is exact only when the squared distance is a perfect
/// square (comparisons stay exact regardless, see [`distance_cmp`]).
pub fn distance(norm: &NormSpec, a: &Vector, b: &Vector) -> Result<Scalar> {
    let diff = a.sub(b)?;
    norm.norm(&diff)
}

/// Compares `‖a − b‖` with `threshold` without losing exactness: for the
/// euclidean norm on rational inputs the comparison runs on squared values.
pub fn distance_cmp(
    norm: &NormSpec,
    a: &Vector,
    b: &Vector,
    threshold: &Scalar,
) -> Result<Ordering> {
    let diff = a.sub(b)?;
    norm.cmp_norm(&diff, threshold)
}

fn exact_inputs(norm: &NormSpec, vectors: &[&Vector], extra: &[&Scalar]) -> bool {
    norm.supports_exact()
        && vectors.iter().all(|v| v.mode() == ArithMode::Exact)
        && extra.iter().all(|s| s.is_exact())
}

fn guard_margin(exact: bool, margin: f64) -> Result<()> {
    if margin < 0.0 || !margin.is_finite() {
        return Err(Error::NotPositive("margin"));
    }
    if exact && margin > 0.0 {
        return Err(Error::ExactMargin(margin));
    }
    Ok(())
}

fn shifted(r: &Scalar, delta: f64) -> Scalar {
    // Keeps the threshold exact when no margin is requested.
    if delta == 0.0 {
        r.clone()
    } else {
        r + &Scalar::from_f64(delta)
    }
}

/// Membership of `p` in `ball`, conservatively shrunk by `margin`.
///
/// Closed balls: `d(center, p) <= radius - margin`; open balls use strict
/// `<`. A positive margin makes a float answer certificate-grade; exact
/// inputs must use margin 0.
pub fn ball_contains(norm: &NormSpec, ball: &BallSpec, p: &Vector, margin: f64) -> Result<bool> {
    let exact = exact_inputs(norm, &[&ball.center, p], &[&ball.radius]);
    guard_margin(exact, margin)?;
    let threshold = shifted(&ball.radius, -margin);
    let ord = distance_cmp(norm, &ball.center, p, &threshold)?;
    Ok(match ball.kind {
        BallKind::Closed => ord != Ordering::Greater,
        BallKind::Open => ord == Ordering::Less,
    })
}

/// The Besicovitch separation predicate at radius `r`: neither point may lie
/// in the partner ball. Closed balls require `d(a, b) > r + margin`; open
/// balls require `d(a, b) >= r + margin` (strictness dual to membership).
pub fn separated(
    norm: &NormSpec,
    a: &Vector,
    b: &Vector,
    r: &Scalar,
    kind: BallKind,
    margin: f64,
) -> Result<bool> {
    let exact = exact_inputs(norm, &[a, b], &[r]);
    guard_margin(exact, margin)?;
    let threshold = shifted(r, margin);
    let ord = distance_cmp(norm, a, b, &threshold)?;
    Ok(match kind {
        BallKind::Closed => ord == Ordering::Greater,
        BallKind::Open => ord != Ordering::Less,
    })
}

/// Translates `witness` to the origin, rescales by the smallest distance to
/// it, and projects every point to the unit sphere of `norm`.
///
/// This is the normalization that converts an intersecting family of balls in
/// a normed space into an equal-radius one of the same cardinality.
pub fn normalize_to_sphere(
    norm: &NormSpec,
    points: &[Vector],
    witness: &Vector,
) -> Result<Vec<Vector>> {
    let mut translated = Vec::with_capacity(points.len());
    for (index, p) in points.iter().enumerate() {
        let t = p.sub(witness)?;
        if t.is_zero() {
            return Err(Error::PointAtWitness { index });
        }
        translated.push(t);
    }
    let norms: Vec<Scalar> = translated
        .iter()
        .map(|t| norm.norm(t))
        .collect::<Result<_>>()?;
    let r_y = norms
        .iter()
        .min_by(|a, b| a.total_cmp(b))
        .ok_or(Error::EmptyFamily)?
        .clone();
    let scaled: Vec<Vector> = translated
        .iter()
        .map(|t| t.scale(&r_y.recip()))
        .collect();
    let mut out = Vec::with_capacity(scaled.len());
    for s in &scaled {
        let n = norm.norm(s)?;
        out.push(s.scale(&n.recip()));
    }
    Ok(out)
}

/// Lower bound `(‖a−b‖ − |‖a‖−‖b‖|) / min{‖a‖, ‖b‖}` for the distance
/// between the unit-sphere projections of `a` and `b`.
pub fn angular_separation_bound(norm: &NormSpec, a: &Vector, b: &Vector) -> Result<Scalar> {
    let na = norm.norm(a)?;
    let nb = norm.norm(b)?;
    if na.is_zero() || nb.is_zero() {
        return Err(Error::ZeroVector);
    }
    let dist = distance(norm, a, b)?;
    let gap = (&na - &nb).abs();
    let bound = &(&dist - &gap) / &na.min(&nb);
    // Triangle inequality makes this nonnegative; clamp float dust.
    Ok(bound.max(&Scalar::zero()))
}
