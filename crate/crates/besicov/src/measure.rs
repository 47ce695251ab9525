//! Finite discrete measures and the averaging operator.
//!
//! A measure is a finite list of weighted atoms. The averaging operator
//! `A_r f(x) = (1/μB(x,r)) Σ_{y ∈ B(x,r)} f(y) w(y)` and its conjugate
//! function `a_r(y) = Σ_{x ∈ B(y,r)} w(x)/μB(x,r)` are evaluated through an
//! [`AveragingOperator`] handle that precomputes ball membership once per
//! `(measure, radius, kind)`. On a finite space `‖A_r‖_{L¹→L¹} = max a_r`,
//! so operator norms here are exact whenever the inputs are.

use std::ops::Index;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ball_contains, BallKind, BallSpec, NormSpec, Vector};
use crate::scalar::{scalar_sum, scalar_sum_owned, ArithMode, Scalar};

/// Slack for level-set membership `A_r f ≥ α` when either side is a float.
/// Exact scalars compare exactly; 1e-12 absorbs double rounding at desk
/// scale without admitting genuinely sub-threshold values.
pub const LEVEL_SET_TOL: f64 = 1e-12;

/// A finite measure `μ = Σ wᵢ δ_{xᵢ}` with all weights positive, together
/// with the norm that metrizes its ambient space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureWire", into = "MeasureWire")]
pub struct DiscreteMeasure {
    norm: NormSpec,
    atoms: Vec<Vector>,
    weights: Vec<Scalar>,
}

impl DiscreteMeasure {
    pub fn new(norm: NormSpec, atoms: Vec<Vector>, weights: Vec<Scalar>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::EmptyMeasure);
        }
        if weights.len() != atoms.len() {
            return Err(Error::WeightLength {
                got: weights.len(),
                atoms: atoms.len(),
            });
        }
        let dim = atoms[0].dim();
        norm.check_dim(dim)?;
        for a in &atoms {
            if a.dim() != dim {
                return Err(Error::DimensionMismatch(dim, a.dim()));
            }
        }
        for (i, w) in weights.iter().enumerate() {
            if !(w > &Scalar::zero()) {
                return Err(Error::NonpositiveWeight(i));
            }
        }
        // Sort-and-scan duplicate detection; equal coordinates mean equal
        // points under every norm handled here.
        let mut order: Vec<usize> = (0..atoms.len()).collect();
        order.sort_by(|&i, &j| atoms[i].total_cmp(&atoms[j]));
        for pair in order.windows(2) {
            if atoms[pair[0]] == atoms[pair[1]] {
                let (i, j) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                return Err(Error::DuplicateAtom(i, j));
            }
        }
        Ok(DiscreteMeasure {
            norm,
            atoms,
            weights,
        })
    }

    /// Unit mass at every atom.
    pub fn uniform(norm: NormSpec, atoms: Vec<Vector>) -> Result<Self> {
        let weights = vec![Scalar::one(); atoms.len()];
        DiscreteMeasure::new(norm, atoms, weights)
    }

    pub fn norm_spec(&self) -> &NormSpec {
        &self.norm
    }

    pub fn atoms(&self) -> &[Vector] {
        &self.atoms
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.atoms[0].dim()
    }

    pub fn total_mass(&self) -> Scalar {
        scalar_sum(&self.weights)
    }

    /// Exact iff the norm supports exact predicates and every coordinate and
    /// weight is an exact rational.
    pub fn mode(&self) -> ArithMode {
        let exact = self.norm.supports_exact()
            && self.atoms.iter().all(|a| a.mode() == ArithMode::Exact)
            && self.weights.iter().all(Scalar::is_exact);
        if exact {
            ArithMode::Exact
        } else {
            ArithMode::Float
        }
    }

    /// Index of the atom with exactly these coordinates.
    pub fn atom_index(&self, p: &Vector) -> Option<usize> {
        self.atoms.iter().position(|a| a == p)
    }

    /// Parses CSV rows `c1,...,cd,weight`. Values parse as exact rationals
    /// (`1/3`, `-2`, `0.25` all allowed); blank lines and `#` comments are
    /// skipped.
    pub fn from_csv(norm: NormSpec, text: &str) -> Result<Self> {
        let mut atoms = Vec::new();
        let mut weights = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() < 2 {
                return Err(Error::Csv {
                    line: lineno + 1,
                    reason: "need at least one coordinate and a weight".into(),
                });
            }
            let mut values = Vec::with_capacity(fields.len());
            for field in &fields {
                let v: Scalar = field.parse().map_err(|e| Error::Csv {
                    line: lineno + 1,
                    reason: format!("{e}"),
                })?;
                values.push(v);
            }
            let weight = values.pop().expect("len >= 2");
            atoms.push(Vector::new(values));
            weights.push(weight);
        }
        DiscreteMeasure::new(norm, atoms, weights)
    }

    /// Inverse of [`DiscreteMeasure::from_csv`] (the norm travels separately).
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (atom, w) in self.atoms.iter().zip(&self.weights) {
            let mut row: Vec<String> = atom.iter().map(Scalar::to_string).collect();
            row.push(w.to_string());
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct MeasureWire {
    norm: NormSpec,
    atoms: Vec<Vector>,
    weights: Vec<Scalar>,
}

impl TryFrom<MeasureWire> for DiscreteMeasure {
    type Error = Error;
    fn try_from(w: MeasureWire) -> Result<Self> {
        DiscreteMeasure::new(w.norm, w.atoms, w.weights)
    }
}

impl From<DiscreteMeasure> for MeasureWire {
    fn from(m: DiscreteMeasure) -> Self {
        MeasureWire {
            norm: m.norm,
            atoms: m.atoms,
            weights: m.weights,
        }
    }
}

/// Real values on the atoms of a measure, in atom order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SupportFunction(Vec<Scalar>);

impl SupportFunction {
    pub fn new(values: Vec<Scalar>) -> Self {
        SupportFunction(values)
    }

    pub fn constant(n: usize, value: Scalar) -> Self {
        SupportFunction(vec![value; n])
    }

    pub fn ones(n: usize) -> Self {
        Self::constant(n, Scalar::one())
    }

    /// `value · 1_{{atom i}}`.
    pub fn scaled_indicator(n: usize, i: usize, value: Scalar) -> Self {
        let mut values = vec![Scalar::zero(); n];
        values[i] = value;
        SupportFunction(values)
    }

    pub fn indicator(n: usize, i: usize) -> Self {
        Self::scaled_indicator(n, i, Scalar::one())
    }

    pub fn values(&self) -> &[Scalar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn abs(&self) -> SupportFunction {
        SupportFunction(self.0.iter().map(Scalar::abs).collect())
    }

    /// `max_i |f(x_i)|`, the L∞ norm (weights are irrelevant on full support).
    pub fn sup_norm(&self) -> Scalar {
        self.0
            .iter()
            .fold(Scalar::zero(), |acc, v| acc.max(&v.abs()))
    }

    fn check_len(&self, atoms: usize) -> Result<()> {
        if self.0.len() != atoms {
            return Err(Error::FunctionLength {
                got: self.0.len(),
                atoms,
            });
        }
        Ok(())
    }
}

impl Index<usize> for SupportFunction {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

/// `μB(center, r)`: total weight of the atoms inside the ball. Zero when the
/// ball misses the support (only possible for non-atom centers).
pub fn ball_measure(
    mu: &DiscreteMeasure,
    center: &Vector,
    radius: &Scalar,
    kind: BallKind,
) -> Result<Scalar> {
    let ball = BallSpec::new(center.clone(), radius.clone(), kind)?;
    let mut total = Scalar::zero();
    for (atom, w) in mu.atoms().iter().zip(mu.weights()) {
        if ball_contains(&mu.norm, &ball, atom, 0.0)? {
            total = &total + w;
        }
    }
    Ok(total)
}

/// The averaging operator `A_{r,μ}` with its ball incidence precomputed.
///
/// Construction is `O(n²)` distance comparisons (parallelized); every
/// subsequent application costs one pass over the incidence lists.
#[derive(Clone, Debug)]
pub struct AveragingOperator {
    measure: DiscreteMeasure,
    radius: Scalar,
    kind: BallKind,
    balls: Vec<Vec<usize>>,
    ball_measures: Vec<Scalar>,
}

impl AveragingOperator {
    pub fn new(measure: DiscreteMeasure, radius: Scalar, kind: BallKind) -> Result<Self> {
        if !(radius > Scalar::zero()) {
            return Err(Error::NotPositive("radius"));
        }
        let atoms = measure.atoms();
        let norm = measure.norm_spec();
        let balls: Vec<Vec<usize>> = atoms
            .par_iter()
            .map(|center| {
                let ball = BallSpec::new(center.clone(), radius.clone(), kind)?;
                let mut inside = Vec::new();
                for (j, atom) in atoms.iter().enumerate() {
                    if ball_contains(norm, &ball, atom, 0.0)? {
                        inside.push(j);
                    }
                }
                Ok(inside)
            })
            .collect::<Result<_>>()?;
        let ball_measures: Vec<Scalar> = balls
            .iter()
            .map(|inside| scalar_sum(inside.iter().map(|&j| &measure.weights()[j])))
            .collect();
        for (i, m) in ball_measures.iter().enumerate() {
            if !(m > &Scalar::zero()) {
                return Err(Error::EmptyBall {
                    index: i,
                    radius: radius.to_f64(),
                });
            }
        }
        Ok(AveragingOperator {
            measure,
            radius,
            kind,
            balls,
            ball_measures,
        })
    }

    pub fn measure(&self) -> &DiscreteMeasure {
        &self.measure
    }

    pub fn radius(&self) -> &Scalar {
        &self.radius
    }

    pub fn kind(&self) -> BallKind {
        self.kind
    }

    /// Atom indices inside `B(x_i, r)`.
    pub fn ball(&self, i: usize) -> &[usize] {
        &self.balls[i]
    }

    pub fn ball_measure_at(&self, i: usize) -> &Scalar {
        &self.ball_measures[i]
    }

    /// `(A_r f)(x_i)` for every atom.
    pub fn apply(&self, f: &SupportFunction) -> Result<SupportFunction> {
        f.check_len(self.measure.len())?;
        let weights = self.measure.weights();
        let values = self
            .balls
            .iter()
            .zip(&self.ball_measures)
            .map(|(inside, mass)| {
                let sum = scalar_sum_owned(inside.iter().map(|&j| &f[j] * &weights[j]));
                &sum / mass
            })
            .collect();
        Ok(SupportFunction(values))
    }

    /// The conjugate function `a_r(y) = Σ_{x ∈ B(y,r)} w(x)/μB(x,r)`.
    ///
    /// Ball membership is symmetric, so the same incidence lists serve both
    /// directions.
    pub fn conjugate(&self) -> SupportFunction {
        let weights = self.measure.weights();
        let values = self
            .balls
            .iter()
            .map(|near| {
                scalar_sum_owned(
                    near.iter()
                        .map(|&i| &weights[i] / &self.ball_measures[i]),
                )
            })
            .collect();
        SupportFunction(values)
    }

    /// `‖A_r‖_{L¹→L¹} = max_y a_r(y)` together with the first argmax atom.
    pub fn l1_operator_norm(&self) -> (Scalar, usize) {
        let conj = self.conjugate();
        let mut best = 0;
        for i in 1..conj.len() {
            if conj[i] > conj[best] {
                best = i;
            }
        }
        (conj[best].clone(), best)
    }

    /// Atoms with `A_r f ≥ α` (exact compare on exact data, else within
    /// [`LEVEL_SET_TOL`]).
    pub fn level_set(&self, f: &SupportFunction, alpha: &Scalar) -> Result<Vec<usize>> {
        if !(alpha > &Scalar::zero()) {
            return Err(Error::InvalidAlpha);
        }
        let g = self.apply(f)?;
        let mut set = Vec::new();
        for (i, v) in g.values().iter().enumerate() {
            let above = if v.is_exact() && alpha.is_exact() {
                v >= alpha
            } else {
                v.to_f64() >= alpha.to_f64() - LEVEL_SET_TOL
            };
            if above {
                set.push(i);
            }
        }
        Ok(set)
    }

    /// `α · μ{A_r f ≥ α}^{1/p} / ‖f‖_p`, a lower bound for the weak-(p,p)
    /// operator norm.
    pub fn weak_type_ratio(&self, f: &SupportFunction, alpha: &Scalar, p: f64) -> Result<Scalar> {
        let set = self.level_set(f, alpha)?;
        let fp = lp_norm(&self.measure, f, p)?;
        if fp.is_zero() {
            return Err(Error::NotPositive("‖f‖_p"));
        }
        let mass = scalar_sum(set.iter().map(|&i| &self.measure.weights()[i]));
        if mass.is_zero() {
            return Ok(Scalar::zero());
        }
        Ok(&(alpha * &scalar_root(&mass, p)?) / &fp)
    }
}

/// `s^{1/p}` with the exact cases (`p = 1`, and `p = 2` on perfect squares)
/// preserved.
fn scalar_root(s: &Scalar, p: f64) -> Result<Scalar> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    if p == 1.0 {
        Ok(s.clone())
    } else if p == 2.0 {
        Ok(s.sqrt())
    } else {
        Ok(Scalar::from_f64(s.to_f64().powf(1.0 / p)))
    }
}

/// Weighted p-norm `(Σ w |f|^p)^{1/p}` for `p ≥ 1`; exact for `p = 1` on
/// exact data and for `p = 2` when the square sum is a perfect square.
pub fn lp_norm(mu: &DiscreteMeasure, f: &SupportFunction, p: f64) -> Result<Scalar> {
    f.check_len(mu.len())?;
    if !p.is_finite() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    let weights = mu.weights();
    let sum = if p == p.trunc() && p <= i32::MAX as f64 {
        scalar_sum_owned(
            f.values()
                .iter()
                .zip(weights)
                .map(|(v, w)| &v.abs().powi(p as i32) * w),
        )
    } else {
        Scalar::from_f64(
            f.values()
                .iter()
                .zip(weights)
                .map(|(v, w)| v.abs_powf(p) * w.to_f64())
                .sum(),
        )
    };
    scalar_root(&sum, p)
}

/// Pointwise max over the listed radii of `A_r|f|`; dominates each single
/// `A_r|f|` by construction.
pub fn maximal_apply(
    mu: &DiscreteMeasure,
    radii: &[Scalar],
    kind: BallKind,
    f: &SupportFunction,
) -> Result<SupportFunction> {
    if radii.is_empty() {
        return Err(Error::NoRadii);
    }
    let fabs = f.abs();
    let mut best: Option<Vec<Scalar>> = None;
    for r in radii {
        let op = AveragingOperator::new(mu.clone(), r.clone(), kind)?;
        let g = op.apply(&fabs)?;
        best = Some(match best {
            None => g.values().to_vec(),
            Some(acc) => acc
                .iter()
                .zip(g.values())
                .map(|(a, b)| a.max(b))
                .collect(),
        });
    }
    Ok(SupportFunction(best.expect("radii nonempty")))
}
