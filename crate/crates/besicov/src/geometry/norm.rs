//! Norm specifications and exactness-aware evaluation.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{ArithMode, Scalar};

use super::polytope::PolytopeGauge;
use super::Vector;

/// A norm on d-dimensional coordinate space.
///
/// L1, Linf, and polytope gauges evaluate exactly on rational inputs. The
/// euclidean norm compares exactly (on squared values) but its value is
/// irrational in general; `Lp` for other exponents is float-only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NormSpecWire", into = "NormSpecWire")]
pub enum NormSpec {
    L1,
    L2,
    Linf,
    Lp(f64),
    Polytope(Arc<PolytopeGauge>),
}

impl NormSpec {
    /// `p`-norm for `p > 1`; use [`NormSpec::L1`] / [`NormSpec::Linf`] for the endpoints.
    pub fn lp(p: f64) -> Result<Self> {
        if !p.is_finite() || p <= 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        Ok(NormSpec::Lp(p))
    }

    /// Gauge of the origin-symmetric polytope spanned by `vertices`.
    pub fn polytope(vertices: Vec<Vector>) -> Result<Self> {
        Ok(NormSpec::Polytope(Arc::new(PolytopeGauge::new(vertices)?)))
    }

    /// Whether comparisons against rational inputs are exact.
    pub fn supports_exact(&self) -> bool {
        !matches!(self, NormSpec::Lp(_))
    }

    /// Fixed dimension, when the norm has one (polytope gauges do).
    pub fn fixed_dim(&self) -> Option<usize> {
        match self {
            NormSpec::Polytope(g) => Some(g.dim()),
            _ => None,
        }
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        match self.fixed_dim() {
            Some(d) if d != dim => Err(Error::DimensionMismatch(d, dim)),
            _ => Ok(()),
        }
    }

    /// `‖v‖`, as exact as the norm allows.
    pub fn norm(&self, v: &Vector) -> Result<Scalar> {
        self.check_dim(v.dim())?;
        Ok(match self {
            NormSpec::L1 => v
                .iter()
                .fold(Scalar::zero(), |acc, c| &acc + &c.abs()),
            NormSpec::Linf => v
                .iter()
                .fold(Scalar::zero(), |acc, c| acc.max(&c.abs())),
            NormSpec::L2 => squared_sum(v).sqrt(),
            NormSpec::Lp(p) => {
                let sum: f64 = v.iter().map(|c| c.abs_powf(*p)).sum();
                Scalar::from_f64(sum.powf(1.0 / p))
            }
            NormSpec::Polytope(g) => g.gauge(v)?,
        })
    }

    /// Compares `‖v‖` with `threshold`; exact whenever the inputs are
    /// rational and the norm supports it (euclidean comparisons square both
    /// sides first).
    pub fn cmp_norm(&self, v: &Vector, threshold: &Scalar) -> Result<Ordering> {
        self.check_dim(v.dim())?;
        let ord = match self {
            NormSpec::L2 => {
                if v.mode() == ArithMode::Exact && threshold.is_exact() {
                    if threshold.is_negative() {
                        Some(Ordering::Greater)
                    } else {
                        squared_sum(v).partial_cmp(&(threshold * threshold))
                    }
                } else {
                    self.norm(v)?.partial_cmp(threshold)
                }
            }
            _ => self.norm(v)?.partial_cmp(threshold),
        };
        ord.ok_or(Error::ScalarParse("NaN in comparison".into()))
    }
}

fn squared_sum(v: &Vector) -> Scalar {
    v.iter().fold(Scalar::zero(), |acc, c| &acc + &(c * c))
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum NormSpecWire {
    L1,
    L2,
    Linf,
    Lp { p: f64 },
    Polytope { vertices: Vec<Vector> },
}

impl TryFrom<NormSpecWire> for NormSpec {
    type Error = Error;
    fn try_from(wire: NormSpecWire) -> Result<Self> {
        match wire {
            NormSpecWire::L1 => Ok(NormSpec::L1),
            NormSpecWire::L2 => Ok(NormSpec::L2),
            NormSpecWire::Linf => Ok(NormSpec::Linf),
            NormSpecWire::Lp { p } => NormSpec::lp(p),
            NormSpecWire::Polytope { vertices } => NormSpec::polytope(vertices),
        }
    }
}

impl From<NormSpec> for NormSpecWire {
    fn from(spec: NormSpec) -> Self {
        match spec {
            NormSpec::L1 => NormSpecWire::L1,
            NormSpec::L2 => NormSpecWire::L2,
            NormSpec::Linf => NormSpecWire::Linf,
            NormSpec::Lp(p) => NormSpecWire::Lp { p },
            NormSpec::Polytope(g) => NormSpecWire::Polytope {
                vertices: g.vertices().to_vec(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lp_validation() {
        assert!(NormSpec::lp(1.0).is_err());
        assert!(NormSpec::lp(f64::INFINITY).is_err());
        assert!(NormSpec::lp(2.5).is_ok());
    }

    #[test]
    fn l2_exact_comparison_at_boundary() {
        // ‖(1,1)‖₂ = √2 vs threshold 3/2: exact squared comparison, 2 < 9/4.
        let v = Vector::from_ints(&[1, 1]);
        let ord = NormSpec::L2.cmp_norm(&v, &Scalar::ratio(3, 2)).unwrap();
        assert_eq!(ord, Ordering::Less);
        let ord = NormSpec::L2.cmp_norm(&v, &Scalar::ratio(7, 5)).unwrap();
        assert_eq!(ord, Ordering::Greater); // 2 > 49/25
        assert_eq!(
            NormSpec::L2.cmp_norm(&v, &Scalar::from_int(-1)).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn lp_between_l1_and_linf() {
        let v = Vector::from_f64s(&[3.0, -4.0]);
        let lp = NormSpec::lp(3.0).unwrap().norm(&v).unwrap().to_f64();
        let l1 = NormSpec::L1.norm(&v).unwrap().to_f64();
        let linf = NormSpec::Linf.norm(&v).unwrap().to_f64();
        assert!(linf <= lp && lp <= l1);
        assert!((lp - (27.0f64 + 64.0).powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        for spec in [
            NormSpec::L1,
            NormSpec::L2,
            NormSpec::Linf,
            NormSpec::lp(2.5).unwrap(),
        ] {
            let s = serde_json::to_string(&spec).unwrap();
            let back: NormSpec = serde_json::from_str(&s).unwrap();
            assert_eq!(spec, back);
        }
        let json = r#"{"kind":"lp","p":2.5}"#;
        let spec: NormSpec = serde_json::from_str(json).unwrap();
        assert_eq!(spec, NormSpec::Lp(2.5));
        assert!(serde_json::from_str::<NormSpec>(r#"{"kind":"lp","p":0.5}"#).is_err());
    }
}
