//! Greedy covering of a small ball by least-massive larger balls.
//!
//! Starting from the atoms of the open ball `B°(y, s)`, repeatedly select
//! the uncovered atom whose open ball `B°(·, r)` has least measure and mark
//! everything in that ball covered. The selected balls form a Besicovitch
//! family that all contain `y`, so their count `m` is at most the constant
//! `E` of the space; and the conjugate-function partial sum
//! `Σ_{x ∈ B°(y,s)} w(x)/μB°(x,r)` is at most `m`. On a finite space every
//! infimum is attained, so no slack parameter is needed.

use crate::error::{Error, Result};
use crate::geometry::{BallKind, Vector};
use crate::measure::{ball_measure, DiscreteMeasure};
use crate::scalar::{scalar_sum_owned, Scalar};

use super::BallFamily;

/// Result of the greedy covering run.
#[derive(Clone, Debug)]
pub struct CoverOutcome {
    /// Selected centers `u_1, …, u_m` in selection order.
    pub points: Vec<Vector>,
    /// Atom indices of the selected centers.
    pub chosen: Vec<usize>,
    /// `m`, the number of balls used.
    pub count: usize,
    /// `Σ_{x ∈ B°(y,s)} w(x)/μB°(x,r)`, bounded by `count`.
    pub partial_sum: Scalar,
    family: BallFamily,
}

impl CoverOutcome {
    /// The selected balls as an open-kind family witnessed at `y`.
    pub fn family(&self) -> &BallFamily {
        &self.family
    }
}

/// Runs the greedy cover of `B°(y, s)` by balls `B°(u_i, r)` with
/// `0 < s < r`. Ties in the minimal-measure choice break toward the lowest
/// atom index.
pub fn greedy_cover(
    mu: &DiscreteMeasure,
    y: &Vector,
    s: &Scalar,
    r: &Scalar,
) -> Result<CoverOutcome> {
    if !(s > &Scalar::zero()) || !(s < r) {
        return Err(Error::CoverRadii {
            s: s.to_f64(),
            r: r.to_f64(),
        });
    }
    if mu.atom_index(y).is_none() {
        return Err(Error::NotAnAtom(format!("{:?}", y.to_f64s())));
    }

    // Atoms of B°(y, s), with their displayed ball measures μB°(·, r).
    let mut inner: Vec<usize> = Vec::new();
    for (i, atom) in mu.atoms().iter().enumerate() {
        if in_open_ball(mu, y, s, atom)? {
            inner.push(i);
        }
    }
    let ball_masses: Vec<Scalar> = inner
        .iter()
        .map(|&i| ball_measure(mu, &mu.atoms()[i], r, BallKind::Open))
        .collect::<Result<_>>()?;

    let partial_sum = scalar_sum_owned(
        inner
            .iter()
            .zip(&ball_masses)
            .map(|(&i, m)| &mu.weights()[i] / m),
    );

    let mut uncovered: Vec<bool> = vec![true; inner.len()];
    let mut chosen: Vec<usize> = Vec::new();
    loop {
        let mut pick: Option<usize> = None;
        for (k, &covered_flag) in uncovered.iter().enumerate() {
            if !covered_flag {
                continue;
            }
            pick = match pick {
                None => Some(k),
                Some(best) => {
                    if ball_masses[k] < ball_masses[best] {
                        Some(k)
                    } else {
                        Some(best)
                    }
                }
            };
        }
        let Some(k) = pick else { break };
        let u = inner[k];
        chosen.push(u);
        for (j, &i) in inner.iter().enumerate() {
            if uncovered[j] && in_open_ball(mu, &mu.atoms()[u], r, &mu.atoms()[i])? {
                uncovered[j] = false;
            }
        }
    }

    let points: Vec<Vector> = chosen.iter().map(|&i| mu.atoms()[i].clone()).collect();
    let family = BallFamily::equal_radius(
        mu.norm_spec().clone(),
        points.clone(),
        r.clone(),
        BallKind::Open,
        y.clone(),
    )?;
    Ok(CoverOutcome {
        count: points.len(),
        points,
        chosen,
        partial_sum,
        family,
    })
}

fn in_open_ball(mu: &DiscreteMeasure, center: &Vector, r: &Scalar, p: &Vector) -> Result<bool> {
    use crate::geometry::{ball_contains, BallSpec};
    let ball = BallSpec::new(center.clone(), r.clone(), BallKind::Open)?;
    ball_contains(mu.norm_spec(), &ball, p, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::besicovitch::find_violation;
    use crate::geometry::NormSpec;

    #[test]
    fn hand_oracle_three_points() {
        // Atoms {−1/2, 0, 1/2}: B°(0, 9/10) is everything; each μB°(·, 1) = 2
        // except the middle one (= 3). Greedy picks −1/2 (covers −1/2 and 0),
        // then 1/2. Partial sum = 1/2 + 1/3 + 1/2 = 4/3 ≤ 2.
        let mu = DiscreteMeasure::uniform(
            NormSpec::L1,
            vec![
                Vector::from_ratios(&[(-1, 2)]),
                Vector::from_ints(&[0]),
                Vector::from_ratios(&[(1, 2)]),
            ],
        )
        .unwrap();
        let out = greedy_cover(
            &mu,
            &Vector::from_ints(&[0]),
            &Scalar::ratio(9, 10),
            &Scalar::one(),
        )
        .unwrap();
        assert_eq!(out.count, 2);
        assert_eq!(out.chosen, vec![0, 2]);
        assert_eq!(out.partial_sum, Scalar::ratio(4, 3));
        assert!(out.partial_sum <= Scalar::from_int(out.count as i64));
        // The selected balls form a valid open family around y.
        assert!(find_violation(out.family(), 0.0).unwrap().is_none());
    }

    #[test]
    fn singleton_measure() {
        let mu =
            DiscreteMeasure::uniform(NormSpec::L1, vec![Vector::from_ints(&[0])]).unwrap();
        let out = greedy_cover(
            &mu,
            &Vector::from_ints(&[0]),
            &Scalar::ratio(1, 2),
            &Scalar::one(),
        )
        .unwrap();
        assert_eq!(out.count, 1);
        assert_eq!(out.partial_sum, Scalar::one());
    }

    #[test]
    fn radius_order_enforced() {
        let mu =
            DiscreteMeasure::uniform(NormSpec::L1, vec![Vector::from_ints(&[0])]).unwrap();
        assert!(matches!(
            greedy_cover(&mu, &Vector::from_ints(&[0]), &Scalar::one(), &Scalar::one()),
            Err(Error::CoverRadii { .. })
        ));
        assert!(matches!(
            greedy_cover(
                &mu,
                &Vector::from_ints(&[0]),
                &Scalar::from_int(2),
                &Scalar::one()
            ),
            Err(Error::CoverRadii { .. })
        ));
    }

    #[test]
    fn non_atom_rejected() {
        let mu =
            DiscreteMeasure::uniform(NormSpec::L1, vec![Vector::from_ints(&[0])]).unwrap();
        assert!(matches!(
            greedy_cover(
                &mu,
                &Vector::from_ints(&[7]),
                &Scalar::ratio(1, 2),
                &Scalar::one()
            ),
            Err(Error::NotAnAtom(_))
        ));
    }
}
