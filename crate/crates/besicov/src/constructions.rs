//! Adversarial measures and extrapolation arithmetic.
//!
//! Given an equal-radius intersecting Besicovitch family of n balls with
//! witness y, the measure `μ_c = c·δ_y + Σᵢ δ_{xᵢ}` and the unit-mass spike
//! `f_c = c⁻¹·1_{y}` force `‖A_r f_c‖₁ > n/(1+c)`: each center averages to
//! exactly `1/(1+c)` because its ball meets no other center. Letting c → 0
//! drives the operator norm to the family cardinality, and an exact floor
//! `⌊pᵖ(p−1)^{1−p}Nᵖ⌋` converts weak (p,p) bounds into the family sizes
//! needed to defeat them.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::besicovitch::{find_violation, BallFamily};
use crate::error::{Error, Result};
use crate::geometry::BallKind;
use crate::measure::{lp_norm, AveragingOperator, DiscreteMeasure, SupportFunction};
use crate::scalar::Scalar;

/// The measure/function pair built from a family: atom 0 is the witness with
/// weight c, followed by the centers with unit weight; the function is the
/// `c⁻¹` spike at the witness, so `‖f‖₁ = 1`.
#[derive(Clone, Debug, Serialize)]
pub struct AdversarialInstance {
    pub measure: DiscreteMeasure,
    pub function: SupportFunction,
    pub c: Scalar,
    pub family_size: usize,
    pub radius: Scalar,
    pub kind: BallKind,
}

/// Builds `μ_c` and `f_c` from a valid equal-radius family.
///
/// With an exact rational `c` the averaged values are exact even when the
/// centers are floats: geometry only decides ball membership, while the
/// averages are ratios of exact weights.
pub fn build_adversarial(family: &BallFamily, c: &Scalar) -> Result<AdversarialInstance> {
    if !(c > &Scalar::zero()) {
        return Err(Error::NotPositive("c"));
    }
    let radius = family.common_radius()?.clone();
    if let Some(violation) = find_violation(family, 0.0)? {
        return Err(Error::InvalidFamily(violation.to_string()));
    }
    let mut atoms = Vec::with_capacity(family.len() + 1);
    let mut weights = Vec::with_capacity(family.len() + 1);
    atoms.push(family.witness().clone());
    weights.push(c.clone());
    for center in family.centers() {
        atoms.push(center.clone());
        weights.push(Scalar::one());
    }
    let measure = DiscreteMeasure::new(family.norm_spec().clone(), atoms, weights)?;
    let function = SupportFunction::scaled_indicator(measure.len(), 0, c.recip());
    Ok(AdversarialInstance {
        measure,
        function,
        c: c.clone(),
        family_size: family.len(),
        radius,
        kind: family.kind(),
    })
}

/// `‖A_r f_c‖₁` against the threshold `n/(1+c)` it must strictly exceed.
#[derive(Clone, Debug, Serialize)]
pub struct StrongLowerBound {
    pub value: Scalar,
    pub threshold: Scalar,
    pub pass: bool,
}

/// Evaluates the lower bound `‖A_r f_c‖₁ = c/(c+n) + n/(1+c) > n/(1+c)`.
///
/// The strict inequality holds for every c > 0; small c pushes the value
/// toward the family cardinality n.
pub fn strong_lower_bound_eval(inst: &AdversarialInstance) -> Result<StrongLowerBound> {
    let op = AveragingOperator::new(inst.measure.clone(), inst.radius.clone(), inst.kind)?;
    let averaged = op.apply(&inst.function)?;
    let value = lp_norm(&inst.measure, &averaged, 1.0)?;
    let threshold =
        &Scalar::from_int(inst.family_size as i64) / &(&Scalar::one() + &inst.c);
    let pass = value > threshold;
    Ok(StrongLowerBound {
        value,
        threshold,
        pass,
    })
}

/// `⌊pᵖ(p−1)^{1−p}Nᵖ⌋`, floored exactly.
///
/// For `p = a/b` in lowest terms the quantity R being floored satisfies
/// `R^b = aᵃNᵃ / (bᵇ(a−b)^{a−b})`, a ratio of integers, and `⌊R⌋` is the
/// integer b-th root of `⌊R^b⌋`. No floating point is involved, so values a
/// hair below an integer never round up. Floats convert via their exact
/// binary expansion; a float like `1.1` therefore has an enormous
/// denominator and is rejected rather than silently approximated.
pub fn extrapolation_constant(p: &Scalar, n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::NotPositive("N"));
    }
    let ratio = p
        .to_rational()
        .ok_or_else(|| Error::InvalidExponent(p.to_f64()))?;
    if ratio <= BigRational::one() {
        return Err(Error::InvalidExponent(p.to_f64()));
    }
    let cap = 1_000_000u32;
    let (a, b) = (
        ratio.numer().to_biguint().expect("p > 1 is positive"),
        ratio.denom().to_biguint().expect("denominator is positive"),
    );
    let (a_exp, b_exp) = match (a.to_u32(), b.to_u32()) {
        (Some(a), Some(b)) if a <= cap && b <= cap => (a, b),
        _ => return Err(Error::ExponentDenominator(ratio.to_string())),
    };
    let diff = &a - &b;
    let diff_exp = a_exp - b_exp;
    let numerator = a.pow(a_exp) * BigUint::from(n).pow(a_exp);
    let denominator = b.pow(b_exp) * diff.pow(diff_exp);
    Ok((numerator / denominator).nth_root(b_exp))
}

/// The measured weak (p,p) ratio of the adversarial instance at the
/// maximizing `c* = p − 1` and level `α = c*/(1+c*)`.
#[derive(Clone, Debug, Serialize)]
pub struct WeakTypeWitness {
    pub c_star: Scalar,
    pub alpha: Scalar,
    pub required_size: usize,
    pub ratio: Scalar,
    pub target: u64,
    pub pass: bool,
}

/// Builds `μ_c` at `c* = p − 1` over the first `J = ⌊pᵖ(p−1)^{1−p}Nᵖ⌋ + 1`
/// balls of `family` and measures the weak (p,p) ratio of `f = 1_{y}` at
/// `α = c*/(1+c*)`.
///
/// The level set is exactly the J centers (each averages to α, the witness
/// to less), so the ratio is `J^{1/p}·c^{1/q}/(1+c)`, which exceeds N by the
/// choice of J.
pub fn weak_pp_witness(p: &Scalar, n: u64, family: &BallFamily) -> Result<WeakTypeWitness> {
    let required = extrapolation_constant(p, n)? + 1u32;
    let required = required.to_usize().ok_or(Error::FamilyTooSmall {
        got: family.len(),
        needed: usize::MAX,
    })?;
    if family.len() < required {
        return Err(Error::FamilyTooSmall {
            got: family.len(),
            needed: required,
        });
    }
    let c_star = p - &Scalar::one();
    let inst = build_adversarial(&family.truncate(required), &c_star)?;
    let alpha = &c_star / &(&Scalar::one() + &c_star);
    let spike = SupportFunction::indicator(inst.measure.len(), 0);
    let op = AveragingOperator::new(inst.measure.clone(), inst.radius.clone(), inst.kind)?;
    let ratio = op.weak_type_ratio(&spike, &alpha, p.to_f64())?;
    let pass = ratio > Scalar::from_int(n as i64);
    Ok(WeakTypeWitness {
        c_star,
        alpha,
        required_size: required,
        ratio,
        target: n,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::besicovitch::{icosahedron, l1_cross, linf_corners, one_dim_pair, pentagon};
    use crate::geometry::{NormSpec, Vector};

    fn pair() -> BallFamily {
        one_dim_pair().unwrap().family().unwrap()
    }

    #[test]
    fn one_dim_instance_matches_hand_construction() {
        let inst = build_adversarial(&pair(), &Scalar::ratio(1, 100)).unwrap();
        assert_eq!(inst.measure.len(), 3);
        assert_eq!(inst.measure.atoms()[0], Vector::from_ints(&[0]));
        assert_eq!(inst.measure.weights()[0], Scalar::ratio(1, 100));
        assert_eq!(inst.measure.weights()[1], Scalar::one());
        assert_eq!(inst.function.values()[0], Scalar::from_int(100));
        assert_eq!(inst.function.values()[1], Scalar::zero());
        let mass = lp_norm(&inst.measure, &inst.function, 1.0).unwrap();
        assert_eq!(mass, Scalar::one());
    }

    #[test]
    fn centers_average_to_one_over_one_plus_c() {
        let c = Scalar::ratio(1, 100);
        let inst = build_adversarial(&pair(), &c).unwrap();
        let op =
            AveragingOperator::new(inst.measure.clone(), inst.radius.clone(), inst.kind).unwrap();
        let averaged = op.apply(&inst.function).unwrap();
        assert_eq!(averaged.values()[1], Scalar::ratio(100, 101));
        assert_eq!(averaged.values()[2], Scalar::ratio(100, 101));
        // Witness ball holds all three atoms: A f(y) = 1/(c + 2) > 0.
        assert_eq!(averaged.values()[0], Scalar::ratio(100, 201));
    }

    #[test]
    fn strong_lower_bound_one_dim_oracle() {
        let inst = build_adversarial(&pair(), &Scalar::ratio(1, 100)).unwrap();
        let bound = strong_lower_bound_eval(&inst).unwrap();
        // c/(c+2) + 2/(1+c) = 1/201 + 200/101 = 40301/20301 ≈ 1.98518.
        assert_eq!(bound.value, Scalar::ratio(40301, 20301));
        assert_eq!(bound.threshold, Scalar::ratio(200, 101));
        assert!(bound.pass);
    }

    #[test]
    fn strict_inequality_survives_large_c() {
        let inst = build_adversarial(&pair(), &Scalar::from_int(10)).unwrap();
        let bound = strong_lower_bound_eval(&inst).unwrap();
        assert_eq!(bound.value, Scalar::ratio(67, 66));
        assert_eq!(bound.threshold, Scalar::ratio(2, 11));
        assert!(bound.pass);
    }

    #[test]
    fn icosahedron_value_brackets_twelve() {
        let family = icosahedron().unwrap().family().unwrap();
        let inst = build_adversarial(&family, &Scalar::ratio(1, 1000)).unwrap();
        let bound = strong_lower_bound_eval(&inst).unwrap();
        // Exact weights keep the value rational despite float centers.
        assert!(bound.value.is_exact());
        assert!(bound.value > Scalar::ratio(12000, 1001));
        assert!(bound.value <= Scalar::from_int(12));
        assert!(bound.pass);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(matches!(
            build_adversarial(&pair(), &Scalar::zero()),
            Err(Error::NotPositive("c"))
        ));
        let overlapping = BallFamily::equal_radius(
            NormSpec::L1,
            vec![Vector::from_ints(&[0]), Vector::from_ratios(&[(1, 2)])],
            Scalar::one(),
            crate::geometry::BallKind::Closed,
            Vector::from_ints(&[0]),
        )
        .unwrap();
        assert!(matches!(
            build_adversarial(&overlapping, &Scalar::one()),
            Err(Error::InvalidFamily(_))
        ));
        // Witness coinciding with a center would duplicate an atom.
        let singleton = BallFamily::equal_radius(
            NormSpec::L1,
            vec![Vector::from_ints(&[0])],
            Scalar::one(),
            crate::geometry::BallKind::Closed,
            Vector::from_ints(&[0]),
        )
        .unwrap();
        assert!(matches!(
            build_adversarial(&singleton, &Scalar::one()),
            Err(Error::DuplicateAtom(0, 1))
        ));
    }

    #[test]
    fn extrapolation_oracles() {
        let two = Scalar::from_int(2);
        assert_eq!(extrapolation_constant(&two, 1).unwrap(), BigUint::from(4u32));
        assert_eq!(
            extrapolation_constant(&two, 2).unwrap(),
            BigUint::from(16u32)
        );
        assert_eq!(
            extrapolation_constant(&Scalar::from_int(3), 1).unwrap(),
            BigUint::from(6u32)
        );
        // p = 3/2: R = √(27/4) ≈ 2.598, floor 2; a float 1.5 converts exactly.
        assert_eq!(
            extrapolation_constant(&Scalar::ratio(3, 2), 1).unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(
            extrapolation_constant(&Scalar::from_f64(1.5), 1).unwrap(),
            BigUint::from(2u32)
        );
        // R exactly an integer: p = 3, N = 2 gives 27/4 · 8 = 54.
        assert_eq!(
            extrapolation_constant(&Scalar::from_int(3), 2).unwrap(),
            BigUint::from(54u32)
        );
    }

    #[test]
    fn extrapolation_agrees_with_float_evaluation() {
        for (num, den) in [(2, 1), (3, 1), (3, 2), (5, 2), (7, 3), (4, 1)] {
            for n in 1..=6u64 {
                let p = Scalar::ratio(num, den);
                let exact = extrapolation_constant(&p, n).unwrap();
                let pf = num as f64 / den as f64;
                let float = pf.powf(pf) * (pf - 1.0).powf(1.0 - pf) * (n as f64).powf(pf);
                let k = exact.to_f64().unwrap();
                let eps = 1e-9 * (1.0 + float.abs());
                assert!(k <= float + eps && float < k + 1.0 + eps);
            }
        }
    }

    #[test]
    fn extrapolation_rejects_bad_exponents() {
        assert!(matches!(
            extrapolation_constant(&Scalar::one(), 1),
            Err(Error::InvalidExponent(_))
        ));
        assert!(matches!(
            extrapolation_constant(&Scalar::ratio(1, 2), 3),
            Err(Error::InvalidExponent(_))
        ));
        assert!(matches!(
            extrapolation_constant(&Scalar::from_f64(f64::NAN), 1),
            Err(Error::InvalidExponent(_))
        ));
        assert!(matches!(
            extrapolation_constant(&Scalar::from_int(2), 0),
            Err(Error::NotPositive("N"))
        ));
        // 1.1 as a float has denominator 2^51: rejected, not approximated.
        assert!(matches!(
            extrapolation_constant(&Scalar::from_f64(1.1), 1),
            Err(Error::ExponentDenominator(_))
        ));
    }

    #[test]
    fn weak_witness_pentagon() {
        let family = pentagon().unwrap().family().unwrap();
        let w = weak_pp_witness(&Scalar::from_int(2), 1, &family).unwrap();
        assert_eq!(w.required_size, 5);
        assert_eq!(w.c_star, Scalar::one());
        assert_eq!(w.alpha, Scalar::ratio(1, 2));
        // √5/2 ≈ 1.1180 > 1.
        assert!((w.ratio.to_f64() - 1.118033988749895).abs() < 1e-12);
        assert!(w.pass);
    }

    #[test]
    fn weak_witness_corners_dim_five() {
        let family = linf_corners(5).unwrap().family().unwrap();
        let w = weak_pp_witness(&Scalar::from_int(2), 2, &family).unwrap();
        assert_eq!(w.required_size, 17);
        // √17/2 ≈ 2.0616 > 2.
        assert!((w.ratio.to_f64() - 2.0615528128088303).abs() < 1e-12);
        assert!(w.pass);
    }

    #[test]
    fn weak_witness_level_set_mass_is_j() {
        let family = l1_cross().unwrap().family().unwrap();
        let p = Scalar::ratio(3, 2);
        let w = weak_pp_witness(&p, 1, &family).unwrap();
        assert_eq!(w.required_size, 3);
        let inst = build_adversarial(&family.truncate(3), &w.c_star).unwrap();
        let op =
            AveragingOperator::new(inst.measure.clone(), inst.radius.clone(), inst.kind).unwrap();
        let spike = SupportFunction::indicator(inst.measure.len(), 0);
        let set = op.level_set(&spike, &w.alpha).unwrap();
        assert_eq!(set, vec![1, 2, 3]);
        assert!(w.pass);
    }

    #[test]
    fn weak_witness_needs_enough_balls() {
        let err = weak_pp_witness(&Scalar::from_int(2), 1, &pair()).unwrap_err();
        assert!(matches!(
            err,
            Error::FamilyTooSmall { got: 2, needed: 5 }
        ));
    }
}
