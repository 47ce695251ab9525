//! The table of known sharp values of `E = sup_{r,μ} ‖A_{r,μ}‖_{L¹→L¹}`.
//!
//! On the line every norm gives 2. In the plane the constant is 4 when the
//! unit ball is a parallelogram and 5 otherwise. The ℓ∞ cube gives `2^d` in
//! every dimension, and euclidean three-space gives 12. For euclidean
//! dimension at least 4 only an asymptotic bracket is known; it is reported
//! as text, not as a numeric claim.

use std::fmt;

use serde::Serialize;

use crate::geometry::NormSpec;

/// A space whose sharp constant is tabulated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpaceDescriptor {
    /// The real line under any norm.
    OneDim,
    /// A planar norm whose unit ball is a parallelogram.
    PlanarParallelogram,
    /// Any other planar norm.
    PlanarOther,
    /// `(ℝ^d, ℓ∞)`, `d ≥ 2`.
    LinfCube(usize),
    /// `(ℝ^d, ℓ²)`, `d ≥ 2`.
    Euclidean(usize),
}

/// A table entry: either a sharp attained value or the informational
/// asymptotic bracket for high-dimensional euclidean space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum KnownConstant {
    /// `E` equals this value and is attained.
    Sharp(u64),
    /// `E` grows exponentially: at least `d^{3/2}·lower_base^d` and at most
    /// `2^(upper_exponent·d)`, both up to `(1+o(1))` factors.
    Asymptotic { lower_base: f64, upper_exponent: f64 },
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescriptor::OneDim => write!(f, "line, any norm"),
            SpaceDescriptor::PlanarParallelogram => {
                write!(f, "plane, parallelogram unit ball")
            }
            SpaceDescriptor::PlanarOther => write!(f, "plane, any other unit ball"),
            SpaceDescriptor::LinfCube(d) => write!(f, "ℓ∞, dimension {d}"),
            SpaceDescriptor::Euclidean(d) => write!(f, "euclidean, dimension {d}"),
        }
    }
}

impl fmt::Display for KnownConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnownConstant::Sharp(v) => write!(f, "{v}"),
            KnownConstant::Asymptotic { .. } => write!(
                f,
                "between (1+o(1))·sqrt(3π/8)·ln(3/(2√2))·d^(3/2)·(2/√3)^d \
                 and 2^(0.401(1+o(1))d)"
            ),
        }
    }
}

impl SpaceDescriptor {
    /// The tabulated constant for this space.
    pub fn constant(&self) -> KnownConstant {
        match self {
            SpaceDescriptor::OneDim => KnownConstant::Sharp(2),
            SpaceDescriptor::PlanarParallelogram => KnownConstant::Sharp(4),
            SpaceDescriptor::PlanarOther | SpaceDescriptor::Euclidean(2) => {
                KnownConstant::Sharp(5)
            }
            SpaceDescriptor::LinfCube(d) => KnownConstant::Sharp(1u64 << (*d).min(63)),
            SpaceDescriptor::Euclidean(3) => KnownConstant::Sharp(12),
            SpaceDescriptor::Euclidean(_) => KnownConstant::Asymptotic {
                lower_base: 2.0 / 3f64.sqrt(),
                upper_exponent: 0.401,
            },
        }
    }
}

/// Places `(ℝ^dim, norm)` in the table, or `None` when no entry applies.
///
/// Planar polytope gauges are parallelograms exactly when they have four
/// facets; planar `p`-norms with `1 < p < ∞` are strictly convex, hence
/// never parallelograms.
pub fn classify(norm: &NormSpec, dim: usize) -> Option<SpaceDescriptor> {
    if dim == 0 {
        return None;
    }
    if let Some(fixed) = norm.fixed_dim() {
        if fixed != dim {
            return None;
        }
    }
    if dim == 1 {
        return Some(SpaceDescriptor::OneDim);
    }
    match norm {
        NormSpec::Linf if dim <= 63 => Some(SpaceDescriptor::LinfCube(dim)),
        NormSpec::L2 => Some(SpaceDescriptor::Euclidean(dim)),
        NormSpec::L1 if dim == 2 => Some(SpaceDescriptor::PlanarParallelogram),
        NormSpec::Lp(_) if dim == 2 => Some(SpaceDescriptor::PlanarOther),
        NormSpec::Polytope(g) if dim == 2 => {
            if g.facet_normals().len() == 4 {
                Some(SpaceDescriptor::PlanarParallelogram)
            } else {
                Some(SpaceDescriptor::PlanarOther)
            }
        }
        _ => None,
    }
}

/// The tabulated constant for `(ℝ^dim, norm)`, when one exists.
pub fn known_constants(norm: &NormSpec, dim: usize) -> Option<KnownConstant> {
    classify(norm, dim).map(|d| d.constant())
}

/// Every table row as `(space, constant)` text, for display.
pub fn table_rows() -> Vec<(String, String)> {
    let rows = [
        (SpaceDescriptor::OneDim.to_string(), "2".into()),
        (
            SpaceDescriptor::PlanarParallelogram.to_string(),
            "4".into(),
        ),
        (SpaceDescriptor::PlanarOther.to_string(), "5".into()),
        ("ℓ∞, dimension d".into(), "2^d".into()),
        (SpaceDescriptor::Euclidean(3).to_string(), "12".into()),
        (
            "euclidean, dimension d ≥ 4".into(),
            SpaceDescriptor::Euclidean(4).constant().to_string(),
        ),
    ];
    rows.into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vector;

    #[test]
    fn tabulated_values() {
        assert_eq!(
            known_constants(&NormSpec::L2, 1),
            Some(KnownConstant::Sharp(2))
        );
        assert_eq!(
            known_constants(&NormSpec::Linf, 3),
            Some(KnownConstant::Sharp(8))
        );
        assert_eq!(
            known_constants(&NormSpec::L2, 3),
            Some(KnownConstant::Sharp(12))
        );
        assert_eq!(
            known_constants(&NormSpec::L2, 2),
            Some(KnownConstant::Sharp(5))
        );
        assert_eq!(
            known_constants(&NormSpec::L1, 2),
            Some(KnownConstant::Sharp(4))
        );
        assert_eq!(
            known_constants(&NormSpec::Linf, 2),
            Some(KnownConstant::Sharp(4))
        );
    }

    #[test]
    fn one_dim_is_norm_independent() {
        for norm in [NormSpec::L1, NormSpec::L2, NormSpec::lp(2.5).unwrap()] {
            assert_eq!(classify(&norm, 1), Some(SpaceDescriptor::OneDim));
        }
    }

    #[test]
    fn planar_polytopes_split_on_facet_count() {
        let square = NormSpec::polytope(vec![
            Vector::from_ints(&[1, 1]),
            Vector::from_ints(&[1, -1]),
            Vector::from_ints(&[-1, 1]),
            Vector::from_ints(&[-1, -1]),
        ])
        .unwrap();
        assert_eq!(
            classify(&square, 2),
            Some(SpaceDescriptor::PlanarParallelogram)
        );

        let hexagon = NormSpec::polytope(vec![
            Vector::from_ints(&[1, 0]),
            Vector::from_ints(&[0, 1]),
            Vector::from_ints(&[1, 1]),
            Vector::from_ints(&[-1, 0]),
            Vector::from_ints(&[0, -1]),
            Vector::from_ints(&[-1, -1]),
        ])
        .unwrap();
        assert_eq!(classify(&hexagon, 2), Some(SpaceDescriptor::PlanarOther));
        assert_eq!(
            known_constants(&hexagon, 2),
            Some(KnownConstant::Sharp(5))
        );
    }

    #[test]
    fn high_dim_euclidean_is_a_bracket() {
        match known_constants(&NormSpec::L2, 4) {
            Some(KnownConstant::Asymptotic {
                lower_base,
                upper_exponent,
            }) => {
                assert!((lower_base - 1.1547005383792515).abs() < 1e-15);
                assert_eq!(upper_exponent, 0.401);
            }
            other => panic!("expected a bracket, got {other:?}"),
        }
    }

    #[test]
    fn off_table_spaces_return_none() {
        assert_eq!(known_constants(&NormSpec::lp(3.0).unwrap(), 3), None);
        assert_eq!(known_constants(&NormSpec::L1, 3), None);
        assert_eq!(known_constants(&NormSpec::L1, 0), None);
        // A polytope gauge only classifies in its own dimension.
        let square = NormSpec::polytope(vec![
            Vector::from_ints(&[1, 1]),
            Vector::from_ints(&[1, -1]),
            Vector::from_ints(&[-1, 1]),
            Vector::from_ints(&[-1, -1]),
        ])
        .unwrap();
        assert_eq!(classify(&square, 3), None);
    }

    #[test]
    fn table_has_six_rows() {
        let rows = table_rows();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].1, "2");
        assert!(rows[5].1.contains("2^(0.401"));
    }
}
