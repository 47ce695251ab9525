//! Gauge (Minkowski functional) of an origin-symmetric polytope.
//!
//! Facets are derived once from the vertex set and cached; after that every
//! gauge query is a max of inner products, exact on rational data. With the
//! facet description `{x : <a_i, x> <= 1}`, the gauge is
//! `‖v‖ = max_i <a_i, v>`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{ArithMode, Scalar};

use super::Vector;

/// Vertex-subset cap for the brute-force facet enumeration.
const SUBSET_CAP: u128 = 2_000_000;
/// Pivot / dedupe tolerances for float-mode vertex data.
const FLOAT_PIVOT_TOL: f64 = 1e-12;
const FLOAT_FACET_TOL: f64 = 1e-9;

/// A validated symmetric polytope together with its facet normals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeGauge {
    vertices: Vec<Vector>,
    facets: Vec<Vector>,
    dim: usize,
}

impl PartialEq for PolytopeGauge {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl PolytopeGauge {
    /// Validates symmetry and full dimension, then enumerates facets.
    pub fn new(vertices: Vec<Vector>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyVector);
        }
        let dim = vertices[0].dim();
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        for v in &vertices {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch(dim, v.dim()));
            }
        }
        let exact = vertices.iter().all(|v| v.mode() == ArithMode::Exact);
        let tol = if exact { 0.0 } else { FLOAT_FACET_TOL };

        // Closure under negation.
        for (i, v) in vertices.iter().enumerate() {
            let neg = v.scale(&Scalar::from_int(-1));
            if !vertices.iter().any(|w| vectors_close(w, &neg, tol)) {
                return Err(Error::AsymmetricPolytope(i));
            }
        }

        // Distinct vertices only; duplicates would just repeat subsets.
        let mut distinct: Vec<Vector> = Vec::new();
        for v in &vertices {
            if !distinct.iter().any(|w| vectors_close(w, v, tol)) {
                distinct.push(v.clone());
            }
        }

        let rank = matrix_rank(&distinct, dim);
        if rank < dim {
            return Err(Error::DegeneratePolytope { rank, dim });
        }

        let subsets = binomial(distinct.len() as u128, dim as u128);
        if subsets > SUBSET_CAP {
            return Err(Error::PolytopeTooLarge {
                subsets,
                cap: SUBSET_CAP,
            });
        }

        let mut facets: Vec<Vector> = Vec::new();
        let mut indices: Vec<usize> = (0..dim).collect();
        loop {
            if let Some(normal) = facet_normal(&distinct, &indices, dim) {
                let bound = Scalar::from_f64(1.0 + tol);
                let supports = distinct
                    .iter()
                    .all(|w| normal.dot(w).expect("dims checked") <= bound);
                if supports && !facets.iter().any(|f| vectors_close(f, &normal, tol)) {
                    facets.push(normal);
                }
            }
            if !next_combination(&mut indices, distinct.len()) {
                break;
            }
        }

        if facets.is_empty() {
            return Err(Error::DegeneratePolytope { rank, dim });
        }
        Ok(PolytopeGauge {
            vertices,
            facets,
            dim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facet_normals(&self) -> &[Vector] {
        &self.facets
    }

    /// `max_i <a_i, v>`; exact for rational vertices and queries.
    pub fn gauge(&self, v: &Vector) -> Result<Scalar> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.dim()));
        }
        let mut best = Scalar::zero();
        for a in &self.facets {
            let dot = a.dot(v)?;
            best = best.max(&dot);
        }
        Ok(best)
    }
}

fn vectors_close(a: &Vector, b: &Vector, tol: f64) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    if tol == 0.0 {
        return a
            .iter()
            .zip(b.iter())
            .all(|(x, y)| x.partial_cmp(y) == Some(Ordering::Equal));
    }
    a.iter()
        .zip(b.iter())
        .all(|(x, y)| (x.to_f64() - y.to_f64()).abs() <= tol)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
        if acc > SUBSET_CAP * 4 {
            return acc;
        }
    }
    acc
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - (k - i) {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Solves `<a, v_s> = 1` for the subset; `None` when singular.
fn facet_normal(vertices: &[Vector], subset: &[usize], dim: usize) -> Option<Vector> {
    let mut rows: Vec<Vec<Scalar>> = subset
        .iter()
        .map(|&i| vertices[i].coords().to_vec())
        .collect();
    let mut rhs: Vec<Scalar> = vec![Scalar::one(); dim];
    let exact = rows
        .iter()
        .all(|r| r.iter().all(Scalar::is_exact));

    for col in 0..dim {
        let pivot_row = (col..dim)
            .max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs()))?;
        let pivot = rows[pivot_row][col].clone();
        let singular = if exact {
            pivot.is_zero()
        } else {
            pivot.to_f64().abs() < FLOAT_PIVOT_TOL
        };
        if singular {
            return None;
        }
        rows.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        for r in 0..dim {
            if r == col {
                continue;
            }
            let factor = &rows[r][col] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for c in col..dim {
                let delta = &factor * &rows[col][c];
                rows[r][c] = &rows[r][c] - &delta;
            }
            let delta = &factor * &rhs[col];
            rhs[r] = &rhs[r] - &delta;
        }
    }
    let coords: Vec<Scalar> = (0..dim).map(|i| &rhs[i] / &rows[i][i]).collect();
    Some(Vector::new(coords))
}

fn matrix_rank(vectors: &[Vector], dim: usize) -> usize {
    let mut rows: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    let exact = rows.iter().all(|r| r.iter().all(Scalar::is_exact));
    let mut rank = 0;
    for col in 0..dim {
        let pivot_row = (rank..rows.len())
            .max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs()));
        let Some(pivot_row) = pivot_row else { break };
        let pivot = rows[pivot_row][col].clone();
        let singular = if exact {
            pivot.is_zero()
        } else {
            pivot.to_f64().abs() < FLOAT_PIVOT_TOL
        };
        if singular {
            continue;
        }
        rows.swap(rank, pivot_row);
        for r in 0..rows.len() {
            if r == rank {
                continue;
            }
            let factor = &rows[r][col] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for c in col..dim {
                let delta = &factor * &rows[rank][c];
                rows[r][c] = &rows[r][c] - &delta;
            }
        }
        rank += 1;
        if rank == dim {
            break;
        }
    }
    rank
}
