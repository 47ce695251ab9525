//! Stochastic lower-bounding search for large candidate universes.
//!
//! Repeated randomized greedy construction with a one-out-two-in improvement
//! pass, under a restart budget. Sound by construction (the result is
//! re-validated into a certificate) and deterministic for a fixed seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::geometry::{BallKind, Vector};

use super::clique::{build_adjacency, BitSet};
use super::{BallFamily, CandidateSet, Certificate};

/// Best family found within `budget` greedy restarts, as a certificate.
///
/// Never exceeds the exact search on the same universe; may fall short.
pub fn clique_search_heuristic(
    cands: &CandidateSet,
    kind: BallKind,
    margin: f64,
    seed: u64,
    budget: usize,
) -> Result<Certificate> {
    let admissible = cands.admissible(kind, margin)?;
    if admissible.is_empty() {
        return Ok(Certificate::empty(
            cands.norm_spec().clone(),
            kind,
            cands.anchor().clone(),
            cands.radius().clone(),
            margin,
        ));
    }
    let adj = build_adjacency(cands, &admissible, kind, margin)?;
    let n = admissible.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Vec<usize> = Vec::new();
    for _ in 0..budget.max(1) {
        let mut clique = greedy_from(&adj, rng.gen_range(0..n), &mut rng);
        improve(&adj, n, &mut clique, &mut rng);
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    let centers: Vec<Vector> = best
        .iter()
        .map(|&v| cands.points()[admissible[v]].clone())
        .collect();
    let family = BallFamily::equal_radius(
        cands.norm_spec().clone(),
        centers,
        cands.radius().clone(),
        kind,
        cands.anchor().clone(),
    )?;
    Certificate::from_family(&family, margin)
}

/// Grows a clique from `start`, picking a random common neighbor each step.
fn greedy_from(adj: &[BitSet], start: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut clique = vec![start];
    let mut common = adj[start].clone();
    while let Some(v) = random_member(&common, rng) {
        clique.push(v);
        common = common.and(&adj[v]);
    }
    clique
}

/// One-out-two-in: drop a vertex, regrow greedily; keep strict improvements.
fn improve(adj: &[BitSet], n: usize, clique: &mut Vec<usize>, rng: &mut ChaCha8Rng) {
    for _ in 0..4 {
        let mut improved = false;
        let mut order: Vec<usize> = (0..clique.len()).collect();
        order.shuffle(rng);
        for drop_at in order {
            if clique.len() <= 1 {
                break;
            }
            let mut trial: Vec<usize> = clique
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != drop_at)
                .map(|(_, &v)| v)
                .collect();
            let mut common = BitSet::full(n);
            for &v in &trial {
                common = common.and(&adj[v]);
            }
            while let Some(v) = random_member(&common, rng) {
                trial.push(v);
                common = common.and(&adj[v]);
            }
            if trial.len() > clique.len() {
                *clique = trial;
                improved = true;
            }
        }
        if !improved {
            return;
        }
    }
}

fn random_member(set: &BitSet, rng: &mut ChaCha8Rng) -> Option<usize> {
    let count = set.count();
    if count == 0 {
        return None;
    }
    set.iter().nth(rng.gen_range(0..count))
}
