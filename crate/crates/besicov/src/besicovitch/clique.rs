//! Exact maximum-clique search over candidate separation graphs.
//!
//! Vertices are the admissible candidates, edges join pairs that satisfy the
//! separation predicate, and a maximum clique is a maximum-cardinality valid
//! family. Branch and bound with greedy-coloring upper bounds on hand-rolled
//! bitsets; everything is deterministic (ties break toward the lowest
//! index), so repeated runs return byte-identical certificates.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{separated, BallKind, NormSpec, Vector};
use crate::scalar::{ArithMode, Scalar};

use super::{BallFamily, CandidateSet, Certificate};

/// Admissible-candidate cap for the exact search; beyond it the heuristic
/// search is the intended tool.
pub const DEFAULT_CLIQUE_CAP: usize = 2000;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn empty(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = BitSet {
            words: vec![!0u64; len.div_ceil(64)],
            len,
        };
        let tail = len % 64;
        if tail != 0 {
            *s.words.last_mut().expect("nonempty") = (1u64 << tail) - 1;
        }
        if len == 0 {
            s.words.clear();
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set index.
    pub fn first(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
            len: self.len,
        }
    }

    pub fn subtract_in_place(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + bit)
            })
        })
    }
}

/// Separation test specialized once per universe. The float fast path
/// replicates the generic `Scalar` arithmetic operation for operation, so its
/// verdicts are bit-identical to what certificate validation recomputes.
enum PairTest<'a> {
    Generic {
        norm: &'a NormSpec,
        radius: &'a Scalar,
        margin: f64,
    },
    FloatFast {
        norm: &'a NormSpec,
        threshold: f64,
        strict: bool,
    },
}

impl PairTest<'_> {
    fn separated(&self, a: &Vector, b: &Vector, af: &[f64], bf: &[f64], kind: BallKind) -> Result<bool> {
        match self {
            PairTest::Generic {
                norm,
                radius,
                margin,
            } => separated(norm, a, b, radius, kind, *margin),
            PairTest::FloatFast {
                norm,
                threshold,
                strict,
            } => {
                let d = float_norm(norm, af, bf);
                Ok(if *strict { d > *threshold } else { d >= *threshold })
            }
        }
    }
}

/// `‖a − b‖` on raw floats, in the same operation order as the `Scalar`
/// evaluation path.
fn float_norm(norm: &NormSpec, a: &[f64], b: &[f64]) -> f64 {
    match norm {
        NormSpec::L1 => a.iter().zip(b).fold(0.0, |acc, (x, y)| acc + (x - y).abs()),
        NormSpec::Linf => a.iter().zip(b).fold(0.0, |acc, (x, y)| acc.max((x - y).abs())),
        NormSpec::L2 => a
            .iter()
            .zip(b)
            .fold(0.0, |acc, (x, y)| acc + (x - y) * (x - y))
            .sqrt(),
        NormSpec::Lp(p) => a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs().powf(*p))
            .sum::<f64>()
            .powf(1.0 / p),
        NormSpec::Polytope(_) => unreachable!("no float fast path for polytope gauges"),
    }
}

/// Builds the separation graph over the admissible candidates.
pub(crate) fn build_adjacency(
    cands: &CandidateSet,
    admissible: &[usize],
    kind: BallKind,
    margin: f64,
) -> Result<Vec<BitSet>> {
    let n = admissible.len();
    let points: Vec<&Vector> = admissible.iter().map(|&i| &cands.points()[i]).collect();
    let norm = cands.norm_spec();
    let all_float = points.iter().all(|p| p.mode() == ArithMode::Float)
        && !cands.radius().is_exact()
        && !matches!(norm, NormSpec::Polytope(_));
    let test = if all_float {
        PairTest::FloatFast {
            norm,
            threshold: cands.radius().to_f64() + margin,
            strict: kind == BallKind::Closed,
        }
    } else {
        PairTest::Generic {
            norm,
            radius: cands.radius(),
            margin,
        }
    };
    let floats: Vec<Vec<f64>> = points.iter().map(|p| p.to_f64s()).collect();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = BitSet::empty(n);
            for j in 0..n {
                if j != i
                    && test.separated(points[i], points[j], &floats[i], &floats[j], kind)?
                {
                    row.insert(j);
                }
            }
            Ok(row)
        })
        .collect()
}

struct Solver<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
}

impl Solver<'_> {
    /// Greedy coloring of `cand`; returns vertices ordered by color with
    /// their (1-based) color numbers, a clique-size upper bound per prefix.
    fn color_sort(&self, cand: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut uncolored = cand.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                order.push(v);
                colors.push(color);
                uncolored.remove(v);
                avail.remove(v);
                avail.subtract_in_place(&self.adj[v]);
            }
        }
        (order, colors)
    }

    fn expand(&mut self, cand: &BitSet, clique: &mut Vec<usize>) {
        if cand.is_empty() {
            if clique.len() > self.best.len() {
                self.best = clique.clone();
            }
            return;
        }
        let (order, colors) = self.color_sort(cand);
        let mut cand = cand.clone();
        for k in (0..order.len()).rev() {
            if clique.len() + colors[k] <= self.best.len() {
                return;
            }
            let v = order[k];
            clique.push(v);
            let next = cand.and(&self.adj[v]);
            self.expand(&next, clique);
            clique.pop();
            cand.remove(v);
        }
    }
}

/// A maximum clique of the graph, deterministic across runs.
pub(crate) fn max_clique(adj: &[BitSet]) -> Vec<usize> {
    let n = adj.len();
    // Seed with a greedy clique along descending degree for early pruning.
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (usize::MAX - adj[v].count(), v));
    let mut seed: Vec<usize> = Vec::new();
    for &v in &by_degree {
        if seed.iter().all(|&u| adj[u].contains(v)) {
            seed.push(v);
        }
    }
    let mut solver = Solver { adj, best: seed };
    let mut clique = Vec::new();
    solver.expand(&BitSet::full(n), &mut clique);
    solver.best.sort_unstable();
    solver.best
}

/// Orders planar candidates angularly around the anchor. Greedy coloring
/// then builds classes out of contiguous arcs, which keeps the clique bound
/// near the true clique number on circular geometries; unordered candidates
/// fragment the classes and the search degenerates. Other dimensions keep
/// their construction order (lattices enumerate lexicographically, which
/// aligns classes with boxes already).
fn sort_for_search(cands: &CandidateSet, admissible: &mut [usize]) {
    let anchor = cands.anchor().to_f64s();
    if anchor.len() != 2 {
        return;
    }
    let angle = |i: usize| {
        let p = cands.points()[i].to_f64s();
        (p[1] - anchor[1]).atan2(p[0] - anchor[0])
    };
    admissible.sort_by(|&i, &j| angle(i).total_cmp(&angle(j)).then(i.cmp(&j)));
}

/// Exact maximum valid family over the candidate universe, as a certificate.
///
/// Admissible candidates beyond `cap` are refused (the heuristic search
/// scales further); an empty admissible set certifies cardinality 0.
pub fn clique_search_exact(
    cands: &CandidateSet,
    kind: BallKind,
    margin: f64,
    cap: usize,
) -> Result<Certificate> {
    let mut admissible = cands.admissible(kind, margin)?;
    sort_for_search(cands, &mut admissible);
    if admissible.len() > cap {
        return Err(Error::CandidateCap(admissible.len(), cap));
    }
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
    let clique = max_clique(&adj);
    let centers: Vec<Vector> = clique
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
