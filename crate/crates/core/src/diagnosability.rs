//! h-edge tolerable diagnosability and the `Q_n` theorem verifier.
//!
//! `t_h^e(G)` is the largest `t` such that `G - F_e` is t-diagnosable for
//! every `F_e` with `|F_e| <= h`. Removing edges never makes a pair easier
//! to distinguish, so only sets with exactly `min(h, |E|)` edges need to be
//! checked, and for hypercubes only one set per automorphism orbit.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::distinguishability::{
    distinguishable, t_diagnosable_check, t_diagnosable_sampled, SearchOptions,
};
use crate::error::{Error, Result};
use crate::models::Model;
use crate::orbits::{EdgeAction, MAX_CATALOG_DIMENSION, MAX_CATALOG_SUBSETS};
use crate::topology::{binomial, neighbor, Edge, EdgeSet, Graph, VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exact,
    Sampled,
}

/// An indistinguishable pair in `G - F_e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremWitness {
    pub fe: EdgeSet,
    pub f1: VertexSet,
    pub f2: VertexSet,
}

impl TheoremWitness {
    /// Re-check with the structural decider and its certificate.
    pub fn validate(&self, g: &Graph, model: Model) -> Result<bool> {
        let v = distinguishable(g, &self.fe, &self.f1, &self.f2, model)?;
        Ok(!v.distinguishable && v.revalidate(g, &self.fe, &self.f1, &self.f2)?)
    }
}

/// What was established for one faulty-edge set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerLogEntry {
    pub fe: EdgeSet,
    /// Number of edge sets this one stands for.
    pub orbit_size: u64,
    /// Largest `t` this entry is consistent with.
    pub t: usize,
    pub mode: SearchMode,
    pub visited: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagnosabilityReport {
    pub graph: String,
    pub fingerprint: String,
    pub model: Model,
    pub h: usize,
    pub t: usize,
    /// Pair showing that `t + 1` fails.
    pub upper_witness: Option<TheoremWitness>,
    pub lower_log: Vec<LowerLogEntry>,
    pub mode: SearchMode,
    /// Whether the edge sets were reduced to automorphism orbits.
    pub orbit_reduced: bool,
    pub budget: u64,
    pub seed: u64,
    pub samples: u64,
}

fn describe(g: &Graph) -> String {
    match g.cube_dimension() {
        Some(n) if g.edge_count() == n as usize * (g.vertex_count() / 2) => format!("Q_{n}"),
        _ => format!("graph(p={}, m={})", g.vertex_count(), g.edge_count()),
    }
}

/// Edge sets to examine with their multiplicities, and whether they are
/// orbit representatives.
fn edge_sets(g: &Graph, k: usize, budget: u64) -> Result<(Vec<(EdgeSet, u64)>, bool)> {
    let m = g.edge_count();
    if let Some(n) = g.dimension().filter(|&n| n <= MAX_CATALOG_DIMENSION) {
        if binomial(m as u64, k as u64) <= MAX_CATALOG_SUBSETS {
            let action = EdgeAction::new(n)?;
            let classes = action.classes(k)?;
            return Ok((
                classes.into_iter().map(|c| (c.representative, c.size)).collect(),
                true,
            ));
        }
    }
    let total = binomial(m as u64, k as u64);
    if total > budget as u128 {
        return Err(Error::Budget {
            limit: budget,
            visited: 0,
            partial: format!("{total} faulty-edge sets to examine"),
        });
    }
    let edges: Vec<Edge> = g.edges().collect();
    Ok((
        edges
            .into_iter()
            .combinations(k)
            .map(|c| (c.into_iter().collect(), 1))
            .collect(),
        false,
    ))
}

/// Minimum-degree vertex pair `N(v)`, `N[v]`: indistinguishable under both
/// models, so `G - F_e` is not `(deg v + 1)`-diagnosable.
fn degree_witness(g: &Graph, fe: &EdgeSet) -> Result<(usize, TheoremWitness)> {
    let g_eff = g.remove_edges(fe)?;
    let (d, v) = g_eff
        .min_degree()
        .ok_or_else(|| Error::domain("graph has no vertices"))?;
    let f1: VertexSet = g_eff.neighbors(v).collect();
    let mut f2 = f1.clone();
    f2.insert(v);
    Ok((
        d,
        TheoremWitness {
            fe: fe.clone(),
            f1,
            f2,
        },
    ))
}

/// Largest `t` such that every `G - F_e` with `|F_e| <= h` is
/// t-diagnosable under `model`.
///
/// Each inner search is limited to `opts.budget` nodes. When a search runs
/// out, that edge set is probed with `opts.samples` random candidates
/// instead and the report switches to sampled mode: its value is then an
/// upper bound backed by a witness, not a certified diagnosability.
pub fn h_edge_tolerable_diagnosability(
    g: &Graph,
    h: usize,
    model: Model,
    opts: &SearchOptions,
) -> Result<DiagnosabilityReport> {
    if g.vertex_count() > 64 {
        return Err(Error::bound(format!(
            "diagnosability search supports at most 64 vertices, graph has {}",
            g.vertex_count()
        )));
    }
    let k = h.min(g.edge_count());
    let (sets, orbit_reduced) = edge_sets(g, k, opts.budget)?;

    let mut degree: Vec<(usize, TheoremWitness, u64)> = sets
        .into_iter()
        .map(|(fe, size)| degree_witness(g, &fe).map(|(d, w)| (d, w, size)))
        .collect::<Result<_>>()?;
    degree.sort_by(|a, b| a.0.cmp(&b.0));

    let mut t = degree.first().map_or(0, |d| d.0);
    let mut witness = degree.first().map(|d| d.1.clone());
    let mut mode = SearchMode::Exact;
    let mut log = Vec::with_capacity(degree.len());

    for (_, w, size) in degree {
        let fe = w.fe;
        let mut visited = 0;
        let mut entry_mode = SearchMode::Exact;
        loop {
            match t_diagnosable_check(g, &fe, t, model, opts) {
                Ok(out) => {
                    visited += out.visited;
                    match out.counterexample {
                        None => break,
                        Some((f1, f2)) => {
                            t -= 1;
                            witness = Some(TheoremWitness { fe: fe.clone(), f1, f2 });
                        }
                    }
                }
                Err(Error::Budget { visited: v, .. }) => {
                    visited += v;
                    entry_mode = SearchMode::Sampled;
                    match t_diagnosable_sampled(g, &fe, t, model, opts)? {
                        None => break,
                        Some((f1, f2)) => {
                            t -= 1;
                            witness = Some(TheoremWitness { fe: fe.clone(), f1, f2 });
                        }
                    }
                }
                Err(e) => return Err(e),
            }
        }
        if entry_mode == SearchMode::Sampled {
            mode = SearchMode::Sampled;
        }
        log.push(LowerLogEntry {
            fe,
            orbit_size: size,
            t,
            mode: entry_mode,
            visited,
        });
    }

    Ok(DiagnosabilityReport {
        graph: describe(g),
        fingerprint: g.fingerprint(),
        model,
        h,
        t,
        upper_witness: witness,
        lower_log: log,
        mode,
        orbit_reduced,
        budget: opts.budget,
        seed: opts.seed,
        samples: opts.samples,
    })
}

/// The upper-bound construction for `Q_n`: with `u = 0`, cut the first `h`
/// edges at `u`, let `F1` be the remaining neighbors of `u` and `F2 = F1 + u`.
pub fn theorem_witness(n: u32, h: u32) -> Result<TheoremWitness> {
    if n < 3 || !(1..=n).contains(&h) {
        return Err(Error::bound(format!(
            "witness needs n >= 3 and 1 <= h <= n, got n={n}, h={h}"
        )));
    }
    if h == n {
        return Err(Error::bound(format!(
            "h = n = {n} cuts every edge at u, leaving F1 empty"
        )));
    }
    let u = VertexId(0);
    let fe = (1..=h)
        .map(|i| Edge::new(u, neighbor(u, i, n)?))
        .collect::<Result<EdgeSet>>()?;
    let f1 = (h + 1..=n)
        .map(|i| neighbor(u, i, n))
        .collect::<Result<VertexSet>>()?;
    let mut f2 = f1.clone();
    f2.insert(u);
    Ok(TheoremWitness { fe, f1, f2 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremOutcome {
    /// Exact search agrees with `n - h`.
    Confirmed,
    /// Sampling found nothing below `n - h`; not a proof.
    Supported,
    /// A certified counterexample contradicts `n - h`.
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub n: u32,
    pub h: u32,
    pub model: Model,
    pub expected: usize,
    pub witness: TheoremWitness,
    pub witness_valid: bool,
    pub outcome: TheoremOutcome,
    pub report: DiagnosabilityReport,
}

/// Check `t_h^e(Q_n) = n - h`: the upper bound through [`theorem_witness`],
/// the lower bound by exhaustive search where the budget allows and by
/// sampling otherwise.
pub fn verify_theorem(n: u32, h: u32, model: Model, opts: &SearchOptions) -> Result<TheoremReport> {
    if n < 3 || !(1..n).contains(&h) {
        return Err(Error::bound(format!(
            "theorem covers n >= 3 and 1 <= h <= n - 1, got n={n}, h={h}"
        )));
    }
    let g = Graph::hypercube(n)?;
    let witness = theorem_witness(n, h)?;
    let witness_valid = witness.validate(&g, model)?;
    let expected = (n - h) as usize;
    let report = if g.vertex_count() <= 64 {
        h_edge_tolerable_diagnosability(&g, h as usize, model, opts)?
    } else {
        sampled_large(&g, h as usize, model, expected, opts)?
    };
    let certified_below = report.t < expected
        && report
            .upper_witness
            .as_ref()
            .is_some_and(|w| w.validate(&g, model).unwrap_or(false));
    let outcome = if !witness_valid || certified_below {
        TheoremOutcome::Refuted
    } else if report.mode == SearchMode::Exact && report.t == expected {
        TheoremOutcome::Confirmed
    } else {
        TheoremOutcome::Supported
    };
    Ok(TheoremReport {
        n,
        h,
        model,
        expected,
        witness,
        witness_valid,
        outcome,
        report,
    })
}

/// Random local probes for cubes too large for the mask search: a random
/// centre, `h` random edges near it, and random fault sets of size at most
/// `t` inside its radius-2 ball.
fn sampled_large(
    g: &Graph,
    h: usize,
    model: Model,
    t: usize,
    opts: &SearchOptions,
) -> Result<DiagnosabilityReport> {
    let n = g.cube_dimension().expect("hypercube");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut found: Option<TheoremWitness> = None;
    for _ in 0..opts.samples {
        let c = VertexId(rng.gen_range(0..g.vertex_count() as u32));
        let mut ball: Vec<VertexId> = vec![c];
        for i in 1..=n {
            let a = neighbor(c, i, n)?;
            ball.push(a);
            for j in i + 1..=n {
                ball.push(neighbor(a, j, n)?);
            }
        }
        let mut near: Vec<Edge> = ball
            .iter()
            .take(n as usize + 1)
            .flat_map(|&v| g.neighbors(v).map(move |w| Edge::new(v, w).expect("distinct")))
            .collect();
        near.sort_unstable();
        near.dedup();
        let fe: EdgeSet = near.choose_multiple(&mut rng, h).copied().collect();
        let pick = |rng: &mut ChaCha8Rng| -> VertexSet {
            let k = rng.gen_range(0..=t);
            ball.choose_multiple(rng, k).copied().collect()
        };
        let f1 = pick(&mut rng);
        let f2 = pick(&mut rng);
        if f1 == f2 {
            continue;
        }
        if !distinguishable(g, &fe, &f1, &f2, model)?.distinguishable {
            found = Some(TheoremWitness { fe, f1, f2 });
            break;
        }
    }
    let (value, witness) = match found {
        Some(w) => (w.f1.len().max(w.f2.len()).saturating_sub(1), Some(w)),
        None => (t, theorem_witness(n, h as u32).ok()),
    };
    Ok(DiagnosabilityReport {
        graph: describe(g),
        fingerprint: g.fingerprint(),
        model,
        h,
        t: value,
        upper_witness: witness,
        lower_log: vec![LowerLogEntry {
            fe: EdgeSet::new(),
            orbit_size: 0,
            t: value,
            mode: SearchMode::Sampled,
            visited: opts.samples,
        }],
        mode: SearchMode::Sampled,
        orbit_reduced: false,
        budget: opts.budget,
        seed: opts.seed,
        samples: opts.samples,
    })
}
