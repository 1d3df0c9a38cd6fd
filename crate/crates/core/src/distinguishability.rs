//! Deciding whether two fault sets can be told apart.
//!
//! The structural deciders evaluate the edge criterion (PMC) and the three
//! comparator-triple conditions (MM*) directly on `G - F_e`, and return a
//! certificate either way. [`oracle_distinguishable`] answers the same
//! question from the test list alone and is used to cross-check them.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::models::{
    consistent, enumerate_tests, generate_syndrome, AdversaryStrategy, FaultScenario, Model,
    Syndrome,
};
use crate::search::{self, MaskGraph};
use crate::topology::{EdgeSet, Graph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// PMC: `outside ∉ F1 ∪ F2`, `differing ∈ F1 △ F2`, adjacent in `G - F_e`.
    Edge {
        outside: VertexId,
        differing: VertexId,
    },
    /// MM*: the satisfied condition (1, 2 or 3) with its vertices; `w` is
    /// the fault-free comparator adjacent to both `u` and `v`.
    Triple {
        condition: u8,
        u: VertexId,
        v: VertexId,
        w: VertexId,
    },
    /// A syndrome consistent with both fault sets.
    CommonSyndrome(Syndrome),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub model: Model,
    pub distinguishable: bool,
    pub certificate: Certificate,
}

impl Verdict {
    /// Re-check the certificate against the inputs without consulting the
    /// decider that produced it.
    pub fn revalidate(&self, g: &Graph, fe: &EdgeSet, f1: &VertexSet, f2: &VertexSet) -> Result<bool> {
        let g_eff = g.remove_edges(fe)?;
        let union = f1.union(f2);
        let outside = |x: VertexId| g.contains_vertex(x) && !union.contains(x);
        Ok(match &self.certificate {
            Certificate::Edge { outside: x, differing: y } => {
                self.distinguishable
                    && self.model == Model::Pmc
                    && outside(*x)
                    && (f1.contains(*y) != f2.contains(*y))
                    && g_eff.has_edge(*x, *y)
            }
            Certificate::Triple { condition, u, v, w } => {
                let only = |a: &VertexSet, b: &VertexSet, x: VertexId| a.contains(x) && !b.contains(x);
                let members = match condition {
                    1 => (f1.contains(*u) != f2.contains(*u)) && outside(*v),
                    2 => u != v && only(f1, f2, *u) && only(f1, f2, *v),
                    3 => u != v && only(f2, f1, *u) && only(f2, f1, *v),
                    _ => false,
                };
                self.distinguishable
                    && self.model == Model::MmStar
                    && members
                    && outside(*w)
                    && g_eff.has_edge(*u, *w)
                    && g_eff.has_edge(*v, *w)
            }
            Certificate::CommonSyndrome(sigma) => {
                !self.distinguishable
                    && sigma.model() == self.model
                    && consistent(g, fe, f1, sigma)?
                    && consistent(g, fe, f2, sigma)?
            }
        })
    }

    /// Report record with fixed field names; keys come out sorted.
    pub fn record(&self, fe: &EdgeSet, f1: &VertexSet, f2: &VertexSet) -> Value {
        let certificate = match &self.certificate {
            Certificate::Edge { outside, differing } => json!({
                "kind": "edge",
                "outside": outside,
                "differing": differing,
            }),
            Certificate::Triple { condition, u, v, w } => json!({
                "kind": "triple",
                "condition": condition,
                "u": u,
                "v": v,
                "w": w,
            }),
            Certificate::CommonSyndrome(s) => json!({
                "kind": "common_syndrome",
                "tests": s.len(),
                "ones": s.ones(),
                "bits": (0..s.len()).map(|i| if s.bit(i) { '1' } else { '0' }).collect::<String>(),
            }),
        };
        json!({
            "model": self.model,
            "distinguishable": self.distinguishable,
            "certificate": certificate,
            "f1": f1,
            "f2": f2,
            "fe": fe,
        })
    }
}

fn check_pair(g: &Graph, fe: &EdgeSet, f1: &VertexSet, f2: &VertexSet) -> Result<Graph> {
    g.check_set(f1)?;
    g.check_set(f2)?;
    if f1 == f2 {
        return Err(Error::domain("the two fault sets must differ"));
    }
    g.remove_edges(fe)
}

/// A syndrome that every test with a decider outside `F1` reads as `F1`
/// forces and every other test reads as `F2` forces (0 if `F2` marks the
/// decider faulty too). It is consistent with `F1` by construction and
/// with `F2` whenever the pair is indistinguishable.
fn common_syndrome(g: &Graph, fe: &EdgeSet, f1: &VertexSet, f2: &VertexSet, model: Model) -> Result<Syndrome> {
    let scenario = FaultScenario::new(f1.clone(), fe.clone());
    generate_syndrome(g, &scenario, model, &AdversaryStrategy::Mimic { target: f2.clone() })
}

/// PMC: distinguishable iff some vertex outside `F1 ∪ F2` is adjacent in
/// `G - F_e` to a vertex of `F1 △ F2`.
pub fn distinguishable_pmc(g: &Graph, fe: &EdgeSet, f1: &VertexSet, f2: &VertexSet) -> Result<Verdict> {
    let g_eff = check_pair(g, fe, f1, f2)?;
    let union = f1.union(f2);
    for y in f1.symmetric_difference(f2).iter() {
        if let Some(x) = g_eff.neighbors(y).find(|&x| !union.contains(x)) {
            return Ok(Verdict {
                model: Model::Pmc,
                distinguishable: true,
                certificate: Certificate::Edge {
                    outside: x,
                    differing: y,
                },
            });
        }
    }
    Ok(Verdict {
        model: Model::Pmc,
        distinguishable: false,
        certificate: Certificate::CommonSyndrome(common_syndrome(g, fe, f1, f2, Model::Pmc)?),
    })
}

/// MM*: distinguishable iff some fault-free comparator `w` sees
/// (1) a vertex of `F1 △ F2` and another fault-free vertex, or
/// (2) two vertices of `F1 - F2`, or (3) two vertices of `F2 - F1`.
pub fn distinguishable_mm_star(g: &Graph, fe: &EdgeSet, f1: &VertexSet, f2: &VertexSet) -> Result<Verdict> {
    let g_eff = check_pair(g, fe, f1, f2)?;
    let union = f1.union(f2);
    let diff = f1.symmetric_difference(f2);
    let found = |condition, u, v, w| Verdict {
        model: Model::MmStar,
        distinguishable: true,
        certificate: Certificate::Triple { condition, u, v, w },
    };

    for u in diff.iter() {
        for w in g_eff.neighbors(u).filter(|&w| !union.contains(w)) {
            if let Some(v) = g_eff.neighbors(w).find(|&v| !union.contains(v)) {
                return Ok(found(1, u, v, w));
            }
        }
    }
    for (condition, side) in [(2u8, f1.difference(f2)), (3, f2.difference(f1))] {
        let comparators: VertexSet = side
            .iter()
            .flat_map(|u| g_eff.neighbors(u))
            .filter(|&w| !union.contains(w))
            .collect();
        for w in comparators.iter() {
            let mut hits = g_eff.neighbors(w).filter(|&x| side.contains(x));
            if let (Some(u), Some(v)) = (hits.next(), hits.next()) {
                return Ok(found(condition, u, v, w));
            }
        }
    }
    Ok(Verdict {
        model: Model::MmStar,
        distinguishable: false,
        certificate: Certificate::CommonSyndrome(common_syndrome(g, fe, f1, f2, Model::MmStar)?),
    })
}

pub fn distinguishable(
    g: &Graph,
    fe: &EdgeSet,
    f1: &VertexSet,
    f2: &VertexSet,
    model: Model,
) -> Result<Verdict> {
    match model {
        Model::Pmc => distinguishable_pmc(g, fe, f1, f2),
        Model::MmStar => distinguishable_mm_star(g, fe, f1, f2),
    }
}

/// Distinguishable iff some test with a decider outside both sets has
/// different forced results under `F1` and `F2`. Otherwise the two forced
/// syndromes can be merged into one consistent with both.
pub fn oracle_distinguishable(
    g: &Graph,
    fe: &EdgeSet,
    f1: &VertexSet,
    f2: &VertexSet,
    model: Model,
) -> Result<bool> {
    let g_eff = check_pair(g, fe, f1, f2)?;
    Ok(enumerate_tests(&g_eff, model).iter().any(|t| {
        let d = t.decider();
        !f1.contains(d)
            && !f2.contains(d)
            && t.forced_result(|v| f1.contains(v)) != t.forced_result(|v| f2.contains(v))
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOptions {
    /// Maximum number of search nodes for exhaustive work.
    pub budget: u64,
    /// Worker threads; 1 keeps everything on the calling thread.
    pub workers: usize,
    /// Seed for sampled searches.
    pub seed: u64,
    /// Random samples per fallback search.
    pub samples: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 500_000_000,
            workers: 1,
            seed: 0,
            samples: 20_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TDiagOutcome {
    pub diagnosable: bool,
    /// Least indistinguishable pair: minimal `|F1| + |F2|`, then `F1`, then
    /// `F2`, sets ordered by their bit masks; `F1` is the smaller set.
    pub counterexample: Option<(VertexSet, VertexSet)>,
    pub visited: u64,
}

fn kernel(g: &Graph, fe: &EdgeSet, model: Model) -> Result<MaskGraph> {
    let g_eff = g.remove_edges(fe)?;
    MaskGraph::new(&g_eff, model).ok_or_else(|| {
        Error::bound(format!(
            "exhaustive search supports at most 64 vertices, graph has {}",
            g.vertex_count()
        ))
    })
}

fn outcome(found: search::Found) -> TDiagOutcome {
    TDiagOutcome {
        diagnosable: found.best.is_none(),
        counterexample: found
            .best
            .map(|c| (VertexSet::from_mask(c.f1), VertexSet::from_mask(c.f2))),
        visited: found.visited,
    }
}

fn exhausted(limit: u64, e: search::Exhausted) -> Error {
    Error::Budget {
        limit,
        visited: e.visited,
        partial: match e.best {
            Some(c) => format!(
                "counterexample so far {} / {}",
                VertexSet::from_mask(c.f1),
                VertexSet::from_mask(c.f2)
            ),
            None => "no counterexample found yet".to_string(),
        },
    }
}

/// Whether every pair `F1 ≠ F2` with `|F1|, |F2| <= t` is distinguishable in
/// `G - F_e`, by exhaustive search over `S = F1 △ F2`.
pub fn t_diagnosable_check(
    g: &Graph,
    fe: &EdgeSet,
    t: usize,
    model: Model,
    opts: &SearchOptions,
) -> Result<TDiagOutcome> {
    let mg = kernel(g, fe, model)?;
    search::least_counterexample(&mg, model, t as u32, opts.budget, opts.workers.max(1))
        .map(outcome)
        .map_err(|e| exhausted(opts.budget, e))
}

/// Same answer as [`t_diagnosable_check`] by enumerating raw pairs of
/// subsets. Quadratic in the number of subsets; meant for validation.
pub fn t_diagnosable_raw(
    g: &Graph,
    fe: &EdgeSet,
    t: usize,
    model: Model,
    opts: &SearchOptions,
) -> Result<TDiagOutcome> {
    let mg = kernel(g, fe, model)?;
    search::raw_least_counterexample(&mg, model, t as u32, opts.budget)
        .map(outcome)
        .map_err(|e| exhausted(opts.budget, e))
}

/// Randomized counterpart used once the budget is gone: a found pair is a
/// real counterexample, an empty result proves nothing.
pub(crate) fn t_diagnosable_sampled(
    g: &Graph,
    fe: &EdgeSet,
    t: usize,
    model: Model,
    opts: &SearchOptions,
) -> Result<Option<(VertexSet, VertexSet)>> {
    let mg = kernel(g, fe, model)?;
    Ok(
        search::sampled_counterexample(&mg, model, t as u32, opts.samples, opts.seed)
            .map(|c| (VertexSet::from_mask(c.f1), VertexSet::from_mask(c.f2))),
    )
}
