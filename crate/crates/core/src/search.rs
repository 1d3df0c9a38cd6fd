//! Bit-mask search kernel for graphs with at most 64 vertices.
//!
//! A pair `(F1, F2)` is described by `S = F1 △ F2`, the split `S = A ∪ B`
//! (`A = F1 - F2`) and the common part `C = F1 ∩ F2`. Writing
//! `Out = V - S - C`:
//!
//! * PMC: indistinguishable iff `N(S) ⊆ C`.
//! * MM*: indistinguishable iff every `w ∈ Out` adjacent to `S` has no
//!   neighbor in `Out` and at most one neighbor in each of `A` and `B`.
//!
//! If `S` falls apart into pieces that share no neighbor (PMC: pieces that
//! are not adjacent), a single piece with the same `C` is again an
//! indistinguishable pair of strictly smaller total size. Hence the search
//! only visits `S` that are connected in `G_eff` (PMC) or in its square
//! (MM*), and every minimum-total counterexample is found that way.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::models::Model;
use crate::topology::Graph;

/// Pair order used for tie-breaking: total size first, then the smaller
/// set, then the larger one, sets compared as bit masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Candidate {
    pub total: u32,
    pub f1: u64,
    pub f2: u64,
}

impl Candidate {
    fn new(f1: u64, f2: u64) -> Self {
        let (f1, f2) = (f1.min(f2), f1.max(f2));
        Candidate {
            total: f1.count_ones() + f2.count_ones(),
            f1,
            f2,
        }
    }
}

#[derive(Debug)]
pub(crate) struct Exhausted {
    pub visited: u64,
    pub best: Option<Candidate>,
}

#[derive(Debug)]
pub(crate) struct Found {
    pub best: Option<Candidate>,
    pub visited: u64,
}

pub(crate) struct MaskGraph {
    all: u64,
    adj: Vec<u64>,
    /// Connectivity used to enumerate `S`: `adj` for PMC, `adj²` for MM*.
    reach: Vec<u64>,
}

impl MaskGraph {
    pub fn new(g_eff: &Graph, model: Model) -> Option<MaskGraph> {
        let adj = g_eff.adjacency_masks()?;
        let n = adj.len();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let reach = match model {
            Model::Pmc => adj.clone(),
            Model::MmStar => (0..n)
                .map(|v| {
                    let two = bits(adj[v]).fold(adj[v], |m, u| m | adj[u]);
                    two & !(1u64 << v)
                })
                .collect(),
        };
        Some(MaskGraph { all, adj, reach })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn boundary(&self, s: u64) -> u64 {
        bits(s).fold(0, |m, v| m | self.adj[v]) & !s
    }

    pub fn pmc_indistinguishable(&self, f1: u64, f2: u64) -> bool {
        let out = self.all & !(f1 | f2);
        bits(f1 ^ f2).all(|u| self.adj[u] & out == 0)
    }

    pub fn mm_indistinguishable(&self, f1: u64, f2: u64) -> bool {
        let d = f1 ^ f2;
        let (a, b) = (f1 & !f2, f2 & !f1);
        let out = self.all & !(f1 | f2);
        bits(out).all(|w| {
            let nw = self.adj[w];
            !(nw & d != 0 && nw & out != 0)
                && (nw & a).count_ones() < 2
                && (nw & b).count_ones() < 2
        })
    }

    pub fn indistinguishable(&self, model: Model, f1: u64, f2: u64) -> bool {
        match model {
            Model::Pmc => self.pmc_indistinguishable(f1, f2),
            Model::MmStar => self.mm_indistinguishable(f1, f2),
        }
    }
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

/// Shared node budget. Workers draw in chunks to keep contention low.
struct Budget {
    limit: u64,
    used: AtomicU64,
    stop: AtomicBool,
}

const CHUNK: u64 = 1024;

struct Meter<'a> {
    budget: &'a Budget,
    local: u64,
    granted: u64,
}

impl<'a> Meter<'a> {
    fn new(budget: &'a Budget) -> Self {
        Meter {
            budget,
            local: 0,
            granted: 0,
        }
    }

    #[inline]
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local <= self.granted {
            return true;
        }
        if self.budget.stop.load(Ordering::Relaxed) {
            return false;
        }
        let before = self.budget.used.fetch_add(CHUNK, Ordering::Relaxed);
        if before >= self.budget.limit {
            self.budget.stop.store(true, Ordering::Relaxed);
            return false;
        }
        self.granted += CHUNK;
        true
    }
}

/// Exhaustive structured search for the least indistinguishable pair with
/// `|F1|, |F2| <= t`.
pub(crate) fn least_counterexample(
    mg: &MaskGraph,
    model: Model,
    t: u32,
    limit: u64,
    workers: usize,
) -> Result<Found, Exhausted> {
    let budget = Budget {
        limit,
        used: AtomicU64::new(0),
        stop: AtomicBool::new(false),
    };
    let n = mg.vertex_count();
    let run_root = |root: usize| -> (Option<Candidate>, u64, bool) {
        let mut w = Walker {
            mg,
            model,
            t,
            best: None,
            meter: Meter::new(&budget),
        };
        let ok = w.root(root);
        (w.best, w.meter.local, ok)
    };
    let results: Vec<(Option<Candidate>, u64, bool)> = if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(|| (0..n).into_par_iter().map(run_root).collect())
    } else {
        (0..n).map(run_root).collect()
    };
    let best = results.iter().filter_map(|r| r.0).min();
    let visited = results.iter().map(|r| r.1).sum();
    if results.iter().all(|r| r.2) {
        Ok(Found { best, visited })
    } else {
        Err(Exhausted { visited, best })
    }
}

struct Walker<'a> {
    mg: &'a MaskGraph,
    model: Model,
    t: u32,
    best: Option<Candidate>,
    meter: Meter<'a>,
}

impl Walker<'_> {
    fn best_total(&self) -> u32 {
        self.best.map_or(u32::MAX, |c| c.total)
    }

    fn offer(&mut self, c: Candidate) {
        if self.best.is_none_or(|b| c < b) {
            self.best = Some(c);
        }
    }

    fn root(&mut self, root: usize) -> bool {
        if self.t == 0 {
            return true;
        }
        let higher = if root == 63 {
            0
        } else {
            self.mg.all & !((1u64 << (root + 1)) - 1)
        };
        let sub = 1u64 << root;
        let reach = self.mg.reach[root];
        self.extend(sub, 1, reach & higher, reach | sub, higher)
    }

    /// Connected-set enumeration: each connected `S` whose minimum is the
    /// root is produced exactly once.
    fn extend(&mut self, sub: u64, size: u32, ext: u64, closed: u64, higher: u64) -> bool {
        if !self.meter.tick() {
            return false;
        }
        if !self.evaluate(sub, size) {
            return false;
        }
        if size >= 2 * self.t || size >= self.best_total() {
            return true;
        }
        let mut rest = ext;
        while rest != 0 {
            let w = rest & rest.wrapping_neg();
            rest ^= w;
            let wi = w.trailing_zeros() as usize;
            let reach = self.mg.reach[wi];
            let next_ext = rest | (reach & higher & !closed);
            if !self.extend(sub | w, size + 1, next_ext, closed | reach | w, higher) {
                return false;
            }
        }
        true
    }

    fn evaluate(&mut self, s: u64, size: u32) -> bool {
        let half = size.div_ceil(2);
        if half > self.t {
            return true;
        }
        let boundary = self.mg.boundary(s);
        match self.model {
            Model::Pmc => {
                let c = boundary.count_ones();
                if half + c <= self.t && size + 2 * c <= self.best_total() {
                    let lo = (size + c).saturating_sub(self.t);
                    let a = lowest_bits(s, lo);
                    self.offer(Candidate::new(boundary | a, boundary | (s & !a)));
                }
                true
            }
            Model::MmStar => {
                let kmax = self.t - half;
                let forced = bits(boundary)
                    .filter(|&w| (self.mg.adj[w] & s).count_ones() >= 3)
                    .fold(0u64, |m, w| m | (1 << w));
                let fc = forced.count_ones();
                if fc > kmax || size + 2 * fc > self.best_total() {
                    return true;
                }
                let free: Vec<usize> = bits(boundary & !forced).collect();
                self.branch(s, size, kmax, &free, 0, forced, 0)
            }
        }
    }

    /// Decide for each boundary vertex whether it joins `C` or stays out;
    /// an outside boundary vertex drags its other neighbors into `C`.
    #[allow(clippy::too_many_arguments)]
    fn branch(
        &mut self,
        s: u64,
        size: u32,
        kmax: u32,
        free: &[usize],
        idx: usize,
        c: u64,
        out: u64,
    ) -> bool {
        if !self.meter.tick() {
            return false;
        }
        let cc = c.count_ones();
        if cc > kmax || size + 2 * cc > self.best_total() {
            return true;
        }
        let Some(&w) = free.get(idx) else {
            self.leaf(s, size, c, out);
            return true;
        };
        let wm = 1u64 << w;
        if c & wm != 0 {
            return self.branch(s, size, kmax, free, idx + 1, c, out);
        }
        if !self.branch(s, size, kmax, free, idx + 1, c | wm, out) {
            return false;
        }
        let need = self.mg.adj[w] & !s;
        if need & out == 0 {
            return self.branch(s, size, kmax, free, idx + 1, c | need, out | wm);
        }
        true
    }

    fn leaf(&mut self, s: u64, size: u32, c: u64, out: u64) {
        let cc = c.count_ones();
        let lo = (size + cc).saturating_sub(self.t);
        let hi = self.t - cc;
        let pairs: Vec<u64> = bits(out)
            .map(|w| self.mg.adj[w] & s)
            .filter(|p| p.count_ones() == 2)
            .collect();
        let a = if pairs.is_empty() {
            Some(lowest_bits(s, lo))
        } else {
            let members: Vec<usize> = bits(s).collect();
            (0u64..1 << size)
                .map(|i| {
                    members
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| i >> k & 1 == 1)
                        .fold(0u64, |m, (_, &v)| m | (1 << v))
                })
                .find(|&a| {
                    let k = a.count_ones();
                    lo <= k && k <= hi && pairs.iter().all(|p| (a & p).count_ones() == 1)
                })
        };
        if let Some(a) = a {
            self.offer(Candidate::new(c | a, c | (s & !a)));
        }
    }
}

fn lowest_bits(s: u64, k: u32) -> u64 {
    bits(s).take(k as usize).fold(0, |m, v| m | (1 << v))
}

/// Reference search: every pair of subsets of size at most `t`.
pub(crate) fn raw_least_counterexample(
    mg: &MaskGraph,
    model: Model,
    t: u32,
    limit: u64,
) -> Result<Found, Exhausted> {
    let n = mg.vertex_count() as u32;
    let mut subsets = Vec::new();
    for k in 0..=t.min(n) {
        subsets.extend(combinations_of_size(n, k));
    }
    let budget = Budget {
        limit,
        used: AtomicU64::new(0),
        stop: AtomicBool::new(false),
    };
    let mut meter = Meter::new(&budget);
    let mut best: Option<Candidate> = None;
    for (i, &x) in subsets.iter().enumerate() {
        for &y in &subsets[i + 1..] {
            if !meter.tick() {
                return Err(Exhausted {
                    visited: meter.local,
                    best,
                });
            }
            if mg.indistinguishable(model, x, y) {
                let c = Candidate::new(x, y);
                if best.is_none_or(|b| c < b) {
                    best = Some(c);
                }
            }
        }
    }
    Ok(Found {
        best,
        visited: meter.local,
    })
}

/// All `k`-subsets of `0..n` as masks, in increasing numeric order.
pub(crate) fn combinations_of_size(n: u32, k: u32) -> impl Iterator<Item = u64> {
    let limit = if n == 64 { None } else { Some(1u64 << n) };
    let mut next = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else if k == 64 {
        Some(u64::MAX)
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur.checked_add(c);
            r.and_then(|r| {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                match limit {
                    Some(l) if nxt >= l => None,
                    _ => Some(nxt),
                }
            })
        };
        Some(cur)
    })
}

/// Random connected sets of size `1..=2t`, evaluated like the exhaustive
/// search. Returns the least counterexample among the samples.
pub(crate) fn sampled_counterexample(
    mg: &MaskGraph,
    model: Model,
    t: u32,
    samples: u64,
    seed: u64,
) -> Option<Candidate> {
    if t == 0 || mg.vertex_count() == 0 {
        return None;
    }
    let budget = Budget {
        limit: u64::MAX,
        used: AtomicU64::new(0),
        stop: AtomicBool::new(false),
    };
    let mut w = Walker {
        mg,
        model,
        t,
        best: None,
        meter: Meter::new(&budget),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = mg.vertex_count();
    let max_size = (2 * t).min(n as u32);
    for _ in 0..samples {
        let target = rng.gen_range(1..=max_size);
        let mut s = 1u64 << rng.gen_range(0..n);
        let mut size = 1;
        while size < target {
            let frontier = bits(s).fold(0, |m, v| m | mg.reach[v]) & !s;
            if frontier == 0 {
                break;
            }
            let pick = rng.gen_range(0..frontier.count_ones() as usize);
            let v = bits(frontier).nth(pick).expect("pick in range");
            s |= 1 << v;
            size += 1;
        }
        w.evaluate(s, size);
    }
    w.best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{EdgeSet, Graph};

    #[test]
    fn gosper_enumerates_all_combinations() {
        for n in [0u32, 1, 5, 8] {
            for k in 0..=n + 1 {
                let v: Vec<u64> = combinations_of_size(n, k).collect();
                let expected = crate::topology::binomial(n as u64, k as u64) as usize;
                assert_eq!(v.len(), expected, "n={n} k={k}");
                assert!(v.windows(2).all(|w| w[0] < w[1]));
                assert!(v.iter().all(|m| m.count_ones() == k && (n == 64 || *m < 1 << n)));
            }
        }
    }

    #[test]
    fn connected_enumeration_counts_q3() {
        for model in Model::ALL {
            let g = Graph::hypercube(3).unwrap();
            let mg = MaskGraph::new(&g, model).unwrap();
            let expected = (1u64..256).filter(|&s| is_connected(&mg, s)).count() as u64;
            let produced: u64 = (0..8).map(|root| count_connected(&mg, root)).sum();
            assert_eq!(produced, expected, "{model}");
        }
    }

    fn is_connected(mg: &MaskGraph, s: u64) -> bool {
        let start = s & s.wrapping_neg();
        let mut seen = start;
        loop {
            let grown = (bits(seen).fold(seen, |m, v| m | mg.reach[v])) & s;
            if grown == seen {
                return seen == s;
            }
            seen = grown;
        }
    }

    fn count_connected(mg: &MaskGraph, root: usize) -> u64 {
        fn rec(mg: &MaskGraph, sub: u64, ext: u64, closed: u64, higher: u64) -> u64 {
            let mut total = 1;
            let mut rest = ext;
            while rest != 0 {
                let w = rest & rest.wrapping_neg();
                rest ^= w;
                let wi = w.trailing_zeros() as usize;
                let reach = mg.reach[wi];
                total += rec(mg, sub | w, rest | (reach & higher & !closed), closed | reach | w, higher);
            }
            total
        }
        let higher = mg.all & !((1u64 << (root + 1)) - 1);
        rec(mg, 1 << root, mg.reach[root] & higher, mg.reach[root] | 1 << root, higher)
    }

    #[test]
    fn structured_matches_raw_on_small_cubes() {
        for n in [2u32, 3] {
            let g = Graph::hypercube(n).unwrap();
            let cuts = [EdgeSet::new(), EdgeSet::from_pairs(&[(0, 1)]).unwrap()];
            for fe in &cuts {
                let g_eff = g.remove_edges(fe).unwrap();
                for model in Model::ALL {
                    let mg = MaskGraph::new(&g_eff, model).unwrap();
                    for t in 0..=4 {
                        let a = least_counterexample(&mg, model, t, u64::MAX, 1).unwrap().best;
                        let b = raw_least_counterexample(&mg, model, t, u64::MAX).unwrap().best;
                        assert_eq!(a, b, "n={n} fe={fe} model={model} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn budget_stops_search() {
        let g = Graph::hypercube(4).unwrap();
        let mg = MaskGraph::new(&g, Model::MmStar).unwrap();
        let err = least_counterexample(&mg, Model::MmStar, 4, 10, 1).unwrap_err();
        assert!(err.visited >= 10);
    }
}
