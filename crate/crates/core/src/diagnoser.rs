//! One-step syndrome decoding by candidate enumeration.

use serde::Serialize;

use crate::distinguishability::{Certificate, Verdict};
use crate::error::{Error, Result};
use crate::models::{Model, Syndrome, Test};
use crate::topology::{EdgeSet, Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagnosisOutcome {
    Unique(VertexSet),
    /// All consistent candidates, smallest first. `certificates[i]` pairs
    /// the first candidate with candidate `i + 1`.
    Ambiguous {
        candidates: Vec<VertexSet>,
        certificates: Vec<Verdict>,
    },
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagnosisResult {
    pub outcome: DiagnosisOutcome,
    /// Partial candidates visited during the scan.
    pub examined: u64,
}

impl DiagnosisResult {
    pub fn unique(&self) -> Option<&VertexSet> {
        match &self.outcome {
            DiagnosisOutcome::Unique(f) => Some(f),
            _ => None,
        }
    }
}

#[derive(Serialize)]
struct Record<'a> {
    outcome: &'static str,
    candidates: Vec<&'a VertexSet>,
    examined: u64,
}

impl DiagnosisResult {
    /// Report record with sorted keys.
    pub fn record(&self) -> serde_json::Value {
        let (outcome, candidates) = match &self.outcome {
            DiagnosisOutcome::Unique(f) => ("unique", vec![f]),
            DiagnosisOutcome::Ambiguous { candidates, .. } => ("ambiguous", candidates.iter().collect()),
            DiagnosisOutcome::Infeasible => ("infeasible", vec![]),
        };
        serde_json::to_value(Record {
            outcome,
            candidates,
            examined: self.examined,
        })
        .expect("plain record")
    }
}

/// A test flattened for the scan: the decider, the vertices whose status
/// the result reports, and the observed bit.
struct Check {
    decider: usize,
    watched: [usize; 2],
    bit: bool,
}

impl Check {
    fn contradicts(&self, faulty: &[bool]) -> bool {
        !faulty[self.decider] && (faulty[self.watched[0]] || faulty[self.watched[1]]) != self.bit
    }
}

struct Scan {
    /// Checks grouped by their largest involved vertex.
    by_last: Vec<Vec<Check>>,
    faulty: Vec<bool>,
    t: usize,
    budget: u64,
    examined: u64,
    found: Vec<VertexSet>,
    chosen: Vec<usize>,
}

impl Scan {
    /// Checks whose vertices all lie in `lo..hi` are now fully decided.
    fn settle(&self, lo: usize, hi: usize) -> bool {
        self.by_last[lo..hi]
            .iter()
            .flatten()
            .all(|c| !c.contradicts(&self.faulty))
    }

    /// `next` is the first vertex not yet decided.
    fn walk(&mut self, next: usize) -> Result<()> {
        self.examined += 1;
        if self.examined > self.budget {
            return Err(Error::Budget {
                limit: self.budget,
                visited: self.examined - 1,
                partial: format!("{} consistent candidates so far", self.found.len()),
            });
        }
        let n = self.by_last.len();
        if self.settle(next, n) {
            self.found
                .push(self.chosen.iter().map(|&v| (v as u32).into()).collect());
        }
        if self.chosen.len() == self.t {
            return Ok(());
        }
        for v in next..n {
            if !self.settle(next, v) {
                break;
            }
            self.faulty[v] = true;
            self.chosen.push(v);
            let ok = self.settle(v, v + 1);
            let r = if ok { self.walk(v + 1) } else { Ok(()) };
            self.chosen.pop();
            self.faulty[v] = false;
            r?;
        }
        Ok(())
    }
}

/// Every vertex set of size at most `t` consistent with `sigma`, decided as
/// unique, ambiguous or infeasible. The faulty edges are known.
pub fn diagnose(
    g: &Graph,
    fe: &EdgeSet,
    sigma: &Syndrome,
    t: usize,
    model: Model,
    budget: u64,
) -> Result<DiagnosisResult> {
    if sigma.model() != model {
        return Err(Error::domain(format!(
            "syndrome is for {} but {model} was requested",
            sigma.model()
        )));
    }
    if sigma.removed_edges() != fe {
        return Err(Error::domain("faulty edge set differs from the syndrome's"));
    }
    let tests = sigma.domain(g)?;
    let mut by_last: Vec<Vec<Check>> = (0..g.vertex_count()).map(|_| Vec::new()).collect();
    for (i, test) in tests.iter().enumerate() {
        let (decider, watched) = match test {
            Test::Pmc(p) => (p.tester.index(), [p.testee.index(); 2]),
            Test::MmStar(m) => (m.comparator.index(), [m.left.index(), m.right.index()]),
        };
        let last = decider.max(watched[0]).max(watched[1]);
        by_last[last].push(Check {
            decider,
            watched,
            bit: sigma.bit(i),
        });
    }
    let mut scan = Scan {
        by_last,
        faulty: vec![false; g.vertex_count()],
        t: t.min(g.vertex_count()),
        budget,
        examined: 0,
        found: Vec::new(),
        chosen: Vec::new(),
    };
    scan.walk(0)?;
    let mut found = scan.found;
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.ids().cmp(&b.ids())));
    let outcome = match found.len() {
        0 => DiagnosisOutcome::Infeasible,
        1 => DiagnosisOutcome::Unique(found.pop().expect("one candidate")),
        _ => DiagnosisOutcome::Ambiguous {
            certificates: found[1..]
                .iter()
                .map(|_| Verdict {
                    model,
                    distinguishable: false,
                    certificate: Certificate::CommonSyndrome(sigma.clone()),
                })
                .collect(),
            candidates: found,
        },
    };
    Ok(DiagnosisResult {
        outcome,
        examined: scan.examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnosability::theorem_witness;
    use crate::models::{consistent, generate_syndrome, AdversaryStrategy, FaultScenario};
    use crate::topology::VertexId;

    fn set(ids: &[u32]) -> VertexSet {
        ids.iter().map(|&v| VertexId(v)).collect()
    }

    #[test]
    fn all_zero_syndrome_is_fault_free() {
        let g = Graph::hypercube(3).unwrap();
        for model in Model::ALL {
            let sigma = Syndrome::uniform(&g, &EdgeSet::new(), model, false).unwrap();
            let r = diagnose(&g, &EdgeSet::new(), &sigma, 3, model, 1 << 20).unwrap();
            assert_eq!(r.unique(), Some(&VertexSet::new()), "{model}");
        }
    }

    #[test]
    fn locates_single_fault_with_cut_edge() {
        let g = Graph::hypercube(4).unwrap();
        let fe = EdgeSet::from_pairs(&[(0, 1)]).unwrap();
        let truth = set(&[0b0010]);
        for model in Model::ALL {
            let scenario = FaultScenario::new(truth.clone(), fe.clone());
            let strategy = AdversaryStrategy::Mimic { target: set(&[0b0000]) };
            let sigma = generate_syndrome(&g, &scenario, model, &strategy).unwrap();
            let r = diagnose(&g, &fe, &sigma, 3, model, 1 << 20).unwrap();
            assert_eq!(r.unique(), Some(&truth), "{model}");
        }
    }

    #[test]
    fn witness_syndrome_is_ambiguous() {
        let g = Graph::hypercube(3).unwrap();
        let w = theorem_witness(3, 1).unwrap();
        for model in Model::ALL {
            let scenario = FaultScenario::new(w.f1.clone(), w.fe.clone());
            let strategy = AdversaryStrategy::Mimic { target: w.f2.clone() };
            let sigma = generate_syndrome(&g, &scenario, model, &strategy).unwrap();
            let r = diagnose(&g, &w.fe, &sigma, 3, model, 1 << 20).unwrap();
            let DiagnosisOutcome::Ambiguous { candidates, certificates } = r.outcome else {
                panic!("expected ambiguity under {model}");
            };
            assert!(candidates.contains(&w.f1) && candidates.contains(&w.f2));
            assert_eq!(certificates.len(), candidates.len() - 1);
            for c in &candidates {
                assert!(consistent(&g, &w.fe, c, &sigma).unwrap());
            }
        }
    }

    #[test]
    fn contradictory_syndrome_is_infeasible() {
        // Path 0 - 1 - 2: the middle vertex accuses both ends, the ends
        // clear the middle. Only {0, 2} explains it.
        let edges = [(0, 1), (1, 2)].map(|(a, b)| crate::Edge::new(a, b).unwrap());
        let g = Graph::from_edges(3, edges).unwrap();
        let sigma = Syndrome::uniform(&g, &EdgeSet::new(), Model::Pmc, false).unwrap();
        let tests = sigma.domain(&g).unwrap();
        let mut s = sigma.clone();
        for (i, t) in tests.iter().enumerate() {
            if t.decider() == VertexId(1) {
                s = s.with_bit(i, true);
            }
        }
        for t in 0..2 {
            let r = diagnose(&g, &EdgeSet::new(), &s, t, Model::Pmc, 100).unwrap();
            assert_eq!(r.outcome, DiagnosisOutcome::Infeasible);
        }
        let r = diagnose(&g, &EdgeSet::new(), &s, 2, Model::Pmc, 100).unwrap();
        assert_eq!(r.unique(), Some(&set(&[0, 2])));
    }

    #[test]
    fn mismatched_inputs() {
        let g = Graph::hypercube(3).unwrap();
        let sigma = Syndrome::uniform(&g, &EdgeSet::new(), Model::Pmc, false).unwrap();
        assert!(diagnose(&g, &EdgeSet::new(), &sigma, 1, Model::MmStar, 100).is_err());
        let fe = EdgeSet::from_pairs(&[(0, 1)]).unwrap();
        assert!(diagnose(&g, &fe, &sigma, 1, Model::Pmc, 100).is_err());
        assert!(matches!(
            diagnose(&g, &EdgeSet::new(), &sigma, 3, Model::Pmc, 1),
            Err(Error::Budget { limit: 1, .. })
        ));
    }
}
