//! Test enumeration and syndrome semantics for the PMC and MM* models.
//!
//! Tests are always enumerated on the effective graph `G - F_e`: a test
//! whose link is faulty does not take place and is absent from the
//! syndrome domain.

use std::fmt;
use std::str::FromStr;

use bitvec::vec::BitVec;
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::{Edge, EdgeSet, Graph, VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "pmc")]
    Pmc,
    #[serde(rename = "mmstar")]
    MmStar,
}

impl Model {
    pub const ALL: [Model; 2] = [Model::Pmc, Model::MmStar];

    pub fn as_str(self) -> &'static str {
        match self {
            Model::Pmc => "pmc",
            Model::MmStar => "mmstar",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Model> {
        match s {
            "pmc" => Ok(Model::Pmc),
            "mmstar" | "mm*" => Ok(Model::MmStar),
            other => Err(Error::domain(format!("unknown model `{other}`"))),
        }
    }
}

/// `tester` tests its neighbor `testee`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PmcTest {
    pub tester: VertexId,
    pub testee: VertexId,
}

/// `comparator` compares the outputs of two of its neighbors; `left < right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MmTest {
    pub comparator: VertexId,
    pub left: VertexId,
    pub right: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Test {
    Pmc(PmcTest),
    MmStar(MmTest),
}

impl Test {
    /// The unit whose health decides whether the result is reliable.
    pub fn decider(&self) -> VertexId {
        match self {
            Test::Pmc(t) => t.tester,
            Test::MmStar(t) => t.comparator,
        }
    }

    /// Result a fault-free decider reports when `faulty` marks the faulty units.
    pub fn forced_result(&self, faulty: impl Fn(VertexId) -> bool) -> bool {
        match self {
            Test::Pmc(t) => faulty(t.testee),
            Test::MmStar(t) => faulty(t.left) || faulty(t.right),
        }
    }

    fn write_fields(&self, out: &mut String) {
        match self {
            Test::Pmc(t) => out.push_str(&format!("{} {}", t.tester, t.testee)),
            Test::MmStar(t) => {
                out.push_str(&format!("{} {} {}", t.comparator, t.left, t.right))
            }
        }
    }
}

/// Both orientations of every edge, sorted by `(tester, testee)`.
pub fn enumerate_tests_pmc(g_eff: &Graph) -> Vec<PmcTest> {
    g_eff
        .vertices()
        .flat_map(|u| g_eff.neighbors(u).map(move |v| PmcTest { tester: u, testee: v }))
        .collect()
}

/// One test per comparator and unordered pair of its neighbors, sorted.
pub fn enumerate_tests_mm_star(g_eff: &Graph) -> Vec<MmTest> {
    let mut tests = Vec::new();
    for w in g_eff.vertices() {
        let ns: Vec<VertexId> = g_eff.neighbors(w).collect();
        for (i, &left) in ns.iter().enumerate() {
            for &right in &ns[i + 1..] {
                tests.push(MmTest {
                    comparator: w,
                    left,
                    right,
                });
            }
        }
    }
    tests
}

pub fn enumerate_tests(g_eff: &Graph, model: Model) -> Vec<Test> {
    match model {
        Model::Pmc => enumerate_tests_pmc(g_eff).into_iter().map(Test::Pmc).collect(),
        Model::MmStar => enumerate_tests_mm_star(g_eff)
            .into_iter()
            .map(Test::MmStar)
            .collect(),
    }
}

/// Number of tests without materializing them.
pub fn test_count(g_eff: &Graph, model: Model) -> usize {
    match model {
        Model::Pmc => 2 * g_eff.edge_count(),
        Model::MmStar => g_eff
            .vertices()
            .map(|w| {
                let d = g_eff.degree(w);
                d * d.saturating_sub(1) / 2
            })
            .sum(),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaultScenario {
    pub faulty_vertices: VertexSet,
    pub faulty_edges: EdgeSet,
}

impl FaultScenario {
    pub fn new(faulty_vertices: VertexSet, faulty_edges: EdgeSet) -> Self {
        FaultScenario {
            faulty_vertices,
            faulty_edges,
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        g.check_set(&self.faulty_vertices)?;
        g.check_edges(&self.faulty_edges)
    }

    /// `Fv: <ids>` and `Fe: <pairs>` lines, ids decimal, comma separated.
    pub fn to_text(&self) -> String {
        format!(
            "Fv: {}\nFe: {}\n",
            self.faulty_vertices.iter().join(","),
            self.faulty_edges.iter().join(",")
        )
    }

    pub fn from_text(text: &str) -> Result<FaultScenario> {
        let mut fv = None;
        let mut fe = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("Fv:") {
                fv = Some(parse_id_list(rest, i + 1)?);
            } else if let Some(rest) = line.strip_prefix("Fe:") {
                fe = Some(parse_edge_list(rest, i + 1)?);
            } else {
                return Err(Error::parse(i + 1, format!("unexpected `{line}`")));
            }
        }
        Ok(FaultScenario {
            faulty_vertices: fv.ok_or_else(|| Error::parse(0, "missing `Fv:` line"))?,
            faulty_edges: fe.unwrap_or_default(),
        })
    }
}

fn parse_id_list(s: &str, line: usize) -> Result<VertexSet> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u32>()
                .map(VertexId)
                .map_err(|_| Error::parse(line, format!("bad vertex id `{t}`")))
        })
        .collect()
}

fn parse_edge_list(s: &str, line: usize) -> Result<EdgeSet> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (a, b) = t
                .split_once('-')
                .ok_or_else(|| Error::parse(line, format!("bad edge `{t}`")))?;
            let a: u32 = a.trim().parse().map_err(|_| Error::parse(line, format!("bad edge `{t}`")))?;
            let b: u32 = b.trim().parse().map_err(|_| Error::parse(line, format!("bad edge `{t}`")))?;
            Edge::new(a, b).map_err(|e| Error::parse(line, e.to_string()))
        })
        .collect()
}

/// How faulty deciders answer. The models leave those results arbitrary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AdversaryStrategy {
    AllZeros,
    AllOnes,
    /// Independent fair bits from ChaCha8 seeded with the given value, drawn
    /// in test order.
    SeededRandom { seed: u64 },
    /// Report what `target` would force; 0 where `target` marks the decider
    /// faulty as well.
    Mimic { target: VertexSet },
}

/// Complete test outcome vector for one run, indexed by the sorted test
/// list of `G - F_e` under `model`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syndrome {
    model: Model,
    graph: String,
    removed: EdgeSet,
    bits: BitVec,
}

impl Syndrome {
    pub fn model(&self) -> Model {
        self.model
    }

    /// Fingerprint of the graph before edge removal.
    pub fn graph_fingerprint(&self) -> &str {
        &self.graph
    }

    pub fn removed_edges(&self) -> &EdgeSet {
        &self.removed
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, index: usize) -> bool {
        self.bits[index]
    }

    pub fn ones(&self) -> usize {
        self.bits.count_ones()
    }

    /// Result of `test`, looked up against the test list of `g`.
    pub fn result_of(&self, g: &Graph, test: &Test) -> Result<bool> {
        let tests = self.domain(g)?;
        let i = tests
            .binary_search(test)
            .map_err(|_| Error::domain("test is not in the syndrome domain"))?;
        Ok(self.bits[i])
    }

    /// Syndrome with every listed result set to `value`.
    pub fn uniform(g: &Graph, removed: &EdgeSet, model: Model, value: bool) -> Result<Syndrome> {
        let g_eff = g.remove_edges(removed)?;
        let len = test_count(&g_eff, model);
        Ok(Syndrome {
            model,
            graph: g.fingerprint(),
            removed: removed.clone(),
            bits: BitVec::repeat(value, len),
        })
    }

    /// Copy with the result at `index` replaced.
    pub fn with_bit(&self, index: usize, value: bool) -> Syndrome {
        let mut s = self.clone();
        s.bits.set(index, value);
        s
    }

    /// Recompute the test list this syndrome is indexed by.
    pub fn domain(&self, g: &Graph) -> Result<Vec<Test>> {
        if g.fingerprint() != self.graph {
            return Err(Error::domain("syndrome belongs to a different graph"));
        }
        let tests = enumerate_tests(&g.remove_edges(&self.removed)?, self.model);
        if tests.len() != self.bits.len() {
            return Err(Error::domain(format!(
                "syndrome has {} results but the graph has {} tests",
                self.bits.len(),
                tests.len()
            )));
        }
        Ok(tests)
    }

    /// Text form: `model`, `graph`, `edges_removed` headers, the removed
    /// edges, then `<test> <bit>` per test in sorted order.
    pub fn to_text(&self, g: &Graph) -> Result<String> {
        let tests = self.domain(g)?;
        let mut out = format!(
            "model {}\ngraph {}\nedges_removed {}\n",
            self.model,
            self.graph,
            self.removed.len()
        );
        for e in self.removed.iter() {
            out.push_str(&format!("{} {}\n", e.lo(), e.hi()));
        }
        for (t, bit) in tests.iter().zip(self.bits.iter()) {
            t.write_fields(&mut out);
            out.push_str(if *bit { " 1\n" } else { " 0\n" });
        }
        Ok(out)
    }

    pub fn from_text(text: &str, g: &Graph) -> Result<Syndrome> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let mut header = |key: &str| -> Result<(usize, String)> {
            let (n, l) = lines
                .next()
                .ok_or_else(|| Error::parse(0, format!("missing `{key}` header")))?;
            l.strip_prefix(key)
                .and_then(|r| r.strip_prefix(' '))
                .map(|r| (n, r.trim().to_string()))
                .ok_or_else(|| Error::parse(n, format!("expected `{key} ...`")))
        };
        let (n, model) = header("model")?;
        let model: Model = model.parse().map_err(|_| Error::parse(n, "bad model"))?;
        let (_, graph) = header("graph")?;
        let (n, k) = header("edges_removed")?;
        let k: usize = k.parse().map_err(|_| Error::parse(n, "bad edge count"))?;
        if graph != g.fingerprint() {
            return Err(Error::domain(format!(
                "syndrome graph {graph} does not match {}",
                g.fingerprint()
            )));
        }
        let ints = |n: usize, l: &str| -> Result<Vec<u32>> {
            l.split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(n, format!("bad integer `{t}`"))))
                .collect()
        };
        let mut removed = EdgeSet::new();
        for _ in 0..k {
            let (n, l) = lines.next().ok_or_else(|| Error::parse(0, "truncated edge list"))?;
            match ints(n, l)?.as_slice() {
                [a, b] => {
                    removed.insert(Edge::new(*a, *b).map_err(|e| Error::parse(n, e.to_string()))?);
                }
                _ => return Err(Error::parse(n, "expected `<u> <v>`")),
            }
        }
        let tests = enumerate_tests(&g.remove_edges(&removed)?, model);
        let mut bits = BitVec::with_capacity(tests.len());
        for t in &tests {
            let (n, l) = lines
                .next()
                .ok_or_else(|| Error::parse(0, "fewer test lines than tests"))?;
            let fields = ints(n, l)?;
            let (ids, bit) = fields.split_at(fields.len().saturating_sub(1));
            let matches = match t {
                Test::Pmc(p) => ids == [p.tester.0, p.testee.0],
                Test::MmStar(m) => ids == [m.comparator.0, m.left.0, m.right.0],
            };
            if !matches {
                return Err(Error::parse(n, format!("expected test {t:?}")));
            }
            match bit {
                [0] => bits.push(false),
                [1] => bits.push(true),
                _ => return Err(Error::parse(n, "result must be 0 or 1")),
            }
        }
        if let Some((n, _)) = lines.next() {
            return Err(Error::parse(n, "more test lines than tests"));
        }
        Ok(Syndrome {
            model,
            graph: graph.to_string(),
            removed,
            bits,
        })
    }
}

/// Run every test of `G - F_e` with the scenario's faulty vertices.
/// Fault-free deciders answer truthfully; faulty ones follow `strategy`.
pub fn generate_syndrome(
    g: &Graph,
    scenario: &FaultScenario,
    model: Model,
    strategy: &AdversaryStrategy,
) -> Result<Syndrome> {
    scenario.validate(g)?;
    if let AdversaryStrategy::Mimic { target } = strategy {
        g.check_set(target)?;
    }
    let g_eff = g.remove_edges(&scenario.faulty_edges)?;
    let faulty = &scenario.faulty_vertices;
    let mut rng = match strategy {
        AdversaryStrategy::SeededRandom { seed } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let tests = enumerate_tests(&g_eff, model);
    let mut bits = BitVec::with_capacity(tests.len());
    for t in &tests {
        let bit = if !faulty.contains(t.decider()) {
            t.forced_result(|v| faulty.contains(v))
        } else {
            match strategy {
                AdversaryStrategy::AllZeros => false,
                AdversaryStrategy::AllOnes => true,
                AdversaryStrategy::SeededRandom { .. } => {
                    rng.as_mut().expect("rng seeded").gen::<bool>()
                }
                AdversaryStrategy::Mimic { target } => {
                    !target.contains(t.decider()) && t.forced_result(|v| target.contains(v))
                }
            }
        };
        bits.push(bit);
    }
    Ok(Syndrome {
        model,
        graph: g.fingerprint(),
        removed: scenario.faulty_edges.clone(),
        bits,
    })
}

/// Whether `σ` could arise with exactly the vertices of `faulty` faulty:
/// every test with a fault-free decider must show the forced result.
pub fn consistent(g: &Graph, removed: &EdgeSet, faulty: &VertexSet, sigma: &Syndrome) -> Result<bool> {
    g.check_set(faulty)?;
    if removed != &sigma.removed {
        return Err(Error::domain("faulty edge set differs from the syndrome's"));
    }
    let tests = sigma.domain(g)?;
    Ok(tests.iter().zip(sigma.bits.iter()).all(|(t, bit)| {
        faulty.contains(t.decider()) || t.forced_result(|v| faulty.contains(v)) == *bit
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u32) -> Graph {
        Graph::hypercube(n).unwrap()
    }

    fn set(ids: &[u32]) -> VertexSet {
        ids.iter().map(|&v| VertexId(v)).collect()
    }

    #[test]
    fn pmc_test_counts() {
        assert_eq!(enumerate_tests_pmc(&q(3)).len(), 24);
        let cut = q(3).remove_edges(&EdgeSet::from_pairs(&[(0, 1)]).unwrap()).unwrap();
        assert_eq!(enumerate_tests_pmc(&cut).len(), 22);
        let single = Graph::from_edges(2, [Edge::new(0, 1).unwrap()]).unwrap();
        assert_eq!(enumerate_tests_pmc(&single).len(), 2);
        let tests = enumerate_tests_pmc(&q(3));
        assert!(tests.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn mm_test_counts() {
        assert_eq!(enumerate_tests_mm_star(&q(3)).len(), 24);
        let cut = q(3).remove_edges(&EdgeSet::from_pairs(&[(0, 1)]).unwrap()).unwrap();
        assert_eq!(enumerate_tests_mm_star(&cut).len(), 20);
        let path = Graph::from_edges(3, [Edge::new(0, 1).unwrap(), Edge::new(1, 2).unwrap()]).unwrap();
        assert_eq!(
            enumerate_tests_mm_star(&path),
            vec![MmTest {
                comparator: VertexId(1),
                left: VertexId(0),
                right: VertexId(2)
            }]
        );
        let tests = enumerate_tests_mm_star(&q(4));
        assert!(tests.windows(2).all(|w| w[0] < w[1]));
        assert!(tests.iter().all(|t| t.left < t.right));
        assert_eq!(test_count(&q(4), Model::MmStar), tests.len());
    }

    #[test]
    fn fault_free_syndrome_is_all_zero() {
        let g = q(3);
        for model in Model::ALL {
            let s = generate_syndrome(&g, &FaultScenario::default(), model, &AdversaryStrategy::AllOnes)
                .unwrap();
            assert_eq!(s.ones(), 0);
        }
    }

    #[test]
    fn pmc_forced_and_free_results() {
        let g = q(3);
        let sc = FaultScenario::new(set(&[0]), EdgeSet::new());
        let s = generate_syndrome(&g, &sc, Model::Pmc, &AdversaryStrategy::AllZeros).unwrap();
        let r = |a, b| {
            s.result_of(&g, &Test::Pmc(PmcTest {
                tester: VertexId(a),
                testee: VertexId(b),
            }))
            .unwrap()
        };
        assert!(r(0b001, 0b000));
        assert!(r(0b010, 0b000));
        assert!(!r(0b000, 0b001));
        let ones = generate_syndrome(&g, &sc, Model::Pmc, &AdversaryStrategy::AllOnes).unwrap();
        assert_eq!(ones.ones(), 6);
    }

    #[test]
    fn mm_star_reliable_comparator() {
        let g = q(3);
        let sc = FaultScenario::new(set(&[0]), EdgeSet::new());
        let s = generate_syndrome(&g, &sc, Model::MmStar, &AdversaryStrategy::AllZeros).unwrap();
        let t = Test::MmStar(MmTest {
            comparator: VertexId(0b010),
            left: VertexId(0b000),
            right: VertexId(0b110),
        });
        assert!(s.result_of(&g, &t).unwrap());
    }

    #[test]
    fn random_strategy_is_deterministic() {
        let g = q(4);
        let sc = FaultScenario::new(set(&[0, 5, 9]), EdgeSet::from_pairs(&[(0, 1)]).unwrap());
        let a = generate_syndrome(&g, &sc, Model::MmStar, &AdversaryStrategy::SeededRandom { seed: 7 })
            .unwrap();
        let b = generate_syndrome(&g, &sc, Model::MmStar, &AdversaryStrategy::SeededRandom { seed: 7 })
            .unwrap();
        let c = generate_syndrome(&g, &sc, Model::MmStar, &AdversaryStrategy::SeededRandom { seed: 8 })
            .unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn consistency_examples() {
        let g = q(3);
        let none = EdgeSet::new();
        let zeros = Syndrome::uniform(&g, &none, Model::Pmc, false).unwrap();
        assert!(consistent(&g, &none, &VertexSet::new(), &zeros).unwrap());

        let tests = zeros.domain(&g).unwrap();
        let i = tests
            .iter()
            .position(|t| *t == Test::Pmc(PmcTest { tester: VertexId(1), testee: VertexId(0) }))
            .unwrap();
        let one = zeros.with_bit(i, true);
        assert!(!consistent(&g, &none, &VertexSet::new(), &one).unwrap());

        let all: VertexSet = g.vertices().collect();
        for model in Model::ALL {
            let ones = Syndrome::uniform(&g, &none, model, true).unwrap();
            assert!(consistent(&g, &none, &all, &ones).unwrap());
        }
    }

    #[test]
    fn consistency_rejects_foreign_domain() {
        let g = q(3);
        let fe = EdgeSet::from_pairs(&[(0, 1)]).unwrap();
        let s = Syndrome::uniform(&g, &fe, Model::Pmc, false).unwrap();
        assert!(matches!(
            consistent(&g, &EdgeSet::new(), &VertexSet::new(), &s),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            consistent(&q(4), &fe, &VertexSet::new(), &s),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn syndrome_text_round_trip() {
        let g = q(3);
        let sc = FaultScenario::new(set(&[2, 4]), EdgeSet::from_pairs(&[(0, 1)]).unwrap());
        for model in Model::ALL {
            let s = generate_syndrome(&g, &sc, model, &AdversaryStrategy::SeededRandom { seed: 3 })
                .unwrap();
            let text = s.to_text(&g).unwrap();
            assert!(text.starts_with(&format!("model {model}\ngraph {}\nedges_removed 1\n0 1\n", g.fingerprint())));
            assert_eq!(Syndrome::from_text(&text, &g).unwrap(), s);
            let truncated: String = text.lines().take(6).map(|l| format!("{l}\n")).collect();
            assert!(Syndrome::from_text(&truncated, &g).is_err());
        }
    }

    #[test]
    fn scenario_text_round_trip() {
        let sc = FaultScenario::new(set(&[2, 4]), EdgeSet::from_pairs(&[(0, 1), (4, 6)]).unwrap());
        let text = sc.to_text();
        assert_eq!(text, "Fv: 2,4\nFe: 0-1,4-6\n");
        assert_eq!(FaultScenario::from_text(&text).unwrap(), sc);
        let empty = FaultScenario::from_text("Fv:\nFe:\n").unwrap();
        assert_eq!(empty, FaultScenario::default());
        assert!(FaultScenario::from_text("Fv: x\n").is_err());
    }

    #[test]
    fn invalid_scenario_is_rejected() {
        let g = q(3);
        let sc = FaultScenario::new(set(&[8]), EdgeSet::new());
        assert!(generate_syndrome(&g, &sc, Model::Pmc, &AdversaryStrategy::AllZeros).is_err());
        let sc = FaultScenario::new(set(&[1]), EdgeSet::from_pairs(&[(0, 3)]).unwrap());
        assert!(generate_syndrome(&g, &sc, Model::Pmc, &AdversaryStrategy::AllZeros).is_err());
    }
}
