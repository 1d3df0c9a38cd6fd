use proptest::prelude::*;

use hyperdiag::*;

fn q(n: u32) -> Graph {
    Graph::hypercube(n).unwrap()
}

/// Every vertex set of size at most `t` consistent with `sigma`, by plain
/// enumeration of masks.
fn consistent_sets(g: &Graph, fe: &EdgeSet, sigma: &Syndrome, t: usize) -> Vec<VertexSet> {
    let n = g.vertex_count() as u32;
    let mut out: Vec<VertexSet> = (0u64..1 << n)
        .filter(|m| m.count_ones() as usize <= t)
        .map(|m| (0..n).filter(|v| m >> v & 1 == 1).map(VertexId).collect::<VertexSet>())
        .filter(|f| consistent(g, fe, f, sigma).unwrap())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.ids().cmp(&b.ids())));
    out
}

fn strategy() -> impl Strategy<Value = AdversaryStrategy> {
    prop_oneof![
        Just(AdversaryStrategy::AllZeros),
        Just(AdversaryStrategy::AllOnes),
        any::<u64>().prop_map(|seed| AdversaryStrategy::SeededRandom { seed }),
        any::<u8>().prop_map(|m| AdversaryStrategy::Mimic {
            target: (0..8u32).filter(|v| m >> v & 1 == 1).map(VertexId).collect()
        }),
    ]
}

#[test]
fn all_zero_syndrome() {
    let g = q(3);
    for model in Model::ALL {
        let sigma = Syndrome::uniform(&g, &EdgeSet::new(), model, false).unwrap();
        let r = diagnose(&g, &EdgeSet::new(), &sigma, 3, model, 1 << 20).unwrap();
        assert_eq!(r.unique(), Some(&VertexSet::new()));
    }
}

#[test]
fn cut_edge_decodes_exactly() {
    let g = q(4);
    let fe = EdgeSet::from_pairs(&[(0b0000, 0b0001)]).unwrap();
    let truth = VertexSet::from([0b0010]);
    for model in Model::ALL {
        let strategy = AdversaryStrategy::Mimic { target: VertexSet::from([0b0000, 0b0011]) };
        let sigma = generate_syndrome(&g, &FaultScenario::new(truth.clone(), fe.clone()), model, &strategy).unwrap();
        let r = diagnose(&g, &fe, &sigma, 3, model, 1 << 20).unwrap();
        assert_eq!(r.unique(), Some(&truth));
    }
}

#[test]
fn result_record() {
    let g = q(3);
    let sigma = Syndrome::uniform(&g, &EdgeSet::new(), Model::Pmc, false).unwrap();
    let r = diagnose(&g, &EdgeSet::new(), &sigma, 1, Model::Pmc, 1 << 10).unwrap();
    let text = serde_json::to_string(&r.record()).unwrap();
    assert_eq!(text, format!(r#"{{"candidates":[[]],"examined":{},"outcome":"unique"}}"#, r.examined));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn candidates_match_enumeration(
        fv in proptest::collection::btree_set(0u32..8, 0..4),
        cut in proptest::collection::btree_set(0usize..12, 0..3),
        strat in strategy(),
        t in 0usize..4,
        mm in any::<bool>(),
    ) {
        let model = if mm { Model::MmStar } else { Model::Pmc };
        let g = q(3);
        let edges: Vec<Edge> = g.edges().collect();
        let fe: EdgeSet = cut.into_iter().map(|i| edges[i]).collect();
        let fv: VertexSet = fv.into_iter().map(VertexId).collect();
        let sigma = generate_syndrome(&g, &FaultScenario::new(fv, fe.clone()), model, &strat).unwrap();
        let expected = consistent_sets(&g, &fe, &sigma, t);
        let r = diagnose(&g, &fe, &sigma, t, model, 1 << 24).unwrap();
        let got = match r.outcome {
            DiagnosisOutcome::Unique(f) => vec![f],
            DiagnosisOutcome::Ambiguous { candidates, certificates } => {
                prop_assert_eq!(certificates.len(), candidates.len() - 1);
                candidates
            }
            DiagnosisOutcome::Infeasible => vec![],
        };
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn decoding_is_exact_within_diagnosability(
        fv in proptest::collection::btree_set(0u32..16, 0..4),
        e in 0usize..32,
        strat in strategy(),
        mm in any::<bool>(),
    ) {
        // Q_4 minus one edge is 3-diagnosable under both models.
        let model = if mm { Model::MmStar } else { Model::Pmc };
        let g = q(4);
        let fe: EdgeSet = [g.edges().nth(e).unwrap()].into_iter().collect();
        prop_assert!(t_diagnosable_check(&g, &fe, 3, model, &SearchOptions::default()).unwrap().diagnosable);
        let fv: VertexSet = fv.into_iter().map(VertexId).collect();
        let sigma = generate_syndrome(&g, &FaultScenario::new(fv.clone(), fe.clone()), model, &strat).unwrap();
        let r = diagnose(&g, &fe, &sigma, 3, model, 1 << 24).unwrap();
        prop_assert_eq!(r.unique(), Some(&fv));
        let again = diagnose(&g, &fe, &sigma, 3, model, 1 << 24).unwrap();
        prop_assert_eq!(r, again);
    }
}
