//! Hybrid node/link fault diagnosis for hypercube interconnection networks.
//!
//! The crate covers the PMC (tester/testee) and MM* (comparison) diagnosis
//! models on arbitrary simple graphs, with special support for the
//! n-dimensional hypercube `Q_n`:
//!
//! * [`topology`]: graph construction, neighborhoods and vertex boundaries.
//! * [`models`]: test enumeration, syndrome generation and consistency.
//! * [`distinguishability`]: structural pair deciders with certificates,
//!   the forced-test oracle and the exhaustive t-diagnosability check.
//! * [`diagnosability`]: h-edge tolerable diagnosability, the upper-bound
//!   witness for `Q_n` and the desk-scale theorem verifier.
//! * [`diagnoser`]: one-step syndrome decoding.
//!
//! Vertices of `Q_n` are integers in `0..2^n`; label position `i` (1-based)
//! is integer bit `i - 1`, so the `i`-th neighbor of `u` is `u ^ (1 << (i - 1))`.

pub mod diagnosability;
pub mod diagnoser;
pub mod distinguishability;
mod error;
pub mod models;
pub mod orbits;
mod search;
pub mod topology;

pub use diagnosability::{
    h_edge_tolerable_diagnosability, theorem_witness, verify_theorem, DiagnosabilityReport,
    SearchMode, TheoremOutcome, TheoremReport, TheoremWitness,
};
pub use diagnoser::{diagnose, DiagnosisOutcome, DiagnosisResult};
pub use distinguishability::{
    distinguishable, distinguishable_mm_star, distinguishable_pmc, oracle_distinguishable,
    t_diagnosable_check, t_diagnosable_raw, Certificate, SearchOptions, TDiagOutcome, Verdict,
};
pub use error::{Error, Result};
pub use models::{
    consistent, enumerate_tests, enumerate_tests_mm_star, enumerate_tests_pmc, generate_syndrome,
    AdversaryStrategy, FaultScenario, MmTest, Model, PmcTest, Syndrome, Test,
};
pub use orbits::{edge_orbit_catalog, EdgeOrbitCatalog, OrbitClass};
pub use topology::{Edge, EdgeSet, Graph, VertexId, VertexSet};
