//! Tools for checking Brouwer's bound `s_k(L(G)) <= m + C(k+1, 2)` on graphs:
//! exact graph6 I/O, Laplacian spectra, per-`k` excess profiles, sufficient
//! certificates that avoid eigensolving, corpus verification, and random
//! signed complete graphs.
//!
//! ```
//! use brouwer_core::{check_graph, Graph, Status, TolerancePolicy};
//!
//! let k4 = Graph::complete(4).unwrap();
//! let profile = check_graph(&k4, TolerancePolicy::default()).unwrap();
//! assert_eq!(profile.status_at(3), Status::Tight);
//! ```

pub mod brouwer;
pub mod certificates;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod signed;
pub mod spectral;

pub use brouwer::{
    check_graph, complement_identity_residual, complement_identity_residuals, excess_profile,
    join_identity_residual, join_identity_residuals, ExcessProfile, Status, TolerancePolicy,
    Verdict,
};
pub use certificates::{coverage_report, CertConfig, CertId, Certificate, CoverageReport};
pub use corpus::{verify_corpus, verify_corpus_reader, CorpusMode, CorpusOptions, CorpusReport};
pub use error::{Error, Result};
pub use graph::{parse_graph6, write_graph6, Graph};
pub use signed::SignedGraph;
pub use spectral::{laplacian_spectrum, Spectrum, SpectrumKind, SymMatrix};
