//! Exact two-terminal reliability of binary-state networks whose undirected
//! arcs are heterogeneous: each traversal direction fails independently with
//! its own probability.
//!
//! The main engine, [`engines::rie`], runs inclusion-exclusion over directed
//! minimal paths recursively, with one four-state coordinate per undirected
//! arc and elimination of complete terms. Three reference engines check it:
//! non-recursive BAT-ordered inclusion-exclusion, textbook inclusion-exclusion
//! over explicit directed-arc sets, and an exhaustive state-enumeration
//! oracle.
//!
//! ```
//! use netrel::{engines, paths, Network};
//!
//! let net = Network::parse(include_str!("../data/fig1.net")).unwrap();
//! let mps = paths::directed_mps(&net).unwrap();
//! let report = engines::rie_reliability(&net, &mps).unwrap();
//! assert!((report.reliability - 0.97767).abs() < 1e-9);
//! assert_eq!(report.num_terms, 11);
//! ```

pub mod augmented;
pub mod bat;
pub mod engines;
pub mod error;
pub mod exec;
pub mod generator;
pub mod network;
pub mod paths;

pub use augmented::AugmentedVector;
pub use engines::{Method, ReliabilityReport};
pub use error::{Error, Result};
pub use exec::Execution;
pub use network::{Direction, Network, ReducedNetwork, UndirectedArc};
pub use paths::{DirectedArc, DirectedMp, UndirectedMp};

/// The bridge network used throughout the tests and docs.
pub const FIG1_NET: &str = include_str!("../data/fig1.net");
/// Its minimal paths in the order of the published worked example.
pub const FIG1_MPS: &str = include_str!("../data/fig1.mps");
