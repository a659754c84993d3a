//! Continuous-time quantum-walk spatial search for general marked states.
//!
//! The search Hamiltonian is `H = γQ - |w⟩⟨w|` with `Q = D - A` the graph
//! Laplacian and `|w⟩` a unit-norm marked state; the walk starts in the
//! uniform state `|s⟩`. The crate provides
//!
//! - [`graphs`]: graph families and their Laplacians,
//! - [`linalg`]: a Jacobi eigensolver, Walsh–Hadamard transform and exact
//!   spectral evolution,
//! - [`search`]: overlaps, the critical jump rate `γ_c`, `β`, the envelope
//!   `γ_c/β`, the secular function and its roots,
//! - [`hypercube`]: closed forms for two-vertex and multi-vertex states on
//!   the hypercube and their exact Walsh–Hadamard oracle,
//! - [`optimality`]: the spectral-ratio certificate for optimal search,
//! - [`simulator`]: exact dynamics and comparison with the sinusoidal
//!   approximation.

mod compensated;
pub mod error;
pub mod graphs;
pub mod hypercube;
pub mod linalg;
pub mod numfmt;
pub mod optimality;
pub mod search;
pub mod simulator;

pub use error::{Error, Result};
pub use graphs::{Family, Graph, SrgParams};
pub use linalg::{Eigenbasis, HypercubeBasis, Matrix, SpectralDecomposition};
pub use optimality::{OptimalityReport, Verdict};
pub use search::{MarkedState, Overlaps, SearchParameters};
pub use simulator::{EvolutionTrace, JumpRate};
