//! Continuous-time classical and quantum walks on small undirected graphs.
//!
//! A graph's Laplacian `L` is both the generator of the classical walk
//! (`P(t) = e^{-tL}`) and the Hamiltonian of the quantum walk
//! (`U(t) = e^{-iLt}`). Everything is computed from one dense
//! eigendecomposition of `L`:
//!
//! - [`graph`]: graph construction, edge-list I/O, the ten-node network family
//! - [`spectral`]: Jacobi eigensolver and eigenvalue degeneracy classes
//! - [`transport`]: transition probabilities, long-time averages, average
//!   return probabilities and their asymptotes
//! - [`analysis`]: decay-exponent fits and the efficiency report
//! - [`export`]: CSV/JSON writers
//!
//! ```
//! use netwalk::{gen_family, transport, Family, Spectrum, DEFAULT_DEG_TOL};
//!
//! let star = gen_family(Family::E).unwrap();
//! let s = Spectrum::of_graph(&star, DEFAULT_DEG_TOL).unwrap();
//! assert_eq!(s.symmetry_degree(), 8);
//! assert!((transport::chi_bar_lb(&s) - 0.66).abs() < 1e-12);
//! ```

pub mod analysis;
pub mod error;
pub mod export;
pub mod graph;
pub mod spectral;
pub mod transport;

pub use analysis::{efficiency_report, EfficiencyReport, ReportConfig, Verdict};
pub use error::{Error, Result};
pub use graph::{gen_broom, gen_cycle, gen_family, gen_path, gen_spider, gen_star, Family, Graph, LabeledMatrix};
pub use spectral::{eigendecompose, DegeneracyClass, Spectrum, DEFAULT_DEG_TOL};
pub use transport::{Kind, ProbabilityMatrix, Quantity, QuantityTag, TimeGrid, TransportSeries};
