//! Distance Pareto (complementarity) spectra of connected graphs.
//!
//! The Pareto spectrum of a connected graph is the set of Perron roots of all
//! principal submatrices of its distance matrix. This crate enumerates it
//! exactly for small graphs, evaluates closed forms and bounds for the
//! second largest Pareto eigenvalue, and checks the structural properties of
//! Pareto eigenvectors on trees by exhaustive search.
//!
//! ```
//! use distpareto::{graph::make_family, pareto::pareto_spectrum};
//!
//! let p3 = make_family("path", &[3]).unwrap();
//! let spec = pareto_spectrum(&p3).unwrap();
//! assert_eq!(spec.len(), 4);
//! assert!((spec.values[3] - (1.0 + 3f64.sqrt())).abs() < 1e-12);
//! ```

pub mod cli;
pub mod error;
pub mod graph;
pub mod laws;
pub mod pareto;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{DistanceMatrix, Graph};
pub use pareto::{ParetoEigenpair, ParetoSpectrum};
pub use spectral::{EigenResult, SymMatrix};
