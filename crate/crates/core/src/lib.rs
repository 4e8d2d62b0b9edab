//! Non-backtracking spectral quantities of graphs and site-percolation
//! experiments that check the connectivity and threshold bounds derived from
//! them.
//!
//! - [`graph`]: simple graphs, generators, BFS balls of locally finite graphs.
//! - [`nonbacktracking`]: arcs, the Hashimoto matrix, its spectral radius and
//!   walk growth rates, strong ℓ-connectivity of the oriented line graph.
//! - [`percolation`]: reproducible site-percolation sampling, Monte Carlo
//!   estimators and an exact enumeration oracle.
//! - [`bounds`]: threshold bounds, the explicit connectivity envelope, spectral
//!   radii along subgraph sequences and decay fits.

pub mod bounds;
pub mod ext;
pub mod graph;
pub mod nonbacktracking;
pub mod percolation;

pub use ext::ExtendedReal;
