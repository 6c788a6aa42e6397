//! Graph algorithms for induced subdivisions of the pattern `P(a,b)`: detection
//! with checkable certificates, exact oracles, and the template, partition and
//! colouring machinery behind a chi-boundedness argument for the class of graphs
//! avoiding them.

pub mod campaign;
pub mod catalog;
pub mod formats;
pub mod generators;
pub mod graph;
pub mod limits;
pub mod oracles;
pub mod rng;
pub mod structure;
pub mod subdivision;

pub use graph::Graph;
pub use limits::Limits;
