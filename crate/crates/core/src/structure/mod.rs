//! Templates, attachment classes, colouring branches, cutset analysis and the
//! decomposition driver.
//!
//! Part indices are 0-based throughout: the first part of a template is part 0.

mod adjacency;
mod biclique;
mod bounds;
mod colouring;
mod cutset;
mod driver;
mod growth;
mod partition;
mod template;

use thiserror::Error;

pub use adjacency::{
    adjacency_type, check_adjacency_trichotomy, classify_trace, classify_vertex, AdjacencyType,
    TrichotomyVerdict, VertexClass,
};
pub use biclique::{extract_induced_biclique, find_kss, max_template, BicliqueOutcome};
pub use bounds::{compute_bounds, BoundSheet, BoundsConfig, BoundsError, DFunction, Rational};
pub use colouring::{degeneracy_colouring, dominating_colouring, DominatingColouring};
pub use cutset::{component_cutset_report, BoundCheck, CutsetReport, CutsetVerdict, Probe};
pub use driver::{decompose_driver, Branch, DecomposeReport, DriverConfig, DriverError, TauMode};
pub use growth::{grow_template, GrowthOutcome};
pub use partition::{partition_attachment, AttachmentPartition, MClass};
pub use template::{Template, TemplateError};

use crate::graph::GraphError;
use crate::limits::GuardExceeded;
use crate::subdivision::{SubdivisionError, SubdivisionWitness};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Guard(#[from] GuardExceeded),
    #[error(transparent)]
    Template(#[from] TemplateError),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("{name} is not an independent set")]
    NotIndependent { name: &'static str },
    #[error("{u} and {v} should be adjacent")]
    NotComplete { u: usize, v: usize },
    #[error("vertex {vertex} lies inside {name}")]
    VertexInside { vertex: usize, name: &'static str },
    #[error("part {part} has {size} vertices, at least {needed} required")]
    PartTooSmall {
        part: usize,
        size: usize,
        needed: usize,
    },
    #[error("part {part} has {size} vertices, exactly {expected} required")]
    PartSizeMismatch {
        part: usize,
        size: usize,
        expected: usize,
    },
    #[error("vertex {vertex} has more than {a} non-neighbours in part {part}")]
    NotNearlyComplete {
        vertex: usize,
        part: usize,
        a: usize,
    },
    #[error("vertex {vertex} contradicts the attachment rules for the class: {reason}")]
    NotInClass {
        vertex: usize,
        reason: String,
        witness: Option<Box<SubdivisionWitness>>,
    },
    #[error("no complete multipartite template with part size law f - a(r-2) for f={f}, a={a}")]
    NoTemplate { f: usize, a: usize },
    #[error("the set S does not dominate vertex {vertex}")]
    NotDominating { vertex: usize },
    #[error("the attachment partition has {count} free vertices; expected none")]
    FreeVerticesPresent { count: usize },
    #[error("graph is not {degeneracy}-degenerate: {} vertices have minimum degree at least {d}", .core.len(), degeneracy = .d - 1)]
    NotDegenerate { d: usize, core: Vec<usize> },
    #[error("invalid component: {0}")]
    InvalidComponent(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
}
