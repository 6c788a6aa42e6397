//! Induced subdivision detection and the membership test for the class of
//! graphs with no induced subdivision of `P(a,a)`.

mod search;
mod witness;

use thiserror::Error;

pub use witness::{validate_witness, PathImage, SubdivisionWitness, WitnessDefect};

use crate::generators::{GenError, PatternPab};
use crate::graph::Graph;
use crate::limits::{GuardExceeded, Limits};
use search::Engine;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SubdivisionError {
    #[error(transparent)]
    Guard(#[from] GuardExceeded),
    #[error(transparent)]
    Pattern(#[from] GenError),
}

/// Generic search: any pattern `h`, no symmetry reduction.
pub fn detect_induced_subdivision(
    h: &Graph,
    g: &Graph,
    limits: &Limits,
) -> Result<Option<SubdivisionWitness>, SubdivisionError> {
    Limits::check(
        "max_subdivision_pattern",
        limits.max_subdivision_pattern,
        h.n(),
    )?;
    Limits::check("max_subdivision_host", limits.max_subdivision_host, g.n())?;
    Ok(Engine::new(h, g, &[]).run())
}

/// `P(a,b)` search: images within the pair, the A-part and the B-part are
/// taken in increasing order, since each role class consists of twins.
pub fn detect_pattern(
    p: &PatternPab,
    g: &Graph,
    limits: &Limits,
) -> Result<Option<SubdivisionWitness>, SubdivisionError> {
    Limits::check(
        "max_subdivision_pattern",
        limits.max_subdivision_pattern,
        p.graph.n(),
    )?;
    Limits::check("max_pattern_host", limits.max_pattern_host, g.n())?;
    Ok(Engine::new(&p.graph, g, &p.twin_classes()).run())
}

/// True iff `g` has no induced subdivision of `P(a,a)`.
pub fn is_member(g: &Graph, a: usize, limits: &Limits) -> Result<bool, SubdivisionError> {
    Ok(membership_witness(g, a, limits)?.is_none())
}

/// The `P(a,a)` witness refuting membership, if any.
pub fn membership_witness(
    g: &Graph,
    a: usize,
    limits: &Limits,
) -> Result<Option<SubdivisionWitness>, SubdivisionError> {
    let p = PatternPab::new(a, a)?;
    detect_pattern(&p, g, limits)
}
