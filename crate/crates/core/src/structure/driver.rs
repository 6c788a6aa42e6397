//! End-to-end decomposition of a member of the class.
//!
//! Stages: membership, exact `ω` and `χ`, `τ`, a highly connected subgraph of
//! large chromatic number, `K(s,s)` or the degeneracy branch, an induced
//! `K(f,f)`, a maximal template, the attachment partition, and finally either
//! the dominating-set colouring (no free vertices) or one cutset report per
//! free component. Thresholds run in oracle mode; the formula values are
//! reported alongside.

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::limits::Limits;
use crate::oracles::{
    chromatic_number, clique_number, find_k_connected_chromatic, ColouringCertificate,
    KConnectedOutcome,
};
use crate::structure::biclique::{
    extract_induced_biclique, find_kss, max_template, BicliqueOutcome,
};
use crate::structure::bounds::{compute_bounds, ramsey_formula, BoundSheet, BoundsConfig};
use crate::structure::colouring::{
    degeneracy, degeneracy_colouring, dominating_colouring, DominatingColouring,
};
use crate::structure::cutset::{component_cutset_report, CutsetReport};
use crate::structure::growth::{grow_template, GrowthOutcome};
use crate::structure::partition::{partition_attachment, AttachmentPartition};
use crate::structure::{StructureError, Template};
use crate::subdivision::{membership_witness, SubdivisionError, SubdivisionWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(tag = "mode", content = "value", rename_all = "snake_case")]
pub enum TauMode {
    /// Largest chromatic number of a vertex neighbourhood, computed exactly.
    #[default]
    Oracle,
    Fixed(usize),
}

impl std::str::FromStr for TauMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(TauMode::Oracle),
            _ => s
                .strip_prefix("fixed:")
                .and_then(|n| n.parse().ok())
                .map(TauMode::Fixed)
                .ok_or_else(|| format!("expected `oracle` or `fixed:N`, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct DriverConfig {
    pub tau_mode: TauMode,
    pub bounds: BoundsConfig,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DriverError {
    #[error("input contains an induced subdivision of P(a,a)")]
    NotMember { witness: Box<SubdivisionWitness> },
    #[error("input graph is empty")]
    Empty,
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: StructureError,
    },
    #[error("{stage}: {detail}")]
    Inconsistent { stage: &'static str, detail: String },
}

fn at<T, E: Into<StructureError>>(stage: &'static str, r: Result<T, E>) -> Result<T, DriverError> {
    r.map_err(|e| DriverError::Stage {
        stage,
        source: e.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundSummary {
    pub omega: usize,
    pub tau: usize,
    pub f: usize,
    pub s: String,
    pub b_digits: usize,
    pub chi_bound_digits: usize,
    pub final_bound_digits: usize,
}

impl BoundSummary {
    fn of(sheet: &BoundSheet) -> Self {
        let digits = |v: &num_bigint::BigUint| v.to_str_radix(10).len();
        BoundSummary {
            omega: sheet.omega,
            tau: sheet.tau,
            f: sheet.f,
            s: sheet.s.to_str_radix(10),
            b_digits: digits(&sheet.b),
            chi_bound_digits: digits(&sheet.chi_bound),
            final_bound_digits: digits(&sheet.final_bound),
        }
    }
}

/// The highly connected stage. `vertices[local] = input id`; every vertex id
/// in the branch is local to this subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectedStage {
    pub k: usize,
    pub vertices: Vec<usize>,
    pub connectivity: usize,
    pub chromatic: usize,
    pub omega: usize,
    /// `(k, reason)` for each larger `k` that was tried and exhausted.
    pub exhausted: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TemplateStage {
    pub kss: (Vec<usize>, Vec<usize>),
    pub biclique: (Vec<usize>, Vec<usize>),
    pub template: Template,
    pub partition: AttachmentPartition,
    /// Attempt to grow the template by one part from `Z`; must be insufficient.
    pub growth: Option<GrowthOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum Branch {
    /// No `K(s,s)`: colour along a degeneracy order.
    Degeneracy {
        s: String,
        d_oracle: usize,
        d_formula_digits: usize,
        certificate: ColouringCertificate,
    },
    /// `K(s,s)` found but its sides lack independent `f`-sets at this scale.
    NoInducedBiclique {
        kss: (Vec<usize>, Vec<usize>),
        outcome: BicliqueOutcome,
    },
    /// No free vertices: dominating-set colouring.
    Dominating {
        stage: TemplateStage,
        colouring: DominatingColouring,
        budget: usize,
        within_budget: bool,
    },
    /// Free vertices present: one cutset report per component.
    Cutsets {
        stage: TemplateStage,
        reports: Vec<CutsetReport>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub chi: usize,
    /// The branch's colouring (when it has one) is proper on the subgraph.
    pub colouring_proper: Option<bool>,
    /// ... and uses at least `χ` of the subgraph colours.
    pub colouring_at_least_chi: Option<bool>,
    pub chi_within_chi_bound: bool,
    pub chi_within_final_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecomposeReport {
    pub a: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub omega: usize,
    pub chi: usize,
    pub chi_certificate: ColouringCertificate,
    pub tau: usize,
    pub tau_mode: TauMode,
    pub bounds: BoundSummary,
    pub connected: ConnectedStage,
    pub stage_bounds: BoundSummary,
    pub branch: Branch,
    pub cross_check: CrossCheck,
}

fn tau_of(g: &Graph, mode: TauMode, limits: &Limits) -> Result<usize, DriverError> {
    match mode {
        TauMode::Fixed(t) => Ok(t),
        TauMode::Oracle => {
            let mut best = 0;
            for v in g.vertices() {
                let sub = at("tau", g.induced(g.neighbours(v)))?;
                best = best.max(at("tau", chromatic_number(&sub.graph, limits))?.colours_used);
            }
            Ok(best)
        }
    }
}

pub fn decompose_driver(
    g_prime: &Graph,
    a: usize,
    config: DriverConfig,
    limits: &Limits,
) -> Result<DecomposeReport, DriverError> {
    if g_prime.n() == 0 {
        return Err(DriverError::Empty);
    }
    if let Some(w) = membership_witness(g_prime, a, limits)? {
        return Err(DriverError::NotMember {
            witness: Box::new(w),
        });
    }
    let omega = at("clique number", clique_number(g_prime, limits))?.size;
    let chi_certificate = at("chromatic number", chromatic_number(g_prime, limits))?;
    let chi = chi_certificate.colours_used;
    let tau = tau_of(g_prime, config.tau_mode, limits)?;
    let sheet = at("bounds", compute_bounds(a, omega, tau, config.bounds))?;

    let mut exhausted = Vec::new();
    let mut connected = None;
    for k in (1..=chi).rev() {
        match at(
            "connectivity",
            find_k_connected_chromatic(g_prime, k, limits),
        )? {
            KConnectedOutcome::Found {
                vertices,
                connectivity,
                chromatic,
                ..
            } => {
                connected = Some((k, vertices, connectivity, chromatic));
                break;
            }
            KConnectedOutcome::Exhausted { reason, .. } => exhausted.push((k, reason)),
        }
    }
    let (k, vertices, connectivity, chromatic) = connected.ok_or(DriverError::Inconsistent {
        stage: "connectivity",
        detail: "no connected subgraph found for k = 1".into(),
    })?;
    let g = at("connectivity", g_prime.induced(&vertices))?.graph;
    let stage_omega = at("clique number", clique_number(&g, limits))?.size;
    let stage_sheet = at("bounds", compute_bounds(a, stage_omega, tau, config.bounds))?;
    let connected = ConnectedStage {
        k,
        vertices,
        connectivity,
        chromatic,
        omega: stage_omega,
        exhausted,
    };

    let f = stage_sheet.f;
    let s_big = ramsey_formula(stage_omega, f, config.bounds.c_const);
    let kss = match s_big.to_usize() {
        Some(s) if 2 * s <= g.n() => at("K(s,s) search", find_kss(&g, s, limits))?,
        _ => None,
    };

    let branch = match kss {
        None => {
            let d_oracle = degeneracy(&g) + 1;
            let certificate = at("degeneracy colouring", degeneracy_colouring(&g, d_oracle))?;
            Branch::Degeneracy {
                s: s_big.to_str_radix(10),
                d_oracle,
                d_formula_digits: stage_sheet.d.to_str_radix(10).len(),
                certificate,
            }
        }
        Some((u, w)) => match at(
            "induced biclique",
            extract_induced_biclique(&g, &u, &w, f, limits),
        )? {
            missing @ BicliqueOutcome::Missing { .. } => Branch::NoInducedBiclique {
                kss: (u, w),
                outcome: missing,
            },
            BicliqueOutcome::Found { left, right } => {
                template_branch(&g, a, f, (u, w), (left, right), &stage_sheet, tau, limits)?
            }
        },
    };

    let (colouring_proper, colouring_at_least_chi) = match &branch {
        Branch::Degeneracy { certificate, .. } => check_colouring(&g, certificate, chromatic),
        Branch::Dominating { colouring, .. } => {
            check_colouring(&g, &colouring.certificate, chromatic)
        }
        _ => (None, None),
    };
    let cross_check = CrossCheck {
        chi,
        colouring_proper,
        colouring_at_least_chi,
        chi_within_chi_bound: num_bigint::BigUint::from(chi) <= sheet.chi_bound,
        chi_within_final_bound: num_bigint::BigUint::from(chi) <= sheet.final_bound,
    };
    Ok(DecomposeReport {
        a,
        vertex_count: g_prime.n(),
        edge_count: g_prime.edge_count(),
        omega,
        chi,
        chi_certificate,
        tau,
        tau_mode: config.tau_mode,
        bounds: BoundSummary::of(&sheet),
        connected,
        stage_bounds: BoundSummary::of(&stage_sheet),
        branch,
        cross_check,
    })
}

fn check_colouring(
    g: &Graph,
    c: &ColouringCertificate,
    chi: usize,
) -> (Option<bool>, Option<bool>) {
    (Some(c.verify(g).is_ok()), Some(c.colours_used >= chi))
}

#[allow(clippy::too_many_arguments)]
fn template_branch(
    g: &Graph,
    a: usize,
    f: usize,
    kss: (Vec<usize>, Vec<usize>),
    biclique: (Vec<usize>, Vec<usize>),
    sheet: &BoundSheet,
    tau: usize,
    limits: &Limits,
) -> Result<Branch, DriverError> {
    let template = at("template", max_template(g, f, a, limits))?;
    let r = template.r();
    if r > sheet.omega {
        return Err(DriverError::Inconsistent {
            stage: "template",
            detail: format!(
                "template has {r} parts but the clique number is {}",
                sheet.omega
            ),
        });
    }
    let partition = at(
        "attachment partition",
        partition_attachment(g, &template, a),
    )?;

    let growth = match f.checked_sub(a * (r - 1)) {
        Some(s_next) if s_next >= 1 => {
            let out = at(
                "growth check",
                grow_template(g, &template, &partition.z, s_next, a, limits),
            )?;
            if matches!(out, GrowthOutcome::Grown { .. }) {
                return Err(DriverError::Inconsistent {
                    stage: "growth check",
                    detail: format!("template with {r} parts extends, so it was not maximal"),
                });
            }
            Some(out)
        }
        _ => None,
    };
    let stage = TemplateStage {
        kss,
        biclique,
        template,
        partition,
        growth,
    };

    if stage.partition.a_free.is_empty() {
        let colouring = at(
            "dominating colouring",
            dominating_colouring(g, &stage.template, a, |h| Ok(chromatic_number(h, limits)?)),
        )?;
        let budget = (1 + tau) * (a + 1) * sheet.omega;
        let within_budget = colouring.certificate.colours_used <= budget;
        return Ok(Branch::Dominating {
            stage,
            colouring,
            budget,
            within_budget,
        });
    }

    let free = crate::graph::bitset(g.n(), &stage.partition.a_free);
    let mut reports = Vec::new();
    for q in g.components_within(&free) {
        reports.push(at(
            "cutset report",
            component_cutset_report(g, &stage.template, &stage.partition, &q, a, sheet),
        )?);
    }
    Ok(Branch::Cutsets { stage, reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn run(g: &Graph) -> DecomposeReport {
        decompose_driver(g, 2, DriverConfig::default(), &Limits::default()).unwrap()
    }

    #[test]
    fn clique_takes_degeneracy_branch() {
        let r = run(&generators::complete(5));
        assert_eq!(r.chi, 5);
        let Branch::Degeneracy {
            d_oracle,
            certificate,
            ..
        } = &r.branch
        else {
            panic!("{:?}", r.branch)
        };
        assert_eq!(*d_oracle, 5);
        assert_eq!(certificate.colours_used, 5);
        assert_eq!(r.cross_check.colouring_proper, Some(true));
    }

    #[test]
    fn complete_bipartite_takes_dominating_branch() {
        let g = generators::complete_multipartite(&[10, 10]).unwrap();
        let r = run(&g);
        assert_eq!((r.omega, r.bounds.f, r.bounds.s.as_str()), (2, 8, "10"));
        let Branch::Dominating {
            stage,
            colouring,
            within_budget,
            ..
        } = &r.branch
        else {
            panic!("{:?}", r.branch)
        };
        assert_eq!(stage.template.r(), 2);
        assert!(stage.template.parts().iter().all(|p| p.len() == 8));
        assert!(matches!(
            stage.growth,
            Some(GrowthOutcome::Insufficient { .. })
        ));
        colouring.certificate.verify(&g).unwrap();
        assert!(*within_budget);
    }

    #[test]
    fn free_component_gets_cutset_report() {
        // q1 = 20 adjacent to 0, q2 = 21 adjacent to 10, and q1 q2 adjacent
        let base = generators::complete_multipartite(&[10, 10]).unwrap();
        let mut edges: Vec<_> = base.edges().collect();
        edges.extend([(0, 20), (10, 21), (20, 21)]);
        let g = Graph::new(22, edges).unwrap();
        let r = run(&g);
        let Branch::Cutsets { stage, reports } = &r.branch else {
            panic!("{:?}", r.branch)
        };
        assert_eq!(stage.partition.a_free, vec![20, 21]);
        assert_eq!(reports.len(), 1);
        assert!(reports[0].cutset.is_cutset);
        assert!(reports[0].bound_checks.iter().all(|c| c.holds));
    }

    #[test]
    fn non_member_is_rejected() {
        let p = crate::generators::PatternPab::new(2, 2).unwrap();
        assert!(matches!(
            decompose_driver(&p.graph, 2, DriverConfig::default(), &Limits::default()),
            Err(DriverError::NotMember { .. })
        ));
    }

    #[test]
    fn tau_mode_parsing() {
        assert_eq!("oracle".parse::<TauMode>(), Ok(TauMode::Oracle));
        assert_eq!("fixed:3".parse::<TauMode>(), Ok(TauMode::Fixed(3)));
        assert!("fixed:x".parse::<TauMode>().is_err());
    }
}
