//! Seeded, replayable verification campaigns.
//!
//! Instance `i` of a campaign draws all of its randomness from
//! [`rng::instance_rng`]`(seed, i)`, so any instance can be rebuilt from the
//! pair `(seed, i)` alone. Instances run in parallel and the summary lists
//! them by index, so scheduling never shows up in the output.
//!
//! Constructed hosts are relabelled by a random permutation before they are
//! checked, which keeps the searches from leaning on a convenient id order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formats::emit_graph6;
use crate::generators::{self, PatternPab};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::oracles::{chromatic_number, clique_number};
use crate::rng::{self, Rng};
use crate::structure::{
    check_adjacency_trichotomy, classify_vertex, component_cutset_report, compute_bounds,
    dominating_colouring, grow_template, partition_attachment, BoundsConfig, GrowthOutcome,
    StructureError, Template, TrichotomyVerdict,
};
use crate::subdivision::{membership_witness, validate_witness, SubdivisionWitness};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CampaignError {
    #[error("instance count must be positive")]
    NoInstances,
    #[error("vertex range {min}..={max} is empty or starts at zero")]
    VertexRange { min: usize, max: usize },
    #[error("edge probability range [{min}, {max}] is not a subrange of [0, 1]")]
    ProbabilityRange { min: f64, max: f64 },
    #[error("a must be at least 2, got {0}")]
    A(usize),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("index {index} is outside 0..{instances}")]
    Index { index: u64, instances: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Random hosts; every pattern copy the detector reports must validate.
    Detector,
    /// Class members; no adjacency configuration may violate the trichotomy.
    Trichotomy,
    /// Hosts built around a known copy; the copy must be found and validate.
    Violations,
    /// Templates with a planted nearly complete independent set; growth must succeed.
    Growth,
    /// Hosts with no free vertices; the dominating colouring must stay in budget.
    Dominating,
    /// Hosts with free components; each neighbourhood must separate.
    Cutset,
    /// Free components touching one part twice, or two vertices of one class.
    Probes,
    /// Random class members; exact χ against the closing bound.
    Chi,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Detector,
        Suite::Trichotomy,
        Suite::Violations,
        Suite::Growth,
        Suite::Dominating,
        Suite::Cutset,
        Suite::Probes,
        Suite::Chi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Detector => "detector",
            Suite::Trichotomy => "trichotomy",
            Suite::Violations => "violations",
            Suite::Growth => "growth",
            Suite::Dominating => "dominating",
            Suite::Cutset => "cutset",
            Suite::Probes => "probes",
            Suite::Chi => "chi",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CampaignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| CampaignError::UnknownSuite(s.to_string()))
    }
}

/// Vertex and probability ranges apply to the suites that sample random
/// hosts (`detector`, `trichotomy`, `chi`); the constructed suites size their
/// hosts from `a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CampaignConfig {
    pub suite: Suite,
    pub seed: u64,
    pub instances: u64,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub min_probability: f64,
    pub max_probability: f64,
    pub a: usize,
    pub limits: Limits,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig::for_suite(Suite::Trichotomy)
    }
}

impl CampaignConfig {
    /// Defaults sized for a quick run of `suite`.
    pub fn for_suite(suite: Suite) -> Self {
        let (min_vertices, max_vertices) = match suite {
            Suite::Detector => (4, 9),
            Suite::Trichotomy => (8, 16),
            Suite::Chi => (4, 10),
            _ => (1, 64),
        };
        CampaignConfig {
            suite,
            seed: 0,
            instances: 100,
            min_vertices,
            max_vertices,
            min_probability: 0.2,
            max_probability: 0.6,
            a: 2,
            limits: Limits::default(),
        }
    }

    pub fn validate(&self) -> Result<(), CampaignError> {
        if self.instances == 0 {
            return Err(CampaignError::NoInstances);
        }
        if self.min_vertices == 0 || self.min_vertices > self.max_vertices {
            return Err(CampaignError::VertexRange {
                min: self.min_vertices,
                max: self.max_vertices,
            });
        }
        let (lo, hi) = (self.min_probability, self.max_probability);
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
            return Err(CampaignError::ProbabilityRange { min: lo, max: hi });
        }
        if self.a < 2 {
            return Err(CampaignError::A(self.a));
        }
        Ok(())
    }

    fn random_host(&self, rng: &mut Rng) -> Graph {
        let n = rng::between(rng, self.min_vertices, self.max_vertices);
        let p = self.min_probability
            + (self.max_probability - self.min_probability) * rng::unit_f64(rng);
        generators::random_with(n, p, rng).expect("probability validated")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// No checkable host was produced (e.g. every sampled host left the class).
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub index: u64,
    pub status: Status,
    /// The checked host; empty when none was produced.
    pub graph6: String,
    /// Individual checks performed (configurations, components, colourings).
    pub checks: u64,
    /// Every witness this instance produced; all have been validated.
    pub witnesses: Vec<SubdivisionWitness>,
    pub metrics: BTreeMap<&'static str, usize>,
    pub diagnostic: Option<String>,
}

impl InstanceReport {
    fn new(index: u64) -> Self {
        InstanceReport {
            index,
            status: Status::Pass,
            graph6: String::new(),
            checks: 0,
            witnesses: Vec::new(),
            metrics: BTreeMap::new(),
            diagnostic: None,
        }
    }

    fn host(&mut self, g: &Graph) {
        self.graph6 = emit_graph6(g);
    }

    fn fail(&mut self, why: impl Into<String>) {
        self.status = Status::Fail;
        self.diagnostic.get_or_insert_with(|| why.into());
    }

    fn skip(&mut self, why: impl Into<String>) {
        if self.status == Status::Fail {
            return;
        }
        self.status = Status::Skip;
        self.diagnostic = Some(why.into());
    }

    /// Validates `w` against `P(a,a)` in `g`; a defect fails the instance.
    fn witness(&mut self, g: &Graph, a: usize, w: SubdivisionWitness) {
        let p = PatternPab::new(a, a).expect("a >= 1");
        match validate_witness(&p.graph, g, &w) {
            Ok(()) => self.witnesses.push(w),
            Err(defect) => self.fail(format!("witness failed validation: {defect}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub config: CampaignConfig,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub checks: u64,
    pub witnesses_validated: u64,
    /// `chi` suite only: the largest χ seen among members of each clique number.
    pub max_chi_by_omega: BTreeMap<usize, usize>,
    /// Full reports of failing instances, by index. Replay with the config's seed.
    pub failures: Vec<InstanceReport>,
}

pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignSummary, CampaignError> {
    config.validate()?;
    let reports: Vec<InstanceReport> = (0..config.instances)
        .into_par_iter()
        .map(|i| run_instance_unchecked(config, i))
        .collect();
    let mut summary = CampaignSummary {
        config: config.clone(),
        passed: 0,
        failed: 0,
        skipped: 0,
        checks: 0,
        witnesses_validated: 0,
        max_chi_by_omega: BTreeMap::new(),
        failures: Vec::new(),
    };
    for r in reports {
        summary.checks += r.checks;
        summary.witnesses_validated += r.witnesses.len() as u64;
        match r.status {
            Status::Pass => summary.passed += 1,
            Status::Skip => summary.skipped += 1,
            Status::Fail => summary.failed += 1,
        }
        if config.suite == Suite::Chi && r.status == Status::Pass {
            let (omega, chi) = (r.metrics["omega"], r.metrics["chi"]);
            let best = summary.max_chi_by_omega.entry(omega).or_insert(0);
            *best = (*best).max(chi);
        }
        if r.status == Status::Fail {
            summary.failures.push(r);
        }
    }
    Ok(summary)
}

/// Rebuilds and rechecks one instance.
pub fn run_instance(config: &CampaignConfig, index: u64) -> Result<InstanceReport, CampaignError> {
    config.validate()?;
    if index >= config.instances {
        return Err(CampaignError::Index {
            index,
            instances: config.instances,
        });
    }
    Ok(run_instance_unchecked(config, index))
}

fn run_instance_unchecked(config: &CampaignConfig, index: u64) -> InstanceReport {
    let mut rng = rng::instance_rng(config.seed, index);
    let mut report = InstanceReport::new(index);
    let outcome = match config.suite {
        Suite::Detector => detector(config, &mut rng, &mut report),
        Suite::Trichotomy => trichotomy(config, &mut rng, &mut report),
        Suite::Violations => violations(config, &mut rng, &mut report),
        Suite::Growth => growth(config, &mut rng, &mut report),
        Suite::Dominating => dominating(config, &mut rng, &mut report),
        Suite::Cutset => cutset(config, &mut rng, &mut report),
        Suite::Probes => probes(config, &mut rng, &mut report),
        Suite::Chi => chi(config, &mut rng, &mut report),
    };
    if let Err(e) = outcome {
        report.fail(e.to_string());
    }
    report
}

fn detector(
    config: &CampaignConfig,
    rng: &mut Rng,
    report: &mut InstanceReport,
) -> Result<(), StructureError> {
    let g = config.random_host(rng);
    report.host(&g);
    for b in [1, config.a] {
        let p = PatternPab::new(config.a, b).expect("a >= 2");
        let found = crate::subdivision::detect_pattern(&p, &g, &config.limits)?;
        report.checks += 1;
        report.metrics.insert(
            if b == 1 { "found_b1" } else { "found_ba" },
            usize::from(found.is_some()),
        );
        if let Some(w) = found {
            match validate_witness(&p.graph, &g, &w) {
                Ok(()) => report.witnesses.push(w),
                Err(defect) => report.fail(format!(
                    "P({}, {b}) witness failed validation: {defect}",
                    config.a
                )),
            }
        }
    }
    Ok(())
}

/// Samples up to 40 random hosts and keeps the first class member. Half the
/// attempts plant a complete bipartite graph first so that adjacency
/// configurations exist.
pub fn member_host(
    config: &CampaignConfig,
    rng: &mut Rng,
) -> Result<Option<Graph>, StructureError> {
    for _ in 0..40 {
        let g = if rng::coin(rng, 0.5) {
            config.random_host(rng)
        } else {
            planted_host(config, rng)
        };
        if membership_witness(&g, config.a, &config.limits)?.is_none() {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

fn planted_host(config: &CampaignConfig, rng: &mut Rng) -> Graph {
    let n = rng::between(
        rng,
        config.min_vertices.max(2 * config.a),
        config.max_vertices.max(2 * config.a),
    );
    let left = rng::between(rng, config.a, (n / 2).max(config.a));
    let right = rng::between(rng, config.a, n - left);
    let p = config.min_probability
        + (config.max_probability - config.min_probability) * rng::unit_f64(rng);
    let mut b = Builder::new();
    b.template(&[left, right]);
    while b.n < n {
        let v = b.vertex();
        for u in 0..v {
            if rng::coin(rng, p) {
                b.edge(u, v);
            }
        }
    }
    let (g, _) = b.finish(rng);
    g
}

/// Every pair `(A, B)` of disjoint independent sets of sizes `a_size` and
/// `b_size`, complete to each other.
pub fn biclique_configurations(
    g: &Graph,
    a_size: usize,
    b_size: usize,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut left = Vec::new();
    independent_subsets(g, a_size, 0, &mut Vec::new(), &mut left);
    let mut right = Vec::new();
    independent_subsets(g, b_size, 0, &mut Vec::new(), &mut right);
    let mut out = Vec::new();
    for x in &left {
        for y in &right {
            if x.iter().all(|u| !y.contains(u)) && g.is_complete_to(x, y) {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

fn independent_subsets(
    g: &Graph,
    k: usize,
    from: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for v in from..g.n() {
        if cur.iter().all(|&u| !g.has_edge(u, v)) {
            cur.push(v);
            independent_subsets(g, k, v + 1, cur, out);
            cur.pop();
        }
    }
}

const MAX_CONFIGURATIONS: usize = 400;

fn trichotomy(
    config: &CampaignConfig,
    rng: &mut Rng,
    report: &mut InstanceReport,
) -> Result<(), StructureError> {
    let Some(g) = member_host(config, rng)? else {
        report.skip("no class member among the sampled hosts");
        return Ok(());
    };
    report.host(&g);
    // a violation needs `a` misses in A and two hits plus `a` misses in B; any
    // violation restricts to one with these sizes
    let mut configs = biclique_configurations(&g, config.a, config.a + 2);
    report.metrics.insert("configurations", configs.len());
    if configs.len() > MAX_CONFIGURATIONS {
        let keep = rng::sample_sorted(
            rng,
            &(0..configs.len()).collect::<Vec<_>>(),
            MAX_CONFIGURATIONS,
        );
        configs = keep.into_iter().map(|i| configs[i].clone()).collect();
    }
    let mut tally: BTreeMap<&'static str, usize> = BTreeMap::new();
    for (a_set, b_set) in &configs {
        for v in g
            .vertices()
            .filter(|v| !a_set.contains(v) && !b_set.contains(v))
        {
            report.checks += 1;
            let verdict = check_adjacency_trichotomy(&g, a_set, b_set, v, config.a)?;
            let key = match verdict {
                TrichotomyVerdict::Exempt => "exempt",
                TrichotomyVerdict::OneConnected => "one_connected",
                TrichotomyVerdict::NearlyComplete => "nearly_complete",
                TrichotomyVerdict::Violation { witness } => {
                    report.fail(format!(
                        "violation at v = {v}, A = {a_set:?}, B = {b_set:?} in a class member"
                    ));
                    report.witness(&g, config.a, witness);
                    "violation"
                }
            };
            *tally.entry(key).or_insert(0) += 1;
        }
    }
    report.metrics.extend(tally);
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `P(a,a)` with some edges subdivided, plus noise vertices.
    Subdivided,
    /// A complete bipartite pair and a vertex breaking the trichotomy.
    Trichotomy,
    /// A template and a vertex with two heavy parts, one of them seen twice.
    InvalidTrace,
}

/// A host known to contain an induced subdivision of `P(a,a)`, with the data
/// each kind needs for its check.
#[derive(Debug, Clone)]
pub struct ViolationInstance {
    pub kind: ViolationKind,
    pub graph: Graph,
    pub a_set: Vec<usize>,
    pub b_set: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
    pub v: usize,
}

pub fn violation_instance(rng: &mut Rng, a: usize) -> ViolationInstance {
    match rng::below(rng, 3) {
        0 => subdivided_pattern(rng, a),
        1 => trichotomy_violation(rng, a),
        _ => invalid_trace(rng, a),
    }
}

fn subdivided_pattern(rng: &mut Rng, a: usize) -> ViolationInstance {
    let p = PatternPab::new(a, a).expect("a >= 1");
    let edges: Vec<(usize, usize)> = p.graph.edges().collect();
    let mut lengths = BTreeMap::new();
    for _ in 0..rng::between(rng, 0, 3) {
        lengths.insert(edges[rng::below(rng, edges.len())], rng::between(rng, 2, 3));
    }
    let sub = generators::subdivide(&p.graph, &lengths, rng::below(rng, 1 << 16) as u64)
        .expect("pattern edges");
    let mut b = Builder::from_graph(&sub);
    let noise = rng::between(rng, 0, 3);
    for _ in 0..noise {
        let v = b.vertex();
        for u in 0..v {
            if rng::coin(rng, 0.3) {
                b.edge(u, v);
            }
        }
    }
    let (graph, _) = b.finish(rng);
    ViolationInstance {
        kind: ViolationKind::Subdivided,
        graph,
        a_set: vec![],
        b_set: vec![],
        parts: vec![],
        v: 0,
    }
}

fn trichotomy_violation(rng: &mut Rng, a: usize) -> ViolationInstance {
    let left = rng::between(rng, a, a + 2);
    let right = rng::between(rng, a + 2, a + 3);
    let mut b = Builder::new();
    let parts = b.template(&[left, right]);
    let v = b.vertex();
    let missed_a = rng::between(rng, a, left);
    for &u in &parts[0][missed_a..] {
        b.edge(u, v);
    }
    let hits = rng::between(rng, 2, right - a);
    for &u in &parts[1][..hits] {
        b.edge(u, v);
    }
    add_noise(&mut b, rng, 2);
    let (graph, perm) = b.finish(rng);
    ViolationInstance {
        kind: ViolationKind::Trichotomy,
        graph,
        a_set: map_sorted(&perm, &parts[0]),
        b_set: map_sorted(&perm, &parts[1]),
        parts: vec![],
        v: perm[v],
    }
}

fn invalid_trace(rng: &mut Rng, a: usize) -> ViolationInstance {
    let r = rng::between(rng, 2, 3);
    let sizes: Vec<usize> = (0..r).map(|_| rng::between(rng, a + 2, a + 4)).collect();
    let mut b = Builder::new();
    let parts = b.template(&sizes);
    let v = b.vertex();
    // part 0: at least a misses and at least two hits; part 1: more than a
    // misses, so the trace cannot fall back to Z
    let hits0 = rng::between(rng, 2, sizes[0] - a);
    let hits1 = rng::between(rng, 0, sizes[1] - a - 1);
    for &u in &parts[0][..hits0] {
        b.edge(u, v);
    }
    for &u in &parts[1][..hits1] {
        b.edge(u, v);
    }
    for part in &parts[2..] {
        let m = rng::between(rng, 0, part.len());
        b.attach_misses(rng, v, part, m);
    }
    add_noise(&mut b, rng, 2);
    let (graph, perm) = b.finish(rng);
    ViolationInstance {
        kind: ViolationKind::InvalidTrace,
        graph,
        a_set: vec![],
        b_set: vec![],
        parts: parts.iter().map(|p| map_sorted(&perm, p)).collect(),
        v: perm[v],
    }
}

fn violations(
    config: &CampaignConfig,
    rng: &mut Rng,
    report: &mut InstanceReport,
) -> Result<(), StructureError> {
    let a = config.a;
    let inst = violation_instance(rng, a);
    let g = &inst.graph;
    report.host(g);
    report.metrics.insert("kind", inst.kind as usize);
    report.checks += 1;
    let witness = match inst.kind {
        ViolationKind::Subdivided => membership_witness(g, a, &config.limits)?,
        ViolationKind::Trichotomy => {
            match check_adjacency_trichotomy(g, &inst.a_set, &inst.b_set, inst.v, a)? {
                TrichotomyVerdict::Violation { witness } => Some(witness),
                _ => None,
            }
        }
        ViolationKind::InvalidTrace => {
            let x = Template::new(g, inst.parts.clone())?;
            classify_vertex(g, &x, inst.v, a)?.1
        }
    };
    match witness {
        Some(w) => report.witness(g, a, w),
        None => report.fail(format!("{:?} instance produced no witness", inst.kind)),
    }
    Ok(())
}

/// A template with nearly complete vertices outside it, among them an
/// independent `s`-set sharing one non-neighbour trace.
#[derive(Debug, Clone)]
pub struct GrowthInstance {
    pub graph: Graph,
    pub template: Template,
    pub z: Vec<usize>,
    pub planted: Vec<usize>,
    pub s: usize,
}

pub fn growth_instance(rng: &mut Rng, a: usize) -> GrowthInstance {
    let s = rng::between(rng, 1, 3);
    let r = rng::between(rng, 2, 3);
    let mut b = Builder::new();
    let parts = b.template(&vec![s + a; r]);
    let missed: Vec<Vec<usize>> = parts
        .iter()
        .map(|p| {
            let k = rng::between(rng, 0, a);
            rng::sample_sorted(rng, p, k)
        })
        .collect();
    let mut planted = Vec::with_capacity(s);
    for _ in 0..s {
        let v = b.vertex();
        for (p, m) in parts.iter().zip(&missed) {
            for &u in p.iter().filter(|u| !m.contains(u)) {
                b.edge(u, v);
            }
        }
        planted.push(v);
    }
    let mut z = planted.clone();
    for _ in 0..rng::between(rng, 0, 4) {
        let v = b.vertex();
        b.attach_z(rng, v, &parts, a);
        for &u in &z {
            if rng::coin(rng, 0.5) {
                b.edge(u, v);
            }
        }
        z.push(v);
    }
    let (graph, perm) = b.finish(rng);
    let template = Template::new(&graph, parts.iter().map(|p| map_sorted(&perm, p)).collect())
        .expect("construction keeps the template induced");
    GrowthInstance {
        graph,
        template,
        z: map_sorted(&perm, &z),
        planted: map_sorted(&perm, &planted),
        s,
    }
}

fn growth(
    config: &CampaignConfig,
    rng: &mut Rng,
    report: &mut InstanceReport,
) -> Result<(), StructureError> {
    let inst = growth_instance(rng, config.a);
    report.host(&inst.graph);
    report.checks += 1;
    report.metrics.insert("s", inst.s);
    report.metrics.insert("r", inst.template.r());
    match grow_template(
        &inst.graph,
        &inst.template,
        &inst.z,
        inst.s,
        config.a,
        &config.limits,
    )? {
        GrowthOutcome::Grown { template } => {
            Template::check(&inst.graph, template.parts())?;
            if template.r() != inst.template.r() + 1 || template.min_part_size() < inst.s {
                report.fail(format!(
                    "grown template has {} parts, smallest {}",
                    template.r(),
                    template.min_part_size()
                ));
            }
        }
        GrowthOutcome::Insufficient { reason, .. } => report.fail(reason),
    }
    Ok(())
}

/// A template and attached vertices, as produced by the constructed suites.
#[derive(Debug, Clone)]
pub struct TemplateInstance {
    pub graph: Graph,
    pub template: Template,
}

/// Every vertex outside the template is nearly complete, or has one conflict
/// part, or is nearly complete to one part and sparse to at least two others.
pub fn dominating_instance(rng: &mut Rng, a: usize) -> TemplateInstance {
    let r = rng::between(rng, 2, 3);
    let sizes: Vec<usize> = (0..r).map(|_| rng::between(rng, a + 1, a + 3)).collect();
    let mut b = Builder::new();
    let parts = b.template(&sizes);
    let mut extra = Vec::new();
    for _ in 0..rng::between(rng, 1, 6) {
        let v = b.vertex();
        match rng::below(rng, if r >= 3 { 3 } else { 2 }) {
            0 => b.attach_z(rng, v, &parts, a),
            1 => b.attach_c(rng, v, &parts, a),
            _ => b.attach_m(rng, v, &parts, a),
        }
        for &u in &extra {
            if rng::coin(rng, 0.4) {
                b.edge(u, v);
            }
        }
        extra.push(v);
    }
    b.finish_template(rng, &parts)
}

/// `max_v χ(N(v))`, the desk-scale stand-in for the bound on graphs of smaller clique number.
pub fn neighbourhood_tau(g: &Graph, limits: &Limits) -> Result<usize, StructureError> {
    let mut tau = 0;
    for v in g.vertices() {
        let sub = g.induced(g.neighbours(v))?;
        tau = tau.max(chromatic_number(&sub.graph, limits)?.colours_used);
    }
    Ok(tau)
}

fn dominating(
    config: &CampaignConfig,
    rng: &mut Rng,
    report: &mut InstanceReport,
) -> Result<(), StructureError> {
    let a = config.a;
    let inst = dominating_instance(rng, a);
    let g = &inst.graph;
    report.host(g);
    let limits = &config.limits;
    let out = dominating_colouring(g, &inst.template, a, |h| Ok(chromatic_number(h, limits)?))?;
    report.checks += 1;
    let omega = clique_number(g, limits)?.size;
    let tau = neighbourhood_tau(g, limits)?;
    let budget = (1 + tau) * (a + 1) * omega;
    if let Err(e) = out.certificate.verify(g) {
        report.fail(format!("improper colouring: {e}"));
    }
    if out.certificate.colours_used > budget {
        report.fail(format!(
            "{} colours exceed (1 + {tau})({})({omega}) = {budget}",
            out.certificate.colours_used,
            a + 1
        ));
    }
    report
        .metrics
        .insert("colours", out.certificate.colours_used);
    report.metrics.insert("budget", budget);
    report.metrics.insert("omega", omega);
    report.metrics.insert("tau", tau);
    Ok(())
}

/// Nearly complete and conflict vertices plus one or two free components,
/// each free vertex seeing at most one vertex of every part.
pub fn cutset_instance(rng: &mut Rng, a: usize) -> TemplateInstance {
    let r = rng::between(rng, 2, 3);
    let sizes: Vec<usize> = (0..r).map(|_| rng::between(rng, a + 3, a + 5)).collect();
    let mut b = Builder::new();
    let parts = b.template(&sizes);
    let mut attached = Vec::new();
    for _ in 0..rng::between(rng, 0, 3) {
        let v = b.vertex();
        if rng::coin(rng, 0.5) {
            b.attach_z(rng, v, &parts, a);
        } else {
            b.attach_c(rng, v, &parts, a);
        }
        attached.push(v);
    }
    for _ in 0..rng::between(rng, 1, 2) {
        let size = rng::between(rng, 1, 4);
        let mut q: Vec<usize> = Vec::with_capacity(size);
        for _ in 0..size {
            let v = b.vertex();
            if let Some(&u) = q.get(rng::below(rng, q.len().max(1))) {
                b.edge(u, v);
            }
            for part in &parts {
                if rng::coin(rng, 0.4) {
                    b.edge(part[rng::below(rng, part.len())], v);
                }
            }
            for &u in &attached {
                if rng::coin(rng, 0.4) {
                    b.edge(u, v);
                }
            }
            q.push(v);
        }
    }
    b.finish_template(rng, &parts)
}

fn cutset(
    config: &CampaignConfig,
    rng: &mut Rng,
    report: &mut InstanceReport,
) -> Result<(), StructureError> {
    let inst = cutset_instance(rng, config.a);
    check_components(config, &inst, report)
}

fn check_components(
    config: &CampaignConfig,
    inst: &TemplateInstance,
    report: &mut InstanceReport,
) -> Result<(), StructureError> {
    let (g, a) = (&inst.graph, config.a);
    report.host(g);
    let partition = partition_attachment(g, &inst.template, a)?;
    let free = crate::graph::bitset(g.n(), &partition.a_free);
    let comps = g.components_within(&free);
    if comps.is_empty() {
        report.fail("construction left no free vertices");
    }
    let omega = clique_number(g, &config.limits)?.size;
    let bounds = compute_bounds(a, omega, 0, BoundsConfig::default())?;
    report.metrics.insert("components", comps.len());
    for q in &comps {
        let rep = component_cutset_report(g, &inst.template, &partition, q, a, &bounds)?;
        report.checks += 1;
        if !rep.cutset.is_cutset {
            report.fail(format!(
                "N({q:?}) does not separate the component from the far side"
            ));
        }
        for w in rep.witnesses() {
            report.witness(g, a, w.clone());
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeKind {
    /// A free path touching two vertices of one part at its ends.
    XPart,
    /// Two non-adjacent vertices of one `M(i,j)` class joined through a free path.
    MClass,
    /// Two non-adjacent vertices with the same conflict signature joined through a free path.
    CClass,
}

pub fn probe_instance(rng: &mut Rng, a: usize, kind: ProbeKind) -> TemplateInstance {
    let mut b = Builder::new();
    let (parts, ends) = match kind {
        ProbeKind::XPart => {
            let r = rng::between(rng, 2, 3);
            let sizes: Vec<usize> = (0..r).map(|_| rng::between(rng, a + 4, a + 6)).collect();
            let parts = b.template(&sizes);
            let i = rng::below(rng, r);
            let pair = rng::sample_sorted(rng, &parts[i], 2);
            (parts, pair)
        }
        ProbeKind::MClass => {
            let r = rng::between(rng, 3, 4);
            let sizes: Vec<usize> = (0..r)
                .map(|_| rng::between(rng, 3 * a, 3 * a + 2))
                .collect();
            let parts = b.template(&sizes);
            let light = rng::below(rng, r);
            let heavy: Vec<usize> = (0..r).filter(|&k| k != light).collect();
            let k = rng::between(rng, 0, a - 1);
            let missed = rng::sample_sorted(rng, &parts[light], k);
            let mut ends = Vec::new();
            for _ in 0..2 {
                let v = b.vertex();
                for &u in parts[light].iter().filter(|u| !missed.contains(u)) {
                    b.edge(u, v);
                }
                for &k in &heavy {
                    let c = rng::between(rng, 0, 1);
                    b.attach_neighbours(rng, v, &parts[k], c);
                }
                ends.push(v);
            }
            (parts, ends)
        }
        ProbeKind::CClass => {
            let r = rng::between(rng, 2, 3);
            let sizes: Vec<usize> = (0..r).map(|_| rng::between(rng, a + 3, a + 5)).collect();
            let parts = b.template(&sizes);
            let conflict = rng::below(rng, r);
            let k = rng::between(rng, a + 1, a + 2);
            let shared = rng::sample_sorted(rng, &parts[conflict], k);
            let others: Vec<Vec<usize>> = parts
                .iter()
                .map(|p| {
                    let k = rng::between(rng, 0, a - 1);
                    rng::sample_sorted(rng, p, k)
                })
                .collect();
            let mut ends = Vec::new();
            for _ in 0..2 {
                let v = b.vertex();
                for (k, p) in parts.iter().enumerate() {
                    let skip = if k == conflict { &shared } else { &others[k] };
                    for &u in p.iter().filter(|u| !skip.contains(u)) {
                        b.edge(u, v);
                    }
                }
                ends.push(v);
            }
            (parts, ends)
        }
    };
    // free path between the two ends; two template ends need two path vertices
    let len = rng::between(rng, if kind == ProbeKind::XPart { 2 } else { 1 }, 3);
    let path: Vec<usize> = (0..len).map(|_| b.vertex()).collect();
    for w in path.windows(2) {
        b.edge(w[0], w[1]);
    }
    b.edge(ends[0], path[0]);
    b.edge(ends[1], path[len - 1]);
    for _ in 0..rng::between(rng, 0, 2) {
        let v = b.vertex();
        b.attach_z(rng, v, &parts, a);
    }
    b.finish_template(rng, &parts)
}

fn probes(
    config: &CampaignConfig,
    rng: &mut Rng,
    report: &mut InstanceReport,
) -> Result<(), StructureError> {
    let kind = match rng::below(rng, 3) {
        0 => ProbeKind::XPart,
        1 => ProbeKind::MClass,
        _ => ProbeKind::CClass,
    };
    report.metrics.insert("kind", kind as usize);
    let inst = probe_instance(rng, config.a, kind);
    check_components(config, &inst, report)?;
    if report.witnesses.is_empty() {
        report.fail(format!("{kind:?} construction produced no witness"));
    }
    Ok(())
}

fn chi(
    config: &CampaignConfig,
    rng: &mut Rng,
    report: &mut InstanceReport,
) -> Result<(), StructureError> {
    let g = config.random_host(rng);
    report.host(&g);
    if let Some(w) = membership_witness(&g, config.a, &config.limits)? {
        report.witness(&g, config.a, w);
        report.skip("not a class member");
        return Ok(());
    }
    if g.n() == 0 {
        report.skip("empty graph");
        return Ok(());
    }
    let omega = clique_number(&g, &config.limits)?.size;
    let colouring = chromatic_number(&g, &config.limits)?;
    let tau = neighbourhood_tau(&g, &config.limits)?;
    let bounds = compute_bounds(config.a, omega, tau, BoundsConfig::default())?;
    report.checks += 1;
    report.metrics.insert("omega", omega);
    report.metrics.insert("chi", colouring.colours_used);
    report.metrics.insert("tau", tau);
    if num_bigint::BigUint::from(colouring.colours_used) > bounds.final_bound {
        report.fail(format!(
            "χ = {} exceeds the closing bound",
            colouring.colours_used
        ));
    }
    Ok(())
}

fn map_sorted(perm: &[usize], vs: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = vs.iter().map(|&v| perm[v]).collect();
    out.sort_unstable();
    out
}

/// Up to `max` fresh vertices, each adjacent to every earlier vertex with probability 0.3.
fn add_noise(b: &mut Builder, rng: &mut Rng, max: usize) {
    for _ in 0..rng::between(rng, 0, max) {
        let v = b.vertex();
        for u in 0..v {
            if rng::coin(rng, 0.3) {
                b.edge(u, v);
            }
        }
    }
}

/// Edge-list accumulator for constructed hosts.
struct Builder {
    n: usize,
    edges: std::collections::BTreeSet<(usize, usize)>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            n: 0,
            edges: Default::default(),
        }
    }

    fn from_graph(g: &Graph) -> Self {
        Builder {
            n: g.n(),
            edges: g.edges().collect(),
        }
    }

    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.insert((u.min(v), u.max(v)));
    }

    /// Complete multipartite graph on fresh vertices; returns the parts.
    fn template(&mut self, sizes: &[usize]) -> Vec<Vec<usize>> {
        let parts: Vec<Vec<usize>> = sizes
            .iter()
            .map(|&s| (0..s).map(|_| self.vertex()).collect())
            .collect();
        for (i, p) in parts.iter().enumerate() {
            for q in &parts[i + 1..] {
                for &u in p {
                    for &w in q {
                        self.edge(u, w);
                    }
                }
            }
        }
        parts
    }

    /// `v` misses exactly `misses` random vertices of `part`.
    fn attach_misses(&mut self, rng: &mut Rng, v: usize, part: &[usize], misses: usize) {
        let missed = rng::sample_sorted(rng, part, misses);
        for &u in part.iter().filter(|u| !missed.contains(u)) {
            self.edge(u, v);
        }
    }

    /// `v` sees exactly `count` random vertices of `part`.
    fn attach_neighbours(&mut self, rng: &mut Rng, v: usize, part: &[usize], count: usize) {
        for u in rng::sample_sorted(rng, part, count) {
            self.edge(u, v);
        }
    }

    fn attach_z(&mut self, rng: &mut Rng, v: usize, parts: &[Vec<usize>], a: usize) {
        for p in parts {
            let m = rng::between(rng, 0, a.min(p.len()));
            self.attach_misses(rng, v, p, m);
        }
    }

    /// One conflict part with more than `a` misses, fewer than `a` elsewhere.
    fn attach_c(&mut self, rng: &mut Rng, v: usize, parts: &[Vec<usize>], a: usize) {
        let i = rng::below(rng, parts.len());
        for (k, p) in parts.iter().enumerate() {
            let m = if k == i {
                rng::between(rng, a + 1, p.len())
            } else {
                rng::between(rng, 0, a - 1)
            };
            self.attach_misses(rng, v, p, m);
        }
    }

    /// Nearly complete to one part, at most one neighbour in at least two others.
    fn attach_m(&mut self, rng: &mut Rng, v: usize, parts: &[Vec<usize>], a: usize) {
        let r = parts.len();
        let h = rng::between(rng, 2, r - 1);
        let heavy = rng::sample_sorted(rng, &(0..r).collect::<Vec<_>>(), h);
        for (k, p) in parts.iter().enumerate() {
            if heavy.contains(&k) {
                let c = rng::between(rng, 0, 1);
                self.attach_neighbours(rng, v, p, c);
            } else {
                let m = rng::between(rng, 0, a - 1);
                self.attach_misses(rng, v, p, m);
            }
        }
    }

    /// Builds the graph under a uniformly random relabelling `perm` (old id to new id).
    fn finish(self, rng: &mut Rng) -> (Graph, Vec<usize>) {
        let mut perm: Vec<usize> = (0..self.n).collect();
        rng::shuffle(rng, &mut perm);
        let g = Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("ids in range");
        (g, perm)
    }

    fn finish_template(self, rng: &mut Rng, parts: &[Vec<usize>]) -> TemplateInstance {
        let (graph, perm) = self.finish(rng);
        let template = Template::new(&graph, parts.iter().map(|p| map_sorted(&perm, p)).collect())
            .expect("construction keeps the template induced");
        TemplateInstance { graph, template }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::VertexClass;

    fn quick(suite: Suite, instances: u64) -> CampaignSummary {
        let config = CampaignConfig {
            instances,
            seed: 7,
            ..CampaignConfig::for_suite(suite)
        };
        run_campaign(&config).unwrap()
    }

    #[test]
    fn every_suite_passes_a_short_run() {
        for suite in Suite::ALL {
            let s = quick(suite, 12);
            assert_eq!(s.failed, 0, "{suite}: {:?}", s.failures);
            assert!(s.passed > 0, "{suite}");
        }
    }

    #[test]
    fn constructed_suites_emit_witnesses() {
        assert!(quick(Suite::Violations, 12).witnesses_validated >= 12);
        assert!(quick(Suite::Probes, 12).witnesses_validated >= 12);
    }

    #[test]
    fn replay_matches_campaign() {
        let config = CampaignConfig {
            instances: 6,
            seed: 3,
            ..CampaignConfig::for_suite(Suite::Violations)
        };
        let a = run_instance(&config, 4).unwrap();
        let b = run_instance(&config, 4).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert!(run_instance(&config, 6).is_err());
    }

    #[test]
    fn config_validation() {
        let ok = CampaignConfig::default();
        assert!(ok.validate().is_ok());
        assert_eq!(
            CampaignConfig {
                instances: 0,
                ..ok.clone()
            }
            .validate(),
            Err(CampaignError::NoInstances)
        );
        assert!(CampaignConfig {
            min_vertices: 9,
            max_vertices: 3,
            ..ok.clone()
        }
        .validate()
        .is_err());
        assert!(CampaignConfig {
            max_probability: 1.5,
            ..ok.clone()
        }
        .validate()
        .is_err());
        assert_eq!(
            CampaignConfig { a: 1, ..ok }.validate(),
            Err(CampaignError::A(1))
        );
        assert_eq!("growth".parse::<Suite>().unwrap(), Suite::Growth);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn invalid_trace_instances_are_invalid() {
        for seed in 0..300 {
            let mut rng = rng::instance_rng(seed, 0);
            let inst = invalid_trace(&mut rng, 2);
            let x = Template::new(&inst.graph, inst.parts.clone()).unwrap();
            let (class, witness) = classify_vertex(&inst.graph, &x, inst.v, 2).unwrap();
            assert!(
                matches!(class, VertexClass::Invalid { .. }),
                "seed {seed}: {class:?}"
            );
            assert!(witness.is_some());
        }
    }

    #[test]
    fn configurations_of_a_biclique() {
        let g = generators::complete_multipartite(&[4, 4]).unwrap();
        // A: a pair from either side, B: the whole other side
        assert_eq!(biclique_configurations(&g, 2, 4).len(), 12);
        assert_eq!(biclique_configurations(&g, 2, 2).len(), 72);
    }
}
