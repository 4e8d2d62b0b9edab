use std::sync::Arc;

use nbperc_core::bounds::{
    connectivity_envelope, rho_sequence, threshold_bounds, threshold_bounds_sequence, verify_envelope,
    EnvelopeOutcome, EnvelopeVerification, FailedGate, RhoSequenceOptions, MONOTONE_SLACK,
};
use nbperc_core::graph::{
    generate, lattice_rule, read_edge_list, regular_tree_rule, write_edge_list, Family, Graph,
    GraphDescriptor, LocalRuleGraph, SubgraphSequence,
};
use nbperc_core::nonbacktracking::{
    growth_for_graph, spectral_radius, strong_ell_connected, GrowthOptions, HashimotoMatrix, PNorm,
    SpectralResult,
};
use nbperc_core::percolation::{
    estimate_many, estimate_tau_pairs, estimate_theta_proxy, exact_tau_table, MonteCarlo,
    PercolationEstimate, Quantity, MAX_EXACT_VERTICES,
};
use nbperc_core::ExtendedReal;
use serde::Serialize;

use crate::args::*;
use crate::report::{emit, json_report, CliError, Rendered, TOOL, VERSION};

pub fn run(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Gen(a) => gen(cli, a),
        Command::Rho(a) => rho(cli, a),
        Command::OlgCheck(a) => olg_check(cli, a),
        Command::Growth(a) => growth(cli, a),
        Command::Percolate(a) => percolate(cli, a),
        Command::TauTable(a) => tau_table(cli, a),
        Command::Bounds(a) => bounds(cli, a),
        Command::RhoLimit(a) => rho_limit(cli, a),
        Command::EnvelopeVerify(a) => envelope_verify(cli, a),
    }
}

fn has_graph(a: &GraphArgs) -> bool {
    a.family.is_some() || a.edges.is_some()
}

fn resolve_graph(a: &GraphArgs) -> Result<Graph, CliError> {
    if let Some(path) = &a.edges {
        return read_edge_list(path, a.vertices.unwrap_or(0)).map_err(|e| CliError::usage("edges", e));
    }
    let Some(family) = a.family else {
        return Err(CliError::usage("family", "a graph source is required: --family or --edges"));
    };
    let need = |v: Option<usize>, field: &str| {
        v.ok_or_else(|| CliError::usage(field, format!("--{field} is required for this family")))
    };
    let family = match family {
        FamilyName::Tree => Family::Tree {
            d: need(a.d, "d")?,
            depth: need(a.depth, "depth")?,
        },
        FamilyName::Cycle => Family::Cycle { n: need(a.n, "n")? },
        FamilyName::Complete => Family::Complete { n: need(a.n, "n")? },
        FamilyName::GridBall => Family::GridBall {
            radius: need(a.radius, "radius")?,
        },
        FamilyName::RandomRegular => Family::RandomRegular {
            n: need(a.n, "n")?,
            d: need(a.d, "d")?,
            seed: a.seed.unwrap_or(0),
        },
        FamilyName::Petersen => Family::Petersen,
    };
    generate(&family).map_err(|e| CliError::usage("family", e))
}

fn resolve_sequence(s: &SequenceArgs, graph: &GraphArgs, t_max: usize) -> Result<Option<SubgraphSequence>, CliError> {
    let Some(rule) = s.rule.as_deref() else {
        return Ok(None);
    };
    let parse_suffix = |prefix: &str| rule.strip_prefix(prefix).and_then(|x| x.parse::<usize>().ok());
    let seq = if rule == "ball" {
        let g = resolve_graph(graph)?;
        g.check_vertex(s.root).map_err(|e| CliError::usage("root", e))?;
        SubgraphSequence::up_to(LocalRuleGraph::from_graph(Arc::new(g), s.root), t_max)
    } else if let Some(d) = parse_suffix("tree") {
        if d < 2 {
            return Err(CliError::usage("rule", "tree rules need degree >= 2"));
        }
        SubgraphSequence::up_to(regular_tree_rule(d), t_max)
    } else if let Some(dim) = parse_suffix("z") {
        if dim < 1 {
            return Err(CliError::usage("rule", "lattice rules need dimension >= 1"));
        }
        SubgraphSequence::up_to(lattice_rule(dim), t_max)
    } else {
        return Err(CliError::usage(
            "rule",
            format!("unknown rule `{rule}`; expected treeD, zD or ball"),
        ));
    };
    Ok(Some(seq))
}

fn check_ps(ps: &[f64]) -> Result<(), CliError> {
    match ps.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        Some(p) => Err(CliError::usage("p", format!("probabilities must lie in [0, 1], got {p}"))),
        None => Ok(()),
    }
}

fn positive(v: usize, field: &str) -> Result<usize, CliError> {
    if v == 0 {
        return Err(CliError::usage(field, format!("--{field} must be >= 1")));
    }
    Ok(v)
}

fn monte_carlo(a: &MonteCarloArgs, master_seed: u64) -> Result<MonteCarlo, CliError> {
    if a.trials == 0 {
        return Err(CliError::usage("trials", "--trials must be >= 1"));
    }
    if !(a.confidence > 0.0 && a.confidence < 1.0) {
        return Err(CliError::usage("confidence", "--confidence must lie in (0, 1)"));
    }
    Ok(MonteCarlo::new(a.trials, master_seed).with_confidence(a.confidence))
}

fn truncation_descriptor(seq: &SubgraphSequence, t: usize) -> Result<GraphDescriptor, CliError> {
    seq.truncate(t)
        .map(|b| b.graph.descriptor())
        .map_err(CliError::runtime)
}

fn gen(cli: &Cli, a: &GenArgs) -> Result<Rendered, CliError> {
    let g = resolve_graph(&a.graph)?;
    let descriptor = g.descriptor();
    let source = serde_json::to_string(&descriptor.source).expect("descriptor serializes");
    let body = format!(
        "# {TOOL} {VERSION} gen\n# master_seed {}\n# source {source}\n{}",
        cli.master_seed,
        write_edge_list(&g)
    );
    let summary = format!("gen: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    Ok(Rendered {
        body,
        sidecar: Some(json_report(cli, Some(descriptor), ())),
        summary,
    })
}

#[derive(Serialize)]
struct RhoResult {
    arcs: usize,
    nnz: usize,
    #[serde(flatten)]
    spectral: SpectralResult,
}

#[derive(Serialize)]
struct RhoCsv {
    vertices: usize,
    arcs: usize,
    nnz: usize,
    rho: f64,
    iterations: usize,
    residual: f64,
    nilpotent: bool,
    master_seed: u64,
}

fn rho(cli: &Cli, a: &RhoArgs) -> Result<Rendered, CliError> {
    if !(a.tol > 0.0) {
        return Err(CliError::usage("tol", "--tol must be > 0"));
    }
    let g = resolve_graph(&a.graph)?;
    let h = HashimotoMatrix::new(&g);
    let max_iter = match a.max_iter {
        Some(m) => positive(m, "max-iter")?,
        None => (100 * h.dimension()).max(1000),
    };
    let mut spectral = spectral_radius(&h, a.tol, max_iter).map_err(CliError::runtime)?;
    if a.no_vector {
        spectral.perron_vector = None;
    }
    let row = RhoCsv {
        vertices: g.vertex_count(),
        arcs: h.dimension(),
        nnz: h.nnz(),
        rho: spectral.rho,
        iterations: spectral.iterations,
        residual: spectral.residual,
        nilpotent: spectral.nilpotent,
        master_seed: cli.master_seed,
    };
    let summary = format!(
        "rho: {} ({} arcs, {} iterations{})",
        spectral.rho,
        h.dimension(),
        spectral.iterations,
        if spectral.nilpotent { ", nilpotent" } else { "" }
    );
    let result = RhoResult {
        arcs: h.dimension(),
        nnz: h.nnz(),
        spectral,
    };
    emit(
        cli,
        a.out.format,
        Some(g.descriptor()),
        result,
        &[row],
        &["vertices", "arcs", "nnz", "rho", "iterations", "residual", "nilpotent", "master_seed"],
        summary,
    )
}

#[derive(Serialize)]
struct OlgArcRow {
    arc: usize,
    tail: usize,
    head: usize,
    /// Shortest walk length to the reverse arc, if at most `ell`.
    return_length: Option<usize>,
}

#[derive(Serialize)]
struct OlgResult {
    ell: usize,
    holds: bool,
    arcs: usize,
    arcs_returning: usize,
    /// Smallest certifying ell; set when the check holds.
    certified_ell: Option<usize>,
    per_arc: Vec<OlgArcRow>,
}

#[derive(Serialize)]
struct OlgCsv {
    arc: usize,
    tail: usize,
    head: usize,
    return_length: Option<usize>,
    ell: usize,
    holds: bool,
    master_seed: u64,
}

fn olg_check(cli: &Cli, a: &OlgArgs) -> Result<Rendered, CliError> {
    positive(a.ell, "ell")?;
    let g = resolve_graph(&a.graph)?;
    let h = HashimotoMatrix::new(&g);
    let conn = strong_ell_connected(&h, a.ell);
    let per_arc: Vec<OlgArcRow> = conn
        .witness
        .iter()
        .enumerate()
        .map(|(arc, &return_length)| {
            let x = h.arcs().arc(arc);
            OlgArcRow {
                arc,
                tail: x.tail,
                head: x.head,
                return_length,
            }
        })
        .collect();
    let arcs_returning = per_arc.iter().filter(|r| r.return_length.is_some()).count();
    let certified_ell = if conn.holds {
        per_arc.iter().filter_map(|r| r.return_length).max()
    } else {
        None
    };
    let result = OlgResult {
        ell: a.ell,
        holds: conn.holds,
        arcs: h.dimension(),
        arcs_returning,
        certified_ell,
        per_arc,
    };
    let rows: Vec<OlgCsv> = result
        .per_arc
        .iter()
        .map(|r| OlgCsv {
            arc: r.arc,
            tail: r.tail,
            head: r.head,
            return_length: r.return_length,
            ell: a.ell,
            holds: conn.holds,
            master_seed: cli.master_seed,
        })
        .collect();
    let summary = format!(
        "olg-check: holds={} at ell={} ({arcs_returning} of {} arcs return)",
        conn.holds,
        a.ell,
        h.dimension()
    );
    emit(
        cli,
        a.out.format,
        Some(g.descriptor()),
        &result,
        &rows,
        &["arc", "tail", "head", "return_length", "ell", "holds", "master_seed"],
        summary,
    )
}

#[derive(Serialize)]
struct GrowthCsv {
    seed_arc: Option<usize>,
    tail: usize,
    head: usize,
    liminf: f64,
    limsup: f64,
    extinct_at: Option<usize>,
    p_norm: u8,
    m_max: usize,
    window: usize,
    master_seed: u64,
}

fn growth(cli: &Cli, a: &GrowthArgs) -> Result<Rendered, CliError> {
    let p_norm = PNorm::from_index(a.p_norm).ok_or_else(|| CliError::usage("p-norm", "--p-norm must be 1 or 2"))?;
    positive(a.m_max, "m-max")?;
    if let Some(w) = a.window {
        positive(w, "window")?;
    }
    if let Some(k) = a.max_seeds {
        positive(k, "max-seeds")?;
    }
    let g = resolve_graph(&a.graph)?;
    let mut opts = GrowthOptions::new(p_norm, a.m_max);
    opts.window = a.window;
    opts.max_seeds = a.max_seeds;
    let growth = growth_for_graph(&g, &opts);
    let h = HashimotoMatrix::new(&g);
    let rows: Vec<GrowthCsv> = growth
        .per_seed
        .iter()
        .map(|e| {
            let arc = h.arcs().arc(e.seed_arc.expect("graph growth is arc-seeded"));
            GrowthCsv {
                seed_arc: e.seed_arc,
                tail: arc.tail,
                head: arc.head,
                liminf: e.liminf_estimate,
                limsup: e.limsup_estimate,
                extinct_at: e.extinct_at,
                p_norm: a.p_norm,
                m_max: growth.m_max,
                window: growth.window,
                master_seed: cli.master_seed,
            }
        })
        .collect();
    let summary = format!(
        "growth: sup liminf {}, sup limsup {} over {} seeds (p-norm {})",
        growth.sup_liminf,
        growth.sup_limsup,
        growth.per_seed.len(),
        a.p_norm
    );
    emit(
        cli,
        a.out.format,
        Some(g.descriptor()),
        growth,
        &rows,
        &[
            "seed_arc", "tail", "head", "liminf", "limsup", "extinct_at", "p_norm", "m_max", "window",
            "master_seed",
        ],
        summary,
    )
}

#[derive(Serialize)]
struct EstimateCsv {
    p: f64,
    quantity: &'static str,
    u: Option<usize>,
    v: Option<usize>,
    t: Option<usize>,
    point: f64,
    ci_low: f64,
    ci_high: f64,
    trials: u64,
    confidence: f64,
    master_seed: u64,
}

impl From<&PercolationEstimate> for EstimateCsv {
    fn from(e: &PercolationEstimate) -> Self {
        let (quantity, u, v, t) = match e.quantity {
            Quantity::Tau { u, v } => ("tau", Some(u), Some(v), None),
            Quantity::Chi { v } => ("chi", None, Some(v), None),
            Quantity::ThetaProxy { root, t } => ("theta_proxy", Some(root), None, Some(t)),
        };
        Self {
            p: e.p,
            quantity,
            u,
            v,
            t,
            point: e.point,
            ci_low: e.ci_low,
            ci_high: e.ci_high,
            trials: e.trials,
            confidence: e.confidence,
            master_seed: e.master_seed,
        }
    }
}

const ESTIMATE_HEADER: [&str; 11] = [
    "p", "quantity", "u", "v", "t", "point", "ci_low", "ci_high", "trials", "confidence", "master_seed",
];

#[derive(Serialize)]
struct PercolateResult {
    /// Truncation `G_t` used for the boundary-reach estimate.
    truncation: Option<GraphDescriptor>,
    estimates: Vec<PercolationEstimate>,
}

fn percolate(cli: &Cli, a: &PercolateArgs) -> Result<Rendered, CliError> {
    check_ps(&a.p)?;
    let mc = monte_carlo(&a.mc, cli.master_seed)?;
    let mut quantities = Vec::new();
    match (a.u, a.v) {
        (Some(u), Some(v)) => quantities.push(Quantity::Tau { u, v }),
        (Some(_), None) => return Err(CliError::usage("v", "--u needs --v")),
        (None, Some(_)) => return Err(CliError::usage("u", "--v needs --u")),
        (None, None) => {}
    }
    if let Some(v) = a.vertex {
        quantities.push(Quantity::Chi { v });
    }
    let seq = match (a.seq.rule.is_some(), a.t) {
        (true, Some(t)) => resolve_sequence(&a.seq, &a.graph, t)?.map(|s| (s, t)),
        (true, None) => return Err(CliError::usage("t", "--rule needs --t")),
        (false, Some(_)) => return Err(CliError::usage("rule", "--t needs --rule")),
        (false, None) => None,
    };
    if quantities.is_empty() && seq.is_none() {
        return Err(CliError::usage(
            "u",
            "nothing to estimate: give --u and --v, --vertex, or --rule with --t",
        ));
    }
    let truncation = match &seq {
        Some((s, t)) => Some(truncation_descriptor(s, *t)?),
        None => None,
    };
    let graph = if quantities.is_empty() {
        None
    } else if has_graph(&a.graph) {
        Some(resolve_graph(&a.graph)?)
    } else if let Some((s, t)) = &seq {
        Some(s.truncate(*t).map_err(CliError::runtime)?.graph)
    } else {
        return Err(CliError::usage("family", "tau and chi need a graph: --family or --edges"));
    };

    let mut estimates = Vec::new();
    for &p in &a.p {
        if let Some(g) = &graph {
            let field = if matches!(quantities[0], Quantity::Tau { .. }) { "u" } else { "vertex" };
            estimates.extend(estimate_many(g, p, &quantities, &mc).map_err(|e| CliError::usage(field, e))?);
        }
        if let Some((s, t)) = &seq {
            // the root of every truncation is vertex 0
            estimates.push(estimate_theta_proxy(s, *t, p, 0, &mc).map_err(CliError::runtime)?);
        }
    }
    let rows: Vec<EstimateCsv> = estimates.iter().map(EstimateCsv::from).collect();
    let summary = format!(
        "percolate: {} estimates at {} p values, {} trials each",
        estimates.len(),
        a.p.len(),
        mc.trials
    );
    let descriptor = graph.as_ref().map(Graph::descriptor).or_else(|| truncation.clone());
    emit(
        cli,
        a.out.format,
        descriptor,
        PercolateResult { truncation, estimates },
        &rows,
        &ESTIMATE_HEADER,
        summary,
    )
}

fn parse_pairs(list: &str, g: &Graph) -> Result<Vec<(usize, usize)>, CliError> {
    list.split(',')
        .map(|item| {
            let (i, j) = item
                .split_once('-')
                .and_then(|(i, j)| Some((i.trim().parse().ok()?, j.trim().parse().ok()?)))
                .ok_or_else(|| CliError::usage("pairs", format!("`{item}` is not of the form i-j")))?;
            g.check_vertex(i).map_err(|e| CliError::usage("pairs", e))?;
            g.check_vertex(j).map_err(|e| CliError::usage("pairs", e))?;
            Ok((i, j))
        })
        .collect()
}

#[derive(Serialize)]
struct TauRow {
    p: f64,
    i: usize,
    j: usize,
    dist: Option<usize>,
    tau_hat: f64,
    ci_low: f64,
    ci_high: f64,
    exact: Option<f64>,
    trials: u64,
    confidence: f64,
    master_seed: u64,
}

#[derive(Serialize)]
struct TauTableResult {
    trials: u64,
    confidence: f64,
    master_seed: u64,
    rows: Vec<TauRow>,
}

fn tau_table(cli: &Cli, a: &TauTableArgs) -> Result<Rendered, CliError> {
    check_ps(&a.p)?;
    let mc = monte_carlo(&a.mc, cli.master_seed)?;
    let g = resolve_graph(&a.graph)?;
    if a.exact && g.vertex_count() > MAX_EXACT_VERTICES {
        return Err(CliError::usage(
            "exact",
            format!("exact enumeration is limited to {MAX_EXACT_VERTICES} vertices"),
        ));
    }
    let n = g.vertex_count();
    let pairs = match &a.pairs {
        Some(list) => parse_pairs(list, &g)?,
        None => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
    };
    let mut dist_from: Vec<Option<Vec<Option<usize>>>> = vec![None; n];
    for &(i, _) in &pairs {
        if dist_from[i].is_none() {
            dist_from[i] = Some(g.distances_from(i));
        }
    }
    let mut rows = Vec::with_capacity(pairs.len() * a.p.len());
    for &p in &a.p {
        let est = estimate_tau_pairs(&g, p, &pairs, &mc).map_err(|e| CliError::usage("pairs", e))?;
        let exact = if a.exact {
            Some(exact_tau_table(&g, p).map_err(CliError::runtime)?)
        } else {
            None
        };
        for (&(i, j), e) in pairs.iter().zip(&est) {
            rows.push(TauRow {
                p,
                i,
                j,
                dist: dist_from[i].as_ref().expect("distances computed")[j],
                tau_hat: e.point,
                ci_low: e.ci_low,
                ci_high: e.ci_high,
                exact: exact.as_ref().map(|t| t[i][j]),
                trials: mc.trials,
                confidence: mc.confidence,
                master_seed: mc.master_seed,
            });
        }
    }
    let summary = format!("tau-table: {} rows ({} pairs x {} p values)", rows.len(), pairs.len(), a.p.len());
    let result = TauTableResult {
        trials: mc.trials,
        confidence: mc.confidence,
        master_seed: mc.master_seed,
        rows,
    };
    emit(
        cli,
        a.out.format,
        Some(g.descriptor()),
        &result,
        &result.rows,
        &[
            "p", "i", "j", "dist", "tau_hat", "ci_low", "ci_high", "exact", "trials", "confidence",
            "master_seed",
        ],
        summary,
    )
}

#[derive(Serialize)]
struct BoundsCsv {
    p_t_lower: ExtendedReal,
    p_c_lower: ExtendedReal,
    p_u_lower: ExtendedReal,
    sup_liminf: f64,
    sup_limsup: f64,
    rho_0: f64,
    ordering_violations: usize,
    master_seed: u64,
}

fn bounds(cli: &Cli, a: &BoundsArgs) -> Result<Rendered, CliError> {
    positive(a.m_max, "m-max")?;
    if let Some(w) = a.window {
        positive(w, "window")?;
    }
    if !(a.plateau_tol > 0.0) {
        return Err(CliError::usage("plateau-tol", "--plateau-tol must be > 0"));
    }
    let (b, descriptor) = match resolve_sequence(&a.seq, &a.graph, a.t_max)? {
        Some(seq) => {
            if a.t_max < 2 {
                return Err(CliError::usage("t-max", "sequence bounds need --t-max >= 2"));
            }
            let opts = RhoSequenceOptions {
                plateau_tol: a.plateau_tol,
                ..RhoSequenceOptions::default()
            };
            let b = threshold_bounds_sequence(&seq, a.t_max, a.m_max, a.window, &opts)
                .map_err(CliError::runtime)?;
            (b, truncation_descriptor(&seq, a.t_max)?)
        }
        None => {
            let g = resolve_graph(&a.graph)?;
            let b = threshold_bounds(&g, a.m_max, a.window).map_err(CliError::runtime)?;
            (b, g.descriptor())
        }
    };
    let row = BoundsCsv {
        p_t_lower: b.p_t_lower,
        p_c_lower: b.p_c_lower,
        p_u_lower: b.p_u_lower,
        sup_liminf: b.growth.sup_liminf,
        sup_limsup: b.growth.sup_limsup,
        rho_0: b.rho_0,
        ordering_violations: b.ordering_violations.len(),
        master_seed: cli.master_seed,
    };
    let summary = format!(
        "bounds: p_T >= {}, p_c >= {}, p_u >= {}",
        b.p_t_lower, b.p_c_lower, b.p_u_lower
    );
    emit(
        cli,
        a.out.format,
        Some(descriptor),
        b,
        &[row],
        &[
            "p_t_lower", "p_c_lower", "p_u_lower", "sup_liminf", "sup_limsup", "rho_0",
            "ordering_violations", "master_seed",
        ],
        summary,
    )
}

#[derive(Serialize)]
struct RhoLimitCsv {
    t: usize,
    vertices: usize,
    arcs: usize,
    rho_t: f64,
    monotone: bool,
    master_seed: u64,
}

fn rho_limit(cli: &Cli, a: &RhoLimitArgs) -> Result<Rendered, CliError> {
    positive(a.t_max, "t-max")?;
    if !(a.plateau_tol > 0.0) {
        return Err(CliError::usage("plateau-tol", "--plateau-tol must be > 0"));
    }
    let seq = resolve_sequence(&a.seq, &a.graph, a.t_max)?
        .ok_or_else(|| CliError::usage("rule", "rho-limit needs --rule"))?;
    let opts = RhoSequenceOptions {
        plateau_tol: a.plateau_tol,
        ..RhoSequenceOptions::default()
    };
    let report = rho_sequence(&seq, a.t_max, &opts);
    let mut prev: Option<f64> = None;
    let rows: Vec<RhoLimitCsv> = report
        .rows
        .iter()
        .map(|r| {
            let monotone = prev.is_none_or(|q| r.rho >= q - MONOTONE_SLACK);
            prev = Some(r.rho);
            RhoLimitCsv {
                t: r.t,
                vertices: r.vertices,
                arcs: r.arcs,
                rho_t: r.rho,
                monotone,
                master_seed: cli.master_seed,
            }
        })
        .collect();
    let descriptor = match report.rows.last() {
        Some(r) => Some(truncation_descriptor(&seq, r.t)?),
        None => None,
    };
    let summary = format!(
        "rho-limit: rho_0 ~ {} after {} truncations (monotone={}, converged={})",
        report.rho_0_estimate,
        report.rows.len(),
        report.monotone,
        report.converged
    );
    emit(
        cli,
        a.out.format,
        descriptor,
        report,
        &rows,
        &["t", "vertices", "arcs", "rho_t", "monotone", "master_seed"],
        summary,
    )
}

#[derive(Serialize)]
struct EnvelopeRun {
    p: f64,
    verdict: &'static str,
    rho: f64,
    lambda: f64,
    ell: Option<usize>,
    c_min: Option<f64>,
    reason: Option<FailedGate>,
    verification: Option<EnvelopeVerification>,
}

#[derive(Serialize)]
struct EnvelopeResult {
    /// `holds`, `violated`, or `inapplicable` when no p passed the gates.
    verdict: &'static str,
    ell_max: usize,
    total_violations: usize,
    runs: Vec<EnvelopeRun>,
}

#[derive(Serialize)]
struct EnvelopeCsv {
    p: f64,
    i: Option<usize>,
    j: Option<usize>,
    deg_i: Option<usize>,
    deg_j: Option<usize>,
    dist: Option<usize>,
    bound: Option<f64>,
    tau_hat: Option<f64>,
    ci_low: Option<f64>,
    ci_high: Option<f64>,
    verdict: &'static str,
    master_seed: u64,
}

fn envelope_verify(cli: &Cli, a: &EnvelopeArgs) -> Result<Rendered, CliError> {
    check_ps(&a.p)?;
    positive(a.ell_max, "ell-max")?;
    if let Some(k) = a.max_pairs {
        positive(k, "max-pairs")?;
    }
    let mc = monte_carlo(&a.mc, cli.master_seed)?;
    let g = resolve_graph(&a.graph)?;
    let mut runs = Vec::with_capacity(a.p.len());
    let mut rows = Vec::new();
    for &p in &a.p {
        let outcome = connectivity_envelope(&g, p, a.ell_max).map_err(CliError::runtime)?;
        let run = match outcome {
            EnvelopeOutcome::Applicable(env) => {
                let v = verify_envelope(&g, &env, &mc, a.max_pairs);
                for r in &v.rows {
                    rows.push(EnvelopeCsv {
                        p,
                        i: Some(r.i),
                        j: Some(r.j),
                        deg_i: Some(r.deg_i),
                        deg_j: Some(r.deg_j),
                        dist: r.dist,
                        bound: Some(r.bound),
                        tau_hat: Some(r.tau_hat),
                        ci_low: Some(r.ci_low),
                        ci_high: Some(r.ci_high),
                        verdict: if r.holds { "holds" } else { "violated" },
                        master_seed: mc.master_seed,
                    });
                }
                EnvelopeRun {
                    p,
                    verdict: if v.violations == 0 { "holds" } else { "violated" },
                    rho: env.rho,
                    lambda: env.lambda,
                    ell: Some(env.ell),
                    c_min: Some(env.c_min),
                    reason: None,
                    verification: Some(v),
                }
            }
            EnvelopeOutcome::Inapplicable { rho, p, reason } => {
                rows.push(EnvelopeCsv {
                    p,
                    i: None,
                    j: None,
                    deg_i: None,
                    deg_j: None,
                    dist: None,
                    bound: None,
                    tau_hat: None,
                    ci_low: None,
                    ci_high: None,
                    verdict: "inapplicable",
                    master_seed: mc.master_seed,
                });
                EnvelopeRun {
                    p,
                    verdict: "inapplicable",
                    rho,
                    lambda: p * rho,
                    ell: None,
                    c_min: None,
                    reason: Some(reason),
                    verification: None,
                }
            }
        };
        runs.push(run);
    }
    let total_violations: usize = runs
        .iter()
        .filter_map(|r| r.verification.as_ref())
        .map(|v| v.violations)
        .sum();
    let verdict = if runs.iter().all(|r| r.verification.is_none()) {
        "inapplicable"
    } else if total_violations > 0 {
        "violated"
    } else {
        "holds"
    };
    let applicable = runs.iter().filter(|r| r.verification.is_some()).count();
    let summary = format!(
        "envelope-verify: {verdict} ({applicable} of {} p values applicable, {total_violations} violations)",
        runs.len()
    );
    emit(
        cli,
        a.out.format,
        Some(g.descriptor()),
        EnvelopeResult {
            verdict,
            ell_max: a.ell_max,
            total_violations,
            runs,
        },
        &rows,
        &[
            "p", "i", "j", "deg_i", "deg_j", "dist", "bound", "tau_hat", "ci_low", "ci_high", "verdict",
            "master_seed",
        ],
        summary,
    )
}
