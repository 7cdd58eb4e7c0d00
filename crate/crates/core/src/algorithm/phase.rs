use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::local::{decide, induced_diameter, residual_graph, Judge, LocalDecision};
use super::{AlgoError, AlgoParams, DecisionMode};
use crate::blackbox::{blackbox_recolor, verify_piece_recolor, Assignment, Piece};
use crate::coloring::{check_invariant, classify, Color, EdgeClass, InvariantViolation, PartialColoringState};
use crate::hypergraph::{components_12, skeleton_23, Hypergraph};
use crate::local_sim::{CommGraph, PhaseSnapshot, RoundEngine, UnitId, ViewReader};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    /// Biased edges of one maximal 1,2-component of the residual graph.
    pub edges: Vec<usize>,
    /// Induced diameter, `None` when it exceeds every bound.
    pub diameter: Option<usize>,
    pub small: bool,
    pub skeleton: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceRecord {
    pub core: Vec<usize>,
    pub fringe: Vec<usize>,
    pub recolored: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixReason {
    Good,
    Blackbox,
    /// Undecided vertex left with no active edge.
    Isolated,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseTrace {
    /// 1-based.
    pub phase: usize,
    pub active_at_start: usize,
    pub participating_vertices: usize,
    pub biased: Vec<usize>,
    pub dangerous: Vec<usize>,
    pub components: Vec<ComponentRecord>,
    /// Largest 2,3-skeleton over all biased components.
    pub max_skeleton: usize,
    /// Largest 2,3-skeleton over the components left for later phases.
    pub carried_max_skeleton: usize,
    /// Biased edges whose component has a skeleton of at least `u` edges.
    pub unsuccessful: Vec<usize>,
    pub pieces: Vec<PieceRecord>,
    pub fixed_good: Vec<usize>,
    pub fixed_blackbox: Vec<usize>,
    pub fixed_isolated: Vec<usize>,
    pub idled: Vec<usize>,
    pub carried_over: Vec<usize>,
    pub invariant_violations: Vec<InvariantViolation>,
    pub rounds: usize,
    pub messages: u64,
}

impl PhaseTrace {
    pub fn invariant_ok(&self) -> bool {
        self.invariant_violations.is_empty()
    }
}

struct Analysis {
    components: Vec<ComponentRecord>,
    pieces: Vec<Piece>,
}

/// Components, diameters, skeletons and pieces over the whole residual
/// hypergraph.
fn analyze(snapshot: &PhaseSnapshot<'_>, params: &AlgoParams, biased: &[usize]) -> Analysis {
    let n_edges = snapshot.h.n_edges();
    let g = residual_graph(snapshot, n_edges).expect("snapshot holds every fact");
    let mut judge = Judge::new(snapshot, params, n_edges);
    let limit = params.small_diameter_limit();
    let mut components = Vec::new();
    let mut pieces = Vec::new();
    for group in components_12(&g, biased).groups {
        let skeleton = skeleton_23(&g, &group).expect("components are non-empty");
        let d = induced_diameter(&g, &group);
        let diameter = (d != usize::MAX).then_some(d);
        // an active edge with nothing undecided has no participant to act for it
        let small = d <= limit && group.iter().any(|&e| has_undecided(snapshot, e));
        if small {
            pieces.push(judge.build_piece(&g, &group).expect("snapshot holds every fact"));
        }
        components.push(ComponentRecord { edges: group, diameter, small, skeleton });
    }
    Analysis { components, pieces }
}

fn has_undecided(snapshot: &PhaseSnapshot<'_>, e: usize) -> bool {
    snapshot.h.edge(e).iter().any(|&v| snapshot.state.vertex(v).is_undecided())
}

fn recolor(
    cache: &mut HashMap<Piece, Assignment>,
    piece: &Piece,
    params: &AlgoParams,
    phase: usize,
) -> Result<Assignment, AlgoError> {
    if let Some(a) = cache.get(piece) {
        return Ok(a.clone());
    }
    let assignment = blackbox_recolor(piece, &params.blackbox).map_err(|source| AlgoError::BlackboxInfeasible {
        phase,
        core: piece.core().to_vec(),
        source,
    })?;
    debug_assert!(verify_piece_recolor(piece, &assignment));
    cache.insert(piece.clone(), assignment.clone());
    Ok(assignment)
}

/// One phase: temporary colors from `c`, `y` rounds of gossip, decisions,
/// recoloring of small pieces, idle transitions and the invariant audit.
///
/// A state without active edges is returned unchanged with an empty trace.
pub fn phase(
    h: &Hypergraph,
    state: &PartialColoringState,
    c: &[Color],
    params: &AlgoParams,
) -> Result<(PartialColoringState, PhaseTrace), AlgoError> {
    let index = state.phase_index() + 1;
    let active_at_start = state.active_edges().count();
    if active_at_start == 0 {
        return Ok((state.clone(), PhaseTrace { phase: index, ..PhaseTrace::default() }));
    }
    let n_edges = h.n_edges();
    let comm = CommGraph::residual(h, state);
    let mut engine = RoundEngine::new(&comm);
    engine.run_gossip(params.y);

    let snapshot = PhaseSnapshot { h, state, coloring: c };
    let cls = classify(h, state, c, &params.thresholds);
    let biased = cls.biased();
    let dangerous = cls.with_class(EdgeClass::DangerousNotBiased);
    let analysis = analyze(&snapshot, params, &biased);
    check_single_component(&analysis, &cls.edges, &comm, h, state, index)?;

    let participants: Vec<usize> =
        state.undecided_vertices().filter(|&v| comm.participates(UnitId::Vertex(v))).collect();
    let mut cache: HashMap<Piece, Assignment> = HashMap::new();
    let mut decisions: BTreeMap<usize, (Color, FixReason)> = BTreeMap::new();
    let mut used_pieces: Vec<Piece> = Vec::new();
    match params.mode {
        DecisionMode::Global => {
            for piece in &analysis.pieces {
                for (v, color) in recolor(&mut cache, piece, params, index)? {
                    decisions.insert(v, (color, FixReason::Blackbox));
                }
                used_pieces.push(piece.clone());
            }
            for &v in &participants {
                if !cls.is_bad(v) {
                    decisions.insert(v, (c[v], FixReason::Good));
                }
            }
        }
        DecisionMode::Local => {
            let incidence = h.incidence();
            for &v in &participants {
                let reader = ViewReader::new(snapshot, engine.view(UnitId::Vertex(v)), &incidence);
                let decision = decide(&reader, n_edges, v, params)
                    .map_err(|_| AlgoError::LocalityViolation { phase: index, vertex: v })?;
                if reader.denied() > 0 {
                    return Err(AlgoError::LocalityViolation { phase: index, vertex: v });
                }
                match decision {
                    LocalDecision::Good => {
                        decisions.insert(v, (c[v], FixReason::Good));
                    }
                    LocalDecision::Large => {}
                    LocalDecision::Piece(piece) => {
                        let assignment = recolor(&mut cache, &piece, params, index)?;
                        decisions.insert(v, (assignment[&v], FixReason::Blackbox));
                        if !used_pieces.contains(&piece) {
                            used_pieces.push(piece);
                        }
                    }
                }
            }
            used_pieces.sort_by(|a, b| a.core().cmp(b.core()));
        }
    }
    check_disjoint_pieces(&used_pieces, index)?;

    let mut next = state.clone();
    next.set_phase_index(index);
    let mut trace = PhaseTrace {
        phase: index,
        active_at_start,
        participating_vertices: participants.len(),
        biased,
        dangerous,
        rounds: engine.round(),
        messages: engine.messages(),
        ..PhaseTrace::default()
    };
    for (&v, &(color, reason)) in &decisions {
        next.fix_vertex(v, color);
        match reason {
            FixReason::Good => trace.fixed_good.push(v),
            FixReason::Blackbox => trace.fixed_blackbox.push(v),
            FixReason::Isolated => trace.fixed_isolated.push(v),
        }
    }
    for e in state.active_edges() {
        if next.fixed_part_bichromatic(h.edge(e)) {
            next.idle_edge(e);
            trace.idled.push(e);
        }
    }
    let incidence = h.incidence();
    let isolated: Vec<usize> =
        next.undecided_vertices().filter(|&v| incidence[v].iter().all(|&e| !next.is_active(e))).collect();
    for v in isolated {
        next.fix_vertex(v, c[v]);
        trace.fixed_isolated.push(v);
    }
    for (e, class) in cls.edges.iter().enumerate() {
        if *class == Some(EdgeClass::Safe) && next.is_active(e) {
            return Err(AlgoError::ObservationViolated { phase: index, edge: e });
        }
    }

    for comp in &analysis.components {
        if !comp.small {
            trace.carried_over.extend(&comp.edges);
            trace.carried_max_skeleton = trace.carried_max_skeleton.max(comp.skeleton.len());
        }
        trace.max_skeleton = trace.max_skeleton.max(comp.skeleton.len());
        if comp.skeleton.len() >= params.u {
            trace.unsuccessful.extend(&comp.edges);
        }
    }
    trace.carried_over.sort_unstable();
    trace.unsuccessful.sort_unstable();
    trace.components = analysis.components;
    trace.pieces = used_pieces
        .iter()
        .map(|p| PieceRecord {
            core: p.core().to_vec(),
            fringe: p.fringe().to_vec(),
            recolored: p.undecided_vertices(),
        })
        .collect();

    if let Err(violations) = check_invariant(h, &next, &params.thresholds) {
        trace.invariant_violations = violations.clone();
        return Err(AlgoError::InvariantViolation { phase: index, violations, trace: Box::new(trace) });
    }
    Ok((next, trace))
}

/// Every bad undecided vertex of a dangerous edge belongs to one biased
/// component.
fn check_single_component(
    analysis: &Analysis,
    classes: &[Option<EdgeClass>],
    comm: &CommGraph,
    h: &Hypergraph,
    state: &PartialColoringState,
    phase: usize,
) -> Result<(), AlgoError> {
    let mut owner = vec![None; h.n_edges()];
    for (i, comp) in analysis.components.iter().enumerate() {
        for &e in &comp.edges {
            owner[e] = Some(i);
        }
    }
    for (edge, class) in classes.iter().enumerate() {
        if *class != Some(EdgeClass::DangerousNotBiased) {
            continue;
        }
        let mut seen = None;
        for &v in h.edge(edge).iter().filter(|&&v| state.vertex(v).is_undecided()) {
            for &e in comm.neighbors(UnitId::Vertex(v)) {
                if let Some(i) = owner[e] {
                    if seen.is_some_and(|s| s != i) {
                        return Err(AlgoError::CrossComponentDanger { phase, edge });
                    }
                    seen = Some(i);
                }
            }
        }
    }
    Ok(())
}

fn check_disjoint_pieces(pieces: &[Piece], phase: usize) -> Result<(), AlgoError> {
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, piece) in pieces.iter().enumerate() {
        for v in piece.undecided_vertices() {
            if owner.insert(v, i).is_some_and(|j| j != i) {
                return Err(AlgoError::InconsistentPieces { phase, vertex: v });
            }
        }
    }
    Ok(())
}
