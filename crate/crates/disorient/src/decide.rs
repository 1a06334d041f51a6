//! Deciding disorientability with certificates in both directions.

use std::collections::VecDeque;

use crate::complex::{BranchingReport, Sign, SimplicialComplex};
use crate::dual::{
    signed_down_dual, signed_down_dual_oriented, CycleClassification, SignedDualGraph,
};
use crate::{Error, Result};

/// Default cap on top simplices for the exhaustive oracle.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 20;

/// A valid disorientation: one sign per top simplex (canonical order, and
/// relative to the reference orientations) under which every shared
/// codimension-one face receives the same induced orientation from both
/// sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disorientation {
    pub signs: Vec<Sign>,
}

/// Why the complex is not disorientable: a fundamental cycle whose parity
/// contradicts its twist, plus the edge at which propagation failed. The
/// cycle is the tree path between the conflict edge's endpoints closed by
/// that edge, and is always simple-odd or twisted-even, never exempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub cycle: CycleClassification,
    /// Index of the conflicting edge in the signed dual.
    pub conflict_edge: usize,
    /// Dual vertex being processed when the conflict appeared.
    pub conflict_from: usize,
    /// Its already-assigned neighbor across the conflict edge.
    pub conflict_to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Disorientable(Disorientation),
    Obstructed(Obstruction),
}

/// Decision result with diagnostics.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Connected components of the top-level down-dual.
    pub dual_components: usize,
    pub branching: BranchingReport,
}

impl Verdict {
    pub fn is_disorientable(&self) -> bool {
        matches!(self.outcome, Outcome::Disorientable(_))
    }

    pub fn disorientation(&self) -> Option<&Disorientation> {
        match &self.outcome {
            Outcome::Disorientable(d) => Some(d),
            Outcome::Obstructed(_) => None,
        }
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match &self.outcome {
            Outcome::Obstructed(o) => Some(o),
            Outcome::Disorientable(_) => None,
        }
    }
}

/// Decides disorientability by sign propagation over the signed down-dual.
///
/// A breadth-first sweep grows from the lowest-index top simplex of each
/// dual component, forcing `assignment(v) = assignment(u) * (-w)` across
/// each edge. The first edge whose forced value contradicts an earlier
/// assignment yields the obstruction certificate; if no edge does, the
/// assignment is a disorientation. The sweep order is deterministic.
pub fn check_disorientable(k: &SimplicialComplex) -> Result<Verdict> {
    let dual = signed_down_dual(k)?;
    Ok(decide_on_dual(k, &dual))
}

/// Same decision under explicit reference orientations. The verdict is
/// invariant under reference flips; only the certificate signs move.
pub fn check_disorientable_oriented(
    k: &SimplicialComplex,
    reference_signs: &[Sign],
) -> Result<Verdict> {
    let dual = signed_down_dual_oriented(k, reference_signs)?;
    Ok(decide_on_dual(k, &dual))
}

/// Decides disorientability from the fundamental cycle basis alone: the
/// complex is disorientable exactly when no basis cycle is simple with odd
/// length or twisted with even length. Independent of (and always agreeing
/// with) the propagation decision, since a consistent assignment exists
/// precisely when every cycle of the signed dual balances and the basis
/// cycles generate them all.
pub fn disorientable_by_cycle_parity(dual: &SignedDualGraph) -> bool {
    crate::dual::fundamental_cycles(dual)
        .iter()
        .all(|c| !c.violating())
}

pub(crate) fn decide_on_dual(k: &SimplicialComplex, dual: &SignedDualGraph) -> Verdict {
    let g = &dual.graph;
    let mut assignment: Vec<Option<Sign>> = vec![None; g.vertex_count];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; g.vertex_count];
    let mut depth = vec![0usize; g.vertex_count];
    let mut components = 0usize;

    for root in 0..g.vertex_count {
        if assignment[root].is_some() {
            continue;
        }
        components += 1;
        assignment[root] = Some(Sign::Plus);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let xu = assignment[u].expect("queued vertices are assigned");
            for &(v, ei) in g.neighbors(u) {
                let forced = xu * dual.constraint(ei);
                match assignment[v] {
                    None => {
                        assignment[v] = Some(forced);
                        parent[v] = Some((u, ei));
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                    Some(xv) if xv != forced => {
                        let cycle = conflict_cycle(dual, &parent, &depth, u, v, ei);
                        return Verdict {
                            outcome: Outcome::Obstructed(Obstruction {
                                cycle,
                                conflict_edge: ei,
                                conflict_from: u,
                                conflict_to: v,
                            }),
                            dual_components: g.component_count(),
                            branching: k.branching_report(),
                        };
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let signs = assignment
        .into_iter()
        .map(|s| s.expect("sweep assigns every dual vertex"))
        .collect();
    Verdict {
        outcome: Outcome::Disorientable(Disorientation { signs }),
        dual_components: components,
        branching: k.branching_report(),
    }
}

fn conflict_cycle(
    dual: &SignedDualGraph,
    parent: &[Option<(usize, usize)>],
    depth: &[usize],
    u: usize,
    v: usize,
    ei: usize,
) -> CycleClassification {
    let mut up_vertices = vec![u];
    let mut up_edges = Vec::new();
    let mut down_vertices = vec![v];
    let mut down_edges = Vec::new();
    let (mut a, mut b) = (u, v);
    while depth[a] > depth[b] {
        let (p, e) = parent[a].expect("deeper vertex has a parent");
        up_edges.push(e);
        a = p;
        up_vertices.push(a);
    }
    while depth[b] > depth[a] {
        let (p, e) = parent[b].expect("deeper vertex has a parent");
        down_edges.push(e);
        b = p;
        down_vertices.push(b);
    }
    while a != b {
        let (pa, ea) = parent[a].expect("vertices in one tree meet");
        let (pb, eb) = parent[b].expect("vertices in one tree meet");
        up_edges.push(ea);
        a = pa;
        up_vertices.push(a);
        down_edges.push(eb);
        b = pb;
        down_vertices.push(b);
    }
    let mut vertices = up_vertices;
    let mut edges = up_edges;
    down_edges.reverse();
    down_vertices.pop();
    down_vertices.reverse();
    vertices.extend(down_vertices);
    edges.extend(down_edges);
    edges.push(ei);
    CycleClassification::classify(dual, vertices, edges)
}

/// Parity test over a cycle basis: disorientable exactly when every
/// non-exempt cycle is even if simple and odd if twisted.
pub fn cycle_parity_verdict(cycles: &[CycleClassification]) -> bool {
    cycles.iter().all(|c| c.branching_exempt || !c.violating())
}

/// Splits the top simplices into the positive and negative classes of a
/// disorientation (canonical indices, ascending). Adjacent simplices whose
/// reference orientations already induce the same face orientation share a
/// class, so the classes are not a proper coloring of the dual graph in
/// general.
pub fn two_coloring(d: &Disorientation) -> (Vec<usize>, Vec<usize>) {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (i, s) in d.signs.iter().enumerate() {
        match s {
            Sign::Plus => plus.push(i),
            Sign::Minus => minus.push(i),
        }
    }
    (plus, minus)
}

/// Outcome of the combinatorial bipartiteness test on a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteCheck {
    /// Vertex ids per part, ascending, when the graph is bipartite.
    pub partition: Option<(Vec<usize>, Vec<usize>)>,
    /// Vertex ids of an odd cycle otherwise.
    pub odd_cycle: Option<Vec<usize>>,
}

impl BipartiteCheck {
    pub fn is_bipartite(&self) -> bool {
        self.partition.is_some()
    }
}

/// Two-colors the vertices of a graph by breadth-first propagation, every
/// component separately. Returns the partition or an odd-cycle witness.
/// Accepts dimension 0 (edgeless) complexes, which are trivially bipartite.
pub fn is_bipartite_combinatorial(k: &SimplicialComplex) -> Result<BipartiteCheck> {
    if k.dimension() > 1 {
        return Err(Error::NotAGraph { got: k.dimension() });
    }
    let n0 = k.vertex_count();
    let mut color: Vec<Option<bool>> = vec![None; n0];
    let mut parent: Vec<Option<usize>> = vec![None; n0];
    let mut depth = vec![0usize; n0];

    for root in 0..n0 {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued vertices are colored");
            if k.dimension() == 0 {
                continue;
            }
            for &e in k.coface_indices(0, u) {
                for &v in k.face_indices(1, e) {
                    if v == u {
                        continue;
                    }
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            parent[v] = Some(u);
                            depth[v] = depth[u] + 1;
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => {
                            return Ok(BipartiteCheck {
                                partition: None,
                                odd_cycle: Some(odd_cycle_ids(k, &parent, &depth, u, v)),
                            });
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }

    let mut part0 = Vec::new();
    let mut part1 = Vec::new();
    for (i, c) in color.iter().enumerate() {
        let id = k.simplices(0)[i].vertices()[0];
        if c.expect("all vertices colored") {
            part1.push(id);
        } else {
            part0.push(id);
        }
    }
    Ok(BipartiteCheck {
        partition: Some((part0, part1)),
        odd_cycle: None,
    })
}

fn odd_cycle_ids(
    k: &SimplicialComplex,
    parent: &[Option<usize>],
    depth: &[usize],
    u: usize,
    v: usize,
) -> Vec<usize> {
    let mut up = vec![u];
    let mut down = vec![v];
    let (mut a, mut b) = (u, v);
    while depth[a] > depth[b] {
        a = parent[a].expect("deeper vertex has a parent");
        up.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b].expect("deeper vertex has a parent");
        down.push(b);
    }
    while a != b {
        a = parent[a].expect("vertices in one tree meet");
        b = parent[b].expect("vertices in one tree meet");
        up.push(a);
        down.push(b);
    }
    down.pop();
    down.reverse();
    up.extend(down);
    up.iter()
        .map(|&i| k.simplices(0)[i].vertices()[0])
        .collect()
}

/// Exhaustive oracle: tries all 2^m sign assignments over the top simplices
/// and returns the lexicographically first disorientation (+1 before -1,
/// earlier simplices most significant), or `None` when no assignment works.
/// Errors when m exceeds `cap`.
pub fn brute_force_disorientable(
    k: &SimplicialComplex,
    cap: usize,
) -> Result<Option<Disorientation>> {
    let dual = signed_down_dual(k)?;
    let m = dual.graph.vertex_count;
    // 62 keeps the mask arithmetic inside u64 regardless of the caller's cap.
    let cap = cap.min(62);
    if m > cap {
        return Err(Error::BruteForceCapExceeded { count: m, cap });
    }
    let constraints: Vec<(usize, usize, bool)> = dual
        .graph
        .edges
        .iter()
        .enumerate()
        .map(|(ei, e)| (e.u, e.v, dual.constraint(ei) == Sign::Minus))
        .collect();
    for mask in 0u64..(1u64 << m) {
        let negative = |i: usize| mask >> (m - 1 - i) & 1 == 1;
        let ok = constraints
            .iter()
            .all(|&(u, v, wants_flip)| (negative(u) != negative(v)) == wants_flip);
        if ok {
            let signs = (0..m)
                .map(|i| if negative(i) { Sign::Minus } else { Sign::Plus })
                .collect();
            return Ok(Some(Disorientation { signs }));
        }
    }
    Ok(None)
}

/// Checks a claimed disorientation against every dual edge constraint.
pub fn disorientation_is_valid(dual: &SignedDualGraph, d: &Disorientation) -> bool {
    d.signs.len() == dual.graph.vertex_count
        && dual
            .graph
            .edges
            .iter()
            .enumerate()
            .all(|(ei, e)| d.signs[e.u] * d.signs[e.v] == dual.constraint(ei))
}
