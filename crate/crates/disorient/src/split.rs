//! Repairing non-disorientable complexes by stellar edge subdivision.

use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex};
use crate::decide::{check_disorientable, Disorientation, Outcome};
use crate::spectral::betti_numbers;
use crate::{Error, Result};

/// One stellar edge subdivision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitStep {
    pub subdivided_edge: Simplex,
    pub new_vertex: usize,
    /// Top-dimensional simplices replaced by this step; each one is replaced
    /// by two children through the new vertex.
    pub affected_top_simplices: Vec<Simplex>,
}

/// Record of a repair run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SplitLog {
    #[serde(serialize_with = "serialize_steps")]
    pub steps: Vec<SplitStep>,
}

impl SplitLog {
    pub fn iterations(&self) -> usize {
        self.steps.len()
    }

    pub fn total_top_simplices_split(&self) -> usize {
        self.steps
            .iter()
            .map(|s| s.affected_top_simplices.len())
            .sum()
    }
}

fn serialize_steps<S: serde::Serializer>(
    steps: &[SplitStep],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Step {
        subdivided_edge: Vec<usize>,
        new_vertex: usize,
        affected_top_simplices: Vec<Vec<usize>>,
    }
    serializer.collect_seq(steps.iter().map(|s| {
        Step {
            subdivided_edge: s.subdivided_edge.vertices().to_vec(),
            new_vertex: s.new_vertex,
            affected_top_simplices: s
                .affected_top_simplices
                .iter()
                .map(|t| t.vertices().to_vec())
                .collect(),
        }
    }))
}

/// First propagation conflict in deterministic sweep order, as
/// `(A, B, shared_face)`: A is the simplex being processed when the conflict
/// appeared, B its already-assigned neighbor. `None` when the complex is
/// disorientable.
pub fn find_conflict(k: &SimplicialComplex) -> Result<Option<(Simplex, Simplex, Simplex)>> {
    let verdict = check_disorientable(k)?;
    let n = k.dimension();
    Ok(match verdict.outcome {
        Outcome::Disorientable(_) => None,
        Outcome::Obstructed(o) => {
            let dual = crate::dual::signed_down_dual(k)?;
            let label = dual.graph.edges[o.conflict_edge].label.clone();
            Some((
                k.simplex(n, o.conflict_from).clone(),
                k.simplex(n, o.conflict_to).clone(),
                label,
            ))
        }
    })
}

/// Stellar subdivision of the edge `e = {a, b}`: a new vertex m is placed on
/// the edge, and every simplex containing both endpoints is replaced by its
/// two copies through m (one drops a, the other drops b). Simplices not
/// containing the edge survive unchanged, and afterwards no simplex contains
/// both endpoints. The new vertex id follows the existing ids sequentially.
pub fn subdivide_edge(
    k: &SimplicialComplex,
    e: &Simplex,
) -> Result<(SimplicialComplex, SplitStep)> {
    if e.dim() != 1 || !k.contains(e) {
        return Err(Error::NotInComplex {
            simplex: e.to_string(),
        });
    }
    let a = e.vertices()[0];
    let b = e.vertices()[1];
    let m = k.max_vertex_id() + 1;

    let mut maximal = Vec::new();
    for s in k.maximal_simplices() {
        if s.contains(e) {
            let strip = |drop: usize| -> Vec<usize> {
                s.vertices()
                    .iter()
                    .copied()
                    .filter(|&v| v != drop)
                    .chain(std::iter::once(m))
                    .collect()
            };
            maximal.push(strip(a));
            maximal.push(strip(b));
        } else {
            maximal.push(s.vertices().to_vec());
        }
    }

    let n = k.dimension();
    let affected_top_simplices = k
        .simplices(n)
        .iter()
        .filter(|s| s.contains(e))
        .cloned()
        .collect();

    let next = SimplicialComplex::build(&maximal)?;
    let step = SplitStep {
        subdivided_edge: e.clone(),
        new_vertex: m,
        affected_top_simplices,
    };
    Ok((next, step))
}

/// Iteration budget the command line uses by default: ten times the number
/// of top simplices.
pub fn default_split_iterations(k: &SimplicialComplex) -> usize {
    10 * k.num_simplices(k.dimension()).max(1)
}

/// Repairs a complex into a disorientable one by repeated stellar edge
/// subdivision, returning the result, the log, and a disorientation of the
/// result.
///
/// Each round takes the first propagation conflict together with its
/// violating dual cycle and subdivides one edge of the complex. Splitting a
/// cycle simplex along an edge keeps both children on the cycle, so a split
/// that hits an odd number of cycle members flips the cycle's parity and
/// stops it violating; because such a split can also create or remove
/// violations elsewhere, the edge is picked by one-step lookahead over a
/// deterministic candidate list, minimizing the number of violating basis
/// cycles that remain (see `pick_subdivision_edge`). Hitting the iteration
/// cap is an error carrying the partial log.
pub fn make_disorientable(
    k: &SimplicialComplex,
    max_iterations: usize,
) -> Result<(SimplicialComplex, SplitLog, Disorientation)> {
    if max_iterations == 0 {
        return Err(Error::ZeroIterationBudget);
    }
    let mut current = k.clone();
    let mut log = SplitLog::default();
    loop {
        let dual = crate::dual::signed_down_dual(&current)?;
        let verdict = crate::decide::decide_on_dual(&current, &dual);
        match verdict.outcome {
            Outcome::Disorientable(d) => return Ok((current, log, d)),
            Outcome::Obstructed(_) if log.steps.len() >= max_iterations => {
                return Err(Error::SplitIterationCap {
                    cap: max_iterations,
                    log: Box::new(log),
                });
            }
            Outcome::Obstructed(o) => {
                let edge = pick_subdivision_edge(&current, &dual, &o);
                let (next, step) = subdivide_edge(&current, &edge)?;
                log.steps.push(step);
                current = next;
            }
        }
    }
}

/// The edge to subdivide for a conflict `(A, B, rho)` lying on a violating
/// dual cycle.
///
/// Subdividing an edge contained in a cycle simplex replaces that simplex by
/// two children that both stay on the cycle, lengthening it and flipping its
/// parity when the count of split members is odd — but it can also create or
/// remove violations on other cycles through the same simplices. So every
/// candidate edge is scored by actually performing the subdivision and
/// counting the violating cycles that remain in the fundamental basis of the
/// result; the candidate with the fewest wins. Ties go to the earliest
/// candidate in a fixed precedence order, which keeps the choice
/// deterministic and prefers the structurally meaningful moves:
///
/// 1. the edge joining the apex vertices of A and B (the vertices opposite
///    rho), which splits the cycle away from the conflict pair;
/// 2. the edge of A joining its apex to the vertex omitted by A's other
///    cycle face, which splits A itself while keeping rho intact in one
///    child and the other cycle face intact in the other;
/// 3. the edges of A joining its apex to each vertex of rho, in vertex
///    order;
/// 4. every edge of A, in lexicographic order;
/// 5. every edge of every cycle simplex, in cycle order then lexicographic
///    order.
fn pick_subdivision_edge(
    k: &SimplicialComplex,
    dual: &crate::dual::SignedDualGraph,
    o: &crate::decide::Obstruction,
) -> Simplex {
    let n = k.dimension();
    let a = k.simplex(n, o.conflict_from);
    let b = k.simplex(n, o.conflict_to);
    let rho = &dual.graph.edges[o.conflict_edge].label;
    let apex = |s: &Simplex| -> usize {
        s.vertices()
            .iter()
            .copied()
            .find(|&v| !rho.contains_vertex(v))
            .expect("the shared face omits one vertex of each coface")
    };
    let apex_a = apex(a);
    let apex_b = apex(b);

    let edges_of = |s: &Simplex| -> Vec<Simplex> {
        let vs = s.vertices();
        let mut out = Vec::new();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                out.push(Simplex::new(vec![vs[i], vs[j]]).expect("two distinct vertices"));
            }
        }
        out
    };

    let mut candidates: Vec<Simplex> = Vec::new();
    let push = |c: Simplex, list: &mut Vec<Simplex>| {
        if !list.contains(&c) {
            list.push(c);
        }
    };
    push(
        Simplex::new(vec![apex_a, apex_b]).expect("distinct conflict simplices, distinct apexes"),
        &mut candidates,
    );
    // The cycle starts at A; its first edge is A's other cycle adjacency.
    // At a branching face that adjacency may carry rho again, in which case
    // there is no second face to preserve and the candidate is skipped.
    let sigma = &dual.graph.edges[o.cycle.edges[0]].label;
    if sigma != rho {
        let omitted = a
            .vertices()
            .iter()
            .copied()
            .find(|&v| !sigma.contains_vertex(v))
            .expect("a face omits one vertex");
        push(
            Simplex::new(vec![apex_a, omitted]).expect("distinct faces omit distinct vertices"),
            &mut candidates,
        );
    }
    for &u in rho.vertices() {
        push(
            Simplex::new(vec![apex_a, u]).expect("apex lies outside rho"),
            &mut candidates,
        );
    }
    for e in edges_of(a) {
        push(e, &mut candidates);
    }
    for &m in &o.cycle.dual_vertices {
        for e in edges_of(k.simplex(n, m)) {
            push(e, &mut candidates);
        }
    }

    let violations_after = |e: &Simplex| -> usize {
        let (next, _) = subdivide_edge(k, e).expect("candidate is an edge of the complex");
        let dual = crate::dual::signed_down_dual(&next).expect("subdivision keeps validity");
        crate::dual::fundamental_cycles(&dual)
            .iter()
            .filter(|c| c.violating())
            .count()
    };
    let mut best: Option<(usize, &Simplex)> = None;
    for e in candidates.iter().filter(|e| k.contains(e)) {
        let count = violations_after(e);
        if best.is_none_or(|(c, _)| count < c) {
            best = Some((count, e));
            if count == 0 {
                break;
            }
        }
    }
    best.expect("edges of A are edges of the complex").1.clone()
}

/// Whether two complexes have identical Betti numbers in every dimension.
pub fn verify_topology_preserved(
    before: &SimplicialComplex,
    after: &SimplicialComplex,
) -> Result<bool> {
    Ok(betti_numbers(before)? == betti_numbers(after)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::{brute_force_disorientable, disorientation_is_valid};
    use crate::dual::signed_down_dual;

    fn build(maximal: &[&[usize]]) -> SimplicialComplex {
        let owned: Vec<Vec<usize>> = maximal.iter().map(|s| s.to_vec()).collect();
        SimplicialComplex::build(&owned).unwrap()
    }

    fn simplex(vs: &[usize]) -> Simplex {
        Simplex::new(vs.to_vec()).unwrap()
    }

    #[test]
    fn subdividing_a_triangle_edge_gives_two_triangles() {
        let k = build(&[&[0, 1, 2]]);
        let (next, step) = subdivide_edge(&k, &simplex(&[0, 1])).unwrap();
        assert_eq!(step.new_vertex, 3);
        assert_eq!(step.affected_top_simplices, vec![simplex(&[0, 1, 2])]);
        assert_eq!(next.num_simplices(2), 2);
        assert!(next.contains(&simplex(&[0, 2, 3])));
        assert!(next.contains(&simplex(&[1, 2, 3])));
        assert!(next.contains(&simplex(&[2, 3])));
        assert!(!next.contains(&simplex(&[0, 1])));
        next.validate().unwrap();
    }

    #[test]
    fn subdividing_a_bare_edge_gives_a_path() {
        let k = build(&[&[0, 1]]);
        let (next, step) = subdivide_edge(&k, &simplex(&[0, 1])).unwrap();
        assert_eq!(step.new_vertex, 2);
        assert!(step.affected_top_simplices.contains(&simplex(&[0, 1])));
        assert_eq!(next.num_simplices(1), 2);
        assert!(next.contains(&simplex(&[0, 2])));
        assert!(next.contains(&simplex(&[1, 2])));
    }

    #[test]
    fn subdivision_splits_every_coface() {
        let k = build(&[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]]);
        let (next, step) = subdivide_edge(&k, &simplex(&[0, 1])).unwrap();
        assert_eq!(step.affected_top_simplices.len(), 3);
        assert_eq!(next.num_simplices(2), 6);
        // No simplex retains both endpoints of the subdivided edge.
        for d in 1..=next.dimension() {
            for s in next.simplices(d) {
                assert!(!(s.contains_vertex(0) && s.contains_vertex(1)), "{s}");
            }
        }
    }

    #[test]
    fn subdivide_rejects_missing_edges() {
        let k = build(&[&[0, 1, 2]]);
        assert!(subdivide_edge(&k, &simplex(&[0, 3])).is_err());
        assert!(subdivide_edge(&k, &simplex(&[0, 1, 2])).is_err());
    }

    #[test]
    fn find_conflict_on_disorientable_complex_is_none() {
        let k = build(&[&[0, 1, 2], &[1, 2, 3]]);
        assert!(find_conflict(&k).unwrap().is_none());
    }

    #[test]
    fn find_conflict_reports_adjacent_pair_with_shared_face() {
        let k = build(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let (a, b, rho) = find_conflict(&k).unwrap().expect("obstructed");
        assert!(a.contains(&rho) && b.contains(&rho));
        assert_eq!(rho.dim(), 1);
        assert_ne!(a, b);
    }

    #[test]
    fn odd_cycle_graph_repairs_in_one_step() {
        let k = build(&[&[0, 1], &[1, 2], &[0, 2]]);
        let (fixed, log, d) = make_disorientable(&k, 30).unwrap();
        assert_eq!(log.iterations(), 1);
        assert_eq!(fixed.num_simplices(1), 4);
        let dual = signed_down_dual(&fixed).unwrap();
        assert!(disorientation_is_valid(&dual, &d));
        assert!(verify_topology_preserved(&k, &fixed).unwrap());
    }

    #[test]
    fn tetrahedron_boundary_repair_splits_all_four_triangles() {
        let k = build(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let (fixed, log, d) = make_disorientable(&k, 40).unwrap();
        assert_eq!(log.iterations(), 2);
        assert_eq!(fixed.num_simplices(2), 8);
        let affected: std::collections::BTreeSet<Simplex> = log
            .steps
            .iter()
            .flat_map(|s| s.affected_top_simplices.iter().cloned())
            .collect();
        for t in k.simplices(2) {
            assert!(affected.contains(t), "original triangle {t} must split");
        }
        // In a disorientable closed triangulated surface every vertex has an
        // even number of incident triangles.
        for &v in fixed.simplices(0).iter().flat_map(|s| s.vertices()) {
            let deg = fixed
                .simplices(2)
                .iter()
                .filter(|t| t.contains_vertex(v))
                .count();
            assert_eq!(deg % 2, 0, "vertex {v} has odd triangle degree {deg}");
        }
        let dual = signed_down_dual(&fixed).unwrap();
        assert!(disorientation_is_valid(&dual, &d));
        assert!(verify_topology_preserved(&k, &fixed).unwrap());
        assert!(brute_force_disorientable(&fixed, 20).unwrap().is_some());
    }

    #[test]
    fn iteration_cap_is_an_error_with_log() {
        let k = build(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        match make_disorientable(&k, 1) {
            Err(Error::SplitIterationCap { cap: 1, log }) => {
                assert_eq!(log.iterations(), 1);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
        assert!(matches!(
            make_disorientable(&k, 0),
            Err(Error::ZeroIterationBudget)
        ));
    }

    #[test]
    fn subdividing_one_cycle_member_extends_the_cycle() {
        // A hexagonal cycle graph: its line graph is a six-cycle. Subdividing
        // one edge of the graph lengthens the dual cycle by one and keeps it
        // untwisted.
        let k = build(&[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]]);
        let dual = signed_down_dual(&k).unwrap();
        let before = crate::dual::fundamental_cycles(&dual);
        assert_eq!(before.len(), 1);
        assert_eq!(before[0].length, 6);
        let (next, _) = subdivide_edge(&k, &simplex(&[0, 1])).unwrap();
        let dual = signed_down_dual(&next).unwrap();
        let after = crate::dual::fundamental_cycles(&dual);
        assert_eq!(after.len(), 1);
        assert_eq!(after[0].length, 7);
        assert_eq!(after[0].twisted, before[0].twisted);
    }
}
