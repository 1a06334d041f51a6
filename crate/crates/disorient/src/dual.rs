//! Dual graphs of a simplicial complex, the coherence signs of the top-level
//! down-dual, and fundamental cycle classification.

use std::collections::VecDeque;

use crate::complex::{induced_orientation, OrientedSimplex, Sign, Simplex, SimplicialComplex};
use crate::{Error, Result};

/// Edge of a dual graph between d-simplices `u < v` (canonical indices),
/// labeled with the simplex that witnesses the adjacency: the shared
/// codimension-one face in a down-dual, the shared coface in an up-dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualEdge {
    pub u: usize,
    pub v: usize,
    pub label: Simplex,
}

impl DualEdge {
    pub fn other(&self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A dual graph: vertices are the d-simplices of a complex in canonical
/// order, edges witness shared faces or shared cofaces. Two distinct
/// d-simplices share at most one codimension-one face and at most one
/// coface, so the graph is simple.
#[derive(Clone, Debug)]
pub struct DualGraph {
    /// Dimension of the simplices serving as dual vertices.
    pub dim: usize,
    pub vertex_count: usize,
    /// Sorted by (u, v).
    pub edges: Vec<DualEdge>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl DualGraph {
    fn from_edges(dim: usize, vertex_count: usize, mut edges: Vec<DualEdge>) -> Self {
        edges.sort_by_key(|e| (e.u, e.v));
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (i, e) in edges.iter().enumerate() {
            adjacency[e.u].push((e.v, i));
            adjacency[e.v].push((e.u, i));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        DualGraph {
            dim,
            vertex_count,
            edges,
            adjacency,
        }
    }

    /// Neighbors of dual vertex `u` as (neighbor, edge index), ascending.
    pub fn neighbors(&self, u: usize) -> &[(usize, usize)] {
        &self.adjacency[u]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.vertex_count];
        let mut components = 0;
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// The dual graph as a 1-dimensional complex (isolated dual vertices
    /// become isolated 0-simplices), for reuse of graph algorithms.
    pub fn as_graph_complex(&self) -> Result<SimplicialComplex> {
        let mut maximal: Vec<Vec<usize>> = self.edges.iter().map(|e| vec![e.u, e.v]).collect();
        let mut incident = vec![false; self.vertex_count];
        for e in &self.edges {
            incident[e.u] = true;
            incident[e.v] = true;
        }
        for (v, covered) in incident.iter().enumerate() {
            if !covered {
                maximal.push(vec![v]);
            }
        }
        SimplicialComplex::build(&maximal)
    }
}

/// Down-dual in dimension d: vertices are the d-simplices, edges join pairs
/// sharing a (d-1)-face, labeled with that face.
pub fn down_dual(k: &SimplicialComplex, d: usize) -> Result<DualGraph> {
    let n = k.dimension();
    if d == 0 || d > n {
        return Err(Error::DimensionOutOfRange { d, n });
    }
    let mut edges = Vec::new();
    for (fi, face) in k.simplices(d - 1).iter().enumerate() {
        let cofaces = k.coface_indices(d - 1, fi);
        for (a, &u) in cofaces.iter().enumerate() {
            for &v in &cofaces[a + 1..] {
                edges.push(DualEdge {
                    u,
                    v,
                    label: face.clone(),
                });
            }
        }
    }
    Ok(DualGraph::from_edges(d, k.num_simplices(d), edges))
}

/// Up-dual in dimension d: vertices are the d-simplices, edges join pairs
/// sharing a (d+1)-coface, labeled with that coface.
pub fn up_dual(k: &SimplicialComplex, d: usize) -> Result<DualGraph> {
    let n = k.dimension();
    if d >= n {
        return Err(Error::DimensionOutOfRange { d, n });
    }
    let mut edges = Vec::new();
    for (ci, coface) in k.simplices(d + 1).iter().enumerate() {
        let faces = k.face_indices(d + 1, ci);
        let mut pair: Vec<usize> = faces.to_vec();
        pair.sort_unstable();
        for (a, &u) in pair.iter().enumerate() {
            for &v in &pair[a + 1..] {
                edges.push(DualEdge {
                    u,
                    v,
                    label: coface.clone(),
                });
            }
        }
    }
    Ok(DualGraph::from_edges(d, k.num_simplices(d), edges))
}

/// Line graph of a graph: the down-dual of its edges. Errors when the
/// complex is not 1-dimensional.
pub fn line_graph(k: &SimplicialComplex) -> Result<DualGraph> {
    if k.dimension() != 1 {
        return Err(Error::NotAGraph { got: k.dimension() });
    }
    down_dual(k, 1)
}

/// Whether the d-simplices are connected through shared (d+1)-cofaces.
pub fn is_d_connected(k: &SimplicialComplex, d: usize) -> Result<bool> {
    Ok(up_dual(k, d)?.is_connected())
}

/// The top-level down-dual with a coherence sign per edge.
///
/// For an edge between top simplices u and v sharing the face rho, the sign
/// is +1 when the two reference orientations induce opposite orientations on
/// rho and -1 when they induce the same one. A disorientation must therefore
/// satisfy `assignment(u) * assignment(v) = -w(u, v)` across every edge.
#[derive(Clone, Debug)]
pub struct SignedDualGraph {
    pub graph: DualGraph,
    /// Coherence sign per edge, parallel to `graph.edges`.
    pub weights: Vec<Sign>,
}

impl SignedDualGraph {
    pub fn weight(&self, edge: usize) -> Sign {
        self.weights[edge]
    }

    /// The propagation constraint of an edge: the required product of the
    /// endpoint assignments, `-w`.
    pub fn constraint(&self, edge: usize) -> Sign {
        -self.weights[edge]
    }

    /// Product of the coherence signs along a set of edges.
    pub fn weight_product(&self, edges: &[usize]) -> Sign {
        edges
            .iter()
            .fold(Sign::Plus, |acc, &e| acc * self.weights[e])
    }
}

/// Signed top-level down-dual using the canonical (all positive) reference
/// orientations.
pub fn signed_down_dual(k: &SimplicialComplex) -> Result<SignedDualGraph> {
    let n = k.dimension();
    if n == 0 {
        return Err(Error::ZeroDimensionalComplex);
    }
    let refs = vec![Sign::Plus; k.num_simplices(n)];
    signed_down_dual_oriented(k, &refs)
}

/// Signed top-level down-dual with explicit reference orientation signs, one
/// per top simplex in canonical order. Flipping a reference sign flips the
/// coherence sign of every incident edge; the verdicts downstream are
/// invariant under such switchings.
pub fn signed_down_dual_oriented(
    k: &SimplicialComplex,
    reference_signs: &[Sign],
) -> Result<SignedDualGraph> {
    let n = k.dimension();
    if n == 0 {
        return Err(Error::ZeroDimensionalComplex);
    }
    if reference_signs.len() != k.num_simplices(n) {
        return Err(Error::OrientationCountMismatch {
            got: reference_signs.len(),
            expected: k.num_simplices(n),
        });
    }
    let graph = down_dual(k, n)?;
    let weights = graph
        .edges
        .iter()
        .map(|e| {
            let su = induced_face_sign(k, n, e.u, reference_signs[e.u], &e.label);
            let sv = induced_face_sign(k, n, e.v, reference_signs[e.v], &e.label);
            -(su * sv)
        })
        .collect();
    Ok(SignedDualGraph { graph, weights })
}

fn induced_face_sign(
    k: &SimplicialComplex,
    n: usize,
    simplex_index: usize,
    reference: Sign,
    face: &Simplex,
) -> Sign {
    let oriented = OrientedSimplex::new(k.simplex(n, simplex_index).clone(), reference);
    induced_orientation(&oriented, face)
        .expect("dual edge labels are faces of both endpoints")
        .sign
}

/// A cycle of the signed down-dual together with its classification.
///
/// `twisted` records a negative coherence-sign product. `branching_exempt`
/// marks cycles whose edges all carry one face label; such cycles live in
/// the coface clique of a branching face and never obstruct a
/// disorientation. `violating` is the balance test: a cycle blocks
/// disorientability exactly when it is simple of odd length or twisted of
/// even length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClassification {
    /// Dual vertices in cycle order; `dual_vertices[i]` connects to
    /// `dual_vertices[i+1]` by `edges[i]`, closing back to the start.
    pub dual_vertices: Vec<usize>,
    /// Edge indices into the signed dual, in cycle order.
    pub edges: Vec<usize>,
    pub length: usize,
    pub twisted: bool,
    pub branching_exempt: bool,
}

impl CycleClassification {
    pub fn classify(dual: &SignedDualGraph, dual_vertices: Vec<usize>, edges: Vec<usize>) -> Self {
        let twisted = dual.weight_product(&edges) == Sign::Minus;
        let first_label = &dual.graph.edges[edges[0]].label;
        let branching_exempt = edges
            .iter()
            .all(|&e| dual.graph.edges[e].label == *first_label);
        let length = edges.len();
        CycleClassification {
            dual_vertices,
            edges,
            length,
            twisted,
            branching_exempt,
        }
    }

    /// True when the cycle blocks every disorientation: simple of odd length
    /// or twisted of even length.
    pub fn violating(&self) -> bool {
        (self.length % 2 == 1) != self.twisted
    }
}

/// Fundamental cycle basis of the signed down-dual.
///
/// A breadth-first spanning forest is grown from the lowest-index simplex of
/// each component, visiting neighbors in ascending index order; every
/// non-tree edge, taken in ascending edge order, closes one basis cycle
/// through the tree. The construction is deterministic.
pub fn fundamental_cycles(dual: &SignedDualGraph) -> Vec<CycleClassification> {
    let g = &dual.graph;
    let forest = SpanningForest::grow(g);
    let mut cycles = Vec::new();
    for (ei, edge) in g.edges.iter().enumerate() {
        if forest.tree_edges[ei] {
            continue;
        }
        let (vertices, edges) = forest.cycle_through(g, edge.u, edge.v, ei);
        cycles.push(CycleClassification::classify(dual, vertices, edges));
    }
    cycles
}

/// Breadth-first spanning forest with deterministic traversal order.
pub(crate) struct SpanningForest {
    /// (parent vertex, connecting edge) per vertex; roots have none.
    pub parent: Vec<Option<(usize, usize)>>,
    pub depth: Vec<usize>,
    pub tree_edges: Vec<bool>,
}

impl SpanningForest {
    pub fn grow(g: &DualGraph) -> Self {
        let n = g.vertex_count;
        let mut parent = vec![None; n];
        let mut depth = vec![0usize; n];
        let mut visited = vec![false; n];
        let mut tree_edges = vec![false; g.edge_count()];
        for root in 0..n {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &(v, ei) in g.neighbors(u) {
                    if !visited[v] {
                        visited[v] = true;
                        parent[v] = Some((u, ei));
                        depth[v] = depth[u] + 1;
                        tree_edges[ei] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        SpanningForest {
            parent,
            depth,
            tree_edges,
        }
    }

    /// The cycle closed by non-tree edge `ei = (u, v)`: the tree path from u
    /// up to the lowest common ancestor, down to v, then the edge back to u.
    /// Returns (vertices in cycle order starting at u, edges in cycle order).
    pub fn cycle_through(
        &self,
        g: &DualGraph,
        u: usize,
        v: usize,
        ei: usize,
    ) -> (Vec<usize>, Vec<usize>) {
        let mut up_vertices = vec![u];
        let mut up_edges = Vec::new();
        let mut down_vertices = vec![v];
        let mut down_edges = Vec::new();
        let (mut a, mut b) = (u, v);
        while self.depth[a] > self.depth[b] {
            let (p, e) = self.parent[a].expect("deeper vertex has a parent");
            up_edges.push(e);
            a = p;
            up_vertices.push(a);
        }
        while self.depth[b] > self.depth[a] {
            let (p, e) = self.parent[b].expect("deeper vertex has a parent");
            down_edges.push(e);
            b = p;
            down_vertices.push(b);
        }
        while a != b {
            let (pa, ea) = self.parent[a].expect("distinct vertices below the root");
            let (pb, eb) = self.parent[b].expect("distinct vertices below the root");
            up_edges.push(ea);
            a = pa;
            up_vertices.push(a);
            down_edges.push(eb);
            b = pb;
            down_vertices.push(b);
        }
        // a == b is the meeting point; walk u -> lca -> v -> (edge) -> u.
        let mut vertices = up_vertices;
        let mut edges = up_edges;
        down_edges.reverse();
        down_vertices.pop();
        down_vertices.reverse();
        vertices.extend(down_vertices);
        edges.extend(down_edges);
        edges.push(ei);
        debug_assert_eq!(vertices.len(), edges.len());
        debug_assert!(g.edges[ei].u == u.min(v) && g.edges[ei].v == u.max(v));
        (vertices, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(maximal: &[&[usize]]) -> SimplicialComplex {
        let owned: Vec<Vec<usize>> = maximal.iter().map(|s| s.to_vec()).collect();
        SimplicialComplex::build(&owned).unwrap()
    }

    fn simplex(vs: &[usize]) -> Simplex {
        Simplex::new(vs.to_vec()).unwrap()
    }

    fn edge_between<'a>(
        g: &'a DualGraph,
        s: &SimplicialComplex,
        a: &[usize],
        b: &[usize],
    ) -> &'a DualEdge {
        let ia = s.index_of(&simplex(a)).unwrap();
        let ib = s.index_of(&simplex(b)).unwrap();
        let (u, v) = (ia.min(ib), ia.max(ib));
        g.edges
            .iter()
            .find(|e| e.u == u && e.v == v)
            .expect("edge present")
    }

    #[test]
    fn tetrahedron_boundary_down_dual_is_complete() {
        let k = build(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let g = down_dual(&k, 2).unwrap();
        assert_eq!(g.vertex_count, 4);
        assert_eq!(g.edge_count(), 6);
        assert!((0..4).all(|u| g.degree(u) == 3));
    }

    #[test]
    fn strip_down_dual_is_a_path() {
        let k = build(&[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4]]);
        let g = down_dual(&k, 2).unwrap();
        assert_eq!(g.vertex_count, 3);
        assert_eq!(g.edge_count(), 2);
        let degrees: Vec<usize> = (0..3).map(|u| g.degree(u)).collect();
        assert_eq!(degrees.iter().filter(|&&d| d == 1).count(), 2);
        assert_eq!(degrees.iter().filter(|&&d| d == 2).count(), 1);
    }

    #[test]
    fn line_graph_of_c4_is_a_four_cycle() {
        let k = build(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let g = line_graph(&k).unwrap();
        assert_eq!(g.vertex_count, 4);
        assert_eq!(g.edge_count(), 4);
        assert!((0..4).all(|u| g.degree(u) == 2));
        assert!(g.is_connected());
    }

    #[test]
    fn line_graph_of_star_is_complete() {
        let k = build(&[&[0, 1], &[0, 2], &[0, 3]]);
        let g = line_graph(&k).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.edges.iter().all(|e| e.label == simplex(&[0])));
    }

    #[test]
    fn line_graph_rejects_non_graphs() {
        let k = build(&[&[0, 1, 2]]);
        assert!(matches!(line_graph(&k), Err(Error::NotAGraph { got: 2 })));
    }

    #[test]
    fn up_dual_of_triangle_vertices_is_complete() {
        let k = build(&[&[0, 1, 2]]);
        let g = up_dual(&k, 0).unwrap();
        assert_eq!(g.vertex_count, 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.edges.iter().all(|e| e.label.dim() == 1));
    }

    #[test]
    fn up_dual_keeps_components_apart() {
        let k = build(&[&[0, 1], &[2, 3]]);
        let g = up_dual(&k, 0).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.component_count(), 2);
    }

    #[test]
    fn dual_dimension_ranges_are_enforced() {
        let k = build(&[&[0, 1, 2]]);
        assert!(down_dual(&k, 0).is_err());
        assert!(down_dual(&k, 3).is_err());
        assert!(up_dual(&k, 2).is_err());
    }

    #[test]
    fn d_connectedness_examples() {
        let k = build(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        assert!(is_d_connected(&k, 1).unwrap());
        assert!(is_d_connected(&k, 0).unwrap());
        let k = build(&[&[0, 1, 2], &[3, 4, 5]]);
        assert!(!is_d_connected(&k, 1).unwrap());
        let k = build(&[&[0, 1, 2]]);
        assert!(is_d_connected(&k, 0).unwrap());
    }

    #[test]
    fn shared_face_with_equal_induced_orientations_gets_minus() {
        let k = build(&[&[0, 1, 2], &[1, 2, 3]]);
        let dual = signed_down_dual(&k).unwrap();
        assert_eq!(dual.graph.edge_count(), 1);
        assert_eq!(dual.weights[0], Sign::Minus);
        assert_eq!(dual.constraint(0), Sign::Plus);
    }

    #[test]
    fn c3_line_graph_signs_match_head_tail_comparison() {
        let k = build(&[&[0, 1], &[1, 2], &[0, 2]]);
        let dual = signed_down_dual(&k).unwrap();
        let e = edge_between(&dual.graph, &k, &[0, 1], &[1, 2]);
        let idx = dual.graph.edges.iter().position(|d| d == e).unwrap();
        // [0,1] puts +1 on vertex 1, [1,2] puts -1 there: opposite, so +1.
        assert_eq!(dual.weights[idx], Sign::Plus);
        assert_eq!(dual.weight_product(&[0, 1, 2]), Sign::Plus);
    }

    #[test]
    fn tetrahedron_cycles_are_simple_and_odd() {
        let k = build(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let dual = signed_down_dual(&k).unwrap();
        let cycles = fundamental_cycles(&dual);
        assert_eq!(cycles.len(), 3);
        for c in &cycles {
            assert_eq!(c.length, 3);
            assert!(!c.twisted);
            assert!(!c.branching_exempt);
            assert!(c.violating());
        }
    }

    #[test]
    fn branching_book_cycle_is_exempt() {
        let k = build(&[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]]);
        let dual = signed_down_dual(&k).unwrap();
        let cycles = fundamental_cycles(&dual);
        assert_eq!(cycles.len(), 1);
        let c = &cycles[0];
        assert_eq!(c.length, 3);
        assert!(c.branching_exempt);
        assert!(
            !c.violating(),
            "an exempt clique cycle satisfies the balance test"
        );
    }

    #[test]
    fn reference_flip_switches_incident_weights_only() {
        let k = build(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let base = signed_down_dual(&k).unwrap();
        let mut refs = vec![Sign::Plus; 4];
        refs[2] = Sign::Minus;
        let flipped = signed_down_dual_oriented(&k, &refs).unwrap();
        for (i, e) in base.graph.edges.iter().enumerate() {
            let touches = e.u == 2 || e.v == 2;
            let expected = if touches {
                -base.weights[i]
            } else {
                base.weights[i]
            };
            assert_eq!(flipped.weights[i], expected);
        }
    }

    #[test]
    fn orientation_count_must_match() {
        let k = build(&[&[0, 1, 2], &[1, 2, 3]]);
        let refs = vec![Sign::Plus; 3];
        assert!(matches!(
            signed_down_dual_oriented(&k, &refs),
            Err(Error::OrientationCountMismatch {
                got: 3,
                expected: 2
            })
        ));
    }

    #[test]
    fn zero_dimensional_complex_has_no_signed_dual() {
        let k = build(&[&[0], &[1]]);
        assert!(matches!(
            signed_down_dual(&k),
            Err(Error::ZeroDimensionalComplex)
        ));
    }

    #[test]
    fn cycle_walks_are_closed_and_consistent() {
        let k = build(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let dual = signed_down_dual(&k).unwrap();
        for c in fundamental_cycles(&dual) {
            assert_eq!(c.dual_vertices.len(), c.length);
            for i in 0..c.length {
                let a = c.dual_vertices[i];
                let b = c.dual_vertices[(i + 1) % c.length];
                let e = &dual.graph.edges[c.edges[i]];
                assert!(
                    (e.u, e.v) == (a.min(b), a.max(b)),
                    "edge {i} connects the walk"
                );
            }
        }
    }
}
