//! Generators for standard example complexes.

use crate::complex::SimplicialComplex;
use crate::{Error, Result};

fn param_err(reason: impl Into<String>) -> Error {
    Error::GeneratorParameter {
        reason: reason.into(),
    }
}

/// Cycle graph on n >= 3 vertices.
pub fn cycle_graph(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(param_err(format!("cycle needs n >= 3, got {n}")));
    }
    let maximal: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    SimplicialComplex::build(&maximal)
}

/// Path graph on n >= 2 vertices.
pub fn path_graph(n: usize) -> Result<SimplicialComplex> {
    if n < 2 {
        return Err(param_err(format!("path needs n >= 2 vertices, got {n}")));
    }
    let maximal: Vec<Vec<usize>> = (0..n - 1).map(|i| vec![i, i + 1]).collect();
    SimplicialComplex::build(&maximal)
}

/// Complete graph on n >= 2 vertices.
pub fn complete_graph(n: usize) -> Result<SimplicialComplex> {
    if n < 2 {
        return Err(param_err(format!("complete graph needs n >= 2, got {n}")));
    }
    let mut maximal = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            maximal.push(vec![i, j]);
        }
    }
    SimplicialComplex::build(&maximal)
}

/// Star with a central vertex 0 and `leaves` >= 1 leaves.
pub fn star(leaves: usize) -> Result<SimplicialComplex> {
    if leaves < 1 {
        return Err(param_err("star needs at least one leaf"));
    }
    let maximal: Vec<Vec<usize>> = (1..=leaves).map(|l| vec![0, l]).collect();
    SimplicialComplex::build(&maximal)
}

/// A strip of k triangles, each sharing one edge with the next.
///
/// Open strips (`closed = false`) exist for every k >= 1 and ignore
/// `twisted`, since the twist only matters when the ends are glued. Closed
/// strips glue the last triangle back to the first in one of two ways; the
/// generator picks the gluing whose dual cycle has the requested twist.
/// Closed twisted strips need k >= 5, closed untwisted ones k >= 6, below
/// which the gluings collapse or create stray adjacencies.
pub fn triangle_strip(k: usize, closed: bool, twisted: bool) -> Result<SimplicialComplex> {
    if !closed {
        if k < 1 {
            return Err(param_err("open strip needs k >= 1 triangles"));
        }
        let maximal: Vec<Vec<usize>> = (0..k).map(|i| vec![i, i + 1, i + 2]).collect();
        return SimplicialComplex::build(&maximal);
    }
    // On the straight gluing the dual cycle is twisted exactly for odd k;
    // swapping the two glued vertices flips the twist.
    let swap = twisted != (k % 2 == 1);
    let min = if twisted { 5 } else { 6 };
    if k < min {
        return Err(param_err(format!(
            "closed {} strip needs k >= {min}, got {k}",
            if twisted { "twisted" } else { "untwisted" }
        )));
    }
    let glued = |v: usize| -> usize {
        if v < k {
            v
        } else if swap {
            // v is k or k+1; send them to 1 and 0.
            k + 1 - v
        } else {
            v - k
        }
    };
    let maximal: Vec<Vec<usize>> = (0..k)
        .map(|i| vec![glued(i), glued(i + 1), glued(i + 2)])
        .collect();
    SimplicialComplex::build(&maximal)
}

/// Boundary of the n-simplex: all n-element subsets of its n+1 vertices,
/// a combinatorial (n-1)-sphere. Needs n >= 2.
pub fn simplex_boundary(n: usize) -> Result<SimplicialComplex> {
    if n < 2 {
        return Err(param_err(format!("simplex boundary needs n >= 2, got {n}")));
    }
    let maximal: Vec<Vec<usize>> = (0..=n)
        .map(|omit| (0..=n).filter(|&v| v != omit).collect())
        .collect();
    SimplicialComplex::build(&maximal)
}

fn grid_triangles(m: usize, n: usize, vid: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    let mut maximal = Vec::with_capacity(2 * m * n);
    for i in 0..m {
        for j in 0..n {
            maximal.push(vec![vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)]);
            maximal.push(vec![vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)]);
        }
    }
    maximal
}

/// Torus from an m-by-n grid of squares split into triangles, opposite
/// sides identified. Needs m, n >= 3 so the identifications produce a
/// simplicial complex.
pub fn torus(m: usize, n: usize) -> Result<SimplicialComplex> {
    if m < 3 || n < 3 {
        return Err(param_err(format!(
            "torus grid needs m, n >= 3, got {m}x{n}"
        )));
    }
    let vid = |i: usize, j: usize| (i % m) * n + (j % n);
    SimplicialComplex::build(&grid_triangles(m, n, vid))
}

/// Klein bottle from an m-by-n grid: one pair of sides identified directly,
/// the other pair with a flip. Needs m, n >= 3 like the torus grid.
pub fn klein_bottle(m: usize, n: usize) -> Result<SimplicialComplex> {
    if m < 3 || n < 3 {
        return Err(param_err(format!(
            "Klein bottle grid needs m, n >= 3, got {m}x{n}"
        )));
    }
    let vid = move |i: usize, j: usize| {
        let (i, j) = if i == m { (0, (n - j % n) % n) } else { (i, j) };
        i * n + (j % n)
    };
    SimplicialComplex::build(&grid_triangles(m, n, vid))
}

/// Book of triangles: `pages` >= 1 triangles all sharing the edge {0, 1}.
/// The shared edge branches as soon as there are three pages.
pub fn book(pages: usize) -> Result<SimplicialComplex> {
    if pages < 1 {
        return Err(param_err("book needs at least one page"));
    }
    let maximal: Vec<Vec<usize>> = (0..pages).map(|p| vec![0, 1, 2 + p]).collect();
    SimplicialComplex::build(&maximal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Sign;
    use crate::dual::{down_dual, fundamental_cycles, signed_down_dual};
    use crate::spectral::betti_numbers;

    /// Every edge of a 2-complex lies in exactly two triangles.
    fn is_closed_surface(k: &SimplicialComplex) -> bool {
        k.dimension() == 2 && (0..k.num_simplices(1)).all(|e| k.coface_indices(1, e).len() == 2)
    }

    #[test]
    fn basic_graph_generators() {
        assert_eq!(cycle_graph(5).unwrap().num_simplices(1), 5);
        assert_eq!(path_graph(4).unwrap().num_simplices(1), 3);
        assert_eq!(complete_graph(5).unwrap().num_simplices(1), 10);
        assert_eq!(star(3).unwrap().num_simplices(1), 3);
        assert!(cycle_graph(2).is_err());
        assert!(path_graph(1).is_err());
        assert!(complete_graph(1).is_err());
        assert!(star(0).is_err());
    }

    #[test]
    fn open_strip_dual_is_a_path() {
        for k in 1..=10 {
            let s = triangle_strip(k, false, false).unwrap();
            assert_eq!(s.num_simplices(2), k);
            let g = down_dual(&s, 2).unwrap();
            assert_eq!(g.edge_count(), k - 1);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn closed_strip_duals_are_cycles_with_requested_twist() {
        for twisted in [false, true] {
            let min = if twisted { 5 } else { 6 };
            for k in min..=12 {
                let s = triangle_strip(k, true, twisted).unwrap();
                assert_eq!(s.num_simplices(2), k, "k={k} twisted={twisted}");
                let dual = signed_down_dual(&s).unwrap();
                assert_eq!(dual.graph.edge_count(), k, "dual must be a k-cycle");
                assert!((0..k).all(|u| dual.graph.degree(u) == 2));
                let cycles = fundamental_cycles(&dual);
                assert_eq!(cycles.len(), 1);
                assert_eq!(cycles[0].length, k);
                assert_eq!(cycles[0].twisted, twisted, "k={k}");
                let product = dual.weight_product(&cycles[0].edges);
                assert_eq!(product == Sign::Minus, twisted);
            }
        }
    }

    #[test]
    fn closed_strip_minimums_are_enforced() {
        assert!(triangle_strip(4, true, true).is_err());
        assert!(triangle_strip(5, true, false).is_err());
        assert!(triangle_strip(5, true, true).is_ok());
        assert!(triangle_strip(6, true, false).is_ok());
    }

    #[test]
    fn five_triangle_twisted_strip_is_a_moebius_band() {
        let s = triangle_strip(5, true, true).unwrap();
        assert_eq!(s.vertex_count(), 5);
        assert_eq!(betti_numbers(&s).unwrap(), vec![1, 1, 0]);
    }

    #[test]
    fn simplex_boundary_counts_and_homology() {
        let circle = simplex_boundary(2).unwrap();
        assert_eq!(circle.dimension(), 1);
        assert_eq!(circle.num_simplices(1), 3);

        let sphere = simplex_boundary(3).unwrap();
        assert_eq!(sphere.dimension(), 2);
        assert_eq!(sphere.num_simplices(2), 4);
        assert!(is_closed_surface(&sphere));
        assert_eq!(betti_numbers(&sphere).unwrap(), vec![1, 0, 1]);

        let s3 = simplex_boundary(4).unwrap();
        assert_eq!(s3.dimension(), 3);
        assert_eq!(s3.num_simplices(3), 5);
        assert_eq!(betti_numbers(&s3).unwrap(), vec![1, 0, 0, 1]);

        assert!(simplex_boundary(1).is_err());
    }

    #[test]
    fn torus_grid_is_a_closed_surface_with_torus_homology() {
        let t = torus(3, 3).unwrap();
        assert_eq!(t.vertex_count(), 9);
        assert_eq!(t.num_simplices(1), 27);
        assert_eq!(t.num_simplices(2), 18);
        assert!(is_closed_surface(&t));
        assert_eq!(betti_numbers(&t).unwrap(), vec![1, 2, 1]);
        assert!(torus(2, 3).is_err());
    }

    #[test]
    fn torus_cycles_are_never_twisted() {
        let t = torus(3, 3).unwrap();
        let dual = signed_down_dual(&t).unwrap();
        for c in fundamental_cycles(&dual) {
            assert!(!c.twisted, "an orientable surface has no twisted cycles");
        }
    }

    #[test]
    fn klein_grid_is_a_closed_surface_with_klein_homology() {
        let kb = klein_bottle(3, 3).unwrap();
        assert_eq!(kb.vertex_count(), 9);
        assert_eq!(kb.num_simplices(1), 27);
        assert_eq!(kb.num_simplices(2), 18);
        assert!(is_closed_surface(&kb));
        // Real coefficients see no torsion: only one surviving loop.
        assert_eq!(betti_numbers(&kb).unwrap(), vec![1, 1, 0]);
        assert!(klein_bottle(3, 2).is_err());
    }

    #[test]
    fn klein_bottle_has_a_twisted_cycle() {
        let kb = klein_bottle(3, 3).unwrap();
        let dual = signed_down_dual(&kb).unwrap();
        assert!(
            fundamental_cycles(&dual).iter().any(|c| c.twisted),
            "a non-orientable surface shows a twisted cycle"
        );
    }

    #[test]
    fn book_pages_share_one_branching_edge() {
        let b = book(3).unwrap();
        assert_eq!(b.num_simplices(2), 3);
        let report = b.branching_report();
        assert_eq!(report.branching_count(), 1);
        assert!(book(0).is_err());
        assert_eq!(book(1).unwrap().num_simplices(2), 1);
    }
}
