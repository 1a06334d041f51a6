//! Boundary matrices, Hodge Laplacians, and spectral invariants.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::complex::{Sign, SimplicialComplex};
use crate::{Error, Result};

/// Eigenvalues within this distance of zero count as zero when reading
/// kernel dimensions off a spectrum.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-7;

/// Largest matrix the dense eigensolver accepts.
pub const DEFAULT_MATRIX_CAP: usize = 2000;

/// Signed incidence matrix of the boundary operator from d-simplices to
/// (d-1)-simplices: entry (i, j) is the sign with which the i-th
/// (d-1)-simplex appears in the boundary of the j-th d-simplex, the signs
/// alternating over the omitted vertex position. Rows and columns follow the
/// canonical simplex order.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub d: usize,
    pub rows: usize,
    pub cols: usize,
    /// (row, col, sign) of every nonzero entry, column-major order.
    pub entries: Vec<(usize, usize, i8)>,
}

impl BoundaryMatrix {
    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for &(r, c, s) in &self.entries {
            m[(r, c)] = f64::from(s);
        }
        m
    }

    pub fn to_dense_i64(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.cols]; self.rows];
        for &(r, c, s) in &self.entries {
            m[r][c] = i64::from(s);
        }
        m
    }
}

/// Boundary matrix B_d, for 1 <= d <= N.
pub fn boundary_matrix(k: &SimplicialComplex, d: usize) -> Result<BoundaryMatrix> {
    let n = k.dimension();
    if d == 0 || d > n {
        return Err(Error::DimensionOutOfRange { d, n });
    }
    let rows = k.num_simplices(d - 1);
    let cols = k.num_simplices(d);
    let mut entries = Vec::with_capacity(cols * (d + 1));
    for c in 0..cols {
        for (j, &r) in k.face_indices(d, c).iter().enumerate() {
            let sign = Sign::from_parity(j).as_i32() as i8;
            entries.push((r, c, sign));
        }
    }
    Ok(BoundaryMatrix {
        d,
        rows,
        cols,
        entries,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaplacianKind {
    /// Down plus up part (the boundary terms that exist at this dimension).
    Full,
    /// B_{d+1} B_{d+1}^T; zero at the top dimension.
    Up,
    /// B_d^T B_d; undefined at dimension zero.
    Down,
    /// I - D^{-1/2} A D^{-1/2} on the vertices of a graph.
    NormalizedGraph,
}

/// A symmetric operator on the d-simplices.
#[derive(Clone, Debug)]
pub struct LaplacianMatrix {
    pub d: usize,
    pub kind: LaplacianKind,
    pub matrix: DMatrix<f64>,
}

/// Hodge Laplacian on d-simplices. The full Laplacian sums the down part
/// (for d >= 1) and the up part (for d < N); the top dimension has no up
/// part and dimension zero has no down part.
pub fn hodge_laplacian(
    k: &SimplicialComplex,
    d: usize,
    kind: LaplacianKind,
) -> Result<LaplacianMatrix> {
    let n = k.dimension();
    if d > n {
        return Err(Error::DimensionOutOfRange { d, n });
    }
    let size = k.num_simplices(d);
    let down = |k: &SimplicialComplex| -> Result<DMatrix<f64>> {
        let b = boundary_matrix(k, d)?.to_dense();
        Ok(b.transpose() * b)
    };
    let up = |k: &SimplicialComplex| -> Result<DMatrix<f64>> {
        if d == n {
            return Ok(DMatrix::zeros(size, size));
        }
        let b = boundary_matrix(k, d + 1)?.to_dense();
        Ok(&b * b.transpose())
    };
    let matrix = match kind {
        LaplacianKind::Down => {
            if d == 0 {
                return Err(Error::DimensionOutOfRange { d: 0, n });
            }
            down(k)?
        }
        LaplacianKind::Up => up(k)?,
        LaplacianKind::Full => {
            let mut m = up(k)?;
            if d > 0 {
                m += down(k)?;
            }
            m
        }
        LaplacianKind::NormalizedGraph => return normalized_matrix(k),
    };
    Ok(LaplacianMatrix { d, kind, matrix })
}

/// Normalized graph Laplacian of a 1-dimensional complex with no isolated
/// vertices. Its spectrum lies in [0, 2]; the top eigenvalue reaches 2
/// exactly on components that are bipartite.
pub fn normalized_graph_laplacian(k: &SimplicialComplex) -> Result<LaplacianMatrix> {
    if k.dimension() != 1 {
        return Err(Error::NotAGraph { got: k.dimension() });
    }
    normalized_matrix(k)
}

fn normalized_matrix(k: &SimplicialComplex) -> Result<LaplacianMatrix> {
    if k.dimension() != 1 {
        return Err(Error::NotAGraph { got: k.dimension() });
    }
    let n0 = k.vertex_count();
    let mut degree = vec![0usize; n0];
    for (v, deg) in degree.iter_mut().enumerate() {
        *deg = k.coface_indices(0, v).len();
        if *deg == 0 {
            return Err(Error::IsolatedVertex {
                vertex: k.simplices(0)[v].vertices()[0],
            });
        }
    }
    let mut m = DMatrix::identity(n0, n0);
    for e in 0..k.num_simplices(1) {
        let f = k.face_indices(1, e);
        let (u, v) = (f[0].min(f[1]), f[0].max(f[1]));
        let w = -1.0 / ((degree[u] as f64) * (degree[v] as f64)).sqrt();
        m[(u, v)] = w;
        m[(v, u)] = w;
    }
    Ok(LaplacianMatrix {
        d: 0,
        kind: LaplacianKind::NormalizedGraph,
        matrix: m,
    })
}

/// Eigenvalues of a symmetric operator, ascending.
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    /// Count of eigenvalues with absolute value below the tolerance.
    pub multiplicity_of_zero: usize,
    pub lambda_max: f64,
}

/// Dense symmetric eigendecomposition. `tol` is the zero-counting
/// threshold; matrices above the size cap or visibly asymmetric are
/// rejected.
pub fn spectrum(m: &LaplacianMatrix, tol: f64) -> Result<SpectrumResult> {
    let size = m.matrix.nrows();
    if size > DEFAULT_MATRIX_CAP {
        return Err(Error::MatrixTooLarge {
            size,
            cap: DEFAULT_MATRIX_CAP,
        });
    }
    check_symmetric(&m.matrix)?;
    let mut eigenvalues: Vec<f64> = if size == 0 {
        Vec::new()
    } else {
        SymmetricEigen::new(m.matrix.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect()
    };
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    let multiplicity_of_zero = eigenvalues.iter().filter(|l| l.abs() < tol).count();
    let lambda_max = eigenvalues.last().copied().unwrap_or(0.0);
    Ok(SpectrumResult {
        eigenvalues,
        multiplicity_of_zero,
        lambda_max,
    })
}

fn check_symmetric(m: &DMatrix<f64>) -> Result<()> {
    for i in 0..m.nrows() {
        for j in i + 1..m.ncols() {
            let delta = (m[(i, j)] - m[(j, i)]).abs();
            if delta > 1e-12 {
                return Err(Error::NotSymmetric { i, j, delta });
            }
        }
    }
    Ok(())
}

/// Betti numbers beta_0 .. beta_N as kernel dimensions of the full Hodge
/// Laplacians, eigenvalues below `ZERO_EIGENVALUE_TOL` counting as zero.
pub fn betti_numbers(k: &SimplicialComplex) -> Result<Vec<usize>> {
    (0..=k.dimension())
        .map(|d| {
            let l = hodge_laplacian(k, d, LaplacianKind::Full)?;
            Ok(spectrum(&l, ZERO_EIGENVALUE_TOL)?.multiplicity_of_zero)
        })
        .collect()
}

/// Whether a connected graph is bipartite, read off the top of the
/// normalized spectrum: bipartite exactly when the largest eigenvalue is 2.
pub fn is_bipartite_spectral(k: &SimplicialComplex, tol: f64) -> Result<bool> {
    if k.dimension() != 1 {
        return Err(Error::NotAGraph { got: k.dimension() });
    }
    if k.connected_components() != 1 {
        return Err(Error::DisconnectedGraph);
    }
    let l = normalized_graph_laplacian(k)?;
    let s = spectrum(&l, ZERO_EIGENVALUE_TOL)?;
    Ok((s.lambda_max - 2.0).abs() < tol)
}

/// Which eigenvector drives a spectral bipartition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionSide {
    /// Eigenvector of the largest eigenvalue; on bipartite graphs its signs
    /// recover the two parts.
    Top,
    /// Eigenvector of the second-smallest eigenvalue; its signs cut the
    /// graph into two loosely connected halves.
    Bottom,
}

/// Splits the vertices of a connected graph by the sign pattern of a
/// normalized Laplacian eigenvector. The vector is normalized so its first
/// entry of magnitude above 1e-9 is positive; entries below that magnitude
/// go to the first part. Returns ascending vertex ids.
pub fn spectral_bipartition(
    k: &SimplicialComplex,
    side: PartitionSide,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if k.dimension() != 1 {
        return Err(Error::NotAGraph { got: k.dimension() });
    }
    if k.connected_components() != 1 {
        return Err(Error::DisconnectedGraph);
    }
    let l = normalized_graph_laplacian(k)?;
    let size = l.matrix.nrows();
    if size > DEFAULT_MATRIX_CAP {
        return Err(Error::MatrixTooLarge {
            size,
            cap: DEFAULT_MATRIX_CAP,
        });
    }
    let eigen = SymmetricEigen::new(l.matrix);
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| {
        eigen.eigenvalues[a]
            .partial_cmp(&eigen.eigenvalues[b])
            .expect("eigenvalues are finite")
    });
    let pick = match side {
        PartitionSide::Top => order[size - 1],
        PartitionSide::Bottom => order[1.min(size - 1)],
    };
    let mut vector: Vec<f64> = eigen.eigenvectors.column(pick).iter().copied().collect();

    const SIGN_TOL: f64 = 1e-9;
    if let Some(first) = vector.iter().find(|x| x.abs() > SIGN_TOL) {
        if *first < 0.0 {
            for x in &mut vector {
                *x = -*x;
            }
        }
    }
    let mut first_part = Vec::new();
    let mut second_part = Vec::new();
    for (i, x) in vector.iter().enumerate() {
        let id = k.simplices(0)[i].vertices()[0];
        if *x >= -SIGN_TOL {
            first_part.push(id);
        } else {
            second_part.push(id);
        }
    }
    Ok((first_part, second_part))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn build(maximal: &[&[usize]]) -> SimplicialComplex {
        let owned: Vec<Vec<usize>> = maximal.iter().map(|s| s.to_vec()).collect();
        SimplicialComplex::build(&owned).unwrap()
    }

    fn assert_spectrum(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len(), "eigenvalue count");
        for (g, w) in got.iter().zip(want) {
            assert_abs_diff_eq!(g, w, epsilon = tol);
        }
    }

    #[test]
    fn triangle_b1_columns_sum_to_zero() {
        let k = build(&[&[0, 1, 2]]);
        let b1 = boundary_matrix(&k, 1).unwrap();
        assert_eq!((b1.rows, b1.cols), (3, 3));
        let dense = b1.to_dense_i64();
        for c in 0..3 {
            let col_sum: i64 = dense.iter().map(|row| row[c]).sum();
            assert_eq!(col_sum, 0, "an edge boundary is head minus tail");
        }
    }

    #[test]
    fn triangle_b2_signs_alternate_over_faces() {
        let k = build(&[&[0, 1, 2]]);
        let b2 = boundary_matrix(&k, 2).unwrap();
        let dense = b2.to_dense_i64();
        let edge_row = |vs: &[usize]| {
            k.index_of(&crate::complex::Simplex::new(vs.to_vec()).unwrap())
                .unwrap()
        };
        assert_eq!(dense[edge_row(&[1, 2])][0], 1);
        assert_eq!(dense[edge_row(&[0, 2])][0], -1);
        assert_eq!(dense[edge_row(&[0, 1])][0], 1);
    }

    #[test]
    fn composed_boundaries_vanish_in_integer_arithmetic() {
        let k = build(&[&[0, 1, 2], &[1, 2, 3]]);
        let b1 = boundary_matrix(&k, 1).unwrap().to_dense_i64();
        let b2 = boundary_matrix(&k, 2).unwrap().to_dense_i64();
        for b1_row in &b1 {
            for c in 0..b2[0].len() {
                let dot: i64 = b1_row
                    .iter()
                    .zip(&b2)
                    .map(|(x, b2_row)| x * b2_row[c])
                    .sum();
                assert_eq!(dot, 0);
            }
        }
        assert_eq!(b2.len(), 5);
        assert_eq!(b2[0].len(), 2);
    }

    #[test]
    fn boundary_dimension_range_is_enforced() {
        let k = build(&[&[0, 1, 2]]);
        assert!(boundary_matrix(&k, 0).is_err());
        assert!(boundary_matrix(&k, 3).is_err());
    }

    #[test]
    fn c4_vertex_laplacian_is_twice_identity_minus_adjacency() {
        let k = build(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let l = hodge_laplacian(&k, 0, LaplacianKind::Full).unwrap();
        for i in 0..4 {
            assert_eq!(l.matrix[(i, i)], 2.0);
        }
        let s = spectrum(&l, ZERO_EIGENVALUE_TOL).unwrap();
        assert_spectrum(&s.eigenvalues, &[0.0, 2.0, 2.0, 4.0], 1e-9);
    }

    #[test]
    fn single_triangle_top_laplacian_is_three() {
        let k = build(&[&[0, 1, 2]]);
        let l = hodge_laplacian(&k, 2, LaplacianKind::Full).unwrap();
        assert_eq!(l.matrix, DMatrix::from_element(1, 1, 3.0));
    }

    #[test]
    fn up_laplacian_at_top_dimension_is_zero() {
        let k = build(&[&[0, 1], &[1, 2], &[0, 2]]);
        let l = hodge_laplacian(&k, 1, LaplacianKind::Up).unwrap();
        assert_eq!(l.matrix, DMatrix::zeros(3, 3));
    }

    #[test]
    fn down_laplacian_needs_positive_dimension() {
        let k = build(&[&[0, 1]]);
        assert!(hodge_laplacian(&k, 0, LaplacianKind::Down).is_err());
    }

    #[test]
    fn full_equals_up_plus_down_in_middle_dimensions() {
        let k = build(&[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4]]);
        let full = hodge_laplacian(&k, 1, LaplacianKind::Full).unwrap().matrix;
        let up = hodge_laplacian(&k, 1, LaplacianKind::Up).unwrap().matrix;
        let down = hodge_laplacian(&k, 1, LaplacianKind::Down).unwrap().matrix;
        assert_eq!(full, up + down);
    }

    #[test]
    fn normalized_cycle_spectra_match_the_cosine_formula() {
        // Eigenvalues of the normalized Laplacian of an n-cycle are
        // 1 - cos(2 pi j / n).
        for n in [3usize, 4, 5, 6, 8] {
            let maximal: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
            let k = SimplicialComplex::build(&maximal).unwrap();
            let l = normalized_graph_laplacian(&k).unwrap();
            let s = spectrum(&l, ZERO_EIGENVALUE_TOL).unwrap();
            let mut expected: Vec<f64> = (0..n)
                .map(|j| 1.0 - (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos())
                .collect();
            expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert_spectrum(&s.eigenvalues, &expected, 1e-9);
        }
    }

    #[test]
    fn normalized_spectra_frozen_examples() {
        let c4 = build(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let s = spectrum(
            &normalized_graph_laplacian(&c4).unwrap(),
            ZERO_EIGENVALUE_TOL,
        )
        .unwrap();
        assert_spectrum(&s.eigenvalues, &[0.0, 1.0, 1.0, 2.0], 1e-9);

        let c3 = build(&[&[0, 1], &[1, 2], &[0, 2]]);
        let s = spectrum(
            &normalized_graph_laplacian(&c3).unwrap(),
            ZERO_EIGENVALUE_TOL,
        )
        .unwrap();
        assert_spectrum(&s.eigenvalues, &[0.0, 1.5, 1.5], 1e-9);
        assert!(s.lambda_max < 2.0 - 1e-6);

        let p3 = build(&[&[0, 1], &[1, 2]]);
        let s = spectrum(
            &normalized_graph_laplacian(&p3).unwrap(),
            ZERO_EIGENVALUE_TOL,
        )
        .unwrap();
        assert_spectrum(&s.eigenvalues, &[0.0, 1.0, 2.0], 1e-9);
    }

    #[test]
    fn normalized_laplacian_rejects_isolated_vertices_and_non_graphs() {
        let k = build(&[&[0, 1], &[2]]);
        assert!(matches!(
            normalized_graph_laplacian(&k),
            Err(Error::IsolatedVertex { vertex: 2 })
        ));
        let k = build(&[&[0, 1, 2]]);
        assert!(normalized_graph_laplacian(&k).is_err());
    }

    #[test]
    fn zero_multiplicity_counts_components() {
        let k = build(&[&[0, 1], &[2, 3]]);
        let l = hodge_laplacian(&k, 0, LaplacianKind::Full).unwrap();
        let s = spectrum(&l, ZERO_EIGENVALUE_TOL).unwrap();
        assert_eq!(s.multiplicity_of_zero, 2);
        assert_eq!(k.connected_components(), 2);
    }

    #[test]
    fn spectrum_rejects_asymmetric_input() {
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 1)] = 1.0;
        let l = LaplacianMatrix {
            d: 0,
            kind: LaplacianKind::Full,
            matrix: m,
        };
        assert!(matches!(
            spectrum(&l, 1e-9),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn spectrum_rejects_oversized_input() {
        let m = DMatrix::zeros(DEFAULT_MATRIX_CAP + 1, DEFAULT_MATRIX_CAP + 1);
        let l = LaplacianMatrix {
            d: 0,
            kind: LaplacianKind::Full,
            matrix: m,
        };
        assert!(matches!(
            spectrum(&l, 1e-9),
            Err(Error::MatrixTooLarge { .. })
        ));
    }

    #[test]
    fn betti_numbers_of_standard_spaces() {
        let c4 = build(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        assert_eq!(betti_numbers(&c4).unwrap(), vec![1, 1]);

        let sphere = build(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        assert_eq!(betti_numbers(&sphere).unwrap(), vec![1, 0, 1]);

        let disk = build(&[&[0, 1, 2], &[1, 2, 3]]);
        assert_eq!(betti_numbers(&disk).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn spectral_and_combinatorial_bipartiteness_agree_on_small_graphs() {
        let bipartite = build(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        assert!(is_bipartite_spectral(&bipartite, 1e-8).unwrap());
        let odd = build(&[&[0, 1], &[1, 2], &[0, 2]]);
        assert!(!is_bipartite_spectral(&odd, 1e-8).unwrap());
        let edge = build(&[&[0, 1]]);
        assert!(is_bipartite_spectral(&edge, 1e-8).unwrap());
    }

    #[test]
    fn spectral_bipartiteness_requires_connected_input() {
        let k = build(&[&[0, 1], &[2, 3]]);
        assert!(matches!(
            is_bipartite_spectral(&k, 1e-8),
            Err(Error::DisconnectedGraph)
        ));
    }

    #[test]
    fn top_eigenvector_recovers_the_parts_of_c4() {
        let k = build(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let (a, b) = spectral_bipartition(&k, PartitionSide::Top).unwrap();
        assert_eq!((a, b), (vec![0, 2], vec![1, 3]));
    }

    #[test]
    fn top_eigenvector_splits_a_single_edge() {
        let k = build(&[&[0, 1]]);
        let (a, b) = spectral_bipartition(&k, PartitionSide::Top).unwrap();
        assert_eq!((a, b), (vec![0], vec![1]));
    }

    #[test]
    fn bottom_eigenvector_separates_bowtie_lobes() {
        let k = build(&[&[0, 1], &[1, 2], &[0, 2], &[0, 3], &[3, 4], &[0, 4]]);
        let (a, b) = spectral_bipartition(&k, PartitionSide::Bottom).unwrap();
        let lobes = if a.contains(&1) { (a, b) } else { (b, a) };
        assert!(lobes.0.contains(&1) && lobes.0.contains(&2));
        assert!(lobes.1.contains(&3) && lobes.1.contains(&4));
    }
}
