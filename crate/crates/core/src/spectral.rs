//! Combinatorial Laplacians and the signed transfer operator on `(n-1)`-cells.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;

use crate::complex::PolyComplex;
use crate::error::Result;
use crate::linalg::{IntMatrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianMatrix {
    pub degree: usize,
    pub matrix: IntMatrix,
}

/// `Δ_k = ∂_{k+1} ∂⋆ + ∂⋆ ∂_k` as an exact integer matrix.
pub fn laplacian(x: &PolyComplex, k: usize) -> Result<LaplacianMatrix> {
    x.ensure_valid()?;
    x.check_degree(k)?;
    let up = x.boundary_matrix(k + 1);
    let down = x.boundary_matrix(k);
    let matrix = up.mul(&up.transpose()).add(&down.transpose().mul(&down));
    Ok(LaplacianMatrix { degree: k, matrix })
}

/// Signed adjacency of `(n-1)`-cells along admissible pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferOperator {
    matrix: IntMatrix,
    /// Admissible neighbours of each cell with the compatibility sign.
    neighbours: Vec<Vec<(usize, i8)>>,
}

impl TransferOperator {
    /// Wraps a signed adjacency matrix (entries in {-1, 0, 1}).
    pub fn from_matrix(matrix: IntMatrix) -> Self {
        let neighbours = (0..matrix.rows())
            .map(|i| {
                (0..matrix.cols())
                    .filter_map(|j| {
                        let v = matrix.get(i, j);
                        if *v == BigInt::from(1) {
                            Some((j, 1))
                        } else if *v == BigInt::from(-1) {
                            Some((j, -1))
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        Self { matrix, neighbours }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn neighbours(&self, cell: usize) -> &[(usize, i8)] {
        &self.neighbours[cell]
    }

    pub fn entry(&self, i: usize, j: usize) -> i8 {
        self.neighbours[i]
            .iter()
            .find(|(c, _)| *c == j)
            .map_or(0, |&(_, s)| s)
    }

    /// `tr(T^k)` for `k = 1..=max_k`, by repeated multiplication.
    pub fn power_traces(&self, max_k: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(max_k);
        let mut p = IntMatrix::identity(self.size());
        for _ in 0..max_k {
            p = p.mul(&self.matrix);
            out.push(p.trace());
        }
        out
    }
}

/// Builds `T` from the admissibility and compatibility of oriented
/// `(n-1)`-cells, without reference to the Laplacian.
pub fn transfer_operator(x: &PolyComplex) -> Result<TransferOperator> {
    x.ensure_valid()?;
    let n = x.dim();
    let size = x.count(n - 1);
    let tops: Vec<HashSet<usize>> = x
        .cofaces(n - 1)
        .into_iter()
        .map(|c| c.into_iter().map(|(t, _)| t).collect())
        .collect();
    let containing = x.cofaces(n - 2);
    let mut matrix = IntMatrix::zeros(size, size);
    for sigma in 0..size {
        let mut row: BTreeMap<usize, i64> = BTreeMap::new();
        for &(face, s) in x.boundary(n - 1, sigma) {
            for &(tau, t) in &containing[face] {
                if tau == sigma || !tops[sigma].is_disjoint(&tops[tau]) {
                    continue;
                }
                // compatible iff the shared face appears with opposite signs
                row.insert(tau, if s != t { 1 } else { -1 });
            }
        }
        for (tau, v) in row {
            matrix.set(sigma, tau, BigInt::from(v));
        }
    }
    Ok(TransferOperator::from_matrix(matrix))
}

/// `Δ_{n-1} + T = (N+2)·Id`, entrywise.
pub fn check_laplacian_identity(x: &PolyComplex) -> Result<bool> {
    let n = x.dim();
    let big_n = x.regularity_degree()?;
    let lap = laplacian(x, n - 1)?;
    let t = transfer_operator(x)?;
    let expected = IntMatrix::identity(t.size()).scale(&BigInt::from(big_n + 2));
    Ok(lap.matrix.add(t.matrix()) == expected)
}

/// Maximum absolute row sum of `T`, an upper bound for its spectral radius.
pub fn spectral_radius_bound(t: &TransferOperator) -> Rational {
    Rational::from_integer(t.matrix().max_abs_row_sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{generate, Generator};
    use num_traits::{Signed, Zero};

    fn fixture(g: Generator) -> PolyComplex {
        generate(&g).unwrap()
    }

    #[test]
    fn laplacian_diagonal_in_top_minus_one_is_n_plus_two() {
        for (g, n_plus_2) in [
            (Generator::Octahedron, 4),
            (Generator::GridTorus(3, 3), 4),
            (Generator::SimplexBoundary(4), 5),
            (Generator::CubeTorus(3, 3, 3), 6),
        ] {
            let x = fixture(g);
            let l = laplacian(&x, x.dim() - 1).unwrap();
            for i in 0..l.matrix.rows() {
                assert_eq!(*l.matrix.get(i, i), BigInt::from(n_plus_2), "{g}");
            }
            assert!(l.matrix.is_symmetric());
        }
    }

    #[test]
    fn laplacian_zero_for_co_top_and_far_pairs() {
        let x = fixture(Generator::Octahedron);
        let l = laplacian(&x, 1).unwrap();
        let tops = x.cofaces(1);
        for a in 0..12 {
            for b in 0..12 {
                if a == b {
                    continue;
                }
                let share_top = tops[a]
                    .iter()
                    .any(|(t, _)| tops[b].iter().any(|(u, _)| u == t));
                let fa: Vec<usize> = x.boundary(1, a).iter().map(|f| f.0).collect();
                let share_face = x.boundary(1, b).iter().any(|f| fa.contains(&f.0));
                if share_top || !share_face {
                    assert!(l.matrix.get(a, b).is_zero(), "pair {a},{b}");
                }
            }
        }
    }

    #[test]
    fn two_neighbours_per_row_on_surfaces() {
        for g in [Generator::Octahedron, Generator::GridTorus(3, 3)] {
            let t = transfer_operator(&fixture(g)).unwrap();
            for i in 0..t.size() {
                assert_eq!(t.neighbours(i).len(), 2, "{g} row {i}");
                assert_eq!(t.entry(i, i), 0);
            }
            assert!(t.matrix().is_symmetric());
            assert_eq!(spectral_radius_bound(&t), Rational::from_integer(2.into()));
        }
    }

    #[test]
    fn simplex_boundaries_have_no_admissible_pairs() {
        let t = transfer_operator(&fixture(Generator::SimplexBoundary(4))).unwrap();
        assert!(t.matrix().is_zero());
        assert_eq!(spectral_radius_bound(&t), Rational::zero());
    }

    #[test]
    fn identity_holds_on_simplicial_fixtures() {
        for g in [
            Generator::Octahedron,
            Generator::SimplexBoundary(3),
            Generator::SimplexBoundary(4),
            Generator::SimplexBoundary(5),
            Generator::CrossPolytope(4),
            Generator::TriTorus(3, 3),
            Generator::TetTorus(3, 3, 3),
        ] {
            assert!(check_laplacian_identity(&fixture(g)).unwrap(), "{g}");
        }
    }

    #[test]
    fn identity_breaks_on_opposite_sides_of_a_square() {
        let x = fixture(Generator::GridTorus(3, 3));
        assert!(!check_laplacian_identity(&x).unwrap());
        let lap = laplacian(&x, 1).unwrap();
        let t = transfer_operator(&x).unwrap();
        let defect = lap
            .matrix
            .add(t.matrix())
            .sub(&IntMatrix::identity(18).scale(&BigInt::from(4)));
        let squares = x.cofaces(1);
        for i in 0..18 {
            for j in 0..18 {
                let d = defect.get(i, j);
                if d.is_zero() {
                    continue;
                }
                let vi: Vec<usize> = x.boundary(1, i).iter().map(|f| f.0).collect();
                let shares_vertex = x.boundary(1, j).iter().any(|f| vi.contains(&f.0));
                let shares_square = squares[i]
                    .iter()
                    .any(|a| squares[j].iter().any(|b| a.0 == b.0));
                assert!(i != j && !shares_vertex && shares_square, "({i},{j})");
                assert_eq!(d.abs(), BigInt::from(1));
            }
        }
    }

    #[test]
    fn laplacians_are_psd_on_random_vectors() {
        use rand::{Rng, SeedableRng};
        let x = fixture(Generator::CubeTorus(3, 3, 3));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for k in 0..=3 {
            let l = laplacian(&x, k).unwrap().matrix;
            for _ in 0..5 {
                let v: Vec<BigInt> = (0..l.cols())
                    .map(|_| BigInt::from(rng.gen_range(-3i64..=3)))
                    .collect();
                let lv = l.mul_vec(&v);
                let q: BigInt = lv.iter().zip(&v).map(|(a, b)| a * b).sum();
                let up = x.boundary_matrix(k + 1).transpose().mul_vec(&v);
                let down = x.boundary_matrix(k).mul_vec(&v);
                let norms: BigInt = up.iter().chain(&down).map(|a| a * a).sum();
                assert_eq!(q, norms);
                assert!(q >= BigInt::zero());
            }
        }
    }
}
