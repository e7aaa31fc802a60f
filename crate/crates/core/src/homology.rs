//! Rational Betti numbers, Hodge decomposition and the pseudo-inverse `K` of
//! the Laplacian, plus the intersection-pairing form of the linking number.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use crate::complex::{Chain, PolyComplex};
use crate::dual::{star_to_base, DualComplex};
use crate::error::{Error, Result};
use crate::linalg::{dot, project_onto_span, RatMatrix, Rational};
use crate::spectral::laplacian;

/// `b_k = c_k − rank ∂_k − rank ∂_{k+1}` over ℚ.
pub fn betti(x: &PolyComplex, k: usize) -> Result<usize> {
    x.ensure_valid()?;
    x.check_degree(k)?;
    let r_down = if k == 0 {
        0
    } else {
        x.boundary_matrix(k).to_rational().rank()
    };
    let r_up = if k == x.dim() {
        0
    } else {
        x.boundary_matrix(k + 1).to_rational().rank()
    };
    Ok(x.count(k) - r_down - r_up)
}

/// Exact bases of `im ∂`, `im ∂⋆` and `ker Δ` inside `C_k`.
#[derive(Clone, Debug)]
pub struct HodgeDecomposition {
    pub degree: usize,
    pub boundaries: Vec<Vec<Rational>>,
    pub coboundaries: Vec<Vec<Rational>>,
    pub harmonic: Vec<Vec<Rational>>,
    laplacian: RatMatrix,
}

fn column_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let pivots = m.rref().pivots;
    pivots
        .iter()
        .map(|&j| (0..m.rows()).map(|i| m.get(i, j).clone()).collect())
        .collect()
}

impl HodgeDecomposition {
    pub fn compute(x: &PolyComplex, k: usize) -> Result<Self> {
        let lap = laplacian(x, k)?.matrix.to_rational();
        let c = x.count(k);
        let down = if k == 0 {
            None
        } else {
            Some(x.boundary_matrix(k).to_rational())
        };
        let up_t = if k == x.dim() {
            None
        } else {
            Some(x.boundary_matrix(k + 1).transpose().to_rational())
        };
        let boundaries = up_t
            .as_ref()
            .map(|m| column_basis(&m.transpose()))
            .unwrap_or_default();
        let coboundaries = down
            .as_ref()
            .map(|m| column_basis(&m.transpose()))
            .unwrap_or_default();
        // ker Δ = ker ∂ ∩ ker ∂⋆; the stacked ±1 matrix eliminates far more
        // cheaply than Δ itself
        let blocks: Vec<&RatMatrix> = down.iter().chain(up_t.iter()).collect();
        let rows: usize = blocks.iter().map(|b| b.rows()).sum();
        let mut stacked = RatMatrix::zeros(rows, c);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.rows() {
                for j in 0..c {
                    if !b.get(i, j).is_zero() {
                        stacked.set(offset + i, j, b.get(i, j).clone());
                    }
                }
            }
            offset += b.rows();
        }
        let harmonic = stacked.nullspace();
        Ok(Self {
            degree: k,
            boundaries,
            coboundaries,
            harmonic,
            laplacian: lap,
        })
    }

    pub fn dimension(&self) -> usize {
        self.laplacian.rows()
    }

    pub fn betti(&self) -> usize {
        self.harmonic.len()
    }

    pub fn harmonic_projection(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        project_onto_span(&self.harmonic, v)
    }

    /// `K v`: the unique `x ⊥ ker Δ` with `Δx = v − harm(v)`.
    pub fn pseudo_inverse(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        let h = self.harmonic_projection(v)?;
        let rhs: Vec<Rational> = v.iter().zip(&h).map(|(a, b)| a - b).collect();
        let x = self.laplacian.solve(&rhs)?;
        let hx = self.harmonic_projection(&x)?;
        Ok(x.iter().zip(&hx).map(|(a, b)| a - b).collect())
    }

    pub fn apply_laplacian(&self, v: &[Rational]) -> Vec<Rational> {
        self.laplacian.mul_vec(v)
    }

    /// Pairwise orthogonality and the dimension count.
    pub fn verify(&self) -> bool {
        let orth = |a: &[Vec<Rational>], b: &[Vec<Rational>]| {
            a.iter().all(|u| b.iter().all(|w| dot(u, w).is_zero()))
        };
        orth(&self.boundaries, &self.coboundaries)
            && orth(&self.boundaries, &self.harmonic)
            && orth(&self.coboundaries, &self.harmonic)
            && self.boundaries.len() + self.coboundaries.len() + self.harmonic.len()
                == self.dimension()
    }
}

/// Per-complex cache of Hodge decompositions.
pub struct HomologyEngine<'a> {
    complex: &'a PolyComplex,
    cache: RwLock<BTreeMap<usize, Arc<HodgeDecomposition>>>,
}

impl<'a> HomologyEngine<'a> {
    pub fn new(complex: &'a PolyComplex) -> Self {
        Self {
            complex,
            cache: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn complex(&self) -> &'a PolyComplex {
        self.complex
    }

    pub fn hodge(&self, k: usize) -> Result<Arc<HodgeDecomposition>> {
        if let Some(h) = self.cache.read().expect("cache poisoned").get(&k) {
            return Ok(Arc::clone(h));
        }
        let h = Arc::new(HodgeDecomposition::compute(self.complex, k)?);
        let mut w = self.cache.write().expect("cache poisoned");
        Ok(Arc::clone(w.entry(k).or_insert(h)))
    }

    pub fn pseudo_inverse_apply(&self, v: &Chain) -> Result<Chain> {
        self.complex.check_chain(v)?;
        let k = v.degree();
        let h = self.hodge(k)?;
        let x = h.pseudo_inverse(&v.to_dense(self.complex.count(k)))?;
        Ok(Chain::from_dense(k, &x))
    }

    /// Checks that a base chain is a rational boundary.
    pub fn ensure_null_homologous(&self, c: &Chain) -> Result<()> {
        self.complex.check_chain(c)?;
        if !self.complex.apply_boundary(c)?.is_empty() {
            return Err(Error::NotNullHomologous("chain is not a cycle".into()));
        }
        let h = self.hodge(c.degree())?;
        let harm = h.harmonic_projection(&c.to_dense(self.complex.count(c.degree())))?;
        if harm.iter().any(|v| !v.is_zero()) {
            return Err(Error::NotNullHomologous(
                "cycle has a nonzero homology class".into(),
            ));
        }
        Ok(())
    }
}

/// `K v` for a chain of any degree.
pub fn pseudo_inverse_apply(x: &PolyComplex, v: &Chain) -> Result<Chain> {
    HomologyEngine::new(x).pseudo_inverse_apply(v)
}

/// Checks that a dual 1-chain is a dual cycle bounding over ℚ; returns its
/// star transport `⋆κ₂`, a base 2-chain.
pub(crate) fn dual_knot_transport(
    engine: &HomologyEngine<'_>,
    d: &DualComplex,
    k2: &Chain,
) -> Result<Chain> {
    let x = engine.complex();
    if k2.degree() != 1 {
        return Err(Error::DegreeMismatch {
            left: k2.degree(),
            right: 1,
        });
    }
    d.complex().check_chain(k2)?;
    if !d.complex().apply_boundary(k2)?.is_empty() {
        return Err(Error::NotNullHomologous("dual chain is not a cycle".into()));
    }
    let w = star_to_base(d, k2)?;
    let k = w.degree();
    let h = engine.hodge(k)?;
    let harm = h.harmonic_projection(&w.to_dense(x.count(k)))?;
    if harm.iter().any(|v| !v.is_zero()) {
        return Err(Error::NotNullHomologous(
            "dual cycle has a nonzero homology class".into(),
        ));
    }
    Ok(w)
}

/// Linking number of a base knot `κ₁` and a dual knot `κ₂` in a closed
/// 3-complex, as the intersection `⟨σ₁, ⋆κ₂⟩` of the bounding chain
/// `σ₁ = ∂⋆ K κ₁` with the 2-cells crossed by `κ₂`.
pub fn linking_oracle(
    x: &PolyComplex,
    d: &DualComplex,
    k1: &Chain,
    k2: &Chain,
) -> Result<Rational> {
    if x.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            actual: x.dim(),
        });
    }
    d.check_base(x)?;
    if k1.degree() != 1 {
        return Err(Error::DegreeMismatch {
            left: k1.degree(),
            right: 1,
        });
    }
    let engine = HomologyEngine::new(x);
    engine.ensure_null_homologous(k1)?;
    let w = dual_knot_transport(&engine, d, k2)?;
    let sigma = x.apply_coboundary(&engine.pseudo_inverse_apply(k1)?)?;
    crate::complex::inner_product(&sigma, &w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{generate, Generator};
    use crate::linalg::rat;

    #[test]
    fn betti_numbers_of_fixtures() {
        let t = generate(&Generator::GridTorus(3, 3)).unwrap();
        assert_eq!(
            (0..=2).map(|k| betti(&t, k).unwrap()).collect::<Vec<_>>(),
            vec![1, 2, 1]
        );
        let o = generate(&Generator::Octahedron).unwrap();
        assert_eq!(
            (0..=2).map(|k| betti(&o, k).unwrap()).collect::<Vec<_>>(),
            vec![1, 0, 1]
        );
        let s = generate(&Generator::SimplexBoundary(4)).unwrap();
        assert_eq!(
            (0..=3).map(|k| betti(&s, k).unwrap()).collect::<Vec<_>>(),
            vec![1, 0, 0, 1]
        );
        let c = generate(&Generator::CubeTorus(3, 3, 3)).unwrap();
        assert_eq!(
            (0..=3).map(|k| betti(&c, k).unwrap()).collect::<Vec<_>>(),
            vec![1, 3, 3, 1]
        );
    }

    #[test]
    fn hodge_decomposition_is_orthogonal_and_complete() {
        let c = generate(&Generator::GridTorus(3, 4)).unwrap();
        for k in 0..=2 {
            let h = HodgeDecomposition::compute(&c, k).unwrap();
            assert!(h.verify(), "degree {k}");
        }
    }

    #[test]
    fn pseudo_inverse_kills_harmonic_chains() {
        let x = generate(&Generator::GridTorus(3, 3)).unwrap();
        let h = HodgeDecomposition::compute(&x, 1).unwrap();
        for v in &h.harmonic {
            assert!(h.pseudo_inverse(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn pseudo_inverse_inverts_on_boundaries() {
        let x = generate(&Generator::GridTorus(3, 3)).unwrap();
        let sq = Chain::from_integers(2, &[(0, 1), (4, -2), (7, 3)]);
        let v = x.apply_boundary(&sq).unwrap();
        let kv = pseudo_inverse_apply(&x, &v).unwrap();
        let h = HodgeDecomposition::compute(&x, 1).unwrap();
        let lap_kv = h.apply_laplacian(&kv.to_dense(18));
        assert_eq!(Chain::from_dense(1, &lap_kv), v);
    }

    #[test]
    fn k_of_laplacian_is_coexact_plus_exact_part() {
        let x = generate(&Generator::GridTorus(3, 4)).unwrap();
        let h = HodgeDecomposition::compute(&x, 1).unwrap();
        let v: Vec<Rational> = (0..x.count(1))
            .map(|i| rat((i as i64 * 7) % 5 - 2, 1))
            .collect();
        let back = h.pseudo_inverse(&h.apply_laplacian(&v)).unwrap();
        let harm = h.harmonic_projection(&v).unwrap();
        let expected: Vec<Rational> = v.iter().zip(&harm).map(|(a, b)| a - b).collect();
        assert_eq!(back, expected);
    }

    #[test]
    fn engine_caches_decompositions() {
        let x = generate(&Generator::Octahedron).unwrap();
        let e = HomologyEngine::new(&x);
        let a = e.hodge(1).unwrap();
        let b = e.hodge(1).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn homologically_nontrivial_knot_rejected() {
        let x = generate(&Generator::CubeTorus(3, 3, 3)).unwrap();
        let d = crate::dual::build_dual(&x).unwrap();
        // a straight line of x-edges wraps around the torus
        let line: Vec<(usize, i64)> = (0..3).map(|i| ((i * 9) * 3, 1)).collect();
        let k1 = Chain::from_integers(1, &line);
        assert!(x.apply_boundary(&k1).unwrap().is_empty());
        let k2 = d.complex().apply_boundary(&Chain::cell(2, 0)).unwrap();
        assert!(matches!(
            linking_oracle(&x, &d, &k1, &k2),
            Err(Error::NotNullHomologous(_))
        ));
    }
}
