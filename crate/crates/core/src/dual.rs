//! Dual complex, Hodge star and the adjoint boundary.
//!
//! The dual `(n-k)`-cells are indexed by the base `k`-cells, in the same
//! order. Star signs from base to dual are all `+1`; the dual-to-base
//! direction carries `(-1)^{k(n-k)}` so that `⋆⋆ = (-1)^{k(n-k)}`. The dual
//! boundary is then forced by `∂⋆ = (-1)^{n(k+1)} ⋆∂⋆`: the coefficient of
//! `τ^∨` in `∂^∨ σ^∨` is `(-1)^{k+1}` times the coefficient of `σ` in `∂τ`,
//! for `σ` a `k`-cell and `τ` a `(k+1)`-cell.

use num_bigint::BigInt;

use crate::complex::{emit_complex, Chain, Incidence, Invariant, PolyComplex, ValidationReport};
use crate::error::{Error, Result};
use crate::linalg::{rat, IntMatrix};

fn parity_sign(e: usize) -> i8 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug)]
pub struct DualComplex {
    base_fingerprint: String,
    base_counts: Vec<usize>,
    dual: PolyComplex,
    /// `star_signs[k][σ]`: sign of `⋆σ` for base `k`-cells.
    star_signs: Vec<Vec<i8>>,
}

impl DualComplex {
    pub fn dim(&self) -> usize {
        self.dual.dim()
    }

    pub fn complex(&self) -> &PolyComplex {
        &self.dual
    }

    pub fn base_fingerprint(&self) -> &str {
        &self.base_fingerprint
    }

    pub fn star_signs(&self, k: usize) -> &[i8] {
        &self.star_signs[k]
    }

    pub fn report(&self) -> &ValidationReport {
        self.dual.validation()
    }

    /// Fails unless `x` is the complex this dual was built from.
    pub fn check_base(&self, x: &PolyComplex) -> Result<()> {
        if x.counts() != self.base_counts.as_slice() || x.fingerprint() != self.base_fingerprint {
            return Err(Error::ComplexMismatch(
                "dual was built from a different complex".into(),
            ));
        }
        Ok(())
    }

    /// Sign applied by `⋆` from dual `j`-cells back to base `(n-j)`-cells.
    fn back_sign(&self, j: usize) -> i8 {
        let n = self.dim();
        let k = n - j;
        parity_sign(k * (n - k))
    }

    /// `⋆` as a signed diagonal matrix from base `C_k` to dual `C_{n-k}`.
    pub fn star_matrix_to_dual(&self, k: usize) -> IntMatrix {
        let s = &self.star_signs[k];
        IntMatrix::from_fn(s.len(), s.len(), |i, j| {
            if i == j {
                BigInt::from(s[i])
            } else {
                BigInt::from(0)
            }
        })
    }

    /// `⋆` as a signed diagonal matrix from dual `C_j` to base `C_{n-j}`.
    pub fn star_matrix_to_base(&self, j: usize) -> IntMatrix {
        let n = self.dim();
        let s = &self.star_signs[n - j];
        let b = self.back_sign(j);
        IntMatrix::from_fn(s.len(), s.len(), |i, l| {
            if i == l {
                BigInt::from(b * s[i])
            } else {
                BigInt::from(0)
            }
        })
    }

    /// Canonical text of the dual, tagged with the base fingerprint.
    pub fn emit(&self) -> String {
        format!(
            "# dual-of {}\n{}",
            self.base_fingerprint,
            emit_complex(&self.dual)
        )
    }
}

/// Builds the dual of a validated complex.
///
/// Regularity of the dual is not required (its face counts may vary); the
/// other structural invariants are, as are both star identities.
pub fn build_dual(x: &PolyComplex) -> Result<DualComplex> {
    x.ensure_valid()?;
    let n = x.dim();
    let counts: Vec<usize> = (0..=n).map(|j| x.count(n - j)).collect();
    let mut boundaries: Vec<Vec<Vec<Incidence>>> = vec![vec![Vec::new(); counts[0]]];
    for j in 1..=n {
        // dual j-cells are base k-cells, their faces are the base (k+1)-cofaces
        let k = n - j;
        let sign = parity_sign(k + 1);
        let cof = x.cofaces(k);
        boundaries.push(
            cof.into_iter()
                .map(|faces| faces.into_iter().map(|(t, s)| (t, s * sign)).collect())
                .collect(),
        );
    }
    let dual = PolyComplex::new(n, counts, boundaries)?;
    let d = DualComplex {
        base_fingerprint: x.fingerprint(),
        base_counts: x.counts().to_vec(),
        star_signs: (0..=n).map(|k| vec![1; x.count(k)]).collect(),
        dual,
    };
    let report = d.dual.validation();
    for inv in [
        Invariant::BoundarySquaredZero,
        Invariant::TwoCofaces,
        Invariant::PairUniqueness,
    ] {
        let check = report.check(inv);
        if !check.passed {
            return Err(Error::DualInconsistent(format!(
                "dual violates {inv}: {}",
                check.detail
            )));
        }
    }
    if !verify_star_involution(&d) {
        return Err(Error::DualInconsistent("⋆⋆ identity fails".into()));
    }
    if !verify_adjoint_identity(x, &d)? {
        return Err(Error::DualInconsistent("∂⋆ = ±⋆∂⋆ fails".into()));
    }
    Ok(d)
}

/// `⋆` on a base chain of degree `k`, giving a dual chain of degree `n-k`.
pub fn star(d: &DualComplex, a: &Chain) -> Result<Chain> {
    let n = d.dim();
    let k = a.degree();
    if k > n {
        return Err(Error::DegreeOutOfRange { degree: k, max: n });
    }
    let count = d.star_signs[k].len();
    if let Some(cell) = a.max_cell().filter(|&c| c >= count) {
        return Err(Error::ComplexMismatch(format!(
            "{k}-cell {cell} not in base (count {count})"
        )));
    }
    Ok(Chain::from_terms(
        n - k,
        a.iter()
            .map(|(i, v)| (i, v * rat(d.star_signs[k][i].into(), 1))),
    ))
}

/// `⋆` on a dual chain of degree `j`, giving a base chain of degree `n-j`.
pub fn star_to_base(d: &DualComplex, b: &Chain) -> Result<Chain> {
    let n = d.dim();
    let j = b.degree();
    if j > n {
        return Err(Error::DegreeOutOfRange { degree: j, max: n });
    }
    let k = n - j;
    let count = d.star_signs[k].len();
    if let Some(cell) = b.max_cell().filter(|&c| c >= count) {
        return Err(Error::ComplexMismatch(format!(
            "dual {j}-cell {cell} out of range ({count})"
        )));
    }
    let back = d.back_sign(j);
    Ok(Chain::from_terms(
        k,
        b.iter()
            .map(|(i, v)| (i, v * rat((back * d.star_signs[k][i]).into(), 1))),
    ))
}

/// Matrix of `∂⋆ : C_{k-1} → C_k`, the transpose of `∂_k`.
pub fn adjoint_boundary(x: &PolyComplex, k: usize) -> Result<IntMatrix> {
    if k == 0 || k > x.dim() {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            max: x.dim(),
        });
    }
    Ok(x.boundary_matrix(k).transpose())
}

/// `⋆⋆ = (-1)^{k(n-k)}` on every degree, checked on the sign matrices.
pub fn verify_star_involution(d: &DualComplex) -> bool {
    let n = d.dim();
    (0..=n).all(|k| {
        let twice = d.star_matrix_to_base(n - k).mul(&d.star_matrix_to_dual(k));
        let expected =
            IntMatrix::identity(d.star_signs[k].len()).scale(&parity_sign(k * (n - k)).into());
        twice == expected
    })
}

/// `∂⋆ = (-1)^{n(k+1)} ⋆ ∂^∨ ⋆` on `C_k` for every `k < n`, as exact matrices.
pub fn verify_adjoint_identity(x: &PolyComplex, d: &DualComplex) -> Result<bool> {
    let n = x.dim();
    for k in 1..=n {
        let lhs = adjoint_boundary(x, k)?;
        let rhs = d
            .star_matrix_to_base(n - k)
            .mul(&d.dual.boundary_matrix(n - k + 1))
            .mul(&d.star_matrix_to_dual(k - 1))
            .scale(&parity_sign(n * k).into());
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
