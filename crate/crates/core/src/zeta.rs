//! The zeta polynomial `det(Id − zT)` and its root multiplicity at `1/(N+2)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::PolyComplex;
use crate::error::{Error, Result};
use crate::geodesic::closed_geodesics;
use crate::linalg::{rat_int, Rational};
use crate::spectral::TransferOperator;

/// Largest truncation order accepted by [`zeta_from_geodesics`].
pub const EULER_PRODUCT_CAP: usize = 12;

/// Integer polynomial in `z`, constant term first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaPolynomial {
    coeffs: Vec<BigInt>,
}

impl ZetaPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * z + rat_int(c))
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Multiplicity of `z0` as a root, by repeated exact synthetic division.
    pub fn vanishing_order(&self, z0: &Rational) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut poly: Vec<Rational> = self.coeffs.iter().map(rat_int).collect();
        let mut order = 0;
        while poly.len() > 1 {
            // divide by (z - z0), highest degree first
            let mut quotient = vec![Rational::zero(); poly.len() - 1];
            let mut carry = Rational::zero();
            for i in (0..poly.len()).rev() {
                carry = carry * z0 + &poly[i];
                if i > 0 {
                    quotient[i - 1] = carry.clone();
                }
            }
            if !carry.is_zero() {
                break;
            }
            poly = quotient;
            order += 1;
        }
        Ok(order)
    }
}

/// `det(Id − zT)`, the reversed characteristic polynomial of `T`.
pub fn zeta_polynomial(t: &TransferOperator) -> ZetaPolynomial {
    // det(λ − T) = Σ a_i λ^{c−i}  ⇒  det(1 − zT) = Σ a_i z^i
    ZetaPolynomial::from_coeffs(t.matrix().charpoly_berkowitz())
}

/// Free function form of [`ZetaPolynomial::vanishing_order`].
pub fn vanishing_order(p: &ZetaPolynomial, z0: &Rational) -> Result<usize> {
    p.vanishing_order(z0)
}

/// `1/(N+2)` for a validated complex.
pub fn critical_point(x: &PolyComplex) -> Result<Rational> {
    let n = x.regularity_degree()?;
    Ok(Rational::new(BigInt::one(), BigInt::from(n + 2)))
}

/// `∏ (1 − ε_γ z^{|γ|})` over primitive closed geodesics with
/// `|γ| ≤ max_order`, truncated after `z^{max_order}`. Coefficients of
/// `z^0..=z^max_order`.
pub fn zeta_from_geodesics(x: &PolyComplex, max_order: usize) -> Result<Vec<BigInt>> {
    if max_order > EULER_PRODUCT_CAP {
        return Err(Error::EnumerationCap {
            requested: max_order,
            cap: EULER_PRODUCT_CAP,
        });
    }
    let mut series = vec![BigInt::zero(); max_order + 1];
    series[0] = BigInt::one();
    for g in closed_geodesics(x, max_order)?
        .iter()
        .filter(|g| g.is_primitive())
    {
        let q = g.len();
        let eps = BigInt::from(g.sign);
        for i in (q..=max_order).rev() {
            let lower = series[i - q].clone();
            series[i] -= &eps * lower;
        }
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{generate, Generator};
    use crate::linalg::{int, rat, IntMatrix};
    use crate::spectral::transfer_operator;

    #[test]
    fn zero_matrix_gives_one() {
        let t = TransferOperator::from_matrix(IntMatrix::zeros(4, 4));
        let p = zeta_polynomial(&t);
        assert_eq!(p.coeffs(), &[int(1)]);
        assert_eq!(p.degree(), Some(0));
    }

    #[test]
    fn linear_coefficient_is_minus_trace() {
        let x = generate(&Generator::GridTorus(3, 3)).unwrap();
        let p = zeta_polynomial(&transfer_operator(&x).unwrap());
        assert_eq!(p.coeffs()[0], int(1));
        assert_eq!(p.coeffs()[1], int(0));
        assert!(p.degree().unwrap() <= 18);
    }

    #[test]
    fn synthetic_division_multiplicity() {
        // (1 - 4z)^2 (1 + z) = 1 - 7z + 8z^2 + 16z^3
        let p = ZetaPolynomial::from_coeffs(vec![int(1), int(-7), int(8), int(16)]);
        assert_eq!(p.vanishing_order(&rat(1, 4)).unwrap(), 2);
        assert_eq!(p.vanishing_order(&rat(-1, 1)).unwrap(), 1);
        assert_eq!(p.vanishing_order(&rat(1, 2)).unwrap(), 0);
        assert!(ZetaPolynomial::from_coeffs(vec![int(0)])
            .vanishing_order(&rat(1, 4))
            .is_err());
    }

    #[test]
    fn euler_product_order_one_is_one() {
        let x = generate(&Generator::Octahedron).unwrap();
        assert_eq!(zeta_from_geodesics(&x, 1).unwrap(), vec![int(1), int(0)]);
        assert!(zeta_from_geodesics(&x, EULER_PRODUCT_CAP + 1).is_err());
    }

    #[test]
    fn triangulated_torus_vanishes_to_first_betti_order() {
        let x = generate(&Generator::TriTorus(3, 3)).unwrap();
        let p = zeta_polynomial(&transfer_operator(&x).unwrap());
        assert!(p.degree().unwrap() <= 27);
        assert_eq!(p.vanishing_order(&critical_point(&x).unwrap()).unwrap(), 2);
    }

    #[test]
    fn square_grid_torus_does_not_vanish_at_one_quarter() {
        // rows of T have two unit entries, so no eigenvalue reaches 4
        let x = generate(&Generator::GridTorus(3, 3)).unwrap();
        let p = zeta_polynomial(&transfer_operator(&x).unwrap());
        assert_eq!(p.vanishing_order(&rat(1, 4)).unwrap(), 0);
    }
}
