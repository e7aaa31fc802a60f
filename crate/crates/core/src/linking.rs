//! The orthogeodesic series `η(z)` of a pair of knots, its exact value as a
//! rational function of `z`, and truncations with an explicit tail bound.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::complex::{Chain, PolyComplex};
use crate::dual::DualComplex;
use crate::error::{Error, Result};
use crate::geodesic::{orthogeodesic_endpoints, signed_sums_from, Endpoints};
use crate::homology::{dual_knot_transport, HomologyEngine};
use crate::linalg::{dot, rat_int, RatMatrix, Rational};
use crate::spectral::{spectral_radius_bound, TransferOperator};
use crate::zeta::zeta_polynomial;

/// Longest orthogeodesic enumerated by [`LinkingProblem::eta_partial_sum`].
pub const ORTHOGEODESIC_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaMethod {
    PartialSum(usize),
    ExactSolve,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EtaEvaluation {
    pub z: Rational,
    pub value: Rational,
    pub method: EtaMethod,
}

/// A base knot `κ₁` and a dual knot `κ₂` in a closed 3-complex, reduced to
/// the start vector `v = ∂⋆κ₁` and end vector `w = ⋆κ₂` on 2-cells.
pub struct LinkingProblem {
    endpoints: Endpoints,
    regularity: usize,
    start: Vec<Rational>,
    end: Vec<Rational>,
}

impl LinkingProblem {
    /// Both knots must be integral and rationally null-homologous.
    pub fn new(x: &PolyComplex, d: &DualComplex, k1: &Chain, k2: &Chain) -> Result<Self> {
        let endpoints = orthogeodesic_endpoints(x, d, k1, k2)?;
        let engine = HomologyEngine::new(x);
        engine.ensure_null_homologous(k1)?;
        dual_knot_transport(&engine, d, k2)?;
        let start = endpoints.start.iter().map(rat_int).collect();
        let end = endpoints.end.iter().map(rat_int).collect();
        Ok(Self {
            endpoints,
            regularity: x.regularity_degree()?,
            start,
            end,
        })
    }

    pub fn transfer(&self) -> &TransferOperator {
        &self.endpoints.transfer
    }

    pub fn start_vector(&self) -> &[BigInt] {
        &self.endpoints.start
    }

    pub fn end_vector(&self) -> &[BigInt] {
        &self.endpoints.end
    }

    /// `1/(N+2)`.
    pub fn critical_point(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(self.regularity + 2))
    }

    /// `⟨(1/z − T)^{-1} v, w⟩` by one exact solve. When `1/z` is an eigenvalue
    /// the pairing is still defined if the system is consistent and `w` is
    /// orthogonal to the kernel; otherwise the point is a pole.
    pub fn eta_exact(&self, z: &Rational) -> Result<EtaEvaluation> {
        let done = |value| EtaEvaluation {
            z: z.clone(),
            value,
            method: EtaMethod::ExactSolve,
        };
        if z.is_zero() {
            return Ok(done(Rational::zero()));
        }
        let inv = z.recip();
        let t = self.transfer().matrix();
        let a = RatMatrix::from_fn(t.rows(), t.cols(), |i, j| {
            let e = -rat_int(t.get(i, j));
            if i == j {
                e + &inv
            } else {
                e
            }
        });
        let (x, kernel) = match a.solve_with_kernel(&self.start) {
            Ok(s) => s,
            Err(Error::InconsistentSystem) => return Err(Error::EigenvalueCollision),
            Err(e) => return Err(e),
        };
        if kernel.iter().any(|k| !dot(k, &self.end).is_zero()) {
            return Err(Error::EigenvalueCollision);
        }
        Ok(done(dot(&x, &self.end)))
    }

    /// `⟨T^{k−1} v, w⟩` for `k = 1..=max_len`.
    pub fn matrix_sums(&self, max_len: usize) -> Vec<BigInt> {
        let t = self.transfer().matrix();
        let mut cur = self.endpoints.start.clone();
        let mut out = Vec::with_capacity(max_len);
        for k in 0..max_len {
            if k > 0 {
                cur = t.mul_vec(&cur);
            }
            out.push(
                cur.iter()
                    .zip(&self.endpoints.end)
                    .map(|(a, b)| a * b)
                    .sum(),
            );
        }
        out
    }

    /// `Σ_{|c|=k} ε_c m_c` for `k = 1..=max_len` by enumerating orthogeodesics.
    pub fn enumerated_sums(&self, max_len: usize) -> Result<Vec<BigInt>> {
        if max_len > ORTHOGEODESIC_CAP {
            return Err(Error::EnumerationCap {
                requested: max_len,
                cap: ORTHOGEODESIC_CAP,
            });
        }
        Ok(signed_sums_from(&self.endpoints, max_len))
    }

    /// Per-length signed sums, computed both ways and required to agree.
    pub fn per_length_table(&self, max_len: usize) -> Result<Vec<BigInt>> {
        let enumerated = self.enumerated_sums(max_len)?;
        let matrix = self.matrix_sums(max_len);
        for (k, (e, m)) in enumerated.iter().zip(&matrix).enumerate() {
            if e != m {
                return Err(Error::InternalMismatch {
                    length: k + 1,
                    enumerated: e.to_string(),
                    matrix: m.to_string(),
                });
            }
        }
        Ok(enumerated)
    }

    /// `Σ_{k ≤ L} z^k Σ_{|c|=k} ε_c m_c`.
    pub fn eta_partial_sum(&self, z: &Rational, max_len: usize) -> Result<EtaEvaluation> {
        let sums = self.per_length_table(max_len)?;
        let mut value = Rational::zero();
        let mut zk = Rational::one();
        for s in &sums {
            zk *= z;
            value += &zk * rat_int(s);
        }
        Ok(EtaEvaluation {
            z: z.clone(),
            value,
            method: EtaMethod::PartialSum(max_len),
        })
    }

    /// Bound on `|η(z) − partial(L)|` from `|⟨T^{k−1}v, w⟩| ≤ B^{k−1}‖v‖_∞‖w‖₁`,
    /// with `B` the maximal absolute row sum of `T`. `None` when `|z|·B ≥ 1`.
    pub fn tail_bound(&self, z: &Rational, max_len: usize) -> Option<Rational> {
        let b = spectral_radius_bound(self.transfer());
        let v_inf = self
            .endpoints
            .start
            .iter()
            .map(|a| a.abs())
            .max()
            .unwrap_or_default();
        let w_one: BigInt = self.endpoints.end.iter().map(|a| a.abs()).sum();
        if b.is_zero() {
            // only single-cell paths contribute
            return Some(if max_len >= 1 {
                Rational::zero()
            } else {
                z.abs() * rat_int(&(v_inf * w_one))
            });
        }
        let q = z.abs() * &b;
        if q >= Rational::one() {
            return None;
        }
        let c = rat_int(&(v_inf * w_one)) / &b;
        let mut qp = Rational::one();
        for _ in 0..=max_len {
            qp *= &q;
        }
        Some(c * qp / (Rational::one() - q))
    }

    /// Checks that `η·ζ` is a polynomial of degree at most `c₂` vanishing at
    /// zero: interpolates it through `c₂ + 1` exact samples and confirms
    /// `extra` further samples.
    pub fn rationality_check(&self, extra: usize) -> Result<bool> {
        let zeta = zeta_polynomial(self.transfer());
        let c = self.transfer().size();
        let b = spectral_radius_bound(self.transfer());
        // 1/z > B keeps every sample away from the spectrum of T
        let points: Vec<Rational> = (0..c + 1 + extra)
            .map(|j| (b.clone() + Rational::from_integer(BigInt::from(j + 1))).recip())
            .collect();
        let mut values = Vec::with_capacity(points.len());
        for z in &points {
            values.push(self.eta_exact(z)?.value * zeta.eval(z));
        }
        let newton = divided_differences(&points[..=c], &values[..=c]);
        let eval = |z: &Rational| {
            let mut acc = Rational::zero();
            for i in (0..newton.len()).rev() {
                acc = acc * (z - &points[i]) + &newton[i];
            }
            acc
        };
        Ok(eval(&Rational::zero()).is_zero()
            && points[c + 1..]
                .iter()
                .zip(&values[c + 1..])
                .all(|(z, v)| eval(z) == *v))
    }
}

fn divided_differences(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let mut coef = ys.to_vec();
    for level in 1..xs.len() {
        for i in (level..xs.len()).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    coef
}

pub fn eta_exact(
    x: &PolyComplex,
    d: &DualComplex,
    k1: &Chain,
    k2: &Chain,
    z: &Rational,
) -> Result<EtaEvaluation> {
    LinkingProblem::new(x, d, k1, k2)?.eta_exact(z)
}

pub fn eta_partial_sum(
    x: &PolyComplex,
    d: &DualComplex,
    k1: &Chain,
    k2: &Chain,
    z: &Rational,
    max_len: usize,
) -> Result<EtaEvaluation> {
    LinkingProblem::new(x, d, k1, k2)?.eta_partial_sum(z, max_len)
}
