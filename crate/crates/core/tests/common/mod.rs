//! Brute-force reference computations shared by the integration tests. They
//! work directly from the incidence lists and avoid the library's matrix
//! builders, eliminators and enumerators.

#![allow(dead_code)]

use geozeta::complex::{Chain, PolyComplex};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub type Dense = Vec<Vec<i64>>;

/// `c_{k-1} × c_k` boundary matrix.
pub fn boundary(x: &PolyComplex, k: usize) -> Dense {
    let rows = if k == 0 { 0 } else { x.count(k - 1) };
    let mut m = vec![vec![0; x.count(k)]; rows];
    if k > 0 {
        for cell in 0..x.count(k) {
            for &(f, s) in x.boundary(k, cell) {
                m[f][cell] += i64::from(s);
            }
        }
    }
    m
}

pub fn transpose(a: &Dense) -> Dense {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|r| r[j]).collect())
        .collect()
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).map(|t| r[t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn add(a: &Dense, b: &Dense) -> Dense {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn identity(n: usize, scale: i64) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { scale } else { 0 }).collect())
        .collect()
}

pub fn trace(a: &Dense) -> i64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

/// `∂_k^T ∂_k + ∂_{k+1} ∂_{k+1}^T`, with zero blocks at the ends.
pub fn laplacian(x: &PolyComplex, k: usize) -> Dense {
    let c = x.count(k);
    let mut lap = identity(c, 0);
    if k > 0 {
        let b = boundary(x, k);
        lap = add(&lap, &mul(&transpose(&b), &b));
    }
    if k < x.dim() {
        let b = boundary(x, k + 1);
        lap = add(&lap, &mul(&b, &transpose(&b)));
    }
    lap
}

/// Number of `(n-2)`-faces of each `(n-1)`-cell, if constant.
pub fn regularity(x: &PolyComplex) -> Option<usize> {
    let n = x.dim();
    let sizes: Vec<usize> = (0..x.count(n - 1))
        .map(|c| x.boundary(n - 1, c).len())
        .collect();
    sizes.iter().all(|&s| s == sizes[0]).then(|| sizes[0])
}

/// Signed adjacency of `(n-1)`-cells straight from the definition: `±1` for
/// pairs sharing an `(n-2)`-face but no `n`-cell, `+1` when the shared face
/// carries opposite signs.
pub fn transfer(x: &PolyComplex) -> Dense {
    let n = x.dim();
    let c = x.count(n - 1);
    let tops: Vec<Vec<usize>> = (0..c)
        .map(|s| {
            (0..x.count(n))
                .filter(|&t| x.boundary(n, t).iter().any(|f| f.0 == s))
                .collect()
        })
        .collect();
    let mut m = identity(c, 0);
    for i in 0..c {
        for j in 0..c {
            if i == j || tops[i].iter().any(|t| tops[j].contains(t)) {
                continue;
            }
            for &(f, si) in x.boundary(n - 1, i) {
                if let Some(&(_, sj)) = x.boundary(n - 1, j).iter().find(|g| g.0 == f) {
                    m[i][j] = if si != sj { 1 } else { -1 };
                }
            }
        }
    }
    m
}

pub fn power_traces(t: &Dense, max_k: usize) -> Vec<i64> {
    let mut p = identity(t.len(), 1);
    (0..max_k)
        .map(|_| {
            p = mul(&p, t);
            trace(&p)
        })
        .collect()
}

/// Rank over ℚ by fraction-free elimination.
pub fn rank(a: &Dense) -> usize {
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[i][j] * &m[r][c] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Determinant by fraction-free elimination.
pub fn determinant(a: &Dense) -> BigInt {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * prev
}

pub fn betti(x: &PolyComplex, k: usize) -> usize {
    let down = if k == 0 { 0 } else { rank(&boundary(x, k)) };
    let up = if k == x.dim() {
        0
    } else {
        rank(&boundary(x, k + 1))
    };
    x.count(k) - down - up
}

/// Random integer chain with small coefficients on a few cells.
pub fn random_chain(rng: &mut impl Rng, degree: usize, count: usize, max_terms: usize) -> Chain {
    let terms: Vec<(usize, i64)> = (0..rng.gen_range(1..=max_terms))
        .map(|_| (rng.gen_range(0..count), [-2, -1, 1, 2][rng.gen_range(0..4)]))
        .collect();
    Chain::from_integers(degree, &terms)
}

/// `⟨a, b⟩` on integral chains.
pub fn pairing(a: &Chain, b: &Chain) -> BigInt {
    a.iter()
        .map(|(i, v)| (v * b.coefficient(i)).to_integer())
        .sum()
}

pub fn dense_vector(c: &Chain, len: usize) -> Vec<i64> {
    (0..len)
        .map(|i| {
            let v = c.coefficient(i);
            assert!(v.is_integer());
            i64::try_from(v.to_integer()).expect("small coefficient")
        })
        .collect()
}

pub fn mat_vec(a: &Dense, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn max_abs_row_sum(a: &Dense) -> i64 {
    a.iter()
        .map(|r| r.iter().map(|v| v.abs()).sum())
        .max()
        .unwrap_or(0)
}

/// One solution of `a x = b` over ℚ, or `None` if the system is inconsistent.
pub fn solve(a: &Dense, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row: Vec<BigRational> = r
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect();
            row.push(v.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Product of the nonzero eigenvalues of a symmetric integer matrix with
/// kernel dimension `kernel`: the coefficient of `s^kernel` in
/// `det(s + a)`, recovered by extrapolating `det(s + a)/s^kernel` to `s = 0`
/// from the integer points `s = 1..=c−kernel+1`.
pub fn pseudo_determinant(a: &Dense, kernel: usize) -> BigRational {
    let c = a.len();
    let points = c - kernel + 1;
    let mut acc = BigRational::zero();
    let mut binom = BigInt::one();
    for j in 1..=points {
        // binom = C(points, j)
        binom = binom * BigInt::from(points + 1 - j) / BigInt::from(j);
        let shifted = add(a, &identity(c, j as i64));
        let q = BigRational::new(determinant(&shifted), BigInt::from(j).pow(kernel as u32));
        let term = q * BigRational::from_integer(binom.clone());
        if j % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Natural logarithm of a positive big rational.
pub fn ln_rational(v: &BigRational) -> f64 {
    ln_big(v.numer()) - ln_big(v.denom())
}

pub fn ln_big(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits < 1000 {
        return v.abs().to_f64().expect("finite").ln();
    }
    let shift = bits - 900;
    let top: BigInt = v.abs() >> shift;
    top.to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

/// `Σ_{k ≥ 1} −tr(T^k) z^k / k`, exponentiated as a power series through
/// `z^order`: the coefficients of `det(1 − zT)` predicted by the traces.
pub fn zeta_from_traces(traces: &[i64], order: usize) -> Vec<BigRational> {
    // p' = p · log'(p) with log'(p) = −Σ tr(T^k) z^{k−1}
    let mut p = vec![BigRational::zero(); order + 1];
    p[0] = BigRational::one();
    for n in 1..=order {
        let mut s = BigRational::zero();
        for k in 1..=n {
            s -= BigRational::from_integer(traces[k - 1].into()) * &p[n - k];
        }
        p[n] = s / BigRational::from_integer(BigInt::from(n));
    }
    p
}

pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let num: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    num / den
}
