//! Dense exact matrices over the integers and the rationals.
//!
//! Everything here is exact. The sizes that show up in practice are at most a
//! few hundred rows, so matrices are stored densely; elimination works on
//! sparse rows since incidence matrices and Laplacians are mostly zero.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

/// Parses `p/q` or a bare integer. Decimal points are rejected on purpose.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::BadRational(s.to_string());
    let parse_int = |t: &str| -> Result<BigInt> {
        let t = t.trim();
        let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.trim_start_matches('+')
            .parse::<BigInt>()
            .map_err(|_| bad())
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Lossy conversion for reporting and for the floating point spectral code.
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // very large numerator/denominator: scale both down
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000) as usize;
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let data = self.data.iter().map(|a| a * s).collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += b * rat_int(a);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Nonzero entries of each row as `(column, value)`.
    pub fn sparse_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn max_abs_row_sum(&self) -> BigInt {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<BigInt>())
            .max()
            .unwrap_or_default()
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| rat_int(self.get(i, j)))
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        use num_traits::ToPrimitive;
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).to_f64().unwrap_or(f64::NAN)
        })
    }

    /// `row col value` lines for the nonzero entries.
    pub fn to_triplets(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    let _ = writeln!(out, "{i} {j} {v}");
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    /// Coefficients of `det(λ·Id − A)`, highest degree first, computed with the
    /// division-free Berkowitz recursion. Sparse rows keep the inner
    /// matrix-vector products cheap.
    pub fn charpoly_berkowitz(&self) -> Vec<BigInt> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return vec![BigInt::one()];
        }
        let sparse = self.sparse_rows();
        let mut poly = vec![BigInt::one(), -self.get(0, 0).clone()];
        for r in 1..n {
            // Leading block M = A[0..r, 0..r], column R = A[0..r, r], row S = A[r, 0..r].
            let mut col: Vec<BigInt> = Vec::with_capacity(r + 1);
            col.push(BigInt::one());
            col.push(-self.get(r, r).clone());
            let mut v: Vec<BigInt> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let sv: BigInt = (0..r)
                    .filter(|&j| !v[j].is_zero())
                    .map(|j| self.get(r, j) * &v[j])
                    .sum();
                col.push(-sv);
                if col.len() == r + 2 {
                    break;
                }
                let mut next = vec![BigInt::zero(); r];
                for (i, row) in sparse.iter().enumerate().take(r) {
                    let mut acc = BigInt::zero();
                    for (j, a) in row {
                        if *j < r && !v[*j].is_zero() {
                            acc += a * &v[*j];
                        }
                    }
                    next[i] = acc;
                }
                v = next;
            }
            // Lower-triangular Toeplitz product: (r+2)x(r+1) times poly (length r+1).
            let mut out = vec![BigInt::zero(); r + 2];
            for (i, slot) in out.iter_mut().enumerate() {
                for (j, p) in poly.iter().enumerate().take(i + 1) {
                    let c = &col[i - j];
                    if !c.is_zero() && !p.is_zero() {
                        *slot += c * p;
                    }
                }
            }
            poly = out;
        }
        poly
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form by sparse Gauss-Jordan elimination. Among
    /// the candidate rows for each pivot the shortest is used, which keeps
    /// fill-in low on incidence-like matrices; the result is unique anyway.
    pub fn rref(&self) -> Rref {
        type Row = Vec<(usize, Rational)>;
        let mut rows: Vec<Row> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter_map(|j| {
                        let v = self.get(i, j);
                        (!v.is_zero()).then(|| (j, v.clone()))
                    })
                    .collect()
            })
            .collect();
        let entry = |row: &Row, col: usize| -> Option<usize> {
            row.binary_search_by_key(&col, |e| e.0).ok()
        };
        // row r - factor * pivot, both sorted by column
        let combine = |row: &Row, factor: &Rational, pivot: &Row| -> Row {
            let mut out = Vec::with_capacity(row.len() + pivot.len());
            let (mut a, mut b) = (0, 0);
            while a < row.len() || b < pivot.len() {
                let ca = row.get(a).map_or(usize::MAX, |e| e.0);
                let cb = pivot.get(b).map_or(usize::MAX, |e| e.0);
                if ca < cb {
                    out.push(row[a].clone());
                    a += 1;
                } else if cb < ca {
                    out.push((cb, -(factor * &pivot[b].1)));
                    b += 1;
                } else {
                    let v = &row[a].1 - factor * &pivot[b].1;
                    if !v.is_zero() {
                        out.push((ca, v));
                    }
                    a += 1;
                    b += 1;
                }
            }
            out
        };
        let mut done = vec![false; self.rows];
        let mut order = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..self.cols {
            let Some(p) = (0..self.rows)
                .filter(|&r| !done[r] && entry(&rows[r], col).is_some())
                .min_by_key(|&r| rows[r].len())
            else {
                continue;
            };
            let inv = rows[p][entry(&rows[p], col).expect("pivot entry")]
                .1
                .recip();
            for e in rows[p].iter_mut() {
                e.1 *= &inv;
            }
            let pivot = std::mem::take(&mut rows[p]);
            for r in 0..self.rows {
                if r == p {
                    continue;
                }
                if let Some(i) = entry(&rows[r], col) {
                    let factor = rows[r][i].1.clone();
                    rows[r] = combine(&rows[r], &factor, &pivot);
                }
            }
            rows[p] = pivot;
            done[p] = true;
            order.push(p);
            pivots.push(col);
        }
        let mut m = Self::zeros(self.rows, self.cols);
        for (i, &r) in order.iter().enumerate() {
            for (j, v) in &rows[r] {
                m.set(i, *j, v.clone());
            }
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// A basis of the right kernel, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self · x = b` (free variables set to zero), or an
    /// inconsistency error.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        self.solve_with_kernel(b).map(|(x, _)| x)
    }

    /// A particular solution of `self · x = b` together with a kernel basis,
    /// both read off a single elimination of the augmented matrix.
    pub fn solve_with_kernel(&self, b: &[Rational]) -> Result<(Vec<Rational>, Vec<Vec<Rational>>)> {
        assert_eq!(b.len(), self.rows);
        let n = self.cols;
        let aug = Self::from_fn(self.rows, n + 1, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&n) {
            return Err(Error::InconsistentSystem);
        }
        let mut x = vec![Rational::zero(); n];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, n).clone();
        }
        let kernel = (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![Rational::zero(); n];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, f).clone();
                }
                v
            })
            .collect();
        Ok((x, kernel))
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Orthogonal projection of `v` onto the column span of the given basis.
pub fn project_onto_span(basis: &[Vec<Rational>], v: &[Rational]) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); v.len()];
    if basis.is_empty() {
        return Ok(out);
    }
    let k = basis.len();
    let gram = RatMatrix::from_fn(k, k, |i, j| dot(&basis[i], &basis[j]));
    let rhs: Vec<Rational> = basis.iter().map(|b| dot(b, v)).collect();
    let coeffs = gram.solve(&rhs)?;
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7, 1));
        assert_eq!(parse_rational("+2/-4").unwrap(), rat(-1, 2));
        assert!(parse_rational("0.25").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&rat(-3, 9)), "-1/3");
    }

    #[test]
    fn berkowitz_small_cases() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(a.charpoly_berkowitz(), vec![int(1), int(-5), int(5)]);
        let z = IntMatrix::zeros(3, 3);
        assert_eq!(z.charpoly_berkowitz(), vec![int(1), int(0), int(0), int(0)]);
    }

    #[test]
    fn berkowitz_matches_determinant_at_integer_points() {
        let a = m(&[&[0, 1, -1, 0], &[1, 0, 0, 1], &[-1, 0, 0, 1], &[0, 1, 1, 0]]);
        let p = a.charpoly_berkowitz();
        for x in -3i64..=3 {
            let shifted = IntMatrix::identity(4).scale(&int(x)).sub(&a);
            let value: BigInt = p.iter().fold(BigInt::zero(), |acc, c| acc * int(x) + c);
            assert_eq!(value, shifted.determinant(), "at λ = {x}");
        }
    }

    #[test]
    fn rank_nullspace_and_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]).to_rational();
        assert_eq!(a.rank(), 2);
        let ker = a.nullspace();
        assert_eq!(ker.len(), 1);
        assert!(a.mul_vec(&ker[0]).iter().all(Zero::is_zero));
        let b = vec![rat(6, 1), rat(12, 1), rat(2, 1)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(a.solve(&[rat(1, 1), rat(0, 1), rat(0, 1)]).is_err());
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(m(&[&[0, 2], &[3, 1]]).determinant(), int(-6));
        assert_eq!(
            m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]).determinant(),
            int(0)
        );
        assert_eq!(
            m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).determinant(),
            int(6)
        );
        assert_eq!(
            m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]).determinant(),
            int(-1)
        );
    }
}
