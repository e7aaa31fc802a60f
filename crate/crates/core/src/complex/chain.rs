use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rational;

/// A sparse rational chain of a fixed degree. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    coeffs: BTreeMap<usize, Rational>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis chain of a single cell.
    pub fn cell(degree: usize, index: usize) -> Self {
        let mut c = Self::zero(degree);
        c.coeffs.insert(index, Rational::one());
        c
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut c = Self::zero(degree);
        for (i, v) in terms {
            c.add_term(i, &v);
        }
        c
    }

    pub fn from_integers(degree: usize, terms: &[(usize, i64)]) -> Self {
        Self::from_terms(
            degree,
            terms
                .iter()
                .map(|&(i, v)| (i, Rational::from_integer(v.into()))),
        )
    }

    pub fn from_dense(degree: usize, values: &[Rational]) -> Self {
        Self::from_terms(degree, values.iter().cloned().enumerate())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, index: usize) -> Option<&Rational> {
        self.coeffs.get(&index)
    }

    pub fn coefficient(&self, index: usize) -> Rational {
        self.coeffs
            .get(&index)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&i, v)| (i, v))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_cell(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|v| v.is_integer())
    }

    pub fn add_term(&mut self, index: usize, value: &Rational) {
        if value.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(index).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = self.clone();
        for (i, v) in other.iter() {
            out.add_term(i, v);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Chain {
        Self::from_terms(self.degree, self.iter().map(|(i, v)| (i, v * s)))
    }

    pub fn neg(&self) -> Chain {
        self.scale(&-Rational::one())
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); len];
        for (i, c) in self.iter() {
            v[i] = c.clone();
        }
        v
    }
}

/// `⟨a, b⟩` in the orthonormal cell basis.
pub fn inner_product(a: &Chain, b: &Chain) -> Result<Rational> {
    if a.degree != b.degree {
        return Err(Error::DegreeMismatch {
            left: a.degree,
            right: b.degree,
        });
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    Ok(small
        .iter()
        .filter_map(|(i, v)| large.get(i).map(|w| v * w))
        .sum())
}
