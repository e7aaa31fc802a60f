//! Exhaustive enumeration of closed geodesics and orthogeodesic paths.
//!
//! This is deliberately brute force (exponential in the length bound): it is
//! the path-counting side that the matrix identities are checked against.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::{Chain, PolyComplex};
use crate::dual::{star_to_base, DualComplex};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::spectral::{transfer_operator, TransferOperator};

/// A cyclic class of closed geodesic paths, stored by its lexicographically
/// smallest rotation. A traversal and its reversal are different classes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClosedGeodesic {
    pub cells: Vec<usize>,
    /// Non-compatible consecutive pairs, including the wrap-around pair.
    pub reversing_number: usize,
    pub sign: i8,
    pub primitive_length: usize,
}

impl ClosedGeodesic {
    /// Builds the class of a closed walk, returning `None` if some cyclically
    /// consecutive pair is not admissible.
    pub fn from_cycle(t: &TransferOperator, cells: &[usize]) -> Option<Self> {
        if cells.is_empty() {
            return None;
        }
        let q = cells.len();
        let mut reversing = 0;
        for i in 0..q {
            match t.entry(cells[i], cells[(i + 1) % q]) {
                0 => return None,
                -1 => reversing += 1,
                _ => {}
            }
        }
        let canonical = minimal_rotation(cells);
        Some(Self {
            primitive_length: rotation_period(&canonical),
            cells: canonical,
            reversing_number: reversing,
            sign: if reversing % 2 == 0 { 1 } else { -1 },
        })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_length == self.cells.len()
    }

    /// Signed weight `ε_γ · |γ♯|` contributed to `tr T^{|γ|}`.
    pub fn weight(&self) -> i64 {
        i64::from(self.sign) * self.primitive_length as i64
    }
}

/// Lexicographically smallest rotation.
pub fn minimal_rotation(seq: &[usize]) -> Vec<usize> {
    let q = seq.len();
    (0..q)
        .map(|r| {
            seq[r..]
                .iter()
                .chain(&seq[..r])
                .copied()
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

/// Smallest `p ≥ 1` such that rotating by `p` fixes the sequence.
pub fn rotation_period(seq: &[usize]) -> usize {
    let q = seq.len();
    (1..=q)
        .find(|&p| q.is_multiple_of(p) && (0..q).all(|i| seq[i] == seq[(i + p) % q]))
        .unwrap_or(q)
}

fn is_minimal_rotation(seq: &[usize]) -> bool {
    let q = seq.len();
    (1..q).all(|r| {
        if seq[r] != seq[0] {
            return true;
        }
        let rotated = seq[r..].iter().chain(&seq[..r]);
        seq.iter().le(rotated)
    })
}

/// All closed geodesic classes of length `1..=max_len`, sorted by length then
/// by representative.
pub fn closed_geodesics(x: &PolyComplex, max_len: usize) -> Result<Vec<ClosedGeodesic>> {
    let t = transfer_operator(x)?;
    Ok(closed_geodesics_of(&t, max_len))
}

/// Same as [`closed_geodesics`] for a prebuilt transfer operator.
pub fn closed_geodesics_of(t: &TransferOperator, max_len: usize) -> Vec<ClosedGeodesic> {
    let mut out = Vec::new();
    for start in 0..t.size() {
        // the canonical rotation starts at its minimal cell, so only cells
        // >= start are visited
        let mut path = vec![start];
        let mut signs = Vec::new();
        walk_closed(t, start, max_len, &mut path, &mut signs, &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cells.cmp(&b.cells)));
    out
}

fn walk_closed(
    t: &TransferOperator,
    start: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    signs: &mut Vec<i8>,
    out: &mut Vec<ClosedGeodesic>,
) {
    let last = *path.last().expect("non-empty");
    let closing = t.entry(last, start);
    if closing != 0 && is_minimal_rotation(path) {
        let reversing = signs.iter().filter(|&&s| s < 0).count() + usize::from(closing < 0);
        out.push(ClosedGeodesic {
            cells: path.clone(),
            reversing_number: reversing,
            sign: if reversing % 2 == 0 { 1 } else { -1 },
            primitive_length: rotation_period(path),
        });
    }
    if path.len() == max_len {
        return;
    }
    for &(next, s) in t.neighbours(last) {
        if next < start {
            continue;
        }
        path.push(next);
        signs.push(s);
        walk_closed(t, start, max_len, path, signs, out);
        path.pop();
        signs.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumRow {
    pub length: usize,
    /// Number of closed geodesic classes of this length.
    pub classes: usize,
    /// `Σ_{|γ|=k} ε_γ |γ♯|`.
    pub signed_sum: i64,
}

/// Signed length spectrum for `k = 1..=max_k`, from enumeration only.
pub fn signed_length_spectrum(x: &PolyComplex, max_k: usize) -> Result<Vec<SpectrumRow>> {
    let geos = closed_geodesics(x, max_k)?;
    Ok(spectrum_from(&geos, max_k))
}

pub fn spectrum_from(geos: &[ClosedGeodesic], max_k: usize) -> Vec<SpectrumRow> {
    let mut rows: Vec<SpectrumRow> = (1..=max_k)
        .map(|length| SpectrumRow {
            length,
            classes: 0,
            signed_sum: 0,
        })
        .collect();
    for g in geos {
        if let Some(row) = rows.get_mut(g.len() - 1) {
            row.classes += 1;
            row.signed_sum += g.weight();
        }
    }
    rows
}

/// A geodesic path of 2-cells running from the coboundary of `κ₁` to a
/// 2-cell crossed by `κ₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoGeodesic {
    pub cells: Vec<usize>,
    pub sign: i8,
    /// `⟨∂τ₁, κ₁⟩ · ⟨τ_q, ⋆κ₂⟩`.
    pub incidence: BigInt,
}

impl OrthoGeodesic {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Endpoint weights of orthogeodesics: `⟨∂τ, κ₁⟩` and `⟨τ, ⋆κ₂⟩` per 2-cell.
pub(crate) struct Endpoints {
    pub transfer: TransferOperator,
    pub start: Vec<BigInt>,
    pub end: Vec<BigInt>,
}

pub(crate) fn orthogeodesic_endpoints(
    x: &PolyComplex,
    d: &DualComplex,
    k1: &Chain,
    k2: &Chain,
) -> Result<Endpoints> {
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
    if k2.degree() != 1 {
        return Err(Error::DegreeMismatch {
            left: k2.degree(),
            right: 1,
        });
    }
    x.check_chain(k1)?;
    d.complex().check_chain(k2)?;
    if !k1.is_integral() || !k2.is_integral() {
        return Err(Error::NonIntegralChain);
    }
    let transfer = transfer_operator(x)?;
    let to_int = |r: Rational| -> BigInt { r.to_integer() };
    let cob = x.apply_coboundary(k1)?;
    let crossed = star_to_base(d, k2)?;
    let c2 = x.count(2);
    Ok(Endpoints {
        transfer,
        start: (0..c2).map(|i| to_int(cob.coefficient(i))).collect(),
        end: (0..c2).map(|i| to_int(crossed.coefficient(i))).collect(),
    })
}

/// Every orthogeodesic of length `1..=max_len`.
pub fn orthogeodesics(
    x: &PolyComplex,
    d: &DualComplex,
    k1: &Chain,
    k2: &Chain,
    max_len: usize,
) -> Result<Vec<OrthoGeodesic>> {
    let ep = orthogeodesic_endpoints(x, d, k1, k2)?;
    let mut out = Vec::new();
    walk_open(&ep, max_len, &mut |cells, sign| {
        let first = &ep.start[cells[0]];
        let last = &ep.end[*cells.last().expect("non-empty")];
        out.push(OrthoGeodesic {
            cells: cells.to_vec(),
            sign,
            incidence: first * last,
        });
    });
    Ok(out)
}

/// `Σ_{|c|=k} ε_c m_c` for `k = 1..=max_len`, without materializing paths.
pub fn orthogeodesic_signed_sums(
    x: &PolyComplex,
    d: &DualComplex,
    k1: &Chain,
    k2: &Chain,
    max_len: usize,
) -> Result<Vec<BigInt>> {
    let ep = orthogeodesic_endpoints(x, d, k1, k2)?;
    Ok(signed_sums_from(&ep, max_len))
}

pub(crate) fn signed_sums_from(ep: &Endpoints, max_len: usize) -> Vec<BigInt> {
    let mut sums = vec![BigInt::zero(); max_len];
    walk_open(ep, max_len, &mut |cells, sign| {
        let m = &ep.start[cells[0]] * &ep.end[*cells.last().expect("non-empty")];
        sums[cells.len() - 1] += m * BigInt::from(sign);
    });
    sums
}

fn walk_open(ep: &Endpoints, max_len: usize, visit: &mut dyn FnMut(&[usize], i8)) {
    fn rec(
        ep: &Endpoints,
        max_len: usize,
        path: &mut Vec<usize>,
        sign: i8,
        visit: &mut dyn FnMut(&[usize], i8),
    ) {
        let last = *path.last().expect("non-empty");
        if !ep.end[last].is_zero() {
            visit(path, sign);
        }
        if path.len() == max_len {
            return;
        }
        for &(next, s) in ep.transfer.neighbours(last) {
            path.push(next);
            rec(ep, max_len, path, sign * s, visit);
            path.pop();
        }
    }
    if max_len == 0 {
        return;
    }
    for (first, w) in ep.start.iter().enumerate() {
        if !w.is_zero() {
            rec(ep, max_len, &mut vec![first], 1, visit);
        }
    }
}
