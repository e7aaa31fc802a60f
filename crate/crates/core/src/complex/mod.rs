//! Oriented polyhedral complexes with signed boundary incidence, and chains
//! over them.

mod chain;
mod format;
mod generate;
mod validate;

use std::sync::OnceLock;

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub use chain::{inner_product, Chain};
pub use format::{emit_chain, emit_complex, normalize, parse_chain, parse_complex};
pub use generate::{
    cross_polytope, cubical_torus, generate, kuhn_torus, octahedron, ordered_simplicial_complex,
    simplex_boundary, simplicial_complex, Generator,
};
pub use validate::{validate, Invariant, InvariantCheck, ValidationReport};

/// A face of a cell together with its incidence sign (`+1` or `-1`).
pub type Incidence = (usize, i8);

/// An `n`-dimensional oriented polyhedral complex, stored as cell counts per
/// dimension plus the signed boundary of every cell. Cell order within a
/// dimension is the basis order.
#[derive(Debug)]
pub struct PolyComplex {
    dim: usize,
    counts: Vec<usize>,
    /// `boundaries[k][cell]` lists the `(k-1)`-faces of a `k`-cell; empty for `k = 0`.
    boundaries: Vec<Vec<Vec<Incidence>>>,
    report: OnceLock<ValidationReport>,
}

impl Clone for PolyComplex {
    fn clone(&self) -> Self {
        Self {
            dim: self.dim,
            counts: self.counts.clone(),
            boundaries: self.boundaries.clone(),
            report: OnceLock::new(),
        }
    }
}

impl PartialEq for PolyComplex {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.counts == other.counts && self.boundaries == other.boundaries
    }
}

impl Eq for PolyComplex {}

impl PolyComplex {
    /// Builds a complex from explicit boundary lists. `boundaries` must have
    /// `dim + 1` entries (the first one empty) with `counts[k]` lists each.
    pub fn new(
        dim: usize,
        counts: Vec<usize>,
        boundaries: Vec<Vec<Vec<Incidence>>>,
    ) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        if counts.len() != dim + 1 || boundaries.len() != dim + 1 {
            return Err(Error::Syntax {
                line: 0,
                message: "cell counts do not match dimension".into(),
            });
        }
        if !boundaries[0].iter().all(Vec::is_empty) || boundaries[0].len() > counts[0] {
            return Err(Error::Syntax {
                line: 0,
                message: "0-cells cannot have faces".into(),
            });
        }
        let mut boundaries = boundaries;
        boundaries[0] = vec![Vec::new(); counts[0]];
        for k in 1..=dim {
            if boundaries[k].len() != counts[k] {
                return Err(Error::Syntax {
                    line: 0,
                    message: format!("expected {} boundary lists in degree {k}", counts[k]),
                });
            }
            for (cell, faces) in boundaries[k].iter().enumerate() {
                let mut seen = std::collections::HashSet::new();
                for &(face, sign) in faces {
                    if face >= counts[k - 1] {
                        return Err(Error::DanglingFace {
                            line: 0,
                            k,
                            cell,
                            face,
                        });
                    }
                    if sign != 1 && sign != -1 {
                        return Err(Error::Syntax {
                            line: 0,
                            message: format!("sign {sign} is not ±1"),
                        });
                    }
                    if !seen.insert(face) {
                        return Err(Error::DuplicateFace {
                            line: 0,
                            k,
                            cell,
                            face,
                        });
                    }
                }
            }
        }
        Ok(Self {
            dim,
            counts,
            boundaries,
            report: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self, k: usize) -> usize {
        self.counts.get(k).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn boundary(&self, k: usize, cell: usize) -> &[Incidence] {
        &self.boundaries[k][cell]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// For every `k`-cell, the `(k+1)`-cells having it as a face, with the sign.
    pub fn cofaces(&self, k: usize) -> Vec<Vec<Incidence>> {
        let mut out = vec![Vec::new(); self.count(k)];
        if k < self.dim {
            for (cell, faces) in self.boundaries[k + 1].iter().enumerate() {
                for &(face, sign) in faces {
                    out[face].push((cell, sign));
                }
            }
        }
        out
    }

    /// Matrix of `∂_k : C_k → C_{k-1}` (shape `c_{k-1} × c_k`). For `k = 0` or
    /// `k > dim` this is the appropriate zero map.
    pub fn boundary_matrix(&self, k: usize) -> IntMatrix {
        if k == 0 || k > self.dim {
            let rows = if k == 0 { 0 } else { self.count(k - 1) };
            return IntMatrix::zeros(rows, self.count(k));
        }
        let mut m = IntMatrix::zeros(self.count(k - 1), self.count(k));
        for (cell, faces) in self.boundaries[k].iter().enumerate() {
            for &(face, sign) in faces {
                m.set(face, cell, BigInt::from(sign));
            }
        }
        m
    }

    /// The number of `(n-2)`-faces shared by every `(n-1)`-cell, when constant.
    pub fn regularity(&self) -> Option<usize> {
        let mut sizes = self.boundaries[self.dim - 1].iter().map(Vec::len);
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }

    pub fn validation(&self) -> &ValidationReport {
        self.report.get_or_init(|| validate(self))
    }

    /// Fails unless all structural invariants hold.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validation();
        if report.passed() {
            Ok(())
        } else {
            Err(Error::InvalidComplex(report.summary()))
        }
    }

    /// `N` of a validated complex.
    pub fn regularity_degree(&self) -> Result<usize> {
        self.ensure_valid()?;
        Ok(self.regularity().expect("validated complexes are regular"))
    }

    /// Hex SHA-256 of the canonical text form.
    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(emit_complex(self).as_bytes()))
    }

    pub(crate) fn check_degree(&self, k: usize) -> Result<()> {
        if k > self.dim {
            return Err(Error::DegreeOutOfRange {
                degree: k,
                max: self.dim,
            });
        }
        Ok(())
    }

    pub(crate) fn check_chain(&self, chain: &Chain) -> Result<()> {
        self.check_degree(chain.degree())?;
        let count = self.count(chain.degree());
        if let Some(cell) = chain.max_cell().filter(|&c| c >= count) {
            return Err(Error::ChainOutOfRange {
                degree: chain.degree(),
                cell,
                count,
            });
        }
        Ok(())
    }

    /// `∂` applied to a chain.
    pub fn apply_boundary(&self, chain: &Chain) -> Result<Chain> {
        self.check_chain(chain)?;
        let k = chain.degree();
        if k == 0 {
            return Ok(Chain::zero(0));
        }
        let mut out = Chain::zero(k - 1);
        for (cell, c) in chain.iter() {
            for &(face, sign) in self.boundary(k, cell) {
                out.add_term(face, &(c * crate::linalg::rat(sign.into(), 1)));
            }
        }
        Ok(out)
    }

    /// `∂⋆` (the adjoint boundary) applied to a chain: raises the degree by one.
    pub fn apply_coboundary(&self, chain: &Chain) -> Result<Chain> {
        self.check_chain(chain)?;
        let k = chain.degree();
        let mut out = Chain::zero(k + 1);
        if k == self.dim {
            return Ok(out);
        }
        for (cell, faces) in self.boundaries[k + 1].iter().enumerate() {
            for &(face, sign) in faces {
                if let Some(c) = chain.get(face) {
                    out.add_term(cell, &(c * crate::linalg::rat(sign.into(), 1)));
                }
            }
        }
        Ok(out)
    }
}
