//! L²-invariants of finite cyclic covers: von Neumann traces, L²-Betti
//! numbers, Fuglede-Kadison determinants and the related zeta and heat
//! asymptotics.

use std::collections::{BTreeMap, HashMap};

use nalgebra::SymmetricEigen;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::{generate, Generator, Incidence, PolyComplex};
use crate::error::{Error, Result};
use crate::geodesic::closed_geodesics_of;
use crate::homology::betti;
use crate::linalg::{rat_int, rational_to_f64, IntMatrix, Rational};
use crate::spectral::{laplacian, transfer_operator, TransferOperator};

/// A complex with a free action of `ℤ/m`, given by one generator, and the
/// quotient complex.
#[derive(Clone, Debug)]
pub struct CoverData {
    cover: PolyComplex,
    base: PolyComplex,
    order: usize,
    generator: Vec<Vec<usize>>,
    reps: Vec<Vec<usize>>,
    orbit: Vec<Vec<usize>>,
    level: Vec<Vec<usize>>,
}

impl CoverData {
    /// Checks that `perms` (one permutation of cells per degree) is a free
    /// action commuting with the boundary including signs, and builds the
    /// quotient. The fundamental domain is the smallest index in each orbit.
    pub fn from_action(cover: PolyComplex, perms: Vec<Vec<usize>>) -> Result<Self> {
        cover.ensure_valid()?;
        let n = cover.dim();
        if perms.len() != n + 1 {
            return Err(Error::BadAction(format!(
                "expected {} permutations, got {}",
                n + 1,
                perms.len()
            )));
        }
        for (k, p) in perms.iter().enumerate() {
            if p.len() != cover.count(k) {
                return Err(Error::BadAction(format!(
                    "degree {k}: permutation has {} entries for {} cells",
                    p.len(),
                    cover.count(k)
                )));
            }
            let mut seen = vec![false; p.len()];
            for &img in p {
                if img >= p.len() || std::mem::replace(&mut seen[img], true) {
                    return Err(Error::BadAction(format!("degree {k}: not a permutation")));
                }
            }
        }
        for k in 1..=n {
            for cell in 0..cover.count(k) {
                let mut moved: Vec<Incidence> = cover
                    .boundary(k, cell)
                    .iter()
                    .map(|&(f, s)| (perms[k - 1][f], s))
                    .collect();
                let mut target = cover.boundary(k, perms[k][cell]).to_vec();
                moved.sort_unstable();
                target.sort_unstable();
                if moved != target {
                    return Err(Error::BadAction(format!(
                        "action does not commute with the boundary of {k}-cell {cell}"
                    )));
                }
            }
        }
        let mut order = None;
        let mut reps = Vec::with_capacity(n + 1);
        let mut orbit = Vec::with_capacity(n + 1);
        let mut level = Vec::with_capacity(n + 1);
        for (k, p) in perms.iter().enumerate() {
            let c = p.len();
            let mut orb = vec![usize::MAX; c];
            let mut lev = vec![0; c];
            let mut r = Vec::new();
            for start in 0..c {
                if orb[start] != usize::MAX {
                    continue;
                }
                let mut cycle = vec![start];
                let mut cur = p[start];
                while cur != start {
                    cycle.push(cur);
                    cur = p[cur];
                }
                match order {
                    None => order = Some(cycle.len()),
                    Some(m) if m != cycle.len() => {
                        return Err(Error::BadAction(format!(
                            "degree {k}: orbit of size {} where {m} expected; action is not free",
                            cycle.len()
                        )));
                    }
                    Some(_) => {}
                }
                // start is the smallest cell of its orbit since cells are
                // visited in increasing order
                for (j, &cell) in cycle.iter().enumerate() {
                    orb[cell] = r.len();
                    lev[cell] = j;
                }
                r.push(start);
            }
            reps.push(r);
            orbit.push(orb);
            level.push(lev);
        }
        let order = order.unwrap_or(1);
        let mut boundaries = vec![vec![Vec::new(); reps[0].len()]];
        for k in 1..=n {
            let mut lists = Vec::with_capacity(reps[k].len());
            for &r in &reps[k] {
                // keeps the representative's face order
                let mut merged: Vec<(usize, i64)> = Vec::new();
                for &(f, s) in cover.boundary(k, r) {
                    let o = orbit[k - 1][f];
                    match merged.iter_mut().find(|e| e.0 == o) {
                        Some(e) => e.1 += i64::from(s),
                        None => merged.push((o, i64::from(s))),
                    }
                }
                let mut faces = Vec::with_capacity(merged.len());
                for (f, s) in merged {
                    if s.abs() != 1 {
                        return Err(Error::BadAction(format!(
                            "quotient of {k}-cell {r} is not a regular cell"
                        )));
                    }
                    faces.push((f, s as i8));
                }
                lists.push(faces);
            }
            boundaries.push(lists);
        }
        let counts = reps.iter().map(Vec::len).collect();
        let base = PolyComplex::new(n, counts, boundaries)?;
        Ok(Self {
            cover,
            base,
            order,
            generator: perms,
            reps,
            orbit,
            level,
        })
    }

    pub fn cover(&self) -> &PolyComplex {
        &self.cover
    }

    /// The quotient complex; cell `i` is the orbit of `representatives(k)[i]`.
    pub fn base(&self) -> &PolyComplex {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generator(&self, k: usize) -> &[usize] {
        &self.generator[k]
    }

    pub fn representatives(&self, k: usize) -> &[usize] {
        &self.reps[k]
    }

    /// Orbit index of a cover cell, i.e. the base cell below it.
    pub fn orbit_of(&self, k: usize, cell: usize) -> usize {
        self.orbit[k][cell]
    }

    /// The `j` with `cell = g^j(rep)`.
    pub fn level_of(&self, k: usize, cell: usize) -> usize {
        self.level[k][cell]
    }

    /// `P(gσ_i, gσ_j) = P(σ_i, σ_j)` for all cells.
    pub fn is_equivariant(&self, k: usize, p: &IntMatrix) -> bool {
        let g = &self.generator[k];
        p.rows() == g.len()
            && p.cols() == g.len()
            && (0..g.len()).all(|i| (0..g.len()).all(|j| p.get(g[i], g[j]) == p.get(i, j)))
    }

    fn check_equivariant(&self, k: usize, p: &IntMatrix) -> Result<()> {
        self.cover.check_degree(k)?;
        if self.is_equivariant(k, p) {
            Ok(())
        } else {
            Err(Error::NotEquivariant)
        }
    }

    /// `Σ_i ⟨P σ̂_i, σ̂_i⟩` over the fundamental domain.
    pub fn vn_trace(&self, k: usize, p: &IntMatrix) -> Result<Rational> {
        self.check_equivariant(k, p)?;
        let sum: BigInt = self.reps[k].iter().map(|&r| p.get(r, r)).sum();
        let value = rat_int(&sum);
        let full = Rational::new(p.trace(), BigInt::from(self.order));
        if value != full {
            return Err(Error::InternalMismatch {
                length: k,
                enumerated: value.to_string(),
                matrix: full.to_string(),
            });
        }
        Ok(value)
    }

    /// `b_k(cover)/m`.
    pub fn l2_betti(&self, k: usize) -> Result<Rational> {
        let b = betti(&self.cover, k)?;
        Ok(Rational::new(BigInt::from(b), BigInt::from(self.order)))
    }

    pub fn laplacian(&self, k: usize) -> Result<IntMatrix> {
        Ok(laplacian(&self.cover, k)?.matrix)
    }

    pub fn transfer(&self) -> Result<TransferOperator> {
        transfer_operator(&self.cover)
    }

    /// Eigenvalue data of an equivariant symmetric PSD operator, with the
    /// kernel dimension taken from the exact rank.
    pub fn spectral_density(&self, k: usize, a: &IntMatrix) -> Result<SpectralDensity> {
        self.check_equivariant(k, a)?;
        if !a.is_symmetric() {
            return Err(Error::NotPositiveSemidefinite(f64::NAN));
        }
        let kernel = a.rows() - a.to_rational().rank();
        let mut eig: Vec<f64> = SymmetricEigen::new(a.to_f64())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        eig.sort_by(f64::total_cmp);
        let scale = eig.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let tol = 1e-8 * scale;
        if let Some(&neg) = eig.iter().find(|&&v| v < -tol) {
            return Err(Error::NotPositiveSemidefinite(neg));
        }
        if eig[..kernel].iter().any(|v| v.abs() > tol) || eig[kernel..].iter().any(|&v| v <= tol) {
            return Err(Error::SpectrumMismatch(format!(
                "exact kernel dimension {kernel} does not match the numerical spectrum"
            )));
        }
        Ok(SpectralDensity {
            positive: eig.split_off(kernel),
            kernel,
            order: self.order,
        })
    }

    /// `det_FK(A) = (∏ positive eigenvalues)^{1/m}`.
    pub fn fk_det(&self, k: usize, a: &IntMatrix) -> Result<f64> {
        Ok(self.spectral_density(k, a)?.fk_det())
    }

    /// Eigenvalues of `T̂`, ascending.
    pub fn transfer_spectrum(&self) -> Result<Vec<f64>> {
        let t = self.transfer()?;
        let mut eig: Vec<f64> = SymmetricEigen::new(t.matrix().to_f64())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        eig.sort_by(f64::total_cmp);
        Ok(eig)
    }

    /// Compares `ζ_FK(z) = det_FK(Id − zT̂)` with `χ(s) = det_FK(s + Δ̂)` at
    /// `z = 1/(s + N + 2)` for each `s`, and fits the exponent of both as
    /// `s → 0`.
    pub fn fk_zeta_asymptotic_check(&self, s_values: &[Rational]) -> Result<FkZetaReport> {
        if s_values.iter().any(|s| *s <= Rational::zero()) {
            return Err(Error::CoverParameters("s values must be positive".into()));
        }
        if s_values.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::CoverParameters("s values must be decreasing".into()));
        }
        let n = self.cover.dim();
        let big_n = self.cover.regularity_degree()?;
        let c_base = self.base.count(n - 1);
        let l2_betti = self.l2_betti(n - 1)?;
        let lap = self.laplacian(n - 1)?;
        let density = self.spectral_density(n - 1, &lap)?;
        let mu = self.transfer_spectrum()?;
        let m = self.order as f64;
        let b = rational_to_f64(&l2_betti);
        let samples: Vec<FkZetaSample> = s_values
            .iter()
            .map(|s| {
                let s = rational_to_f64(s);
                let z = 1.0 / (s + (big_n + 2) as f64);
                let zeta_fk = (mu.iter().map(|&u| (1.0 - z * u).abs().ln()).sum::<f64>() / m).exp();
                let chi = density.fk_det_shifted(s);
                FkZetaSample {
                    s,
                    z,
                    zeta_fk,
                    chi,
                    chi_zeta: z.powi(c_base as i32) * chi,
                    normalized: s.powf(-b) * chi,
                }
            })
            .collect();
        let slope = |f: &dyn Fn(&FkZetaSample) -> f64| {
            least_squares_slope(
                &samples
                    .iter()
                    .map(|x| (x.s.ln(), f(x).ln()))
                    .collect::<Vec<_>>(),
            )
        };
        Ok(FkZetaReport {
            l2_betti,
            det_laplacian: density.fk_det(),
            slope_zeta: slope(&|x| x.zeta_fk),
            slope_chi: slope(&|x| x.chi),
            samples,
        })
    }

    /// `(−1)^{k−1}/k · tr_vN(Δ̂^k)` for `k = 1..=count`, the Taylor
    /// coefficients of `Ψ(s) = tr_vN log(1 + sΔ̂)`.
    pub fn psi_series(&self, count: usize) -> Result<Vec<Rational>> {
        if count > PSI_CAP {
            return Err(Error::EnumerationCap {
                requested: count,
                cap: PSI_CAP,
            });
        }
        Ok(self
            .laplacian_power_traces(count)?
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, t)| {
                let sign = if k % 2 == 1 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                sign * t / Rational::from_integer(BigInt::from(k))
            })
            .collect())
    }

    /// `tr_vN(Δ̂^k)` for `k = 0..=count` in degree `n − 1`.
    pub fn laplacian_power_traces(&self, count: usize) -> Result<Vec<Rational>> {
        let n = self.cover.dim();
        let lap = self.laplacian(n - 1)?;
        let mut power = IntMatrix::identity(lap.rows());
        let mut out = Vec::with_capacity(count + 1);
        for k in 0..=count {
            if k > 0 {
                power = power.mul(&lap);
            }
            out.push(self.vn_trace(n - 1, &power)?);
        }
        Ok(out)
    }

    /// `Σ_{k ≤ K} (−t)^k/k! · tr_vN(Δ̂^k)`, exact.
    pub fn heat_trace_series(&self, t: &Rational, terms: usize) -> Result<Rational> {
        let traces = self.laplacian_power_traces(terms)?;
        let mut coef = Rational::one();
        let mut acc = Rational::zero();
        for (k, tr) in traces.iter().enumerate() {
            if k > 0 {
                coef = coef * -t / Rational::from_integer(BigInt::from(k));
            }
            acc += &coef * tr;
        }
        Ok(acc)
    }

    /// `tr_vN e^{−tΔ̂}` in degree `n − 1` from the spectrum.
    pub fn heat_trace(&self, t: f64) -> Result<f64> {
        let n = self.cover.dim();
        Ok(self
            .spectral_density(n - 1, &self.laplacian(n - 1)?)?
            .heat_trace(t))
    }

    /// `Ψ(s) = tr_vN log(1 + sΔ̂)` from the spectrum.
    pub fn psi_value(&self, s: f64) -> Result<f64> {
        let n = self.cover.dim();
        let d = self.spectral_density(n - 1, &self.laplacian(n - 1)?)?;
        Ok(d.positive.iter().map(|&l| (s * l).ln_1p()).sum::<f64>() / self.order as f64)
    }

    /// Voltage of every admissible base step `i → i'`: the level `j` with
    /// `T̂(σ̂_i, g^j σ̂_{i'}) ≠ 0`, which must be unique.
    pub fn voltages(&self) -> Result<HashMap<(usize, usize), usize>> {
        let n = self.cover.dim();
        let t_base = transfer_operator(&self.base)?;
        let t_cover = self.transfer()?;
        let mut out = HashMap::new();
        for (i, &rep) in self.reps[n - 1].iter().enumerate() {
            let lifted: Vec<(usize, i8)> = t_cover.neighbours(rep).to_vec();
            for &(i2, s) in t_base.neighbours(i) {
                let hits: Vec<&(usize, i8)> = lifted
                    .iter()
                    .filter(|(c, _)| self.orbit[n - 1][*c] == i2)
                    .collect();
                match hits.as_slice() {
                    [(c, s2)] if *s2 == s => {
                        out.insert((i, i2), self.level[n - 1][*c]);
                    }
                    _ => {
                        return Err(Error::BadAction(format!(
                            "base step {i} -> {i2} does not lift uniquely"
                        )));
                    }
                }
            }
            if lifted.len() != t_base.neighbours(i).len() {
                return Err(Error::BadAction(format!(
                    "cell {rep} has extra lifted neighbours"
                )));
            }
        }
        Ok(out)
    }

    /// `Σ ε_γ |γ♯|` over closed base geodesics of length `k` whose holonomy
    /// (sum of voltages mod `m`) is trivial, for `k = 1..=max_k`.
    pub fn trivial_holonomy_spectrum(&self, max_k: usize) -> Result<Vec<i64>> {
        let volt = self.voltages()?;
        let t_base = transfer_operator(&self.base)?;
        let mut out = vec![0i64; max_k];
        for g in closed_geodesics_of(&t_base, max_k) {
            let len = g.cells.len();
            let hol: usize = (0..len)
                .map(|i| volt[&(g.cells[i], g.cells[(i + 1) % len])])
                .sum::<usize>();
            if hol.is_multiple_of(self.order) {
                out[len - 1] += g.weight();
            }
        }
        Ok(out)
    }

    /// `tr_vN(T̂^k)` for `k = 1..=max_k`.
    pub fn transfer_vn_traces(&self, max_k: usize) -> Result<Vec<Rational>> {
        let n = self.cover.dim();
        let t = self.transfer()?;
        let mut power = IntMatrix::identity(t.size());
        let mut out = Vec::with_capacity(max_k);
        for _ in 0..max_k {
            power = power.mul(t.matrix());
            out.push(self.vn_trace(n - 1, &power)?);
        }
        Ok(out)
    }

    /// The action in the permutation file format.
    pub fn emit_action(&self) -> String {
        emit_permutations(&self.generator)
    }
}

/// Largest number of Ψ coefficients computed exactly.
pub const PSI_CAP: usize = 20;

/// Positive eigenvalues of an operator on a cover, the exact kernel
/// dimension and the group order used for normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDensity {
    pub positive: Vec<f64>,
    pub kernel: usize,
    pub order: usize,
}

impl SpectralDensity {
    /// Mass at zero, the L²-Betti number.
    pub fn mass_at_zero(&self) -> Rational {
        Rational::new(BigInt::from(self.kernel), BigInt::from(self.order))
    }

    pub fn total_mass(&self) -> Rational {
        Rational::new(
            BigInt::from(self.kernel + self.positive.len()),
            BigInt::from(self.order),
        )
    }

    /// Normalized spectral distribution `F(λ)`, mass of `[0, λ]`.
    pub fn distribution(&self, lambda: f64) -> f64 {
        let below = self.positive.iter().filter(|&&v| v <= lambda).count();
        if lambda < 0.0 {
            0.0
        } else {
            (self.kernel + below) as f64 / self.order as f64
        }
    }

    pub fn fk_det(&self) -> f64 {
        (self.positive.iter().map(|v| v.ln()).sum::<f64>() / self.order as f64).exp()
    }

    /// `det_FK(s + A)` for `s > 0`.
    pub fn fk_det_shifted(&self, s: f64) -> f64 {
        let log =
            self.kernel as f64 * s.ln() + self.positive.iter().map(|v| (s + v).ln()).sum::<f64>();
        (log / self.order as f64).exp()
    }

    pub fn heat_trace(&self, t: f64) -> f64 {
        (self.kernel as f64 + self.positive.iter().map(|v| (-t * v).exp()).sum::<f64>())
            / self.order as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FkZetaSample {
    pub s: f64,
    pub z: f64,
    /// `det_FK(Id − zT̂)`.
    pub zeta_fk: f64,
    /// `det_FK(s + Δ̂)`.
    pub chi: f64,
    /// `z^{c} χ(s)`, equal to `zeta_fk` when `Δ̂ = (N+2) − T̂`.
    pub chi_zeta: f64,
    /// `s^{−b} χ(s)` with `b` the L²-Betti number.
    pub normalized: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FkZetaReport {
    pub l2_betti: Rational,
    pub det_laplacian: f64,
    pub samples: Vec<FkZetaSample>,
    /// Least-squares slope of `log ζ_FK` against `log s`.
    pub slope_zeta: f64,
    /// Least-squares slope of `log χ` against `log s`.
    pub slope_chi: f64,
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mx, my) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x / n, b + y / n));
    let (num, den) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| {
        (a + (x - mx) * (y - my), b + (x - mx) * (x - mx))
    });
    num / den
}

/// `grid_torus(a·m, b)` with the translation by `a` along the first axis.
pub fn build_cyclic_cover(a: usize, b: usize, m: usize) -> Result<CoverData> {
    build_cyclic_cover_of(&Generator::GridTorus(a, b), m)
}

/// Cyclic `m`-fold cover of a square-grid or triangulated 2-torus, unwrapped
/// along the first axis.
pub fn build_cyclic_cover_of(base: &Generator, m: usize) -> Result<CoverData> {
    if m == 0 {
        return Err(Error::CoverParameters(
            "cover order must be positive".into(),
        ));
    }
    let (a, b, big) = match *base {
        Generator::GridTorus(a, b) => (a, b, Generator::GridTorus(a * m, b)),
        Generator::TriTorus(a, b) => (a, b, Generator::TriTorus(a * m, b)),
        other => {
            return Err(Error::CoverParameters(format!(
                "no cyclic cover construction for {other}"
            )))
        }
    };
    if a < 3 || b < 3 {
        return Err(Error::CoverParameters(format!(
            "base torus needs sizes >= 3, got ({a},{b})"
        )));
    }
    let cover = generate(&big)?;
    let shift_vertex = |v: usize| ((v / b + a) % (a * m)) * b + v % b;
    let perms: Vec<Vec<usize>> = match big {
        Generator::GridTorus(..) => (0..=2)
            .map(|k| {
                let width = [1, 2, 1][k];
                (0..cover.count(k))
                    .map(|cell| shift_vertex(cell / width) * width + cell % width)
                    .collect()
            })
            .collect(),
        _ => simplicial_shift(&cover, shift_vertex)?,
    };
    CoverData::from_action(cover, perms)
}

/// Permutations induced on a simplicial complex (cells indexed by sorted
/// vertex sets, as built by the simplicial generators) by a vertex map.
fn simplicial_shift(x: &PolyComplex, f: impl Fn(usize) -> usize) -> Result<Vec<Vec<usize>>> {
    let mut verts: Vec<Vec<Vec<usize>>> = vec![(0..x.count(0)).map(|v| vec![v]).collect()];
    for k in 1..=x.dim() {
        let level = (0..x.count(k))
            .map(|cell| {
                let mut vs: Vec<usize> = x
                    .boundary(k, cell)
                    .iter()
                    .flat_map(|&(face, _)| verts[k - 1][face].clone())
                    .collect();
                vs.sort_unstable();
                vs.dedup();
                vs
            })
            .collect();
        verts.push(level);
    }
    verts
        .iter()
        .enumerate()
        .map(|(k, level)| {
            let index: HashMap<&[usize], usize> = level
                .iter()
                .enumerate()
                .map(|(i, v)| (v.as_slice(), i))
                .collect();
            level
                .iter()
                .map(|vs| {
                    let mut img: Vec<usize> = vs.iter().map(|&v| f(v)).collect();
                    img.sort_unstable();
                    index.get(img.as_slice()).copied().ok_or_else(|| {
                        Error::BadAction(format!("image of {k}-cell {vs:?} is not a cell"))
                    })
                })
                .collect()
        })
        .collect()
}

/// Parses `perm <k> : <image of cell 0> <image of cell 1> ...` lines.
pub fn parse_permutations(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |message: String| Error::Syntax { line, message };
        let (head, images) = content
            .split_once(':')
            .ok_or_else(|| syntax("expected `perm <k> : ...`".into()))?;
        let mut words = head.split_whitespace();
        if words.next() != Some("perm") {
            return Err(syntax("expected `perm`".into()));
        }
        let k: usize = words
            .next()
            .and_then(|w| w.parse().ok())
            .ok_or_else(|| syntax("missing degree".into()))?;
        if words.next().is_some() {
            return Err(syntax("unexpected token before `:`".into()));
        }
        let imgs = images
            .split_whitespace()
            .map(|w| {
                w.parse()
                    .map_err(|_| syntax(format!("bad cell index `{w}`")))
            })
            .collect::<Result<Vec<usize>>>()?;
        if out.insert(k, imgs).is_some() {
            return Err(syntax(format!("degree {k} given twice")));
        }
    }
    let n = out.len();
    if out.keys().copied().ne(0..n) {
        return Err(Error::BadAction(
            "permutations must cover degrees 0..=n without gaps".into(),
        ));
    }
    Ok(out.into_values().collect())
}

pub fn emit_permutations(perms: &[Vec<usize>]) -> String {
    let mut s = String::new();
    for (k, p) in perms.iter().enumerate() {
        s.push_str(&format!("perm {k} :"));
        for i in p {
            s.push_str(&format!(" {i}"));
        }
        s.push('\n');
    }
    s
}
