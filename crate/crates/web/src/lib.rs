//! WebAssembly bindings for the browser demo in `www/`. Every export takes
//! plain strings and numbers and returns a JSON document.

use geozeta::complex::{generate, Generator};
use geozeta::geodesic::signed_length_spectrum;
use geozeta::homology::betti;
use geozeta::l2::build_cyclic_cover_of;
use geozeta::linalg::{format_rational, rat, rational_to_f64};
use geozeta::spectral::{check_laplacian_identity, transfer_operator};
use geozeta::zeta::{critical_point, zeta_polynomial};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Longest geodesic length the page may ask for.
const MAX_TRACE_LENGTH: usize = 10;
/// Largest cover order the page may ask for.
const MAX_COVER_ORDER: usize = 6;

#[derive(Serialize)]
struct ZetaReport {
    generator: String,
    counts: Vec<usize>,
    regularity: usize,
    coefficients: Vec<String>,
    critical_point: String,
    order_at_critical: usize,
    dim_ker_laplacian: usize,
    identity_holds: bool,
    /// `(z, ζ(z))` on `[0, 1.5/(N+2)]`.
    curve: Vec<(f64, f64)>,
}

#[derive(Serialize)]
struct TraceRow {
    k: usize,
    classes: usize,
    signed_sum: i64,
    trace: String,
}

#[derive(Serialize)]
struct CoverReport {
    base: String,
    order: usize,
    l2_betti: String,
    /// Positive eigenvalues of the cover Laplacian in degree `n − 1`.
    eigenvalues: Vec<f64>,
    kernel: usize,
    /// `(t, tr_vN e^{−tΔ̂})`.
    heat: Vec<(f64, f64)>,
    /// `(s, ζ_FK, det_FK(s + Δ̂))`.
    samples: Vec<(f64, f64, f64)>,
    slope_zeta: f64,
    slope_chi: f64,
}

fn parse(generator: &str) -> Result<Generator, String> {
    generator
        .trim()
        .parse()
        .map_err(|e: geozeta::Error| e.to_string())
}

fn json(v: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Zeta polynomial, its order at `1/(N+2)` and a plot of `ζ` on the real axis.
#[wasm_bindgen]
pub fn zeta_report(generator: &str) -> Result<String, String> {
    let g = parse(generator)?;
    let x = generate(&g).map_err(|e| e.to_string())?;
    let n = x.dim();
    let t = transfer_operator(&x).map_err(|e| e.to_string())?;
    let poly = zeta_polynomial(&t);
    let z0 = critical_point(&x).map_err(|e| e.to_string())?;
    let zmax = 1.5 * rational_to_f64(&z0);
    json(&ZetaReport {
        generator: g.to_string(),
        counts: x.counts().to_vec(),
        regularity: x.regularity_degree().map_err(|e| e.to_string())?,
        coefficients: poly.coeffs().iter().map(ToString::to_string).collect(),
        critical_point: format_rational(&z0),
        order_at_critical: poly.vanishing_order(&z0).map_err(|e| e.to_string())?,
        dim_ker_laplacian: betti(&x, n - 1).map_err(|e| e.to_string())?,
        identity_holds: check_laplacian_identity(&x).map_err(|e| e.to_string())?,
        curve: (0..=300)
            .map(|i| zmax * i as f64 / 300.0)
            .map(|z| (z, poly.eval_f64(z)))
            .collect(),
    })
}

/// Signed closed-geodesic counts next to `tr(T^k)`.
#[wasm_bindgen]
pub fn trace_table(generator: &str, max_k: usize) -> Result<String, String> {
    if max_k == 0 || max_k > MAX_TRACE_LENGTH {
        return Err(format!("length must be in 1..={MAX_TRACE_LENGTH}"));
    }
    let x = generate(&parse(generator)?).map_err(|e| e.to_string())?;
    let rows = signed_length_spectrum(&x, max_k).map_err(|e| e.to_string())?;
    let traces = transfer_operator(&x)
        .map_err(|e| e.to_string())?
        .power_traces(max_k);
    let table: Vec<TraceRow> = rows
        .iter()
        .zip(traces)
        .map(|(r, tr)| TraceRow {
            k: r.length,
            classes: r.classes,
            signed_sum: r.signed_sum,
            trace: tr.to_string(),
        })
        .collect();
    json(&table)
}

/// Spectrum, heat trace and determinant asymptotics of a cyclic torus cover.
#[wasm_bindgen]
pub fn cover_report(base: &str, order: usize) -> Result<String, String> {
    if order == 0 || order > MAX_COVER_ORDER {
        return Err(format!("cover order must be in 1..={MAX_COVER_ORDER}"));
    }
    let g = parse(base)?;
    let cover = build_cyclic_cover_of(&g, order).map_err(|e| e.to_string())?;
    let n = cover.cover().dim();
    let lap = cover.laplacian(n - 1).map_err(|e| e.to_string())?;
    let density = cover
        .spectral_density(n - 1, &lap)
        .map_err(|e| e.to_string())?;
    let s_values: Vec<_> = (1..=6).map(|e| rat(1, 10i64.pow(e))).collect();
    let fk = cover
        .fk_zeta_asymptotic_check(&s_values)
        .map_err(|e| e.to_string())?;
    json(&CoverReport {
        base: g.to_string(),
        order,
        l2_betti: format_rational(&fk.l2_betti),
        kernel: density.kernel,
        heat: (0..=200)
            .map(|i| 10f64.powf(-2.0 + 4.0 * i as f64 / 200.0))
            .map(|t| (t, density.heat_trace(t)))
            .collect(),
        eigenvalues: density.positive,
        samples: fk.samples.iter().map(|s| (s.s, s.zeta_fk, s.chi)).collect(),
        slope_zeta: fk.slope_zeta,
        slope_chi: fk.slope_chi,
    })
}
