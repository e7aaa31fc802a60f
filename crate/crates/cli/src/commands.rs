use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use geozeta::complex::{emit_complex, generate, parse_chain, parse_complex, Chain, PolyComplex};
use geozeta::dual::build_dual;
use geozeta::geodesic::{closed_geodesics, signed_length_spectrum};
use geozeta::homology::{betti, linking_oracle};
use geozeta::l2::{build_cyclic_cover_of, parse_permutations, CoverData};
use geozeta::linalg::{format_rational, parse_rational, rational_to_f64, Rational};
use geozeta::linking::LinkingProblem;
use geozeta::spectral::{
    check_laplacian_identity, laplacian, spectral_radius_bound, transfer_operator,
};
use geozeta::zeta::{critical_point, zeta_polynomial};
use num_traits::{Signed, Zero};

use crate::output::Report;
use crate::{Command, CoverInput, Input, Status};

/// Geodesic enumeration is exponential in the length; refuse anything larger.
const MAX_ENUMERATION_LENGTH: usize = 16;

pub fn run(command: Command, out: &Report) -> Result<Status> {
    match command {
        Command::Validate(input) => validate(&input, out),
        Command::Info { input, emit_matrix } => info(&load(&input)?, emit_matrix.as_deref(), out),
        Command::Generate { generator, output } => {
            let text = emit_complex(&generate(&generator)?);
            match output {
                Some(path) => write(&path, &text)?,
                None => out.raw(&text),
            }
            Ok(Status::Pass)
        }
        Command::Dual(input) => {
            let d = build_dual(&load_valid(&input)?)?;
            out.raw(&d.emit());
            Ok(Status::Pass)
        }
        Command::Betti(input) => betti_numbers(&load_valid(&input)?, out),
        Command::Zeta { input, at } => zeta(&load_valid(&input)?, at.as_deref(), out),
        Command::Geodesics {
            input,
            max_len,
            list,
        } => geodesics(&load_valid(&input)?, max_len, list, out),
        Command::TraceCheck { input, max_k } => trace_check(&load_valid(&input)?, max_k, out),
        Command::Linking {
            input,
            knot1,
            knot2,
            z,
            max_len,
        } => {
            let x = load_valid(&input)?;
            linking(
                &x,
                &read_chain(&knot1)?,
                &read_chain(&knot2)?,
                z.as_deref(),
                max_len,
                out,
            )
        }
        Command::CoverBuild {
            base,
            order,
            output_complex,
            output_action,
        } => {
            let cover = build_cyclic_cover_of(&base, order)?;
            out.field("base", base);
            out.field("order", order);
            out.field("cover_counts", join(cover.cover().counts()));
            out.field("cover_fingerprint", cover.cover().fingerprint());
            if let Some(path) = output_complex {
                write(&path, &emit_complex(cover.cover()))?;
            }
            if let Some(path) = output_action {
                write(&path, &cover.emit_action())?;
            }
            Ok(Status::Pass)
        }
        Command::L2Betti(input) => {
            let cover = load_cover(&input)?;
            out.field("order", cover.order());
            for k in 0..=cover.cover().dim() {
                out.field(
                    &format!("l2_betti.{k}"),
                    format_rational(&cover.l2_betti(k)?),
                );
            }
            Ok(Status::Pass)
        }
        Command::L2ZetaCheck { cover, s, s_limit } => {
            let s: Vec<Rational> = s
                .iter()
                .map(|v| parse_rational(v))
                .collect::<Result<_, _>>()?;
            l2_zeta_check(&load_cover(&cover)?, &s, &parse_rational(&s_limit)?, out)
        }
        Command::Psi { cover, count, t } => {
            psi(&load_cover(&cover)?, count, &parse_rational(&t)?, out)
        }
        Command::HolonomyCheck { cover, max_k } => holonomy(&load_cover(&cover)?, max_k, out),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load(input: &Input) -> Result<PolyComplex> {
    match (&input.complex, &input.gen) {
        (Some(path), _) => {
            parse_complex(&read(path)?).with_context(|| format!("parsing {}", path.display()))
        }
        (None, Some(g)) => Ok(generate(g)?),
        (None, None) => bail!("one of --complex or --gen is required"),
    }
}

fn load_valid(input: &Input) -> Result<PolyComplex> {
    let x = load(input)?;
    x.ensure_valid()?;
    Ok(x)
}

fn read_chain(path: &Path) -> Result<Chain> {
    parse_chain(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_cover(input: &CoverInput) -> Result<CoverData> {
    match (&input.complex, &input.action, &input.base) {
        (Some(c), Some(a), _) => {
            let cover =
                parse_complex(&read(c)?).with_context(|| format!("parsing {}", c.display()))?;
            let perms = parse_permutations(&read(a)?)
                .with_context(|| format!("parsing {}", a.display()))?;
            Ok(CoverData::from_action(cover, perms)?)
        }
        (None, _, Some(base)) => Ok(build_cyclic_cover_of(base, input.order)?),
        _ => bail!("give either --complex with --action, or --base"),
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn validate(input: &Input, out: &Report) -> Result<Status> {
    let x = load(input)?;
    let report = x.validation();
    for check in &report.checks {
        out.field(
            &check.invariant.to_string(),
            if check.passed { "pass" } else { "fail" },
        );
        if !check.passed {
            out.field(
                &format!("{}.offending", check.invariant),
                join(&check.offending),
            );
            out.field(&format!("{}.detail", check.invariant), &check.detail);
        }
    }
    if let Some(n) = report.regularity {
        out.field("regularity", n);
    }
    out.field("valid", report.passed());
    if !report.passed() {
        bail!("complex failed validation: {}", report.summary());
    }
    Ok(Status::Pass)
}

fn info(x: &PolyComplex, emit_matrix: Option<&str>, out: &Report) -> Result<Status> {
    out.field("dimension", x.dim());
    out.field("counts", join(x.counts()));
    out.field("euler_characteristic", x.euler_characteristic());
    match x.regularity() {
        Some(n) => out.field("regularity", n),
        None => out.field("regularity", "none"),
    }
    out.field("valid", x.validation().passed());
    out.field("fingerprint", x.fingerprint());
    if let Some(spec) = emit_matrix {
        x.ensure_valid()?;
        let matrix = match spec.split_once(':') {
            Some(("boundary", k)) => x.boundary_matrix(parse_degree(x, k)?),
            Some(("laplacian", k)) => laplacian(x, parse_degree(x, k)?)?.matrix,
            None if spec == "transfer" => transfer_operator(x)?.matrix().clone(),
            _ => bail!("unknown matrix `{spec}`; use boundary:<k>, laplacian:<k> or transfer"),
        };
        out.field("matrix", spec);
        out.field("shape", format!("{} {}", matrix.rows(), matrix.cols()));
        out.raw(&matrix.to_triplets());
    }
    Ok(Status::Pass)
}

fn parse_degree(x: &PolyComplex, k: &str) -> Result<usize> {
    let k: usize = k.parse().with_context(|| format!("invalid degree `{k}`"))?;
    if k > x.dim() {
        bail!("degree {k} out of range 0..={}", x.dim());
    }
    Ok(k)
}

fn betti_numbers(x: &PolyComplex, out: &Report) -> Result<Status> {
    let mut alternating = 0i64;
    for k in 0..=x.dim() {
        let b = betti(x, k)?;
        alternating += if k % 2 == 0 { b as i64 } else { -(b as i64) };
        out.field(&format!("betti.{k}"), b);
    }
    out.field("euler_characteristic", x.euler_characteristic());
    let pass = alternating == x.euler_characteristic();
    out.verdict(pass);
    Ok(if pass { Status::Pass } else { Status::Fail })
}

fn zeta(x: &PolyComplex, at: Option<&str>, out: &Report) -> Result<Status> {
    let n = x.dim();
    let t = transfer_operator(x)?;
    let poly = zeta_polynomial(&t);
    out.field("coefficients", join(poly.coeffs()));
    out.field(
        "degree",
        poly.degree().map_or("none".into(), |d| d.to_string()),
    );
    let z0 = critical_point(x)?;
    out.field("critical_point", format_rational(&z0));
    let order = poly.vanishing_order(&z0)?;
    out.field("order_at_1/(N+2)", order);
    let kernel = betti(x, n - 1)?;
    out.field("dim_ker_laplacian", kernel);
    out.field(
        "laplacian_identity",
        if check_laplacian_identity(x)? {
            "holds"
        } else {
            "fails"
        },
    );
    if let Some(at) = at {
        let z = parse_rational(at)?;
        out.field(
            &format!("order_at_{}", format_rational(&z)),
            poly.vanishing_order(&z)?,
        );
    }
    let pass = order == kernel;
    out.verdict(pass);
    Ok(if pass { Status::Pass } else { Status::Fail })
}

fn check_length(len: usize) -> Result<()> {
    if len == 0 || len > MAX_ENUMERATION_LENGTH {
        bail!("length bound must be in 1..={MAX_ENUMERATION_LENGTH}, got {len}");
    }
    Ok(())
}

fn geodesics(x: &PolyComplex, max_len: usize, list: bool, out: &Report) -> Result<Status> {
    check_length(max_len)?;
    let geos = closed_geodesics(x, max_len)?;
    let rows: Vec<Vec<String>> = geozeta::geodesic::spectrum_from(&geos, max_len)
        .iter()
        .map(|r| {
            vec![
                r.length.to_string(),
                r.classes.to_string(),
                r.signed_sum.to_string(),
            ]
        })
        .collect();
    out.field("classes", geos.len());
    out.section("per length");
    out.table("length", &["k", "count", "signed_sum"], &rows);
    if list {
        out.section("classes");
        let rows: Vec<Vec<String>> = geos
            .iter()
            .enumerate()
            .map(|(i, g)| {
                vec![
                    i.to_string(),
                    g.len().to_string(),
                    g.sign.to_string(),
                    g.primitive_length.to_string(),
                    join(&g.cells),
                ]
            })
            .collect();
        out.table(
            "geodesic",
            &["#", "length", "sign", "primitive", "cells"],
            &rows,
        );
    }
    Ok(Status::Pass)
}

fn trace_check(x: &PolyComplex, max_k: usize, out: &Report) -> Result<Status> {
    check_length(max_k)?;
    let spectrum = signed_length_spectrum(x, max_k)?;
    let traces = transfer_operator(x)?.power_traces(max_k);
    let mut pass = true;
    let rows: Vec<Vec<String>> = spectrum
        .iter()
        .zip(&traces)
        .map(|(row, tr)| {
            let ok = geozeta::linalg::int(row.signed_sum) == *tr;
            pass &= ok;
            vec![
                row.length.to_string(),
                row.signed_sum.to_string(),
                tr.to_string(),
                if ok { "ok" } else { "MISMATCH" }.to_string(),
            ]
        })
        .collect();
    out.table("k", &["k", "signed_sum", "trace", "status"], &rows);
    out.verdict(pass);
    Ok(if pass { Status::Pass } else { Status::Fail })
}

fn linking(
    x: &PolyComplex,
    k1: &Chain,
    k2: &Chain,
    z: Option<&str>,
    max_len: usize,
    out: &Report,
) -> Result<Status> {
    check_length(max_len)?;
    let d = build_dual(x)?;
    let problem = LinkingProblem::new(x, &d, k1, k2)?;
    let crit = problem.critical_point();
    let eta = problem.eta_exact(&crit)?.value;
    let lk = linking_oracle(x, &d, k1, k2)?;
    out.field("critical_point", format_rational(&crit));
    out.field("eta_at_critical", format_rational(&eta));
    out.field("linking_number", format_rational(&lk));

    let sums = problem.per_length_table(max_len)?;
    out.section("orthogeodesic signed sums");
    let rows: Vec<Vec<String>> = sums
        .iter()
        .enumerate()
        .map(|(k, s)| vec![(k + 1).to_string(), s.to_string()])
        .collect();
    out.table("length", &["k", "signed_sum"], &rows);

    let b = spectral_radius_bound(problem.transfer());
    out.field("row_sum_bound", format_rational(&b));
    let z = match z {
        Some(z) => Some(parse_rational(z)?),
        None if !b.is_zero() => Some((b.clone() * Rational::from_integer(2.into())).recip()),
        None => None,
    };
    if let Some(z) = z {
        let exact = problem.eta_exact(&z)?.value;
        let partial = problem.eta_partial_sum(&z, max_len)?.value;
        out.field("z", format_rational(&z));
        out.field("eta_exact", format_rational(&exact));
        out.field("eta_partial", format_rational(&partial));
        out.field("difference", rational_to_f64(&(&exact - &partial).abs()));
        match problem.tail_bound(&z, max_len) {
            Some(bound) => out.field("tail_bound", rational_to_f64(&bound)),
            None => out.field("tail_bound", "none (|z|B >= 1)"),
        }
    }
    let pass = eta == lk;
    out.verdict(pass);
    Ok(if pass { Status::Pass } else { Status::Fail })
}

fn l2_zeta_check(
    cover: &CoverData,
    s: &[Rational],
    s_limit: &Rational,
    out: &Report,
) -> Result<Status> {
    let report = cover.fk_zeta_asymptotic_check(s)?;
    let limit = cover.fk_zeta_asymptotic_check(std::slice::from_ref(s_limit))?;
    let b = rational_to_f64(&report.l2_betti);
    out.field("l2_betti", format_rational(&report.l2_betti));
    out.section("samples");
    let rows: Vec<Vec<String>> = report
        .samples
        .iter()
        .map(|x| {
            vec![
                format!("{:e}", x.s),
                format!("{:.6e}", x.zeta_fk),
                format!("{:.6e}", x.chi),
                format!("{:.6e}", x.chi_zeta),
            ]
        })
        .collect();
    out.table("s", &["s", "zeta_fk", "chi", "z^c*chi"], &rows);
    out.field("slope_zeta", format!("{:.6}", report.slope_zeta));
    out.field("slope_chi", format!("{:.6}", report.slope_chi));
    let normalized = limit.samples[0].normalized;
    let rel = (normalized - report.det_laplacian).abs() / report.det_laplacian;
    out.field("det_fk_laplacian", format!("{:.9e}", report.det_laplacian));
    out.field("normalized_at_limit", format!("{normalized:.9e}"));
    out.field("relative_error", format!("{rel:.3e}"));
    let tolerance = if b > 0.0 { 0.05 * b } else { 0.05 };
    let slope_ok = (report.slope_zeta - b).abs() <= tolerance;
    let limit_ok = rel < 1e-3;
    out.field("slope_within_5_percent", slope_ok);
    out.field("limit_within_0.1_percent", limit_ok);
    let pass = slope_ok && limit_ok;
    out.verdict(pass);
    Ok(if pass { Status::Pass } else { Status::Fail })
}

fn psi(cover: &CoverData, count: usize, t: &Rational, out: &Report) -> Result<Status> {
    let n = cover.cover().dim();
    let coeffs = cover.psi_series(count)?;
    let traces = cover.laplacian_power_traces(count)?;
    let density = cover.spectral_density(n - 1, &cover.laplacian(n - 1)?)?;
    let mut pass = true;
    let rows: Vec<Vec<String>> = (1..=count)
        .map(|k| {
            // the same trace from the numerical spectrum
            let spectral = density
                .positive
                .iter()
                .map(|l| l.powi(k as i32))
                .sum::<f64>()
                / cover.order() as f64;
            let exact = rational_to_f64(&traces[k]);
            pass &= (spectral - exact).abs() <= 1e-9 * exact.abs().max(1.0);
            vec![
                k.to_string(),
                format_rational(&coeffs[k - 1]),
                format_rational(&traces[k]),
            ]
        })
        .collect();
    out.table("k", &["k", "psi_coefficient", "vn_trace"], &rows);
    let b = cover.l2_betti(n - 1)?;
    let heat = cover.heat_trace(rational_to_f64(t))?;
    let gap = (heat - rational_to_f64(&b)).abs();
    out.field("l2_betti", format_rational(&b));
    out.field("t", format_rational(t));
    out.field("heat_trace", format!("{heat:.12}"));
    out.field("heat_trace_minus_betti", format!("{gap:.3e}"));
    let pass = pass && gap < 1e-6;
    out.verdict(pass);
    Ok(if pass { Status::Pass } else { Status::Fail })
}

fn holonomy(cover: &CoverData, max_k: usize, out: &Report) -> Result<Status> {
    check_length(max_k)?;
    let counts = cover.trivial_holonomy_spectrum(max_k)?;
    let traces = cover.transfer_vn_traces(max_k)?;
    let mut pass = true;
    let rows: Vec<Vec<String>> = counts
        .iter()
        .zip(&traces)
        .enumerate()
        .map(|(k, (c, tr))| {
            let ok = Rational::from_integer((*c).into()) == *tr;
            pass &= ok;
            vec![
                (k + 1).to_string(),
                c.to_string(),
                format_rational(tr),
                if ok { "ok" } else { "MISMATCH" }.into(),
            ]
        })
        .collect();
    out.table("k", &["k", "trivial_holonomy", "vn_trace", "status"], &rows);
    out.verdict(pass);
    Ok(if pass { Status::Pass } else { Status::Fail })
}
