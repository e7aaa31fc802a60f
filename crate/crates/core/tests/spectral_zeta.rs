mod common;

use geozeta::complex::{generate, Generator};
use geozeta::geodesic::{closed_geodesics, signed_length_spectrum};
use geozeta::linalg::rat;
use geozeta::spectral::{check_laplacian_identity, laplacian, transfer_operator};
use geozeta::zeta::{critical_point, zeta_from_geodesics, zeta_polynomial};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

fn fixtures() -> impl Strategy<Value = Generator> {
    prop_oneof![
        Just(Generator::Octahedron),
        (3usize..=5).prop_map(Generator::SimplexBoundary),
        (3usize..=4, 3usize..=4).prop_map(|(a, b)| Generator::GridTorus(a, b)),
        (3usize..=4, 3usize..=4).prop_map(|(a, b)| Generator::TriTorus(a, b)),
        Just(Generator::CrossPolytope(4)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn laplacian_is_positive_semidefinite(g in fixtures(), v in prop::collection::vec(-4i64..=4, 60)) {
        let x = generate(&g).unwrap();
        for k in 0..=x.dim() {
            let lap = laplacian(&x, k).unwrap().matrix;
            prop_assert!(lap.is_symmetric());
            let c = lap.rows();
            let u: Vec<BigInt> = (0..c).map(|i| BigInt::from(v[i % v.len()])).collect();
            let q: BigInt = lap.mul_vec(&u).iter().zip(&u).map(|(a, b)| a * b).sum();
            prop_assert!(!q.is_negative());
        }
    }

    #[test]
    fn transfer_matches_brute_force(g in fixtures()) {
        let x = generate(&g).unwrap();
        let t = transfer_operator(&x).unwrap();
        let oracle = common::transfer(&x);
        for (i, row) in oracle.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                prop_assert_eq!(i64::from(t.entry(i, j)), *v);
            }
        }
        prop_assert!(t.matrix().is_symmetric());
    }
}

#[test]
fn identity_holds_exactly_on_simplicial_fixtures() {
    for g in [
        Generator::Octahedron,
        Generator::SimplexBoundary(3),
        Generator::SimplexBoundary(5),
        Generator::TriTorus(4, 3),
        Generator::CrossPolytope(5),
    ] {
        let x = generate(&g).unwrap();
        assert!(check_laplacian_identity(&x).unwrap(), "{g}");
    }
    assert!(!check_laplacian_identity(&generate(&Generator::CubeTorus(3, 3, 3)).unwrap()).unwrap());
}

#[test]
fn trace_formula_on_triangulated_torus() {
    let x = generate(&Generator::TriTorus(3, 3)).unwrap();
    let traces = common::power_traces(&common::transfer(&x), 7);
    let rows = signed_length_spectrum(&x, 7).unwrap();
    assert_eq!(
        rows.iter().map(|r| r.signed_sum).collect::<Vec<_>>(),
        traces
    );
}

#[test]
fn euler_product_on_cross_polytope() {
    let x = generate(&Generator::CrossPolytope(4)).unwrap();
    let poly = zeta_polynomial(&transfer_operator(&x).unwrap());
    let euler = zeta_from_geodesics(&x, 6).unwrap();
    for (k, e) in euler.iter().enumerate() {
        assert_eq!(
            *e,
            poly.coeffs().get(k).cloned().unwrap_or_default(),
            "z^{k}"
        );
    }
}

#[test]
fn every_geodesic_is_a_closed_admissible_walk() {
    let x = generate(&Generator::GridTorus(3, 4)).unwrap();
    let t = common::transfer(&x);
    for g in closed_geodesics(&x, 6).unwrap() {
        let q = g.cells.len();
        let signs: Vec<i64> = (0..q)
            .map(|i| t[g.cells[i]][g.cells[(i + 1) % q]])
            .collect();
        assert!(signs.iter().all(|s| *s != 0));
        let reversing = signs.iter().filter(|s| **s < 0).count();
        assert_eq!(reversing, g.reversing_number);
        assert_eq!(q % g.primitive_length, 0);
    }
}

#[test]
fn zeta_is_one_at_zero_and_matches_determinant() {
    for g in [
        Generator::Octahedron,
        Generator::GridTorus(3, 3),
        Generator::TriTorus(3, 3),
    ] {
        let x = generate(&g).unwrap();
        let t = common::transfer(&x);
        let c = t.len();
        let zeta = zeta_polynomial(&transfer_operator(&x).unwrap());
        assert_eq!(zeta.eval(&rat(0, 1)), rat(1, 1));
        // det(1 − T/2) · 2^c = det(2 − T)
        let shifted: common::Dense = (0..c)
            .map(|i| {
                (0..c)
                    .map(|j| if i == j { 2 } else { 0 } - t[i][j])
                    .collect()
            })
            .collect();
        let scaled =
            zeta.eval(&rat(1, 2)) * geozeta::linalg::rat_int(&BigInt::from(2).pow(c as u32));
        assert_eq!(
            scaled,
            geozeta::linalg::rat_int(&common::determinant(&shifted)),
            "{g}"
        );
        let order = zeta.vanishing_order(&critical_point(&x).unwrap()).unwrap();
        if g == Generator::TriTorus(3, 3) {
            assert_eq!(order, common::betti(&x, 1));
        }
    }
}
