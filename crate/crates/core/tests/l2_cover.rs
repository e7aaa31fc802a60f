mod common;

use geozeta::complex::{generate, Generator};
use geozeta::l2::{
    build_cyclic_cover, build_cyclic_cover_of, emit_permutations, parse_permutations, CoverData,
};
use geozeta::linalg::{rat, IntMatrix};
use geozeta::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn permutation_text_round_trip(perms in prop::collection::vec(
        (1usize..12).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle()), 1..4)) {
        prop_assert_eq!(parse_permutations(&emit_permutations(&perms)).unwrap(), perms);
    }

    #[test]
    fn von_neumann_trace_is_trace_over_order(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, m in 1usize..=3) {
        let cover = build_cyclic_cover(3, 3, m).unwrap();
        let lap = cover.laplacian(1).unwrap();
        // any polynomial in an equivariant operator is equivariant
        let p = lap.mul(&lap).scale(&a.into())
            .add(&lap.scale(&b.into()))
            .add(&IntMatrix::identity(lap.rows()).scale(&c.into()));
        let full = p.trace();
        prop_assert_eq!(cover.vn_trace(1, &p).unwrap(), geozeta::linalg::Rational::new(full, BigInt::from(m)));
    }

    #[test]
    fn l2_betti_is_betti_over_order(m in 1usize..=4) {
        let cover = build_cyclic_cover(3, 4, m).unwrap();
        for k in 0..=2 {
            let b = common::betti(cover.cover(), k) as i64;
            prop_assert_eq!(cover.l2_betti(k).unwrap(), rat(b, m as i64));
        }
    }
}

#[test]
fn trivial_cover_recovers_the_base() {
    let cover = build_cyclic_cover(3, 3, 1).unwrap();
    assert_eq!(
        cover.cover(),
        &generate(&Generator::GridTorus(3, 3)).unwrap()
    );
    assert_eq!(cover.l2_betti(1).unwrap(), rat(2, 1));
}

#[test]
fn quotient_is_the_base_torus() {
    for g in [Generator::GridTorus(3, 3), Generator::TriTorus(3, 3)] {
        let cover = build_cyclic_cover_of(&g, 3).unwrap();
        assert_eq!(cover.base().counts(), generate(&g).unwrap().counts());
        assert!(cover.is_equivariant(1, &cover.laplacian(1).unwrap()));
    }
}

#[test]
fn non_commuting_action_is_rejected() {
    let cover = build_cyclic_cover(3, 3, 3).unwrap();
    let mut perms: Vec<Vec<usize>> = (0..=2).map(|k| cover.generator(k).to_vec()).collect();
    perms[1].swap(0, 1);
    let err = CoverData::from_action(cover.cover().clone(), perms).unwrap_err();
    assert!(matches!(err, Error::BadAction(_)));
}

#[test]
fn holonomy_counts_on_triangulated_cover() {
    let cover = build_cyclic_cover_of(&Generator::TriTorus(3, 3), 3).unwrap();
    let traces = common::power_traces(&common::transfer(cover.cover()), 6);
    let counts = cover.trivial_holonomy_spectrum(6).unwrap();
    for (c, t) in counts.iter().zip(&traces) {
        assert_eq!(3 * c, *t);
    }
}

#[test]
fn heat_trace_series_tracks_the_spectrum_for_small_time() {
    let cover = build_cyclic_cover(3, 3, 3).unwrap();
    let exact = cover.heat_trace_series(&rat(1, 100), 12).unwrap();
    let spectral = cover.heat_trace(0.01).unwrap();
    assert!((geozeta::linalg::rational_to_f64(&exact) - spectral).abs() < 1e-9);
}
