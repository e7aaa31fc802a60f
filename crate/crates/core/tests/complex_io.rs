mod common;

use geozeta::complex::{
    emit_chain, emit_complex, generate, normalize, parse_chain, parse_complex, Chain, Generator,
};
use geozeta::Error;
use proptest::prelude::*;

fn fixtures() -> impl Strategy<Value = Generator> {
    prop_oneof![
        Just(Generator::Octahedron),
        (3usize..=5).prop_map(Generator::SimplexBoundary),
        (3usize..=5, 3usize..=5).prop_map(|(a, b)| Generator::GridTorus(a, b)),
        (3usize..=4, 3usize..=4).prop_map(|(a, b)| Generator::TriTorus(a, b)),
        (3usize..=4).prop_map(Generator::CrossPolytope),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn emit_then_parse_is_identity(g in fixtures()) {
        let x = generate(&g).unwrap();
        let text = emit_complex(&x);
        let back = parse_complex(&text).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.fingerprint(), x.fingerprint());
        prop_assert_eq!(normalize(&text).unwrap(), text);
    }

    #[test]
    fn boundary_of_boundary_vanishes(g in fixtures(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let x = generate(&g).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for k in 2..=x.dim() {
            let c = common::random_chain(&mut rng, k, x.count(k), 6);
            let dd = x.apply_boundary(&x.apply_boundary(&c).unwrap()).unwrap();
            prop_assert!(dd.is_empty());
        }
    }

    #[test]
    fn chain_text_round_trip(terms in prop::collection::vec((0usize..40, -5i64..=5), 0..10)) {
        let c = Chain::from_integers(1, &terms);
        prop_assert_eq!(parse_chain(&emit_chain(&c)).unwrap(), c);
    }
}

#[test]
fn generator_names_round_trip() {
    for name in [
        "octahedron",
        "simplex_boundary(4)",
        "grid_torus(3,4)",
        "cube_torus(3,3,3)",
    ] {
        let g: Generator = name.parse().unwrap();
        assert_eq!(g.to_string(), name);
    }
    assert!(matches!(
        "moebius(3)".parse::<Generator>(),
        Err(Error::UnsupportedGenerator(_))
    ));
}

#[test]
fn generated_boundaries_match_oracle_matrices() {
    let x = generate(&Generator::GridTorus(3, 4)).unwrap();
    for k in 1..=2 {
        let m = x.boundary_matrix(k);
        let oracle = common::boundary(&x, k);
        for (i, row) in oracle.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*m.get(i, j), (*v).into());
            }
        }
    }
}

#[test]
fn dangling_and_duplicate_faces_are_reported() {
    let dangling = "pcomplex 2\ncells 0 3\ncells 1 3\ncells 2 2\nboundary 1 0 : +1 -7\n";
    assert!(matches!(
        parse_complex(dangling),
        Err(Error::DanglingFace { face: 7, .. })
    ));
    let dup = "pcomplex 2\ncells 0 3\ncells 1 3\ncells 2 2\nboundary 1 0 : +1 -1\n";
    assert!(matches!(
        parse_complex(dup),
        Err(Error::DuplicateFace { face: 1, .. })
    ));
    assert!(matches!(
        parse_complex("pcomplex 1\n"),
        Err(Error::DimensionTooSmall(1))
    ));
    assert!(matches!(
        parse_complex("complex 2\n"),
        Err(Error::Syntax { line: 1, .. })
    ));
}

#[test]
fn betti_numbers_match_rank_oracle() {
    for g in [
        Generator::Octahedron,
        Generator::GridTorus(3, 4),
        Generator::TriTorus(3, 3),
        Generator::SimplexBoundary(4),
        Generator::CubeTorus(3, 3, 3),
    ] {
        let x = generate(&g).unwrap();
        for k in 0..=x.dim() {
            assert_eq!(
                geozeta::homology::betti(&x, k).unwrap(),
                common::betti(&x, k),
                "{g} k={k}"
            );
        }
    }
}
