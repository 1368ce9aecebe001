use hochschild::{bar_oracle_hh, hh_dimension, BarTruncation, Truncation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use surface_dict::{predicted_hh2, random_surface, standard_algebra, Boundary, StopConfig, SurfaceData};

fn check(s: &SurfaceData) {
    let a = standard_algebra(s).unwrap();
    for n in 1..=3 {
        let red = hh_dimension(&a, n, Truncation::new(10, 16)).unwrap();
        let bar = bar_oracle_hh(&a, n, BarTruncation::default()).unwrap();
        assert!(red.stable && bar.stable, "{}", s.to_json());
        assert_eq!(red.dimension, bar.dimension, "{} HH^{n}", s.to_json());
        if n == 2 {
            assert_eq!(red.dimension, Some(predicted_hh2(s).0), "{}", s.to_json());
        }
    }
}

#[test]
fn contributing_proper_fixtures() {
    let b = Boundary::new;
    // Full stops of winding 1 and 2 plus a one-stop winding-1 component.
    check(&SurfaceData::new(
        0,
        0,
        vec![b(StopConfig::Stops(2), 0), b(StopConfig::Full, 1), b(StopConfig::Full, 2), b(StopConfig::Stops(1), 1)],
    ));
    // Orbifold point with a one-stop distinguished component of winding 1.
    check(&SurfaceData::new(0, 1, vec![b(StopConfig::Stops(1), -1), b(StopConfig::Stops(1), 2)]));
    check(&SurfaceData::new(0, 2, vec![b(StopConfig::Stops(1), 1), b(StopConfig::Full, 1)]));
    check(&SurfaceData::new(1, 0, vec![b(StopConfig::Stops(1), 1), b(StopConfig::Full, 3)]));
}

#[test]
fn bar_and_overlap_agree_on_proper_standard_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 12 {
        let s = random_surface(&mut rng, 10);
        if s.boundary.iter().any(|b| b.stops == StopConfig::None) {
            continue;
        }
        let a = standard_algebra(&s).unwrap();
        if a.quiver().num_arrows() > 12 {
            continue;
        }
        for n in 1..=3 {
            let red = hh_dimension(&a, n, Truncation::new(10, 16)).unwrap();
            let bar = bar_oracle_hh(&a, n, BarTruncation::default()).unwrap();
            assert!(red.stable && bar.stable, "{}", s.to_json());
            assert_eq!(red.dimension, bar.dimension, "{} HH^{n}", s.to_json());
        }
        checked += 1;
    }
}

proptest::proptest! {
    #[test]
    fn generated_surfaces_are_valid_and_round_trip(seed in 0u64..10_000) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let s = surface_dict::random_surface(&mut rng, 10);
        proptest::prop_assert!(surface_dict::validate_surface(&s).ok());
        proptest::prop_assert_eq!(surface_dict::SurfaceData::from_json(&s.to_json()).unwrap(), s);
    }
}
