use deformation::{build_family, check_family_identities, evaluate_fiber, fiber_cohomology, kodaira_spencer, DeformError};
use hochschild::{bar_oracle_hh, BarTruncation};
use quiver_core::{Field, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surface_dict::{predicted_hh2, random_surface, standard_algebra, Boundary, StopConfig, SurfaceData};

fn three_parameter() -> SurfaceData {
    let b = Boundary::new;
    SurfaceData::new(0, 0, vec![b(StopConfig::Stops(2), 0), b(StopConfig::Full, 1), b(StopConfig::Full, 2), b(StopConfig::Stops(1), 1)])
}

fn nonzero(rng: &mut ChaCha8Rng) -> Q {
    let n = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Q::from_ratio(n, rng.gen_range(1..=5))
}

#[test]
fn ks_is_an_isomorphism_at_the_origin() {
    let s = three_parameter();
    let b = standard_algebra(&s).unwrap();
    let f = build_family(&b, &s).unwrap();
    assert_eq!(f.dim(), 3);
    assert!(check_family_identities(&f).unwrap().ok());
    let k = kodaira_spencer(&f, &vec![Q::from_i64(0); 3], BarTruncation::new(3, 6)).unwrap();
    assert!(k.stable);
    assert_eq!((k.rank, k.hh2), (3, Some(3)));
    assert!(k.cocycle.iter().all(|&c| c) && k.coboundary.iter().all(|&c| !c));
}

#[test]
fn columns_die_exactly_where_the_parameter_is_switched_on() {
    let s = three_parameter();
    let f = build_family(&standard_algebra(&s).unwrap(), &s).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for mask in 1..8u32 {
        let lambda: Vec<Q> = (0..3).map(|i| if mask & (1 << i) != 0 { nonzero(&mut rng) } else { Q::from_i64(0) }).collect();
        let k = kodaira_spencer(&f, &lambda, BarTruncation::new(3, 6)).unwrap();
        let expect: Vec<bool> = (0..3).map(|i| mask & (1 << i) != 0).collect();
        assert_eq!(k.coboundary, expect, "λ = {:?}", k.lambda);
        let alive = 3 - mask.count_ones() as usize;
        assert_eq!((k.rank, k.hh2), (alive, Some(alive)), "λ = {:?}", k.lambda);
    }
}

#[test]
fn generic_fibers_are_rigid() {
    let s = three_parameter();
    let f = build_family(&standard_algebra(&s).unwrap(), &s).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..4 {
        let lambda: Vec<Q> = (0..3).map(|_| nonzero(&mut rng)).collect();
        let mut fiber = evaluate_fiber(&f, &lambda).unwrap();
        fiber.validate();
        let hh = bar_oracle_hh(&fiber, 2, BarTruncation::new(3, 6)).unwrap();
        assert_eq!(hh.dimension, Some(0), "λ = {}", lambda.iter().map(Field::to_exact_string).collect::<Vec<_>>().join(","));
        assert!(!fiber_cohomology(&fiber, (-6, 6), 12).unwrap().truncated);
    }
}

#[test]
fn random_proper_surfaces() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut built = 0;
    for _ in 0..200 {
        let s = random_surface(&mut rng, 6);
        let b = standard_algebra(&s).unwrap();
        match build_family(&b, &s) {
            Ok(f) => {
                assert_eq!(f.dim(), predicted_hh2(&s).0);
                let c = check_family_identities(&f).unwrap();
                assert!(c.ok(), "{}: {:?}", s.to_json(), c.violations);
                let n = b.quiver().num_arrows();
                if built < 12 && n <= 10 {
                    let k = kodaira_spencer(&f, &vec![Q::from_i64(0); f.dim()], BarTruncation::new(3, n + 1)).unwrap();
                    assert_eq!((k.rank, k.hh2), (f.dim(), Some(f.dim())), "{}", s.to_json());
                }
                built += 1;
            }
            Err(DeformError::NotProper(_) | DeformError::Unsupported(_)) => {}
            Err(e) => panic!("{}: {e}", s.to_json()),
        }
    }
    assert!(built >= 20, "only {built} families");
}
