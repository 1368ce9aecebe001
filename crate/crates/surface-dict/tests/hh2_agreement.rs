use hochschild::{extract_standard_cocycles, hh_dimension, is_killoverlap_normal, Truncation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use surface_dict::{predicted_hh2, random_surface, standard_algebra};

#[test]
fn random_surfaces_match_prediction() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    for i in 0..24 {
        let s = random_surface(&mut rng, 10);
        let a = standard_algebra(&s).unwrap();
        let (want, _) = predicted_hh2(&s);
        let t = std::time::Instant::now();
        let r = hh_dimension(&a, 2, Truncation::new(10, 16)).unwrap();
        eprintln!("{i}: {} arrows, predicted {want}, got {:?} in {:?}", a.quiver().num_arrows(), r.dimension, t.elapsed());
        assert_eq!(r.dimension, Some(want), "{}", s.to_json());
        let cocycles = extract_standard_cocycles(&a).unwrap();
        assert_eq!(cocycles.len(), want, "{}", s.to_json());
        for c in &r.cocycles {
            assert!(is_killoverlap_normal(&a, c), "{}: {:?}", s.to_json(), c.to_json(a.quiver()));
        }
    }
}
