use rand::Rng;

use crate::surface::{validate_surface, Boundary, StopConfig, SurfaceData};

/// Arrows on the maximal overlap of the standard algebra (without the stop chain on `∂0`).
pub fn thread_length(s: &SurfaceData) -> usize {
    let d0 = s.distinguished_index();
    let mut units = s.genus + s.orbifold_points;
    let mut len = 3 * s.genus + s.orbifold_points;
    for (i, b) in s.boundary.iter().enumerate() {
        if Some(i) == d0 {
            continue;
        }
        units += 1;
        if b.stops != StopConfig::Full {
            len += 1;
        }
    }
    len + units.saturating_sub(1)
}

/// A valid surface with `g ≤ 2`, at most five components, `|winding| ≤ 3` and
/// thread length at most `max_thread`; the winding of `∂0` satisfies the index identity.
pub fn random_surface<R: Rng>(rng: &mut R, max_thread: usize) -> SurfaceData {
    loop {
        let genus = rng.gen_range(0..=2);
        let orbifold_points = rng.gen_range(0..=2);
        let others = rng.gen_range(0..=4);
        let s0 = if rng.gen_bool(0.7) { 1 } else { 2 };
        let mut boundary = vec![Boundary::new(StopConfig::Stops(s0), 0)];
        for _ in 0..others {
            let stops = match rng.gen_range(0..4) {
                0 => StopConfig::Stops(rng.gen_range(1..=2)),
                1 => StopConfig::Full,
                _ => StopConfig::None,
            };
            let winding = if rng.gen_bool(0.5) { rng.gen_range(1..=2) } else { rng.gen_range(-3..=3) };
            boundary.push(Boundary::new(stops, winding));
        }
        let mut s = SurfaceData { genus, orbifold_points, boundary, distinguished: Some(0) };
        let rest: i64 = s.boundary[1..].iter().map(|b| b.winding).sum();
        s.boundary[0].winding = s.index_sum() - rest;
        if s.boundary[0].winding.abs() > 3 || thread_length(&s) > max_thread {
            continue;
        }
        // A lone disk with one stop has no units; the identity does not apply to it.
        if s.genus + s.orbifold_points + others == 0 {
            continue;
        }
        if validate_surface(&s).ok() {
            return s;
        }
    }
}
