//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use ainfinity::pillowcase::{compare_with_skew_gentle, pillowcase_dg, pillowcase_surface, PillowcaseCounts};
use ainfinity::{check_stasheff, pillowcase_cohomology, pillowcase_family, AInfinityPresentation};
use deformation::observations::{contracted_loop, contracted_pair, split_vertex};
use deformation::{
    build_family, check_family_identities, evaluate_fiber, fiber_cohomology, kodaira_spencer, verify_morphism, Verdict,
};
use hochschild::{bar_oracle_hh, hh_dimension, BarTruncation, Cochain, ReducedComplex, Truncation, ValueIndex};
use quiver_core::fixtures::{dual_numbers, local_model, pillowcase_precursor, point, polynomial, skew_gentle};
use quiver_core::{Element, Field, Path as QPath, Presentation, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use surface_dict::{predicted_hh2, random_surface, standard_algebra, validate_surface, Boundary, StopConfig, SurfaceData};
use weak_dual::{classify_vertices, find_isomorphism, is_proper, locally_proper, weak_dual};

/// Per-fixture wall clock for criterion 1.
const HH_FIXTURE_LIMIT: Duration = Duration::from_secs(5);
/// Total wall clock for criterion 2.
const AGREEMENT_LIMIT: Duration = Duration::from_secs(600);
/// Overlap length of the second (confirming) level in criterion 2.
const MAX_OVERLAP_LEN: usize = 12;
const SEED: u64 = 20241015;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn validated(mut p: Presentation<Q>) -> Presentation<Q> {
    let r = p.validate();
    assert!(r.ok(), "{:?}", r.errors);
    p
}

fn b(stops: StopConfig, w: i64) -> Boundary {
    Boundary::new(stops, w)
}

fn cylinder(stops: StopConfig, w: i64) -> SurfaceData {
    SurfaceData::new(0, 0, vec![b(StopConfig::Stops(1), -w), b(stops, w)])
}

fn three_parameter() -> SurfaceData {
    SurfaceData::new(0, 0, vec![b(StopConfig::Stops(2), 0), b(StopConfig::Full, 1), b(StopConfig::Full, 2), b(StopConfig::Stops(1), 1)])
}

fn nonzero(rng: &mut ChaCha8Rng) -> Q {
    let n = rng.gen_range(1..=7) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Q::from_ratio(n, rng.gen_range(1..=4))
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_surfalg")
}

/// Runs the binary and returns its exit code and JSON report.
fn surfalg(args: &[&str]) -> (i32, Value) {
    let out = Command::new(bin()).args(args).env_remove(cli::BOUNDS_ENV).output().expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), report)
}

fn fixture_file(dir: &Path, name: &str) -> PathBuf {
    let (code, v) = surfalg(&["fixture", name]);
    assert_eq!(code, 0, "fixture {name}");
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    path
}

fn c1_hh2_fixtures(dir: &Path) -> Outcome {
    let cases: Vec<(&str, Presentation<Q>, usize)> = vec![
        ("k[q], |q| = 1", polynomial(1), 1),
        ("k[q], |q| = 2", polynomial(2), 1),
        ("k[p]/(p²), |p| = 0", dual_numbers(0), 1),
        ("k[p]/(p²), |p| = -1", dual_numbers(-1), 1),
        ("six-vertex precursor", pillowcase_precursor(), 4),
    ];
    let mut slowest = Duration::ZERO;
    for (name, p, want) in cases {
        let p = validated(p);
        let t = Instant::now();
        let r = hh_dimension(&p, 2, Truncation::default()).map_err(|e| format!("{name}: {e}"))?;
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        ensure(r.dimension == Some(want), || format!("{name}: HH² = {:?}, want {want}", r.dimension))?;
        ensure(dt < HH_FIXTURE_LIMIT, || format!("{name}: {dt:?} over {HH_FIXTURE_LIMIT:?}"))?;
    }
    for (name, want) in [("cylinder_w1", 1), ("point", 0), ("pillowcase_precursor", 4)] {
        let path = fixture_file(dir, name);
        let (code, r) = surfalg(&["hh", "--n", "2", path.to_str().unwrap()]);
        ensure(code == 0 && r["result"]["dimension"] == want, || format!("cli hh {name}: exit {code}, {}", r["result"]))?;
        ensure(r["config"]["bounds"].is_array() && r["config"]["seed"].is_u64(), || "report lacks bounds or seed".into())?;
    }
    Ok(format!("5 fixtures exact, slowest {slowest:.2?}"))
}

fn c2_surface_agreement() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    while checked < 20 {
        let s = random_surface(&mut rng, 10);
        ensure(s.genus <= 2 && s.boundary.len() <= 5 && s.boundary.iter().all(|b| b.winding.abs() <= 3), || {
            format!("generator left its range: {}", s.to_json())
        })?;
        let a = standard_algebra(&s).map_err(|e| format!("{}: {e}", s.to_json()))?;
        let want = predicted_hh2(&s).0;
        let r = hh_dimension(&a, 2, Truncation::new(MAX_OVERLAP_LEN - 2, 16)).map_err(|e| e.to_string())?;
        ensure(r.stable && r.dimension == Some(want), || format!("{}: HH² {:?} vs predicted {want}", s.to_json(), r.levels))?;
        checked += 1;
    }
    let dt = t.elapsed();
    ensure(dt < AGREEMENT_LIMIT, || format!("{dt:?} over {AGREEMENT_LIMIT:?}"))?;
    Ok(format!("{checked} random surfaces, {dt:.1?}"))
}

fn proper_fixtures() -> Vec<(String, Presentation<Q>)> {
    let mut out: Vec<(String, Presentation<Q>)> = vec![
        ("point".into(), validated(point())),
        ("k[p]/(p²) |p|=0".into(), validated(dual_numbers(0))),
        ("k[p]/(p²) |p|=-1".into(), validated(dual_numbers(-1))),
        ("k[p]/(p²) |p|=1".into(), validated(dual_numbers(1))),
        ("local model".into(), validated(local_model())),
        ("six-vertex precursor".into(), validated(pillowcase_precursor())),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut extra = 0;
    while extra < 6 {
        let s = random_surface(&mut rng, 6);
        let a = standard_algebra(&s).unwrap();
        if is_proper(&a) && a.quiver().num_arrows() <= 12 {
            out.push((s.to_json(), a));
            extra += 1;
        }
    }
    out
}

fn c3_oracle_equivalence() -> Outcome {
    let mut compared = 0;
    let mut unstable = Vec::new();
    for (name, p) in proper_fixtures() {
        for n in 1..=3 {
            let red = hh_dimension(&p, n, Truncation::default()).map_err(|e| format!("{name}: {e}"))?;
            let bar = bar_oracle_hh(&p, n, BarTruncation::default()).map_err(|e| format!("{name}: {e}"))?;
            ensure(red.stable == bar.stable, || format!("{name} HH^{n}: stability differs {:?} / {:?}", red.levels, bar.levels))?;
            if red.stable {
                ensure(red.dimension == bar.dimension, || {
                    format!("{name} HH^{n}: overlap {:?} vs bar {:?}", red.dimension, bar.dimension)
                })?;
                compared += 1;
            } else {
                unstable.push(format!("{name} HH^{n}"));
            }
        }
    }
    Ok(format!("{compared} exact agreements; infinite on both sides: {}", unstable.join(", ")))
}

fn sample_paths(p: &Presentation<Q>) -> Vec<QPath> {
    p.irreducible_paths(5)
}

fn c4_invariants() -> Outcome {
    let mut algebras: Vec<(String, Presentation<Q>)> = vec![
        ("local model".into(), validated(local_model())),
        ("precursor".into(), validated(pillowcase_precursor())),
        ("skew-gentle".into(), validated(skew_gentle())),
        ("k[q]".into(), validated(polynomial(1))),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    for _ in 0..8 {
        let s = random_surface(&mut rng, 8);
        algebras.push((s.to_json(), standard_algebra(&s).unwrap()));
    }
    let s = three_parameter();
    let f = build_family(&standard_algebra(&s).unwrap(), &s).map_err(|e| e.to_string())?;
    for _ in 0..3 {
        let l: Vec<Q> = (0..f.dim()).map(|_| nonzero(&mut rng)).collect();
        algebras.push((format!("fiber {}", exact(&l).join(",")), evaluate_fiber(&f, &l).map_err(|e| e.to_string())?));
    }
    let mut triples = 0;
    let mut slices = 0;
    for (name, a) in &algebras {
        let r = a.check();
        ensure(r.ok(), || format!("{name}: {:?}", r.errors))?;
        let paths = sample_paths(a);
        for x in &paths {
            let dx = a.d_path(x).map_err(|e| e.to_string())?;
            ensure(a.apply_differential(&dx).map_err(|e| e.to_string())?.is_zero(), || format!("{name}: d² ≠ 0 on {x:?}"))?;
            let once = a.reduce(&Element::from_path(x.clone())).map_err(|e| e.to_string())?;
            ensure(a.reduce(&once).map_err(|e| e.to_string())? == once, || format!("{name}: reduce not idempotent"))?;
        }
        for _ in 0..60 {
            let pick = |rng: &mut ChaCha8Rng| paths[rng.gen_range(0..paths.len())].clone();
            let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let (ex, ey, ez) = (Element::from_path(x.clone()), Element::from_path(y.clone()), Element::from_path(z));
            let left = a.compose(&a.compose(&ex, &ey).map_err(|e| e.to_string())?, &ez).map_err(|e| e.to_string())?;
            let right = a.compose(&ex, &a.compose(&ey, &ez).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(left == right, || format!("{name}: composition not associative"))?;
            // d(xy) = d(x) y + (-1)^{|x|} x d(y)
            let xy = a.compose(&ex, &ey).map_err(|e| e.to_string())?;
            let lhs = a.apply_differential(&xy).map_err(|e| e.to_string())?;
            let mut rhs = a.compose(&a.apply_differential(&ex).map_err(|e| e.to_string())?, &ey).map_err(|e| e.to_string())?;
            let t = a.compose(&ex, &a.apply_differential(&ey).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            rhs.add(&t.scaled(&quiver_core::sign::<Q>(a.quiver().degree(&x))));
            ensure(lhs == a.reduce(&rhs).map_err(|e| e.to_string())?, || format!("{name}: Leibniz fails"))?;
            triples += 1;
        }
        if a.is_monomial() {
            let cx = ReducedComplex::new(a).map_err(|e| e.to_string())?;
            let tr = Truncation::new(3, 6);
            let levels = cx.overlaps().levels(a, 4);
            let values = ValueIndex::new(a, 6);
            for t in 0..3 {
                for (_, basis) in cx.slice_basis(t, tr, &levels, &values) {
                    for (w, v) in basis {
                        let f = Cochain::basis(w, v);
                        let dd = cx.delta(&cx.delta(&f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                        ensure(dd.is_zero(), || format!("{name}: δ² ≠ 0"))?;
                        slices += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{} algebras, {triples} sampled triples, δ² on {slices} basis cochains", algebras.len()))
}

fn exact(l: &[Q]) -> Vec<String> {
    l.iter().map(Field::to_exact_string).collect()
}

fn c5_weak_duality(dir: &Path) -> Outcome {
    for (w, deg) in [(1, 0), (2, -1)] {
        let s = cylinder(StopConfig::None, w);
        let a = standard_algebra(&s).unwrap();
        let j: Vec<usize> = classify_vertices(&a).j.into_iter().collect();
        let d = weak_dual(&a, &s, &j).map_err(|e| e.to_string())?;
        let q = d.presentation.quiver();
        ensure(q.num_vertices() == 1 && q.num_arrows() == 1 && q.arrow_info(0).deg == deg, || {
            format!("cylinder w = {w}: dual is not k[p]/(p²) with |p| = {deg}")
        })?;
        ensure(d.presentation.is_zero_pair(0, 0), || format!("cylinder w = {w}: p² ≠ 0"))?;
        ensure(find_isomorphism(&d.presentation, &validated(dual_numbers(deg))).is_some(), || {
            format!("cylinder w = {w}: not isomorphic to the dual numbers")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut surfaces = vec![cylinder(StopConfig::None, 1), cylinder(StopConfig::None, 2), three_parameter()];
    while surfaces.len() < 24 {
        let s = random_surface(&mut rng, 10);
        if locally_proper(&standard_algebra(&s).unwrap()).is_ok() {
            surfaces.push(s);
        }
    }
    for s in &surfaces {
        let a = standard_algebra(s).unwrap();
        let c = classify_vertices(&a);
        let q = a.quiver();
        let loop_deg = |v: usize| q.outgoing(v).find(|&x| q.arrow_info(x).tgt == v).map(|x| q.arrow_info(x).deg);
        let l: Vec<usize> = c.j.iter().copied().chain(c.k.iter().copied().filter(|&v| loop_deg(v) != Some(1))).collect();
        let d = weak_dual(&a, s, &l).map_err(|e| format!("{}: {e}", s.to_json()))?;
        let c2 = classify_vertices(&d.presentation);
        let q2 = d.presentation.quiver();
        let loop_deg2 = |v: usize| q2.outgoing(v).find(|&x| q2.arrow_info(x).tgt == v).map(|x| q2.arrow_info(x).deg);
        let l2: Vec<usize> = c2.j.iter().copied().chain(c2.k.iter().copied().filter(|&v| loop_deg2(v) != Some(1))).collect();
        let dd = weak_dual(&d.presentation, &d.surface, &l2).map_err(|e| format!("{}: {e}", s.to_json()))?;
        ensure(dd.surface == *s && find_isomorphism(&a, &dd.presentation).is_some(), || {
            format!("{}: double dual is not isomorphic", s.to_json())
        })?;
        let j: Vec<usize> = c.j.iter().copied().collect();
        let dj = weak_dual(&a, s, &j).map_err(|e| e.to_string())?;
        ensure(is_proper(&dj.presentation), || format!("{}: A^∨J is not proper", s.to_json()))?;
        if j.is_empty() {
            ensure(find_isomorphism(&a, &dj.presentation).is_some(), || format!("{}: proper input changed", s.to_json()))?;
        }
    }
    let path = fixture_file(dir, "cylinder_w1");
    let (code, r) = surfalg(&["dual", "--check-double", path.to_str().unwrap()]);
    ensure(code == 0 && r["result"]["double_dual"]["isomorphic"] == true, || format!("cli dual: exit {code}"))?;
    Ok(format!("cylinders give k[p]/(p²) at |p| = 0, -1; {} surfaces double-dualize", surfaces.len()))
}

fn c6_deformation(dir: &Path) -> Outcome {
    let mut checked = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut surfaces = vec![cylinder(StopConfig::Full, 1), cylinder(StopConfig::Full, 2), three_parameter()];
    while surfaces.len() < 12 {
        let s = random_surface(&mut rng, 8);
        if build_family(&standard_algebra(&s).unwrap(), &s).is_ok() {
            surfaces.push(s);
        }
    }
    for s in &surfaces {
        let f = build_family(&standard_algebra(s).unwrap(), s).map_err(|e| e.to_string())?;
        let c = check_family_identities(&f).map_err(|e| e.to_string())?;
        ensure(c.ok(), || format!("{}: {:?}", s.to_json(), c.violations))?;
        checked += 1;
    }
    for (w, want) in [(1, vec![(0i64, 2usize)]), (2, vec![])] {
        let s = cylinder(StopConfig::Full, w);
        let f = build_family(&standard_algebra(&s).unwrap(), &s).map_err(|e| e.to_string())?;
        let fiber = evaluate_fiber(&f, &[Q::from_i64(1)]).map_err(|e| e.to_string())?;
        let h = fiber_cohomology(&fiber, (-4, 4), 8).map_err(|e| e.to_string())?;
        let want: std::collections::BTreeMap<i64, usize> = want.into_iter().collect();
        ensure(h.dims == want, || format!("B_{w} fiber at λ = 1: {:?}", h.dims))?;
    }
    let s = three_parameter();
    let f = build_family(&standard_algebra(&s).unwrap(), &s).map_err(|e| e.to_string())?;
    let d = f.dim();
    let k = kodaira_spencer(&f, &vec![Q::from_i64(0); d], BarTruncation::new(3, 6)).map_err(|e| e.to_string())?;
    ensure(k.stable && k.rank == d && k.hh2 == Some(d), || format!("KS at 0: rank {} hh2 {:?}", k.rank, k.hh2))?;
    for mask in 1..(1u32 << d) {
        let l: Vec<Q> = (0..d).map(|i| if mask & (1 << i) != 0 { nonzero(&mut rng) } else { Q::from_i64(0) }).collect();
        let k = kodaira_spencer(&f, &l, BarTruncation::new(3, 6)).map_err(|e| e.to_string())?;
        let expect: Vec<bool> = (0..d).map(|i| mask & (1 << i) != 0).collect();
        ensure(k.coboundary == expect, || format!("KS at {:?}: coboundary columns {:?}", k.lambda, k.coboundary))?;
    }
    let l: Vec<Q> = (0..d).map(|_| nonzero(&mut rng)).collect();
    let mut fiber = evaluate_fiber(&f, &l).map_err(|e| e.to_string())?;
    fiber.validate();
    let hh = bar_oracle_hh(&fiber, 2, BarTruncation::new(3, 6)).map_err(|e| e.to_string())?;
    ensure(hh.dimension == Some(0), || format!("generic fiber at {:?}: HH² {:?}", exact(&l), hh.dimension))?;
    let path = fixture_file(dir, "cylinder_full_w1");
    let (code, r) = surfalg(&["deform", path.to_str().unwrap(), "--seed", "5"]);
    ensure(code == 0 && r["result"]["identified"]["fiber_cohomology"]["0"] == 2, || format!("cli deform: exit {code}"))?;
    Ok(format!("{checked} families, B₁ ↦ k×k, B₂ acyclic, KS rank {d} at 0, rigid at {}", exact(&l).join(",")))
}

fn c7_observations() -> Outcome {
    let mut n = 0;
    for (d1, d2) in [(0, 0), (1, 0), (0, 1), (-1, 2), (2, 3)] {
        for (m, want) in [
            (split_vertex(d1, d2), Verdict::Iso),
            (contracted_pair(d1, d2), Verdict::QuasiIso),
            (contracted_loop(d1, d2), Verdict::QuasiIso),
        ] {
            let m = m.map_err(|e| e.to_string())?;
            let r = verify_morphism(&m.source, &m.target, &m.map, (-16, 16), 8).map_err(|e| e.to_string())?;
            ensure(r.failures.is_empty() && r.verdict == want, || {
                format!("{} ({d1},{d2}): {:?} {:?}", m.name, r.verdict, r.failures)
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} maps: split vertex iso, contractions quasi-iso"))
}

fn c8_pillowcase(dir: &Path) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut tuples = 0;
    for _ in 0..20 {
        let l: [Q; 4] = std::array::from_fn(|_| nonzero(&mut rng));
        let m = pillowcase_family(&l).map_err(|e| e.to_string())?;
        let r = check_stasheff(&m, 7);
        ensure(r.passed && r.skipped.values().all(|&n| n == 0), || format!("{:?}: {:?}", exact(&l), r.violation))?;
        let c = pillowcase_cohomology(&l).map_err(|e| e.to_string())?;
        let prod = l.iter().fold(Q::from_i64(1), |acc, x| acc * x);
        ensure(c.concentrated_in_zero && c.total() == 18, || format!("{:?}: dims {:?}", exact(&l), c.dims))?;
        ensure(c.skew_coefficient == (Q::from_i64(1) - prod).to_exact_string(), || {
            format!("{:?}: skew coefficient {}", exact(&l), c.skew_coefficient)
        })?;
        tuples += 1;
    }
    let l = [Q::from_ratio(3, 2), Q::from_i64(-2), Q::from_ratio(1, 3), Q::from_i64(5)];
    let m = pillowcase_family(&l).map_err(|e| e.to_string())?;
    let plain = AInfinityPresentation::from_dg(&pillowcase_dg(&l).map_err(|e| e.to_string())?, 5).map_err(|e| e.to_string())?.constants();
    let mut mutated = 0;
    for (inputs, output, _) in m.constants().into_iter().filter(|c| !plain.contains(c) || c.0.len() == 1) {
        let mut bad = m.clone();
        bad.perturb(&inputs, output, &Q::from_i64(1));
        ensure(!check_stasheff(&bad, 6).passed, || format!("mutating {} goes unnoticed", m.render_inputs(&inputs)))?;
        mutated += 1;
    }
    let one = Q::from_i64(1);
    let c = pillowcase_cohomology(&[one.clone(), one.clone(), one.clone(), Q::from_i64(0)]).map_err(|e| e.to_string())?;
    let r = compare_with_skew_gentle(&c).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::Iso, || format!("λ4 = 0: {:?}", r.verdict))?;
    let mut surfaces = 0;
    for k in 0..=3 {
        for l in 1..=4 {
            for m1 in 0..=2 {
                for n1 in 0..=2 {
                    for (m2, n2) in [(0, 0), (1, 0), (0, 1)] {
                        let counts = PillowcaseCounts { k, l, m1, m2, n1, n2 };
                        let s = counts.surface(0);
                        let holds = k + l + m1 + n1 == 4;
                        ensure(validate_surface(&s).ok() == holds, || format!("{counts:?}: validity disagrees with the index identity"))?;
                        if holds {
                            let p = pillowcase_surface(&s).map_err(|e| e.to_string())?.ok_or("not all-contributing")?;
                            ensure(p.generic.orbifold_points == 4 && p.generic.genus == 0 && p.generic.boundary.is_empty(), || {
                                format!("{counts:?}: generic deformation {}", p.generic.to_json())
                            })?;
                            surfaces += 1;
                        }
                    }
                }
            }
        }
    }
    let (code, r) = surfalg(&["ainf", "--seed", "9"]);
    ensure(code == 0 && r["result"]["stasheff"]["passed"] == true, || format!("cli ainf: exit {code}"))?;
    let mut j = serde_json::to_value(m.to_json().map_err(|e| e.to_string())?).unwrap();
    let entry = &mut j["mu"]["3"][0]["output"];
    let key = entry.as_object().unwrap().keys().next().unwrap().clone();
    entry[&key] = Value::String("17".into());
    let path = dir.join("corrupted.json");
    std::fs::write(&path, j.to_string()).unwrap();
    let (code, r) = surfalg(&["ainf", path.to_str().unwrap(), "--arity", "6"]);
    ensure(code == 1 && r["result"]["stasheff"]["violation"]["terms"].is_array(), || format!("cli corrupted ainf: exit {code}"))?;
    Ok(format!("{tuples} λ tuples to arity 7, {mutated} mutations caught, λ4 = 0 iso, {surfaces} index-identity surfaces"))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let d = dir.path();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("HH² fixture values", Box::new(|| c1_hh2_fixtures(d))),
        ("surface-algebra HH² agreement", Box::new(c2_surface_agreement)),
        ("overlap and bar oracle agree in degrees 1-3", Box::new(c3_oracle_equivalence)),
        ("internal-consistency invariants", Box::new(c4_invariants)),
        ("weak duality", Box::new(|| c5_weak_duality(d))),
        ("deformation family", Box::new(|| c6_deformation(d))),
        ("observation fixtures", Box::new(c7_observations)),
        ("pillowcase", Box::new(|| c8_pillowcase(d))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let dt = t.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({dt:.1?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({dt:.1?}): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
