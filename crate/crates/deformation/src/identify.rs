//! Comparing a fiber with the standard algebra of the deformed surface.

use std::collections::{BTreeMap, HashMap};

use hochschild::{StandardLayout, UnitKind};
use num_traits::{Signed, Zero};
use quiver_core::{Element, Field, Path, Presentation, Q};
use serde::Serialize;
use surface_dict::{deform_surface, standard_algebra, SurfaceData};
use weak_dual::find_isomorphism;

use crate::cohomology::fiber_cohomology;
use crate::family::{evaluate_fiber, DeformationFamily, TermKind};
use crate::morphism::{verify_morphism, AlgebraMap, MorphismReport, Verdict};
use crate::DeformError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Rescale `q ↦ λ q` on stopped units and relabel.
    Relabel,
    /// `p² = μ² e` splits the vertex into two orthogonal idempotents.
    SplitIdempotent,
    /// The deformed surface is a disk with one stop.
    DegenerateDisk,
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformedSurfaceReport {
    pub lambda: Vec<String>,
    pub support: Vec<usize>,
    pub deformed: SurfaceData,
    pub fiber_cohomology: BTreeMap<i64, usize>,
    pub model_cohomology: BTreeMap<i64, usize>,
    pub dims_match: Option<bool>,
    pub route: Route,
    pub verdict: Option<Verdict>,
    pub morphism: Option<MorphismReport>,
    pub note: Option<String>,
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    (n.clone() * n.clone() == *x.numer() && d.clone() * d.clone() == *x.denom()).then(|| Q::new(n, d))
}

fn relabel_map(f: &DeformationFamily, lambda: &[Q], model: &Presentation<Q>, fiber: &Presentation<Q>) -> Result<Option<AlgebraMap>, DeformError> {
    let unit: Vec<Q> = lambda.iter().map(|l| if l.is_zero() { Q::zero() } else { Q::from_i64(1) }).collect();
    let rescaled = evaluate_fiber(f, &unit)?;
    let Some(iso) = find_isomorphism(model, &rescaled) else { return Ok(None) };
    let mut scale: HashMap<usize, Q> = HashMap::new();
    for (t, l) in f.terms.iter().zip(lambda) {
        if let Some((q, _)) = t.value.terms().next().filter(|_| !l.is_zero()) {
            scale.insert(q.arrows[0], l.clone());
        }
    }
    let (mq, fq) = (model.quiver(), fiber.quiver());
    let mut map = AlgebraMap::default();
    for (v, name) in mq.vertices().iter().enumerate() {
        map.vertices.insert(name.clone(), Element::from_path(Path::vertex(iso.vertices[v])));
    }
    for (a, info) in mq.arrows().iter().enumerate() {
        let b = iso.arrows[a];
        let c = scale.get(&b).cloned().unwrap_or_else(|| Q::from_i64(1));
        map.arrows.insert(info.name.clone(), Element::term(fq.arrow_path(b), c));
    }
    Ok(Some(map))
}

fn split_map(model: &Presentation<Q>, fiber: &Presentation<Q>, mu: &Q) -> Result<Option<AlgebraMap>, DeformError> {
    let layout = StandardLayout::read(model)?;
    let Some(orb) = layout.units.iter().find(|u| u.kind == UnitKind::Orbifold) else { return Ok(None) };
    if model.quiver().num_vertices() != 2 || fiber.quiver().num_vertices() != 1 || fiber.quiver().num_arrows() != 1 {
        return Ok(None);
    }
    let e = Element::from_path(Path::vertex(0));
    let p = Element::from_path(fiber.quiver().arrow_path(0)).scaled(&(Q::from_i64(1) / mu.clone()));
    let half = Q::from_ratio(1, 2);
    let mut plus = e.clone();
    plus.add(&p);
    let mut map = AlgebraMap::default();
    map.vertices.insert(orb.vertices[0].clone(), plus.scaled(&half));
    map.vertices.insert(orb.vertices[1].clone(), e.sub(&p).scaled(&half));
    for a in model.quiver().arrows() {
        map.arrows.insert(a.name.clone(), Element::zero());
    }
    Ok(Some(map))
}

/// The fiber at `λ` against the standard algebra of the surface with the supported components capped.
pub fn identify_deformed_surface(
    f: &DeformationFamily,
    s: &SurfaceData,
    lambda: &[Q],
    window: (i64, i64),
    length_bound: usize,
) -> Result<DeformedSurfaceReport, DeformError> {
    let fiber = evaluate_fiber(f, lambda)?;
    let active: Vec<usize> = (0..f.dim()).filter(|&i| !lambda[i].is_zero()).collect();
    let support: Vec<usize> = active.iter().filter_map(|&i| f.terms[i].component).collect();
    let deformed = deform_surface(s, &support).map_err(DeformError::Surface)?;
    let mut model = standard_algebra(&deformed).map_err(DeformError::Surface)?;
    model.validate();
    let hf = fiber_cohomology(&fiber, window, length_bound)?;
    let hm = fiber_cohomology(&model, window, length_bound)?;
    let mut report = DeformedSurfaceReport {
        lambda: lambda.iter().map(Field::to_exact_string).collect(),
        support,
        deformed,
        fiber_cohomology: hf.dims.clone(),
        model_cohomology: hm.dims.clone(),
        dims_match: (!hf.truncated && !hm.truncated).then(|| hf.dims == hm.dims),
        route: Route::None,
        verdict: None,
        morphism: None,
        note: None,
    };
    let stopped_only = active.iter().all(|&i| f.terms[i].kind == TermKind::Differential && f.terms[i].label.starts_with("III"));
    let single = fiber.quiver().num_vertices() == 1 && active.len() == 1;
    let map = if stopped_only {
        report.route = Route::Relabel;
        relabel_map(f, lambda, &model, &fiber)?
    } else if single && f.terms[active[0]].kind == TermKind::Product {
        report.route = Route::SplitIdempotent;
        match rational_sqrt(&lambda[active[0]]) {
            Some(mu) => split_map(&model, &fiber, &mu)?,
            None => {
                report.note = Some("λ is not a square in Q; the fiber is a quadratic field, split only after extending scalars".into());
                None
            }
        }
    } else if single {
        report.route = Route::DegenerateDisk;
        report.note = Some(format!(
            "deformed surface is a disk with one stop, whose category is zero; fiber acyclic: {}",
            hf.is_acyclic() && !hf.truncated
        ));
        None
    } else {
        report.note = Some("no explicit map for this support; cohomology dimensions compared only".into());
        None
    };
    if let Some(map) = map {
        let m = verify_morphism(&model, &fiber, &map, window, length_bound)?;
        report.verdict = Some(m.verdict);
        report.morphism = Some(m);
    } else if report.note.is_none() {
        report.note = Some("no relabeling of the model matches the rescaled fiber".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::build_family;
    use surface_dict::{Boundary, StopConfig};

    fn family(s: &SurfaceData) -> DeformationFamily {
        build_family(&standard_algebra(s).unwrap(), s).unwrap()
    }

    #[test]
    fn cylinders() {
        let s = SurfaceData::new(0, 0, vec![Boundary::new(StopConfig::Stops(1), -1), Boundary::new(StopConfig::Full, 1)]);
        let f = family(&s);
        let r = identify_deformed_surface(&f, &s, &[Q::from_i64(4)], (-4, 4), 8).unwrap();
        assert_eq!((r.route, r.verdict), (Route::SplitIdempotent, Some(Verdict::QuasiIso)));
        assert_eq!(r.fiber_cohomology, [(0, 2)].into_iter().collect());
        assert_eq!(r.deformed.orbifold_points, 1);
        let r = identify_deformed_surface(&f, &s, &[Q::from_i64(2)], (-4, 4), 8).unwrap();
        assert_eq!(r.verdict, None);
        let r = identify_deformed_surface(&f, &s, &[Q::from_i64(0)], (-4, 4), 8).unwrap();
        assert_eq!((r.route, r.verdict), (Route::Relabel, Some(Verdict::Iso)));

        let s = SurfaceData::new(0, 0, vec![Boundary::new(StopConfig::Stops(1), -2), Boundary::new(StopConfig::Full, 2)]);
        let f = family(&s);
        let r = identify_deformed_surface(&f, &s, &[Q::from_i64(1)], (-4, 4), 8).unwrap();
        assert_eq!(r.route, Route::DegenerateDisk);
        assert!(r.fiber_cohomology.is_empty());
        assert_eq!(r.dims_match, Some(false));
    }

    #[test]
    fn stopped_units_relabel() {
        let s = SurfaceData::new(
            0,
            0,
            vec![
                Boundary::new(StopConfig::Stops(2), 0),
                Boundary::new(StopConfig::Full, 1),
                Boundary::new(StopConfig::Full, 2),
                Boundary::new(StopConfig::Stops(1), 1),
            ],
        );
        let f = family(&s);
        let i = f.terms.iter().position(|t| t.label.starts_with("III")).unwrap();
        let mut lambda = vec![Q::from_i64(0); 3];
        lambda[i] = Q::from_ratio(-3, 7);
        let r = identify_deformed_surface(&f, &s, &lambda, (-6, 6), 10).unwrap();
        assert_eq!((r.route, r.verdict), (Route::Relabel, Some(Verdict::Iso)), "{:?}", r.note);
        assert_eq!(r.dims_match, Some(true));
    }
}
