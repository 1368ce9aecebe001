//! Algebra maps given on generators, checked and classified.

use std::collections::{BTreeMap, HashMap};

use quiver_core::linalg::{from_entries, rank, SparseVec};
use quiver_core::{AlgebraError, Element, Field, Path, Presentation, Q};
use serde::Serialize;

use crate::cohomology::fiber_cohomology;

/// Images of vertex idempotents and arrows, by name.
#[derive(Clone, Debug, Default)]
pub struct AlgebraMap {
    pub vertices: BTreeMap<String, Element<Q>>,
    pub arrows: BTreeMap<String, Element<Q>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Iso,
    QuasiIso,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct MorphismReport {
    pub verdict: Verdict,
    /// Failed generator-level checks.
    pub failures: Vec<String>,
    /// The idempotent images sum to `1`; a quasi-isomorphism may miss an exact idempotent.
    pub unital: bool,
    pub source_dim: Option<usize>,
    pub target_dim: Option<usize>,
    pub source_cohomology: BTreeMap<i64, usize>,
    pub target_cohomology: BTreeMap<i64, usize>,
    /// Rank of the induced map on cohomology, per degree.
    pub induced_rank: BTreeMap<i64, usize>,
}

struct Applied<'a> {
    src: &'a Presentation<Q>,
    tgt: &'a Presentation<Q>,
    idem: Vec<Element<Q>>,
    arrows: Vec<Element<Q>>,
}

impl Applied<'_> {
    fn path(&self, x: &Path) -> Result<Element<Q>, AlgebraError> {
        let mut acc = self.idem[x.src].clone();
        for &a in &x.arrows {
            acc = self.tgt.compose(&self.arrows[a], &acc)?;
        }
        Ok(acc)
    }

    fn element(&self, e: &Element<Q>) -> Result<Element<Q>, AlgebraError> {
        let mut out = Element::zero();
        for (x, c) in e.terms() {
            out.add_scaled(&self.path(x)?, c);
        }
        Ok(out)
    }
}

fn d_elem(p: &Presentation<Q>, e: &Element<Q>) -> Result<Element<Q>, AlgebraError> {
    let mut out = Element::zero();
    for (x, c) in e.terms() {
        out.add_scaled(&p.d_path(x)?, c);
    }
    Ok(out)
}

fn generator_checks(f: &Applied<'_>) -> Result<Vec<String>, AlgebraError> {
    let sq = f.src.quiver();
    let mut failures = Vec::new();
    for (v, e) in f.idem.iter().enumerate() {
        let name = sq.vertex_name(v);
        if f.tgt.compose(e, e)? != *e {
            failures.push(format!("f(e_{name}) is not idempotent"));
        }
        for (w, g) in f.idem.iter().enumerate() {
            if w != v && !f.tgt.compose(e, g)?.is_zero() {
                failures.push(format!("f(e_{name}) f(e_{}) != 0", sq.vertex_name(w)));
            }
        }
    }
    for (a, fa) in f.arrows.iter().enumerate() {
        let info = sq.arrow_info(a);
        let framed = f.tgt.compose(&f.idem[info.tgt], &f.tgt.compose(fa, &f.idem[info.src])?)?;
        if framed != *fa {
            failures.push(format!("f({}) is not framed by its endpoints", info.name));
        }
        if fa.terms().any(|(x, _)| f.tgt.quiver().degree(x) != info.deg) {
            failures.push(format!("f({}) is not homogeneous of degree {}", info.name, info.deg));
        }
        let d_src = f.src.differential().get(&a).cloned().unwrap_or_default();
        if f.element(&d_src)? != d_elem(f.tgt, fa)? {
            failures.push(format!("f(d {0}) != d f({0})", info.name));
        }
    }
    for &(first, then) in f.src.relations() {
        if !f.tgt.compose(&f.arrows[then], &f.arrows[first])?.is_zero() {
            failures.push(format!("relation {}*{} is not preserved", sq.arrow_info(then).name, sq.arrow_info(first).name));
        }
    }
    for r in f.src.rewrites() {
        if f.path(&r.lhs)? != f.element(&r.rhs)? {
            failures.push(format!("rewrite of {} is not preserved", sq.render(&r.lhs)));
        }
    }
    Ok(failures)
}

fn vector(index: &HashMap<Path, usize>, e: &Element<Q>) -> Option<SparseVec<Q>> {
    let mut out = Vec::new();
    for (x, c) in e.terms() {
        out.push((*index.get(x)?, c.clone()));
    }
    Some(from_entries(out))
}

/// Checks `f` on generators, then decides whether it is bijective on the path
/// basis or, failing that, bijective on cohomology in `window`.
pub fn verify_morphism(
    src: &Presentation<Q>,
    tgt: &Presentation<Q>,
    map: &AlgebraMap,
    window: (i64, i64),
    length_bound: usize,
) -> Result<MorphismReport, AlgebraError> {
    let sq = src.quiver();
    let look = |table: &BTreeMap<String, Element<Q>>, name: &str, kind: &str| {
        table.get(name).cloned().ok_or_else(|| AlgebraError::Invalid(format!("map has no image for {kind} {name}")))
    };
    let idem = sq.vertices().iter().map(|v| look(&map.vertices, v, "vertex")).collect::<Result<Vec<_>, _>>()?;
    let arrows = sq.arrows().iter().map(|a| look(&map.arrows, &a.name, "arrow")).collect::<Result<Vec<_>, _>>()?;
    let f = Applied { src, tgt, idem, arrows: arrows.into_iter().map(|e| tgt.reduce(&e)).collect::<Result<_, _>>()? };
    let failures = generator_checks(&f)?;
    let mut unit = Element::zero();
    for e in &f.idem {
        unit.add(e);
    }
    let one: Element<Q> = (0..tgt.quiver().num_vertices()).map(|v| (Path::vertex(v), Q::from_i64(1))).collect();

    let hs = fiber_cohomology(src, window, length_bound)?;
    let ht = fiber_cohomology(tgt, window, length_bound)?;
    let mut report = MorphismReport {
        verdict: Verdict::Fail,
        failures,
        unital: unit == one,
        source_dim: None,
        target_dim: None,
        source_cohomology: hs.dims.clone(),
        target_cohomology: ht.dims.clone(),
        induced_rank: BTreeMap::new(),
    };
    if !report.failures.is_empty() {
        return Ok(report);
    }
    for (n, reps) in &hs.representatives {
        let images = reps.iter().map(|r| f.element(r)).collect::<Result<Vec<_>, _>>()?;
        let r = if ht.dims.contains_key(n) { ht.class_rank(*n, &images)? } else { 0 };
        report.induced_rank.insert(*n, r);
    }
    if !src.has_paths_beyond(length_bound) && !tgt.has_paths_beyond(length_bound) {
        let sp = src.irreducible_paths(length_bound);
        let tp = tgt.irreducible_paths(length_bound);
        report.source_dim = Some(sp.len());
        report.target_dim = Some(tp.len());
        let index: HashMap<Path, usize> = tp.into_iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut rows = Vec::new();
        for x in &sp {
            rows.push(vector(&index, &f.path(x)?).ok_or_else(|| AlgebraError::Resource("image leaves the length bound".into()))?);
        }
        if report.unital && sp.len() == index.len() && rank(rows) == sp.len() {
            report.verdict = Verdict::Iso;
            return Ok(report);
        }
    }
    let truncated = hs.truncated || ht.truncated;
    if !truncated && hs.dims == ht.dims && report.induced_rank == hs.dims {
        report.verdict = Verdict::QuasiIso;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use quiver_core::fixtures::dual_numbers;

    fn identity(p: &Presentation<Q>) -> AlgebraMap {
        let q = p.quiver();
        AlgebraMap {
            vertices: q.vertices().iter().map(|v| (v.clone(), p.idem(v))).collect(),
            arrows: q.arrows().iter().map(|a| (a.name.clone(), p.elem(&[&a.name]))).collect(),
        }
    }

    #[test]
    fn identity_is_iso() {
        let mut a = dual_numbers::<Q>(0);
        a.validate();
        let r = verify_morphism(&a, &a, &identity(&a), (-3, 3), 6).unwrap();
        assert_eq!(r.verdict, Verdict::Iso);
        assert_eq!(r.source_dim, Some(2));
    }

    #[test]
    fn broken_maps_fail() {
        let mut a = dual_numbers::<Q>(0);
        a.validate();
        let mut m = identity(&a);
        // p ↦ e breaks p² = 0.
        m.arrows.insert("p".into(), a.idem("o"));
        let r = verify_morphism(&a, &a, &m, (-3, 3), 6).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.failures.iter().any(|f| f.contains("relation")));
        let mut m = identity(&a);
        m.vertices.insert("o".into(), a.idem("o").scaled(&Q::from_i64(2)));
        let r = verify_morphism(&a, &a, &m, (-3, 3), 6).unwrap();
        assert!(r.failures.iter().any(|f| f.contains("idempotent")));
        // p ↦ 0 is an algebra map but kills a class.
        let mut m = identity(&a);
        m.arrows.insert("p".into(), Element::zero());
        let r = verify_morphism(&a, &a, &m, (-3, 3), 6).unwrap();
        assert_eq!((r.verdict, r.induced_rank.get(&0)), (Verdict::Fail, Some(&1)));
    }
}
