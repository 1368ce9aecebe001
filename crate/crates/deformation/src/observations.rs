//! Three small local models and explicit maps between them.

use quiver_core::{AlgebraError, Field, GradedQuiver, Presentation, Q};

use crate::morphism::{AlgebraMap, Verdict};

pub struct LocalModel {
    pub name: &'static str,
    pub source: Presentation<Q>,
    pub target: Presentation<Q>,
    pub map: AlgebraMap,
    pub expected: Verdict,
}

fn quiver(vertices: &[&str], arrows: &[(&str, &str, &str, i64)]) -> Result<GradedQuiver, AlgebraError> {
    let mut q = GradedQuiver::new();
    for v in vertices {
        q.add_vertex(v)?;
    }
    for (n, s, t, d) in arrows {
        q.add_arrow(n, s, t, *d)?;
    }
    Ok(q)
}

fn half() -> Q {
    Q::from_ratio(1, 2)
}

fn checked(mut p: Presentation<Q>) -> Result<Presentation<Q>, AlgebraError> {
    let rep = p.validate();
    if !rep.ok() {
        return Err(AlgebraError::Contract(rep.errors.join("; ")));
    }
    Ok(p)
}

/// Square with vertices `1, 2+, 2-, 3` and the commutativity `d c = b a`.
fn square(d1: i64, d2: i64) -> Result<Presentation<Q>, AlgebraError> {
    let q = quiver(&["1", "2p", "2m", "3"], &[("a", "1", "2p", d1), ("c", "1", "2m", d1), ("b", "2p", "3", d2), ("d", "2m", "3", d2)])?;
    let mut p = Presentation::new(q);
    let (dc, ba) = (p.path(&["d", "c"]), p.elem(&["b", "a"]));
    p.add_rewrite(dc, ba);
    checked(p)
}

/// `e_2 = e_+ + e_-` with `e_± = (e ± p)/2`, for a loop `p² = e`: an isomorphism.
pub fn split_vertex(d1: i64, d2: i64) -> Result<LocalModel, AlgebraError> {
    let source = square(d1, d2)?;
    let q = quiver(&["1", "2", "3"], &[("v1", "1", "2", d1), ("v2", "2", "3", d2), ("p", "2", "2", 0)])?;
    let mut t = Presentation::new(q);
    t.add_relation_names(["v2", "v1"])?;
    let (pp, e2) = (t.path(&["p", "p"]), t.idem("2"));
    t.add_rewrite(pp, e2);
    let t = checked(t)?;
    let (e, p, v1, v2) = (t.idem("2"), t.elem(&["p"]), t.elem(&["v1"]), t.elem(&["v2"]));
    let mut plus = e.clone();
    plus.add(&p);
    let plus = plus.scaled(&half());
    let minus = e.sub(&p).scaled(&half());
    let mut map = AlgebraMap::default();
    map.vertices.insert("1".into(), t.idem("1"));
    map.vertices.insert("3".into(), t.idem("3"));
    map.vertices.insert("2p".into(), plus.clone());
    map.vertices.insert("2m".into(), minus.clone());
    map.arrows.insert("a".into(), t.compose(&plus, &v1)?);
    map.arrows.insert("c".into(), t.compose(&minus, &v1)?);
    map.arrows.insert("b".into(), t.compose(&v2, &plus)?);
    map.arrows.insert("d".into(), t.compose(&v2, &minus)?.neg());
    Ok(LocalModel { name: "split_vertex", source, target: t, map, expected: Verdict::Iso })
}

/// The square mapped into `1 → 2- ⇉ 2+ → 3` with `d p = q` and `q v1 = v2 q = 0`.
pub fn contracted_pair(d1: i64, d2: i64) -> Result<LocalModel, AlgebraError> {
    let source = square(d1, d2)?;
    let q = quiver(
        &["1", "2m", "2p", "3"],
        &[("v1", "1", "2m", d1), ("p", "2m", "2p", 0), ("q", "2m", "2p", 1), ("v2", "2p", "3", d2)],
    )?;
    let mut t = Presentation::new(q);
    t.add_relation_names(["q", "v1"])?;
    t.add_relation_names(["v2", "q"])?;
    let p_id = t.quiver().arrow("p")?;
    let dq = t.elem(&["q"]);
    t.set_differential(p_id, dq);
    let t = checked(t)?;
    let mut map = AlgebraMap::default();
    for v in ["1", "2m", "2p", "3"] {
        map.vertices.insert(v.into(), t.idem(v));
    }
    map.arrows.insert("a".into(), t.elem(&["p", "v1"]));
    map.arrows.insert("c".into(), t.elem(&["v1"]));
    map.arrows.insert("b".into(), t.elem(&["v2"]));
    map.arrows.insert("d".into(), t.elem(&["v2", "p"]));
    Ok(LocalModel { name: "contracted_pair", source, target: t, map, expected: Verdict::QuasiIso })
}

/// `a ↦ v2 p v1` into `1 → 2 → 3` with a loop `d p = e_2`, `p² = 0` and `v2 v1 = 0`.
pub fn contracted_loop(d1: i64, d2: i64) -> Result<LocalModel, AlgebraError> {
    let s = quiver(&["1", "3"], &[("a", "1", "3", d1 + d2 - 1)])?;
    let source = checked(Presentation::new(s))?;
    let q = quiver(&["1", "2", "3"], &[("v1", "1", "2", d1), ("v2", "2", "3", d2), ("p", "2", "2", -1)])?;
    let mut t = Presentation::new(q);
    t.add_relation_names(["v2", "v1"])?;
    t.add_relation_names(["p", "p"])?;
    let p_id = t.quiver().arrow("p")?;
    let e2 = t.idem("2");
    t.set_differential(p_id, e2);
    let t = checked(t)?;
    let mut map = AlgebraMap::default();
    map.vertices.insert("1".into(), t.idem("1"));
    map.vertices.insert("3".into(), t.idem("3"));
    map.arrows.insert("a".into(), t.elem(&["v2", "p", "v1"]));
    Ok(LocalModel { name: "contracted_loop", source, target: t, map, expected: Verdict::QuasiIso })
}

pub fn all_models(d1: i64, d2: i64) -> Result<Vec<LocalModel>, AlgebraError> {
    Ok(vec![split_vertex(d1, d2)?, contracted_pair(d1, d2)?, contracted_loop(d1, d2)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::verify_morphism;

    #[test]
    fn models_verify() {
        for (d1, d2) in [(0, 0), (1, -2), (2, 3)] {
            for m in all_models(d1, d2).unwrap() {
                let r = verify_morphism(&m.source, &m.target, &m.map, (-12, 12), 8).unwrap();
                assert!(r.failures.is_empty(), "{}: {:?}", m.name, r.failures);
                assert_eq!(r.verdict, m.expected, "{} at ({d1},{d2}): {r:?}", m.name);
            }
        }
    }

    #[test]
    fn target_sizes() {
        let m = contracted_pair(0, 0).unwrap();
        assert_eq!(m.target.irreducible_paths(8).len(), 11);
        let r = verify_morphism(&m.source, &m.target, &m.map, (-6, 6), 8).unwrap();
        assert_eq!(r.target_cohomology.values().sum::<usize>(), 9);
        let m = split_vertex(0, 0).unwrap();
        assert_eq!(m.target.irreducible_paths(8).len(), 9);
        let m = contracted_loop(1, 1).unwrap();
        let r = verify_morphism(&m.source, &m.target, &m.map, (-6, 6), 8).unwrap();
        assert_eq!(r.target_cohomology, [(0, 2), (1, 1)].into_iter().collect());
    }

    #[test]
    fn sign_of_d_matters() {
        let mut m = split_vertex(0, 0).unwrap();
        let v2 = m.target.elem(&["v2"]);
        let minus = m.map.vertices["2m"].clone();
        m.map.arrows.insert("d".into(), m.target.compose(&v2, &minus).unwrap());
        let r = verify_morphism(&m.source, &m.target, &m.map, (-6, 6), 8).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.failures.iter().any(|f| f.contains("rewrite")));
    }
}
