//! Curved fibers of a relation-free loop and the arity-0 cocycles behind them.

use hochschild::{Cochain, CochainJson, ReducedComplex};
use quiver_core::fixtures::polynomial;
use quiver_core::{Element, Field, Path, Presentation, Q};
use serde::Serialize;

use crate::presentation::AInfinityPresentation;
use crate::AInfError;

/// `k[q]` with `μ⁰ = λ q²` for `|q| = 1` or `μ⁰ = λ q` for `|q| = 2`, on `1, q, …, q^len`.
pub fn curved_fiber(deg: i64, lambda: &Q, len: usize) -> Result<AInfinityPresentation, AInfError> {
    let power = match deg {
        1 => 2,
        2 => 1,
        _ => return Err(AInfError::Invalid(format!("curved fibers need |q| = 1 or 2, got {deg}"))),
    };
    let mut a = polynomial::<Q>(deg);
    a.validate();
    let mut m = AInfinityPresentation::from_dg(&a, len)?;
    let c = Element::term(Path { src: 0, tgt: 0, arrows: vec![0; power] }, lambda.clone());
    m.set_mu0(0, &c)?;
    Ok(m)
}

/// Designated loops at one vertex: a relation-free loop, or two loops with `q1² = q2² = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvedLoops {
    Loop(String),
    Pair(String, String),
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvedCocycleReport {
    pub vertex: String,
    /// `φ(e_γ)` in composition order.
    pub value: String,
    pub total_degree: i64,
    pub cocycle: bool,
    pub phi: CochainJson,
    pub delta: CochainJson,
}

/// Builds `φ(e_γ)` from the loop degrees and checks `δ φ = 0` in the overlap complex.
pub fn curved_cocycle_check(p: &Presentation<Q>, loops: &CurvedLoops) -> Result<CurvedCocycleReport, AInfError> {
    let q = p.quiver();
    let loop_id = |name: &str| -> Result<usize, AInfError> {
        let id = q.arrow(name)?;
        let a = q.arrow_info(id);
        if a.src != a.tgt {
            return Err(AInfError::Invalid(format!("{name} is not a loop")));
        }
        Ok(id)
    };
    let mut value = Element::zero();
    let vertex = match loops {
        CurvedLoops::Loop(name) => {
            let x = loop_id(name)?;
            if p.relations().iter().any(|&(f, t)| f == x || t == x) {
                return Err(AInfError::Invalid(format!("{name} lies in a relation")));
            }
            let times = match q.arrow_info(x).deg {
                1 => 2,
                2 => 1,
                d => return Err(AInfError::Invalid(format!("|{name}| = {d}; expected 1 or 2"))),
            };
            value.add_term(q.path_from_ids(vec![x; times])?, Q::from_i64(1));
            q.arrow_info(x).src
        }
        CurvedLoops::Pair(a, b) => {
            let (x, y) = (loop_id(a)?, loop_id(b)?);
            let v = q.arrow_info(x).src;
            if q.arrow_info(y).src != v {
                return Err(AInfError::Invalid(format!("{a} and {b} sit at different vertices")));
            }
            let word = match q.arrow_info(x).deg + q.arrow_info(y).deg {
                1 => 2,
                2 => 1,
                d => return Err(AInfError::Invalid(format!("|{a}| + |{b}| = {d}; expected 1 or 2"))),
            };
            for (s, t) in [(x, y), (y, x)] {
                let ids: Vec<usize> = (0..2 * word).map(|i| if i % 2 == 0 { t } else { s }).collect();
                value.add_term(q.path_from_ids(ids)?, Q::from_i64(1));
            }
            v
        }
    };
    let value = p.reduce(&value)?;
    let w = Path::vertex(vertex);
    let mut phi = Cochain::zero();
    for (v, c) in value.terms() {
        phi.add_term(w.clone(), v.clone(), c.clone());
    }
    let cx = ReducedComplex::new(p)?;
    let total_degree = value.terms().next().map(|(v, _)| cx.total_degree(&w, v)).unwrap_or(0);
    let delta = cx.delta(&phi)?;
    Ok(CurvedCocycleReport {
        vertex: q.vertex_name(vertex).to_string(),
        value: value.render(q),
        total_degree,
        cocycle: delta.is_zero() && !phi.is_zero(),
        phi: phi.to_json(q),
        delta: delta.to_json(q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stasheff::check_stasheff;
    use quiver_core::GradedQuiver;

    fn two_loops(d1: i64, d2: i64) -> Presentation<Q> {
        let mut g = GradedQuiver::new();
        g.add_vertex("g").unwrap();
        g.add_arrow("q1", "g", "g", d1).unwrap();
        g.add_arrow("q2", "g", "g", d2).unwrap();
        let mut p = Presentation::new(g);
        p.add_relation_names(["q1", "q1"]).unwrap();
        p.add_relation_names(["q2", "q2"]).unwrap();
        assert!(p.validate().ok());
        p
    }

    #[test]
    fn single_loops() {
        for d in [1, 2] {
            let mut a = polynomial::<Q>(d);
            a.validate();
            let r = curved_cocycle_check(&a, &CurvedLoops::Loop("q".into())).unwrap();
            assert!(r.cocycle && r.total_degree == 2, "{r:?}");
        }
        let mut a = polynomial::<Q>(3);
        a.validate();
        assert!(curved_cocycle_check(&a, &CurvedLoops::Loop("q".into())).is_err());
    }

    #[test]
    fn loop_pairs() {
        for (d1, d2) in [(0, 1), (1, 0), (2, -1), (1, 1), (0, 2), (3, -1)] {
            let r = curved_cocycle_check(&two_loops(d1, d2), &CurvedLoops::Pair("q1".into(), "q2".into())).unwrap();
            assert!(r.cocycle && r.total_degree == 2, "({d1},{d2}) {r:?}");
        }
        let r = curved_cocycle_check(&two_loops(0, 1), &CurvedLoops::Pair("q1".into(), "q2".into())).unwrap();
        assert_eq!(r.value.matches('+').count(), 1);
    }

    #[test]
    fn fibers_pass() {
        for d in [1, 2] {
            for l in [Q::from_i64(0), Q::from_ratio(-5, 3)] {
                let m = curved_fiber(d, &l, 8).unwrap();
                assert!(m.check_invariants().is_empty());
                let r = check_stasheff(&m, 4);
                assert!(r.passed, "{:?}", r.violation);
                assert!(r.checked[&4] > 0);
            }
        }
    }
}
