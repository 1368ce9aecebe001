//! Gentle, DG gentle and formality predicates.

use crate::error::AlgebraError;
use crate::presentation::Presentation;
use crate::scalar::Field;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GentleReport {
    pub violations: Vec<String>,
}

impl GentleReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn is_gentle<K: Field>(p: &Presentation<K>) -> GentleReport {
    let q = p.quiver();
    let mut violations = Vec::new();
    if !p.is_monomial() {
        violations.push("presentation has rewrite rules".into());
    }
    for v in 0..q.num_vertices() {
        let name = q.vertex_name(v);
        let inc = q.incoming(v).count();
        let out = q.outgoing(v).count();
        if inc > 2 {
            violations.push(format!("vertex {name} has {inc} incoming arrows"));
        }
        if out > 2 {
            violations.push(format!("vertex {name} has {out} outgoing arrows"));
        }
    }
    for a in 0..q.num_arrows() {
        let ar = q.arrow_info(a);
        let (mut zero_next, mut live_next) = (0, 0);
        for b in q.outgoing(ar.tgt) {
            if p.is_zero_pair(a, b) {
                zero_next += 1;
            } else {
                live_next += 1;
            }
        }
        let (mut zero_prev, mut live_prev) = (0, 0);
        for b in q.incoming(ar.src) {
            if p.is_zero_pair(b, a) {
                zero_prev += 1;
            } else {
                live_prev += 1;
            }
        }
        if zero_next > 1 {
            violations.push(format!("arrow {} has {zero_next} relation successors", ar.name));
        }
        if live_next > 1 {
            violations.push(format!("arrow {} has {live_next} nonzero successors", ar.name));
        }
        if zero_prev > 1 {
            violations.push(format!("arrow {} has {zero_prev} relation predecessors", ar.name));
        }
        if live_prev > 1 {
            violations.push(format!("arrow {} has {live_prev} nonzero predecessors", ar.name));
        }
    }
    GentleReport { violations }
}

pub fn is_dg_gentle<K: Field>(p: &Presentation<K>) -> bool {
    if !is_gentle(p).holds() || !p.check().ok() {
        return false;
    }
    p.differential().iter().all(|(&x, dx)| {
        dx.terms().all(|(path, _)| path.arrows.first() != Some(&x) && path.arrows.last() != Some(&x))
    })
}

/// Formality criterion for DG gentle algebras; refuses when the caller flags the
/// excluded case (disk with one stop and two orbifold points).
pub fn is_formal<K: Field>(p: &Presentation<K>, excluded_case: bool) -> Result<bool, AlgebraError> {
    if excluded_case {
        return Err(AlgebraError::Contract(
            "formality is not decided by this criterion for a disk with one stop and two orbifold points".into(),
        ));
    }
    if !is_dg_gentle(p) {
        return Err(AlgebraError::Contract("presentation is not DG gentle".into()));
    }
    let q = p.quiver();
    Ok(p.differential().iter().all(|(&x, dx)| {
        if dx.terms().all(|(path, _)| path.len() <= 1) {
            return true;
        }
        let ar = q.arrow_info(x);
        let isolated_after = q.outgoing(ar.tgt).all(|b| p.is_zero_pair(x, b));
        let isolated_before = q.incoming(ar.src).all(|b| p.is_zero_pair(b, x));
        isolated_after && isolated_before
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::GradedQuiver;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn three_outgoing_is_not_gentle() {
        let mut q = GradedQuiver::new();
        for v in ["a", "b", "c", "d"] {
            q.add_vertex(v).unwrap();
        }
        q.add_arrow("x", "a", "b", 0).unwrap();
        q.add_arrow("y", "a", "c", 0).unwrap();
        q.add_arrow("z", "a", "d", 0).unwrap();
        let p: Presentation<Q> = Presentation::new(q);
        assert!(!is_gentle(&p).holds());
    }

    fn loop_pair(d_value: &[&str]) -> Presentation<Q> {
        // u^2 = v^2 = 0 loops at the ends of p.
        let mut q = GradedQuiver::new();
        q.add_vertex("a").unwrap();
        q.add_vertex("b").unwrap();
        q.add_arrow("u", "a", "a", 0).unwrap();
        q.add_arrow("v", "b", "b", 1).unwrap();
        q.add_arrow("p", "a", "b", 0).unwrap();
        let mut a = Presentation::new(q);
        a.add_relation_names(["u", "u"]).unwrap();
        a.add_relation_names(["v", "v"]).unwrap();
        let pid = a.quiver().arrow("p").unwrap();
        let dv = a.elem(d_value);
        a.set_differential(pid, dv);
        a
    }

    #[test]
    fn conjugated_differential_is_not_formal() {
        let mut a = loop_pair(&["v", "p", "u"]);
        assert!(a.validate().ok());
        assert!(is_dg_gentle(&a));
        assert_eq!(is_formal(&a, false), Ok(false));
        assert!(is_formal(&a, true).is_err());
    }

    #[test]
    fn self_referential_differential_is_not_dg_gentle() {
        let mut q = GradedQuiver::new();
        q.add_vertex("a").unwrap();
        q.add_arrow("p", "a", "a", 0).unwrap();
        q.add_arrow("x", "a", "a", 1).unwrap();
        let mut a: Presentation<Q> = Presentation::new(q);
        a.add_relation_names(["x", "x"]).unwrap();
        a.add_relation_names(["p", "p"]).unwrap();
        let px = a.elem(&["p", "x"]);
        a.set_differential(0, px);
        assert!(!is_dg_gentle(&a));
    }
}
