//! Small named algebras used throughout the workspace.

use crate::presentation::Presentation;
use crate::quiver::GradedQuiver;
use crate::scalar::Field;

fn build<K: Field>(vertices: &[&str], arrows: &[(&str, &str, &str, i64)], relations: &[[&str; 2]]) -> Presentation<K> {
    let mut q = GradedQuiver::new();
    for v in vertices {
        q.add_vertex(v).expect("fixture vertex");
    }
    for (n, s, t, d) in arrows {
        q.add_arrow(n, s, t, *d).expect("fixture arrow");
    }
    let mut p = Presentation::new(q);
    for r in relations {
        p.add_relation_names(*r).expect("fixture relation");
    }
    p
}

/// The ground field: one vertex, no arrows.
pub fn point<K: Field>() -> Presentation<K> {
    build(&["o"], &[], &[])
}

/// `k[q]` with `|q| = deg`.
pub fn polynomial<K: Field>(deg: i64) -> Presentation<K> {
    build(&["o"], &[("q", "o", "o", deg)], &[])
}

/// `k[p]/(p^2)` with `|p| = deg`.
pub fn dual_numbers<K: Field>(deg: i64) -> Presentation<K> {
    build(&["o"], &[("p", "o", "o", deg)], &[["p", "p"]])
}

/// Two arrows through a vertex with `p2 p1 = q2 q1 = 0`.
pub fn local_model<K: Field>() -> Presentation<K> {
    build(
        &["0", "1", "2", "3", "4"],
        &[("p1", "0", "1", 0), ("p2", "1", "2", 0), ("q1", "3", "1", 0), ("q2", "1", "4", 0)],
        &[["p2", "p1"], ["q2", "q1"]],
    )
}

/// Six vertices `v0..v5`, parallel pairs `p_i, q_i: v(2i-2) -> v(2i-1)` with `|q_i| = 1`,
/// connectors `u1, u2`, and relations `u1 q1 = q2 u1 = u2 q2 = q3 u2 = 0`.
pub fn pillowcase_precursor<K: Field>() -> Presentation<K> {
    build(
        &["v0", "v1", "v2", "v3", "v4", "v5"],
        &[
            ("p1", "v0", "v1", 0),
            ("q1", "v0", "v1", 1),
            ("u1", "v1", "v2", 0),
            ("p2", "v2", "v3", 0),
            ("q2", "v2", "v3", 1),
            ("u2", "v3", "v4", 0),
            ("p3", "v4", "v5", 0),
            ("q3", "v4", "v5", 1),
        ],
        &[["u1", "q1"], ["q2", "u1"], ["u2", "q2"], ["q3", "u2"]],
    )
}

/// Three vertices with involutive loops `p_i^2 = e_i` and `u2 u1 = 0`.
pub fn skew_gentle<K: Field>() -> Presentation<K> {
    let mut p = build(
        &["1", "2", "3"],
        &[("p1", "1", "1", 0), ("p2", "2", "2", 0), ("p3", "3", "3", 0), ("u1", "1", "2", 0), ("u2", "2", "3", 0)],
        &[["u2", "u1"]],
    );
    for (x, v) in [("p1", "1"), ("p2", "2"), ("p3", "3")] {
        let lhs = p.path(&[x, x]);
        let rhs = p.idem(v);
        p.add_rewrite(lhs, rhs);
    }
    p
}
