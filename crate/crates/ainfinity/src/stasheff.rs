//! The curved Stasheff identities with Koszul signs on the shifted complex.
//!
//! For inputs `a_m ⊗ … ⊗ a_1` the identity reads
//! `Σ_{r,s} (-1)^{|sa_1| + … + |sa_r|} μ^{m-s+1}(a_m, …, μ^s(a_{r+s}, …, a_{r+1}), a_r, …, a_1) = 0`,
//! with `μ⁰` inserted at the junction vertex when `s = 0`.

use std::collections::BTreeMap;

use num_traits::Zero;
use quiver_core::io::element_to_json;
use quiver_core::linalg::{combine, SparseVec};
use quiver_core::{sign, Field, Q};
use rayon::prelude::*;
use serde::Serialize;

use crate::presentation::AInfinityPresentation;

#[derive(Clone, Debug, Serialize)]
pub struct StasheffTerm {
    pub r: usize,
    pub s: usize,
    pub sign: i8,
    /// The nested expression, e.g. `μ^2(sa ⊗ μ^1(sb))`.
    pub expression: String,
    pub value: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StasheffViolation {
    pub arity: usize,
    pub inputs: Vec<String>,
    pub residue: BTreeMap<String, String>,
    pub terms: Vec<StasheffTerm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StasheffReport {
    pub arity_bound: usize,
    pub passed: bool,
    /// Tuples checked per arity.
    pub checked: BTreeMap<usize, usize>,
    /// Tuples skipped because some value left the basis window.
    pub skipped: BTreeMap<usize, usize>,
    pub violation: Option<StasheffViolation>,
}

enum Outcome {
    Zero,
    Skipped,
    Nonzero,
}

struct Term {
    r: usize,
    s: usize,
    negative: bool,
    value: SparseVec<Q>,
}

/// Composable tuples of length `m` in written order.
fn tuples(p: &AInfinityPresentation, m: usize) -> Vec<Vec<usize>> {
    let nv = p.quiver().num_vertices();
    let mut by_tgt: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (i, x) in p.basis.iter().enumerate() {
        by_tgt[x.tgt].push(i);
    }
    let mut out: Vec<Vec<usize>> = (0..p.basis.len()).map(|i| vec![i]).collect();
    for _ in 1..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                let v = p.basis[*t.last().unwrap()].src;
                by_tgt[v].iter().map(move |&j| {
                    let mut t2 = t.clone();
                    t2.push(j);
                    t2
                })
            })
            .collect();
    }
    out
}

/// All terms of the identity on `x`, or `None` if a value leaves the window.
fn terms(p: &AInfinityPresentation, x: &[usize]) -> Option<Vec<Term>> {
    let m = x.len();
    let mut out = Vec::new();
    for s in 0..=m {
        let outer = m - s + 1;
        if !p.has_arity(outer) {
            continue;
        }
        if s > 0 && !p.has_arity(s) {
            continue;
        }
        if s == 0 && p.mu0.is_empty() {
            continue;
        }
        for r in 0..=m - s {
            let lo = m - r - s;
            let inner: SparseVec<Q> = if s == 0 {
                let v = if r == 0 { p.basis[x[m - 1]].src } else { p.basis[x[m - r]].tgt };
                match p.mu0.get(&v) {
                    Some(c) => c.clone(),
                    None => continue,
                }
            } else {
                p.mu(&x[lo..m - r])?.to_vec()
            };
            if inner.is_empty() {
                continue;
            }
            let eps: i64 = x[m - r..].iter().map(|&i| p.shifted_degree(i)).sum();
            let mut value: SparseVec<Q> = Vec::new();
            let mut args: Vec<usize> = Vec::with_capacity(outer);
            for (b, c) in &inner {
                args.clear();
                args.extend_from_slice(&x[..lo]);
                args.push(*b);
                args.extend_from_slice(&x[m - r..]);
                let y = p.mu(&args)?;
                if !y.is_empty() {
                    value = combine(&Q::from_i64(1), &value, c, y);
                }
            }
            if !value.is_empty() {
                out.push(Term { r, s, negative: eps.rem_euclid(2) == 1, value });
            }
        }
    }
    Some(out)
}

fn residue(ts: &[Term]) -> SparseVec<Q> {
    let one = Q::from_i64(1);
    ts.iter().fold(Vec::new(), |acc, t| combine(&one, &acc, &sign(t.negative as i64), &t.value))
}

fn outcome(p: &AInfinityPresentation, x: &[usize]) -> Outcome {
    match terms(p, x) {
        None => Outcome::Skipped,
        Some(ts) if residue(&ts).iter().all(|(_, c)| c.is_zero()) => Outcome::Zero,
        Some(_) => Outcome::Nonzero,
    }
}

fn describe(p: &AInfinityPresentation, x: &[usize]) -> StasheffViolation {
    let q = p.quiver();
    let ts = terms(p, x).unwrap_or_default();
    let m = x.len();
    let name = |i: usize| format!("s{}", q.render(&p.basis[i]));
    let terms = ts
        .iter()
        .map(|t| {
            let lo = m - t.r - t.s;
            let inner = if t.s == 0 {
                "μ^0".to_string()
            } else {
                format!("μ^{}({})", t.s, x[lo..m - t.r].iter().map(|&i| name(i)).collect::<Vec<_>>().join(" ⊗ "))
            };
            let args: Vec<String> =
                x[..lo].iter().map(|&i| name(i)).chain([inner]).chain(x[m - t.r..].iter().map(|&i| name(i))).collect();
            StasheffTerm {
                r: t.r,
                s: t.s,
                sign: if t.negative { -1 } else { 1 },
                expression: format!("μ^{}({})", m - t.s + 1, args.join(" ⊗ ")),
                value: element_to_json(q, &p.element(&t.value)),
            }
        })
        .collect();
    StasheffViolation {
        arity: m,
        inputs: x.iter().map(|&i| q.render(&p.basis[i])).collect(),
        residue: element_to_json(q, &p.element(&residue(&ts))),
        terms,
    }
}

/// Checks every identity of arity `≤ arity_bound` on all composable basis tuples.
/// The arity-0 identity is `μ¹(μ⁰) = 0`.
pub fn check_stasheff(p: &AInfinityPresentation, arity_bound: usize) -> StasheffReport {
    let mut report = StasheffReport {
        arity_bound,
        passed: true,
        checked: BTreeMap::new(),
        skipped: BTreeMap::new(),
        violation: None,
    };
    let q = p.quiver();
    for (&v, c) in &p.mu0 {
        let mut value: SparseVec<Q> = Vec::new();
        for (b, x) in c {
            match p.mu(&[*b]) {
                Some(y) => value = combine(&Q::from_i64(1), &value, x, y),
                None => continue,
            }
        }
        *report.checked.entry(0).or_default() += 1;
        if !value.is_empty() {
            report.passed = false;
            report.violation = Some(StasheffViolation {
                arity: 0,
                inputs: vec![format!("e_{}", q.vertex_name(v))],
                residue: element_to_json(q, &p.element(&value)),
                terms: vec![StasheffTerm {
                    r: 0,
                    s: 0,
                    sign: 1,
                    expression: "μ^1(μ^0)".into(),
                    value: element_to_json(q, &p.element(&value)),
                }],
            });
            return report;
        }
    }
    for m in 1..=arity_bound {
        let all = tuples(p, m);
        let outcomes: Vec<Outcome> = all.par_iter().map(|x| outcome(p, x)).collect();
        let mut checked = 0;
        let mut skipped = 0;
        for (x, o) in all.iter().zip(&outcomes) {
            match o {
                Outcome::Zero => checked += 1,
                Outcome::Skipped => skipped += 1,
                Outcome::Nonzero => {
                    report.checked.insert(m, checked);
                    report.skipped.insert(m, skipped);
                    report.passed = false;
                    report.violation = Some(describe(p, x));
                    return report;
                }
            }
        }
        report.checked.insert(m, checked);
        report.skipped.insert(m, skipped);
    }
    report
}
