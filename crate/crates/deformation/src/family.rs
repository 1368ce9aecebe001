use std::collections::BTreeMap;

use hochschild::{StandardLayout, UnitKind};
use num_traits::Zero;
use quiver_core::{sign, AlgebraError, Element, Field, Path, Presentation, Q};
use serde::Serialize;
use surface_dict::{predicted_hh2, SurfaceData};
use weak_dual::classify_vertices;

use crate::DeformError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TermKind {
    /// `d(arrow) += x * value`.
    Differential,
    /// The relation `arrow² = 0` becomes the rewrite `arrow² -> x * value`.
    Product,
}

#[derive(Clone, Debug)]
pub struct FamilyTerm {
    pub label: String,
    pub component: Option<usize>,
    pub kind: TermKind,
    pub arrow: usize,
    pub value: Element<Q>,
}

#[derive(Clone, Debug)]
pub struct DeformationFamily {
    pub base: Presentation<Q>,
    pub terms: Vec<FamilyTerm>,
}

impl DeformationFamily {
    pub fn dim(&self) -> usize {
        self.terms.len()
    }

    /// Rendered `{label: "d(p) += x_i * q"}` lines, in variable order.
    pub fn describe(&self) -> Vec<String> {
        let q = self.base.quiver();
        self.terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let name = &q.arrow_info(t.arrow).name;
                let v = t.value.render(q);
                match t.kind {
                    TermKind::Differential => format!("{}: d({name}) += x{} * ({v})", t.label, i + 1),
                    TermKind::Product => format!("{}: {name}*{name} -> x{} * ({v})", t.label, i + 1),
                }
            })
            .collect()
    }
}

fn role(p: &Presentation<Q>, name: Option<&str>) -> Result<usize, DeformError> {
    let name = name.ok_or_else(|| DeformError::Algebra(AlgebraError::Invalid("layout unit lacks an arrow".into())))?;
    Ok(p.quiver().arrow(name)?)
}

/// The family with one parameter per contributing boundary component of a proper standard algebra.
pub fn build_family(b: &Presentation<Q>, s: &SurfaceData) -> Result<DeformationFamily, DeformError> {
    let layout = StandardLayout::read(b)?;
    if b.meta.get("surface") != Some(&s.to_json()) {
        return Err(DeformError::Surface("presentation was not generated from this surface".into()));
    }
    if let Some(&v) = classify_vertices(b).j.iter().next() {
        return Err(DeformError::NotProper(b.quiver().vertex_name(v).to_string()));
    }
    if layout.s0 == 1 && layout.w0 == 1 {
        return Err(DeformError::Unsupported(
            "the distinguished component contributes to HH²; its cocycle is not a DG deformation. \
             Choose another stopped component as distinguished."
                .into(),
        ));
    }
    let (mut third, mut fourth1, mut fourth2) = (Vec::new(), Vec::new(), Vec::new());
    for u in &layout.units {
        match (u.kind, u.winding, u.stops) {
            (UnitKind::Stopped, 1, 1) => {
                let p = role(b, u.arrow("p1"))?;
                let q = role(b, u.arrow("q"))?;
                let value = Element::from_path(b.quiver().arrow_path(q));
                third.push(FamilyTerm { label: format!("III_{}", u.index), component: u.component, kind: TermKind::Differential, arrow: p, value });
            }
            (UnitKind::FullStop, w @ (1 | 2), _) => {
                let p = role(b, u.arrow("p"))?;
                let value = Element::from_path(Path::vertex(b.quiver().arrow_info(p).src));
                let label = format!("IV_{}", u.index);
                if w == 1 {
                    fourth1.push(FamilyTerm { label, component: u.component, kind: TermKind::Product, arrow: p, value });
                } else {
                    fourth2.push(FamilyTerm { label, component: u.component, kind: TermKind::Differential, arrow: p, value });
                }
            }
            _ => {}
        }
    }
    let terms: Vec<FamilyTerm> = third.into_iter().chain(fourth1).chain(fourth2).collect();
    let predicted = predicted_hh2(s).0;
    if terms.len() != predicted {
        return Err(DeformError::Algebra(AlgebraError::Contract(format!(
            "family has {} parameters but HH² is predicted to be {predicted}",
            terms.len()
        ))));
    }
    Ok(DeformationFamily { base: b.clone(), terms })
}

fn fiber_unchecked(f: &DeformationFamily, lambda: &[Q]) -> Result<Presentation<Q>, DeformError> {
    if lambda.len() != f.dim() {
        return Err(DeformError::BadLambda { expected: f.dim(), got: lambda.len() });
    }
    let base = &f.base;
    let mut p = Presentation::new(base.quiver().clone());
    let opened: Vec<usize> = f
        .terms
        .iter()
        .zip(lambda)
        .filter(|(t, l)| t.kind == TermKind::Product && !l.is_zero())
        .map(|(t, _)| t.arrow)
        .collect();
    for &(first, then) in base.relations() {
        if !(first == then && opened.contains(&first)) {
            p.add_relation(first, then);
        }
    }
    for r in base.rewrites() {
        p.add_rewrite(r.lhs.clone(), r.rhs.clone());
    }
    let mut diff: BTreeMap<usize, Element<Q>> = base.differential().clone();
    for (t, l) in f.terms.iter().zip(lambda) {
        if l.is_zero() {
            continue;
        }
        match t.kind {
            TermKind::Differential => diff.entry(t.arrow).or_default().add_scaled(&t.value, l),
            TermKind::Product => {
                let a = base.quiver().arrow_path(t.arrow);
                p.add_rewrite(a.after(&a).expect("loop"), t.value.scaled(l));
            }
        }
    }
    for (a, v) in diff {
        p.set_differential(a, v);
    }
    p.meta = base.meta.clone();
    p.meta.insert("lambda".into(), lambda.iter().map(Field::to_exact_string).collect::<Vec<_>>().join(","));
    p.length_bound = base.length_bound;
    Ok(p)
}

/// The fiber `x ↦ λ`, validated.
pub fn evaluate_fiber(f: &DeformationFamily, lambda: &[Q]) -> Result<Presentation<Q>, DeformError> {
    let mut p = fiber_unchecked(f, lambda)?;
    let rep = p.validate();
    if !rep.ok() {
        return Err(DeformError::Algebra(AlgebraError::Contract(format!("fiber fails validation: {}", rep.errors.join("; ")))));
    }
    Ok(p)
}

type Defects = BTreeMap<(String, Path), Q>;

fn d_elem(p: &Presentation<Q>, e: &Element<Q>) -> Result<Element<Q>, AlgebraError> {
    let mut out = Element::zero();
    for (x, c) in e.terms() {
        out.add_scaled(&p.d_path(x)?, c);
    }
    Ok(out)
}

fn arrow_d(p: &Presentation<Q>, a: usize) -> Element<Q> {
    p.differential().get(&a).cloned().unwrap_or_default()
}

fn leibniz(p: &Presentation<Q>, first: usize, then: usize) -> Result<Element<Q>, AlgebraError> {
    let q = p.quiver();
    let (x, y) = (Element::from_path(q.arrow_path(first)), Element::from_path(q.arrow_path(then)));
    let mut out = p.compose(&arrow_d(p, then), &x)?;
    out.add_scaled(&p.compose(&y, &arrow_d(p, first))?, &sign(q.arrow_info(then).deg));
    Ok(out)
}

/// `d²` on arrows and `d` of every relation, in the fiber's normal form.
fn defects(f: &DeformationFamily, p: &Presentation<Q>) -> Result<Defects, AlgebraError> {
    let q = p.quiver();
    let mut out = Defects::new();
    let mut put = |label: String, e: Element<Q>| {
        for (x, c) in e.terms() {
            out.insert((label.clone(), x.clone()), c.clone());
        }
    };
    for a in 0..q.num_arrows() {
        put(format!("d²({})", q.arrow_info(a).name), d_elem(p, &arrow_d(p, a))?);
    }
    // A square-zero loop opened by a parameter keeps its label: the family relation is `x² - λ e`.
    for &(first, then) in f.base.relations() {
        let label = format!("d({}*{})", q.arrow_info(then).name, q.arrow_info(first).name);
        put(label, leibniz(p, first, then)?);
    }
    for r in f.base.rewrites() {
        let mut e = p.d_path(&r.lhs)?;
        e.add_scaled(&d_elem(p, &r.rhs)?, &Q::from_i64(-1));
        put(format!("d({})", q.render(&r.lhs)), e);
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FamilyCheck {
    pub fibers: usize,
    pub monomials: usize,
    pub violations: Vec<String>,
}

impl FamilyCheck {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn unit(d: usize, entries: &[(usize, i64)]) -> Vec<Q> {
    let mut v = vec![Q::from_i64(0); d];
    for &(i, c) in entries {
        v[i] = v[i].clone() + Q::from_i64(c);
    }
    v
}

/// Coefficients of `d̃²` and of `d̃` on relations in the monomials `1, x_i, x_i², x_i x_j`,
/// recovered by exact interpolation and confirmed at one further point.
pub fn check_family_identities(f: &DeformationFamily) -> Result<FamilyCheck, DeformError> {
    let d = f.dim();
    let eval = |l: &[Q]| -> Result<Defects, DeformError> { Ok(defects(f, &fiber_unchecked(f, l)?)?) };
    let zero = eval(&unit(d, &[]))?;
    let single: Vec<Defects> = (0..d).map(|i| eval(&unit(d, &[(i, 1)]))).collect::<Result<_, _>>()?;
    let double: Vec<Defects> = (0..d).map(|i| eval(&unit(d, &[(i, 2)]))).collect::<Result<_, _>>()?;
    let mut cross = BTreeMap::new();
    for i in 0..d {
        for j in i + 1..d {
            cross.insert((i, j), eval(&unit(d, &[(i, 1), (j, 1)]))?);
        }
    }
    let probe: Vec<Q> = (0..d).map(|i| Q::from_ratio(i as i64 + 2, 2 * i as i64 + 3)).collect();
    let at_probe = eval(&probe)?;

    let mut keys: Vec<&(String, Path)> = zero.keys().chain(at_probe.keys()).collect();
    for m in single.iter().chain(&double).chain(cross.values()) {
        keys.extend(m.keys());
    }
    keys.sort();
    keys.dedup();
    let get = |m: &Defects, k: &(String, Path)| m.get(k).cloned().unwrap_or_else(|| Q::from_i64(0));
    let mut check = FamilyCheck { fibers: 3 + 2 * d + d * d.saturating_sub(1) / 2, monomials: 1 + 2 * d + d * d.saturating_sub(1) / 2, violations: Vec::new() };
    let q = f.base.quiver();
    for k in keys {
        let c0 = get(&zero, k);
        let mut coeffs = vec![("1".to_string(), c0.clone())];
        let mut predicted = c0.clone();
        let mut lin = Vec::new();
        for i in 0..d {
            let (y1, y2) = (get(&single[i], k), get(&double[i], k));
            let b = (y2 - y1.clone() * Q::from_i64(2) + c0.clone()) / Q::from_i64(2);
            let a = y1 - c0.clone() - b.clone();
            predicted = predicted + a.clone() * probe[i].clone() + b.clone() * probe[i].clone() * probe[i].clone();
            coeffs.push((format!("x{}", i + 1), a));
            coeffs.push((format!("x{}^2", i + 1), b));
            lin.push(get(&single[i], k));
        }
        for ((i, j), m) in &cross {
            let b = get(m, k) - lin[*i].clone() - lin[*j].clone() + c0.clone();
            predicted = predicted + b.clone() * probe[*i].clone() * probe[*j].clone();
            coeffs.push((format!("x{}x{}", i + 1, j + 1), b));
        }
        let target = format!("{} at {}", k.0, q.render(&k.1));
        for (m, c) in coeffs {
            if !c.is_zero() {
                check.violations.push(format!("{target}: coefficient of {m} is {}", c.to_exact_string()));
            }
        }
        if predicted != get(&at_probe, k) {
            check.violations.push(format!("{target}: not of degree at most 2 in the parameters"));
        }
    }
    Ok(check)
}
