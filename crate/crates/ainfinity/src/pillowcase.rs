//! The four-parameter A∞ family on the six-vertex gentle algebra
//! `p_i, q_i: v(2i-2) → v(2i-1)`, `u_i: v(2i-1) → v(2i)` and its cohomology algebra.

use std::collections::BTreeMap;

use deformation::{verify_morphism, AlgebraMap, MorphismReport};
use num_traits::Zero;
use quiver_core::fixtures::{pillowcase_precursor, skew_gentle};
use quiver_core::io::{to_json, PresentationJson};
use quiver_core::linalg::{kernel, rank, solve, SparseVec};
use quiver_core::{sign, Element, Field, GradedQuiver, Path, Presentation, Q};
use serde::Serialize;
use surface_dict::{deform_surface, validate_surface, ContributionClass, StopConfig, SurfaceData};

use crate::presentation::AInfinityPresentation;
use crate::AInfError;

const TOP: [&str; 5] = ["p3", "u2", "p2", "u1", "p1"];

fn lambda_product(l: &[Q; 4]) -> Q {
    l.iter().fold(Q::from_i64(1), |acc, x| acc * x.clone())
}

/// `d p_i = λ_i q_i` on the gentle algebra, validated.
pub fn pillowcase_dg(lambda: &[Q; 4]) -> Result<Presentation<Q>, AInfError> {
    let mut a = pillowcase_precursor::<Q>();
    for i in 1..=3 {
        if lambda[i - 1].is_zero() {
            continue;
        }
        let p = a.quiver().arrow(&format!("p{i}"))?;
        let dq = a.elem(&[&format!("q{i}")]).scaled(&lambda[i - 1]);
        a.set_differential(p, dq);
    }
    let report = a.validate();
    if !report.ok() {
        return Err(AInfError::Invalid(report.errors.join("; ")));
    }
    Ok(a)
}

type Entry = (&'static [&'static [&'static str]], Q);

/// Corrections to the DG structure, each a multiple of `s(top)`.
fn higher_products(lambda: &[Q; 4]) -> Vec<Entry> {
    let [l1, l2, l3, l4] = lambda.clone();
    vec![
        (&[&["q3"], &["u2"], &["q2"], &["u1"], &["q1"]], -l4.clone()),
        (&[&["p3", "u2"], &["q2"], &["u1"], &["q1"]], -(l3.clone() * &l4)),
        (&[&["q3"], &["u2", "p2"], &["u1"], &["q1"]], l2.clone() * &l4),
        (&[&["q3"], &["u2"], &["q2"], &["u1", "p1"]], l1.clone() * &l4),
        (&[&["p3", "u2"], &["q2"], &["u1", "p1"]], l1.clone() * &l3 * &l4),
        (&[&["q3"], &["u2", "p2"], &["u1", "p1"]], -(l1.clone() * &l2 * &l4)),
        (&[&["p3", "u2", "p2"], &["u1"], &["q1"]], l2 * &l3 * &l4),
        (&[&["p3", "u2", "p2"], &["u1", "p1"]], Q::from_i64(1) - lambda_product(lambda)),
    ]
}

/// `μ¹(s p_i) = λ_i s q_i`, `μ⁵(sq3 ⊗ su2 ⊗ sq2 ⊗ su1 ⊗ sq1) = -λ4 s(top)` with
/// `top = p3 u2 p2 u1 p1`, the lower corrections of [`higher_products`] and
/// `μ²(s p3u2p2 ⊗ s u1p1) = (1 - λ1 λ2 λ3 λ4) s(top)`.
pub fn pillowcase_family(lambda: &[Q; 4]) -> Result<AInfinityPresentation, AInfError> {
    let a = pillowcase_dg(lambda)?;
    let mut m = AInfinityPresentation::from_dg(&a, 5)?;
    let top = a.elem(&TOP);
    for (inputs, c) in higher_products(lambda) {
        let inputs: Vec<Path> = inputs.iter().map(|n| a.path(n)).collect();
        m.set_mu(&inputs, &top.scaled(&c))?;
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareRelation {
    /// Path through `2+`, in composition order.
    pub lhs: [String; 2],
    /// Path through `2-`.
    pub rhs: [String; 2],
    pub coefficient: String,
}

/// Cohomology of `(A, μ¹)` with the product induced by `μ²`.
#[derive(Clone, Debug, Serialize)]
pub struct PillowcaseCohomology {
    pub lambda: Vec<String>,
    pub dims: BTreeMap<i64, usize>,
    pub concentrated_in_zero: bool,
    pub squares: Vec<SquareRelation>,
    /// Coefficient of the square through `[p3 u2 p2][u1 p1]`.
    pub skew_coefficient: String,
    /// The skew coefficient vanishes and the relation is monomial.
    pub degenerate: bool,
    pub note: Option<String>,
    #[serde(skip)]
    pub algebra: Option<Presentation<Q>>,
}

impl PillowcaseCohomology {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn algebra_json(&self) -> Option<PresentationJson> {
        self.algebra.as_ref().map(to_json)
    }
}

/// Cohomology classes named by their cocycle, vertices `1± 2± 3±` of the quotient.
const VERTICES: [(&str, &str); 6] = [("1p", "v0"), ("1m", "v1"), ("2p", "v2"), ("2m", "v3"), ("3p", "v4"), ("3m", "v5")];
const ARROWS: [(&str, &[&str]); 8] = [
    ("p2u1p1", &["p2", "u1", "p1"]),
    ("p2u1", &["p2", "u1"]),
    ("u2", &["u2"]),
    ("p3u2", &["p3", "u2"]),
    ("u1p1", &["u1", "p1"]),
    ("u1", &["u1"]),
    ("u2p2", &["u2", "p2"]),
    ("p3u2p2", &["p3", "u2", "p2"]),
];
const SQUARES: [([&str; 2], [&str; 2]); 4] = [
    (["p3u2p2", "u1p1"], ["p3u2", "p2u1p1"]),
    (["u2p2", "u1p1"], ["u2", "p2u1p1"]),
    (["p3u2p2", "u1"], ["p3u2", "p2u1"]),
    (["u2p2", "u1"], ["u2", "p2u1"]),
];

struct Complex<'a> {
    m: &'a AInfinityPresentation,
    /// Basis indices per degree.
    by_degree: BTreeMap<i64, Vec<usize>>,
}

impl Complex<'_> {
    fn differential_images(&self, n: i64) -> Vec<SparseVec<Q>> {
        self.by_degree
            .get(&n)
            .into_iter()
            .flatten()
            .map(|&i| self.m.mu(&[i]).map(<[_]>::to_vec).unwrap_or_default())
            .collect()
    }

    fn coboundaries(&self, n: i64) -> Vec<SparseVec<Q>> {
        self.differential_images(n - 1).into_iter().filter(|v| !v.is_empty()).collect()
    }

    fn dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &n in self.by_degree.keys() {
            let z = kernel(&self.differential_images(n)).len();
            let b = rank(self.coboundaries(n));
            if z > b {
                out.insert(n, z - b);
            }
        }
        out
    }
}

/// `x · y = (-1)^{|sx||y|} μ²(sx ⊗ sy)` on basis vectors.
fn product(m: &AInfinityPresentation, x: &[(usize, Q)], y: &[(usize, Q)]) -> Result<SparseVec<Q>, AInfError> {
    let mut out: SparseVec<Q> = Vec::new();
    for (i, a) in x {
        for (j, b) in y {
            if m.basis[*j].tgt != m.basis[*i].src {
                continue;
            }
            let v = m.mu(&[*i, *j]).ok_or_else(|| AInfError::Cohomology("product leaves the basis".into()))?;
            let s: Q = sign(m.shifted_degree(*i) * m.degree(*j));
            out = quiver_core::linalg::combine(&Q::from_i64(1), &out, &(s * a.clone() * b.clone()), v);
        }
    }
    Ok(out)
}

fn quotient_quiver() -> Result<GradedQuiver, AInfError> {
    let mut q = GradedQuiver::new();
    for (v, _) in VERTICES {
        q.add_vertex(v)?;
    }
    let vertex_of = |name: &str| VERTICES.iter().find(|(_, o)| *o == name).map(|(v, _)| *v).unwrap();
    let a = pillowcase_precursor::<Q>();
    for (name, path) in ARROWS {
        let x = a.path(path);
        q.add_arrow(name, vertex_of(a.quiver().vertex_name(x.src)), vertex_of(a.quiver().vertex_name(x.tgt)), 0)?;
    }
    Ok(q)
}

pub fn pillowcase_cohomology(lambda: &[Q; 4]) -> Result<PillowcaseCohomology, AInfError> {
    let m = pillowcase_family(lambda)?;
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for i in 0..m.basis.len() {
        by_degree.entry(m.degree(i)).or_default().push(i);
    }
    let cx = Complex { m: &m, by_degree };
    let dims = cx.dims();
    let concentrated = dims.keys().all(|&n| n == 0);
    let a = &m.base;
    let class = |names: &[&str]| -> SparseVec<Q> { vec![(m.index_of(&a.path(names)).unwrap(), Q::from_i64(1))] };
    let arrow_class = |name: &str| class(ARROWS.iter().find(|(n, _)| *n == name).unwrap().1);
    for (name, path) in ARROWS {
        let i = m.index_of(&a.path(path)).unwrap();
        if !m.mu(&[i]).unwrap_or(&[]).is_empty() {
            return Err(AInfError::Cohomology(format!("{name} is not a cocycle")));
        }
    }
    let b0 = cx.coboundaries(0);
    let mut squares = Vec::new();
    let mut coefficients = Vec::new();
    let mut products = Vec::new();
    for (lhs, rhs) in SQUARES {
        let l = product(&m, &arrow_class(lhs[0]), &arrow_class(lhs[1]))?;
        let r = product(&m, &arrow_class(rhs[0]), &arrow_class(rhs[1]))?;
        let mut rows = b0.clone();
        rows.push(r.clone());
        let x = solve(&rows, &l).ok_or_else(|| AInfError::Cohomology(format!("square {}·{} does not close", lhs[0], lhs[1])))?;
        let c = x.iter().find(|(k, _)| *k == b0.len()).map(|(_, c)| c.clone()).unwrap_or_else(Q::zero);
        squares.push(SquareRelation {
            lhs: lhs.map(String::from),
            rhs: rhs.map(String::from),
            coefficient: c.to_exact_string(),
        });
        coefficients.push(c);
        products.push(r);
    }
    let skew = coefficients[0].clone();
    let mut out = PillowcaseCohomology {
        lambda: lambda.iter().map(Field::to_exact_string).collect(),
        dims: dims.clone(),
        concentrated_in_zero: concentrated,
        squares,
        skew_coefficient: skew.to_exact_string(),
        degenerate: skew.is_zero(),
        note: None,
        algebra: None,
    };
    if !concentrated {
        out.note = Some("some λ_i with i ≤ 3 vanishes: μ¹ misses q_i and the cohomology is not concentrated in degree 0".into());
        return Ok(out);
    }
    // The named classes must form a basis of H⁰.
    let mut spanning: Vec<SparseVec<Q>> = (0..6).map(|v| class_of_vertex(&m, v)).collect();
    spanning.extend(ARROWS.iter().map(|(n, _)| arrow_class(n)));
    spanning.extend(products);
    let base = rank(b0.clone());
    let r = rank(b0.iter().cloned().chain(spanning.iter().cloned()));
    if r - base != spanning.len() || spanning.len() != dims.get(&0).copied().unwrap_or(0) {
        return Err(AInfError::Cohomology(format!(
            "named classes span {} of {} dimensions",
            r - base,
            dims.get(&0).copied().unwrap_or(0)
        )));
    }
    let mut h = Presentation::new(quotient_quiver()?);
    for ((lhs, rhs), c) in SQUARES.iter().zip(&coefficients) {
        if c.is_zero() {
            h.add_relation_names([lhs[0], lhs[1]])?;
        } else {
            let (l, r) = (h.path(lhs), h.elem(rhs).scaled(c));
            h.add_rewrite(l, r);
        }
    }
    let report = h.validate();
    if !report.ok() {
        return Err(AInfError::Invalid(report.errors.join("; ")));
    }
    if out.degenerate {
        out.note = Some("λ1 λ2 λ3 λ4 = 1: the skew square becomes the monomial relation [p3u2p2][u1p1] = 0".into());
    }
    out.algebra = Some(h);
    Ok(out)
}

fn class_of_vertex(m: &AInfinityPresentation, v: usize) -> SparseVec<Q> {
    vec![(m.index_of(&Path::vertex(v)).unwrap(), Q::from_i64(1))]
}

/// The map from the algebra with loops `p_i² = e_i` and `u2 u1 = 0` sending
/// `e_i ↦ e_{i+} + e_{i-}`, `p_i ↦ e_{i+} - e_{i-}`, `u1` to the sum of its four
/// lifts and `u2` to the lifts out of `2+` minus those out of `2-`.
pub fn skew_gentle_map(h: &Presentation<Q>) -> AlgebraMap {
    let mut map = AlgebraMap::default();
    for i in 1..=3 {
        let (plus, minus) = (h.idem(&format!("{i}p")), h.idem(&format!("{i}m")));
        let mut sum = plus.clone();
        sum.add(&minus);
        map.vertices.insert(i.to_string(), sum);
        map.arrows.insert(format!("p{i}"), plus.sub(&minus));
    }
    let mut u1 = Element::zero();
    for n in ["u1p1", "p2u1p1", "u1", "p2u1"] {
        u1.add(&h.elem(&[n]));
    }
    let mut u2 = h.elem(&["u2p2"]);
    u2.add(&h.elem(&["p3u2p2"]));
    let u2 = u2.sub(&h.elem(&["u2"])).sub(&h.elem(&["p3u2"]));
    map.arrows.insert("u1".into(), u1);
    map.arrows.insert("u2".into(), u2);
    map
}

/// Checks [`skew_gentle_map`] into the cohomology algebra.
pub fn compare_with_skew_gentle(c: &PillowcaseCohomology) -> Result<MorphismReport, AInfError> {
    let h = c.algebra.as_ref().ok_or_else(|| AInfError::Cohomology("no cohomology algebra".into()))?;
    let mut s = skew_gentle::<Q>();
    let report = s.validate();
    if !report.ok() {
        return Err(AInfError::Invalid(report.errors.join("; ")));
    }
    Ok(verify_morphism(&s, h, &skew_gentle_map(h), (-2, 2), 8)?)
}

/// Counts of a surface whose components all contribute to `HH²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PillowcaseCounts {
    pub k: usize,
    pub l: usize,
    pub m1: usize,
    pub m2: usize,
    pub n1: usize,
    pub n2: usize,
}

impl PillowcaseCounts {
    pub fn surface(&self, genus: usize) -> SurfaceData {
        use surface_dict::Boundary;
        let mut b = Vec::new();
        b.extend((0..self.l).map(|_| Boundary::new(StopConfig::Stops(1), 1)));
        b.extend((0..self.m1).map(|_| Boundary::new(StopConfig::Full, 1)));
        b.extend((0..self.m2).map(|_| Boundary::new(StopConfig::Full, 2)));
        b.extend((0..self.n1).map(|_| Boundary::new(StopConfig::None, 1)));
        b.extend((0..self.n2).map(|_| Boundary::new(StopConfig::None, 2)));
        SurfaceData::new(genus, self.k, b)
    }

    pub fn of(s: &SurfaceData) -> Option<Self> {
        let mut c = PillowcaseCounts { k: s.orbifold_points, l: 0, m1: 0, m2: 0, n1: 0, n2: 0 };
        for b in &s.boundary {
            match ContributionClass::of(b) {
                ContributionClass::III1 => c.l += 1,
                ContributionClass::IV1 => c.m1 += 1,
                ContributionClass::IV2 => c.m2 += 1,
                ContributionClass::V1 => c.n1 += 1,
                ContributionClass::V2 => c.n2 += 1,
                ContributionClass::None => return None,
            }
        }
        (c.l >= 1).then_some(c)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PillowcaseSurface {
    pub counts: PillowcaseCounts,
    /// `K + L + M1 + N1`.
    pub orbifold_total: usize,
    pub hh2: usize,
    pub generic: SurfaceData,
}

/// For a valid surface all of whose components contribute, with at least one
/// component of one stop and winding 1: the counts and the generic deformation.
pub fn pillowcase_surface(s: &SurfaceData) -> Result<Option<PillowcaseSurface>, AInfError> {
    let Some(counts) = PillowcaseCounts::of(s) else { return Ok(None) };
    let report = validate_surface(s);
    if !report.ok() {
        return Err(AInfError::Invalid(report.errors.join("; ")));
    }
    let all: Vec<usize> = (0..s.boundary.len()).collect();
    let generic = deform_surface(s, &all).map_err(AInfError::Invalid)?;
    Ok(Some(PillowcaseSurface {
        orbifold_total: counts.k + counts.l + counts.m1 + counts.n1,
        hh2: counts.l + counts.m1 + counts.m2 + counts.n1 + counts.n2,
        counts,
        generic,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stasheff::check_stasheff;
    use deformation::Verdict;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn origin_is_the_gentle_algebra() {
        let zero = [q(0, 1), q(0, 1), q(0, 1), q(0, 1)];
        let m = pillowcase_family(&zero).unwrap();
        assert_eq!(m.basis.len(), 24);
        assert_eq!(m.max_arity(), 2);
        let mut a = pillowcase_precursor::<Q>();
        a.validate();
        let plain = AInfinityPresentation::from_dg(&a, 5).unwrap();
        assert_eq!(m.constants(), plain.constants());
    }

    #[test]
    fn generic_member_passes() {
        let m = pillowcase_family(&[q(2, 3), q(-1, 1), q(5, 2), q(3, 7)]).unwrap();
        assert!(m.check_invariants().is_empty());
        let r = check_stasheff(&m, 6);
        assert!(r.passed, "{:#?}", r.violation);
        assert!(r.checked[&6] > 0 && r.skipped.values().all(|&n| n == 0), "{r:?}");
    }

    #[test]
    fn grouping_p2_with_u1_fails() {
        let l = [q(2, 3), q(-1, 1), q(5, 2), q(3, 7)];
        let a = pillowcase_dg(&l).unwrap();
        let mut m = AInfinityPresentation::from_dg(&a, 5).unwrap();
        let top = a.elem(&TOP);
        let entries: [(&[&[&str]], Q); 2] = [
            (&[&["q3"], &["u2"], &["p2", "u1", "p1"]], l[0].clone() * &l[1] * &l[3]),
            (&[&["p3", "u2", "p2"], &["u1", "p1"]], Q::from_i64(1) - lambda_product(&l)),
        ];
        for (inputs, c) in entries {
            let inputs: Vec<Path> = inputs.iter().map(|n| a.path(n)).collect();
            m.set_mu(&inputs, &top.scaled(&c)).unwrap();
        }
        let r = check_stasheff(&m, 3);
        assert!(!r.passed);
        assert_eq!(r.violation.unwrap().arity, 3);
    }

    #[test]
    fn cohomology_squares() {
        let c = pillowcase_cohomology(&[q(1, 1), q(1, 1), q(1, 1), q(3, 1)]).unwrap();
        assert!(c.concentrated_in_zero);
        assert_eq!(c.skew_coefficient, "-2");
        assert!(c.squares[1..].iter().all(|s| s.coefficient == "1"));
        let c = pillowcase_cohomology(&[q(1, 2), q(2, 1), q(1, 1), q(1, 1)]).unwrap();
        assert!(c.degenerate);
        let h = c.algebra.unwrap();
        assert_eq!(h.relations().len(), 1);
    }

    #[test]
    fn skew_gentle_at_lambda4_zero() {
        let c = pillowcase_cohomology(&[q(1, 1), q(1, 1), q(1, 1), q(0, 1)]).unwrap();
        let r = compare_with_skew_gentle(&c).unwrap();
        assert_eq!(r.verdict, Verdict::Iso, "{r:?}");
        let c = pillowcase_cohomology(&[q(1, 1), q(1, 1), q(1, 1), q(1, 2)]).unwrap();
        assert_ne!(compare_with_skew_gentle(&c).unwrap().verdict, Verdict::Iso);
    }
}
