//! The reduced overlap complex of a monomial quadratic DG algebra.

use std::collections::{BTreeMap, HashMap};

use quiver_core::{sign, AlgebraError, Element, Field, Path, Presentation};
use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{Cochain, CochainJson};
use crate::engine::{level, normal_representatives};
use crate::overlap::OverlapData;

type Key = (Path, Path);

/// Overlap lengths `≤ overlap_len`, value paths of length `≤ value_len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub overlap_len: usize,
    pub value_len: usize,
}

impl Truncation {
    pub fn new(overlap_len: usize, value_len: usize) -> Self {
        Truncation { overlap_len, value_len }
    }

    pub fn next(self) -> Self {
        Truncation { overlap_len: self.overlap_len + 2, value_len: self.value_len + 2 }
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::new(6, 12)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct LevelReport {
    pub bounds: Truncation,
    pub domain_dim: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub dimension: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HHReport<K> {
    pub n: i64,
    /// `None` when the truncation levels disagree.
    pub dimension: Option<usize>,
    pub stable: bool,
    pub levels: Vec<LevelReport>,
    pub representatives: Vec<CochainJson>,
    #[serde(skip)]
    pub cocycles: Vec<Cochain<K>>,
}

impl<K> HHReport<K> {
    pub fn last_dimension(&self) -> usize {
        self.levels.last().map(|l| l.dimension).unwrap_or(0)
    }
}

/// `δ` on the reduced complex, precomputed for one presentation.
pub struct ReducedComplex<'a, K> {
    p: &'a Presentation<K>,
    data: OverlapData,
    // x ↦ [(y, path in d(y), coefficient, position of x)]
    d_occurrences: HashMap<usize, Vec<(usize, Path, K, usize)>>,
    weight_graded: bool,
}

impl<'a, K: Field> ReducedComplex<'a, K> {
    pub fn new(p: &'a Presentation<K>) -> Result<Self, AlgebraError> {
        if !p.is_monomial() {
            return Err(AlgebraError::Invalid(
                "non-monomial presentation: the overlap complex does not apply, use bar_oracle_hh".into(),
            ));
        }
        let mut in_relation = vec![false; p.quiver().num_arrows()];
        for &(f, t) in p.relations() {
            in_relation[f] = true;
            in_relation[t] = true;
        }
        let mut d_occurrences: HashMap<usize, Vec<(usize, Path, K, usize)>> = HashMap::new();
        let mut weight_graded = true;
        for (&y, dy) in p.differential() {
            if in_relation[y] {
                return Err(AlgebraError::Invalid(format!(
                    "arrow {} lies in a relation and has nonzero differential; use bar_oracle_hh",
                    p.quiver().arrow_info(y).name
                )));
            }
            for (path, c) in dy.terms() {
                weight_graded &= path.len() == 1;
                for (j, &x) in path.arrows.iter().enumerate() {
                    d_occurrences.entry(x).or_default().push((y, path.clone(), c.clone(), j));
                }
            }
        }
        Ok(ReducedComplex { p, data: OverlapData::new(p), d_occurrences, weight_graded })
    }

    pub fn overlaps(&self) -> &OverlapData {
        &self.data
    }

    /// Total degree `|v| - |w| + i` of the basis cochain `w ↦ v`.
    pub fn total_degree(&self, w: &Path, v: &Path) -> i64 {
        let q = self.p.quiver();
        q.degree(v) - q.degree(w) + w.len() as i64
    }

    fn push(out: &mut Vec<(Key, K)>, w: &Path, e: Element<K>, s: &K) {
        for (v, c) in e.terms() {
            out.push(((w.clone(), v.clone()), c.clone() * s.clone()));
        }
    }

    fn delta_basis(&self, w: &Path, v: &Path) -> Result<Vec<(Key, K)>, AlgebraError> {
        let p = self.p;
        let q = p.quiver();
        let i = w.len() as i64;
        let f = self.total_degree(w, v);
        let mut out = Vec::new();

        let after: Vec<usize> = match w.arrows.last() {
            Some(&l) => self.data.successors(l).to_vec(),
            None => q.outgoing(w.src).collect(),
        };
        for a in after {
            let ad = q.arrow_info(a).deg;
            let mut arrows = w.arrows.clone();
            arrows.push(a);
            let w2 = Path { src: w.src, tgt: q.arrow_info(a).tgt, arrows };
            let s: K = -sign::<K>((ad - 1) * f);
            Self::push(&mut out, &w2, p.mul_paths(&q.arrow_path(a), v)?, &s);
        }

        let before: Vec<usize> = match w.arrows.first() {
            Some(&f0) => self.data.predecessors(f0).to_vec(),
            None => q.incoming(w.src).collect(),
        };
        for b in before {
            let mut arrows = vec![b];
            arrows.extend_from_slice(&w.arrows);
            let w2 = Path { src: q.arrow_info(b).src, tgt: w.tgt, arrows };
            let s: K = sign(q.degree(w) - i - f);
            Self::push(&mut out, &w2, p.mul_paths(v, &q.arrow_path(b))?, &s);
        }

        Self::push(&mut out, w, p.d_path(v)?, &K::one());

        if let [x] = w.arrows[..] {
            for (y, path, c, j) in self.d_occurrences.get(&x).into_iter().flatten() {
                let right = path.slice(q, 0..*j);
                let left = path.slice(q, j + 1..path.len());
                let s: K = sign::<K>(f + (f - 1) * q.degree(&left)) * c.clone();
                let vr = p.mul_paths(v, &right)?;
                let val = p.compose(&Element::from_path(left), &vr)?;
                Self::push(&mut out, &q.arrow_path(*y), val, &s);
            }
        }
        Ok(out)
    }

    /// `δ(f)` computed exactly.
    pub fn delta(&self, f: &Cochain<K>) -> Result<Cochain<K>, AlgebraError> {
        let mut out = Cochain::zero();
        for (w, v, c) in f.terms() {
            for ((w2, v2), x) in self.delta_basis(w, v)? {
                out.add_term(w2, v2, x * c.clone());
            }
        }
        Ok(out)
    }

    fn block_key(&self, w: &Path, v: &Path) -> i64 {
        if self.weight_graded {
            v.len() as i64 - w.len() as i64
        } else {
            0
        }
    }

    /// Basis of total degree `t` under `tr`, grouped into δ-stable blocks; interior
    /// overlaps come first inside each block.
    pub fn slice_basis(&self, t: i64, tr: Truncation, levels: &[Vec<Path>], values: &ValueIndex) -> BTreeMap<i64, Vec<Key>> {
        let q = self.p.quiver();
        let mut blocks: BTreeMap<i64, Vec<(bool, Key)>> = BTreeMap::new();
        for ws in levels.iter().take(tr.overlap_len + 1) {
            for w in ws {
                let need = t + q.degree(w) - w.len() as i64;
                for v in values.get(w.src, w.tgt, need) {
                    if v.len() > tr.value_len {
                        break;
                    }
                    let good = !self.data.is_interior(self.p, w);
                    blocks.entry(self.block_key(w, v)).or_default().push((good, (w.clone(), v.clone())));
                }
            }
        }
        blocks
            .into_iter()
            .map(|(k, mut v)| {
                v.sort();
                (k, v.into_iter().map(|x| x.1).collect())
            })
            .collect()
    }
}

/// Irreducible paths grouped by endpoints and degree, sorted by length.
pub struct ValueIndex {
    by: HashMap<(usize, usize, i64), Vec<Path>>,
}

impl ValueIndex {
    pub fn new<K: Field>(p: &Presentation<K>, max_len: usize) -> Self {
        let mut by: HashMap<(usize, usize, i64), Vec<Path>> = HashMap::new();
        for path in p.irreducible_paths(max_len) {
            by.entry((path.src, path.tgt, p.quiver().degree(&path))).or_default().push(path);
        }
        ValueIndex { by }
    }

    pub fn get(&self, src: usize, tgt: usize, deg: i64) -> &[Path] {
        self.by.get(&(src, tgt, deg)).map(Vec::as_slice).unwrap_or(&[])
    }
}

fn compute_level<K: Field>(
    cx: &ReducedComplex<'_, K>,
    n: i64,
    tr: Truncation,
    want: bool,
) -> Result<(LevelReport, Vec<Cochain<K>>), AlgebraError> {
    let levels = cx.data.levels(cx.p, tr.overlap_len + 1);
    let values = ValueIndex::new(cx.p, tr.value_len);
    let prev = cx.slice_basis(n - 1, tr, &levels, &values);
    let cur = cx.slice_basis(n, tr, &levels, &values);
    // Errors inside the parallel closure are surfaced after the fact.
    let failure = std::sync::Mutex::new(None);
    let delta = |b: &Key| match cx.delta_basis(&b.0, &b.1) {
        Ok(v) => v,
        Err(e) => {
            *failure.lock().unwrap() = Some(e);
            Vec::new()
        }
    };
    let empty = Vec::new();
    let results: Vec<_> = cur
        .par_iter()
        .map(|(k, basis)| {
            let lv = level(prev.get(k).unwrap_or(&empty), basis, &delta, want);
            let reps = if want {
                normal_representatives(&lv)
                    .into_iter()
                    .map(|r| r.into_iter().map(|(i, c)| (basis[i].clone(), c)).collect::<Cochain<K>>())
                    .collect()
            } else {
                Vec::new()
            };
            (basis.len(), lv.kernel_dim, lv.image_dim, reps)
        })
        .collect();
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    let mut rep = LevelReport { bounds: tr, domain_dim: 0, kernel_dim: 0, image_dim: 0, dimension: 0 };
    let mut cocycles = Vec::new();
    for (d, k, im, reps) in results {
        rep.domain_dim += d;
        rep.kernel_dim += k;
        rep.image_dim += im;
        cocycles.extend(reps);
    }
    rep.dimension = rep.kernel_dim - rep.image_dim;
    Ok((rep, cocycles))
}

/// `HH^n` through the overlap complex at truncations `tr` and `tr.next()`.
pub fn hh_dimension<K: Field>(p: &Presentation<K>, n: i64, tr: Truncation) -> Result<HHReport<K>, AlgebraError> {
    let cx = ReducedComplex::new(p)?;
    let (first, _) = compute_level(&cx, n, tr, false)?;
    let (second, cocycles) = compute_level(&cx, n, tr.next(), true)?;
    let stable = first.dimension == second.dimension;
    Ok(HHReport {
        n,
        dimension: stable.then_some(second.dimension),
        stable,
        levels: vec![first, second],
        representatives: cocycles.iter().map(|c| c.to_json(p.quiver())).collect(),
        cocycles,
    })
}

/// `δ(f)` on the overlap complex.
pub fn overlap_delta<K: Field>(p: &Presentation<K>, f: &Cochain<K>) -> Result<Cochain<K>, AlgebraError> {
    ReducedComplex::new(p)?.delta(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use quiver_core::fixtures::{dual_numbers, local_model, pillowcase_precursor, point, polynomial};
    use quiver_core::Q;

    fn dim(p: &Presentation<Q>, n: i64) -> Option<usize> {
        hh_dimension(p, n, Truncation::default()).unwrap().dimension
    }

    #[test]
    fn small_algebras() {
        assert_eq!(dim(&point(), 2), Some(0));
        assert_eq!(dim(&point(), 0), Some(1));
        assert_eq!(dim(&polynomial(1), 2), Some(1));
        assert_eq!(dim(&dual_numbers(0), 2), Some(1));
        assert_eq!(dim(&dual_numbers(-1), 2), Some(1));
    }

    #[test]
    fn precursor_hh2() {
        let mut a = pillowcase_precursor::<Q>();
        a.validate();
        assert_eq!(dim(&a, 2), Some(4));
    }

    #[test]
    fn arrow_identity_is_a_cocycle() {
        // Every term of δ(x ↦ x) lands on p2 p1, which vanishes in A.
        let mut a = local_model::<Q>();
        a.validate();
        let x = a.path(&["p1"]);
        let f = Cochain::basis(x.clone(), x);
        assert!(overlap_delta(&a, &f).unwrap().is_zero());
    }

    #[test]
    fn relation_obstruction() {
        let mut a = dual_numbers::<Q>(0);
        a.validate();
        let p = a.path(&["p"]);
        let f = Cochain::basis(p.clone(), Path::vertex(0));
        let df = overlap_delta(&a, &f).unwrap();
        let expect: Cochain<Q> = [((a.path(&["p", "p"]), p), Q::from_i64(2))].into_iter().collect();
        assert_eq!(df, expect);
    }

    #[test]
    fn delta_squares_to_zero_on_basis() {
        let mut a = pillowcase_precursor::<Q>();
        a.validate();
        let cx = ReducedComplex::new(&a).unwrap();
        let tr = Truncation::new(3, 6);
        let levels = cx.overlaps().levels(&a, 4);
        let values = ValueIndex::new(&a, 6);
        for t in 0..3 {
            for (_, basis) in cx.slice_basis(t, tr, &levels, &values) {
                for (w, v) in basis {
                    let f = Cochain::basis(w, v);
                    assert!(cx.delta(&cx.delta(&f).unwrap()).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn non_monomial_is_refused() {
        let mut a = quiver_core::fixtures::skew_gentle::<Q>();
        a.validate();
        assert!(hh_dimension(&a, 2, Truncation::default()).is_err());
    }
}
