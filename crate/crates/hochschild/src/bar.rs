//! Normalized bar complex relative to the vertex idempotents, truncated by arity.

use std::collections::{BTreeMap, HashMap};

use quiver_core::linalg::{from_entries, Echelon};
use quiver_core::{sign, AlgebraError, Element, Field, Path, Presentation};
use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{CochainJson, CochainTerm};
use crate::engine::{level, normal_representatives};
use crate::reduced::{HHReport, LevelReport, Truncation, ValueIndex};

/// Tensor factors `a_1 ⊗ ... ⊗ a_m` (with `a_j a_{j+1}` composable) and a value.
pub type BarKey = (Vec<Path>, Path);
type Key = BarKey;

/// A bar cochain as a finite sum of basis cochains.
pub type BarCochain<K> = BTreeMap<BarKey, K>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BarTruncation {
    pub arity: usize,
    /// Basis paths longer than this are dropped (only matters for infinite algebras).
    pub path_len: usize,
    pub max_basis: usize,
}

impl BarTruncation {
    pub fn new(arity: usize, path_len: usize) -> Self {
        BarTruncation { arity, path_len, max_basis: 400_000 }
    }

    pub fn next(self) -> Self {
        BarTruncation { arity: self.arity + 2, path_len: self.path_len + 2, ..self }
    }
}

impl Default for BarTruncation {
    fn default() -> Self {
        BarTruncation::new(6, 12)
    }
}

struct BarComplex<'a, K> {
    p: &'a Presentation<K>,
    degs: HashMap<Path, i64>,
    by_src: HashMap<usize, Vec<Path>>,
    by_tgt: HashMap<usize, Vec<Path>>,
    d_inverse: HashMap<Path, Vec<(Path, K)>>,
    factors: HashMap<Path, Vec<(Path, Path, K)>>,
    weight_graded: bool,
}

impl<'a, K: Field> BarComplex<'a, K> {
    fn new(p: &'a Presentation<K>, path_len: usize) -> Result<Self, AlgebraError> {
        let q = p.quiver();
        let nonunit: Vec<Path> = p.irreducible_paths(path_len).into_iter().filter(|x| !x.is_idempotent()).collect();
        let mut by_src: HashMap<usize, Vec<Path>> = HashMap::new();
        let mut by_tgt: HashMap<usize, Vec<Path>> = HashMap::new();
        let mut degs = HashMap::new();
        for x in &nonunit {
            by_src.entry(x.src).or_default().push(x.clone());
            by_tgt.entry(x.tgt).or_default().push(x.clone());
            degs.insert(x.clone(), q.degree(x));
        }
        let mut d_inverse: HashMap<Path, Vec<(Path, K)>> = HashMap::new();
        let mut weight_graded = p.is_monomial();
        for a in &nonunit {
            for (b, c) in p.d_path(a)?.terms() {
                weight_graded &= b.len() == a.len();
                if !b.is_idempotent() {
                    d_inverse.entry(b.clone()).or_default().push((a.clone(), c.clone()));
                }
            }
        }
        let mut factors: HashMap<Path, Vec<(Path, Path, K)>> = HashMap::new();
        for x in &nonunit {
            for y in by_tgt.get(&x.src).into_iter().flatten() {
                for (c, k) in p.mul_paths(x, y)?.terms() {
                    if !c.is_idempotent() {
                        factors.entry(c.clone()).or_default().push((x.clone(), y.clone(), k.clone()));
                    }
                }
            }
        }
        Ok(BarComplex { p, degs, by_src, by_tgt, d_inverse, factors, weight_graded })
    }

    fn sdeg(&self, a: &Path) -> i64 {
        self.degs[a] - 1
    }

    fn total_degree(&self, s: &[Path], v: &Path) -> i64 {
        self.p.quiver().degree(v) - s.iter().map(|a| self.sdeg(a)).sum::<i64>()
    }

    fn push(out: &mut Vec<(Key, K)>, t: Vec<Path>, e: Element<K>, c: &K) {
        for (v, x) in e.terms() {
            out.push(((t.clone(), v.clone()), x.clone() * c.clone()));
        }
    }

    fn delta_basis(&self, s: &[Path], v: &Path) -> Result<Vec<(Key, K)>, AlgebraError> {
        let p = self.p;
        let m = s.len();
        let f = self.total_degree(s, v);
        let mut out = Vec::new();

        Self::push(&mut out, s.to_vec(), p.d_path(v)?, &K::one());

        let mut before = 0i64;
        for i in 0..m {
            for (a, c) in self.d_inverse.get(&s[i]).into_iter().flatten() {
                let mut t = s.to_vec();
                t[i] = a.clone();
                out.push(((t, v.clone()), sign::<K>(f + before) * c.clone()));
            }
            for (x, y, k) in self.factors.get(&s[i]).into_iter().flatten() {
                let mut t = s[..i].to_vec();
                t.push(x.clone());
                t.push(y.clone());
                t.extend_from_slice(&s[i + 1..]);
                out.push(((t, v.clone()), -(sign::<K>(f + before + self.sdeg(x)) * k.clone())));
            }
            before += self.sdeg(&s[i]);
        }

        let left_at = s.first().map_or(v.src, |a| a.tgt);
        for b in self.by_src.get(&left_at).into_iter().flatten() {
            let mut t = vec![b.clone()];
            t.extend_from_slice(s);
            let c = -sign::<K>((self.degs[b] + 1) * f);
            Self::push(&mut out, t, p.mul_paths(b, v)?, &c);
        }
        let right_at = s.last().map_or(v.src, |a| a.src);
        for b in self.by_tgt.get(&right_at).into_iter().flatten() {
            let mut t = s.to_vec();
            t.push(b.clone());
            let c = sign::<K>(f + before);
            Self::push(&mut out, t, p.mul_paths(v, b)?, &c);
        }
        Ok(out)
    }

    fn extend(&self, tuple: &mut Vec<Path>, arity: usize, sink: &mut dyn FnMut(&[Path])) {
        sink(tuple);
        if tuple.len() == arity {
            return;
        }
        let at = tuple.last().map(|a| a.src);
        let next: Vec<Path> = match at {
            Some(v) => self.by_tgt.get(&v).cloned().unwrap_or_default(),
            None => {
                let mut all: Vec<Path> = self.degs.keys().cloned().collect();
                all.sort();
                all
            }
        };
        for b in next {
            tuple.push(b);
            self.extend(tuple, arity, sink);
            tuple.pop();
        }
    }

    fn slice_basis(&self, t: i64, tr: BarTruncation, values: &ValueIndex) -> Result<BTreeMap<i64, Vec<Key>>, AlgebraError> {
        let q = self.p.quiver();
        let mut blocks: BTreeMap<i64, Vec<Key>> = BTreeMap::new();
        let mut count = 0usize;
        for x in 0..q.num_vertices() {
            for v in values.get(x, x, t) {
                blocks.entry(self.weight(&[], v)).or_default().push((Vec::new(), v.clone()));
                count += 1;
            }
        }
        let mut tuple = Vec::new();
        self.extend(&mut tuple, tr.arity, &mut |s: &[Path]| {
            if s.is_empty() || count > tr.max_basis {
                return;
            }
            let need = t + s.iter().map(|a| self.sdeg(a)).sum::<i64>();
            let (src, tgt) = (s[s.len() - 1].src, s[0].tgt);
            for v in values.get(src, tgt, need) {
                blocks.entry(self.weight(s, v)).or_default().push((s.to_vec(), v.clone()));
                count += 1;
            }
        });
        if count > tr.max_basis {
            return Err(AlgebraError::Resource(format!(
                "bar complex slice in degree {t} exceeds {} basis cochains at arity {}",
                tr.max_basis, tr.arity
            )));
        }
        Ok(blocks)
    }

    fn weight(&self, s: &[Path], v: &Path) -> i64 {
        if self.weight_graded {
            v.len() as i64 - s.iter().map(|a| a.len() as i64).sum::<i64>()
        } else {
            0
        }
    }
}

fn render_key<K: Field>(p: &Presentation<K>, key: &Key, c: &K) -> CochainTerm {
    let q = p.quiver();
    let overlap = if key.0.is_empty() {
        q.render(&Path::vertex(key.1.src))
    } else {
        key.0.iter().map(|a| q.render(a)).collect::<Vec<_>>().join("|")
    };
    CochainTerm { overlap, value: q.render(&key.1), coeff: c.to_exact_string() }
}

fn compute_level<K: Field>(
    bx: &BarComplex<'_, K>,
    n: i64,
    tr: BarTruncation,
    want: bool,
) -> Result<(LevelReport, Vec<CochainJson>), AlgebraError> {
    let values = ValueIndex::new(bx.p, tr.path_len);
    let prev = bx.slice_basis(n - 1, tr, &values)?;
    let cur = bx.slice_basis(n, tr, &values)?;
    let failure = std::sync::Mutex::new(None);
    let delta = |b: &Key| match bx.delta_basis(&b.0, &b.1) {
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
            let reps: Vec<CochainJson> = if want {
                normal_representatives(&lv)
                    .into_iter()
                    .map(|r| CochainJson { support: r.iter().map(|(i, c)| render_key(bx.p, &basis[*i], c)).collect() })
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
    let bounds = Truncation::new(tr.arity, tr.path_len);
    let mut rep = LevelReport { bounds, domain_dim: 0, kernel_dim: 0, image_dim: 0, dimension: 0 };
    let mut all = Vec::new();
    for (d, k, im, reps) in results {
        rep.domain_dim += d;
        rep.kernel_dim += k;
        rep.image_dim += im;
        all.extend(reps);
    }
    rep.dimension = rep.kernel_dim - rep.image_dim;
    Ok((rep, all))
}

/// `HH^n` from the normalized bar complex at arity caps `tr.arity` and `tr.arity + 2`.
/// Level bounds are reported as `(arity, path length)`.
pub fn bar_oracle_hh<K: Field>(p: &Presentation<K>, n: i64, tr: BarTruncation) -> Result<HHReport<K>, AlgebraError> {
    if !p.is_validated() {
        return Err(AlgebraError::Contract("presentation has not been validated".into()));
    }
    let hi = tr.next();
    let bx = BarComplex::new(p, hi.path_len)?;
    let (first, _) = compute_level(&bx, n, tr, false)?;
    let (second, reps) = compute_level(&bx, n, hi, true)?;
    let stable = first.dimension == second.dimension;
    Ok(HHReport {
        n,
        dimension: stable.then_some(second.dimension),
        stable,
        levels: vec![first, second],
        representatives: reps,
        cocycles: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarClassReport {
    pub cocycle: Vec<bool>,
    pub coboundary: Vec<bool>,
    /// Rank of the span of the classes.
    pub rank: usize,
    /// Coboundary and rank answers agree at arity caps `tr.arity` and `tr.arity + 2`.
    pub stable: bool,
}

fn class_level<K: Field>(
    bx: &BarComplex<'_, K>,
    n: i64,
    tr: BarTruncation,
    cochains: &[BarCochain<K>],
) -> Result<(Vec<bool>, Vec<bool>, usize), AlgebraError> {
    let values = ValueIndex::new(bx.p, tr.path_len);
    let prev = bx.slice_basis(n - 1, tr, &values)?;
    let mut columns: HashMap<Key, usize> = HashMap::new();
    let mut column = |k: Key| {
        let next = columns.len();
        *columns.entry(k).or_insert(next)
    };
    let mut image = Echelon::new();
    for b in prev.values().flatten() {
        let v = from_entries(bx.delta_basis(&b.0, &b.1)?.into_iter().map(|(k, c)| (column(k), c)).collect());
        image.insert(v);
    }
    let mut cocycle = Vec::new();
    let mut coboundary = Vec::new();
    let mut span = image.clone();
    let mut rank = 0;
    for f in cochains {
        let mut d = Vec::new();
        for ((s, v), c) in f {
            for (k, x) in bx.delta_basis(s, v)? {
                d.push((column(k), x * c.clone()));
            }
        }
        cocycle.push(from_entries(d).is_empty());
        let v = from_entries(f.iter().map(|(k, c)| (column(k.clone()), c.clone())).collect());
        coboundary.push(image.contains(&v));
        if span.insert(v) {
            rank += 1;
        }
    }
    Ok((cocycle, coboundary, rank))
}

/// Cocycle and coboundary tests for degree-`n` bar cochains, and the rank of their classes.
/// A class counts as a coboundary when it is `δ` of a cochain of arity at most the cap.
pub fn bar_classes<K: Field>(
    p: &Presentation<K>,
    n: i64,
    cochains: &[BarCochain<K>],
    tr: BarTruncation,
) -> Result<BarClassReport, AlgebraError> {
    if !p.is_validated() {
        return Err(AlgebraError::Contract("presentation has not been validated".into()));
    }
    let hi = tr.next();
    let bx = BarComplex::new(p, hi.path_len)?;
    let first = class_level(&bx, n, tr, cochains)?;
    let second = class_level(&bx, n, hi, cochains)?;
    let stable = first == second;
    let (cocycle, coboundary, rank) = second;
    Ok(BarClassReport { cocycle, coboundary, rank, stable })
}
