//! Sparse exact linear algebra with fraction-free elimination.
//!
//! Rows are sorted `(column, value)` lists without zero entries. Pivoting is
//! by smallest column index, so results depend only on the input order.

use std::collections::HashMap;

use crate::scalar::Field;

pub type SparseVec<K> = Vec<(usize, K)>;

/// `a*x + b*y`.
pub fn combine<K: Field>(a: &K, x: &[(usize, K)], b: &K, y: &[(usize, K)]) -> SparseVec<K> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            let v = a.clone() * x[i].1.clone();
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
        } else if take_y {
            let v = b.clone() * y[j].1.clone();
            if !v.is_zero() {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = a.clone() * x[i].1.clone() + b.clone() * y[j].1.clone();
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Builds a sorted sparse vector, summing duplicate columns.
pub fn from_entries<K: Field>(mut entries: Vec<(usize, K)>) -> SparseVec<K> {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec<K> = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = last.1.clone() + v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

pub fn scale<K: Field>(v: &mut SparseVec<K>, s: &K) {
    for e in v.iter_mut() {
        e.1 = e.1.clone() * s.clone();
    }
}

fn normalize<K: Field>(v: &mut SparseVec<K>, tag: Option<&mut SparseVec<K>>) {
    let s = match &tag {
        Some(t) => K::content_scale(v.iter().chain(t.iter()).map(|e| &e.1)),
        None => K::content_scale(v.iter().map(|e| &e.1)),
    };
    if !s.is_one() {
        scale(v, &s);
        if let Some(t) = tag {
            scale(t, &s);
        }
    }
}

/// Row echelon form built incrementally.
#[derive(Clone, Debug)]
pub struct Echelon<K> {
    rows: Vec<SparseVec<K>>,
    tags: Vec<SparseVec<K>>,
    pivot_row: HashMap<usize, usize>,
    track: bool,
}

impl<K: Field> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Field> Echelon<K> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), tags: Vec::new(), pivot_row: HashMap::new(), track: false }
    }

    /// Records, for every stored row, the combination of inserted vectors producing it.
    pub fn with_tracking() -> Self {
        Echelon { track: true, ..Self::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<K>] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    fn eliminate(&self, v: &mut SparseVec<K>, mut tag: Option<&mut SparseVec<K>>, full: bool) {
        let mut cursor = 0usize;
        loop {
            let hit = v
                .iter()
                .skip_while(|e| e.0 < cursor)
                .find(|e| self.pivot_row.contains_key(&e.0))
                .map(|e| (e.0, e.1.clone()));
            let Some((col, c)) = hit else { break };
            if !full && v[0].0 != col {
                break;
            }
            let r = self.pivot_row[&col];
            let a = self.rows[r][0].1.clone();
            *v = combine(&a, v, &(-c.clone()), &self.rows[r]);
            if let Some(t) = tag.as_deref_mut() {
                *t = combine(&a, t, &(-c), &self.tags[r]);
            }
            normalize(v, tag.as_deref_mut());
            cursor = col + 1;
            if v.is_empty() {
                break;
            }
        }
    }

    /// Remainder of `v` after full reduction by the stored rows (zero iff `v` is in the span).
    pub fn reduce(&self, v: &[(usize, K)]) -> SparseVec<K> {
        let mut v = v.to_vec();
        self.eliminate(&mut v, None, true);
        v
    }

    pub fn contains(&self, v: &[(usize, K)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns `true` if it was independent of the stored rows.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        self.insert_tagged(v, Vec::new()).is_none()
    }

    /// Inserts `v` carrying combination `tag`; on dependence returns the reduced tag,
    /// which is then a relation among inserted vectors.
    pub fn insert_tagged(&mut self, v: SparseVec<K>, tag: SparseVec<K>) -> Option<SparseVec<K>> {
        let mut v = v;
        let mut tag = tag;
        if self.track {
            self.eliminate(&mut v, Some(&mut tag), false);
        } else {
            self.eliminate(&mut v, None, false);
        }
        if v.is_empty() {
            return Some(tag);
        }
        self.pivot_row.insert(v[0].0, self.rows.len());
        self.rows.push(v);
        self.tags.push(tag);
        None
    }

    /// Reduced row echelon rows with primitive scaling and positive leading entries.
    pub fn rref_rows(&self) -> Vec<SparseVec<K>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i][0].0);
        let mut out = Vec::new();
        for i in order {
            let mut v = self.rows[i].clone();
            let lead = v[0].0;
            let mut cursor = lead + 1;
            loop {
                let hit = v
                    .iter()
                    .skip_while(|e| e.0 < cursor)
                    .find(|e| self.pivot_row.contains_key(&e.0))
                    .map(|e| (e.0, e.1.clone()));
                let Some((col, c)) = hit else { break };
                let r = self.pivot_row[&col];
                let a = self.rows[r][0].1.clone();
                v = combine(&a, &v, &(-c), &self.rows[r]);
                normalize(&mut v, None);
                cursor = col + 1;
            }
            let l = v[0].1.clone();
            let s = K::one() / l;
            scale(&mut v, &s);
            out.push(v);
        }
        out
    }
}

pub fn rank<K: Field>(rows: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Kernel of the map sending basis vector `i` to `images[i]`, as vectors in domain coordinates.
pub fn kernel<K: Field>(images: &[SparseVec<K>]) -> Vec<SparseVec<K>> {
    let mut e = Echelon::with_tracking();
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        if let Some(t) = e.insert_tagged(img.clone(), vec![(i, K::one())]) {
            out.push(t);
        }
    }
    out
}

/// Solves `sum_i x_i * rows[i] = target` if possible.
pub fn solve<K: Field>(rows: &[SparseVec<K>], target: &[(usize, K)]) -> Option<SparseVec<K>> {
    let mut e = Echelon::with_tracking();
    for (i, r) in rows.iter().enumerate() {
        e.insert_tagged(r.clone(), vec![(i, K::one())]);
    }
    let mut v = target.to_vec();
    let mut tag: SparseVec<K> = Vec::new();
    // v - sum(tag_r * row) stays invariant up to the scale tracked in `lead`.
    let mut lead = K::one();
    let mut cursor = 0;
    loop {
        let hit = v
            .iter()
            .skip_while(|x| x.0 < cursor)
            .find(|x| e.pivot_row.contains_key(&x.0))
            .map(|x| (x.0, x.1.clone()));
        let Some((col, c)) = hit else { break };
        let r = e.pivot_row[&col];
        let a = e.rows[r][0].1.clone();
        v = combine(&a, &v, &(-c.clone()), &e.rows[r]);
        tag = combine(&a, &tag, &c, &e.tags[r]);
        lead = lead * a;
        cursor = col + 1;
    }
    if !v.is_empty() {
        return None;
    }
    let inv = K::one() / lead;
    scale(&mut tag, &inv);
    Some(tag)
}
