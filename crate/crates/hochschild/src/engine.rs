//! One degree of a cochain complex, computed from explicit basis keys.

use std::collections::HashMap;
use std::hash::Hash;

use quiver_core::linalg::{kernel, Echelon, SparseVec};
use quiver_core::Field;
use rayon::prelude::*;

pub(crate) struct Level<K> {
    pub kernel_dim: usize,
    pub image_dim: usize,
    /// Kernel of `delta` on `cur`, in `cur` coordinates.
    pub kernel: Vec<SparseVec<K>>,
    /// Echelon rows spanning `delta(prev) ∩ span(cur)`, in `cur` coordinates.
    pub image_rows: Vec<SparseVec<K>>,
}

const INSIDE: usize = usize::MAX / 2;

fn images<K, B, F>(dom: &[B], delta: &F) -> Vec<Vec<(B, K)>>
where
    K: Field,
    B: Send + Sync,
    F: Fn(&B) -> Vec<(B, K)> + Sync,
{
    dom.par_iter().map(delta).collect()
}

/// `H = ker(delta|cur) / (delta(prev) ∩ cur)`, where `delta` is exact and `cur` may be a
/// truncation of the true cochain space.
pub(crate) fn level<K, B, F>(prev: &[B], cur: &[B], delta: &F, want_vectors: bool) -> Level<K>
where
    K: Field,
    B: Hash + Eq + Clone + Send + Sync,
    F: Fn(&B) -> Vec<(B, K)> + Sync,
{
    let mut cols: HashMap<B, usize> = HashMap::new();
    let rows: Vec<SparseVec<K>> = images(cur, delta)
        .into_iter()
        .map(|img| {
            let entries = img
                .into_iter()
                .map(|(b, c)| {
                    let n = cols.len();
                    (*cols.entry(b).or_insert(n), c)
                })
                .collect();
            quiver_core::linalg::from_entries(entries)
        })
        .collect();
    let (kernel_dim, kernel_vecs) = if want_vectors {
        let k = kernel(&rows);
        (k.len(), k)
    } else {
        (cur.len() - quiver_core::linalg::rank(rows), Vec::new())
    };

    let index: HashMap<&B, usize> = cur.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut outside: HashMap<B, usize> = HashMap::new();
    let mut ech = Echelon::new();
    for img in images(prev, delta) {
        let entries = img
            .into_iter()
            .map(|(b, c)| match index.get(&b) {
                Some(&i) => (INSIDE + i, c),
                None => {
                    let n = outside.len();
                    (*outside.entry(b).or_insert(n), c)
                }
            })
            .collect();
        ech.insert(quiver_core::linalg::from_entries(entries));
    }
    let image_rows: Vec<SparseVec<K>> = ech
        .rows()
        .iter()
        .filter(|r| r[0].0 >= INSIDE)
        .map(|r| r.iter().map(|(c, x)| (c - INSIDE, x.clone())).collect())
        .collect();
    Level { kernel_dim, image_dim: image_rows.len(), kernel: kernel_vecs, image_rows }
}

/// Cohomology classes as vectors with zero entries on the image pivots, in reduced
/// row echelon form; low coordinates are eliminated first.
pub(crate) fn normal_representatives<K: Field>(lv: &Level<K>) -> Vec<SparseVec<K>> {
    let mut im = Echelon::new();
    for r in &lv.image_rows {
        im.insert(r.clone());
    }
    let mut cls = Echelon::new();
    for k in &lv.kernel {
        let r = im.reduce(k);
        if !r.is_empty() {
            cls.insert(r);
        }
    }
    cls.rref_rows()
}
