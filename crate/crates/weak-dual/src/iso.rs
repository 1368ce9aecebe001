//! Isomorphisms of presentations by relabeling vertices and arrows.

use std::collections::BTreeMap;

use quiver_core::{Element, Field, Path, Presentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Isomorphism {
    pub fn map_path(&self, p: &Path) -> Path {
        Path {
            src: self.vertices[p.src],
            tgt: self.vertices[p.tgt],
            arrows: p.arrows.iter().map(|&a| self.arrows[a]).collect(),
        }
    }

    pub fn map_element<K: Field>(&self, e: &Element<K>) -> Element<K> {
        e.terms().map(|(p, c)| (self.map_path(p), c.clone())).collect()
    }
}

struct Search<'a, K> {
    a: &'a Presentation<K>,
    b: &'a Presentation<K>,
    order: Vec<usize>,
    vmap: Vec<Option<usize>>,
    vinv: Vec<Option<usize>>,
    amap: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl<K: Field> Search<'_, K> {
    fn bind(&mut self, v: usize, w: usize, bound: &mut Vec<usize>) -> bool {
        match (self.vmap[v], self.vinv[w]) {
            (Some(x), _) => x == w,
            (None, Some(_)) => false,
            (None, None) => {
                self.vmap[v] = Some(w);
                self.vinv[w] = Some(v);
                bound.push(v);
                true
            }
        }
    }

    fn unbind(&mut self, bound: &[usize]) {
        for &v in bound {
            if let Some(w) = self.vmap[v].take() {
                self.vinv[w] = None;
            }
        }
    }

    fn relations_agree(&self, x: usize, y: usize, depth: usize) -> bool {
        if self.a.is_zero_pair(x, x) != self.b.is_zero_pair(y, y) {
            return false;
        }
        self.order[..depth].iter().all(|&z| {
            let fz = self.amap[z].expect("assigned");
            self.a.is_zero_pair(x, z) == self.b.is_zero_pair(y, fz) && self.a.is_zero_pair(z, x) == self.b.is_zero_pair(fz, y)
        })
    }

    fn finish(&self) -> Option<Isomorphism> {
        let mut vertices: Vec<Option<usize>> = self.vmap.clone();
        let mut free_b = (0..self.b.quiver().num_vertices()).filter(|&w| self.vinv[w].is_none());
        for v in vertices.iter_mut().filter(|v| v.is_none()) {
            *v = Some(free_b.next()?);
        }
        let iso = Isomorphism {
            vertices: vertices.into_iter().map(|v| v.expect("filled")).collect(),
            arrows: self.amap.iter().map(|a| a.expect("assigned")).collect(),
        };
        for x in 0..self.a.quiver().num_arrows() {
            let da = self.a.differential().get(&x).map(|e| iso.map_element(e)).unwrap_or_default();
            let db = self.b.differential().get(&iso.arrows[x]).cloned().unwrap_or_default();
            if da != db {
                return None;
            }
        }
        let target: BTreeMap<&Path, &Element<K>> = self.b.rewrites().iter().map(|r| (&r.lhs, &r.rhs)).collect();
        for r in self.a.rewrites() {
            if target.get(&iso.map_path(&r.lhs)) != Some(&&iso.map_element(&r.rhs)) {
                return None;
            }
        }
        Some(iso)
    }

    fn run(&mut self, depth: usize) -> Option<Isomorphism> {
        if depth == self.order.len() {
            return self.finish();
        }
        let x = self.order[depth];
        let ax = self.a.quiver().arrow_info(x).clone();
        for y in 0..self.b.quiver().num_arrows() {
            let by = self.b.quiver().arrow_info(y);
            if self.used[y] || by.deg != ax.deg || (by.src == by.tgt) != (ax.src == ax.tgt) {
                continue;
            }
            let (bs, bt) = (by.src, by.tgt);
            let mut bound = Vec::new();
            if self.bind(ax.src, bs, &mut bound) && self.bind(ax.tgt, bt, &mut bound) && self.relations_agree(x, y, depth) {
                self.amap[x] = Some(y);
                self.used[y] = true;
                if let Some(iso) = self.run(depth + 1) {
                    return Some(iso);
                }
                self.amap[x] = None;
                self.used[y] = false;
            }
            self.unbind(&bound);
        }
        None
    }
}

/// Arrows ordered so each one touches a vertex already reached, when possible.
fn connected_order<K: Field>(p: &Presentation<K>) -> Vec<usize> {
    let q = p.quiver();
    let mut seen_v = vec![false; q.num_vertices()];
    let mut placed = vec![false; q.num_arrows()];
    let mut order = Vec::new();
    while order.len() < q.num_arrows() {
        let next = (0..q.num_arrows())
            .filter(|&a| !placed[a])
            .find(|&a| seen_v[q.arrow_info(a).src] || seen_v[q.arrow_info(a).tgt])
            .or_else(|| (0..q.num_arrows()).find(|&a| !placed[a]))
            .expect("unplaced arrow");
        placed[next] = true;
        seen_v[q.arrow_info(next).src] = true;
        seen_v[q.arrow_info(next).tgt] = true;
        order.push(next);
    }
    order
}

/// A bijection on vertices and arrows preserving endpoints, degrees, relations,
/// rewrite rules and the differential, if one exists.
pub fn find_isomorphism<K: Field>(a: &Presentation<K>, b: &Presentation<K>) -> Option<Isomorphism> {
    let (qa, qb) = (a.quiver(), b.quiver());
    if qa.num_vertices() != qb.num_vertices()
        || qa.num_arrows() != qb.num_arrows()
        || a.relations().len() != b.relations().len()
        || a.rewrites().len() != b.rewrites().len()
        || a.differential().len() != b.differential().len()
    {
        return None;
    }
    let mut da: Vec<i64> = qa.arrows().iter().map(|x| x.deg).collect();
    let mut db: Vec<i64> = qb.arrows().iter().map(|x| x.deg).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    let mut s = Search {
        a,
        b,
        order: connected_order(a),
        vmap: vec![None; qa.num_vertices()],
        vinv: vec![None; qb.num_vertices()],
        amap: vec![None; qa.num_arrows()],
        used: vec![false; qb.num_arrows()],
    };
    s.run(0)
}
