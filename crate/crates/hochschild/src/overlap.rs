//! Overlaps `w = w1 w2 ... wn` with every consecutive pair a relation.

use quiver_core::{Field, Path, Presentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub path: Path,
    pub is_maximal: bool,
    /// All arrows lie on one cycle whose consecutive pairs are all relations.
    pub on_full_cycle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapSet {
    pub n: usize,
    pub elements: Vec<Overlap>,
}

/// Structure of the relation graph of a monomial quadratic presentation.
#[derive(Clone, Debug)]
pub struct OverlapData {
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    full_cycle: Vec<Option<usize>>,
    /// Full-relation cycles as arrow lists in traversal order; they generate `W_n` for all `n`.
    pub full_cycles: Vec<Vec<usize>>,
}

impl OverlapData {
    pub fn new<K: Field>(p: &Presentation<K>) -> Self {
        let na = p.quiver().num_arrows();
        let mut succ = vec![Vec::new(); na];
        let mut pred = vec![Vec::new(); na];
        for &(f, t) in p.relations() {
            succ[f].push(t);
            pred[t].push(f);
        }
        for v in succ.iter_mut().chain(pred.iter_mut()) {
            v.sort_unstable();
        }
        let mut full_cycle = vec![None; na];
        let mut full_cycles = Vec::new();
        for a in 0..na {
            if full_cycle[a].is_some() {
                continue;
            }
            // Follow unique relation successors back to the start.
            let mut cyc = vec![a];
            let mut cur = a;
            let closed = loop {
                if succ[cur].len() != 1 {
                    break false;
                }
                cur = succ[cur][0];
                if cur == a {
                    break true;
                }
                if cyc.contains(&cur) || cyc.len() > na {
                    break false;
                }
                cyc.push(cur);
            };
            if closed && cyc.iter().all(|&x| pred[x].len() == 1) {
                let id = full_cycles.len();
                for &x in &cyc {
                    full_cycle[x] = Some(id);
                }
                full_cycles.push(cyc);
            }
        }
        OverlapData { succ, pred, full_cycle, full_cycles }
    }

    pub fn successors(&self, a: usize) -> &[usize] {
        &self.succ[a]
    }

    pub fn predecessors(&self, a: usize) -> &[usize] {
        &self.pred[a]
    }

    pub fn is_maximal<K: Field>(&self, p: &Presentation<K>, w: &Path) -> bool {
        match (w.arrows.first(), w.arrows.last()) {
            (Some(&f), Some(&l)) => self.pred[f].is_empty() && self.succ[l].is_empty(),
            _ => p.quiver().outgoing(w.src).next().is_none() && p.quiver().incoming(w.src).next().is_none(),
        }
    }

    pub fn on_full_cycle(&self, w: &Path) -> bool {
        let Some(&f) = w.arrows.first() else { return false };
        let Some(c) = self.full_cycle[f] else { return false };
        w.arrows.iter().all(|&x| self.full_cycle[x] == Some(c))
    }

    /// A proper sub-overlap of a longer overlap, not lying on a full-relation cycle.
    pub fn is_interior<K: Field>(&self, p: &Presentation<K>, w: &Path) -> bool {
        !w.is_empty() && !self.is_maximal(p, w) && !self.on_full_cycle(w)
    }

    /// `W_0, ..., W_{n_max}` as paths.
    pub fn levels<K: Field>(&self, p: &Presentation<K>, n_max: usize) -> Vec<Vec<Path>> {
        let q = p.quiver();
        let mut out: Vec<Vec<Path>> = vec![(0..q.num_vertices()).map(Path::vertex).collect()];
        if n_max >= 1 {
            out.push((0..q.num_arrows()).map(|a| q.arrow_path(a)).collect());
        }
        for n in 2..=n_max {
            let mut next = Vec::new();
            for w in &out[n - 1] {
                let last = *w.arrows.last().unwrap();
                for &a in &self.succ[last] {
                    let mut arrows = w.arrows.clone();
                    arrows.push(a);
                    next.push(Path { src: w.src, tgt: q.arrow_info(a).tgt, arrows });
                }
            }
            next.sort();
            out.push(next);
        }
        out
    }
}

pub fn enumerate_overlaps<K: Field>(p: &Presentation<K>, n_max: usize) -> (Vec<OverlapSet>, OverlapData) {
    let data = OverlapData::new(p);
    let sets = data
        .levels(p, n_max)
        .into_iter()
        .enumerate()
        .map(|(n, ws)| OverlapSet {
            n,
            elements: ws
                .into_iter()
                .map(|w| Overlap { is_maximal: data.is_maximal(p, &w), on_full_cycle: data.on_full_cycle(&w), path: w })
                .collect(),
        })
        .collect();
    (sets, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use quiver_core::fixtures::{dual_numbers, local_model, polynomial};
    use quiver_core::Q;

    #[test]
    fn dual_numbers_have_all_powers() {
        let a = dual_numbers::<Q>(0);
        let (sets, data) = enumerate_overlaps(&a, 5);
        for n in 1..=5 {
            assert_eq!(sets[n].elements.len(), 1);
            assert_eq!(sets[n].elements[0].path.len(), n);
            assert!(sets[n].elements[0].on_full_cycle);
            assert!(!sets[n].elements[0].is_maximal);
        }
        assert_eq!(data.full_cycles.len(), 1);
    }

    #[test]
    fn no_relations_no_long_overlaps() {
        let a = polynomial::<Q>(1);
        let (sets, _) = enumerate_overlaps(&a, 4);
        assert_eq!(sets[1].elements.len(), 1);
        assert!(sets[1].elements[0].is_maximal);
        assert!(sets[2..].iter().all(|s| s.elements.is_empty()));
    }

    #[test]
    fn w2_is_relation_set() {
        let a = local_model::<Q>();
        let (sets, _) = enumerate_overlaps(&a, 3);
        assert_eq!(sets[0].elements.len(), 5);
        assert_eq!(sets[1].elements.len(), 4);
        assert_eq!(sets[2].elements.len(), 2);
        assert!(sets[2].elements.iter().all(|o| o.is_maximal));
        assert!(sets[3].elements.is_empty());
    }
}
