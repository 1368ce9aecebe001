//! Algebra presentations: quiver, monomial relations, rewrite rules and a differential.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::element::Element;
use crate::error::AlgebraError;
use crate::quiver::{GradedQuiver, Path};
use crate::scalar::{sign, Field};

/// `lhs -> rhs`, applied to any occurrence of `lhs` as a subpath.
#[derive(Clone, Debug, PartialEq)]
pub struct Rewrite<K> {
    pub lhs: Path,
    pub rhs: Element<K>,
}

#[derive(Clone, Debug)]
pub struct Presentation<K> {
    quiver: GradedQuiver,
    /// `(first, then)` in traversal order: the composition `then * first` vanishes.
    relations: Vec<(usize, usize)>,
    rewrites: Vec<Rewrite<K>>,
    differential: BTreeMap<usize, Element<K>>,
    pub meta: BTreeMap<String, String>,
    /// Longest intermediate path allowed during reduction.
    pub length_bound: usize,
    zero_pairs: HashSet<(usize, usize)>,
    rewrite_index: HashMap<Vec<usize>, usize>,
    rewrite_lens: Vec<usize>,
    validated: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDimension {
    pub counts: BTreeMap<i64, usize>,
    /// Some irreducible path one step beyond the length bound still lands in the window.
    pub growing: bool,
    pub length_bound: usize,
}

const STEP_LIMIT: usize = 2_000_000;

impl<K: Field> Presentation<K> {
    pub fn new(quiver: GradedQuiver) -> Self {
        Presentation {
            quiver,
            relations: Vec::new(),
            rewrites: Vec::new(),
            differential: BTreeMap::new(),
            meta: BTreeMap::new(),
            length_bound: 64,
            zero_pairs: HashSet::new(),
            rewrite_index: HashMap::new(),
            rewrite_lens: Vec::new(),
            validated: false,
        }
    }

    pub fn quiver(&self) -> &GradedQuiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[(usize, usize)] {
        &self.relations
    }

    pub fn rewrites(&self) -> &[Rewrite<K>] {
        &self.rewrites
    }

    pub fn differential(&self) -> &BTreeMap<usize, Element<K>> {
        &self.differential
    }

    pub fn is_monomial(&self) -> bool {
        self.rewrites.is_empty()
    }

    pub fn has_differential(&self) -> bool {
        !self.differential.is_empty()
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Adds the monomial relation `then * first = 0`.
    pub fn add_relation(&mut self, first: usize, then: usize) {
        if self.zero_pairs.insert((first, then)) {
            self.relations.push((first, then));
        }
        self.validated = false;
    }

    /// Adds a relation given in composition order, e.g. `["b", "a"]` for `b a = 0`.
    pub fn add_relation_names(&mut self, names: [&str; 2]) -> Result<(), AlgebraError> {
        let then = self.quiver.arrow(names[0])?;
        let first = self.quiver.arrow(names[1])?;
        self.add_relation(first, then);
        Ok(())
    }

    pub fn add_rewrite(&mut self, lhs: Path, rhs: Element<K>) {
        self.rewrite_index.insert(lhs.arrows.clone(), self.rewrites.len());
        if !self.rewrite_lens.contains(&lhs.len()) {
            self.rewrite_lens.push(lhs.len());
            self.rewrite_lens.sort_unstable();
        }
        self.rewrites.push(Rewrite { lhs, rhs });
        self.validated = false;
    }

    pub fn set_differential(&mut self, arrow: usize, value: Element<K>) {
        if value.is_zero() {
            self.differential.remove(&arrow);
        } else {
            self.differential.insert(arrow, value);
        }
        self.validated = false;
    }

    pub fn is_zero_pair(&self, first: usize, then: usize) -> bool {
        self.zero_pairs.contains(&(first, then))
    }

    pub fn path(&self, names: &[&str]) -> Path {
        self.quiver.path_from_names(names).expect("path names")
    }

    pub fn elem(&self, names: &[&str]) -> Element<K> {
        Element::from_path(self.path(names))
    }

    pub fn idem(&self, v: &str) -> Element<K> {
        Element::from_path(Path::vertex(self.quiver.vertex(v).expect("vertex name")))
    }

    fn find_rewrite(&self, arrows: &[usize]) -> Option<(usize, usize)> {
        for i in 0..arrows.len() {
            for &l in &self.rewrite_lens {
                if i + l <= arrows.len() {
                    if let Some(&r) = self.rewrite_index.get(&arrows[i..i + l]) {
                        return Some((i, r));
                    }
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, p: &Path) -> bool {
        !p.arrows.windows(2).any(|w| self.zero_pairs.contains(&(w[0], w[1]))) && self.find_rewrite(&p.arrows).is_none()
    }

    /// Whether `a ∘ p` is irreducible, given that `p` is.
    pub fn extends_irreducibly(&self, p: &Path, a: usize) -> bool {
        let ar = self.quiver.arrow_info(a);
        if ar.src != p.tgt {
            return false;
        }
        if let Some(&last) = p.arrows.last() {
            if self.zero_pairs.contains(&(last, a)) {
                return false;
            }
        }
        let n = p.arrows.len() + 1;
        for &l in &self.rewrite_lens {
            if l <= n {
                let mut tail: Vec<usize> = p.arrows[n - l..].to_vec();
                tail.push(a);
                if self.rewrite_index.contains_key(&tail) {
                    return false;
                }
            }
        }
        true
    }

    /// Adds `c * p` reduced to normal form into `out`.
    pub fn reduce_path_into(&self, p: Path, c: K, out: &mut Element<K>) -> Result<(), AlgebraError> {
        let mut stack = vec![(p, c)];
        let mut steps = 0usize;
        while let Some((p, c)) = stack.pop() {
            steps += 1;
            if steps > STEP_LIMIT || p.len() > self.length_bound {
                return Err(AlgebraError::Divergence(format!(
                    "path {} exceeds length bound {}",
                    self.quiver.render(&p),
                    self.length_bound
                )));
            }
            if p.arrows.windows(2).any(|w| self.zero_pairs.contains(&(w[0], w[1]))) {
                continue;
            }
            match self.find_rewrite(&p.arrows) {
                None => out.add_term(p, c),
                Some((i, r)) => {
                    let rw = &self.rewrites[r];
                    let l = rw.lhs.len();
                    for (rp, rc) in rw.rhs.terms() {
                        let mut arrows = p.arrows[..i].to_vec();
                        arrows.extend_from_slice(&rp.arrows);
                        arrows.extend_from_slice(&p.arrows[i + l..]);
                        stack.push((Path { src: p.src, tgt: p.tgt, arrows }, c.clone() * rc.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn reduce(&self, e: &Element<K>) -> Result<Element<K>, AlgebraError> {
        let mut out = Element::zero();
        for (p, c) in e.terms() {
            self.reduce_path_into(p.clone(), c.clone(), &mut out)?;
        }
        Ok(out)
    }

    /// `c * (a ∘ b)` for irreducible paths, reduced, added into `out`.
    pub fn mul_paths_into(&self, a: &Path, b: &Path, c: K, out: &mut Element<K>) -> Result<(), AlgebraError> {
        let Some(ab) = a.after(b) else { return Ok(()) };
        if self.rewrites.is_empty() {
            if let (Some(&x), Some(&y)) = (b.arrows.last(), a.arrows.first()) {
                if self.zero_pairs.contains(&(x, y)) {
                    return Ok(());
                }
            }
            out.add_term(ab, c);
            Ok(())
        } else {
            self.reduce_path_into(ab, c, out)
        }
    }

    pub fn mul_paths(&self, a: &Path, b: &Path) -> Result<Element<K>, AlgebraError> {
        let mut out = Element::zero();
        self.mul_paths_into(a, b, K::one(), &mut out)?;
        Ok(out)
    }

    /// `a ∘ b`: bilinear concatenation (traverse `b` first) followed by reduction.
    pub fn compose(&self, a: &Element<K>, b: &Element<K>) -> Result<Element<K>, AlgebraError> {
        let mut out = Element::zero();
        for (pa, ca) in a.terms() {
            for (pb, cb) in b.terms() {
                self.mul_paths_into(pa, pb, ca.clone() * cb.clone(), &mut out)?;
            }
        }
        Ok(out)
    }

    /// Leibniz extension of the arrow table to any path, reduced.
    pub fn d_path(&self, p: &Path) -> Result<Element<K>, AlgebraError> {
        let mut out = Element::zero();
        let n = p.len();
        let degs: Vec<i64> = p.arrows.iter().map(|&a| self.quiver.arrow_info(a).deg).collect();
        let mut after: i64 = degs.iter().sum();
        for i in 0..n {
            after -= degs[i];
            let Some(dx) = self.differential.get(&p.arrows[i]) else { continue };
            let s: K = sign(after);
            for (rp, rc) in dx.terms() {
                let mut arrows = p.arrows[..i].to_vec();
                arrows.extend_from_slice(&rp.arrows);
                arrows.extend_from_slice(&p.arrows[i + 1..]);
                self.reduce_path_into(Path { src: p.src, tgt: p.tgt, arrows }, s.clone() * rc.clone(), &mut out)?;
            }
        }
        Ok(out)
    }

    fn d_unchecked(&self, e: &Element<K>) -> Result<Element<K>, AlgebraError> {
        let mut out = Element::zero();
        for (p, c) in e.terms() {
            out.add_scaled(&self.d_path(p)?, c);
        }
        Ok(out)
    }

    /// Applies the differential; the presentation must have been validated.
    pub fn apply_differential(&self, e: &Element<K>) -> Result<Element<K>, AlgebraError> {
        if !self.validated {
            return Err(AlgebraError::Contract("presentation has not been validated".into()));
        }
        self.d_unchecked(e)
    }

    /// Marks the presentation validated if every invariant holds.
    pub fn validate(&mut self) -> ValidationReport {
        let report = self.check();
        self.validated = report.ok();
        report
    }

    pub fn check(&self) -> ValidationReport {
        let mut errors = Vec::new();
        let q = &self.quiver;
        for &(f, t) in &self.relations {
            if q.arrow_info(f).tgt != q.arrow_info(t).src {
                errors.push(format!("relation {}*{} is not composable", q.arrow_info(t).name, q.arrow_info(f).name));
            }
        }
        for rw in &self.rewrites {
            let lhs = q.render(&rw.lhs);
            if rw.lhs.is_empty() {
                errors.push("rewrite with empty left-hand side".into());
            }
            for (p, _) in rw.rhs.terms() {
                if !p.parallel(&rw.lhs) {
                    errors.push(format!("rewrite {lhs}: term {} not parallel", q.render(p)));
                }
                if q.degree(p) != q.degree(&rw.lhs) {
                    errors.push(format!("rewrite {lhs}: term {} has wrong degree", q.render(p)));
                }
                if p >= &rw.lhs {
                    errors.push(format!("rewrite {lhs}: term {} is not smaller than the left-hand side", q.render(p)));
                }
            }
        }
        if errors.is_empty() {
            errors.extend(self.confluence_errors());
        }
        for (&x, dx) in &self.differential {
            let ar = q.arrow_info(x);
            for (p, _) in dx.terms() {
                if p.src != ar.src || p.tgt != ar.tgt {
                    errors.push(format!("d({}): term {} not parallel", ar.name, q.render(p)));
                }
                if q.degree(p) != ar.deg + 1 {
                    errors.push(format!("d({}): term {} does not have degree {}", ar.name, q.render(p), ar.deg + 1));
                }
                if !self.is_irreducible(p) {
                    errors.push(format!("d({}): term {} is reducible", ar.name, q.render(p)));
                }
            }
        }
        if !errors.is_empty() {
            return ValidationReport { errors };
        }
        for &(f, t) in &self.relations {
            let p = Path { src: q.arrow_info(f).src, tgt: q.arrow_info(t).tgt, arrows: vec![f, t] };
            match self.d_path(&p) {
                Ok(v) if v.is_zero() => {}
                Ok(v) => errors.push(format!("d({}) = {} is not zero", q.render(&p), v.render(q))),
                Err(e) => errors.push(e.to_string()),
            }
        }
        for rw in &self.rewrites {
            let lhs = self.d_path(&rw.lhs);
            let rhs = self.d_unchecked(&rw.rhs);
            match (lhs, rhs) {
                (Ok(a), Ok(b)) if a == b => {}
                (Ok(a), Ok(b)) => errors.push(format!(
                    "d does not respect {} -> {}: {} vs {}",
                    q.render(&rw.lhs),
                    rw.rhs.render(q),
                    a.render(q),
                    b.render(q)
                )),
                (Err(e), _) | (_, Err(e)) => errors.push(e.to_string()),
            }
        }
        for (&x, dx) in &self.differential {
            match self.d_unchecked(dx) {
                Ok(v) if v.is_zero() => {}
                Ok(v) => errors.push(format!("d^2({}) = {}", q.arrow_info(x).name, v.render(q))),
                Err(e) => errors.push(e.to_string()),
            }
        }
        ValidationReport { errors }
    }

    fn confluence_errors(&self) -> Vec<String> {
        let q = &self.quiver;
        let mut lhss: Vec<Vec<usize>> = self.relations.iter().map(|&(f, t)| vec![f, t]).collect();
        lhss.extend(self.rewrites.iter().map(|r| r.lhs.arrows.clone()));
        let mut errors = Vec::new();
        let path_of = |arrows: Vec<usize>| q.path_from_ids(arrows).ok();
        let reduce_word = |word: &[usize]| -> Option<Result<Element<K>, AlgebraError>> {
            let p = path_of(word.to_vec())?;
            Some(self.reduce(&Element::from_path(p)))
        };
        // One rewriting step at position i with rule lhs, then full reduction.
        let step = |word: &[usize], i: usize, l: &[usize]| -> Option<Result<Element<K>, AlgebraError>> {
            let whole = path_of(word.to_vec())?;
            let rhs: Element<K> = match self.rewrite_index.get(l) {
                Some(&r) => self.rewrites[r].rhs.clone(),
                None => Element::zero(),
            };
            let mut out = Element::zero();
            for (rp, rc) in rhs.terms() {
                let mut arrows = word[..i].to_vec();
                arrows.extend_from_slice(&rp.arrows);
                arrows.extend_from_slice(&word[i + l.len()..]);
                let p = Path { src: whole.src, tgt: whole.tgt, arrows };
                if let Err(e) = self.reduce_path_into(p, rc.clone(), &mut out) {
                    return Some(Err(e));
                }
            }
            Some(Ok(out))
        };
        for l1 in &lhss {
            for l2 in &lhss {
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] != l2[..k] {
                        continue;
                    }
                    let mut word = l1.clone();
                    word.extend_from_slice(&l2[k..]);
                    let a = step(&word, 0, l1);
                    let b = step(&word, l1.len() - k, l2);
                    if let (Some(a), Some(b)) = (a, b) {
                        match (a, b) {
                            (Ok(a), Ok(b)) if a == b => {}
                            (Ok(a), Ok(b)) => {
                                let w = path_of(word.clone()).map(|p| q.render(&p)).unwrap_or_default();
                                errors.push(format!("ambiguity {w} resolves to {} and {}", a.render(q), b.render(q)));
                            }
                            (Err(e), _) | (_, Err(e)) => errors.push(e.to_string()),
                        }
                    }
                }
                if l2.len() < l1.len() {
                    for i in 0..=l1.len() - l2.len() {
                        if l1[i..i + l2.len()] == l2[..] {
                            let a = reduce_word(l1);
                            let b = step(l1, i, l2);
                            if let (Some(Ok(a)), Some(Ok(b))) = (a, b) {
                                if a != b {
                                    errors.push("inclusion ambiguity does not resolve".into());
                                }
                            }
                        }
                    }
                }
            }
        }
        errors
    }

    /// All irreducible paths of length at most `max_len`, in basis order.
    pub fn irreducible_paths(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.quiver.num_vertices()).map(Path::vertex).collect();
        let mut frontier = out.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.quiver.outgoing(p.tgt) {
                    if self.extends_irreducibly(p, a) {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a);
                        next.push(Path { src: p.src, tgt: self.quiver.arrow_info(a).tgt, arrows });
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort();
        out
    }

    /// Irreducible paths of length exactly `max_len + 1` exist.
    pub fn has_paths_beyond(&self, max_len: usize) -> bool {
        self.irreducible_paths(max_len + 1).iter().any(|p| p.len() == max_len + 1)
    }

    /// Counts irreducible paths per degree in `[lo, hi]` up to the length bound.
    pub fn graded_dimension(&self, window: (i64, i64), length_bound: usize) -> GradedDimension {
        let paths = self.irreducible_paths(length_bound + 1);
        let mut counts = BTreeMap::new();
        let mut growing = false;
        for p in &paths {
            let d = self.quiver.degree(p);
            if d < window.0 || d > window.1 {
                continue;
            }
            if p.len() > length_bound {
                growing = true;
            } else {
                *counts.entry(d).or_insert(0) += 1;
            }
        }
        GradedDimension { counts, growing, length_bound }
    }
}
