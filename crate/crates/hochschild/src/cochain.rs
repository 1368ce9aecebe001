use std::collections::BTreeMap;

use quiver_core::{Field, GradedQuiver, Path};
use serde::Serialize;

/// Finite sum of basis cochains `w ↦ c·v` (overlap `w`, irreducible parallel path `v`).
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<K> {
    terms: BTreeMap<(Path, Path), K>,
}

impl<K: Field> Default for Cochain<K> {
    fn default() -> Self {
        Cochain { terms: BTreeMap::new() }
    }
}

impl<K: Field> Cochain<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: Path, v: Path) -> Self {
        let mut c = Self::zero();
        c.add_term(w, v, K::one());
        c
    }

    pub fn add_term(&mut self, w: Path, v: Path, c: K) {
        if c.is_zero() {
            return;
        }
        let key = (w, v);
        let s = match self.terms.remove(&key) {
            Some(x) => x + c,
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(key, s);
        }
    }

    pub fn add_scaled(&mut self, other: &Cochain<K>, c: &K) {
        for ((w, v), x) in &other.terms {
            self.add_term(w.clone(), v.clone(), x.clone() * c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Path, &K)> {
        self.terms.iter().map(|((w, v), c)| (w, v, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Path> {
        self.terms.keys().map(|(w, _)| w)
    }

    pub fn to_json(&self, q: &GradedQuiver) -> CochainJson {
        CochainJson {
            support: self
                .terms
                .iter()
                .map(|((w, v), c)| CochainTerm { overlap: q.render(w), value: q.render(v), coeff: c.to_exact_string() })
                .collect(),
        }
    }
}

impl<K: Field> FromIterator<((Path, Path), K)> for Cochain<K> {
    fn from_iter<I: IntoIterator<Item = ((Path, Path), K)>>(iter: I) -> Self {
        let mut c = Self::zero();
        for ((w, v), x) in iter {
            c.add_term(w, v, x);
        }
        c
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CochainTerm {
    pub overlap: String,
    pub value: String,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CochainJson {
    pub support: Vec<CochainTerm>,
}
