//! Finite linear combinations of paths.

use std::collections::BTreeMap;

use crate::quiver::{GradedQuiver, Path};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Element<K> {
    terms: BTreeMap<Path, K>,
}

impl<K: Field> Default for Element<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Field> Element<K> {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn from_path(p: Path) -> Self {
        Self::term(p, K::one())
    }

    pub fn term(p: Path, c: K) -> Self {
        let mut e = Self::zero();
        e.add_term(p, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Path, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element<K>, c: &K) {
        for (p, v) in &other.terms {
            self.add_term(p.clone(), v.clone() * c.clone());
        }
    }

    pub fn add(&mut self, other: &Element<K>) {
        self.add_scaled(other, &K::one());
    }

    pub fn scaled(&self, c: &K) -> Element<K> {
        let mut e = Self::zero();
        e.add_scaled(self, c);
        e
    }

    pub fn neg(&self) -> Element<K> {
        self.scaled(&(-K::one()))
    }

    pub fn sub(&self, other: &Element<K>) -> Element<K> {
        let mut e = self.clone();
        e.add_scaled(other, &(-K::one()));
        e
    }

    pub fn coeff(&self, p: &Path) -> K {
        self.terms.get(p).cloned().unwrap_or_else(K::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &K)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree if all supporting paths share one.
    pub fn homogeneous_degree(&self, q: &GradedQuiver) -> Option<i64> {
        let mut degs = self.terms.keys().map(|p| q.degree(p));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn render(&self, q: &GradedQuiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(p, c)| format!("{}·{}", c.to_exact_string(), q.render(p)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<K: Field> FromIterator<(Path, K)> for Element<K> {
    fn from_iter<T: IntoIterator<Item = (Path, K)>>(iter: T) -> Self {
        let mut e = Self::zero();
        for (p, c) in iter {
            e.add_term(p, c);
        }
        e
    }
}
