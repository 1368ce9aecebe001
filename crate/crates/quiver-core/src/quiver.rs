//! Graded quivers and paths.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub deg: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl GradedQuiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, AlgebraError> {
        if self.vertex_index.contains_key(name) {
            return Err(AlgebraError::Invalid(format!("duplicate vertex {name}")));
        }
        let id = self.vertices.len();
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_arrow(&mut self, name: &str, src: &str, tgt: &str, deg: i64) -> Result<usize, AlgebraError> {
        if self.arrow_index.contains_key(name) {
            return Err(AlgebraError::Invalid(format!("duplicate arrow {name}")));
        }
        let s = self.vertex(src)?;
        let t = self.vertex(tgt)?;
        let id = self.arrows.len();
        self.arrows.push(Arrow { name: name.to_string(), src: s, tgt: t, deg });
        self.arrow_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn vertex(&self, name: &str) -> Result<usize, AlgebraError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| AlgebraError::Invalid(format!("unknown vertex {name}")))
    }

    pub fn arrow(&self, name: &str) -> Result<usize, AlgebraError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| AlgebraError::Invalid(format!("unknown arrow {name}")))
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrow_info(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.src == v).map(|(i, _)| i)
    }

    pub fn incoming(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.tgt == v).map(|(i, _)| i)
    }

    pub fn idempotent(&self, v: usize) -> Path {
        Path::vertex(v)
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let ar = &self.arrows[a];
        Path { src: ar.src, tgt: ar.tgt, arrows: vec![a] }
    }

    /// Path from arrow names in composition order (`["p2", "p1"]` is `p2 p1`).
    pub fn path_from_names(&self, names: &[&str]) -> Result<Path, AlgebraError> {
        let mut ids = Vec::with_capacity(names.len());
        for n in names.iter().rev() {
            ids.push(self.arrow(n)?);
        }
        self.path_from_ids(ids)
    }

    /// Path from arrow ids in traversal order.
    pub fn path_from_ids(&self, ids: Vec<usize>) -> Result<Path, AlgebraError> {
        let Some(&first) = ids.first() else {
            return Err(AlgebraError::Invalid("empty arrow list".into()));
        };
        for w in ids.windows(2) {
            if self.arrows[w[0]].tgt != self.arrows[w[1]].src {
                return Err(AlgebraError::Invalid(format!(
                    "arrows {} and {} are not composable",
                    self.arrows[w[1]].name, self.arrows[w[0]].name
                )));
            }
        }
        let src = self.arrows[first].src;
        let tgt = self.arrows[*ids.last().unwrap()].tgt;
        Ok(Path { src, tgt, arrows: ids })
    }

    pub fn degree(&self, p: &Path) -> i64 {
        p.arrows.iter().map(|&a| self.arrows[a].deg).sum()
    }

    /// Composition-order rendering, e.g. `p2*p1`, or `e_v` for an idempotent.
    pub fn render(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.vertices[p.src])
        } else {
            p.arrows.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    /// Inverse of [`GradedQuiver::render`].
    pub fn parse_path(&self, s: &str) -> Result<Path, AlgebraError> {
        let s = s.trim();
        if let Some(v) = s.strip_prefix("e_") {
            if let Ok(id) = self.vertex(v) {
                return Ok(Path::vertex(id));
            }
        }
        let names: Vec<&str> = s.split('*').map(str::trim).collect();
        self.path_from_names(&names)
    }
}

/// A path; `arrows` lists arrow ids in traversal order, so `arrows[0]` is `p1` in `pn...p1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn vertex(v: usize) -> Path {
        Path { src: v, tgt: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_idempotent(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn parallel(&self, other: &Path) -> bool {
        self.src == other.src && self.tgt == other.tgt
    }

    /// `self ∘ first`: traverse `first`, then `self`.
    pub fn after(&self, first: &Path) -> Option<Path> {
        if first.tgt != self.src {
            return None;
        }
        let mut arrows = first.arrows.clone();
        arrows.extend_from_slice(&self.arrows);
        Some(Path { src: first.src, tgt: self.tgt, arrows })
    }

    /// Subpath on traversal positions `range`.
    pub fn slice(&self, q: &GradedQuiver, range: std::ops::Range<usize>) -> Path {
        if range.is_empty() {
            let v = if range.start == 0 { self.src } else { q.arrow_info(self.arrows[range.start - 1]).tgt };
            return Path::vertex(v);
        }
        let arrows = self.arrows[range].to_vec();
        let src = q.arrow_info(arrows[0]).src;
        let tgt = q.arrow_info(*arrows.last().unwrap()).tgt;
        Path { src, tgt, arrows }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.src.cmp(&other.src))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kronecker() -> GradedQuiver {
        let mut q = GradedQuiver::new();
        q.add_vertex("1").unwrap();
        q.add_vertex("2").unwrap();
        q.add_arrow("a", "1", "2", 0).unwrap();
        q.add_arrow("b", "2", "1", 3).unwrap();
        q
    }

    #[test]
    fn composition_notation_round_trip() {
        let q = kronecker();
        let p = q.path_from_names(&["b", "a"]).unwrap();
        assert_eq!(p.arrows, vec![0, 1]);
        assert_eq!((p.src, p.tgt), (0, 0));
        assert_eq!(q.render(&p), "b*a");
        assert_eq!(q.parse_path("b*a").unwrap(), p);
        assert_eq!(q.degree(&p), 3);
        assert_eq!(q.parse_path("e_2").unwrap(), Path::vertex(1));
        assert!(q.path_from_names(&["a", "a"]).is_err());
    }

    #[test]
    fn invariants_on_construction() {
        let mut q = kronecker();
        assert!(q.add_arrow("a", "1", "2", 0).is_err());
        assert!(q.add_arrow("c", "1", "9", 0).is_err());
    }

    #[test]
    fn order_is_length_first() {
        let q = kronecker();
        let long = q.path_from_names(&["b", "a"]).unwrap();
        let short = q.arrow_path(1);
        assert!(short < long);
        assert!(Path::vertex(1) < short);
    }
}
