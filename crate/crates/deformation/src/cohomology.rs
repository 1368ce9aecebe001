//! Cohomology of a finite DG presentation, degree by degree.

use std::collections::{BTreeMap, HashMap};

use quiver_core::io::element_to_json;
use quiver_core::linalg::{from_entries, kernel, solve, Echelon, SparseVec};
use quiver_core::{AlgebraError, Element, Field, Path, Presentation, Q};
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct FiberCohomology {
    pub window: (i64, i64),
    pub length_bound: usize,
    /// Irreducible paths exist beyond the length bound.
    pub truncated: bool,
    /// Nonzero dimensions only.
    pub dims: BTreeMap<i64, usize>,
    pub representatives: BTreeMap<i64, Vec<Element<Q>>>,
    index: HashMap<Path, usize>,
    images: BTreeMap<i64, Echelon<Q>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyJson {
    pub window: (i64, i64),
    pub length_bound: usize,
    pub truncated: bool,
    pub dims: BTreeMap<i64, usize>,
    pub total: usize,
    pub representatives: BTreeMap<i64, Vec<BTreeMap<String, String>>>,
}

impl FiberCohomology {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn concentrated_in(&self, n: i64) -> bool {
        self.dims.keys().all(|&d| d == n)
    }

    pub fn vector(&self, e: &Element<Q>) -> Result<SparseVec<Q>, AlgebraError> {
        let mut out = Vec::new();
        for (p, c) in e.terms() {
            let i = self.index.get(p).ok_or_else(|| AlgebraError::Resource("path beyond the length bound".into()))?;
            out.push((*i, c.clone()));
        }
        Ok(from_entries(out))
    }

    /// Dimension of the span of the classes of `cocycles` in `H^n`.
    pub fn class_rank(&self, n: i64, cocycles: &[Element<Q>]) -> Result<usize, AlgebraError> {
        let mut e = self.images.get(&n).cloned().unwrap_or_default();
        let base = e.rank();
        for c in cocycles {
            e.insert(self.vector(c)?);
        }
        Ok(e.rank() - base)
    }

    /// Coordinates of the class of a degree-`n` cocycle in the representative basis.
    pub fn coordinates(&self, n: i64, cocycle: &Element<Q>) -> Result<Option<Vec<Q>>, AlgebraError> {
        let reps = self.representatives.get(&n).cloned().unwrap_or_default();
        let mut rows: Vec<SparseVec<Q>> = reps.iter().map(|r| self.vector(r)).collect::<Result<_, _>>()?;
        rows.extend(self.images.get(&n).map(|e| e.rows().to_vec()).unwrap_or_default());
        let x = solve(&rows, &self.vector(cocycle)?);
        Ok(x.map(|x| {
            let mut c = vec![Q::from_i64(0); reps.len()];
            for (i, v) in x {
                if i < reps.len() {
                    c[i] = v;
                }
            }
            c
        }))
    }

    /// Structure constants of `H^0` in the representative basis: `r_i r_j = Σ_k c_k r_k`.
    pub fn degree_zero_products(&self, p: &Presentation<Q>) -> Result<Vec<Vec<Vec<Q>>>, AlgebraError> {
        let reps = self.representatives.get(&0).cloned().unwrap_or_default();
        let mut table = Vec::new();
        for a in &reps {
            let mut row = Vec::new();
            for b in &reps {
                let c = self
                    .coordinates(0, &p.compose(a, b)?)?
                    .ok_or_else(|| AlgebraError::Contract("product of cocycles is not a cocycle".into()))?;
                row.push(c);
            }
            table.push(row);
        }
        Ok(table)
    }

    pub fn to_json(&self, p: &Presentation<Q>) -> CohomologyJson {
        let q = p.quiver();
        CohomologyJson {
            window: self.window,
            length_bound: self.length_bound,
            truncated: self.truncated,
            dims: self.dims.clone(),
            total: self.total(),
            representatives: self
                .representatives
                .iter()
                .map(|(n, rs)| (*n, rs.iter().map(|r| element_to_json(q, r)).collect()))
                .collect(),
        }
    }
}

/// `ker d / im d` in each degree of `window`, on irreducible paths up to `length_bound`.
pub fn fiber_cohomology(p: &Presentation<Q>, window: (i64, i64), length_bound: usize) -> Result<FiberCohomology, AlgebraError> {
    if !p.is_validated() {
        return Err(AlgebraError::Contract("presentation has not been validated".into()));
    }
    let q = p.quiver();
    let paths = p.irreducible_paths(length_bound);
    let truncated = p.has_paths_beyond(length_bound);
    let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, x) in paths.iter().enumerate() {
        by_degree.entry(q.degree(x)).or_default().push(i);
    }
    let d_of = |i: usize| -> Result<SparseVec<Q>, AlgebraError> {
        let mut out = Vec::new();
        for (y, c) in p.d_path(&paths[i])?.terms() {
            let j = index.get(y).ok_or_else(|| AlgebraError::Resource(format!("d leaves the length bound {length_bound}")))?;
            out.push((*j, c.clone()));
        }
        Ok(from_entries(out))
    };
    let mut images: BTreeMap<i64, Echelon<Q>> = BTreeMap::new();
    let mut kernels: BTreeMap<i64, Vec<SparseVec<Q>>> = BTreeMap::new();
    for n in window.0 - 1..=window.1 {
        let cols = by_degree.get(&n).cloned().unwrap_or_default();
        let imgs: Vec<SparseVec<Q>> = cols.iter().map(|&i| d_of(i)).collect::<Result<_, _>>()?;
        let mut e = Echelon::new();
        for v in &imgs {
            e.insert(v.clone());
        }
        images.insert(n + 1, e);
        let ker = kernel(&imgs).into_iter().map(|k| from_entries(k.into_iter().map(|(j, c)| (cols[j], c)).collect())).collect();
        kernels.insert(n, ker);
    }
    let mut dims = BTreeMap::new();
    let mut representatives = BTreeMap::new();
    for n in window.0..=window.1 {
        let mut e = images.get(&n).cloned().unwrap_or_default();
        let mut reps = Vec::new();
        for k in &kernels[&n] {
            if e.insert(k.clone()) {
                reps.push(k.iter().map(|(i, c)| (paths[*i].clone(), c.clone())).collect::<Element<Q>>());
            }
        }
        if !reps.is_empty() {
            dims.insert(n, reps.len());
            representatives.insert(n, reps);
        }
    }
    Ok(FiberCohomology { window, length_bound, truncated, dims, representatives, index, images })
}
