//! Curved A∞ structures on the path basis of a presentation.
//!
//! Inputs are written left to right as in `μ²(s v ⊗ s u) ↔ v u`, so the rightmost
//! input is applied first and `inputs[i].src == inputs[i + 1].tgt`.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;
use quiver_core::io::{element_from_json, element_to_json, to_json, PresentationJson};
use quiver_core::linalg::{from_entries, SparseVec};
use quiver_core::{sign, Element, GradedQuiver, Path, Presentation, Q};
use serde::{Deserialize, Serialize};

use crate::AInfError;

/// Structure maps `μ⁰, μ¹, …, μ^N` as sparse tables on a finite path basis.
#[derive(Clone, Debug)]
pub struct AInfinityPresentation {
    pub base: Presentation<Q>,
    pub basis: Vec<Path>,
    index: HashMap<Path, usize>,
    /// `μ⁰` per vertex, as a vector in the basis.
    pub mu0: BTreeMap<usize, SparseVec<Q>>,
    tables: BTreeMap<usize, HashMap<Vec<usize>, SparseVec<Q>>>,
    /// Input tuples whose value leaves the basis window.
    escaped: HashMap<usize, HashSet<Vec<usize>>>,
    /// The basis is a proper subset of the path basis.
    pub truncated: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MuEntry {
    pub inputs: Vec<String>,
    pub output: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AInfinityJson {
    #[serde(flatten)]
    pub presentation: PresentationJson,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub mu0: BTreeMap<String, BTreeMap<String, String>>,
    /// Entries replace the values induced by the differential and product.
    #[serde(default)]
    pub mu: BTreeMap<String, Vec<MuEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_bound: Option<usize>,
}

fn degree(q: &GradedQuiver, x: &Path) -> i64 {
    q.degree(x)
}

impl AInfinityPresentation {
    /// `μ¹(s a) = s(d a)` and `μ²(s v ⊗ s u) = (-1)^{|sv||u|} s(v u)` on paths of length `≤ len`.
    pub fn from_dg(p: &Presentation<Q>, len: usize) -> Result<Self, AInfError> {
        if !p.is_validated() {
            return Err(AInfError::Invalid("presentation must be validated first".into()));
        }
        let basis = p.irreducible_paths(len);
        let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let mut out = AInfinityPresentation {
            base: p.clone(),
            basis,
            index,
            mu0: BTreeMap::new(),
            tables: BTreeMap::new(),
            escaped: HashMap::new(),
            truncated: p.has_paths_beyond(len),
        };
        let q = p.quiver();
        for i in 0..out.basis.len() {
            let x = out.basis[i].clone();
            let dx = p.d_path(&x)?;
            out.store(vec![i], &dx);
        }
        for i in 0..out.basis.len() {
            for j in 0..out.basis.len() {
                let (v, u) = (&out.basis[i], &out.basis[j]);
                if u.tgt != v.src {
                    continue;
                }
                let s: Q = sign((degree(q, v) - 1) * degree(q, u));
                let vu = p.mul_paths(v, u)?.scaled(&s);
                out.store(vec![i, j], &vu);
            }
        }
        Ok(out)
    }

    fn store(&mut self, inputs: Vec<usize>, value: &Element<Q>) {
        let n = inputs.len();
        match self.vector(value) {
            Some(v) => {
                self.escaped.get_mut(&n).map(|e| e.remove(&inputs));
                let t = self.tables.entry(n).or_default();
                if v.is_empty() {
                    t.remove(&inputs);
                } else {
                    t.insert(inputs, v);
                }
            }
            None => {
                self.tables.entry(n).or_default().remove(&inputs);
                self.escaped.entry(n).or_default().insert(inputs);
            }
        }
    }

    pub fn quiver(&self) -> &GradedQuiver {
        self.base.quiver()
    }

    pub fn index_of(&self, x: &Path) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// `None` when a term lies outside the basis.
    pub fn vector(&self, e: &Element<Q>) -> Option<SparseVec<Q>> {
        let mut out = Vec::new();
        for (x, c) in e.terms() {
            out.push((*self.index.get(x)?, c.clone()));
        }
        Some(from_entries(out))
    }

    pub fn element(&self, v: &[(usize, Q)]) -> Element<Q> {
        v.iter().map(|(i, c)| (self.basis[*i].clone(), c.clone())).collect()
    }

    pub fn degree(&self, i: usize) -> i64 {
        degree(self.quiver(), &self.basis[i])
    }

    /// Shifted degree `|s a| = |a| - 1`.
    pub fn shifted_degree(&self, i: usize) -> i64 {
        self.degree(i) - 1
    }

    pub fn max_arity(&self) -> usize {
        self.tables.iter().filter(|(_, t)| !t.is_empty()).map(|(n, _)| *n).max().unwrap_or(0)
    }

    pub fn arities(&self) -> impl Iterator<Item = usize> + '_ {
        self.tables.iter().filter(|(_, t)| !t.is_empty()).map(|(n, _)| *n)
    }

    /// `Some(value)` of `μⁿ` on basis inputs, `None` when it leaves the window.
    pub fn mu(&self, inputs: &[usize]) -> Option<&[(usize, Q)]> {
        let n = inputs.len();
        if self.escaped.get(&n).is_some_and(|e| e.contains(inputs)) {
            return None;
        }
        Some(self.tables.get(&n).and_then(|t| t.get(inputs)).map(Vec::as_slice).unwrap_or(&[]))
    }

    pub fn has_arity(&self, n: usize) -> bool {
        self.tables.get(&n).is_some_and(|t| !t.is_empty())
    }

    /// Replaces `μⁿ(inputs)`.
    pub fn set_mu(&mut self, inputs: &[Path], value: &Element<Q>) -> Result<(), AInfError> {
        let ids = inputs
            .iter()
            .map(|x| self.index_of(x).ok_or_else(|| AInfError::Invalid(format!("{} is not a basis path", self.quiver().render(x)))))
            .collect::<Result<Vec<_>, _>>()?;
        if self.vector(value).is_none() {
            return Err(AInfError::Invalid(format!("value {} leaves the basis", value.render(self.quiver()))));
        }
        self.store(ids, value);
        Ok(())
    }

    pub fn set_mu0(&mut self, v: usize, value: &Element<Q>) -> Result<(), AInfError> {
        let vec = self.vector(value).ok_or_else(|| AInfError::Invalid("curvature leaves the basis".into()))?;
        if vec.is_empty() {
            self.mu0.remove(&v);
        } else {
            self.mu0.insert(v, vec);
        }
        Ok(())
    }

    /// Adds `delta` to one structure constant.
    pub fn perturb(&mut self, inputs: &[usize], output: usize, delta: &Q) {
        let t = self.tables.entry(inputs.len()).or_default();
        let v = t.remove(inputs).unwrap_or_default();
        let v = from_entries(v.into_iter().chain([(output, delta.clone())]).collect());
        if !v.is_empty() {
            t.insert(inputs.to_vec(), v);
        }
    }

    /// Nonzero structure constants `(inputs, output, coefficient)`, sorted.
    pub fn constants(&self) -> Vec<(Vec<usize>, usize, Q)> {
        let mut out: Vec<_> = self
            .tables
            .values()
            .flat_map(|t| t.iter().flat_map(|(k, v)| v.iter().map(move |(o, c)| (k.clone(), *o, c.clone()))))
            .collect();
        out.sort_by(|a, b| (a.0.len(), &a.0, a.1).cmp(&(b.0.len(), &b.0, b.1)));
        out
    }

    /// Degree `+1` on the shifted complex and compatibility with endpoints.
    pub fn check_invariants(&self) -> Vec<String> {
        let q = self.quiver();
        let mut errors = Vec::new();
        for (inputs, o, _) in self.constants() {
            let label = self.render_inputs(&inputs);
            let expect: i64 = inputs.iter().map(|&i| self.shifted_degree(i)).sum::<i64>() + 1;
            if self.shifted_degree(o) != expect {
                errors.push(format!("μ^{}({label}) has shifted degree {}, expected {expect}", inputs.len(), self.shifted_degree(o)));
            }
            if inputs.windows(2).any(|w| self.basis[w[0]].src != self.basis[w[1]].tgt) {
                errors.push(format!("μ^{}({label}) has non-composable inputs", inputs.len()));
            }
            let (first, last) = (&self.basis[inputs[0]], &self.basis[*inputs.last().unwrap()]);
            let out = &self.basis[o];
            if out.src != last.src || out.tgt != first.tgt {
                errors.push(format!("μ^{}({label}) has output {} with the wrong endpoints", inputs.len(), q.render(out)));
            }
        }
        for (&v, c) in &self.mu0 {
            for (o, _) in c {
                let out = &self.basis[*o];
                if out.src != v || out.tgt != v || self.degree(*o) != 2 {
                    errors.push(format!("μ⁰ at {} has term {} not of degree 2 at the vertex", q.vertex_name(v), q.render(out)));
                }
            }
        }
        errors
    }

    pub fn render_inputs(&self, inputs: &[usize]) -> String {
        inputs.iter().map(|&i| format!("s{}", self.quiver().render(&self.basis[i]))).collect::<Vec<_>>().join(" ⊗ ")
    }

    /// Entries that differ from the values induced by `d` and the product.
    pub fn to_json(&self) -> Result<AInfinityJson, AInfError> {
        let q = self.quiver();
        let len = self.basis.iter().map(Path::len).max().unwrap_or(0);
        let plain = AInfinityPresentation::from_dg(&self.base, len)?;
        let mut mu: BTreeMap<String, Vec<MuEntry>> = BTreeMap::new();
        let mut keys: Vec<(usize, Vec<usize>)> =
            self.tables.iter().chain(plain.tables.iter()).flat_map(|(n, t)| t.keys().map(move |k| (*n, k.clone()))).collect();
        keys.sort();
        keys.dedup();
        for (n, k) in keys {
            let (mine, theirs) = (self.mu(&k).unwrap_or(&[]), plain.mu(&k).unwrap_or(&[]));
            if mine != theirs {
                mu.entry(n.to_string()).or_default().push(MuEntry {
                    inputs: k.iter().map(|&i| q.render(&self.basis[i])).collect(),
                    output: element_to_json(q, &self.element(mine)),
                });
            }
        }
        Ok(AInfinityJson {
            presentation: to_json(&self.base),
            mu0: self.mu0.iter().map(|(v, c)| (q.vertex_name(*v).to_string(), element_to_json(q, &self.element(c)))).collect(),
            mu,
            length_bound: Some(len),
        })
    }

    /// Builds from JSON; `len` is used when the file carries no length bound.
    pub fn from_json(j: &AInfinityJson, len: usize) -> Result<Self, AInfError> {
        let mut p: Presentation<Q> = quiver_core::io::from_json(&j.presentation)?;
        let report = p.validate();
        if !report.ok() {
            return Err(AInfError::Invalid(report.errors.join("; ")));
        }
        let mut out = AInfinityPresentation::from_dg(&p, j.length_bound.unwrap_or(len))?;
        let q = out.quiver().clone();
        for (v, e) in &j.mu0 {
            let id = q.vertex(v)?;
            let e = element_from_json(&q, e)?;
            out.set_mu0(id, &e)?;
        }
        for (n, entries) in &j.mu {
            let n: usize = n.parse().map_err(|_| AInfError::Invalid(format!("arity {n:?} is not a number")))?;
            for entry in entries {
                if entry.inputs.len() != n {
                    return Err(AInfError::Invalid(format!("entry of arity {n} has {} inputs", entry.inputs.len())));
                }
                let inputs = entry.inputs.iter().map(|s| q.parse_path(s)).collect::<Result<Vec<_>, _>>()?;
                let value = element_from_json(&q, &entry.output)?;
                out.set_mu(&inputs, &value)?;
            }
        }
        let errors = out.check_invariants();
        if !errors.is_empty() {
            return Err(AInfError::Invalid(errors.join("; ")));
        }
        Ok(out)
    }

    pub fn parse(text: &str, len: usize) -> Result<Self, AInfError> {
        let j: AInfinityJson = serde_json::from_str(text).map_err(|e| AInfError::Invalid(e.to_string()))?;
        Self::from_json(&j, len)
    }

    pub fn is_zero_vector(v: &[(usize, Q)]) -> bool {
        v.iter().all(|(_, c)| c.is_zero())
    }
}
