//! The two-term twisted complex `P_j[1 - |q|] ⊕ P_j` with connecting map `q`,
//! and its endomorphism complex as 2×2 matrices over `e_j A e_j`.

use std::collections::{BTreeMap, HashMap};

use quiver_core::fixtures::dual_numbers;
use quiver_core::linalg::{from_entries, rank, Echelon, SparseVec};
use quiver_core::{sign, AlgebraError, Field, Path, Presentation, Q};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoTermTwist {
    pub vertex: usize,
    pub loop_arrow: usize,
    pub loop_degree: i64,
    /// Shift of the first summand.
    pub shift: i64,
}

/// Matrix unit `E_{ab}` (a map from summand `b` to summand `a`) times a cycle at `j`.
type Entry = (u8, u8, Path);

pub struct TwistComplex<'a> {
    p: &'a Presentation<Q>,
    pub twist: TwoTermTwist,
    cycles: Vec<Path>,
    columns: HashMap<Entry, usize>,
}

impl<'a> TwistComplex<'a> {
    pub fn new(p: &'a Presentation<Q>, vertex: usize, max_len: usize) -> Result<Self, AlgebraError> {
        let q = p.quiver();
        let loop_arrow = q
            .outgoing(vertex)
            .find(|&a| q.arrow_info(a).tgt == vertex && !p.is_zero_pair(a, a))
            .ok_or_else(|| AlgebraError::Invalid(format!("vertex {} has no relation-free loop", q.vertex_name(vertex))))?;
        let loop_degree = q.arrow_info(loop_arrow).deg;
        if loop_degree == 0 {
            return Err(AlgebraError::Invalid("a degree-0 loop makes the endomorphism complex infinite in degree 0".into()));
        }
        let cycles = p.irreducible_paths(max_len).into_iter().filter(|c| c.src == vertex && c.tgt == vertex).collect();
        let twist = TwoTermTwist { vertex, loop_arrow, loop_degree, shift: 1 - loop_degree };
        Ok(TwistComplex { p, twist, cycles, columns: HashMap::new() })
    }

    fn summand_shift(&self, s: u8) -> i64 {
        if s == 1 {
            self.twist.shift
        } else {
            0
        }
    }

    pub fn degree(&self, e: &Entry) -> i64 {
        self.p.quiver().degree(&e.2) + self.summand_shift(e.1) - self.summand_shift(e.0)
    }

    pub fn basis(&self, n: i64) -> Vec<Entry> {
        let mut out = Vec::new();
        for a in [1u8, 2] {
            for b in [1u8, 2] {
                for c in &self.cycles {
                    let e = (a, b, c.clone());
                    if self.degree(&e) == n {
                        out.push(e);
                    }
                }
            }
        }
        out
    }

    fn column(&mut self, e: Entry) -> usize {
        let n = self.columns.len();
        *self.columns.entry(e).or_insert(n)
    }

    /// `D f = δ f - (-1)^{|f|} f δ` with `δ = E_{21} q`.
    pub fn differential(&mut self, e: &Entry) -> Result<SparseVec<Q>, AlgebraError> {
        let q = self.p.quiver().arrow_path(self.twist.loop_arrow);
        let mut out = Vec::new();
        let (a, b, x) = e;
        if *a == 1 {
            for (path, c) in self.p.mul_paths(&q, x)?.terms() {
                out.push((self.column((2, *b, path.clone())), c.clone()));
            }
        }
        if *b == 2 {
            let s: Q = -sign::<Q>(self.degree(e));
            for (path, c) in self.p.mul_paths(x, &q)?.terms() {
                out.push((self.column((*a, 1, path.clone())), s.clone() * c.clone()));
            }
        }
        Ok(from_entries(out))
    }

    fn images(&mut self, n: i64) -> Result<Vec<SparseVec<Q>>, AlgebraError> {
        self.basis(n).iter().map(|e| self.differential(e)).collect()
    }

    pub fn cohomology(&mut self, n: i64) -> Result<usize, AlgebraError> {
        let dim = self.basis(n).len();
        let out = rank(self.images(n)?);
        let inc = rank(self.images(n - 1)?);
        Ok(dim - out - inc)
    }

    pub fn is_cocycle(&mut self, e: &Entry) -> Result<bool, AlgebraError> {
        Ok(self.differential(e)?.is_empty())
    }

    pub fn is_exact(&mut self, e: &Entry) -> Result<bool, AlgebraError> {
        let mut ech = Echelon::new();
        for img in self.images(self.degree(e) - 1)? {
            ech.insert(img);
        }
        let v = vec![(self.column(e.clone()), Q::from_i64(1))];
        Ok(ech.contains(&v))
    }

    /// `(0 0; q^k 0)`.
    pub fn lower_power(&self, k: usize) -> Result<Entry, AlgebraError> {
        let ids = vec![self.twist.loop_arrow; k];
        let path = if k == 0 { Path::vertex(self.twist.vertex) } else { self.p.quiver().path_from_ids(ids)? };
        Ok((2, 1, path))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistEnd {
    pub twist: TwoTermTwist,
    pub p_degree: i64,
    pub dims: BTreeMap<i64, usize>,
    #[serde(skip)]
    pub algebra: Presentation<Q>,
}

/// Cohomology of the endomorphism complex in `window`, identified with
/// `k[p]/(p²)` where `p` is the class of `(0 0; e_j 0)`.
pub fn end_of_two_term_twist(p: &Presentation<Q>, vertex: usize, window: (i64, i64)) -> Result<TwistEnd, AlgebraError> {
    let reach = window.0.abs().max(window.1.abs()) as usize;
    let mut cx = TwistComplex::new(p, vertex, 2 * reach + 4)?;
    let mut dims = BTreeMap::new();
    for n in window.0..=window.1 {
        let h = cx.cohomology(n)?;
        if h > 0 {
            dims.insert(n, h);
        }
    }
    let p_degree = cx.twist.shift;
    let e = Path::vertex(vertex);
    let identity = [(1u8, 1u8, e.clone()), (2, 2, e.clone())];
    let d_id = from_entries(
        identity.iter().map(|x| cx.differential(x)).collect::<Result<Vec<_>, _>>()?.into_iter().flatten().collect(),
    );
    let gen = cx.lower_power(0)?;
    if !d_id.is_empty() || !cx.is_cocycle(&gen)? || cx.is_exact(&gen)? {
        return Err(AlgebraError::Contract("identity and (0 0; e 0) do not give independent classes".into()));
    }
    let mut expected = BTreeMap::new();
    for d in [0, p_degree] {
        if (window.0..=window.1).contains(&d) {
            *expected.entry(d).or_insert(0) += 1;
        }
    }
    if dims != expected {
        return Err(AlgebraError::Contract(format!("endomorphism cohomology {dims:?}, expected {expected:?}")));
    }
    // (0 0; e 0)² = 0 already on the chain level.
    Ok(TwistEnd { twist: cx.twist.clone(), p_degree, dims, algebra: dual_numbers(p_degree) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use quiver_core::fixtures::polynomial;

    #[test]
    fn local_endomorphisms() {
        for (deg, expect) in [(1, 0), (2, -1), (-1, 2), (3, -2)] {
            let a = polynomial::<Q>(deg);
            let end = end_of_two_term_twist(&a, 0, (-6, 6)).unwrap();
            assert_eq!(end.p_degree, expect);
            assert_eq!(end.algebra.quiver().arrow_info(0).deg, expect);
            assert_eq!(end.dims.values().sum::<usize>(), 2);
        }
    }

    #[test]
    fn lower_powers_are_exact() {
        for deg in [1, 2] {
            let a = polynomial::<Q>(deg);
            let mut cx = TwistComplex::new(&a, 0, 12).unwrap();
            for k in 1..6 {
                let e = cx.lower_power(k).unwrap();
                assert!(cx.is_cocycle(&e).unwrap());
                assert!(cx.is_exact(&e).unwrap(), "q^{k}");
            }
            let e = cx.lower_power(0).unwrap();
            assert!(!cx.is_exact(&e).unwrap());
        }
    }

    #[test]
    fn degree_zero_loop_is_refused() {
        assert!(TwistComplex::new(&polynomial::<Q>(0), 0, 4).is_err());
    }
}
