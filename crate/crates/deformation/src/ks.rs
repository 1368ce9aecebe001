//! The Kodaira-Spencer map of a family at a point, as bar-complex classes.

use hochschild::{bar_classes, bar_oracle_hh, BarCochain, BarTruncation};
use num_traits::Zero;
use quiver_core::{sign, AlgebraError, Field, Path, Presentation, Q};
use serde::Serialize;

use crate::family::{evaluate_fiber, DeformationFamily};
use crate::DeformError;

#[derive(Clone, Debug, Serialize)]
pub struct KodairaSpencerMatrix {
    pub lambda: Vec<String>,
    pub labels: Vec<String>,
    pub cocycle: Vec<bool>,
    pub coboundary: Vec<bool>,
    /// Rank of the span of the `∂/∂x_i` classes in `HH²` of the fiber.
    pub rank: usize,
    pub hh2: Option<usize>,
    pub stable: bool,
    pub truncation: BarTruncation,
}

impl KodairaSpencerMatrix {
    pub fn is_surjective(&self) -> bool {
        self.stable && self.hh2 == Some(self.rank)
    }
}

/// `μ¹` on arity one and the signed product `(-1)^{|a_1|} a_1 a_2` on arity two.
fn structure_cochain(p: &Presentation<Q>, basis: &[Path]) -> Result<BarCochain<Q>, AlgebraError> {
    let q = p.quiver();
    let mut out = BarCochain::new();
    for x in basis {
        for (y, c) in p.d_path(x)?.terms() {
            out.insert((vec![x.clone()], y.clone()), c.clone());
        }
    }
    for a1 in basis {
        let s: Q = sign(q.degree(a1));
        for a2 in basis.iter().filter(|a2| a2.tgt == a1.src) {
            for (y, c) in p.mul_paths(a1, a2)?.terms() {
                out.insert((vec![a1.clone(), a2.clone()], y.clone()), s.clone() * c.clone());
            }
        }
    }
    Ok(out)
}

fn get(m: &BarCochain<Q>, k: &(Vec<Path>, Path)) -> Q {
    m.get(k).cloned().unwrap_or_else(Q::zero)
}

/// Column `i` is `∂/∂x_i` of the structure maps at `λ`, from fibers at `λ + t e_i`, `t = 0..3`.
pub fn kodaira_spencer(f: &DeformationFamily, lambda: &[Q], tr: BarTruncation) -> Result<KodairaSpencerMatrix, DeformError> {
    let base = evaluate_fiber(f, lambda)?;
    let basis: Vec<Path> = base.irreducible_paths(tr.path_len).into_iter().filter(|x| !x.is_idempotent()).collect();
    let mut columns = Vec::new();
    for i in 0..f.dim() {
        let samples = (0..4)
            .map(|t| {
                let mut l = lambda.to_vec();
                l[i] = l[i].clone() + Q::from_i64(t);
                let fiber = evaluate_fiber(f, &l)?;
                Ok(structure_cochain(&fiber, &basis)?)
            })
            .collect::<Result<Vec<_>, DeformError>>()?;
        let mut keys: Vec<_> = samples.iter().flat_map(|m| m.keys().cloned()).collect();
        keys.sort();
        keys.dedup();
        let mut col = BarCochain::new();
        for k in keys {
            let y: Vec<Q> = samples.iter().map(|m| get(m, &k)).collect();
            if y[3] != y[0].clone() - Q::from_i64(3) * y[1].clone() + Q::from_i64(3) * y[2].clone() {
                return Err(DeformError::Algebra(AlgebraError::Contract(format!("structure maps are not quadratic in x{}", i + 1))));
            }
            let d = (Q::from_i64(-3) * y[0].clone() + Q::from_i64(4) * y[1].clone() - y[2].clone()) / Q::from_i64(2);
            if !d.is_zero() {
                col.insert(k, d);
            }
        }
        columns.push(col);
    }
    let classes = bar_classes(&base, 2, &columns, tr)?;
    let hh = bar_oracle_hh(&base, 2, tr)?;
    Ok(KodairaSpencerMatrix {
        lambda: lambda.iter().map(Field::to_exact_string).collect(),
        labels: f.terms.iter().map(|t| t.label.clone()).collect(),
        cocycle: classes.cocycle,
        coboundary: classes.coboundary,
        rank: classes.rank,
        hh2: hh.dimension,
        stable: classes.stable && hh.stable,
        truncation: tr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::build_family;
    use surface_dict::{standard_algebra, Boundary, StopConfig, SurfaceData};

    #[test]
    fn cylinder_ks() {
        for w in [1, 2] {
            let s = SurfaceData::new(0, 0, vec![Boundary::new(StopConfig::Stops(1), -w), Boundary::new(StopConfig::Full, w)]);
            let b = standard_algebra(&s).unwrap();
            let f = build_family(&b, &s).unwrap();
            let tr = BarTruncation::new(3, 4);
            let k = kodaira_spencer(&f, &[Q::from_i64(0)], tr).unwrap();
            assert_eq!((k.cocycle.clone(), k.coboundary.clone(), k.rank, k.hh2), (vec![true], vec![false], 1, Some(1)), "w={w}");
            let k = kodaira_spencer(&f, &[Q::from_i64(4)], tr).unwrap();
            assert_eq!((k.coboundary.clone(), k.rank, k.hh2), (vec![true], 0, Some(0)), "w={w}");
        }
    }
}
