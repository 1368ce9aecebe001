use std::collections::BTreeSet;

use quiver_core::{Field, Presentation};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    ProperNotSmooth,
    SmoothNotProper,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopWitness {
    SquareZero(String),
    RelationFree(String),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub vertex: usize,
    pub name: String,
    pub kind: VertexKind,
    pub witness: LoopWitness,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub vertices: Vec<VertexClass>,
    /// Smooth but not proper.
    pub j: BTreeSet<usize>,
    /// Proper but not smooth.
    pub k: BTreeSet<usize>,
}

/// Reads the class of each vertex off the loops at it.
pub fn classify_vertices<K: Field>(p: &Presentation<K>) -> Classification {
    let q = p.quiver();
    let mut out = Classification { vertices: Vec::new(), j: BTreeSet::new(), k: BTreeSet::new() };
    for v in 0..q.num_vertices() {
        let mut witness = LoopWitness::None;
        for a in q.outgoing(v) {
            let info = q.arrow_info(a);
            if info.tgt != v {
                continue;
            }
            witness = if p.is_zero_pair(a, a) {
                LoopWitness::SquareZero(info.name.clone())
            } else {
                LoopWitness::RelationFree(info.name.clone())
            };
            break;
        }
        let kind = match witness {
            LoopWitness::SquareZero(_) => {
                out.k.insert(v);
                VertexKind::ProperNotSmooth
            }
            LoopWitness::RelationFree(_) => {
                out.j.insert(v);
                VertexKind::SmoothNotProper
            }
            LoopWitness::None => VertexKind::Both,
        };
        out.vertices.push(VertexClass { vertex: v, name: q.vertex_name(v).to_string(), kind, witness });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use quiver_core::fixtures::{dual_numbers, local_model, polynomial};
    use quiver_core::Q;

    #[test]
    fn three_classes() {
        let c = classify_vertices(&polynomial::<Q>(1));
        assert_eq!(c.vertices[0].kind, VertexKind::SmoothNotProper);
        assert_eq!(c.j.len(), 1);
        let c = classify_vertices(&dual_numbers::<Q>(0));
        assert_eq!(c.vertices[0].kind, VertexKind::ProperNotSmooth);
        assert_eq!(c.k.len(), 1);
        let c = classify_vertices(&local_model::<Q>());
        assert!(c.vertices.iter().all(|v| v.kind == VertexKind::Both && v.witness == LoopWitness::None));
        assert!(c.j.is_empty() && c.k.is_empty());
    }
}
