//! Standard cocycle families of a standard-dissection algebra.

use std::collections::BTreeMap;

use quiver_core::{AlgebraError, Field, Path, Presentation};
use serde::{Deserialize, Serialize};

use crate::cochain::Cochain;
use crate::overlap::OverlapData;
use crate::reduced::ReducedComplex;

pub const LAYOUT_KEY: &str = "standard_layout";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitKind {
    Genus,
    Orbifold,
    Stopped,
    FullStop,
    Stopless,
}

/// One building block of the standard quiver, with its arrows by role
/// (`p`, `q`, `r`, `u`, and `p1..ps` for stop chains).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitLayout {
    pub kind: UnitKind,
    pub index: usize,
    pub component: Option<usize>,
    pub winding: i64,
    pub stops: usize,
    pub arrows: BTreeMap<String, String>,
    pub vertices: Vec<String>,
}

impl UnitLayout {
    pub fn arrow(&self, role: &str) -> Option<&str> {
        self.arrows.get(role).map(String::as_str)
    }
}

/// Recorded by the generator in `meta["standard_layout"]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StandardLayout {
    pub units: Vec<UnitLayout>,
    /// Arrows of the maximal overlap, in traversal order.
    pub thread: Vec<String>,
    /// Arrows of the parallel path, in traversal order.
    pub walk: Vec<String>,
    /// Vertex standing in for an empty thread.
    pub base_vertex: String,
    pub distinguished: usize,
    pub s0: usize,
    pub w0: i64,
}

impl StandardLayout {
    pub fn read<K: Field>(p: &Presentation<K>) -> Result<Self, AlgebraError> {
        let text = p
            .meta
            .get(LAYOUT_KEY)
            .ok_or_else(|| AlgebraError::Invalid("presentation carries no standard layout".into()))?;
        serde_json::from_str(text).map_err(|e| AlgebraError::Invalid(format!("bad standard layout: {e}")))
    }

    pub fn write<K: Field>(&self, p: &mut Presentation<K>) {
        p.meta.insert(LAYOUT_KEY.into(), serde_json::to_string(self).expect("layout serializes"));
    }
}

#[derive(Clone, Debug)]
pub struct LabeledCocycle<K> {
    pub label: String,
    pub component: Option<usize>,
    pub cocycle: Cochain<K>,
}

fn traversal<K: Field>(p: &Presentation<K>, names: &[String], base: &str) -> Result<Path, AlgebraError> {
    let q = p.quiver();
    if names.is_empty() {
        return Ok(Path::vertex(q.vertex(base)?));
    }
    let ids = names.iter().map(|n| q.arrow(n)).collect::<Result<Vec<_>, _>>()?;
    q.path_from_ids(ids)
}

fn arrow_path<K: Field>(p: &Presentation<K>, u: &UnitLayout, role: &str) -> Result<Path, AlgebraError> {
    let name = u
        .arrow(role)
        .ok_or_else(|| AlgebraError::Invalid(format!("unit {:?} {} has no arrow {role}", u.kind, u.index)))?;
    Ok(p.quiver().arrow_path(p.quiver().arrow(name)?))
}

/// The families φ^III, φ^IV, φ^V, φ^VI, each checked to be a δ-cocycle.
pub fn extract_standard_cocycles<K: Field>(p: &Presentation<K>) -> Result<Vec<LabeledCocycle<K>>, AlgebraError> {
    let layout = StandardLayout::read(p)?;
    let cx = ReducedComplex::new(p)?;
    let mut out = Vec::new();
    for u in &layout.units {
        let cocycle = match (u.kind, u.winding, u.stops) {
            (UnitKind::Stopped, 1, 1) => Cochain::basis(arrow_path(p, u, "p1")?, arrow_path(p, u, "q")?),
            (UnitKind::FullStop, 2, _) => {
                let x = arrow_path(p, u, "p")?;
                let e = Path::vertex(x.src);
                Cochain::basis(x, e)
            }
            (UnitKind::FullStop, 1, _) => {
                let x = arrow_path(p, u, "p")?;
                let e = Path::vertex(x.src);
                let xx = x.after(&x).expect("loop");
                Cochain::basis(xx, e)
            }
            (UnitKind::Stopless, w @ (1 | 2), _) => {
                let x = arrow_path(p, u, "q")?;
                let v = if w == 1 { x.after(&x).expect("loop") } else { x.clone() };
                Cochain::basis(Path::vertex(x.src), v)
            }
            _ => continue,
        };
        let label = match u.kind {
            UnitKind::Stopped => format!("III_{}", u.index),
            UnitKind::FullStop => format!("IV_{}", u.index),
            _ => format!("V_{}", u.index),
        };
        out.push(LabeledCocycle { label, component: u.component, cocycle });
    }
    if layout.s0 == 1 && layout.w0 == 1 {
        let w = traversal(p, &layout.thread, &layout.base_vertex)?;
        let v = traversal(p, &layout.walk, &layout.base_vertex)?;
        out.push(LabeledCocycle { label: "VI".into(), component: Some(layout.distinguished), cocycle: Cochain::basis(w, v) });
    }
    for c in &out {
        let d = cx.delta(&c.cocycle)?;
        if !d.is_zero() {
            return Err(AlgebraError::Contract(format!("standard cochain {} is not a cocycle", c.label)));
        }
        for (w, v, _) in c.cocycle.terms() {
            if cx.total_degree(w, v) != 2 || !w.parallel(v) {
                return Err(AlgebraError::Contract(format!("standard cochain {} has the wrong shape", c.label)));
            }
        }
    }
    Ok(out)
}

/// No term of `c` sits on a proper sub-overlap of a longer overlap (full-relation cycles excepted).
pub fn is_killoverlap_normal<K: Field>(p: &Presentation<K>, c: &Cochain<K>) -> bool {
    let data = OverlapData::new(p);
    c.support().all(|w| !data.is_interior(p, w))
}
