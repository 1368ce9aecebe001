use std::collections::BTreeMap;

use hochschild::{StandardLayout, UnitKind};
use quiver_core::{Field, Presentation, Q};
use serde::Serialize;
use surface_dict::{standard_algebra, toggle_full_stops, StopConfig, SurfaceData};
use thiserror::Error;

use crate::classify::classify_vertices;
use crate::iso::find_isomorphism;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualError {
    #[error("not a standard-dissection algebra: {0}")]
    NotStandard(String),
    #[error("presentation was not generated from this surface")]
    SurfaceMismatch,
    #[error("not locally proper: degree {degree} is infinite dimensional")]
    NotLocallyProper { degree: i64 },
    #[error("vertex {0} is neither smooth-not-proper nor proper-not-smooth")]
    NotDualizable(String),
    #[error("vertex {0} carries a degree-1 square-zero loop; its dual is a power series ring")]
    PowerSeries(String),
    #[error("algebra is not smooth: vertex {0} carries a square-zero loop")]
    NotSmooth(String),
    #[error("surface error: {0}")]
    Surface(String),
    #[error("contract violated: {0}")]
    Contract(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToggledLoop {
    pub component: usize,
    pub old_degree: i64,
    pub new_degree: i64,
}

#[derive(Clone, Debug)]
pub struct WeakDual {
    pub presentation: Presentation<Q>,
    pub surface: SurfaceData,
    pub toggled: Vec<ToggledLoop>,
}

const DEGREE_WINDOW: i64 = 8;

/// Finite dimension in each degree of `[-8, 8]`, detected by comparing path
/// counts at two length bounds; returns the first degree that keeps growing.
pub fn locally_proper<K: Field>(p: &Presentation<K>) -> Result<(), i64> {
    let len = (2 * p.quiver().num_arrows() + 2).max(DEGREE_WINDOW as usize + 2);
    let window = (-DEGREE_WINDOW, DEGREE_WINDOW);
    let a = p.graded_dimension(window, len);
    let b = p.graded_dimension(window, 2 * len);
    for d in window.0..=window.1 {
        if a.counts.get(&d) != b.counts.get(&d) {
            return Err(d);
        }
    }
    Ok(())
}

/// No nonzero path is longer than the number of arrows.
pub fn is_proper<K: Field>(p: &Presentation<K>) -> bool {
    !p.has_paths_beyond(p.quiver().num_arrows())
}

fn loop_unit_component(layout: &StandardLayout, vertex: &str) -> Option<usize> {
    layout.units.iter().find_map(|u| match u.kind {
        UnitKind::Stopless | UnitKind::FullStop if u.vertices.iter().any(|v| v == vertex) => u.component,
        _ => None,
    })
}

fn loop_degrees(p: &Presentation<Q>) -> Result<BTreeMap<usize, i64>, DualError> {
    let layout = StandardLayout::read(p).map_err(|e| DualError::NotStandard(e.to_string()))?;
    let q = p.quiver();
    let mut out = BTreeMap::new();
    for u in &layout.units {
        let role = match u.kind {
            UnitKind::Stopless => "q",
            UnitKind::FullStop => "p",
            _ => continue,
        };
        let (Some(c), Some(name)) = (u.component, u.arrow(role)) else { continue };
        let id = q.arrow(name).map_err(|e| DualError::NotStandard(e.to_string()))?;
        out.insert(c, q.arrow_info(id).deg);
    }
    Ok(out)
}

/// `A^{∨_L}` for `A = standard_algebra(s)` and `L` a set of loop vertices.
pub fn weak_dual(p: &Presentation<Q>, s: &SurfaceData, l: &[usize]) -> Result<WeakDual, DualError> {
    let layout = StandardLayout::read(p).map_err(|e| DualError::NotStandard(e.to_string()))?;
    if p.meta.get("surface") != Some(&s.to_json()) {
        return Err(DualError::SurfaceMismatch);
    }
    locally_proper(p).map_err(|degree| DualError::NotLocallyProper { degree })?;
    let classes = classify_vertices(p);
    let q = p.quiver();
    let mut components = Vec::new();
    for &v in l {
        let name = q.vertex_name(v);
        if !classes.j.contains(&v) && !classes.k.contains(&v) {
            return Err(DualError::NotDualizable(name.to_string()));
        }
        if classes.k.contains(&v) && q.outgoing(v).any(|a| q.arrow_info(a).tgt == v && q.arrow_info(a).deg == 1) {
            return Err(DualError::PowerSeries(name.to_string()));
        }
        let c = loop_unit_component(&layout, name).ok_or_else(|| DualError::NotDualizable(name.to_string()))?;
        if !components.contains(&c) {
            components.push(c);
        }
    }
    components.sort_unstable();
    let surface = toggle_full_stops(s, &components).map_err(DualError::Surface)?;
    let presentation = standard_algebra(&surface).map_err(DualError::Surface)?;
    let (before, after) = (loop_degrees(p)?, loop_degrees(&presentation)?);
    let mut toggled = Vec::new();
    for c in components {
        let (old_degree, new_degree) = (before[&c], after[&c]);
        if new_degree != 1 - old_degree {
            return Err(DualError::Contract(format!("component {c}: loop degree {old_degree} became {new_degree}")));
        }
        toggled.push(ToggledLoop { component: c, old_degree, new_degree });
    }
    Ok(WeakDual { presentation, surface, toggled })
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulReport {
    pub toggled: SurfaceData,
    pub koszul_surface: SurfaceData,
    pub matches: bool,
    pub involutive: bool,
    /// With no smooth-not-proper vertex the weak dual is the algebra itself.
    pub identity_when_proper: Option<bool>,
}

fn swap_stops(s: &SurfaceData) -> SurfaceData {
    let mut out = s.clone();
    for b in &mut out.boundary {
        b.stops = match b.stops {
            StopConfig::Full => StopConfig::None,
            StopConfig::None => StopConfig::Full,
            other => other,
        };
    }
    out
}

/// Surface-level check that dualizing at every vertex is the Koszul recipe.
pub fn koszul_relation_check(p: &Presentation<Q>, s: &SurfaceData) -> Result<KoszulReport, DualError> {
    let layout = StandardLayout::read(p).map_err(|e| DualError::NotStandard(e.to_string()))?;
    let classes = classify_vertices(p);
    if let Some(&v) = classes.k.iter().next() {
        return Err(DualError::NotSmooth(p.quiver().vertex_name(v).to_string()));
    }
    let mut components: Vec<usize> = classes
        .j
        .iter()
        .filter_map(|&v| loop_unit_component(&layout, p.quiver().vertex_name(v)))
        .collect();
    components.sort_unstable();
    components.dedup();
    let toggled = toggle_full_stops(s, &components).map_err(DualError::Surface)?;
    let koszul_surface = swap_stops(s);
    let involutive = toggle_full_stops(&toggled, &components).map_err(DualError::Surface)? == *s;
    let identity_when_proper = if classes.j.is_empty() {
        let d = weak_dual(p, s, &[])?;
        Some(find_isomorphism(p, &d.presentation).is_some())
    } else {
        None
    };
    Ok(KoszulReport { matches: toggled == koszul_surface, toggled, koszul_surface, involutive, identity_when_proper })
}
