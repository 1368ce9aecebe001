//! The DG gentle algebra of the standard dissection.

use std::collections::BTreeMap;

use hochschild::{StandardLayout, UnitKind, UnitLayout};
use quiver_core::{is_dg_gentle, GradedQuiver, Presentation, Q};

use crate::surface::{validate_surface, StopConfig, SurfaceData};

struct Unit {
    layout: UnitLayout,
    entry: String,
    exit: String,
    thread: Vec<String>,
    walk: Vec<String>,
    connector: String,
}

struct Builder {
    q: GradedQuiver,
    loops: Vec<String>,
    diff: Vec<(String, String)>,
}

impl Builder {
    fn vertex(&mut self, name: String) -> String {
        self.q.add_vertex(&name).expect("fresh vertex");
        name
    }

    fn arrow(&mut self, name: String, src: &str, tgt: &str, deg: i64) -> String {
        self.q.add_arrow(&name, src, tgt, deg).expect("fresh arrow");
        name
    }
}

fn unit(b: &mut Builder, kind: UnitKind, index: usize, component: Option<usize>, winding: i64, stops: usize) -> Unit {
    let mut arrows = BTreeMap::new();
    let (tag, entry, exit, thread, walk, vertices);
    match kind {
        UnitKind::Genus => {
            tag = "I";
            let a = b.vertex(format!("g{index}a"));
            let c = b.vertex(format!("g{index}b"));
            let p = b.arrow(format!("pI_{index}"), &a, &c, 0);
            let q = b.arrow(format!("qI_{index}"), &c, &a, 0);
            let r = b.arrow(format!("rI_{index}"), &a, &c, 0);
            arrows.insert("p".into(), p.clone());
            arrows.insert("q".into(), q.clone());
            arrows.insert("r".into(), r.clone());
            thread = vec![p.clone(), q.clone(), r.clone()];
            walk = vec![r, q, p];
            vertices = vec![a.clone(), c.clone()];
            (entry, exit) = (a, c);
        }
        UnitKind::Orbifold => {
            tag = "II";
            let a = b.vertex(format!("o{index}a"));
            let c = b.vertex(format!("o{index}b"));
            let p = b.arrow(format!("pII_{index}"), &a, &c, 0);
            let q = b.arrow(format!("qII_{index}"), &a, &c, 1);
            b.diff.push((p.clone(), q.clone()));
            arrows.insert("p".into(), p.clone());
            arrows.insert("q".into(), q.clone());
            thread = vec![q];
            walk = vec![p];
            vertices = vec![a.clone(), c.clone()];
            (entry, exit) = (a, c);
        }
        UnitKind::Stopped => {
            tag = "III";
            let a = b.vertex(format!("b{index}a"));
            let c = b.vertex(format!("b{index}b"));
            let q = b.arrow(format!("qIII_{index}"), &a, &c, winding);
            arrows.insert("q".into(), q.clone());
            let mut chain = Vec::new();
            let mut at = a.clone();
            let mut vs = vec![a.clone()];
            for t in 1..=stops {
                let next = if t == stops { c.clone() } else { b.vertex(format!("b{index}c{t}")) };
                if t < stops {
                    vs.push(next.clone());
                }
                let p = b.arrow(format!("pIII_{index}_{t}"), &at, &next, 0);
                arrows.insert(format!("p{t}"), p.clone());
                chain.push(p);
                at = next;
            }
            vs.push(c.clone());
            thread = vec![q];
            walk = chain;
            vertices = vs;
            (entry, exit) = (a, c);
        }
        UnitKind::FullStop => {
            tag = "IV";
            let c = b.vertex(format!("f{index}"));
            let p = b.arrow(format!("pIV_{index}"), &c, &c, 1 - winding);
            b.loops.push(p.clone());
            arrows.insert("p".into(), p.clone());
            thread = vec![];
            walk = vec![p];
            vertices = vec![c.clone()];
            (entry, exit) = (c.clone(), c);
        }
        UnitKind::Stopless => {
            tag = "V";
            let c = b.vertex(format!("n{index}"));
            let q = b.arrow(format!("qV_{index}"), &c, &c, winding);
            arrows.insert("q".into(), q.clone());
            thread = vec![q];
            walk = vec![];
            vertices = vec![c.clone()];
            (entry, exit) = (c.clone(), c);
        }
    }
    Unit {
        layout: UnitLayout { kind, index, component, winding, stops, arrows, vertices },
        entry,
        exit,
        thread,
        walk,
        connector: format!("u{tag}_{index}"),
    }
}

/// The standard-dissection DG gentle algebra, with its layout in `meta["standard_layout"]`.
pub fn standard_algebra(s: &SurfaceData) -> Result<Presentation<Q>, String> {
    let report = validate_surface(s);
    if !report.ok() {
        return Err(report.errors.join("; "));
    }
    let d0 = s.distinguished_index().expect("validated surface has a stopped component");
    let StopConfig::Stops(s0) = s.boundary[d0].stops else { unreachable!("validated distinguished component") };

    let mut b = Builder { q: GradedQuiver::new(), loops: Vec::new(), diff: Vec::new() };
    let mut units = Vec::new();
    for i in 1..=s.genus {
        units.push(unit(&mut b, UnitKind::Genus, i, None, 0, 0));
    }
    for i in 1..=s.orbifold_points {
        units.push(unit(&mut b, UnitKind::Orbifold, i, None, 0, 0));
    }
    let mut counters = [0usize; 3];
    let kinds = [
        (UnitKind::Stopped, 0usize),
        (UnitKind::FullStop, 1),
        (UnitKind::Stopless, 2),
    ];
    for (kind, slot) in kinds {
        for (c, bd) in s.boundary.iter().enumerate() {
            let stops = match (kind, bd.stops) {
                (UnitKind::Stopped, StopConfig::Stops(n)) if c != d0 => n,
                (UnitKind::FullStop, StopConfig::Full) | (UnitKind::Stopless, StopConfig::None) => 0,
                _ => continue,
            };
            counters[slot] += 1;
            units.push(unit(&mut b, kind, counters[slot], Some(c), bd.winding, stops));
        }
    }

    let mut thread = Vec::new();
    let mut walk = Vec::new();
    for i in 0..units.len() {
        thread.extend(units[i].thread.iter().cloned());
        walk.extend(units[i].walk.iter().cloned());
        if i + 1 < units.len() {
            let (from, to, name) = (units[i].exit.clone(), units[i + 1].entry.clone(), units[i].connector.clone());
            let u = b.arrow(name, &from, &to, 0);
            units[i].layout.arrows.insert("u".into(), u.clone());
            thread.push(u.clone());
            walk.push(u);
        }
    }
    let core_len = thread.len();
    let base_vertex;
    if let Some(last) = units.last() {
        base_vertex = last.exit.clone();
        let mut at = last.exit.clone();
        for t in 1..s0 {
            let next = b.vertex(format!("s{t}"));
            thread.push(b.arrow(format!("pVI_{t}"), &at, &next, 0));
            at = next;
        }
    } else {
        let first = b.vertex(if s0 == 1 { "s0".into() } else { "s1".into() });
        base_vertex = first.clone();
        let mut at = first;
        for t in 2..s0 {
            let next = b.vertex(format!("s{t}"));
            thread.push(b.arrow(format!("pVI_{t}"), &at, &next, 0));
            at = next;
        }
    }
    // With an empty thread the overlap sits at the entry of the only unit.
    let base_vertex = if thread.is_empty() { units.first().map(|u| u.entry.clone()).unwrap_or(base_vertex) } else { base_vertex };

    let q = b.q;
    // Winding of ∂0 forced by the quiver, ignoring the stop chain.
    let w0 = {
        let deg = |names: &[String]| names.iter().map(|n| q.arrow_info(q.arrow(n).unwrap()).deg).sum::<i64>();
        deg(&walk) - deg(&thread[..core_len]) + core_len as i64 - 1
    };
    let mut p = Presentation::new(q);
    for pair in thread.windows(2) {
        p.add_relation_names([pair[1].as_str(), pair[0].as_str()]).map_err(|e| e.to_string())?;
    }
    for l in &b.loops {
        p.add_relation_names([l.as_str(), l.as_str()]).map_err(|e| e.to_string())?;
    }
    for (x, y) in &b.diff {
        let id = p.quiver().arrow(x).map_err(|e| e.to_string())?;
        let value = p.elem(&[y.as_str()]);
        p.set_differential(id, value);
    }
    let layout = StandardLayout {
        units: units.into_iter().map(|u| u.layout).collect(),
        thread,
        walk,
        base_vertex,
        distinguished: d0,
        s0,
        w0,
    };
    layout.write(&mut p);
    p.meta.insert("surface".into(), s.to_json());
    let rep = p.validate();
    if !rep.ok() || !is_dg_gentle(&p) {
        return Err(format!("generated presentation failed validation: {rep:?}"));
    }
    Ok(p)
}
