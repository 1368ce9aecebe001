//! JSON presentation format. Paths are written in composition order and
//! coefficients as `"num/den"` strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::AlgebraError;
use crate::presentation::Presentation;
use crate::quiver::GradedQuiver;
use crate::scalar::Field;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ArrowJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
    pub deg: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RewriteJson {
    pub lhs: Vec<String>,
    pub rhs: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PresentationJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
    #[serde(default)]
    pub rewrites: Vec<RewriteJson>,
    #[serde(default)]
    pub differential: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

pub fn element_to_json<K: Field>(q: &GradedQuiver, e: &Element<K>) -> BTreeMap<String, String> {
    e.terms().map(|(p, c)| (q.render(p), c.to_exact_string())).collect()
}

pub fn element_from_json<K: Field>(q: &GradedQuiver, m: &BTreeMap<String, String>) -> Result<Element<K>, AlgebraError> {
    let mut e = Element::zero();
    for (p, c) in m {
        let path = q.parse_path(p)?;
        let c = K::parse_exact(c).ok_or_else(|| AlgebraError::Invalid(format!("bad coefficient {c}")))?;
        e.add_term(path, c);
    }
    Ok(e)
}

pub fn to_json<K: Field>(p: &Presentation<K>) -> PresentationJson {
    let q = p.quiver();
    PresentationJson {
        vertices: q.vertices().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowJson {
                id: a.name.clone(),
                src: q.vertex_name(a.src).to_string(),
                tgt: q.vertex_name(a.tgt).to_string(),
                deg: a.deg,
            })
            .collect(),
        relations: p
            .relations()
            .iter()
            .map(|&(f, t)| [q.arrow_info(t).name.clone(), q.arrow_info(f).name.clone()])
            .collect(),
        rewrites: p
            .rewrites()
            .iter()
            .map(|r| RewriteJson {
                lhs: r.lhs.arrows.iter().rev().map(|&a| q.arrow_info(a).name.clone()).collect(),
                rhs: element_to_json(q, &r.rhs),
            })
            .collect(),
        differential: p
            .differential()
            .iter()
            .map(|(&x, v)| (q.arrow_info(x).name.clone(), element_to_json(q, v)))
            .collect(),
        meta: p.meta.clone(),
    }
}

pub fn from_json<K: Field>(j: &PresentationJson) -> Result<Presentation<K>, AlgebraError> {
    let mut q = GradedQuiver::new();
    for v in &j.vertices {
        q.add_vertex(v)?;
    }
    for a in &j.arrows {
        q.add_arrow(&a.id, &a.src, &a.tgt, a.deg)?;
    }
    let mut p = Presentation::new(q);
    for [t, f] in &j.relations {
        p.add_relation_names([t.as_str(), f.as_str()])?;
    }
    for r in &j.rewrites {
        let names: Vec<&str> = r.lhs.iter().map(String::as_str).collect();
        let lhs = p.quiver().path_from_names(&names)?;
        let rhs = element_from_json(p.quiver(), &r.rhs)?;
        p.add_rewrite(lhs, rhs);
    }
    for (x, v) in &j.differential {
        let id = p.quiver().arrow(x)?;
        let e = element_from_json(p.quiver(), v)?;
        p.set_differential(id, e);
    }
    p.meta = j.meta.clone();
    Ok(p)
}

pub fn parse_presentation<K: Field>(text: &str) -> Result<Presentation<K>, AlgebraError> {
    let j: PresentationJson = serde_json::from_str(text).map_err(|e| AlgebraError::Invalid(e.to_string()))?;
    from_json(&j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn round_trip() {
        let text = r#"{
            "vertices": ["1", "2", "3"],
            "arrows": [{"id": "p", "src": "1", "tgt": "2", "deg": 0},
                       {"id": "q", "src": "1", "tgt": "2", "deg": 1},
                       {"id": "x", "src": "2", "tgt": "2", "deg": 0},
                       {"id": "r", "src": "2", "tgt": "3", "deg": 0}],
            "relations": [["r", "q"]],
            "rewrites": [{"lhs": ["x", "x"], "rhs": {"e_2": "1/2"}}],
            "differential": {"p": {"q": "-1"}}
        }"#;
        let mut p: Presentation<BigRational> = parse_presentation(text).unwrap();
        let rep = p.validate();
        assert!(rep.ok(), "{:?}", rep);
        let j = to_json(&p);
        let back: Presentation<BigRational> = from_json(&j).unwrap();
        assert_eq!(to_json(&back), j);
        assert_eq!(j.rewrites[0].rhs["e_2"], "1/2");
        assert_eq!(j.differential["p"]["q"], "-1");
    }
}
