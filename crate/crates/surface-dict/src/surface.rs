use serde::{Deserialize, Serialize};

/// Stops on one boundary component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "StopsJson", into = "StopsJson")]
pub enum StopConfig {
    Stops(usize),
    Full,
    None,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum StopsJson {
    Count(usize),
    Word(String),
}

impl TryFrom<StopsJson> for StopConfig {
    type Error = String;

    fn try_from(j: StopsJson) -> Result<Self, String> {
        match j {
            StopsJson::Count(0) => Err("a stop count must be at least 1".into()),
            StopsJson::Count(s) => Ok(StopConfig::Stops(s)),
            StopsJson::Word(w) if w == "none" => Ok(StopConfig::None),
            StopsJson::Word(w) if w == "full" => Ok(StopConfig::Full),
            StopsJson::Word(w) => Err(format!("unknown stop configuration {w:?}")),
        }
    }
}

impl From<StopConfig> for StopsJson {
    fn from(s: StopConfig) -> Self {
        match s {
            StopConfig::Stops(n) => StopsJson::Count(n),
            StopConfig::Full => StopsJson::Word("full".into()),
            StopConfig::None => StopsJson::Word("none".into()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Boundary {
    pub stops: StopConfig,
    pub winding: i64,
}

impl Boundary {
    pub fn new(stops: StopConfig, winding: i64) -> Self {
        Boundary { stops, winding }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceData {
    pub genus: usize,
    pub orbifold_points: usize,
    pub boundary: Vec<Boundary>,
    /// Component carrying the chain of stops on `∂0`; defaults to the first stopped one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinguished: Option<usize>,
}

impl SurfaceData {
    pub fn new(genus: usize, orbifold_points: usize, boundary: Vec<Boundary>) -> Self {
        SurfaceData { genus, orbifold_points, boundary, distinguished: None }
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("surface serializes")
    }

    pub fn distinguished_index(&self) -> Option<usize> {
        match self.distinguished {
            Some(i) => Some(i),
            None => self.boundary.iter().position(|b| matches!(b.stops, StopConfig::Stops(_))),
        }
    }

    /// Right-hand side of the index identity `Σ w = 4g - 4 + 2b + k`.
    pub fn index_sum(&self) -> i64 {
        4 * self.genus as i64 - 4 + 2 * self.boundary.len() as i64 + self.orbifold_points as i64
    }

    pub fn winding_sum(&self) -> i64 {
        self.boundary.iter().map(|b| b.winding).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ContributionClass {
    III1,
    IV1,
    IV2,
    V1,
    V2,
    None,
}

impl ContributionClass {
    pub fn of(b: &Boundary) -> Self {
        match (b.stops, b.winding) {
            (StopConfig::Stops(1), 1) => ContributionClass::III1,
            (StopConfig::Full, 1) => ContributionClass::IV1,
            (StopConfig::Full, 2) => ContributionClass::IV2,
            (StopConfig::None, 1) => ContributionClass::V1,
            (StopConfig::None, 2) => ContributionClass::V2,
            _ => ContributionClass::None,
        }
    }

    pub fn contributes(self) -> bool {
        self != ContributionClass::None
    }

    /// Partial compactification turns these into an orbifold point rather than a smooth cap.
    pub fn orbifold_cap(self) -> bool {
        matches!(self, ContributionClass::III1 | ContributionClass::IV1 | ContributionClass::V1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryContribution {
    pub component: usize,
    pub class: ContributionClass,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
    /// Whether every component contributes to HH², so the index identity is enforced.
    pub all_contributing: bool,
}

impl SurfaceReport {
    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }
}

pub fn validate_surface(s: &SurfaceData) -> SurfaceReport {
    let mut r = SurfaceReport::default();
    if s.boundary.is_empty() {
        r.errors.push("boundary list is empty".into());
        return r;
    }
    if !s.boundary.iter().any(|b| matches!(b.stops, StopConfig::Stops(_))) {
        r.errors.push("no boundary component carries boundary stops".into());
    }
    match s.distinguished {
        Some(i) if i >= s.boundary.len() => r.errors.push(format!("distinguished component {i} does not exist")),
        Some(i) if !matches!(s.boundary[i].stops, StopConfig::Stops(_)) => {
            r.errors.push(format!("distinguished component {i} has no boundary stops"))
        }
        _ => {}
    }
    r.all_contributing = s.boundary.iter().all(|b| ContributionClass::of(b).contributes());
    let (lhs, rhs) = (s.winding_sum(), s.index_sum());
    if lhs != rhs {
        let msg = format!("winding numbers sum to {lhs}, index identity requires {rhs}");
        if r.all_contributing {
            r.errors.push(msg);
        } else {
            r.warnings.push(msg);
        }
    }
    r
}

/// Number of boundary components of classes III₁, IV₁, IV₂, V₁, V₂.
pub fn predicted_hh2(s: &SurfaceData) -> (usize, Vec<BoundaryContribution>) {
    let list: Vec<BoundaryContribution> = s
        .boundary
        .iter()
        .enumerate()
        .map(|(component, b)| BoundaryContribution { component, class: ContributionClass::of(b) })
        .filter(|c| c.class.contributes())
        .collect();
    (list.len(), list)
}

/// Adds one stop to every stopless component of winding 0.
pub fn add_stops(s: &SurfaceData) -> SurfaceData {
    let mut out = s.clone();
    for b in &mut out.boundary {
        if b.stops == StopConfig::None && b.winding == 0 {
            b.stops = StopConfig::Stops(1);
        }
    }
    out
}

/// Swaps full stops and no stops on the listed components.
pub fn toggle_full_stops(s: &SurfaceData, components: &[usize]) -> Result<SurfaceData, String> {
    let mut out = s.clone();
    for &i in components {
        let b = out.boundary.get_mut(i).ok_or_else(|| format!("no boundary component {i}"))?;
        b.stops = match b.stops {
            StopConfig::Full => StopConfig::None,
            StopConfig::None => StopConfig::Full,
            StopConfig::Stops(_) => return Err(format!("component {i} has boundary stops and cannot be toggled")),
        };
    }
    Ok(out)
}

/// Partial compactification along contributing components: orbifold caps for
/// winding-1 classes, smooth caps for winding 2.
pub fn deform_surface(s: &SurfaceData, support: &[usize]) -> Result<SurfaceData, String> {
    let mut keep = Vec::new();
    let mut k = s.orbifold_points;
    let old_dist = s.distinguished_index();
    let mut dist = None;
    for (i, b) in s.boundary.iter().enumerate() {
        if support.contains(&i) {
            let class = ContributionClass::of(b);
            if !class.contributes() {
                return Err(format!("component {i} does not contribute to HH²"));
            }
            if class.orbifold_cap() {
                k += 1;
            }
        } else {
            if Some(i) == old_dist {
                dist = Some(keep.len());
            }
            keep.push(*b);
        }
    }
    let mut out = SurfaceData { genus: s.genus, orbifold_points: k, boundary: keep, distinguished: dist };
    if out.distinguished.is_none() {
        out.distinguished = out.distinguished_index();
    }
    Ok(out)
}
