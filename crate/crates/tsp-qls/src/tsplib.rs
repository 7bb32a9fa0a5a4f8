//! TSPLIB instance parsing and the exact reference distance functions.
//!
//! Benchmark optima are defined against the TSPLIB reference formulas, so the
//! metrics here follow that document verbatim: `nint` rounding for EUC_2D,
//! the degrees/minutes decoding and 6378.388 earth radius for GEO, and the
//! pseudo-Euclidean round-up rule for ATT. Distances are returned as `f64`
//! even for the integer-valued metrics so downstream arithmetic is uniform;
//! integer metrics still compare exactly.

use std::fmt;

use crate::error::{Error, ParseError, Result};

/// Edge weight function of a TSPLIB instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Euclidean distance rounded to the nearest integer.
    Euc2d,
    /// Euclidean distance rounded up.
    Ceil2d,
    /// Great-circle distance on the TSPLIB reference sphere, truncated.
    Geo,
    /// Pseudo-Euclidean distance with the round-up rule.
    Att,
}

impl Metric {
    fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "EUC_2D" => Some(Metric::Euc2d),
            "CEIL_2D" => Some(Metric::Ceil2d),
            "GEO" => Some(Metric::Geo),
            "ATT" => Some(Metric::Att),
            _ => None,
        }
    }

    fn keyword(&self) -> &'static str {
        match self {
            Metric::Euc2d => "EUC_2D",
            Metric::Ceil2d => "CEIL_2D",
            Metric::Geo => "GEO",
            Metric::Att => "ATT",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A parsed TSP instance: named city coordinates plus the metric that
/// defines edge weights between them.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    name: String,
    metric: Metric,
    coords: Vec<(f64, f64)>,
}

impl Instance {
    /// Builds an instance directly from coordinates (mostly for tests and
    /// generated data). Errors if fewer than 3 cities are given.
    pub fn from_coords(name: &str, metric: Metric, coords: Vec<(f64, f64)>) -> Result<Self> {
        if coords.len() < 3 {
            return Err(ParseError::DimensionTooSmall(coords.len()).into());
        }
        Ok(Instance { name: name.to_string(), metric, coords })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    /// Number of cities.
    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[(f64, f64)] {
        &self.coords
    }

    /// Edge weight between cities `a` and `b` under the instance metric.
    pub fn distance(&self, a: usize, b: usize) -> Result<f64> {
        let n = self.dimension();
        for index in [a, b] {
            if index >= n {
                return Err(Error::CityOutOfRange { index, dimension: n });
            }
        }
        Ok(edge_weight(self.metric, self.coords[a], self.coords[b]))
    }

    /// Dense symmetric distance matrix over all city pairs.
    pub fn distance_matrix(&self) -> DistanceMatrix {
        let n = self.dimension();
        let mut values = vec![0.0; n * n];
        for a in 0..n {
            for b in (a + 1)..n {
                let d = edge_weight(self.metric, self.coords[a], self.coords[b]);
                values[a * n + b] = d;
                values[b * n + a] = d;
            }
        }
        DistanceMatrix { n, values }
    }

    /// Renders the instance back to TSPLIB text. Coordinates are written with
    /// enough digits to round-trip exactly through `parse`.
    pub fn to_tsplib(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("NAME: {}\n", self.name));
        out.push_str("TYPE: TSP\n");
        out.push_str(&format!("DIMENSION: {}\n", self.dimension()));
        out.push_str(&format!("EDGE_WEIGHT_TYPE: {}\n", self.metric));
        out.push_str("NODE_COORD_SECTION\n");
        for (i, (x, y)) in self.coords.iter().enumerate() {
            out.push_str(&format!("{} {:?} {:?}\n", i + 1, x, y));
        }
        out.push_str("EOF\n");
        out
    }
}

/// Dense `n x n` matrix of edge weights: symmetric, zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    values: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds a matrix from explicit entries (test helper; real code goes
    /// through [`Instance::distance_matrix`]).
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let n = rows.len();
        let mut values = Vec::with_capacity(n * n);
        for row in &rows {
            assert_eq!(row.len(), n, "distance matrix must be square");
            values.extend_from_slice(row);
        }
        DistanceMatrix { n, values }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.values[a * self.n + b]
    }
}

/// Parses TSPLIB `.tsp` text into an [`Instance`].
///
/// Requires the NAME, DIMENSION, EDGE_WEIGHT_TYPE and NODE_COORD_SECTION
/// keywords; the trailing EOF marker is optional. City ids are normalized to
/// 0-based contiguous indices. Unknown header keys are ignored.
pub fn parse_instance(content: &str) -> Result<Instance> {
    let mut name: Option<String> = None;
    let mut dimension: Option<usize> = None;
    let mut metric: Option<Metric> = None;
    let mut in_coords = false;
    let mut entries: Vec<(usize, f64, f64)> = Vec::new();

    for (idx, raw) in content.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim();
        if text.is_empty() {
            continue;
        }
        if text == "EOF" {
            break;
        }
        if !in_coords {
            if text == "NODE_COORD_SECTION" {
                in_coords = true;
                continue;
            }
            let Some((key, value)) = text.split_once(':') else {
                return Err(ParseError::MalformedHeader {
                    line,
                    detail: format!("expected `KEY: value`, got `{text}`"),
                }
                .into());
            };
            let key = key.trim();
            let value = value.trim();
            match key {
                "NAME" => name = Some(value.to_string()),
                "DIMENSION" => {
                    let dim = value.parse::<usize>().map_err(|_| ParseError::MalformedHeader {
                        line,
                        detail: format!("DIMENSION is not a positive integer: `{value}`"),
                    })?;
                    dimension = Some(dim);
                }
                "EDGE_WEIGHT_TYPE" => {
                    metric = Some(Metric::from_keyword(value).ok_or_else(|| {
                        ParseError::UnsupportedEdgeWeightType { line, found: value.to_string() }
                    })?);
                }
                _ => {} // TYPE, COMMENT, DISPLAY_DATA_TYPE, ...
            }
        } else {
            let fields: Vec<&str> = text.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(ParseError::MalformedCoordinate {
                    line,
                    detail: format!("expected `id x y`, got `{text}`"),
                }
                .into());
            }
            let id = fields[0].parse::<usize>().map_err(|_| ParseError::MalformedCoordinate {
                line,
                detail: format!("city id is not an integer: `{}`", fields[0]),
            })?;
            let mut xy = [0.0f64; 2];
            for (slot, field) in xy.iter_mut().zip(&fields[1..]) {
                *slot = field.parse::<f64>().map_err(|_| ParseError::MalformedCoordinate {
                    line,
                    detail: format!("coordinate is not a number: `{field}`"),
                })?;
            }
            entries.push((id, xy[0], xy[1]));
        }
    }

    let name = name.ok_or(ParseError::MissingKeyword { keyword: "NAME" })?;
    let dimension = dimension.ok_or(ParseError::MissingKeyword { keyword: "DIMENSION" })?;
    let metric = metric.ok_or(ParseError::MissingKeyword { keyword: "EDGE_WEIGHT_TYPE" })?;
    if !in_coords {
        return Err(ParseError::MissingKeyword { keyword: "NODE_COORD_SECTION" }.into());
    }
    if entries.len() != dimension {
        return Err(ParseError::CoordinateCountMismatch {
            expected: dimension,
            found: entries.len(),
        }
        .into());
    }
    if dimension < 3 {
        return Err(ParseError::DimensionTooSmall(dimension).into());
    }

    // Normalize 1-based (or otherwise contiguous) ids to 0-based.
    let mut coords = vec![None; dimension];
    for (id, x, y) in entries {
        let slot = id.checked_sub(1).filter(|&i| i < dimension).ok_or_else(|| {
            ParseError::MalformedCoordinate {
                line: 0,
                detail: format!("city id {id} outside 1..={dimension}"),
            }
        })?;
        if coords[slot].replace((x, y)).is_some() {
            return Err(ParseError::MalformedCoordinate {
                line: 0,
                detail: format!("duplicate city id {id}"),
            }
            .into());
        }
    }
    let coords = coords.into_iter().map(|c| c.unwrap()).collect();
    Ok(Instance { name, metric, coords })
}

#[inline]
fn nint(x: f64) -> f64 {
    (x + 0.5).floor()
}

/// Edge weight between two coordinate pairs under `metric`.
pub fn edge_weight(metric: Metric, a: (f64, f64), b: (f64, f64)) -> f64 {
    match metric {
        Metric::Euc2d => {
            let (dx, dy) = (a.0 - b.0, a.1 - b.1);
            nint((dx * dx + dy * dy).sqrt())
        }
        Metric::Ceil2d => {
            let (dx, dy) = (a.0 - b.0, a.1 - b.1);
            (dx * dx + dy * dy).sqrt().ceil()
        }
        Metric::Geo => geo_distance(a, b),
        Metric::Att => {
            let (dx, dy) = (a.0 - b.0, a.1 - b.1);
            let r = ((dx * dx + dy * dy) / 10.0).sqrt();
            let t = nint(r);
            if t < r {
                t + 1.0
            } else {
                t
            }
        }
    }
}

// TSPLIB's reference value, not std PI.
const TSPLIB_PI: f64 = 3.141592;
const EARTH_RADIUS: f64 = 6378.388;

/// Decodes a DDD.MM degrees-minutes coordinate to radians. The integer part
/// is taken by truncation toward zero, matching the reference C `(int)` cast.
fn geo_radians(coord: f64) -> f64 {
    let deg = coord.trunc();
    let minutes = coord - deg;
    TSPLIB_PI * (deg + 5.0 * minutes / 3.0) / 180.0
}

fn geo_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    let (lat_a, lon_a) = (geo_radians(a.0), geo_radians(a.1));
    let (lat_b, lon_b) = (geo_radians(b.0), geo_radians(b.1));
    if a == b {
        return 0.0;
    }
    let q1 = (lon_a - lon_b).cos();
    let q2 = (lat_a - lat_b).cos();
    let q3 = (lat_a + lat_b).cos();
    let q = (0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)).clamp(-1.0, 1.0);
    (EARTH_RADIUS * q.acos() + 1.0).trunc()
}
