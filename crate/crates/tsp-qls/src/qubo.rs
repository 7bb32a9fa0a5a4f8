//! Fixed-endpoint open-path QUBO for one slice, and decoding of solver
//! bitstrings back into sub-paths.
//!
//! A slice with `m` cities keeps its two endpoints fixed, so only the
//! `m - 2` interior cities are encoded: variable `x_{c,p}` means interior
//! city `c` occupies interior position `p`, giving `(m-2)^2` variables
//! instead of the `m^2` a closed-tour encoding would need. The energy is
//!
//! ```text
//!   A * sum_p (1 - sum_c x_{c,p})^2        every position hosts one city
//! + A * sum_c (1 - sum_p x_{c,p})^2        every city takes one position
//! + sum_c d(start,c) * x_{c,0}             edge from the fixed start
//! + sum_c d(c,end) * x_{c,I-1}             edge to the fixed end
//! + sum_{u!=c} sum_p d(u,c) * x_{u,p} * x_{c,p+1}
//! ```
//!
//! with the constant parts of the squared penalties folded into the offset,
//! so a valid one-hot assignment's energy equals the open sub-path length
//! exactly.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::tour::Segment;
use crate::tsplib::DistanceMatrix;

/// A quadratic model over binary variables.
///
/// Linear terms are stored per variable; quadratic terms map unordered
/// variable pairs `(i, j)` with `i < j` to coefficients. `energy` is
/// `offset + sum_i linear[i]*x_i + sum_{i<j} quadratic[(i,j)]*x_i*x_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Qubo {
    num_vars: usize,
    linear: Vec<f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    offset: f64,
}

impl Qubo {
    pub fn new(num_vars: usize) -> Self {
        Qubo { num_vars, linear: vec![0.0; num_vars], quadratic: BTreeMap::new(), offset: 0.0 }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    pub fn add_offset(&mut self, value: f64) {
        self.offset += value;
    }

    pub fn add_linear(&mut self, i: usize, value: f64) {
        self.linear[i] += value;
    }

    /// Accumulates a coefficient on the unordered pair `{i, j}`, `i != j`.
    pub fn add_quadratic(&mut self, i: usize, j: usize, value: f64) {
        assert_ne!(i, j, "diagonal terms belong in linear");
        let key = if i < j { (i, j) } else { (j, i) };
        *self.quadratic.entry(key).or_insert(0.0) += value;
    }

    /// Evaluates the energy of a 0/1 assignment.
    pub fn energy(&self, bits: &[u8]) -> f64 {
        assert_eq!(bits.len(), self.num_vars, "assignment length mismatch");
        let mut e = self.offset;
        for (i, &coeff) in self.linear.iter().enumerate() {
            if bits[i] == 1 {
                e += coeff;
            }
        }
        for (&(i, j), &coeff) in &self.quadratic {
            if bits[i] == 1 && bits[j] == 1 {
                e += coeff;
            }
        }
        e
    }

    /// Largest absolute coefficient over linear and quadratic terms.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.linear
            .iter()
            .chain(self.quadratic.values())
            .fold(0.0f64, |acc, &c| acc.max(c.abs()))
    }

    /// Smallest nonzero absolute coefficient, if any.
    pub fn min_nonzero_abs_coefficient(&self) -> Option<f64> {
        self.linear
            .iter()
            .chain(self.quadratic.values())
            .map(|c| c.abs())
            .filter(|&c| c > 0.0)
            .fold(None, |acc: Option<f64>, c| Some(acc.map_or(c, |a| a.min(c))))
    }

    /// Serializes as a text map: the offset line first, then one
    /// `i j coefficient` line per upper-triangular entry (`i == j` rows are
    /// the linear terms, every variable listed). Coefficients use Rust's
    /// shortest round-trip float formatting.
    pub fn to_text_map(&self) -> String {
        let mut out = format!("{:?}\n", self.offset);
        for (i, &coeff) in self.linear.iter().enumerate() {
            out.push_str(&format!("{i} {i} {coeff:?}\n"));
        }
        for (&(i, j), &coeff) in &self.quadratic {
            out.push_str(&format!("{i} {j} {coeff:?}\n"));
        }
        out
    }

    /// Parses the [`Qubo::to_text_map`] format.
    pub fn from_text_map(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let offset_line = lines
            .next()
            .ok_or_else(|| Error::MalformedQuboText("empty text map".into()))?;
        let offset: f64 = offset_line
            .trim()
            .parse()
            .map_err(|_| Error::MalformedQuboText(format!("bad offset line `{offset_line}`")))?;

        let mut linear: BTreeMap<usize, f64> = BTreeMap::new();
        let mut quadratic: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        let mut max_index = 0usize;
        for line in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::MalformedQuboText(format!("expected `i j coeff`: `{line}`")));
            }
            let i: usize = fields[0]
                .parse()
                .map_err(|_| Error::MalformedQuboText(format!("bad index `{}`", fields[0])))?;
            let j: usize = fields[1]
                .parse()
                .map_err(|_| Error::MalformedQuboText(format!("bad index `{}`", fields[1])))?;
            let coeff: f64 = fields[2]
                .parse()
                .map_err(|_| Error::MalformedQuboText(format!("bad coefficient `{}`", fields[2])))?;
            if i > j {
                return Err(Error::MalformedQuboText(format!(
                    "entries must be upper-triangular, got ({i}, {j})"
                )));
            }
            max_index = max_index.max(j);
            if i == j {
                *linear.entry(i).or_insert(0.0) += coeff;
            } else {
                *quadratic.entry((i, j)).or_insert(0.0) += coeff;
            }
        }
        let num_vars = if linear.is_empty() && quadratic.is_empty() { 0 } else { max_index + 1 };
        let mut qubo = Qubo::new(num_vars);
        qubo.offset = offset;
        for (i, coeff) in linear {
            qubo.linear[i] = coeff;
        }
        qubo.quadratic = quadratic;
        Ok(qubo)
    }
}

/// Variable index of (interior city slot `c`, interior position slot `p`)
/// for a slice with `interior` interior cities.
#[inline]
pub fn variable_index(city_slot: usize, position_slot: usize, interior: usize) -> usize {
    city_slot * interior + position_slot
}

/// Inverse of [`variable_index`].
#[inline]
pub fn variable_slots(index: usize, interior: usize) -> (usize, usize) {
    (index / interior, index % interior)
}

/// Default constraint penalty: `2 * (max pairwise distance within the
/// slice, endpoints included)`.
///
/// Every broken one-hot constraint costs at least `2A` in penalty energy
/// while rearranging or dropping cities can shorten the path by at most two
/// edges, i.e. `2 * maxd < 2A`, so the minimum-energy assignment is always
/// a valid permutation. Keeping `A` at the distance scale (rather than
/// inflating it with the slice size) also keeps the constraint barriers
/// crossable for annealing-style solvers, which measurably improves their
/// solution quality on larger slices. Degenerate all-coincident slices get
/// 1 so the penalty stays positive.
pub fn default_penalty(slice: &Segment, matrix: &DistanceMatrix) -> f64 {
    let cities = slice.cities();
    let mut max_d = 0.0f64;
    for (i, &a) in cities.iter().enumerate() {
        for &b in &cities[i + 1..] {
            max_d = max_d.max(matrix.get(a, b));
        }
    }
    let penalty = 2.0 * max_d;
    if penalty > 0.0 {
        penalty
    } else {
        1.0
    }
}

/// Builds the fixed-endpoint QUBO for `slice`. Errors if the slice has no
/// interior (m = 2); callers skip those.
pub fn build_slice_qubo(slice: &Segment, matrix: &DistanceMatrix, penalty: f64) -> Result<Qubo> {
    let interior = slice.interior();
    let count = interior.len();
    if count == 0 {
        return Err(Error::EmptyInterior);
    }
    debug_assert!(penalty > 0.0, "penalty must be positive");

    let mut qubo = Qubo::new(count * count);
    let var = |c: usize, p: usize| variable_index(c, p, count);

    // (1 - sum x)^2 over each position column and each city row: the
    // constant lands in the offset, each variable picks up -A twice, and
    // same-column / same-row pairs pick up +2A.
    qubo.add_offset(2.0 * penalty * count as f64);
    for c in 0..count {
        for p in 0..count {
            qubo.add_linear(var(c, p), -2.0 * penalty);
        }
    }
    for p in 0..count {
        for c in 0..count {
            for c2 in (c + 1)..count {
                qubo.add_quadratic(var(c, p), var(c2, p), 2.0 * penalty);
            }
        }
    }
    for c in 0..count {
        for p in 0..count {
            for p2 in (p + 1)..count {
                qubo.add_quadratic(var(c, p), var(c, p2), 2.0 * penalty);
            }
        }
    }

    // objective: boundary edges to the fixed endpoints ...
    let (start, end) = (slice.start_city(), slice.end_city());
    for (c, &city) in interior.iter().enumerate() {
        qubo.add_linear(var(c, 0), matrix.get(start, city));
        qubo.add_linear(var(c, count - 1), matrix.get(city, end));
    }
    // ... and consecutive interior positions
    for p in 0..count.saturating_sub(1) {
        for (u, &city_u) in interior.iter().enumerate() {
            for (c, &city_c) in interior.iter().enumerate() {
                if u != c {
                    qubo.add_quadratic(var(u, p), var(c, p + 1), matrix.get(city_u, city_c));
                }
            }
        }
    }

    Ok(qubo)
}

/// Why an assignment failed to decode as a sub-path. These are values, not
/// errors: invalid solver output is an expected outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeViolation {
    /// Interior position `position` (1-based within the segment) does not
    /// host exactly one city.
    PositionNotOneHot { position: usize },
    /// Interior city `city` does not occupy exactly one position.
    CityNotOneHot { city: usize },
}

impl std::fmt::Display for DecodeViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DecodeViolation::PositionNotOneHot { position } => {
                write!(f, "position {position} is not one-hot")
            }
            DecodeViolation::CityNotOneHot { city } => write!(f, "city {city} is not one-hot"),
        }
    }
}

/// Decodes a solver assignment back into an interior city order: position
/// columns are checked first, then city rows; the first broken one-hot
/// constraint is reported as a violation value.
pub fn decode_solution(
    bits: &[u8],
    qubo: &Qubo,
    slice: &Segment,
) -> Result<std::result::Result<Vec<usize>, DecodeViolation>> {
    if bits.len() != qubo.num_vars() {
        return Err(Error::BitLengthMismatch { expected: qubo.num_vars(), found: bits.len() });
    }
    let interior = slice.interior();
    let count = interior.len();
    debug_assert_eq!(qubo.num_vars(), count * count);

    let mut order = Vec::with_capacity(count);
    for p in 0..count {
        let mut hot = None;
        for c in 0..count {
            if bits[variable_index(c, p, count)] == 1 {
                if hot.is_some() {
                    return Ok(Err(DecodeViolation::PositionNotOneHot { position: p + 1 }));
                }
                hot = Some(c);
            }
        }
        match hot {
            Some(c) => order.push(interior[c]),
            None => return Ok(Err(DecodeViolation::PositionNotOneHot { position: p + 1 })),
        }
    }
    for c in 0..count {
        let occupied: usize = (0..count).map(|p| bits[variable_index(c, p, count)] as usize).sum();
        if occupied != 1 {
            return Ok(Err(DecodeViolation::CityNotOneHot { city: interior[c] }));
        }
    }
    Ok(Ok(order))
}
