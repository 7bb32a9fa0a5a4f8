//! Closed tours, contiguous segments of them, and the length accounting
//! shared by every other module.
//!
//! Tours are immutable values: splicing a re-optimized segment interior back
//! in returns a fresh tour, which keeps accept/reject rollback trivial and
//! makes concurrent slice solving safe.

use crate::error::{Error, Result};
use crate::tsplib::DistanceMatrix;

/// Relative tolerance for cross-checking a cached tour length against a
/// from-scratch recomputation.
pub const LENGTH_TOLERANCE: f64 = 1e-6;

/// A cyclic permutation of the cities `0..n` with its cached closed length.
#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    order: Vec<usize>,
    length: f64,
}

impl Tour {
    /// Builds a tour from a visiting order, computing the closed length.
    pub fn new(order: Vec<usize>, matrix: &DistanceMatrix) -> Self {
        let length = tour_length(&order, matrix, true);
        Tour { order, length }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Cached total cyclic distance, including the closing edge.
    pub fn length(&self) -> f64 {
        self.length
    }

    /// City at tour position `pos` (positions wrap).
    pub fn city_at(&self, pos: usize) -> usize {
        self.order[pos % self.order.len()]
    }
}

/// Sums edge weights along `order`; `closed` adds the wrapping edge back to
/// the start.
pub fn tour_length(order: &[usize], matrix: &DistanceMatrix, closed: bool) -> f64 {
    let n = order.len();
    if n < 2 {
        return 0.0;
    }
    let mut total: f64 = order.windows(2).map(|w| matrix.get(w[0], w[1])).sum();
    if closed {
        total += matrix.get(order[n - 1], order[0]);
    }
    total
}

/// A violation reported by [`validate_tour`]. These are ordinary values, not
/// errors: callers inspect them.
#[derive(Debug, Clone, PartialEq)]
pub enum TourViolation {
    WrongCityCount { expected: usize, found: usize },
    DuplicateCity { city: usize },
    MissingCity { city: usize },
    StaleLength { cached: f64, recomputed: f64 },
}

impl std::fmt::Display for TourViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TourViolation::WrongCityCount { expected, found } => {
                write!(f, "tour visits {found} cities, expected {expected}")
            }
            TourViolation::DuplicateCity { city } => write!(f, "city {city} appears twice"),
            TourViolation::MissingCity { city } => write!(f, "city {city} is never visited"),
            TourViolation::StaleLength { cached, recomputed } => {
                write!(f, "cached length {cached} does not match recomputed {recomputed}")
            }
        }
    }
}

/// Checks that the tour is a permutation of `0..n` and that its cached
/// length matches a from-scratch recomputation.
pub fn validate_tour(
    tour: &Tour,
    n: usize,
    matrix: &DistanceMatrix,
) -> std::result::Result<(), TourViolation> {
    if tour.len() != n {
        return Err(TourViolation::WrongCityCount { expected: n, found: tour.len() });
    }
    let mut seen = vec![false; n];
    for &city in tour.order() {
        if city >= n {
            return Err(TourViolation::MissingCity { city });
        }
        if seen[city] {
            return Err(TourViolation::DuplicateCity { city });
        }
        seen[city] = true;
    }
    if let Some(city) = seen.iter().position(|&s| !s) {
        return Err(TourViolation::MissingCity { city });
    }
    let recomputed = tour_length(tour.order(), matrix, true);
    let scale = recomputed.abs().max(1.0);
    if (tour.length() - recomputed).abs() > LENGTH_TOLERANCE * scale {
        return Err(TourViolation::StaleLength { cached: tour.length(), recomputed });
    }
    Ok(())
}

/// A contiguous run of tour positions. The first and last cities are fixed
/// endpoints; only the interior may be reordered.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    start_pos: usize,
    cities: Vec<usize>,
}

impl Segment {
    /// Extracts the segment beginning at tour position `start_pos` and
    /// spanning `len` cities (wrapping past the end of the order).
    pub fn from_tour(tour: &Tour, start_pos: usize, len: usize) -> Self {
        assert!(len >= 2, "a segment needs at least its two endpoints");
        assert!(len <= tour.len(), "segment cannot exceed the tour");
        let cities = (0..len).map(|i| tour.city_at(start_pos + i)).collect();
        Segment { start_pos: start_pos % tour.len(), cities }
    }

    pub fn start_pos(&self) -> usize {
        self.start_pos
    }

    pub fn cities(&self) -> &[usize] {
        &self.cities
    }

    /// Number of cities in the segment, endpoints included (the segment's m).
    pub fn city_count(&self) -> usize {
        self.cities.len()
    }

    pub fn start_city(&self) -> usize {
        self.cities[0]
    }

    pub fn end_city(&self) -> usize {
        *self.cities.last().unwrap()
    }

    /// Cities strictly between the fixed endpoints.
    pub fn interior(&self) -> &[usize] {
        &self.cities[1..self.cities.len() - 1]
    }

    pub fn interior_count(&self) -> usize {
        self.city_count() - 2
    }

    /// Length of the open path along the segment cities.
    pub fn open_length(&self, matrix: &DistanceMatrix) -> f64 {
        tour_length(&self.cities, matrix, false)
    }
}

/// Replaces the interior of `slice` with `new_interior`, returning the new
/// tour. The cached length is updated incrementally: the old open segment
/// length is subtracted and the new one added.
pub fn splice_segment(
    tour: &Tour,
    slice: &Segment,
    new_interior: &[usize],
    matrix: &DistanceMatrix,
) -> Result<Tour> {
    let old_interior = slice.interior();
    if !is_permutation_of(new_interior, old_interior) {
        return Err(Error::InteriorMismatch);
    }

    let n = tour.len();
    let mut order = tour.order().to_vec();
    for (offset, &city) in new_interior.iter().enumerate() {
        order[(slice.start_pos + 1 + offset) % n] = city;
    }

    let mut new_cities = Vec::with_capacity(slice.city_count());
    new_cities.push(slice.start_city());
    new_cities.extend_from_slice(new_interior);
    new_cities.push(slice.end_city());

    let old_open = slice.open_length(matrix);
    let new_open = tour_length(&new_cities, matrix, false);
    let length = tour.length() - old_open + new_open;
    Ok(Tour { order, length })
}

fn is_permutation_of(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_unstable();
    ys.sort_unstable();
    xs == ys
}
