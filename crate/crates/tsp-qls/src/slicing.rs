//! Slicing strategies: turning the current tour into `k` contiguous
//! segments per iteration.
//!
//! The structured strategies first embed the tour on a unit circle, with arc
//! lengths proportional to the inter-city distances along the tour, then
//! cluster the embedded points with k-means. Plain k-means treats each
//! cluster as a slice; anti-k-means instead uses the centroid directions as
//! breakpoints between slices. The random strategy jitters equally spaced
//! cuts, and the hybrid strategies alternate random with one of the
//! clustered forms, starting with random, to shake the clustering out of
//! local minima.
//!
//! Cut positions mark slice boundaries: the slice starting at cut `c_i`
//! spans tour positions `c_i ..= c_{i+1}` (cyclically), so adjacent slices
//! share exactly one boundary city and each boundary city is a fixed
//! endpoint of the two slices it joins.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::tour::{Segment, Tour};
use crate::tsplib::DistanceMatrix;

const TWO_PI: f64 = 2.0 * PI;

/// How the tour is cut into slices each iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    KMeans,
    AntiKMeans,
    Random,
    Hybrid,
    HybridAnti,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::KMeans,
        Strategy::AntiKMeans,
        Strategy::Random,
        Strategy::Hybrid,
        Strategy::HybridAnti,
    ];
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Strategy::KMeans => "kmeans",
            Strategy::AntiKMeans => "anti-kmeans",
            Strategy::Random => "random",
            Strategy::Hybrid => "hybrid",
            Strategy::HybridAnti => "hybrid-anti",
        };
        f.write_str(name)
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kmeans" => Ok(Strategy::KMeans),
            "anti-kmeans" => Ok(Strategy::AntiKMeans),
            "random" => Ok(Strategy::Random),
            "hybrid" => Ok(Strategy::Hybrid),
            "hybrid-anti" => Ok(Strategy::HybridAnti),
            other => Err(Error::InvalidConfig(format!(
                "unknown strategy `{other}` (expected kmeans|anti-kmeans|random|hybrid|hybrid-anti)"
            ))),
        }
    }
}

/// The tour mapped onto a unit circle: position `p` sits at angle
/// `theta_p = 2*pi * (d_0 + ... + d_{p-1}) / C` where `d_i` is the distance
/// between tour neighbors `i` and `i+1` and `C` is the tour length.
#[derive(Debug, Clone)]
pub struct CircleEmbedding {
    angles: Vec<f64>,
    points: Vec<(f64, f64)>,
    circumference: f64,
}

impl CircleEmbedding {
    /// Angle per tour position, starting at `theta_0 = 0`.
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Unit-circle coordinates per tour position.
    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Total tour length, in instance distance units.
    pub fn circumference(&self) -> f64 {
        self.circumference
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }
}

/// Maps each tour position onto the unit circle. Errors if the tour has zero
/// circumference (all cities coincident).
pub fn embed_on_circle(tour: &Tour, matrix: &DistanceMatrix) -> Result<CircleEmbedding> {
    let n = tour.len();
    let edges: Vec<f64> = (0..n)
        .map(|p| matrix.get(tour.city_at(p), tour.city_at(p + 1)))
        .collect();
    let circumference: f64 = edges.iter().sum();
    if circumference <= 0.0 {
        return Err(Error::ZeroCircumference);
    }
    let mut angles = Vec::with_capacity(n);
    let mut acc = 0.0;
    for p in 0..n {
        angles.push(acc);
        acc += TWO_PI * edges[p] / circumference;
    }
    let points = angles.iter().map(|&a| (a.cos(), a.sin())).collect();
    Ok(CircleEmbedding { angles, points, circumference })
}

/// Cut positions partitioning the cycle into contiguous slices. Cuts are
/// strictly increasing tour positions; consecutive cuts (cyclically) delimit
/// one slice whose boundary cities are fixed endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlicePlan {
    n: usize,
    cuts: Vec<usize>,
}

impl SlicePlan {
    fn new(n: usize, mut cuts: Vec<usize>) -> Self {
        cuts.sort_unstable();
        cuts.dedup();
        debug_assert!(cuts.len() >= 2, "a plan needs at least two cuts");
        debug_assert!(cuts.iter().all(|&c| c < n));
        SlicePlan { n, cuts }
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    pub fn slice_count(&self) -> usize {
        self.cuts.len()
    }

    /// Number of tour positions covered (the instance size).
    pub fn positions(&self) -> usize {
        self.n
    }

    /// City count of slice `i`, endpoints included.
    pub fn slice_len(&self, i: usize) -> usize {
        let from = self.cuts[i];
        let to = self.cuts[(i + 1) % self.cuts.len()];
        (to + self.n - from - 1) % self.n + 2
    }

    /// Materializes the slices of `tour` described by this plan.
    pub fn segments(&self, tour: &Tour) -> Vec<Segment> {
        assert_eq!(tour.len(), self.n, "plan and tour sizes differ");
        (0..self.slice_count())
            .map(|i| Segment::from_tour(tour, self.cuts[i], self.slice_len(i)))
            .collect()
    }
}

/// Number of independent k-means++ seedings tried per clustering; the run
/// with the lowest within-cluster variance wins.
const KMEANS_RESTARTS: usize = 10;

/// Lloyd k-means over 2-d points with distance-weighted (k-means++ style)
/// seeding from the caller's RNG. Runs [`KMEANS_RESTARTS`] independent
/// seedings and keeps the best by within-cluster variance; each run iterates
/// to an assignment fixed point or a 100-round cap.
pub fn kmeans_cluster<R: Rng>(
    points: &[(f64, f64)],
    k: usize,
    rng: &mut R,
) -> Result<(Vec<(f64, f64)>, Vec<usize>)> {
    let n = points.len();
    if k < 2 || k > n {
        return Err(Error::InvalidK { k, n, detail: "need 2 <= k <= n points" });
    }
    let mut best: Option<(f64, Vec<(f64, f64)>, Vec<usize>)> = None;
    for _ in 0..KMEANS_RESTARTS {
        let (centroids, assignment) = lloyd_once(points, k, rng);
        let variance: f64 = assignment
            .iter()
            .enumerate()
            .map(|(i, &a)| squared_dist(points[i], centroids[a]))
            .sum();
        if best.as_ref().map_or(true, |(v, _, _)| variance < *v) {
            best = Some((variance, centroids, assignment));
        }
    }
    let (_, centroids, assignment) = best.unwrap();
    Ok((centroids, assignment))
}

fn lloyd_once<R: Rng>(points: &[(f64, f64)], k: usize, rng: &mut R) -> (Vec<(f64, f64)>, Vec<usize>) {
    let n = points.len();
    let mut centroids: Vec<(f64, f64)> = Vec::with_capacity(k);
    centroids.push(points[rng.random_range(0..n)]);
    while centroids.len() < k {
        let weights: Vec<f64> = points
            .iter()
            .map(|&p| {
                centroids
                    .iter()
                    .map(|&c| squared_dist(p, c))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        let total: f64 = weights.iter().sum();
        let next = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut chosen = n - 1;
            for (i, &w) in weights.iter().enumerate() {
                if target < w {
                    chosen = i;
                    break;
                }
                target -= w;
            }
            chosen
        } else {
            // all remaining points coincide with a centroid; any free one does
            rng.random_range(0..n)
        };
        centroids.push(points[next]);
    }

    let mut assignment = vec![0usize; n];
    for _round in 0..100 {
        let mut next = vec![0usize; n];
        for (i, &p) in points.iter().enumerate() {
            let mut best = 0;
            let mut best_d = squared_dist(p, centroids[0]);
            for (c, &centroid) in centroids.iter().enumerate().skip(1) {
                let d = squared_dist(p, centroid);
                if d < best_d {
                    best_d = d;
                    best = c;
                }
            }
            next[i] = best;
        }
        let converged = next == assignment && _round > 0;
        assignment = next;
        if converged {
            break;
        }
        let mut sums = vec![(0.0, 0.0, 0usize); k];
        for (i, &a) in assignment.iter().enumerate() {
            sums[a].0 += points[i].0;
            sums[a].1 += points[i].1;
            sums[a].2 += 1;
        }
        for (c, &(sx, sy, count)) in sums.iter().enumerate() {
            if count > 0 {
                centroids[c] = (sx / count as f64, sy / count as f64);
            }
        }
    }
    (centroids, assignment)
}

#[inline]
fn squared_dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (a.0 - b.0, a.1 - b.1);
    dx * dx + dy * dy
}

fn normalize_angle(a: f64) -> f64 {
    a.rem_euclid(TWO_PI)
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = normalize_angle(a - b);
    d.min(TWO_PI - d)
}

/// Slices are the maximal arcs of tour positions belonging to one centroid.
///
/// Raw Lloyd assignments on the circle points need not be contiguous along
/// the cycle, so each position is re-assigned to the centroid of nearest
/// angular distance; angular Voronoi cells are arcs, which makes every
/// cluster a contiguous run of positions by construction.
pub fn kmeans_slices<R: Rng>(
    embedding: &CircleEmbedding,
    k: usize,
    rng: &mut R,
) -> Result<SlicePlan> {
    let n = embedding.len();
    let (centroids, _) = kmeans_cluster(embedding.points(), k, rng)?;
    let centroid_angles: Vec<f64> =
        centroids.iter().map(|&(x, y)| normalize_angle(y.atan2(x))).collect();

    let owner: Vec<usize> = embedding
        .angles()
        .iter()
        .map(|&theta| {
            let mut best = 0;
            let mut best_d = circular_distance(theta, centroid_angles[0]);
            for (c, &phi) in centroid_angles.iter().enumerate().skip(1) {
                let d = circular_distance(theta, phi);
                if d < best_d {
                    best_d = d;
                    best = c;
                }
            }
            best
        })
        .collect();

    let cuts: Vec<usize> =
        (0..n).filter(|&p| owner[p] != owner[(p + n - 1) % n]).collect();
    if cuts.len() < 2 {
        return fallback_plan(n, k, rng);
    }
    Ok(SlicePlan::new(n, cuts))
}

/// The anti-k-means strategy: centroid directions become breakpoints. Each
/// centroid cuts the tour at the position whose angle is nearest; colliding
/// cuts are re-drawn uniformly at random, and if fewer than two distinct
/// cuts survive the plan falls back to random slicing.
pub fn anti_kmeans_slices<R: Rng>(
    embedding: &CircleEmbedding,
    k: usize,
    rng: &mut R,
) -> Result<SlicePlan> {
    let n = embedding.len();
    let (centroids, _) = kmeans_cluster(embedding.points(), k, rng)?;

    let mut taken = vec![false; n];
    let mut cuts = Vec::with_capacity(k);
    for &(cx, cy) in &centroids {
        let phi = normalize_angle(cy.atan2(cx));
        let mut pos = 0;
        let mut best_d = f64::INFINITY;
        for (p, &theta) in embedding.angles().iter().enumerate() {
            let d = circular_distance(theta, phi);
            if d < best_d {
                best_d = d;
                pos = p;
            }
        }
        if taken[pos] {
            let mut found = false;
            for _ in 0..10 * n {
                let redraw = rng.random_range(0..n);
                if !taken[redraw] {
                    pos = redraw;
                    found = true;
                    break;
                }
            }
            if !found {
                continue;
            }
        }
        taken[pos] = true;
        cuts.push(pos);
    }

    if cuts.len() < 2 {
        return fallback_plan(n, k, rng);
    }
    Ok(SlicePlan::new(n, cuts))
}

fn fallback_plan<R: Rng>(n: usize, k: usize, rng: &mut R) -> Result<SlicePlan> {
    let k = k.min(n / 2);
    if k >= 2 {
        random_slices(n, k, rng)
    } else {
        Ok(SlicePlan::new(n, vec![0, n / 2]))
    }
}

/// Jittered equal spacing: cut `j` starts from `floor(j*n/k)` and moves by a
/// uniform integer displacement in `[-floor(n/2k), +floor(n/2k)]`, wrapping
/// modulo `n`; collisions probe forward to the next free position.
pub fn random_slices<R: Rng>(n: usize, k: usize, rng: &mut R) -> Result<SlicePlan> {
    if k < 2 || 2 * k > n {
        return Err(Error::InvalidK { k, n, detail: "need 2 <= k <= n/2" });
    }
    let bound = (n / (2 * k)) as i64;
    let mut taken = vec![false; n];
    let mut cuts = Vec::with_capacity(k);
    for j in 0..k {
        let base = (j * n / k) as i64;
        let displacement = rng.random_range(-bound..=bound);
        let mut pos = (base + displacement).rem_euclid(n as i64) as usize;
        while taken[pos] {
            pos = (pos + 1) % n;
        }
        taken[pos] = true;
        cuts.push(pos);
    }
    Ok(SlicePlan::new(n, cuts))
}

/// Per-iteration dispatch. The hybrid strategies alternate strictly,
/// starting with random on iteration 0, then k-means (or anti-k-means) on
/// iteration 1, and so on.
pub fn plan_for_iteration<R: Rng>(
    strategy: Strategy,
    iteration: usize,
    tour: &Tour,
    matrix: &DistanceMatrix,
    k: usize,
    rng: &mut R,
) -> Result<SlicePlan> {
    let clustered = |kind: Strategy, rng: &mut R| -> Result<SlicePlan> {
        let embedding = embed_on_circle(tour, matrix)?;
        match kind {
            Strategy::KMeans => kmeans_slices(&embedding, k, rng),
            _ => anti_kmeans_slices(&embedding, k, rng),
        }
    };
    match strategy {
        Strategy::KMeans => clustered(Strategy::KMeans, rng),
        Strategy::AntiKMeans => clustered(Strategy::AntiKMeans, rng),
        Strategy::Random => random_slices(tour.len(), k, rng),
        Strategy::Hybrid => {
            if iteration % 2 == 0 {
                random_slices(tour.len(), k, rng)
            } else {
                clustered(Strategy::KMeans, rng)
            }
        }
        Strategy::HybridAnti => {
            if iteration % 2 == 0 {
                random_slices(tour.len(), k, rng)
            } else {
                clustered(Strategy::AntiKMeans, rng)
            }
        }
    }
}
