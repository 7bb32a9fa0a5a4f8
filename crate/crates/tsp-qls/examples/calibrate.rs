//! Scratch calibration harness: finer beta grid at penalty = 2*maxd.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsp_qls::prelude::*;
use tsp_qls::qubo::build_slice_qubo;

fn random_slice(rng: &mut ChaCha8Rng, interior: usize) -> (Segment, DistanceMatrix) {
    let m = interior + 2;
    let n = m + rng.random_range(2..8);
    let coords: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random_range(0.0..3000.0), rng.random_range(0.0..3000.0)))
        .collect();
    let inst = Instance::from_coords("rnd", Metric::Euc2d, coords).unwrap();
    let matrix = inst.distance_matrix();
    let tour = Tour::new((0..n).collect(), &matrix);
    let start = rng.random_range(0..n);
    (Segment::from_tour(&tour, start, m), matrix)
}

fn max_pair(slice: &Segment, matrix: &DistanceMatrix) -> f64 {
    let cities = slice.cities();
    let mut max_d = 0.0f64;
    for (i, &a) in cities.iter().enumerate() {
        for &b in &cities[i + 1..] {
            max_d = max_d.max(matrix.get(a, b));
        }
    }
    max_d
}

fn main() {
    println!("== mean gap% / hit% at penalty 2*maxd, 40 slices x 3 seeds ==");
    println!("{:>8} {:>6} {:>6} {:>10} {:>8}", "interior", "a", "b", "gap%", "hit%");
    for &interior in &[7usize, 8, 9] {
        for (a, b) in [
            (1.0, 50.0),
            (2.0, 50.0),
            (2.0, 20.0),
            (2.0, 10.0),
            (2.0, 5.0),
            (4.0, 10.0),
            (4.0, 5.0),
            (1.0, 5.0),
            (8.0, 10.0),
        ] {
            let mut rng = ChaCha8Rng::seed_from_u64(77);
            let (mut hits, mut total) = (0usize, 0usize);
            let mut gap_sum = 0.0;
            for _ in 0..40 {
                let (slice, matrix) = random_slice(&mut rng, interior);
                let pen = (2.0 * max_pair(&slice, &matrix)).max(1.0);
                let qubo = build_slice_qubo(&slice, &matrix, pen).unwrap();
                let (_, oracle_len) = permutation_oracle(&slice, &matrix).unwrap();
                let max_abs = qubo.max_abs_coefficient();
                let min_abs = qubo.min_nonzero_abs_coefficient().unwrap();
                for seed in 0..3u64 {
                    total += 1;
                    let params = SaParams {
                        seed,
                        beta_initial: Some(a / max_abs),
                        beta_final: Some(b / min_abs),
                        ..Default::default()
                    };
                    let result = solve_sa(&qubo, &params);
                    if let Ok(order) =
                        tsp_qls::qubo::decode_solution(&result.bits, &qubo, &slice).unwrap()
                    {
                        let mut path = vec![slice.start_city()];
                        path.extend(&order);
                        path.push(slice.end_city());
                        let open = tour_length(&path, &matrix, false);
                        gap_sum += (open - oracle_len) / oracle_len.max(1.0);
                        if (open - oracle_len).abs() < 1e-9 {
                            hits += 1;
                        }
                    }
                }
            }
            println!(
                "{:>8} {:>6} {:>6} {:>9.2}% {:>7.1}%",
                interior,
                a,
                b,
                100.0 * gap_sum / total as f64,
                100.0 * hits as f64 / total as f64,
            );
        }
    }
}
