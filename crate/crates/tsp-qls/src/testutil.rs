//! Shared fixtures for the unit tests: published optimal tours for the
//! benchmark instances, and a one-hot encoder mirroring the decode layout.

use crate::qubo::variable_index;
use crate::tour::Segment;

/// TSPLIB ulysses16 optimal tour (1-based ids), length 6859 under GEO.
pub const ULYSSES16_OPT: [usize; 16] = [1, 14, 13, 12, 7, 6, 15, 5, 11, 9, 10, 16, 3, 2, 4, 8];

/// att48 optimal tour (1-based ids), length 10628 under ATT.
pub const ATT48_OPT: [usize; 48] = [
    1, 8, 38, 31, 44, 18, 7, 28, 6, 37, 19, 27, 17, 43, 30, 36, 46, 33, 20, 47, 21, 32, 39, 48,
    5, 42, 24, 10, 45, 35, 4, 26, 2, 29, 34, 41, 16, 22, 3, 23, 14, 25, 13, 11, 12, 15, 40, 9,
];

/// dj38 optimal tour (1-based ids), length 6656 under EUC_2D.
pub const DJ38_OPT: [usize; 38] = [
    1, 2, 4, 3, 5, 6, 7, 8, 9, 12, 11, 19, 18, 17, 16, 13, 15, 20, 23, 26, 25, 22, 24, 28, 27,
    31, 36, 34, 33, 38, 37, 35, 32, 30, 29, 21, 14, 10,
];

/// Encodes an interior order as the one-hot assignment it decodes from.
pub fn encode_order(order: &[usize], slice: &Segment) -> Vec<u8> {
    let interior = slice.interior();
    let count = interior.len();
    let mut bits = vec![0u8; count * count];
    for (p, city) in order.iter().enumerate() {
        let c = interior.iter().position(|x| x == city).expect("city not in interior");
        bits[variable_index(c, p, count)] = 1;
    }
    bits
}
