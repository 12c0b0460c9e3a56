//! Expected invariants of the flat connections on Σ(2,3,23).

/// `x3` exponent triples of the 44 irreducible SU(3) connections, in
/// enumeration order.
pub const SU3_X3: [(i64, i64, i64); 44] = [
    (0, 4, 19), (0, 5, 18), (0, 6, 17), (0, 7, 16), (0, 8, 15), (0, 9, 14), (0, 10, 13), (0, 11, 12),
    (1, 4, 18), (5, 19, 22), (1, 5, 17), (6, 18, 22), (1, 6, 16), (7, 17, 22), (1, 7, 15), (8, 16, 22),
    (1, 8, 14), (9, 15, 22), (1, 9, 13), (10, 14, 22), (1, 10, 12), (11, 13, 22), (2, 4, 17), (6, 19, 21),
    (2, 5, 16), (7, 18, 21), (2, 6, 15), (8, 17, 21), (2, 7, 14), (9, 16, 21), (2, 8, 13), (10, 15, 21),
    (2, 9, 12), (11, 14, 21), (3, 4, 16), (7, 19, 20), (3, 5, 15), (8, 18, 20), (3, 6, 14), (9, 17, 20),
    (3, 7, 13), (10, 16, 20), (3, 8, 12), (11, 15, 20),
];

/// Per label `alpha1..alpha26`: CS numerators over 138, rho numerators over
/// 23, degrees mod 12.
pub const SU3_CS_138: [i64; 26] = [1, 49, 31, 85, 73, 133, 127, 55, 43, 127, 7, 97, 121, 79, 109, 19, 1, 55, 43, 103, 97, 67, 85, 37, 61, 19];
pub const SU3_RHO_23: [i64; 26] = [
    -364, -540, -520, -488, -444, -572, -504, -424, -472, -412, -524, -532, -528, -420, -484, -476, -456, -516, -472,
    -508, -440, -468, -488, -404, -492, -476,
];
pub const SU3_DEG: [i64; 26] = [4, 0, 10, 2, 0, 8, 6, 10, 10, 4, 8, 4, 6, 0, 4, 8, 6, 0, 10, 4, 2, 0, 2, 8, 0, 8];

/// `beta2..beta9`: SU(2) CS over 552, rho over 69, degree mod 8; then the
/// induced SU(3) rho over 23 and degree mod 12.
pub const SU2_CS_552: [i64; 8] = [1, 169, 73, 265, 193, 409, 361, 49];
pub const SU2_RHO_69: [i64; 8] = [-343, -559, -475, -643, -511, -631, -451, -523];
pub const SU2_DEG: [i64; 8] = [1, 5, 3, 7, 5, 1, 7, 3];
pub const INDUCED_RHO_23: [i64; 8] = [-206, -406, -410, -402, -382, -534, -490, -434];
pub const INDUCED_DEG: [i64; 8] = [1, 9, 7, 11, 9, 5, 3, 7];

pub const SU3_CENSUS: [(i64, usize); 6] = [(0, 10), (2, 5), (4, 9), (6, 5), (8, 9), (10, 6)];
pub const INDUCED_CENSUS: [(i64, usize); 6] = [(1, 1), (3, 1), (5, 1), (7, 2), (9, 2), (11, 1)];

/// Row `r` of the SU(3) list to its label index: the first eight labels are
/// single, the rest come in conjugate pairs.
pub fn su3_label_index(row: usize) -> usize {
    if row < 8 {
        row
    } else {
        8 + (row - 8) / 2
    }
}
