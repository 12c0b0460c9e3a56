use std::collections::BTreeMap;
use std::time::Instant;

use gaugecalc::brieskorn::*;
use gaugecalc::exactnum::{rat, Rational};
use num_traits::ToPrimitive;
use proptest::prelude::*;

const TABLE1: [(i64, i64, i64); 44] = [
    (0, 4, 19), (0, 5, 18), (0, 6, 17), (0, 7, 16), (0, 8, 15), (0, 9, 14), (0, 10, 13), (0, 11, 12),
    (1, 4, 18), (5, 19, 22), (1, 5, 17), (6, 18, 22), (1, 6, 16), (7, 17, 22), (1, 7, 15), (8, 16, 22),
    (1, 8, 14), (9, 15, 22), (1, 9, 13), (10, 14, 22), (1, 10, 12), (11, 13, 22), (2, 4, 17), (6, 19, 21),
    (2, 5, 16), (7, 18, 21), (2, 6, 15), (8, 17, 21), (2, 7, 14), (9, 16, 21), (2, 8, 13), (10, 15, 21),
    (2, 9, 12), (11, 14, 21), (3, 4, 16), (7, 19, 20), (3, 5, 15), (8, 18, 20), (3, 6, 14), (9, 17, 20),
    (3, 7, 13), (10, 16, 20), (3, 8, 12), (11, 15, 20),
];
// per label alpha1..alpha26; numerators over 138 and 23
const CS_138: [i64; 26] = [1, 49, 31, 85, 73, 133, 127, 55, 43, 127, 7, 97, 121, 79, 109, 19, 1, 55, 43, 103, 97, 67, 85, 37, 61, 19];
const RHO_23: [i64; 26] = [
    -364, -540, -520, -488, -444, -572, -504, -424, -472, -412, -524, -532, -528, -420, -484, -476, -456, -516, -472,
    -508, -440, -468, -488, -404, -492, -476,
];
const DEG: [i64; 26] = [4, 0, 10, 2, 0, 8, 6, 10, 10, 4, 8, 4, 6, 0, 4, 8, 6, 0, 10, 4, 2, 0, 2, 8, 0, 8];
// beta2..beta9
const SU2_CS_552: [i64; 8] = [1, 169, 73, 265, 193, 409, 361, 49];
const SU2_RHO_69: [i64; 8] = [-343, -559, -475, -643, -511, -631, -451, -523];
const SU3_RHO_23: [i64; 8] = [-206, -406, -410, -402, -382, -534, -490, -434];
const SU2_DEG: [i64; 8] = [1, 5, 3, 7, 5, 1, 7, 3];
const SU3_DEG: [i64; 8] = [1, 9, 7, 11, 9, 5, 3, 7];

fn label_index(row: usize) -> usize {
    if row < 8 {
        row
    } else {
        8 + (row - 8) / 2
    }
}

fn data() -> SeifertData {
    seifert_invariants(2, 3, 23).unwrap()
}

#[test]
fn seifert_examples() {
    let d = data();
    assert_eq!((d.product, d.beta), (138, [1, 1, -19]));
    assert_eq!(seifert_invariants(2, 3, 5).unwrap().beta, [1, 1, -4]);
    assert_eq!(seifert_invariants(2, 3, 7).unwrap().beta, [1, -1, -1]);
    assert!(seifert_invariants(2, 4, 7).is_err());
}

#[test]
fn rho_lens_examples() {
    assert_eq!(rho_lens(7, 3, 0).unwrap(), rat(0, 1));
    assert_eq!(rho_lens(2, 1, 1).unwrap(), rat(0, 1));
    // L(3,1), j=1: k=1,2 each give cot² sin² = (1/3)(3/4) = 1/4, times -4/3
    assert_eq!(rho_lens(3, 1, 1).unwrap(), rat(-2, 3));
    assert!(rho_lens(6, 2, 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn rho_lens_symmetry_and_float_agreement(a in 2u64..30, b in 1i64..30, j in 0i64..30) {
        let ai = a as i64;
        prop_assume!(num_integer::gcd(b, ai) == 1);
        let j = j % ai;
        let x = rho_lens(a, b, j).unwrap();
        prop_assert_eq!(&x, &rho_lens(a, b, ai - j).unwrap());
        prop_assert!((x.to_f64().unwrap() - rho_lens_f64(a, b, j)).abs() < 1e-9);
    }
}

#[test]
fn su3_enumeration_matches_tables() {
    let start = Instant::now();
    let d = data();
    let conns = enumerate_flat(&d, Group::Su3).unwrap();
    let triples: Vec<(i64, i64, i64)> =
        conns.iter().map(|c| (c.exponents[2][0], c.exponents[2][1], c.exponents[2][2])).collect();
    assert_eq!(triples, TABLE1.to_vec());
    for (row, c) in conns.iter().enumerate() {
        let l = label_index(row);
        assert!(!c.flagged, "{}", c.label);
        assert!(c.witness_residual.unwrap() < 1e-9);
        assert_eq!(c.cs, rat(CS_138[l], 138), "cs {}", c.label);
        assert_eq!(c.rho, rat(RHO_23[l], 23), "rho {}", c.label);
        assert_eq!(c.degree, DEG[l], "deg {}", c.label);
        assert!(degree_value(c).is_integer());
    }
    assert_eq!(conns[0].label, "alpha1");
    assert_eq!(conns[8].label, "alpha9_1");
    assert_eq!(conns[9].label, "alpha9_2");
    assert!(start.elapsed().as_secs() < 30);
}

#[test]
fn su2_data_matches_table4() {
    let d = data();
    let su2 = enumerate_flat(&d, Group::Su2).unwrap();
    assert_eq!(su2.len(), 8);
    let su3 = su2_in_su3(&d).unwrap();
    for (i, (c, c3)) in su2.iter().zip(&su3).enumerate() {
        assert_eq!(c.label, format!("beta{}", i + 2));
        assert_eq!(c.exponents[2][0], 23 - 2 * (i as i64 + 2));
        assert_eq!(c.cs, rat(SU2_CS_552[i], 552));
        assert_eq!(c.rho, rat(SU2_RHO_69[i], 69));
        assert_eq!(c.degree, SU2_DEG[i]);
        assert_eq!(c3.cs, c.cs);
        assert_eq!(c3.rho, rat(SU3_RHO_23[i], 23));
        assert_eq!(c3.degree, SU3_DEG[i]);
        assert!(degree_value(c).is_integer() && degree_value(c3).is_integer());
    }
}

#[test]
fn census_matches() {
    let d = data();
    let su3 = enumerate_flat(&d, Group::Su3).unwrap();
    let expect: BTreeMap<i64, usize> = [(0, 10), (2, 5), (4, 9), (6, 5), (8, 9), (10, 6)].into_iter().collect();
    assert_eq!(census(&su3), expect);
    let red: BTreeMap<i64, usize> = [(1, 1), (3, 1), (5, 1), (7, 2), (9, 2), (11, 1)].into_iter().collect();
    assert_eq!(census(&su2_in_su3(&d).unwrap()), red);
    let su2 = census(&enumerate_flat(&d, Group::Su2).unwrap());
    assert_eq!(su2, [(1, 2), (3, 2), (5, 2), (7, 2)].into_iter().collect());
}

#[test]
fn cs_is_independent_of_lift_choices() {
    let d = data();
    for c in enumerate_flat(&d, Group::Su3).unwrap() {
        assert_eq!(su3_cs_over_lifts(&d, &c).unwrap(), vec![c.cs.clone()], "{}", c.label);
    }
}

#[test]
fn conjugate_pairs_share_invariants() {
    let conns = enumerate_flat(&data(), Group::Su3).unwrap();
    for pair in conns[8..].chunks(2) {
        assert_eq!(pair[0].cs, pair[1].cs);
        assert_eq!(pair[0].rho, pair[1].rho);
        assert_eq!(pair[0].degree, pair[1].degree);
    }
}

#[test]
fn smaller_spheres() {
    let d = seifert_invariants(2, 3, 5).unwrap();
    let su2 = enumerate_flat(&d, Group::Su2).unwrap();
    assert_eq!(su2.len(), 2);
    for c in &su2 {
        assert!(degree_value(c).is_integer());
    }
    let t = trivial(3);
    assert_eq!((t.cs.clone(), t.rho.clone(), t.degree), (Rational::from_integer(0.into()), rat(0, 1), 0));
    assert!(enumerate_flat(&seifert_invariants(3, 4, 5).unwrap(), Group::Su3).is_err());
}
