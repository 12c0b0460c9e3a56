use std::time::Instant;

use gaugecalc::donaldson::{Hbar, HbarConfig};
use gaugecalc::eigencat::*;
use gaugecalc::exactnum::{int, q12, rat, CycloNum};
use gaugecalc::{ExactSeries, RationalPoly};
use num_traits::Zero;
use proptest::prelude::*;

fn r(q: i64) -> CycloNum {
    q12::from_rational(int(q))
}

#[test]
fn catalog_examples() {
    assert_eq!(catalog(1), vec![(0, 0)]);
    let mut g2 = catalog(2);
    g2.sort();
    let mut expect = vec![(0, 0), (2, 0), (-2, 0), (0, 2), (0, -2), (1, 1), (1, -1), (-1, 1), (-1, -1)];
    expect.sort();
    assert_eq!(g2, expect);
    for g in 1..=6u32 {
        let c = catalog_counts(g);
        let gi = g as usize;
        assert_eq!(c.all, (2 * gi - 1).pow(2));
        assert_eq!(c.even, c.formula, "both-even labels match 2g(g-1)+1");
    }
    assert_eq!(catalog_counts(3).even, 13);
    assert_eq!(catalog_counts(2), CatalogCounts { all: 9, even: 5, formula: 5 });
}

#[test]
fn tuple_examples() {
    let s = eigen_tuple(2, 0, 1, 2).unwrap();
    assert_eq!(s, [r(1), r(3), r(0), q12::sqrt3().scale(&int(2)), r(0)]);
    assert_eq!(eigen_tuple(0, 0, 2, 3).unwrap(), [r(1), r(3), r(0), r(0), r(0)]);
    let s = eigen_tuple(1, 1, 1, 2).unwrap();
    assert_eq!(s[1], q12::zeta3(2).scale(&int(3)));
    assert!(eigen_tuple(1, 0, 1, 2).is_err());
    assert!(eigen_tuple(4, 0, 1, 2).is_err());
    assert!(eigen_tuple(0, 0, 3, 2).is_err());
    assert_eq!(genus_one_aleph2(1).unwrap(), r(3));
    assert_eq!(genus_one_aleph2(2).unwrap(), r(3));
}

#[test]
fn interpolation_delta_property() {
    let start = Instant::now();
    for g in 1..=4u32 {
        for d in [1, 2] {
            let cat = catalog(g);
            let pts: Vec<[CycloNum; 3]> = cat.iter().map(|(a, b)| eigen_point(*a, *b, d)).collect();
            for i in 0..pts.len() {
                for j in 0..i {
                    assert_ne!(pts[i], pts[j]);
                }
            }
            let polys = interpolation_all(g, d).unwrap();
            assert_eq!(polys.len(), cat.len());
            for p in &polys {
                for (mu, u) in cat.iter().zip(&pts) {
                    let v = p.eval(u);
                    if *mu == p.target {
                        assert_eq!(v, r(1), "g={g} d={d} λ={:?}", p.target);
                    } else {
                        assert!(v.is_zero(), "g={g} d={d} λ={:?} μ={mu:?}", p.target);
                    }
                }
            }
        }
    }
    let p = interpolation((0, 0), 1, 1).unwrap();
    assert_eq!(p.terms, vec![([0, 0, 0], r(1))]);
    assert_eq!(p.degree(), 0);
    eprintln!("interpolation g<=4: {:?}", start.elapsed());
}

#[test]
fn eigenvalue_bound() {
    let rep = check_bound(2, 1).unwrap();
    assert_eq!(rep.max, 2);
    assert_eq!(rep.bound, 2);
    assert!(rep.holds);
    let mut at = rep.attained_at.clone();
    at.sort();
    // every label on the boundary |a|+|b| = 2 attains the maximum
    assert!(at.contains(&(2, 0)) && at.contains(&(0, -2)) && at.contains(&(1, 1)));
    let rep = check_bound(1, 2).unwrap();
    assert_eq!((rep.max, rep.bound, rep.attained_at), (0, 0, vec![(0, 0)]));
    for g in 1..=5 {
        for d in [1, 2] {
            assert!(check_bound(g, d).unwrap().holds);
        }
    }
}

#[test]
fn pairing_coefficients() {
    let hf = HbarConfig::all_formal();
    let h3 = RationalPoly::var("h3");
    let h4 = RationalPoly::var("h4");
    let got: RationalPoly = h_coefficient(2, 1, (2, 0), (1, 0), &hf).unwrap();
    assert_eq!(got, h3);
    let got: RationalPoly = h_coefficient(2, 1, (-2, 0), (-1, 0), &hf).unwrap();
    assert_eq!(got, h3);
    let got: RationalPoly = h_coefficient(2, 1, (0, 2), (0, 1), &hf).unwrap();
    assert_eq!(got, h4.clone() * RationalPoly::constant(q12::zeta3(1)));
    let got: RationalPoly = h_coefficient(2, 2, (0, -2), (0, -1), &hf).unwrap();
    assert_eq!(got, h4 * RationalPoly::constant(q12::zeta3(-2)));
    let zero: RationalPoly = h_coefficient(2, 1, (1, 1), (1, 0), &hf).unwrap();
    assert!(zero.is_zero());
    // g = 3 with ħ₁ = 2/3: ħ₃² (2/ħ₁)² = 9 ħ₃²
    let h = HbarConfig::default();
    let got: RationalPoly = h_coefficient(3, 1, (4, 0), (1, 0), &h).unwrap();
    assert_eq!(got, RationalPoly::var("h3") * RationalPoly::var("h3") * RationalPoly::constant(r(9)));
    // a formal ħ₁ cannot be divided out
    assert!(h_coefficient::<RationalPoly>(3, 1, (4, 0), (1, 0), &hf).is_err());
    // ħ₄² / ħ₂² = 25 · 9
    let numeric = HbarConfig::default().with(3, Hbar::Value(rat(1, 2))).with(4, Hbar::Value(rat(5, 1)));
    let got: CycloNum = h_coefficient(3, 1, (0, 4), (0, 1), &numeric).unwrap();
    assert_eq!(got, &q12::zeta3(1) * &q12::from_rational(rat(25 * 9, 1)));
}

#[test]
fn torus_factor_has_unit_constant_term() {
    for d in [1, 2] {
        let h: ExactSeries = h_torus(d, 6, &HbarConfig::default()).unwrap();
        assert_eq!(h.constant_term(), r(1));
    }
}

proptest! {
    #[test]
    fn tuple_sign_symmetry(g in 1u32..6, idx in 0usize..200, d in 1i64..=2) {
        let cat = catalog(g);
        let (a, b) = cat[idx % cat.len()];
        let s = eigen_tuple(a, b, d, g).unwrap();
        let m = eigen_tuple(-a, -b, d, g).unwrap();
        prop_assert_eq!(m[3].clone(), &(-&s[3]) * &q12::zeta3(-2 * d * b));
        prop_assert_eq!(m[4].clone(), &(-&s[4]) * &q12::zeta3(-d * b));
        if b % 3 == 0 {
            prop_assert_eq!(&m[3], &(-&s[3]));
            prop_assert_eq!(&m[4], &(-&s[4]));
        }
        prop_assert_eq!(&m[1], &s[1].conj());
    }
}

#[test]
fn delta_check_reports() {
    let start = Instant::now();
    for g in 1..=4u32 {
        for d in [1, 2] {
            let rep = delta_check(g, d).unwrap();
            assert!(rep.holds(), "{rep:?}");
            assert_eq!(rep.size, (2 * g as usize - 1).pow(2));
        }
    }
    eprintln!("delta_check g<=4: {:?}", start.elapsed());
    assert!(delta_check(0, 1).is_err());
    assert!(delta_check(2, 3).is_err());
}
