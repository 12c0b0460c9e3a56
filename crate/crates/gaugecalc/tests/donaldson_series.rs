use std::time::Instant;

use gaugecalc::blowup::{closed_b, closed_s};
use gaugecalc::donaldson::*;
use gaugecalc::exactnum::{factorial, int, q12, rat, CycloNum, Rational};
use gaugecalc::formal::{TruncatedSeries, VariableSet};
use gaugecalc::manifolds::*;
use gaugecalc::{ExactSeries, FormalSeries, RationalPoly};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn h() -> HbarConfig {
    HbarConfig::default()
}

fn c(l: &Lattice, e: &str) -> Vec<i64> {
    l.parse_class(e).unwrap()
}

/// `exp(x t2² + y t3²)` from its coefficient formula.
fn gauss_oracle(x: i64, y: i64, order: u32) -> ExactSeries {
    let v = VariableSet::t2t3();
    let mut terms = Vec::new();
    for a in 0..=order / 2 {
        for b in 0..=(order / 2 - a) {
            let q = Rational::new(num_bigint::BigInt::from(x).pow(a) * num_bigint::BigInt::from(y).pow(b), factorial(a) * factorial(b));
            terms.push((vec![2 * a, 2 * b], CycloNum::rational(q)));
        }
    }
    TruncatedSeries::from_terms(&v, order, terms).unwrap()
}

fn random_class(rng: &mut StdRng, l: &Lattice, names: &[&str]) -> Vec<i64> {
    let mut v = l.zero();
    for n in names {
        v[l.index(n).unwrap()] = rng.gen_range(-2..=2);
    }
    v
}

#[test]
fn k3_series_is_gaussian() {
    let t = k3_triple::<CycloNum>();
    let l = t.model.lattice.clone();
    let s = dhat_series(&t, &SeriesRequest::new(c(&l, "f"), c(&l, "2f+sigma"), l.zero(), 8)).unwrap();
    assert_eq!(s, gauss_oracle(1, 0, 8));

    let mut rng = StdRng::seed_from_u64(7);
    let names = ["f", "sigma", "e8_1_1", "e8_1_5", "e8_2_8", "g_1", "tau_1", "tau_2"];
    for _ in 0..5 {
        let (g, lam) = (random_class(&mut rng, &l, &names), random_class(&mut rng, &l, &names));
        let (qg, ql) = (l.q_form(&g).unwrap(), l.q_form(&lam).unwrap());
        assert_eq!(qg % 2, 0, "K3 is even");
        let expect = gauss_oracle(qg / 2, -ql, 10);
        for w in ["0", "sigma", "2sigma+e8_1_1"] {
            let req = SeriesRequest::new(c(&l, w), g.clone(), lam.clone(), 10);
            assert_eq!(dhat_series(&t, &req).unwrap(), expect);
            assert_eq!(d_series(&t, &req.clone().a2(3)).unwrap(), d_series(&t, &req).unwrap().scale_rational(&int(27)));
            assert!(d_series(&t, &req.clone().a3(1)).unwrap().is_zero());
        }
    }
}

#[test]
fn constant_terms_of_presets() {
    let t = elliptic_triple::<CycloNum>(3, &h()).unwrap();
    let l = &t.model.lattice;
    let s = dhat_series(&t, &SeriesRequest::new(c(l, "sigma"), l.zero(), l.zero(), 6)).unwrap();
    assert_eq!(s, ExactSeries::one(&VariableSet::t2t3(), 6));

    let t = k3_triple::<CycloNum>().blow_up();
    let l = &t.model.lattice;
    let s = dhat_series(&t, &SeriesRequest::new(c(l, "f"), l.zero(), l.zero(), 6)).unwrap();
    assert_eq!(s, ExactSeries::one(&VariableSet::t2t3(), 6));
}

#[test]
fn basic_classes_reproduce_the_elliptic_formula() {
    let mut rng = StdRng::seed_from_u64(11);
    for n in 3..=5u32 {
        let t = elliptic_triple::<CycloNum>(n, &h()).unwrap();
        let l = t.model.lattice.clone();
        let names = ["f", "sigma", "e8_1_2", "g_1", "tau_3"];
        for _ in 0..3 {
            let (g, lam, w) =
                (random_class(&mut rng, &l, &names), random_class(&mut rng, &l, &names), random_class(&mut rng, &l, &names));
            let a = dhat_series(&t, &SeriesRequest::new(w.clone(), g.clone(), lam.clone(), 8)).unwrap();
            let b = elliptic_direct::<CycloNum>(n, &w, &g, &lam, 8, &h()).unwrap();
            assert_eq!(a, b, "E({n})");
            // even in t2: the Γ pairings only enter through cosh
            assert_eq!(a.substitute_sign(&[("t2", -1)]).unwrap(), a);
        }
    }
    // symbolic constants
    let hf = HbarConfig::all_formal();
    let t = elliptic_triple::<RationalPoly>(4, &hf).unwrap();
    let l = &t.model.lattice;
    let (w, g, lam) = (c(l, "sigma"), c(l, "f+2sigma-g_1"), c(l, "sigma+tau_2"));
    let a = dhat_series(&t, &SeriesRequest::new(w.clone(), g.clone(), lam.clone(), 6)).unwrap();
    assert_eq!(a, elliptic_direct::<RationalPoly>(4, &w, &g, &lam, 6, &hf).unwrap());
    assert!(elliptic_direct::<CycloNum>(1, &w, &g, &lam, 6, &hf).is_err());
}

#[test]
fn blowup_factor_is_b_or_s() {
    let t = k3_triple::<CycloNum>().blow_up();
    let l = &t.model.lattice;
    let order = 8;
    let b = dhat_series(&t, &SeriesRequest::new(c(l, "f"), c(l, "E1"), c(l, "E1"), order)).unwrap();
    assert_eq!(b, closed_b::<CycloNum>(order));
    // w·E = 1; E·Γ = E·Λ = 1
    let s = dhat_series(&t, &SeriesRequest::new(c(l, "-E1"), c(l, "-E1"), c(l, "-E1"), order)).unwrap();
    assert_eq!(s, closed_s::<CycloNum>(order));
}

#[test]
fn zeta_averaging_is_periodic_and_sums_to_dhat() {
    let t = elliptic_triple::<CycloNum>(3, &h()).unwrap();
    let l = &t.model.lattice;
    let req = SeriesRequest::new(c(l, "sigma"), c(l, "f+sigma"), c(l, "sigma-g_2"), 6);
    let parts: Vec<ExactSeries> = (0..3)
        .map(|m| d_series(&t, &req.clone().a2(m)).unwrap().scale_rational(&Rational::new(1.into(), 3.into()).pow(m as i32)))
        .collect();
    let total = &(&parts[0] + &parts[1]) + &parts[2];
    assert_eq!(total, dhat_series(&t, &req).unwrap());
    let m4 = d_series(&t, &req.clone().a2(4)).unwrap().scale_rational(&rat(1, 81));
    assert_eq!(m4, parts[1]);
}

/// Glues classes of `E(a)` and `E(b)` meeting the fiber equally into `E(a+b)`.
fn glue(a: u32, b: u32, x: &[i64], y: &[i64]) -> Vec<i64> {
    let v = glue_elliptic_classes(a, b, x, y).unwrap();
    let (la, lb, l) = (elliptic_lattice(a).unwrap(), elliptic_lattice(b).unwrap(), elliptic_lattice(a + b).unwrap());
    assert_eq!(l.q_form(&v).unwrap(), la.q_form(x).unwrap() + lb.q_form(y).unwrap());
    v
}

#[test]
fn torus_fiber_sums_reproduce_elliptic_surfaces() {
    let hf = HbarConfig::all_formal();
    let order = 8;
    let mut rng = StdRng::seed_from_u64(5);
    for (a, b) in [(2u32, 2u32), (2, 3), (3, 3), (2, 4)] {
        let (la, lb) = (elliptic_lattice(a).unwrap(), elliptic_lattice(b).unwrap());
        let pick = |rng: &mut StdRng, l: &Lattice| {
            let mut v = random_class(rng, l, &["f", "e8_1_3", "g_1", "tau_2"]);
            v[1] = 1;
            v
        };
        let (ga, la_) = (pick(&mut rng, &la), pick(&mut rng, &la));
        let (gb, lb_) = (pick(&mut rng, &lb), pick(&mut rng, &lb));
        let wa = la.class("sigma").unwrap();
        let wb = lb.class("sigma").unwrap();
        let da: FormalSeries = elliptic_direct(a, &wa, &ga, &la_, order, &hf).unwrap();
        let db: FormalSeries = elliptic_direct(b, &wb, &gb, &lb_, order, &hf).unwrap();
        let sum = torus_fiber_sum(&da, &db, 1, &hf).unwrap();
        let (g, lam, w) = (glue(a, b, &ga, &gb), glue(a, b, &la_, &lb_), glue(a, b, &wa, &wb));
        let direct: FormalSeries = elliptic_direct(a + b, &w, &g, &lam, order, &hf).unwrap();
        assert_eq!(sum, direct, "E({a}) + E({b})");
        let t = elliptic_triple::<RationalPoly>(a + b, &hf).unwrap();
        assert_eq!(dhat_series(&t, &SeriesRequest::new(w, g, lam, order)).unwrap(), direct);
    }
    // commutativity
    let v = VariableSet::t2t3();
    let x = FormalSeries::variable(&v, 6, "t2").unwrap().exp_of().unwrap();
    let y = FormalSeries::variable(&v, 6, "t3").unwrap();
    assert_eq!(torus_fiber_sum(&x, &y, 2, &hf).unwrap(), torus_fiber_sum(&y, &x, 2, &hf).unwrap());
}

#[test]
fn universal_gluing_identity() {
    let order = 8;
    let mut rng = StdRng::seed_from_u64(3);
    let l2 = elliptic_lattice(2).unwrap();
    let inputs: Vec<(Vec<i64>, Vec<i64>)> = (0..4)
        .map(|_| {
            let mut g = random_class(&mut rng, &l2, &["f", "e8_2_1", "g_2", "tau_1"]);
            let mut lam = random_class(&mut rng, &l2, &["f", "e8_1_7", "tau_2"]);
            g[1] = 1;
            lam[1] = 1;
            (g, lam)
        })
        .collect();
    let t = elliptic_triple::<CycloNum>(4, &h()).unwrap();
    let l4 = t.model.lattice.clone();
    let w2 = l2.class("sigma").unwrap();
    let f4 = l4.class("f").unwrap();
    let d = |i: usize, k: usize| -> ExactSeries {
        let g = glue(2, 2, &inputs[i].0, &inputs[k].0);
        let lam = glue(2, 2, &inputs[i].1, &inputs[k].1);
        let w = glue(2, 2, &w2, &w2);
        let mut acc = ExactSeries::zero(&VariableSet::t2t3(), order);
        for j in 0..3 {
            let wj: Vec<i64> = w.iter().zip(&f4).map(|(a, b)| a + j * b).collect();
            acc = &acc + &d_series(&t, &SeriesRequest::new(wj, g.clone(), lam.clone(), order)).unwrap();
        }
        acc
    };
    let lhs = &d(0, 1) * &d(2, 3);
    let rhs = &d(0, 3) * &d(2, 1);
    assert!(!lhs.is_zero());
    assert_eq!(lhs, rhs);
}

#[test]
fn genus_two_fiber_sum_coefficient() {
    let hf = HbarConfig::all_formal();
    let t: PermissibleTriple<RationalPoly> = blown_up_k3_triple(2).unwrap();
    let s = fiber_sum(&t, &t, &hf).unwrap();
    let l = &s.model.lattice;
    // K = E1 + E2 on both sides, shifted by 2Σ on the first
    let k1 = t.model.lattice.covector(&t.model.lattice.parse_class("E1+E2").unwrap());
    let sig = t.model.lattice.covector(&t.surface);
    let fused: Vec<i64> = k1.iter().zip(&sig).map(|(a, b)| a + 2 * b).chain(k1.iter().copied()).collect();
    let coef = s.pair_map()[&(fused.clone(), fused)].clone();
    let expect = RationalPoly::var("h3") * RationalPoly::constant(CycloNum::rational(rat(1, 36 * 36)));
    assert_eq!(coef, expect);
    assert_eq!(s.classes.len(), 2);
    assert_eq!(s.genus, 2);
    assert_eq!(l.rank(), 2 * t.model.lattice.rank());
    assert!(fiber_sum(&t, &blown_up_k3_triple::<RationalPoly>(3).unwrap(), &hf).is_err());
}

#[test]
fn xm4_fiber_sum_matches_closed_formula() {
    let hf = HbarConfig::all_formal();
    for m in 3..=4u32 {
        let t = xm4_triple::<RationalPoly>(m, &hf).unwrap();
        let l = t.model.lattice.clone();
        // classes Γ_a # Γ_b with Γ_a·Σ = Γ_b·Σ
        let g = c(&l, &format!("a.f+b.f+a.e8_1_1+b.g_1"));
        let lam = c(&l, &format!("a.sigma+b.sigma+{}a.f+{}b.f-b.tau_1", 0, 0));
        let w = t.w.clone();
        assert!(t.model.admits(&g) && t.model.admits(&lam));
        let a = dhat_series(&t, &SeriesRequest::new(w.clone(), g.clone(), lam.clone(), 8)).unwrap();
        let b = xm4_direct::<RationalPoly>(m, &w, &g, &lam, 8, &hf).unwrap();
        assert_eq!(a, b, "X({m},4)");
        let bad = c(&l, "a.f");
        assert!(matches!(
            dhat_series(&t, &SeriesRequest::new(w.clone(), bad, l.zero(), 4)),
            Err(DonaldsonError::OutsideSubspace(_))
        ));
        assert!(matches!(d_series(&t, &SeriesRequest::new(w, g, lam, 4)), Err(DonaldsonError::NotSimpleType(_))));
    }
    assert!(xm4_triple::<CycloNum>(3, &h()).is_err(), "h3 has no value");
}

#[test]
fn cycle_shift_and_orientation_flip() {
    let mut triples: Vec<(PermissibleTriple<CycloNum>, &str, &str, &str)> = vec![
        (elliptic_triple(3, &h()).unwrap(), "sigma", "f+sigma-g_1", "2sigma+tau_1"),
        (elliptic_triple(4, &h()).unwrap(), "sigma", "f+sigma+e8_3_2", "sigma-f"),
        (k3_triple::<CycloNum>().blow_up(), "sigma+E1", "f+E1", "sigma-2E1"),
    ];
    triples.push((k3_triple(), "sigma", "f+sigma", "f"));
    for (t, shift, g, lam) in &triples {
        let l = &t.model.lattice;
        let r = check_tau_and_cycle_relations(t, &c(l, shift), &c(l, g), &c(l, lam), 8).unwrap();
        assert!(r.shift_invariant && r.flip_matches, "{}: {r:?}", t.model.label);
    }
    // E(4) with w = f, w' = sigma
    let t = elliptic_triple::<CycloNum>(4, &h()).unwrap().with_w(vec![0; 46]);
    assert!(t.is_err(), "w·Σ = 0 is not permissible");
}

#[test]
fn negative_three_sphere_relations() {
    let start = Instant::now();
    let r = check_negative_sphere(10).unwrap();
    assert_eq!(r.constant, CycloNum::rational(int(-3)));
    assert!(r.first, "w·σ ≡ 1 identity");
    assert!(r.second, "w·σ ≡ 2 identity");
    assert_eq!(r.vanishing, [true, true]);
    assert!(r.all_hold());
    eprintln!("sphere check: {:?}", start.elapsed());
}

#[test]
fn minus_two_sphere_relations_on_k3() {
    let t = k3_triple::<CycloNum>();
    let l = t.model.lattice.clone();
    let tau = c(&l, "tau_1");
    let w = c(&l, "sigma");
    let w_tau = c(&l, "sigma+tau_1");
    let (g, lam) = (c(&l, "f+e8_1_1"), c(&l, "2f+sigma+g_2"));
    assert_eq!(l.pair(&g, &tau).unwrap(), 0);
    assert_eq!(l.pair(&w, &tau).unwrap(), 0);
    let d = |w: &[i64], ins: &[(Slot, u32)], a2: u32| -> ExactSeries {
        let mut req = SeriesRequest::new(w.to_vec(), g.clone(), lam.clone(), 8).a2(a2);
        for (s, k) in ins {
            req = req.insert(&tau, *s, *k);
        }
        d_series(&t, &req).unwrap()
    };
    use Slot::{Three, Two};
    for m in 0..3 {
        let third = |s: ExactSeries, j: u32| s.scale_rational(&Rational::new(1.into(), num_bigint::BigInt::from(3).pow(j)));
        assert_eq!(third(d(&w, &[(Two, 2)], m), m), third(d(&w_tau, &[], m), m).scale_rational(&int(-2)));
        let lhs = d(&w, &[(Two, 4)], m);
        let rhs = &d(&w, &[(Two, 2)], m + 1).scale_rational(&int(-4)) - &d(&w, &[(Three, 2)], m).scale_rational(&int(3));
        assert_eq!(lhs, rhs);
        let lhs = d(&w, &[(Two, 3), (Three, 1)], m);
        let rhs = d(&w, &[(Two, 1), (Three, 1)], m + 1).neg();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn float_evaluation_agrees() {
    let t = elliptic_triple::<CycloNum>(4, &h()).unwrap();
    let tf = t.map_coeffs(|x| x.embed());
    let l = &t.model.lattice;
    let req = SeriesRequest::new(c(l, "sigma"), c(l, "f+sigma"), c(l, "sigma-tau_1"), 6);
    let a = dhat_series(&t, &req).unwrap();
    let b = dhat_series(&tf, &req).unwrap();
    for (e, x) in a.terms() {
        assert!((b.coefficient(e) - x.embed()).norm() < 1e-9);
    }
    assert_eq!(h().unit_sum(), Some(true));
    assert_eq!(HbarConfig::all_formal().unit_sum(), None);
    let _ = (q12::sqrt3(), CycloNum::one());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn simple_type_on_elliptic_surfaces(n in 2u32..=4, a in -2i64..=2, b in -2i64..=2, k in -2i64..=2, m in 0u32..3) {
        let t = elliptic_triple::<CycloNum>(n, &HbarConfig::default()).unwrap();
        let l = &t.model.lattice;
        let g = l.parse_class(&format!("{a}f+sigma-e8_1_2")).unwrap();
        let lam = l.parse_class(&format!("{b}sigma+g_1")).unwrap();
        let w = l.parse_class(&format!("{k}f+sigma")).unwrap();
        let req = SeriesRequest::new(w, g, lam, 6).a2(m);
        let base = d_series(&t, &req).unwrap();
        prop_assert_eq!(d_series(&t, &req.clone().a2(m + 3)).unwrap(), base.scale_rational(&int(27)));
        prop_assert!(d_series(&t, &req.a3(1)).unwrap().is_zero());
    }
}

#[test]
fn zero_insertions_reduce_to_plain_series() {
    let t = k3_triple::<CycloNum>().blow_up();
    let l = &t.model.lattice;
    let req = SeriesRequest::new(c(l, "f"), c(l, "E1+f"), l.zero(), 6);
    let plain = dhat_series(&t, &req).unwrap();
    let with = dhat_series(&t, &req.clone().insert(&c(l, "sigma+E1"), Slot::Two, 0)).unwrap();
    assert_eq!(plain, with);
    assert!(!plain.constant_term().is_zero());
}
