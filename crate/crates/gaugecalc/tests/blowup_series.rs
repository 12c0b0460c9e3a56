use gaugecalc::blowup::{closed_b, closed_s, pde_residuals, seeds, solve_bs, BlowupError, Which};
use gaugecalc::exactnum::{int, q12, rat, CycloNum};
use gaugecalc::formal::{ElemKind, TruncatedSeries, VariableSet};
use gaugecalc::ExactSeries;
use num_traits::Zero;

fn three() -> CycloNum {
    CycloNum::rational(int(3))
}

fn min_degree(f: &ExactSeries) -> Option<u32> {
    f.terms().map(|(e, _)| e.iter().sum()).min()
}

#[test]
fn closed_form_low_coefficients() {
    let b: ExactSeries = closed_b(6);
    let s: ExactSeries = closed_s(6);
    assert_eq!(b.coefficient_of("1").unwrap(), CycloNum::rational(int(1)));
    assert_eq!(s.coefficient_of("t2^2").unwrap(), CycloNum::rational(rat(1, 2)));
    assert_eq!(s.coefficient_of("t3").unwrap(), CycloNum::rational(int(1)));
    assert!(s.coefficient_of("1").unwrap().is_zero());
    // every coefficient is real and in fact rational
    for (_, c) in b.terms().chain(s.terms()) {
        assert!(c.is_rational(), "{c}");
    }
}

#[test]
fn closed_forms_solve_all_four_pdes_to_order_12() {
    let b: ExactSeries = closed_b(16);
    let s: ExactSeries = closed_s(16);
    let res = pde_residuals(&b, &s, &three(), &CycloNum::zero());
    for (i, r) in res.iter().enumerate() {
        assert_eq!(r.order(), 12);
        assert!(r.is_zero(), "residual {} nonzero: {r}", i + 1);
    }
}

#[test]
fn zero_pair_has_zero_residuals() {
    let v = VariableSet::t2t3();
    let z = ExactSeries::zero(&v, 8);
    for r in pde_residuals(&z, &z, &three(), &CycloNum::zero()) {
        assert!(r.is_zero());
    }
}

#[test]
fn corrupted_b_is_detected() {
    // replace cos(√3 t3) by cosh(√3 t3) inside b
    let order = 10;
    let v = VariableSet::t2t3();
    let r3 = q12::sqrt3();
    let t2 = ExactSeries::variable(&v, order, "t2").unwrap();
    let t3 = ExactSeries::variable(&v, order, "t3").unwrap();
    let g = (&(&t2 * &t2).scale_rational(&rat(-1, 2)) + &(&t3 * &t3)).exp_of().unwrap();
    let inner = &ExactSeries::elem_series(&v, order, ElemKind::Cosh, &r3, "t2").unwrap()
        + &ExactSeries::elem_series(&v, order, ElemKind::Cosh, &r3, "t3").unwrap().scale_rational(&int(2));
    let bad = (&g * &inner).scale_rational(&rat(1, 3));
    let s: ExactSeries = closed_s(order);
    let res = pde_residuals(&bad, &s, &three(), &CycloNum::zero());
    // r1 only sees t2-derivatives of b, so the t3 corruption first shows
    // where t3^2 enters: degree 2 of r1.
    let b: ExactSeries = closed_b(order);
    let diff = &bad - &b;
    assert_eq!(min_degree(&diff), Some(2));
    assert!(res.iter().any(|r| !r.is_zero()));
    assert_eq!(min_degree(&res[0]), Some(2));
}

#[test]
fn parity_and_sum_identity() {
    let order = 10;
    let b: ExactSeries = closed_b(order);
    let s: ExactSeries = closed_s(order);
    assert_eq!(b.substitute_sign(&[("t2", -1)]).unwrap(), b);
    assert_eq!(b.substitute_sign(&[("t3", -1)]).unwrap(), b);
    assert_eq!(s.substitute_sign(&[("t2", -1)]).unwrap(), s);
    let v = VariableSet::t2t3();
    let t2 = ExactSeries::variable(&v, order, "t2").unwrap();
    let t3 = ExactSeries::variable(&v, order, "t3").unwrap();
    let g = (&(&t2 * &t2).scale_rational(&rat(-1, 2)) + &(&t3 * &t3)).exp_of().unwrap();
    let rhs = &g * &ExactSeries::elem_series(&v, order, ElemKind::Cosh, &q12::sqrt3(), "t2").unwrap();
    let lhs = &(&b + &s) + &s.substitute_sign(&[("t3", -1)]).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn float_closed_forms_match_exact() {
    let exact: ExactSeries = closed_s(6);
    let approx: TruncatedSeries<num_complex::Complex64> = closed_s(6);
    for (e, c) in exact.terms() {
        assert!((approx.coefficient(e) - c.embed()).norm() < 1e-12);
    }
}

#[test]
fn solver_reproduces_seeds_and_closed_forms() {
    let order = 6;
    let pair = match solve_bs(order) {
        Ok(p) => p,
        Err(e) => panic!("solver failed: {e}"),
    };
    for ((which, i, j), v) in seeds() {
        let series = if which == Which::B { &pair.b } else { &pair.s };
        assert_eq!(series.coefficient(&[i, j]), v, "seed {which:?}_{i}{j}");
    }
    for r in pair.residuals() {
        assert!(r.is_zero(), "{r}");
    }
    let (b, s) = pair.specialize(&three(), &CycloNum::zero());
    assert_eq!(b, closed_b::<CycloNum>(order));
    assert_eq!(s, closed_s::<CycloNum>(order));
}

#[test]
fn solver_rejects_tiny_order() {
    assert_eq!(solve_bs(1).unwrap_err(), BlowupError::OrderTooSmall);
}

#[test]
fn solver_handles_odd_and_small_orders() {
    let full = solve_bs(8).unwrap();
    for order in [2, 3, 5, 7] {
        let pair = solve_bs(order).unwrap_or_else(|e| panic!("order {order}: {e}"));
        for deg in 0..=order {
            for i in 0..=deg {
                let m = [i, deg - i];
                assert_eq!(pair.b.coefficient(&m), full.b.coefficient(&m), "B {m:?} at order {order}");
                assert_eq!(pair.s.coefficient(&m), full.s.coefficient(&m), "S {m:?} at order {order}");
            }
        }
    }
}
