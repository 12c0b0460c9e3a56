//! Blowup series `B`, `S` (and their simple-type closed forms `b`, `s`), the
//! four PDEs they satisfy, and an order-by-order solver over `Q[a2, a3]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{int, rat, CycloScalar, QAlgebra, Rational, Ring};
use crate::formal::{ElemKind, Poly, TruncatedSeries, VariableSet};
use crate::{CycloNum, FormalSeries, RationalPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlowupError {
    #[error("underdetermined at degree {0}")]
    Underdetermined(u32),
    #[error("inconsistent at degree {0}")]
    Inconsistent(u32),
    #[error("order must be at least 2")]
    OrderTooSmall,
}

/// `e^{-t2^2/2 + t3^2}`.
fn gaussian<R: CycloScalar>(v: &Arc<VariableSet>, order: u32) -> TruncatedSeries<R> {
    let t2 = TruncatedSeries::<R>::variable(v, order, "t2").expect("t2");
    let t3 = TruncatedSeries::<R>::variable(v, order, "t3").expect("t3");
    let q = &(&t2 * &t2).scale_rational(&rat(-1, 2)) + &(&t3 * &t3);
    q.exp_of().expect("zero constant term")
}

fn trig<R: CycloScalar>(v: &Arc<VariableSet>, order: u32, kind: ElemKind, name: &str) -> TruncatedSeries<R> {
    TruncatedSeries::elem_series(v, order, kind, &R::sqrt3(), name).expect("known variable")
}

/// `b = (1/3) e^{-t2^2/2+t3^2} (cosh(√3 t2) + 2 cos(√3 t3))`.
pub fn closed_b<R: CycloScalar>(order: u32) -> TruncatedSeries<R> {
    let v = VariableSet::t2t3();
    let inner = &trig::<R>(&v, order, ElemKind::Cosh, "t2") + &trig::<R>(&v, order, ElemKind::Cos, "t3").scale_rational(&int(2));
    (&gaussian::<R>(&v, order) * &inner).scale_rational(&rat(1, 3))
}

/// `s = (1/3) e^{-t2^2/2+t3^2} (cosh(√3 t2) - cos(√3 t3) + √3 sin(√3 t3))`.
pub fn closed_s<R: CycloScalar>(order: u32) -> TruncatedSeries<R> {
    let v = VariableSet::t2t3();
    let sin = trig::<R>(&v, order, ElemKind::Sin, "t3").scale(&R::sqrt3());
    let inner = &(&trig::<R>(&v, order, ElemKind::Cosh, "t2") - &trig::<R>(&v, order, ElemKind::Cos, "t3")) + &sin;
    (&gaussian::<R>(&v, order) * &inner).scale_rational(&rat(1, 3))
}

fn d<R: Ring>(f: &TruncatedSeries<R>, n2: u32, n3: u32) -> TruncatedSeries<R> {
    f.pde_apply(&[("t2", n2), ("t3", n3)]).expect("series in t2, t3")
}

fn tau<R: Ring>(f: &TruncatedSeries<R>) -> TruncatedSeries<R> {
    f.substitute_sign(&[("t2", -1), ("t3", -1)]).expect("series in t2, t3")
}

/// The four PDE residuals for a pair `(B, S)`, where `tau` maps
/// `(t2, t3) -> (-t2, -t3)`:
///
/// 1. `B22 B - B2 B2 + (S∘tau) S`
/// 2. `S22 S - S2 S2 + (S∘tau) B`
/// 3. `B2222 B - 4 B222 B2 + 3 B22 B22 + 4 a2 (B22 B - B2 B2) + 3 (B33 B - B3 B3)`
/// 4. `B2223 B - 3 B223 B2 - B222 B3 + 3 B22 B23 + 3 a3 (B22 B - B2 B2) + a2 (B23 B - B2 B3)`
///
/// All four are truncated at `order - 4`.
pub fn pde_residuals<R: QAlgebra>(
    b: &TruncatedSeries<R>,
    s: &TruncatedSeries<R>,
    a2: &R,
    a3: &R,
) -> [TruncatedSeries<R>; 4] {
    let order = b.order().min(s.order()).saturating_sub(4);
    let (b, s) = (b.truncate(order + 4), s.truncate(order + 4));
    let st = tau(&s);
    let r1 = &(&(&d(&b, 2, 0) * &b) - &(&d(&b, 1, 0) * &d(&b, 1, 0))) + &(&st * &s);
    let r2 = &(&(&d(&s, 2, 0) * &s) - &(&d(&s, 1, 0) * &d(&s, 1, 0))) + &(&st * &b);
    let w22 = &(&d(&b, 2, 0) * &b) - &(&d(&b, 1, 0) * &d(&b, 1, 0));
    let w33 = &(&d(&b, 0, 2) * &b) - &(&d(&b, 0, 1) * &d(&b, 0, 1));
    let w23 = &(&d(&b, 1, 1) * &b) - &(&d(&b, 1, 0) * &d(&b, 0, 1));
    let four = int(4);
    let three = int(3);
    let r3 = &(&(&(&d(&b, 4, 0) * &b) - &(&d(&b, 3, 0) * &d(&b, 1, 0)).scale_rational(&four))
        + &(&d(&b, 2, 0) * &d(&b, 2, 0)).scale_rational(&three))
        + &(&w22.scale(&a2.scale_rational(&four)) + &w33.scale_rational(&three));
    let r4 = &(&(&(&d(&b, 3, 1) * &b) - &(&d(&b, 2, 1) * &d(&b, 1, 0)).scale_rational(&three))
        - &(&d(&b, 3, 0) * &d(&b, 0, 1)))
        + &(&(&(&d(&b, 2, 0) * &d(&b, 1, 1)).scale_rational(&three) + &w22.scale(&a3.scale_rational(&three)))
            + &w23.scale(a2));
    [r1, r2, r3, r4].map(|r| r.truncate(order))
}

/// A solved pair over `Q(zeta12)[a2, a3]`.
#[derive(Clone, Debug)]
pub struct BlowupPair {
    pub b: FormalSeries,
    pub s: FormalSeries,
    pub order: u32,
}

impl BlowupPair {
    /// Substitutes numeric values for `a2`, `a3`.
    pub fn specialize(&self, a2: &CycloNum, a3: &CycloNum) -> (TruncatedSeries<CycloNum>, TruncatedSeries<CycloNum>) {
        let f = |p: &RationalPoly| {
            p.substitute("a2", a2)
                .substitute("a3", a3)
                .constant_value()
                .expect("only a2, a3 occur")
        };
        (self.b.map_coeffs(f), self.s.map_coeffs(f))
    }

    pub fn residuals(&self) -> [FormalSeries; 4] {
        pde_residuals(&self.b, &self.s, &Poly::var("a2"), &Poly::var("a3"))
    }
}

/// Seed coefficients: `B_{ij}` for `i <= 2, j <= 1`, and `S_{i0}` for
/// `i <= 5` together with `S_{01}`.
pub fn seeds() -> Vec<((Which, u32, u32), RationalPoly)> {
    let c = |q: Rational| Poly::constant(CycloNum::rational(q));
    let mut out = Vec::new();
    for i in 0..=2 {
        for j in 0..=1 {
            let v = if i == 0 && j == 0 { c(int(1)) } else { RationalPoly::zero() };
            out.push(((Which::B, i, j), v));
        }
    }
    out.push(((Which::S, 0, 0), RationalPoly::zero()));
    out.push(((Which::S, 1, 0), RationalPoly::zero()));
    out.push(((Which::S, 2, 0), c(rat(1, 2))));
    out.push(((Which::S, 3, 0), RationalPoly::zero()));
    out.push(((Which::S, 4, 0), RationalPoly::var("a2").scale_rational(&rat(-1, 24))));
    out.push(((Which::S, 5, 0), RationalPoly::var("a3").scale_rational(&rat(-1, 120))));
    out.push(((Which::S, 0, 1), c(int(1))));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Which {
    B,
    S,
}

type Key = (Which, u32, u32);

#[derive(Clone, Copy)]
struct Factor {
    which: Which,
    d2: u32,
    d3: u32,
    tau: bool,
}

const fn f(which: Which, d2: u32, d3: u32) -> Factor {
    Factor { which, d2, d3, tau: false }
}

struct Term {
    coef: RationalPoly,
    l: Factor,
    r: Factor,
}

fn residual_terms() -> Vec<(u32, Vec<Term>)> {
    use Which::{B, S};
    let k = |q: i64| Poly::constant(CycloNum::rational(int(q)));
    let a2 = || RationalPoly::var("a2");
    let a3 = || RationalPoly::var("a3");
    let st = Factor { which: S, d2: 0, d3: 0, tau: true };
    let t = |coef: RationalPoly, l: Factor, r: Factor| Term { coef, l, r };
    vec![
        (2, vec![t(k(1), f(B, 2, 0), f(B, 0, 0)), t(k(-1), f(B, 1, 0), f(B, 1, 0)), t(k(1), st, f(S, 0, 0))]),
        (2, vec![t(k(1), f(S, 2, 0), f(S, 0, 0)), t(k(-1), f(S, 1, 0), f(S, 1, 0)), t(k(1), st, f(B, 0, 0))]),
        (
            4,
            vec![
                t(k(1), f(B, 4, 0), f(B, 0, 0)),
                t(k(-4), f(B, 3, 0), f(B, 1, 0)),
                t(k(3), f(B, 2, 0), f(B, 2, 0)),
                t(a2().scale_rational(&int(4)), f(B, 2, 0), f(B, 0, 0)),
                t(a2().scale_rational(&int(-4)), f(B, 1, 0), f(B, 1, 0)),
                t(k(3), f(B, 0, 2), f(B, 0, 0)),
                t(k(-3), f(B, 0, 1), f(B, 0, 1)),
            ],
        ),
        (
            4,
            vec![
                t(k(1), f(B, 3, 1), f(B, 0, 0)),
                t(k(-3), f(B, 2, 1), f(B, 1, 0)),
                t(k(-1), f(B, 3, 0), f(B, 0, 1)),
                t(k(3), f(B, 2, 0), f(B, 1, 1)),
                t(a3().scale_rational(&int(3)), f(B, 2, 0), f(B, 0, 0)),
                t(a3().scale_rational(&int(-3)), f(B, 1, 0), f(B, 1, 0)),
                t(a2(), f(B, 1, 1), f(B, 0, 0)),
                t(a2().neg_ref(), f(B, 1, 0), f(B, 0, 1)),
            ],
        ),
    ]
}

fn falling(n: u32, k: u32) -> i64 {
    (0..k).map(|j| i64::from(n - j)).product()
}

enum Val {
    Known(RationalPoly),
    Unknown(Key, RationalPoly),
}

/// `const + Σ coef * unknown`; `None` when a product of two unknowns occurs.
fn equation(
    known: &BTreeMap<Key, RationalPoly>,
    terms: &[Term],
    p: u32,
    q: u32,
) -> Option<(RationalPoly, BTreeMap<Key, RationalPoly>)> {
    let val = |fa: &Factor, i: u32, j: u32| -> Val {
        let key = (fa.which, i + fa.d2, j + fa.d3);
        let mut m = falling(i + fa.d2, fa.d2) * falling(j + fa.d3, fa.d3);
        if fa.tau && (i + j) % 2 == 1 {
            m = -m;
        }
        let scale = Poly::constant(CycloNum::rational(int(m)));
        match known.get(&key) {
            Some(v) => Val::Known(v.mul_ref(&scale)),
            None => Val::Unknown(key, scale),
        }
    };
    let mut cst = RationalPoly::zero();
    let mut lin: BTreeMap<Key, RationalPoly> = BTreeMap::new();
    for t in terms {
        for i1 in 0..=p {
            for j1 in 0..=q {
                let (i2, j2) = (p - i1, q - j1);
                match (val(&t.l, i1, j1), val(&t.r, i2, j2)) {
                    (Val::Known(a), Val::Known(b)) => {
                        if !a.is_zero() && !b.is_zero() {
                            cst = cst.add_ref(&t.coef.mul_ref(&a).mul_ref(&b));
                        }
                    }
                    (Val::Known(a), Val::Unknown(k, s)) | (Val::Unknown(k, s), Val::Known(a)) => {
                        if !a.is_zero() {
                            let e = lin.entry(k).or_insert_with(RationalPoly::zero);
                            *e = e.add_ref(&t.coef.mul_ref(&a).mul_ref(&s));
                        }
                    }
                    (Val::Unknown(..), Val::Unknown(..)) => return None,
                }
            }
        }
    }
    lin.retain(|_, c| !c.is_zero());
    Some((cst, lin))
}

fn as_rational(p: &RationalPoly) -> Option<Rational> {
    p.constant_value().and_then(|c| c.to_rational())
}

/// Gauss-Jordan elimination over `Q` with polynomial right-hand sides.
/// Returns newly solved unknowns, or the index of an inconsistent row.
fn eliminate(
    rows: Vec<(BTreeMap<Key, Rational>, RationalPoly, u32)>,
) -> Result<Vec<(Key, RationalPoly)>, u32> {
    let mut cols: Vec<Key> = rows.iter().flat_map(|r| r.0.keys().copied()).collect();
    cols.sort();
    cols.dedup();
    let idx: BTreeMap<Key, usize> = cols.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut m: Vec<(Vec<Rational>, RationalPoly, u32)> = rows
        .into_iter()
        .map(|(lin, rhs, deg)| {
            let mut v = vec![Rational::zero(); cols.len()];
            for (k, c) in lin {
                v[idx[&k]] = c;
            }
            (v, rhs, deg)
        })
        .collect();
    let mut r = 0;
    for c in 0..cols.len() {
        let Some(piv) = (r..m.len()).find(|&i| !m[i].0[c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r].0[c].recip();
        m[r].0.iter_mut().for_each(|x| *x *= &inv);
        m[r].1 = m[r].1.scale_rational(&inv);
        let (prow, prhs) = (m[r].0.clone(), m[r].1.clone());
        for i in 0..m.len() {
            if i != r && !m[i].0[c].is_zero() {
                let fct = m[i].0[c].clone();
                for (x, y) in m[i].0.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x -= &fct * y;
                    }
                }
                m[i].1 = m[i].1.sub_ref(&prhs.scale_rational(&fct));
            }
        }
        r += 1;
    }
    let mut solved = Vec::new();
    for (v, rhs, deg) in m {
        let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        match nz.as_slice() {
            [] if !rhs.is_zero() => return Err(deg),
            [i] => solved.push((cols[*i], rhs)),
            _ => {}
        }
    }
    Ok(solved)
}

/// Solves for `B`, `S` from the seeds and the four PDEs, returning the pair
/// truncated at `order`. Works internally to `order + 4`, rounded up to an
/// even degree; with an odd window the top degree stays underdetermined.
pub fn solve_bs(order: u32) -> Result<BlowupPair, BlowupError> {
    if order < 2 {
        return Err(BlowupError::OrderTooSmall);
    }
    let w = order + 4 + order % 2;
    let mut known: BTreeMap<Key, RationalPoly> = seeds().into_iter().collect();
    let systems = residual_terms();
    loop {
        let mut rows = Vec::new();
        let mut progress = false;
        for (drop, terms) in &systems {
            for deg in 0..=(w - drop) {
                for p in 0..=deg {
                    let q = deg - p;
                    let Some((cst, lin)) = equation(&known, terms, p, q) else { continue };
                    if lin.is_empty() {
                        if !cst.is_zero() {
                            return Err(BlowupError::Inconsistent(deg + drop));
                        }
                        continue;
                    }
                    if lin.len() == 1 {
                        let (k, c) = lin.iter().next().unwrap();
                        if let Some(c) = as_rational(c) {
                            known.insert(*k, cst.neg_ref().scale_rational(&c.recip()));
                            progress = true;
                            continue;
                        }
                    }
                    let lin_q: Option<BTreeMap<Key, Rational>> =
                        lin.iter().map(|(k, c)| as_rational(c).map(|c| (*k, c))).collect();
                    if let Some(lin_q) = lin_q {
                        rows.push((lin_q, cst.neg_ref(), deg + drop));
                    }
                }
            }
        }
        if !progress && !rows.is_empty() {
            // Rows built from a stale `known` are only used when no direct solve happened.
            match eliminate(rows) {
                Ok(solved) => {
                    for (k, v) in solved {
                        if known.insert(k, v).is_none() {
                            progress = true;
                        }
                    }
                }
                Err(deg) => return Err(BlowupError::Inconsistent(deg)),
            }
        }
        if !progress {
            break;
        }
    }
    for deg in 0..=order {
        for i in 0..=deg {
            for which in [Which::B, Which::S] {
                if !known.contains_key(&(which, i, deg - i)) {
                    return Err(BlowupError::Underdetermined(deg));
                }
            }
        }
    }
    let v = VariableSet::t2t3();
    let build = |which: Which| {
        let terms = known
            .iter()
            .filter(|((wh, i, j), _)| *wh == which && i + j <= order)
            .map(|((_, i, j), c)| (vec![*i, *j], c.clone()));
        TruncatedSeries::from_terms(&v, order, terms).expect("two variables")
    };
    Ok(BlowupPair { b: build(Which::B), s: build(Which::S), order })
}

/// `(b, s)` with constants `a2 = 3`, `a3 = 0` written as a pair over the
/// polynomial ring, for comparison with the solver output.
pub fn closed_pair(order: u32) -> BlowupPair {
    let lift = |c: &CycloNum| Poly::constant(c.clone());
    BlowupPair {
        b: closed_b::<CycloNum>(order).map_coeffs(lift),
        s: closed_s::<CycloNum>(order).map_coeffs(lift),
        order,
    }
}

pub fn exact_constants() -> (CycloNum, CycloNum) {
    (CycloNum::rational(int(3)), CycloNum::zero())
}
