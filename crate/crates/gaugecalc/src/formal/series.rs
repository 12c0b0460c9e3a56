//! Truncated multivariate power series.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exactnum::{factorial, QAlgebra, Rational, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series have different variable sets")]
    VariableMismatch,
    #[error("exp_of needs a series with zero constant term")]
    NonzeroConstant,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("nilpotency cap of `{0}` must be at least 1")]
    BadCap(String),
    #[error("exponent vector has wrong length")]
    BadMonomial,
}

/// Ordered variable names with optional nilpotency caps (`v^cap = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableSet {
    names: Vec<String>,
    caps: Vec<Option<u32>>,
}

impl VariableSet {
    pub fn new(vars: &[(&str, Option<u32>)]) -> Result<Arc<Self>, SeriesError> {
        let mut names = Vec::new();
        let mut caps = Vec::new();
        for (n, c) in vars {
            if names.iter().any(|m: &String| m == n) {
                return Err(SeriesError::DuplicateVariable(n.to_string()));
            }
            if *c == Some(0) {
                return Err(SeriesError::BadCap(n.to_string()));
            }
            names.push(n.to_string());
            caps.push(*c);
        }
        Ok(Arc::new(VariableSet { names, caps }))
    }

    /// Uncapped variables.
    pub fn plain(names: &[&str]) -> Arc<Self> {
        let v: Vec<(&str, Option<u32>)> = names.iter().map(|n| (*n, None)).collect();
        Self::new(&v).expect("plain variable names must be distinct")
    }

    /// The usual `t2, t3`.
    pub fn t2t3() -> Arc<Self> {
        Self::plain(&["t2", "t3"])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn caps(&self) -> &[Option<u32>] {
        &self.caps
    }

    pub fn index(&self, name: &str) -> Result<usize, SeriesError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| SeriesError::UnknownVariable(name.to_string()))
    }

    fn without(&self, i: usize) -> Arc<Self> {
        let mut names = self.names.clone();
        let mut caps = self.caps.clone();
        names.remove(i);
        caps.remove(i);
        Arc::new(VariableSet { names, caps })
    }

    /// `t2^2*t3`, or `1` for the empty monomial.
    pub fn monomial_string(&self, e: &[u32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .zip(&self.names)
            .filter(|(k, _)| **k > 0)
            .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Inverse of [`monomial_string`](Self::monomial_string).
    pub fn parse_monomial(&self, s: &str) -> Result<Vec<u32>, SeriesError> {
        let mut e = vec![0; self.len()];
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(e);
        }
        for part in s.split('*') {
            let (n, k) = match part.split_once('^') {
                Some((n, k)) => (n.trim(), k.trim().parse::<u32>().map_err(|_| SeriesError::BadMonomial)?),
                None => (part.trim(), 1),
            };
            e[self.index(n)?] += k;
        }
        Ok(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElemKind {
    Exp,
    Cos,
    Sin,
    Cosh,
    Sinh,
}

/// A power series truncated at a total degree. Absent monomials are zero and
/// stored coefficients are never zero.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<R> {
    vars: Arc<VariableSet>,
    order: u32,
    coeffs: BTreeMap<Vec<u32>, R>,
}

impl<R: Ring> TruncatedSeries<R> {
    pub fn zero(vars: &Arc<VariableSet>, order: u32) -> Self {
        TruncatedSeries { vars: vars.clone(), order, coeffs: BTreeMap::new() }
    }

    pub fn constant(vars: &Arc<VariableSet>, order: u32, c: R) -> Self {
        let mut s = Self::zero(vars, order);
        s.add_term(vec![0; vars.len()], c);
        s
    }

    pub fn one(vars: &Arc<VariableSet>, order: u32) -> Self {
        Self::constant(vars, order, R::one())
    }

    /// `c * name`.
    pub fn linear(vars: &Arc<VariableSet>, order: u32, name: &str, c: R) -> Result<Self, SeriesError> {
        let i = vars.index(name)?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut s = Self::zero(vars, order);
        s.add_term(e, c);
        Ok(s)
    }

    pub fn variable(vars: &Arc<VariableSet>, order: u32, name: &str) -> Result<Self, SeriesError> {
        Self::linear(vars, order, name, R::one())
    }

    pub fn from_terms(
        vars: &Arc<VariableSet>,
        order: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, R)>,
    ) -> Result<Self, SeriesError> {
        let mut s = Self::zero(vars, order);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(SeriesError::BadMonomial);
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &R)> {
        self.coeffs.iter()
    }

    /// Whether a monomial survives truncation and caps.
    pub fn admits(&self, e: &[u32]) -> bool {
        admits(&self.vars, self.order, e)
    }

    /// Adds `c * x^e`; silently drops monomials outside the truncation.
    pub fn add_term(&mut self, e: Vec<u32>, c: R) {
        if c.is_zero() || !self.admits(&e) {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(x) => {
                *x = x.add_ref(&c);
                if x.is_zero() {
                    self.coeffs.remove(&e);
                }
            }
            None => {
                self.coeffs.insert(e, c);
            }
        }
    }

    pub fn coefficient(&self, e: &[u32]) -> R {
        self.coeffs.get(e).cloned().unwrap_or_else(R::zero)
    }

    /// Coefficient addressed by a monomial string such as `t2^2*t3`.
    pub fn coefficient_of(&self, monomial: &str) -> Result<R, SeriesError> {
        Ok(self.coefficient(&self.vars.parse_monomial(monomial)?))
    }

    pub fn constant_term(&self) -> R {
        self.coefficient(&vec![0; self.vars.len()])
    }

    fn check(&self, o: &Self) -> Result<(), SeriesError> {
        if self.vars == o.vars {
            Ok(())
        } else {
            Err(SeriesError::VariableMismatch)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        let mut out = self.truncate(self.order.min(o.order));
        for (e, c) in &o.coeffs {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, SeriesError> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        let order = self.order.min(o.order);
        let mut out = Self::zero(&self.vars, order);
        let deg = |e: &Vec<u32>| e.iter().sum::<u32>();
        let right: Vec<(&Vec<u32>, &R, u32)> = o.coeffs.iter().map(|(e, c)| (e, c, deg(e))).collect();
        for (e1, c1) in &self.coeffs {
            let d1 = deg(e1);
            if d1 > order {
                continue;
            }
            for (e2, c2, d2) in &right {
                if d1 + d2 > order {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul_ref(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map_coeffs(|x| x.mul_ref(c))
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|x| x.neg_ref())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars, self.order);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Lowers the truncation order (never raises it).
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        let mut out = Self::zero(&self.vars, order);
        for (e, c) in &self.coeffs {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        let mut out = TruncatedSeries::zero(&self.vars, self.order);
        for (e, c) in &self.coeffs {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Scales the coefficient of `x^e` by `Π signs_v^{e_v}`.
    pub fn substitute_sign(&self, signs: &[(&str, i8)]) -> Result<Self, SeriesError> {
        let mut flip = vec![false; self.vars.len()];
        for (n, s) in signs {
            flip[self.vars.index(n)?] = *s < 0;
        }
        let mut out = self.clone();
        for (e, c) in out.coeffs.iter_mut() {
            let odd = e.iter().zip(&flip).filter(|(k, f)| **f && **k % 2 == 1).count() % 2 == 1;
            if odd {
                *c = c.neg_ref();
            }
        }
        Ok(out)
    }

    /// Substitutes `v -> factor_v * v` for each listed variable.
    pub fn substitute_scale(&self, factors: &[(&str, R)]) -> Result<Self, SeriesError> {
        let mut fs: Vec<Option<R>> = vec![None; self.vars.len()];
        for (n, c) in factors {
            fs[self.vars.index(n)?] = Some(c.clone());
        }
        let mut out = Self::zero(&self.vars, self.order);
        for (e, c) in &self.coeffs {
            let mut c = c.clone();
            for (k, f) in e.iter().zip(&fs) {
                if let Some(f) = f {
                    c = c.mul_ref(&f.pow_u(*k));
                }
            }
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    /// Formal partial derivatives, `(variable, times)` pairs.
    pub fn pde_apply(&self, derivs: &[(&str, u32)]) -> Result<Self, SeriesError> {
        let mut out = self.clone();
        for (n, k) in derivs {
            let i = self.vars.index(n)?;
            out = out.derivative(i, *k);
        }
        Ok(out)
    }

    fn derivative(&self, i: usize, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        let mut out = Self::zero(&self.vars, self.order.saturating_sub(k));
        for (e, c) in &self.coeffs {
            if e[i] < k {
                continue;
            }
            let mut f = R::one();
            for j in 0..k {
                f = f.mul_ref(&int_in::<R>(i64::from(e[i] - j)));
            }
            let mut e2 = e.clone();
            e2[i] -= k;
            out.add_term(e2, c.mul_ref(&f));
        }
        out
    }

    /// `k!` times the coefficient of `v^k`; the variable is removed.
    /// The order of the result is `order - k`.
    pub fn partial_and_evaluate(&self, name: &str, k: u32) -> Result<Self, SeriesError> {
        let i = self.vars.index(name)?;
        let f = int_big::<R>(&factorial(k));
        let mut out = TruncatedSeries::zero(&self.vars.without(i), self.order.saturating_sub(k));
        for (e, c) in &self.coeffs {
            if e[i] != k {
                continue;
            }
            let mut e2 = e.clone();
            e2.remove(i);
            out.add_term(e2, c.mul_ref(&f));
        }
        Ok(out)
    }

    /// Re-expresses the series in a superset of its variables.
    pub fn embed_into(&self, vars: &Arc<VariableSet>) -> Result<Self, SeriesError> {
        let idx: Vec<usize> = self.vars.names.iter().map(|n| vars.index(n)).collect::<Result<_, _>>()?;
        let mut out = Self::zero(vars, self.order);
        for (e, c) in &self.coeffs {
            let mut e2 = vec![0; vars.len()];
            for (k, j) in e.iter().zip(&idx) {
                e2[*j] = *k;
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Keeps only terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let mut out = Self::zero(&self.vars, self.order);
        for (e, c) in &self.coeffs {
            if e.iter().sum::<u32>() == d {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }
}

fn admits(vars: &VariableSet, order: u32, e: &[u32]) -> bool {
    e.iter().sum::<u32>() <= order && e.iter().zip(&vars.caps).all(|(k, c)| c.is_none_or(|c| *k < c))
}

fn int_in<R: Ring>(n: i64) -> R {
    let mut acc = R::zero();
    let one = R::one();
    for _ in 0..n.unsigned_abs() {
        acc = acc.add_ref(&one);
    }
    if n < 0 {
        acc.neg_ref()
    } else {
        acc
    }
}

fn int_big<R: Ring>(n: &num_bigint::BigInt) -> R {
    use num_traits::ToPrimitive;
    match n.to_i64() {
        Some(k) if k.abs() < 64 => int_in(k),
        _ => {
            // Binary expansion keeps this cheap for large factorials.
            let two = int_in::<R>(2);
            let mut acc = R::zero();
            let bits = n.magnitude().to_str_radix(2);
            for b in bits.chars() {
                acc = acc.mul_ref(&two);
                if b == '1' {
                    acc = acc.add_ref(&R::one());
                }
            }
            acc
        }
    }
}

impl<R: QAlgebra> TruncatedSeries<R> {
    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.map_coeffs(|x| x.scale_rational(q))
    }

    /// Taylor series of `kind(c * v)`.
    pub fn elem_series(
        vars: &Arc<VariableSet>,
        order: u32,
        kind: ElemKind,
        c: &R,
        name: &str,
    ) -> Result<Self, SeriesError> {
        let i = vars.index(name)?;
        let mut out = Self::zero(vars, order);
        let mut cpow = R::one();
        for k in 0..=order {
            let sign: i64 = match (kind, k % 4) {
                (ElemKind::Exp, _) => 1,
                (ElemKind::Cosh, r) if r % 2 == 0 => 1,
                (ElemKind::Sinh, r) if r % 2 == 1 => 1,
                (ElemKind::Cos, 0) | (ElemKind::Sin, 1) => 1,
                (ElemKind::Cos, 2) | (ElemKind::Sin, 3) => -1,
                _ => 0,
            };
            if sign != 0 {
                let q = Rational::new(sign.into(), factorial(k));
                let mut e = vec![0; vars.len()];
                e[i] = k;
                out.add_term(e, cpow.scale_rational(&q));
            }
            cpow = cpow.mul_ref(c);
        }
        Ok(out)
    }

    /// `Σ f^k / k!`; requires a zero constant term.
    pub fn exp_of(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let mut out = Self::one(&self.vars, self.order);
        let mut term = out.clone();
        for k in 1..=self.order {
            term = (&term * self).scale_rational(&Rational::new(1.into(), k.into()));
            if term.is_zero() {
                break;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `exp(Σ c_v v)` built directly from the product formula.
    pub fn exp_linear(vars: &Arc<VariableSet>, order: u32, coeffs: &[R]) -> Self {
        assert_eq!(coeffs.len(), vars.len());
        let mut out = Self::one(vars, order);
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = vars.names[i].clone();
            let f = Self::elem_series(vars, order, ElemKind::Exp, c, &name).expect("known variable");
            out = &out * &f;
        }
        out
    }
}

impl<R: Ring + fmt::Display> TruncatedSeries<R> {
    /// `{order, variables, coeffs: {monomial: coefficient}}`.
    pub fn to_json(&self) -> Value {
        self.to_json_with(|c| Value::String(c.to_string()))
    }
}

impl<R: Ring> TruncatedSeries<R> {
    pub fn to_json_with(&self, f: impl Fn(&R) -> Value) -> Value {
        let mut m = Map::new();
        for (e, c) in &self.coeffs {
            m.insert(self.vars.monomial_string(e), f(c));
        }
        json!({
            "order": self.order,
            "variables": self.vars.names,
            "coeffs": Value::Object(m),
        })
    }
}

impl<R: Ring + fmt::Display> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 + O({})", self.order + 1);
        }
        for (e, c) in &self.coeffs {
            let cs = c.to_string();
            let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
            if e.iter().all(|k| *k == 0) {
                write!(f, "{cs} + ")?;
            } else {
                write!(f, "{cs}*{} + ", self.vars.monomial_string(e))?;
            }
        }
        write!(f, "O({})", self.order + 1)
    }
}

impl<R: Ring + fmt::Debug> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSeries")
            .field("vars", &self.vars.names)
            .field("order", &self.order)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<R: Ring> std::ops::$tr<&TruncatedSeries<R>> for &TruncatedSeries<R> {
            type Output = TruncatedSeries<R>;
            /// Panics when the variable sets differ; use the `try_` form otherwise.
            fn $m(self, rhs: &TruncatedSeries<R>) -> TruncatedSeries<R> {
                self.$f(rhs).expect("series variable mismatch")
            }
        }
        impl<R: Ring> std::ops::$tr for TruncatedSeries<R> {
            type Output = TruncatedSeries<R>;
            fn $m(self, rhs: TruncatedSeries<R>) -> TruncatedSeries<R> {
                self.$f(&rhs).expect("series variable mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<R: Ring> std::ops::Neg for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn neg(self) -> TruncatedSeries<R> {
        TruncatedSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, q12, rat, CycloNum};
    use num_traits::{One, Zero};

    type S = TruncatedSeries<CycloNum>;

    fn vars() -> Arc<VariableSet> {
        VariableSet::t2t3()
    }

    #[test]
    fn exp_inverse() {
        let v = vars();
        let a = S::elem_series(&v, 10, ElemKind::Exp, &CycloNum::one(), "t2").unwrap();
        let b = S::elem_series(&v, 10, ElemKind::Exp, &-CycloNum::one(), "t2").unwrap();
        assert_eq!(&a * &b, S::one(&v, 10));
    }

    #[test]
    fn one_plus_minus() {
        let v = vars();
        let t = S::variable(&v, 5, "t2").unwrap();
        let one = S::one(&v, 5);
        let lhs = &(&one + &t) * &(&one - &t);
        assert_eq!(lhs, &one - &(&t * &t));
    }

    #[test]
    fn hyperbolic_identity() {
        let v = vars();
        let r3 = q12::sqrt3();
        let ch = S::elem_series(&v, 8, ElemKind::Cosh, &r3, "t2").unwrap();
        let sh = S::elem_series(&v, 8, ElemKind::Sinh, &r3, "t2").unwrap();
        assert_eq!(&(&ch * &ch) - &(&sh * &sh), S::one(&v, 8));
    }

    #[test]
    fn elementary_coefficients() {
        let v = vars();
        let r3 = q12::sqrt3();
        let e = S::elem_series(&v, 4, ElemKind::Exp, &CycloNum::zero(), "t2").unwrap();
        assert_eq!(e, S::one(&v, 4));
        let ch = S::elem_series(&v, 6, ElemKind::Cosh, &r3, "t2").unwrap();
        assert_eq!(ch.coefficient_of("t2^2").unwrap(), CycloNum::rational(rat(3, 2)));
        for k in 0..=3u32 {
            // 3^k / (2k)!
            let expect = rat(3i64.pow(k), 1) / Rational::from_integer(factorial(2 * k));
            assert_eq!(ch.coefficient(&[2 * k, 0]), CycloNum::rational(expect));
        }
        let sn = S::elem_series(&v, 4, ElemKind::Sin, &r3, "t3").unwrap();
        assert_eq!(sn.coefficient_of("t3").unwrap(), q12::zeta12(1) + q12::zeta12(11));
    }

    #[test]
    fn exp_of_examples() {
        let v = vars();
        assert_eq!(S::zero(&v, 6).exp_of().unwrap(), S::one(&v, 6));
        let t = S::variable(&v, 6, "t2").unwrap();
        let e = (&t * &t).exp_of().unwrap();
        assert_eq!(e.coefficient_of("t2^4").unwrap(), CycloNum::rational(rat(1, 2)));
        assert_eq!(S::one(&v, 3).exp_of(), Err(SeriesError::NonzeroConstant));
        let a = q12::sqrt3();
        let b = q12::i();
        let f = &S::linear(&v, 7, "t2", a.clone()).unwrap() + &S::linear(&v, 7, "t3", b.clone()).unwrap();
        let rhs = &S::elem_series(&v, 7, ElemKind::Exp, &a, "t2").unwrap()
            * &S::elem_series(&v, 7, ElemKind::Exp, &b, "t3").unwrap();
        assert_eq!(f.exp_of().unwrap(), rhs);
        assert_eq!(S::exp_linear(&v, 7, &[a, b]), rhs);
    }

    #[test]
    fn sign_substitution() {
        let v = vars();
        let t3 = S::variable(&v, 4, "t3").unwrap();
        assert_eq!(t3.substitute_sign(&[("t3", -1)]).unwrap(), t3.neg());
        let c = S::elem_series(&v, 8, ElemKind::Cos, &q12::sqrt3(), "t3").unwrap();
        assert_eq!(c.substitute_sign(&[("t3", -1)]).unwrap(), c);
    }

    #[test]
    fn partial_and_evaluate_examples() {
        let v = VariableSet::plain(&["t2", "s"]);
        let t2 = S::variable(&v, 6, "t2").unwrap();
        let s = S::variable(&v, 6, "s").unwrap();
        let only_t2 = VariableSet::plain(&["t2"]);
        let got = (&s * &t2).partial_and_evaluate("s", 1).unwrap();
        assert_eq!(got, S::variable(&only_t2, 5, "t2").unwrap());
        let got = (&s * &t2).exp_of().unwrap().partial_and_evaluate("s", 2).unwrap();
        let t = S::variable(&only_t2, 4, "t2").unwrap();
        assert_eq!(got, &t * &t);
        let g = (&(&t2 * &t2) * &(&s * &s)).scale_rational(&rat(-3, 2)).exp_of().unwrap();
        let got = g.partial_and_evaluate("s", 2).unwrap();
        assert_eq!(got, (&t * &t).scale_rational(&int(-3)));
    }

    #[test]
    fn coefficients_and_derivatives() {
        let v = vars();
        assert_eq!(S::one(&v, 3).coefficient(&[0, 0]), CycloNum::one());
        let t = S::variable(&v, 4, "t2").unwrap();
        assert_eq!((&t * &t).pde_apply(&[("t2", 2)]).unwrap(), S::constant(&v, 2, CycloNum::rational(int(2))));
        let e = (&t * &t).exp_of().unwrap();
        assert_eq!(e.coefficient_of("t2^2").unwrap(), CycloNum::one());
    }

    #[test]
    fn caps_and_mismatch() {
        let v = VariableSet::new(&[("t2", None), ("s", Some(2))]).unwrap();
        let s = S::variable(&v, 6, "s").unwrap();
        assert!((&s * &s).is_zero());
        let w = vars();
        assert_eq!(s.try_add(&S::one(&w, 6)), Err(SeriesError::VariableMismatch));
        assert!(VariableSet::new(&[("a", None), ("a", None)]).is_err());
        assert!(VariableSet::new(&[("a", Some(0))]).is_err());
    }

    #[test]
    fn json_round_trip_of_monomials() {
        let v = vars();
        let t2 = S::variable(&v, 5, "t2").unwrap();
        let t3 = S::variable(&v, 5, "t3").unwrap();
        let f = &(&t2 * &t2) * &t3;
        let j = f.to_json();
        assert_eq!(j["coeffs"]["t2^2*t3"], "1");
        assert_eq!(v.parse_monomial("t2^2*t3").unwrap(), vec![2, 1]);
        assert_eq!(j["order"], 5);
    }
}
