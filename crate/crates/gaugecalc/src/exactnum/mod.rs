//! Exact rationals and cyclotomic fields `Q(zeta_n) = Q[x]/Phi_n(x)` in the power basis.
//!
//! Elements of different fields never mix implicitly, with one exception: an
//! element of `Q(zeta_1) = Q` combines with an element of any field, since the
//! rationals embed in every cyclotomic field without changing the conductor.

mod scalar;
mod upoly;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub use scalar::{CycloScalar, QAlgebra, Ring};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: Q(zeta_{0}) vs Q(zeta_{1}); coerce explicitly first")]
    FieldMismatch(u64, u64),
    #[error("conductor {from} does not divide {to}")]
    NotDivisible { from: u64, to: u64 },
    #[error("invalid rational literal `{0}`")]
    Parse(String),
}

pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let t = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let v = BigRational::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `Q(zeta_n)` with its cyclotomic polynomial and cached reduction tables.
#[derive(Debug)]
pub struct FieldDescriptor {
    conductor: u64,
    minimal_polynomial: Vec<Rational>,
    degree: usize,
    // x^(degree + k) mod Phi_n, k = 0..degree-1
    overflow: Vec<Vec<Rational>>,
    // zeta^k in the power basis, k = 0..n-1
    powers: Vec<Vec<Rational>>,
}

impl FieldDescriptor {
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Coefficients of `Phi_n`, constant term first; monic.
    pub fn minimal_polynomial(&self) -> &[Rational] {
        &self.minimal_polynomial
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn build(n: u64) -> FieldDescriptor {
        let phi = if n == 1 {
            vec![int(-1), int(1)]
        } else {
            let mut num = vec![Rational::zero(); n as usize + 1];
            num[0] = int(-1);
            num[n as usize] = int(1);
            for d in (1..n).filter(|d| n % d == 0) {
                let f = cyclo_field(d);
                let (q, r) = upoly::divrem(&num, &f.minimal_polynomial);
                debug_assert!(r.is_empty());
                num = q;
            }
            num
        };
        let degree = phi.len() - 1;
        let mut overflow = Vec::with_capacity(degree);
        // x^degree = -(phi_0 + ... + phi_{d-1} x^{d-1})
        let mut cur: Vec<Rational> = phi[..degree].iter().map(|c| -c).collect();
        for _ in 0..degree {
            overflow.push(cur.clone());
            cur = shift_reduce(&cur, &phi);
        }
        let mut powers = Vec::with_capacity(n as usize);
        let mut p = vec![Rational::zero(); degree];
        p[0] = Rational::one();
        for _ in 0..n {
            powers.push(p.clone());
            p = shift_reduce(&p, &phi);
        }
        FieldDescriptor { conductor: n, minimal_polynomial: phi, degree, overflow, powers }
    }

    fn reduce(&self, mut c: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree;
        if c.len() > d {
            // fold high coefficients from the top so repeated overflow stays in range
            while c.len() > 2 * d - 1 {
                let top = c.pop().unwrap();
                if !top.is_zero() {
                    let shift = c.len() - d;
                    for (i, m) in self.minimal_polynomial[..d].iter().enumerate() {
                        c[shift + i] -= &top * m;
                    }
                }
            }
            let high: Vec<Rational> = c.drain(d..).collect();
            for (k, h) in high.into_iter().enumerate() {
                if h.is_zero() {
                    continue;
                }
                for (i, r) in self.overflow[k].iter().enumerate() {
                    if !r.is_zero() {
                        c[i] += &h * r;
                    }
                }
            }
        }
        c.resize(d, Rational::zero());
        c
    }
}

fn shift_reduce(p: &[Rational], phi: &[Rational]) -> Vec<Rational> {
    let d = phi.len() - 1;
    let mut out = vec![Rational::zero(); d];
    let top = p[d - 1].clone();
    for i in (1..d).rev() {
        out[i] = p[i - 1].clone();
    }
    if !top.is_zero() {
        for i in 0..d {
            out[i] -= &top * &phi[i];
        }
    }
    out
}

/// The field `Q(zeta_n)`; descriptors are cached and shared.
pub fn cyclo_field(n: u64) -> Arc<FieldDescriptor> {
    assert!(n >= 1, "conductor must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FieldDescriptor>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&n) {
        return f.clone();
    }
    // built outside the lock: construction recurses into proper divisors
    let f = Arc::new(FieldDescriptor::build(n));
    cache.lock().unwrap().entry(n).or_insert(f).clone()
}

pub(crate) fn q12() -> &'static Arc<FieldDescriptor> {
    static F: OnceLock<Arc<FieldDescriptor>> = OnceLock::new();
    F.get_or_init(|| cyclo_field(12))
}

fn rationals() -> &'static Arc<FieldDescriptor> {
    static F: OnceLock<Arc<FieldDescriptor>> = OnceLock::new();
    F.get_or_init(|| cyclo_field(1))
}

/// An element of `Q(zeta_n)`.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<FieldDescriptor>,
    coords: Vec<Rational>,
}

impl CycloNum {
    pub fn new(field: &Arc<FieldDescriptor>, coords: Vec<Rational>) -> CycloNum {
        CycloNum { field: field.clone(), coords: field.reduce(coords) }
    }

    pub fn zero_in(field: &Arc<FieldDescriptor>) -> CycloNum {
        CycloNum { field: field.clone(), coords: vec![Rational::zero(); field.degree] }
    }

    pub fn from_rational_in(field: &Arc<FieldDescriptor>, q: Rational) -> CycloNum {
        let mut coords = vec![Rational::zero(); field.degree];
        coords[0] = q;
        CycloNum { field: field.clone(), coords }
    }

    pub fn rational(q: Rational) -> CycloNum {
        CycloNum::from_rational_in(rationals(), q)
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta(field: &Arc<FieldDescriptor>, k: i64) -> CycloNum {
        let n = field.conductor as i64;
        let e = k.rem_euclid(n) as usize;
        CycloNum { field: field.clone(), coords: field.powers[e].clone() }
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    fn lift_rational(&self, target: &Arc<FieldDescriptor>) -> CycloNum {
        CycloNum::from_rational_in(target, self.coords[0].clone())
    }

    fn aligned(&self, other: &CycloNum) -> Result<(CycloNum, CycloNum), ExactError> {
        let (n, m) = (self.conductor(), other.conductor());
        if n == m {
            Ok((self.clone(), other.clone()))
        } else if n == 1 {
            Ok((self.lift_rational(&other.field), other.clone()))
        } else if m == 1 {
            Ok((self.clone(), other.lift_rational(&self.field)))
        } else {
            Err(ExactError::FieldMismatch(n, m))
        }
    }

    fn same_field<'a>(&'a self, other: &'a CycloNum) -> Option<&'a Arc<FieldDescriptor>> {
        (self.conductor() == other.conductor()).then_some(&self.field)
    }

    pub fn try_add(&self, other: &CycloNum) -> Result<CycloNum, ExactError> {
        if let Some(f) = self.same_field(other) {
            let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
            return Ok(CycloNum { field: f.clone(), coords });
        }
        let (a, b) = self.aligned(other)?;
        a.try_add(&b)
    }

    pub fn try_sub(&self, other: &CycloNum) -> Result<CycloNum, ExactError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &CycloNum) -> Result<CycloNum, ExactError> {
        if let Some(f) = self.same_field(other) {
            if other.is_rational() {
                return Ok(self.scale(&other.coords[0]));
            }
            if self.is_rational() {
                return Ok(other.scale(&self.coords[0]));
            }
            let prod = upoly::mul(&self.coords, &other.coords);
            return Ok(CycloNum { field: f.clone(), coords: f.reduce(prod) });
        }
        if self.conductor() == 1 {
            return Ok(other.scale(&self.coords[0]));
        }
        if other.conductor() == 1 {
            return Ok(self.scale(&other.coords[0]));
        }
        Err(ExactError::FieldMismatch(self.conductor(), other.conductor()))
    }

    pub fn scale(&self, q: &Rational) -> CycloNum {
        CycloNum { field: self.field.clone(), coords: self.coords.iter().map(|c| c * q).collect() }
    }

    pub fn inv(&self) -> Result<CycloNum, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(CycloNum::from_rational_in(&self.field, q.recip()));
        }
        let (g, s) = upoly::gcd_inverse(&self.coords, &self.field.minimal_polynomial);
        // Phi_n is irreducible, so a nonzero element is coprime to it
        debug_assert_eq!(g.len(), 1);
        Ok(CycloNum::new(&self.field, s))
    }

    pub fn try_div(&self, other: &CycloNum) -> Result<CycloNum, ExactError> {
        self.try_mul(&other.inv()?)
    }

    /// Complex conjugation, the automorphism `zeta_n -> zeta_n^(n-1)`.
    pub fn conj(&self) -> CycloNum {
        let n = self.field.conductor as usize;
        let mut out = vec![Rational::zero(); self.field.degree];
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, p) in self.field.powers[(n - k % n) % n].iter().enumerate() {
                if !p.is_zero() {
                    out[i] += c * p;
                }
            }
        }
        CycloNum { field: self.field.clone(), coords: out }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// The same number in `Q(zeta_m)`, `n | m`, via `zeta_n = zeta_m^(m/n)`.
    pub fn coerce(&self, target: &Arc<FieldDescriptor>) -> Result<CycloNum, ExactError> {
        let (n, m) = (self.conductor(), target.conductor);
        if m % n != 0 {
            return Err(ExactError::NotDivisible { from: n, to: m });
        }
        let step = (m / n) as usize;
        let mut out = vec![Rational::zero(); target.degree];
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, p) in target.powers[(k * step) % m as usize].iter().enumerate() {
                if !p.is_zero() {
                    out[i] += c * p;
                }
            }
        }
        Ok(CycloNum { field: target.clone(), coords: out })
    }

    pub fn pow(&self, e: i64) -> Result<CycloNum, ExactError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = CycloNum::from_rational_in(&self.field, Rational::one());
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Floating approximation via `zeta_n -> exp(2 pi i / n)`; display and cross-checks only.
    pub fn embed(&self) -> Complex64 {
        let n = self.field.conductor as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = c.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::from_polar(x, std::f64::consts::TAU * k as f64 / n);
        }
        acc
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &CycloNum) -> bool {
        if self.conductor() == other.conductor() {
            return self.coords == other.coords;
        }
        let l = self.conductor().lcm(&other.conductor());
        let f = cyclo_field(l);
        self.coerce(&f).unwrap().coords == other.coerce(&f).unwrap().coords
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `c0 + c1*z12 + c2*z12^2 ...` with zero terms omitted; plain `p/q` when rational.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.conductor();
        let mut out = String::new();
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let a = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let basis = match k {
                0 => String::new(),
                1 => format!("z{n}"),
                _ => format!("z{n}^{k}"),
            };
            if basis.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&basis);
            } else {
                out.push_str(&format!("{a}*{basis}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

macro_rules! cyclo_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
    };
}
cyclo_binop!(Add, add, try_add);
cyclo_binop!(Sub, sub, try_sub);
cyclo_binop!(Mul, mul, try_mul);

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl Zero for CycloNum {
    fn zero() -> CycloNum {
        CycloNum::zero_in(rationals())
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl One for CycloNum {
    fn one() -> CycloNum {
        CycloNum::rational(Rational::one())
    }
}

/// Elements of `Q(zeta_12)`, which holds `zeta_3`, `i` and `sqrt 3`.
pub mod q12 {
    use super::*;

    pub fn zeta12(k: i64) -> CycloNum {
        CycloNum::zeta(q12(), k)
    }

    pub fn zeta3(k: i64) -> CycloNum {
        zeta12(4 * k)
    }

    pub fn i() -> CycloNum {
        zeta12(3)
    }

    pub fn sqrt3() -> CycloNum {
        zeta12(1) + zeta12(11)
    }

    pub fn from_rational(q: Rational) -> CycloNum {
        CycloNum::from_rational_in(q12(), q)
    }
}
