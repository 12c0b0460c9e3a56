//! Polynomials in named formal constants (`a2`, `a3`, `h1`..`h4`, ...).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exactnum::{CycloScalar, QAlgebra, Rational, Ring};

/// Sorted `(name, exponent)` pairs; exponents are positive.
pub type Monomial = Vec<(String, u32)>;

#[derive(Clone, PartialEq)]
pub struct Poly<K> {
    terms: BTreeMap<Monomial, K>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<&str, u32> = BTreeMap::new();
    for (n, e) in a.iter().chain(b) {
        *out.entry(n.as_str()).or_default() += e;
    }
    out.into_iter().map(|(n, e)| (n.to_string(), e)).collect()
}

impl<K: Ring> Poly<K> {
    pub fn constant(c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { terms }
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(vec![(name.to_string(), 1)], K::one())
    }

    pub fn monomial(m: Monomial, c: K) -> Self {
        let mut m: Monomial = m.into_iter().filter(|(_, e)| *e > 0).collect();
        m.sort();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    pub fn constant_value(&self) -> Option<K> {
        self.is_constant().then(|| self.terms.get(&Vec::new()).cloned().unwrap_or_else(K::zero))
    }

    /// Names of the constants that actually occur.
    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.terms.keys().flatten().map(|(n, _)| n.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.add_ref(&c);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Replaces the constant `name` by the value `v`.
    pub fn substitute(&self, name: &str, v: &K) -> Self {
        let mut out = Poly { terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            let mut rest = Vec::new();
            let mut coef = c.clone();
            for (n, e) in m {
                if n == name {
                    coef = coef.mul_ref(&v.pow_u(*e));
                } else {
                    rest.push((n.clone(), *e));
                }
            }
            out.add_term(rest, coef);
        }
        out
    }

    pub fn map_coeffs<L: Ring>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        let mut out = Poly { terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl<K: Ring> Zero for Poly<K> {
    fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<K: Ring> One for Poly<K> {
    fn one() -> Self {
        Poly::constant(K::one())
    }
}

impl<K: Ring> Add for Poly<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<K: Ring> Sub for Poly<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl<K: Ring> Mul for Poly<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<K: Ring> Neg for Poly<K> {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl<K: Ring> Ring for Poly<K> {
    fn add_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn sub_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        out
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let mut out = Poly { terms: BTreeMap::new() };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = if m1.is_empty() {
                    m2.clone()
                } else if m2.is_empty() {
                    m1.clone()
                } else {
                    mono_mul(m1, m2)
                };
                out.add_term(m, c1.mul_ref(c2));
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect() }
    }
}

impl<K: QAlgebra> QAlgebra for Poly<K> {
    fn from_rational(q: &Rational) -> Self {
        Poly::constant(K::from_rational(q))
    }
    fn scale_rational(&self, q: &Rational) -> Self {
        let mut out = Poly { terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.scale_rational(q));
        }
        out
    }
}

impl<K: CycloScalar> CycloScalar for Poly<K> {
    fn zeta12(k: i64) -> Self {
        Poly::constant(K::zeta12(k))
    }
}

impl<K: Ring + fmt::Display> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = c.to_string();
            let mono: Vec<String> = m
                .iter()
                .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{cs}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else if cs.contains(' ') {
                write!(f, "({cs})*{}", mono.join("*"))?;
            } else {
                write!(f, "{cs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<K: fmt::Debug> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}


impl Poly<crate::exactnum::CycloNum> {
    /// Exact division by a single-term polynomial; `None` if it does not divide.
    pub fn div_term(&self, d: &Self) -> Option<Self> {
        if d.terms.len() != 1 {
            return None;
        }
        let (dm, dc) = d.terms.iter().next()?;
        let inv = dc.inv().ok()?;
        let mut out = Poly { terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            let mut exps: BTreeMap<&str, i64> = m.iter().map(|(n, e)| (n.as_str(), i64::from(*e))).collect();
            for (n, e) in dm {
                let x = exps.entry(n.as_str()).or_default();
                *x -= i64::from(*e);
                if *x < 0 {
                    return None;
                }
            }
            let q: Monomial = exps.into_iter().filter(|(_, e)| *e > 0).map(|(n, e)| (n.to_string(), e as u32)).collect();
            out.add_term(q, c * &inv);
        }
        Some(out)
    }
}
