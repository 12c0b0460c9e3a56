//! Scalar traits shared by the series code.
//!
//! Everything downstream is generic over [`Ring`]; concrete choices are
//! [`CycloNum`](super::CycloNum) (exact), polynomials in formal constants over
//! it, and `Complex64` for quick floating evaluation.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::{q12, CycloNum, Rational};

/// Commutative ring with unit.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
    fn pow_u(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

/// A ring containing the rationals.
pub trait QAlgebra: Ring {
    fn from_rational(q: &Rational) -> Self;
    fn scale_rational(&self, q: &Rational) -> Self {
        self.mul_ref(&Self::from_rational(q))
    }
}

/// A `Q`-algebra containing the twelfth roots of unity.
pub trait CycloScalar: QAlgebra {
    fn zeta12(k: i64) -> Self;
    fn zeta3(k: i64) -> Self {
        Self::zeta12(4 * k)
    }
    fn imag_unit() -> Self {
        Self::zeta12(3)
    }
    fn sqrt3() -> Self {
        Self::zeta12(1) + Self::zeta12(11)
    }
}

impl Ring for Rational {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
}

impl QAlgebra for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Ring for CycloNum {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl QAlgebra for CycloNum {
    fn from_rational(q: &Rational) -> Self {
        CycloNum::rational(q.clone())
    }
    fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(q)
    }
}

impl CycloScalar for CycloNum {
    fn zeta12(k: i64) -> Self {
        q12::zeta12(k)
    }
}

impl Ring for f64 {}

impl QAlgebra for f64 {
    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
}

impl Ring for Complex64 {}

impl QAlgebra for Complex64 {
    fn from_rational(q: &Rational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl CycloScalar for Complex64 {
    fn zeta12(k: i64) -> Self {
        Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 12.0)
    }
}
