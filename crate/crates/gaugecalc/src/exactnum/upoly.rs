//! Dense univariate polynomials over the rationals, lowest degree first.

use num_traits::{One, Zero};

use super::Rational;

pub(crate) fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

fn sub_scaled_shifted(a: &mut Vec<Rational>, b: &[Rational], c: &Rational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, Rational::zero());
    }
    for (j, y) in b.iter().enumerate() {
        if !y.is_zero() {
            a[j + shift] -= c * y;
        }
    }
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = &b[db];
    let mut r: Vec<Rational> = a.to_vec();
    trim(&mut r);
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / lead;
        sub_scaled_shifted(&mut r, &b[..=db], &c, dr - db);
        r[dr] = Rational::zero();
        q[dr - db] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Returns `(g, s)` with `s*a ≡ g (mod m)` and `g = gcd(a, m)` made monic.
pub(crate) fn gcd_inverse(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0: Vec<Rational> = m.to_vec();
    let mut r1: Vec<Rational> = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1);
        let qs = mul(&q, &s1);
        let mut s2 = s0.clone();
        sub_scaled_shifted(&mut s2, &qs, &Rational::one(), 0);
        trim(&mut s2);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    if let Some(d) = degree(&r0) {
        let lead = r0[d].clone();
        for c in r0.iter_mut() {
            *c /= &lead;
        }
        for c in s0.iter_mut() {
            *c /= &lead;
        }
    }
    (r0, s0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn p(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| rat(c, 1)).collect()
    }

    #[test]
    fn divides_x4_minus_1() {
        let (q, r) = divrem(&p(&[-1, 0, 0, 0, 1]), &p(&[-1, 1]));
        assert!(r.is_empty());
        assert_eq!(q, p(&[1, 1, 1, 1]));
    }

    #[test]
    fn inverse_mod_x2_plus_1() {
        // (1 + x)^{-1} mod x^2 + 1 = (1 - x)/2
        let (g, s) = gcd_inverse(&p(&[1, 1]), &p(&[1, 0, 1]));
        assert_eq!(g, p(&[1]));
        assert_eq!(s, vec![rat(1, 2), rat(-1, 2)]);
    }
}
