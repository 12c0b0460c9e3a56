//! Eigenvalue catalog for the genus-`g` Floer ring: the label set `C_g`,
//! evaluation points `u(a,b)`, interpolation polynomials separating them,
//! fiber-sum pairing coefficients and the eigenvalue bound.

use num_integer::Roots;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::donaldson::{torus_gluing_factor, Coefficient, DonaldsonError, HbarConfig};
use crate::exactnum::{cyclo_field, int, q12, CycloNum, Rational};
use crate::formal::TruncatedSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EigenError {
    #[error("genus must be at least 1")]
    BadGenus,
    #[error("d must be 1 or 2, got {0}")]
    BadD(i64),
    #[error("({0}, {1}) is not in the catalog")]
    NotInCatalog(i64, i64),
    #[error("evaluation points coincide")]
    CoincidentPoints,
    #[error(transparent)]
    Donaldson(#[from] DonaldsonError),
}

type Result<T> = std::result::Result<T, EigenError>;

fn check(g: u32, d: i64) -> Result<()> {
    if g == 0 {
        return Err(EigenError::BadGenus);
    }
    if d != 1 && d != 2 {
        return Err(EigenError::BadD(d));
    }
    Ok(())
}

/// All `(a, b)` with `a ≡ b mod 2` and `|a| + |b| ≤ 2g - 2`, lexicographic.
pub fn catalog(g: u32) -> Vec<(i64, i64)> {
    let r = 2 * i64::from(g.max(1)) - 2;
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            if (a - b) % 2 == 0 && a.abs() + b.abs() <= r {
                out.push((a, b));
            }
        }
    }
    out
}

/// Sizes of the catalog: all pairs, the both-even pairs, and `2g(g-1)+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogCounts {
    pub all: usize,
    pub even: usize,
    pub formula: usize,
}

pub fn catalog_counts(g: u32) -> CatalogCounts {
    let c = catalog(g);
    let g = g as usize;
    CatalogCounts {
        all: c.len(),
        even: c.iter().filter(|(a, b)| a % 2 == 0 && b % 2 == 0).count(),
        formula: 2 * g * (g - 1) + 1,
    }
}

fn in_catalog(g: u32, a: i64, b: i64) -> Result<()> {
    let r = 2 * i64::from(g) - 2;
    if (a - b) % 2 != 0 || a.abs() + b.abs() > r {
        return Err(EigenError::NotInCatalog(a, b));
    }
    Ok(())
}

/// `(3ζ^{2db}, √3 a ζ^{db}, √3 i b ζ^{2db})` with `ζ = e^{2πi/3}`.
pub fn eigen_point(a: i64, b: i64, d: i64) -> [CycloNum; 3] {
    let r3 = q12::sqrt3();
    [
        q12::zeta3(2 * d * b).scale(&int(3)),
        &r3.scale(&int(a)) * &q12::zeta3(d * b),
        &(&r3 * &q12::i()).scale(&int(b)) * &q12::zeta3(2 * d * b),
    ]
}

/// `(s1, ..., s5) = (1, 3ζ^{2db}, 0, √3 a ζ^{db}, √3 i b ζ^{2db})`.
pub fn eigen_tuple(a: i64, b: i64, d: i64, g: u32) -> Result<[CycloNum; 5]> {
    check(g, d)?;
    in_catalog(g, a, b)?;
    let [x, y, z] = eigen_point(a, b, d);
    Ok([q12::from_rational(int(1)), x, q12::from_rational(int(0)), y, z])
}

/// A polynomial in `x, y, z` over `Q(ζ12)`, as `(exponents, coefficient)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationPoly {
    pub target: (i64, i64),
    pub terms: Vec<([u32; 3], CycloNum)>,
}

impl InterpolationPoly {
    pub fn eval(&self, u: &[CycloNum; 3]) -> CycloNum {
        let powers: Vec<Vec<CycloNum>> = (0..3)
            .map(|v| {
                let top = self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0);
                let mut p = vec![CycloNum::rational(int(1))];
                for _ in 0..top {
                    let next = p.last().unwrap() * &u[v];
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = q12::from_rational(int(0));
        for ([i, j, k], c) in &self.terms {
            let m = &(&powers[0][*i as usize] * &powers[1][*j as usize]) * &powers[2][*k as usize];
            acc = &acc + &(c * &m);
        }
        acc
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }
}

fn monomial_value(e: &[u32; 3], u: &[CycloNum; 3]) -> CycloNum {
    let mut v = CycloNum::rational(int(1));
    for (k, x) in e.iter().zip(u) {
        v = &v * &x.pow(i64::from(*k)).expect("nonnegative power");
    }
    v
}

/// Monomials by total degree, each exponent capped at `cap`.
fn graded_monomials(cap: u32) -> impl Iterator<Item = [u32; 3]> {
    (0..=3 * cap).flat_map(move |t| {
        let mut v = Vec::new();
        for i in (0..=t.min(cap)).rev() {
            for j in (0..=(t - i).min(cap)).rev() {
                let k = t - i - j;
                if k <= cap {
                    v.push([i, j, k]);
                }
            }
        }
        v
    })
}

// Column selection runs in F_p with p ≡ 1 mod 12, so that ζ12 has an image.
// Rank n mod p implies rank n over Q(ζ12).
const P: u64 = 2_147_483_629;
const OMEGA: u64 = 1_803_057_106;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn to_mod_p(x: &CycloNum) -> u64 {
    let n = x.conductor();
    assert_eq!(12 % n, 0, "field must embed in Q(ζ12)");
    let step = pow_mod(OMEGA, 12 / n);
    let pb = num_bigint::BigInt::from(P);
    let mut acc = 0;
    let mut w = 1;
    for c in x.coords() {
        let num = (c.numer() % &pb + &pb) % &pb;
        let den = (c.denom() % &pb + &pb) % &pb;
        let num = num.to_u64().expect("reduced");
        let den = den.to_u64().expect("reduced");
        assert_ne!(den, 0, "denominator divisible by p");
        acc = (acc + num * pow_mod(den, P - 2) % P * w) % P;
        w = w * step % P;
    }
    acc
}

/// Row reduction state used to pick independent monomial columns.
struct Echelon {
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    fn try_add(&mut self, mut v: Vec<u64>) -> bool {
        for (p, b) in &self.rows {
            let f = v[*p];
            if f == 0 {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x = (*x + P - f * y % P) % P;
            }
        }
        match v.iter().position(|x| *x != 0) {
            Some(p) => {
                let inv = pow_mod(v[p], P - 2);
                let v = v.iter().map(|x| x * inv % P).collect();
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

/// `a + bω` in `Q(ζ3)`, with `ω² = -1 - ω`.
#[derive(Clone)]
struct Q3 {
    a: Rational,
    b: Rational,
}

impl Q3 {
    fn from_cyclo(x: &CycloNum) -> Q3 {
        let f3 = cyclo_field(3);
        let c = x.coerce(&f3).expect("element of Q(ζ3)");
        Q3 { a: c.coords()[0].clone(), b: c.coords()[1].clone() }
    }

    fn to_cyclo(&self) -> CycloNum {
        CycloNum::new(&cyclo_field(3), vec![self.a.clone(), self.b.clone()])
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn mul(&self, o: &Q3) -> Q3 {
        let bd = &self.b * &o.b;
        Q3 { a: &self.a * &o.a - &bd, b: &self.a * &o.b + &self.b * &o.a - bd }
    }

    fn inv(&self) -> Q3 {
        // conjugate is (a - b) - bω, norm a² - ab + b²
        let n = &self.a * &self.a - &self.a * &self.b + &self.b * &self.b;
        Q3 { a: (&self.a - &self.b) / &n, b: -&self.b / &n }
    }

    fn sub_mul(&mut self, f: &Q3, y: &Q3) {
        let p = f.mul(y);
        self.a -= p.a;
        self.b -= p.b;
    }
}

/// Inverse of a square matrix over `Q(ζ3)` by Gauss-Jordan.
fn invert(m: &[Vec<CycloNum>]) -> Option<Vec<Vec<CycloNum>>> {
    let n = m.len();
    let zero = Q3 { a: Rational::zero(), b: Rational::zero() };
    let one = Q3 { a: int(1), b: Rational::zero() };
    let mut a: Vec<Vec<Q3>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q3> = row.iter().map(Q3::from_cyclo).collect();
            r.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].inv();
        a[col] = a[col].iter().map(|x| if x.is_zero() { zero.clone() } else { x.mul(&inv) }).collect();
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    x.sub_mul(&f, y);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].iter().map(Q3::to_cyclo).collect()).collect())
}

/// `P_λ` for every `λ` in the catalog: `P_λ(u(μ)) = δ_{λμ}`.
///
/// Monomials are taken greedily in graded order until the evaluation matrix
/// has full rank, then the square system is solved exactly. The points are
/// evaluated at `t2 = t3 = 0`, so the polynomials returned are also the
/// specialisations `Q_λ`.
pub fn interpolation_all(g: u32, d: i64) -> Result<Vec<InterpolationPoly>> {
    check(g, d)?;
    let cat = catalog(g);
    let n = cat.len();
    let pts: Vec<[CycloNum; 3]> = cat.iter().map(|(a, b)| eigen_point(*a, *b, d)).collect();
    for i in 0..n {
        for j in 0..i {
            if pts[i] == pts[j] {
                return Err(EigenError::CoincidentPoints);
            }
        }
    }
    // x = u1/3, y = u2/√3, z = u3/(√3 i) all lie in Z[ζ3]
    let f3 = cyclo_field(3);
    let scaled: Vec<[CycloNum; 3]> = cat
        .iter()
        .map(|(a, b)| {
            let w = CycloNum::zeta(&f3, 2 * d * b);
            [w.clone(), CycloNum::zeta(&f3, d * b).scale(&int(*a)), w.scale(&int(*b))]
        })
        .collect();
    let pts_p: Vec<[u64; 3]> = scaled.iter().map(|u| [to_mod_p(&u[0]), to_mod_p(&u[1]), to_mod_p(&u[2])]).collect();
    let mut ech = Echelon { rows: Vec::new() };
    let mut chosen = Vec::new();
    for e in graded_monomials(n as u32 - 1) {
        if chosen.len() == n {
            break;
        }
        let col: Vec<u64> =
            pts_p.iter().map(|u| e.iter().zip(u).fold(1, |acc, (k, x)| acc * pow_mod(*x, u64::from(*k)) % P)).collect();
        if ech.try_add(col) {
            chosen.push(e);
        }
    }
    if chosen.len() < n {
        return Err(EigenError::CoincidentPoints);
    }
    // rows: points, columns: chosen monomials
    let v: Vec<Vec<CycloNum>> = scaled.iter().map(|u| chosen.iter().map(|e| monomial_value(e, u)).collect()).collect();
    let inv = invert(&v).ok_or(EigenError::CoincidentPoints)?;
    // back to u: divide the x^i y^j z^k coefficient by 3^i √3^(j+k) i^k
    let unscale: Vec<CycloNum> = chosen
        .iter()
        .map(|[i, j, k]| {
            let s = &q12::sqrt3().pow(i64::from(j + k)).expect("power") * &q12::i().pow(i64::from(*k)).expect("power");
            s.scale(&int(3).pow(*i as i32)).inv().expect("nonzero")
        })
        .collect();
    let inv: Vec<Vec<CycloNum>> = inv
        .iter()
        .zip(&unscale)
        .map(|(row, s)| row.iter().map(|x| &x.coerce(s.field()).expect("Q(ζ3) ⊂ Q(ζ12)") * s).collect())
        .collect();
    // coefficients of P_λ form column λ of the inverse
    Ok(cat
        .iter()
        .enumerate()
        .map(|(l, lam)| InterpolationPoly {
            target: *lam,
            terms: chosen
                .iter()
                .zip(&inv)
                .filter(|(_, row)| !row[l].is_zero())
                .map(|(e, row)| (*e, row[l].clone()))
                .collect(),
        })
        .collect())
}

/// Outcome of re-evaluating every `P_λ` at every catalog point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub genus: u32,
    pub d: i64,
    pub size: usize,
    /// `(λ, μ)` pairs where `P_λ(u(μ)) ≠ δ_{λμ}`.
    pub failures: Vec<((i64, i64), (i64, i64))>,
}

impl DeltaReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds all `P_λ` and checks `P_λ(u(μ)) = δ_{λμ}` exactly.
pub fn delta_check(g: u32, d: i64) -> Result<DeltaReport> {
    let polys = interpolation_all(g, d)?;
    let cat = catalog(g);
    let mut monos: Vec<[u32; 3]> = polys.iter().flat_map(|p| p.terms.iter().map(|(e, _)| *e)).collect();
    monos.sort();
    monos.dedup();
    let one = q12::from_rational(int(1));
    let mut failures = Vec::new();
    for mu in &cat {
        let u = eigen_point(mu.0, mu.1, d);
        let values: Vec<CycloNum> = monos.iter().map(|e| monomial_value(e, &u)).collect();
        for p in &polys {
            let mut acc = q12::from_rational(int(0));
            for (e, c) in &p.terms {
                let k = monos.binary_search(e).expect("collected above");
                acc = &acc + &(c * &values[k]);
            }
            let ok = if p.target == *mu { acc == one } else { acc.is_zero() };
            if !ok {
                failures.push((p.target, *mu));
            }
        }
    }
    Ok(DeltaReport { genus: g, d, size: cat.len(), failures })
}

pub fn interpolation(lambda: (i64, i64), g: u32, d: i64) -> Result<InterpolationPoly> {
    in_catalog(g, lambda.0, lambda.1)?;
    interpolation_all(g, d)?.into_iter().find(|p| p.target == lambda).ok_or(EigenError::NotInCatalog(lambda.0, lambda.1))
}

/// Pairing coefficient `h^{g,d}_{a,b,γ,η}` of a fiber sum along a genus `g`
/// surface. Nonzero only for `(±(2g-2), 0, ±1, 0)`, where it is
/// `ħ₃^{g-1}(2/ħ₁)^{2g-4}`, and `(0, ±(2g-2), 0, ±1)`, where it is
/// `ħ₄^{g-1}ħ₂^{4-2g}ζ^{±d}`.
pub fn h_coefficient<R: Coefficient>(
    g: u32,
    d: i64,
    (a, b): (i64, i64),
    (gamma, eta): (i64, i64),
    hbar: &HbarConfig,
) -> Result<R> {
    if g < 2 {
        return Err(EigenError::BadGenus);
    }
    check(g, d)?;
    let top = 2 * i64::from(g) - 2;
    let e = 2 * g - 4;
    let not_poly = || EigenError::Donaldson(DonaldsonError::Mismatch("coefficient is not a polynomial in ħ".into()));
    if b == 0 && eta == 0 && a.abs() == top && gamma == a.signum() {
        let h1: R = hbar.get(1).map_err(DonaldsonError::from)?;
        let h3: R = hbar.get(3).map_err(DonaldsonError::from)?;
        let num = h3.pow_u(g - 1).scale_rational(&int(1 << e));
        return num.div_exact(&h1.pow_u(e)).ok_or_else(not_poly);
    }
    if a == 0 && gamma == 0 && b.abs() == top && eta == b.signum() {
        let h2: R = hbar.get(2).map_err(DonaldsonError::from)?;
        let h4: R = hbar.get(4).map_err(DonaldsonError::from)?;
        let v = h4.pow_u(g - 1).div_exact(&h2.pow_u(e)).ok_or_else(not_poly)?;
        return Ok(v.mul_ref(&R::zeta3(eta * d)));
    }
    Ok(R::zero())
}

/// `(ħ₁ cosh(√3 t2) - 2ħ₂ cos(-2πd/3 + √3 t3))²`.
pub fn h_torus<R: Coefficient>(d: i64, order: u32, hbar: &HbarConfig) -> Result<TruncatedSeries<R>> {
    Ok(torus_gluing_factor(order, d, hbar)?)
}

/// Result of scanning the catalog for `|s4| + |s5| ≤ √3(2g-2)`.
/// Magnitudes are stored as multiples of `√3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub genus: u32,
    pub d: i64,
    pub bound: i64,
    pub max: i64,
    pub attained_at: Vec<(i64, i64)>,
    pub holds: bool,
}

/// `|x| / √3` from the exact value of `|x|²`, which must be `3k²`.
fn modulus_over_sqrt3(x: &CycloNum) -> i64 {
    let sq = (x * &x.conj()).to_rational().expect("|x|² is rational");
    let k2 = (sq / int(3)).to_integer();
    let k = k2.to_i64().expect("small").sqrt();
    debug_assert_eq!(k * k, k2.to_i64().unwrap());
    k
}

pub fn check_bound(g: u32, d: i64) -> Result<BoundReport> {
    check(g, d)?;
    let bound = 2 * i64::from(g) - 2;
    let mut max = 0;
    let mut at = Vec::new();
    for (a, b) in catalog(g) {
        let s = eigen_tuple(a, b, d, g)?;
        let m = modulus_over_sqrt3(&s[3]) + modulus_over_sqrt3(&s[4]);
        if m > max {
            max = m;
            at.clear();
        }
        if m == max {
            at.push((a, b));
        }
    }
    Ok(BoundReport { genus: g, d, bound, max, attained_at: at, holds: max <= bound })
}

/// The `ℵ₂`-eigenvalue `s2` of the unique genus-1 label `(0, 0)`.
pub fn genus_one_aleph2(d: i64) -> Result<CycloNum> {
    Ok(eigen_tuple(0, 0, d, 1)?[1].clone())
}
