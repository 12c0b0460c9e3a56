//! Flat SU(2) and SU(3) connections on Brieskorn spheres: enumeration,
//! Chern-Simons values, rho invariants via lens spaces, and Floer degrees.
//!
//! Exponent conventions. An SU(3) connection with trivial central holonomy
//! stores, per fiber `i`, integers `e` with eigenvalues `exp(2πi e / a_i)`.
//! An SU(2) connection with central holonomy `-1` stores `(l, -l)` with
//! eigenvalues `exp(±πi l / a_i)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exactnum::{cyclo_field, rat, CycloNum, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrieskornError {
    #[error("exponents {0:?} are not pairwise coprime integers >= 2")]
    NotCoprime([u64; 3]),
    #[error("no consistent lift of the fiber data for {0}")]
    NoConsistentLift(String),
    #[error("degree of {label} is not an integer before reduction: {value}")]
    NonIntegerDegree { label: String, value: Rational },
    #[error("{0}")]
    Unsupported(String),
    #[error("rho_lens needs 0 <= j < a and gcd(b, a) = 1 (got a={a}, b={b}, j={j})")]
    BadLensInput { a: u64, b: i64, j: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub a: [u64; 3],
    /// `a1 a2 a3`.
    pub product: u64,
    /// `Σ beta_i a / a_i = 1`.
    pub beta: [i64; 3],
}

fn mod_inv(x: i64, m: i64) -> Option<i64> {
    let g = x.rem_euclid(m).extended_gcd(&m);
    (g.gcd == 1).then(|| g.x.rem_euclid(m))
}

/// `beta_1`, `beta_2` are the inverses of `a / a_i` reduced to `(-a_i/2, a_i/2]`;
/// `beta_3` then follows from the identity.
pub fn seifert_invariants(a1: u64, a2: u64, a3: u64) -> Result<SeifertData, BrieskornError> {
    let a = [a1, a2, a3];
    let ok = a.iter().all(|&x| x >= 2) && a1.gcd(&a2) == 1 && a1.gcd(&a3) == 1 && a2.gcd(&a3) == 1;
    if !ok {
        return Err(BrieskornError::NotCoprime(a));
    }
    let product = a1 * a2 * a3;
    let p = product as i64;
    let sym = |i: usize| {
        let ai = a[i] as i64;
        let r = mod_inv(p / ai, ai).expect("coprime");
        if 2 * r > ai {
            r - ai
        } else {
            r
        }
    };
    let (b1, b2) = (sym(0), sym(1));
    let rest = 1 - b1 * (p / a1 as i64) - b2 * (p / a2 as i64);
    let q = p / a3 as i64;
    debug_assert_eq!(rest % q, 0);
    Ok(SeifertData { a, product, beta: [b1, b2, rest / q] })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Group {
    Su2,
    Su3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConnKind {
    Irreducible,
    Su2InSu3,
    Trivial,
}

impl ConnKind {
    /// Dimension of the stabilizer, `h^0`.
    pub fn h0(self, rank: u32) -> i64 {
        match self {
            ConnKind::Irreducible => 0,
            ConnKind::Su2InSu3 => 1,
            ConnKind::Trivial => i64::from(rank * rank - 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlatConnection {
    pub label: String,
    pub rank: u32,
    pub kind: ConnKind,
    /// `+1` or `-1`: image of the central element.
    pub central: i8,
    pub exponents: [Vec<i64>; 3],
    /// Chern-Simons value in `[0, 1)`.
    pub cs: Rational,
    pub rho: Rational,
    /// Degree in `Z / 4N`.
    pub degree: i64,
    /// Set when the existence certificate was inconclusive.
    pub flagged: bool,
    /// Floating residual of the explicit representation, when one was built.
    pub witness_residual: Option<f64>,
}

fn frac_part(q: &Rational) -> Rational {
    q - q.floor()
}

// ---------------------------------------------------------------- rho_lens

type LensKey = (u64, i64);

fn cot_products(a: u64, b: i64) -> std::sync::Arc<Vec<CycloNum>> {
    static CACHE: OnceLock<Mutex<HashMap<LensKey, std::sync::Arc<Vec<CycloNum>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(a, b)) {
        return v.clone();
    }
    let field = cyclo_field(a);
    let one = CycloNum::from_rational_in(&field, Rational::from_integer(1.into()));
    let out: Vec<CycloNum> = (1..a as i64)
        .map(|k| {
            let w = CycloNum::zeta(&field, k);
            let wb = CycloNum::zeta(&field, k * b);
            // cot(πk/a) cot(πkb/a) = -(w+1)(w^b+1) / ((w-1)(w^b-1))
            let num = -((&w + &one) * (&wb + &one));
            let den = (&w - &one) * (&wb - &one);
            num.try_div(&den).expect("w^k != 1 for 0 < k < a")
        })
        .collect();
    let out = std::sync::Arc::new(out);
    cache.lock().unwrap().insert((a, b), out.clone());
    out
}

/// `-(4/a) Σ_{k=1}^{a-1} cot(πk/a) cot(πkb/a) sin²(πkj/a)`, exactly.
/// `j` is taken modulo `a`.
pub fn rho_lens(a: u64, b: i64, j: i64) -> Result<Rational, BrieskornError> {
    let ai = a as i64;
    if a == 0 || b.gcd(&ai) != 1 {
        return Err(BrieskornError::BadLensInput { a, b, j });
    }
    let b = b.rem_euclid(ai);
    let j = j.rem_euclid(ai);
    if j == 0 || a == 1 {
        return Ok(Rational::zero());
    }
    let field = cyclo_field(a);
    let two = CycloNum::from_rational_in(&field, rat(2, 1));
    let cots = cot_products(a, b);
    let mut sum = CycloNum::zero_in(&field);
    for (idx, c) in cots.iter().enumerate() {
        let k = idx as i64 + 1;
        // 4 sin²(πkj/a) = 2 - w^{kj} - w^{-kj}
        let s4 = &(&two - &CycloNum::zeta(&field, k * j)) - &CycloNum::zeta(&field, -k * j);
        sum = &sum + &(c * &s4);
    }
    let q = sum.to_rational().ok_or_else(|| BrieskornError::Unsupported(format!(
        "rho_lens({a},{b},{j}) is not rational: internal error"
    )))?;
    Ok(-q / Rational::from_integer(ai.into()))
}

/// Floating evaluation of the same sum, for cross-checks.
pub fn rho_lens_f64(a: u64, b: i64, j: i64) -> f64 {
    use std::f64::consts::PI;
    let af = a as f64;
    let cot = |x: f64| x.cos() / x.sin();
    let s: f64 = (1..a)
        .map(|k| {
            let k = k as f64;
            cot(PI * k / af) * cot(PI * k * b as f64 / af) * (PI * k * j as f64 / af).sin().powi(2)
        })
        .sum();
    -4.0 / af * s
}

/// `(T + 1 - N²) + Σ_i Σ_{p<q} rho_lens(a_i, beta_i, e_ip - e_iq)`.
pub fn rho_from_exponents(
    data: &SeifertData,
    exponents: &[Vec<i64>; 3],
    rank: u32,
    t: i64,
) -> Result<Rational, BrieskornError> {
    let n = i64::from(rank);
    let mut r = Rational::from_integer((t + 1 - n * n).into());
    for i in 0..3 {
        let e = &exponents[i];
        for p in 0..e.len() {
            for q in p + 1..e.len() {
                r += rho_lens(data.a[i], data.beta[i], e[p] - e[q])?;
            }
        }
    }
    Ok(r)
}

/// `4N CS - (N²-1)/2 + (h0 - rho)/2`, checked to be an integer, reduced mod `4N`.
pub fn floer_degree(label: &str, rank: u32, cs: &Rational, rho: &Rational, h0: i64) -> Result<i64, BrieskornError> {
    let n = i64::from(rank);
    let v = cs * Rational::from_integer((4 * n).into()) - rat(n * n - 1, 2)
        + (Rational::from_integer(h0.into()) - rho) / Rational::from_integer(2.into());
    if !v.is_integer() {
        return Err(BrieskornError::NonIntegerDegree { label: label.to_string(), value: v });
    }
    let v = v.to_integer().to_i64().expect("small degree");
    Ok(v.rem_euclid(4 * n))
}

// ---------------------------------------------------------------- CRT lifts

fn crt(residues: &[(i64, i64)]) -> Option<(i64, i64)> {
    let (mut x, mut m) = (0i64, 1i64);
    for &(r, mi) in residues {
        let g = m.extended_gcd(&mi);
        if (r - x) % g.gcd != 0 {
            return None;
        }
        let l = m / g.gcd * mi;
        let t = ((r - x) / g.gcd % (mi / g.gcd)) * g.x % (mi / g.gcd);
        x = (x + m * t).rem_euclid(l);
        m = l;
    }
    Some((x, m))
}

/// CS of an SU(3) connection with trivial central holonomy, using the lift
/// `k_j ≡ beta_i^{-1} e_ij (mod a_i)` and the normalization `Σ k = 0`.
pub fn su3_chern_simons(data: &SeifertData, exponents: &[Vec<i64>; 3], label: &str) -> Result<Rational, BrieskornError> {
    let a = data.product as i64;
    let mut k = Vec::new();
    for j in 0..3 {
        let res: Vec<(i64, i64)> = (0..3)
            .map(|i| {
                let ai = data.a[i] as i64;
                let inv = mod_inv(data.beta[i], ai).expect("beta_i is a unit");
                ((exponents[i][j] * inv).rem_euclid(ai), ai)
            })
            .collect();
        let (x, _) = crt(&res).ok_or_else(|| BrieskornError::NoConsistentLift(label.to_string()))?;
        k.push(x);
    }
    let s: i64 = k.iter().sum();
    if s % a != 0 {
        return Err(BrieskornError::NoConsistentLift(label.to_string()));
    }
    k[0] -= s;
    let mut num = 0i64;
    for i in 0..3 {
        for j in i + 1..3 {
            num += (k[i] - k[j]).pow(2);
        }
    }
    Ok(frac_part(&rat(num, 6 * a)))
}

/// CS of an SU(2) connection with central holonomy `-1` given by `l_i`:
/// `δ ≡ beta_i^{-1} l_i (mod a_i)`, made odd, and `CS = δ² / 4a mod 1`.
pub fn su2_chern_simons(data: &SeifertData, l: [i64; 3], label: &str) -> Result<Rational, BrieskornError> {
    let a = data.product as i64;
    let res: Vec<(i64, i64)> = (0..3)
        .map(|i| {
            let ai = data.a[i] as i64;
            let inv = mod_inv(data.beta[i], ai).expect("beta_i is a unit");
            ((l[i] * inv).rem_euclid(ai), ai)
        })
        .collect();
    let (mut d, m) = crt(&res).ok_or_else(|| BrieskornError::NoConsistentLift(label.to_string()))?;
    if d % 2 == 0 {
        if m % 2 == 0 {
            return Err(BrieskornError::NoConsistentLift(label.to_string()));
        }
        d += m;
    }
    let cs = frac_part(&rat(d * d, 4 * a));
    // independence of the odd lift: δ + 2a gives the same value
    let d2 = d + 2 * a;
    if frac_part(&rat(d2 * d2, 4 * a)) != cs {
        return Err(BrieskornError::NoConsistentLift(label.to_string()));
    }
    Ok(cs)
}

// ---------------------------------------------------------------- SU(3)

/// Fixed classes of `x1`, `x2` for `Σ(2, 3, n)`.
const X1: [i64; 3] = [0, 1, 1];
const X2: [i64; 3] = [0, 1, 2];

/// Barycentric weights `λ_q = (1 + Re(τ ζ3^{-q})) / 3`, `τ = Σ ζ_n^{-e}`, as
/// exact elements of `Q(ζ_{3n})`.
fn interior_weights(n: u64, e: &[i64]) -> [CycloNum; 3] {
    let field = cyclo_field(3 * n);
    let ni = n as i64;
    let mut tau = CycloNum::zero_in(&field);
    for x in e {
        tau = &tau + &CycloNum::zeta(&field, -3 * x);
    }
    let one = CycloNum::from_rational_in(&field, rat(1, 1));
    [0i64, 1, 2].map(|q| {
        let t = &tau * &CycloNum::zeta(&field, -ni * q);
        let re = (&t + &t.conj()).scale(&rat(1, 2));
        (&one + &re).scale(&rat(1, 3))
    })
}

/// Builds `A = 2uu* - 1` and `B = diag(1, ζ, ζ²)` with `|u_q|² = λ_q` and
/// returns the trace residual `|tr(AB) - τ|` and the commutant dimension.
fn su3_witness(n: u64, e: &[i64], lambda: &[f64; 3]) -> (f64, usize) {
    let z3 = |k: i64| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 3.0);
    let u: Vec<Complex64> = lambda.iter().map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0)).collect();
    let a = DMatrix::from_fn(3, 3, |i, j| {
        let d = if i == j { 1.0 } else { 0.0 };
        u[i] * u[j].conj() * 2.0 - Complex64::new(d, 0.0)
    });
    let b = DMatrix::from_fn(3, 3, |i, j| if i == j { z3(i as i64) } else { Complex64::zero() });
    let ab = &a * &b;
    let tau: Complex64 = e
        .iter()
        .map(|x| Complex64::from_polar(1.0, -std::f64::consts::TAU * *x as f64 / n as f64))
        .sum();
    let unit = (&ab * ab.adjoint() - DMatrix::<Complex64>::identity(3, 3)).norm();
    let residual = (ab.trace() - tau).norm() + unit + (ab.determinant() - Complex64::new(1.0, 0.0)).norm();
    // commutant: X A - A X = 0 and X B - B X = 0, as an 18 x 9 system
    let mut sys = DMatrix::<Complex64>::zeros(18, 9);
    for (blk, m) in [&a, &b].iter().enumerate() {
        for r in 0..3 {
            for c in 0..3 {
                let row = blk * 9 + r * 3 + c;
                for k in 0..3 {
                    // (XM)_{rc} = Σ_k X_{rk} M_{kc};  (MX)_{rc} = Σ_k M_{rk} X_{kc}
                    sys[(row, r * 3 + k)] += m[(k, c)];
                    sys[(row, k * 3 + c)] -= m[(r, k)];
                }
            }
        }
    }
    let rank = sys.rank(1e-9);
    (residual, 9 - rank)
}

fn check_su3_support(data: &SeifertData) -> Result<(), BrieskornError> {
    if data.a[0] != 2 || data.a[1] != 3 {
        return Err(BrieskornError::Unsupported(
            "SU(3) enumeration is implemented for Σ(2, 3, n) only".to_string(),
        ));
    }
    Ok(())
}

fn conj_triple(n: i64, t: &[i64]) -> Vec<i64> {
    let mut c: Vec<i64> = t.iter().map(|x| (-x).rem_euclid(n)).collect();
    c.sort();
    c
}

/// Irreducible SU(3) connections with trivial central holonomy on
/// `Σ(2, 3, n)`. Self-conjugate classes come first (sorted), then each
/// lexicographically smaller representative followed by its conjugate.
pub fn enumerate_su3(data: &SeifertData) -> Result<Vec<FlatConnection>, BrieskornError> {
    check_su3_support(data)?;
    let n = data.a[2];
    let ni = n as i64;
    let mut found: Vec<(Vec<i64>, bool, f64)> = Vec::new();
    for e1 in 0..ni {
        for e2 in e1..ni {
            for e3 in e2..ni {
                if (e1 + e2 + e3) % ni != 0 {
                    continue;
                }
                let e = [e1, e2, e3];
                let w = interior_weights(n, &e);
                if w.iter().any(|x| x.is_zero()) {
                    // boundary of the triangle: reducible
                    continue;
                }
                let approx: [f64; 3] = [0, 1, 2].map(|q| w[q].embed().re);
                if approx.iter().any(|x| *x < 0.0) {
                    continue;
                }
                let (res, commutant) = su3_witness(n, &e, &approx);
                let flagged = res > 1e-9 || commutant != 1 || approx.iter().any(|x| *x < 1e-12);
                found.push((e.to_vec(), flagged, res));
            }
        }
    }
    let mut selfc: Vec<&(Vec<i64>, bool, f64)> = Vec::new();
    let mut pairs: Vec<(&(Vec<i64>, bool, f64), &(Vec<i64>, bool, f64))> = Vec::new();
    for f in &found {
        let c = conj_triple(ni, &f.0);
        if c == f.0 {
            selfc.push(f);
        } else if f.0 < c {
            let g = found.iter().find(|g| g.0 == c).expect("conjugate class is also irreducible");
            pairs.push((f, g));
        }
    }
    let mut out = Vec::new();
    let mut idx = 0;
    let mut push = |f: &(Vec<i64>, bool, f64), label: String| -> Result<(), BrieskornError> {
        let exps = [X1.to_vec(), X2.to_vec(), f.0.clone()];
        let cs = su3_chern_simons(data, &exps, &label)?;
        let rho = rho_from_exponents(data, &exps, 3, 0)?;
        let degree = floer_degree(&label, 3, &cs, &rho, 0)?;
        out.push(FlatConnection {
            label,
            rank: 3,
            kind: ConnKind::Irreducible,
            central: 1,
            exponents: exps,
            cs,
            rho,
            degree,
            flagged: f.1,
            witness_residual: Some(f.2),
        });
        Ok(())
    };
    for f in selfc {
        idx += 1;
        push(f, format!("alpha{idx}"))?;
    }
    for (f, g) in pairs {
        idx += 1;
        push(f, format!("alpha{idx}_1"))?;
        push(g, format!("alpha{idx}_2"))?;
    }
    Ok(out)
}

// ---------------------------------------------------------------- SU(2)

/// Angle data `l_i` (`0 < l_i < a_i`, `l_i ≡ beta_i mod 2`) admitting an
/// irreducible SU(2) representation with `x1 x2 x3 = 1`.
fn su2_angle_triples(data: &SeifertData) -> Vec<[i64; 3]> {
    let ls = |i: usize| -> Vec<i64> {
        let ai = data.a[i] as i64;
        (1..ai).filter(|l| (l - data.beta[i]).rem_euclid(2) == 0).collect()
    };
    let mut out = Vec::new();
    for l1 in ls(0) {
        for l2 in ls(1) {
            for l3 in ls(2) {
                // θ_i = π l_i / a_i; compare via the common denominator
                let a = data.product as i64;
                let t = [l1 * (a / data.a[0] as i64), l2 * (a / data.a[1] as i64), l3 * (a / data.a[2] as i64)];
                let ok = (t[0] - t[1]).abs() < t[2] && t[2] < (t[0] + t[1]).min(2 * a - t[0] - t[1]);
                if ok {
                    out.push([l1, l2, l3]);
                }
            }
        }
    }
    // by decreasing l3, so that Σ(2,3,n) labels follow k = (n - l3) / 2
    out.sort_by(|x, y| y[2].cmp(&x[2]).then(x.cmp(y)));
    out
}

fn su2_label(data: &SeifertData, l: &[i64; 3]) -> String {
    let n = data.a[2] as i64;
    if (n - l[2]) % 2 == 0 && data.a[0] == 2 && data.a[1] == 3 {
        format!("beta{}", (n - l[2]) / 2)
    } else {
        format!("beta[{},{},{}]", l[0], l[1], l[2])
    }
}

/// Irreducible SU(2) connections with central holonomy `-1`.
pub fn enumerate_su2(data: &SeifertData) -> Result<Vec<FlatConnection>, BrieskornError> {
    su2_angle_triples(data)
        .into_iter()
        .map(|l| {
            let label = su2_label(data, &l);
            let exps = [vec![l[0], -l[0]], vec![l[1], -l[1]], vec![l[2], -l[2]]];
            let cs = su2_chern_simons(data, l, &label)?;
            // adjoint weight of (l, -l) in units 1/(2a_i) is l in units 1/a_i
            let weights = [vec![l[0], 0], vec![l[1], 0], vec![l[2], 0]];
            let rho = rho_from_exponents(data, &weights, 2, 0)?;
            let degree = floer_degree(&label, 2, &cs, &rho, 0)?;
            Ok(FlatConnection {
                label,
                rank: 2,
                kind: ConnKind::Irreducible,
                central: -1,
                exponents: exps,
                cs,
                rho,
                degree,
                flagged: false,
                witness_residual: None,
            })
        })
        .collect()
}

pub fn enumerate_flat(data: &SeifertData, group: Group) -> Result<Vec<FlatConnection>, BrieskornError> {
    match group {
        Group::Su2 => enumerate_su2(data),
        Group::Su3 => enumerate_su3(data),
    }
}

/// Rho invariants of the adjoint SU(3) representation for the reducible
/// connections induced from SU(2) on `Σ(2,3,23)`, indexed by `k = 2..9`
/// (numerators over 23). These do not follow from the lens-space sum and
/// are supplied as data.
const RHO_SU2_IN_SU3_2_3_23: [i64; 8] = [-206, -406, -410, -402, -382, -534, -490, -434];

/// SU(3) connections induced from the irreducible SU(2) ones via
/// `SU(2) ⊂ SU(3)`. Available where their rho invariants are known.
pub fn su2_in_su3(data: &SeifertData) -> Result<Vec<FlatConnection>, BrieskornError> {
    if data.a != [2, 3, 23] {
        return Err(BrieskornError::Unsupported(
            "rho invariants of SU(2)-in-SU(3) connections are tabulated for Σ(2,3,23) only".to_string(),
        ));
    }
    enumerate_su2(data)?
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let rho = rat(RHO_SU2_IN_SU3_2_3_23[i], 23);
            let degree = floer_degree(&c.label, 3, &c.cs, &rho, 1)?;
            Ok(FlatConnection { rank: 3, kind: ConnKind::Su2InSu3, rho, degree, ..c })
        })
        .collect()
}

pub fn trivial(rank: u32) -> FlatConnection {
    let cs = Rational::zero();
    let rho = Rational::zero();
    let degree = floer_degree("trivial", rank, &cs, &rho, i64::from(rank * rank - 1)).expect("integral");
    FlatConnection {
        label: "trivial".to_string(),
        rank,
        kind: ConnKind::Trivial,
        central: 1,
        exponents: [vec![0; rank as usize], vec![0; rank as usize], vec![0; rank as usize]],
        cs,
        rho,
        degree,
        flagged: false,
        witness_residual: None,
    }
}

/// Pre-reduction degree value, for integrality reports.
pub fn degree_value(c: &FlatConnection) -> Rational {
    let n = i64::from(c.rank);
    let h0 = c.kind.h0(c.rank);
    &c.cs * Rational::from_integer((4 * n).into()) - rat(n * n - 1, 2)
        + (Rational::from_integer(h0.into()) - &c.rho) / Rational::from_integer(2.into())
}

/// Number of connections per degree.
pub fn census(conns: &[FlatConnection]) -> BTreeMap<i64, usize> {
    let mut m = BTreeMap::new();
    for c in conns {
        *m.entry(c.degree).or_insert(0) += 1;
    }
    m
}

/// All CS values obtained by permuting the eigenvalue tuples before lifting.
pub fn su3_cs_over_lifts(data: &SeifertData, c: &FlatConnection) -> Result<Vec<Rational>, BrieskornError> {
    fn perms(v: &[i64]) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let q: Vec<i64> = p.iter().map(|&i| v[i]).collect();
            if !out.contains(&q) {
                out.push(q);
            }
        }
        out
    }
    let mut vals = Vec::new();
    for p2 in perms(&c.exponents[1]) {
        for p3 in perms(&c.exponents[2]) {
            let exps = [c.exponents[0].clone(), p2.clone(), p3];
            let v = su3_chern_simons(data, &exps, &c.label)?;
            if !vals.contains(&v) {
                vals.push(v);
            }
        }
    }
    vals.sort();
    Ok(vals)
}

/// `|x - q| < tol`, for floating cross-checks.
pub fn near_rational(x: f64, q: &Rational, tol: f64) -> bool {
    (x - q.to_f64().unwrap_or(f64::NAN)).abs() < tol
}
