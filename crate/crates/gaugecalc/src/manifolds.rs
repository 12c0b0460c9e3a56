//! Intersection lattices, characteristic numbers, permissible triples and the
//! preset 4-manifolds.
//!
//! Basic classes are stored as covectors, i.e. as the row `Q·K`, so a pairing
//! `K·Γ` is a plain dot product with the coordinate vector of `Γ`.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::donaldson::{Coefficient, HbarConfig};
use crate::exactnum::{rat, QAlgebra, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ManifoldError {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("cannot parse class expression `{0}`")]
    BadClassExpr(String),
    #[error("hbar{0} has no value")]
    MissingHbar(usize),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

type Result<T> = std::result::Result<T, ManifoldError>;

/// `vᵀ Q w`.
pub fn pair(q: &[Vec<i64>], v: &[i64], w: &[i64]) -> Result<i64> {
    let n = q.len();
    for x in [v, w] {
        if x.len() != n {
            return Err(ManifoldError::DimensionMismatch { expected: n, got: x.len() });
        }
    }
    let mut s = 0i64;
    for i in 0..n {
        if v[i] == 0 {
            continue;
        }
        let row: i64 = q[i].iter().zip(w).map(|(a, b)| a * b).sum();
        s += v[i] * row;
    }
    Ok(s)
}

pub fn q_form(q: &[Vec<i64>], v: &[i64]) -> Result<i64> {
    pair(q, v, v)
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A free abelian group with a symmetric integer form and named basis classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    q: Vec<Vec<i64>>,
    names: Vec<String>,
}

impl Lattice {
    pub fn new(q: Vec<Vec<i64>>, names: Vec<String>) -> Result<Lattice> {
        let n = q.len();
        if names.len() != n {
            return Err(ManifoldError::DimensionMismatch { expected: n, got: names.len() });
        }
        for (i, row) in q.iter().enumerate() {
            if row.len() != n {
                return Err(ManifoldError::DimensionMismatch { expected: n, got: row.len() });
            }
            for j in 0..n {
                if row[j] != q[j][i] {
                    return Err(ManifoldError::Inconsistent(format!("form not symmetric at ({i},{j})")));
                }
            }
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(ManifoldError::Inconsistent("repeated class name".into()));
        }
        Ok(Lattice { q, names })
    }

    /// Orthogonal sum of named blocks.
    pub fn block_sum(blocks: &[(Vec<Vec<i64>>, Vec<String>)]) -> Result<Lattice> {
        let n: usize = blocks.iter().map(|b| b.0.len()).sum();
        let mut q = vec![vec![0; n]; n];
        let mut names = Vec::with_capacity(n);
        let mut off = 0;
        for (m, ns) in blocks {
            for (i, row) in m.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    q[off + i][off + j] = *x;
                }
            }
            names.extend(ns.iter().cloned());
            off += m.len();
        }
        Lattice::new(q, names)
    }

    pub fn rank(&self) -> usize {
        self.q.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.q
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn class(&self, name: &str) -> Result<Vec<i64>> {
        let i = self.index(name).ok_or_else(|| ManifoldError::UnknownClass(name.to_string()))?;
        let mut v = self.zero();
        v[i] = 1;
        Ok(v)
    }

    /// Parses integer combinations such as `sigma+2f`, `-E1 + 3*tau_2` or `0`.
    pub fn parse_class(&self, expr: &str) -> Result<Vec<i64>> {
        let bad = || ManifoldError::BadClassExpr(expr.to_string());
        let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut v = self.zero();
        let mut terms = Vec::new();
        let mut cur = String::new();
        for c in s.chars() {
            if (c == '+' || c == '-') && !cur.is_empty() && !cur.ends_with('*') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(c);
        }
        terms.push(cur);
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(r) => (-1, r),
                None => (1, t.strip_prefix('+').unwrap_or(&t)),
            };
            let digits: String = body.chars().take_while(|c| c.is_ascii_digit()).collect();
            let rest = body[digits.len()..].trim_start_matches('*');
            let coef: i64 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| bad())? };
            if rest.is_empty() {
                if digits.is_empty() || coef != 0 {
                    return Err(bad());
                }
                continue;
            }
            let i = self.index(rest).ok_or_else(|| ManifoldError::UnknownClass(rest.to_string()))?;
            v[i] += sign * coef;
        }
        Ok(v)
    }

    /// Inverse of [`parse_class`](Self::parse_class).
    pub fn format_class(&self, v: &[i64]) -> String {
        let mut out = String::new();
        for (c, n) in v.iter().zip(&self.names) {
            if *c == 0 {
                continue;
            }
            let a = c.abs();
            out.push_str(match (*c < 0, out.is_empty()) {
                (true, _) => "-",
                (false, true) => "",
                (false, false) => "+",
            });
            if a != 1 {
                out.push_str(&a.to_string());
            }
            out.push_str(n);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn pair(&self, v: &[i64], w: &[i64]) -> Result<i64> {
        pair(&self.q, v, w)
    }

    pub fn q_form(&self, v: &[i64]) -> Result<i64> {
        q_form(&self.q, v)
    }

    /// `Q·v`.
    pub fn covector(&self, v: &[i64]) -> Vec<i64> {
        self.q.iter().map(|row| dot(row, v)).collect()
    }

    pub fn direct_sum(&self, other: &Lattice, prefix_a: &str, prefix_b: &str) -> Lattice {
        let rename = |l: &Lattice, p: &str| l.names.iter().map(|n| format!("{p}{n}")).collect::<Vec<_>>();
        Lattice::block_sum(&[(self.q.clone(), rename(self, prefix_a)), (other.q.clone(), rename(other, prefix_b))])
            .expect("prefixes keep names distinct")
    }

    /// Adds one new class orthogonal to everything else.
    pub fn extend(&self, name: &str, square: i64) -> Result<Lattice> {
        Lattice::block_sum(&[(self.q.clone(), self.names.clone()), (vec![vec![square]], vec![name.to_string()])])
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> i128 {
        let n = self.rank();
        let mut a: Vec<Vec<i128>> = self.q.iter().map(|r| r.iter().map(|x| i128::from(*x)).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        if n == 0 {
            1
        } else {
            sign * a[n - 1][n - 1]
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "names": self.names, "matrix": self.q })
    }
}

/// A closed 4-manifold with `b1 = 0`, modelled by its intersection lattice.
///
/// `constraints` are covectors that every admissible class must annihilate;
/// they cut the modelled lattice down to the classes the evaluators support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldModel {
    pub label: String,
    pub lattice: Lattice,
    pub chi: i64,
    pub sigma: i64,
    pub b_plus: i64,
    pub simple_type: bool,
    pub constraints: Vec<Vec<i64>>,
}

impl ManifoldModel {
    pub fn new(label: &str, lattice: Lattice, chi: i64, sigma: i64, b_plus: i64, simple_type: bool) -> Result<Self> {
        if chi != 2 + 2 * b_plus - sigma {
            return Err(ManifoldError::Inconsistent(format!("chi={chi}, sigma={sigma}, b+={b_plus}")));
        }
        Ok(ManifoldModel { label: label.to_string(), lattice, chi, sigma, b_plus, simple_type, constraints: Vec::new() })
    }

    pub fn b1(&self) -> i64 {
        0
    }

    pub fn b_minus(&self) -> i64 {
        self.b_plus - self.sigma
    }

    pub fn class(&self, expr: &str) -> Result<Vec<i64>> {
        self.lattice.parse_class(expr)
    }

    pub fn admits(&self, v: &[i64]) -> bool {
        v.len() == self.lattice.rank() && self.constraints.iter().all(|c| dot(c, v) == 0)
    }

    pub fn blow_up(&self) -> ManifoldModel {
        let name = exceptional_name(&self.lattice);
        let lattice = self.lattice.extend(&name, -1).expect("fresh name");
        let constraints = self.constraints.iter().map(|c| padded(c, lattice.rank())).collect();
        ManifoldModel {
            label: format!("{}#CP2bar", self.label),
            lattice,
            chi: self.chi + 1,
            sigma: self.sigma - 1,
            b_plus: self.b_plus,
            simple_type: self.simple_type,
            constraints,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "chi": self.chi,
            "sigma": self.sigma,
            "b_plus": self.b_plus,
            "b1": 0,
            "simple_type": self.simple_type,
            "lattice": self.lattice.to_json(),
            "constraints": self.constraints,
        })
    }
}

fn exceptional_name(l: &Lattice) -> String {
    (1..).map(|k| format!("E{k}")).find(|n| l.index(n).is_none()).expect("unbounded")
}

fn padded(v: &[i64], n: usize) -> Vec<i64> {
    let mut out = v.to_vec();
    out.resize(n, 0);
    out
}

/// Expected dimension of the `U(N)` moduli space.
pub fn moduli_dim(n: i64, k: i64, w_sq: i64, chi: i64, sigma: i64) -> Result<i64> {
    if (chi + sigma) % 2 != 0 {
        return Err(ManifoldError::InvalidParameter("chi + sigma is odd".into()));
    }
    Ok(4 * n * k - 2 * (n - 1) * w_sq - (n * n - 1) * (chi + sigma) / 2)
}

fn minus_e8() -> Vec<Vec<i64>> {
    // chain 0-1-2-3-4-5-6 with node 7 attached to node 4
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
    let mut m = vec![vec![0; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (a, b) in edges {
        m[a][b] = 1;
        m[b][a] = 1;
    }
    m
}

/// Lattice of `E(n)`: the nucleus `(f, sigma)`, `n` copies of `-E8` and
/// `2(n-1)` blocks `(g_i, tau_i)` with form `[[0,1],[1,-2]]`.
pub fn elliptic_lattice(n: u32) -> Result<Lattice> {
    if n == 0 {
        return Err(ManifoldError::InvalidParameter("E(n) needs n >= 1".into()));
    }
    let n_i = i64::from(n);
    let mut blocks = vec![(vec![vec![0, 1], vec![1, -n_i]], vec!["f".to_string(), "sigma".to_string()])];
    for b in 1..=n {
        blocks.push((minus_e8(), (1..=8).map(|i| format!("e8_{b}_{i}")).collect()));
    }
    for i in 1..=2 * (n - 1) {
        blocks.push((vec![vec![0, 1], vec![1, -2]], vec![format!("g_{i}"), format!("tau_{i}")]));
    }
    Lattice::block_sum(&blocks)
}

/// Glues a class `x` of `E(a)` and a class `y` of `E(b)` with equal
/// `sigma` coordinates into `E(a+b)`: the fibers add, the `-E8` blocks and
/// `(g, tau)` blocks of `y` are shifted past those of `x`.
pub fn glue_elliptic_classes(a: u32, b: u32, x: &[i64], y: &[i64]) -> Result<Vec<i64>> {
    let (la, lb, l) = (elliptic_lattice(a)?, elliptic_lattice(b)?, elliptic_lattice(a + b)?);
    let idx = |l: &Lattice, n: &str| l.index(n).ok_or_else(|| ManifoldError::UnknownClass(n.to_string()));
    if x.len() != la.rank() || y.len() != lb.rank() {
        return Err(ManifoldError::DimensionMismatch { expected: la.rank(), got: x.len().max(y.len()) });
    }
    let (sa, sb) = (x[idx(&la, "sigma")?], y[idx(&lb, "sigma")?]);
    if sa != sb {
        return Err(ManifoldError::InvalidParameter(format!("sigma coordinates differ: {sa} vs {sb}")));
    }
    let mut v = l.zero();
    v[idx(&l, "f")?] = x[idx(&la, "f")?] + y[idx(&lb, "f")?];
    v[idx(&l, "sigma")?] = sa;
    for (i, n) in la.names().iter().enumerate().skip(2) {
        v[idx(&l, n)?] = x[i];
    }
    for (i, n) in lb.names().iter().enumerate().skip(2) {
        let target = match n.strip_prefix("e8_").and_then(|r| r.split_once('_')) {
            Some((blk, k)) => format!("e8_{}_{k}", blk.parse::<u32>().expect("block index") + a),
            None => {
                let (kind, j) = n.split_once('_').expect("g_i or tau_i");
                format!("{kind}_{}", j.parse::<u32>().expect("index") + 2 * (a - 1))
            }
        };
        v[idx(&l, &target)?] = y[i];
    }
    Ok(v)
}

pub fn elliptic(n: u32) -> Result<ManifoldModel> {
    let lattice = elliptic_lattice(n)?;
    let n = i64::from(n);
    let label = if n == 2 { "K3".to_string() } else { format!("E({n})") };
    ManifoldModel::new(&label, lattice, 12 * n, -8 * n, 2 * n - 1, true)
}

pub fn k3() -> ManifoldModel {
    elliptic(2).expect("valid")
}

/// `E(n) # k CP2bar`.
pub fn blown_up_elliptic(n: u32, k: u32) -> Result<ManifoldModel> {
    let mut m = elliptic(n)?;
    for _ in 0..k {
        m = m.blow_up();
    }
    Ok(m)
}

/// Model presets by name: `K3`, `E(n)`, `E(n)#kCP2bar`.
pub fn preset_model(name: &str) -> Result<ManifoldModel> {
    let s: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    if s.eq_ignore_ascii_case("k3") {
        return Ok(k3());
    }
    let unknown = || ManifoldError::UnknownPreset(name.to_string());
    let (head, blowups) = match s.split_once('#') {
        Some((h, t)) => {
            let k = t.strip_suffix("CP2bar").or_else(|| t.strip_suffix("CPbar2")).ok_or_else(unknown)?;
            let k = if k.is_empty() { 1 } else { k.parse().map_err(|_| unknown())? };
            (h, k)
        }
        None => (s.as_str(), 0),
    };
    let n: u32 = if head.eq_ignore_ascii_case("k3") {
        2
    } else {
        head.strip_prefix("E(").and_then(|r| r.strip_suffix(')')).ok_or_else(unknown)?.parse().map_err(|_| unknown())?
    };
    blown_up_elliptic(n, blowups)
}

/// A permissible triple `(X, w, Σ)` together with its basic classes and the
/// `w`-independent pair coefficients `c_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct PermissibleTriple<R> {
    pub model: ManifoldModel,
    pub surface: Vec<i64>,
    pub genus: u32,
    pub w: Vec<i64>,
    pub classes: Vec<Vec<i64>>,
    pub pairs: Vec<(usize, usize, R)>,
}

pub type PairMap<R> = BTreeMap<(Vec<i64>, Vec<i64>), R>;

impl<R: Ring> PermissibleTriple<R> {
    pub fn from_pairs(model: ManifoldModel, surface: Vec<i64>, genus: u32, w: Vec<i64>, map: PairMap<R>) -> Result<Self> {
        let mut index: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for (a, b) in map.keys() {
            for k in [a, b] {
                let n = index.len();
                index.entry(k.clone()).or_insert(n);
            }
        }
        let mut classes = vec![Vec::new(); index.len()];
        for (k, i) in &index {
            classes[*i] = k.clone();
        }
        let pairs = map.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (index[&a], index[&b], c)).collect();
        let t = PermissibleTriple { model, surface, genus, w, classes, pairs };
        t.validate()?;
        Ok(t)
    }

    pub fn pair_map(&self) -> PairMap<R> {
        let mut m = PairMap::new();
        for (i, j, c) in &self.pairs {
            add_into(&mut m, (self.classes[*i].clone(), self.classes[*j].clone()), c.clone());
        }
        m
    }

    /// `w·Σ mod 3` in `{0, 1, 2}`.
    pub fn d(&self) -> u8 {
        let x = self.model.lattice.pair(&self.w, &self.surface).expect("validated");
        x.rem_euclid(3) as u8
    }

    pub fn surface_pairing(&self, i: usize) -> i64 {
        dot(&self.classes[i], &self.surface)
    }

    pub fn validate(&self) -> Result<()> {
        let l = &self.model.lattice;
        let n = l.rank();
        for v in [&self.surface, &self.w].into_iter().chain(&self.classes) {
            if v.len() != n {
                return Err(ManifoldError::DimensionMismatch { expected: n, got: v.len() });
            }
        }
        if l.q_form(&self.surface)? != 0 {
            return Err(ManifoldError::Inconsistent("surface has nonzero square".into()));
        }
        if self.genus == 0 {
            return Err(ManifoldError::InvalidParameter("genus must be at least 1".into()));
        }
        if self.d() == 0 {
            return Err(ManifoldError::InvalidParameter("w·Σ must be nonzero mod 3".into()));
        }
        let bound = 2 * i64::from(self.genus) - 2;
        for i in 0..self.classes.len() {
            if self.surface_pairing(i).abs() > bound {
                return Err(ManifoldError::Inconsistent(format!("basic class {i} violates |K·Σ| <= {bound}")));
            }
        }
        Ok(())
    }

    /// Replaces the pairs by all sums `(K_i + A, K_j + B)` over the generator
    /// pairs `(A, B, c)`, with multiplied coefficients.
    pub fn combine(&self, gens: &[(Vec<i64>, Vec<i64>, R)]) -> PairMap<R> {
        combine(&self.pair_map(), gens)
    }

    pub fn with_w(&self, w: Vec<i64>) -> Result<Self> {
        let t = PermissibleTriple { w, ..self.clone() };
        t.validate()?;
        Ok(t)
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> PermissibleTriple<S> {
        PermissibleTriple {
            model: self.model.clone(),
            surface: self.surface.clone(),
            genus: self.genus,
            w: self.w.clone(),
            classes: self.classes.clone(),
            pairs: self.pairs.iter().map(|(i, j, c)| (*i, *j, f(c))).collect(),
        }
    }

    pub fn to_json_with(&self, f: impl Fn(&R) -> Value) -> Value {
        let l = &self.model.lattice;
        json!({
            "model": self.model.label,
            "surface": l.format_class(&self.surface),
            "genus": self.genus,
            "w": l.format_class(&self.w),
            "d": self.d(),
            "basic_classes": self.classes,
            "pairs": self.pairs.iter().map(|(i, j, c)| json!([i, j, f(c)])).collect::<Vec<_>>(),
        })
    }
}

fn add_into<R: Ring>(m: &mut PairMap<R>, k: (Vec<i64>, Vec<i64>), c: R) {
    let e = m.entry(k).or_insert_with(R::zero);
    *e = e.add_ref(&c);
}

fn combine<R: Ring>(base: &PairMap<R>, gens: &[(Vec<i64>, Vec<i64>, R)]) -> PairMap<R> {
    let mut out = PairMap::new();
    for ((a, b), c) in base {
        for (x, y, g) in gens {
            let k1: Vec<i64> = a.iter().zip(x).map(|(p, q)| p + q).collect();
            let k2: Vec<i64> = b.iter().zip(y).map(|(p, q)| p + q).collect();
            add_into(&mut out, (k1, k2), c.mul_ref(g));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn negated(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

/// `(A, A, p), (-A, -A, p), (A, -A, q), (-A, A, q)`.
fn symmetric_generators<R: Ring>(a: &[i64], p: R, q: R) -> Vec<(Vec<i64>, Vec<i64>, R)> {
    let m = negated(a);
    vec![
        (a.to_vec(), a.to_vec(), p.clone()),
        (m.clone(), m.clone(), p),
        (a.to_vec(), m.clone(), q.clone()),
        (m, a.to_vec(), q),
    ]
}

impl<R: QAlgebra> PermissibleTriple<R> {
    /// Blow up at one point. Each pair `(K_i, K_j)` splits into
    /// `(K_i ± E, K_j ± E)` with factor `1/6` for equal signs and `1/3`
    /// otherwise.
    pub fn blow_up(&self) -> PermissibleTriple<R> {
        let model = self.model.blow_up();
        let n = model.lattice.rank();
        let mut e = vec![0; n];
        e[n - 1] = -1;
        let base: PairMap<R> =
            self.pair_map().into_iter().map(|((a, b), c)| ((padded(&a, n), padded(&b, n)), c)).collect();
        let gens = symmetric_generators(&e, R::from_rational(&rat(1, 6)), R::from_rational(&rat(1, 3)));
        let map = combine(&base, &gens);
        PermissibleTriple::from_pairs(model, padded(&self.surface, n), self.genus, padded(&self.w, n), map)
            .expect("blowup keeps the triple permissible")
    }
}

fn single<R: Ring>(rank: usize) -> PairMap<R> {
    let mut m = PairMap::new();
    m.insert((vec![0; rank], vec![0; rank]), R::one());
    m
}

/// `E(n)` with `Σ = f`, genus 1 and `w = sigma`. The pairs come from expanding
/// `G^{n-2}`: each factor contributes `(±f, ±f)` with `ħ₁/2` and `(±f, ∓f)`
/// with `-ħ₂`.
pub fn elliptic_triple<R: Coefficient>(n: u32, hbar: &HbarConfig) -> Result<PermissibleTriple<R>> {
    if n < 2 {
        return Err(ManifoldError::InvalidParameter("basic classes need b+ > 1, i.e. n >= 2".into()));
    }
    let model = elliptic(n)?;
    let l = &model.lattice;
    let f = l.class("f")?;
    let fc = l.covector(&f);
    let mut map = single::<R>(l.rank());
    if n > 2 {
        let h1: R = hbar.get(1)?;
        let h2: R = hbar.get(2)?;
        let gens = symmetric_generators(&fc, h1.scale_rational(&rat(1, 2)), h2.neg_ref());
        for _ in 2..n {
            map = combine(&map, &gens);
        }
    }
    let w = l.class("sigma")?;
    PermissibleTriple::from_pairs(model, f, 1, w, map)
}

pub fn k3_triple<R: Coefficient>() -> PermissibleTriple<R> {
    elliptic_triple(2, &HbarConfig::default()).expect("K3 needs no constants")
}

/// `E(2) # (2g-2) CP2bar` with `Σ = g f + sigma - E1 - ... - E_{2g-2}` of
/// genus `g` and `w = f`; the basic classes are `±E1 ± ... ± E_{2g-2}`.
pub fn blown_up_k3_triple<R: Coefficient>(g: u32) -> Result<PermissibleTriple<R>> {
    if g < 2 {
        return Err(ManifoldError::InvalidParameter("genus must be at least 2".into()));
    }
    let mut t = k3_triple::<R>();
    for _ in 0..2 * g - 2 {
        t = t.blow_up();
    }
    let l = &t.model.lattice;
    let mut surface = l.class("sigma")?;
    surface[l.index("f").expect("nucleus")] = i64::from(g);
    for k in 1..=2 * g - 2 {
        surface[l.index(&format!("E{k}")).expect("blown up")] = -1;
    }
    let w = l.class("f")?;
    let t = PermissibleTriple { surface, genus: g, w, ..t };
    t.validate()?;
    Ok(t)
}

/// `B(n)`: `E(n)` blown up `n` times, with `Σ = sigma + n f - E1 - ... - En`
/// of genus `n` and `w = f`.
pub fn bn_triple<R: Coefficient>(n: u32, hbar: &HbarConfig) -> Result<PermissibleTriple<R>> {
    if n < 2 {
        return Err(ManifoldError::InvalidParameter("B(n) needs n >= 2".into()));
    }
    let mut t = elliptic_triple::<R>(n, hbar)?;
    for _ in 0..n {
        t = t.blow_up();
    }
    let l = &t.model.lattice;
    let mut surface = l.class("sigma")?;
    surface[l.index("f").expect("nucleus")] = i64::from(n);
    for k in 1..=n {
        surface[l.index(&format!("E{k}")).expect("blown up")] = -1;
    }
    let w = l.class("f")?;
    let mut t = PermissibleTriple { surface, genus: n, w, ..t };
    t.model.label = format!("B({n})");
    t.validate()?;
    Ok(t)
}

/// `E(m)` with the genus `m-1` surface `2 sigma + m f` and `w = f`.
pub fn elliptic_multisection_triple<R: Coefficient>(m: u32, hbar: &HbarConfig) -> Result<PermissibleTriple<R>> {
    let t = elliptic_triple::<R>(m, hbar)?;
    let l = &t.model.lattice;
    let surface = l.parse_class(&format!("2sigma+{m}f"))?;
    let w = l.class("f")?;
    let t = PermissibleTriple { surface, genus: m - 1, w, ..t };
    t.validate()?;
    Ok(t)
}

/// `X(m,4)` as the fiber sum of two copies of `E(m)` along `2 sigma + m f`.
/// Classes live in the sum of the two `E(m)` lattices (prefixes `a.` and
/// `b.`) subject to `Γ_a·Σ = Γ_b·Σ`.
pub fn xm4_triple<R: Coefficient>(m: u32, hbar: &HbarConfig) -> Result<PermissibleTriple<R>> {
    if m < 3 {
        return Err(ManifoldError::InvalidParameter("X(m,4) needs m >= 3".into()));
    }
    let t = elliptic_multisection_triple::<R>(m, hbar)?;
    let mut x = crate::donaldson::fiber_sum(&t, &t, hbar).map_err(|e| ManifoldError::Inconsistent(e.to_string()))?;
    x.model.label = format!("X({m},4)");
    Ok(x)
}

/// Characteristic numbers of a fiber sum along a genus `g` surface.
pub fn fiber_sum_numbers(a: &ManifoldModel, b: &ManifoldModel, genus: u32) -> (i64, i64, i64) {
    let chi = a.chi + b.chi + 4 * i64::from(genus) - 4;
    let sigma = a.sigma + b.sigma;
    (chi, sigma, (chi + sigma - 2) / 2)
}

/// Triple presets: `K3`, `E(n)`, `E(n)#kCP2bar`, `example(g)`, `B(n)`, `X(m,4)`.
pub fn preset_triple<R: Coefficient>(name: &str, hbar: &HbarConfig) -> Result<PermissibleTriple<R>> {
    let s: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let unknown = || ManifoldError::UnknownPreset(name.to_string());
    let inner = |p: &str| s.strip_prefix(p).and_then(|r| r.strip_suffix(')'));
    if let Some(g) = inner("example(") {
        return blown_up_k3_triple(g.parse().map_err(|_| unknown())?);
    }
    if let Some(n) = inner("B(") {
        return bn_triple(n.parse().map_err(|_| unknown())?, hbar);
    }
    if let Some(r) = s.strip_prefix("X(").and_then(|r| r.strip_suffix(",4)")) {
        return xm4_triple(r.parse().map_err(|_| unknown())?, hbar);
    }
    let model = preset_model(&s)?;
    let blowups = model.lattice.names().iter().filter(|n| n.starts_with('E') && n[1..].parse::<u32>().is_ok()).count();
    let n = model.lattice.names().iter().filter(|n| n.starts_with("e8_") && n.ends_with("_1")).count() as u32;
    let mut t = elliptic_triple::<R>(n, hbar)?;
    for _ in 0..blowups {
        t = t.blow_up();
    }
    Ok(t)
}
