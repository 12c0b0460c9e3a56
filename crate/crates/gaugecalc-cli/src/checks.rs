//! The relation suite behind `gaugecalc check`, one entry per criterion.

use std::collections::BTreeMap;

use gaugecalc::blowup::{closed_b, closed_s, pde_residuals, seeds, solve_bs, Which};
use gaugecalc::brieskorn::{census, degree_value, enumerate_flat, seifert_invariants, su2_in_su3, FlatConnection, Group};
use gaugecalc::donaldson::*;
use gaugecalc::eigencat::{check_bound, delta_check, genus_one_aleph2};
use gaugecalc::exactnum::{factorial, int, rat, CycloNum, Rational};
use gaugecalc::formal::{TruncatedSeries, VariableSet};
use gaugecalc::manifolds::*;
use gaugecalc::{ExactSeries, FormalSeries, RationalPoly};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::reference as refdata;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    /// Set when the check could not run to completion.
    pub internal: bool,
    pub detail: String,
}

type Outcome = Result<(bool, String), String>;

pub const NAMES: [&str; 10] = [
    "brieskorn-tables",
    "degree-census",
    "degree-integrality",
    "blowup-pdes",
    "k3-series",
    "fiber-sums",
    "minus-three-sphere",
    "cycle-relations",
    "eigen-catalog",
    "determinism",
];

pub fn criterion(id: u8) -> CheckResult {
    let out = match id {
        1 => brieskorn_tables(),
        2 => degree_census(),
        3 => degree_integrality(),
        4 => blowup_pdes(),
        5 => k3_series(),
        6 => fiber_sums(),
        7 => minus_three_sphere(),
        8 => cycle_relations(),
        9 => eigen_catalog(),
        10 => determinism(),
        _ => Err(format!("no criterion {id}")),
    };
    let name = NAMES.get(usize::from(id).wrapping_sub(1)).copied().unwrap_or("unknown");
    match out {
        Ok((pass, detail)) => CheckResult { id, name, pass, internal: false, detail },
        Err(e) => CheckResult { id, name, pass: false, internal: true, detail: format!("error: {e}") },
    }
}

pub fn all() -> Vec<CheckResult> {
    (1..=10).map(criterion).collect()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn sigma_2_3_23() -> Result<gaugecalc::brieskorn::SeifertData, String> {
    seifert_invariants(2, 3, 23).map_err(err)
}

fn brieskorn_tables() -> Outcome {
    let d = sigma_2_3_23()?;
    let su3 = enumerate_flat(&d, Group::Su3).map_err(err)?;
    let mut bad = Vec::new();
    if su3.len() != refdata::SU3_X3.len() {
        bad.push(format!("{} SU(3) rows", su3.len()));
    }
    for (row, (c, x3)) in su3.iter().zip(refdata::SU3_X3).enumerate() {
        let l = refdata::su3_label_index(row);
        let ok = (c.exponents[2][0], c.exponents[2][1], c.exponents[2][2]) == x3
            && !c.flagged
            && c.cs == rat(refdata::SU3_CS_138[l], 138)
            && c.rho == rat(refdata::SU3_RHO_23[l], 23)
            && c.degree == refdata::SU3_DEG[l];
        if !ok {
            bad.push(c.label.clone());
        }
    }
    let su2 = enumerate_flat(&d, Group::Su2).map_err(err)?;
    let induced = su2_in_su3(&d).map_err(err)?;
    if su2.len() != 8 || induced.len() != 8 {
        bad.push(format!("{} SU(2) rows", su2.len()));
    }
    for (i, (c, c3)) in su2.iter().zip(&induced).enumerate() {
        let ok = c.cs == rat(refdata::SU2_CS_552[i], 552)
            && c.rho == rat(refdata::SU2_RHO_69[i], 69)
            && c.degree == refdata::SU2_DEG[i]
            && c3.cs == c.cs
            && c3.rho == rat(refdata::INDUCED_RHO_23[i], 23)
            && c3.degree == refdata::INDUCED_DEG[i];
        if !ok {
            bad.push(c.label.clone());
        }
    }
    let a1 = su3.first().map(|c| format!("{}: cs {} rho {} deg {}", c.label, c.cs, c.rho, c.degree)).unwrap_or_default();
    if bad.is_empty() {
        Ok((true, format!("{} SU(3) and {} SU(2) rows match ({a1})", su3.len(), su2.len())))
    } else {
        Ok((false, format!("mismatched rows: {}", bad.join(", "))))
    }
}

fn census_string(m: &BTreeMap<i64, usize>) -> String {
    let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn degree_census() -> Outcome {
    let d = sigma_2_3_23()?;
    let su3 = census(&enumerate_flat(&d, Group::Su3).map_err(err)?);
    let induced = census(&su2_in_su3(&d).map_err(err)?);
    let expect3: BTreeMap<i64, usize> = refdata::SU3_CENSUS.into_iter().collect();
    let expect_i: BTreeMap<i64, usize> = refdata::INDUCED_CENSUS.into_iter().collect();
    let pass = su3 == expect3 && induced == expect_i;
    Ok((pass, format!("irreducible {}, induced {}", census_string(&su3), census_string(&induced))))
}

fn degree_integrality() -> Outcome {
    let d = sigma_2_3_23()?;
    let mut conns: Vec<FlatConnection> = enumerate_flat(&d, Group::Su3).map_err(err)?;
    conns.extend(su2_in_su3(&d).map_err(err)?);
    let n = conns.len();
    let su2 = enumerate_flat(&d, Group::Su2).map_err(err)?;
    let bad: Vec<String> = conns.iter().chain(&su2).filter(|c| !degree_value(c).is_integer()).map(|c| c.label.clone()).collect();
    if bad.is_empty() {
        Ok((n == 52, format!("{n} SU(3) and {} SU(2) degree values are integers", su2.len())))
    } else {
        Ok((false, format!("non-integer degree: {}", bad.join(", "))))
    }
}

fn blowup_pdes() -> Outcome {
    let (a2, a3) = (CycloNum::rational(int(3)), CycloNum::rational(int(0)));
    // residuals are exact through total order 12 when the inputs carry 16
    let res = pde_residuals(&closed_b::<CycloNum>(16), &closed_s::<CycloNum>(16), &a2, &a3);
    let counts: Vec<usize> = res.iter().map(|r| r.len()).collect();
    let verify = counts.iter().all(|c| *c == 0);
    let mut detail = format!("closed-form residuals to order 12: {counts:?}");
    let solve_ok = match solve_bs(6) {
        Ok(pair) => {
            let (b, s) = pair.specialize(&a2, &a3);
            let spec = b == closed_b::<CycloNum>(6) && s == closed_s::<CycloNum>(6);
            let seeded = seeds().iter().all(|((which, i, j), v)| {
                let series = match which {
                    Which::B => &pair.b,
                    Which::S => &pair.s,
                };
                series.coefficient(&[*i, *j]) == *v
            });
            let general = pair.residuals().iter().all(|r| r.is_zero());
            detail.push_str(&format!(
                "; solve to order 6: specialization {}, seeds {}, general residuals {}",
                if spec { "matches" } else { "differs" },
                if seeded { "match" } else { "differ" },
                if general { "zero" } else { "nonzero" }
            ));
            spec && seeded && general
        }
        Err(e) => {
            // a stall leaves verification mode as the criterion
            detail.push_str(&format!("; solver stalled ({e}), verification only"));
            true
        }
    };
    Ok((verify && solve_ok, detail))
}

/// `exp(x t2² + y t3²)` from its coefficient formula.
pub fn gauss_oracle(x: i64, y: i64, order: u32) -> ExactSeries {
    let v = VariableSet::t2t3();
    let mut terms = Vec::new();
    for a in 0..=order / 2 {
        for b in 0..=(order / 2 - a) {
            let q = Rational::new(BigInt::from(x).pow(a) * BigInt::from(y).pow(b), factorial(a) * factorial(b));
            terms.push((vec![2 * a, 2 * b], CycloNum::rational(q)));
        }
    }
    TruncatedSeries::from_terms(&v, order, terms).expect("two variables")
}

fn random_class(rng: &mut StdRng, l: &Lattice, names: &[&str]) -> Result<Vec<i64>, String> {
    let mut v = l.zero();
    for n in names {
        v[l.index(n).ok_or_else(|| format!("no class {n}"))?] = rng.gen_range(-2..=2);
    }
    Ok(v)
}

fn k3_series() -> Outcome {
    let t = k3_triple::<CycloNum>();
    let l = t.model.lattice.clone();
    let mut rng = StdRng::seed_from_u64(2024);
    let names = ["f", "sigma", "e8_1_1", "e8_1_5", "e8_2_8", "g_1", "tau_1", "tau_2"];
    let ws: Vec<Vec<i64>> = ["0", "sigma", "2sigma+e8_1_1"].iter().map(|w| l.parse_class(w)).collect::<Result<_, _>>().map_err(err)?;
    let mut residues: Vec<i64> = ws.iter().map(|w| d_w(&t.model, w)).collect::<Result<_, _>>().map_err(err)?;
    residues.sort();
    let mut failures = 0;
    let mut cases = 0;
    for _ in 0..5 {
        let (g, lam) = (random_class(&mut rng, &l, &names)?, random_class(&mut rng, &l, &names)?);
        let (qg, ql) = (l.q_form(&g).map_err(err)?, l.q_form(&lam).map_err(err)?);
        let expect = gauss_oracle(qg / 2, -ql, 10);
        for w in &ws {
            cases += 1;
            let req = SeriesRequest::new(w.clone(), g.clone(), lam.clone(), 10);
            let dhat = dhat_series(&t, &req).map_err(err)?;
            let d0 = d_series(&t, &req).map_err(err)?;
            let d3 = d_series(&t, &req.clone().a2(3)).map_err(err)?;
            let a3 = d_series(&t, &req.clone().a3(1)).map_err(err)?;
            if dhat != expect || d3 != d0.scale_rational(&int(27)) || !a3.is_zero() {
                failures += 1;
            }
        }
    }
    let pass = failures == 0 && residues == vec![0, 1, 2];
    Ok((pass, format!("{cases} cases (5 classes x w-residues {residues:?}) to order 10, {failures} failures; simple type checked")))
}

fn fiber_sums() -> Outcome {
    let order = 8;
    let hf = HbarConfig::all_formal();
    let l2 = elliptic_lattice(2).map_err(err)?;
    let mut rng = StdRng::seed_from_u64(11);
    let pick = |rng: &mut StdRng, names: &[&str]| -> Result<Vec<i64>, String> {
        let mut v = random_class(rng, &l2, names)?;
        // meet the fiber once
        v[1] = 1;
        Ok(v)
    };
    let w2 = l2.class("sigma").map_err(err)?;
    let w4 = glue_elliptic_classes(2, 2, &w2, &w2).map_err(err)?;
    let e4 = elliptic_triple::<RationalPoly>(4, &hf).map_err(err)?;
    let mut torus_ok = true;
    for _ in 0..3 {
        let (ga, la) = (pick(&mut rng, &["f", "e8_1_3", "g_1", "tau_2"])?, pick(&mut rng, &["f", "e8_2_5", "tau_1"])?);
        let (gb, lb) = (pick(&mut rng, &["f", "e8_2_2", "g_2"])?, pick(&mut rng, &["f", "e8_1_8", "tau_2"])?);
        let da: FormalSeries = elliptic_direct(2, &w2, &ga, &la, order, &hf).map_err(err)?;
        let db: FormalSeries = elliptic_direct(2, &w2, &gb, &lb, order, &hf).map_err(err)?;
        let sum = torus_fiber_sum(&da, &db, 1, &hf).map_err(err)?;
        let g = glue_elliptic_classes(2, 2, &ga, &gb).map_err(err)?;
        let lam = glue_elliptic_classes(2, 2, &la, &lb).map_err(err)?;
        let preset = dhat_series(&e4, &SeriesRequest::new(w4.clone(), g, lam, order)).map_err(err)?;
        torus_ok &= sum == preset;
    }

    let h = HbarConfig::default();
    let inputs: Vec<(Vec<i64>, Vec<i64>)> = (0..4)
        .map(|_| Ok((pick(&mut rng, &["f", "e8_2_1", "g_2", "tau_1"])?, pick(&mut rng, &["f", "e8_1_7", "tau_2"])?)))
        .collect::<Result<_, String>>()?;
    let t = elliptic_triple::<CycloNum>(4, &h).map_err(err)?;
    let f4 = t.model.lattice.class("f").map_err(err)?;
    let d = |i: usize, k: usize| -> Result<ExactSeries, String> {
        let g = glue_elliptic_classes(2, 2, &inputs[i].0, &inputs[k].0).map_err(err)?;
        let lam = glue_elliptic_classes(2, 2, &inputs[i].1, &inputs[k].1).map_err(err)?;
        let mut acc = ExactSeries::zero(&VariableSet::t2t3(), order);
        // sum over w + jf, j = 0, 1, 2
        for j in 0..3 {
            let wj: Vec<i64> = w4.iter().zip(&f4).map(|(a, b)| a + j * b).collect();
            acc = &acc + &d_series(&t, &SeriesRequest::new(wj, g.clone(), lam.clone(), order)).map_err(err)?;
        }
        Ok(acc)
    };
    let lhs = &d(0, 1)? * &d(2, 3)?;
    let rhs = &d(0, 3)? * &d(2, 1)?;
    let universal = lhs == rhs && !lhs.is_zero();
    Ok((
        torus_ok && universal,
        format!(
            "E(2)+E(2) torus sum {} E(4) with formal hbar (3 class pairs, order 8); D12*D34 {} D14*D32",
            if torus_ok { "equals" } else { "differs from" },
            if universal { "=" } else { "!=" }
        ),
    ))
}

fn minus_three_sphere() -> Outcome {
    let r = check_negative_sphere(10).map_err(err)?;
    let pass = r.all_hold() && r.constant == CycloNum::rational(int(-3));
    Ok((
        pass,
        format!(
            "c = {}, (i) {}, (ii) {}, (iii) vanishing {:?}, {} samples to order 10",
            r.constant, r.first, r.second, r.vanishing, r.samples
        ),
    ))
}

fn cycle_relations() -> Outcome {
    let h = HbarConfig::default();
    let cases: Vec<(PermissibleTriple<CycloNum>, &str, &str, &str)> = vec![
        (elliptic_triple(3, &h).map_err(err)?, "sigma", "f+sigma-g_1", "2sigma+tau_1"),
        (elliptic_triple(4, &h).map_err(err)?, "sigma", "f+sigma+e8_3_2", "sigma-f"),
        (k3_triple::<CycloNum>().blow_up(), "sigma+E1", "f+E1", "sigma-2E1"),
    ];
    let mut parts = Vec::new();
    let mut pass = true;
    for (t, shift, g, lam) in &cases {
        let l = &t.model.lattice;
        let p = |s: &str| l.parse_class(s).map_err(err);
        let r = check_tau_and_cycle_relations(t, &p(shift)?, &p(g)?, &p(lam)?, 8).map_err(err)?;
        pass &= r.shift_invariant && r.flip_matches;
        parts.push(format!("{}: shift {} flip {}", t.model.label, r.shift_invariant, r.flip_matches));
    }
    Ok((pass, format!("{} (order 8)", parts.join("; "))))
}

fn eigen_catalog() -> Outcome {
    let mut pass = true;
    let mut sizes = Vec::new();
    for g in 1..=4u32 {
        for d in [1, 2] {
            let rep = delta_check(g, d).map_err(err)?;
            pass &= rep.holds();
            if d == 1 {
                sizes.push(rep.size.to_string());
            }
            pass &= check_bound(g, d).map_err(err)?.holds;
        }
    }
    let aleph: Vec<CycloNum> = [1, 2].iter().map(|d| genus_one_aleph2(*d)).collect::<Result<_, _>>().map_err(err)?;
    let three = CycloNum::rational(int(3));
    pass &= aleph.iter().all(|a| *a == three);
    Ok((
        pass,
        format!(
            "delta property for g<=4, d in {{1,2}} ({} points); bound holds; genus-1 aleph2 = {}",
            sizes.join("/"),
            aleph.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
        ),
    ))
}

/// Re-evaluates representative outputs in-process and compares their
/// serializations. Two full runs of `check` are compared by the acceptance
/// harness.
fn determinism() -> Outcome {
    let render = || -> Result<String, String> {
        let d = sigma_2_3_23()?;
        let rows: Vec<String> = enumerate_flat(&d, Group::Su3)
            .map_err(err)?
            .iter()
            .map(|c| format!("{} {} {} {}", c.label, c.cs, c.rho, c.degree))
            .collect();
        let t = elliptic_triple::<CycloNum>(3, &HbarConfig::default()).map_err(err)?;
        let l = &t.model.lattice;
        let req = SeriesRequest::new(t.w.clone(), l.parse_class("f+sigma").map_err(err)?, l.parse_class("sigma-g_1").map_err(err)?, 6);
        let s = dhat_series(&t, &req).map_err(err)?;
        Ok(format!("{}\n{}", rows.join("\n"), s.to_json()))
    };
    let (a, b) = (render()?, render()?);
    Ok((a == b, format!("two in-process renderings of {} bytes {}", a.len(), if a == b { "agree" } else { "differ" })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_is_a_gaussian() {
        let g = gauss_oracle(1, -1, 4);
        assert_eq!(g.coefficient(&[2, 2]), CycloNum::rational(int(-1)));
        assert_eq!(g.coefficient(&[4, 0]), CycloNum::rational(rat(1, 2)));
    }

    #[test]
    fn unknown_criterion_is_internal() {
        let r = criterion(11);
        assert!(r.internal && !r.pass);
    }
}
