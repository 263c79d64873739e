//! `Omega(U a, U b) = Omega(a, b)` on the basis times `z^a`, `a in [-3, 3]`.

use std::collections::{BTreeMap, BTreeSet};

use cy_state::{pair_key, solve_pairing_constants, CySector, PairingEquation, PairingTable};
use exact_kernel::{BigComplex, Rational};
use lg_state::{FjrwLabel, GroupElement};

use crate::ublock::UMap;
use crate::CorrespondenceError;

pub const Z_WINDOW: i64 = 3;

#[derive(Clone, Debug)]
pub struct SymplecticReport {
    pub table: PairingTable,
    pub numeric_kappa: BTreeMap<GroupElement, BigComplex>,
    pub max_error_log10: f64,
    pub pairs_checked: usize,
    pub equations: usize,
}

/// `<(U a)(-z), (U b)(z)>` with `kappa` left symbolic: `z power -> pair key -> coefficient`.
fn pairing_poly(u: &UMap, a: &FjrwLabel, b: &FjrwLabel) -> BTreeMap<i64, BTreeMap<GroupElement, BigComplex>> {
    let mut out: BTreeMap<i64, BTreeMap<GroupElement, BigComplex>> = BTreeMap::new();
    for ea in &u.columns[a] {
        for eb in &u.columns[b] {
            let (sa, sb) = (ea.target.sector, eb.target.sector);
            if sa.inverse() != sb || ea.target.h_power + eb.target.h_power != sa.dimension() {
                continue;
            }
            let mut v = &ea.value * &eb.value;
            if ea.z_exp.rem_euclid(2) == 1 {
                v = v.neg();
            }
            let slot = out
                .entry(ea.z_exp + eb.z_exp)
                .or_default()
                .entry(pair_key(&sa.element()))
                .or_insert_with(|| BigComplex::zero(u.digits));
            *slot = &*slot + &v;
        }
    }
    out
}

/// Candidate partners of `a`: labels whose image meets the inverse sectors, plus `a^{-1}`.
fn partners(u: &UMap) -> BTreeMap<FjrwLabel, BTreeSet<FjrwLabel>> {
    let mut by_sector: BTreeMap<CySector, BTreeSet<FjrwLabel>> = BTreeMap::new();
    for (h, es) in &u.columns {
        for e in es {
            by_sector.entry(e.target.sector).or_default().insert(*h);
        }
    }
    u.columns
        .iter()
        .map(|(h, es)| {
            let mut set: BTreeSet<FjrwLabel> = es
                .iter()
                .flat_map(|e| by_sector.get(&e.target.sector.inverse()).into_iter().flatten().copied())
                .collect();
            set.insert(h.inverse());
            (*h, set)
        })
        .collect()
}

/// Powers `n = -1 - a - b` reachable from the window.
fn window() -> std::ops::RangeInclusive<i64> {
    (-1 - 2 * Z_WINDOW)..=(2 * Z_WINDOW - 1)
}

fn lg_value(a: &FjrwLabel, b: &FjrwLabel, n: i64) -> i64 {
    i64::from(n == 0 && a.inverse() == *b)
}

/// Solves the pairing constants from the symplectic condition, then reports the worst
/// discrepancy with those constants.
pub fn check_symplectic(u: &UMap, tol_log10: f64) -> Result<SymplecticReport, CorrespondenceError> {
    let d = u.digits;
    let partner = partners(u);
    let mut polys = Vec::new();
    for (a, bs) in &partner {
        for b in bs {
            polys.push((*a, *b, pairing_poly(u, a, b)));
        }
    }
    let mut equations = Vec::new();
    for (a, b, p) in &polys {
        for n in window() {
            let terms: Vec<(GroupElement, BigComplex)> =
                p.get(&n).map(|m| m.iter().map(|(g, v)| (*g, v.clone())).collect()).unwrap_or_default();
            let rhs = lg_value(a, b, n);
            if terms.is_empty() {
                continue;
            }
            equations.push(PairingEquation { terms, rhs: BigComplex::from_rational(&Rational::from(rhs), d) });
        }
    }
    let (table, numeric) = solve_pairing_constants(&equations, tol_log10)?;
    let mut worst = f64::NEG_INFINITY;
    for (a, b, p) in &polys {
        for n in window() {
            let mut v = BigComplex::zero(d);
            if let Some(m) = p.get(&n) {
                for (g, c) in m {
                    let s = CySector::new(*g).expect("sector key");
                    let k = table.kappa(&s).cloned().unwrap_or_default();
                    v = &v + &c.scale(&k);
                }
            }
            let want = BigComplex::from_rational(&Rational::from(lg_value(a, b, n)), d);
            worst = worst.max((&v - &want).log10_abs());
        }
    }
    Ok(SymplecticReport { table, numeric_kappa: numeric, max_error_log10: worst, pairs_checked: polys.len(), equations: equations.len() })
}
