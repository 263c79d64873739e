//! `U(c_h I_h) = I'_{mu^{-1}(h)}`, compared coefficient by coefficient.

use std::collections::{BTreeMap, BTreeSet};

use continuation::{continued_series, present_classes, FlatKey};
use cy_state::{mu_inverse, CySector};
use exact_kernel::rational::rat;
use exact_kernel::{BigComplex, Rational};
use fjrw_series::{i_h_series, FjrwIFunction};
use lg_state::FjrwLabel;

use crate::ublock::UMap;
use crate::CorrespondenceError;

/// Exponent `j` with `c_h = (t/5)^j`: the lowest residue class surviving in the
/// continued series, since `I_h` starts at `t^0`.
pub fn c_h_power(h: &FjrwLabel) -> Result<u32, CorrespondenceError> {
    let g = target_sector(h)?;
    present_classes(&g).first().map(|&k| u32::from(k)).ok_or_else(|| CorrespondenceError::Label(h.to_string()))
}

fn target_sector(h: &FjrwLabel) -> Result<CySector, CorrespondenceError> {
    mu_inverse(h).map(|l| l.sector).ok_or_else(|| CorrespondenceError::Label(h.to_string()))
}

/// `h -> (sector, j)` for every label the identity covers.
pub fn c_h_table() -> Result<Vec<(FjrwLabel, CySector, u32)>, CorrespondenceError> {
    lg_state::low_degree_labels()
        .into_iter()
        .filter(|h| *h != FjrwLabel::j_pow(2) && !h.is_broad())
        .map(|h| Ok((h, target_sector(&h)?, c_h_power(&h)?)))
        .collect()
}

/// `(t/5)^j I_h` as `(t exponent, label, z exponent) -> coefficient`, through `order`.
pub fn flatten_fjrw(i: &FjrwIFunction, h: &FjrwLabel, j: u32, order: usize) -> Result<BTreeMap<(usize, FjrwLabel, i64), Rational>, CorrespondenceError> {
    let s = i_h_series(i, h)?;
    let scale = rat(1, 5i64.pow(j));
    let mut out = BTreeMap::new();
    for (n, lz) in s.coeffs().iter().enumerate() {
        let t = n + j as usize;
        if t > order {
            break;
        }
        for (z, v) in lz.iter() {
            for (lab, c) in v.iter() {
                if *c != 0 {
                    out.insert((t, *lab, z), c.clone() * &scale);
                }
            }
        }
    }
    Ok(out)
}

pub fn apply_u(u: &UMap, terms: &BTreeMap<(usize, FjrwLabel, i64), Rational>) -> Result<BTreeMap<FlatKey, BigComplex>, CorrespondenceError> {
    let mut out: BTreeMap<FlatKey, BigComplex> = BTreeMap::new();
    for ((n, lab, z), c) in terms {
        for e in u.column(lab)? {
            let v = e.value.scale(c);
            let slot = out.entry((*n, e.target, z + e.z_exp)).or_insert_with(|| BigComplex::zero(u.digits));
            *slot = &*slot + &v;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct MainIdentityReport {
    pub h: FjrwLabel,
    pub sector: CySector,
    pub c_h_power: u32,
    pub compared: usize,
    /// Keys nonzero on exactly one side.
    pub unmatched: usize,
    pub max_rel_error_log10: f64,
}

/// Largest relative discrepancy between two flattened series; a key that is nonzero
/// on one side only counts as relative error 1.
pub fn compare(a: &BTreeMap<FlatKey, BigComplex>, b: &BTreeMap<FlatKey, BigComplex>, digits: u32) -> (usize, usize, f64) {
    let keys: BTreeSet<&FlatKey> = a.keys().chain(b.keys()).collect();
    let floor = -(f64::from(digits) - 15.0);
    let mut worst = f64::NEG_INFINITY;
    let mut unmatched = 0;
    let mut compared = 0;
    for k in keys {
        let za = BigComplex::zero(digits);
        let x = a.get(k).unwrap_or(&za);
        let y = b.get(k).unwrap_or(&za);
        let scale = x.log10_abs().max(y.log10_abs());
        if scale < floor {
            continue;
        }
        compared += 1;
        let err = (x - y).log10_abs() - scale;
        if x.log10_abs() < floor || y.log10_abs() < floor {
            unmatched += 1;
        }
        worst = worst.max(err);
    }
    (compared, unmatched, worst)
}

pub fn check_main_identity(i: &FjrwIFunction, u: &UMap, h: &FjrwLabel, order: usize) -> Result<MainIdentityReport, CorrespondenceError> {
    let sector = target_sector(h)?;
    let j = c_h_power(h)?;
    let lhs = apply_u(u, &flatten_fjrw(i, h, j, order)?)?;
    let rhs = continued_series(&sector, order, u.digits)?.flatten();
    let (compared, unmatched, worst) = compare(&lhs, &rhs, u.digits);
    Ok(MainIdentityReport { h: *h, sector, c_h_power: j, compared, unmatched, max_rel_error_log10: worst })
}
