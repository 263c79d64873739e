//! Mellin-Barnes continuation of `I_g(q, z)` from `q = 0` to `t = q^{-1/5} = 0`.
//!
//! Writing the sum over `d` as a contour integral of
//! `q^{x+s} Gamma(1+5x+5s) / prod_j Gamma(a_j+x+s)` against `1/(e^{2 pi i (s - rho)} - 1)`
//! and closing to the left picks up the poles `s = -x - m/5`. The residue at `m = k + 5l`
//! contributes `t^m` times a class constant depending only on `k = m mod 5`.

pub mod quadrature;

use std::collections::BTreeMap;

use cy_state::{CyBasisLabel, CySector};
use exact_kernel::bigcomplex::{recip_gamma_rational, BigComplex};
use exact_kernel::rational::{int, rat, rising_factorial};
use exact_kernel::linalg::rank_rational;
use exact_kernel::{exp_nilpotent, gamma_nilpotent, NilpotentPoly, Rational, TSeries};
use gw_series::{a_params, components_of, derive_recurrence, i_gw, shifted_sector, transport_operator};
use thiserror::Error;

pub use quadrature::{verify_residue_numeric, ResidueCheck, ResidueKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ContinuationError {
    #[error("sector {0} has age above one")]
    UnsupportedSector(String),
    #[error("sector {0} violates r_1 + r_2 = 1")]
    SectorAssumption(String),
    #[error("quadrature did not converge at m = {m}: node doubling moved the result by 1e{delta:.1}")]
    Quadrature { m: u32, delta: f64 },
    #[error(transparent)]
    Kernel(#[from] exact_kernel::KernelError),
    #[error(transparent)]
    Gw(#[from] gw_series::GwError),
}

/// Branch and contour conventions, reported with every continued series.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchInfo {
    pub xi: &'static str,
    pub t: &'static str,
    pub contour: &'static str,
    pub fractional_powers: &'static str,
}

pub const BRANCH: BranchInfo = BranchInfo {
    xi: "xi = exp(2 pi i / 5)",
    t: "t = q^(-1/5), real positive for q > 0",
    contour: "from +i inf to -i inf, closed to the left",
    fractional_powers: "q^(1/5) = t^(-1) on the principal branch",
};

#[derive(Clone, Debug)]
pub struct ContinuedClass {
    pub k: u8,
    /// `(1/5) C_k(x) / Gamma(k)` as a nilpotent polynomial in `x = H/z`.
    pub constant: NilpotentPoly<BigComplex>,
    /// Rational series supported on `t^{k+5l}`, leading coefficient 1.
    pub series: TSeries<Rational>,
}

#[derive(Clone, Debug)]
pub struct ContinuedComponent {
    pub target: CySector,
    pub rho5: u8,
    pub z_shift: i64,
    /// `prod_j Gamma(a'_j + x) / Gamma(1 + 5x)`.
    pub prefactor: NilpotentPoly<BigComplex>,
    pub classes: Vec<ContinuedClass>,
}

#[derive(Clone, Debug)]
pub struct ContinuedSeries {
    pub sector: CySector,
    pub order: usize,
    pub digits: u32,
    pub components: Vec<ContinuedComponent>,
    pub branch: BranchInfo,
}

/// Flattened key: (t exponent, basis label, z exponent).
pub type FlatKey = (usize, CyBasisLabel, i64);

impl ContinuedSeries {
    /// Every coefficient of `t^n H^p z^e 1_{target}` that the series produces.
    pub fn flatten(&self) -> BTreeMap<FlatKey, BigComplex> {
        let mut out: BTreeMap<FlatKey, BigComplex> = BTreeMap::new();
        for comp in &self.components {
            for class in &comp.classes {
                let p = comp.prefactor.mul(&class.constant);
                for (n, s) in class.series.coeffs().iter().enumerate() {
                    if *s == 0 {
                        continue;
                    }
                    for (h, c) in p.coeffs().iter().enumerate() {
                        let label = CyBasisLabel::new(comp.target, h).expect("power within dimension");
                        let v = c.scale(s);
                        let key = (n, label, comp.z_shift - h as i64);
                        let e = out.entry(key).or_insert_with(|| BigComplex::zero(self.digits));
                        *e = &*e + &v;
                    }
                }
            }
        }
        out
    }
}

/// A class `k` survives unless some `a_j - k/5` is a pole of Gamma, which kills
/// `1/Gamma(a_j - k/5 - l)` for every `l`. Class 0 always dies here since some `a_j = 1`.
pub fn class_present(g: &CySector, k: u8) -> bool {
    let kk = rat(i64::from(k), 5);
    k % 5 != 0 && a_params(&g.element()).iter().all(|a| a.clone() != kk)
}

pub fn present_classes(g: &CySector) -> Vec<u8> {
    (1..5).filter(|&k| class_present(g, k)).collect()
}

/// `sum_l t^{k+5l} Gamma(k) prod_j (1 - a_j + k/5)_l / Gamma(k+5l)`.
pub fn class_series(g: &CySector, k: u8, order: usize) -> TSeries<Rational> {
    let a = a_params(&g.element());
    let kk = rat(i64::from(k), 5);
    let mut s = TSeries::zero('t', order);
    let mut l = 0u32;
    loop {
        let n = usize::from(k) + 5 * l as usize;
        if n > order {
            break;
        }
        let mut c = int(1);
        for aj in &a {
            c *= rising_factorial(&(int(1) - aj + &kk), l);
        }
        c /= rising_factorial(&Rational::from(k), 5 * l);
        s.set(n, c);
        l += 1;
    }
    s
}

/// `1 / prod_j Gamma(a_j - k/5)`.
pub fn class_gamma_direct(g: &CySector, k: u8, digits: u32) -> BigComplex {
    let kk = rat(i64::from(k), 5);
    a_params(&g.element()).iter().fold(BigComplex::one(digits), |acc, a| {
        &acc * &BigComplex::from_float(&recip_gamma_rational(&(a.clone() - &kk), digits), digits)
    })
}

/// The same constant after `Gamma(y) Gamma(1-y) = pi / sin(pi y)`:
/// `prod_j Gamma(1 - a_j + k/5) sin(pi (a_j - k/5)) / pi`.
pub fn class_gamma_reflected(g: &CySector, k: u8, digits: u32) -> Result<BigComplex, ContinuationError> {
    let kk = rat(i64::from(k), 5);
    let pi = BigComplex::pi(digits);
    let mut acc = BigComplex::one(digits);
    for a in a_params(&g.element()) {
        let y = a - &kk;
        let s = (&pi * &BigComplex::from_rational(&y, digits)).sin();
        if s.log10_abs() < -(f64::from(digits) - 5.0) {
            return Ok(BigComplex::zero(digits));
        }
        let w = int(1) - y;
        let gw = BigComplex::from_float(&exact_kernel::bigcomplex::gamma_rational(&w, digits)?, digits);
        acc = (&acc * &(&gw * &s)).try_div(&pi)?;
    }
    Ok(acc)
}

pub fn verify_reflection_simplification(g: &CySector, k: u8, digits: u32) -> bool {
    match class_gamma_reflected(g, k, digits) {
        Ok(r) => {
            let d = class_gamma_direct(g, k, digits);
            let diff = (&d - &r).log10_abs();
            diff < -(f64::from(digits) - 10.0) + d.log10_abs().max(0.0)
        }
        Err(_) => false,
    }
}

fn nil_x(order: usize, digits: u32) -> NilpotentPoly<BigComplex> {
    NilpotentPoly::<Rational>::variable(order).to_complex(digits)
}

pub fn component_prefactor(g: &CySector, rho5: u8, order: usize, digits: u32) -> Result<NilpotentPoly<BigComplex>, ContinuationError> {
    let x = nil_x(order, digits);
    let ap = a_params(&shifted_sector(&g.element(), rho5));
    let mut p = NilpotentPoly::constant(BigComplex::one(digits), order);
    for a in &ap {
        p = p.mul(&gamma_nilpotent(&x, a)?);
    }
    let den = gamma_nilpotent(&x.scale(&BigComplex::from_rational(&int(5), digits)), &int(1))?;
    Ok(p.mul(&den.inv()?))
}

/// `(1/5) (-1)^k xi^{k+5 rho} 2 pi i / (e^{-2 pi i x} - xi^{k+5 rho}) / prod_j Gamma(a_j - k/5) / Gamma(k)`.
pub fn class_constant(g: &CySector, rho5: u8, k: u8, order: usize, digits: u32) -> Result<NilpotentPoly<BigComplex>, ContinuationError> {
    let x = nil_x(order, digits);
    let j = i64::from(k) + i64::from(rho5);
    let xi = BigComplex::xi_pow(j, digits);
    let tpi = BigComplex::two_pi_i(digits);
    let den = exp_nilpotent(&x.scale(&tpi.neg()))?.add_scalar(&xi.neg()).inv()?;
    let mut c = &xi * &tpi;
    if k % 2 == 1 {
        c = c.neg();
    }
    let fact = exact_kernel::rational::factorial(u32::from(k) - 1);
    c = c.scale(&(int(1) / (Rational::from(fact) * int(5))));
    c = &c * &class_gamma_direct(g, k, digits);
    Ok(den.scale(&c))
}

pub fn continued_series(g: &CySector, order: usize, digits: u32) -> Result<ContinuedSeries, ContinuationError> {
    if g.age() > 1 {
        return Err(ContinuationError::UnsupportedSector(g.to_string()));
    }
    if g.dimension() == 1 {
        let sum: Rational = (0..5).map(|j| g.element().theta(j)).sum();
        if sum != 1 {
            return Err(ContinuationError::SectorAssumption(g.to_string()));
        }
    }
    let classes = present_classes(g);
    let mut components = Vec::new();
    for (rho5, target) in components_of(g) {
        let dim = target.dimension();
        let z_shift = int(1) + g.age() - target.age();
        let prefactor = component_prefactor(g, rho5, dim, digits)?;
        let cls = classes
            .iter()
            .map(|&k| {
                Ok(ContinuedClass {
                    k,
                    constant: class_constant(g, rho5, k, dim, digits)?,
                    series: class_series(g, k, order),
                })
            })
            .collect::<Result<Vec<_>, ContinuationError>>()?;
        components.push(ContinuedComponent {
            target,
            rho5,
            z_shift: z_shift.numer().to_i64().expect("integral z shift"),
            prefactor,
            classes: cls,
        });
    }
    Ok(ContinuedSeries { sector: *g, order, digits, components, branch: BRANCH })
}

/// True iff the transported operator of the sector kills every class series through
/// `order`. The `q^{H/z}` factor cancels against the residues, so no nilpotent offset
/// enters the `t`-side theta.
pub fn annihilation_check(g: &CySector, order: usize) -> Result<bool, ContinuationError> {
    let op = transport_operator(&derive_recurrence(&i_gw(g, 4)?)?);
    Ok(present_classes(g)
        .into_iter()
        .all(|k| op.apply_series(&class_series(g, k, order)).coeffs().iter().all(|c| *c == 0)))
}

/// Rank of the class series, to be compared with the operator order.
pub fn independent_solutions(series: &ContinuedSeries) -> usize {
    let rows: Vec<Vec<Rational>> = series
        .components
        .first()
        .map(|c| c.classes.iter().map(|cl| cl.series.coeffs().to_vec()).collect())
        .unwrap_or_default();
    rank_rational(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lg_state::GroupElement;

    #[test]
    fn untwisted_class_one_ratio() {
        let e = CySector::new(GroupElement::identity()).unwrap();
        let s = class_series(&e, 1, 6);
        assert_eq!(s.coeff(1), &int(1));
        assert_eq!(s.coeff(6), &rat(1, 375000));
    }
}
