//! Gromov-Witten I-functions `I_g(q, z)` of the mirror quintic for sectors of age at
//! most one, the theta-operators they satisfy, and the transport of those operators
//! to the coordinate `t = q^{-1/5}`.
//!
//! Every series is stored with the factor `z^e q^{H/z}` kept symbolic: a component on
//! the sector `g_rho` is `z^e q^{x} sum_n c_n(x) q^{rho+n}` with `x = H/z` nilpotent.

pub mod operator;

use cy_state::{enumerate_sectors, CySector};
use exact_kernel::rational::{int, rat};
use exact_kernel::{NilpotentPoly, Rational, TSeries};
use lg_state::GroupElement;
use thiserror::Error;

pub use operator::{derive_recurrence, transport_operator, ThetaOperator};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GwError {
    #[error("sector {0} has age above one")]
    UnsupportedSector(String),
    #[error("consecutive coefficients of {0} do not follow a Gamma-ratio recurrence")]
    NoRecurrence(String),
    #[error("I-function shape violated: {0}")]
    Shape(String),
}

/// `a_j = 1 - Theta_j(g)`, so that the denominators are `prod_j Gamma(a_j + x + d)`.
pub fn a_params(g: &GroupElement) -> [Rational; 5] {
    std::array::from_fn(|j| int(1) - g.theta(j))
}

/// `g_rho = g J^{-5 rho}` for `rho = rho5 / 5`.
pub fn shifted_sector(g: &GroupElement, rho5: u8) -> GroupElement {
    g.mul(&GroupElement::j_pow(-i64::from(rho5)))
}

/// Residue classes `rho = rho5/5` in `[0, 1)` whose shifted sector is a CR sector.
pub fn components_of(g: &CySector) -> Vec<(u8, CySector)> {
    (0..5u8)
        .filter_map(|r| CySector::new(shifted_sector(&g.element(), r)).ok().map(|s| (r, s)))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct GwComponent {
    pub target: CySector,
    pub rho5: u8,
    /// Exponent `e` of the prefactor `z^e`.
    pub z_shift: i64,
    /// `c_n(x)` for `d = rho + n`, nilpotent of order `dim(target)`.
    pub coeffs: Vec<NilpotentPoly<Rational>>,
}

impl GwComponent {
    pub fn rho(&self) -> Rational {
        rat(i64::from(self.rho5), 5)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GwSeries {
    pub sector: CySector,
    pub order: usize,
    pub components: Vec<GwComponent>,
}

impl GwSeries {
    pub fn main(&self) -> &GwComponent {
        &self.components[0]
    }
}

/// `prod_{i<n} (a + x + i)` as a nilpotent polynomial in `x`.
pub fn rising_nil(a: &Rational, n: u32, order: usize) -> NilpotentPoly<Rational> {
    let x = NilpotentPoly::<Rational>::variable(order);
    let mut acc = NilpotentPoly::constant(int(1), order);
    for i in 0..n {
        acc = acc.mul(&x.add_scalar(&(a.clone() + Rational::from(i))));
    }
    acc
}

/// Coefficient at `d = rho + n`:
/// `prod_{m=1}^{5d} (5x + m) / prod_j (a'_j + x)_{count_j}` with `a'_j = 1 - Theta_j(g_rho)`
/// and `count_j = n + [rho > Theta_j(g)]`.
pub fn gw_coefficient(g: &GroupElement, rho5: u8, n: u32, order: usize) -> NilpotentPoly<Rational> {
    let target = shifted_sector(g, rho5);
    let a_target = a_params(&target);
    let x = NilpotentPoly::<Rational>::variable(order);
    let five_x = x.scale(&int(5));
    let mut num = NilpotentPoly::constant(int(1), order);
    for m in 1..=(u32::from(rho5) + 5 * n) {
        num = num.mul(&five_x.add_scalar(&Rational::from(m)));
    }
    let mut den = NilpotentPoly::constant(int(1), order);
    for j in 0..5 {
        let bump = u32::from(u32::from(rho5) > u32::from(g.residues()[j]));
        den = den.mul(&rising_nil(&a_target[j], n + bump, order));
    }
    num.mul(&den.inv().expect("denominator has a positive constant term"))
}

pub fn i_gw(g: &CySector, order: usize) -> Result<GwSeries, GwError> {
    if g.age() > 1 {
        return Err(GwError::UnsupportedSector(g.to_string()));
    }
    let age = g.age();
    let components = components_of(g)
        .into_iter()
        .map(|(rho5, target)| {
            let dim = target.dimension();
            let z_shift = int(1) + age.clone() - target.age();
            GwComponent {
                target,
                rho5,
                z_shift: z_shift.numer().to_i64().expect("integral z shift"),
                coeffs: (0..=order as u32).map(|n| gw_coefficient(&g.element(), rho5, n, dim)).collect(),
            }
        })
        .collect();
    Ok(GwSeries { sector: *g, order, components })
}

/// Sectors of age at most one: the untwisted one, the 40 curve sectors and the 60
/// point sectors of age one.
pub fn supported_sectors() -> Vec<CySector> {
    enumerate_sectors().into_iter().filter(|s| s.age() <= 1).collect()
}

#[derive(Clone, Debug)]
pub struct MirrorShape {
    pub f0: TSeries<Rational>,
    /// `G_0 = log(q) F_0 + g0_regular`.
    pub g0_regular: TSeries<Rational>,
    pub h_g: TSeries<Rational>,
}

impl MirrorShape {
    /// `sigma(q) - log q = g0_regular / F_0`.
    pub fn sigma_regular(&self) -> TSeries<Rational> {
        exact_kernel::series_divide(&self.g0_regular, &self.f0).expect("F_0(0) = 1")
    }
}

/// Reads off `F_0`, `G_0` (from the untwisted series) and `H_g` (the `z^1 1_g` part of
/// `I_g`) and checks that no other component reaches `z^1`.
pub fn extract_mirror_shape(ie: &GwSeries, ig: &GwSeries) -> Result<MirrorShape, GwError> {
    if !ie.sector.is_untwisted() {
        return Err(GwError::Shape("first argument must be the untwisted series".into()));
    }
    let c = &ie.main().coeffs;
    let f0 = TSeries::from_coeffs('q', c.iter().map(|p| p.coeff(0).clone()).collect());
    let g0_regular = TSeries::from_coeffs('q', c.iter().map(|p| p.coeff(1).clone()).collect());
    let main = ig.main();
    if main.z_shift != 1 {
        return Err(GwError::Shape(format!("{} main component has z^{}", ig.sector, main.z_shift)));
    }
    for comp in &ig.components[1..] {
        if comp.z_shift >= 1 {
            return Err(GwError::Shape(format!("{} component on {} reaches z^1", ig.sector, comp.target)));
        }
    }
    let h_g = TSeries::from_coeffs('q', main.coeffs.iter().map(|p| p.coeff(0).clone()).collect());
    Ok(MirrorShape { f0, g0_regular, h_g })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn untwisted_examples() {
        let e = CySector::new(GroupElement::identity()).unwrap();
        let s = i_gw(&e, 2).unwrap();
        let c = &s.main().coeffs;
        assert_eq!(c[1].coeff(0), &int(120));
        assert_eq!(c[1].coeff(1), &int(770));
        assert_eq!(c[2].coeff(0), &int(113400));
    }

    #[test]
    fn point_sector_has_two_components() {
        let g = CySector::new("0,0,1,1,3".parse().unwrap()).unwrap();
        let s = i_gw(&g, 3).unwrap();
        assert_eq!(s.components.len(), 2);
        assert_eq!(s.components[1].target.element(), "4,4,0,0,2".parse().unwrap());
        assert_eq!(s.components[1].z_shift, 0);
        assert_eq!(s.components[1].coeffs[0].coeff(0), &int(25));
        let bad = CySector::new("0,0,4,4,2".parse().unwrap()).unwrap();
        assert!(i_gw(&bad, 3).is_err());
    }
}
