//! `Omega(f, g) = Res_{z=0} <f(-z), g(z)>` on finite Laurent vectors.

use std::collections::BTreeMap;

use cy_state::{cy_pairing, CyBasisLabel, PairingTable};
use exact_kernel::BigComplex;
use lg_state::{fjrw_pairing, FjrwLabel};

use crate::CorrespondenceError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SideLabel {
    Lg(FjrwLabel),
    Cy(CyBasisLabel),
}

#[derive(Clone, Debug, Default)]
pub struct SymplecticVector {
    pub terms: BTreeMap<(SideLabel, i64), BigComplex>,
}

impl SymplecticVector {
    pub fn add(&mut self, label: SideLabel, z: i64, v: &BigComplex) {
        let e = self.terms.entry((label, z)).or_insert_with(|| BigComplex::zero(v.digits()));
        *e = &*e + v;
    }

    pub fn single(label: SideLabel, z: i64, v: BigComplex) -> Self {
        let mut s = Self::default();
        s.add(label, z, &v);
        s
    }
}

pub enum Pairing<'a> {
    Lg,
    Cy(&'a PairingTable),
}

fn pair(a: &SideLabel, b: &SideLabel, p: &Pairing) -> Result<exact_kernel::Rational, CorrespondenceError> {
    match (a, b, p) {
        (SideLabel::Lg(x), SideLabel::Lg(y), Pairing::Lg) => {
            fjrw_pairing(x, y).map_err(|_| CorrespondenceError::Label(x.to_string()))
        }
        (SideLabel::Cy(x), SideLabel::Cy(y), Pairing::Cy(t)) => Ok(cy_pairing(x, y, t)),
        _ => Err(CorrespondenceError::SideMismatch),
    }
}

pub fn omega_pairing(f: &SymplecticVector, g: &SymplecticVector, p: &Pairing, digits: u32) -> Result<BigComplex, CorrespondenceError> {
    let mut acc = BigComplex::zero(digits);
    for ((a, i), u) in &f.terms {
        for ((b, j), v) in &g.terms {
            let c = pair(a, b, p)?;
            if i + j != -1 || c == 0 {
                continue;
            }
            let mut w = (u * v).scale(&c);
            if i.rem_euclid(2) == 1 {
                w = w.neg();
            }
            acc = &acc + &w;
        }
    }
    Ok(acc)
}
