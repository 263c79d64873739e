//! The diagonal symmetry group `G = SL_W` of `W = x_1^5 + ... + x_5^5`, the narrow
//! FJRW state space, W-degrees, the pairing, and the genus-zero selection rules.

use std::fmt;
use std::str::FromStr;

use exact_kernel::rational::{frac, int, rat};
use exact_kernel::Rational;
use thiserror::Error;

pub const N_VARS: usize = 5;
pub const D: u8 = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LgError {
    #[error("residues {0:?} do not sum to 0 mod 5")]
    NotInGroup([u8; 5]),
    #[error("residue out of range in {0:?}")]
    BadResidue([u8; 5]),
    #[error("broad sector {0} is not part of the narrow state space")]
    BroadSector(GroupElement),
    #[error("cannot parse group element from {0:?}")]
    Parse(String),
}

/// An element of `(Z/5)^5` with residue sum `0 mod 5`; coordinate `k` acts by
/// `exp(2 pi i r_k / 5)`, so `Theta_k = r_k / 5`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement([u8; 5]);

impl GroupElement {
    pub fn new(r: [u8; 5]) -> Result<Self, LgError> {
        if r.iter().any(|&x| x >= D) {
            return Err(LgError::BadResidue(r));
        }
        if r.iter().map(|&x| u32::from(x)).sum::<u32>() % 5 != 0 {
            return Err(LgError::NotInGroup(r));
        }
        Ok(Self(r))
    }

    pub fn identity() -> Self {
        Self([0; 5])
    }

    /// The exponential grading element `(1/5, ..., 1/5)`.
    pub fn j() -> Self {
        Self([1; 5])
    }

    pub fn j_pow(k: i64) -> Self {
        Self::j().pow(k)
    }

    pub fn residues(&self) -> [u8; 5] {
        self.0
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = [0u8; 5];
        for k in 0..5 {
            r[k] = (self.0[k] + o.0[k]) % D;
        }
        Self(r)
    }

    pub fn inverse(&self) -> Self {
        let mut r = [0u8; 5];
        for k in 0..5 {
            r[k] = (D - self.0[k]) % D;
        }
        Self(r)
    }

    pub fn pow(&self, n: i64) -> Self {
        let mut r = [0u8; 5];
        for k in 0..5 {
            r[k] = (i64::from(self.0[k]) * n).rem_euclid(5) as u8;
        }
        Self(r)
    }

    /// Applies a coordinate permutation: coordinate `k` of the result is coordinate
    /// `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize; 5]) -> Self {
        let mut r = [0u8; 5];
        for k in 0..5 {
            r[k] = self.0[perm[k]];
        }
        Self(r)
    }

    pub fn theta(&self, k: usize) -> Rational {
        rat(i64::from(self.0[k]), 5)
    }

    /// `i_k(h) = <Theta_k(h) - 1/5>`.
    pub fn i_k(&self, k: usize) -> Rational {
        frac(&(self.theta(k) - rat(1, 5)))
    }

    pub fn i_values(&self) -> [Rational; 5] {
        std::array::from_fn(|k| self.i_k(k))
    }

    /// Number of coordinates fixed by the element.
    pub fn n_fixed(&self) -> usize {
        self.0.iter().filter(|&&x| x == 0).count()
    }

    pub fn is_narrow(&self) -> bool {
        self.n_fixed() == 0
    }

    pub fn age(&self) -> Rational {
        (0..5).map(|k| self.theta(k)).sum()
    }

    /// Degree-shifting number `sum_k (Theta_k - 1/5)`.
    pub fn iota(&self) -> Rational {
        self.age() - int(1)
    }

    /// The element with prescribed `i_k` values (taken mod 1).
    pub fn from_i_values(v: &[Rational; 5]) -> Result<Self, LgError> {
        let mut r = [0u8; 5];
        for k in 0..5 {
            let theta = frac(&(v[k].clone() + rat(1, 5)));
            let five = Rational::from(&theta * 5u32);
            r[k] = five.numer().to_u8().expect("residue fits") % D;
        }
        Self::new(r)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.0;
        write!(f, "({},{},{},{},{})", r[0], r[1], r[2], r[3], r[4])
    }
}

impl FromStr for GroupElement {
    type Err = LgError;

    /// Accepts `J`, `J^k`, `e`, or five residues such as `1,1,1,3,4` (parentheses optional).
    fn from_str(s: &str) -> Result<Self, LgError> {
        let t = s.trim();
        if t == "e" {
            return Ok(Self::identity());
        }
        if t == "J" {
            return Ok(Self::j());
        }
        if let Some(p) = t.strip_prefix("J^") {
            let k: i64 = p.parse().map_err(|_| LgError::Parse(s.into()))?;
            return Ok(Self::j_pow(k));
        }
        let inner = t.trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(LgError::Parse(s.into()));
        }
        let mut r = [0u8; 5];
        for (k, p) in parts.iter().enumerate() {
            r[k] = p.parse().map_err(|_| LgError::Parse(s.into()))?;
        }
        Self::new(r)
    }
}

/// All 625 elements in lexicographic order of residues.
pub fn enumerate_group() -> Vec<GroupElement> {
    let mut out = Vec::with_capacity(625);
    for a in 0..5u8 {
        for b in 0..5u8 {
            for c in 0..5u8 {
                for d in 0..5u8 {
                    let e = (20 - a - b - c - d) % 5;
                    out.push(GroupElement([a, b, c, d, e]));
                }
            }
        }
    }
    out.sort();
    out
}

/// A basis label `phi_h` of the FJRW state space. Broad labels can be built through
/// [`FjrwLabel::extended`] but are flagged.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FjrwLabel {
    element: GroupElement,
}

impl FjrwLabel {
    pub fn new(element: GroupElement) -> Result<Self, LgError> {
        if !element.is_narrow() {
            return Err(LgError::BroadSector(element));
        }
        Ok(Self { element })
    }

    pub fn extended(element: GroupElement) -> Self {
        Self { element }
    }

    pub fn j_pow(k: i64) -> Self {
        Self::extended(GroupElement::j_pow(k))
    }

    pub fn element(&self) -> GroupElement {
        self.element
    }

    pub fn is_broad(&self) -> bool {
        !self.element.is_narrow()
    }

    pub fn inverse(&self) -> Self {
        Self { element: self.element.inverse() }
    }

    /// Short name: `J^k` for powers of the grading element, residues otherwise.
    pub fn name(&self) -> String {
        for k in 1..5 {
            if self.element == GroupElement::j_pow(k) {
                return if k == 1 { "J".into() } else { format!("J^{k}") };
            }
        }
        self.element.to_string()
    }
}

impl fmt::Debug for FjrwLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi{}", self.name())
    }
}

impl fmt::Display for FjrwLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The 204 narrow labels.
pub fn narrow_sectors() -> Vec<FjrwLabel> {
    enumerate_group().into_iter().filter(GroupElement::is_narrow).map(FjrwLabel::extended).collect()
}

/// `deg_W(phi_h) = 2 sum_k i_k(h)`.
pub fn w_degree(h: &FjrwLabel) -> Rational {
    h.element.i_values().iter().sum::<Rational>() * 2u32
}

/// Narrow pairing: one on inverse pairs, zero otherwise.
pub fn fjrw_pairing(h1: &FjrwLabel, h2: &FjrwLabel) -> Result<Rational, LgError> {
    for h in [h1, h2] {
        if h.is_broad() {
            return Err(LgError::BroadSector(h.element));
        }
    }
    Ok(if h1.element.mul(&h2.element) == GroupElement::identity() { int(1) } else { int(0) })
}

/// Genus-zero nonemptiness of the moduli of W-structures with markings `h`:
/// `(n-2)/5 - sum_i Theta_k(h_i)` must be an integer for every `k`.
pub fn w_structure_nonempty(h: &[GroupElement]) -> bool {
    let n = h.len() as i64;
    (0..5).all(|k| {
        let s: Rational = h.iter().map(|g| g.theta(k)).sum();
        let v = rat(n - 2, 5) - s;
        *v.denom() == 1
    })
}

/// Degree of the coarse line bundle `|L_k|` in genus zero: `(n-2)/5 - sum mult_i`.
pub fn coarse_degree(n: usize, mults: &[Rational]) -> Rational {
    rat(n as i64 - 2, 5) - mults.iter().sum::<Rational>()
}

/// Genus-zero untwisted correlator `<phi_{h_1}, ..., phi_{h_n}, psi^l phi_h>`: one exactly
/// when `i_k(h) = <3/5 - sum_m i_k(h_m)>` for all `k` and `l = n - 2`, zero otherwise.
/// Broad insertions give zero.
pub fn untwisted_correlator(inputs: &[GroupElement], l: u32, out: &GroupElement) -> Rational {
    if inputs.iter().chain(std::iter::once(out)).any(|g| !g.is_narrow()) {
        return int(0);
    }
    if i64::from(l) != inputs.len() as i64 - 2 {
        return int(0);
    }
    let ok = (0..5).all(|k| {
        let s: Rational = inputs.iter().map(|g| g.i_k(k)).sum();
        out.i_k(k) == frac(&(rat(3, 5) - s))
    });
    if ok {
        int(1)
    } else {
        int(0)
    }
}

/// The unique output label making the correlator nonzero (ignoring narrowness).
pub fn correlator_output(inputs: &[GroupElement]) -> GroupElement {
    let v: [Rational; 5] = std::array::from_fn(|k| {
        let s: Rational = inputs.iter().map(|g| g.i_k(k)).sum();
        frac(&(rat(3, 5) - s))
    });
    GroupElement::from_i_values(&v).expect("output lies in G")
}

/// Narrow labels with `deg_W <= 2`: the grading element and the 101 degree-two labels.
pub fn low_degree_labels() -> Vec<FjrwLabel> {
    narrow_sectors().into_iter().filter(|h| w_degree(h) <= 2).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let h: GroupElement = "1,1,1,3,4".parse().unwrap();
        assert_eq!(h.to_string(), "(1,1,1,3,4)");
        assert_eq!("J^2".parse::<GroupElement>().unwrap(), GroupElement::j_pow(2));
        assert!("1,1,1,1,2".parse::<GroupElement>().is_err());
        assert_eq!(FjrwLabel::j_pow(6).name(), "J");
    }

    #[test]
    fn broad_rejected() {
        assert!(FjrwLabel::new(GroupElement::identity()).is_err());
        let e = FjrwLabel::extended(GroupElement::identity());
        assert!(fjrw_pairing(&e, &e).is_err());
    }

    #[test]
    fn from_i_values_round_trip() {
        for g in enumerate_group() {
            assert_eq!(GroupElement::from_i_values(&g.i_values()).unwrap(), g);
        }
    }
}
