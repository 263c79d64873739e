//! Chen-Ruan cohomology of the mirror quintic `W = {sum x_k^5 = 0} / G`: twisted
//! sectors, the graded basis `1_g H^a`, the pairing, and the map `mu` onto the
//! narrow FJRW state space.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use exact_kernel::linalg::least_squares;
use exact_kernel::rational::int;
use exact_kernel::{BigComplex, Rational};
use lg_state::{enumerate_group, w_degree, FjrwLabel, GroupElement};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CyError {
    #[error("sector {0} matches no row of the identification table")]
    UnmappedSector(GroupElement),
    #[error("{0} fixes fewer than two coordinates")]
    NotASector(GroupElement),
    #[error("pairing equations are inconsistent for {sector} (residual 1e{residual:.1})")]
    InconsistentPairing { sector: GroupElement, residual: f64 },
    #[error("solved constant for {0} is not a small positive rational: {1}")]
    UnrecognizedConstant(GroupElement, String),
}

/// A component `W_g` of the inertia orbifold.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CySector {
    element: GroupElement,
}

impl CySector {
    pub fn new(element: GroupElement) -> Result<Self, CyError> {
        if element.n_fixed() < 2 {
            return Err(CyError::NotASector(element));
        }
        Ok(Self { element })
    }

    pub fn element(&self) -> GroupElement {
        self.element
    }

    /// `N_g - 2`, one of 0, 1, 3.
    pub fn dimension(&self) -> usize {
        self.element.n_fixed() - 2
    }

    pub fn age(&self) -> Rational {
        self.element.age()
    }

    pub fn inverse(&self) -> Self {
        Self { element: self.element.inverse() }
    }

    pub fn is_untwisted(&self) -> bool {
        self.element == GroupElement::identity()
    }
}

impl fmt::Display for CySector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_untwisted() {
            f.write_str("e")
        } else {
            write!(f, "{}", self.element)
        }
    }
}

/// Basis element `1_g H^a`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CyBasisLabel {
    pub sector: CySector,
    pub h_power: usize,
}

impl CyBasisLabel {
    pub fn new(sector: CySector, h_power: usize) -> Option<Self> {
        (h_power <= sector.dimension()).then_some(Self { sector, h_power })
    }

    /// Chen-Ruan degree `2a + 2 age(g)`.
    pub fn cr_degree(&self) -> Rational {
        Rational::from(2 * self.h_power as i64) + self.sector.age() * 2u32
    }
}

impl fmt::Display for CyBasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.h_power {
            0 => write!(f, "1_{}", self.sector),
            1 => write!(f, "1_{}H", self.sector),
            a => write!(f, "1_{}H^{a}", self.sector),
        }
    }
}

/// The 161 sectors with at least two fixed coordinates.
pub fn enumerate_sectors() -> Vec<CySector> {
    enumerate_group()
        .into_iter()
        .filter(|g| g.n_fixed() >= 2)
        .map(|element| CySector { element })
        .collect()
}

pub fn cr_basis() -> Vec<CyBasisLabel> {
    enumerate_sectors()
        .into_iter()
        .flat_map(|s| (0..=s.dimension()).map(move |a| CyBasisLabel { sector: s, h_power: a }))
        .collect()
}

fn el(r: [u8; 5]) -> GroupElement {
    GroupElement::new(r).expect("table entry lies in G")
}

/// Canonical rows `(g, [images of 1_g H^a])`.
fn mu_rows() -> Vec<(GroupElement, Vec<GroupElement>)> {
    vec![
        (el([0, 0, 0, 2, 3]), vec![el([1, 1, 1, 3, 4]), el([4, 4, 4, 1, 2])]),
        (el([0, 0, 0, 1, 4]), vec![el([2, 2, 2, 3, 1]), el([3, 3, 3, 4, 2])]),
        (el([0, 0, 1, 1, 3]), vec![el([1, 1, 2, 2, 4])]),
        (el([0, 0, 4, 4, 2]), vec![el([4, 4, 3, 3, 1])]),
        (el([0, 0, 2, 2, 1]), vec![el([1, 1, 3, 3, 2])]),
        (el([0, 0, 3, 3, 4]), vec![el([4, 4, 2, 2, 3])]),
    ]
}

pub fn permutations5() -> Vec<[usize; 5]> {
    fn rec(prefix: &mut Vec<usize>, out: &mut Vec<[usize; 5]>) {
        if prefix.len() == 5 {
            out.push([prefix[0], prefix[1], prefix[2], prefix[3], prefix[4]]);
            return;
        }
        for i in 0..5 {
            if !prefix.contains(&i) {
                prefix.push(i);
                rec(prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut out);
    out
}

/// For a twisted sector, a canonical table sector `g0` and a permutation `p` with
/// `g = g0.permute(p)`.
pub fn normalize_sector(g: &GroupElement) -> Option<(GroupElement, [usize; 5])> {
    for (g0, _) in mu_rows() {
        for p in permutations5() {
            if g0.permute(&p) == *g {
                return Some((g0, p));
            }
        }
    }
    None
}

fn mu_table() -> &'static BTreeMap<CyBasisLabel, FjrwLabel> {
    static TABLE: OnceLock<BTreeMap<CyBasisLabel, FjrwLabel>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = BTreeMap::new();
        for s in enumerate_sectors() {
            if s.is_untwisted() {
                for a in 0..4 {
                    t.insert(CyBasisLabel { sector: s, h_power: a }, FjrwLabel::j_pow(a as i64 + 1));
                }
                continue;
            }
            let Some((g0, p)) = normalize_sector(&s.element) else { continue };
            let row = mu_rows().into_iter().find(|(g, _)| *g == g0).expect("row").1;
            for (a, h) in row.iter().enumerate() {
                t.insert(CyBasisLabel { sector: s, h_power: a }, FjrwLabel::extended(h.permute(&p)));
            }
        }
        t
    })
}

pub fn mu_isomorphism(label: &CyBasisLabel) -> Result<FjrwLabel, CyError> {
    mu_table().get(label).copied().ok_or(CyError::UnmappedSector(label.sector.element))
}

pub fn mu_inverse(h: &FjrwLabel) -> Option<CyBasisLabel> {
    mu_table().iter().find(|(_, v)| *v == h).map(|(k, _)| *k)
}

/// Companion `g_1 = (<-r_1>, <-r_1>, 0, 0, <r_2 - r_1>)` of a point sector
/// `(0,0,r_1,r_1,r_2)`, computed as `g J^{-5 r_1}` so that it follows permutations.
pub fn companion_sector(s: &CySector) -> Option<CySector> {
    if s.dimension() != 0 {
        return None;
    }
    let r = s.element.residues();
    let nz: Vec<u8> = r.iter().copied().filter(|&x| x != 0).collect();
    let r1 = nz.iter().copied().find(|x| nz.iter().filter(|y| *y == x).count() == 2)?;
    let g1 = s.element.mul(&GroupElement::j_pow(-i64::from(r1)));
    CySector::new(g1).ok()
}

/// Per-sector pairing constants `kappa_g = <1_g H^a, 1_{g^-1} H^{dim-a}>`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingTable {
    kappa: BTreeMap<GroupElement, Rational>,
}

impl PairingTable {
    pub fn from_map(kappa: BTreeMap<GroupElement, Rational>) -> Self {
        Self { kappa }
    }

    /// The same constant on every sector.
    pub fn uniform(c: Rational) -> Self {
        Self { kappa: enumerate_sectors().into_iter().map(|s| (s.element, c.clone())).collect() }
    }

    pub fn kappa(&self, s: &CySector) -> Option<&Rational> {
        self.kappa.get(&s.element)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, &Rational)> {
        self.kappa.iter()
    }
}

pub fn cy_pairing(a: &CyBasisLabel, b: &CyBasisLabel, table: &PairingTable) -> Rational {
    if a.sector.inverse() != b.sector || a.h_power + b.h_power != a.sector.dimension() {
        return int(0);
    }
    table.kappa(&a.sector).cloned().unwrap_or_default()
}

/// One linear condition `sum_g coeff_g kappa_g = rhs` on pairing constants.
#[derive(Clone, Debug)]
pub struct PairingEquation {
    pub terms: Vec<(GroupElement, BigComplex)>,
    pub rhs: BigComplex,
}

/// Representative of the unordered pair `{g, g^-1}`.
pub fn pair_key(g: &GroupElement) -> GroupElement {
    (*g).min(g.inverse())
}

fn find(parent: &mut BTreeMap<GroupElement, GroupElement>, x: GroupElement) -> GroupElement {
    let p = parent[&x];
    if p == x {
        return x;
    }
    let r = find(parent, p);
    parent.insert(x, r);
    r
}

/// Continued-fraction recognition of a real number as a rational with bounded
/// denominator.
pub fn recognize_rational(x: &BigComplex, max_denom: u64, tol_log10: f64) -> Option<Rational> {
    if x.im().clone().abs().to_f64() > 10f64.powf(tol_log10) {
        return None;
    }
    let target = Rational::from_f64(x.re().to_f64())?;
    let mut best = None;
    for d in 1..=max_denom.min(10_000) {
        let n = (target.clone() * Rational::from(d)).round();
        let cand = Rational::from((n.numer().clone(), exact_kernel::Integer::from(d)));
        let diff = x.try_sub(&BigComplex::from_rational(&cand, x.digits())).ok()?;
        if diff.log10_abs() < tol_log10 {
            best = Some(cand);
            break;
        }
    }
    best
}

/// Solves for `kappa` on unordered inverse pairs. Equations are split into connected
/// components (unknowns sharing an equation) and each component is solved by least
/// squares; a residual above `tol_log10` means no consistent constants exist.
pub fn solve_pairing_constants(
    equations: &[PairingEquation],
    tol_log10: f64,
) -> Result<(PairingTable, BTreeMap<GroupElement, BigComplex>), CyError> {
    let mut parent: BTreeMap<GroupElement, GroupElement> = BTreeMap::new();
    for eq in equations {
        for (g, _) in &eq.terms {
            let k = pair_key(g);
            parent.entry(k).or_insert(k);
        }
    }
    for eq in equations {
        let keys: Vec<GroupElement> = eq.terms.iter().map(|(g, _)| pair_key(g)).collect();
        for w in keys.windows(2) {
            let a = find(&mut parent, w[0]);
            let b = find(&mut parent, w[1]);
            if a != b {
                parent.insert(a, b);
            }
        }
    }
    let unknowns: Vec<GroupElement> = parent.keys().copied().collect();
    let mut components: BTreeMap<GroupElement, Vec<GroupElement>> = BTreeMap::new();
    for u in &unknowns {
        let r = find(&mut parent, *u);
        components.entry(r).or_default().push(*u);
    }
    let mut numeric = BTreeMap::new();
    for (root, members) in &components {
        let index: BTreeMap<GroupElement, usize> = members.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for eq in equations {
            let Some((g0, _)) = eq.terms.first() else { continue };
            if find(&mut parent, pair_key(g0)) != *root {
                continue;
            }
            let digits = eq.rhs.digits();
            let mut row = vec![BigComplex::zero(digits); members.len()];
            for (g, c) in &eq.terms {
                let i = index[&pair_key(g)];
                row[i] = &row[i] + c;
            }
            rows.push(row);
            rhs.push(eq.rhs.clone());
        }
        let (x, residual) = least_squares(&rows, &rhs)
            .map_err(|_| CyError::InconsistentPairing { sector: *root, residual: f64::INFINITY })?;
        if residual > tol_log10 {
            return Err(CyError::InconsistentPairing { sector: *root, residual });
        }
        for (g, v) in members.iter().zip(x) {
            numeric.insert(*g, v);
        }
    }
    let mut kappa = BTreeMap::new();
    for (g, v) in &numeric {
        let r = recognize_rational(v, 10_000, tol_log10)
            .filter(|r| *r > 0)
            .ok_or_else(|| CyError::UnrecognizedConstant(*g, v.to_string()))?;
        kappa.insert(*g, r.clone());
        kappa.insert(g.inverse(), r);
    }
    Ok((PairingTable { kappa }, numeric))
}

/// The constant `c` with `<mu x, mu y>_FJRW = c <x, y>_CY` on all basis pairs, if it exists.
pub fn global_pairing_constant(table: &PairingTable) -> Option<Rational> {
    let basis = cr_basis();
    let mut c: Option<Rational> = None;
    for a in &basis {
        for b in &basis {
            let cy = cy_pairing(a, b, table);
            let ha = mu_isomorphism(a).ok()?;
            let hb = mu_isomorphism(b).ok()?;
            let lg = lg_state::fjrw_pairing(&ha, &hb).ok()?;
            if cy == 0 {
                if lg != 0 {
                    return None;
                }
                continue;
            }
            let ratio = Rational::from(&lg / &cy);
            match &c {
                None => c = Some(ratio),
                Some(v) if *v != ratio => return None,
                _ => {}
            }
        }
    }
    c
}

/// Degree check of `mu` against the W-degree on all labels.
pub fn mu_preserves_degree() -> bool {
    cr_basis()
        .iter()
        .all(|l| mu_isomorphism(l).map(|h| w_degree(&h) == l.cr_degree()).unwrap_or(false))
}

pub fn mu_is_bijective() -> bool {
    let images: Result<BTreeSet<FjrwLabel>, _> = cr_basis().iter().map(mu_isomorphism).collect();
    match images {
        Ok(set) => set.len() == 204 && set.iter().all(|h| !h.is_broad()),
        Err(_) => false,
    }
}
