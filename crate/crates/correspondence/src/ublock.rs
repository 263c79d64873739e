//! The transformation `U`, assembled from the closed forms of the four tabulated twisted
//! cases and the untwisted block, extended to all labels by permuting coordinates.

use std::collections::BTreeMap;

use cy_state::{permutations5, CyBasisLabel, CySector};
use exact_kernel::bigcomplex::{gamma_rational, BigComplex};
use exact_kernel::rational::{int, rat};
use exact_kernel::{exp_nilpotent, gamma_nilpotent, NilpotentPoly, Rational};
use lg_state::{w_degree, FjrwLabel, GroupElement};

use crate::CorrespondenceError;

#[derive(Clone, Debug)]
pub struct UEntry {
    pub target: CyBasisLabel,
    pub z_exp: i64,
    pub value: BigComplex,
}

#[derive(Clone, Debug)]
pub struct UBlock {
    pub sources: Vec<FjrwLabel>,
    pub targets: Vec<CyBasisLabel>,
}

#[derive(Clone, Debug)]
pub struct UMap {
    pub digits: u32,
    pub columns: BTreeMap<FjrwLabel, Vec<UEntry>>,
    pub blocks: Vec<UBlock>,
}

fn el(r: [u8; 5]) -> GroupElement {
    GroupElement::new(r).expect("tabulated label lies in G")
}

fn label(r: [u8; 5]) -> FjrwLabel {
    FjrwLabel::new(el(r)).expect("tabulated label is narrow")
}

fn gam(q: Rational, d: u32) -> BigComplex {
    BigComplex::from_float(&gamma_rational(&q, d).expect("positive argument"), d)
}

fn gf(n: i64, d: u32) -> BigComplex {
    gam(rat(n, 5), d)
}

fn prod(v: &[BigComplex], d: u32) -> BigComplex {
    v.iter().fold(BigComplex::one(d), |a, b| &a * b)
}

/// `(-xi)^k 2 pi i / (e^{-2 pi i x} - xi^k)` in the nilpotent variable `x = H/z`.
fn phase(k: i64, x: &NilpotentPoly<BigComplex>, d: u32) -> NilpotentPoly<BigComplex> {
    let xi = BigComplex::xi_pow(k, d);
    let tpi = BigComplex::two_pi_i(d);
    let den = exp_nilpotent(&x.scale(&tpi.neg())).expect("nilpotent exponent").add_scalar(&xi.neg());
    let mut c = &xi * &tpi;
    if k % 2 == 1 {
        c = c.neg();
    }
    den.inv().expect("xi^k differs from one").scale(&c)
}

/// `prod_j Gamma(b_j + x) / Gamma(1 + 5x)`.
fn gamma_prefactor(b: &[Rational], x: &NilpotentPoly<BigComplex>, d: u32) -> NilpotentPoly<BigComplex> {
    let mut p = NilpotentPoly::constant(BigComplex::one(d), x.order());
    for bj in b {
        p = p.mul(&gamma_nilpotent(x, bj).expect("positive shift"));
    }
    let five = x.scale(&BigComplex::from_rational(&int(5), d));
    p.mul(&gamma_nilpotent(&five, &int(1)).expect("Gamma(1)").inv().expect("unit"))
}

fn entries_from_poly(sector: CySector, p: &NilpotentPoly<BigComplex>, z0: i64) -> Vec<UEntry> {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(h, v)| UEntry {
            target: CyBasisLabel::new(sector, h).expect("power within dimension"),
            z_exp: z0 - h as i64,
            value: v.clone(),
        })
        .collect()
}

fn x_var(order: usize, d: u32) -> NilpotentPoly<BigComplex> {
    NilpotentPoly::<Rational>::variable(order).to_complex(d)
}

fn sector(r: [u8; 5]) -> CySector {
    CySector::new(el(r)).expect("tabulated sector")
}

/// Columns of the untwisted block, `phi_{J^k} -> z^{k-1} ... 1_e`.
fn untwisted(d: u32) -> BTreeMap<FjrwLabel, Vec<UEntry>> {
    let x = x_var(3, d);
    let e = CySector::new(GroupElement::identity()).expect("untwisted sector");
    let pre = gamma_prefactor(&[int(1), int(1), int(1), int(1), int(1)], &x, d);
    (1..5)
        .map(|k| {
            let g = gf(5 - k, d);
            let c = BigComplex::one(d).try_div(&prod(&[g.clone(), g.clone(), g.clone(), g.clone(), g], d)).expect("nonzero");
            let p = pre.mul(&phase(k, &x, d)).scale(&c);
            (FjrwLabel::j_pow(k), entries_from_poly(e, &p, k - 1))
        })
        .collect()
}

/// One tabulated twisted case: the columns of `h` and `h_1`.
fn tabulated_case(case: usize, d: u32) -> Vec<(FjrwLabel, Vec<UEntry>)> {
    let tpi = BigComplex::two_pi_i(d);
    match case {
        // g = (0,0,0,2/5,3/5) and g = (0,0,0,1/5,4/5): a curve sector, H^2 = 0
        0 | 1 => {
            let (g, b, h, h1, k, k1, den_h, den_h1, sign) = if case == 0 {
                ([0, 0, 0, 2, 3], [2, 3], [1, 1, 1, 3, 4], [4, 4, 4, 1, 2], 1, 4, [4, 4, 4, 2, 1], [1, 1, 1, 4, 3], 1)
            } else {
                ([0, 0, 0, 1, 4], [1, 4], [2, 2, 2, 3, 1], [3, 3, 3, 4, 2], 2, 3, [3, 3, 3, 2, 4], [2, 2, 2, 1, 3], -1)
            };
            let x = x_var(1, d);
            let pre = gamma_prefactor(&[int(1), int(1), int(1), rat(b[0], 5), rat(b[1], 5)], &x, d);
            let col = |k: i64, den: [i64; 5], z0: i64| {
                let c = BigComplex::one(d)
                    .try_div(&prod(&den.map(|n| gf(n, d)), d))
                    .expect("nonzero");
                let mut p = pre.mul(&phase(k, &x, d)).scale(&c);
                if sign < 0 {
                    p = p.neg();
                }
                entries_from_poly(sector(g), &p, z0)
            };
            vec![(label(h), col(k, den_h, 0)), (label(h1), col(k1, den_h1, 1))]
        }
        // g = (0,0,1/5,1/5,3/5) and g = (0,0,2/5,2/5,1/5): point sectors with a companion g_1.
        // Entries are c xi^p 2 pi i / (1 - xi^p) / D, negative on h and positive on h_1.
        _ => {
            let (g, g1, h, h1, c_g, c_g1, powers, den_h, den_h1) = if case == 2 {
                ([0, 0, 1, 1, 3], [4, 4, 0, 0, 2], [1, 1, 2, 2, 4], [3, 3, 4, 4, 1], [4, 4, 2], [1, 1, 3], [1, 2, 3, 4], [4, 4, 3, 3, 1], [2, 2, 1, 1, 4])
            } else {
                ([0, 0, 2, 2, 1], [3, 3, 0, 0, 4], [1, 1, 3, 3, 2], [2, 2, 4, 4, 3], [3, 3, 4], [2, 2, 1], [1, 3, 2, 4], [4, 4, 2, 2, 3], [3, 3, 1, 1, 2])
            };
            let cg = prod(&c_g.map(|n| gf(n, d)), d);
            let cg1 = prod(&c_g1.map(|n| gf(n, d)), d);
            let term = |power: i64, c: &BigComplex, den: [i64; 5]| {
                let xi = BigComplex::xi_pow(power, d);
                let v = (&xi * &tpi).try_div(&(&BigComplex::one(d) - &xi)).expect("xi^p differs from one");
                (c * &v).try_div(&prod(&den.map(|n| gf(n, d)), d)).expect("nonzero")
            };
            let entry = |s: [u8; 5], z_exp: i64, value: BigComplex| UEntry {
                target: CyBasisLabel::new(sector(s), 0).expect("point class"),
                z_exp,
                value,
            };
            let col_h = vec![
                entry(g, 0, term(powers[0], &cg, den_h).neg()),
                entry(g1, -1, term(powers[1], &cg1, den_h).neg()),
            ];
            let col_h1 = vec![entry(g, 1, term(powers[2], &cg, den_h1)), entry(g1, 0, term(powers[3], &cg1, den_h1))];
            vec![(label(h), col_h), (label(h1), col_h1)]
        }
    }
}

fn permute_entry(e: &UEntry, p: &[usize; 5]) -> UEntry {
    let s = CySector::new(e.target.sector.element().permute(p)).expect("permuted sector");
    UEntry { target: CyBasisLabel::new(s, e.target.h_power).expect("same dimension"), ..e.clone() }
}

pub fn build_u(digits: u32) -> UMap {
    let mut columns = untwisted(digits);
    let j: Vec<FjrwLabel> = (1..5).map(FjrwLabel::j_pow).collect();
    let e = CySector::new(GroupElement::identity()).expect("untwisted sector");
    let mut blocks = vec![UBlock { sources: j, targets: (0..4).map(|h| CyBasisLabel::new(e, h).unwrap()).collect() }];
    for case in 0..4 {
        let cols = tabulated_case(case, digits);
        for p in permutations5() {
            let h = FjrwLabel::new(cols[0].0.element().permute(&p)).expect("narrow");
            if columns.contains_key(&h) {
                continue;
            }
            let mut sources = Vec::new();
            let mut targets: Vec<CyBasisLabel> = Vec::new();
            for (src, entries) in &cols {
                let s = FjrwLabel::new(src.element().permute(&p)).expect("narrow");
                let es: Vec<UEntry> = entries.iter().map(|en| permute_entry(en, &p)).collect();
                for en in &es {
                    if !targets.contains(&en.target) {
                        targets.push(en.target);
                    }
                }
                sources.push(s);
                columns.insert(s, es);
            }
            targets.sort();
            blocks.push(UBlock { sources, targets });
        }
    }
    UMap { digits, columns, blocks }
}

impl UMap {
    pub fn column(&self, h: &FjrwLabel) -> Result<&[UEntry], CorrespondenceError> {
        self.columns.get(h).map(Vec::as_slice).ok_or_else(|| CorrespondenceError::MissingColumn(h.to_string()))
    }

    /// `deg(target) + 2 z_exp = deg_W(source)` on every nonzero entry.
    pub fn degree_preserving(&self) -> bool {
        self.columns.iter().all(|(h, es)| {
            es.iter().all(|e| e.target.cr_degree() + Rational::from(2 * e.z_exp) == w_degree(h))
        })
    }

    /// Scalar determinant of each block; every entry is a single power of `z`, and the
    /// powers are compatible so the determinant is a monomial.
    pub fn block_determinants(&self) -> Result<Vec<BigComplex>, CorrespondenceError> {
        self.blocks
            .iter()
            .map(|b| {
                let m: Vec<Vec<BigComplex>> = b
                    .targets
                    .iter()
                    .map(|t| {
                        b.sources
                            .iter()
                            .map(|s| {
                                self.columns[s]
                                    .iter()
                                    .find(|e| e.target == *t)
                                    .map_or_else(|| BigComplex::zero(self.digits), |e| e.value.clone())
                            })
                            .collect()
                    })
                    .collect();
                Ok(exact_kernel::linalg::determinant(&m)?)
            })
            .collect()
    }
}
