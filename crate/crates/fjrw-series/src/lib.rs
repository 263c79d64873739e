//! FJRW side of the correspondence: the untwisted J-function, modification factors,
//! the non-equivariant I-function on the small slice, its F/G decomposition, the
//! mirror map, and the generators `I_h`, `J_h`.

pub mod lists;
pub mod sd;

use std::collections::BTreeMap;

use exact_kernel::rational::{factorial, frac, int, rat};
use exact_kernel::{
    series_divide, series_reversion, KernelError, MultiSeries, Rational, StateVector, TSeries,
    ZLaurent,
};
use lg_state::{low_degree_labels, FjrwLabel, GroupElement};
use thiserror::Error;

pub use lists::{cross_check_explicit_lists, ListReport};
pub use sd::{delta_factor, g_function, verify_sd_specialization, SDFormal};

pub type LgVector = StateVector<FjrwLabel, Rational>;
pub type LgLaurent = ZLaurent<LgVector>;
pub type LgSeries = TSeries<LgLaurent>;
pub type FjrwIFunction = MultiSeries<FjrwLabel, LgLaurent>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FjrwError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("I-function shape violated at t^{t_exp}, z^{z_exp} on {label}")]
    Shape { t_exp: usize, z_exp: i64, label: String },
    #[error("{0} is not a narrow label of W-degree at most two")]
    NotSmall(FjrwLabel),
}

/// Multiplicities `n(h)` on narrow labels of W-degree at most two.
pub type Assignment = BTreeMap<FjrwLabel, u32>;

pub fn j2() -> FjrwLabel {
    FjrwLabel::j_pow(2)
}

pub fn j1() -> FjrwLabel {
    FjrwLabel::j_pow(1)
}

pub fn size(n: &Assignment) -> u32 {
    n.values().sum()
}

/// `S_k = sum_h n(h) i_k(h)` for each coordinate.
pub fn insertion_sums(n: &Assignment) -> [Rational; 5] {
    std::array::from_fn(|k| {
        n.iter()
            .map(|(h, m)| h.element().i_k(k) * Rational::from(*m))
            .sum::<Rational>()
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct JunTerm {
    pub coefficient: Rational,
    pub z_power: i64,
    pub target: FjrwLabel,
}

/// Summand of the untwisted J-function for the assignment `n`: coefficient
/// `1 / prod n(h)!`, power `z^{1-|n|}`, and target with `i_k = <S_k>`.
pub fn j_un_term(n: &Assignment) -> JunTerm {
    let mut denom = rug_one();
    for m in n.values() {
        denom *= Rational::from(factorial(*m));
    }
    let s = insertion_sums(n);
    let v: [Rational; 5] = std::array::from_fn(|k| frac(&s[k]));
    let target = FjrwLabel::extended(GroupElement::from_i_values(&v).expect("target lies in G"));
    JunTerm { coefficient: denom.recip(), z_power: 1 - i64::from(size(n)), target }
}

fn rug_one() -> Rational {
    int(1)
}

/// Homogeneous polynomial in `(lambda, z)` stored by lambda power.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaZPoly {
    pub degree: u32,
    /// `coeffs[j]` multiplies `lambda^j z^{degree - j}`.
    pub coeffs: Vec<Rational>,
}

impl LambdaZPoly {
    pub fn one() -> Self {
        Self { degree: 0, coeffs: vec![int(1)] }
    }

    /// Multiply by `(lambda + c z)`.
    pub fn times_linear(&self, c: &Rational) -> Self {
        let mut out = vec![Rational::new(); self.coeffs.len() + 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            out[j + 1] += a;
            out[j] += Rational::from(a * c);
        }
        Self { degree: self.degree + 1, coeffs: out }
    }

    /// The non-equivariant limit: the coefficient of `lambda^0`, which sits at `z^degree`.
    pub fn at_lambda_zero(&self) -> (Rational, u32) {
        (self.coeffs[0].clone(), self.degree)
    }
}

/// Linear factors `c` of `M_n = prod (lambda + c z)`: for each `k` and
/// `0 <= b < floor(S_k)`, `c = 1/5 + <S_k> + b`.
pub fn modification_roots(n: &Assignment) -> Vec<Rational> {
    let s = insertion_sums(n);
    let mut roots = Vec::new();
    for sk in &s {
        let f = exact_kernel::rational::floor(sk).to_u32().expect("small floor");
        let fr = frac(sk);
        for b in 0..f {
            roots.push(rat(1, 5) + fr.clone() + Rational::from(b));
        }
    }
    roots
}

pub fn modification_factor(n: &Assignment) -> LambdaZPoly {
    modification_roots(n).iter().fold(LambdaZPoly::one(), |acc, c| acc.times_linear(c))
}

/// Non-equivariant contribution of `n`: `(coefficient, z power, target)`, or `None`
/// when the target is broad or the lambda-free part vanishes.
pub fn i_term(n: &Assignment) -> Option<JunTerm> {
    let j = j_un_term(n);
    if j.target.is_broad() {
        return None;
    }
    let (m0, deg) = modification_factor(n).at_lambda_zero();
    if m0 == 0 {
        return None;
    }
    Some(JunTerm {
        coefficient: j.coefficient * m0,
        z_power: j.z_power + i64::from(deg),
        target: j.target,
    })
}

/// Linear variables of the small slice: every narrow label of degree at most two except
/// `J^2`, which carries the main parameter `t`.
pub fn linear_labels() -> Vec<FjrwLabel> {
    low_degree_labels().into_iter().filter(|h| *h != j2()).collect()
}

fn add_term(series: &mut LgSeries, t_exp: usize, term: &JunTerm) {
    let v = LgVector::single(term.target, term.coefficient.clone());
    series.add_at(t_exp, &LgLaurent::monomial(term.z_power, v));
}

/// The non-equivariant I-function `sum_n M_n J^un_n` restricted to
/// `t phi_{J^2} + sum_h t^h phi_h`, to first order in the `t^h`.
pub fn i_fjrw(order: usize) -> FjrwIFunction {
    let mut base = LgSeries::zero('t', order);
    for n in 0..=order {
        let a: Assignment = [(j2(), n as u32)].into_iter().filter(|(_, m)| *m > 0).collect();
        if let Some(term) = i_term(&a) {
            add_term(&mut base, n, &term);
        }
    }
    let mut out = MultiSeries::new(base);
    for h in linear_labels() {
        let mut s = LgSeries::zero('t', order);
        for n in 0..=order {
            let mut a: Assignment = Assignment::new();
            if n > 0 {
                a.insert(j2(), n as u32);
            }
            *a.entry(h).or_insert(0) += 1;
            if let Some(term) = i_term(&a) {
                add_term(&mut s, n, &term);
            }
        }
        out.linear.insert(h, s);
    }
    out
}

/// Scalar coefficient series of `z^e phi_label` inside a series.
pub fn component(series: &LgSeries, z_exp: i64, label: &FjrwLabel) -> TSeries<Rational> {
    let coeffs = series
        .coeffs()
        .iter()
        .map(|c| c.get(z_exp).and_then(|v| v.get(label)).cloned().unwrap_or_default())
        .collect();
    TSeries::from_coeffs(series.param(), coeffs)
}

#[derive(Clone, Debug)]
pub struct FgDecomposition {
    pub f: TSeries<Rational>,
    pub g_j2: TSeries<Rational>,
    pub g_h: BTreeMap<FjrwLabel, TSeries<Rational>>,
}

fn shape_error(t_exp: usize, z_exp: i64, label: &FjrwLabel) -> FjrwError {
    FjrwError::Shape { t_exp, z_exp, label: label.to_string() }
}

/// Checks `I = z F phi_J + G + O(z^-1)` and splits off `F`, `G_{J^2}` and the `G_h`.
pub fn extract_f_g(i: &FjrwIFunction) -> Result<FgDecomposition, FjrwError> {
    for (n, c) in i.base.coeffs().iter().enumerate() {
        for (e, v) in c.iter() {
            for (l, _) in v.iter() {
                let ok = match e {
                    1 => *l == j1(),
                    0 => *l == j2(),
                    e => e < 0,
                };
                if !ok {
                    return Err(shape_error(n, e, l));
                }
            }
        }
    }
    let mut g_h = BTreeMap::new();
    for (h, s) in &i.linear {
        if *h == j1() {
            continue;
        }
        for (n, c) in s.coeffs().iter().enumerate() {
            for (e, v) in c.iter() {
                for (l, _) in v.iter() {
                    let ok = match e {
                        0 => l == h,
                        e => e < 0,
                    };
                    if !ok {
                        return Err(shape_error(n, e, l));
                    }
                }
            }
        }
        g_h.insert(*h, component(s, 0, h));
    }
    Ok(FgDecomposition { f: component(&i.base, 1, &j1()), g_j2: component(&i.base, 0, &j2()), g_h })
}

/// `tau(t) = G_{J^2}(t) / F(t)`.
pub fn mirror_map(i: &FjrwIFunction) -> Result<TSeries<Rational>, FjrwError> {
    let fg = extract_f_g(i)?;
    Ok(series_divide(&fg.g_j2, &fg.f)?)
}

/// `I_h = z d/dt^h I` at `t^h = 0`; for `h = J` this is `I` itself.
pub fn i_h_series(i: &FjrwIFunction, h: &FjrwLabel) -> Result<LgSeries, FjrwError> {
    let s = i.linear_part(h).ok_or(FjrwError::NotSmall(*h))?;
    let coeffs = s.coeffs().iter().map(|c| c.shift(1)).collect();
    Ok(TSeries::from_coeffs('t', coeffs))
}

/// `G_h`, with `G_J = F`.
pub fn g_of(fg: &FgDecomposition, h: &FjrwLabel) -> Result<TSeries<Rational>, FjrwError> {
    if *h == j1() {
        return Ok(fg.f.clone());
    }
    fg.g_h.get(h).cloned().ok_or(FjrwError::NotSmall(*h))
}

/// `J_h(tau, z) = I_h(t, z) / G_h(t)` re-expressed in the mirror coordinate.
pub fn j_h_series(i: &FjrwIFunction, h: &FjrwLabel) -> Result<LgSeries, FjrwError> {
    let fg = extract_f_g(i)?;
    let ih = i_h_series(i, h)?;
    let ratio = series_divide(&ih, &g_of(&fg, h)?)?;
    let tau = series_divide(&fg.g_j2, &fg.f)?;
    let inv = series_reversion(&tau)?;
    Ok(ratio.compose(&inv)?.rename('t'))
}

/// `I / F` in the mirror coordinate: the small J-function.
pub fn small_j_function(i: &FjrwIFunction) -> Result<LgSeries, FjrwError> {
    let fg = extract_f_g(i)?;
    let ratio = series_divide(&i.base, &fg.f)?;
    let tau = series_divide(&fg.g_j2, &fg.f)?;
    let inv = series_reversion(&tau)?;
    Ok(ratio.compose(&inv)?.rename('t'))
}

/// Verifies that the small J-function is `z phi_J + t phi_{J^2} + O(z^-1)`.
pub fn check_j_shape(j: &LgSeries) -> Result<(), FjrwError> {
    for (n, c) in j.coeffs().iter().enumerate() {
        for (e, v) in c.iter() {
            if e < 0 {
                continue;
            }
            let want: Option<(FjrwLabel, Rational)> = match (n, e) {
                (0, 1) => Some((j1(), int(1))),
                (1, 0) => Some((j2(), int(1))),
                _ => None,
            };
            let ok = match &want {
                Some((l, c)) => v.len() == 1 && v.get(l) == Some(c),
                None => v.is_empty(),
            };
            if !ok {
                let l = v.labels().next().map_or("?".to_string(), ToString::to_string);
                return Err(FjrwError::Shape { t_exp: n, z_exp: e, label: l });
            }
        }
        let required: &[(i64, FjrwLabel)] = match n {
            0 => &[(1, j1())],
            1 => &[(0, j2())],
            _ => &[],
        };
        for (e, l) in required {
            if c.get(*e).and_then(|v| v.get(l)).is_none() {
                return Err(FjrwError::Shape { t_exp: n, z_exp: *e, label: l.to_string() });
            }
        }
    }
    Ok(())
}

/// `J^un` summand evaluated from genus-zero correlators: the coefficient of
/// `prod (t^h)^{n(h)}` in `sum_h <t, ..., t, psi^{n-2} phi_h> phi^h / (n! z^{n-1})`.
pub fn j_un_brute_force(n: &Assignment) -> LgLaurent {
    let m = size(n);
    match m {
        0 => return LgLaurent::monomial(1, LgVector::basis(j1())),
        1 => {
            let (h, _) = n.iter().find(|(_, c)| **c > 0).expect("one insertion");
            return LgLaurent::monomial(0, LgVector::basis(*h));
        }
        _ => {}
    }
    let inputs: Vec<GroupElement> =
        n.iter().flat_map(|(h, c)| std::iter::repeat(h.element()).take(*c as usize)).collect();
    let mut multinomial = Rational::from(factorial(m));
    for c in n.values() {
        multinomial /= Rational::from(factorial(*c));
    }
    let weight = multinomial / Rational::from(factorial(m));
    let mut out = LgVector::default();
    for h in lg_state::narrow_sectors() {
        let corr = lg_state::untwisted_correlator(&inputs, m - 2, &h.element());
        if corr == 0 {
            continue;
        }
        // dual basis element phi^h = phi_{h^-1}
        let dual = lg_state::narrow_sectors()
            .into_iter()
            .find(|d| lg_state::fjrw_pairing(&h, d).map(|p| p == 1).unwrap_or(false))
            .expect("pairing is nondegenerate");
        out.add_term(dual, &Rational::from(&corr * &weight));
    }
    LgLaurent::monomial(1 - i64::from(m), out)
}

/// `j_un_term` as a Laurent coefficient, zero for broad targets.
pub fn j_un_laurent(n: &Assignment) -> LgLaurent {
    let j = j_un_term(n);
    if j.target.is_broad() {
        return LgLaurent::default();
    }
    LgLaurent::monomial(j.z_power, LgVector::single(j.target, j.coefficient))
}
