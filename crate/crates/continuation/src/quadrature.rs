//! Trapezoid quadrature on small circles around individual poles of the Mellin-Barnes
//! integrand, compared with the closed-form residue terms.

use cy_state::CySector;
use exact_kernel::bigcomplex::{gamma_complex, BigComplex};
use exact_kernel::rational::{int, rat};
use exact_kernel::Rational;
use gw_series::{a_params, components_of, shifted_sector};
use rayon::prelude::*;

use crate::{class_gamma_direct, class_present, class_series, ContinuationError};

pub const RADIUS: (i64, i64) = (1, 20);
pub const NODES: usize = 1 << 10;
/// Sample values: `x = H/z` on sectors with `H`, `z = 1`, `q = 1/10000`.
pub const SAMPLE_X: (i64, i64) = (1, 10);
pub const SAMPLE_Q: (i64, i64) = (1, 10000);
/// Two small `x` values used to read off the order of vanishing at integer poles.
pub const SCALING_X: [(i64, i64); 2] = [(1, 100_000_000), (2, 100_000_000)];

#[derive(Clone, Debug, PartialEq)]
pub enum ResidueKind {
    /// Pole of `Gamma(1+5x+5s)` surviving in the continued series.
    Included,
    /// Excluded class: the integrand is regular at `s = -x - m/5`.
    Vanishing,
    /// Excluded class `m = 5l` at the integer pole `s = -l`, whose contribution is
    /// `O(x^{dim+1})`, i.e. zero once `H^{dim+1} = 0`.
    IntegerPoleScaling { expected: u32, measured: f64 },
}

#[derive(Clone, Debug)]
pub struct ResidueCheck {
    pub m: u32,
    pub target: CySector,
    pub kind: ResidueKind,
    /// log10 of the (relative for `Included`) discrepancy.
    pub error_log10: f64,
    /// log10 of the change between `NODES/2` and `NODES` nodes, relative to the result.
    pub doubling_log10: f64,
}

fn r(p: (i64, i64)) -> Rational {
    rat(p.0, p.1)
}

fn c(q: &Rational, d: u32) -> BigComplex {
    BigComplex::from_rational(q, d)
}

/// Nodes `u_j = radius e^{2 pi i j / N}`.
fn nodes(digits: u32) -> Vec<BigComplex> {
    let rad = c(&r(RADIUS), digits);
    let tpi = BigComplex::two_pi_i(digits);
    (0..NODES)
        .map(|j| &rad * &tpi.scale(&rat(j as i64, NODES as i64)).exp())
        .collect()
}

/// `Gamma(base + scale u)` at every node, then shifted down by `n`.
struct GammaTable {
    base: Vec<BigComplex>,
    arg: Vec<BigComplex>,
}

impl GammaTable {
    fn new(base: &BigComplex, scale: i64, us: &[BigComplex]) -> Result<Self, ContinuationError> {
        let arg: Vec<BigComplex> = us.iter().map(|u| base + &u.scale(&int(scale))).collect();
        let base = arg.par_iter().map(gamma_complex).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { base, arg })
    }

    /// `Gamma(arg_j - n) = Gamma(arg_j) / prod_{i=1}^{n} (arg_j - i)`.
    fn shifted(&self, j: usize, n: u32) -> BigComplex {
        let d = self.arg[j].digits();
        let mut den = BigComplex::one(d);
        for i in 1..=n {
            den = &den * &(&self.arg[j] - &c(&Rational::from(i), d));
        }
        self.base[j].try_div(&den).expect("shifted Gamma argument avoids the poles")
    }
}

/// Integrand pieces independent of the kernel and `q`: the Gamma ratio
/// `Gamma(1+5x+5s) / prod_j Gamma(a_j+x+s)` for `s = center + u`, `center = base - l`.
struct RatioTables {
    num: GammaTable,
    den: Vec<(GammaTable, usize)>,
}

impl RatioTables {
    /// `num_base` is `1 + 5x + 5 base`, `den_base_j` is `a_j + x + base`.
    fn new(g: &CySector, x: &BigComplex, base: &BigComplex, us: &[BigComplex]) -> Result<Self, ContinuationError> {
        let d = x.digits();
        let five = c(&int(5), d);
        let num_base = &(&BigComplex::one(d) + &(&five * x)) + &(&five * base);
        let num = GammaTable::new(&num_base, 5, us)?;
        let mut grouped: Vec<(Rational, usize)> = Vec::new();
        for a in a_params(&g.element()) {
            match grouped.iter_mut().find(|(b, _)| *b == a) {
                Some(e) => e.1 += 1,
                None => grouped.push((a, 1)),
            }
        }
        let den = grouped
            .into_iter()
            .map(|(a, mult)| Ok((GammaTable::new(&(&(&c(&a, d) + x) + base), 1, us)?, mult)))
            .collect::<Result<Vec<_>, ContinuationError>>()?;
        Ok(Self { num, den })
    }

    fn ratio(&self, j: usize, l: u32) -> BigComplex {
        let mut v = self.num.shifted(j, 5 * l);
        for (t, mult) in &self.den {
            let g = t.shifted(j, l);
            for _ in 0..*mult {
                v = v.try_div(&g).expect("Gamma values are nonzero");
            }
        }
        v
    }
}

/// `prod_j Gamma(a'_j + x) / Gamma(1 + 5x)` at a scalar `x`.
fn prefactor_scalar(g: &CySector, rho5: u8, x: &BigComplex) -> Result<BigComplex, ContinuationError> {
    let d = x.digits();
    let mut p = BigComplex::one(d);
    for a in a_params(&shifted_sector(&g.element(), rho5)) {
        p = &p * &gamma_complex(&(&c(&a, d) + x))?;
    }
    let five_x = x.scale(&int(5));
    Ok(p.try_div(&gamma_complex(&(&BigComplex::one(d) + &five_x))?)?)
}

/// Scalar version of the class constant `(1/5) C_k(x) / Gamma(k)`.
pub fn class_constant_scalar(g: &CySector, rho5: u8, k: u8, x: &BigComplex) -> Result<BigComplex, ContinuationError> {
    let d = x.digits();
    let xi = BigComplex::xi_pow(i64::from(k) + i64::from(rho5), d);
    let tpi = BigComplex::two_pi_i(d);
    let den = &(&tpi.neg() * x).exp() - &xi;
    let mut v = (&xi * &tpi).try_div(&den)?;
    if k % 2 == 1 {
        v = v.neg();
    }
    let fact = exact_kernel::rational::factorial(u32::from(k) - 1);
    v = v.scale(&(int(1) / (Rational::from(fact) * int(5))));
    Ok(&v * &class_gamma_direct(g, k, d))
}

struct Circle {
    full: BigComplex,
    half: BigComplex,
}

impl Circle {
    fn doubling_log10(&self) -> f64 {
        let scale = self.full.log10_abs().max(0.0);
        (&self.full - &self.half).log10_abs() - scale
    }
}

/// `sum_j f(u_j) i u_j 2 pi / N` on all nodes and on the even-indexed half.
fn integrate(values: &[BigComplex], us: &[BigComplex]) -> Circle {
    let d = us[0].digits();
    let ipi2 = BigComplex::two_pi_i(d);
    let mut full = BigComplex::zero(d);
    let mut half = BigComplex::zero(d);
    for (j, (f, u)) in values.iter().zip(us).enumerate() {
        let w = f * u;
        full = &full + &w;
        if j % 2 == 0 {
            half = &half + &w;
        }
    }
    Circle {
        full: (&full * &ipi2).scale(&rat(1, NODES as i64)),
        half: (&half * &ipi2).scale(&rat(2, NODES as i64)),
    }
}

/// Evaluates the full integrand `kernel(s) q^{x+s} A(x) ratio(s)` on the circle around
/// `center = base - l` and integrates it.
#[allow(clippy::too_many_arguments)]
fn circle(
    tables: &RatioTables,
    us: &[BigComplex],
    base: &BigComplex,
    l: u32,
    rho: &Rational,
    x: &BigComplex,
    prefactor: &BigComplex,
    ln_q: &BigComplex,
) -> Circle {
    let d = x.digits();
    let tpi = BigComplex::two_pi_i(d);
    let center = base - &c(&Rational::from(l), d);
    let values: Vec<BigComplex> = (0..us.len())
        .into_par_iter()
        .map(|j| {
            let s = &center + &us[j];
            let kernel_den = &(&tpi * &(&s - &c(rho, d))).exp() - &BigComplex::one(d);
            let qpow = (&(x + &s) * ln_q).exp();
            let v = &(&qpow * prefactor) * &tables.ratio(j, l);
            v.try_div(&kernel_den).expect("node avoids the integer poles")
        })
        .collect();
    integrate(&values, us)
}

/// Residue checks for every `m <= m_max` and every component of `g`. Gamma values on
/// the circles are shared between `m` and `m + 5`.
pub fn verify_residues(g: &CySector, m_max: u32, digits: u32) -> Result<Vec<ResidueCheck>, ContinuationError> {
    let us = nodes(digits);
    let ln_q = c(&r(SAMPLE_Q), digits).ln();
    let tol = -f64::from(digits) / 2.0;
    let mut out = Vec::new();
    let comps = components_of(g);
    let sample_x = |target: &CySector| {
        if target.dimension() > 0 {
            c(&r(SAMPLE_X), digits)
        } else {
            BigComplex::zero(digits)
        }
    };
    for k in 0..5u8 {
        let ms: Vec<u32> = (0..=m_max).filter(|m| m % 5 == u32::from(k) && *m >= 1).collect();
        if ms.is_empty() {
            continue;
        }
        let present = class_present(g, k);
        for (rho5, target) in &comps {
            let x = sample_x(target);
            let rho = rat(i64::from(*rho5), 5);
            // circle around s = -x - m/5, written as base - l with base = -x - k/5
            let base = &x.neg() - &c(&rat(i64::from(k), 5), digits);
            let tables = RatioTables::new(g, &x, &base, &us)?;
            let pre = prefactor_scalar(g, *rho5, &x)?;
            let series = class_series(g, k.max(1), m_max as usize);
            for &m in &ms {
                let l = (m - u32::from(k)) / 5;
                let circ = circle(&tables, &us, &base, l, &rho, &x, &pre, &ln_q);
                let (kind, error_log10) = if present {
                    let t_m = (&ln_q.scale(&rat(-(m as i64), 5))).exp();
                    let term = &(&(&pre * &class_constant_scalar(g, *rho5, k, &x)?) * &t_m)
                        .scale(series.coeff(m as usize))
                        .clone();
                    let err = (&circ.full.neg() - term).log10_abs() - term.log10_abs().max(0.0);
                    (ResidueKind::Included, err)
                } else {
                    (ResidueKind::Vanishing, circ.full.log10_abs())
                };
                let doubling = circ.doubling_log10();
                if doubling > tol && doubling > error_log10 {
                    return Err(ContinuationError::Quadrature { m, delta: doubling });
                }
                out.push(ResidueCheck { m, target: *target, kind, error_log10, doubling_log10: doubling });
            }
            if k == 0 && target.dimension() > 0 && *rho5 == 0 {
                out.extend(integer_pole_scaling(g, *target, &ms, &us, &ln_q, digits)?);
            }
        }
    }
    Ok(out)
}

fn integer_pole_scaling(
    g: &CySector,
    target: CySector,
    ms: &[u32],
    us: &[BigComplex],
    ln_q: &BigComplex,
    digits: u32,
) -> Result<Vec<ResidueCheck>, ContinuationError> {
    let expected = target.dimension() as u32 + 1;
    let zero = BigComplex::zero(digits);
    let mut vals: Vec<Vec<Circle>> = Vec::new();
    for xs in SCALING_X {
        let x = c(&r(xs), digits);
        let tables = RatioTables::new(g, &x, &zero, us)?;
        let pre = prefactor_scalar(g, 0, &x)?;
        vals.push(ms.iter().map(|&m| circle(&tables, us, &zero, m / 5, &int(0), &x, &pre, ln_q)).collect());
    }
    let ratio = (SCALING_X[1].0 as f64 / SCALING_X[1].1 as f64) / (SCALING_X[0].0 as f64 / SCALING_X[0].1 as f64);
    Ok(ms
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let a = &vals[0][i];
            let b = &vals[1][i];
            let measured = (b.full.log10_abs() - a.full.log10_abs()) / ratio.log10();
            let doubling = a.doubling_log10().max(b.doubling_log10()) - a.full.log10_abs().min(0.0);
            ResidueCheck {
                m,
                target,
                kind: ResidueKind::IntegerPoleScaling { expected, measured },
                error_log10: (measured - f64::from(expected)).abs().log10(),
                doubling_log10: doubling,
            }
        })
        .collect())
}

/// Checks the single pole order `m` on every component of `g`.
pub fn verify_residue_numeric(g: &CySector, m: u32, digits: u32) -> Result<Vec<ResidueCheck>, ContinuationError> {
    Ok(verify_residues(g, m, digits)?.into_iter().filter(|c| c.m == m).collect())
}

/// Circle integral of `Gamma(5s + 1)` around `s = -m/5`, whose value is
/// `2 pi i (-(1/5) (-1)^m / Gamma(m))`.
pub fn gamma_residue_numeric(m: u32, digits: u32) -> Result<BigComplex, ContinuationError> {
    let us = nodes(digits);
    let base = c(&(int(1) - rat(i64::from(m), 1)), digits);
    let t = GammaTable::new(&base, 5, &us)?;
    let circ = integrate(&t.base, &us);
    Ok(circ.full.try_div(&BigComplex::two_pi_i(digits))?)
}
