//! Theta-operators `sum c_{ij} p^i theta^j` (the parameter sits to the left of `theta`).

use std::collections::BTreeMap;
use std::fmt;

use exact_kernel::rational::{int, rat};
use exact_kernel::{NilpotentPoly, Rational, TSeries};

use crate::{a_params, GwComponent, GwError, GwSeries};

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaOperator {
    pub param: char,
    /// `(param power, theta power) -> coefficient`.
    pub terms: BTreeMap<(u32, u32), Rational>,
}

impl ThetaOperator {
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn param_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        let e = self.terms.entry((i, j)).or_default();
        *e += c;
        if *e == 0 {
            self.terms.remove(&(i, j));
        }
    }

    /// Applies the operator to `p^{x} sum_n c_n(x) p^{rho + n}`, returning the
    /// coefficients of `p^{x + rho + n}` for the same range of `n`.
    pub fn apply_with_offset(&self, rho: &Rational, coeffs: &[NilpotentPoly<Rational>]) -> Vec<NilpotentPoly<Rational>> {
        let order = coeffs.first().map_or(0, NilpotentPoly::order);
        let x = NilpotentPoly::<Rational>::variable(order);
        (0..coeffs.len())
            .map(|n| {
                let mut acc = NilpotentPoly::zero(order, &());
                for (&(i, j), c) in &self.terms {
                    let Some(src) = n.checked_sub(i as usize) else { continue };
                    let s = x.add_scalar(&(rho.clone() + Rational::from(src)));
                    acc = acc.add(&s.pow(j).mul(&coeffs[src]).scale(c));
                }
                acc
            })
            .collect()
    }

    /// Applies the operator to a power series with integer exponents.
    pub fn apply_series(&self, s: &TSeries<Rational>) -> TSeries<Rational> {
        let mut out = TSeries::zero(s.param(), s.order());
        for n in 0..=s.order() {
            let mut acc = Rational::new();
            for (&(i, j), c) in &self.terms {
                let Some(src) = n.checked_sub(i as usize) else { continue };
                acc += c.clone() * pow_rat(&Rational::from(src), j) * s.coeff(src).clone();
            }
            out.set(n, acc);
        }
        out
    }

    /// True when the operator kills the component through its truncation order.
    pub fn annihilates(&self, comp: &GwComponent) -> bool {
        self.apply_with_offset(&comp.rho(), &comp.coeffs).iter().all(NilpotentPoly::is_zero)
    }
}

fn pow_rat(r: &Rational, n: u32) -> Rational {
    let mut acc = int(1);
    for _ in 0..n {
        acc *= r;
    }
    acc
}

impl fmt::Display for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&(i, j), c) in self.terms.iter() {
            let sign = if *c < 0 { "-" } else { "+" };
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            write!(f, "{}", Rational::from(c.abs_ref()))?;
            match i {
                0 => {}
                1 => write!(f, "*{}", self.param)?,
                _ => write!(f, "*{}^{}", self.param, i)?,
            }
            match j {
                0 => {}
                1 => write!(f, "*θ")?,
                _ => write!(f, "*θ^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Expands `prod (theta + r)` into coefficients of `theta^j`.
fn expand(roots: &[Rational]) -> Vec<Rational> {
    let mut c = vec![int(1)];
    for r in roots {
        let mut next = vec![Rational::new(); c.len() + 1];
        for (j, cj) in c.iter().enumerate() {
            next[j + 1] += cj;
            next[j] += cj.clone() * r;
        }
        c = next;
    }
    c
}

fn eval_nil(roots: &[Rational], s: &NilpotentPoly<Rational>) -> NilpotentPoly<Rational> {
    roots.iter().fold(NilpotentPoly::constant(int(1), s.order()), |acc, r| acc.mul(&s.add_scalar(r)))
}

/// Checks `c_{n+1} prod_j (s + a_j) = c_n prod_m (5s + m)` with `s = x + rho + n`.
fn ratio_holds(series: &GwSeries, comp: &GwComponent) -> bool {
    let a = a_params(&series.sector.element());
    let order = comp.coeffs[0].order();
    let x = NilpotentPoly::<Rational>::variable(order);
    comp.coeffs.windows(2).enumerate().all(|(n, w)| {
        let s = x.add_scalar(&(comp.rho() + Rational::from(n)));
        let q = eval_nil(&a, &s);
        let p = (1..=5).fold(NilpotentPoly::constant(int(1), order), |acc, m| {
            acc.mul(&s.scale(&int(5)).add_scalar(&Rational::from(m)))
        });
        w[1].mul(&q).sub(&w[0].mul(&p)).is_zero()
    })
}

/// Derives the reduced `q`-operator `Q(theta) - c q P(theta)` annihilating every
/// component of the series.
///
/// The starting point is `prod_j (theta + a_j - 1) - q prod_m (5 theta + m)`. A factor
/// `theta + a - 1` on the left is cancelled against `5 theta + 5a` on the right (using
/// `q (5 theta + 5a) = 5 (theta + a - 1) q`) whenever the shorter operator still kills
/// the leading term of each component.
pub fn derive_recurrence(series: &GwSeries) -> Result<ThetaOperator, GwError> {
    for comp in &series.components {
        if !ratio_holds(series, comp) {
            return Err(GwError::NoRecurrence(series.sector.to_string()));
        }
    }
    let a = a_params(&series.sector.element());
    let mut q_roots: Vec<Rational> = a.iter().map(|aj| aj.clone() - int(1)).collect();
    let mut p_ms: Vec<i64> = (1..=5).collect();
    let mut scale = int(1);
    let mut j = 0;
    while j < q_roots.len() {
        let aj = q_roots[j].clone() + int(1);
        let m = aj.clone() * int(5);
        let pos = if *m.denom() == 1 { p_ms.iter().position(|&pm| Rational::from(pm) == m) } else { None };
        if let Some(pos) = pos {
            let mut trial = q_roots.clone();
            trial.remove(j);
            let ok = series.components.iter().all(|c| {
                let order = c.coeffs[0].order();
                let s = NilpotentPoly::<Rational>::variable(order).add_scalar(&c.rho());
                eval_nil(&trial, &s).mul(&c.coeffs[0]).is_zero()
            });
            if ok {
                q_roots = trial;
                p_ms.remove(pos);
                scale *= int(5);
                continue;
            }
        }
        j += 1;
    }
    let mut op = ThetaOperator { param: 'q', terms: BTreeMap::new() };
    for (jj, c) in expand(&q_roots).into_iter().enumerate() {
        op.add_term(0, jj as u32, c);
    }
    let p_roots: Vec<Rational> = p_ms.iter().map(|&m| rat(m, 5)).collect();
    let p_lead = pow_rat(&int(5), p_ms.len() as u32);
    for (jj, c) in expand(&p_roots).into_iter().enumerate() {
        op.add_term(1, jj as u32, -(c * &p_lead * &scale));
    }
    if !series.components.iter().all(|c| op.annihilates(c)) {
        return Err(GwError::NoRecurrence(series.sector.to_string()));
    }
    Ok(op)
}

/// Rewrites a `q`-operator in `t` via `q = t^{-5}`, `theta_q = -theta_t / 5`, then
/// multiplies on the left by `t^{5 deg}` so the coefficients are polynomial.
pub fn transport_operator(op: &ThetaOperator) -> ThetaOperator {
    let deg = op.param_degree();
    let mut out = ThetaOperator { param: 't', terms: BTreeMap::new() };
    for (&(i, j), c) in &op.terms {
        let factor = pow_rat(&rat(-1, 5), j);
        out.add_term(5 * (deg - i), j, c.clone() * factor);
    }
    out
}
