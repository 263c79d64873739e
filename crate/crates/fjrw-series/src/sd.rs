//! Formal algebra in the twisting parameters `s_0, s_1, ...` graded by
//! `deg s_d = d + 1`, with rational coefficients on monomials `x^a z^b`.

use std::collections::BTreeMap;

use exact_kernel::rational::{bernoulli_poly, binomial, factorial, int};
use exact_kernel::Rational;
use lg_state::FjrwLabel;

use crate::{modification_roots, Assignment};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    /// Exponent of `s_d` at index `d`.
    pub s: Vec<u32>,
    pub x: i64,
    pub z: i64,
}

impl Monomial {
    pub fn grade(&self) -> u32 {
        self.s.iter().enumerate().map(|(d, e)| e * (d as u32 + 1)).sum()
    }
}

/// Polynomial in the `s_d` truncated at total grade `cutoff`.
#[derive(Clone, Debug, PartialEq)]
pub struct SDFormal {
    cutoff: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl SDFormal {
    pub fn zero(cutoff: u32) -> Self {
        Self { cutoff, terms: BTreeMap::new() }
    }

    pub fn one(cutoff: u32) -> Self {
        let mut p = Self::zero(cutoff);
        p.add(Monomial { s: vec![0; cutoff as usize + 1], x: 0, z: 0 }, int(1));
        p
    }

    /// `c s_d x^a z^b`.
    pub fn s_term(cutoff: u32, d: usize, x: i64, z: i64, c: Rational) -> Self {
        let mut s = vec![0; cutoff as usize + 1];
        let mut p = Self::zero(cutoff);
        if d < s.len() {
            s[d] = 1;
            p.add(Monomial { s, x, z }, c);
        }
        p
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&mut self, m: Monomial, c: Rational) {
        if c == 0 || m.grade() > self.cutoff {
            return;
        }
        let e = self.terms.entry(m.clone()).or_default();
        *e += c;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add(m.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.scale(&int(-1)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.cutoff);
        for (m, c) in &self.terms {
            out.add(m.clone(), Rational::from(c * r));
        }
        out
    }

    pub fn times(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.cutoff);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let s: Vec<u32> = a.s.iter().zip(&b.s).map(|(x, y)| x + y).collect();
                let m = Monomial { s, x: a.x + b.x, z: a.z + b.z };
                out.add(m, Rational::from(ca * cb));
            }
        }
        out
    }

    /// `exp` of a series with no grade-zero part, truncated at the cutoff.
    ///
    /// # Panics
    /// Panics if a grade-zero term is present.
    pub fn exp(&self) -> Self {
        assert!(self.terms.keys().all(|m| m.grade() > 0), "exp needs a nilpotent argument");
        let mut out = Self::one(self.cutoff);
        let mut pw = Self::one(self.cutoff);
        for k in 1..=self.cutoff {
            pw = pw.times(self).scale(&Rational::from((1, k)));
            if pw.is_zero() {
                break;
            }
            out = out.plus(&pw);
        }
        out
    }

    /// `z -> -z`.
    pub fn reflect_z(&self) -> Self {
        let mut out = Self::zero(self.cutoff);
        for (m, c) in &self.terms {
            let c = if m.z % 2 == 0 { c.clone() } else { Rational::from(-c) };
            out.add(m.clone(), c);
        }
        out
    }

    /// `x -> x + y z` on nonnegative powers of `x`.
    ///
    /// # Panics
    /// Panics on a negative power of `x`.
    pub fn shift_x(&self, y: &Rational) -> Self {
        let mut out = Self::zero(self.cutoff);
        for (m, c) in &self.terms {
            assert!(m.x >= 0, "shift_x needs polynomial dependence on x");
            let a = m.x as u32;
            let mut ypow = int(1);
            for j in 0..=a {
                let coef = Rational::from(binomial(a, j)) * &ypow * c;
                out.add(Monomial { s: m.s.clone(), x: i64::from(a - j), z: m.z + i64::from(j) }, coef);
                ypow *= y;
            }
        }
        out
    }
}

/// `Delta_h(z) = prod_k exp(sum_d s_d B_{d+1}(i_k(h) + 1/5) z^d / (d+1)!)`.
pub fn delta_factor(h: &FjrwLabel, cutoff: u32) -> SDFormal {
    let mut exponent = SDFormal::zero(cutoff);
    for k in 0..5 {
        let theta = h.element().i_k(k) + Rational::from((1, 5));
        for d in 0..cutoff as usize {
            let c = bernoulli_poly(d as u32 + 1, &theta) / Rational::from(factorial(d as u32 + 1));
            exponent = exponent.plus(&SDFormal::s_term(cutoff, d, 0, d as i64, c));
        }
    }
    exponent.exp()
}

/// `G_y(x, z) = sum_{l, m} s_{l+m-1} B_m(y)/m! x^l/l! z^{m-1}`, with `s_{-1} = 0`,
/// keeping `s_d` for `d <= cutoff`.
pub fn g_function(y: &Rational, cutoff: u32) -> SDFormal {
    let mut out = SDFormal::zero(cutoff + 1);
    for d in 0..=cutoff as usize {
        for m in 0..=(d + 1) {
            let l = d + 1 - m;
            let c = bernoulli_poly(m as u32, y)
                / Rational::from(factorial(m as u32))
                / Rational::from(factorial(l as u32));
            out = out.plus(&SDFormal::s_term(cutoff + 1, d, l as i64, m as i64 - 1, c));
        }
    }
    out
}

/// `s(x) = sum_d s_d x^d / d!`.
pub fn s_series(cutoff: u32) -> SDFormal {
    let mut out = SDFormal::zero(cutoff + 1);
    for d in 0..=cutoff as usize {
        let c = Rational::from(factorial(d as u32)).recip();
        out = out.plus(&SDFormal::s_term(cutoff + 1, d, d as i64, 0, c));
    }
    out
}

fn mul_trunc(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    let mut out = vec![Rational::new(); n];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += Rational::from(x * y);
        }
    }
    out
}

fn exp_trunc(f: &[Rational]) -> Vec<Rational> {
    let n = f.len();
    let mut out = vec![Rational::new(); n];
    out[0] = int(1);
    let mut pw = out.clone();
    for k in 1..n {
        pw = mul_trunc(&pw, f);
        for (o, p) in out.iter_mut().zip(&pw) {
            *o += Rational::from(p / Rational::from(factorial(k as u32)));
        }
    }
    out
}

/// Reproduces `M_n` from the characteristic-class side: for each linear factor
/// `lambda + c z`, the exponent `-s_0 + sum_d (-1)^{d+1} s_d (c z)^d / d!` is specialized at
/// `s_0 = -ln lambda`, `s_d = (d-1)!/lambda^d`, exponentiated as a series in `u = z/lambda`
/// and compared with `prod (1 + c u)` through `u^order`.
pub fn verify_sd_specialization(n: &Assignment, order: usize) -> bool {
    let roots = modification_roots(n);
    let mut lhs = vec![Rational::new(); order + 1];
    lhs[0] = int(1);
    let mut rhs = lhs.clone();
    for c in &roots {
        // coefficient of u^d after substituting s_d = (d-1)!/lambda^d
        let mut expo = vec![Rational::new(); order + 1];
        let mut cp = int(1);
        for (d, slot) in expo.iter_mut().enumerate().skip(1) {
            cp *= c;
            let sd = Rational::from(factorial(d as u32 - 1));
            let sign = if d % 2 == 1 { int(1) } else { int(-1) };
            *slot = sign * sd * &cp / Rational::from(factorial(d as u32));
        }
        lhs = mul_trunc(&lhs, &exp_trunc(&expo));
        let mut lin = vec![Rational::new(); order + 1];
        lin[0] = int(1);
        if order >= 1 {
            lin[1] = c.clone();
        }
        rhs = mul_trunc(&rhs, &lin);
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{j1, j2};
    use exact_kernel::rational::rat;

    #[test]
    fn delta_s0_coefficient() {
        let d = delta_factor(&j1(), 6);
        let m = Monomial { s: vec![1, 0, 0, 0, 0, 0, 0], x: 0, z: 0 };
        assert_eq!(d.terms().get(&m), Some(&rat(-3, 2)));
        assert_eq!(delta_factor(&j1(), 0), SDFormal::one(0));
    }

    #[test]
    fn g_spot_value() {
        let g = g_function(&int(0), 4);
        let m = Monomial { s: vec![0, 1, 0, 0, 0, 0], x: 0, z: 1 };
        assert_eq!(g.terms().get(&m), Some(&rat(1, 12)));
    }

    #[test]
    fn sd_examples() {
        let a = |m: u32| -> Assignment { [(j2(), m)].into_iter().collect() };
        assert!(verify_sd_specialization(&a(2), 8));
        assert!(verify_sd_specialization(&a(5), 8));
        assert!(verify_sd_specialization(&a(10), 8));
    }
}
