//! Polynomials in a variable `H` with `H^(m+1) = 0`.

use rug::{Float, Rational};

use crate::bigcomplex::{self, bits_for, BigComplex};
use crate::scalar::Scalar;
use crate::KernelError;

#[derive(Clone, Debug)]
pub struct NilpotentPoly<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> NilpotentPoly<S> {
    /// Builds from `c_0..c_m`; the nilpotency order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "nilpotent polynomial needs at least c_0");
        Self { coeffs }
    }

    pub fn zero(order: usize, ctx: &S::Ctx) -> Self {
        Self { coeffs: (0..=order).map(|_| S::zero(ctx)).collect() }
    }

    pub fn constant(c: S, order: usize) -> Self {
        let ctx = c.ctx();
        let mut p = Self::zero(order, &ctx);
        p.coeffs[0] = c;
        p
    }

    /// `a + b H`.
    pub fn linear(a: S, b: S, order: usize) -> Self {
        let ctx = a.ctx();
        let mut p = Self::zero(order, &ctx);
        p.coeffs[0] = a;
        if order >= 1 {
            p.coeffs[1] = b;
        }
        p
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &S {
        &self.coeffs[i]
    }

    pub fn ctx(&self) -> S::Ctx {
        self.coeffs[0].ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    fn check(&self, o: &Self) -> Result<(), KernelError> {
        if self.order() != o.order() {
            return Err(KernelError::OrderMismatch(self.order(), o.order()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, KernelError> {
        self.check(o)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.plus(b)).collect() })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, KernelError> {
        self.check(o)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.minus(b)).collect() })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, KernelError> {
        self.check(o)?;
        let m = self.order();
        let ctx = self.ctx();
        let mut out: Vec<S> = (0..=m).map(|_| S::zero(&ctx)).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(m + 1 - i) {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Panicking product for same-order operands.
    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("nilpotent orders must agree")
    }

    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("nilpotent orders must agree")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("nilpotent orders must agree")
    }

    pub fn scale(&self, s: &S) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.times(s)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(S::negated).collect() }
    }

    pub fn add_scalar(&self, s: &S) -> Self {
        let mut p = self.clone();
        p.coeffs[0] = p.coeffs[0].plus(s);
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(S::one(&self.ctx()), self.order());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Same polynomial truncated or zero-padded to another order.
    pub fn with_order(&self, order: usize) -> Self {
        let ctx = self.ctx();
        Self {
            coeffs: (0..=order)
                .map(|i| self.coeffs.get(i).cloned().unwrap_or_else(|| S::zero(&ctx)))
                .collect(),
        }
    }

    /// Nilpotent part `self - c_0`.
    pub fn nilpotent_part(&self) -> Self {
        let mut p = self.clone();
        p.coeffs[0] = S::zero(&self.ctx());
        p
    }

    /// `sum_n f[n] N^n` where `N` is the nilpotent part of `self`.
    pub fn compose(&self, f: &[S]) -> Self {
        let n = self.nilpotent_part();
        let ctx = self.ctx();
        let mut acc = Self::zero(self.order(), &ctx);
        let mut pw = Self::constant(S::one(&ctx), self.order());
        for c in f.iter().take(self.order() + 1) {
            acc = acc.add(&pw.scale(c));
            pw = pw.mul(&n);
        }
        acc
    }

    pub fn inv(&self) -> Result<Self, KernelError> {
        let c0 = self.coeffs[0].recip().ok_or(KernelError::NonUnit)?;
        // 1/(c0 + N) = c0^{-1} sum (-N/c0)^k
        let m = self.order();
        let f: Vec<S> = (0..=m)
            .scan(c0.clone(), |acc, _| {
                let out = acc.clone();
                *acc = acc.times(&c0).negated();
                Some(out)
            })
            .collect();
        Ok(self.compose(&f))
    }
}

impl NilpotentPoly<Rational> {
    pub fn to_complex(&self, digits: u32) -> NilpotentPoly<BigComplex> {
        NilpotentPoly::new(self.coeffs.iter().map(|c| BigComplex::from_rational(c, digits)).collect())
    }

    /// `H` itself at the given order.
    pub fn variable(order: usize) -> Self {
        Self::linear(Rational::new(), Rational::from(1), order)
    }
}

/// `exp(x)`, a finite sum on the nilpotent part times `exp(c_0)`.
pub fn exp_nilpotent<S: Scalar>(x: &NilpotentPoly<S>) -> Result<NilpotentPoly<S>, KernelError> {
    let e0 = x.coeff(0).exp().ok_or(KernelError::NonNilpotentExp)?;
    let ctx = x.ctx();
    let mut f = Vec::with_capacity(x.order() + 1);
    let mut fact = Rational::from(1);
    for k in 0..=x.order() {
        if k > 0 {
            fact *= k as u32;
        }
        f.push(S::from_rational(&Rational::from(fact.clone().recip()), &ctx));
    }
    Ok(x.compose(&f).scale(&e0))
}

/// Taylor data of `Gamma(shift + x)` in the nilpotent part of `x`.
///
/// For `a = shift + c_0 > 0`,
/// `log Gamma(a + w) = log Gamma(a) + psi(a) w + sum_{n>=2} (-1)^n zeta(n, a) w^n / n`;
/// non-positive `a` is lifted by the recurrence `Gamma(a + w) = Gamma(a + 1 + w) / (a + w)`.
pub fn gamma_nilpotent(
    x: &NilpotentPoly<BigComplex>,
    shift: &Rational,
) -> Result<NilpotentPoly<BigComplex>, KernelError> {
    let digits = x.ctx();
    let prec = bits_for(digits);
    let c0 = x.coeff(0);
    if !c0.im().is_zero() {
        return Err(KernelError::ComplexShift);
    }
    let a = Float::with_val(prec, shift) + c0.re();
    if a.is_integer() && a <= 0 {
        return Err(KernelError::Pole(a.to_string()));
    }
    let m = x.order();
    let mut lift = 0u32;
    let mut a_pos = a.clone();
    while a_pos <= 0 {
        a_pos += 1;
        lift += 1;
    }
    let gamma_a = Float::with_val(prec, a_pos.gamma_ref());
    let mut log_series = vec![BigComplex::zero(digits)];
    if m >= 1 {
        log_series.push(BigComplex::from_float(&bigcomplex::digamma(&a_pos), digits));
    }
    for n in 2..=m as u32 {
        let z = bigcomplex::hurwitz_zeta(n, &a_pos, digits);
        let mut c = z / n;
        if n % 2 == 1 {
            c = -c;
        }
        log_series.push(BigComplex::from_float(&c, digits));
    }
    let nil = x.nilpotent_part();
    let mut out = exp_nilpotent(&nil.compose(&log_series))?
        .scale(&BigComplex::from_float(&gamma_a, digits));
    // divide by (a + j + N) for j = 0..lift-1
    for j in 0..lift {
        let base = Float::with_val(prec, &a + j);
        let factor = nil.add_scalar(&BigComplex::from_float(&base, digits));
        out = out.mul(&factor.inv()?);
    }
    Ok(out)
}
