//! Arbitrary-precision complex scalars and the transcendental constants used by the
//! continuation and the symplectic blocks.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::KernelError;

/// Smallest precision accepted anywhere in the workspace.
pub const MIN_DIGITS: u32 = 30;

/// Working bits for a decimal precision, with a small guard.
pub fn bits_for(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 24
}

#[derive(Clone, Debug)]
pub struct BigComplex {
    value: Complex,
    digits: u32,
}

impl BigComplex {
    pub fn zero(digits: u32) -> Self {
        Self { value: Complex::new(bits_for(digits)), digits }
    }

    pub fn one(digits: u32) -> Self {
        Self::from_rational(&Rational::from(1), digits)
    }

    pub fn from_rational(r: &Rational, digits: u32) -> Self {
        let prec = bits_for(digits);
        Self { value: Complex::with_val(prec, (Float::with_val(prec, r), 0)), digits }
    }

    pub fn from_float(re: &Float, digits: u32) -> Self {
        let prec = bits_for(digits);
        Self { value: Complex::with_val(prec, (re, 0)), digits }
    }

    pub fn from_parts(re: &Float, im: &Float, digits: u32) -> Self {
        Self { value: Complex::with_val(bits_for(digits), (re, im)), digits }
    }

    pub fn from_f64(re: f64, im: f64, digits: u32) -> Self {
        Self { value: Complex::with_val(bits_for(digits), (re, im)), digits }
    }

    pub fn from_complex(value: Complex, digits: u32) -> Self {
        let mut value = value;
        value.set_prec(bits_for(digits));
        Self { value, digits }
    }

    /// Checked constructor enforcing the workspace precision floor.
    pub fn checked_zero(digits: u32) -> Result<Self, KernelError> {
        if digits < MIN_DIGITS {
            return Err(KernelError::PrecisionTooLow(digits));
        }
        Ok(Self::zero(digits))
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn prec(&self) -> u32 {
        bits_for(self.digits)
    }

    pub fn re(&self) -> &Float {
        self.value.real()
    }

    pub fn im(&self) -> &Float {
        self.value.imag()
    }

    pub fn as_complex(&self) -> &Complex {
        &self.value
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.value.abs_ref())
    }

    /// `log10 |z|`, or `-inf` for zero.
    pub fn log10_abs(&self) -> f64 {
        let a = self.abs();
        if a.is_zero() {
            return f64::NEG_INFINITY;
        }
        a.log10().to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.value.real().is_zero() && self.value.imag().is_zero()
    }

    fn same(&self, o: &Self) -> Result<(), KernelError> {
        if self.digits != o.digits {
            return Err(KernelError::PrecisionMismatch(self.digits, o.digits));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, KernelError> {
        self.same(o)?;
        Ok(Self { value: Complex::with_val(self.prec(), &self.value + &o.value), digits: self.digits })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, KernelError> {
        self.same(o)?;
        Ok(Self { value: Complex::with_val(self.prec(), &self.value - &o.value), digits: self.digits })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, KernelError> {
        self.same(o)?;
        Ok(Self { value: Complex::with_val(self.prec(), &self.value * &o.value), digits: self.digits })
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, KernelError> {
        self.same(o)?;
        if o.is_zero() {
            return Err(KernelError::NonUnit);
        }
        Ok(Self { value: Complex::with_val(self.prec(), &self.value / &o.value), digits: self.digits })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let f = Float::with_val(self.prec(), r);
        Self { value: Complex::with_val(self.prec(), &self.value * &f), digits: self.digits }
    }

    pub fn neg(&self) -> Self {
        Self { value: Complex::with_val(self.prec(), -&self.value), digits: self.digits }
    }

    pub fn conj(&self) -> Self {
        Self { value: Complex::with_val(self.prec(), self.value.conj_ref()), digits: self.digits }
    }

    pub fn exp(&self) -> Self {
        Self { value: Complex::with_val(self.prec(), self.value.exp_ref()), digits: self.digits }
    }

    pub fn ln(&self) -> Self {
        Self { value: Complex::with_val(self.prec(), self.value.ln_ref()), digits: self.digits }
    }

    pub fn sin(&self) -> Self {
        Self { value: Complex::with_val(self.prec(), self.value.sin_ref()), digits: self.digits }
    }

    pub fn powi(&self, n: i64) -> Self {
        let v = Complex::with_val(self.prec(), (&self.value).pow(n));
        Self { value: v, digits: self.digits }
    }

    pub fn i(digits: u32) -> Self {
        Self { value: Complex::with_val(bits_for(digits), (0, 1)), digits }
    }

    pub fn pi(digits: u32) -> Self {
        Self::from_float(&pi(digits), digits)
    }

    pub fn two_pi_i(digits: u32) -> Self {
        let p = pi(digits) * 2u32;
        Self::from_parts(&Float::new(bits_for(digits)), &p, digits)
    }

    /// `xi^k` with `xi = exp(2 pi i / 5)`.
    pub fn xi_pow(k: i64, digits: u32) -> Self {
        let prec = bits_for(digits);
        let angle = pi(digits) * Float::with_val(prec, Rational::from((2 * k.rem_euclid(5), 5)));
        let (s, c) = angle.sin_cos(Float::new(prec));
        Self::from_parts(&c, &s, digits)
    }

    /// Decimal rendering `(re, im)` with `sig` significant digits.
    pub fn to_decimal_pair(&self, sig: usize) -> (String, String) {
        (
            self.re().to_string_radix(10, Some(sig)),
            self.im().to_string_radix(10, Some(sig)),
        )
    }

    pub fn parse_pair(re: &str, im: &str, digits: u32) -> Option<Self> {
        let prec = bits_for(digits);
        let r = Float::parse(re).ok()?;
        let i = Float::parse(im).ok()?;
        Some(Self::from_parts(&Float::with_val(prec, r), &Float::with_val(prec, i), digits))
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, i) = self.to_decimal_pair(20);
        write!(f, "({r}, {i})")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&BigComplex> for &BigComplex {
            type Output = BigComplex;
            /// # Panics
            /// Panics when the operands carry different precisions.
            fn $m(self, o: &BigComplex) -> BigComplex {
                self.$checked(o).expect("BigComplex arithmetic")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum ConstKey {
    Pi,
    Euler,
    Zeta(u32),
    Bernoulli(u32),
}

fn cache() -> &'static Mutex<HashMap<(ConstKey, u32), Float>> {
    static CACHE: OnceLock<Mutex<HashMap<(ConstKey, u32), Float>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(key: ConstKey, digits: u32, f: impl FnOnce(u32) -> Float) -> Float {
    let prec = bits_for(digits);
    if let Some(v) = cache().lock().expect("constant cache").get(&(key, prec)) {
        return v.clone();
    }
    let v = f(prec);
    cache().lock().expect("constant cache").insert((key, prec), v.clone());
    v
}

pub fn pi(digits: u32) -> Float {
    cached(ConstKey::Pi, digits, |p| Float::with_val(p, Constant::Pi))
}

pub fn euler_gamma(digits: u32) -> Float {
    cached(ConstKey::Euler, digits, |p| Float::with_val(p, Constant::Euler))
}

/// Riemann zeta at an integer `n >= 2`.
pub fn zeta(n: u32, digits: u32) -> Float {
    cached(ConstKey::Zeta(n), digits, |p| Float::with_val(p, Float::zeta_u(n)))
}

/// Bernoulli number `B_{2k}` as a float, from `zeta(2k)`.
fn bernoulli_even(k: u32, digits: u32) -> Float {
    cached(ConstKey::Bernoulli(k), digits, |p| {
        let twok = 2 * k;
        let fact = Float::with_val(p, rug::Integer::from(rug::Integer::factorial(twok)));
        let tp = Float::with_val(p, pi(digits) * 2u32);
        let mut b = Float::with_val(p, Float::zeta_u(twok)) * fact * 2u32 / tp.pow(twok);
        if k % 2 == 0 {
            b = -b;
        }
        b
    })
}

/// Real Gamma function at a rational argument.
pub fn gamma_rational(r: &Rational, digits: u32) -> Result<Float, KernelError> {
    if *r.denom() == 1 && *r <= 0 {
        return Err(KernelError::Pole(r.to_string()));
    }
    let prec = bits_for(digits);
    Ok(Float::with_val(prec, r).gamma())
}

/// `1/Gamma(r)`, which is zero at the poles.
pub fn recip_gamma_rational(r: &Rational, digits: u32) -> Float {
    match gamma_rational(r, digits) {
        Ok(g) => Float::with_val(bits_for(digits), 1) / g,
        Err(_) => Float::new(bits_for(digits)),
    }
}

pub fn digamma(a: &Float) -> Float {
    Float::with_val(a.prec(), a.digamma_ref())
}

/// Hurwitz zeta `sum_{n>=0} (n+a)^{-s}` for integer `s >= 2` and real `a > 0`,
/// by Euler-Maclaurin summation.
pub fn hurwitz_zeta(s: u32, a: &Float, digits: u32) -> Float {
    assert!(s >= 2, "hurwitz_zeta needs s >= 2");
    let prec = bits_for(digits);
    let n_terms = digits + 10;
    let k_terms = digits / 2 + 10;
    let mut acc = Float::new(prec);
    for n in 0..n_terms {
        let base = Float::with_val(prec, a + n);
        acc += Float::with_val(prec, base.pow(-(s as i32)));
    }
    let big = Float::with_val(prec, a + n_terms);
    acc += Float::with_val(prec, (&big).pow(1 - s as i32)) / (s - 1);
    acc += Float::with_val(prec, (&big).pow(-(s as i32))) / 2u32;
    // rising product s (s+1) ... (s+2k-2) / (2k)!
    let mut coef = Float::with_val(prec, s);
    let mut pw = Float::with_val(prec, (&big).pow(-(s as i32) - 1));
    let inv_big2 = Float::with_val(prec, (&big).pow(-2));
    for k in 1..=k_terms {
        let twok = 2 * k;
        let term = Float::with_val(prec, &coef * bernoulli_even(k, digits)) * &pw;
        let denom = Float::with_val(prec, rug::Integer::from(rug::Integer::factorial(twok)));
        acc += term / denom;
        coef *= Float::with_val(prec, (s + twok - 1) * (s + twok));
        pw *= &inv_big2;
    }
    acc
}

/// Complex Gamma by the Stirling series after an upward shift, with reflection for
/// `Re z < 1/2`.
pub fn gamma_complex(z: &BigComplex) -> Result<BigComplex, KernelError> {
    let digits = z.digits();
    let prec = z.prec();
    if z.im().is_zero() {
        let re = z.re();
        if re.is_integer() && *re <= 0 {
            return Err(KernelError::Pole(re.to_string()));
        }
    }
    if *z.re() < 0.5 {
        // Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        let one = BigComplex::one(digits);
        let w = &one - z;
        let gw = gamma_complex(&w)?;
        let s = (&BigComplex::pi(digits) * z).sin();
        return BigComplex::pi(digits).try_div(&(&s * &gw));
    }
    let shift = digits + 10;
    let mut prod = BigComplex::one(digits);
    let mut w = z.clone();
    for _ in 0..shift {
        prod = &prod * &w;
        w = &w + &BigComplex::one(digits);
    }
    let half = BigComplex::from_rational(&Rational::from((1, 2)), digits);
    let lnw = w.ln();
    let mut lg = &(&(&w - &half) * &lnw) - &w;
    let ln2pi = Float::with_val(prec, pi(digits) * 2u32).ln() / 2u32;
    lg = &lg + &BigComplex::from_float(&ln2pi, digits);
    let winv = BigComplex::one(digits).try_div(&w)?;
    let winv2 = &winv * &winv;
    let mut pw = winv.clone();
    for k in 1..=(digits / 2 + 20) {
        let b = bernoulli_even(k, digits);
        let c = Float::with_val(prec, b / ((2 * k) * (2 * k - 1)));
        lg = &lg + &(&pw * &BigComplex::from_float(&c, digits));
        pw = &pw * &winv2;
    }
    lg.exp().try_div(&prod)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_is_fifth_root() {
        let x = BigComplex::xi_pow(1, 50);
        let p = x.powi(5);
        assert!((&p - &BigComplex::one(50)).log10_abs() < -45.0);
    }

    #[test]
    fn precision_mismatch_is_error() {
        let a = BigComplex::one(40);
        let b = BigComplex::one(50);
        assert!(matches!(a.try_add(&b), Err(KernelError::PrecisionMismatch(40, 50))));
        assert!(BigComplex::checked_zero(20).is_err());
    }

    #[test]
    fn hurwitz_at_one_is_zeta() {
        let d = 60;
        let one = Float::with_val(bits_for(d), 1);
        for s in 2..6 {
            let diff = Float::with_val(bits_for(d), hurwitz_zeta(s, &one, d) - zeta(s, d));
            assert!(diff.abs().to_f64() < 1e-55, "s={s}");
        }
    }

    #[test]
    fn complex_gamma_matches_real() {
        let d = 60;
        let z = BigComplex::from_rational(&Rational::from((1, 5)), d);
        let g = gamma_complex(&z).unwrap();
        let r = gamma_rational(&Rational::from((1, 5)), d).unwrap();
        assert!((&g - &BigComplex::from_float(&r, d)).log10_abs() < -55.0);
        let z = BigComplex::from_rational(&Rational::from((-7, 5)), d);
        let g = gamma_complex(&z).unwrap();
        let r = gamma_rational(&Rational::from((-7, 5)), d).unwrap();
        assert!((&g - &BigComplex::from_float(&r, d)).log10_abs() < -55.0);
    }

    #[test]
    fn complex_gamma_recurrence() {
        let d = 50;
        let z = BigComplex::from_f64(0.3, 0.7, d);
        let one = BigComplex::one(d);
        let lhs = gamma_complex(&(&z + &one)).unwrap();
        let rhs = &z * &gamma_complex(&z).unwrap();
        assert!((&lhs - &rhs).log10_abs() < -45.0);
    }
}
