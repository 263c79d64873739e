//! Rational helpers on top of `rug::Rational`.

use rug::{Integer, Rational};

/// Shorthand for `n/d`.
///
/// # Panics
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::from((n, d))
}

pub fn int(n: i64) -> Rational {
    Rational::from(n)
}

/// Largest integer not exceeding `x`.
pub fn floor(x: &Rational) -> Integer {
    x.clone().floor().into_numer_denom().0
}

/// Fractional part `<x> = x - floor(x)`, always in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x.clone() - Rational::from(floor(x))
}

/// `a (a+1) ... (a+n-1)`, equal to one for `n = 0`.
pub fn rising_factorial(a: &Rational, n: u32) -> Rational {
    let mut acc = Rational::from(1);
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += 1;
    }
    acc
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b = Vec::with_capacity(n + 1);
    b.push(Rational::from(1));
    for m in 1..=n {
        let mut s = Rational::from(0);
        for (k, bk) in b.iter().enumerate() {
            s += Rational::from(binomial(m as u32 + 1, k as u32)) * bk;
        }
        b.push(-s / Rational::from(m as i64 + 1));
    }
    b
}

/// `B_d(x) = sum_k C(d,k) B_k x^(d-k)`, so that `B_1(x) = x - 1/2`.
pub fn bernoulli_poly(d: u32, x: &Rational) -> Rational {
    let b = bernoulli_numbers(d as usize);
    let mut acc = Rational::from(0);
    let mut xp = Rational::from(1);
    for k in (0..=d).rev() {
        acc += Rational::from(binomial(d, k)) * &b[k as usize] * &xp;
        xp *= x;
    }
    acc
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    s.trim().parse::<Rational>().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rising_examples() {
        assert_eq!(rising_factorial(&rat(1, 5), 1), rat(1, 5));
        assert_eq!(rising_factorial(&int(1), 5), int(120));
        assert_eq!(rising_factorial(&rat(1, 5), 2), rat(6, 25));
        assert_eq!(rising_factorial(&rat(-3, 7), 0), int(1));
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli_poly(1, &int(0)), rat(-1, 2));
        assert_eq!(bernoulli_poly(2, &rat(1, 5)), rat(1, 150));
        assert_eq!(bernoulli_poly(3, &rat(1, 2)), int(0));
        let b = bernoulli_numbers(12);
        assert_eq!(b[12], rat(-691, 2730));
        assert_eq!(b[3], int(0));
    }

    #[test]
    fn floor_and_frac() {
        assert_eq!(floor(&rat(-1, 5)), -1);
        assert_eq!(frac(&rat(-1, 5)), rat(4, 5));
        assert_eq!(frac(&rat(7, 5)), rat(2, 5));
        assert_eq!(parse_rational("-3/15"), Some(rat(-1, 5)));
    }
}
