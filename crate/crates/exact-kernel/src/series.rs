//! Laurent polynomials in `z`, state vectors, and truncated power series in one
//! parameter with optional linear extra variables.

use std::collections::BTreeMap;
use std::fmt;

use rug::Rational;

use crate::nilpotent::NilpotentPoly;
use crate::KernelError;

/// Additive coefficient type with a canonical zero (`Default`).
pub trait Coefficient: Clone + fmt::Debug + Default + PartialEq + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, o: &Self);
    fn negated(&self) -> Self;
    fn scaled(&self, r: &Rational) -> Self;
}

impl Coefficient for Rational {
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn negated(&self) -> Self {
        Rational::from(-self)
    }
    fn scaled(&self, r: &Rational) -> Self {
        Rational::from(self * r)
    }
}

/// Sparse linear combination of basis labels.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<L: Ord + Clone, S> {
    terms: BTreeMap<L, S>,
}

impl<L: Ord + Clone, S> Default for StateVector<L, S> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<L: Ord + Clone + fmt::Debug + Send + Sync> StateVector<L, Rational> {
    pub fn basis(label: L) -> Self {
        Self::single(label, Rational::from(1))
    }

    pub fn single(label: L, c: Rational) -> Self {
        let mut v = Self::default();
        v.add_term(label, &c);
        v
    }

    pub fn add_term(&mut self, label: L, c: &Rational) {
        if Coefficient::is_zero(c) {
            return;
        }
        let e = self.terms.entry(label.clone()).or_default();
        *e += c;
        if Coefficient::is_zero(e) {
            self.terms.remove(&label);
        }
    }
}

impl<L: Ord + Clone, S> StateVector<L, S> {
    pub fn iter(&self) -> impl Iterator<Item = (&L, &S)> {
        self.terms.iter()
    }

    pub fn get(&self, l: &L) -> Option<&S> {
        self.terms.get(l)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> {
        self.terms.keys()
    }
}

impl<L: Ord + Clone + fmt::Debug + Send + Sync> Coefficient for StateVector<L, Rational> {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign(&mut self, o: &Self) {
        for (l, c) in &o.terms {
            self.add_term(l.clone(), c);
        }
    }
    fn negated(&self) -> Self {
        Self { terms: self.terms.iter().map(|(l, c)| (l.clone(), Rational::from(-c))).collect() }
    }
    fn scaled(&self, r: &Rational) -> Self {
        if Coefficient::is_zero(r) {
            return Self::default();
        }
        Self { terms: self.terms.iter().map(|(l, c)| (l.clone(), Rational::from(c * r))).collect() }
    }
}

/// Finite Laurent polynomial in `z`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct ZLaurent<C> {
    terms: BTreeMap<i64, C>,
}

impl<C> Default for ZLaurent<C> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<C: Coefficient> ZLaurent<C> {
    pub fn monomial(exp: i64, c: C) -> Self {
        let mut z = Self::default();
        z.add_term(exp, &c);
        z
    }

    pub fn add_term(&mut self, exp: i64, c: &C) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exp).or_default();
        e.add_assign(c);
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn get(&self, exp: i64) -> Option<&C> {
        self.terms.get(&exp)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitute `z -> -z`.
    pub fn reflect(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, if e % 2 == 0 { c.clone() } else { c.negated() }))
                .collect(),
        }
    }
}

impl<C: Coefficient> Coefficient for ZLaurent<C> {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign(&mut self, o: &Self) {
        for (e, c) in &o.terms {
            self.add_term(*e, c);
        }
    }
    fn negated(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c.negated())).collect() }
    }
    fn scaled(&self, r: &Rational) -> Self {
        if Coefficient::is_zero(r) {
            return Self::default();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c.scaled(r))).collect() }
    }
}

impl Coefficient for NilpotentPoly<Rational> {
    fn is_zero(&self) -> bool {
        NilpotentPoly::is_zero(self)
    }
    fn add_assign(&mut self, o: &Self) {
        let order = self.order().max(o.order());
        *self = self.with_order(order).add(&o.with_order(order));
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

impl Default for NilpotentPoly<Rational> {
    fn default() -> Self {
        NilpotentPoly::new(vec![Rational::new()])
    }
}

impl PartialEq for NilpotentPoly<Rational> {
    fn eq(&self, o: &Self) -> bool {
        let order = self.order().max(o.order());
        self.with_order(order).coeffs() == o.with_order(order).coeffs()
    }
}

/// Power series in one parameter truncated at order `N` (coefficients `0..=N`).
#[derive(Clone, Debug, PartialEq)]
pub struct TSeries<C> {
    param: char,
    coeffs: Vec<C>,
}

impl<C: Coefficient> TSeries<C> {
    pub fn zero(param: char, order: usize) -> Self {
        Self { param, coeffs: vec![C::default(); order + 1] }
    }

    pub fn from_coeffs(param: char, coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series needs a constant term slot");
        Self { param, coeffs }
    }

    pub fn param(&self) -> char {
        self.param
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn add_at(&mut self, n: usize, c: &C) {
        if n < self.coeffs.len() {
            self.coeffs[n].add_assign(c);
        }
    }

    pub fn set(&mut self, n: usize, c: C) {
        self.coeffs[n] = c;
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut out = Self::zero(self.param, order);
        for (n, c) in self.coeffs.iter().enumerate().take(order + 1) {
            out.coeffs[n] = c.clone();
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order().min(o.order());
        let mut out = self.truncate(order);
        for n in 0..=order {
            out.coeffs[n].add_assign(&o.coeffs[n]);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self { param: self.param, coeffs: self.coeffs.iter().map(C::negated).collect() }
    }

    /// Multiply by `param^k`, keeping the truncation order.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = Self::zero(self.param, self.order());
        for n in 0..=self.order() {
            if n + k <= self.order() {
                out.coeffs[n + k] = self.coeffs[n].clone();
            }
        }
        out
    }

    /// Product with a scalar series.
    pub fn mul_scalar_series(&self, s: &TSeries<Rational>) -> Self {
        let order = self.order().min(s.order());
        let mut out = Self::zero(self.param, order);
        for (i, a) in s.coeffs.iter().enumerate().take(order + 1) {
            if Coefficient::is_zero(a) {
                continue;
            }
            for j in 0..=(order - i) {
                if !self.coeffs[j].is_zero() {
                    out.coeffs[i + j].add_assign(&self.coeffs[j].scaled(a));
                }
            }
        }
        out
    }

    /// `self(inner(u))` for a scalar series `inner` with zero constant term.
    pub fn compose(&self, inner: &TSeries<Rational>) -> Result<Self, KernelError> {
        if !Coefficient::is_zero(&inner.coeffs[0]) {
            return Err(KernelError::NotInvertible);
        }
        let order = self.order().min(inner.order());
        let mut out = Self::zero(inner.param, order);
        let mut pw = TSeries::<Rational>::one(inner.param, order);
        for m in 0..=order {
            if !self.coeffs[m].is_zero() {
                for (n, c) in pw.coeffs.iter().enumerate() {
                    if !Coefficient::is_zero(c) {
                        out.coeffs[n].add_assign(&self.coeffs[m].scaled(c));
                    }
                }
            }
            pw = pw.mul_scalar_series(inner);
        }
        Ok(out)
    }

    pub fn rename(&self, param: char) -> Self {
        Self { param, coeffs: self.coeffs.clone() }
    }
}

impl TSeries<Rational> {
    pub fn one(param: char, order: usize) -> Self {
        let mut s = Self::zero(param, order);
        s.coeffs[0] = Rational::from(1);
        s
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.mul_scalar_series(o)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self, KernelError> {
        let c0 = self.coeffs[0].clone();
        if Coefficient::is_zero(&c0) {
            return Err(KernelError::NonUnit);
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out = Self::zero(self.param, n);
        out.coeffs[0] = inv0.clone();
        for k in 1..=n {
            let mut s = Rational::new();
            for j in 1..=k {
                s += Rational::from(&self.coeffs[j] * &out.coeffs[k - j]);
            }
            out.coeffs[k] = Rational::from(-s * &inv0);
        }
        Ok(out)
    }
}

/// `num / den` for a scalar denominator with invertible constant term.
pub fn series_divide<C: Coefficient>(
    num: &TSeries<C>,
    den: &TSeries<Rational>,
) -> Result<TSeries<C>, KernelError> {
    Ok(num.mul_scalar_series(&den.inverse()?))
}

/// Compositional inverse of a series with `s(0) = 0` and `s'(0) != 0`,
/// by Newton-free iterative solving of `s(r(u)) = u`.
pub fn series_reversion(s: &TSeries<Rational>) -> Result<TSeries<Rational>, KernelError> {
    if !Coefficient::is_zero(&s.coeffs[0]) || s.order() == 0 || Coefficient::is_zero(&s.coeffs[1]) {
        return Err(KernelError::NotInvertible);
    }
    let n = s.order();
    let a1inv = s.coeffs[1].clone().recip();
    let mut r = TSeries::<Rational>::zero(s.param, n);
    r.coeffs[1] = a1inv.clone();
    for k in 2..=n {
        // coefficient k of s(r) with r_k = 0 so far; r_k enters linearly via a_1 r_k
        let comp = s.compose(&r)?;
        let err = comp.coeffs[k].clone();
        r.coeffs[k] = Rational::from(-err * &a1inv);
    }
    Ok(r)
}

/// A `t`-series plus finitely many linear extra variables `t^k`.
/// Monomials of degree two or more in the extra variables are not representable.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiSeries<K: Ord + Clone, C> {
    pub base: TSeries<C>,
    pub linear: BTreeMap<K, TSeries<C>>,
}

impl<K: Ord + Clone + fmt::Debug, C: Coefficient> MultiSeries<K, C> {
    pub fn new(base: TSeries<C>) -> Self {
        Self { base, linear: BTreeMap::new() }
    }

    /// Adds `c * t^n * prod_k (t^k)^{e_k}`; errors on any quadratic monomial.
    pub fn add_monomial(&mut self, n: usize, extra: &[(K, u32)], c: &C) -> Result<(), KernelError> {
        let nonzero: Vec<&(K, u32)> = extra.iter().filter(|(_, e)| *e > 0).collect();
        match nonzero.as_slice() {
            [] => self.base.add_at(n, c),
            [(k, 1)] => {
                let order = self.base.order();
                let param = self.base.param();
                self.linear
                    .entry(k.clone())
                    .or_insert_with(|| TSeries::zero(param, order))
                    .add_at(n, c);
            }
            [(k, _)] => return Err(KernelError::Quadratic(format!("{k:?}"), format!("{k:?}"))),
            [(a, _), (b, _), ..] => {
                return Err(KernelError::Quadratic(format!("{a:?}"), format!("{b:?}")))
            }
        }
        Ok(())
    }

    pub fn linear_part(&self, k: &K) -> Option<&TSeries<C>> {
        self.linear.get(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ser(c: &[i64], n: usize) -> TSeries<Rational> {
        let mut s = TSeries::zero('t', n);
        for (i, v) in c.iter().enumerate() {
            s.set(i, int(*v));
        }
        s
    }

    #[test]
    fn geometric_division() {
        let one = ser(&[1], 6);
        let den = ser(&[1, -1], 6);
        let q = series_divide(&one, &den).unwrap();
        assert!(q.coeffs().iter().all(|c| *c == 1));
        assert!(matches!(series_divide(&one, &ser(&[0, 1], 6)), Err(KernelError::NonUnit)));
    }

    #[test]
    fn reversion_examples() {
        let t = ser(&[0, 1], 5);
        assert_eq!(series_reversion(&t).unwrap(), t);
        let two = ser(&[0, 2], 5);
        let mut half = TSeries::zero('t', 5);
        half.set(1, rat(1, 2));
        assert_eq!(series_reversion(&two).unwrap(), half);
        let r = series_reversion(&ser(&[0, 1, 1], 5)).unwrap();
        assert_eq!(r.coeffs(), &[int(0), int(1), int(-1), int(2), int(-5), int(14)]);
        assert!(matches!(series_reversion(&ser(&[0, 0, 1], 5)), Err(KernelError::NotInvertible)));
    }

    #[test]
    fn laurent_reflect_and_shift() {
        let mut z = ZLaurent::monomial(1, int(3));
        z.add_term(-2, &int(5));
        let r = z.reflect();
        assert_eq!(r.get(1), Some(&int(-3)));
        assert_eq!(r.get(-2), Some(&int(5)));
        assert_eq!(z.shift(2).min_exp(), Some(0));
        z.add_term(1, &int(-3));
        assert_eq!(z.max_exp(), Some(-2));
    }

    #[test]
    fn multiseries_rejects_quadratic() {
        let mut m: MultiSeries<u8, Rational> = MultiSeries::new(TSeries::zero('t', 3));
        assert!(m.add_monomial(1, &[(1, 1)], &int(2)).is_ok());
        assert!(m.add_monomial(1, &[(1, 2)], &int(2)).is_err());
        assert!(m.add_monomial(1, &[(1, 1), (2, 1)], &int(2)).is_err());
        assert_eq!(m.linear_part(&1).unwrap().coeff(1), &int(2));
    }
}
