//! The two scalar domains: exact rationals and big complex numbers.

use std::fmt;

use rug::Rational;

use crate::bigcomplex::BigComplex;

pub trait Scalar: Clone + fmt::Debug + Send + Sync {
    /// Data needed to build constants (the precision, for complex scalars).
    type Ctx: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn from_rational(r: &Rational, ctx: &Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn recip(&self) -> Option<Self>;
    /// `exp(self)` when representable in the domain.
    fn exp(&self) -> Option<Self>;

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_rational(&Rational::from(1), ctx)
    }
}

impl Scalar for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        Rational::new()
    }
    fn from_rational(r: &Rational, _: &()) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn plus(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn minus(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn times(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn negated(&self) -> Self {
        Rational::from(-self)
    }
    fn recip(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(self.clone().recip())
        }
    }
    fn exp(&self) -> Option<Self> {
        Scalar::is_zero(self).then(|| Rational::from(1))
    }
}

impl Scalar for BigComplex {
    type Ctx = u32;

    fn ctx(&self) -> u32 {
        self.digits()
    }
    fn zero(d: &u32) -> Self {
        BigComplex::zero(*d)
    }
    fn from_rational(r: &Rational, d: &u32) -> Self {
        BigComplex::from_rational(r, *d)
    }
    fn is_zero(&self) -> bool {
        BigComplex::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn recip(&self) -> Option<Self> {
        BigComplex::one(self.digits()).try_div(self).ok()
    }
    fn exp(&self) -> Option<Self> {
        Some(BigComplex::exp(self))
    }
}
