//! Exact rationals and closed intervals over them.
//!
//! Distance certificates mix dyadic boxes (stream truncations) with odd
//! denominators (periodic points), so the bound arithmetic runs over general
//! rationals. Only the handful of operations the certificates need exist here.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dyadic::Dyadic;

/// An exact rational in lowest terms, denominator positive.
#[derive(Clone, PartialEq, Eq)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

impl Rational {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = Rational { num, den };
        r.reduce();
        r
    }

    pub fn from_i64(num: i64, den: i64) -> Self {
        Self::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn integer(v: i64) -> Self {
        Rational {
            num: BigInt::from(v),
            den: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    fn reduce(&mut self) {
        if self.den.is_negative() {
            self.num = -std::mem::take(&mut self.num);
            self.den = -std::mem::take(&mut self.den);
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num /= &g;
            self.den /= &g;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn add(&self, other: &Rational) -> Rational {
        Rational::new(
            &self.num * &other.den + &other.num * &self.den,
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        Rational::new(
            &self.num * &other.den - &other.num * &self.den,
            &self.den * &other.den,
        )
    }

    pub fn neg(&self) -> Rational {
        Rational {
            num: -self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn abs(&self) -> Rational {
        Rational {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        Rational::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn halve(&self) -> Rational {
        Rational::new(self.num.clone(), &self.den * 2)
    }

    pub fn clamp_nonnegative(&self) -> Rational {
        if self.is_negative() {
            Rational::zero()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.num.to_f64().unwrap_or(f64::NAN) / self.den.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<&Dyadic> for Rational {
    fn from(d: &Dyadic) -> Self {
        Rational {
            num: d.numerator(),
            den: BigInt::one() << d.exponent(),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// A closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    lo: Rational,
    hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted interval");
        RatInterval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        RatInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    /// `[approx, approx + 2^{-m}]` for an m-digit stream truncation.
    pub fn from_truncation(approx: &Dyadic, m: u32) -> Self {
        let lo = Rational::from(approx);
        let hi = Rational::from(&approx.add(&Dyadic::pow2_neg(m)));
        RatInterval { lo, hi }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: self.lo.add(&other.lo),
            hi: self.hi.add(&other.hi),
        }
    }

    /// Certified `|a - b|`: lower end is the gap (zero if the intervals
    /// overlap), upper end the farthest spread.
    pub fn abs_diff(&self, other: &RatInterval) -> RatInterval {
        let gap = self
            .lo
            .sub(&other.hi)
            .max(other.lo.sub(&self.hi))
            .clamp_nonnegative();
        let spread = self
            .hi
            .sub(&other.lo)
            .abs()
            .max(other.hi.sub(&self.lo).abs());
        RatInterval {
            lo: gap,
            hi: spread,
        }
    }

    /// Interval minimum: `[min(lo), min(hi)]`.
    pub fn min(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
        }
    }

    /// Interval maximum: `[max(lo), max(hi)]`.
    pub fn max(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Shifts both endpoints by an exact rational.
    pub fn translate(&self, by: &Rational) -> RatInterval {
        RatInterval {
            lo: self.lo.add(by),
            hi: self.hi.add(by),
        }
    }

    /// Whole interval certified `<= bound`.
    pub fn certainly_le(&self, bound: &Rational) -> bool {
        self.hi <= *bound
    }

    /// Whole interval certified `> bound`.
    pub fn certainly_gt(&self, bound: &Rational) -> bool {
        self.lo > *bound
    }
}
