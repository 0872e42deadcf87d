//! Exact dyadic rationals `num / 2^exp`.
//!
//! Canonical form keeps the numerator odd (or the exponent zero), so equality
//! is structural. Numerators stay in an `i128` fast path until they outgrow
//! it; grid sweeps over millions of points never touch heap allocation.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Integer backing for [`Dyadic`] numerators: `i128` until overflow, then `BigInt`.
#[derive(Clone, Debug)]
pub(crate) enum Int {
    Small(i128),
    Big(BigInt),
}

impl Int {
    fn big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Int::Small(v) => *v == 0,
            Int::Big(b) => b.is_zero(),
        }
    }

    fn is_even(&self) -> bool {
        match self {
            Int::Small(v) => v & 1 == 0,
            Int::Big(b) => !b.bit(0),
        }
    }

    fn shr1(&mut self) {
        match self {
            Int::Small(v) => *v >>= 1,
            Int::Big(b) => *b >>= 1,
        }
    }

    /// Bit length of |num|.
    fn bits(&self) -> u64 {
        match self {
            Int::Small(v) => 128 - v.unsigned_abs().leading_zeros() as u64,
            Int::Big(b) => b.bits(),
        }
    }

    fn bit(&self, i: u64) -> bool {
        match self {
            Int::Small(v) => {
                debug_assert!(*v >= 0);
                i < 127 && (v >> i) & 1 == 1
            }
            Int::Big(b) => b.bit(i),
        }
    }

    fn add(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => match a.checked_add(*b) {
                Some(v) => Int::Small(v),
                None => Int::Big(BigInt::from(*a) + BigInt::from(*b)),
            },
            _ => Int::Big(self.big() + other.big()),
        }
    }

    fn neg(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::Big(-b),
        }
    }

    fn shl(&self, sh: u32) -> Int {
        match self {
            Int::Small(v) => {
                if self.bits() + sh as u64 <= 126 {
                    Int::Small(v << sh)
                } else {
                    Int::Big(BigInt::from(*v) << sh)
                }
            }
            Int::Big(b) => Int::Big(b << sh),
        }
    }

    fn cmp(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.big().cmp(&other.big()),
        }
    }

    fn sign(&self) -> i8 {
        match self {
            Int::Small(v) => match v.cmp(&0) {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            },
            Int::Big(b) => {
                if b.is_zero() {
                    0
                } else if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a == b,
            _ => self.big() == other.big(),
        }
    }
}
impl Eq for Int {}

/// An exact dyadic rational `num / 2^exp` in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct Dyadic {
    num: Int,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: i128, exp: u32) -> Self {
        Self::canonical(Int::Small(num), exp)
    }

    pub fn from_bigint(num: BigInt, exp: u32) -> Self {
        Self::canonical(Int::Big(num), exp)
    }

    fn canonical(mut num: Int, mut exp: u32) -> Self {
        if num.is_zero() {
            return Dyadic {
                num: Int::Small(0),
                exp: 0,
            };
        }
        while exp > 0 && num.is_even() {
            num.shr1();
            exp -= 1;
        }
        Dyadic { num, exp }
    }

    pub fn zero() -> Self {
        Dyadic {
            num: Int::Small(0),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            num: Int::Small(1),
            exp: 0,
        }
    }

    pub fn half() -> Self {
        Dyadic {
            num: Int::Small(1),
            exp: 1,
        }
    }

    /// `2^{-e}`.
    pub fn pow2_neg(e: u32) -> Self {
        Dyadic {
            num: Int::Small(1),
            exp: e,
        }
    }

    /// `1 - 2^{-e}`, the bottom-edge endpoint family.
    pub fn one_minus_pow2_neg(e: u32) -> Self {
        Dyadic::one().sub(&Dyadic::pow2_neg(e))
    }

    /// Assembles `0.b_1 b_2 ... b_m` from binary fraction digits.
    pub fn from_bits(bits: &[u8], exp: u32) -> Self {
        debug_assert!(bits.len() <= exp as usize);
        if exp <= 126 {
            let mut num: i128 = 0;
            for (i, &b) in bits.iter().enumerate() {
                debug_assert!(b <= 1);
                if b == 1 {
                    num |= 1i128 << (exp as usize - 1 - i);
                }
            }
            Self::canonical(Int::Small(num), exp)
        } else {
            let mut num = BigInt::zero();
            for (i, &b) in bits.iter().enumerate() {
                if b == 1 {
                    num.set_bit(exp as u64 - 1 - i as u64, true);
                }
            }
            Self::canonical(Int::Big(num), exp)
        }
    }

    pub fn numerator(&self) -> BigInt {
        self.num.big()
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.sign() < 0
    }

    /// True for `2^{-e}` exactly (numerator one).
    pub fn is_unit_pow2(&self) -> bool {
        matches!(&self.num, Int::Small(1))
            || (matches!(&self.num, Int::Big(b) if *b == BigInt::from(1)))
    }

    /// Bit length of the numerator's magnitude.
    pub fn num_bits(&self) -> u64 {
        self.num.bits()
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let exp = self.exp.max(other.exp);
        let a = self.num.shl(exp - self.exp);
        let b = other.num.shl(exp - other.exp);
        Dyadic::canonical(a.add(&b), exp)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let exp = self.exp.max(other.exp);
        let a = self.num.shl(exp - self.exp);
        let b = other.num.shl(exp - other.exp).neg();
        Dyadic::canonical(a.add(&b), exp)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            num: self.num.neg(),
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Dyadic {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Multiplies by `2^sh` (negative `sh` divides).
    pub fn mul_pow2(&self, sh: i32) -> Dyadic {
        if self.num.is_zero() {
            return Dyadic::zero();
        }
        if sh >= 0 {
            let sh = sh as u32;
            if self.exp >= sh {
                Dyadic {
                    num: self.num.clone(),
                    exp: self.exp - sh,
                }
            } else {
                Dyadic::canonical(self.num.shl(sh - self.exp), 0)
            }
        } else {
            Dyadic {
                num: self.num.clone(),
                exp: self.exp + (-sh) as u32,
            }
        }
    }

    pub fn halve(&self) -> Dyadic {
        self.mul_pow2(-1)
    }

    pub fn double(&self) -> Dyadic {
        self.mul_pow2(1)
    }

    /// The i-th binary fraction digit (1-indexed) of a value in `[0, 1)`,
    /// using the terminating expansion padded with zeros.
    pub fn fraction_digit(&self, i: u64) -> u8 {
        debug_assert!(i >= 1);
        debug_assert!(self.num.sign() >= 0);
        if i > self.exp as u64 {
            return 0;
        }
        u8::from(self.num.bit(self.exp as u64 - i))
    }

    /// Digits `b_1 .. b_m` of the terminating expansion (value in `[0,1)`).
    pub fn fraction_digits(&self, m: u64) -> Vec<u8> {
        (1..=m).map(|i| self.fraction_digit(i)).collect()
    }

    pub fn to_f64(&self) -> f64 {
        match &self.num {
            Int::Small(v) => *v as f64 / 2f64.powi(self.exp as i32),
            Int::Big(b) => {
                use num_traits::ToPrimitive;
                b.to_f64().unwrap_or(f64::NAN) / 2f64.powi(self.exp as i32)
            }
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let exp = self.exp.max(other.exp);
        let a = self.num.shl(exp - self.exp);
        let b = other.num.shl(exp - other.exp);
        a.cmp(&b)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num.big(), self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num.big())
        } else {
            write!(f, "{}/2^{}", self.num.big(), self.exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_strips_twos() {
        let d = Dyadic::new(6, 4);
        assert_eq!(d.numerator(), BigInt::from(3));
        assert_eq!(d.exponent(), 3);
        assert_eq!(d, Dyadic::new(3, 3));
    }

    #[test]
    fn zero_has_exponent_zero() {
        let d = Dyadic::new(0, 17);
        assert!(d.is_zero());
        assert_eq!(d.exponent(), 0);
    }

    #[test]
    fn arithmetic() {
        let a = Dyadic::new(1, 2); // 1/4
        let b = Dyadic::new(1, 4); // 1/16
        assert_eq!(a.add(&b), Dyadic::new(5, 4));
        assert_eq!(a.sub(&b), Dyadic::new(3, 4));
        assert_eq!(a.double(), Dyadic::half());
        assert_eq!(a.halve(), Dyadic::new(1, 3));
        assert_eq!(Dyadic::one().sub(&a), Dyadic::new(3, 2));
    }

    #[test]
    fn ordering() {
        assert!(Dyadic::new(1, 2) < Dyadic::half());
        assert!(Dyadic::new(3, 2) > Dyadic::half());
        assert!(Dyadic::new(-1, 1) < Dyadic::zero());
    }

    #[test]
    fn fraction_digits_of_nine_sixteenths() {
        let d = Dyadic::new(9, 4);
        assert_eq!(d.fraction_digits(6), vec![1, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn from_bits_round_trip() {
        let d = Dyadic::from_bits(&[1, 0, 0, 1], 4);
        assert_eq!(d, Dyadic::new(9, 4));
        let big = Dyadic::from_bits(&[1; 200], 200);
        assert_eq!(big, Dyadic::one().sub(&Dyadic::pow2_neg(200)));
    }

    #[test]
    fn promotion_past_i128() {
        let tiny = Dyadic::pow2_neg(300);
        let one = Dyadic::one();
        let sum = one.add(&tiny);
        assert!(sum > one);
        assert_eq!(sum.sub(&tiny), one);
        assert_eq!(sum.exponent(), 300);
    }

    #[test]
    fn unit_pow2_detection() {
        assert!(Dyadic::new(1, 5).is_unit_pow2());
        assert!(!Dyadic::new(3, 5).is_unit_pow2());
        assert!(Dyadic::one().is_unit_pow2());
        assert!(!Dyadic::zero().is_unit_pow2());
    }

    #[test]
    fn one_minus_pow2() {
        assert_eq!(Dyadic::one_minus_pow2_neg(0), Dyadic::zero());
        assert_eq!(Dyadic::one_minus_pow2_neg(1), Dyadic::half());
        assert_eq!(Dyadic::one_minus_pow2_neg(2), Dyadic::new(3, 2));
    }
}
