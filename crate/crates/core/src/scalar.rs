//! Coefficient fields and the ring interface shared by series, elements and
//! operators.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, One, ToPrimitive, Zero};

/// An exact coefficient field.
///
/// Every structure in this crate is generic over the scalar. `BigRational`
/// is the default and the only choice that cannot overflow; `Rational64`
/// is available for small experiments where speed matters more.
pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug + Display + FromStr + Hash + Send + Sync + 'static {
    fn from_bigint(k: &BigInt) -> Self;

    fn from_i64(k: i64) -> Self {
        Self::from_bigint(&BigInt::from(k))
    }

    fn half() -> Self {
        Self::one() / Self::from_i64(2)
    }

    fn pow_u32(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for BigRational {
    fn from_bigint(k: &BigInt) -> Self {
        BigRational::from_integer(k.clone())
    }
}

impl Scalar for Rational64 {
    fn from_bigint(k: &BigInt) -> Self {
        let k = k.to_i64().expect("integer does not fit in Rational64");
        Rational64::from_integer(k)
    }
}

/// Minimal associative-ring interface used by [`SeriesTail`](crate::SeriesTail).
///
/// Zero and one are produced from an existing value because some rings
/// (Yangian elements, operators) carry context such as the superalgebra or
/// leg count that a bare `zero()` could not know.
pub trait Ring: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, k: &BigInt) -> Self;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    fn is_one(&self) -> bool {
        self.minus(&self.one_like()).is_zero()
    }
}

macro_rules! scalar_ring {
    ($t:ty) => {
        impl Ring for $t {
            fn zero_like(&self) -> Self {
                <$t>::zero()
            }
            fn one_like(&self) -> Self {
                <$t>::one()
            }
            fn is_zero(&self) -> bool {
                Zero::is_zero(self)
            }
            fn plus(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn times(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn negated(&self) -> Self {
                -self
            }
            fn scaled(&self, k: &BigInt) -> Self {
                self * <$t as Scalar>::from_bigint(k)
            }
        }
    };
}

scalar_ring!(BigRational);
scalar_ring!(Rational64);

/// Parses a rational in the textual form `-7/3` or `4`.
pub fn parse_scalar<S: Scalar>(text: &str) -> Option<S> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    S::from_str(t).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_form() {
        let a: BigRational = parse_scalar("-7/3").unwrap();
        assert_eq!(a.to_string(), "-7/3");
        let b: BigRational = parse_scalar("4").unwrap();
        assert_eq!(b.to_string(), "4");
        let c: BigRational = parse_scalar("6/4").unwrap();
        assert_eq!(c.to_string(), "3/2");
        assert!(parse_scalar::<BigRational>("x").is_none());
        assert!(parse_scalar::<BigRational>("").is_none());
    }

    #[test]
    fn half_and_powers() {
        let h = BigRational::half();
        assert_eq!(h.to_string(), "1/2");
        let t = BigRational::from_i64(-3);
        assert_eq!(t.pow_u32(3).to_string(), "-27");
        assert_eq!(t.pow_u32(0).to_string(), "1");
    }

    #[test]
    fn small_rationals_share_the_interface() {
        let a = Rational64::from_i64(5);
        assert_eq!(a.scaled(&BigInt::from(3)), Rational64::from_integer(15));
        assert!(Ring::is_zero(&a.minus(&a)));
    }
}
