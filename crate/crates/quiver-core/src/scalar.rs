//! Exact scalar fields.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};

/// A field with exact arithmetic.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    /// Nonzero factor making the given entries a primitive integer vector,
    /// or `one` when the field has no such notion.
    fn content_scale<'a, I>(_entries: I) -> Self
    where
        I: Iterator<Item = &'a Self>,
        Self: 'a,
    {
        Self::one()
    }

    /// `"num/den"`, or `"num"` for integers.
    fn to_exact_string(&self) -> String;

    fn parse_exact(s: &str) -> Option<Self>;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone
        + Debug
        + Display
        + FromStr
        + Integer
        + Signed
        + FromPrimitive
        + Send
        + Sync
        + 'static,
{
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer out of range"))
    }

    fn content_scale<'a, I>(entries: I) -> Self
    where
        I: Iterator<Item = &'a Self>,
    {
        let entries: Vec<&Self> = entries.filter(|e| !e.is_zero()).collect();
        if entries.is_empty() {
            return Self::one();
        }
        let mut den_lcm = T::one();
        for e in &entries {
            den_lcm = den_lcm.lcm(e.denom());
        }
        let mut num_gcd = T::zero();
        for e in &entries {
            let n = e.numer().clone() * (den_lcm.clone() / e.denom().clone());
            num_gcd = num_gcd.gcd(&n);
        }
        Ratio::new(den_lcm, num_gcd)
    }

    fn to_exact_string(&self) -> String {
        if self.denom().is_one() {
            format!("{}", self.numer())
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn parse_exact(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = T::from_str(n.trim()).ok()?;
                let d = T::from_str(d.trim()).ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(Ratio::new(n, d))
                }
            }
            None => Some(Ratio::from_integer(T::from_str(s).ok()?)),
        }
    }
}

/// `(-1)^n` in any field.
pub fn sign<K: Field>(n: i64) -> K {
    if n.rem_euclid(2) == 0 {
        K::one()
    } else {
        -K::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};

    #[test]
    fn round_trip_strings() {
        let x = BigRational::parse_exact("-6/4").unwrap();
        assert_eq!(x.to_exact_string(), "-3/2");
        assert_eq!(BigRational::parse_exact("7").unwrap().to_exact_string(), "7");
        assert!(BigRational::parse_exact("1/0").is_none());
        assert_eq!(Rational64::parse_exact("2/6").unwrap(), Rational64::new(1, 3));
    }

    #[test]
    fn content_scale_is_primitive() {
        let v = [Rational64::new(2, 3), Rational64::new(4, 9), Rational64::new(0, 1)];
        let c = Rational64::content_scale(v.iter());
        let scaled: Vec<_> = v.iter().map(|x| *x * c).collect();
        assert_eq!(scaled, vec![Rational64::new(3, 1), Rational64::new(2, 1), Rational64::new(0, 1)]);
    }
}
