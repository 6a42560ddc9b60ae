use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational charge, written as a reduced fraction `"p/q"` with `q > 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Charge(BigRational);

impl Charge {
    pub fn zero() -> Self {
        Charge(BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Charge(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p / q`; panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Charge(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad charge literal {0:?}")]
pub struct ParseChargeError(String);

impl FromStr for Charge {
    type Err = ParseChargeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseChargeError(s.to_string());
        let (p, q) = s.split_once('/').ok_or_else(bad)?;
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Charge(BigRational::new(p, q)))
    }
}

impl Serialize for Charge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Charge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl Add for Charge {
    type Output = Charge;
    fn add(self, rhs: Charge) -> Charge {
        Charge(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Charge> for &'a Charge {
    type Output = Charge;
    fn add(self, rhs: &Charge) -> Charge {
        Charge(&self.0 + &rhs.0)
    }
}

impl Sub for Charge {
    type Output = Charge;
    fn sub(self, rhs: Charge) -> Charge {
        Charge(self.0 - rhs.0)
    }
}

impl Mul<i64> for Charge {
    type Output = Charge;
    fn mul(self, rhs: i64) -> Charge {
        Charge(self.0 * BigRational::from_integer(BigInt::from(rhs)))
    }
}

impl Div<i64> for Charge {
    type Output = Charge;
    fn div(self, rhs: i64) -> Charge {
        Charge(self.0 / BigRational::from_integer(BigInt::from(rhs)))
    }
}

impl Neg for Charge {
    type Output = Charge;
    fn neg(self) -> Charge {
        Charge(-self.0)
    }
}

impl AddAssign<&Charge> for Charge {
    fn add_assign(&mut self, rhs: &Charge) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Charge> for Charge {
    fn sub_assign(&mut self, rhs: &Charge) {
        self.0 -= &rhs.0;
    }
}

impl<'a> Sum<&'a Charge> for Charge {
    fn sum<I: Iterator<Item = &'a Charge>>(iter: I) -> Charge {
        let mut total = Charge::zero();
        for c in iter {
            total += c;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        assert_eq!(Charge::from_int(-12).to_string(), "-12/1");
        assert_eq!(Charge::ratio(10, 22).to_string(), "5/11");
        assert_eq!(Charge::ratio(3, -6).to_string(), "-1/2");
        assert_eq!("5/11".parse::<Charge>().unwrap(), Charge::ratio(5, 11));
        assert!("5".parse::<Charge>().is_err());
        assert!("1/0".parse::<Charge>().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let x = Charge::from_int(5) - Charge::ratio(5, 11) * 11;
        assert!(x.is_zero());
        let parts = [Charge::ratio(1, 4), Charge::ratio(1, 4), Charge::ratio(1, 2)];
        assert_eq!(parts.iter().sum::<Charge>(), Charge::from_int(1));
        assert_eq!(serde_json::to_string(&Charge::ratio(-1, 3)).unwrap(), r#""-1/3""#);
    }
}
