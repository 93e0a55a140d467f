use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact non-negative rational edge count `num / den`.
///
/// Coverage checks compare an integer count `d` against the threshold by
/// cross-multiplication (`d * den >= num`); no floating point is involved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Threshold {
    num: u64,
    den: u64,
}

impl Threshold {
    pub const ZERO: Threshold = Threshold { num: 0, den: 1 };

    /// Builds `num / den` in lowest terms.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::input("threshold denominator must be positive"));
        }
        let g = num.gcd(&den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn from_count(count: u64) -> Self {
        Self { num: count, den: 1 }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `count >= self`.
    pub fn is_met_by(&self, count: u64) -> bool {
        count as u128 * self.den as u128 >= self.num as u128
    }

    /// `count > self`.
    pub fn is_exceeded_by(&self, count: u64) -> bool {
        count as u128 * self.den as u128 > self.num as u128
    }

    /// `self * k`.
    pub fn times(&self, k: u64) -> Self {
        Self::new(self.num * k, self.den).expect("denominator stays positive")
    }

    /// `self / k` for `k > 0`.
    pub fn divided_by(&self, k: u64) -> Self {
        assert!(k > 0, "division by zero");
        Self::new(self.num, self.den * k).expect("denominator stays positive")
    }

    /// Smallest integer count meeting the threshold.
    pub fn ceil(&self) -> u64 {
        self.num.div_ceil(self.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_compares() {
        let t = Threshold::new(20, 9).unwrap();
        assert_eq!((t.numerator(), t.denominator()), (20, 9));
        assert!(!t.is_met_by(2));
        assert!(t.is_met_by(3));
        assert_eq!(t.ceil(), 3);
        let t = Threshold::new(6, 3).unwrap();
        assert_eq!(t, Threshold::from_count(2));
        assert!(t.is_met_by(2));
        assert!(!t.is_exceeded_by(2));
        assert!(Threshold::new(1, 0).is_err());
    }

    #[test]
    fn scaling() {
        let t = Threshold::new(5, 3).unwrap();
        assert_eq!(t.times(2), Threshold::new(10, 3).unwrap());
        assert_eq!(t.divided_by(2), Threshold::new(5, 6).unwrap());
        assert_eq!(
            Threshold::from_count(4).divided_by(2),
            Threshold::from_count(2)
        );
        assert_eq!(t.to_string(), "5/3");
        assert_eq!(Threshold::ZERO.to_string(), "0");
    }
}
