//! Exact nonnegative rationals for density constants. Kept deliberately
//! tiny: reduced fractions over u128, no arithmetic beyond construction.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: u128,
    pub den: u128,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Rational {
            num: num / g,
            den: den / g,
        }
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Rational {
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
    use super::Rational;

    #[test]
    fn reduces_on_construction() {
        assert_eq!(Rational::new(2, 12), Rational::new(1, 6));
        assert_eq!(Rational::new(0, 5), Rational::new(0, 7));
        assert_eq!(Rational::new(10, 1).to_string(), "10");
        assert_eq!(Rational::new(1, 6).to_string(), "1/6");
    }
}
