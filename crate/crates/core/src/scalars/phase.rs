use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A root of unity `exp(2πi·r)` stored as the exponent `r ∈ [0, 1)` in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase {
    num: u64,
    den: u64,
}

impl Phase {
    pub const ONE: Phase = Phase { num: 0, den: 1 };
    pub const MINUS_ONE: Phase = Phase { num: 1, den: 2 };

    /// The phase with exponent `num/den`, reduced modulo 1.
    pub fn new(num: i128, den: u64) -> Phase {
        assert!(den > 0, "phase denominator must be positive");
        let d = den as i128;
        let r = num.rem_euclid(d);
        let g = r.gcd(&d);
        Phase {
            num: (r / g) as u64,
            den: (d / g) as u64,
        }
    }

    /// `ζ_m^k` for the primitive root `ζ_m = exp(2πi/m)`.
    pub fn zeta(m: u64, k: i128) -> Phase {
        Phase::new(k, m)
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    /// Multiplicative order; the identity has order 1.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn inv(&self) -> Phase {
        Phase::new(-(self.num as i128), self.den)
    }

    pub fn pow(&self, k: i128) -> Phase {
        let e = (self.num as i128 * k.rem_euclid(self.den as i128)) % self.den as i128;
        Phase::new(e, self.den)
    }

    /// All `n`-th roots of this phase, ordered by increasing exponent.
    pub fn roots(&self, n: u64) -> Vec<Phase> {
        assert!(n > 0);
        let den = self.den * n;
        let mut out: Vec<Phase> = (0..n)
            .map(|k| Phase::new((self.num + k * self.den) as i128, den))
            .collect();
        out.sort();
        out
    }

    /// The `n`-th root with least nonnegative exponent.
    pub fn least_root(&self, n: u64) -> Phase {
        Phase::new(self.num as i128, self.den * n)
    }

    /// Exponent expressed over the denominator `n`; `None` when the order does not divide `n`.
    pub fn exponent_over(&self, n: u64) -> Option<u64> {
        if n % self.den == 0 {
            Some(self.num * (n / self.den))
        } else {
            None
        }
    }
}

/// Ordered by exponent value.
impl Ord for Phase {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Phase {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ONE
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        let l = self.den.lcm(&rhs.den);
        let a = self.num as i128 * (l / self.den) as i128;
        let b = rhs.num as i128 * (l / rhs.den) as i128;
        Phase::new(a + b, l)
    }
}

impl Div for Phase {
    type Output = Phase;
    fn div(self, rhs: Phase) -> Phase {
        self * rhs.inv()
    }
}

impl std::iter::Product for Phase {
    fn product<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ONE, |a, b| a * b)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({})", self)
    }
}

impl FromStr for Phase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Phase, Error> {
        let bad = || Error::Parse(format!("invalid phase {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i128 = p.trim().parse().map_err(|_| bad())?;
                let q: u64 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(Phase::new(p, q))
            }
            None => {
                let p: i128 = s.parse().map_err(|_| bad())?;
                Ok(Phase::new(p, 1))
            }
        }
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Phase, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Phase {
        s.parse().unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(p("1/2") * p("1/2"), Phase::ONE);
        assert_eq!(p("1/3") * p("1/3"), p("2/3"));
        assert_eq!(p("1/4") * p("5/6"), p("1/12"));
    }

    #[test]
    fn order_examples() {
        assert_eq!(p("1/2").order(), 2);
        assert_eq!(Phase::ONE.order(), 1);
        assert_eq!(p("3/12").order(), 4);
    }

    #[test]
    fn display_round_trip() {
        assert_eq!(Phase::ONE.to_string(), "0");
        assert_eq!(p("-1/4").to_string(), "3/4");
        assert_eq!(p("6/4").to_string(), "1/2");
        assert!("1/0".parse::<Phase>().is_err());
        assert!("x".parse::<Phase>().is_err());
    }

    #[test]
    fn roots_of_minus_one() {
        let r = Phase::MINUS_ONE.roots(2);
        assert_eq!(r, vec![p("1/4"), p("3/4")]);
        assert_eq!(Phase::ONE.least_root(3), Phase::ONE);
        assert_eq!(
            Phase::ONE.roots(4),
            vec![Phase::ONE, p("1/4"), p("1/2"), p("3/4")]
        );
        for q in Phase::new(2, 5).roots(3) {
            assert_eq!(q.pow(3), Phase::new(2, 5));
        }
    }
}
