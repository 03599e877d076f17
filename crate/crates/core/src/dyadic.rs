//! Exact non-negative dyadic rationals `p / 2^q`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A value `numerator / 2^log2_denominator`, always kept in lowest terms
/// (odd numerator, or zero with exponent zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyadicRational {
    numerator: u128,
    log2_denominator: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseDyadicError {
    #[error("invalid dyadic rational {0:?}")]
    Syntax(String),
    #[error("denominator {0} is not a power of two")]
    NotDyadic(u128),
}

const MAX_EXPONENT: u32 = 127;

impl DyadicRational {
    pub const ZERO: Self = Self {
        numerator: 0,
        log2_denominator: 0,
    };
    pub const ONE: Self = Self {
        numerator: 1,
        log2_denominator: 0,
    };

    pub fn new(numerator: u128, log2_denominator: u32) -> Self {
        assert!(
            log2_denominator <= MAX_EXPONENT,
            "denominator 2^{log2_denominator} exceeds 128-bit range"
        );
        Self {
            numerator,
            log2_denominator,
        }
        .normalized()
    }

    pub fn from_integer(value: u128) -> Self {
        Self::new(value, 0)
    }

    /// `2^-exponent`.
    pub fn pow2_neg(exponent: u32) -> Self {
        Self::new(1, exponent)
    }

    pub fn numerator(&self) -> u128 {
        self.numerator
    }

    pub fn log2_denominator(&self) -> u32 {
        self.log2_denominator
    }

    /// The denominator `2^q`.
    pub fn denominator(&self) -> u128 {
        1u128 << self.log2_denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / (self.log2_denominator as f64).exp2()
    }

    /// Divides by `2^exponent`.
    pub fn halve(self, exponent: u32) -> Self {
        if self.numerator == 0 {
            return self;
        }
        Self::new(self.numerator, self.log2_denominator + exponent)
    }

    /// If the value is `2^-r` for some `r ≥ 0`, returns `r`.
    pub fn neg_log2(&self) -> Option<u32> {
        (self.numerator == 1).then_some(self.log2_denominator)
    }

    pub fn checked_add(self, rhs: Self) -> Option<Self> {
        let (a, b, q) = Self::align(self, rhs)?;
        Some(Self::new(a.checked_add(b)?, q))
    }

    pub fn checked_sub(self, rhs: Self) -> Option<Self> {
        let (a, b, q) = Self::align(self, rhs)?;
        Some(Self::new(a.checked_sub(b)?, q))
    }

    pub fn checked_mul(self, rhs: Self) -> Option<Self> {
        let num = self.numerator.checked_mul(rhs.numerator)?;
        let q = self.log2_denominator + rhs.log2_denominator;
        if num == 0 {
            return Some(Self::ZERO);
        }
        (q <= MAX_EXPONENT).then(|| Self::new(num, q))
    }

    fn align(a: Self, b: Self) -> Option<(u128, u128, u32)> {
        let q = a.log2_denominator.max(b.log2_denominator);
        let lift = |x: Self| -> Option<u128> {
            let shift = q - x.log2_denominator;
            if x.numerator == 0 {
                Some(0)
            } else if x.numerator.leading_zeros() >= shift {
                Some(x.numerator << shift)
            } else {
                None
            }
        };
        Some((lift(a)?, lift(b)?, q))
    }

    fn normalized(mut self) -> Self {
        if self.numerator == 0 {
            self.log2_denominator = 0;
            return self;
        }
        let tz = self.numerator.trailing_zeros().min(self.log2_denominator);
        self.numerator >>= tz;
        self.log2_denominator -= tz;
        self
    }
}

impl Default for DyadicRational {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for DyadicRational {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs)
            .unwrap_or_else(|| panic!("dyadic overflow in {self} + {rhs}"))
    }
}

impl Sub for DyadicRational {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs)
            .unwrap_or_else(|| panic!("dyadic underflow or overflow in {self} - {rhs}"))
    }
}

impl Mul for DyadicRational {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs)
            .unwrap_or_else(|| panic!("dyadic overflow in {self} * {rhs}"))
    }
}

impl Sum for DyadicRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        // compare a/2^p with b/2^q via a·2^q vs b·2^p without overflow
        let (small, large, flip) = if self.log2_denominator <= other.log2_denominator {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let shift = large.log2_denominator - small.log2_denominator;
        let ord = if small.numerator != 0 && small.numerator.leading_zeros() < shift {
            Ordering::Greater
        } else {
            (small.numerator << shift).cmp(&large.numerator)
        };
        if flip {
            ord.reverse()
        } else {
            ord
        }
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.log2_denominator == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator())
        }
    }
}

impl FromStr for DyadicRational {
    type Err = ParseDyadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || ParseDyadicError::Syntax(s.to_string());
        let (num, den) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: u128 = num.parse().map_err(|_| syntax())?;
        let den: u128 = den.parse().map_err(|_| syntax())?;
        if !den.is_power_of_two() {
            return Err(ParseDyadicError::NotDyadic(den));
        }
        Ok(Self::new(num, den.trailing_zeros()))
    }
}
