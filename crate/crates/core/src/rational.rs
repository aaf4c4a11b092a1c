//! Exact rational arithmetic over 64-bit components with checked overflow.
//!
//! Every structural predicate in this crate (commutation, centrality, gauge
//! invariance, sector shifts) reduces to rational arithmetic, so a wrong
//! answer from silent wraparound would corrupt the algebra. All operations
//! here either return the exact reduced result or fail with
//! [`OverflowError`]. Intermediate products are taken in `i128`, which holds
//! any single product or cross sum of `i64` components exactly; the error
//! fires only when the *reduced* result does not fit back into `i64`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

/// Arithmetic result no longer representable with 64-bit components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("rational overflow: result does not fit in 64-bit components")]
pub struct OverflowError;

/// A reduced fraction `num/den` with `den > 0` and `gcd(|num|, den) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Reduce an `i128` fraction and narrow it back to `i64` components.
fn narrow(mut num: i128, mut den: i128) -> Result<Rational, OverflowError> {
    debug_assert!(den != 0);
    if den < 0 {
        num = -num;
        den = -den;
    }
    if num == 0 {
        return Ok(Rational { num: 0, den: 1 });
    }
    let g = gcd_i128(num, den);
    num /= g;
    den /= g;
    // i64::MIN is rejected so that negation is always total.
    if num > i64::MAX as i128 || num < -(i64::MAX as i128) || den > i64::MAX as i128 {
        return Err(OverflowError);
    }
    Ok(Rational {
        num: num as i64,
        den: den as i64,
    })
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Build `num/den` in reduced form. Fails on `den = 0` or components
    /// that cannot be reduced into range (e.g. `i64::MIN`).
    pub fn new(num: i64, den: i64) -> Result<Self, OverflowError> {
        if den == 0 {
            return Err(OverflowError);
        }
        narrow(num as i128, den as i128)
    }

    pub fn from_integer(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn neg(&self) -> Self {
        // Safe: |num| <= i64::MAX by construction.
        Rational {
            num: -self.num,
            den: self.den,
        }
    }

    pub fn abs(&self) -> Self {
        Rational {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, OverflowError> {
        let num = self.num as i128 * other.den as i128 + other.num as i128 * self.den as i128;
        narrow(num, self.den as i128 * other.den as i128)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, OverflowError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, OverflowError> {
        narrow(
            self.num as i128 * other.num as i128,
            self.den as i128 * other.den as i128,
        )
    }

    /// Multiply by an integer.
    pub fn mul_int(&self, k: i64) -> Result<Self, OverflowError> {
        narrow(self.num as i128 * k as i128, self.den as i128)
    }

    /// Exact division; fails on division by zero or overflow.
    pub fn div(&self, other: &Self) -> Result<Self, OverflowError> {
        if other.num == 0 {
            return Err(OverflowError);
        }
        narrow(
            self.num as i128 * other.den as i128,
            self.den as i128 * other.num as i128,
        )
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> i64 {
        self.num.div_euclid(self.den)
    }

    /// The representative of `self mod 1` in `[0, 1)`. Never overflows:
    /// the result has the same denominator and a smaller numerator.
    pub fn mod_one(&self) -> Self {
        Rational {
            num: self.num.rem_euclid(self.den),
            den: self.den,
        }
    }

    /// `(self * other) mod 1`, reducing before narrowing so that only the
    /// fractional part must fit in 64 bits.
    pub fn mul_mod_one(&self, other: &Self) -> Result<Self, OverflowError> {
        let den = self.den as i128 * other.den as i128;
        let num = (self.num as i128 * other.num as i128).rem_euclid(den);
        narrow(num, den)
    }

    /// True iff `self * other` is an integer, decided without narrowing.
    pub fn mul_is_integer(&self, other: &Self) -> bool {
        (self.num as i128 * other.num as i128) % (self.den as i128 * other.den as i128) == 0
    }

    /// True iff `self / other` is an integer; `other` must be nonzero.
    /// Decided in `i128`, so it cannot fail on representable inputs.
    pub fn div_is_integer(&self, other: &Self) -> bool {
        debug_assert!(!other.is_zero());
        let num = self.num as i128 * other.den as i128;
        let den = self.den as i128 * other.num as i128;
        num % den == 0
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Denominators are positive; cross products are exact in i128.
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
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

/// Parse error for the `p/q` literal syntax.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("denominator must be a positive integer, got `{0}`")]
    BadDenominator(String),
    #[error("rational overflow in literal")]
    Overflow,
}

impl FromStr for Rational {
    type Err = RationalParseError;

    /// Accepts `int` or `int/posint`, e.g. `-3/4`, `5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(RationalParseError::Empty);
        }
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: i64 = num_str
            .parse()
            .map_err(|_| RationalParseError::BadInteger(num_str.to_string()))?;
        let den: i64 = match den_str {
            Some(d) => {
                let v: i64 = d
                    .parse()
                    .map_err(|_| RationalParseError::BadDenominator(d.to_string()))?;
                if v <= 0 {
                    return Err(RationalParseError::BadDenominator(d.to_string()));
                }
                v
            }
            None => 1,
        };
        Rational::new(num, den).map_err(|_| RationalParseError::Overflow)
    }
}

/// An exact phase `e^{2πi·r}` with `r ∈ ℚ ∩ [0, 1)`.
///
/// Commutation phases of rationally-labeled Weyl operators always land in
/// ℚ/ℤ, so they compose exactly here and only become floating point at the
/// final conversion to a complex factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TurnPhase {
    turns: Rational,
}

impl TurnPhase {
    pub const ZERO: TurnPhase = TurnPhase {
        turns: Rational::ZERO,
    };

    pub fn from_turns(r: Rational) -> Self {
        TurnPhase { turns: r.mod_one() }
    }

    pub fn turns(&self) -> Rational {
        self.turns
    }

    pub fn is_trivial(&self) -> bool {
        self.turns.is_zero()
    }

    pub fn compose(&self, other: &Self) -> Self {
        // Numerators are below the denominators, so the sum cannot overflow.
        let num = self.turns.num as i128 * other.turns.den as i128
            + other.turns.num as i128 * self.turns.den as i128;
        let den = self.turns.den as i128 * other.turns.den as i128;
        let reduced = narrow(num.rem_euclid(den), den)
            .expect("mod-1 reduction of in-range turns cannot overflow");
        TurnPhase { turns: reduced }
    }

    pub fn inverse(&self) -> Self {
        TurnPhase {
            turns: self.turns.neg().mod_one(),
        }
    }

    /// The complex factor `e^{2πi·r}`. Quarter turns are returned exactly so
    /// that half-integer commutation phases stay bit-exact.
    pub fn to_complex(&self) -> Complex64 {
        let quarter = self.turns.num.checked_mul(4);
        if let Some(q) = quarter {
            if q % self.turns.den == 0 {
                return match q / self.turns.den {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    3 => Complex64::new(0.0, -1.0),
                    _ => unreachable!("turns reduced to [0,1)"),
                };
            }
        }
        Complex64::from_polar(1.0, std::f64::consts::TAU * self.turns.to_f64())
    }
}

impl fmt::Display for TurnPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.turns)
    }
}
