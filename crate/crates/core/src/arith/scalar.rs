//! Coefficient traits shared by the polynomial and matrix types.
//!
//! Everything in [`crate::arith`] is generic over a [`Scalar`]; algorithms
//! that divide (Gaussian elimination, Euclid, Buchberger) additionally ask
//! for a [`Field`]. Exact work uses [`crate::Rational`]; `f64` is accepted
//! for quick numeric evaluation and sanity checks.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, NumAssignRef, NumRef, One, Signed, Zero};

/// A commutative ring element usable as a polynomial or matrix coefficient.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Send + Sync + NumRef + NumAssignRef + FromPrimitive + Neg<Output = Self> + 'static
{
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + Display
        + PartialEq
        + Send
        + Sync
        + NumRef
        + NumAssignRef
        + FromPrimitive
        + Neg<Output = T>
        + 'static
{
}

/// Scalars with exact (or at least total) division.
pub trait Field: Scalar {
    /// Multipliers `(a, b)` with `a * coeff == b * lead`, used to cancel a
    /// term during reduction as `a*f - b*g`. The default divides; exact
    /// types may keep coefficients integral instead.
    fn cancel_multipliers(lead: &Self, coeff: &Self) -> (Self, Self) {
        (Self::one(), coeff.clone() / lead)
    }

    /// Rescales a coefficient vector (leading entry first) to a canonical
    /// representative of its projective class.
    fn normalize_coeffs(coeffs: &mut [Self]) {
        if let Some(lead) = coeffs.first().cloned() {
            if !lead.is_zero() && !lead.is_one() {
                let inv = Self::one() / lead;
                for c in coeffs.iter_mut() {
                    *c *= &inv;
                }
            }
        }
    }

    /// Whether the value is zero; exact for exact fields.
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Field for f64 {}
impl Field for f32 {}

impl Field for BigRational {
    fn cancel_multipliers(lead: &Self, coeff: &Self) -> (Self, Self) {
        if lead.is_integer() && coeff.is_integer() {
            let g = lead.numer().gcd(coeff.numer());
            let mut a = BigRational::from_integer(lead.numer() / &g);
            let mut b = BigRational::from_integer(coeff.numer() / &g);
            if a.is_negative() {
                a = -a;
                b = -b;
            }
            (a, b)
        } else {
            (Self::one(), coeff.clone() / lead)
        }
    }

    /// Clears denominators and divides by the content, leaving integer
    /// coefficients with a positive leading entry.
    fn normalize_coeffs(coeffs: &mut [Self]) {
        if coeffs.is_empty() {
            return;
        }
        let mut den = BigInt::one();
        for c in coeffs.iter() {
            den = den.lcm(c.denom());
        }
        let mut nums: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut g = BigInt::zero();
        for n in &nums {
            g = g.gcd(n);
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            return;
        }
        if nums[0].is_negative() {
            g = -g;
        }
        for (c, n) in coeffs.iter_mut().zip(nums.iter_mut()) {
            *c = BigRational::from_integer(&*n / &g);
        }
    }
}

/// Sign of an exact quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed>(value: &T) -> Self {
        if value.is_zero() {
            Sign::Zero
        } else if value.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i32(v: i32) -> Self {
        match v.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i32(self.as_i32() * rhs.as_i32())
    }
}

impl Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}
