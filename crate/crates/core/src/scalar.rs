//! Exact rational scalars.
//!
//! All coefficients in the crate are arbitrary-precision rationals kept in lowest
//! terms with a positive denominator; `num-rational` maintains both invariants.

use num_bigint::BigInt;
use num_rational::BigRational;

/// The scalar field: arbitrary-precision rationals in lowest terms.
pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational scalar `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Zero.
pub fn zero() -> Scalar {
    num_traits::Zero::zero()
}

/// One.
pub fn one() -> Scalar {
    num_traits::One::one()
}

/// One half, the only non-integer constant the formulas need.
pub fn half() -> Scalar {
    ratio(1, 2)
}
