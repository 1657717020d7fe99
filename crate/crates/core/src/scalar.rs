//! Coefficient fields.
//!
//! Everything in the engine is generic over [`Scalar`]. Exact work uses
//! [`BigRational`]; `f64` is accepted for quick numerical probes and
//! [`Dual`] carries a first-order tangent for exact directional derivatives.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

/// A commutative field of characteristic zero, as far as the engine needs one.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    /// `n / d` as a scalar.
    fn ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n).expect("integer in range") / Self::from_i64(d).expect("integer in range")
    }

    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer in range")
    }

    fn half() -> Self {
        Self::ratio(1, 2)
    }

    /// Sign flip controlled by a parity bit.
    fn signed(self, negative: bool) -> Self {
        if negative {
            -self
        } else {
            self
        }
    }
}

impl Scalar for BigRational {}
impl Scalar for f64 {}

/// Parse `p`, `-p` or `p/q` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// `num/den` with an explicit denominator, the wire format for coefficients.
pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Short human form: `3`, `-1/2`.
pub fn rational_short(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_is_negative(q: &BigRational) -> bool {
    q.is_negative()
}

/// Dual number `re + eps·ε` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<S> {
    pub re: S,
    pub eps: S,
}

impl<S: Scalar> Dual<S> {
    pub fn new(re: S, eps: S) -> Self {
        Dual { re, eps }
    }

    pub fn constant(re: S) -> Self {
        Dual { re, eps: S::zero() }
    }
}

impl<S: Scalar> fmt::Display for Dual<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}ε", self.re, self.eps)
    }
}

impl<S: Scalar> Zero for Dual<S> {
    fn zero() -> Self {
        Dual::constant(S::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl<S: Scalar> One for Dual<S> {
    fn one() -> Self {
        Dual::constant(S::one())
    }
}

impl<S: Scalar> Add for Dual<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.re + o.re, self.eps + o.eps)
    }
}

impl<S: Scalar> Sub for Dual<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.re - o.re, self.eps - o.eps)
    }
}

impl<S: Scalar> Mul for Dual<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let eps = self.re.clone() * o.eps + self.eps * o.re.clone();
        Dual::new(self.re * o.re, eps)
    }
}

impl<S: Scalar> Div for Dual<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let den = o.re.clone() * o.re.clone();
        let eps = (self.eps * o.re.clone() - self.re.clone() * o.eps) / den;
        Dual::new(self.re / o.re, eps)
    }
}

impl<S: Scalar> Neg for Dual<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<S: Scalar> AddAssign for Dual<S> {
    fn add_assign(&mut self, o: Self) {
        let v = std::mem::replace(self, Dual::zero());
        *self = v + o;
    }
}

impl<S: Scalar> FromPrimitive for Dual<S> {
    fn from_i64(n: i64) -> Option<Self> {
        S::from_i64(n).map(Dual::constant)
    }
    fn from_u64(n: u64) -> Option<Self> {
        S::from_u64(n).map(Dual::constant)
    }
    fn from_f64(n: f64) -> Option<Self> {
        S::from_f64(n).map(Dual::constant)
    }
}

impl<S: Scalar> Scalar for Dual<S> {}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;

    #[test]
    fn rational_parse_and_print() {
        let q = parse_rational("-6/4").unwrap();
        assert_eq!(rational_to_string(&q), "-3/2");
        assert_eq!(rational_short(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn dual_product_rule() {
        // (x^2)' at x = 3 is 6
        let x = Dual::new(Q::int(3), Q::one());
        let y = x.clone() * x;
        assert_eq!(y.re, Q::int(9));
        assert_eq!(y.eps, Q::int(6));
    }

    #[test]
    fn dual_quotient_rule() {
        let x = Dual::new(Q::int(2), Q::one());
        let y = Dual::<Q>::one() / x;
        assert_eq!(y.eps, Q::ratio(-1, 4));
    }

    #[test]
    fn half_is_exact() {
        assert_eq!(Q::half() + Q::half(), Q::one());
        assert_eq!(f64::half(), 0.5);
    }
}
