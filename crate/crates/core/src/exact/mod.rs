//! Exact arithmetic: rationals, rational matrices and integer polynomials.
//!
//! Nothing in this crate ever rounds. Rationals are arbitrary precision,
//! polynomial coefficients are machine integers with checked arithmetic
//! (the polynomials handled here have degree at most the ambient dimension
//! and small coefficients).

mod matrix;
mod poly;

pub use matrix::RatMatrix;
pub use poly::{format_factored, integer_root_split, poly_divides, IntPolynomial};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Reduced fraction over arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("integer does not fit in 64 bits")]
    Overflow,
    #[error("invalid rational literal `{0}`")]
    BadLiteral(String),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::BadLiteral(s.to_string());
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Scales a rational vector to the primitive integer vector on the same ray
/// (gcd 1, first nonzero entry positive). The zero vector maps to zeros.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    normalize_primitive(&mut ints);
    ints
}

/// Divides out the content and fixes the sign so the first nonzero entry is positive.
pub fn normalize_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if negate {
            *x = -&*x;
        }
    }
}

pub fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>, ExactError> {
    v.iter().map(|x| x.to_i64().ok_or(ExactError::Overflow)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_rational("6/4").unwrap(), Rational::new(3.into(), 2.into()));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![rat(0), Rational::new((-2).into(), 3.into()), rat(4)];
        let p = primitive_integer_vector(&v);
        assert_eq!(to_i64_vec(&p).unwrap(), vec![0, 1, -6]);
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            // reduced with positive denominator
            let s = &a * &b + &c;
            prop_assert!(s.denom().is_positive());
            prop_assert!(s.numer().gcd(s.denom()).is_one());
        }
    }
}
