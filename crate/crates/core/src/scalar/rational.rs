use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ScalarError;

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let text = text.trim();
    let bad = || ScalarError::Parse(text.to_string());
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = text.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Canonical "p/q" text (or "p" for integers).
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal approximation for human-readable output only.
pub fn approx(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Splits a positive integer into `(s, d)` with `n = s^2 d` and `d` squarefree.
pub(crate) fn square_free_split(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut d = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    d *= m;
    (s, d)
}
