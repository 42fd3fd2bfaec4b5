//! Exact rational scalars and their textual form.
//!
//! Rationals serialize as `"p"` or `"p/q"`; this is the format used by every
//! JSON and CSV interface of the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// The scalar type used throughout the crate.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q` as a rational; panics on `q = 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational numerator: {s:?}")))?;
    let q: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational denominator: {s:?}")))?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in rational: {s:?}")));
    }
    Ok(Rat::new(p, q))
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest `f64`; only for display, never for decisions.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of leading digits for out-of-range operands.
        let n = r
            .numer()
            .to_f64()
            .unwrap_or(f64::MAX * r.numer().signum().to_f64().unwrap_or(1.0));
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Falling factorial `n (n-1) ... (n-k+1)`.
pub fn falling(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "3/2", "-22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        assert_eq!(rat_to_string(&parse_rat("4/2").unwrap()), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling(5, 0), BigInt::from(1));
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(falling(5, 5), factorial(5));
    }
}
