//! Rational helpers on top of `num_rational::BigRational`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"n/d"` with `d > 0` after normalisation.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Residue of `n` modulo `p` in `[0, p)`.
pub fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Image of `q` in `F_p`, or `None` when `p` divides the denominator.
pub fn rational_mod(q: &Rational, p: u64) -> Option<u64> {
    let den = bigint_mod(q.denom(), p);
    if den == 0 {
        return None;
    }
    let num = bigint_mod(q.numer(), p);
    Some(super::modp::mul(num, super::modp::inv(den, p)?, p))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Natural logarithm of |q| as a floating estimate, valid far outside the `f64` range.
pub fn log_abs(q: &Rational) -> f64 {
    if q.is_zero() {
        return f64::NEG_INFINITY;
    }
    log_bigint(q.numer()) - log_bigint(q.denom())
}

pub fn log_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().unwrap_or(0.0);
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Closest `f64` to `q`, saturating outside the representable range.
pub fn to_f64(q: &Rational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let l = log_abs(q) / std::f64::consts::LN_2;
    let sign = if q.numer().sign() == Sign::Minus {
        -1.0
    } else {
        1.0
    };
    if l > 1000.0 {
        return sign * f64::INFINITY;
    }
    if l < -1000.0 {
        return sign * 0.0;
    }
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => sign * l.exp2(),
    }
}

/// Rational with denominator `2^bits` nearest to `q` (ties away from zero).
pub fn round_dyadic(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = q * Rational::from_integer(scale.clone());
    let rounded = scaled.round();
    Rational::new(rounded.to_integer(), scale)
}

/// Least common multiple of the denominators of `qs`.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(qs: I) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3/4", "12345678901234567890123/7"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn residues() {
        assert_eq!(rational_mod(&ratio(1, 2), 3), Some(2));
        assert_eq!(rational_mod(&ratio(-1, 1), 5), Some(4));
        assert_eq!(rational_mod(&ratio(1, 6), 3), None);
    }

    #[test]
    fn dyadic_rounding() {
        assert_eq!(round_dyadic(&ratio(1, 3), 2), ratio(1, 4));
        assert!((to_f64(&ratio(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
    }
}
