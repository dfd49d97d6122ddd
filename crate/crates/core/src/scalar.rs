//! Exact rational scalars.
//!
//! Every coefficient in the engine is a [`Scalar`], an arbitrary precision
//! rational kept in lowest terms with a positive denominator.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use crate::error::{Result, VosaError};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_small(r: Ratio<i64>) -> Scalar {
    Scalar::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// `(-1)^k` as a scalar.
pub fn sign(k: i64) -> Scalar {
    if k.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || VosaError::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(p, q))
        }
        None => Ok(Scalar::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

thread_local! {
    static BINOM_CACHE: RefCell<HashMap<(Ratio<i64>, u32), Scalar>> = RefCell::new(HashMap::new());
}

/// Generalized binomial coefficient `alpha (alpha-1) ... (alpha-s+1) / s!`.
pub fn gen_binomial(alpha: &Scalar, s: u32) -> Scalar {
    let mut acc = Scalar::one();
    for k in 0..s {
        acc = acc * (alpha - int(i64::from(k))) / int(i64::from(k) + 1);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// [`gen_binomial`] for small-denominator arguments, memoized per thread.
pub fn binom_small(alpha: Ratio<i64>, s: u32) -> Scalar {
    if s == 0 {
        return Scalar::one();
    }
    BINOM_CACHE.with(|cache| {
        if let Some(v) = cache.borrow().get(&(alpha, s)) {
            return v.clone();
        }
        let v = gen_binomial(&from_small(alpha), s);
        cache.borrow_mut().insert((alpha, s), v.clone());
        v
    })
}

/// Clears denominators of a list of rationals, returning the integer numerators
/// scaled by the lcm of denominators and divided by their content.
pub fn primitive_integers(values: &[Scalar]) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for v in values {
        lcm = lcm.lcm(v.denom());
    }
    let mut ints: Vec<BigInt> = values.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
    }
    ints
}
