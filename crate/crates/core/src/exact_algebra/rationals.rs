use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use super::ring::{Field, Ring, SqrtField};

/// The field of rational numbers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// "num/den" rendering used in every report.
pub fn q_to_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn q_from_str(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

impl Ring for Rationals {
    type Elem = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn from_int(&self, n: i64) -> Q {
        qi(n)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn exact_div(&self, a: &Q, b: &Q) -> Option<Q> {
        self.div(a, b)
    }
    fn fmt_elem(&self, a: &Q) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            q_to_string(a)
        }
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &Q) -> Option<Q> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

impl SqrtField for Rationals {
    /// Nonnegative rational square root when one exists.
    fn sqrt(&self, a: &Q) -> Option<Q> {
        let n = isqrt_exact(a.numer())?;
        let d = isqrt_exact(a.denom())?;
        Some(BigRational::new(n, d))
    }
}

pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Q>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
