//! Small helpers around `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Q {
    Q::from_integer(n)
}

/// Parses `"a/b"` or `"a"`.
pub fn parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(Q::new(a, b))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn format(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `p`-adic valuation of a nonzero integer together with its `p`-free part.
pub fn split_int(p: &BigInt, n: &BigInt) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return (v, m);
        }
        m = q;
        v += 1;
    }
}

pub fn is_integer(q: &Q) -> bool {
    q.denom().is_one()
}

pub fn floor(q: &Q) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil(q: &Q) -> BigInt {
    q.ceil().to_integer()
}

pub fn abs(q: &Q) -> Q {
    q.abs()
}

/// Converts an integral rational to `i64`.
pub fn to_i64(q: &Q) -> Option<i64> {
    use num_traits::ToPrimitive;
    if is_integer(q) {
        q.numer().to_i64()
    } else {
        None
    }
}
