//! Elements of Q_p with tracked precision: valuations, angular components,
//! subgroup membership and Hensel root extraction.
//!
//! A number is either an exact rational or an approximation
//! `p^v · u` with the unit `u` known modulo `p^prec`. Exact numbers stay
//! exact under field operations; approximations only arise from roots.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::gamma::Gamma;
use crate::rat::{self, Q};

/// Default number of unit digits used when an exact value must be truncated.
pub const DEFAULT_PRECISION: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("insufficient precision: need {needed} digits, have {available}")]
    InsufficientPrecision { needed: u32, available: u32 },
    #[error("zero argument")]
    ZeroArgument,
    #[error("argument is not in the domain of the root map")]
    NotInDomain,
    #[error("division by zero")]
    DivisionByZero,
    #[error("primes differ: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

type Result<T> = std::result::Result<T, PadicError>;

#[derive(Clone, Debug)]
enum Repr {
    Exact(Q),
    Approx { v: i64, unit: BigInt, prec: u32 },
}

/// An element of Q_p.
#[derive(Clone, Debug)]
pub struct PadicNumber {
    p: u64,
    repr: Repr,
}

/// The subgroups used throughout: N-th powers, `Q_{N,M}`, `U_{e,n}` and `D^M R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    /// Nonzero N-th powers together with 0.
    P { n: u64 },
    /// `{0} ∪ ⋃_k p^{kN}(1 + p^M Z_p)`.
    Q { n: u64, m: u32 },
    /// e-th roots of unity times `1 + p^n Z_p`.
    U { e: u64, n: u32 },
    /// `Z_p ∩ Q_{1,M}`.
    D { m: u32 },
}

pub fn pow_p(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

/// `v_p(n)` for a positive integer.
pub fn vp_u64(p: u64, mut n: u64) -> u32 {
    assert!(n > 0 && p > 1);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

fn modpow(base: &BigInt, exp: u64, m: &BigInt) -> BigInt {
    base.mod_floor(m).modpow(&BigInt::from(exp), m)
}

impl PadicNumber {
    pub fn from_rational(p: u64, q: Q) -> Self {
        PadicNumber { p, repr: Repr::Exact(q) }
    }

    pub fn from_int(p: u64, n: i64) -> Self {
        Self::from_rational(p, rat::int(n))
    }

    pub fn zero(p: u64) -> Self {
        Self::from_rational(p, Q::zero())
    }

    pub fn one(p: u64) -> Self {
        Self::from_int(p, 1)
    }

    /// `p^k` (exact).
    pub fn p_power(p: u64, k: i64) -> Self {
        let base = Q::from_integer(BigInt::from(p));
        let q = if k >= 0 {
            num_traits::pow(base, k as usize)
        } else {
            num_traits::pow(base, (-k) as usize).recip()
        };
        Self::from_rational(p, q)
    }

    /// Builds `p^v · unit` with the unit known modulo `p^prec`.
    pub fn from_parts(p: u64, v: i64, unit: BigInt, prec: u32) -> Result<Self> {
        if prec == 0 {
            return Err(PadicError::InsufficientPrecision { needed: 1, available: 0 });
        }
        let m = pow_p(p, prec);
        let unit = unit.mod_floor(&m);
        if (&unit % BigInt::from(p)).is_zero() {
            return Err(PadicError::InvalidParameter(format!("unit {unit} divisible by {p}")));
        }
        Ok(PadicNumber { p, repr: Repr::Approx { v, unit, prec } })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.repr, Repr::Exact(q) if q.is_zero())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.repr, Repr::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match &self.repr {
            Repr::Exact(q) => Some(q),
            Repr::Approx { .. } => None,
        }
    }

    /// Relative precision: `None` for exact values.
    pub fn precision(&self) -> Option<u32> {
        match self.repr {
            Repr::Exact(_) => None,
            Repr::Approx { prec, .. } => Some(prec),
        }
    }

    pub fn valuation(&self) -> Gamma {
        match &self.repr {
            Repr::Exact(q) if q.is_zero() => Gamma::Inf,
            Repr::Exact(q) => {
                let p = BigInt::from(self.p);
                let (a, _) = rat::split_int(&p, q.numer());
                let (b, _) = rat::split_int(&p, q.denom());
                Gamma::Fin(a - b)
            }
            Repr::Approx { v, .. } => Gamma::Fin(*v),
        }
    }

    fn finite_valuation(&self) -> Option<i64> {
        match self.valuation() {
            Gamma::Fin(v) => Some(v),
            Gamma::Inf => None,
        }
    }

    /// Unit part modulo `p^k`, in `[1, p^k)`.
    pub fn unit_residue(&self, k: u32) -> Result<BigInt> {
        let m = pow_p(self.p, k);
        match &self.repr {
            Repr::Exact(q) => {
                if q.is_zero() {
                    return Err(PadicError::ZeroArgument);
                }
                let p = BigInt::from(self.p);
                let (_, a) = rat::split_int(&p, q.numer());
                let (_, b) = rat::split_int(&p, q.denom());
                let inv = mod_inverse(&b, &m).expect("p-free denominator is invertible");
                Ok((a * inv).mod_floor(&m))
            }
            Repr::Approx { unit, prec, .. } => {
                if k > *prec {
                    Err(PadicError::InsufficientPrecision { needed: k, available: *prec })
                } else {
                    Ok(unit.mod_floor(&m))
                }
            }
        }
    }

    /// The angular component `ac_M`: the unit residue modulo `p^M`.
    pub fn ac(&self, m: u32) -> Result<BigInt> {
        if self.is_zero() {
            return Err(PadicError::ZeroArgument);
        }
        self.unit_residue(m)
    }

    /// Truncation to `prec` unit digits (zero stays exact).
    pub fn truncate(&self, prec: u32) -> Result<Self> {
        match self.finite_valuation() {
            None => Ok(self.clone()),
            Some(v) => {
                let k = match self.precision() {
                    Some(have) => prec.min(have),
                    None => prec,
                };
                Self::from_parts(self.p, v, self.unit_residue(k)?, k)
            }
        }
    }

    fn check_prime(&self, o: &Self) -> Result<()> {
        if self.p != o.p {
            Err(PadicError::PrimeMismatch(self.p, o.p))
        } else {
            Ok(())
        }
    }

    /// Absolute precision `v + prec`; `None` when exact.
    fn absolute_precision(&self) -> Option<i64> {
        match self.repr {
            Repr::Exact(_) => None,
            Repr::Approx { v, prec, .. } => Some(v + prec as i64),
        }
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Exact(q) => Self::from_rational(self.p, -q.clone()),
            Repr::Approx { v, unit, prec } => {
                let m = pow_p(self.p, *prec);
                PadicNumber {
                    p: self.p,
                    repr: Repr::Approx { v: *v, unit: (-unit).mod_floor(&m), prec: *prec },
                }
            }
        }
    }

    /// Sum. Fails when every known digit cancels.
    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_prime(o)?;
        if let (Repr::Exact(a), Repr::Exact(b)) = (&self.repr, &o.repr) {
            return Ok(Self::from_rational(self.p, a + b));
        }
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        let vx = self.finite_valuation().unwrap();
        let vy = o.finite_valuation().unwrap();
        let abs = match (self.absolute_precision(), o.absolute_precision()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        };
        let m = vx.min(vy);
        if abs <= m {
            return Err(PadicError::InsufficientPrecision { needed: 1, available: 0 });
        }
        let width = (abs - m) as u32;
        let modulus = pow_p(self.p, width);
        let term = |x: &Self, vx: i64| -> Result<BigInt> {
            let shift = (vx - m) as u32;
            if shift >= width {
                return Ok(BigInt::zero());
            }
            Ok(pow_p(self.p, shift) * x.unit_residue(width - shift)?)
        };
        let s = (term(self, vx)? + term(o, vy)?).mod_floor(&modulus);
        if s.is_zero() {
            return Err(PadicError::InsufficientPrecision { needed: 1, available: 0 });
        }
        let (k, u) = rat::split_int(&BigInt::from(self.p), &s);
        Self::from_parts(self.p, m + k, u, width - k as u32)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p, "prime mismatch");
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        match (&self.repr, &o.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => Self::from_rational(self.p, a * b),
            _ => {
                let prec = match (self.precision(), o.precision()) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => unreachable!(),
                };
                let v = self.finite_valuation().unwrap() + o.finite_valuation().unwrap();
                let u = self.unit_residue(prec).unwrap() * o.unit_residue(prec).unwrap();
                Self::from_parts(self.p, v, u, prec).unwrap()
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        match &self.repr {
            Repr::Exact(q) => Ok(Self::from_rational(self.p, q.recip())),
            Repr::Approx { v, unit, prec } => {
                let m = pow_p(self.p, *prec);
                let u = mod_inverse(unit, &m).expect("unit");
                Self::from_parts(self.p, -v, u, *prec)
            }
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Integer power; `0^0 = 1`.
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::one(self.p));
        }
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        match &self.repr {
            Repr::Exact(q) => Ok(Self::from_rational(self.p, num_traits::pow(q.clone(), n as usize))),
            Repr::Approx { v, unit, prec } => {
                let m = pow_p(self.p, *prec);
                Self::from_parts(self.p, v * n, modpow(unit, n as u64, &m), *prec)
            }
        }
    }

    /// Multiplication by `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        match &self.repr {
            Repr::Exact(_) => self.mul(&Self::p_power(self.p, k)),
            Repr::Approx { v, unit, prec } => {
                PadicNumber { p: self.p, repr: Repr::Approx { v: v + k, unit: unit.clone(), prec: *prec } }
            }
        }
    }

    /// Equality up to the precision available on both sides.
    pub fn agrees(&self, o: &Self) -> Result<bool> {
        match self.sub(o) {
            Ok(d) => Ok(d.is_zero()),
            Err(PadicError::InsufficientPrecision { .. }) => Ok(true),
            Err(e) => Err(e),
        }
    }

    /// Compares `|self|` with `|o|`.
    pub fn norm_cmp(&self, o: &Self) -> Ordering {
        o.valuation().cmp(&self.valuation())
    }

    /// Subgroup membership.
    pub fn in_subgroup(&self, g: &SubgroupSpec) -> Result<bool> {
        let p = self.p;
        let v = match self.finite_valuation() {
            None => {
                return Ok(match g {
                    SubgroupSpec::U { .. } => false,
                    _ => true,
                })
            }
            Some(v) => v,
        };
        match *g {
            SubgroupSpec::Q { n, m } => {
                check_param(n > 0 && m > 0, "Q_{N,M} needs N, M > 0")?;
                if v.rem_euclid(n as i64) != 0 {
                    return Ok(false);
                }
                Ok(self.unit_residue(m)?.is_one() || pow_p(p, m).is_one())
            }
            SubgroupSpec::D { m } => {
                check_param(m > 0, "D^M R needs M > 0")?;
                Ok(v >= 0 && self.unit_residue(m)?.is_one())
            }
            SubgroupSpec::P { n } => {
                check_param(n > 0, "P_N needs N > 0")?;
                if v.rem_euclid(n as i64) != 0 {
                    return Ok(false);
                }
                let s = vp_u64(p, n);
                let u = self.unit_residue(2 * s + 1)?;
                Ok(unit_is_nth_power(p, n, &u))
            }
            SubgroupSpec::U { e, n } => {
                check_param(e > 0 && n > 0, "U_{e,n} needs e, n > 0")?;
                if v != 0 {
                    return Ok(false);
                }
                let u = self.unit_residue(n)?;
                Ok(roots_of_unity(p, e, n).iter().any(|z| *z == u))
            }
        }
    }

    /// The root `y ∈ Q_{1, v_p(e)+1}` with `y^e = self`, for `self ∈ Q_{e, 2v_p(e)+1}`.
    pub fn nth_root(&self, e: u64) -> Result<Self> {
        self.nth_root_with_precision(e, DEFAULT_PRECISION)
    }

    /// As [`nth_root`](Self::nth_root); exact inputs without a rational root are
    /// first truncated to `prec` digits.
    pub fn nth_root_with_precision(&self, e: u64, prec: u32) -> Result<Self> {
        check_param(e > 0, "e must be positive")?;
        let p = self.p;
        let s = vp_u64(p, e);
        let v = match self.finite_valuation() {
            None => return Ok(Self::zero(p)),
            Some(v) => v,
        };
        if v.rem_euclid(e as i64) != 0 {
            return Err(PadicError::NotInDomain);
        }
        let k = self.precision().unwrap_or(prec);
        if k < 2 * s + 1 {
            return Err(PadicError::InsufficientPrecision { needed: 2 * s + 1, available: k });
        }
        if !self.unit_residue(2 * s + 1)?.is_one() {
            return Err(PadicError::NotInDomain);
        }
        if let Some(q) = self.as_rational() {
            if let Some(y) = rational_root(p, q, e, s) {
                return Ok(y);
            }
        }
        let u = self.unit_residue(k)?;
        let w = hensel_unit_root(p, &u, e, k, s);
        Self::from_parts(p, v / e as i64, w, k - s)
    }
}

fn check_param(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(PadicError::InvalidParameter(msg.to_string()))
    }
}

fn rational_root(p: u64, q: &Q, e: u64, s: u32) -> Option<PadicNumber> {
    if q.is_negative() && e % 2 == 0 {
        return None;
    }
    let e32 = u32::try_from(e).ok()?;
    let a = q.numer().abs();
    let b = q.denom().clone();
    let ra = a.nth_root(e32);
    let rb = b.nth_root(e32);
    if num_traits::pow(ra.clone(), e as usize) != a || num_traits::pow(rb.clone(), e as usize) != b {
        return None;
    }
    let base = Q::new(ra, rb);
    let candidates = if e % 2 == 1 {
        vec![if q.is_negative() { -base } else { base }]
    } else {
        vec![base.clone(), -base]
    };
    let m = s + 1;
    candidates
        .into_iter()
        .map(|y| PadicNumber::from_rational(p, y))
        .find(|y| y.unit_residue(m).map(|u| u.is_one()).unwrap_or(false))
}

/// Newton iteration for `w^e = u`, `w ≡ 1 mod p^{s+1}`; `u` is known modulo
/// `p^k` and the result modulo `p^{k-s}`.
fn hensel_unit_root(p: u64, u: &BigInt, e: u64, k: u32, s: u32) -> BigInt {
    let modk = pow_p(p, k);
    let ps = pow_p(p, s);
    let e_free = BigInt::from(e) / &ps;
    let out = k - s;
    let mod_out = pow_p(p, out);
    let mut w = BigInt::one();
    for _ in 0..256 {
        let num = (modpow(&w, e, &modk) - u).mod_floor(&modk);
        let (q, r) = num.div_rem(&ps);
        debug_assert!(r.is_zero());
        let deriv = (&e_free * modpow(&w, e - 1, &mod_out)).mod_floor(&mod_out);
        let corr = q * mod_inverse(&deriv, &mod_out).expect("unit derivative");
        let next = (&w - corr).mod_floor(&mod_out);
        if next == w {
            break;
        }
        w = next;
    }
    w
}

/// Decides whether a unit, given modulo `p^{2v_p(n)+1}`, is an n-th power in Z_p^×.
fn unit_is_nth_power(p: u64, n: u64, u: &BigInt) -> bool {
    let s = vp_u64(p, n);
    if p == 2 {
        // Z_2^× = {±1} × (1+4Z_2); the n-th powers are 1 + 2^{s+2} Z_2 when s ≥ 1.
        if s == 0 {
            return true;
        }
        return u.mod_floor(&pow_p(2, s + 2)).is_one();
    }
    let pb = BigInt::from(p);
    let g = n.gcd(&(p - 1));
    if !modpow(u, (p - 1) / g, &pb).is_one() {
        return false;
    }
    if s == 0 {
        return true;
    }
    let k = s + 1;
    let m = pow_p(p, k);
    let w = teichmuller(p, &u.mod_floor(&pb), k);
    let principal = (u * mod_inverse(&w, &m).unwrap()).mod_floor(&m);
    principal.is_one()
}

/// Teichmüller representative of `a mod p` modulo `p^k` (odd p).
pub fn teichmuller(p: u64, a: &BigInt, k: u32) -> BigInt {
    let m = pow_p(p, k);
    let mut x = a.mod_floor(&m);
    loop {
        let next = modpow(&x, p, &m);
        if next == x {
            return x;
        }
        x = next;
    }
}

fn factor_small(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = factor_small(p - 1);
    let pb = BigInt::from(p);
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&f| !modpow(&BigInt::from(g), (p - 1) / f, &pb).is_one())
        })
        .expect("primitive root exists")
}

/// Residues modulo `p^k` of all e-th roots of unity of Q_p.
pub fn roots_of_unity(p: u64, e: u64, k: u32) -> Vec<BigInt> {
    let m = pow_p(p, k);
    let mut out = vec![BigInt::one().mod_floor(&m)];
    if p == 2 {
        if e % 2 == 0 {
            out.push((BigInt::from(-1)).mod_floor(&m));
        }
    } else {
        let g = e.gcd(&(p - 1));
        let gen = BigInt::from(primitive_root(p));
        let step = modpow(&gen, (p - 1) / g, &BigInt::from(p));
        let mut z = step.clone();
        for _ in 1..g {
            out.push(teichmuller(p, &z, k));
            z = (z * &step).mod_floor(&BigInt::from(p));
        }
    }
    out.sort();
    out.dedup();
    out
}

impl PartialEq for PadicNumber {
    fn eq(&self, o: &Self) -> bool {
        if self.p != o.p {
            return false;
        }
        match (&self.repr, &o.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => a == b,
            (
                Repr::Approx { v, unit, prec },
                Repr::Approx { v: v2, unit: u2, prec: p2 },
            ) => v == v2 && unit == u2 && prec == p2,
            _ => false,
        }
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Exact(q) => write!(f, "{}", rat::format(q)),
            Repr::Approx { v, unit, prec } => write!(f, "{}^{}*{} + O({}^{})", self.p, v, unit, self.p, v + *prec as i64),
        }
    }
}

impl PadicNumber {
    /// `(v, unit, prec)` view used for serialization; exact values are
    /// truncated to `prec` digits.
    pub fn to_parts(&self, prec: u32) -> Option<(i64, BigInt, u32)> {
        let v = self.finite_valuation()?;
        let k = self.precision().unwrap_or(prec);
        Some((v, self.unit_residue(k).ok()?, k))
    }

    /// Integer value of a valuation known to be finite; convenience for callers.
    pub fn val(&self) -> Option<i64> {
        self.finite_valuation()
    }

    /// Approximate numeric size used only for diagnostics.
    pub fn debug_size(&self) -> usize {
        match &self.repr {
            Repr::Exact(q) => q.numer().bits() as usize + q.denom().bits() as usize,
            Repr::Approx { unit, .. } => unit.bits() as usize,
        }
    }
}

/// Convenience: exact rational point from integers.
pub fn point(p: u64, coords: &[i64]) -> Vec<PadicNumber> {
    coords.iter().map(|&c| PadicNumber::from_int(p, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64, s: &str) -> PadicNumber {
        PadicNumber::from_rational(p, rat::parse(s).unwrap())
    }

    #[test]
    fn valuations() {
        assert_eq!(q(3, "18").valuation(), Gamma::Fin(2));
        assert_eq!(q(3, "0").valuation(), Gamma::Inf);
        assert_eq!(q(5, "7/50").valuation(), Gamma::Fin(-2));
    }

    #[test]
    fn angular_component() {
        assert_eq!(q(3, "36").ac(2).unwrap(), BigInt::from(4));
        assert_eq!(q(3, "3").ac(1).unwrap(), BigInt::from(1));
        assert_eq!(q(5, "14").ac(2).unwrap(), BigInt::from(14));
        assert_eq!(q(3, "0").ac(1), Err(PadicError::ZeroArgument));
        let approx = PadicNumber::from_parts(3, 0, BigInt::from(4), 1).unwrap();
        assert!(matches!(approx.ac(2), Err(PadicError::InsufficientPrecision { .. })));
    }

    #[test]
    fn subgroups() {
        assert!(q(3, "36").in_subgroup(&SubgroupSpec::Q { n: 2, m: 1 }).unwrap());
        assert!(q(3, "0").in_subgroup(&SubgroupSpec::P { n: 2 }).unwrap());
        assert!(q(3, "7").in_subgroup(&SubgroupSpec::P { n: 2 }).unwrap());
        assert!(!q(3, "2").in_subgroup(&SubgroupSpec::P { n: 2 }).unwrap());
        assert!(!q(3, "3").in_subgroup(&SubgroupSpec::P { n: 2 }).unwrap());
        assert!(q(2, "17").in_subgroup(&SubgroupSpec::P { n: 2 }).unwrap());
        assert!(!q(2, "5").in_subgroup(&SubgroupSpec::P { n: 2 }).unwrap());
        assert!(q(3, "-1").in_subgroup(&SubgroupSpec::U { e: 2, n: 3 }).unwrap());
        assert!(!q(3, "-1").in_subgroup(&SubgroupSpec::U { e: 3, n: 3 }).unwrap());
        assert!(q(2, "-1").in_subgroup(&SubgroupSpec::U { e: 2, n: 5 }).unwrap());
        assert!(!q(2, "-1").in_subgroup(&SubgroupSpec::U { e: 3, n: 5 }).unwrap());
        assert!(q(3, "10").in_subgroup(&SubgroupSpec::D { m: 2 }).unwrap());
        assert!(!q(3, "1/3").in_subgroup(&SubgroupSpec::D { m: 1 }).unwrap());
    }

    #[test]
    fn roots() {
        assert_eq!(q(3, "16").nth_root(2).unwrap(), q(3, "4"));
        let r = q(3, "7").nth_root(2).unwrap();
        assert_eq!(r.unit_residue(3).unwrap(), BigInt::from(13));
        assert_eq!(r.precision(), Some(DEFAULT_PRECISION));
        assert_eq!(q(3, "3").nth_root(2), Err(PadicError::NotInDomain));
        // p | e: 2-adic square root of 17 (17 ≡ 1 mod 8).
        let r = q(2, "17").nth_root(2).unwrap();
        assert!(r.pow(2).unwrap().agrees(&q(2, "17")).unwrap());
        assert!(r.in_subgroup(&SubgroupSpec::Q { n: 1, m: 2 }).unwrap());
        assert_eq!(r.precision(), Some(DEFAULT_PRECISION - 1));
    }

    #[test]
    fn norms() {
        assert_eq!(q(3, "9").norm_cmp(&q(3, "6")), Ordering::Less);
        assert_eq!(q(3, "0").norm_cmp(&q(3, "5")), Ordering::Less);
        assert_eq!(q(3, "5").norm_cmp(&q(3, "5")), Ordering::Equal);
    }

    #[test]
    fn approximate_arithmetic() {
        let a = PadicNumber::from_parts(5, 0, BigInt::from(7), 3).unwrap();
        let b = q(5, "7");
        assert!(a.agrees(&b).unwrap());
        assert!(matches!(a.sub(&b), Err(PadicError::InsufficientPrecision { .. })));
        let c = a.add(&q(5, "1")).unwrap();
        assert_eq!(c.unit_residue(3).unwrap(), BigInt::from(8));
        let d = a.sub(&q(5, "2")).unwrap();
        assert_eq!(d.valuation(), Gamma::Fin(1));
        assert_eq!(d.precision(), Some(2));
    }
}
