//! Good directions for finite families of polynomials in `X_1..X_m, T`:
//! leading homogeneous form, grid search and the shear `u_η(x, t) = (x + tη, t)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::oracle::Rng;
use crate::rat::{self, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DirectionError {
    #[error("zero polynomial in the family")]
    ZeroPolynomial,
    #[error("bad direction: {0}")]
    BadDirection(String),
    #[error("polynomials have different numbers of variables")]
    VariableMismatch,
}

type Result<T> = std::result::Result<T, DirectionError>;

/// Sparse polynomial; the last variable is `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::from_terms(nvars, vec![(vec![0; nvars], c)])
    }

    /// The variable with the given position (0-based; `nvars - 1` is `T`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, vec![(e, Q::one())])
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Vec<u32>, Q)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        let slot = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                let g: Vec<u32> = e.iter().zip(f).map(|(a, b)| a + b).collect();
                r.add_term(g, c * d);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::constant(self.nvars, Q::one());
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    /// Homogeneous component of total degree `d`.
    pub fn component(&self, d: u32) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == d).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(x).fold(c.clone(), |acc, (&k, v)| acc * num_traits::pow(v.clone(), k as usize)))
            .sum()
    }

    /// Substitutes the values `x` for `X_1..X_m`, leaving a polynomial in `T`
    /// given by its coefficients.
    pub fn fiber(&self, x: &[Q]) -> BTreeMap<u32, Q> {
        let m = self.nvars - 1;
        let mut out: BTreeMap<u32, Q> = BTreeMap::new();
        for (e, c) in &self.terms {
            let v = e[..m].iter().zip(x).fold(c.clone(), |acc, (&k, v)| acc * num_traits::pow(v.clone(), k as usize));
            *out.entry(e[m]).or_insert_with(Q::zero) += v;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<String> =
            (0..self.nvars).map(|i| if i + 1 == self.nvars { "T".to_string() } else { format!("X{}", i + 1) }).collect();
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .zip(&names)
                    .filter(|(k, _)| **k > 0)
                    .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
                    .collect();
                if mono.is_empty() {
                    rat::format(c)
                } else if c.is_one() {
                    mono.join("*")
                } else {
                    format!("{}*{}", rat::format(c), mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn check_family(family: &[Polynomial]) -> Result<usize> {
    let n = family.first().ok_or(DirectionError::ZeroPolynomial)?.nvars;
    for f in family {
        if f.is_zero() {
            return Err(DirectionError::ZeroPolynomial);
        }
        if f.nvars != n {
            return Err(DirectionError::VariableMismatch);
        }
    }
    Ok(n)
}

/// Top homogeneous component of the product of the family.
pub fn leading_form(family: &[Polynomial]) -> Result<Polynomial> {
    let n = check_family(family)?;
    let prod = family.iter().fold(Polynomial::constant(n, Q::one()), |acc, f| acc.mul(f));
    Ok(prod.component(prod.degree()))
}

/// `p(η, 1)`.
fn at_direction(p: &Polynomial, eta: &[Q]) -> Q {
    let mut x = eta.to_vec();
    x.push(Q::one());
    p.eval(&x)
}

/// First `η = p^s·a` with `a ∈ {0..d}^m` in lexicographic order and `p°(η, 1) ≠ 0`.
pub fn find_direction(family: &[Polynomial], s: u32, p: u64) -> Result<Vec<Q>> {
    let lead = leading_form(family)?;
    let m = lead.nvars - 1;
    let d = lead.degree() as i64;
    let scale = rat::big(crate::padic::pow_p(p, s));
    let mut a = vec![0i64; m];
    loop {
        let eta: Vec<Q> = a.iter().map(|&k| rat::int(k) * &scale).collect();
        if !at_direction(&lead, &eta).is_zero() {
            return Ok(eta);
        }
        // Next tuple; the grid cannot be exhausted for a nonzero form.
        let mut i = m;
        loop {
            assert!(i > 0, "nonzero form vanishes on the whole grid");
            i -= 1;
            if a[i] < d {
                a[i] += 1;
                break;
            }
            a[i] = 0;
        }
    }
}

/// `f∘u_η`: substitutes `X_i + η_i T` for `X_i`.
pub fn shear(f: &Polynomial, eta: &[Q]) -> Polynomial {
    let n = f.nvars;
    let m = n - 1;
    assert_eq!(eta.len(), m, "direction length");
    let t = Polynomial::var(n, m);
    let images: Vec<Polynomial> =
        (0..m).map(|i| Polynomial::var(n, i).add(&t.mul(&Polynomial::constant(n, eta[i].clone())))).collect();
    let mut out = Polynomial::zero(n);
    for (e, c) in &f.terms {
        let mut term = Polynomial::constant(n, c.clone()).mul(&t.pow(e[m]));
        for (img, &k) in images.iter().zip(&e[..m]) {
            term = term.mul(&img.pow(k));
        }
        out = out.add(&term);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionReport {
    /// `p°(η, 1)`.
    pub lead_value: Q,
    /// Leading `T`-coefficient of each sheared polynomial.
    pub leading: Vec<Q>,
}

/// Checks that every fiber of `u_η^{-1}` of the zero sets is finite.
pub fn certify_direction(family: &[Polynomial], eta: &[Q], seed: u64) -> Result<DirectionReport> {
    let lead = leading_form(family)?;
    let lead_value = at_direction(&lead, eta);
    if lead_value.is_zero() {
        return Err(DirectionError::BadDirection("p°(η, 1) = 0".into()));
    }
    let m = lead.nvars - 1;
    let mut leading = Vec::new();
    let mut rng = Rng::new(seed);
    for (k, f) in family.iter().enumerate() {
        let d = f.degree();
        let g = shear(f, eta);
        let top: Vec<(&Vec<u32>, &Q)> = g.terms.iter().filter(|(e, _)| e[m] == d).collect();
        let expected = at_direction(&f.component(d), eta);
        let ok = top.len() == 1 && top[0].0[..m].iter().all(|&e| e == 0) && *top[0].1 == expected && !expected.is_zero();
        if !ok {
            return Err(DirectionError::BadDirection(format!(
                "polynomial {k}: the T^{d} coefficient of the shear is not the constant f°(η, 1)"
            )));
        }
        leading.push(expected);
        for _ in 0..50 {
            let x: Vec<Q> = (0..m).map(|_| Q::new(rng.range(-20, 20).into(), rng.range(1, 7).into())).collect();
            if g.fiber(&x).is_empty() {
                return Err(DirectionError::BadDirection(format!("polynomial {k}: zero fiber at a sample")));
            }
        }
    }
    Ok(DirectionReport { lead_value, leading })
}
