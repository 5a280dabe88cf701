//! Brute-force ground truth on finite windows, and seeded sampling.
//!
//! The pseudo-random generator is SplitMix64: the state advances by
//! `0x9E3779B97F4A7C15` and each output is mixed by
//! `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) * 0x94D049BB133111EB; z ^ (z >> 31)`
//! (wrapping arithmetic). The initial state is the seed itself. Bounded draws
//! use `next_u64() % n`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::cells::{CellError, MonomialCell, MonomialFn};
use crate::complex::PadicSimplex;
use crate::gamma::{AffineMap, Bound, DiscretePolytope, Gamma, GammaPoint, IndexSet, Level};
use crate::padic::{pow_p, PadicNumber};
use crate::rat::{self, Q};

pub const MAX_WINDOW_POINTS: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("window has {0} points, more than the limit of 10^7")]
    WindowTooLarge(u128),
}

/// The points of `({0..bound} ∪ {+∞})^dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub bound: i64,
    pub dim: usize,
}

impl Window {
    pub fn new(bound: i64, dim: usize) -> Self {
        Window { bound, dim }
    }

    pub fn size(&self) -> u128 {
        (self.bound as u128 + 2).saturating_pow(self.dim as u32)
    }

    fn check(&self) -> Result<(), OracleError> {
        if self.size() > MAX_WINDOW_POINTS {
            Err(OracleError::WindowTooLarge(self.size()))
        } else {
            Ok(())
        }
    }
}

/// Seeded generator; see the module docs for the exact recurrence.
#[derive(Clone, Debug)]
pub struct Rng(SplitMix64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(SplitMix64::from_seed(seed.to_le_bytes()))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish draw in `[0, n)`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Draw in `[lo, hi]`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    pub fn coin(&mut self) -> bool {
        self.below(2) == 1
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }
}

/// Strict members of `A` inside the window, in lexicographic order. The size
/// limit applies to the supported coordinates only.
pub fn enumerate_members(a: &DiscretePolytope, w: &Window) -> Result<Vec<GammaPoint>, OracleError> {
    Window::new(w.bound, a.support().len().min(w.dim)).check()?;
    let mut out = Vec::new();
    if a.dim() == w.dim {
        let mut cur = vec![Gamma::Inf; a.dim()];
        fill(a.levels(), 0, w.bound, &mut cur, &mut out);
    }
    Ok(out)
}

fn fill(levels: &[Level], j: usize, bound: i64, cur: &mut GammaPoint, out: &mut Vec<GammaPoint>) {
    if j == levels.len() {
        out.push(cur.clone());
        return;
    }
    match &levels[j] {
        Level::Out => {
            cur[j] = Gamma::Inf;
            fill(levels, j + 1, bound, cur, out);
        }
        Level::In { mu, nu } => {
            let lo = rat::ceil(&mu.eval(cur).expect("earlier coordinates set"));
            let mut hi = BigInt::from(bound);
            if let Bound::Affine(n) = nu {
                hi = hi.min(rat::floor(&n.eval(cur).expect("earlier coordinates set")));
            }
            let lo = lo.max(BigInt::from(0));
            let (Ok(lo), Ok(hi)) = (i64::try_from(lo), i64::try_from(hi)) else { return };
            for v in lo..=hi {
                cur[j] = Gamma::Fin(v);
                fill(levels, j + 1, bound, cur, out);
            }
            cur[j] = Gamma::Inf;
        }
    }
}

/// All window points of the closure, through the face presentations.
pub fn enumerate_closure(a: &DiscretePolytope, w: &Window) -> Result<Vec<GammaPoint>, OracleError> {
    Window::new(w.bound, a.support().len().min(w.dim)).check()?;
    let mut out = BTreeSet::new();
    for (_, face) in a.faces().unwrap_or_default() {
        out.extend(enumerate_members(&face, w)?);
    }
    Ok(out.into_iter().collect())
}

/// Window test for closure membership that does not use faces: some member
/// of `A` agrees with `x` on `Supp x` and is at least `threshold` elsewhere on
/// the support of `A`.
pub fn closure_witness(a: &DiscretePolytope, x: &[Gamma], w: &Window, threshold: i64) -> Result<bool, OracleError> {
    let j = crate::gamma::support(x);
    let supp = a.support();
    if !j.is_subset(&supp) {
        return Ok(false);
    }
    Ok(enumerate_members(a, w)?.iter().any(|b| {
        supp.iter().all(|&i| {
            if j.contains(&i) {
                b[i - 1] == x[i - 1]
            } else {
                b[i - 1] >= Gamma::Fin(threshold)
            }
        })
    }))
}

/// Classification of an affine map toward a face, read off window data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Finite,
    Infinite,
    NotExtendable,
    Inconclusive,
}

fn eval_int(f: &AffineMap, b: &[Gamma]) -> Q {
    f.eval(b).expect("support coordinates are finite")
}

/// Brute-force counterpart of `extend_to_face`. `Finite` when `f` is constant
/// on the `π_J`-fibers of the largest window; `Infinite` when, on every fiber,
/// the minimum of `f` over points of window `B` whose other coordinates exceed
/// the fiber's smallest such coordinate by at least `B/4` never decreases with
/// `B` and grows at the last step.
pub fn classify_extension(
    a: &DiscretePolytope,
    f: &AffineMap,
    j: &IndexSet,
    bounds: &[i64],
) -> Result<Verdict, OracleError> {
    let supp = a.support();
    let tail: Vec<usize> = supp.difference(j).copied().collect();
    let largest = *bounds.iter().max().expect("at least one window");
    let members = enumerate_members(a, &Window::new(largest, a.dim()))?;
    let key = |b: &GammaPoint| crate::gamma::project(b, j);
    let mut fibers: BTreeMap<GammaPoint, Q> = BTreeMap::new();
    let mut factors = true;
    for b in &members {
        let v = eval_int(f, b);
        match fibers.get(&key(b)) {
            Some(w) if *w != v => {
                factors = false;
                break;
            }
            Some(_) => {}
            None => {
                fibers.insert(key(b), v);
            }
        }
    }
    if factors && !members.is_empty() {
        return Ok(Verdict::Finite);
    }
    // For each window, the minimum of f over the deepest layer of each fiber
    // (largest smallest tail coordinate reached inside that window).
    let depth = |b: &GammaPoint| tail.iter().map(|&i| b[i - 1]).min().unwrap_or(Gamma::Inf);
    let mut sorted = bounds.to_vec();
    sorted.sort();
    let mut series: BTreeMap<GammaPoint, Vec<Q>> = BTreeMap::new();
    for &bound in &sorted {
        let inside: Vec<&GammaPoint> =
            members.iter().filter(|b| b.iter().all(|g| *g <= Gamma::Fin(bound) || *g == Gamma::Inf)).collect();
        let mut deepest: BTreeMap<GammaPoint, Gamma> = BTreeMap::new();
        for b in &inside {
            let d = depth(b);
            deepest.entry(key(b)).and_modify(|w| *w = (*w).max(d)).or_insert(d);
        }
        let mut m: BTreeMap<GammaPoint, Q> = BTreeMap::new();
        for b in &inside {
            let k = key(b);
            if deepest[&k] != Gamma::Inf && depth(b) == deepest[&k] {
                let v = eval_int(f, b);
                m.entry(k).and_modify(|w| *w = w.clone().min(v.clone())).or_insert(v);
            }
        }
        for (k, v) in m {
            series.entry(k).or_default().push(v);
        }
    }
    let usable: Vec<&Vec<Q>> = series.values().filter(|s| s.len() >= 2).collect();
    if usable.is_empty() {
        return Ok(Verdict::Inconclusive);
    }
    let increasing = usable.iter().all(|s| s.windows(2).all(|w| w[0] <= w[1]) && s[s.len() - 2] < s[s.len() - 1]);
    Ok(if increasing { Verdict::Infinite } else { Verdict::NotExtendable })
}

/// Lifts a Γ-point to a rational point: `+∞ ↦ 0`, `a ↦ p^a (1 + p^M r)`.
pub fn lift_point(p: u64, m: u32, a: &[Gamma], rng: &mut Rng) -> Vec<PadicNumber> {
    a.iter()
        .map(|g| match g {
            Gamma::Inf => PadicNumber::zero(p),
            Gamma::Fin(k) => {
                let r = rng.below(p * p) as i64;
                let unit = rat::big(BigInt::from(1) + pow_p(p, m) * r);
                PadicNumber::from_rational(p, unit).shift(*k)
            }
        })
        .collect()
}

/// Seeded points of a p-adic simplex whose valuations are at most `depth`.
pub fn sample_padic(s: &PadicSimplex, p: u64, depth: i64, count: usize, seed: u64) -> Vec<Vec<PadicNumber>> {
    let Ok(points) = enumerate_members(s.shape(), &Window::new(depth, s.dim())) else { return Vec::new() };
    if points.is_empty() {
        return Vec::new();
    }
    let mut rng = Rng::new(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let a = rng.pick(&points).clone();
        let x = lift_point(p, s.index(), &a, &mut rng);
        if s.member(&x).unwrap_or(false) {
            out.push(x);
        }
    }
    out
}

/// Sampled sup/inf test for fitting cells. At each sampled socle point the
/// offsets `t − c = λ·p^{jN}·u` (`u ∈ {1, 1 + p^{M'}}`) are enumerated at
/// valuations within `N` of `vμ(x)` and `vν(x)`; the cell passes when the
/// members reach `|μ(x)|` from below and, for `ν ≠ 0`, `|ν(x)|` from above.
pub fn fitting_oracle(cell: &MonomialCell, depth: i64, count: usize, seed: u64) -> Result<bool, CellError> {
    if cell.ty() == 0 {
        return Ok(true);
    }
    let p = cell.lambda().prime();
    let n = cell.n() as i64;
    let vl = cell.lambda().val().expect("type 1 has λ ≠ 0");
    let one = PadicNumber::one(p);
    let units = [one.clone(), one.add(&PadicNumber::p_power(p, cell.mp() as i64))?];
    // `μ = ∞` leaves |t − c| unbounded above: no lower valuation bound.
    let val = |f: &MonomialFn, x: &[PadicNumber]| -> Result<Option<Gamma>, CellError> {
        Ok(f.eval(x)?.map(|y| y.valuation()))
    };
    for x in sample_padic(cell.socle(), p, depth, count, seed) {
        let vmu = val(cell.mu(), &x)?;
        let vnu = val(cell.nu(), &x)?.expect("finite ν");
        let mut targets: Vec<i64> = Vec::new();
        for g in [vmu.unwrap_or(Gamma::Inf), vnu] {
            if let Gamma::Fin(w) = g {
                targets.extend(w - n..=w + n);
            }
        }
        let mut reached: BTreeSet<i64> = BTreeSet::new();
        for w in targets {
            if (w - vl).rem_euclid(n) != 0 {
                continue;
            }
            for u in &units {
                let delta = cell.lambda().mul(u).shift(w - vl);
                let vd = delta.valuation();
                if vnu >= vd && vmu.is_none_or(|m| vd >= m) {
                    reached.insert(w);
                }
            }
        }
        let sup = match vmu {
            Some(Gamma::Fin(w)) => reached.first() == Some(&w),
            _ => true,
        };
        let inf = match vnu {
            Gamma::Fin(w) => reached.last() == Some(&w),
            Gamma::Inf => true,
        };
        if !(sup && inf) {
            return Ok(false);
        }
    }
    Ok(true)
}
