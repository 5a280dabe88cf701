//! Presented cells mod `Q_{N,M'}` over simplex socles with monomial center
//! and bounds, their boundary cells, and cellular monoplexes.
//!
//! A type-1 cell is `{(x, t) : x ∈ U, |ν(x)| ≤ |t − c(x)| ≤ |μ(x)|,
//! t − c(x) ∈ λ·Q_{N,M'}}`; a type-0 cell is the graph of `c` over `U`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use thiserror::Error;

use crate::complex::{ComplexError, PadicSimplex};
use crate::gamma::{format_set, AffineMap, Bound, Gamma, GammaError, IndexSet};
use crate::lp::LpResult;
use crate::padic::{PadicError, PadicNumber, SubgroupSpec};
use crate::rat::{self, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CellError {
    #[error("invalid cell: {0}")]
    Invalid(String),
    #[error("{0} is not largely continuous toward the face")]
    NotLargelyContinuous(String),
    #[error("cell is not fitting")]
    NotFitting,
    #[error("point is not in the socle")]
    NotInSocle,
    #[error("point is not in the cell")]
    NotInCell,
    #[error("division by zero at a sample")]
    DivisionByZeroAtSample,
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
}

type Result<T> = std::result::Result<T, CellError>;

/// `ξ·∏ u_i^{β_i}`, or one of the constants 0 and ∞.
#[derive(Clone, Debug)]
pub enum MonomialFn {
    Zero,
    Infinity,
    Mono { coef: PadicNumber, exps: BTreeMap<usize, i64> },
}

impl MonomialFn {
    /// Builds a monomial; a zero coefficient gives `Zero`, zero exponents are dropped.
    pub fn mono(coef: PadicNumber, exps: BTreeMap<usize, i64>) -> Self {
        if coef.is_zero() {
            return MonomialFn::Zero;
        }
        let exps = exps.into_iter().filter(|(_, e)| *e != 0).collect();
        MonomialFn::Mono { coef, exps }
    }

    pub fn constant(coef: PadicNumber) -> Self {
        Self::mono(coef, BTreeMap::new())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MonomialFn::Zero)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, MonomialFn::Infinity)
    }

    pub fn variables(&self) -> IndexSet {
        match self {
            MonomialFn::Mono { exps, .. } => exps.keys().copied().collect(),
            _ => IndexSet::new(),
        }
    }

    /// Value at `u` (1-based coordinates); `None` for ∞.
    pub fn eval(&self, u: &[PadicNumber]) -> Result<Option<PadicNumber>> {
        let (coef, exps) = match self {
            MonomialFn::Zero => return Ok(Some(PadicNumber::zero(u.first().map_or(2, |x| x.prime())))),
            MonomialFn::Infinity => return Ok(None),
            MonomialFn::Mono { coef, exps } => (coef, exps),
        };
        let mut acc = coef.clone();
        for (&i, &e) in exps {
            let x = u.get(i - 1).ok_or_else(|| CellError::Invalid(format!("no coordinate {i}")))?;
            acc = acc.mul(&x.pow(e)?);
        }
        Ok(Some(acc))
    }

    /// `v∘f` as an affine map of the valuations, for a monomial.
    pub fn valuation_map(&self) -> Option<AffineMap> {
        match self {
            MonomialFn::Mono { coef, exps } => {
                let Gamma::Fin(v) = coef.valuation() else { unreachable!("nonzero coefficient") };
                let terms: Vec<(usize, i64)> = exps.iter().map(|(&i, &e)| (i, e)).collect();
                Some(AffineMap::from_ints(v, &terms))
            }
            _ => None,
        }
    }

    /// Continuous extension to the face obtained by sending the coordinates
    /// of `dropped` to 0.
    pub fn extend(&self, dropped: &IndexSet) -> Result<MonomialFn> {
        let MonomialFn::Mono { exps, .. } = self else { return Ok(self.clone()) };
        let mut vanishes = false;
        for (i, &e) in exps {
            if dropped.contains(i) {
                if e < 0 {
                    return Err(CellError::NotLargelyContinuous(format!("monomial with exponent {e} on x{i}")));
                }
                vanishes = true;
            }
        }
        Ok(if vanishes { MonomialFn::Zero } else { self.clone() })
    }

    /// Equality of the data (coefficients up to available precision).
    pub fn same(&self, o: &MonomialFn) -> bool {
        match (self, o) {
            (MonomialFn::Zero, MonomialFn::Zero) | (MonomialFn::Infinity, MonomialFn::Infinity) => true,
            (MonomialFn::Mono { coef: a, exps: e }, MonomialFn::Mono { coef: b, exps: f }) => {
                e == f && a.valuation() == b.valuation() && a.agrees(b).unwrap_or(false)
            }
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MonomialCell {
    socle: PadicSimplex,
    c: MonomialFn,
    nu: MonomialFn,
    mu: MonomialFn,
    lambda: PadicNumber,
    n: u64,
    mp: u32,
    ty: u8,
}

impl MonomialCell {
    /// Validates and builds a cell. The type is 0 exactly when `λ = 0`.
    pub fn new(
        socle: PadicSimplex,
        c: MonomialFn,
        nu: MonomialFn,
        mu: MonomialFn,
        lambda: PadicNumber,
        n: u64,
        mp: u32,
    ) -> Result<Self> {
        let bad = |s: &str| Err(CellError::Invalid(s.to_string()));
        if n == 0 || mp == 0 {
            return bad("N and M' must be positive");
        }
        if c.is_infinity() {
            return bad("the center cannot be ∞");
        }
        let supp = socle.support();
        for f in [&c, &nu, &mu] {
            if !f.variables().is_subset(&supp) {
                return bad("monomial uses coordinates outside the socle support");
            }
        }
        let ty = if lambda.is_zero() {
            if !nu.is_zero() || !mu.is_zero() {
                return bad("a type-0 cell has ν = μ = 0");
            }
            0
        } else {
            let Gamma::Fin(v) = lambda.valuation() else { unreachable!() };
            if v < 0 || v >= n as i64 {
                return bad("λ must satisfy 0 ≤ v(λ) < N");
            }
            if nu.is_infinity() || mu.is_zero() {
                return bad("a type-1 cell needs ν ≠ ∞ and μ ≠ 0");
            }
            if let (Some(vn), Some(vm)) = (nu.valuation_map(), mu.valuation_map()) {
                match socle.shape().minimize(&vn.sub(&vm)) {
                    LpResult::Optimal { value, .. } if !value.is_negative() => {}
                    _ => return bad("v∘ν ≥ v∘μ fails on the socle"),
                }
            }
            1
        };
        Ok(MonomialCell { socle, c, nu, mu, lambda, n, mp, ty })
    }

    pub fn socle(&self) -> &PadicSimplex {
        &self.socle
    }

    pub fn center(&self) -> &MonomialFn {
        &self.c
    }

    pub fn nu(&self) -> &MonomialFn {
        &self.nu
    }

    pub fn mu(&self) -> &MonomialFn {
        &self.mu
    }

    pub fn lambda(&self) -> &PadicNumber {
        &self.lambda
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn mp(&self) -> u32 {
        self.mp
    }

    pub fn ty(&self) -> u8 {
        self.ty
    }

    fn vlambda(&self) -> i64 {
        self.lambda.val().unwrap_or(0)
    }

    /// `v∘f` restricted to the affine hull of the socle, in its free coordinates.
    fn hull_map(&self, f: &AffineMap) -> AffineMap {
        f.substitute(&self.socle.shape().affine_structure())
    }

    /// Whether `v∘f` takes all its values on `vU` in `v(λ) + NZ`.
    fn congruent(&self, f: &MonomialFn) -> bool {
        let Some(vf) = f.valuation_map() else { return true };
        let g = self.hull_map(&vf);
        let n = rat::int(self.n as i64);
        let multiple = |q: &Q| rat::is_integer(&(q / &n));
        if !g.coeffs().values().all(multiple) {
            return false;
        }
        let at = g.eval(&self.socle.shape().lexmin_point()).expect("finite on the socle");
        multiple(&(at - rat::int(self.vlambda())))
    }

    /// The bounds realize the sup and inf of `|t − c|` on every fiber.
    pub fn is_fitting(&self) -> bool {
        self.ty == 0 || (self.congruent(&self.mu) && self.congruent(&self.nu))
    }

    /// `v∘μ ≥ −M'` on the socle.
    pub fn check_bounded(&self) -> bool {
        match &self.mu {
            MonomialFn::Zero => true,
            MonomialFn::Infinity => false,
            f => {
                let vm = f.valuation_map().expect("monomial");
                matches!(self.socle.shape().minimize(&vm),
                    LpResult::Optimal { value, .. } if value >= rat::int(-(self.mp as i64)))
            }
        }
    }

    fn lift_map(&self, f: &MonomialFn) -> Result<Bound> {
        let vf = match f {
            MonomialFn::Zero => return Ok(Bound::Inf),
            MonomialFn::Infinity => return Err(CellError::Invalid("∞ has no affine lift".into())),
            f => f.valuation_map().expect("monomial"),
        };
        let n = rat::int(self.n as i64);
        let shift = |g: AffineMap| g.sub(&AffineMap::from_ints(self.vlambda(), &[])).scale(&n.recip());
        let direct = shift(vf.clone());
        let g = if direct.is_integral() { direct } else { shift(self.hull_map(&vf)) };
        if !g.is_integral() {
            return Err(CellError::NotFitting);
        }
        Ok(Bound::Affine(g.add(&AffineMap::from_ints(self.mp as i64, &[]))))
    }

    /// `μᵛ` with `v(μ(u)) = v(λ) + N·μᵛ(vu) − N·M'`; `+∞` when `μ = 0`.
    pub fn mu_v(&self) -> Result<Bound> {
        self.lift_map(&self.mu)
    }

    pub fn nu_v(&self) -> Result<Bound> {
        self.lift_map(&self.nu)
    }

    /// `∂_Y^i` of the cell, `None` when empty.
    pub fn boundary_cell(&self, y: &PadicSimplex, i: u8) -> Result<Option<MonomialCell>> {
        if !self.socle.has_face(y) {
            return Err(CellError::Invalid(format!("{} is not a face of the socle", format_set(&y.support()))));
        }
        let dropped: IndexSet = self.socle.support().difference(&y.support()).copied().collect();
        let c = self.c.extend(&dropped)?;
        let nu = self.nu.extend(&dropped)?;
        let mu = self.mu.extend(&dropped)?;
        let p = self.lambda.prime();
        let cell = match i {
            0 if nu.is_zero() => {
                Self::new(y.clone(), c, MonomialFn::Zero, MonomialFn::Zero, PadicNumber::zero(p), self.n, self.mp)?
            }
            1 if self.ty == 1 && !mu.is_zero() => Self::new(y.clone(), c, nu, mu, self.lambda.clone(), self.n, self.mp)?,
            _ => return Ok(None),
        };
        Ok(Some(cell))
    }

    /// `λ'·Q_{N,M'} = λ·Q_{N,M'}`.
    pub fn same_coset(&self, o: &MonomialCell) -> bool {
        if self.ty != o.ty || self.n != o.n || self.mp != o.mp {
            return false;
        }
        if self.ty == 0 {
            return true;
        }
        match o.lambda.div(&self.lambda) {
            Ok(r) => r.in_subgroup(&SubgroupSpec::Q { n: self.n, m: self.mp }).unwrap_or(false),
            Err(_) => false,
        }
    }

    /// Same set, decided on the data.
    pub fn same_cell(&self, o: &MonomialCell) -> bool {
        self.socle.same_set(&o.socle)
            && self.same_coset(o)
            && self.c.same(&o.c)
            && self.nu.same(&o.nu)
            && self.mu.same(&o.mu)
    }

    pub fn cell_member(&self, x: &[PadicNumber], t: &PadicNumber) -> Result<bool> {
        if !self.socle.member(x)? {
            return Err(CellError::NotInSocle);
        }
        let c = self.center_at(x)?;
        if self.ty == 0 {
            return Ok(t.agrees(&c)?);
        }
        let delta = t.sub(&c)?;
        if delta.is_zero() {
            return Ok(false);
        }
        if !delta.div(&self.lambda)?.in_subgroup(&SubgroupSpec::Q { n: self.n, m: self.mp })? {
            return Ok(false);
        }
        let vd = delta.valuation();
        let upper = match self.mu.eval(x)? {
            None => true,
            Some(m) => vd >= m.valuation(),
        };
        let lower = vd <= self.nu.eval(x)?.expect("finite ν").valuation();
        Ok(upper && lower)
    }

    /// `c(x)`, in the prime of the cell even over a point socle.
    pub fn center_at(&self, x: &[PadicNumber]) -> Result<PadicNumber> {
        match self.c {
            MonomialFn::Zero => Ok(PadicNumber::zero(self.lambda.prime())),
            _ => Ok(self.c.eval(x)?.expect("finite center")),
        }
    }

    /// `δ = t − c(x)`.
    pub fn offset(&self, x: &[PadicNumber], t: &PadicNumber) -> Result<PadicNumber> {
        Ok(t.sub(&self.center_at(x)?)?)
    }
}

/// Checks `t − c_A(x) ∈ h(x)^α·(t − c_B(x))^{1−α}·(1 + p^n R)` on samples of `B`.
pub fn check_transition(
    b: &MonomialCell,
    a: &MonomialCell,
    h: &MonomialFn,
    alpha: u8,
    n: u32,
    samples: &[(Vec<PadicNumber>, PadicNumber)],
    precision: u32,
) -> Result<bool> {
    if n > precision {
        return Err(PadicError::InsufficientPrecision { needed: n, available: precision }.into());
    }
    for (x, t) in samples {
        let num = a.offset(x, t)?;
        let den = if alpha == 1 {
            h.eval(x)?.ok_or(CellError::DivisionByZeroAtSample)?
        } else {
            b.offset(x, t)?
        };
        if den.is_zero() {
            return Err(CellError::DivisionByZeroAtSample);
        }
        let r = num.div(&den)?;
        if r.valuation() != Gamma::Fin(0) || !r.in_subgroup(&SubgroupSpec::D { m: n })? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A tree of cells; `tree` holds `(parent, child)` pairs.
#[derive(Clone, Debug)]
pub struct CellularMonoplex {
    pub cells: Vec<MonomialCell>,
    pub tree: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonoplexReport {
    pub valid: bool,
    pub closed: bool,
    pub violations: Vec<String>,
    pub missing: Vec<String>,
}

impl CellularMonoplex {
    /// Parent of each cell, or `None` if the edges do not form a rooted tree.
    pub fn parents(&self) -> Option<Vec<Option<usize>>> {
        let n = self.cells.len();
        let mut parent = vec![None; n];
        for &(b, a) in &self.tree {
            if b >= n || a >= n || b == a || parent[a].is_some() {
                return None;
            }
            parent[a] = Some(b);
        }
        if parent.iter().filter(|p| p.is_none()).count() != 1 {
            return None;
        }
        for start in 0..n {
            let mut seen = BTreeSet::new();
            let mut cur = start;
            while let Some(b) = parent[cur] {
                if !seen.insert(cur) {
                    return None;
                }
                cur = b;
            }
        }
        Some(parent)
    }

    pub fn root(&self) -> Option<usize> {
        self.parents()?.iter().position(|p| p.is_none())
    }

    /// Strict ancestors of `a`, nearest first.
    pub fn ancestors(&self, parent: &[Option<usize>], a: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = a;
        while let Some(b) = parent[cur] {
            out.push(b);
            cur = b;
        }
        out
    }

    pub fn children(&self, b: usize) -> Vec<usize> {
        self.tree.iter().filter(|(p, _)| *p == b).map(|(_, c)| *c).collect()
    }

    fn compare(&self, b: usize, a: usize, out: &mut Vec<String>) {
        let (cb, ca) = (&self.cells[b], &self.cells[a]);
        if cb.n != ca.n || cb.mp != ca.mp {
            out.push(format!("parameter mismatch: cells {b} and {a}"));
            return;
        }
        if !ca.socle.has_face(&cb.socle) {
            out.push(format!("socle of cell {b} is not a face of the socle of cell {a}"));
            return;
        }
        match ca.boundary_cell(&cb.socle, cb.ty) {
            Err(e) => out.push(format!("boundary of cell {a} toward cell {b}: {e}")),
            Ok(None) => out.push(format!("boundary of cell {a} toward cell {b} is empty")),
            Ok(Some(d)) => {
                if ca.socle.same_set(&cb.socle) && ca.ty == cb.ty {
                    out.push(format!("cells {b} and {a} coincide"));
                }
                if !d.same_coset(cb) {
                    out.push(format!("coset mismatch: cells {b} and {a}"));
                }
                if !d.c.same(&cb.c) {
                    out.push(format!("center mismatch: cells {b} and {a}"));
                }
                if !d.nu.same(&cb.nu) || !d.mu.same(&cb.mu) {
                    out.push(format!("bound mismatch: cells {b} and {a}"));
                }
            }
        }
    }

    pub fn validate(&self) -> MonoplexReport {
        let mut violations = Vec::new();
        let mut missing = Vec::new();
        let n = self.cells.len();
        let parent = match self.parents() {
            Some(p) => p,
            None => {
                violations.push("not rooted: the edges do not form a rooted tree".to_string());
                return MonoplexReport { valid: false, closed: false, violations, missing };
            }
        };
        let root = parent.iter().position(|p| p.is_none()).expect("one root");
        if !self.cells[root].socle.is_closed() {
            violations.push(format!("not rooted: the socle of root cell {root} is not closed"));
        }
        for (i, c) in self.cells.iter().enumerate() {
            if !c.is_fitting() {
                violations.push(format!("cell {i} is not fitting"));
            }
        }
        let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (a, set) in below.iter_mut().enumerate() {
            for b in self.ancestors(&parent, a) {
                set.insert(b);
                self.compare(b, a, &mut violations);
            }
        }
        for b in 0..n {
            for a in 0..n {
                if a == b || below[a].contains(&b) || below[b].contains(&a) {
                    continue;
                }
                let (cb, ca) = (&self.cells[b], &self.cells[a]);
                if ca.n != cb.n || ca.mp != cb.mp || !ca.socle.has_face(&cb.socle) {
                    continue;
                }
                if let Ok(Some(d)) = ca.boundary_cell(&cb.socle, cb.ty) {
                    if d.same_cell(cb) {
                        violations.push(format!("cells {b} and {a} are comparable but unordered"));
                    }
                }
            }
        }
        for (a, ca) in self.cells.iter().enumerate() {
            for y in ca.socle.faces_of() {
                for i in 0..2u8 {
                    match ca.boundary_cell(&y, i) {
                        Ok(Some(d)) => {
                            if !self.cells.iter().any(|c| c.same_cell(&d)) {
                                missing.push(format!(
                                    "boundary {i} of cell {a} over face {}",
                                    format_set(&y.support())
                                ));
                            }
                        }
                        Ok(None) => {}
                        Err(e) => violations.push(format!("cell {a} over face {}: {e}", format_set(&y.support()))),
                    }
                }
            }
        }
        violations.sort();
        violations.dedup();
        missing.sort();
        MonoplexReport { valid: violations.is_empty(), closed: violations.is_empty() && missing.is_empty(), violations, missing }
    }
}

/// `(N-1)(M'-1)/N`, the lower bound of `μᵛ` on cells contained in `R^{m+1}`.
pub fn mu_v_floor(n: u64, mp: u32) -> Q {
    Q::new(((n as i64 - 1) * (mp as i64 - 1)).into(), (n as i64).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{level, DiscretePolytope};
    use crate::padic::point;

    fn line(m: u32) -> PadicSimplex {
        PadicSimplex::new(m, DiscretePolytope::new(vec![level(AffineMap::from_ints(0, &[]), None)]).unwrap()).unwrap()
    }

    fn p3(n: i64) -> PadicNumber {
        PadicNumber::from_int(3, n)
    }

    fn square(coef: i64) -> MonomialFn {
        MonomialFn::mono(p3(coef), [(1, 2)].into_iter().collect())
    }

    fn example(coef: i64) -> MonomialCell {
        MonomialCell::new(line(2), MonomialFn::Zero, MonomialFn::Zero, square(coef), p3(1), 2, 2).unwrap()
    }

    #[test]
    fn membership() {
        let a = example(1);
        assert!(a.cell_member(&point(3, &[3]), &p3(9)).unwrap());
        assert!(!a.cell_member(&point(3, &[3]), &p3(3)).unwrap());
        let g = MonomialCell::new(line(2), square(1), MonomialFn::Zero, MonomialFn::Zero, p3(0), 2, 2).unwrap();
        assert!(g.cell_member(&point(3, &[3]), &p3(9)).unwrap());
        assert!(!g.cell_member(&point(3, &[3]), &p3(18)).unwrap());
    }

    #[test]
    fn fitting_and_bounds() {
        assert!(example(1).is_fitting());
        assert!(!example(3).is_fitting());
        let inf = MonomialCell::new(line(2), MonomialFn::Zero, MonomialFn::Zero, MonomialFn::Infinity, p3(1), 2, 2).unwrap();
        assert!(inf.is_fitting());
        assert!(example(1).check_bounded());
        let low = MonomialCell::new(
            PadicSimplex::new(2, DiscretePolytope::point(0)).unwrap(),
            MonomialFn::Zero,
            MonomialFn::Zero,
            MonomialFn::constant(PadicNumber::p_power(3, -3)),
            p3(1),
            1,
            2,
        )
        .unwrap();
        assert!(!low.check_bounded());
    }

    #[test]
    fn mu_v_example() {
        let a = example(1);
        assert_eq!(a.mu_v().unwrap(), Bound::Affine(AffineMap::from_ints(2, &[(1, 1)])));
        assert_eq!(a.nu_v().unwrap(), Bound::Inf);
        assert_eq!(example(3).mu_v(), Err(CellError::NotFitting));
    }

    #[test]
    fn boundary_cells() {
        let a = example(1);
        let y = a.socle().faces_of()[0].clone();
        assert!(a.boundary_cell(&y, 1).unwrap().is_none());
        let d = a.boundary_cell(&y, 0).unwrap().unwrap();
        assert_eq!(d.ty(), 0);
        assert!(d.center().is_zero());
        let neg = MonomialCell::new(
            line(2),
            MonomialFn::Zero,
            MonomialFn::Zero,
            MonomialFn::mono(p3(1), [(1, -2)].into_iter().collect()),
            p3(1),
            2,
            2,
        )
        .unwrap();
        assert!(matches!(neg.boundary_cell(&y, 1), Err(CellError::NotLargelyContinuous(_))));
    }

    fn three() -> CellularMonoplex {
        let a2 = example(1);
        let y = a2.socle().faces_of()[0].clone();
        let a0 = a2.boundary_cell(&y, 0).unwrap().unwrap();
        let a1 = a2.boundary_cell(a2.socle(), 0).unwrap().unwrap();
        CellularMonoplex { cells: vec![a0, a1, a2], tree: vec![(0, 1), (1, 2)] }
    }

    #[test]
    fn monoplex_validation() {
        let r = three().validate();
        assert!(r.valid && r.closed, "{r:?}");
        let rootless = CellularMonoplex { cells: three().cells[1..].to_vec(), tree: vec![(0, 1)] };
        assert!(rootless.validate().violations.iter().any(|v| v.starts_with("not rooted")));
    }

    fn two_type1(lambda: i64) -> CellularMonoplex {
        let nu = MonomialFn::constant(p3(81));
        let mu = MonomialFn::constant(p3(1));
        let u0 = line(2).faces_of()[0].clone();
        let b = MonomialCell::new(u0, MonomialFn::Zero, nu.clone(), mu.clone(), p3(1), 2, 2).unwrap();
        let a = MonomialCell::new(line(2), MonomialFn::Zero, nu, mu, p3(lambda), 2, 2).unwrap();
        CellularMonoplex { cells: vec![b, a], tree: vec![(0, 1)] }
    }

    #[test]
    fn coset_checks() {
        let r = two_type1(1).validate();
        assert!(r.valid && r.closed, "{r:?}");
        assert!(two_type1(10).validate().valid);
        let r = two_type1(2).validate();
        assert!(r.violations.iter().any(|v| v.starts_with("coset mismatch")), "{r:?}");
    }

    #[test]
    fn transitions() {
        let a = example(1);
        let samples = vec![(point(3, &[3]), p3(9))];
        assert!(check_transition(&a, &a, &MonomialFn::constant(p3(1)), 0, 3, &samples, 24).unwrap());
        let g = MonomialCell::new(line(2), square(1), MonomialFn::Zero, MonomialFn::Zero, p3(0), 2, 2).unwrap();
        let on_graph = vec![(point(3, &[3]), p3(9))];
        let h = MonomialFn::mono(p3(3), [(1, 2)].into_iter().collect());
        assert!(!check_transition(&g, &a, &h, 1, 2, &on_graph, 24).unwrap());
        assert!(matches!(
            check_transition(&a, &a, &MonomialFn::constant(p3(1)), 0, 30, &samples, 24),
            Err(CellError::Padic(PadicError::InsufficientPrecision { .. }))
        ));
    }
}
