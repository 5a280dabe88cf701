//! Discrete polytopes in Γ^q, Γ = Z ∪ {+∞}.
//!
//! Coordinates are 1-based. The support of a point is the set of its finite
//! coordinates. A polytope is given level by level: level `j` is either
//! outside the support (coordinate `+∞`) or bounded by affine maps
//! `μ_j ≤ a_j ≤ ν_j` of the earlier supported coordinates.
//!
//! Presentations must be integral (integer constants and coefficients). This
//! makes the rational relaxation an integral polyhedron whose affine hull is
//! spanned by the lattice points, so LP answers over the relaxation are exact
//! answers about the lattice points.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lp::{Lp, LpResult, Relation};
use crate::rat::{self, Q};

/// An element of Z ∪ {+∞}. `Fin < Inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gamma {
    Fin(i64),
    Inf,
}

impl Gamma {
    pub fn is_finite(self) -> bool {
        matches!(self, Gamma::Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Gamma::Fin(v) => Some(v),
            Gamma::Inf => None,
        }
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gamma::Fin(v) => write!(f, "{v}"),
            Gamma::Inf => write!(f, "+inf"),
        }
    }
}

pub type GammaPoint = Vec<Gamma>;

/// Sets of 1-based coordinate indices.
pub type IndexSet = BTreeSet<usize>;

pub fn support(a: &[Gamma]) -> IndexSet {
    a.iter()
        .enumerate()
        .filter(|(_, g)| g.is_finite())
        .map(|(i, _)| i + 1)
        .collect()
}

/// `π_J`: keeps the coordinates in `J`, sends the others to `+∞`.
pub fn project(a: &[Gamma], j: &IndexSet) -> GammaPoint {
    a.iter()
        .enumerate()
        .map(|(i, &g)| if j.contains(&(i + 1)) { g } else { Gamma::Inf })
        .collect()
}

pub fn format_set(s: &IndexSet) -> String {
    let parts: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// `α₀ + Σ α_i x_i` with rational coefficients; zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap {
    constant: Q,
    coeffs: BTreeMap<usize, Q>,
}

impl AffineMap {
    pub fn new(constant: Q, coeffs: BTreeMap<usize, Q>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        AffineMap { constant, coeffs }
    }

    pub fn constant(c: Q) -> Self {
        AffineMap { constant: c, coeffs: BTreeMap::new() }
    }

    pub fn from_ints(constant: i64, coeffs: &[(usize, i64)]) -> Self {
        Self::new(rat::int(constant), coeffs.iter().map(|&(i, c)| (i, rat::int(c))).collect())
    }

    pub fn coordinate(i: usize) -> Self {
        Self::from_ints(0, &[(i, 1)])
    }

    pub fn constant_term(&self) -> &Q {
        &self.constant
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn variables(&self) -> IndexSet {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_integral(&self) -> bool {
        rat::is_integer(&self.constant) && self.coeffs.values().all(rat::is_integer)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }

    /// Value at a point; `None` if a used coordinate is infinite.
    pub fn eval(&self, a: &[Gamma]) -> Option<Q> {
        let mut s = self.constant.clone();
        for (&i, c) in &self.coeffs {
            let v = a.get(i - 1)?.finite()?;
            s += c * rat::int(v);
        }
        Some(s)
    }

    pub fn eval_rational(&self, x: &BTreeMap<usize, Q>) -> Q {
        let mut s = self.constant.clone();
        for (i, c) in &self.coeffs {
            s += c * x.get(i).cloned().unwrap_or_else(Q::zero);
        }
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (&i, c) in &o.coeffs {
            *coeffs.entry(i).or_insert_with(Q::zero) += c;
        }
        Self::new(&self.constant + &o.constant, coeffs)
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(&self.constant * k, self.coeffs.iter().map(|(&i, c)| (i, c * k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Q::one()))
    }

    /// The linear part as a map without constant.
    pub fn linear(&self) -> Self {
        AffineMap { constant: Q::zero(), coeffs: self.coeffs.clone() }
    }

    /// Replaces each `x_i` by `exprs[i]` when present.
    pub fn substitute(&self, exprs: &BTreeMap<usize, AffineMap>) -> Self {
        let mut out = AffineMap::constant(self.constant.clone());
        for (&i, c) in &self.coeffs {
            let term = match exprs.get(&i) {
                Some(e) => e.scale(c),
                None => AffineMap::new(Q::zero(), [(i, c.clone())].into()),
            };
            out = out.add(&term);
        }
        out
    }

    /// Renames coordinates; panics if a variable has no image.
    pub fn reindex(&self, map: &BTreeMap<usize, usize>) -> Self {
        Self::new(
            self.constant.clone(),
            self.coeffs.iter().map(|(i, c)| (map[i], c.clone())).collect(),
        )
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", rat::format(&self.constant))?;
        for (i, c) in &self.coeffs {
            write!(f, " + {}*x{}", rat::format(c), i)?;
        }
        Ok(())
    }
}

/// An upper bound: affine, or the constant `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Affine(AffineMap),
    Inf,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Out,
    In { mu: AffineMap, nu: Bound },
}

/// Outcome of extending an affine map to a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Finite(AffineMap),
    Infinite,
    NotExtendable,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GammaError {
    #[error("invalid presentation at level {level}: {reason}")]
    InvalidPresentation { level: usize, reason: String },
    #[error("map at level {level} is not largely continuous toward face {face}")]
    NotLargelyContinuous { level: usize, face: String },
    #[error("the face is empty")]
    EmptyFace,
    #[error("index set {0} is not contained in the support")]
    NotInSupport(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

type Result<T> = std::result::Result<T, GammaError>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscretePolytope {
    levels: Vec<Level>,
}

/// Nonempty faces ordered by increasing support, or the first incomparable pair.
#[derive(Clone, Debug)]
pub struct SimplexReport {
    pub faces: Vec<(IndexSet, DiscretePolytope)>,
    pub incomparable: Option<(IndexSet, IndexSet)>,
}

impl SimplexReport {
    pub fn is_simplex(&self) -> bool {
        self.incomparable.is_none()
    }
}

/// Column layout of the support coordinates in an LP.
struct Cols {
    index: BTreeMap<usize, usize>,
}

impl Cols {
    fn new(support: &IndexSet, offset: usize) -> Self {
        Cols { index: support.iter().enumerate().map(|(k, &i)| (i, k + offset)).collect() }
    }

    fn row(&self, n: usize, f: &AffineMap, sign: &Q) -> Vec<Q> {
        let mut r = vec![Q::zero(); n];
        for (i, c) in f.coeffs() {
            r[self.index[i]] += c * sign;
        }
        r
    }
}

impl DiscretePolytope {
    /// Validates and builds a polytope.
    pub fn new(levels: Vec<Level>) -> Result<Self> {
        let mut built = DiscretePolytope { levels: Vec::with_capacity(levels.len()) };
        for (idx, level) in levels.into_iter().enumerate() {
            let j = idx + 1;
            if let Level::In { mu, nu } = &level {
                built.check_level(j, mu, nu)?;
            }
            built.levels.push(level);
        }
        Ok(built)
    }

    /// The single point `(+∞, …, +∞)` of Γ^q.
    pub fn point(q: usize) -> Self {
        DiscretePolytope { levels: vec![Level::Out; q] }
    }

    fn check_level(&self, j: usize, mu: &AffineMap, nu: &Bound) -> Result<()> {
        let bad = |reason: String| GammaError::InvalidPresentation { level: j, reason };
        let supp = self.support();
        let mut maps = vec![mu];
        if let Bound::Affine(n) = nu {
            maps.push(n);
        }
        for f in &maps {
            if let Some(i) = f.variables().iter().find(|i| !supp.contains(i)) {
                return Err(bad(format!("depends on x{i}, which is not an earlier supported coordinate")));
            }
            if !f.is_integral() {
                return Err(bad(format!("map {f} is not integral")));
            }
        }
        match self.minimize(mu) {
            LpResult::Optimal { value, .. } if !value.is_negative() => {}
            _ => return Err(bad(format!("lower bound {mu} takes negative values"))),
        }
        if let Bound::Affine(n) = nu {
            match self.minimize(&n.sub(mu)) {
                LpResult::Optimal { value, .. } if !value.is_negative() => {}
                _ => return Err(bad(format!("upper bound {n} is below lower bound {mu}"))),
            }
        }
        for (face_set, face) in self.faces()? {
            if face_set == supp {
                continue;
            }
            for f in &maps {
                if self.extend_with_face(f, &face_set, &face) == Extension::NotExtendable {
                    return Err(GammaError::NotLargelyContinuous { level: j, face: format_set(&face_set) });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn support(&self) -> IndexSet {
        self.levels
            .iter()
            .enumerate()
            .filter(|(_, l)| matches!(l, Level::In { .. }))
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// The first `k` levels.
    pub fn prefix(&self, k: usize) -> Self {
        DiscretePolytope { levels: self.levels[..k].to_vec() }
    }

    /// Strict membership.
    pub fn member(&self, a: &[Gamma]) -> bool {
        if a.len() != self.dim() {
            return false;
        }
        for (idx, level) in self.levels.iter().enumerate() {
            match (level, a[idx]) {
                (Level::Out, Gamma::Inf) => {}
                (Level::Out, Gamma::Fin(_)) | (Level::In { .. }, Gamma::Inf) => return false,
                (Level::In { mu, nu }, Gamma::Fin(x)) => {
                    let x = rat::int(x);
                    match mu.eval(a) {
                        Some(m) if m <= x => {}
                        _ => return false,
                    }
                    if let Bound::Affine(n) = nu {
                        match n.eval(a) {
                            Some(n) if x <= n => {}
                            _ => return false,
                        }
                    }
                }
            }
        }
        true
    }

    /// Membership in the closure: `a` lies in the face with support `Supp a`.
    pub fn contains(&self, a: &[Gamma]) -> bool {
        if a.len() != self.dim() {
            return false;
        }
        let j = support(a);
        if !j.is_subset(&self.support()) {
            return false;
        }
        match self.face(&j) {
            Ok(Some(f)) => f.member(a),
            _ => false,
        }
    }

    fn add_relax(&self, lp: &mut Lp, cols: &Cols) {
        let n = lp.n;
        let one = Q::one();
        for (idx, level) in self.levels.iter().enumerate() {
            if let Level::In { mu, nu } = level {
                let j = idx + 1;
                let mut r = cols.row(n, mu, &-one.clone());
                r[cols.index[&j]] += Q::one();
                lp.add(r, Relation::Ge, mu.constant_term().clone());
                if let Bound::Affine(nu) = nu {
                    let mut r = cols.row(n, nu, &-one.clone());
                    r[cols.index[&j]] += Q::one();
                    lp.add(r, Relation::Le, nu.constant_term().clone());
                }
            }
        }
    }

    fn add_recession(&self, lp: &mut Lp, cols: &Cols) {
        let n = lp.n;
        let one = Q::one();
        for (idx, level) in self.levels.iter().enumerate() {
            if let Level::In { mu, nu } = level {
                let j = idx + 1;
                let mut r = cols.row(n, mu, &-one.clone());
                r[cols.index[&j]] += Q::one();
                lp.add(r, Relation::Ge, Q::zero());
                if let Bound::Affine(nu) = nu {
                    let mut r = cols.row(n, nu, &-one.clone());
                    r[cols.index[&j]] += Q::one();
                    lp.add(r, Relation::Le, Q::zero());
                }
            }
        }
    }

    /// Minimum of an affine map over the rational relaxation.
    pub fn minimize(&self, f: &AffineMap) -> LpResult {
        let supp = self.support();
        let cols = Cols::new(&supp, 0);
        let mut lp = Lp::new(supp.len());
        self.add_relax(&mut lp, &cols);
        let cost = cols.row(supp.len(), f, &Q::one());
        match lp.minimize(&cost) {
            LpResult::Optimal { value, x } => LpResult::Optimal { value: value + f.constant_term(), x },
            other => other,
        }
    }

    /// For every supported coordinate, an affine expression in the free
    /// coordinates describing the affine hull; free coordinates map to themselves.
    pub fn affine_structure(&self) -> BTreeMap<usize, AffineMap> {
        let mut exprs = BTreeMap::new();
        for (idx, level) in self.levels.iter().enumerate() {
            if let Level::In { mu, nu } = level {
                let m = mu.substitute(&exprs);
                let degenerate = match nu {
                    Bound::Affine(n) => n.substitute(&exprs) == m,
                    Bound::Inf => false,
                };
                let e = if degenerate { m } else { AffineMap::coordinate(idx + 1) };
                exprs.insert(idx + 1, e);
            }
        }
        exprs
    }

    /// Lexicographically smallest point.
    pub fn lexmin_point(&self) -> GammaPoint {
        let mut a = vec![Gamma::Inf; self.dim()];
        for (idx, level) in self.levels.iter().enumerate() {
            if let Level::In { mu, .. } = level {
                let v = mu.eval(&a).expect("earlier coordinates are set");
                a[idx] = Gamma::Fin(rat::to_i64(&v).expect("integral bound"));
            }
        }
        a
    }

    /// `F_J(A)`, or `None` when empty.
    pub fn face(&self, j: &IndexSet) -> Result<Option<DiscretePolytope>> {
        let supp = self.support();
        if !j.is_subset(&supp) {
            return Err(GammaError::NotInSupport(format_set(j)));
        }
        let mut levels: Vec<Level> = Vec::with_capacity(self.dim());
        for (idx, level) in self.levels.iter().enumerate() {
            let coord = idx + 1;
            let Level::In { mu, nu } = level else {
                levels.push(Level::Out);
                continue;
            };
            let prefix = self.prefix(idx);
            let face_prefix = DiscretePolytope { levels: levels.clone() };
            let jhat: IndexSet = j.iter().copied().filter(|&i| i < coord).collect();
            let broken = || GammaError::NotLargelyContinuous { level: coord, face: format_set(&jhat) };
            let ext_mu = prefix.extend_with_face(mu, &jhat, &face_prefix);
            let ext_nu = match nu {
                Bound::Inf => Extension::Infinite,
                Bound::Affine(n) => prefix.extend_with_face(n, &jhat, &face_prefix),
            };
            if ext_mu == Extension::NotExtendable || ext_nu == Extension::NotExtendable {
                return Err(broken());
            }
            if j.contains(&coord) {
                let Extension::Finite(g) = ext_mu else { return Ok(None) };
                let nu_bar = match ext_nu {
                    Extension::Finite(h) => Bound::Affine(h),
                    _ => Bound::Inf,
                };
                levels.push(Level::In { mu: g, nu: nu_bar });
            } else {
                if ext_nu != Extension::Infinite {
                    return Ok(None);
                }
                levels.push(Level::Out);
            }
        }
        Ok(Some(DiscretePolytope { levels }))
    }

    /// Decides how `f` (a map of the supported coordinates) extends to `F_J(A)`.
    pub fn extend_to_face(&self, f: &AffineMap, j: &IndexSet) -> Result<Extension> {
        let supp = self.support();
        if let Some(i) = f.variables().iter().find(|i| !supp.contains(i)) {
            return Err(GammaError::NotInSupport(format!("x{i}")));
        }
        let face = self.face(j)?.ok_or(GammaError::EmptyFace)?;
        Ok(self.extend_with_face(f, j, &face))
    }

    /// As [`extend_to_face`](Self::extend_to_face) with the (nonempty) face given.
    fn extend_with_face(&self, f: &AffineMap, j: &IndexSet, face: &DiscretePolytope) -> Extension {
        let supp = self.support();
        if *j == supp {
            return Extension::Finite(f.substitute(&face.affine_structure()));
        }
        let k = supp.len();
        // f factors through π_J iff max{f(x) - f(x') : π_J x = π_J x'} = 0.
        let cx = Cols::new(&supp, 0);
        let cy = Cols::new(&supp, k);
        let mut lp = Lp::new(2 * k);
        self.add_relax(&mut lp, &cx);
        self.add_relax(&mut lp, &cy);
        for &i in j {
            let mut r = vec![Q::zero(); 2 * k];
            r[cx.index[&i]] = Q::one();
            r[cy.index[&i]] = -Q::one();
            lp.add(r, Relation::Eq, Q::zero());
        }
        let mut cost = cx.row(2 * k, f, &Q::one());
        for (a, b) in cost.iter_mut().zip(cy.row(2 * k, f, &-Q::one())) {
            *a += b;
        }
        if let LpResult::Optimal { value, .. } = lp.maximize(&cost) {
            if value.is_zero() {
                return Extension::Finite(self.factor_through(f, j, face));
            }
        }
        // Divergence: f is positive on every recession direction that fixes the
        // J-coordinates and pushes all others to +∞.
        let cols = Cols::new(&supp, 0);
        let mut lp = Lp::new(k);
        self.add_recession(&mut lp, &cols);
        for &i in &supp {
            let mut r = vec![Q::zero(); k];
            r[cols.index[&i]] = Q::one();
            if j.contains(&i) {
                lp.add(r, Relation::Eq, Q::zero());
            } else {
                lp.add(r, Relation::Ge, Q::one());
            }
        }
        match lp.minimize(&cols.row(k, f, &Q::one())) {
            LpResult::Optimal { value, .. } if value.is_positive() => Extension::Infinite,
            _ => Extension::NotExtendable,
        }
    }

    /// The map `g` on J-coordinates with `f = g ∘ π_J`, normalized on the face.
    fn factor_through(&self, f: &AffineMap, j: &IndexSet, face: &DiscretePolytope) -> AffineMap {
        let aff = self.affine_structure();
        let target = f.substitute(&aff);
        let free: Vec<usize> = aff
            .iter()
            .filter(|(i, e)| **e == AffineMap::coordinate(**i))
            .map(|(i, _)| *i)
            .collect();
        let jv: Vec<usize> = j.iter().copied().collect();
        let matrix: Vec<Vec<Q>> = free
            .iter()
            .map(|&t| jv.iter().map(|&i| aff[&i].coeff(t)).collect())
            .collect();
        let rhs: Vec<Q> = free.iter().map(|&t| target.coeff(t)).collect();
        let c = solve(&matrix, &rhs).expect("factorization exists when the LP maximum is zero");
        let mut constant = target.constant_term().clone();
        for (ci, &i) in c.iter().zip(&jv) {
            constant -= ci * aff[&i].constant_term();
        }
        let g = AffineMap::new(constant, jv.iter().copied().zip(c).collect());
        g.substitute(&face.affine_structure())
    }

    /// All nonempty faces (including the polytope itself), by increasing support.
    pub fn faces(&self) -> Result<Vec<(IndexSet, DiscretePolytope)>> {
        let supp: Vec<usize> = self.support().into_iter().collect();
        let mut subsets: Vec<IndexSet> = (0u64..(1u64 << supp.len()))
            .map(|mask| supp.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect())
            .collect();
        subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut out = Vec::new();
        for j in subsets {
            if let Some(f) = self.face(&j)? {
                out.push((j, f));
            }
        }
        Ok(out)
    }

    /// Checks that the faces form a chain for the face-of relation.
    pub fn is_simplex(&self) -> Result<SimplexReport> {
        let faces = self.faces()?;
        let mut incomparable = None;
        for w in faces.windows(2) {
            let (ja, _) = &w[0];
            let (jb, fb) = &w[1];
            if ja.len() == jb.len() || !ja.is_subset(jb) || fb.face(ja)?.is_none() {
                incomparable = Some((ja.clone(), jb.clone()));
                break;
            }
        }
        Ok(SimplexReport { faces, incomparable })
    }

    /// Lattice-point inclusion.
    pub fn is_subset(&self, o: &DiscretePolytope) -> bool {
        self.dim() == o.dim() && self.support() == o.support() && self.satisfies(o)
    }

    /// Whether `π_J(self) ⊆ face` for `J = Supp face ⊆ Supp self`.
    pub fn projects_into(&self, face: &DiscretePolytope) -> bool {
        self.dim() == face.dim() && face.support().is_subset(&self.support()) && self.satisfies(face)
    }

    /// Every inequality of `o` holds on `self`.
    fn satisfies(&self, o: &DiscretePolytope) -> bool {
        for (idx, level) in o.levels.iter().enumerate() {
            if let Level::In { mu, nu } = level {
                let x = AffineMap::coordinate(idx + 1);
                match self.minimize(&x.sub(mu)) {
                    LpResult::Optimal { value, .. } if !value.is_negative() => {}
                    _ => return false,
                }
                if let Bound::Affine(n) = nu {
                    match self.minimize(&n.sub(&x)) {
                        LpResult::Optimal { value, .. } if !value.is_negative() => {}
                        _ => return false,
                    }
                }
            }
        }
        true
    }

    pub fn set_eq(&self, o: &DiscretePolytope) -> bool {
        self.is_subset(o) && o.is_subset(self)
    }

    /// Whether the two polytopes share a lattice point.
    pub fn intersects(&self, o: &DiscretePolytope) -> bool {
        if self.dim() != o.dim() || self.support() != o.support() {
            return false;
        }
        let supp = self.support();
        let cols = Cols::new(&supp, 0);
        let mut lp = Lp::new(supp.len());
        self.add_relax(&mut lp, &cols);
        o.add_relax(&mut lp, &cols);
        lp.integer_point().is_some()
    }

    /// Moves coordinate `i` to `map[i]` in Γ^`dim`; the map must be increasing on the support.
    pub fn reindex(&self, dim: usize, map: &BTreeMap<usize, usize>) -> Self {
        let mut levels = vec![Level::Out; dim];
        for (idx, level) in self.levels.iter().enumerate() {
            if let Level::In { mu, nu } = level {
                let nu = match nu {
                    Bound::Inf => Bound::Inf,
                    Bound::Affine(n) => Bound::Affine(n.reindex(map)),
                };
                levels[map[&(idx + 1)] - 1] = Level::In { mu: mu.reindex(map), nu };
            }
        }
        DiscretePolytope { levels }
    }

    /// Appends a level (validated).
    pub fn push_level(&self, level: Level) -> Result<Self> {
        let mut levels = self.levels.clone();
        levels.push(level);
        let j = levels.len();
        if let Level::In { mu, nu } = &levels[j - 1] {
            self.check_level(j, mu, nu)?;
        }
        Ok(DiscretePolytope { levels })
    }
}

/// Any solution of `A c = b` over Q.
fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pv = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v = &*v / &pv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pr = m[r].clone();
                for (v, w) in m[i].iter_mut().zip(pr) {
                    *v = &*v - &f * w;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Shorthand for building integral levels in tests and generators.
pub fn level(mu: AffineMap, nu: Option<AffineMap>) -> Level {
    Level::In { mu, nu: nu.map(Bound::Affine).unwrap_or(Bound::Inf) }
}

pub fn set(items: &[usize]) -> IndexSet {
    items.iter().copied().collect()
}
