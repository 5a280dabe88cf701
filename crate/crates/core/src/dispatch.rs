//! Dispatching a rooted cellular monoplex into a simplicial complex: the
//! index maps `H`, `P`, `σ_A`, the lifted simplexes `S_A`, the Cartesian map
//! `Φ` and the bijection `φ`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use thiserror::Error;

use crate::cells::{CellError, CellularMonoplex, MonomialCell};
use crate::complex::{validate_complex, Block, ComplexError, PadicSimplex, SimplicialComplex};
use crate::gamma::{format_set, Bound, DiscretePolytope, Gamma, IndexSet, Level};
use crate::lp::LpResult;
use crate::oracle::{lift_point, Rng};
use crate::padic::{vp_u64, PadicError, PadicNumber};

/// Largest index allowed in `H`.
pub const INDEX_LIMIT: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DispatchError {
    #[error("precondition {0} violated: {1}")]
    Precondition(String, String),
    #[error("postcondition {0} violated: {1}")]
    Postcondition(String, String),
    #[error("certification of {0} failed: {1}")]
    Certification(String, String),
    #[error("point is not in the complex")]
    NotInComplex,
    #[error("point is not in the cell")]
    NotInCell,
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

type Result<T> = std::result::Result<T, DispatchError>;

fn pre(name: &str, detail: String) -> DispatchError {
    DispatchError::Precondition(name.to_string(), detail)
}

fn post(name: &str, detail: String) -> DispatchError {
    DispatchError::Postcondition(name.to_string(), detail)
}

pub type Indices = BTreeSet<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DispatchResult {
    pub h: Vec<Indices>,
    pub p: Vec<Indices>,
    pub sigma: Vec<BTreeMap<usize, u64>>,
    /// `max H(A)` for type-1 cells.
    pub r: Vec<Option<u64>>,
    pub q1: usize,
    pub q2: u64,
    /// Cells in the order they were added.
    pub order: Vec<usize>,
}

fn format_indices(s: &Indices) -> String {
    let v: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

/// Whether `B` is a face of `A` or equal to it.
fn below_eq(parent: &[Option<usize>], b: usize, a: usize) -> bool {
    let mut cur = Some(a);
    while let Some(c) = cur {
        if c == b {
            return true;
        }
        cur = parent[c];
    }
    false
}

fn check_preconditions(m: &CellularMonoplex) -> Result<Vec<Option<usize>>> {
    let parent = m.parents().ok_or_else(|| pre("rooted tree", "the edges do not form a rooted tree".into()))?;
    let q1 = m.cells.first().map_or(0, |c| c.socle().dim());
    for (a, ca) in m.cells.iter().enumerate() {
        if ca.socle().dim() != q1 {
            return Err(pre("rooted tree", format!("cell {a} lives in another dimension")));
        }
        let below: Vec<&PadicSimplex> =
            (0..m.cells.len()).filter(|&b| below_eq(&parent, b, a)).map(|b| m.cells[b].socle()).collect();
        let faces = ca.socle().faces_of();
        for u in &below {
            if !ca.socle().has_face(u) {
                return Err(pre("faces-UA", format!("a socle below cell {a} is not a face of its socle")));
            }
        }
        for f in &faces {
            if !below.iter().any(|u| u.same_set(f)) {
                return Err(pre(
                    "faces-UA",
                    format!("face {} of the socle of cell {a} is not a socle below it", format_set(&f.support())),
                ));
            }
        }
        if let Some(b) = parent[a] {
            let cb = &m.cells[b];
            let facet = ca.socle().facet();
            let is_facet = facet.as_ref().is_some_and(|f| f.same_set(cb.socle()));
            let same = ca.socle().same_set(cb.socle());
            let ok = match (cb.ty(), ca.ty()) {
                (0, 0) | (1, 1) => is_facet,
                (0, 1) => is_facet || same,
                _ => false,
            };
            if !ok {
                return Err(pre("face-stricte", format!("cell {b} is the predecessor of cell {a}")));
            }
        }
    }
    Ok(parent)
}

/// Computes `H`, `P`, `σ` by adding maximal cells one at a time.
pub fn dispatch(m: &CellularMonoplex) -> Result<DispatchResult> {
    let parent = check_preconditions(m)?;
    let n = m.cells.len();
    let q1 = m.cells.first().map_or(0, |c| c.socle().dim());
    let supp = |a: usize| -> IndexSet { m.cells[a].socle().support() };
    // Peel the leaf with the largest index until only the root is left.
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut peeled = Vec::new();
    while alive.len() > 1 {
        let leaf = *alive
            .iter()
            .rev()
            .find(|&&a| !alive.iter().any(|&c| parent[c] == Some(a)))
            .expect("a finite tree has a leaf");
        alive.remove(&leaf);
        peeled.push(leaf);
    }
    let root = *alive.iter().next().expect("nonempty monoplex");
    let mut order = vec![root];
    order.extend(peeled.into_iter().rev());

    let mut h: Vec<Indices> = vec![Indices::new(); n];
    let mut p: Vec<Indices> = vec![Indices::new(); n];
    let mut sigma: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); n];
    let mut done = vec![false; n];

    sigma[root] = supp(root).iter().map(|&i| (i, i as u64)).collect();
    p[root] = sigma[root].values().copied().collect();
    h[root] = p[root].clone();
    if m.cells[root].ty() == 1 {
        h[root].insert(q1 as u64 + 1);
    }
    done[root] = true;

    for &a in &order[1..] {
        let b = parent[a].expect("non-root");
        let (ua, ub) = (supp(a), supp(b));
        let k = (ua.difference(&ub).count() + 1) as u64;
        for c in (0..n).filter(|&c| done[c]) {
            p[c] = p[c].iter().map(|i| i * k).collect();
            h[c] = h[c].iter().map(|i| i * k).collect();
            for v in sigma[c].values_mut() {
                *v *= k;
            }
        }
        let q = (0..n).filter(|&c| done[c]).flat_map(|c| h[c].iter().copied()).max().unwrap_or(0);
        let mut s = BTreeMap::new();
        for &i in &ua {
            let jl = ub.range(..=i).next_back().copied().unwrap_or(0);
            let base = if jl == 0 { 0 } else { sigma[b][&jl] };
            let offset = ua.iter().filter(|&&t| t > jl && t <= i).count() as u64;
            s.insert(i, base + offset);
        }
        sigma[a] = s;
        p[a] = sigma[a].values().copied().collect();
        let same = m.cells[a].socle().same_set(m.cells[b].socle());
        h[a] = match (m.cells[b].ty(), m.cells[a].ty(), same) {
            (0, 0, _) => p[a].clone(),
            (0, 1, true) => {
                let mut s = h[b].clone();
                s.insert(q + k);
                s
            }
            (0, 1, false) => {
                let mut s = p[a].clone();
                s.insert(q + k);
                s
            }
            _ => p[a].union(&h[b]).copied().collect(),
        };
        done[a] = true;
    }
    let r: Vec<Option<u64>> =
        (0..n).map(|a| if m.cells[a].ty() == 1 { h[a].iter().next_back().copied() } else { None }).collect();
    let q2 = h.iter().flat_map(|s| s.iter().copied()).max().unwrap_or(0);
    let d = DispatchResult { h, p, sigma, r, q1, q2, order };
    verify(m, &parent, &d)?;
    Ok(d)
}

/// Checks (C0)–(C5), strict growth of `H` and the index limit.
pub fn verify(m: &CellularMonoplex, parent: &[Option<usize>], d: &DispatchResult) -> Result<()> {
    let n = m.cells.len();
    for a in 0..n {
        let ca = &m.cells[a];
        let (ha, pa) = (&d.h[a], &d.p[a]);
        if ca.ty() == 0 && ha != pa {
            return Err(post("C0", format!("cell {a}: H = {} but P = {}", format_indices(ha), format_indices(pa))));
        }
        if ca.ty() == 1 {
            let extra: Vec<u64> = ha.difference(pa).copied().collect();
            let ok = pa.is_subset(ha) && extra.len() == 1 && pa.iter().all(|&i| i < extra[0]);
            if !ok {
                return Err(post("C1", format!("cell {a}")));
            }
        }
        let su = ca.socle().support();
        if pa.len() != su.len() {
            return Err(post("C2", format!("cell {a}")));
        }
        let s = &d.sigma[a];
        let keys: IndexSet = s.keys().copied().collect();
        let values: Vec<u64> = s.values().copied().collect();
        if keys != su || values.windows(2).any(|w| w[0] >= w[1]) || values.iter().copied().collect::<Indices>() != *pa {
            return Err(post("C4", format!("cell {a}: σ is not the increasing bijection onto P")));
        }
        if ha.iter().any(|&i| i == 0 || i >= INDEX_LIMIT) {
            return Err(post("index limit", format!("cell {a}")));
        }
        for b in (0..n).filter(|&b| b != a && below_eq(parent, b, a)) {
            let inter: Indices = d.h[b].intersection(pa).copied().collect();
            if inter != d.p[b] {
                return Err(post("C3", format!("cells {b} and {a}")));
            }
            let image: Indices = m.cells[b].socle().support().iter().map(|i| s[i]).collect();
            if image != d.p[b] {
                return Err(post("C4", format!("cells {b} and {a}")));
            }
            if !d.h[b].is_subset(ha) || d.h[b] == *ha {
                return Err(post("H strictly increasing", format!("cells {b} and {a}")));
            }
        }
        for c in 0..n {
            if d.p[c].is_subset(pa) && !ca.socle().has_face(m.cells[c].socle()) {
                return Err(post("C5", format!("cells {c} and {a}")));
            }
        }
    }
    Ok(())
}

/// The lifted simplexes with the data needed to evaluate `Φ` and `φ`.
#[derive(Clone, Debug)]
pub struct LiftedComplex {
    pub dispatch: DispatchResult,
    pub cells: Vec<MonomialCell>,
    pub simplexes: Vec<PadicSimplex>,
    pub certificates: Vec<(String, bool)>,
    pub tree: Vec<(usize, usize)>,
    pub index: u32,
    pub p: u64,
}

fn cert(name: &str, detail: String) -> DispatchError {
    DispatchError::Certification(name.to_string(), detail)
}

/// Builds `S_A` for every cell and certifies the Γ-level claims.
pub fn build_lift(m: &CellularMonoplex, d: &DispatchResult) -> Result<LiftedComplex> {
    let parent = m.parents().ok_or_else(|| pre("rooted tree", "the edges do not form a rooted tree".into()))?;
    let first = m.cells.first().ok_or_else(|| pre("rooted tree", "empty monoplex".into()))?;
    let (nn, mp, index) = (first.n(), first.mp(), first.socle().index());
    let prime = first.lambda().prime();
    for (a, c) in m.cells.iter().enumerate() {
        if c.n() != nn || c.mp() != mp || c.socle().index() != index {
            return Err(pre("common parameters", format!("cell {a}")));
        }
        if c.ty() == 1 && c.mu().is_infinity() {
            return Err(pre("bounded cells", format!("cell {a} has μ = ∞")));
        }
    }
    let vn = vp_u64(prime, nn);
    if mp != index + vn || index <= vn {
        return Err(pre("M' = M + v(N) > 2v(N)", format!("M = {index}, M' = {mp}, v(N) = {vn}")));
    }
    let q2 = d.q2 as usize;
    let mut simplexes = Vec::with_capacity(m.cells.len());
    for (a, c) in m.cells.iter().enumerate() {
        let map: BTreeMap<usize, usize> = d.sigma[a].iter().map(|(&i, &j)| (i, j as usize)).collect();
        let base = c.socle().shape().reindex(q2, &map);
        let shape = match d.r[a] {
            None => base,
            Some(r) => {
                let mu = match c.mu_v()? {
                    Bound::Affine(g) => g.reindex(&map),
                    Bound::Inf => return Err(cert("SA-simplex", format!("cell {a}: μᵛ = +∞"))),
                };
                let nu = match c.nu_v()? {
                    Bound::Affine(g) => Bound::Affine(g.reindex(&map)),
                    Bound::Inf => Bound::Inf,
                };
                let mut levels: Vec<Level> = base.levels().to_vec();
                levels[r as usize - 1] = Level::In { mu, nu };
                DiscretePolytope::new(levels).map_err(|e| cert("SA-simplex", format!("cell {a}: {e}")))?
            }
        };
        let s = PadicSimplex::new(index, shape).map_err(|e| cert("SA-simplex", format!("cell {a}: {e}")))?;
        simplexes.push(s);
    }
    let lc = LiftedComplex {
        dispatch: d.clone(),
        cells: m.cells.clone(),
        simplexes,
        certificates: Vec::new(),
        tree: m.tree.clone(),
        index,
        p: prime,
    };
    let certificates = lc.certify(&parent)?;
    Ok(LiftedComplex { certificates, ..lc })
}

impl LiftedComplex {
    fn certify(&self, parent: &[Option<usize>]) -> Result<Vec<(String, bool)>> {
        let n = self.cells.len();
        let d = &self.dispatch;
        let mut out = vec![("SA-simplex".to_string(), true)];
        for a in 0..n {
            let got: Indices = self.simplexes[a].support().iter().map(|&i| i as u64).collect();
            if got != d.h[a] {
                return Err(cert("support", format!("cell {a}: Supp S_A = {} but H = {}", format_indices(&got), format_indices(&d.h[a]))));
            }
        }
        out.push(("support".into(), true));
        let c = SimplicialComplex {
            m: self.index,
            blocks: vec![Block { q: d.q2 as usize, simplexes: self.simplexes.clone(), rooted: true }],
        };
        let report = validate_complex(&c);
        if !report.is_complex || !report.is_monoplex {
            return Err(cert("complex", report.violations.join("; ")));
        }
        out.push(("complex".into(), true));
        for a in 0..n {
            let faces = self.simplexes[a].faces_of();
            let below: Vec<usize> = (0..n).filter(|&b| below_eq(parent, b, a)).collect();
            let covered = faces.iter().all(|f| below.iter().any(|&b| self.simplexes[b].same_set(f)));
            let inside = below.iter().all(|&b| faces.iter().any(|f| f.same_set(&self.simplexes[b])));
            if !covered || !inside {
                return Err(cert("face law", format!("cell {a}")));
            }
        }
        out.push(("face law".into(), true));
        for a in 0..n {
            self.check_image(a)?;
        }
        out.push(("image-SA".into(), true));
        for (i, x) in self.simplexes.iter().enumerate() {
            for (j, y) in self.simplexes.iter().enumerate() {
                if x.has_face(y) != y.support().is_subset(&x.support()) {
                    return Err(cert("Supp-order", format!("simplexes {j} and {i}")));
                }
            }
        }
        out.push(("Supp-order".into(), true));
        for a in 0..n {
            for b in (0..n).filter(|&b| b != a && below_eq(parent, b, a)) {
                let sb = self.cells[b].socle().support();
                for (i, &v) in &d.sigma[a] {
                    let ok = if sb.contains(i) { d.sigma[b][i] == v } else { !d.h[b].contains(&v) };
                    if !ok {
                        return Err(cert("cart-cont", format!("cells {b} and {a}, coordinate {i}")));
                    }
                }
            }
        }
        out.push(("cart-cont".into(), true));
        Ok(out)
    }

    /// `Φ(S_A) = U_A` on valuations, and every fiber over `vU_A` is nonempty.
    fn check_image(&self, a: usize) -> Result<()> {
        let d = &self.dispatch;
        let shape = self.simplexes[a].shape();
        let mut levels: Vec<Level> = shape.levels().to_vec();
        if let Some(r) = d.r[a] {
            let Level::In { mu, nu } = &levels[r as usize - 1] else {
                return Err(cert("image-SA", format!("cell {a}: level r is not supported")));
            };
            if let Bound::Affine(nu) = nu {
                if !matches!(shape.prefix(r as usize - 1).minimize(&nu.sub(mu)), LpResult::Optimal { value, .. } if !value.is_negative())
                {
                    return Err(cert("image-SA", format!("cell {a}: empty fiber")));
                }
            }
            levels[r as usize - 1] = Level::Out;
        }
        let back: BTreeMap<usize, usize> = d.sigma[a].iter().map(|(&i, &j)| (j as usize, i)).collect();
        let pulled = DiscretePolytope::new(levels)
            .map_err(|e| cert("image-SA", format!("cell {a}: {e}")))?
            .reindex(d.q1, &back);
        if !pulled.set_eq(self.cells[a].socle().shape()) {
            return Err(cert("image-SA", format!("cell {a}: Φ(S_A) differs from U_A")));
        }
        Ok(())
    }

    /// The simplex containing `y`.
    pub fn locate(&self, y: &[PadicNumber]) -> Result<usize> {
        for (a, s) in self.simplexes.iter().enumerate() {
            if s.member(y)? {
                return Ok(a);
            }
        }
        Err(DispatchError::NotInComplex)
    }

    /// `Φ(y) = [σ_A](y)` for `y ∈ S_A`.
    pub fn eval_big_phi(&self, a: usize, y: &[PadicNumber]) -> Result<Vec<PadicNumber>> {
        if !self.simplexes[a].member(y)? {
            return Err(DispatchError::NotInComplex);
        }
        let mut u = vec![PadicNumber::zero(self.p); self.dispatch.q1];
        for (&i, &j) in &self.dispatch.sigma[a] {
            u[i - 1] = y[j as usize - 1].clone();
        }
        Ok(u)
    }

    /// `φ(y) = (Φ(y), c_A(Φ(y)) + p^{-NM'} λ_A y_r^N)`, with the located cell.
    pub fn eval_phi(&self, y: &[PadicNumber]) -> Result<(usize, Vec<PadicNumber>, PadicNumber)> {
        let a = self.locate(y)?;
        let x = self.eval_big_phi(a, y)?;
        let cell = &self.cells[a];
        let c = cell.center_at(&x)?;
        let t = match self.dispatch.r[a] {
            None => c,
            Some(r) => {
                let yr = &y[r as usize - 1];
                let shift = -((cell.n() * cell.mp() as u64) as i64);
                let term = cell.lambda().mul(&yr.pow(cell.n() as i64)?).shift(shift);
                c.add(&term)?
            }
        };
        Ok((a, x, t))
    }

    /// The preimage of `(x, t) ∈ A` under `φ`.
    pub fn invert_phi(&self, a: usize, x: &[PadicNumber], t: &PadicNumber) -> Result<Vec<PadicNumber>> {
        let cell = &self.cells[a];
        if !cell.cell_member(x, t)? {
            return Err(DispatchError::NotInCell);
        }
        let d = &self.dispatch;
        let mut y = vec![PadicNumber::zero(self.p); d.q2 as usize];
        for (&i, &j) in &d.sigma[a] {
            y[j as usize - 1] = x[i - 1].clone();
        }
        if let Some(r) = d.r[a] {
            let delta = cell.offset(x, t)?;
            let w = delta.shift((cell.n() * cell.mp() as u64) as i64).div(cell.lambda())?;
            y[r as usize - 1] = w.nth_root(cell.n())?;
        }
        Ok(y)
    }

    /// DOT node labels of the lifted simplexes.
    pub fn labels(&self) -> Vec<String> {
        self.simplexes.iter().map(|s| format!("Supp={}", format_set(&s.support()))).collect()
    }

    /// Slack `c₀` of the continuity bound for `φ`: the largest `N·M'`, plus
    /// the largest negative valuation of a center coefficient.
    pub fn phi_slack(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| {
                let base = (c.n() * c.mp() as u64) as i64;
                let coef = match c.center().valuation_map() {
                    Some(g) => (-crate::rat::to_i64(g.constant_term()).unwrap_or(0)).max(0),
                    None => 0,
                };
                base + coef
            })
            .max()
            .unwrap_or(0)
    }

    /// Points `y ∈ S_A` whose coordinates outside `H(B)` have valuation at
    /// least `k` and whose projection lies in `S_B`, for `B` below `A`.
    pub fn approach_samples(&self, a: usize, b: usize, k: i64, count: usize, seed: u64) -> Vec<(Vec<PadicNumber>, Vec<PadicNumber>)> {
        let shape_a = self.simplexes[a].shape();
        let hb: IndexSet = self.dispatch.h[b].iter().map(|&i| i as usize).collect();
        let targets = crate::oracle::enumerate_members(self.simplexes[b].shape(), &crate::oracle::Window::new(3, shape_a.dim()))
            .unwrap_or_default();
        let mut rng = Rng::new(seed);
        let mut out = Vec::new();
        if targets.is_empty() {
            return out;
        }
        for _ in 0..count {
            let target = rng.pick(&targets).clone();
            let Some(g) = approach_point(shape_a, &hb, &target, k) else { continue };
            let y = lift_point(self.p, self.index, &g, &mut rng);
            let z = crate::complex::project_point(&y, &hb);
            out.push((y, z));
        }
        out
    }
}

/// Greedy point of `shape` equal to `target` on `keep` and at least `t ≥ k`
/// elsewhere on the support.
fn approach_point(shape: &DiscretePolytope, keep: &IndexSet, target: &[Gamma], k: i64) -> Option<Vec<Gamma>> {
    'grow: for t in k..k + 64 {
        let mut a = vec![Gamma::Inf; shape.dim()];
        for (idx, level) in shape.levels().iter().enumerate() {
            let Level::In { mu, nu } = level else { continue };
            let lo = crate::rat::ceil(&mu.eval(&a)?);
            let lo = i64::try_from(lo).ok()?;
            let hi = match nu {
                Bound::Inf => None,
                Bound::Affine(n) => Some(i64::try_from(crate::rat::floor(&n.eval(&a)?)).ok()?),
            };
            let v = if keep.contains(&(idx + 1)) {
                match target[idx] {
                    Gamma::Fin(v) => v,
                    Gamma::Inf => return None,
                }
            } else {
                lo.max(t)
            };
            if v < lo || hi.is_some_and(|h| v > h) {
                continue 'grow;
            }
            a[idx] = Gamma::Fin(v);
        }
        return Some(a);
    }
    None
}

/// `min_i v(x_i − y_i)`, `None` when the points agree.
pub fn distance_valuation(x: &[PadicNumber], y: &[PadicNumber]) -> Result<Option<i64>> {
    let mut best: Option<i64> = None;
    for (a, b) in x.iter().zip(y) {
        if let Gamma::Fin(v) = a.sub(b)?.valuation() {
            best = Some(best.map_or(v, |w| w.min(v)));
        }
    }
    Ok(best)
}
