//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use ptri_core::cells::{CellularMonoplex, MonomialCell, MonomialFn};
use ptri_core::complex::{Block, PadicSimplex, SimplicialComplex};
use ptri_core::gamma::{level, AffineMap, DiscretePolytope, IndexSet, Level};
use ptri_core::oracle::Rng;
use ptri_core::padic::{vp_u64, PadicNumber};

pub const PRIMES: [u64; 3] = [2, 3, 5];

fn affine(rng: &mut Rng, vars: &[usize], lo: i64, hi: i64, c0: i64) -> AffineMap {
    let coeffs: Vec<(usize, i64)> = vars.iter().map(|&v| (v, rng.range(lo, hi))).collect();
    AffineMap::from_ints(c0, &coeffs)
}

/// A valid presentation with `q` levels and coefficients in `[-c, c]`.
pub fn random_polytope(rng: &mut Rng, q: usize, c: i64) -> DiscretePolytope {
    loop {
        let mut levels = Vec::new();
        let mut supp: Vec<usize> = Vec::new();
        for i in 1..=q {
            if rng.below(5) == 0 {
                levels.push(Level::Out);
                continue;
            }
            let c0 = rng.range(-c, c);
            let mu = affine(rng, &supp, -c, c, c0);
            let nu = if rng.coin() {
                None
            } else {
                let c0 = rng.range(0, c);
                let d = affine(rng, &supp, -c, c, c0);
                Some(mu.add(&d))
            };
            levels.push(level(mu, nu));
            supp.push(i);
        }
        if let Ok(a) = DiscretePolytope::new(levels) {
            return a;
        }
    }
}

pub fn random_affine(rng: &mut Rng, vars: &IndexSet, c: i64) -> AffineMap {
    let v: Vec<usize> = vars.iter().copied().collect();
    let c0 = rng.range(-c, c);
    affine(rng, &v, -c, c, c0)
}

pub fn random_subset(rng: &mut Rng, s: &IndexSet) -> IndexSet {
    s.iter().copied().filter(|_| rng.coin()).collect()
}

/// `o_1 ≤ x_1`, `o_i ≤ x_i ≤ x_{i-1} + d_i`: a simplex whose faces have the
/// suffix supports `{k..q}`.
pub fn staircase(q: usize, offsets: &[(i64, i64)]) -> DiscretePolytope {
    let mut levels = Vec::new();
    for i in 1..=q {
        let (o, d) = offsets.get(i - 1).copied().unwrap_or((0, 0));
        let nu = (i > 1).then(|| AffineMap::from_ints(d, &[(i - 1, 1)]));
        levels.push(level(AffineMap::from_ints(o, &[]), nu));
    }
    DiscretePolytope::new(levels).expect("staircase presentation")
}

pub fn random_staircase(rng: &mut Rng, q: usize) -> DiscretePolytope {
    let mut offsets = Vec::new();
    let mut prev = 0;
    for i in 0..q {
        let o = if i == 0 { rng.range(0, 2) } else { rng.range(0, prev + 1) };
        let d = if i == 0 { 0 } else { rng.range((o - prev).max(0), 2) };
        offsets.push((o, d));
        prev = o;
    }
    staircase(q, &offsets)
}

/// Parameters of a generated monoplex.
#[derive(Clone, Debug)]
pub struct MonoplexParams {
    pub p: u64,
    pub n: u64,
    pub mp: u32,
    pub m: u32,
    pub q: usize,
}

/// The face of a staircase with support `{q-k+1..q}`.
fn level_socle(faces: &[PadicSimplex], k: usize) -> PadicSimplex {
    faces.iter().find(|f| f.support().len() == k).cloned().expect("suffix face")
}

/// A valid rooted cellular monoplex: a spine of type-0 cells over a chain of
/// staircase faces, with up to two type-1 chains (different `λ` cosets)
/// hanging from its top. Depth at most 4, at most 10 cells.
pub fn random_monoplex(rng: &mut Rng) -> (CellularMonoplex, MonoplexParams) {
    loop {
        if let Some(out) = try_monoplex(rng) {
            return out;
        }
    }
}

fn try_monoplex(rng: &mut Rng) -> Option<(CellularMonoplex, MonoplexParams)> {
    let p = *rng.pick(&PRIMES);
    let n = rng.range(1, 3) as u64;
    let vn = vp_u64(p, n);
    let m = vn + 1 + rng.range(0, 1) as u32;
    let mp = m + vn;
    let q = rng.range(1, 4) as usize;
    let top = rng.range(0, q.min(3) as i64) as usize;
    let socle = PadicSimplex::new(m, random_staircase(rng, q)).ok()?;
    let faces = socle.faces_of();
    let center = match rng.below(3) {
        0 => MonomialFn::Zero,
        _ => MonomialFn::constant(PadicNumber::p_power(p, rng.range(-1, 2))),
    };
    let zero = || MonomialFn::Zero;
    let type0 = |k: usize| {
        MonomialCell::new(level_socle(&faces, k), center.clone(), zero(), zero(), PadicNumber::zero(p), n, mp)
    };
    let mut cells = Vec::new();
    let mut tree = Vec::new();
    for k in 0..=top {
        cells.push(type0(k).ok()?);
        if k > 0 {
            tree.push((k - 1, k));
        }
    }
    // Closure forces the shape of each chain: μ vanishes toward every proper
    // face of the first socle, and ν vanishes toward the facet whenever no
    // same-socle type-0 cell sits below.
    let classes = if n >= 2 { rng.range(0, 2) } else { rng.range(0, 1) };
    let nn = n as i64;
    for l in 0..classes as u32 {
        let same = top == q || rng.coin();
        let start = if same { top } else { top + 1 };
        let len = 1 + rng.range(0, (q - start).min(3 - top) as i64) as usize;
        let lambda = PadicNumber::p_power(p, l as i64);
        let a = l as i64 + nn * rng.range(0, 1);
        let b = rng.range(1, 2);
        let first = |k: usize| q - k + 1;
        let mut exps = BTreeMap::new();
        if start > 0 {
            exps.insert(first(start), nn * b);
        }
        let mu = MonomialFn::mono(PadicNumber::p_power(p, a), exps);
        let fresh = |rng: &mut Rng, k: usize| {
            let mut e = BTreeMap::new();
            let c = b + rng.range(0, 1);
            e.insert(first(k), nn * c);
            MonomialFn::mono(PadicNumber::p_power(p, a + nn * (b + rng.range(0, 1))), e)
        };
        let mut nu = if same { MonomialFn::Zero } else { fresh(rng, start) };
        let mut parent = top;
        for k in start..start + len {
            if k > start && nu.is_zero() {
                nu = fresh(rng, k);
            }
            let cell = MonomialCell::new(level_socle(&faces, k), center.clone(), nu.clone(), mu.clone(), lambda.clone(), n, mp).ok()?;
            cells.push(cell);
            tree.push((parent, cells.len() - 1));
            parent = cells.len() - 1;
        }
    }
    let mono = CellularMonoplex { cells, tree };
    let r = mono.validate();
    if !r.closed {
        return None;
    }
    Some((mono, MonoplexParams { p, n, mp, m, q }))
}

/// Depth of the tree (edges on the longest root path).
pub fn depth(m: &CellularMonoplex) -> usize {
    let parent = m.parents().expect("tree");
    (0..m.cells.len()).map(|a| m.ancestors(&parent, a).len()).max().unwrap_or(0)
}

/// Removes an interior spine node, linking its child to its parent: the
/// child then misses a face of its socle.
pub fn inject_faces_violation(m: &CellularMonoplex) -> Option<CellularMonoplex> {
    let parent = m.parents()?;
    let socle = |a: usize| m.cells[a].socle();
    let mid = (0..m.cells.len()).find(|&a| {
        let kids = m.children(a);
        parent[a].is_some_and(|b| !socle(b).same_set(socle(a)))
            && !kids.is_empty()
            && kids.iter().all(|&c| !socle(c).same_set(socle(a)))
    })?;
    let up = parent[mid]?;
    let mut cells = Vec::new();
    let mut remap = BTreeMap::new();
    for (i, c) in m.cells.iter().enumerate() {
        if i != mid {
            remap.insert(i, cells.len());
            cells.push(c.clone());
        }
    }
    let tree = m
        .tree
        .iter()
        .filter(|&&(_, b)| b != mid)
        .map(|&(a, b)| {
            let a = if a == mid { up } else { a };
            (remap[&a], remap[&b])
        })
        .collect();
    Some(CellularMonoplex { cells, tree })
}

/// Adds a type-0 child with the same socle under a type-0 cell: a pair the
/// predecessor rule forbids.
pub fn inject_face_stricte_violation(m: &CellularMonoplex) -> CellularMonoplex {
    let leaf = (0..m.cells.len()).filter(|&a| m.cells[a].ty() == 0).max().expect("type-0 cell");
    let mut out = m.clone();
    out.cells.push(m.cells[leaf].clone());
    out.tree.push((leaf, m.cells.len()));
    out
}

/// A closed complex of one or two blocks: a staircase with all its faces, the
/// two-chamber partition of the quadrant with its faces, or a point with a
/// clopen simplex.
pub fn random_closed_complex(rng: &mut Rng) -> SimplicialComplex {
    let m = rng.range(1, 2) as u32;
    let nblocks = rng.range(1, 2);
    let mut blocks = Vec::new();
    for _ in 0..nblocks {
        let simplexes = match rng.below(3) {
            0 => {
                let q = rng.range(1, 3) as usize;
                PadicSimplex::new(m, random_staircase(rng, q)).unwrap().faces_of()
            }
            1 => {
                let c = rng.range(0, 1);
                let low = staircase(2, &[(0, 0), (0, c)]);
                let high = DiscretePolytope::new(vec![
                    level(AffineMap::from_ints(0, &[]), None),
                    level(AffineMap::from_ints(c + 1, &[(1, 1)]), None),
                ])
                .unwrap();
                let mut out = PadicSimplex::new(m, low).unwrap().faces_of();
                for f in PadicSimplex::new(m, high).unwrap().faces_of() {
                    if !out.iter().any(|g| g.same_set(&f)) {
                        out.push(f);
                    }
                }
                out
            }
            _ => {
                let k = rng.range(0, 3);
                let clopen = DiscretePolytope::new(vec![level(
                    AffineMap::from_ints(k, &[]),
                    Some(AffineMap::from_ints(k + rng.range(0, 1), &[])),
                )])
                .unwrap();
                vec![PadicSimplex::new(m, DiscretePolytope::point(1)).unwrap(), PadicSimplex::new(m, clopen).unwrap()]
            }
        };
        let q = simplexes[0].dim();
        blocks.push(Block { q, simplexes, rooted: true });
    }
    SimplicialComplex { m, blocks }
}

/// A nonempty subset closed under taking faces.
pub fn random_lower_subset(rng: &mut Rng, c: &SimplicialComplex) -> Vec<(usize, usize)> {
    loop {
        let mut out = Vec::new();
        for (b, block) in c.blocks.iter().enumerate() {
            for s in block.simplexes.iter().filter(|_| rng.below(3) == 0) {
                for f in s.faces_of() {
                    let i = block.simplexes.iter().position(|g| g.same_set(&f)).expect("closed block");
                    out.push((b, i));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        if !out.is_empty() {
            return out;
        }
    }
}
