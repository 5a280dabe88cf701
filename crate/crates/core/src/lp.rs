//! Exact rational linear programming over nonnegative variables.
//!
//! Dense two-phase tableau simplex with Bland's anti-cycling rule, plus a
//! branch-and-bound integer feasibility test inside a provable box.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{self, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub rel: Relation,
    pub rhs: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult {
    Optimal { value: Q, x: Vec<Q> },
    Unbounded,
    Infeasible,
}

/// A system of linear constraints on `n` variables, all `≥ 0`.
#[derive(Clone, Debug)]
pub struct Lp {
    pub n: usize,
    pub constraints: Vec<Constraint>,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let pv = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &pv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pvv) in row.iter_mut().zip(prow.iter()) {
                if !pvv.is_zero() {
                    *v = &*v - &f * pvv;
                }
            }
        }
        self.basis[r] = c;
    }

    fn rhs(&self, i: usize) -> &Q {
        &self.rows[i][self.cols]
    }

    /// Minimizes `cost · x` over the current basic feasible solution; columns
    /// with `allowed[j] == false` never enter.
    fn optimize(&mut self, cost: &[Q], allowed: &[bool]) -> bool {
        loop {
            let mut entering = None;
            for j in 0..self.cols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !self.rows[i][j].is_zero() && !cost[b].is_zero() {
                        r -= &cost[b] * &self.rows[i][j];
                    }
                }
                if r.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if a.is_positive() {
                    let ratio = self.rhs(i) / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

impl Lp {
    pub fn new(n: usize) -> Self {
        Lp { n, constraints: Vec::new() }
    }

    pub fn add(&mut self, coeffs: Vec<Q>, rel: Relation, rhs: Q) {
        assert_eq!(coeffs.len(), self.n);
        self.constraints.push(Constraint { coeffs, rel, rhs });
    }

    pub fn minimize(&self, cost: &[Q]) -> LpResult {
        assert_eq!(cost.len(), self.n);
        let m = self.constraints.len();
        let n = self.n;
        let mut slack_count = 0;
        let mut art_count = 0;
        let mut norm: Vec<Constraint> = Vec::with_capacity(m);
        for c in &self.constraints {
            let mut c = c.clone();
            if c.rhs.is_negative() {
                c.coeffs.iter_mut().for_each(|v| *v = -v.clone());
                c.rhs = -c.rhs;
                c.rel = match c.rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            match c.rel {
                Relation::Le => slack_count += 1,
                Relation::Ge => {
                    slack_count += 1;
                    art_count += 1
                }
                Relation::Eq => art_count += 1,
            }
            norm.push(c);
        }
        let cols = n + slack_count + art_count;
        let art_start = n + slack_count;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut s, mut a) = (n, art_start);
        for c in &norm {
            let mut row = vec![Q::zero(); cols + 1];
            row[..n].clone_from_slice(&c.coeffs);
            row[cols] = c.rhs.clone();
            match c.rel {
                Relation::Le => {
                    row[s] = Q::one();
                    basis.push(s);
                    s += 1;
                }
                Relation::Ge => {
                    row[s] = -Q::one();
                    s += 1;
                    row[a] = Q::one();
                    basis.push(a);
                    a += 1;
                }
                Relation::Eq => {
                    row[a] = Q::one();
                    basis.push(a);
                    a += 1;
                }
            }
            rows.push(row);
        }
        let mut t = Tableau { rows, basis, cols };
        let all = vec![true; cols];
        if art_count > 0 {
            let mut c1 = vec![Q::zero(); cols];
            for v in c1.iter_mut().skip(art_start) {
                *v = Q::one();
            }
            t.optimize(&c1, &all);
            let infeas: Q = t
                .basis
                .iter()
                .enumerate()
                .filter(|(_, &b)| b >= art_start)
                .map(|(i, _)| t.rhs(i).clone())
                .sum();
            if infeas.is_positive() {
                return LpResult::Infeasible;
            }
            let mut i = 0;
            while i < t.rows.len() {
                if t.basis[i] >= art_start {
                    match (0..art_start).find(|&j| !t.rows[i][j].is_zero()) {
                        Some(j) => {
                            t.pivot(i, j);
                            i += 1;
                        }
                        None => {
                            t.rows.remove(i);
                            t.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
        }
        let mut c2 = vec![Q::zero(); cols];
        c2[..n].clone_from_slice(cost);
        let allowed: Vec<bool> = (0..cols).map(|j| j < art_start).collect();
        if !t.optimize(&c2, &allowed) {
            return LpResult::Unbounded;
        }
        let mut x = vec![Q::zero(); n];
        for (i, &b) in t.basis.iter().enumerate() {
            if b < n {
                x[b] = t.rhs(i).clone();
            }
        }
        let value = x.iter().zip(cost).map(|(a, b)| a * b).sum();
        LpResult::Optimal { value, x }
    }

    pub fn maximize(&self, cost: &[Q]) -> LpResult {
        let neg: Vec<Q> = cost.iter().map(|c| -c.clone()).collect();
        match self.minimize(&neg) {
            LpResult::Optimal { value, x } => LpResult::Optimal { value: -value, x },
            other => other,
        }
    }

    pub fn feasible_point(&self) -> Option<Vec<Q>> {
        match self.minimize(&vec![Q::zero(); self.n]) {
            LpResult::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }

    /// Bound `(n+1)·Δ` on the coordinates of some integer point, whenever one
    /// exists (Δ bounds the subdeterminants of the integral system via Hadamard).
    pub fn integer_box(&self) -> BigInt {
        let mut norms: Vec<BigInt> = Vec::new();
        for c in &self.constraints {
            let lcm = c
                .coeffs
                .iter()
                .chain(std::iter::once(&c.rhs))
                .fold(BigInt::one(), |acc, q| num_integer::lcm(acc, q.denom().clone()));
            let sq: BigInt = c
                .coeffs
                .iter()
                .chain(std::iter::once(&c.rhs))
                .map(|q| {
                    let v = (q * rat::big(lcm.clone())).to_integer();
                    &v * &v
                })
                .sum();
            norms.push(sq.max(BigInt::one()));
        }
        norms.sort_by(|a, b| b.cmp(a));
        let prod: BigInt = norms.iter().take(self.n + 1).product();
        let delta = prod.sqrt() + 1;
        BigInt::from(self.n as u64 + 1) * delta
    }

    /// Finds an integer point of the system, if any.
    pub fn integer_point(&self) -> Option<Vec<BigInt>> {
        let bound = rat::big(self.integer_box());
        let mut base = self.clone();
        for i in 0..self.n {
            base.add(unit_row(self.n, i), Relation::Le, bound.clone());
        }
        let mut stack = vec![base];
        while let Some(mut lp) = stack.pop() {
            if !lp.tighten() {
                continue;
            }
            let Some(x) = lp.feasible_point() else { continue };
            match x.iter().position(|v| !rat::is_integer(v)) {
                None => return Some(x.iter().map(rat::floor).collect()),
                Some(i) => {
                    let mut lo = lp.clone();
                    lo.add(unit_row(self.n, i), Relation::Le, rat::big(rat::floor(&x[i])));
                    let mut hi = lp;
                    hi.add(unit_row(self.n, i), Relation::Ge, rat::big(rat::ceil(&x[i])));
                    stack.push(hi);
                    stack.push(lo);
                }
            }
        }
        None
    }
}

impl Lp {
    /// Rounds every row to its integer hull: scales to coprime integer
    /// coefficients and rounds the right-hand side. Returns `false` when a row
    /// has no integer solution at all.
    fn tighten(&mut self) -> bool {
        for c in self.constraints.iter_mut() {
            let lcm = c.coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let ints: Vec<BigInt> = c.coeffs.iter().map(|q| (q * rat::big(lcm.clone())).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            let rhs = &c.rhs * rat::big(lcm.clone());
            if g.is_zero() {
                let ok = match c.rel {
                    Relation::Le => !rhs.is_negative(),
                    Relation::Ge => !rhs.is_positive(),
                    Relation::Eq => rhs.is_zero(),
                };
                if !ok {
                    return false;
                }
                continue;
            }
            let r = rhs / rat::big(g.clone());
            c.rhs = match c.rel {
                Relation::Le => rat::big(rat::floor(&r)),
                Relation::Ge => rat::big(rat::ceil(&r)),
                Relation::Eq => {
                    if !rat::is_integer(&r) {
                        return false;
                    }
                    r
                }
            };
            c.coeffs = ints.into_iter().map(|v| rat::big(v / &g)).collect();
        }
        true
    }
}

fn unit_row(n: usize, i: usize) -> Vec<Q> {
    let mut r = vec![Q::zero(); n];
    r[i] = Q::one();
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    #[test]
    fn small_programs() {
        // max x + y s.t. x + 2y ≤ 4, 3x + y ≤ 6
        let mut lp = Lp::new(2);
        lp.add(vec![int(1), int(2)], Relation::Le, int(4));
        lp.add(vec![int(3), int(1)], Relation::Le, int(6));
        match lp.maximize(&[int(1), int(1)]) {
            LpResult::Optimal { value, .. } => assert_eq!(value, Q::new(14.into(), 5.into())),
            r => panic!("{r:?}"),
        }
        let mut lp = Lp::new(1);
        lp.add(vec![int(1)], Relation::Ge, int(2));
        assert_eq!(lp.maximize(&[int(1)]), LpResult::Unbounded);
        lp.add(vec![int(1)], Relation::Le, int(1));
        assert_eq!(lp.minimize(&[int(1)]), LpResult::Infeasible);
    }

    #[test]
    fn equality_and_degenerate_rows() {
        let mut lp = Lp::new(3);
        lp.add(vec![int(1), int(1), int(1)], Relation::Eq, int(3));
        lp.add(vec![int(2), int(2), int(2)], Relation::Eq, int(6));
        lp.add(vec![int(1), int(-1), int(0)], Relation::Ge, int(0));
        match lp.minimize(&[int(-1), int(0), int(2)]) {
            LpResult::Optimal { value, x } => {
                assert_eq!(value, int(-3));
                assert_eq!(x[0], int(3));
            }
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn integer_feasibility() {
        // 1 ≤ 3y - 3x ≤ 2 has rational but no integer points.
        let mut lp = Lp::new(2);
        lp.add(vec![int(-3), int(3)], Relation::Ge, int(1));
        lp.add(vec![int(-3), int(3)], Relation::Le, int(2));
        assert!(lp.feasible_point().is_some());
        assert!(lp.integer_point().is_none());
        let mut lp = Lp::new(2);
        lp.add(vec![int(2), int(3)], Relation::Eq, int(7));
        let x = lp.integer_point().unwrap();
        assert_eq!(&x[0] * 2 + &x[1] * 3, BigInt::from(7));
    }
}
