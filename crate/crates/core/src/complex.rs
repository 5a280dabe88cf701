//! p-adic simplexes of index M, simplicial complexes and retractions.
//!
//! All structural checks run on the Γ-shapes: a simplex is
//! `v⁻¹(shape) ∩ (D^M R)^q`, and valuation preimages commute with faces and
//! closures.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::gamma::{format_set, project, support, DiscretePolytope, Gamma, GammaError, IndexSet};
use crate::padic::{PadicError, PadicNumber, SubgroupSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("shape is not a discrete simplex: faces {0} and {1} are incomparable")]
    NotSimplex(String, String),
    #[error("index M must be positive")]
    BadIndex,
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("complex is not closed")]
    NotClosed,
    #[error("target is not a lower subset: {0}")]
    NotLowerSubset(String),
    #[error("target is empty")]
    EmptyTarget,
    #[error("point is not in the complex")]
    NotInComplex,
    #[error("no such simplex: block {0}, index {1}")]
    BadReference(usize, usize),
}

type Result<T> = std::result::Result<T, ComplexError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicSimplex {
    m: u32,
    shape: DiscretePolytope,
}

impl PadicSimplex {
    pub fn new(m: u32, shape: DiscretePolytope) -> Result<Self> {
        if m == 0 {
            return Err(ComplexError::BadIndex);
        }
        let report = shape.is_simplex()?;
        if let Some((a, b)) = report.incomparable {
            return Err(ComplexError::NotSimplex(format_set(&a), format_set(&b)));
        }
        Ok(PadicSimplex { m, shape })
    }

    pub(crate) fn from_face(m: u32, shape: DiscretePolytope) -> Self {
        PadicSimplex { m, shape }
    }

    pub fn index(&self) -> u32 {
        self.m
    }

    pub fn shape(&self) -> &DiscretePolytope {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn support(&self) -> IndexSet {
        self.shape.support()
    }

    /// Valuation vector of a point of `(D^M R ∪ {0})^q`, or `None` if a
    /// coordinate is outside `D^M R ∪ {0}`.
    pub fn valuation_vector(&self, x: &[PadicNumber]) -> Result<Option<Vec<Gamma>>> {
        let mut v = Vec::with_capacity(x.len());
        for c in x {
            if !c.is_zero() && !c.in_subgroup(&SubgroupSpec::D { m: self.m })? {
                return Ok(None);
            }
            v.push(c.valuation());
        }
        Ok(Some(v))
    }

    pub fn member(&self, x: &[PadicNumber]) -> Result<bool> {
        if x.len() != self.dim() {
            return Ok(false);
        }
        Ok(match self.valuation_vector(x)? {
            Some(v) => self.shape.member(&v),
            None => false,
        })
    }

    /// Faces in increasing order; the last entry is the simplex itself.
    pub fn faces_of(&self) -> Vec<PadicSimplex> {
        self.shape
            .faces()
            .expect("validated shape")
            .into_iter()
            .map(|(_, f)| PadicSimplex::from_face(self.m, f))
            .collect()
    }

    /// The largest proper face.
    pub fn facet(&self) -> Option<PadicSimplex> {
        let mut faces = self.faces_of();
        faces.pop();
        faces.pop()
    }

    /// Closed simplexes have no proper faces.
    pub fn is_closed(&self) -> bool {
        self.faces_of().len() == 1
    }

    pub fn same_set(&self, o: &PadicSimplex) -> bool {
        self.m == o.m && self.shape.set_eq(&o.shape)
    }

    /// Whether `o` is a face of `self` (both given up to set equality).
    pub fn has_face(&self, o: &PadicSimplex) -> bool {
        if self.m != o.m || self.dim() != o.dim() || !o.support().is_subset(&self.support()) {
            return false;
        }
        match self.shape.face(&o.support()) {
            Ok(Some(f)) => f.set_eq(&o.shape),
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Block {
    pub q: usize,
    pub simplexes: Vec<PadicSimplex>,
    pub rooted: bool,
}

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    pub m: u32,
    pub blocks: Vec<Block>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComplexReport {
    pub is_complex: bool,
    pub is_monoplex: bool,
    pub is_closed: bool,
    pub is_well_dispatched: bool,
    pub violations: Vec<String>,
}

/// The distinct faces of all simplexes of a block.
pub fn closure_elements(simplexes: &[PadicSimplex]) -> Vec<PadicSimplex> {
    let mut out: Vec<PadicSimplex> = Vec::new();
    for s in simplexes {
        for f in s.faces_of() {
            if !out.iter().any(|g| g.same_set(&f)) {
                out.push(f);
            }
        }
    }
    out
}

pub fn validate_complex(c: &SimplicialComplex) -> ComplexReport {
    let mut violations = Vec::new();
    let (mut complex, mut monoplex, mut closed, mut dispatched) = (true, true, true, true);
    for (b, block) in c.blocks.iter().enumerate() {
        let ss = &block.simplexes;
        for (i, s) in ss.iter().enumerate() {
            if s.index() != c.m {
                violations.push(format!("block {b}: simplex {i} has index {} instead of {}", s.index(), c.m));
                complex = false;
            }
            if s.dim() != block.q {
                violations.push(format!("block {b}: simplex {i} has dimension {} instead of {}", s.dim(), block.q));
                complex = false;
            }
        }
        if !complex {
            continue;
        }
        for i in 0..ss.len() {
            for j in i + 1..ss.len() {
                if ss[i].same_set(&ss[j]) {
                    violations.push(format!("block {b}: simplexes {i} and {j} coincide"));
                    complex = false;
                    continue;
                }
                'faces: for f in ss[i].faces_of() {
                    for g in ss[j].faces_of() {
                        if f.support() == g.support() && f.shape().intersects(g.shape()) && !f.same_set(&g) {
                            violations.push(format!(
                                "block {b}: closures of simplexes {i} and {j} meet outside their common faces (support {})",
                                format_set(&f.support())
                            ));
                            complex = false;
                            break 'faces;
                        }
                    }
                }
            }
        }
        let elems = closure_elements(ss);
        for (i, s) in ss.iter().enumerate() {
            for f in s.faces_of() {
                if !ss.iter().any(|t| t.same_set(&f)) {
                    violations.push(format!("block {b}: face {} of simplex {i} is missing", format_set(&f.support())));
                    closed = false;
                }
            }
        }
        // Tree: the elements below any element form a chain.
        for (i, e) in elems.iter().enumerate() {
            let below: Vec<&PadicSimplex> = elems.iter().filter(|f| e.has_face(f)).collect();
            for x in &below {
                for y in &below {
                    if !x.has_face(y) && !y.has_face(x) {
                        violations.push(format!("block {b}: faces below closure element {i} are not a chain"));
                        monoplex = false;
                    }
                }
            }
        }
        if block.rooted && !ss.is_empty() && !ss.iter().any(|r| ss.iter().all(|s| s.has_face(r))) {
            violations.push(format!("block {b}: not rooted"));
            monoplex = false;
        }
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                if i != j && x.has_face(y) != y.support().is_subset(&x.support()) {
                    violations.push(format!(
                        "block {b}: specialization and support inclusion differ for {} and {}",
                        format_set(&y.support()),
                        format_set(&x.support())
                    ));
                    dispatched = false;
                }
            }
        }
    }
    violations.sort();
    violations.dedup();
    ComplexReport {
        is_complex: complex,
        is_monoplex: complex && monoplex,
        is_closed: complex && closed,
        is_well_dispatched: dispatched,
        violations,
    }
}

/// How a retraction acts on one simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Identity,
    /// Coordinate projection onto the face with this support (a target simplex).
    Project(IndexSet),
    /// The base point.
    Constant,
}

#[derive(Clone, Debug)]
pub struct Retraction {
    complex: SimplicialComplex,
    rules: Vec<Vec<Rule>>,
    base_block: usize,
    base: Vec<PadicNumber>,
}

/// Retraction of a closed complex onto a lower subset given as `(block, index)` pairs.
pub fn build_retraction(c: &SimplicialComplex, target: &[(usize, usize)], p: u64) -> Result<Retraction> {
    let report = validate_complex(c);
    if !report.is_complex || !report.is_closed {
        return Err(ComplexError::NotClosed);
    }
    let mut in_target: Vec<Vec<bool>> = c.blocks.iter().map(|b| vec![false; b.simplexes.len()]).collect();
    for &(b, i) in target {
        *in_target
            .get_mut(b)
            .and_then(|v| v.get_mut(i))
            .ok_or(ComplexError::BadReference(b, i))? = true;
    }
    for (b, block) in c.blocks.iter().enumerate() {
        for (i, s) in block.simplexes.iter().enumerate() {
            if !in_target[b][i] {
                continue;
            }
            for (k, t) in block.simplexes.iter().enumerate() {
                if !in_target[b][k] && s.has_face(t) {
                    return Err(ComplexError::NotLowerSubset(format!(
                        "block {b}: simplex {k} is a face of target simplex {i}"
                    )));
                }
            }
        }
    }
    let (base_block, base_simplex) = c
        .blocks
        .iter()
        .enumerate()
        .find_map(|(b, block)| {
            block
                .simplexes
                .iter()
                .enumerate()
                .find(|(i, s)| in_target[b][*i] && s.is_closed())
                .map(|(_, s)| (b, s))
        })
        .ok_or(ComplexError::EmptyTarget)?;
    let base = base_simplex
        .shape()
        .lexmin_point()
        .iter()
        .map(|g| match g {
            Gamma::Inf => PadicNumber::zero(p),
            Gamma::Fin(a) => PadicNumber::p_power(p, *a),
        })
        .collect();
    let mut rules = Vec::new();
    for (b, block) in c.blocks.iter().enumerate() {
        let mut r = Vec::new();
        for (i, s) in block.simplexes.iter().enumerate() {
            if in_target[b][i] {
                r.push(Rule::Identity);
                continue;
            }
            // The largest face of s lying in the target.
            let mut best: Option<IndexSet> = None;
            for f in s.faces_of() {
                let hit = block.simplexes.iter().enumerate().any(|(k, t)| in_target[b][k] && t.same_set(&f));
                if hit {
                    best = Some(f.support());
                }
            }
            r.push(match best {
                Some(j) => Rule::Project(j),
                None => Rule::Constant,
            });
        }
        rules.push(r);
    }
    Ok(Retraction { complex: c.clone(), rules, base_block, base })
}

impl Retraction {
    pub fn rules(&self) -> &[Vec<Rule>] {
        &self.rules
    }

    pub fn base(&self) -> (usize, &[PadicNumber]) {
        (self.base_block, &self.base)
    }

    /// Index of the simplex of block `b` containing `x`.
    pub fn locate(&self, b: usize, x: &[PadicNumber]) -> Result<usize> {
        let block = self.complex.blocks.get(b).ok_or(ComplexError::NotInComplex)?;
        for (i, s) in block.simplexes.iter().enumerate() {
            if s.member(x)? {
                return Ok(i);
            }
        }
        Err(ComplexError::NotInComplex)
    }

    pub fn eval(&self, b: usize, x: &[PadicNumber]) -> Result<(usize, Vec<PadicNumber>)> {
        let i = self.locate(b, x)?;
        Ok(match &self.rules[b][i] {
            Rule::Identity => (b, x.to_vec()),
            Rule::Project(j) => (b, project_point(x, j)),
            Rule::Constant => (self.base_block, self.base.clone()),
        })
    }

    /// Γ-level check that every non-target simplex is sent into the target:
    /// projections land in the chosen face.
    pub fn check_shapes(&self) -> bool {
        self.complex.blocks.iter().zip(&self.rules).all(|(block, rules)| {
            block.simplexes.iter().zip(rules).all(|(s, r)| match r {
                Rule::Project(j) => match s.shape().face(j) {
                    Ok(Some(face)) => s.shape().projects_into(&face),
                    _ => false,
                },
                _ => true,
            })
        })
    }
}

/// Zeroes the coordinates outside `J`.
pub fn project_point(x: &[PadicNumber], j: &IndexSet) -> Vec<PadicNumber> {
    x.iter()
        .enumerate()
        .map(|(i, c)| if j.contains(&(i + 1)) { c.clone() } else { PadicNumber::zero(c.prime()) })
        .collect()
}

/// Supports of a point of `K^q` (nonzero coordinates).
pub fn point_support(x: &[PadicNumber]) -> IndexSet {
    let v: Vec<Gamma> = x.iter().map(|c| c.valuation()).collect();
    support(&v)
}

/// Valuation vector, with `project` on Γ-points for convenience.
pub fn gamma_of(x: &[PadicNumber]) -> Vec<Gamma> {
    x.iter().map(|c| c.valuation()).collect()
}

pub fn gamma_project(x: &[PadicNumber], j: &IndexSet) -> Vec<Gamma> {
    project(&gamma_of(x), j)
}

/// Edges `face -> simplex` between closure elements of each block, keyed by element position.
pub fn specialization_edges(simplexes: &[PadicSimplex]) -> (Vec<PadicSimplex>, BTreeMap<usize, usize>) {
    let elems = closure_elements(simplexes);
    let mut parent = BTreeMap::new();
    for (i, e) in elems.iter().enumerate() {
        if let Some(f) = e.facet() {
            if let Some(k) = elems.iter().position(|g| g.same_set(&f)) {
                parent.insert(i, k);
            }
        }
    }
    (elems, parent)
}
