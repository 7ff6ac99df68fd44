//! Admissible 5-tuples: the combinatorial invariants classifying torus
//! manifolds whose symmetry group has SU and odd orthogonal elementary
//! factors.
//!
//! A tuple records a weight vector per SU factor, a base manifold from the
//! catalog with an involution per SO factor, a codimension-two locus per SU
//! factor, a codimension-one locus per SO factor, and a 0/1 matrix saying
//! which involutions act antipodally on which later sphere factors. The
//! module validates tuples, decides equivalence, peels factors off
//! (`reduce`) and puts them back (`expand`), realizes a tuple as a manifold
//! expression, and propagates the quasitoric, cohomology, and
//! fundamental-group flags.

use std::fmt;

use crate::liegroups::{psi_kernel_is_su, GroupFactor, GroupSpec, PsiHom};
use crate::manifolds::{Center, FactorLocus, ManifoldError, ManifoldExpr, Tri, Z2Action};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TupleError {
    #[error("spec mismatch between tuples")]
    SpecMismatch,
    #[error("spec is not in admissible form: {0}")]
    BadSpec(String),
    #[error("nothing to reduce: the spec has no non-abelian factor")]
    NothingToReduce,
    #[error("tuple is not valid: {0}")]
    Invalid(String),
    #[error("expand hypothesis violated: {0}")]
    BranchHypothesis(String),
    #[error("manifold construction failed: {0}")]
    Manifold(#[from] ManifoldError),
}

/// Involution tag on one catalog two-sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Z2Tag {
    Trivial,
    Antipodal,
    Reflection,
}

impl Z2Tag {
    pub fn orientation(&self) -> i8 {
        match self {
            Z2Tag::Trivial => 1,
            Z2Tag::Antipodal | Z2Tag::Reflection => -1,
        }
    }

    pub fn to_action(self) -> Z2Action {
        match self {
            Z2Tag::Trivial => Z2Action::Trivial,
            Z2Tag::Antipodal => Z2Action::Antipodal,
            Z2Tag::Reflection => Z2Action::Reflection,
        }
    }

    pub fn letter(&self) -> char {
        match self {
            Z2Tag::Trivial => 'T',
            Z2Tag::Antipodal => 'A',
            Z2Tag::Reflection => 'R',
        }
    }
}

/// Invariant submanifold of the catalog core: empty, or one factor locus
/// per two-sphere factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoreLocus {
    Empty,
    Prod(Vec<FactorLocus>),
}

impl CoreLocus {
    pub fn poles(slot: usize, l0: usize, north: bool, south: bool) -> Self {
        let mut v = vec![FactorLocus::Full; l0];
        v[slot] = FactorLocus::Poles { north, south };
        CoreLocus::Prod(v)
    }

    pub fn equator(slot: usize, l0: usize) -> Self {
        let mut v = vec![FactorLocus::Full; l0];
        v[slot] = FactorLocus::Equator;
        CoreLocus::Prod(v)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, CoreLocus::Empty)
    }

    pub fn codim(&self) -> usize {
        match self {
            CoreLocus::Empty => 0,
            CoreLocus::Prod(v) => v.iter().map(FactorLocus::codim).sum(),
        }
    }

    pub fn chi(&self) -> i64 {
        match self {
            CoreLocus::Empty => 0,
            CoreLocus::Prod(v) => v.iter().map(FactorLocus::chi).product(),
        }
    }

    pub fn intersect(&self, other: &CoreLocus) -> CoreLocus {
        let (a, b) = match (self, other) {
            (CoreLocus::Empty, _) | (_, CoreLocus::Empty) => return CoreLocus::Empty,
            (CoreLocus::Prod(a), CoreLocus::Prod(b)) => (a, b),
        };
        debug_assert_eq!(a.len(), b.len());
        let mut out = Vec::with_capacity(a.len());
        for (x, y) in a.iter().zip(b) {
            match intersect_factor(*x, *y) {
                Some(l) => out.push(l),
                None => return CoreLocus::Empty,
            }
        }
        CoreLocus::Prod(out)
    }

    /// Connected components, atomized per factor. Two loci intersect
    /// transversely exactly when they share no component.
    pub fn components(&self) -> Vec<Vec<FactorLocus>> {
        match self {
            CoreLocus::Empty => Vec::new(),
            CoreLocus::Prod(v) => {
                let mut comps: Vec<Vec<FactorLocus>> = vec![Vec::new()];
                for f in v {
                    let atoms: Vec<FactorLocus> = match f {
                        FactorLocus::Poles { north, south } => {
                            let mut a = Vec::new();
                            if *north {
                                a.push(FactorLocus::Poles {
                                    north: true,
                                    south: false,
                                });
                            }
                            if *south {
                                a.push(FactorLocus::Poles {
                                    north: false,
                                    south: true,
                                });
                            }
                            a
                        }
                        other => vec![*other],
                    };
                    let mut next = Vec::new();
                    for c in &comps {
                        for a in &atoms {
                            let mut c2 = c.clone();
                            c2.push(*a);
                            next.push(c2);
                        }
                    }
                    comps = next;
                }
                comps
            }
        }
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn shares_component(&self, other: &CoreLocus) -> bool {
        let mine = self.components();
        other.components().iter().any(|c| mine.contains(c))
    }

    /// Applies pole swaps on the chosen factors.
    pub fn apply_swaps(&self, swaps: &[bool]) -> CoreLocus {
        match self {
            CoreLocus::Empty => CoreLocus::Empty,
            CoreLocus::Prod(v) => CoreLocus::Prod(
                v.iter()
                    .zip(swaps)
                    .map(|(f, &s)| match (f, s) {
                        (FactorLocus::Poles { north, south }, true) => FactorLocus::Poles {
                            north: *south,
                            south: *north,
                        },
                        (other, _) => *other,
                    })
                    .collect(),
            ),
        }
    }
}

fn intersect_factor(a: FactorLocus, b: FactorLocus) -> Option<FactorLocus> {
    match (a, b) {
        (FactorLocus::Full, x) | (x, FactorLocus::Full) => Some(x),
        (FactorLocus::Equator, FactorLocus::Equator) => Some(FactorLocus::Equator),
        (
            FactorLocus::Poles {
                north: n1,
                south: s1,
            },
            FactorLocus::Poles {
                north: n2,
                south: s2,
            },
        ) => {
            let (n, s) = (n1 && n2, s1 && s2);
            (n || s).then_some(FactorLocus::Poles { north: n, south: s })
        }
        _ => None,
    }
}

impl fmt::Display for CoreLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreLocus::Empty => write!(f, "-"),
            CoreLocus::Prod(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}

/// One two-sphere of the catalog core, with an involution tag per SO factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoreSphere {
    pub tags: Vec<Z2Tag>,
}

/// Action consumed by a quotient layer: how the peeled involution acted on
/// the core and on each layer below the quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsumedAction {
    pub core_tags: Vec<Z2Tag>,
    pub inner_flags: Vec<bool>,
}

/// A wrap applied to the base by peeling a factor. Layers are stored
/// innermost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseLayer {
    /// `S^{2l} x inner`, with an antipodal flag per remaining SO factor.
    SphereProduct { l: usize, antipodal: Vec<bool> },
    /// `(S^{2l} x inner)/Z2`, blown down along `center` when non-empty.
    SphereQuotient {
        l: usize,
        action: ConsumedAction,
        center: CoreLocus,
    },
    /// Bundle over `CP^l` with the inner manifold as fiber, blown down
    /// along `center` when non-empty.
    SuBundle {
        l: usize,
        weights: Vec<i64>,
        center: CoreLocus,
    },
}

/// The base manifold of a tuple: a catalog core plus peel layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleBase {
    pub core: Vec<CoreSphere>,
    pub layers: Vec<BaseLayer>,
}

impl TupleBase {
    pub fn point() -> Self {
        TupleBase {
            core: Vec::new(),
            layers: Vec::new(),
        }
    }

    pub fn catalog(core_tags: Vec<Vec<Z2Tag>>) -> Self {
        TupleBase {
            core: core_tags
                .into_iter()
                .map(|tags| CoreSphere { tags })
                .collect(),
            layers: Vec::new(),
        }
    }

    /// Is the action of the i-th involution trivial on the whole base?
    pub fn z2_is_trivial(&self, i: usize) -> bool {
        self.core.iter().all(|s| s.tags[i] == Z2Tag::Trivial)
            && self.layers.iter().all(|l| match l {
                BaseLayer::SphereProduct { antipodal, .. } => !antipodal[i],
                _ => true,
            })
    }

    /// Orientation behavior of the i-th involution on the base.
    pub fn z2_orientation(&self, i: usize) -> i8 {
        let core: i8 = self.core.iter().map(|s| s.tags[i].orientation()).product();
        let layers: i8 = self
            .layers
            .iter()
            .map(|l| match l {
                BaseLayer::SphereProduct { antipodal, .. } if antipodal[i] => -1,
                _ => 1,
            })
            .product();
        core * layers
    }
}

/// Ordered factor data of a spec in admissible form: SU factors first, then
/// odd orthogonal factors, then the torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TupleSpec {
    pub su_ls: Vec<usize>,
    pub so_ls: Vec<usize>,
    pub l0: usize,
}

impl TupleSpec {
    pub fn from_group_spec(spec: &GroupSpec) -> Result<TupleSpec, TupleError> {
        let mut su_ls = Vec::new();
        let mut so_ls = Vec::new();
        for f in &spec.factors {
            match f {
                GroupFactor::Su(n) => su_ls.push(n - 1),
                GroupFactor::So(n) if n % 2 == 1 => so_ls.push(n / 2),
                other => {
                    return Err(TupleError::BadSpec(format!(
                        "{} cannot appear in a tuple; normalize the spec first",
                        other
                    )))
                }
            }
        }
        Ok(TupleSpec {
            su_ls,
            so_ls,
            l0: spec.l0,
        })
    }

    pub fn k0(&self) -> usize {
        self.su_ls.len()
    }

    pub fn k_so(&self) -> usize {
        self.so_ls.len()
    }

    pub fn rank(&self) -> usize {
        self.su_ls.iter().sum::<usize>() + self.so_ls.iter().sum::<usize>() + self.l0
    }
}

impl fmt::Display for TupleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for l in &self.su_ls {
            parts.push(format!("SU({})", l + 1));
        }
        for l in &self.so_ls {
            parts.push(format!("SO({})", 2 * l + 1));
        }
        if self.l0 > 0 {
            parts.push(format!("T^{}", self.l0));
        }
        if parts.is_empty() {
            parts.push("T^0".to_string());
        }
        write!(f, "{}", parts.join("x"))
    }
}

/// A violation of one clause of the admissibility definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    Clause3 {
        i: usize,
        reason: String,
    },
    Clause4 {
        i: usize,
        reason: String,
    },
    Clause5a {
        i: usize,
        j: usize,
        part: &'static str,
    },
    Clause5bParity {
        i: usize,
    },
    Clause5cParity {
        i: usize,
    },
    TransversalityA {
        i: usize,
        j: usize,
    },
    TransversalityB {
        i: usize,
        j: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "shape: {}", s),
            Violation::Clause3 { i, reason } => write!(f, "3: A_{}: {}", i + 1, reason),
            Violation::Clause4 { i, reason } => write!(f, "4: B_{}: {}", i + 1, reason),
            Violation::Clause5a { i, j, part } => {
                write!(f, "5(a)({}) at a_{}{}", part, i + 1, j + 1)
            }
            Violation::Clause5bParity { i } => write!(f, "5(b) parity at factor {}", i + 1),
            Violation::Clause5cParity { i } => write!(f, "5(c) parity at factor {}", i + 1),
            Violation::TransversalityA { i, j } => {
                write!(
                    f,
                    "transversality: A_{} and A_{} share a component",
                    i + 1,
                    j + 1
                )
            }
            Violation::TransversalityB { i, j } => {
                write!(
                    f,
                    "transversality: B_{} and B_{} share a component",
                    i + 1,
                    j + 1
                )
            }
        }
    }
}

/// Quasitoric, cohomology, and fundamental-group flags carried through the
/// correspondence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropagationFlags {
    pub quasitoric: bool,
    pub cohomology_deg2: bool,
    pub simply_connected: Tri,
}

/// The full invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleFiveTuple {
    pub spec: TupleSpec,
    pub psi: PsiHom,
    pub base: TupleBase,
    pub a_loci: Vec<CoreLocus>,
    pub b_loci: Vec<CoreLocus>,
    /// Upper-triangular over the SO factors; only entries with `i < j` are
    /// meaningful.
    pub a_matrix: Vec<Vec<u8>>,
}

impl AdmissibleFiveTuple {
    /// Admissible triple: the one-factor SU special case `(psi, N, A)` over
    /// a catalog base of torus rank `l0`.
    pub fn triple(su_l: usize, weights: Vec<i64>, base: TupleBase, a_locus: CoreLocus) -> Self {
        let l0 = base.core.len();
        debug_assert_eq!(weights.len(), l0);
        AdmissibleFiveTuple {
            spec: TupleSpec {
                su_ls: vec![su_l],
                so_ls: vec![],
                l0,
            },
            psi: PsiHom {
                weights: vec![weights],
            },
            base,
            a_loci: vec![a_locus],
            b_loci: vec![],
            a_matrix: vec![],
        }
    }

    /// Admissible pair: the one-factor odd orthogonal special case `(N, B)`
    /// over a catalog base carrying a single involution tag.
    pub fn pair(so_l: usize, base: TupleBase, b_locus: CoreLocus) -> Self {
        let l0 = base.core.len();
        debug_assert!(base.core.iter().all(|s| s.tags.len() == 1));
        AdmissibleFiveTuple {
            spec: TupleSpec {
                su_ls: vec![],
                so_ls: vec![so_l],
                l0,
            },
            psi: PsiHom { weights: vec![] },
            base,
            a_loci: vec![],
            b_loci: vec![b_locus],
            a_matrix: vec![vec![0]],
        }
    }

    pub fn a(&self, i: usize, j: usize) -> u8 {
        debug_assert!(i < j);
        self.a_matrix[i][j]
    }

    fn a_row_sum(&self, i: usize) -> u64 {
        ((i + 1)..self.spec.k_so())
            .map(|j| self.a(i, j) as u64)
            .sum()
    }

    /// Checks every clause of the admissibility definition and reports all
    /// violations; an empty list means the tuple is admissible.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let k0 = self.spec.k0();
        let ks = self.spec.k_so();
        let l0 = self.spec.l0;

        // structural shape
        if self.psi.weights.len() != k0 {
            out.push(Violation::Shape(format!(
                "psi has {} weight vectors for {} SU factors",
                self.psi.weights.len(),
                k0
            )));
            return out;
        }
        if self.psi.weights.iter().any(|w| w.len() != l0) {
            out.push(Violation::Shape(
                "weight vector length differs from torus rank".into(),
            ));
            return out;
        }
        if self.base.core.len() != l0 {
            out.push(Violation::Shape(format!(
                "core has {} sphere factors for torus rank {}",
                self.base.core.len(),
                l0
            )));
            return out;
        }
        if self.base.core.iter().any(|s| s.tags.len() != ks) {
            out.push(Violation::Shape(
                "tag table width differs from SO factor count".into(),
            ));
            return out;
        }
        if self.a_loci.len() != k0 || self.b_loci.len() != ks {
            out.push(Violation::Shape(
                "locus list lengths differ from factor counts".into(),
            ));
            return out;
        }
        if self.a_matrix.len() != ks || self.a_matrix.iter().any(|r| r.len() != ks) {
            out.push(Violation::Shape("a-matrix is not k_so x k_so".into()));
            return out;
        }
        for layer in &self.base.layers {
            let ok = match layer {
                BaseLayer::SphereProduct { antipodal, .. } => antipodal.len() == ks,
                BaseLayer::SphereQuotient { action, .. } => action.core_tags.len() == l0,
                BaseLayer::SuBundle { weights, .. } => weights.len() == l0,
            };
            if !ok {
                out.push(Violation::Shape("layer data out of shape".into()));
                return out;
            }
        }
        for locus in self.a_loci.iter().chain(&self.b_loci) {
            if let CoreLocus::Prod(v) = locus {
                if v.len() != l0 {
                    out.push(Violation::Shape("locus length differs from core".into()));
                    return out;
                }
                if v.iter().any(|f| {
                    matches!(
                        f,
                        FactorLocus::Poles {
                            north: false,
                            south: false
                        }
                    )
                }) {
                    out.push(Violation::Shape(
                        "empty pole set; use the empty locus".into(),
                    ));
                    return out;
                }
            }
        }

        // clause (3): the codimension-two loci
        for i in 0..k0 {
            let a = &self.a_loci[i];
            if a.is_empty() {
                continue;
            }
            if a.codim() != 2 {
                out.push(Violation::Clause3 {
                    i,
                    reason: format!("codimension {} instead of 2", a.codim()),
                });
            }
            if !psi_kernel_is_su(&self.psi.weights[i]) {
                out.push(Violation::Clause3 {
                    i,
                    reason: "weight vector is not primitive, kernel is larger than SU".into(),
                });
            }
            if let CoreLocus::Prod(v) = a {
                for (f, locus) in v.iter().enumerate() {
                    // inside the fixed locus of the weight circle
                    if self.psi.weights[i][f] != 0 && !matches!(locus, FactorLocus::Poles { .. }) {
                        out.push(Violation::Clause3 {
                            i,
                            reason: format!("factor {} is not fixed by the weight circle", f + 1),
                        });
                    }
                    // invariance under every involution
                    if let FactorLocus::Poles { north, south } = locus {
                        if north != south {
                            for j in 0..ks {
                                if self.base.core[f].tags[j] != Z2Tag::Trivial {
                                    out.push(Violation::Clause3 {
                                        i,
                                        reason: format!(
                                            "single pole on factor {} is moved by involution {}",
                                            f + 1,
                                            j + 1
                                        ),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }

        // clause (4): the codimension-one loci
        for i in 0..ks {
            let b = &self.b_loci[i];
            if b.is_empty() {
                continue;
            }
            if b.codim() != 1 {
                out.push(Violation::Clause4 {
                    i,
                    reason: format!("codimension {} instead of 1", b.codim()),
                });
            }
            if self.base.z2_is_trivial(i) {
                out.push(Violation::Clause4 {
                    i,
                    reason: "involution acts trivially on the base".into(),
                });
            }
            if let CoreLocus::Prod(v) = b {
                for (f, locus) in v.iter().enumerate() {
                    let tag = self.base.core[f].tags[i];
                    let pointwise_trivial = match locus {
                        FactorLocus::Equator => tag != Z2Tag::Antipodal,
                        FactorLocus::Full => tag == Z2Tag::Trivial,
                        FactorLocus::Poles { .. } => false,
                    };
                    if matches!(locus, FactorLocus::Poles { .. }) {
                        // codim already flagged; nothing more to say
                        continue;
                    }
                    if !pointwise_trivial {
                        out.push(Violation::Clause4 {
                            i,
                            reason: format!(
                                "involution {} does not fix factor {} pointwise",
                                i + 1,
                                f + 1
                            ),
                        });
                    }
                }
            }
            // flags on layers would move the locus as well
            for layer in &self.base.layers {
                if let BaseLayer::SphereProduct { antipodal, .. } = layer {
                    if antipodal[i] {
                        out.push(Violation::Clause4 {
                            i,
                            reason: "involution acts on a sphere layer over the locus".into(),
                        });
                    }
                }
            }
        }

        // clause (5)
        for i in 0..ks {
            for j in (i + 1)..ks {
                if self.a(i, j) == 1 {
                    if !self.base.z2_is_trivial(j) {
                        out.push(Violation::Clause5a { i, j, part: "i" });
                    }
                    if ((j + 1)..ks).any(|k| self.a(j, k) == 1) {
                        out.push(Violation::Clause5a { i, j, part: "ii" });
                    }
                    if !self.b_loci[i].is_empty() {
                        out.push(Violation::Clause5a { i, j, part: "iii" });
                    }
                }
            }
            let odd = self.a_row_sum(i) % 2 == 1;
            if self.base.z2_is_trivial(i) {
                if !(odd || self.a_row_sum(i) == 0) {
                    out.push(Violation::Clause5cParity { i });
                }
            } else {
                let preserving = self.base.z2_orientation(i) == 1;
                if preserving != odd {
                    out.push(Violation::Clause5bParity { i });
                }
            }
        }

        // transversality
        for i in 0..k0 {
            for j in (i + 1)..k0 {
                if self.a_loci[i].shares_component(&self.a_loci[j]) {
                    out.push(Violation::TransversalityA { i, j });
                }
            }
        }
        for i in 0..ks {
            for j in (i + 1)..ks {
                if self.b_loci[i].shares_component(&self.b_loci[j]) {
                    out.push(Violation::TransversalityB { i, j });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Equivalence of tuples over the same spec: equal a-matrices, weight
    /// vectors matching up to sign for rank-one SU factors, and a catalog
    /// automorphism (independent pole swaps of the core spheres, which
    /// commute with the torus and all three involution types) matching the
    /// loci.
    pub fn equivalent(&self, other: &AdmissibleFiveTuple) -> Result<bool, TupleError> {
        if self.spec != other.spec {
            return Err(TupleError::SpecMismatch);
        }
        if self.a_matrix != other.a_matrix
            || self.base.core != other.base.core
            || self.base.layers.len() != other.base.layers.len()
        {
            return Ok(false);
        }
        for i in 0..self.spec.k0() {
            let (w1, w2) = (&self.psi.weights[i], &other.psi.weights[i]);
            let matches = if self.spec.su_ls[i] > 1 {
                w1 == w2
            } else {
                w1 == w2 || w1.iter().zip(w2).all(|(a, b)| *a == -b)
            };
            if !matches {
                return Ok(false);
            }
        }
        let l0 = self.spec.l0;
        for mask in 0..(1usize << l0) {
            let swaps: Vec<bool> = (0..l0).map(|f| mask & (1 << f) != 0).collect();
            let a_ok = self
                .a_loci
                .iter()
                .zip(&other.a_loci)
                .all(|(x, y)| x.apply_swaps(&swaps) == *y);
            let b_ok = self
                .b_loci
                .iter()
                .zip(&other.b_loci)
                .all(|(x, y)| x.apply_swaps(&swaps) == *y);
            let layers_ok = self
                .base
                .layers
                .iter()
                .zip(&other.base.layers)
                .all(|(x, y)| layer_matches(x, y, &swaps));
            if a_ok && b_ok && layers_ok {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Peels the last factor off the spec, wrapping the base in the
    /// corresponding layer and keeping every remaining locus as its
    /// saturation.
    pub fn reduce(&self) -> Result<AdmissibleFiveTuple, TupleError> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(TupleError::Invalid(violations[0].to_string()));
        }
        let mut t = self.clone();
        let ks = t.spec.k_so();
        if ks > 0 {
            let s = ks - 1;
            let l = t.spec.so_ls[s];
            let b_center = t.b_loci.pop().unwrap();
            if t.base.z2_is_trivial(s) {
                debug_assert!(b_center.is_empty());
                let antipodal: Vec<bool> = (0..s).map(|i| t.a(i, s) == 1).collect();
                strip_so_factor(&mut t.base, s);
                t.base
                    .layers
                    .push(BaseLayer::SphereProduct { l, antipodal });
            } else {
                debug_assert!((0..s).all(|i| t.a(i, s) == 0));
                let action = ConsumedAction {
                    core_tags: t.base.core.iter().map(|sp| sp.tags[s]).collect(),
                    inner_flags: t
                        .base
                        .layers
                        .iter()
                        .map(|layer| match layer {
                            BaseLayer::SphereProduct { antipodal, .. } => antipodal[s],
                            _ => false,
                        })
                        .collect(),
                };
                strip_so_factor(&mut t.base, s);
                t.base.layers.push(BaseLayer::SphereQuotient {
                    l,
                    action,
                    center: b_center,
                });
            }
            t.spec.so_ls.pop();
            t.a_matrix.pop();
            for row in &mut t.a_matrix {
                row.pop();
            }
        } else if t.spec.k0() > 0 {
            let l = t.spec.su_ls.pop().unwrap();
            let weights = t.psi.weights.pop().unwrap();
            let center = t.a_loci.pop().unwrap();
            t.base
                .layers
                .push(BaseLayer::SuBundle { l, weights, center });
        } else {
            return Err(TupleError::NothingToReduce);
        }
        Ok(t)
    }

    /// Inverse of [`Self::reduce`]: pops the outermost layer of the base and
    /// reattaches the factor it encodes. The factor argument must match the
    /// layer.
    pub fn expand(&self, factor: &GroupFactor) -> Result<AdmissibleFiveTuple, TupleError> {
        let mut t = self.clone();
        let layer = t
            .base
            .layers
            .pop()
            .ok_or_else(|| TupleError::BranchHypothesis("base has no peel layer".into()))?;
        match (layer, factor) {
            (BaseLayer::SphereProduct { l, antipodal }, GroupFactor::So(n)) if *n == 2 * l + 1 => {
                let s_new = t.spec.k_so();
                if antipodal.len() != s_new {
                    return Err(TupleError::BranchHypothesis(
                        "layer flag count differs from SO factor count".into(),
                    ));
                }
                t.spec.so_ls.push(l);
                for sphere in &mut t.base.core {
                    sphere.tags.push(Z2Tag::Trivial);
                }
                for inner in &mut t.base.layers {
                    if let BaseLayer::SphereProduct { antipodal, .. } = inner {
                        antipodal.push(false);
                    }
                }
                for (i, row) in t.a_matrix.iter_mut().enumerate() {
                    row.push(antipodal[i] as u8);
                }
                t.a_matrix.push(vec![0; s_new + 1]);
                t.b_loci.push(CoreLocus::Empty);
            }
            (BaseLayer::SphereQuotient { l, action, center }, GroupFactor::So(n))
                if *n == 2 * l + 1 =>
            {
                let s_new = t.spec.k_so();
                if action.core_tags.len() != t.base.core.len()
                    || action.inner_flags.len() != t.base.layers.len()
                {
                    return Err(TupleError::BranchHypothesis(
                        "consumed action does not fit the remaining base".into(),
                    ));
                }
                t.spec.so_ls.push(l);
                for (sphere, tag) in t.base.core.iter_mut().zip(&action.core_tags) {
                    sphere.tags.push(*tag);
                }
                for (inner, flag) in t.base.layers.iter_mut().zip(&action.inner_flags) {
                    match inner {
                        BaseLayer::SphereProduct { antipodal, .. } => antipodal.push(*flag),
                        _ if *flag => {
                            return Err(TupleError::BranchHypothesis(
                                "antipodal flag recorded on a non-product layer".into(),
                            ))
                        }
                        _ => {}
                    }
                }
                for row in t.a_matrix.iter_mut() {
                    row.push(0);
                }
                t.a_matrix.push(vec![0; s_new + 1]);
                t.b_loci.push(center);
            }
            (BaseLayer::SuBundle { l, weights, center }, GroupFactor::Su(n)) if *n == l + 1 => {
                if !t.spec.so_ls.is_empty() {
                    return Err(TupleError::BranchHypothesis(
                        "SU factors precede SO factors in admissible order".into(),
                    ));
                }
                t.spec.su_ls.push(l);
                t.psi.weights.push(weights);
                t.a_loci.push(center);
            }
            (layer, factor) => {
                return Err(TupleError::BranchHypothesis(format!(
                    "layer {:?} does not match factor {}",
                    layer, factor
                )))
            }
        }
        Ok(t)
    }

    /// Realizes the tuple as a manifold expression by folding factors from
    /// the last to the first: each SO factor contributes a sphere product or
    /// a sphere quotient (blown down along its locus), each SU factor a
    /// projective bundle (blown down along its locus); with no torus the SU
    /// bundles are trivial products of projective spaces.
    pub fn realize(&self) -> Result<ManifoldExpr, TupleError> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(TupleError::Invalid(violations[0].to_string()));
        }
        let k0 = self.spec.k0();
        let ks = self.spec.k_so();
        let l0 = self.spec.l0;

        let mut expr = core_expr(l0)?;
        let mut actions: Vec<Z2Action> = (0..ks)
            .map(|i| core_action(&self.base, |f| self.base.core[f].tags[i].to_action()))
            .collect();
        let mut history: Vec<Wrap> = Vec::new();

        // base layers of an already-reduced tuple
        for layer in &self.base.layers {
            match layer {
                BaseLayer::SphereProduct { l, antipodal } => {
                    expr = ManifoldExpr::Product(vec![ManifoldExpr::sphere(*l)?, expr]);
                    for (i, act) in actions.iter_mut().enumerate() {
                        let sphere_part = if antipodal[i] {
                            Z2Action::Antipodal
                        } else {
                            Z2Action::Trivial
                        };
                        *act = Z2Action::Product(vec![sphere_part, act.clone()]);
                    }
                    history.push(Wrap::Sphere);
                }
                BaseLayer::SphereQuotient { l, action, center } => {
                    let consumed = rebuild_consumed_action(&self.base, action, history.len());
                    expr = ManifoldExpr::z2_quotient(*l, expr, consumed)?;
                    if !center.is_empty() {
                        expr = ManifoldExpr::blow_down(expr, make_center(center, &history))?;
                    }
                    for act in actions.iter_mut() {
                        *act = Z2Action::Induced(Box::new(act.clone()));
                    }
                    history.push(Wrap::Quotient);
                }
                BaseLayer::SuBundle { l, weights, center } => {
                    debug_assert!(ks == 0, "SO factors remain under an SU layer");
                    if l0 == 0 {
                        debug_assert!(center.is_empty());
                        expr = ManifoldExpr::Product(vec![ManifoldExpr::cp(*l)?, expr]);
                        history.push(Wrap::SuBlow {
                            l: *l,
                            center: None,
                        });
                    } else {
                        expr = ManifoldExpr::proj_bundle_su(*l, expr, weights.clone())?;
                        let c = (!center.is_empty()).then(|| center.clone());
                        if let Some(center) = &c {
                            expr = ManifoldExpr::blow_down(expr, make_center(center, &history))?;
                        }
                        history.push(Wrap::SuBlow { l: *l, center: c });
                    }
                }
            }
        }

        // SO factors, last first
        for s in (0..ks).rev() {
            let l = self.spec.so_ls[s];
            let action = actions[s].clone();
            if action.is_trivial() {
                expr = ManifoldExpr::Product(vec![ManifoldExpr::sphere(l)?, expr]);
                for (i, act) in actions.iter_mut().enumerate().take(s) {
                    let sphere_part = if self.a(i, s) == 1 {
                        Z2Action::Antipodal
                    } else {
                        Z2Action::Trivial
                    };
                    *act = Z2Action::Product(vec![sphere_part, act.clone()]);
                }
                history.push(Wrap::Sphere);
            } else {
                expr = ManifoldExpr::z2_quotient(l, expr, action)?;
                if !self.b_loci[s].is_empty() {
                    expr = ManifoldExpr::blow_down(expr, make_center(&self.b_loci[s], &history))?;
                }
                for act in actions.iter_mut().take(s) {
                    *act = Z2Action::Induced(Box::new(act.clone()));
                }
                history.push(Wrap::Quotient);
            }
        }

        // SU factors, last first
        for i in (0..k0).rev() {
            let l = self.spec.su_ls[i];
            if l0 == 0 {
                expr = ManifoldExpr::Product(vec![ManifoldExpr::cp(l)?, expr]);
                history.push(Wrap::SuBlow { l, center: None });
            } else {
                expr = ManifoldExpr::proj_bundle_su(l, expr, self.psi.weights[i].clone())?;
                let center = (!self.a_loci[i].is_empty()).then(|| self.a_loci[i].clone());
                if let Some(c) = &center {
                    expr = ManifoldExpr::blow_down(expr, make_center(c, &history))?;
                }
                history.push(Wrap::SuBlow { l, center });
            }
        }
        Ok(expr)
    }

    /// Number of torus-fixed points, counted combinatorially from the tuple
    /// data alone: two poles per sphere, fixed points pair off in a
    /// quotient, a bundle multiplies by the fixed points of its projective
    /// fiber, and a blow-down trades the fibered count over the center for
    /// the center itself.
    pub fn fixed_point_count(&self) -> Result<i64, TupleError> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(TupleError::Invalid(violations[0].to_string()));
        }
        let mut count: i64 = 1 << self.spec.l0;
        let mut history: Vec<Wrap> = Vec::new();
        let fold = |count: &mut i64, wrap: Wrap, history: &mut Vec<Wrap>| {
            match &wrap {
                Wrap::Sphere => *count *= 2,
                Wrap::Quotient => {}
                Wrap::SuBlow { l, center } => {
                    *count *= (*l as i64) + 1;
                    if let Some(c) = center {
                        *count -= (*l as i64) * fp_saturated(c, history);
                    }
                }
            }
            history.push(wrap);
        };
        for layer in &self.base.layers {
            let wrap = match layer {
                BaseLayer::SphereProduct { .. } => Wrap::Sphere,
                BaseLayer::SphereQuotient { .. } => Wrap::Quotient,
                BaseLayer::SuBundle { l, center, .. } => Wrap::SuBlow {
                    l: *l,
                    center: (!center.is_empty()).then(|| center.clone()),
                },
            };
            fold(&mut count, wrap, &mut history);
        }
        for s in (0..self.spec.k_so()).rev() {
            let trivial = self.base.z2_is_trivial(s)
                && ((s + 1)..self.spec.k_so()).all(|j| self.a(s, j) == 0);
            let wrap = if trivial {
                Wrap::Sphere
            } else {
                Wrap::Quotient
            };
            fold(&mut count, wrap, &mut history);
        }
        for i in (0..self.spec.k0()).rev() {
            let center = (!self.a_loci[i].is_empty()).then(|| self.a_loci[i].clone());
            fold(
                &mut count,
                Wrap::SuBlow {
                    l: self.spec.su_ls[i],
                    center,
                },
                &mut history,
            );
        }
        Ok(count)
    }

    /// Flag propagation: a manifold is quasitoric exactly when every factor
    /// is SU, the base is quasitoric, and every blow-down locus is
    /// connected; the degree-two cohomology flag follows the same shape; the
    /// fundamental group is read off the realization.
    pub fn propagate_flags(&self) -> Result<PropagationFlags, TupleError> {
        let connected_loci = self.a_loci.iter().all(|a| a.is_empty() || a.is_connected());
        let base_ok = base_locally_nice(&self.base);
        let all_su = self.spec.k_so() == 0;
        let quasitoric = all_su && base_ok && connected_loci;
        let cohomology_deg2 = quasitoric;
        let simply_connected = self.realize()?.simply_connected();
        Ok(PropagationFlags {
            quasitoric,
            cohomology_deg2,
            simply_connected,
        })
    }

    pub fn psi_text(&self) -> String {
        let psi: Vec<String> = self
            .psi
            .weights
            .iter()
            .map(|w| {
                format!(
                    "({})",
                    w.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        format!("[{}]", psi.join(","))
    }

    pub fn base_text(&self) -> String {
        render_base(&self.base)
    }

    pub fn a_text(&self) -> String {
        let a: Vec<String> = self.a_loci.iter().map(|x| x.to_string()).collect();
        format!("[{}]", a.join(","))
    }

    pub fn b_text(&self) -> String {
        let b: Vec<String> = self.b_loci.iter().map(|x| x.to_string()).collect();
        format!("[{}]", b.join(","))
    }

    pub fn a_matrix_text(&self) -> String {
        let mut am = Vec::new();
        for i in 0..self.spec.k_so() {
            for j in (i + 1)..self.spec.k_so() {
                am.push(format!("a{}{}={}", i + 1, j + 1, self.a(i, j)));
            }
        }
        format!("[{}]", am.join(","))
    }

    /// Stable one-line text form, field order: spec, psi, base, A, B, a.
    pub fn serialize(&self) -> String {
        format!(
            "spec={} psi={} base={} A={} B={} a={}",
            self.spec,
            self.psi_text(),
            self.base_text(),
            self.a_text(),
            self.b_text(),
            self.a_matrix_text()
        )
    }
}

fn layer_matches(a: &BaseLayer, b: &BaseLayer, swaps: &[bool]) -> bool {
    match (a, b) {
        (
            BaseLayer::SphereQuotient {
                l: l1,
                action: ac1,
                center: c1,
            },
            BaseLayer::SphereQuotient {
                l: l2,
                action: ac2,
                center: c2,
            },
        ) => l1 == l2 && ac1 == ac2 && c1.apply_swaps(swaps) == *c2,
        (
            BaseLayer::SuBundle {
                l: l1,
                weights: w1,
                center: c1,
            },
            BaseLayer::SuBundle {
                l: l2,
                weights: w2,
                center: c2,
            },
        ) => l1 == l2 && w1 == w2 && c1.apply_swaps(swaps) == *c2,
        (x, y) => x == y,
    }
}

fn strip_so_factor(base: &mut TupleBase, s: usize) {
    for sphere in &mut base.core {
        sphere.tags.remove(s);
    }
    for layer in &mut base.layers {
        if let BaseLayer::SphereProduct { antipodal, .. } = layer {
            antipodal.remove(s);
        }
    }
}

fn core_expr(l0: usize) -> Result<ManifoldExpr, ManifoldError> {
    Ok(match l0 {
        0 => ManifoldExpr::Point,
        1 => ManifoldExpr::sphere(1)?,
        n => ManifoldExpr::Product(vec![ManifoldExpr::sphere(1)?; n]),
    })
}

fn core_action<F: Fn(usize) -> Z2Action>(base: &TupleBase, tag_of: F) -> Z2Action {
    match base.core.len() {
        0 => Z2Action::Trivial,
        1 => tag_of(0),
        n => Z2Action::Product((0..n).map(tag_of).collect()),
    }
}

/// Rebuilds the involution a quotient layer consumed, aligned with the
/// expression built from the layers below it.
fn rebuild_consumed_action(base: &TupleBase, action: &ConsumedAction, depth: usize) -> Z2Action {
    let mut act = core_action(base, |f| action.core_tags[f].to_action());
    for (idx, layer) in base.layers.iter().take(depth).enumerate() {
        act = match layer {
            BaseLayer::SphereProduct { .. } => {
                let sphere_part = if action.inner_flags[idx] {
                    Z2Action::Antipodal
                } else {
                    Z2Action::Trivial
                };
                Z2Action::Product(vec![sphere_part, act])
            }
            _ => Z2Action::Induced(Box::new(act)),
        };
    }
    act
}

/// Saturation history of a pending locus: the wraps applied since the core.
#[derive(Debug, Clone)]
enum Wrap {
    Sphere,
    Quotient,
    SuBlow { l: usize, center: Option<CoreLocus> },
}

/// Euler characteristic of the saturation of a core locus through a wrap
/// history. A sphere product doubles it, a quotient pairs it off, a bundle
/// multiplies by the fiber and a blow-down along an intersecting center
/// collapses the fibered intersection back onto it.
fn chi_saturated(locus: &CoreLocus, history: &[Wrap]) -> i64 {
    if locus.is_empty() {
        return 0;
    }
    match history.split_last() {
        None => locus.chi(),
        Some((wrap, rest)) => match wrap {
            Wrap::Sphere => 2 * chi_saturated(locus, rest),
            Wrap::Quotient => chi_saturated(locus, rest),
            Wrap::SuBlow { l, center } => {
                let fibered = (*l as i64 + 1) * chi_saturated(locus, rest);
                match center {
                    None => fibered,
                    Some(c) => fibered - *l as i64 * chi_saturated(&locus.intersect(c), rest),
                }
            }
        },
    }
}

/// Torus-fixed-point count of a saturated core locus; poles count one each,
/// an equator has none.
fn fp_saturated(locus: &CoreLocus, history: &[Wrap]) -> i64 {
    let core_count = |l: &CoreLocus| -> i64 {
        match l {
            CoreLocus::Empty => 0,
            CoreLocus::Prod(v) => v
                .iter()
                .map(|f| match f {
                    FactorLocus::Full => 2,
                    FactorLocus::Poles { north, south } => *north as i64 + *south as i64,
                    FactorLocus::Equator => 0,
                })
                .product(),
        }
    };
    if locus.is_empty() {
        return 0;
    }
    match history.split_last() {
        None => core_count(locus),
        Some((wrap, rest)) => match wrap {
            Wrap::Sphere => 2 * fp_saturated(locus, rest),
            Wrap::Quotient => fp_saturated(locus, rest),
            Wrap::SuBlow { l, center } => {
                let fibered = (*l as i64 + 1) * fp_saturated(locus, rest);
                match center {
                    None => fibered,
                    Some(c) => fibered - *l as i64 * fp_saturated(&locus.intersect(c), rest),
                }
            }
        },
    }
}

fn make_center(locus: &CoreLocus, history: &[Wrap]) -> Center {
    let core = match locus {
        CoreLocus::Empty => Vec::new(),
        CoreLocus::Prod(v) => v.clone(),
    };
    Center {
        core,
        chi: chi_saturated(locus, history),
        codim: locus.codim(),
    }
}

/// Does the base support a quasitoric/cohomology-generated answer? The
/// catalog cores all do; peel layers spoil it unless they are rank-one
/// sphere products or bundles over connected centers.
fn base_locally_nice(base: &TupleBase) -> bool {
    base.layers.iter().all(|layer| match layer {
        BaseLayer::SphereProduct { l, .. } => *l == 1,
        BaseLayer::SphereQuotient { .. } => false,
        BaseLayer::SuBundle { center, .. } => center.is_empty() || center.is_connected(),
    })
}

fn render_base(base: &TupleBase) -> String {
    let mut s = if base.core.is_empty() {
        "pt".to_string()
    } else {
        base.core
            .iter()
            .map(|sphere| {
                if sphere.tags.is_empty() {
                    "S^2".to_string()
                } else {
                    format!(
                        "S^2[{}]",
                        sphere.tags.iter().map(Z2Tag::letter).collect::<String>()
                    )
                }
            })
            .collect::<Vec<_>>()
            .join("x")
    };
    for layer in &base.layers {
        match layer {
            BaseLayer::SphereProduct { l, antipodal } => {
                s.push_str(&format!(
                    "|prod(S^{};a={})",
                    2 * l,
                    antipodal
                        .iter()
                        .map(|&b| if b { '1' } else { '0' })
                        .collect::<String>()
                ));
            }
            BaseLayer::SphereQuotient { l, action, center } => {
                s.push_str(&format!(
                    "|quot(S^{};tags={};flags={};B={})",
                    2 * l,
                    action
                        .core_tags
                        .iter()
                        .map(Z2Tag::letter)
                        .collect::<String>(),
                    action
                        .inner_flags
                        .iter()
                        .map(|&b| if b { '1' } else { '0' })
                        .collect::<String>(),
                    center
                ));
            }
            BaseLayer::SuBundle { l, weights, center } => {
                s.push_str(&format!(
                    "|su(CP^{};w=({});A={})",
                    l,
                    weights
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    center
                ));
            }
        }
    }
    s
}
