//! Signed-permutation reflection groups.
//!
//! The Weyl group of a compact group acts on the set of characteristic
//! submanifolds of a torus manifold by permuting them and flipping their
//! orientations. We model an element of that action as a signed permutation
//! of `{0..m}`, enumerate the finite groups they generate, classify the
//! reflections, and read off the isomorphism type of each elementary factor
//! from the orbit structure.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::liegroups::GroupFactor;

/// Default enumeration cap. Every group needed at desk scale has at most
/// `2^6 * 6! = 46080` elements; the cap turns runaway closures into errors.
pub const DEFAULT_SIZE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("enumeration exceeded size cap {0}; generators do not describe a desk-scale group")]
    CapExceeded(usize),
    #[error("size cap must be at least 1")]
    ZeroCap,
    #[error("indices {0} and {1} lie in different orbits")]
    DifferentOrbits(usize, usize),
    #[error("indices must be distinct")]
    EqualIndices,
    #[error("index {0} out of range for degree {1}")]
    IndexOutOfRange(usize, usize),
    #[error("embedding indices overlap or repeat")]
    IndexOverlap,
    #[error("orbit is not an orbit of this group")]
    NotAnOrbit,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("torus factors have no Weyl group action on the characteristic set")]
    TorusFactor,
}

/// A permutation of `{0..m}` together with a sign at every index.
///
/// Acting on a basis `e_0..e_{m-1}`, the element sends `e_i` to
/// `signs[i] * e_{perm[i]}`; the sign records whether the element preserves
/// the orientation of the i-th characteristic submanifold.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.degree() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(
                f,
                "{}{}",
                if self.signs[i] < 0 { "-" } else { "" },
                self.perm[i]
            )?;
        }
        write!(f, "]")
    }
}

impl SignedPermutation {
    pub fn identity(m: usize) -> Self {
        SignedPermutation {
            perm: (0..m).collect(),
            signs: vec![1; m],
        }
    }

    /// `f_{ij+}` (swap `i` and `j`) or `f_{ij-}` (swap with both signs flipped).
    pub fn swap(m: usize, i: usize, j: usize, positive: bool) -> Result<Self, WeylError> {
        if i >= m {
            return Err(WeylError::IndexOutOfRange(i, m));
        }
        if j >= m {
            return Err(WeylError::IndexOutOfRange(j, m));
        }
        if i == j {
            return Err(WeylError::EqualIndices);
        }
        let mut p = Self::identity(m);
        p.perm.swap(i, j);
        if !positive {
            p.signs[i] = -1;
            p.signs[j] = -1;
        }
        Ok(p)
    }

    /// `g_i`: fix everything, reverse the orientation at index `i`.
    pub fn flip(m: usize, i: usize) -> Result<Self, WeylError> {
        if i >= m {
            return Err(WeylError::IndexOutOfRange(i, m));
        }
        let mut p = Self::identity(m);
        p.signs[i] = -1;
        Ok(p)
    }

    pub fn from_parts(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self, WeylError> {
        let m = perm.len();
        if signs.len() != m {
            return Err(WeylError::DegreeMismatch(m, signs.len()));
        }
        let mut seen = vec![false; m];
        for &x in &perm {
            if x >= m {
                return Err(WeylError::IndexOutOfRange(x, m));
            }
            if seen[x] {
                return Err(WeylError::IndexOverlap);
            }
            seen[x] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(WeylError::InvalidAction("signs must be +1 or -1".into()));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn sign(&self, i: usize) -> i8 {
        self.signs[i]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p == i) && self.signs.iter().all(|&s| s == 1)
    }

    /// Product action: apply `b`, then `a`.
    pub fn compose(a: &Self, b: &Self) -> Result<Self, WeylError> {
        let m = a.degree();
        if b.degree() != m {
            return Err(WeylError::DegreeMismatch(m, b.degree()));
        }
        let mut perm = vec![0; m];
        let mut signs = vec![1i8; m];
        for i in 0..m {
            perm[i] = a.perm[b.perm[i]];
            signs[i] = b.signs[i] * a.signs[b.perm[i]];
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn inverse(&self) -> Self {
        let m = self.degree();
        let mut perm = vec![0; m];
        let mut signs = vec![1i8; m];
        for i in 0..m {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    /// Trace of the signed permutation matrix.
    pub fn signed_trace(&self) -> i64 {
        (0..self.degree())
            .filter(|&i| self.perm[i] == i)
            .map(|i| self.signs[i] as i64)
            .sum()
    }

    pub fn has_order_two(&self) -> bool {
        !self.is_identity()
            && Self::compose(self, self)
                .map(|sq| sq.is_identity())
                .unwrap_or(false)
    }
}

/// The three ways an order-two element of trace `m - 2` can act.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectionType {
    /// Two indices swapped, all orientations preserved.
    Type1 {
        i: usize,
        j: usize,
    },
    /// Two indices swapped, orientations reversed exactly at the moved pair.
    Type2 {
        i: usize,
        j: usize,
    },
    /// No index moved, orientation reversed at exactly one index.
    Type3 {
        i: usize,
    },
    NotReflection,
}

impl ReflectionType {
    pub fn is_reflection(&self) -> bool {
        !matches!(self, ReflectionType::NotReflection)
    }
}

/// Reflection criterion: an element acts as a reflection exactly when it has
/// order two and signed trace `m - 2`; the three shapes below are the only
/// possibilities.
pub fn classify_reflection(g: &SignedPermutation) -> ReflectionType {
    let m = g.degree();
    if !g.has_order_two() || g.signed_trace() != m as i64 - 2 {
        return ReflectionType::NotReflection;
    }
    let moved: Vec<usize> = (0..m).filter(|&i| g.perm[i] != i).collect();
    match moved.len() {
        0 => {
            let flipped: Vec<usize> = (0..m).filter(|&i| g.signs[i] == -1).collect();
            debug_assert_eq!(flipped.len(), 1);
            ReflectionType::Type3 { i: flipped[0] }
        }
        2 => {
            let (i, j) = (moved[0], moved[1]);
            if g.signs[i] == 1 && g.signs[j] == 1 {
                ReflectionType::Type1 { i, j }
            } else {
                debug_assert!(g.signs[i] == -1 && g.signs[j] == -1);
                ReflectionType::Type2 { i, j }
            }
        }
        _ => unreachable!("order two and trace m-2 force 0 or 2 moved indices"),
    }
}

/// A finite group of signed permutations with its full element list.
#[derive(Debug, Clone)]
pub struct ReflectionGroup {
    degree: usize,
    generators: Vec<SignedPermutation>,
    elements: Vec<SignedPermutation>,
    size_cap: usize,
}

/// Partition of `{0..m}` into the pointwise-and-orientation fixed part and
/// the nontrivial orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub fixed_preserved: BTreeSet<usize>,
    pub orbits: Vec<BTreeSet<usize>>,
}

/// Isomorphism type of an elementary factor recovered from its orbit, with
/// the size of the characteristic-submanifold orbit it acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementaryType {
    /// `SU(l+1)` acting on `l+1` submanifolds.
    Su { l: usize, f_count: usize },
    /// `SO(2l+1)` acting on `l` submanifolds.
    SoOdd { l: usize, f_count: usize },
    /// `SO(2l)` acting on `l` submanifolds.
    SoEven { l: usize, f_count: usize },
}

impl ElementaryType {
    pub fn f_count(&self) -> usize {
        match *self {
            ElementaryType::Su { f_count, .. }
            | ElementaryType::SoOdd { f_count, .. }
            | ElementaryType::SoEven { f_count, .. } => f_count,
        }
    }
}

impl fmt::Display for ElementaryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ElementaryType::Su { l, .. } => write!(f, "SU({})", l + 1),
            ElementaryType::SoOdd { l, .. } => write!(f, "SO({})", 2 * l + 1),
            ElementaryType::SoEven { l, .. } => write!(f, "SO({})", 2 * l),
        }
    }
}

/// Closure of `generators` under composition, capped at `size_cap` elements.
/// The element list is sorted lexicographically on (permutation, signs).
pub fn enumerate_group(
    degree: usize,
    generators: &[SignedPermutation],
    size_cap: usize,
) -> Result<ReflectionGroup, WeylError> {
    if size_cap == 0 {
        return Err(WeylError::ZeroCap);
    }
    for g in generators {
        if g.degree() != degree {
            return Err(WeylError::DegreeMismatch(degree, g.degree()));
        }
    }
    let mut seen: HashSet<SignedPermutation> = HashSet::new();
    let mut queue: VecDeque<SignedPermutation> = VecDeque::new();
    let id = SignedPermutation::identity(degree);
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(g) = queue.pop_front() {
        for h in generators {
            let prod = SignedPermutation::compose(h, &g)?;
            if seen.insert(prod.clone()) {
                if seen.len() > size_cap {
                    return Err(WeylError::CapExceeded(size_cap));
                }
                queue.push_back(prod);
            }
        }
    }
    let mut elements: Vec<SignedPermutation> = seen.into_iter().collect();
    elements.sort();
    Ok(ReflectionGroup {
        degree,
        generators: generators.to_vec(),
        elements,
        size_cap,
    })
}

impl ReflectionGroup {
    pub fn trivial(degree: usize) -> Self {
        ReflectionGroup {
            degree,
            generators: Vec::new(),
            elements: vec![SignedPermutation::identity(degree)],
            size_cap: DEFAULT_SIZE_CAP,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[SignedPermutation] {
        &self.generators
    }

    pub fn size_cap(&self) -> usize {
        self.size_cap
    }

    /// All elements acting as reflections, in element order.
    pub fn reflections(&self) -> Vec<SignedPermutation> {
        self.elements
            .iter()
            .filter(|g| classify_reflection(g).is_reflection())
            .cloned()
            .collect()
    }

    /// Splits `{0..m}` into the pointwise fixed, orientation-preserved part
    /// and the remaining orbits. An index fixed by every permutation but
    /// orientation-reversed somewhere forms its own nontrivial orbit.
    pub fn orbit_partition(&self) -> OrbitPartition {
        let m = self.degree;
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut sign_touched = vec![false; m];
        for g in &self.elements {
            for (i, touched) in sign_touched.iter_mut().enumerate() {
                if g.perm[i] != i {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, g.perm[i]));
                    if a != b {
                        parent[a] = b;
                    }
                } else if g.signs[i] == -1 {
                    *touched = true;
                }
            }
        }
        let mut buckets: std::collections::BTreeMap<usize, BTreeSet<usize>> = Default::default();
        for i in 0..m {
            let r = find(&mut parent, i);
            buckets.entry(r).or_default().insert(i);
        }
        let mut fixed_preserved = BTreeSet::new();
        let mut orbits = Vec::new();
        for (_, orbit) in buckets {
            if orbit.len() == 1 {
                let i = *orbit.iter().next().unwrap();
                if sign_touched[i] {
                    orbits.push(orbit);
                } else {
                    fixed_preserved.insert(i);
                }
            } else {
                orbits.push(orbit);
            }
        }
        orbits.sort_by_key(|o| *o.iter().next().unwrap());
        OrbitPartition {
            fixed_preserved,
            orbits,
        }
    }

    /// Number of reflections mapping index `j1` to `j2`. Constant over the
    /// ordered pairs of one orbit, and either 1 or 2 for a Weyl action.
    pub fn reflection_count_between(&self, j1: usize, j2: usize) -> Result<usize, WeylError> {
        if j1 == j2 {
            return Err(WeylError::EqualIndices);
        }
        if j1 >= self.degree {
            return Err(WeylError::IndexOutOfRange(j1, self.degree));
        }
        if j2 >= self.degree {
            return Err(WeylError::IndexOutOfRange(j2, self.degree));
        }
        let partition = self.orbit_partition();
        let same_orbit = partition
            .orbits
            .iter()
            .any(|o| o.contains(&j1) && o.contains(&j2));
        if !same_orbit {
            return Err(WeylError::DifferentOrbits(j1, j2));
        }
        Ok(self
            .elements
            .iter()
            .filter(|g| classify_reflection(g).is_reflection() && g.perm[j1] == j2)
            .count())
    }

    /// Reads the isomorphism type of the elementary factor acting on one
    /// nontrivial orbit. A singleton orbit (index fixed, orientation
    /// reversed) is the `SO(3)` case with a single characteristic
    /// submanifold.
    pub fn detect_factor_type(&self, orbit: &BTreeSet<usize>) -> Result<ElementaryType, WeylError> {
        let partition = self.orbit_partition();
        if !partition.orbits.iter().any(|o| o == orbit) {
            return Err(WeylError::NotAnOrbit);
        }
        let n = orbit.len();
        if n == 1 {
            return Ok(ElementaryType::SoOdd { l: 1, f_count: 1 });
        }
        let idx: Vec<usize> = orbit.iter().cloned().collect();
        let mut count: Option<usize> = None;
        for &a in &idx {
            for &b in &idx {
                if a == b {
                    continue;
                }
                let c = self.reflection_count_between(a, b)?;
                match count {
                    None => count = Some(c),
                    Some(prev) if prev != c => {
                        return Err(WeylError::InvalidAction(format!(
                            "mixed reflection counts {} and {} within one orbit",
                            prev, c
                        )))
                    }
                    _ => {}
                }
            }
        }
        match count {
            Some(1) => Ok(ElementaryType::Su {
                l: n - 1,
                f_count: n,
            }),
            Some(2) => {
                let type3_touches = self.elements.iter().any(|g| {
                    matches!(classify_reflection(g), ReflectionType::Type3 { i } if orbit.contains(&i))
                });
                if type3_touches {
                    Ok(ElementaryType::SoOdd { l: n, f_count: n })
                } else {
                    Ok(ElementaryType::SoEven { l: n, f_count: n })
                }
            }
            Some(c) => Err(WeylError::InvalidAction(format!(
                "reflection count {} is not 1 or 2",
                c
            ))),
            None => Err(WeylError::NotAnOrbit),
        }
    }
}

/// Placement of a factor's standard generators inside a degree-`m` action.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub degree: usize,
    pub indices: Vec<usize>,
}

impl Embedding {
    pub fn new(degree: usize, indices: Vec<usize>) -> Self {
        Embedding { degree, indices }
    }

    /// Identity embedding on the first `n` letters.
    pub fn dense(n: usize) -> Self {
        Embedding {
            degree: n,
            indices: (0..n).collect(),
        }
    }
}

/// Standard Weyl group of a classical factor acting on the assigned indices:
/// type A uses the `f_{ij+}`, type D the `f_{ij+-}`, types B and C add `g_i`.
pub fn weyl_group_of(
    factor: &GroupFactor,
    embedding: &Embedding,
) -> Result<ReflectionGroup, WeylError> {
    let m = embedding.degree;
    let idx = &embedding.indices;
    let distinct: HashSet<usize> = idx.iter().cloned().collect();
    if distinct.len() != idx.len() {
        return Err(WeylError::IndexOverlap);
    }
    for &i in idx {
        if i >= m {
            return Err(WeylError::IndexOutOfRange(i, m));
        }
    }
    let letters = weyl_letters(factor)?;
    if idx.len() != letters {
        return Err(WeylError::InvalidAction(format!(
            "factor {} needs {} letters, embedding provides {}",
            factor,
            letters,
            idx.len()
        )));
    }
    let mut gens = Vec::new();
    let with_flip = matches!(
        factor,
        GroupFactor::So(n) | GroupFactor::Spin(n) if n % 2 == 1
    ) || matches!(factor, GroupFactor::Sp(_));
    let signed_pairs = !factor.is_su();
    for a in 0..letters {
        for b in (a + 1)..letters {
            gens.push(SignedPermutation::swap(m, idx[a], idx[b], true)?);
            if signed_pairs {
                gens.push(SignedPermutation::swap(m, idx[a], idx[b], false)?);
            }
        }
    }
    if with_flip {
        gens.push(SignedPermutation::flip(m, idx[0])?);
    }
    enumerate_group(m, &gens, DEFAULT_SIZE_CAP)
}

/// Number of letters the factor's Weyl group permutes.
fn weyl_letters(factor: &GroupFactor) -> Result<usize, WeylError> {
    match *factor {
        GroupFactor::Su(n) => Ok(n),
        GroupFactor::So(n) | GroupFactor::Spin(n) => Ok(n / 2),
        GroupFactor::Sp(l) => Ok(l),
    }
}
