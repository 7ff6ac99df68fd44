//! Symbolic closed-manifold expressions and their invariant evaluators.
//!
//! The classification produces manifolds built from a small catalog (points,
//! even spheres, complex projective spaces) by products, free involution
//! quotients against a sphere, projective bundles, blow-downs, and connected
//! sum families. Expressions evaluate to dimension, Euler characteristic
//! (affine in the family parameter), orientability and simple-connectivity,
//! and normalize to the canonical names used in the emitted tables.

use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ManifoldError {
    #[error("connected-sum summand and basepoint dimensions differ: {0} vs {1}")]
    FamilyDimMismatch(usize, usize),
    #[error("quotient action must reverse orientation on the inner manifold")]
    NonOrientableQuotient,
    #[error("involution action does not match the shape of the expression")]
    ActionMisaligned,
    #[error("blow-down center: {0}")]
    BadCenter(String),
    #[error("cannot multiply two Euler characteristics that both depend on k")]
    SymbolicProduct,
    #[error("{0} must have positive dimension parameter")]
    ZeroParameter(&'static str),
}

/// Euler characteristic, affine in the connected-sum parameter `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerChar {
    pub constant: i64,
    pub k_coeff: i64,
}

impl EulerChar {
    pub fn constant(c: i64) -> Self {
        EulerChar {
            constant: c,
            k_coeff: 0,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.k_coeff == 0
    }

    pub fn as_constant(&self) -> Option<i64> {
        self.is_constant().then_some(self.constant)
    }

    pub fn at(&self, k: i64) -> i64 {
        self.constant + self.k_coeff * k
    }

    fn mul(self, other: EulerChar) -> Result<EulerChar, ManifoldError> {
        if !self.is_constant() && !other.is_constant() {
            return Err(ManifoldError::SymbolicProduct);
        }
        Ok(EulerChar {
            constant: self.constant * other.constant,
            k_coeff: self.k_coeff * other.constant + other.k_coeff * self.constant,
        })
    }
}

impl fmt::Display for EulerChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k_coeff == 0 {
            write!(f, "{}", self.constant)
        } else if self.constant == 0 {
            write!(f, "{}k", self.k_coeff)
        } else {
            write!(f, "{}k{:+}", self.k_coeff, self.constant)
        }
    }
}

/// Involution acting on an expression, aligned with its shape. `Induced`
/// marks an action that descends through a quotient, bundle, or blow-down
/// node to its inner part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Z2Action {
    Trivial,
    /// Free antipodal involution of an even sphere; reverses orientation.
    Antipodal,
    /// Reflection of a two-sphere fixing its equator; reverses orientation.
    Reflection,
    Product(Vec<Z2Action>),
    Induced(Box<Z2Action>),
}

impl Z2Action {
    pub fn is_trivial(&self) -> bool {
        match self {
            Z2Action::Trivial => true,
            Z2Action::Antipodal | Z2Action::Reflection => false,
            Z2Action::Product(parts) => parts.iter().all(Z2Action::is_trivial),
            Z2Action::Induced(inner) => inner.is_trivial(),
        }
    }

    /// +1 if the action preserves orientation, -1 if it reverses it.
    pub fn orientation(&self) -> i8 {
        match self {
            Z2Action::Trivial => 1,
            Z2Action::Antipodal | Z2Action::Reflection => -1,
            Z2Action::Product(parts) => parts.iter().map(Z2Action::orientation).product(),
            Z2Action::Induced(inner) => inner.orientation(),
        }
    }
}

/// Invariant subset of one catalog two-sphere factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorLocus {
    /// The whole factor.
    Full,
    /// One or both torus-fixed poles; codimension two.
    Poles { north: bool, south: bool },
    /// The invariant equator circle; codimension one.
    Equator,
}

impl FactorLocus {
    pub fn codim(&self) -> usize {
        match self {
            FactorLocus::Full => 0,
            FactorLocus::Poles { .. } => 2,
            FactorLocus::Equator => 1,
        }
    }

    pub fn chi(&self) -> i64 {
        match self {
            FactorLocus::Full => 2,
            FactorLocus::Poles { north, south } => *north as i64 + *south as i64,
            FactorLocus::Equator => 0,
        }
    }
}

impl fmt::Display for FactorLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorLocus::Full => write!(f, "*"),
            FactorLocus::Poles { north, south } => {
                let mut names = Vec::new();
                if *north {
                    names.push("N");
                }
                if *south {
                    names.push("S");
                }
                write!(f, "{{{}}}", names.join(","))
            }
            FactorLocus::Equator => write!(f, "eq"),
        }
    }
}

/// Blow-down center: an invariant submanifold described over the catalog
/// core, carrying the Euler characteristic of its saturation inside the
/// bundle it is blown down along.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Center {
    pub core: Vec<FactorLocus>,
    pub chi: i64,
    pub codim: usize,
}

impl Center {
    /// The non-trivial part of the core description, if it is concentrated
    /// in a single factor.
    fn single_nontrivial(&self) -> Option<FactorLocus> {
        let nontrivial: Vec<FactorLocus> = self
            .core
            .iter()
            .cloned()
            .filter(|l| *l != FactorLocus::Full)
            .collect();
        (nontrivial.len() == 1).then(|| nontrivial[0])
    }
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.core.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyCount {
    Fixed(u64),
    Symbolic,
}

/// Three-valued answer for properties that the calculus cannot always
/// decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

/// Symbolic closed manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldExpr {
    Point,
    /// `S^{2l}`.
    EvenSphere {
        l: usize,
    },
    /// `CP^l`.
    ComplexProjective {
        l: usize,
    },
    Product(Vec<ManifoldExpr>),
    /// Equivariant connected sum `#_k(summand)`, degenerating to `basepoint`
    /// at `k = 0`.
    ConnSumFamily {
        summand: Box<ManifoldExpr>,
        count: FamilyCount,
        basepoint: Box<ManifoldExpr>,
    },
    /// `(S^{2l} x inner) / Z2`, antipodal on the sphere and `inner_action`
    /// on the inner manifold; a fiber bundle over `RP^{2l}`.
    Z2Quotient {
        sphere_l: usize,
        inner: Box<ManifoldExpr>,
        inner_action: Z2Action,
    },
    /// Total space of a fiber bundle over `CP^l` with the given fiber; the
    /// weights record the torus character twisting the bundle.
    ProjBundleSu {
        cp_l: usize,
        fiber: Box<ManifoldExpr>,
        weights: Vec<i64>,
    },
    /// `RP^{2l}`-bundle over a base; the exceptional set of a real blow-up.
    RealProjBundle {
        rp_l: usize,
        base: Box<ManifoldExpr>,
    },
    /// Blow-down of a bundle along a center: the fibered exceptional set
    /// over the center collapses back onto it.
    BlowDown {
        bundle: Box<ManifoldExpr>,
        center: Center,
    },
}

use ManifoldExpr::*;

impl ManifoldExpr {
    pub fn sphere(l: usize) -> Result<Self, ManifoldError> {
        if l == 0 {
            return Err(ManifoldError::ZeroParameter("EvenSphere"));
        }
        Ok(EvenSphere { l })
    }

    pub fn cp(l: usize) -> Result<Self, ManifoldError> {
        if l == 0 {
            return Err(ManifoldError::ZeroParameter("ComplexProjective"));
        }
        Ok(ComplexProjective { l })
    }

    pub fn product(children: Vec<ManifoldExpr>) -> Self {
        match children.len() {
            0 => Point,
            1 => children.into_iter().next().unwrap(),
            _ => Product(children),
        }
    }

    pub fn conn_sum_family(
        summand: ManifoldExpr,
        count: FamilyCount,
        basepoint: ManifoldExpr,
    ) -> Result<Self, ManifoldError> {
        let ds = summand.dim()?;
        let db = basepoint.dim()?;
        if ds != db {
            return Err(ManifoldError::FamilyDimMismatch(ds, db));
        }
        Ok(ConnSumFamily {
            summand: Box::new(summand),
            count,
            basepoint: Box::new(basepoint),
        })
    }

    /// The diagonal involution must preserve the total orientation; the
    /// antipodal sphere half reverses it, so `inner_action` must reverse the
    /// orientation of `inner`.
    pub fn z2_quotient(
        sphere_l: usize,
        inner: ManifoldExpr,
        inner_action: Z2Action,
    ) -> Result<Self, ManifoldError> {
        if sphere_l == 0 {
            return Err(ManifoldError::ZeroParameter("Z2Quotient"));
        }
        check_alignment(&inner, &inner_action)?;
        if inner_action.orientation() != -1 {
            return Err(ManifoldError::NonOrientableQuotient);
        }
        Ok(Z2Quotient {
            sphere_l,
            inner: Box::new(inner),
            inner_action,
        })
    }

    pub fn proj_bundle_su(
        cp_l: usize,
        fiber: ManifoldExpr,
        weights: Vec<i64>,
    ) -> Result<Self, ManifoldError> {
        if cp_l == 0 {
            return Err(ManifoldError::ZeroParameter("ProjBundleSu"));
        }
        Ok(ProjBundleSu {
            cp_l,
            fiber: Box::new(fiber),
            weights,
        })
    }

    pub fn blow_down(bundle: ManifoldExpr, center: Center) -> Result<Self, ManifoldError> {
        match (&bundle, center.codim) {
            (ProjBundleSu { .. }, 2) | (Z2Quotient { .. }, 1) => {}
            (ProjBundleSu { .. }, c) => {
                return Err(ManifoldError::BadCenter(format!(
                    "complex blow-down center must have codimension two, got {}",
                    c
                )))
            }
            (Z2Quotient { .. }, c) => {
                return Err(ManifoldError::BadCenter(format!(
                    "real blow-down center must have codimension one, got {}",
                    c
                )))
            }
            _ => {
                return Err(ManifoldError::BadCenter(
                    "blow-down applies to a projective bundle or a sphere quotient".to_string(),
                ))
            }
        }
        Ok(BlowDown {
            bundle: Box::new(bundle),
            center,
        })
    }

    pub fn dim(&self) -> Result<usize, ManifoldError> {
        Ok(match self {
            Point => 0,
            EvenSphere { l } => 2 * l,
            ComplexProjective { l } => 2 * l,
            Product(children) => children.iter().map(|c| c.dim()).sum::<Result<usize, _>>()?,
            ConnSumFamily { summand, .. } => summand.dim()?,
            Z2Quotient {
                sphere_l, inner, ..
            } => 2 * sphere_l + inner.dim()?,
            ProjBundleSu { cp_l, fiber, .. } => 2 * cp_l + fiber.dim()?,
            RealProjBundle { rp_l, base } => 2 * rp_l + base.dim()?,
            BlowDown { bundle, .. } => bundle.dim()?,
        })
    }

    /// Euler characteristic: multiplicative over products and fiber bundles,
    /// the usual connected-sum correction, unchanged by a free quotient
    /// against a sphere, and the blow-down rule
    /// `chi(M) = chi(bundle) - chi(fiber over center) + chi(center)`.
    pub fn euler(&self) -> Result<EulerChar, ManifoldError> {
        Ok(match self {
            Point => EulerChar::constant(1),
            EvenSphere { .. } => EulerChar::constant(2),
            ComplexProjective { l } => EulerChar::constant(*l as i64 + 1),
            Product(children) => {
                let mut acc = EulerChar::constant(1);
                for c in children {
                    acc = acc.mul(c.euler()?)?;
                }
                acc
            }
            ConnSumFamily {
                summand,
                count,
                basepoint,
            } => {
                let s = summand
                    .euler()?
                    .as_constant()
                    .ok_or(ManifoldError::SymbolicProduct)?;
                match count {
                    FamilyCount::Fixed(0) => basepoint.euler()?,
                    FamilyCount::Fixed(k) => {
                        let k = *k as i64;
                        EulerChar::constant(k * s - 2 * (k - 1))
                    }
                    FamilyCount::Symbolic => EulerChar {
                        constant: 2,
                        k_coeff: s - 2,
                    },
                }
            }
            Z2Quotient { inner, .. } => inner.euler()?,
            ProjBundleSu { cp_l, fiber, .. } => {
                EulerChar::constant(*cp_l as i64 + 1).mul(fiber.euler()?)?
            }
            RealProjBundle { base, .. } => base.euler()?,
            BlowDown { bundle, center } => {
                let total = bundle.euler()?;
                let fiber_chi = match bundle.as_ref() {
                    ProjBundleSu { cp_l, .. } => *cp_l as i64 + 1,
                    Z2Quotient { .. } => 1, // RP^{2l} fiber
                    _ => unreachable!("validated at construction"),
                };
                EulerChar {
                    constant: total.constant - center.chi * fiber_chi + center.chi,
                    k_coeff: total.k_coeff,
                }
            }
        })
    }

    /// Every expression this calculus can build is orientable: quotients are
    /// constructed only from orientation-compatible diagonal actions and the
    /// projectivized exceptional sets are orientable.
    pub fn orientable(&self) -> bool {
        match self {
            Product(children) => children.iter().all(|c| c.orientable()),
            ConnSumFamily {
                summand, basepoint, ..
            } => summand.orientable() && basepoint.orientable(),
            Z2Quotient {
                inner,
                inner_action,
                ..
            } => inner.orientable() && inner_action.orientation() == -1,
            ProjBundleSu { fiber, .. } => fiber.orientable(),
            RealProjBundle { base, .. } => base.orientable(),
            BlowDown { bundle, .. } => bundle.orientable(),
            _ => true,
        }
    }

    /// Fundamental-group bookkeeping: bundles and complex blow-downs carry
    /// the fiber's answer; a free sphere quotient is never simply connected;
    /// a real blow-down is left undecided unless a rewrite names the result.
    pub fn simply_connected(&self) -> Tri {
        self.canonical_form().simply_connected_raw()
    }

    fn simply_connected_raw(&self) -> Tri {
        match self {
            Point | EvenSphere { .. } | ComplexProjective { .. } => Tri::Yes,
            Product(children) => {
                let mut all_yes = true;
                for c in children {
                    match c.simply_connected_raw() {
                        Tri::No => return Tri::No,
                        Tri::Unknown => all_yes = false,
                        Tri::Yes => {}
                    }
                }
                if all_yes {
                    Tri::Yes
                } else {
                    Tri::Unknown
                }
            }
            ConnSumFamily {
                summand, basepoint, ..
            } => {
                match (
                    summand.simply_connected_raw(),
                    basepoint.simply_connected_raw(),
                ) {
                    (Tri::Yes, Tri::Yes) => Tri::Yes,
                    (Tri::No, _) | (_, Tri::No) => Tri::No,
                    _ => Tri::Unknown,
                }
            }
            Z2Quotient { .. } | RealProjBundle { .. } => Tri::No,
            ProjBundleSu { fiber, .. } => fiber.simply_connected_raw(),
            BlowDown { bundle, .. } => match bundle.as_ref() {
                ProjBundleSu { fiber, .. } => fiber.simply_connected_raw(),
                _ => Tri::Unknown,
            },
        }
    }

    /// Applies the table rewrites and normalizes products; the result is
    /// what [`ManifoldExpr::canonical_name`] renders.
    pub fn canonical_form(&self) -> ManifoldExpr {
        canon(self.clone())
    }

    pub fn canonical_name(&self) -> String {
        render(&self.canonical_form())
    }
}

fn check_alignment(expr: &ManifoldExpr, action: &Z2Action) -> Result<(), ManifoldError> {
    match (expr, action) {
        (_, Z2Action::Trivial) => Ok(()),
        (EvenSphere { .. }, Z2Action::Antipodal) => Ok(()),
        (EvenSphere { l: 1 }, Z2Action::Reflection) => Ok(()),
        (Product(children), Z2Action::Product(parts)) if children.len() == parts.len() => children
            .iter()
            .zip(parts)
            .try_for_each(|(c, a)| check_alignment(c, a)),
        (Z2Quotient { .. } | ProjBundleSu { .. } | BlowDown { .. }, Z2Action::Induced(_)) => Ok(()),
        (Point, a) if a.is_trivial() => Ok(()),
        _ => Err(ManifoldError::ActionMisaligned),
    }
}

/// Recursive canonicalization.
fn canon(expr: ManifoldExpr) -> ManifoldExpr {
    match expr {
        Product(children) => {
            let mut flat = Vec::new();
            flatten_into(children.into_iter().map(canon), &mut flat);
            sort_product(flat)
        }
        ConnSumFamily {
            summand,
            count,
            basepoint,
        } => ConnSumFamily {
            summand: Box::new(canon(*summand)),
            count,
            basepoint: Box::new(canon(*basepoint)),
        },
        Z2Quotient {
            sphere_l,
            inner,
            inner_action,
        } => {
            let (inner, inner_action) = canon_aligned(*inner, inner_action);
            Z2Quotient {
                sphere_l,
                inner: Box::new(inner),
                inner_action,
            }
        }
        ProjBundleSu {
            cp_l,
            fiber,
            weights,
        } => ProjBundleSu {
            cp_l,
            fiber: Box::new(canon(*fiber)),
            weights,
        },
        RealProjBundle { rp_l, base } => RealProjBundle {
            rp_l,
            base: Box::new(canon(*base)),
        },
        BlowDown { bundle, center } => rewrite_blow_down(canon(*bundle), center),
        leaf => leaf,
    }
}

fn flatten_into<I: Iterator<Item = ManifoldExpr>>(children: I, out: &mut Vec<ManifoldExpr>) {
    for c in children {
        match c {
            Product(grand) => flatten_into(grand.into_iter(), out),
            Point => {}
            other => out.push(other),
        }
    }
}

fn sort_product(mut children: Vec<ManifoldExpr>) -> ManifoldExpr {
    children.sort_by(compare_names);
    ManifoldExpr::product(children)
}

fn compare_names(a: &ManifoldExpr, b: &ManifoldExpr) -> Ordering {
    render(a).cmp(&render(b))
}

/// Canonicalize an expression while keeping an involution action aligned
/// with its shape.
fn canon_aligned(expr: ManifoldExpr, action: Z2Action) -> (ManifoldExpr, Z2Action) {
    match (expr, action) {
        (Product(children), act) => {
            let parts = match act {
                Z2Action::Product(parts) => parts,
                Z2Action::Trivial => vec![Z2Action::Trivial; children.len()],
                other => {
                    return (
                        sort_product(children.into_iter().map(canon).collect()),
                        other,
                    )
                }
            };
            let mut pairs: Vec<(ManifoldExpr, Z2Action)> = Vec::new();
            for (c, a) in children.into_iter().zip(parts) {
                let (c, a) = canon_aligned(c, a);
                match (c, a) {
                    (Product(grand), Z2Action::Product(grand_acts)) => {
                        pairs.extend(grand.into_iter().zip(grand_acts))
                    }
                    (Product(grand), Z2Action::Trivial) => {
                        pairs.extend(grand.into_iter().map(|g| (g, Z2Action::Trivial)))
                    }
                    (Point, _) => {}
                    other => pairs.push(other),
                }
            }
            pairs.sort_by(|(a, _), (b, _)| compare_names(a, b));
            if pairs.len() == 1 {
                pairs.into_iter().next().unwrap()
            } else if pairs.is_empty() {
                (Point, Z2Action::Trivial)
            } else {
                let (exprs, acts): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
                let act = if acts.iter().all(Z2Action::is_trivial) {
                    Z2Action::Trivial
                } else {
                    Z2Action::Product(acts)
                };
                (Product(exprs), act)
            }
        }
        (e, act) => (canon(e), act),
    }
}

/// The table rewrites for blow-downs. Each rule fires only when the center's
/// Euler characteristic matches the value forced by the named target, so a
/// rewrite can never change the Euler characteristic or the dimension.
fn rewrite_blow_down(bundle: ManifoldExpr, center: Center) -> ManifoldExpr {
    match &bundle {
        ProjBundleSu { cp_l, fiber, .. } => {
            let single = center.single_nontrivial();
            match (fiber.as_ref(), single) {
                // one pole on the catalog two-sphere: complex projective space
                (EvenSphere { l: 1 }, Some(FactorLocus::Poles { north, south }))
                    if north != south && center.chi == 1 =>
                {
                    ComplexProjective { l: cp_l + 1 }
                }
                // one pole saturated through an inner projective rewrite
                (ComplexProjective { l: m }, Some(FactorLocus::Poles { north, south }))
                    if north != south && center.chi == *m as i64 =>
                {
                    ComplexProjective { l: cp_l + m }
                }
                // both poles: a sphere
                (
                    EvenSphere { l: m },
                    Some(FactorLocus::Poles {
                        north: true,
                        south: true,
                    }),
                ) if center.chi == 2 => EvenSphere { l: cp_l + m },
                _ => BlowDown {
                    bundle: Box::new(bundle),
                    center,
                },
            }
        }
        Z2Quotient {
            sphere_l,
            inner,
            inner_action,
        } => {
            // reflection quotient blown down along the fixed equator: a sphere
            if matches!(inner.as_ref(), EvenSphere { l: 1 })
                && *inner_action == Z2Action::Reflection
                && center.single_nontrivial() == Some(FactorLocus::Equator)
                && center.chi == 0
            {
                EvenSphere { l: sphere_l + 1 }
            } else {
                BlowDown {
                    bundle: Box::new(bundle),
                    center,
                }
            }
        }
        _ => BlowDown {
            bundle: Box::new(bundle),
            center,
        },
    }
}

/// Renders an already-canonical expression.
fn render(expr: &ManifoldExpr) -> String {
    match expr {
        Point => "pt".to_string(),
        EvenSphere { l } => format!("S^{}", 2 * l),
        ComplexProjective { l } => format!("CP^{}", l),
        Product(children) => children
            .iter()
            .map(|c| match c {
                Z2Quotient { .. } | BlowDown { .. } | ConnSumFamily { .. } => render_atom(c),
                other => render(other),
            })
            .collect::<Vec<_>>()
            .join(" x "),
        ConnSumFamily {
            summand,
            count,
            basepoint,
        } => match count {
            FamilyCount::Fixed(0) => render(basepoint),
            FamilyCount::Fixed(k) => format!("#_{}({})", k, render(summand)),
            FamilyCount::Symbolic => format!("#_k({}), k >= 1", render(summand)),
        },
        Z2Quotient {
            sphere_l,
            inner,
            inner_action,
        } => {
            let tagged = render_tagged(inner, inner_action);
            let tagged = if matches!(inner.as_ref(), Product(_)) {
                format!("({})", tagged)
            } else {
                tagged
            };
            format!("S^{}_1 x_{{Z2}} {}", 2 * sphere_l, tagged)
        }
        ProjBundleSu { cp_l, fiber, .. } => {
            format!("{}-bundle over CP^{}", render_atom(fiber), cp_l)
        }
        RealProjBundle { rp_l, base } => {
            format!("RP^{}-bundle over {}", 2 * rp_l, render_atom(base))
        }
        BlowDown { bundle, center } => {
            format!("blow-down of {} along {}", render_atom(bundle), center)
        }
    }
}

fn render_atom(expr: &ManifoldExpr) -> String {
    let s = render(expr);
    if matches!(
        expr,
        Product(_) | Z2Quotient { .. } | BlowDown { .. } | ConnSumFamily { .. }
    ) {
        format!("({})", s)
    } else {
        s
    }
}

/// Renders the inner manifold of a quotient with the subscript convention:
/// `_1` for an antipodal sphere, `_2` for a reflected one.
fn render_tagged(expr: &ManifoldExpr, action: &Z2Action) -> String {
    match (expr, action) {
        (EvenSphere { l }, Z2Action::Antipodal) => format!("S^{}_1", 2 * l),
        (EvenSphere { l }, Z2Action::Reflection) => format!("S^{}_2", 2 * l),
        (Product(children), Z2Action::Product(parts)) if children.len() == parts.len() => children
            .iter()
            .zip(parts)
            .map(|(c, a)| render_tagged(c, a))
            .collect::<Vec<_>>()
            .join(" x "),
        (Product(children), Z2Action::Trivial) => {
            children.iter().map(render).collect::<Vec<_>>().join(" x ")
        }
        (e, a) if a.is_trivial() => render(e),
        (e, _) => format!("({})~Z2", render(e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> ManifoldExpr {
        ManifoldExpr::sphere(1).unwrap()
    }

    fn pole(north: bool, south: bool) -> FactorLocus {
        FactorLocus::Poles { north, south }
    }

    #[test]
    fn dims() {
        assert_eq!(Point.dim().unwrap(), 0);
        let p = ManifoldExpr::product(vec![
            ManifoldExpr::cp(2).unwrap(),
            ManifoldExpr::sphere(2).unwrap(),
        ]);
        assert_eq!(p.dim().unwrap(), 8);
        let q = ManifoldExpr::z2_quotient(1, s2(), Z2Action::Antipodal).unwrap();
        assert_eq!(q.dim().unwrap(), 4);
    }

    #[test]
    fn euler_basics() {
        assert_eq!(Point.euler().unwrap(), EulerChar::constant(1));
        assert_eq!(s2().euler().unwrap(), EulerChar::constant(2));
        assert_eq!(
            ManifoldExpr::cp(2).unwrap().euler().unwrap(),
            EulerChar::constant(3)
        );
        let p = ManifoldExpr::product(vec![
            ManifoldExpr::cp(1).unwrap(),
            ManifoldExpr::cp(2).unwrap(),
        ]);
        assert_eq!(p.euler().unwrap(), EulerChar::constant(6));
    }

    #[test]
    fn euler_of_families() {
        let summand = ManifoldExpr::product(vec![s2(), ManifoldExpr::sphere(2).unwrap()]);
        let family = ManifoldExpr::conn_sum_family(
            summand.clone(),
            FamilyCount::Symbolic,
            ManifoldExpr::sphere(3).unwrap(),
        )
        .unwrap();
        let chi = family.euler().unwrap();
        assert_eq!((chi.constant, chi.k_coeff), (2, 2));
        assert_eq!(chi.to_string(), "2k+2");
        for k in 0..=10 {
            let fixed = ManifoldExpr::conn_sum_family(
                summand.clone(),
                FamilyCount::Fixed(k),
                ManifoldExpr::sphere(3).unwrap(),
            )
            .unwrap();
            assert_eq!(
                fixed.euler().unwrap().as_constant().unwrap(),
                2 * k as i64 + 2
            );
        }
        // mismatched dimensions rejected
        assert!(ManifoldExpr::conn_sum_family(s2(), FamilyCount::Symbolic, Point).is_err());
    }

    #[test]
    fn quotient_orientability() {
        assert!(ManifoldExpr::z2_quotient(1, s2(), Z2Action::Antipodal).is_ok());
        assert!(ManifoldExpr::z2_quotient(1, s2(), Z2Action::Reflection).is_ok());
        assert!(matches!(
            ManifoldExpr::z2_quotient(1, s2(), Z2Action::Trivial),
            Err(ManifoldError::NonOrientableQuotient)
        ));
        // product action with net orientation +1 rejected
        let inner = ManifoldExpr::product(vec![s2(), s2()]);
        let act = Z2Action::Product(vec![Z2Action::Antipodal, Z2Action::Antipodal]);
        assert!(matches!(
            ManifoldExpr::z2_quotient(1, inner, act),
            Err(ManifoldError::NonOrientableQuotient)
        ));
    }

    #[test]
    fn quotient_euler_is_inner_euler() {
        let q = ManifoldExpr::z2_quotient(1, s2(), Z2Action::Antipodal).unwrap();
        assert_eq!(q.euler().unwrap().as_constant().unwrap(), 2);
        let inner = ManifoldExpr::product(vec![s2(), ManifoldExpr::sphere(2).unwrap()]);
        let act = Z2Action::Product(vec![Z2Action::Antipodal, Z2Action::Trivial]);
        let q = ManifoldExpr::z2_quotient(2, inner, act).unwrap();
        assert_eq!(q.euler().unwrap().as_constant().unwrap(), 4);
    }

    #[test]
    fn simply_connected_flags() {
        assert_eq!(
            ManifoldExpr::sphere(2).unwrap().simply_connected(),
            Tri::Yes
        );
        let q = ManifoldExpr::z2_quotient(1, s2(), Z2Action::Antipodal).unwrap();
        assert_eq!(q.simply_connected(), Tri::No);
        let b = ManifoldExpr::proj_bundle_su(1, s2(), vec![1]).unwrap();
        assert_eq!(b.simply_connected(), Tri::Yes);
    }

    fn one_pole_center() -> Center {
        Center {
            core: vec![pole(true, false)],
            chi: 1,
            codim: 2,
        }
    }

    fn both_poles_center(chi: i64) -> Center {
        Center {
            core: vec![pole(true, true)],
            chi,
            codim: 2,
        }
    }

    #[test]
    fn blow_down_one_pole_is_projective_space() {
        for l in 1..=4usize {
            let bundle = ManifoldExpr::proj_bundle_su(l, s2(), vec![1]).unwrap();
            let bd = ManifoldExpr::blow_down(bundle, one_pole_center()).unwrap();
            assert_eq!(bd.canonical_name(), format!("CP^{}", l + 1));
            assert_eq!(
                bd.euler().unwrap().as_constant().unwrap(),
                l as i64 + 2,
                "chi CP^{}",
                l + 1
            );
            assert_eq!(bd.dim().unwrap(), 2 * (l + 1));
        }
    }

    #[test]
    fn blow_down_both_poles_is_sphere() {
        // the derived example: CP^2-bundle over S^2 blown down along both
        // poles realizes S^6 with chi = 2
        let bundle = ManifoldExpr::proj_bundle_su(2, s2(), vec![1]).unwrap();
        let bd = ManifoldExpr::blow_down(bundle, both_poles_center(2)).unwrap();
        assert_eq!(bd.euler().unwrap().as_constant().unwrap(), 2);
        assert_eq!(bd.canonical_name(), "S^6");
        assert_eq!(bd.dim().unwrap(), 6);
    }

    #[test]
    fn blow_down_reflection_quotient_is_sphere() {
        for l in 1..=4usize {
            let q = ManifoldExpr::z2_quotient(l, s2(), Z2Action::Reflection).unwrap();
            let center = Center {
                core: vec![FactorLocus::Equator],
                chi: 0,
                codim: 1,
            };
            let bd = ManifoldExpr::blow_down(q, center).unwrap();
            assert_eq!(bd.canonical_name(), format!("S^{}", 2 * l + 2));
            assert_eq!(bd.euler().unwrap().as_constant().unwrap(), 2);
        }
    }

    #[test]
    fn nested_two_bundle_rewrite() {
        // inner: one-pole blow-down realizing CP^{l2+1}; outer center is the
        // other pole fibered over CP^{l2}, so its chi is l2 + 1
        for l1 in 1..=3usize {
            for l2 in 1..=3usize {
                let inner_bundle = ManifoldExpr::proj_bundle_su(l2, s2(), vec![1]).unwrap();
                let inner = ManifoldExpr::blow_down(inner_bundle, one_pole_center()).unwrap();
                let outer_bundle = ManifoldExpr::proj_bundle_su(l1, inner, vec![1]).unwrap();
                let center = Center {
                    core: vec![pole(false, true)],
                    chi: (l2 + 1) as i64,
                    codim: 2,
                };
                let bd = ManifoldExpr::blow_down(outer_bundle, center).unwrap();
                assert_eq!(bd.canonical_name(), format!("CP^{}", l1 + l2 + 1));
                assert_eq!(
                    bd.euler().unwrap().as_constant().unwrap(),
                    (l1 + l2 + 2) as i64
                );
            }
        }
    }

    #[test]
    fn rewrites_preserve_euler_and_dim() {
        // every rewrite-rule instance with parameters <= 4
        let mut cases: Vec<ManifoldExpr> = Vec::new();
        for l in 1..=4usize {
            let bundle = ManifoldExpr::proj_bundle_su(l, s2(), vec![1]).unwrap();
            cases.push(ManifoldExpr::blow_down(bundle.clone(), one_pole_center()).unwrap());
            cases.push(ManifoldExpr::blow_down(bundle, both_poles_center(2)).unwrap());
            let q = ManifoldExpr::z2_quotient(l, s2(), Z2Action::Reflection).unwrap();
            cases.push(
                ManifoldExpr::blow_down(
                    q,
                    Center {
                        core: vec![FactorLocus::Equator],
                        chi: 0,
                        codim: 1,
                    },
                )
                .unwrap(),
            );
            for m in 1..=4usize {
                let ib = ManifoldExpr::proj_bundle_su(m, s2(), vec![1]).unwrap();
                let inner = ManifoldExpr::blow_down(ib, one_pole_center()).unwrap();
                let ob = ManifoldExpr::proj_bundle_su(l, inner, vec![1]).unwrap();
                cases.push(
                    ManifoldExpr::blow_down(
                        ob,
                        Center {
                            core: vec![pole(false, true)],
                            chi: (m + 1) as i64,
                            codim: 2,
                        },
                    )
                    .unwrap(),
                );
                // both-poles over an already-rewritten sphere
                let iq = ManifoldExpr::z2_quotient(m, s2(), Z2Action::Reflection).unwrap();
                let isphere = ManifoldExpr::blow_down(
                    iq,
                    Center {
                        core: vec![FactorLocus::Equator],
                        chi: 0,
                        codim: 1,
                    },
                )
                .unwrap();
                let ob = ManifoldExpr::proj_bundle_su(l, isphere, vec![1]).unwrap();
                cases.push(ManifoldExpr::blow_down(ob, both_poles_center(2)).unwrap());
            }
        }
        for e in cases {
            let canon = e.canonical_form();
            assert_ne!(canon, e, "rewrite expected to fire for {:?}", e);
            assert_eq!(e.euler().unwrap(), canon.euler().unwrap(), "{:?}", e);
            assert_eq!(e.dim().unwrap(), canon.dim().unwrap(), "{:?}", e);
        }
    }

    #[test]
    fn names() {
        assert_eq!(
            ManifoldExpr::product(vec![
                ManifoldExpr::cp(1).unwrap(),
                ManifoldExpr::cp(1).unwrap()
            ])
            .canonical_name(),
            "CP^1 x CP^1"
        );
        assert_eq!(
            ManifoldExpr::product(vec![s2(), ManifoldExpr::cp(1).unwrap()]).canonical_name(),
            "CP^1 x S^2"
        );
        let b = ManifoldExpr::proj_bundle_su(1, s2(), vec![0]).unwrap();
        assert_eq!(b.canonical_name(), "S^2-bundle over CP^1");
        let q = ManifoldExpr::z2_quotient(1, s2(), Z2Action::Antipodal).unwrap();
        assert_eq!(q.canonical_name(), "S^2_1 x_{Z2} S^2_1");
        let q = ManifoldExpr::z2_quotient(1, s2(), Z2Action::Reflection).unwrap();
        assert_eq!(q.canonical_name(), "S^2_1 x_{Z2} S^2_2");
    }

    #[test]
    fn product_normalization_sorts_and_flattens() {
        let e = ManifoldExpr::Product(vec![
            ManifoldExpr::sphere(2).unwrap(),
            ManifoldExpr::Product(vec![ManifoldExpr::cp(1).unwrap(), Point]),
        ]);
        assert_eq!(e.canonical_name(), "CP^1 x S^4");
        let lone = ManifoldExpr::Product(vec![Point, Point]);
        assert_eq!(lone.canonical_name(), "pt");
    }
}
