//! Group factors, normalization conventions, and the static fact tables
//! about classical compact groups that the classification relies on.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("Sp({0}) cannot occur as an elementary factor of a torus manifold action")]
    SpExcluded(usize),
    #[error("{0} is abelian; torus rank belongs in the T^k suffix")]
    TorusFactor(String),
    #[error("{0} is out of range for this factor kind")]
    RankOutOfRange(String),
    #[error("no fact table row for {0}")]
    NoTableRow(String),
    #[error("Spin(4) is handled by its own case analysis; no single maximal-rank row")]
    Spin4Excluded,
    #[error("convention flag #{flag} is not a possible value for {factor}")]
    BadConventionFlag { factor: String, flag: usize },
    #[error("spec must be normalized first (found {0})")]
    NotNormalized(String),
}

/// One non-abelian factor of a covering group. `Spin` and `Sp` are input
/// aliases: normalization replaces `Spin(n)` by the group the action factors
/// through and rejects `Sp(l)` outright.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupFactor {
    Su(usize),
    So(usize),
    Spin(usize),
    Sp(usize),
}

impl GroupFactor {
    pub fn rank(&self) -> usize {
        match *self {
            GroupFactor::Su(n) => n - 1,
            GroupFactor::So(n) | GroupFactor::Spin(n) => n / 2,
            GroupFactor::Sp(l) => l,
        }
    }

    pub fn is_su(&self) -> bool {
        matches!(self, GroupFactor::Su(_))
    }

    pub fn is_so_odd(&self) -> bool {
        matches!(self, GroupFactor::So(n) if n % 2 == 1)
    }

    pub fn is_so_even(&self) -> bool {
        matches!(self, GroupFactor::So(n) if n % 2 == 0)
    }

    fn check_bounds(&self) -> Result<(), SpecError> {
        let ok = match *self {
            GroupFactor::Su(n) => n >= 2,
            GroupFactor::So(n) | GroupFactor::Spin(n) => n >= 3,
            GroupFactor::Sp(l) => l >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(SpecError::RankOutOfRange(self.to_string()))
        }
    }
}

impl fmt::Display for GroupFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupFactor::Su(n) => write!(f, "SU({})", n),
            GroupFactor::So(n) => write!(f, "SO({})", n),
            GroupFactor::Spin(n) => write!(f, "Spin({})", n),
            GroupFactor::Sp(l) => write!(f, "Sp({})", l),
        }
    }
}

/// Per-factor resolution of the rows of the characteristic-count table that
/// allow two values (`SU(2)`: 1 or 2, `SU(4)`/`Spin(6)`: 3 or 4, `SO(3)`:
/// 1 or 2 with principal-orbit convention).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConventionFlag {
    #[default]
    Default,
    FCount(usize),
}

/// A product of classical factors and a torus, before or after
/// normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub factors: Vec<GroupFactor>,
    pub flags: Vec<ConventionFlag>,
    pub l0: usize,
}

impl GroupSpec {
    pub fn new(factors: Vec<GroupFactor>, l0: usize) -> Self {
        let flags = vec![ConventionFlag::Default; factors.len()];
        GroupSpec { factors, flags, l0 }
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank()).sum::<usize>() + self.l0
    }

    pub fn is_normalized(&self) -> bool {
        self.factors
            .iter()
            .all(|f| matches!(f, GroupFactor::Su(_) | GroupFactor::So(_)))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        if self.l0 > 0 {
            parts.push(format!("T^{}", self.l0));
        }
        if parts.is_empty() {
            parts.push("T^0".to_string());
        }
        write!(f, "{}", parts.join("x"))
    }
}

/// Integer weight vectors describing the homomorphisms from the
/// `S(U(l_i) x U(1))` subgroups into the torus `T^{l0}`, one per SU factor,
/// through the character picking out the last diagonal entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PsiHom {
    pub weights: Vec<Vec<i64>>,
}

impl PsiHom {
    pub fn trivial(k0: usize, l0: usize) -> Self {
        PsiHom {
            weights: vec![vec![0; l0]; k0],
        }
    }

    pub fn is_trivial(&self, i: usize) -> bool {
        self.weights[i].iter().all(|&w| w == 0)
    }

    pub fn kernel_is_su(&self, i: usize) -> bool {
        psi_kernel_is_su(&self.weights[i])
    }
}

/// The kernel of the weight-vector homomorphism is exactly `SU(l)` when the
/// vector is primitive. The zero vector (and the empty vector, when there is
/// no torus) gives the full parabolic kernel instead.
pub fn psi_kernel_is_su(w: &[i64]) -> bool {
    gcd_all(w) == 1
}

fn gcd_all(w: &[i64]) -> u64 {
    w.iter().fold(0u64, |acc, &x| gcd(acc, x.unsigned_abs()))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Possible numbers of characteristic submanifolds an elementary factor can
/// act on, by isomorphism type.
pub fn possible_f_sizes(factor: &GroupFactor) -> Result<BTreeSet<usize>, SpecError> {
    factor.check_bounds()?;
    let set: &[usize] = match normalize_alias(factor) {
        AliasRow::Su2 => &[1, 2],
        AliasRow::Spin4 => &[2],
        AliasRow::Spin5 => &[2],
        AliasRow::Su4 => &[3, 4],
        AliasRow::SuBig(n) => return Ok([n].into_iter().collect()),
        AliasRow::SpinOddBig(l) => return Ok([l].into_iter().collect()),
        AliasRow::SpinEvenBig(l) => return Ok([l].into_iter().collect()),
        AliasRow::SpBig(l) => return Ok([l].into_iter().collect()),
    };
    Ok(set.iter().cloned().collect())
}

/// Lower bounds for the dimensions of nontrivial real and complex
/// irreducible representations, as `(d_R, d_C)`.
pub fn min_rep_dims(factor: &GroupFactor) -> Result<(usize, usize), SpecError> {
    factor.check_bounds()?;
    Ok(match normalize_alias(factor) {
        AliasRow::Su2 => (3, 2),
        AliasRow::Spin4 => (3, 2),
        AliasRow::Spin5 => (5, 4),
        AliasRow::Su4 => (6, 4),
        AliasRow::SuBig(n) => (2 * n, n),
        AliasRow::SpinOddBig(l) => (2 * l + 1, 2 * l + 1),
        AliasRow::SpinEvenBig(l) => (2 * l, 2 * l),
        AliasRow::SpBig(l) => (2 * l + 1, 2 * l),
    })
}

/// Connected maximal-rank subgroup of maximal dimension, with its
/// codimension. `Spin(4)` has no single row and is rejected.
pub fn max_rank_subgroup(factor: &GroupFactor) -> Result<(String, usize), SpecError> {
    factor.check_bounds()?;
    Ok(match normalize_alias(factor) {
        AliasRow::Su2 => ("S(U(1)xU(1))".to_string(), 2),
        AliasRow::Spin4 => return Err(SpecError::Spin4Excluded),
        AliasRow::Spin5 => ("Spin(4)".to_string(), 4),
        AliasRow::Su4 => ("S(U(3)xU(1))".to_string(), 6),
        AliasRow::SuBig(n) => (format!("S(U({})xU(1))", n - 1), 2 * (n - 1)),
        AliasRow::SpinOddBig(l) => (format!("Spin({})", 2 * l), 2 * l),
        AliasRow::SpinEvenBig(l) => (format!("Spin({})xSpin(2)", 2 * l - 2), 4 * l - 4),
        AliasRow::SpBig(l) => (format!("Sp({})xSp(1)", l - 1), 4 * l - 4),
    })
}

/// Rows of the three fact tables, keyed by the local isomorphism class.
enum AliasRow {
    Su2,
    Spin4,
    Spin5,
    Su4,
    SuBig(usize),       // SU(n), n != 2, 4
    SpinOddBig(usize),  // Spin(2l+1), l > 2
    SpinEvenBig(usize), // Spin(2l), l > 3
    SpBig(usize),       // Sp(l), l > 2
}

fn normalize_alias(factor: &GroupFactor) -> AliasRow {
    match *factor {
        GroupFactor::Su(2) | GroupFactor::Spin(3) | GroupFactor::So(3) | GroupFactor::Sp(1) => {
            AliasRow::Su2
        }
        GroupFactor::Spin(4) | GroupFactor::So(4) => AliasRow::Spin4,
        GroupFactor::Spin(5) | GroupFactor::So(5) | GroupFactor::Sp(2) => AliasRow::Spin5,
        GroupFactor::Su(4) | GroupFactor::Spin(6) | GroupFactor::So(6) => AliasRow::Su4,
        GroupFactor::Su(n) => AliasRow::SuBig(n),
        GroupFactor::Spin(n) | GroupFactor::So(n) if n % 2 == 1 => AliasRow::SpinOddBig(n / 2),
        GroupFactor::Spin(n) | GroupFactor::So(n) => AliasRow::SpinEvenBig(n / 2),
        GroupFactor::Sp(l) => AliasRow::SpBig(l),
    }
}

/// Options for [`normalize_spec`].
#[derive(Debug, Clone, Copy, Default)]
pub struct NormalizeOptions {
    /// Replace every `SO(2l)` factor by `SU(l)` and bump the torus rank;
    /// the restricted action has the same orbits.
    pub reduce_so_even: bool,
}

/// Resolves Spin aliases and convention flags, rejects Sp factors, and
/// optionally trades each `SO(2l)` factor for `SU(l) x S^1`.
pub fn normalize_spec(spec: &GroupSpec, opts: NormalizeOptions) -> Result<GroupSpec, SpecError> {
    let mut factors = Vec::new();
    let mut flags = Vec::new();
    let mut l0 = spec.l0;
    for (idx, factor) in spec.factors.iter().enumerate() {
        factor.check_bounds()?;
        let flag = spec.flags.get(idx).cloned().unwrap_or_default();
        if let ConventionFlag::FCount(c) = flag {
            let allowed = possible_f_sizes(factor)?;
            if !allowed.contains(&c) {
                return Err(SpecError::BadConventionFlag {
                    factor: factor.to_string(),
                    flag: c,
                });
            }
        }
        let resolved = resolve_factor(factor, flag)?;
        if opts.reduce_so_even && resolved.is_so_even() {
            let l = match resolved {
                GroupFactor::So(n) => n / 2,
                _ => unreachable!(),
            };
            factors.push(GroupFactor::Su(l));
            flags.push(ConventionFlag::Default);
            l0 += 1;
        } else {
            factors.push(resolved);
            flags.push(flag);
        }
    }
    Ok(GroupSpec { factors, flags, l0 })
}

/// Where the action of a factor really lives. A rank-one factor with a
/// single characteristic submanifold (or the principal-orbit convention)
/// acts through `SO(3)`; `SU(4)` with three characteristic submanifolds acts
/// through `SO(6)`; every other Spin factor acts through the corresponding
/// special orthogonal group.
fn resolve_factor(factor: &GroupFactor, flag: ConventionFlag) -> Result<GroupFactor, SpecError> {
    Ok(match (*factor, flag) {
        (GroupFactor::Sp(l), _) => return Err(SpecError::SpExcluded(l)),
        (GroupFactor::Su(2), ConventionFlag::FCount(1)) => GroupFactor::So(3),
        (GroupFactor::Su(2), _) => GroupFactor::Su(2),
        (GroupFactor::Su(4), ConventionFlag::FCount(3)) => GroupFactor::So(6),
        (GroupFactor::Su(4), _) => GroupFactor::Su(4),
        (GroupFactor::Su(n), _) => GroupFactor::Su(n),
        (GroupFactor::Spin(3), ConventionFlag::FCount(2)) => GroupFactor::Su(2),
        (GroupFactor::Spin(3), _) => GroupFactor::So(3),
        (GroupFactor::Spin(6), ConventionFlag::FCount(4)) => GroupFactor::Su(4),
        (GroupFactor::Spin(6), _) => GroupFactor::So(6),
        (GroupFactor::Spin(n), _) => GroupFactor::So(n),
        (GroupFactor::So(n), _) => GroupFactor::So(n),
    })
}

/// Dimension of the orbit space of the full group action: the torus rank
/// plus one for every `SO(2l)` factor.
pub fn orbit_space_dim(spec: &GroupSpec) -> Result<usize, SpecError> {
    if !spec.is_normalized() {
        return Err(SpecError::NotNormalized(spec.to_string()));
    }
    Ok(spec.l0 + spec.factors.iter().filter(|f| f.is_so_even()).count())
}

/// Parses the grammar `FACTOR ("x" FACTOR)* ("x" "T^" INT)?` with
/// `FACTOR` one of `SU(n)`, `SO(n)`, `Spin(n)`, `Sp(n)`, each optionally
/// suffixed `#c` to pick a characteristic count where two are possible.
/// A bare `T^k` (torus only) is also accepted.
pub fn parse_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let mut factors = Vec::new();
    let mut flags = Vec::new();
    let mut l0: Option<usize> = None;
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let err = |pos: usize, msg: &str| SpecError::Parse {
        pos,
        msg: msg.to_string(),
    };
    if text.is_empty() {
        return Err(err(0, "empty group spec"));
    }
    loop {
        if l0.is_some() {
            return Err(err(pos, "torus suffix must come last"));
        }
        if bytes.get(pos) == Some(&b'T') {
            if bytes.get(pos + 1) != Some(&b'^') {
                return Err(err(pos + 1, "expected '^' after 'T'"));
            }
            let (n, next) =
                parse_int(bytes, pos + 2).ok_or_else(|| err(pos + 2, "expected torus rank"))?;
            l0 = Some(n);
            pos = next;
        } else {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
                pos += 1;
            }
            let name = &text[start..pos];
            if bytes.get(pos) != Some(&b'(') {
                return Err(err(pos, "expected '(' after factor name"));
            }
            let (n, next) =
                parse_int(bytes, pos + 1).ok_or_else(|| err(pos + 1, "expected integer"))?;
            pos = next;
            if bytes.get(pos) != Some(&b')') {
                return Err(err(pos, "expected ')'"));
            }
            pos += 1;
            let factor = match name {
                "SU" => GroupFactor::Su(n),
                "SO" => GroupFactor::So(n),
                "Spin" => GroupFactor::Spin(n),
                "Sp" => GroupFactor::Sp(n),
                other => {
                    return Err(err(
                        start,
                        &format!(
                            "unsupported factor '{}'; expected SU, SO, Spin or Sp",
                            other
                        ),
                    ))
                }
            };
            factor
                .check_bounds()
                .map_err(|_| err(start, &format!("{} is out of range", factor)))?;
            let mut flag = ConventionFlag::Default;
            if bytes.get(pos) == Some(&b'#') {
                let (c, next) = parse_int(bytes, pos + 1)
                    .ok_or_else(|| err(pos + 1, "expected count after '#'"))?;
                flag = ConventionFlag::FCount(c);
                pos = next;
            }
            factors.push(factor);
            flags.push(flag);
        }
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'x' {
            return Err(err(pos, "expected 'x' between factors"));
        }
        pos += 1;
    }
    Ok(GroupSpec {
        factors,
        flags,
        l0: l0.unwrap_or(0),
    })
}

fn parse_int(bytes: &[u8], mut pos: usize) -> Option<(usize, usize)> {
    let start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == start {
        return None;
    }
    std::str::from_utf8(&bytes[start..pos])
        .ok()?
        .parse()
        .ok()
        .map(|n| (n, pos))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_size_table() {
        let rows: Vec<(GroupFactor, Vec<usize>)> = vec![
            (GroupFactor::Su(2), vec![1, 2]),
            (GroupFactor::Spin(3), vec![1, 2]),
            (GroupFactor::Sp(1), vec![1, 2]),
            (GroupFactor::Spin(4), vec![2]),
            (GroupFactor::Spin(5), vec![2]),
            (GroupFactor::Sp(2), vec![2]),
            (GroupFactor::Su(4), vec![3, 4]),
            (GroupFactor::Spin(6), vec![3, 4]),
            (GroupFactor::Su(3), vec![3]),
            (GroupFactor::Su(5), vec![5]),
            (GroupFactor::Spin(7), vec![3]),
            (GroupFactor::Spin(9), vec![4]),
            (GroupFactor::Spin(8), vec![4]),
            (GroupFactor::Spin(10), vec![5]),
            (GroupFactor::Sp(3), vec![3]),
        ];
        for (factor, expected) in rows {
            assert_eq!(
                possible_f_sizes(&factor).unwrap(),
                expected.into_iter().collect(),
                "{}",
                factor
            );
        }
    }

    #[test]
    fn rep_dim_table() {
        let rows: Vec<(GroupFactor, (usize, usize))> = vec![
            (GroupFactor::Su(2), (3, 2)),
            (GroupFactor::Spin(4), (3, 2)),
            (GroupFactor::Spin(5), (5, 4)),
            (GroupFactor::Su(4), (6, 4)),
            (GroupFactor::Su(3), (6, 3)),
            (GroupFactor::Su(5), (10, 5)),
            (GroupFactor::Spin(7), (7, 7)),
            (GroupFactor::Spin(8), (8, 8)),
            (GroupFactor::Sp(3), (7, 6)),
        ];
        for (factor, expected) in rows {
            assert_eq!(min_rep_dims(&factor).unwrap(), expected, "{}", factor);
        }
        // d_C <= d_R on every row
        for factor in [
            GroupFactor::Su(2),
            GroupFactor::Su(3),
            GroupFactor::Su(4),
            GroupFactor::Su(6),
            GroupFactor::Spin(4),
            GroupFactor::Spin(5),
            GroupFactor::Spin(7),
            GroupFactor::Spin(8),
            GroupFactor::Spin(11),
            GroupFactor::Sp(3),
            GroupFactor::Sp(4),
        ] {
            let (dr, dc) = min_rep_dims(&factor).unwrap();
            assert!(dc <= dr, "{}", factor);
        }
    }

    #[test]
    fn max_rank_subgroup_table() {
        assert_eq!(
            max_rank_subgroup(&GroupFactor::Su(3)).unwrap(),
            ("S(U(2)xU(1))".to_string(), 4)
        );
        assert_eq!(
            max_rank_subgroup(&GroupFactor::Spin(7)).unwrap(),
            ("Spin(6)".to_string(), 6)
        );
        assert_eq!(
            max_rank_subgroup(&GroupFactor::Sp(3)).unwrap(),
            ("Sp(2)xSp(1)".to_string(), 8)
        );
        assert_eq!(
            max_rank_subgroup(&GroupFactor::Su(2)).unwrap(),
            ("S(U(1)xU(1))".to_string(), 2)
        );
        assert_eq!(
            max_rank_subgroup(&GroupFactor::Spin(5)).unwrap(),
            ("Spin(4)".to_string(), 4)
        );
        assert_eq!(
            max_rank_subgroup(&GroupFactor::Su(4)).unwrap(),
            ("S(U(3)xU(1))".to_string(), 6)
        );
        assert_eq!(
            max_rank_subgroup(&GroupFactor::Spin(10)).unwrap(),
            ("Spin(8)xSpin(2)".to_string(), 16)
        );
        assert!(matches!(
            max_rank_subgroup(&GroupFactor::Spin(4)),
            Err(SpecError::Spin4Excluded)
        ));
    }

    #[test]
    fn normalization() {
        let spec = GroupSpec::new(vec![GroupFactor::Spin(5)], 0);
        let norm = normalize_spec(&spec, NormalizeOptions::default()).unwrap();
        assert_eq!(norm.factors, vec![GroupFactor::So(5)]);

        let spec = GroupSpec::new(vec![GroupFactor::So(4)], 0);
        let norm = normalize_spec(
            &spec,
            NormalizeOptions {
                reduce_so_even: true,
            },
        )
        .unwrap();
        assert_eq!(norm.factors, vec![GroupFactor::Su(2)]);
        assert_eq!(norm.l0, 1);

        let spec = GroupSpec::new(vec![], 2);
        let norm = normalize_spec(&spec, NormalizeOptions::default()).unwrap();
        assert_eq!(norm, spec);

        let spec = GroupSpec::new(vec![GroupFactor::Sp(2)], 0);
        assert!(matches!(
            normalize_spec(&spec, NormalizeOptions::default()),
            Err(SpecError::SpExcluded(2))
        ));
    }

    #[test]
    fn normalization_is_idempotent() {
        for spec in [
            GroupSpec::new(vec![GroupFactor::Spin(5), GroupFactor::Su(4)], 1),
            GroupSpec::new(vec![GroupFactor::So(4), GroupFactor::So(7)], 0),
            GroupSpec::new(vec![GroupFactor::Spin(3)], 2),
        ] {
            for opts in [
                NormalizeOptions::default(),
                NormalizeOptions {
                    reduce_so_even: true,
                },
            ] {
                let once = normalize_spec(&spec, opts).unwrap();
                let twice = normalize_spec(&once, opts).unwrap();
                assert_eq!(once, twice);
            }
        }
    }

    #[test]
    fn convention_flags() {
        let mut spec = GroupSpec::new(vec![GroupFactor::Su(4)], 0);
        spec.flags[0] = ConventionFlag::FCount(3);
        let norm = normalize_spec(&spec, NormalizeOptions::default()).unwrap();
        assert_eq!(norm.factors, vec![GroupFactor::So(6)]);

        let mut spec = GroupSpec::new(vec![GroupFactor::Su(2)], 0);
        spec.flags[0] = ConventionFlag::FCount(1);
        let norm = normalize_spec(&spec, NormalizeOptions::default()).unwrap();
        assert_eq!(norm.factors, vec![GroupFactor::So(3)]);

        let mut spec = GroupSpec::new(vec![GroupFactor::Su(3)], 0);
        spec.flags[0] = ConventionFlag::FCount(7);
        assert!(matches!(
            normalize_spec(&spec, NormalizeOptions::default()),
            Err(SpecError::BadConventionFlag { .. })
        ));
    }

    #[test]
    fn orbit_space_dimension() {
        let spec = GroupSpec::new(vec![GroupFactor::Su(3)], 0);
        assert_eq!(orbit_space_dim(&spec).unwrap(), 0);

        let spec = GroupSpec::new(vec![GroupFactor::So(4), GroupFactor::So(6)], 1);
        assert_eq!(orbit_space_dim(&spec).unwrap(), 3);

        let spec = GroupSpec::new(vec![GroupFactor::So(5)], 2);
        assert_eq!(orbit_space_dim(&spec).unwrap(), 2);
    }

    #[test]
    fn orbit_space_dim_invariant_under_even_reduction() {
        for spec in [
            GroupSpec::new(vec![GroupFactor::So(4), GroupFactor::So(6)], 1),
            GroupSpec::new(vec![GroupFactor::So(8)], 0),
            GroupSpec::new(vec![GroupFactor::Su(3), GroupFactor::So(4)], 2),
        ] {
            let plain = normalize_spec(&spec, NormalizeOptions::default()).unwrap();
            let reduced = normalize_spec(
                &spec,
                NormalizeOptions {
                    reduce_so_even: true,
                },
            )
            .unwrap();
            assert_eq!(orbit_space_dim(&plain).unwrap(), reduced.l0);
        }
    }

    #[test]
    fn psi_kernel() {
        assert!(psi_kernel_is_su(&[1]));
        assert!(psi_kernel_is_su(&[2, 3]));
        assert!(psi_kernel_is_su(&[-1]));
        assert!(!psi_kernel_is_su(&[2, 4]));
        assert!(!psi_kernel_is_su(&[0, 0]));
        assert!(!psi_kernel_is_su(&[]));
        // gcd oracle on random-ish vectors
        for w in [[6, 10, 15], [2, 2, 2], [3, 5, 7]] {
            let mut g = 0u64;
            for x in w {
                let mut a: u64 = x;
                let mut b = g;
                while b != 0 {
                    let t = a % b;
                    a = b;
                    b = t;
                }
                g = a;
            }
            let expect = g == 1;
            let v: Vec<i64> = w.iter().map(|&x| x as i64).collect();
            assert_eq!(psi_kernel_is_su(&v), expect);
        }
    }

    #[test]
    fn spec_parsing() {
        let spec = parse_spec("SU(3)").unwrap();
        assert_eq!(spec.factors, vec![GroupFactor::Su(3)]);
        assert_eq!(spec.l0, 0);

        let spec = parse_spec("SO(3)xT^1").unwrap();
        assert_eq!(spec.factors, vec![GroupFactor::So(3)]);
        assert_eq!(spec.l0, 1);

        let spec = parse_spec("SU(2)xSO(5)xT^2").unwrap();
        assert_eq!(spec.factors, vec![GroupFactor::Su(2), GroupFactor::So(5)]);
        assert_eq!(spec.l0, 2);

        let spec = parse_spec("T^1").unwrap();
        assert!(spec.factors.is_empty());
        assert_eq!(spec.l0, 1);

        let spec = parse_spec("SU(4)#3").unwrap();
        assert_eq!(spec.flags, vec![ConventionFlag::FCount(3)]);

        let spec = parse_spec("Sp(3)").unwrap();
        assert!(matches!(
            normalize_spec(&spec, NormalizeOptions::default()),
            Err(SpecError::SpExcluded(3))
        ));

        assert!(matches!(parse_spec("G2"), Err(SpecError::Parse { .. })));
        assert!(matches!(
            parse_spec("SU(3)y"),
            Err(SpecError::Parse { pos: 5, .. })
        ));
        assert!(matches!(
            parse_spec("T^1xSU(2)"),
            Err(SpecError::Parse { .. })
        ));
        assert!(matches!(parse_spec("SO(2)"), Err(SpecError::Parse { .. })));
    }

    #[test]
    fn display_round_trip() {
        for text in ["SU(3)", "SO(3)xT^1", "SU(2)xSO(5)xT^2", "T^2"] {
            let spec = parse_spec(text).unwrap();
            assert_eq!(spec.to_string(), text);
        }
    }
}
