//! Enumeration driver: given a group spec, enumerate the equivalence
//! classes of admissible 5-tuples over the base catalog and emit the
//! classification table.

use std::fmt;

use crate::fivetuples::{AdmissibleFiveTuple, CoreLocus, TupleBase, TupleError, TupleSpec, Z2Tag};
use crate::liegroups::{
    normalize_spec, orbit_space_dim, GroupFactor, GroupSpec, NormalizeOptions, PsiHom, SpecError,
};
use crate::manifolds::{FamilyCount, ManifoldError, ManifoldExpr, Tri};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("base catalog supports torus rank at most {max}, spec needs {got}")]
    CatalogRange { max: usize, got: usize },
    #[error("spec has SO(2l) factors; only the single-factor base case and the connected-sum family shapes are classified (use the family answer)")]
    SoEvenUnsupported,
    #[error("family answers exist for SO(2l) x T^1 and SO(2l) x SO(2l') shapes only")]
    FamilyShape,
    #[error("family answers classify simply connected manifolds only")]
    FamilyNeedsSimplyConnected,
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Tuple(#[from] TupleError),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
}

/// Largest torus rank the base catalog covers.
pub const MAX_CATALOG_L0: usize = 2;

#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    /// Weight entries range over `-psi_bound ..= psi_bound`.
    pub psi_bound: i64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { psi_bound: 1 }
    }
}

/// Base manifolds for a given torus rank: a point, a two-sphere with every
/// assignment of involution tags to the SO slots, or products of those.
/// Deterministic order: tag tables enumerated lexicographically with
/// `Trivial < Antipodal < Reflection`.
pub fn base_catalog(l0: usize, z2_slots: usize) -> Result<Vec<TupleBase>, ClassifyError> {
    if l0 > MAX_CATALOG_L0 {
        return Err(ClassifyError::CatalogRange {
            max: MAX_CATALOG_L0,
            got: l0,
        });
    }
    if l0 == 0 {
        return Ok(vec![TupleBase::catalog(vec![])]);
    }
    let tags = [Z2Tag::Trivial, Z2Tag::Antipodal, Z2Tag::Reflection];
    let cells = l0 * z2_slots;
    let mut out = Vec::new();
    let mut odometer = vec![0usize; cells];
    loop {
        let mut core = Vec::with_capacity(l0);
        for f in 0..l0 {
            let row: Vec<Z2Tag> = (0..z2_slots)
                .map(|s| tags[odometer[f * z2_slots + s]])
                .collect();
            core.push(row);
        }
        out.push(TupleBase::catalog(core));
        if !advance(&mut odometer, 3) {
            break;
        }
    }
    Ok(out)
}

fn advance(odometer: &mut [usize], radix: usize) -> bool {
    for slot in (0..odometer.len()).rev() {
        odometer[slot] += 1;
        if odometer[slot] < radix {
            return true;
        }
        odometer[slot] = 0;
    }
    false
}

/// All equivalence classes of admissible 5-tuples for a normalized spec
/// without SO(2l) factors, deterministically ordered by their text form.
pub fn enumerate_tuples(
    spec: &GroupSpec,
    opts: EnumerateOptions,
) -> Result<Vec<AdmissibleFiveTuple>, ClassifyError> {
    let norm = normalize_spec(spec, NormalizeOptions::default())?;
    if norm.factors.iter().any(GroupFactor::is_so_even) {
        return Err(ClassifyError::SoEvenUnsupported);
    }
    let tspec = TupleSpec::from_group_spec(&norm)?;
    enumerate_tuple_spec(&tspec, opts)
}

pub fn enumerate_tuple_spec(
    tspec: &TupleSpec,
    opts: EnumerateOptions,
) -> Result<Vec<AdmissibleFiveTuple>, ClassifyError> {
    let valid = enumerate_valid_tuples(tspec, opts)?;
    let mut reps: Vec<AdmissibleFiveTuple> = Vec::new();
    for t in valid {
        let mut seen = false;
        for r in &reps {
            if r.equivalent(&t)? {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(t);
        }
    }
    Ok(reps)
}

/// Every admissible tuple over the catalog, before deduplication by
/// equivalence, sorted by text form.
pub fn enumerate_valid_tuples(
    tspec: &TupleSpec,
    opts: EnumerateOptions,
) -> Result<Vec<AdmissibleFiveTuple>, ClassifyError> {
    let l0 = tspec.l0;
    let k0 = tspec.k0();
    let ks = tspec.k_so();
    let bases = base_catalog(l0, ks)?;

    // candidate weight vectors, loci, and matrix entries
    let weight_choices = weight_vectors(l0, opts.psi_bound);
    let a_choices = a_locus_candidates(l0);
    let b_choices = b_locus_candidates(l0);
    let pairs: Vec<(usize, usize)> = (0..ks)
        .flat_map(|i| ((i + 1)..ks).map(move |j| (i, j)))
        .collect();

    let mut valid: Vec<AdmissibleFiveTuple> = Vec::new();
    for base in &bases {
        let mut psi_odo = vec![0usize; k0];
        loop {
            let psi = PsiHom {
                weights: psi_odo.iter().map(|&w| weight_choices[w].clone()).collect(),
            };
            let mut a_odo = vec![0usize; k0];
            loop {
                let a_loci: Vec<CoreLocus> = a_odo.iter().map(|&i| a_choices[i].clone()).collect();
                let mut b_odo = vec![0usize; ks];
                loop {
                    let b_loci: Vec<CoreLocus> =
                        b_odo.iter().map(|&i| b_choices[i].clone()).collect();
                    let mut m_odo = vec![0usize; pairs.len()];
                    loop {
                        let mut a_matrix = vec![vec![0u8; ks]; ks];
                        for (slot, &(i, j)) in pairs.iter().enumerate() {
                            a_matrix[i][j] = m_odo[slot] as u8;
                        }
                        let t = AdmissibleFiveTuple {
                            spec: tspec.clone(),
                            psi: psi.clone(),
                            base: base.clone(),
                            a_loci: a_loci.clone(),
                            b_loci: b_loci.clone(),
                            a_matrix,
                        };
                        if t.is_valid() {
                            valid.push(t);
                        }
                        if !advance(&mut m_odo, 2) {
                            break;
                        }
                    }
                    if !advance(&mut b_odo, b_choices.len()) {
                        break;
                    }
                }
                if !advance(&mut a_odo, a_choices.len()) {
                    break;
                }
            }
            if !advance(&mut psi_odo, weight_choices.len().max(1)) {
                break;
            }
        }
    }

    valid.sort_by_key(|t| t.serialize());
    Ok(valid)
}

fn weight_vectors(l0: usize, bound: i64) -> Vec<Vec<i64>> {
    let radix = (2 * bound + 1) as usize;
    let mut out = Vec::new();
    let mut odo = vec![0usize; l0];
    loop {
        out.push(odo.iter().map(|&d| d as i64 - bound).collect());
        if !advance(&mut odo, radix) {
            break;
        }
    }
    out
}

fn a_locus_candidates(l0: usize) -> Vec<CoreLocus> {
    let mut out = vec![CoreLocus::Empty];
    for slot in 0..l0 {
        for (n, s) in [(true, false), (false, true), (true, true)] {
            out.push(CoreLocus::poles(slot, l0, n, s));
        }
    }
    out
}

fn b_locus_candidates(l0: usize) -> Vec<CoreLocus> {
    let mut out = vec![CoreLocus::Empty];
    for slot in 0..l0 {
        out.push(CoreLocus::equator(slot, l0));
    }
    out
}

/// One classified manifold.
#[derive(Debug, Clone)]
pub struct Row {
    pub tuple: Option<AdmissibleFiveTuple>,
    pub name: String,
    pub chi: String,
    pub dim: usize,
    pub orbit_space_dim: usize,
    pub quasitoric: bool,
    pub simply_connected: Tri,
}

#[derive(Debug, Clone)]
pub struct ClassificationTable {
    pub spec: GroupSpec,
    pub paper_verified: bool,
    pub rows: Vec<Row>,
}

fn tri_text(t: Tri) -> &'static str {
    match t {
        Tri::Yes => "yes",
        Tri::No => "no",
        Tri::Unknown => "unknown",
    }
}

impl ClassificationTable {
    pub fn names(&self) -> Vec<String> {
        self.rows.iter().map(|r| r.name.clone()).collect()
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("classification for {}", self.spec);
        if !self.paper_verified {
            s.push_str("  [unverified-by-paper]");
        }
        s.push('\n');
        for r in &self.rows {
            let tuple = r
                .tuple
                .as_ref()
                .map(|t| {
                    format!(
                        "psi={} base={} A={} B={} a={}",
                        t.psi_text(),
                        t.base_text(),
                        t.a_text(),
                        t.b_text(),
                        t.a_matrix_text()
                    )
                })
                .unwrap_or_else(|| "-".to_string());
            s.push_str(&format!(
                "  {:<28} | chi={:<5} dim={} orbit_dim={} quasitoric={} simply_connected={} | {}\n",
                r.name,
                r.chi,
                r.dim,
                r.orbit_space_dim,
                r.quasitoric,
                tri_text(r.simply_connected),
                tuple
            ));
        }
        s
    }

    pub fn render_json_lines(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let (psi, base, a, b, am) = match &r.tuple {
                Some(t) => (
                    t.psi_text(),
                    t.base_text(),
                    t.a_text(),
                    t.b_text(),
                    t.a_matrix_text(),
                ),
                None => ("-".into(), "-".into(), "-".into(), "-".into(), "-".into()),
            };
            s.push_str(&format!(
                concat!(
                    "{{\"spec\":\"{}\",\"psi\":\"{}\",\"base\":\"{}\",\"A\":\"{}\",\"B\":\"{}\",",
                    "\"a\":\"{}\",\"name\":\"{}\",\"chi\":\"{}\",\"dim\":{},\"orbit_space_dim\":{},",
                    "\"quasitoric\":{},\"simply_connected\":\"{}\",\"paper_verified\":{}}}\n"
                ),
                self.spec,
                psi,
                base,
                a,
                b,
                am,
                r.name,
                r.chi,
                r.dim,
                r.orbit_space_dim,
                r.quasitoric,
                tri_text(r.simply_connected),
                self.paper_verified
            ));
        }
        s
    }
}

/// Full classification of a spec: every equivalence class of admissible
/// 5-tuples, realized and named, with flags attached. Specs whose only
/// factor is a single elementary SO(2l) get the sphere base case; other
/// SO(2l)-bearing specs are directed to the family answer.
pub fn classify(
    spec: &GroupSpec,
    opts: EnumerateOptions,
) -> Result<ClassificationTable, ClassifyError> {
    let norm = normalize_spec(spec, NormalizeOptions::default())?;
    let osd = orbit_space_dim(&norm)?;
    if norm.factors.iter().any(GroupFactor::is_so_even) {
        if norm.factors.len() == 1 && norm.l0 == 0 {
            // a single elementary SO(2l) acts only on the sphere of its rank
            let l = norm.factors[0].rank();
            let sphere = ManifoldExpr::sphere(l)?;
            let row = Row {
                tuple: None,
                name: sphere.canonical_name(),
                chi: sphere.euler()?.to_string(),
                dim: 2 * l,
                orbit_space_dim: osd,
                quasitoric: false,
                simply_connected: sphere.simply_connected(),
            };
            return Ok(ClassificationTable {
                spec: norm,
                paper_verified: true,
                rows: vec![row],
            });
        }
        return Err(ClassifyError::SoEvenUnsupported);
    }
    let tuples = enumerate_tuples(&norm, opts)?;
    let tspec = TupleSpec::from_group_spec(&norm)?;
    let mut rows = Vec::new();
    for t in tuples {
        let expr = t.realize()?;
        let flags = t.propagate_flags()?;
        let dim = expr.dim()?;
        debug_assert_eq!(dim, 2 * tspec.rank());
        rows.push(Row {
            name: expr.canonical_name(),
            chi: expr.euler()?.to_string(),
            dim,
            orbit_space_dim: osd,
            quasitoric: flags.quasitoric,
            simply_connected: flags.simply_connected,
            tuple: Some(t),
        });
    }
    rows.sort_by(|x, y| {
        (x.name.as_str(), x.tuple.as_ref().map(|t| t.serialize()))
            .cmp(&(y.name.as_str(), y.tuple.as_ref().map(|t| t.serialize())))
    });
    Ok(ClassificationTable {
        paper_verified: paper_verified(&tspec),
        spec: norm,
        rows,
    })
}

/// Is the full class list for this spec pinned by a published table?
fn paper_verified(tspec: &TupleSpec) -> bool {
    let k = tspec.k0() + tspec.k_so();
    match tspec.l0 {
        0 => tspec.k_so() == 0 || k <= 2,
        1 => k == 0 || tspec.rank() == 2,
        _ => false,
    }
}

/// The classes whose loci are all filled: exactly the manifolds where every
/// factor has fixed points, i.e. the orbit of the full group has
/// codimension one.
pub fn codim_one_rows(
    spec: &GroupSpec,
    opts: EnumerateOptions,
) -> Result<Vec<(AdmissibleFiveTuple, String)>, ClassifyError> {
    let tuples = enumerate_tuples(spec, opts)?;
    let mut rows = Vec::new();
    for t in tuples {
        let filled =
            t.a_loci.iter().all(|a| !a.is_empty()) && t.b_loci.iter().all(|b| !b.is_empty());
        if filled {
            let name = t.realize()?.canonical_name();
            rows.push((t, name));
        }
    }
    Ok(rows)
}

/// The connected-sum family answers for the two SO(2l) shapes.
#[derive(Debug, Clone)]
pub struct FamilyAnswer {
    pub spec: GroupSpec,
    /// `#_k(summand)` for `k >= 1`.
    pub family: ManifoldExpr,
    /// The `k = 0` member.
    pub sphere: ManifoldExpr,
    /// Euler characteristic of the k-th member.
    pub chi: String,
}

impl fmt::Display for FamilyAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} u {{{}}} with chi = {}",
            self.family.canonical_name(),
            self.sphere.canonical_name(),
            self.chi
        )
    }
}

/// Simply connected torus manifolds for `SO(2l) x T^1` and
/// `SO(2l) x SO(2l')`: the equivariant connected sums of sphere products,
/// plus the sphere, distinguished by their Euler characteristic.
pub fn family_answer(
    spec: &GroupSpec,
    simply_connected: bool,
) -> Result<FamilyAnswer, ClassifyError> {
    if !simply_connected {
        return Err(ClassifyError::FamilyNeedsSimplyConnected);
    }
    let norm = normalize_spec(spec, NormalizeOptions::default())?;
    let evens: Vec<usize> = norm
        .factors
        .iter()
        .filter(|f| f.is_so_even())
        .map(|f| f.rank())
        .collect();
    let (l1, l2) = match (norm.factors.len(), evens.len(), norm.l0) {
        (1, 1, 1) => (evens[0], 1),
        (2, 2, 0) => (evens[0], evens[1]),
        _ => return Err(ClassifyError::FamilyShape),
    };
    let summand = ManifoldExpr::product(vec![
        ManifoldExpr::sphere(l2.min(l1))?,
        ManifoldExpr::sphere(l2.max(l1))?,
    ]);
    let family = ManifoldExpr::conn_sum_family(
        summand,
        FamilyCount::Symbolic,
        ManifoldExpr::sphere(l1 + l2)?,
    )?;
    let chi = family.euler()?.to_string();
    let sphere = ManifoldExpr::sphere(l1 + l2)?;
    Ok(FamilyAnswer {
        spec: norm,
        family,
        sphere,
        chi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liegroups::parse_spec;

    fn classify_names(text: &str) -> Vec<String> {
        classify(&parse_spec(text).unwrap(), EnumerateOptions::default())
            .unwrap()
            .names()
    }

    fn name_set(text: &str) -> std::collections::BTreeSet<String> {
        classify_names(text).into_iter().collect()
    }

    #[test]
    fn catalog_shapes() {
        assert_eq!(base_catalog(0, 0).unwrap().len(), 1);
        assert_eq!(base_catalog(1, 0).unwrap().len(), 1);
        assert_eq!(base_catalog(1, 1).unwrap().len(), 3);
        assert_eq!(base_catalog(1, 2).unwrap().len(), 9);
        assert_eq!(base_catalog(2, 1).unwrap().len(), 9);
        assert!(matches!(
            base_catalog(3, 0),
            Err(ClassifyError::CatalogRange { .. })
        ));
    }

    #[test]
    fn su3_single_class() {
        let tuples =
            enumerate_tuples(&parse_spec("SU(3)").unwrap(), EnumerateOptions::default()).unwrap();
        assert_eq!(tuples.len(), 1);
        assert_eq!(
            name_set("SU(3)"),
            ["CP^2".to_string()].into_iter().collect()
        );
    }

    #[test]
    fn so_pair_two_classes() {
        let tuples = enumerate_tuples(
            &parse_spec("SO(3)xSO(3)").unwrap(),
            EnumerateOptions::default(),
        )
        .unwrap();
        assert_eq!(tuples.len(), 2);
        assert_eq!(
            name_set("SO(3)xSO(3)"),
            ["S^2 x S^2".to_string(), "S^2_1 x_{Z2} S^2_1".to_string()]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn so3_circle_four_classes() {
        let tuples = enumerate_tuples(
            &parse_spec("SO(3)xT^1").unwrap(),
            EnumerateOptions::default(),
        )
        .unwrap();
        assert_eq!(tuples.len(), 4);
        assert_eq!(
            name_set("SO(3)xT^1"),
            [
                "S^2 x S^2".to_string(),
                "S^2_1 x_{Z2} S^2_1".to_string(),
                "S^2_1 x_{Z2} S^2_2".to_string(),
                "S^4".to_string(),
            ]
            .into_iter()
            .collect()
        );
    }

    #[test]
    fn su2_circle_names() {
        assert_eq!(
            name_set("SU(2)xT^1"),
            [
                "S^2-bundle over CP^1".to_string(),
                "CP^2".to_string(),
                "S^4".to_string(),
            ]
            .into_iter()
            .collect()
        );
    }

    #[test]
    fn mixed_rank_two_tables() {
        assert_eq!(
            name_set("SU(2)xSU(2)"),
            ["CP^1 x CP^1".to_string()].into_iter().collect()
        );
        assert_eq!(
            name_set("SU(2)xSO(3)"),
            ["CP^1 x S^2".to_string()].into_iter().collect()
        );
    }

    #[test]
    fn elementary_base_cases() {
        assert_eq!(
            name_set("SU(4)"),
            ["CP^3".to_string()].into_iter().collect()
        );
        assert_eq!(name_set("SO(5)"), ["S^4".to_string()].into_iter().collect());
        assert_eq!(name_set("SO(4)"), ["S^4".to_string()].into_iter().collect());
        assert_eq!(
            name_set("SO(6)#3"),
            ["S^6".to_string()].into_iter().collect()
        );
    }

    #[test]
    fn semisimple_su_specs_are_quasitoric_products() {
        for text in ["SU(2)xSU(3)", "SU(2)xSU(2)xSU(2)", "SU(3)xSU(3)"] {
            let table = classify(&parse_spec(text).unwrap(), EnumerateOptions::default()).unwrap();
            assert_eq!(table.rows.len(), 1, "{}", text);
            let row = &table.rows[0];
            assert!(row.quasitoric, "{}", text);
            assert!(
                row.name.split(" x ").all(|p| p.starts_with("CP^")),
                "{}",
                text
            );
        }
    }

    #[test]
    fn so_containing_specs_are_not_quasitoric() {
        for text in ["SO(3)xT^1", "SU(2)xSO(3)", "SO(5)xT^1"] {
            let table = classify(&parse_spec(text).unwrap(), EnumerateOptions::default()).unwrap();
            assert!(table.rows.iter().all(|r| !r.quasitoric), "{}", text);
        }
    }

    #[test]
    fn codim_one_orbit_rows() {
        // full-locus classes at rank one per factor
        let all_loci_full = |t: &AdmissibleFiveTuple| {
            t.a_loci.iter().all(|a| !a.is_empty()) && t.b_loci.iter().all(|b| !b.is_empty())
        };
        let names = |text: &str| -> std::collections::BTreeSet<String> {
            enumerate_tuples(&parse_spec(text).unwrap(), EnumerateOptions::default())
                .unwrap()
                .into_iter()
                .filter(all_loci_full)
                .map(|t| t.realize().unwrap().canonical_name())
                .collect()
        };
        assert_eq!(names("T^1"), ["S^2".to_string()].into_iter().collect());
        assert_eq!(
            names("SU(2)xT^1"),
            ["CP^2".to_string(), "S^4".to_string()]
                .into_iter()
                .collect()
        );
        assert_eq!(
            names("SO(3)xT^1"),
            ["S^4".to_string()].into_iter().collect()
        );
        assert_eq!(
            names("SU(2)xSU(2)xT^1"),
            ["CP^3".to_string()].into_iter().collect()
        );
        assert_eq!(
            names("SU(2)xSO(3)xT^1"),
            ["S^6".to_string()].into_iter().collect()
        );
    }

    #[test]
    fn codim_one_orbit_rows_at_higher_rank() {
        // the same table rows away from rank one: a projective space one
        // step up from the SU rank, spheres matching the total rank
        let names = |text: &str| -> std::collections::BTreeSet<String> {
            codim_one_rows(&parse_spec(text).unwrap(), EnumerateOptions::default())
                .unwrap()
                .into_iter()
                .map(|(_, name)| name)
                .collect()
        };
        assert_eq!(
            names("SU(3)xT^1"),
            ["CP^3".to_string(), "S^6".to_string()]
                .into_iter()
                .collect()
        );
        assert_eq!(
            names("SO(5)xT^1"),
            ["S^6".to_string()].into_iter().collect()
        );
        assert_eq!(
            names("SO(7)xT^1"),
            ["S^8".to_string()].into_iter().collect()
        );
        assert_eq!(
            names("SU(3)xSU(2)xT^1"),
            ["CP^4".to_string()].into_iter().collect()
        );
        assert_eq!(
            names("SU(2)xSO(5)xT^1"),
            ["S^8".to_string()].into_iter().collect()
        );
        assert_eq!(
            names("SU(3)xSO(3)xT^1"),
            ["S^8".to_string()].into_iter().collect()
        );
    }

    #[test]
    fn dimension_matches_rank() {
        for text in ["SU(3)", "SO(3)xT^1", "SU(2)xSO(3)xT^1", "SO(3)xSO(3)"] {
            let spec = parse_spec(text).unwrap();
            let table = classify(&spec, EnumerateOptions::default()).unwrap();
            for row in &table.rows {
                assert_eq!(row.dim, 2 * spec.rank(), "{}: {}", text, row.name);
            }
        }
    }

    #[test]
    fn families() {
        let f = family_answer(&parse_spec("SO(4)xT^1").unwrap(), true).unwrap();
        assert_eq!(f.family.canonical_name(), "#_k(S^2 x S^4), k >= 1");
        assert_eq!(f.sphere.canonical_name(), "S^6");
        assert_eq!(f.chi, "2k+2");

        let f = family_answer(&parse_spec("SO(4)xSO(4)").unwrap(), true).unwrap();
        assert_eq!(f.family.canonical_name(), "#_k(S^4 x S^4), k >= 1");
        assert_eq!(f.sphere.canonical_name(), "S^8");

        assert!(matches!(
            family_answer(&parse_spec("SO(4)xT^1").unwrap(), false),
            Err(ClassifyError::FamilyNeedsSimplyConnected)
        ));
        assert!(matches!(
            family_answer(&parse_spec("SO(4)xSO(3)").unwrap(), true),
            Err(ClassifyError::FamilyShape)
        ));
    }

    #[test]
    fn so_even_specs_redirect_to_family() {
        assert!(matches!(
            classify(
                &parse_spec("SO(4)xT^1").unwrap(),
                EnumerateOptions::default()
            ),
            Err(ClassifyError::SoEvenUnsupported)
        ));
    }

    #[test]
    fn full_pipeline_over_the_rank_four_catalog() {
        for tspec in crate::acceptance::catalog_specs(4) {
            let factors: Vec<GroupFactor> = tspec
                .su_ls
                .iter()
                .map(|&l| GroupFactor::Su(l + 1))
                .chain(tspec.so_ls.iter().map(|&l| GroupFactor::So(2 * l + 1)))
                .collect();
            let spec = GroupSpec::new(factors, tspec.l0);
            let table = classify(&spec, EnumerateOptions::default()).unwrap();
            assert!(!table.rows.is_empty(), "{} classified to nothing", spec);
            for row in &table.rows {
                assert_eq!(row.dim, 2 * tspec.rank(), "{}: {}", spec, row.name);
                assert_eq!(row.orbit_space_dim, tspec.l0, "{}", spec);
            }
            // the renderers must not panic and must be non-empty
            assert!(!table.render_text().is_empty());
            assert!(!table.render_json_lines().is_empty());
        }
    }

    #[test]
    fn spin_aliases_classify_like_their_images() {
        let spin = classify(&parse_spec("Spin(5)").unwrap(), EnumerateOptions::default()).unwrap();
        let so = classify(&parse_spec("SO(5)").unwrap(), EnumerateOptions::default()).unwrap();
        assert_eq!(spin.render_text(), so.render_text());

        assert_eq!(
            name_set("Spin(6)#4"),
            ["CP^3".to_string()].into_iter().collect()
        );
        assert_eq!(name_set("Spin(3)#2"), name_set("SU(2)"));
    }

    #[test]
    fn determinism() {
        let a = classify(
            &parse_spec("SO(3)xT^1").unwrap(),
            EnumerateOptions::default(),
        )
        .unwrap()
        .render_text();
        let b = classify(
            &parse_spec("SO(3)xT^1").unwrap(),
            EnumerateOptions::default(),
        )
        .unwrap()
        .render_text();
        assert_eq!(a, b);
    }
}
