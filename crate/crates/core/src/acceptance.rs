//! The acceptance suite: one runnable check per shipped claim, shared by
//! the `acceptance` test target and the command-line `check` subcommand.

use std::collections::BTreeSet;

use crate::classify::{classify, enumerate_tuple_spec, enumerate_tuples, EnumerateOptions};
use crate::fivetuples::{AdmissibleFiveTuple, CoreLocus, TupleSpec, Z2Tag};
use crate::liegroups::{
    max_rank_subgroup, min_rep_dims, normalize_spec, orbit_space_dim, parse_spec, possible_f_sizes,
    GroupFactor, GroupSpec, NormalizeOptions,
};
use crate::manifolds::{FactorLocus, FamilyCount, ManifoldExpr};
use crate::weyl::{weyl_group_of, Embedding, ReflectionType};

pub struct CriterionResult {
    pub id: usize,
    pub label: &'static str,
    pub outcome: Result<(), String>,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn line(&self) -> String {
        match &self.outcome {
            Ok(()) => format!("criterion {:2} PASS  {}", self.id, self.label),
            Err(e) => format!("criterion {:2} FAIL  {}: {}", self.id, self.label, e),
        }
    }
}

type Check = fn() -> Result<(), String>;

pub fn run_all() -> Vec<CriterionResult> {
    let checks: Vec<(usize, &'static str, Check)> = vec![
        (1, "Weyl group orders", weyl_orders),
        (2, "reflection fingerprints", reflection_fingerprints),
        (3, "factor detection round-trip", detection_round_trip),
        (4, "static fact tables", static_tables),
        (5, "classification tables", classification_tables),
        (6, "Euler characteristic claims", euler_claims),
        (7, "orbit space dimension", orbit_space_dimension),
        (8, "reduce/expand round-trip", reduce_expand_round_trip),
        (9, "validator necessity", validator_necessity),
        (10, "flag propagation", flag_propagation),
    ];
    checks
        .into_iter()
        .map(|(id, label, f)| CriterionResult {
            id,
            label,
            outcome: f(),
        })
        .collect()
}

fn fail(msg: String) -> Result<(), String> {
    Err(msg)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

// 1. enumerated orders match (l+1)!, 2^l l!, 2^{l-1} l! for l <= 5
fn weyl_orders() -> Result<(), String> {
    for l in 1..=5usize {
        let a = weyl_group_of(&GroupFactor::Su(l + 1), &Embedding::dense(l + 1))
            .map_err(|e| e.to_string())?;
        if a.order() != factorial(l + 1) {
            return fail(format!(
                "A_{}: order {} != {}",
                l,
                a.order(),
                factorial(l + 1)
            ));
        }
        let b = weyl_group_of(&GroupFactor::So(2 * l + 1), &Embedding::dense(l))
            .map_err(|e| e.to_string())?;
        if b.order() != (1 << l) * factorial(l) {
            return fail(format!("B_{}: order {}", l, b.order()));
        }
        if l >= 2 {
            let d = weyl_group_of(&GroupFactor::So(2 * l), &Embedding::dense(l))
                .map_err(|e| e.to_string())?;
            if d.order() != (1 << (l - 1)) * factorial(l) {
                return fail(format!("D_{}: order {}", l, d.order()));
            }
        }
    }
    Ok(())
}

// 2. reflection counts l(l+1)/2, l^2, l(l-1); sign flips exactly in type B
fn reflection_fingerprints() -> Result<(), String> {
    let has_type3 = |g: &crate::weyl::ReflectionGroup| {
        g.elements().iter().any(|e| {
            matches!(
                crate::weyl::classify_reflection(e),
                ReflectionType::Type3 { .. }
            )
        })
    };
    for l in 1..=5usize {
        let a = weyl_group_of(&GroupFactor::Su(l + 1), &Embedding::dense(l + 1))
            .map_err(|e| e.to_string())?;
        if a.reflections().len() != l * (l + 1) / 2 || has_type3(&a) {
            return fail(format!("A_{} fingerprint", l));
        }
        let b = weyl_group_of(&GroupFactor::So(2 * l + 1), &Embedding::dense(l))
            .map_err(|e| e.to_string())?;
        if b.reflections().len() != l * l || !has_type3(&b) {
            return fail(format!("B_{} fingerprint", l));
        }
        if l >= 2 {
            let d = weyl_group_of(&GroupFactor::So(2 * l), &Embedding::dense(l))
                .map_err(|e| e.to_string())?;
            if d.reflections().len() != l * (l - 1) || has_type3(&d) {
                return fail(format!("D_{} fingerprint", l));
            }
        }
    }
    Ok(())
}

// 3. detect_factor_type recovers every classical factor of rank <= 4, with
//    a characteristic count allowed by the F-size table
fn detection_round_trip() -> Result<(), String> {
    use crate::weyl::ElementaryType;
    let cases: Vec<(GroupFactor, usize)> = vec![
        (GroupFactor::Su(2), 2),
        (GroupFactor::Su(3), 3),
        (GroupFactor::Su(4), 4),
        (GroupFactor::Su(5), 5),
        (GroupFactor::So(3), 1),
        (GroupFactor::So(5), 2),
        (GroupFactor::So(7), 3),
        (GroupFactor::So(9), 4),
        (GroupFactor::So(4), 2),
        (GroupFactor::So(6), 3),
        (GroupFactor::So(8), 4),
    ];
    for (factor, letters) in cases {
        let grp = weyl_group_of(&factor, &Embedding::dense(letters)).map_err(|e| e.to_string())?;
        let part = grp.orbit_partition();
        if part.orbits.len() != 1 {
            return fail(format!("{}: expected one orbit", factor));
        }
        let det = grp
            .detect_factor_type(&part.orbits[0])
            .map_err(|e| e.to_string())?;
        let matches = match (&factor, det) {
            (GroupFactor::Su(n), ElementaryType::Su { l, .. }) => l + 1 == *n,
            (GroupFactor::So(n), ElementaryType::SoOdd { l, .. }) => 2 * l + 1 == *n,
            (GroupFactor::So(n), ElementaryType::SoEven { l, .. }) => 2 * l == *n,
            _ => false,
        };
        if !matches {
            return fail(format!("{}: detected {}", factor, det));
        }
        let allowed = possible_f_sizes(&factor).map_err(|e| e.to_string())?;
        if !allowed.contains(&det.f_count()) {
            return fail(format!(
                "{}: F-count {} not in {:?}",
                factor,
                det.f_count(),
                allowed
            ));
        }
    }
    Ok(())
}

// 4. the three static tables, row by row
fn static_tables() -> Result<(), String> {
    let f_rows: Vec<(GroupFactor, Vec<usize>)> = vec![
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
        (GroupFactor::Su(6), vec![6]),
        (GroupFactor::Spin(7), vec![3]),
        (GroupFactor::Spin(9), vec![4]),
        (GroupFactor::Spin(11), vec![5]),
        (GroupFactor::Spin(8), vec![4]),
        (GroupFactor::Spin(10), vec![5]),
        (GroupFactor::Sp(3), vec![3]),
        (GroupFactor::Sp(4), vec![4]),
    ];
    for (factor, expect) in f_rows {
        let got = possible_f_sizes(&factor).map_err(|e| e.to_string())?;
        if got != expect.iter().cloned().collect::<BTreeSet<_>>() {
            return fail(format!("F sizes for {}: {:?}", factor, got));
        }
    }
    let d_rows: Vec<(GroupFactor, (usize, usize))> = vec![
        (GroupFactor::Su(2), (3, 2)),
        (GroupFactor::Spin(4), (3, 2)),
        (GroupFactor::Spin(5), (5, 4)),
        (GroupFactor::Su(4), (6, 4)),
        (GroupFactor::Su(3), (6, 3)),
        (GroupFactor::Su(5), (10, 5)),
        (GroupFactor::Su(6), (12, 6)),
        (GroupFactor::Spin(7), (7, 7)),
        (GroupFactor::Spin(9), (9, 9)),
        (GroupFactor::Spin(8), (8, 8)),
        (GroupFactor::Spin(10), (10, 10)),
        (GroupFactor::Sp(3), (7, 6)),
        (GroupFactor::Sp(4), (9, 8)),
    ];
    for (factor, expect) in d_rows {
        let got = min_rep_dims(&factor).map_err(|e| e.to_string())?;
        if got != expect {
            return fail(format!("rep dims for {}: {:?}", factor, got));
        }
    }
    let h_rows: Vec<(GroupFactor, (&str, usize))> = vec![
        (GroupFactor::Su(2), ("S(U(1)xU(1))", 2)),
        (GroupFactor::Spin(5), ("Spin(4)", 4)),
        (GroupFactor::Su(4), ("S(U(3)xU(1))", 6)),
        (GroupFactor::Su(3), ("S(U(2)xU(1))", 4)),
        (GroupFactor::Su(5), ("S(U(4)xU(1))", 8)),
        (GroupFactor::Spin(7), ("Spin(6)", 6)),
        (GroupFactor::Spin(9), ("Spin(8)", 8)),
        (GroupFactor::Spin(8), ("Spin(6)xSpin(2)", 12)),
        (GroupFactor::Spin(10), ("Spin(8)xSpin(2)", 16)),
        (GroupFactor::Sp(3), ("Sp(2)xSp(1)", 8)),
        (GroupFactor::Sp(4), ("Sp(3)xSp(1)", 12)),
    ];
    for (factor, (name, codim)) in h_rows {
        let got = max_rank_subgroup(&factor).map_err(|e| e.to_string())?;
        if got != (name.to_string(), codim) {
            return fail(format!("max-rank subgroup for {}: {:?}", factor, got));
        }
    }
    Ok(())
}

fn name_set(text: &str) -> Result<BTreeSet<String>, String> {
    Ok(classify(
        &parse_spec(text).map_err(|e| e.to_string())?,
        EnumerateOptions::default(),
    )
    .map_err(|e| e.to_string())?
    .names()
    .into_iter()
    .collect())
}

fn set_of(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

// 5. the classification tables, as exact name sets
fn classification_tables() -> Result<(), String> {
    let expectations: Vec<(&str, Vec<&str>)> = vec![
        ("SU(3)", vec!["CP^2"]),
        ("SU(2)xSU(2)", vec!["CP^1 x CP^1"]),
        ("SU(2)xT^1", vec!["S^2-bundle over CP^1", "CP^2", "S^4"]),
        ("SU(2)xSO(3)", vec!["CP^1 x S^2"]),
        ("SO(3)xSO(3)", vec!["S^2_1 x_{Z2} S^2_1", "S^2 x S^2"]),
        (
            "SO(3)xT^1",
            vec![
                "S^2 x S^2",
                "S^2_1 x_{Z2} S^2_1",
                "S^2_1 x_{Z2} S^2_2",
                "S^4",
            ],
        ),
    ];
    for (spec, names) in expectations {
        let got = name_set(spec)?;
        if got != set_of(&names) {
            return fail(format!("{}: got {:?}", spec, got));
        }
    }

    // codimension-one orbit rows: every locus filled, rank one per factor
    let filled = |t: &AdmissibleFiveTuple| {
        t.a_loci.iter().all(|a| !a.is_empty()) && t.b_loci.iter().all(|b| !b.is_empty())
    };
    let codim_one = |text: &str| -> Result<BTreeSet<String>, String> {
        let spec = parse_spec(text).map_err(|e| e.to_string())?;
        let tuples =
            enumerate_tuples(&spec, EnumerateOptions::default()).map_err(|e| e.to_string())?;
        let mut names = BTreeSet::new();
        for t in tuples.into_iter().filter(filled) {
            names.insert(t.realize().map_err(|e| e.to_string())?.canonical_name());
        }
        Ok(names)
    };
    let rows: Vec<(&str, Vec<&str>)> = vec![
        ("T^1", vec!["S^2"]),
        ("SU(2)xT^1", vec!["CP^2", "S^4"]),
        ("SO(3)xT^1", vec!["S^4"]),
        ("SU(2)xSU(2)xT^1", vec!["CP^3"]),
        ("SU(2)xSO(3)xT^1", vec!["S^6"]),
    ];
    for (spec, names) in rows {
        let got = codim_one(spec)?;
        if got != set_of(&names) {
            return fail(format!("codim-one rows for {}: got {:?}", spec, got));
        }
    }
    Ok(())
}

// 6. chi(#_k(S^{2l1} x S^{2l2})) = 2k+2, and rewrites preserve chi and dim
fn euler_claims() -> Result<(), String> {
    for l1 in 1..=3usize {
        for l2 in 1..=3usize {
            let summand = ManifoldExpr::product(vec![
                ManifoldExpr::sphere(l1).map_err(|e| e.to_string())?,
                ManifoldExpr::sphere(l2).map_err(|e| e.to_string())?,
            ]);
            for k in 0..=10u64 {
                let family = ManifoldExpr::conn_sum_family(
                    summand.clone(),
                    FamilyCount::Fixed(k),
                    ManifoldExpr::sphere(l1 + l2).map_err(|e| e.to_string())?,
                )
                .map_err(|e| e.to_string())?;
                let chi = family
                    .euler()
                    .map_err(|e| e.to_string())?
                    .as_constant()
                    .ok_or("family chi should be constant at fixed k")?;
                if chi != 2 * k as i64 + 2 {
                    return fail(format!("chi(#_{}) = {} for l1={}, l2={}", k, chi, l1, l2));
                }
            }
        }
    }
    for e in rewrite_instances().map_err(|e| e.to_string())? {
        let canon = e.canonical_form();
        if canon == e {
            return fail(format!("rewrite did not fire for {:?}", e));
        }
        let (chi_raw, chi_canon) = (
            e.euler().map_err(|x| x.to_string())?,
            canon.euler().map_err(|x| x.to_string())?,
        );
        if chi_raw != chi_canon {
            return fail(format!("rewrite changed chi: {:?}", e));
        }
        if e.dim().map_err(|x| x.to_string())? != canon.dim().map_err(|x| x.to_string())? {
            return fail(format!("rewrite changed dim: {:?}", e));
        }
    }
    Ok(())
}

/// Every instance of the four blow-down rewrite rules with parameters <= 4.
fn rewrite_instances() -> Result<Vec<ManifoldExpr>, crate::manifolds::ManifoldError> {
    use crate::manifolds::Center;
    let s2 = ManifoldExpr::sphere(1)?;
    let one_pole = Center {
        core: vec![FactorLocus::Poles {
            north: true,
            south: false,
        }],
        chi: 1,
        codim: 2,
    };
    let both_poles = Center {
        core: vec![FactorLocus::Poles {
            north: true,
            south: true,
        }],
        chi: 2,
        codim: 2,
    };
    let equator = Center {
        core: vec![FactorLocus::Equator],
        chi: 0,
        codim: 1,
    };
    let mut out = Vec::new();
    for l in 1..=4usize {
        let bundle = ManifoldExpr::proj_bundle_su(l, s2.clone(), vec![1])?;
        out.push(ManifoldExpr::blow_down(bundle.clone(), one_pole.clone())?);
        out.push(ManifoldExpr::blow_down(bundle, both_poles.clone())?);
        let q = ManifoldExpr::z2_quotient(l, s2.clone(), crate::manifolds::Z2Action::Reflection)?;
        out.push(ManifoldExpr::blow_down(q, equator.clone())?);
        for m in 1..=4usize {
            let ib = ManifoldExpr::proj_bundle_su(m, s2.clone(), vec![1])?;
            let inner = ManifoldExpr::blow_down(ib, one_pole.clone())?;
            let ob = ManifoldExpr::proj_bundle_su(l, inner, vec![1])?;
            out.push(ManifoldExpr::blow_down(
                ob,
                Center {
                    core: vec![FactorLocus::Poles {
                        north: false,
                        south: true,
                    }],
                    chi: (m + 1) as i64,
                    codim: 2,
                },
            )?);
        }
    }
    Ok(out)
}

/// Deterministic xorshift generator for the randomized criteria.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

// 7. orbit space dimension on random specs, cross-checked against the
//    SO(2l) -> SU(l) x S^1 replacement
fn orbit_space_dimension() -> Result<(), String> {
    let mut rng = Rng::new(0x5eed_0007);
    let pool: Vec<GroupFactor> = vec![
        GroupFactor::Su(2),
        GroupFactor::Su(3),
        GroupFactor::So(3),
        GroupFactor::So(5),
        GroupFactor::So(4),
        GroupFactor::So(6),
        GroupFactor::So(8),
        GroupFactor::Spin(5),
        GroupFactor::Spin(8),
    ];
    for _ in 0..20 {
        let n_factors = 1 + rng.below(3);
        let factors: Vec<GroupFactor> = (0..n_factors)
            .map(|_| pool[rng.below(pool.len())])
            .collect();
        let l0 = rng.below(3);
        let spec = GroupSpec::new(factors, l0);
        let plain =
            normalize_spec(&spec, NormalizeOptions::default()).map_err(|e| e.to_string())?;
        let expected = plain.l0 + plain.factors.iter().filter(|f| f.is_so_even()).count();
        let got = orbit_space_dim(&plain).map_err(|e| e.to_string())?;
        if got != expected {
            return fail(format!("{}: orbit dim {} != {}", spec, got, expected));
        }
        let reduced = normalize_spec(
            &spec,
            NormalizeOptions {
                reduce_so_even: true,
            },
        )
        .map_err(|e| e.to_string())?;
        if reduced.l0 != got {
            return fail(format!(
                "{}: replacement changed the orbit dimension ({} vs {})",
                spec, reduced.l0, got
            ));
        }
    }
    Ok(())
}

/// Every spec of rank at most `max_rank` with at least one factor, torus
/// rank within the catalog.
pub fn catalog_specs(max_rank: usize) -> Vec<TupleSpec> {
    fn multisets(parts: &[usize], budget: usize, min: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for (idx, &p) in parts.iter().enumerate() {
            if p < min || p > budget {
                continue;
            }
            for mut tail in multisets(&parts[idx..], budget - p, p) {
                let mut v = vec![p];
                v.append(&mut tail);
                out.push(v);
            }
        }
        out
    }
    let mut specs = Vec::new();
    let parts = [1usize, 2, 3, 4];
    for su_ls in multisets(&parts, max_rank, 1) {
        let su_sum: usize = su_ls.iter().sum();
        for so_ls in multisets(&parts, max_rank - su_sum, 1) {
            let so_sum: usize = so_ls.iter().sum();
            for l0 in 0..=(max_rank - su_sum - so_sum).min(crate::classify::MAX_CATALOG_L0) {
                if su_ls.is_empty() && so_ls.is_empty() {
                    continue;
                }
                specs.push(TupleSpec {
                    su_ls: su_ls.clone(),
                    so_ls: so_ls.clone(),
                    l0,
                });
            }
        }
    }
    specs.sort_by_key(|s| format!("{}", s));
    specs.dedup();
    specs
}

// 8. expand(reduce(t)) is equivalent to t for every enumerated tuple of
//    every catalog spec of rank <= 4
fn reduce_expand_round_trip() -> Result<(), String> {
    let mut checked = 0usize;
    for tspec in catalog_specs(4) {
        let tuples =
            enumerate_tuple_spec(&tspec, EnumerateOptions::default()).map_err(|e| e.to_string())?;
        let factor = if let Some(&l) = tspec.so_ls.last() {
            GroupFactor::So(2 * l + 1)
        } else {
            GroupFactor::Su(tspec.su_ls.last().unwrap() + 1)
        };
        for t in tuples {
            let reduced = t.reduce().map_err(|e| e.to_string())?;
            if !reduced.is_valid() {
                return fail(format!("reduction of {} is invalid", t.serialize()));
            }
            let back = reduced.expand(&factor).map_err(|e| e.to_string())?;
            if !back.equivalent(&t).map_err(|e| e.to_string())? {
                return fail(format!("round trip failed for {}", t.serialize()));
            }
            checked += 1;
        }
    }
    if checked < 100 {
        return fail(format!("only {} tuples exercised", checked));
    }
    Ok(())
}

// 9. every mutation that breaks an admissibility clause is reported
fn validator_necessity() -> Result<(), String> {
    let mut pool: Vec<AdmissibleFiveTuple> = Vec::new();
    for text in [
        "SU(2)xT^1",
        "SU(2)xSU(2)xT^1",
        "SO(3)xT^1",
        "SO(3)xSO(3)xT^1",
        "SU(2)xSO(3)xT^1",
        "SO(3)xSO(3)",
        "SU(2)xSO(3)xSO(3)",
    ] {
        let spec = parse_spec(text).map_err(|e| e.to_string())?;
        pool.extend(
            enumerate_tuples(&spec, EnumerateOptions::default()).map_err(|e| e.to_string())?,
        );
    }
    let mut rng = Rng::new(0x5eed_0009);
    let mut done = 0usize;
    let mut guard = 0usize;
    while done < 200 {
        guard += 1;
        if guard > 100_000 {
            return fail("could not build 200 breaking mutations".to_string());
        }
        let t = &pool[rng.below(pool.len())];
        if let Some((mutated, clause)) = mutate(t, &mut rng) {
            let violations = mutated.validate();
            if violations.is_empty() {
                return fail(format!(
                    "mutation '{}' of {} reported no violation",
                    clause,
                    t.serialize()
                ));
            }
            done += 1;
        }
    }
    Ok(())
}

/// Applies one clause-breaking mutation if the tuple supports it. Returns
/// the broken tuple and the clause it is guaranteed to violate.
fn mutate(t: &AdmissibleFiveTuple, rng: &mut Rng) -> Option<(AdmissibleFiveTuple, &'static str)> {
    let k0 = t.spec.k0();
    let ks = t.spec.k_so();
    let l0 = t.spec.l0;
    for _ in 0..8 {
        match rng.below(6) {
            // break the primitive-weight condition
            0 => {
                if let Some(i) = (0..k0).find(|&i| !t.a_loci[i].is_empty()) {
                    let mut m = t.clone();
                    for w in &mut m.psi.weights[i] {
                        *w *= 2;
                    }
                    return Some((m, "3 gcd"));
                }
            }
            // duplicate a locus across two SU factors
            1 => {
                if k0 >= 2 {
                    if let Some(j) = (1..k0).find(|&j| !t.a_loci[j].is_empty()) {
                        let mut m = t.clone();
                        m.a_loci[0] = m.a_loci[j].clone();
                        return Some((m, "transversality"));
                    }
                }
            }
            // pair an involution with a non-trivially acted factor
            2 => {
                let target = (0..ks)
                    .flat_map(|i| ((i + 1)..ks).map(move |j| (i, j)))
                    .find(|&(i, j)| t.a(i, j) == 0 && !t.base.z2_is_trivial(j));
                if let Some((i, j)) = target {
                    let mut m = t.clone();
                    m.a_matrix[i][j] = 1;
                    return Some((m, "5(a)"));
                }
            }
            // a codimension-one locus for a trivially acting involution
            3 => {
                if l0 >= 1 {
                    if let Some(i) = (0..ks).find(|&i| t.base.z2_is_trivial(i)) {
                        let mut m = t.clone();
                        m.b_loci[i] = CoreLocus::equator(0, l0);
                        return Some((m, "4 nontriviality"));
                    }
                }
            }
            // erase the only reflection supporting a filled locus
            4 => {
                if let Some(i) = (0..ks).find(|&i| !t.b_loci[i].is_empty()) {
                    let only_tag = t
                        .base
                        .core
                        .iter()
                        .filter(|s| s.tags[i] != Z2Tag::Trivial)
                        .count()
                        == 1;
                    if only_tag {
                        let mut m = t.clone();
                        for s in &mut m.base.core {
                            s.tags[i] = Z2Tag::Trivial;
                        }
                        return Some((m, "4 triviality after tag flip"));
                    }
                }
            }
            // grow a locus out of the weight circle's fixed set
            _ => {
                if l0 >= 1 {
                    if let Some(i) = (0..k0).find(|&i| t.psi.weights[i].iter().any(|&w| w != 0)) {
                        let mut m = t.clone();
                        let slot = m.psi.weights[i].iter().position(|&w| w != 0).unwrap();
                        m.a_loci[i] = CoreLocus::equator(slot, l0);
                        return Some((m, "3 fixed locus / codim"));
                    }
                }
            }
        }
    }
    None
}

// 10. semi-simple all-SU specs are quasitoric products of projective
//     spaces; SO-containing specs are never quasitoric
fn flag_propagation() -> Result<(), String> {
    for text in [
        "SU(2)xSU(2)",
        "SU(2)xSU(3)",
        "SU(3)xSU(3)",
        "SU(2)xSU(2)xSU(2)",
    ] {
        let table = classify(
            &parse_spec(text).map_err(|e| e.to_string())?,
            EnumerateOptions::default(),
        )
        .map_err(|e| e.to_string())?;
        if table.rows.len() != 1 {
            return fail(format!("{}: {} classes", text, table.rows.len()));
        }
        let row = &table.rows[0];
        if !row.quasitoric {
            return fail(format!("{} should be quasitoric", text));
        }
        if !row.name.split(" x ").all(|p| p.starts_with("CP^")) {
            return fail(format!(
                "{}: {} is not a projective product",
                text, row.name
            ));
        }
    }
    for text in [
        "SO(3)xT^1",
        "SU(2)xSO(3)",
        "SO(3)xSO(3)",
        "SO(5)xT^1",
        "SU(2)xSO(5)xT^1",
    ] {
        let table = classify(
            &parse_spec(text).map_err(|e| e.to_string())?,
            EnumerateOptions::default(),
        )
        .map_err(|e| e.to_string())?;
        if table.rows.iter().any(|r| r.quasitoric) {
            return fail(format!("{} reported a quasitoric class", text));
        }
    }
    Ok(())
}
