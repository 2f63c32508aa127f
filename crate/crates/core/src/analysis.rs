//! The analyses behind each CLI subcommand, as library functions returning
//! [`Report`]s.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::central::{
    center_theorem_checks, central_subspace, class_partition, maximal_normals_from_f,
    GroupBacking,
};
use crate::cosets::{coset_classes, dims_identity, verify_eigen, verify_formula};
use crate::error::{Error, Result};
use crate::fusion::Side;
use crate::group::{GroupInstance, GroupTable};
use crate::instance::InstanceFile;
use crate::normality::{
    central_grouplikes, core_trace, induced_trivial_multiplicities, is_normal, normal_lattice,
    quotient_irr,
};
use crate::pair::HopfPair;
use crate::report::{Report, Section};
use crate::subalgebra::{closure_generate, kernel_of, z_of, ClosedSubset};
use crate::tolerance::Tolerance;

/// Number of random subgroup pairs used when exhaustive pairing is too large.
pub const SAMPLED_PAIRS: usize = 20;
/// Exhaustive subgroup pairing is used up to this many subgroups.
pub const EXHAUSTIVE_SUBGROUPS: usize = 12;

/// Parses `d1,d2,...` (labels or indices of `Irr(H*)`).
pub fn parse_subset(pair: &HopfPair, spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| pair.resolve(Side::HStar, t))
        .collect()
}

fn labels(pair: &HopfPair, k: &ClosedSubset) -> Vec<String> {
    k.labels(pair)
}

/// Validates an instance document. Parse and structural problems are errors;
/// axiom violations become failed assertions.
pub fn validate_document(text: &str, tol: Tolerance) -> Result<Report> {
    let doc: InstanceFile = serde_json::from_str(text)?;
    let name = doc.name.clone();
    let mut report = Report::new(name, "validate");
    let s = report.section("invariants");
    match doc.into_pair(tol) {
        Ok(pair) => {
            s.finding("dim", pair.dim());
            s.finding("irr_h", pair.ring_h().len());
            s.finding("irr_hstar", pair.ring_hstar().len());
            s.assert("all invariants satisfied", true, "");
        }
        Err(Error::Axioms(violations)) => {
            s.finding("violations", violations.len());
            for v in violations {
                s.assert(v.invariant.clone(), false, format!("at {} (residual {:.3e})", v.location, v.residual));
            }
        }
        Err(e) => return Err(e),
    }
    Ok(report.finish())
}

pub fn kernels_report(pair: &HopfPair) -> Report {
    let mut report = Report::new(pair.name(), "kernels");
    let h = pair.ring_h();
    for chi in 0..h.len() {
        let s = report.section(format!("χ = {}", h.label(chi)));
        let x = pair.irreducible(Side::H, chi);
        let Some(ker) = s.check("kernel", kernel_of(pair, &x)) else { continue };
        let Some(z) = s.check("center", z_of(pair, &x)) else { continue };
        s.finding("ker", labels(pair, &ker));
        s.finding("ker subdim", ker.subdim());
        s.finding("z", labels(pair, &z));
        s.finding("z subdim", z.subdim());
        if let Some(gen) = s.check("generate ker", closure_generate(pair, ker.members())) {
            s.assert("ker is closed", gen == ker, format!("generates {:?}", gen.members()));
        }
        if let Some(gen) = s.check("generate z", closure_generate(pair, z.members())) {
            s.assert("z is closed", gen == z, format!("generates {:?}", gen.members()));
        }
        s.assert("ker ⊆ z", ker.is_subset_of(&z), "");
        if let Ok(sq) = pair.fuse(&x, &x) {
            if let Some(k2) = s.check("kernel of χ²", kernel_of(pair, &sq)) {
                s.assert("ker χ ⊆ ker χ²", ker.is_subset_of(&k2), "");
            }
        }
    }
    report.finish()
}

fn describe_subset(s: &mut Section, pair: &HopfPair, seed: &[usize]) -> Option<ClosedSubset> {
    s.finding("seed", pair.labels_of(Side::HStar, seed));
    let k = s.check("closure", closure_generate(pair, seed))?;
    let mut sorted_seed: Vec<usize> = seed.to_vec();
    sorted_seed.push(0);
    sorted_seed.sort_unstable();
    sorted_seed.dedup();
    s.finding("seed was closed", sorted_seed == k.members());
    s.finding("subset", labels(pair, &k));
    s.finding("subdim", k.subdim());
    Some(k)
}

pub fn normal_report(pair: &HopfPair, seed: &[usize]) -> Report {
    let mut report = Report::new(pair.name(), "normal");
    let s = report.section("normality");
    let Some(k) = describe_subset(s, pair, seed) else { return report.finish() };
    if let Some(m) = s.check("induced trivial character", induced_trivial_multiplicities(pair, &k)) {
        let named: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(chi, x)| format!("{}:{}", pair.ring_h().label(chi), x))
            .collect();
        s.finding("induced trivial character", named);
    }
    if let Some(normal) = s.check("normality criteria agree", is_normal(pair, &k)) {
        s.finding("normal", normal);
        if normal {
            if let Some(q) = s.check("quotient irreducibles", quotient_irr(pair, &k, true)) {
                s.finding("quotient irreducibles", pair.labels_of(Side::H, &q));
            }
        }
    }
    report.finish()
}

pub fn core_report(pair: &HopfPair, seed: &[usize]) -> Report {
    let mut report = Report::new(pair.name(), "core");
    let s = report.section("core");
    let Some(k) = describe_subset(s, pair, seed) else { return report.finish() };
    if let Some(trace) = s.check("core iteration", core_trace(pair, &k)) {
        let steps: Vec<Vec<String>> = trace.steps.iter().map(|x| labels(pair, x)).collect();
        s.finding("iteration", steps);
        s.finding("iterations", trace.iterations());
        s.finding("core", labels(pair, trace.core()));
        s.finding("core subdim", trace.core().subdim());
        s.assert("core ⊆ K", trace.core().is_subset_of(&k), "");
        s.assert(
            "iteration bounded by |Irr(H*)|",
            trace.iterations() <= pair.ring_hstar().len(),
            "",
        );
    }
    report.finish()
}

pub fn lattice_report(pair: &HopfPair) -> Report {
    let mut report = Report::new(pair.name(), "lattice");
    let s = report.section("normal lattice");
    let lattice = s.check("normal lattice", normal_lattice(pair));
    if let Some(l) = &lattice {
        let show = |v: &[ClosedSubset]| v.iter().map(|k| labels(pair, k)).collect::<Vec<_>>();
        s.finding("maximal generators (core route)", show(&l.generators));
        s.finding("members", show(&l.members));
        s.finding("count", l.members.len());
        s.finding(
            "subdims",
            l.members.iter().map(ClosedSubset::subdim).collect::<Vec<_>>(),
        );
    }
    let s = report.section("maximal normals from f_i");
    if let Some(f) = s.check("f_i route agrees with core route", maximal_normals_from_f(pair)) {
        s.finding(
            "maximal normals",
            f.iter().map(|k| labels(pair, k)).collect::<Vec<_>>(),
        );
        s.assert("routes agree", true, "");
        for k in &f {
            if let Some(c) = s.check("core of f_i kernel", crate::normality::core(pair, k)) {
                s.assert(
                    format!("core(H_f) = H_f for subdim {}", k.subdim()),
                    c == *k,
                    format!("core is {:?}", c.members()),
                );
            }
        }
    }
    let s = report.section("central grouplikes");
    if let Some(g) = s.check("scan and intersection routes agree", central_grouplikes(pair)) {
        s.finding("central grouplikes", pair.labels_of(Side::HStar, &g));
        s.assert("routes agree", true, "");
    }
    report.finish()
}

pub fn partition_report(pair: &HopfPair, backing: Option<GroupBacking<'_>>) -> Report {
    let mut report = Report::new(pair.name(), "partition");
    let mut counts = Vec::new();
    for side in [Side::HStar, Side::H] {
        let s = report.section(format!("blocks of {}", side.name()));
        if let Some(space) = s.check("central subspace", central_subspace(pair, side)) {
            s.finding("null space dimension", space.dimension());
            s.finding("min eigenvalue of Q", space.min_eigenvalue);
            s.finding("norm of Q", space.norm);
            s.assert(
                "Q positive semidefinite",
                space.min_eigenvalue > -pair.tol().eps * space.norm.max(1.0),
                format!("min eigenvalue {:.3e}", space.min_eigenvalue),
            );
        }
        if let Some(p) = s.check("class partition", class_partition(pair, side)) {
            let blocks: Vec<Vec<String>> =
                p.blocks.iter().map(|b| pair.labels_of(side, b)).collect();
            s.finding(if side == Side::H { "X_i" } else { "Y_j" }, blocks);
            counts.push(p.blocks.len());
        }
    }
    let s = report.section("block counts");
    if counts.len() == 2 {
        s.finding("|J| (Irr(H*) blocks)", counts[0]);
        s.finding("|I| (Irr(H) blocks)", counts[1]);
        s.assert("|I| = |J|", counts[0] == counts[1], format!("{} vs {}", counts[1], counts[0]));
    }
    if let Ok(p) = class_partition(pair, Side::H) {
        for i in 0..p.blocks.len() {
            let s = report.section(format!("theorem checks, block {}", pair.labels_of(Side::H, &p.blocks[i]).join("+")));
            if let Some(t) = s.check("checks (a)-(e)", center_theorem_checks(pair, &p, i, backing)) {
                s.finding("H_f", labels(pair, &t.kernel));
                s.finding("Z_f", labels(pair, &t.center));
                s.finding("|Z_f|/|H_f|", t.ratio);
                s.finding("Z_f strictly larger than z_f", t.center_grew);
                s.finding("Irr(H//H_f)", pair.labels_of(Side::H, &t.quotient_irr));
                s.finding("oracle checked", t.oracle_checked);
                s.assert("checks (a)-(e)", true, "");
            }
        }
    }
    report.finish()
}

pub fn cosets_report(pair: &HopfPair, k_seed: &[usize], l_seed: &[usize]) -> Report {
    let mut report = Report::new(pair.name(), "cosets");
    let s = report.section("subalgebras");
    let k = s.check("K", closure_generate(pair, k_seed));
    let l = s.check("L", closure_generate(pair, l_seed));
    let (Some(k), Some(l)) = (k, l) else { return report.finish() };
    s.finding("K", labels(pair, &k));
    s.finding("L", labels(pair, &l));

    let s = report.section("classes");
    let Some(dec) = s.check("double-coset partition", coset_classes(pair, &k, &l)) else {
        return report.finish();
    };
    let classes: Vec<Vec<String>> = dec
        .classes
        .iter()
        .map(|c| pair.labels_of(Side::HStar, c))
        .collect();
    s.finding("classes", classes);
    s.finding("class dims", &dec.class_dims);
    s.assert(
        "class dims divisible by |K| and |L|",
        dec.class_dims
            .iter()
            .all(|d| d % k.subdim() == 0 && d % l.subdim() == 0),
        "",
    );

    let s = report.section("eigenvectors");
    if let Some(r) = s.check("Λ_K a_i Λ_L = |K||L| a_i", verify_eigen(pair, &dec)) {
        s.finding("residuals", r);
        s.assert("Λ_K a_i Λ_L = |K||L| a_i", true, "");
    }

    let s = report.section("formula");
    let mut worst: f64 = 0.0;
    let mut worst_one: Option<f64> = None;
    let mut ok = true;
    for d in 0..pair.ring_hstar().len() {
        match verify_formula(pair, &dec, d) {
            Ok(r) => {
                worst = worst.max(r.two_sided);
                if let Some(o) = r.one_sided {
                    worst_one = Some(worst_one.unwrap_or(0.0).max(o));
                }
            }
            Err(e) => {
                ok = s.assert("formula", false, e.to_string()) && ok;
            }
        }
    }
    s.finding("max residual", worst);
    if let Some(o) = worst_one {
        s.finding("max one-sided residual", o);
    }
    if ok {
        s.assert("formula holds for every d", true, "");
    }

    let s = report.section("dimension identity");
    if let Some(d) = s.check("|L|/|L∩K| = |LK|/|K|", dims_identity(pair, &k, &l)) {
        s.finding("|L|/|L∩K|", d.left);
        s.finding("|LK|/|K|", d.right);
        s.assert("|L|/|L∩K| = |LK|/|K|", true, "");
    }
    report.finish()
}

/// Builds `kG` (or `k^G` when `dual`) for a group.
pub fn build_group_pair(group: &GroupTable, seed: u64, tol: Tolerance, dual: bool) -> Result<HopfPair> {
    let gi = GroupInstance::new(group.clone(), seed, tol)?;
    Ok(if dual { gi.pair.dualize() } else { gi.pair })
}

/// Subgroup pairs used by the double-coset and Mackey checks: all pairs for
/// small subgroup lattices, otherwise a seeded sample.
pub fn subgroup_pairs(subgroups: &[Vec<usize>], seed: u64) -> Vec<(usize, usize)> {
    let n = subgroups.len();
    if n <= EXHAUSTIVE_SUBGROUPS {
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLED_PAIRS)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect()
    }
}

fn set_of_sets(v: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    v.iter().cloned().collect()
}

/// Cross-checks every analysis on `kG` and `k^G` against the classical oracle.
pub fn oracle_compare(group: &GroupTable, seed: u64, tol: Tolerance) -> Result<Report> {
    let gi = GroupInstance::new(group.clone(), seed, tol)?;
    let pair = &gi.pair;
    let dual = pair.dualize();
    let oracle = &gi.oracle;
    let table = &gi.table;
    let mut report = Report::new(group.name(), "oracle-compare");

    let s = report.section("validation");
    s.finding("order", group.order());
    s.finding("irreducibles", table.len());
    s.finding("character degrees", &table.degrees);
    s.finding("orthogonality residual", table.orthogonality_residual());
    s.assert("kG invariants", pair.violations().is_empty(), "kG violates invariants");
    s.assert("k^G invariants", dual.violations().is_empty(), "k^G violates invariants");
    s.assert("dualize is an involution", dual.dualize() == *pair, "");

    let s = report.section("kernels and centers");
    let mut mismatches = Vec::new();
    for chi in 0..table.len() {
        let x = pair.irreducible(Side::H, chi);
        let values = table.element_values(chi);
        let ker = s.check(format!("ker {}", table.labels[chi]), kernel_of(pair, &x));
        let z = s.check(format!("z {}", table.labels[chi]), z_of(pair, &x));
        if let (Some(ker), Some(z)) = (ker, z) {
            if ker.members() != oracle.kernel(&values).as_slice() {
                mismatches.push(format!("ker {}", table.labels[chi]));
            }
            if z.members() != oracle.center_set(&values).as_slice() {
                mismatches.push(format!("z {}", table.labels[chi]));
            }
        }
    }
    for g in 0..group.order() {
        match closure_generate(pair, &[g]) {
            Ok(k) if k.members() == oracle.generated(&[g]).as_slice() => {}
            _ => mismatches.push(format!("⟨{}⟩", group.label(g))),
        }
    }
    s.assert("ker, z and generation match the oracle", mismatches.is_empty(), mismatches.join("; "));

    let subgroups = oracle.subgroups()?;
    let normal_subgroups = oracle.normal_subgroups()?;
    let s = report.section("normality and cores");
    s.finding("subgroups", subgroups.len());
    s.finding("normal subgroups", normal_subgroups.len());
    let mut bad = Vec::new();
    let mut longest = 0;
    for sub in &subgroups {
        let k = match closure_generate(pair, sub) {
            Ok(k) if k.members() == sub.as_slice() => k,
            _ => {
                bad.push(format!("closure of {sub:?}"));
                continue;
            }
        };
        match is_normal(pair, &k) {
            Ok(n) if n == oracle.is_normal(sub) => {}
            Ok(_) => bad.push(format!("normality of {sub:?}")),
            Err(e) => bad.push(e.to_string()),
        }
        match core_trace(pair, &k) {
            Ok(t) => {
                longest = longest.max(t.iterations());
                if t.core().members() != oracle.group_core(sub).as_slice() {
                    bad.push(format!("core of {sub:?}"));
                }
            }
            Err(e) => bad.push(e.to_string()),
        }
    }
    s.finding("longest core iteration", longest);
    s.assert("normality and cores match the oracle", bad.is_empty(), bad.join("; "));

    let s = report.section("normal lattice");
    if let Some(l) = s.check("kG lattice", normal_lattice(pair)) {
        let ours: Vec<Vec<usize>> = l.members.iter().map(|k| k.members().to_vec()).collect();
        s.finding("kG subdims", l.members.iter().map(ClosedSubset::subdim).collect::<Vec<_>>());
        s.assert(
            "kG lattice = normal subgroups",
            set_of_sets(&ours) == set_of_sets(&normal_subgroups),
            format!("{} vs {}", ours.len(), normal_subgroups.len()),
        );
    }
    if let Some(l) = s.check("k^G lattice", normal_lattice(&dual)) {
        s.finding("k^G count", l.members.len());
        s.assert(
            "k^G lattice size = number of normal subgroups",
            l.members.len() == normal_subgroups.len(),
            format!("{} vs {}", l.members.len(), normal_subgroups.len()),
        );
    }
    s.check("kG f_i route = core route", maximal_normals_from_f(pair));
    s.check("k^G f_i route = core route", maximal_normals_from_f(&dual));

    let s = report.section("central partitions");
    let classes = set_of_sets(&table.classes);
    let singletons: BTreeSet<Vec<usize>> = (0..table.len()).map(|i| vec![i]).collect();
    for (p, name, hstar_expect, h_expect) in [
        (pair, "kG", &classes, &singletons),
        (&dual, "k^G", &singletons, &classes),
    ] {
        let ys = s.check(format!("{name} Irr(H*) partition"), class_partition(p, Side::HStar));
        let xs = s.check(format!("{name} Irr(H) partition"), class_partition(p, Side::H));
        if let (Some(ys), Some(xs)) = (ys, xs) {
            s.assert(
                format!("{name} Irr(H*) blocks"),
                set_of_sets(&ys.blocks) == *hstar_expect,
                format!("{:?}", ys.blocks),
            );
            s.assert(
                format!("{name} Irr(H) blocks"),
                set_of_sets(&xs.blocks) == *h_expect,
                format!("{:?}", xs.blocks),
            );
            s.assert(format!("{name} |I| = |J|"), ys.blocks.len() == xs.blocks.len(), "");
        }
    }

    let s = report.section("central grouplikes");
    if let Some(c) = s.check("kG routes agree", central_grouplikes(pair)) {
        s.finding("kG", pair.labels_of(Side::HStar, &c));
        s.assert("kG central grouplikes = Z(G)", c == oracle.center(), "");
    }
    if let Some(c) = s.check("k^G routes agree", central_grouplikes(&dual)) {
        let linear: Vec<usize> = (0..table.len()).filter(|&i| table.degrees[i] == 1).collect();
        s.assert("k^G central grouplikes = linear characters", c == linear, "");
    }

    let s = report.section("theorem checks");
    if let Some(p) = s.check("Irr(H) partition", class_partition(pair, Side::H)) {
        for i in 0..p.blocks.len() {
            s.check(
                format!("block {}", pair.labels_of(Side::H, &p.blocks[i]).join("+")),
                center_theorem_checks(pair, &p, i, Some(gi.backing())),
            );
        }
        s.assert("checks (a)-(e) on every block", true, "");
    }

    let pairs = subgroup_pairs(&subgroups, seed);
    let s = report.section("double cosets");
    s.finding("subgroup pairs", pairs.len());
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    for &(a, b) in &pairs {
        let (k0, l0) = (&subgroups[a], &subgroups[b]);
        match double_coset_check(&gi, k0, l0) {
            Ok(r) => worst = worst.max(r),
            Err(e) => bad.push(format!("{k0:?},{l0:?}: {e}")),
        }
    }
    s.finding("max residual", worst);
    s.assert("double cosets match the oracle", bad.is_empty(), bad.join("; "));

    let s = report.section("mackey");
    let mut bad = Vec::new();
    for &(a, b) in &pairs {
        let (k0, l0) = (&subgroups[a], &subgroups[b]);
        if let Err(e) = mackey_check(&gi, k0, l0, seed, &tol) {
            bad.push(format!("{k0:?},{l0:?}: {e}"));
        }
    }
    s.assert("Mackey identities hold", bad.is_empty(), bad.join("; "));

    Ok(report.finish())
}

/// Double-coset classes, eigenvector and formula residuals, and the dimension
/// identity for a subgroup pair of a `kG` instance. Returns the worst residual.
pub fn double_coset_check(gi: &GroupInstance, k0: &[usize], l0: &[usize]) -> Result<f64> {
    let pair = &gi.pair;
    let k = gi.subset(k0)?;
    let l = gi.subset(l0)?;
    let dec = coset_classes(pair, &k, &l)?;
    let expected = set_of_sets(&gi.oracle.double_cosets(k0, l0));
    if set_of_sets(&dec.classes) != expected {
        return Err(Error::RouteDisagreement {
            what: "double cosets".into(),
            detail: format!("{:?} vs oracle {:?}", dec.classes, expected),
        });
    }
    let mut worst = verify_eigen(pair, &dec)?.into_iter().fold(0.0, f64::max);
    for d in 0..pair.ring_hstar().len() {
        let r = verify_formula(pair, &dec, d)?;
        worst = worst.max(r.two_sided).max(r.one_sided.unwrap_or(0.0));
    }
    dims_identity(pair, &k, &l)?;
    Ok(worst)
}

/// `|L|/|L∩K| = |LK|/|K|` on the group and the Mackey character identity for
/// every irreducible module of `K`.
pub fn mackey_check(
    gi: &GroupInstance,
    k0: &[usize],
    l0: &[usize],
    seed: u64,
    tol: &Tolerance,
) -> Result<()> {
    let o = &gi.oracle;
    let lk = o.product_set(l0, k0);
    let meet = crate::group::GroupOracle::intersection(l0, k0);
    if l0.len() * k0.len() != lk.len() * meet.len() {
        return Err(Error::RouteDisagreement {
            what: "Mackey dimensions".into(),
            detail: format!(
                "|L|/|L∩K| = {}/{} but |LK|/|K| = {}/{}",
                l0.len(),
                meet.len(),
                lk.len(),
                k0.len()
            ),
        });
    }
    for m in o.mackey_check(k0, l0, seed, tol)? {
        let scale = m.lhs.iter().map(|c| c.norm()).fold(1.0, f64::max);
        if m.residual > tol.scaled(scale) {
            return Err(Error::Residual {
                what: format!("Mackey identity for {}", m.module),
                residual: m.residual,
                tolerance: tol.scaled(scale),
            });
        }
    }
    Ok(())
}
