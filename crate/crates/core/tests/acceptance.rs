//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines are always shown
//! by `cargo test`.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use hopfkernel::analysis::{double_coset_check, mackey_check, subgroup_pairs};
use hopfkernel::central::{center_theorem_checks, central_subspace, class_partition, maximal_normals_from_f};
use hopfkernel::cosets::{coset_classes, dims_identity};
use hopfkernel::group::{bundled_path, character_table, GroupInstance, GroupTable, BUNDLED, DEFAULT_SEED};
use hopfkernel::instance::InstanceFile;
use hopfkernel::normality::{central_grouplikes, core_trace, induced_trivial_multiplicities, is_normal, normal_lattice};
use hopfkernel::subalgebra::{closure_generate, kernel_of, z_of, ClosedSubset};
use hopfkernel::{CharVector, HopfPair, Side, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type SubgroupPairs = Vec<(Vec<usize>, Vec<usize>)>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn instance(name: &str) -> GroupInstance {
    GroupInstance::load(bundled_path(name), DEFAULT_SEED, Tolerance::default()).unwrap()
}

fn set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

fn partition(blocks: &[Vec<usize>]) -> BTreeSet<BTreeSet<usize>> {
    blocks.iter().map(|b| set(b)).collect()
}

const LATTICE_GROUPS: [&str; 5] = ["S3", "D4", "Q8", "A4", "S4"];

fn c1_validation() -> Outcome {
    let start = Instant::now();
    let tol = Tolerance::default();
    let mut count = 0;
    for name in BUNDLED {
        let gi = GroupInstance::load(bundled_path(name), DEFAULT_SEED, tol).map_err(|e| format!("{name}: {e}"))?;
        for pair in [gi.pair.clone(), gi.pair.dualize()] {
            // Round-trip through the document form so validation runs from scratch.
            let doc = InstanceFile::from_pair(&pair);
            let back = doc.into_pair(tol).map_err(|e| format!("{}: {e}", pair.name()))?;
            ensure(back.violations().is_empty(), || format!("{} has violations", pair.name()))?;
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{count} instances valid in {:.2?}", elapsed))
}

fn c2_kernels() -> Outcome {
    let mut checked = 0;
    for name in BUNDLED {
        let gi = instance(name);
        for chi in 0..gi.table.len() {
            let values = gi.table.element_values(chi);
            let x = gi.pair.irreducible(Side::H, chi);
            let k = kernel_of(&gi.pair, &x).map_err(|e| e.to_string())?;
            let z = z_of(&gi.pair, &x).map_err(|e| e.to_string())?;
            ensure(k.members() == gi.oracle.kernel(&values), || format!("{name} ker {chi}"))?;
            ensure(z.members() == gi.oracle.center_set(&values), || format!("{name} z {chi}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} irreducibles across {} groups", BUNDLED.len()))
}

fn c3_normality() -> Outcome {
    let mut checked = 0;
    for name in LATTICE_GROUPS {
        let gi = instance(name);
        for sub in gi.oracle.subgroups().map_err(|e| e.to_string())? {
            let k = closure_generate(&gi.pair, &sub).map_err(|e| e.to_string())?;
            ensure(k.members() == sub, || format!("{name}: closure of {sub:?} grew"))?;
            // is_normal itself fails on any disagreement between the two criteria.
            let a = is_normal(&gi.pair, &k).map_err(|e| e.to_string())?;
            let m = induced_trivial_multiplicities(&gi.pair, &k).map_err(|e| e.to_string())?;
            let b = m.iter().enumerate().all(|(c, &n)| n == 0 || n == gi.pair.ring_h().degree(c));
            ensure(a == b, || format!("{name}: criteria disagree on {sub:?}"))?;
            ensure(a == gi.oracle.is_normal(&sub), || format!("{name}: {sub:?} normality"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} subgroups of {}", LATTICE_GROUPS.join(", ")))
}

fn c4_core() -> Outcome {
    let mut checked = 0;
    let mut longest = 0;
    for name in LATTICE_GROUPS {
        let gi = instance(name);
        let bound = gi.pair.ring_hstar().len();
        for sub in gi.oracle.subgroups().map_err(|e| e.to_string())? {
            let k = gi.subset(&sub).map_err(|e| e.to_string())?;
            let trace = core_trace(&gi.pair, &k).map_err(|e| e.to_string())?;
            ensure(trace.core().members() == gi.oracle.group_core(&sub), || {
                format!("{name}: core of {sub:?}")
            })?;
            ensure(trace.iterations() <= bound, || format!("{name}: bound exceeded"))?;
            longest = longest.max(trace.iterations());
            checked += 1;
        }
    }
    ensure(longest <= 3, || format!("iteration length {longest}"))?;
    Ok(format!("{checked} cores, longest iteration {longest}"))
}

fn c5_lattice() -> Outcome {
    let s4 = instance("S4");
    let dims: Vec<u64> = normal_lattice(&s4.pair)
        .map_err(|e| e.to_string())?
        .members
        .iter()
        .map(ClosedSubset::subdim)
        .collect();
    ensure(dims == [1, 4, 12, 24], || format!("kS4 lattice {dims:?}"))?;
    let dual = normal_lattice(&s4.pair.dualize()).map_err(|e| e.to_string())?;
    let normals = s4.oracle.normal_subgroups().map_err(|e| e.to_string())?.len();
    ensure(dual.members.len() == 4 && normals == 4, || {
        format!("k^S4 lattice has {} members", dual.members.len())
    })?;
    for name in BUNDLED {
        let gi = instance(name);
        for pair in [&gi.pair, &gi.pair.dualize()] {
            // Raises on any mismatch between the two routes.
            maximal_normals_from_f(pair).map_err(|e| format!("{}: {e}", pair.name()))?;
        }
    }
    Ok("kS4 {1,4,12,24}; k^S4 has 4; f-route = core route on 18 instances".into())
}

fn c6_partitions() -> Outcome {
    for name in ["S3", "D4", "Q8", "A4"] {
        let gi = instance(name);
        let classes = partition(&gi.table.classes);
        let singles = partition(&(0..gi.table.len()).map(|c| vec![c]).collect::<Vec<_>>());
        let dual = gi.pair.dualize();
        for (pair, want_hstar, want_h) in [
            (&gi.pair, &classes, &singles),
            (&dual, &singles, &classes),
        ] {
            let j = class_partition(pair, Side::HStar).map_err(|e| e.to_string())?;
            let i = class_partition(pair, Side::H).map_err(|e| e.to_string())?;
            ensure(&partition(&j.blocks) == want_hstar, || format!("{}: H* blocks", pair.name()))?;
            ensure(&partition(&i.blocks) == want_h, || format!("{}: H blocks", pair.name()))?;
            ensure(i.blocks.len() == j.blocks.len(), || format!("{}: |I| != |J|", pair.name()))?;
            for side in [Side::H, Side::HStar] {
                let q = central_subspace(pair, side).map_err(|e| e.to_string())?;
                ensure(q.min_eigenvalue > -1e-8 * q.norm.max(1.0), || {
                    format!("{}: min eigenvalue {}", pair.name(), q.min_eigenvalue)
                })?;
            }
        }
    }
    Ok("blocks match classes/singletons, duals swap, Q PSD".into())
}

fn c7_grouplikes() -> Outcome {
    let mut seen = Vec::new();
    for (name, want) in [("S3", 1), ("Q8", 2), ("D4", 2)] {
        let gi = instance(name);
        // Both routes are compared inside; a disagreement is an error.
        let g = central_grouplikes(&gi.pair).map_err(|e| e.to_string())?;
        ensure(g.len() == want, || format!("{name}: {} central grouplikes", g.len()))?;
        ensure(set(&g) == set(&gi.oracle.center()), || format!("{name}: not the center"))?;
        seen.push(format!("k{name}={}", g.len()));
    }
    for name in BUNDLED {
        let gi = instance(name);
        central_grouplikes(&gi.pair.dualize()).map_err(|e| e.to_string())?;
    }
    Ok(seen.join(", "))
}

fn coset_pairs() -> Vec<(GroupInstance, SubgroupPairs)> {
    let mut out = Vec::new();
    for name in ["S3", "S4"] {
        let gi = instance(name);
        let subs = gi.oracle.subgroups().unwrap();
        let pairs = subgroup_pairs(&subs, DEFAULT_SEED)
            .into_iter()
            .map(|(a, b)| (subs[a].clone(), subs[b].clone()))
            .collect();
        out.push((gi, pairs));
    }
    out
}

fn c8_double_cosets() -> Outcome {
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for (gi, pairs) in coset_pairs() {
        for (k0, l0) in pairs {
            let r = double_coset_check(&gi, &k0, &l0).map_err(|e| e.to_string())?;
            ensure(r < 1e-8, || format!("residual {r:e}"))?;
            worst = worst.max(r);
            let k = gi.subset(&k0).map_err(|e| e.to_string())?;
            let l = gi.subset(&l0).map_err(|e| e.to_string())?;
            let dec = coset_classes(&gi.pair, &k, &l).map_err(|e| e.to_string())?;
            ensure(
                dec.class_dims.iter().all(|&d| d % k.subdim() == 0 && d % l.subdim() == 0),
                || format!("class dims {:?}", dec.class_dims),
            )?;
            let id = dims_identity(&gi.pair, &k, &l).map_err(|e| e.to_string())?;
            ensure(id.left == id.right, || format!("{id:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} subgroup pairs, worst residual {worst:.1e}"))
}

fn c9_mackey() -> Outcome {
    let tol = Tolerance::default();
    let mut checked = 0;
    for (gi, pairs) in coset_pairs() {
        for (k0, l0) in pairs {
            mackey_check(&gi, &k0, &l0, DEFAULT_SEED, &tol).map_err(|e| e.to_string())?;
            checked += 1;
        }
    }
    Ok(format!("{checked} subgroup pairs"))
}

fn c10_theorem_checks() -> Outcome {
    let mut blocks = 0;
    for name in BUNDLED {
        let gi = instance(name);
        let part = class_partition(&gi.pair, Side::H).map_err(|e| e.to_string())?;
        for i in 0..part.blocks.len() {
            let r = center_theorem_checks(&gi.pair, &part, i, Some(gi.backing()))
                .map_err(|e| format!("{name} block {i}: {e}"))?;
            ensure(r.oracle_checked, || format!("{name}: oracle not consulted"))?;
            blocks += 1;
        }
    }
    Ok(format!("items (a)-(e) on {blocks} blocks"))
}

fn c11_burnside() -> Outcome {
    let tol = Tolerance::default();
    for name in ["C2", "S3", "A4", "S4"] {
        let g = GroupTable::load(bundled_path(name)).map_err(|e| e.to_string())?;
        let t = character_table(&g, DEFAULT_SEED, &tol).map_err(|e| e.to_string())?;
        let r = t.orthogonality_residual();
        ensure(r < 1e-8, || format!("{name}: orthogonality residual {r:e}"))?;
        ensure(t.degrees.iter().map(|d| d * d).sum::<u64>() == g.order() as u64, || {
            format!("{name}: degrees {:?}", t.degrees)
        })?;
    }

    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_hopfkernel");
    let dir = std::env::temp_dir().join(format!("hopfkernel-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let out = dir.join("kS4.json");
    let group = bundled_path("S4");
    let built = Command::new(bin)
        .args(["build-group", group.to_str().unwrap(), "-o", out.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(built.status.success(), || format!("build-group exited {}", built.status))?;
    let compared = Command::new(bin)
        .args(["oracle-compare", group.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(compared.status.success(), || {
        format!("oracle-compare exited {}", compared.status)
    })?;
    let validated = Command::new(bin)
        .args(["validate", out.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(validated.status.success(), || "built kS4 does not validate".into())?;
    let _ = std::fs::remove_dir_all(&dir);
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("pipeline took {elapsed:?}"))?;
    Ok(format!("C2, S3, A4, S4 tables; S4 pipeline in {elapsed:.2?}"))
}

fn random_genuine(rng: &mut ChaCha8Rng, pair: &HopfPair) -> CharVector {
    let n = pair.ring_h().len();
    let mut c: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.4) { rng.gen_range(1..3) } else { 0 }).collect();
    if c.iter().all(|&x| x == 0) {
        c[rng.gen_range(0..n)] = 1;
    }
    CharVector::from_ints(Side::H, &c)
}

fn c12_properties() -> Outcome {
    let start = Instant::now();
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let pairs: Vec<HopfPair> = BUNDLED
        .iter()
        .flat_map(|n| {
            let p = instance(n).pair;
            [p.dualize(), p]
        })
        .collect();
    let docs: Vec<InstanceFile> = pairs.iter().map(InstanceFile::from_pair).collect();
    let mut cases = 0;

    for _ in 0..400 {
        let doc = &docs[rng.gen_range(0..docs.len())];
        let mut bad = doc.clone();
        let hstar = rng.gen_bool(0.5);
        let (fusion, n) = if hstar {
            (&mut bad.fusion_hstar, doc.irr_hstar.len())
        } else {
            (&mut bad.fusion_h, doc.irr_h.len())
        };
        let (i, j, k) = (rng.gen_range(0..n) as u64, rng.gen_range(0..n) as u64, rng.gen_range(0..n) as u64);
        match fusion.iter_mut().find(|q| q[0] == i && q[1] == j && q[2] == k) {
            Some(q) if rng.gen_bool(0.5) => q[3] -= 1,
            Some(q) => q[3] += 1,
            None => fusion.push([i, j, k, 1]),
        }
        fusion.retain(|q| q[3] > 0);
        ensure(bad.into_pair(tol).is_err(), || {
            format!("{}: perturbed N[{i},{j}]^{k} accepted", doc.name)
        })?;
        cases += 1;
    }

    for _ in 0..400 {
        let pair = &pairs[rng.gen_range(0..pairs.len())];
        let x = random_genuine(&mut rng, pair);
        let k = kernel_of(pair, &x).map_err(|e| e.to_string())?;
        let z = z_of(pair, &x).map_err(|e| e.to_string())?;
        ensure(k.is_subset_of(&z), || format!("{}: ker ⊄ z", pair.name()))?;
        let x2 = pair.fuse(&x, &x).map_err(|e| e.to_string())?;
        let k2 = kernel_of(pair, &x2).map_err(|e| e.to_string())?;
        ensure(k.is_subset_of(&k2), || format!("{}: ker x ⊄ ker x²", pair.name()))?;
        cases += 1;
    }

    for _ in 0..400 {
        let pair = &pairs[rng.gen_range(0..pairs.len())];
        let n = pair.ring_hstar().len();
        let seeds: Vec<usize> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(0..n)).collect();
        let k = closure_generate(pair, &seeds).map_err(|e| e.to_string())?;
        ensure(pair.dim() % k.subdim() == 0, || format!("{}: subdim {}", pair.name(), k.subdim()))?;
        cases += 1;
    }

    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{cases} randomized cases in {elapsed:.2?}"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 12] = [
        ("validation suite", c1_validation),
        ("kernel correctness", c2_kernels),
        ("normality", c3_normality),
        ("core", c4_core),
        ("normal lattice", c5_lattice),
        ("central partitions", c6_partitions),
        ("central grouplikes", c7_grouplikes),
        ("double cosets", c8_double_cosets),
        ("mackey", c9_mackey),
        ("theorem checks", c10_theorem_checks),
        ("burnside", c11_burnside),
        ("property tests", c12_properties),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", n + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
