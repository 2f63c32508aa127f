//! Normality of Hopf subalgebras through induced trivial characters, the core
//! fixed-point iteration, central grouplikes and the normal-subalgebra lattice.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::Side;
use crate::pair::{CharVector, HopfPair};
use crate::subalgebra::{intersect, kernel_of, z_of, ClosedSubset};

/// Multiplicities of each `χ ∈ Irr(H)` in `ε↑_K^H`, i.e. `χ(Λ_K)` for the
/// idempotent integral of `K`.
pub fn induced_trivial_multiplicities(pair: &HopfPair, k: &ClosedSubset) -> Result<Vec<u64>> {
    let h = pair.ring_h();
    let hs = pair.ring_hstar();
    let tol = pair.tol();
    let mut out = Vec::with_capacity(h.len());
    for chi in 0..h.len() {
        let raw: crate::C64 = k
            .members()
            .iter()
            .map(|&d| pair.eval(chi, d) * hs.degree(d) as f64)
            .sum::<crate::C64>()
            / k.subdim() as f64;
        let m = match tol.snap(raw.re) {
            Some(m) if raw.im.abs() <= tol.int_tol => m,
            _ => {
                return Err(Error::NonIntegral {
                    what: format!("multiplicity of {} in the induced trivial character", h.label(chi)),
                    value: raw.re,
                })
            }
        };
        if m < 0 {
            return Err(Error::NonIntegral {
                what: format!("negative multiplicity of {}", h.label(chi)),
                value: raw.re,
            });
        }
        out.push(m as u64);
    }
    let total: u64 = out.iter().enumerate().map(|(chi, m)| m * h.degree(chi)).sum();
    let expected = pair.dim() / k.subdim();
    if total != expected {
        return Err(Error::QuotientDimension {
            found: total,
            expected,
        });
    }
    Ok(out)
}

pub fn induced_trivial_character(pair: &HopfPair, k: &ClosedSubset) -> Result<CharVector> {
    let m = induced_trivial_multiplicities(pair, k)?;
    let ints: Vec<i64> = m.into_iter().map(|x| x as i64).collect();
    Ok(CharVector::from_ints(Side::H, &ints))
}

/// `K` is normal iff the kernel of `ε↑_K^H` is `K` itself. The equivalent
/// multiplicity criterion (every multiplicity is `0` or `χ(1)`) is checked
/// alongside and a disagreement is an error.
pub fn is_normal(pair: &HopfPair, k: &ClosedSubset) -> Result<bool> {
    let m = induced_trivial_multiplicities(pair, k)?;
    let by_kernel = kernel_of(pair, &to_vector(&m))? == *k;
    let h = pair.ring_h();
    let by_multiplicity = m
        .iter()
        .enumerate()
        .all(|(chi, &x)| x == 0 || x == h.degree(chi));
    if by_kernel != by_multiplicity {
        return Err(Error::NormalityMismatch {
            members: k.members().to_vec(),
            kernel: by_kernel,
            multiplicity: by_multiplicity,
        });
    }
    Ok(by_kernel)
}

fn to_vector(m: &[u64]) -> CharVector {
    let ints: Vec<i64> = m.iter().map(|&x| x as i64).collect();
    CharVector::from_ints(Side::H, &ints)
}

/// Irreducibles of `H` whose kernel contains `K`; for normal `K` these are the
/// irreducible representations of `H//K`.
pub fn quotient_irr(pair: &HopfPair, k: &ClosedSubset, require_normal: bool) -> Result<Vec<usize>> {
    let h = pair.ring_h();
    let mut out = Vec::new();
    for chi in 0..h.len() {
        if k.is_subset_of(&kernel_of(pair, &pair.irreducible(Side::H, chi))?) {
            out.push(chi);
        }
    }
    if require_normal {
        let found: u64 = out.iter().map(|&chi| h.degree(chi).pow(2)).sum();
        let expected = pair.dim() / k.subdim();
        if found != expected {
            return Err(Error::QuotientDimension { found, expected });
        }
    }
    Ok(out)
}

/// The core iteration `K_{s+1} = ker(ε↑_{K_s}^H)` with every intermediate subset.
#[derive(Debug, Clone, Serialize)]
pub struct CoreTrace {
    pub steps: Vec<ClosedSubset>,
}

impl CoreTrace {
    pub fn core(&self) -> &ClosedSubset {
        self.steps.last().expect("trace starts with K")
    }

    /// Number of kernel computations performed before the fixed point was seen.
    pub fn iterations(&self) -> usize {
        self.steps.len()
    }
}

pub fn core_trace(pair: &HopfPair, k: &ClosedSubset) -> Result<CoreTrace> {
    let bound = pair.ring_hstar().len();
    let mut steps = vec![k.clone()];
    loop {
        let current = steps.last().expect("nonempty");
        let next = kernel_of(pair, &induced_trivial_character(pair, current)?)?;
        if next == *current {
            break;
        }
        if steps.len() >= bound {
            return Err(Error::CoreDiverged(bound));
        }
        steps.push(next);
    }
    let trace = CoreTrace { steps };
    let core = trace.core();
    if !core.is_subset_of(k) {
        return Err(Error::RouteDisagreement {
            what: "core".into(),
            detail: format!("{:?} is not contained in {:?}", core.members(), k.members()),
        });
    }
    if !is_normal(pair, core)? {
        return Err(Error::RouteDisagreement {
            what: "core".into(),
            detail: format!("fixed point {:?} is not normal", core.members()),
        });
    }
    Ok(trace)
}

/// Largest normal Hopf subalgebra contained in `K`.
pub fn core(pair: &HopfPair, k: &ClosedSubset) -> Result<ClosedSubset> {
    Ok(core_trace(pair, k)?.core().clone())
}

/// Central grouplike elements of `H`, computed as the grouplikes of modulus
/// one on every irreducible and, independently, as `∩_χ z_χ`.
pub fn central_grouplikes(pair: &HopfPair) -> Result<Vec<usize>> {
    let h = pair.ring_h();
    let hs = pair.ring_hstar();
    let tol = pair.tol();
    let direct: Vec<usize> = (0..hs.len())
        .filter(|&d| hs.degree(d) == 1)
        .filter(|&d| {
            (0..h.len()).all(|chi| {
                let target = h.degree(chi) as f64;
                (pair.eval(chi, d).norm() - target).abs() <= tol.scaled(target)
            })
        })
        .collect();
    let mut meet = ClosedSubset::full(pair);
    for chi in 0..h.len() {
        meet = intersect(pair, &meet, &z_of(pair, &pair.irreducible(Side::H, chi))?)?;
    }
    if meet.members() != direct.as_slice() {
        return Err(Error::RouteDisagreement {
            what: "central grouplikes".into(),
            detail: format!("scan {:?} vs intersection {:?}", direct, meet.members()),
        });
    }
    Ok(direct)
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalLattice {
    /// `core(ker χ)` over the irreducibles, deduplicated.
    pub generators: Vec<ClosedSubset>,
    /// All intersections of generators, ordered by dimension.
    pub members: Vec<ClosedSubset>,
}

pub fn normal_lattice(pair: &HopfPair) -> Result<NormalLattice> {
    let mut generators = BTreeSet::new();
    for chi in 0..pair.ring_h().len() {
        let k = kernel_of(pair, &pair.irreducible(Side::H, chi))?;
        generators.insert(core(pair, &k)?);
    }
    let mut members: BTreeSet<ClosedSubset> = generators.clone();
    members.insert(ClosedSubset::full(pair));
    loop {
        let current: Vec<ClosedSubset> = members.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[..i] {
                if members.insert(intersect(pair, a, b)?) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut members: Vec<ClosedSubset> = members.into_iter().collect();
    members.sort_by(|a, b| a.subdim().cmp(&b.subdim()).then(a.cmp(b)));
    for m in &members {
        if !is_normal(pair, m)? {
            return Err(Error::RouteDisagreement {
                what: "normal lattice".into(),
                detail: format!("{:?} fails the normality test", m.members()),
            });
        }
    }
    Ok(NormalLattice {
        generators: sorted(generators),
        members,
    })
}

fn sorted(set: BTreeSet<ClosedSubset>) -> Vec<ClosedSubset> {
    let mut v: Vec<ClosedSubset> = set.into_iter().collect();
    v.sort_by(|a, b| a.subdim().cmp(&b.subdim()).then(a.cmp(b)));
    v
}
