//! Hopf subalgebras of `H`, represented by the closed subsets of `Irr(H*)`
//! that span them, and the kernels and centers of characters.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::Side;
use crate::pair::{CharVector, HopfPair};

/// A subset of `Irr(H*)` containing the unit and closed under fusion and
/// duality; the simple subcoalgebras of a Hopf subalgebra of `H`.
///
/// Members are kept sorted, so equality is set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClosedSubset {
    members: Vec<usize>,
    subdim: u64,
}

impl ClosedSubset {
    /// Checks closure and `subdim | dim` for an arbitrary index set.
    pub fn from_members(pair: &HopfPair, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let ring = pair.ring_hstar();
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&d| d >= ring.len()) {
            return Err(Error::Structural(format!("index {bad} out of range")));
        }
        let mut inside = vec![false; ring.len()];
        for &d in &members {
            inside[d] = true;
        }
        let closed = inside.first() == Some(&true)
            && members.iter().all(|&a| {
                inside[ring.dual(a)]
                    && members
                        .iter()
                        .all(|&b| ring.product(a, b).iter().all(|&(k, _)| inside[k]))
            });
        if !closed {
            return Err(Error::NotClosed(members));
        }
        let subdim = members.iter().map(|&d| ring.degree(d).pow(2)).sum();
        if pair.dim() % subdim != 0 {
            return Err(Error::Indivisible {
                members,
                subdim,
                dim: pair.dim(),
            });
        }
        Ok(ClosedSubset { members, subdim })
    }

    /// The unit subalgebra `k1`.
    pub fn unit(pair: &HopfPair) -> Self {
        let _ = pair;
        ClosedSubset {
            members: vec![0],
            subdim: 1,
        }
    }

    /// All of `Irr(H*)`, i.e. `H` itself.
    pub fn full(pair: &HopfPair) -> Self {
        ClosedSubset {
            members: (0..pair.ring_hstar().len()).collect(),
            subdim: pair.dim(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn subdim(&self) -> u64 {
        self.subdim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, d: usize) -> bool {
        self.members.binary_search(&d).is_ok()
    }

    pub fn is_subset_of(&self, other: &ClosedSubset) -> bool {
        self.members.iter().all(|&d| other.contains(d))
    }

    /// `Λ_K = Σ_{d∈K} ε(d)·d`, normalized so that `ε(Λ_K) = |K|`.
    pub fn integral(&self, pair: &HopfPair) -> CharVector {
        let ring = pair.ring_hstar();
        CharVector::weighted_sum(Side::HStar, ring.len(), &self.members, |d| {
            ring.degree(d) as f64
        })
    }

    /// The idempotent integral `Λ_K / |K|` (`ε = 1`).
    pub fn idempotent_integral(&self, pair: &HopfPair) -> CharVector {
        self.integral(pair).scale(1.0 / self.subdim as f64)
    }

    pub fn labels(&self, pair: &HopfPair) -> Vec<String> {
        pair.labels_of(Side::HStar, &self.members)
    }
}

/// Deviation-based membership with a marginal band: within `eps` is in,
/// beyond `10·eps` is out, anything between is an error.
fn classify(index: usize, deviation: f64, tol: f64) -> Result<bool> {
    if deviation <= tol {
        Ok(true)
    } else if deviation <= 10.0 * tol {
        Err(Error::Marginal { index, deviation })
    } else {
        Ok(false)
    }
}

fn degree_of(pair: &HopfPair, x: &CharVector) -> Result<f64> {
    let counts = x.genuine(pair.tol())?;
    Ok(counts
        .iter()
        .enumerate()
        .map(|(chi, &n)| (n * pair.ring_h().degree(chi)) as f64)
        .sum())
}

fn select(
    pair: &HopfPair,
    x: &CharVector,
    deviation: impl Fn(crate::C64, f64) -> f64,
) -> Result<ClosedSubset> {
    if x.side() != Side::H {
        return Err(Error::SideMismatch {
            expected: Side::H,
            found: x.side(),
        });
    }
    let x1 = degree_of(pair, x)?;
    let values = pair.evaluate_on_basis(x)?;
    let ring = pair.ring_hstar();
    let mut members = Vec::new();
    for (d, v) in values.into_iter().enumerate() {
        let target = x1 * ring.degree(d) as f64;
        if classify(d, deviation(v, target), pair.tol().scaled(target))? {
            members.push(d);
        }
    }
    ClosedSubset::from_members(pair, members)
}

/// `ker χ = {d : χ(d) = ε(d)χ(1)}`.
pub fn kernel_of(pair: &HopfPair, x: &CharVector) -> Result<ClosedSubset> {
    select(pair, x, |v, target| (v - target).norm())
}

/// `z_χ = {d : |χ(d)| = ε(d)χ(1)}`.
pub fn z_of(pair: &HopfPair, x: &CharVector) -> Result<ClosedSubset> {
    select(pair, x, |v, target| (v.norm() - target).abs())
}

/// Smallest closed subset containing `seed`.
pub fn closure_generate(pair: &HopfPair, seed: &[usize]) -> Result<ClosedSubset> {
    let ring = pair.ring_hstar();
    let n = ring.len();
    if let Some(&bad) = seed.iter().find(|&&d| d >= n) {
        return Err(Error::Structural(format!("index {bad} out of range")));
    }
    let mut inside = vec![false; n];
    let mut list = Vec::new();
    let add = |d: usize, inside: &mut Vec<bool>, list: &mut Vec<usize>| {
        for e in [d, ring.dual(d)] {
            if !inside[e] {
                inside[e] = true;
                list.push(e);
            }
        }
    };
    add(0, &mut inside, &mut list);
    for &d in seed {
        add(d, &mut inside, &mut list);
    }
    let mut next = 0;
    while next < list.len() {
        let a = list[next];
        let mut i = 0;
        while i <= next {
            let b = list[i];
            for (x, y) in [(a, b), (b, a)] {
                for &(k, _) in ring.product(x, y) {
                    add(k, &mut inside, &mut list);
                }
            }
            i += 1;
        }
        next += 1;
    }
    ClosedSubset::from_members(pair, list)
}

pub fn intersect(pair: &HopfPair, a: &ClosedSubset, b: &ClosedSubset) -> Result<ClosedSubset> {
    ClosedSubset::from_members(pair, a.members.iter().copied().filter(|&d| b.contains(d)))
}

pub fn join(pair: &HopfPair, a: &ClosedSubset, b: &ClosedSubset) -> Result<ClosedSubset> {
    let seed: Vec<usize> = a.members.iter().chain(&b.members).copied().collect();
    closure_generate(pair, &seed)
}

/// Irreducibles of `H` occurring in some tensor power `x^n`, `n ≥ 0`.
pub fn power_constituents(pair: &HopfPair, x: &CharVector) -> Result<Vec<usize>> {
    if x.side() != Side::H {
        return Err(Error::SideMismatch {
            expected: Side::H,
            found: x.side(),
        });
    }
    let counts = x.genuine(pair.tol())?;
    let support: Vec<usize> = (0..counts.len()).filter(|&i| counts[i] > 0).collect();
    let ring = pair.ring_h();
    let mut reached = vec![0];
    loop {
        let mut next = ring.fuse_support(&reached, &support);
        next.push(0);
        next.extend(&reached);
        next.sort_unstable();
        next.dedup();
        if next == reached {
            return Ok(reached);
        }
        reached = next;
    }
}
