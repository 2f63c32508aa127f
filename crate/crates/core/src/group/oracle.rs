//! Brute-force classical answers for group-backed instances.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{character_table, GroupTable};
use crate::error::{Error, Result};
use crate::tolerance::Tolerance;
use crate::C64;

const SUBGROUP_BOUND: usize = 60;

/// Exhaustive group-theoretic computations over a [`GroupTable`]. Subsets of
/// `G` are sorted element-index vectors.
#[derive(Debug, Clone)]
pub struct GroupOracle {
    group: GroupTable,
}

/// Both sides of `M↑_K^{LK}↓_L ≅ (M↓_{L∩K})↑^L` as characters of `L`.
#[derive(Debug, Clone, Serialize)]
pub struct MackeyOutcome {
    pub module: String,
    pub lhs: Vec<C64>,
    pub rhs: Vec<C64>,
    pub residual: f64,
}

impl GroupOracle {
    pub fn new(group: &GroupTable) -> Self {
        GroupOracle {
            group: group.clone(),
        }
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    /// Subgroup generated by `set`.
    pub fn generated(&self, set: &[usize]) -> Vec<usize> {
        let g = &self.group;
        let mut inside = vec![false; g.order()];
        let mut list = vec![0];
        inside[0] = true;
        let mut next = 0;
        while next < list.len() {
            let x = list[next];
            for &s in set {
                let y = g.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    list.push(y);
                }
            }
            next += 1;
        }
        list.sort_unstable();
        list
    }

    /// All subgroups, as joins of cyclic subgroups.
    pub fn subgroups(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.group.order();
        if n > SUBGROUP_BOUND {
            return Err(Error::OrderBound {
                what: "subgroup enumeration",
                order: n,
                bound: SUBGROUP_BOUND,
            });
        }
        let mut all: BTreeSet<Vec<usize>> = (0..n).map(|a| self.generated(&[a])).collect();
        loop {
            let current: Vec<Vec<usize>> = all.iter().cloned().collect();
            let mut grew = false;
            for (i, a) in current.iter().enumerate() {
                for b in &current[..i] {
                    let mut seed = a.clone();
                    seed.extend(b);
                    if all.insert(self.generated(&seed)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<Vec<usize>> = all.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        Ok(out)
    }

    pub fn is_normal(&self, sub: &[usize]) -> bool {
        let set: BTreeSet<usize> = sub.iter().copied().collect();
        (0..self.group.order()).all(|x| sub.iter().all(|&a| set.contains(&self.group.conjugate(a, x))))
    }

    pub fn normal_subgroups(&self) -> Result<Vec<Vec<usize>>> {
        Ok(self
            .subgroups()?
            .into_iter()
            .filter(|s| self.is_normal(s))
            .collect())
    }

    /// Intersection of all conjugates of the subgroup generated by `set`.
    pub fn group_core(&self, set: &[usize]) -> Vec<usize> {
        let sub = self.generated(set);
        let g = &self.group;
        let mut core: BTreeSet<usize> = sub.iter().copied().collect();
        for x in 0..g.order() {
            let conj: BTreeSet<usize> = sub.iter().map(|&a| g.conjugate(a, x)).collect();
            core = core.intersection(&conj).copied().collect();
        }
        core.into_iter().collect()
    }

    pub fn center(&self) -> Vec<usize> {
        let g = &self.group;
        (0..g.order())
            .filter(|&a| (0..g.order()).all(|x| g.mul(a, x) == g.mul(x, a)))
            .collect()
    }

    /// `{g : χ(g) = χ(1)}` for a class function given on elements.
    pub fn kernel(&self, values: &[C64]) -> Vec<usize> {
        let one = values[0];
        (0..values.len())
            .filter(|&g| (values[g] - one).norm() < 1e-6)
            .collect()
    }

    /// `{g : |χ(g)| = χ(1)}`.
    pub fn center_set(&self, values: &[C64]) -> Vec<usize> {
        let one = values[0].norm();
        (0..values.len())
            .filter(|&g| (values[g].norm() - one).abs() < 1e-6)
            .collect()
    }

    /// Whether `big / small` is cyclic (`small ⊴ big` assumed).
    pub fn quotient_is_cyclic(&self, big: &[usize], small: &[usize]) -> bool {
        let g = &self.group;
        let index = big.len() / small.len();
        let in_small = |x: usize| small.binary_search(&x).is_ok();
        big.iter().any(|&z| {
            let mut order = 1;
            let mut p = z;
            while !in_small(p) {
                p = g.mul(p, z);
                order += 1;
            }
            order == index
        })
    }

    /// The set product `A·B`.
    pub fn product_set(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.group.mul(x, y))
            .collect();
        set.into_iter().collect()
    }

    pub fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
        a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
    }

    /// Double cosets `K g L`, each sorted, ordered by smallest element.
    pub fn double_cosets(&self, k: &[usize], l: &[usize]) -> Vec<Vec<usize>> {
        let n = self.group.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let coset = self.product_set(&self.product_set(k, &[g]), l);
            for &x in &coset {
                seen[x] = true;
            }
            out.push(coset);
        }
        out
    }

    /// For every irreducible `K`-module `M`, compares the characters of
    /// `M↑^{LK}↓_L` and `(M↓_{L∩K})↑^L` on the elements of `L`.
    pub fn mackey_check(
        &self,
        k: &[usize],
        l: &[usize],
        seed: u64,
        tol: &Tolerance,
    ) -> Result<Vec<MackeyOutcome>> {
        let g = &self.group;
        let (sub, old) = g.subgroup(k)?;
        let table = character_table(&sub, seed, tol)?;
        let lk = self.product_set(l, k);
        let meet = Self::intersection(l, k);
        let position = |x: usize| old.iter().position(|&o| o == x);

        let mut out = Vec::with_capacity(table.len());
        for chi in 0..table.len() {
            let psi = |x: usize| -> Option<C64> { position(x).map(|i| table.value(chi, i)) };
            let mut lhs = Vec::with_capacity(l.len());
            let mut rhs = Vec::with_capacity(l.len());
            for &y in l {
                // Induction to the set LK, summing over all of LK.
                let up: C64 = lk
                    .iter()
                    .filter_map(|&x| psi(g.mul(g.mul(g.inv(x), y), x)))
                    .sum::<C64>()
                    / k.len() as f64;
                let down_up: C64 = l
                    .iter()
                    .map(|&x| g.mul(g.mul(g.inv(x), y), x))
                    .filter(|c| meet.binary_search(c).is_ok())
                    .map(|c| psi(c).expect("L∩K ⊆ K"))
                    .sum::<C64>()
                    / meet.len() as f64;
                lhs.push(up);
                rhs.push(down_up);
            }
            let residual = lhs
                .iter()
                .zip(&rhs)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            out.push(MackeyOutcome {
                module: table.labels[chi].clone(),
                lhs,
                rhs,
                residual,
            });
        }
        Ok(out)
    }
}
