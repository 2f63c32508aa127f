//! Fusion rings: based rings with a unit at index 0, a duality involution and
//! nonnegative integer structure constants `N_{ij}^k`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::C64;

/// Which character ring an index or vector lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// `Irr(H)`, the characters of `H`-modules.
    H,
    /// `Irr(H*)`, the characters of `H*`-modules (simple subcoalgebras of `H`).
    HStar,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::H => Side::HStar,
            Side::HStar => Side::H,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::H => "Irr(H)",
            Side::HStar => "Irr(H*)",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FusionRing {
    labels: Vec<String>,
    degrees: Vec<u64>,
    dual: Vec<usize>,
    /// Row-major `n * n` table; entry `(i, j)` lists `(k, N_{ij}^k)` sorted by `k`.
    products: Vec<Vec<(usize, u64)>>,
}

impl FusionRing {
    /// Builds a ring from sparse `(i, j, k, n)` quadruples, checking only
    /// structural soundness. Axioms are checked by [`FusionRing::check_axioms`].
    pub fn new(
        labels: Vec<String>,
        degrees: Vec<u64>,
        dual: Vec<usize>,
        entries: &[(usize, usize, usize, u64)],
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Structural("empty basis".into()));
        }
        if degrees.len() != n || dual.len() != n {
            return Err(Error::Structural(format!(
                "{} labels but {} degrees and {} dual entries",
                n,
                degrees.len(),
                dual.len()
            )));
        }
        if let Some(i) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::Structural(format!("degree of index {i} is zero")));
        }
        for (i, &j) in dual.iter().enumerate() {
            if j >= n {
                return Err(Error::Structural(format!("dual[{i}] = {j} out of range")));
            }
            if dual[j] != i {
                return Err(Error::Structural(format!(
                    "dual is not an involution: dual[{i}] = {j} but dual[{j}] = {}",
                    dual[j]
                )));
            }
        }
        if dual[0] != 0 {
            return Err(Error::Structural("dual of the unit is not the unit".into()));
        }
        let mut table: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); n * n];
        for &(i, j, k, m) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::Structural(format!(
                    "fusion entry ({i},{j},{k}) out of range for {n} labels"
                )));
            }
            if m == 0 {
                continue;
            }
            if table[i * n + j].insert(k, m).is_some() {
                return Err(Error::Structural(format!(
                    "duplicate fusion entry ({i},{j},{k})"
                )));
            }
        }
        let products = table.into_iter().map(|m| m.into_iter().collect()).collect();
        Ok(FusionRing {
            labels,
            degrees,
            dual,
            products,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    /// `Σ degree(i)²`.
    pub fn dim(&self) -> u64 {
        self.degrees.iter().map(|d| d * d).sum()
    }

    /// Sparse decomposition of the product of basis elements `i` and `j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u64)] {
        &self.products[i * self.len() + j]
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> u64 {
        self.product(i, j)
            .iter()
            .find(|&&(m, _)| m == k)
            .map_or(0, |&(_, c)| c)
    }

    /// All nonzero structure constants as `(i, j, k, N_{ij}^k)`, in index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, u64)> + '_ {
        let n = self.len();
        self.products.iter().enumerate().flat_map(move |(ij, row)| {
            row.iter().map(move |&(k, m)| (ij / n, ij % n, k, m))
        })
    }

    /// Product of two coefficient vectors: `z_k = Σ_{ij} x_i y_j N_{ij}^k`.
    pub fn fuse(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let n = self.len();
        let mut z = vec![C64::new(0.0, 0.0); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.norm_sqr() == 0.0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.norm_sqr() == 0.0 {
                    continue;
                }
                let c = xi * yj;
                for &(k, m) in self.product(i, j) {
                    z[k] += c * m as f64;
                }
            }
        }
        z
    }

    /// Support of the product of two index sets (all coefficients positive).
    pub fn fuse_support(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut hit = vec![false; self.len()];
        for &i in a {
            for &j in b {
                for &(k, _) in self.product(i, j) {
                    hit[k] = true;
                }
            }
        }
        (0..self.len()).filter(|&k| hit[k]).collect()
    }

    /// Appends every violated fusion-ring axiom to `out`.
    pub fn check_axioms(&self, side: Side, out: &mut Vec<Violation>) {
        let n = self.len();
        let at = |idx: &[usize]| {
            let names: Vec<&str> = idx.iter().map(|&i| self.label(i)).collect();
            format!("{} ({})", side.name(), names.join(","))
        };
        let mut push = |invariant: &str, location: String, residual: f64| {
            out.push(Violation {
                invariant: invariant.to_string(),
                location,
                residual,
            })
        };

        for j in 0..n {
            for (a, b) in [(0, j), (j, 0)] {
                let p = self.product(a, b);
                if p != [(j, 1)] {
                    let extra: u64 = p.iter().filter(|&&(k, _)| k != j).map(|&(_, m)| m).sum();
                    let own = self.coefficient(a, b, j) as f64;
                    push("unit law", at(&[a, b]), (own - 1.0).abs() + extra as f64);
                }
            }
        }

        for i in 0..n {
            for j in 0..n {
                let expect = u64::from(j == self.dual[i]);
                let got = self.coefficient(i, j, 0);
                if got != expect {
                    push(
                        "duality/Frobenius",
                        at(&[i, j]),
                        (got as f64 - expect as f64).abs(),
                    );
                }

                let lhs = self.degrees[i] * self.degrees[j];
                let rhs: u64 = self
                    .product(i, j)
                    .iter()
                    .map(|&(k, m)| m * self.degrees[k])
                    .sum();
                if lhs != rhs {
                    push(
                        "degree homomorphism",
                        at(&[i, j]),
                        (lhs as f64 - rhs as f64).abs(),
                    );
                }

                for &(k, m) in self.product(i, j) {
                    let mirrored = self.coefficient(self.dual[j], self.dual[i], self.dual[k]);
                    if mirrored != m {
                        push(
                            "dual compatibility",
                            at(&[i, j, k]),
                            (m as f64 - mirrored as f64).abs(),
                        );
                    }
                }
                // Entries present on the mirrored side but absent here.
                for &(k, m) in self.product(self.dual[j], self.dual[i]) {
                    if self.coefficient(i, j, self.dual[k]) == 0 {
                        push("dual compatibility", at(&[i, j, self.dual[k]]), m as f64);
                    }
                }
            }
        }

        let mut acc = vec![0i64; n];
        let mut touched = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for &(m, c) in self.product(i, j) {
                        for &(l, d) in self.product(m, k) {
                            if acc[l] == 0 {
                                touched.push(l);
                            }
                            acc[l] += (c * d) as i64;
                        }
                    }
                    for &(m, c) in self.product(j, k) {
                        for &(l, d) in self.product(i, m) {
                            if acc[l] == 0 {
                                touched.push(l);
                            }
                            acc[l] -= (c * d) as i64;
                        }
                    }
                    let residual: i64 = touched.iter().map(|&l| acc[l].abs()).sum();
                    if residual != 0 {
                        push("associativity", at(&[i, j, k]), residual as f64);
                    }
                    for &l in &touched {
                        acc[l] = 0;
                    }
                    touched.clear();
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Representation ring of S3: ε, sgn, ρ.
    fn rep_s3() -> FusionRing {
        let e = vec![
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (0, 2, 2, 1),
            (1, 0, 1, 1),
            (1, 1, 0, 1),
            (1, 2, 2, 1),
            (2, 0, 2, 1),
            (2, 1, 2, 1),
            (2, 2, 0, 1),
            (2, 2, 1, 1),
            (2, 2, 2, 1),
        ];
        FusionRing::new(
            vec!["1".into(), "sgn".into(), "rho".into()],
            vec![1, 1, 2],
            vec![0, 1, 2],
            &e,
        )
        .unwrap()
    }

    #[test]
    fn axioms_hold_for_rep_s3() {
        let mut v = Vec::new();
        rep_s3().check_axioms(Side::H, &mut v);
        assert!(v.is_empty(), "{v:?}");
        assert_eq!(rep_s3().dim(), 6);
    }

    #[test]
    fn perturbed_entry_breaks_degree_homomorphism() {
        let r = rep_s3();
        let mut e: Vec<_> = r.entries().collect();
        for q in e.iter_mut() {
            if (q.0, q.1, q.2) == (2, 2, 2) {
                q.3 = 2;
            }
        }
        let bad = FusionRing::new(r.labels.clone(), r.degrees.clone(), r.dual.clone(), &e).unwrap();
        let mut v = Vec::new();
        bad.check_axioms(Side::H, &mut v);
        assert!(v
            .iter()
            .any(|x| x.invariant == "degree homomorphism" && x.location.contains("(rho,rho)")));
    }

    #[test]
    fn rejects_non_involutive_dual() {
        let err = FusionRing::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![1, 1, 1],
            vec![0, 2, 0],
            &[],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    #[test]
    fn fuse_rho_squared() {
        let r = rep_s3();
        let rho = [C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        let z = r.fuse(&rho, &rho);
        assert_eq!(z.iter().map(|c| c.re).collect::<Vec<_>>(), vec![1.0, 1.0, 1.0]);
        assert_eq!(r.fuse_support(&[1], &[2]), vec![2]);
    }
}
