//! Character tables by Burnside's method: the irreducible characters are the
//! common eigenvectors of the class-multiplication matrices.

use nalgebra::{DMatrix, SVD};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::GroupTable;
use crate::error::{Error, Result};
use crate::tolerance::Tolerance;
use crate::C64;

pub const DEFAULT_SEED: u64 = 0x5eed_cafe;
const MAX_ORDER: usize = 200;
const MAX_RETRIES: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterTable {
    /// Conjugacy classes as sorted element lists; class 0 is the identity.
    pub classes: Vec<Vec<usize>>,
    /// Class index of each element.
    pub class_of: Vec<usize>,
    pub labels: Vec<String>,
    pub degrees: Vec<u64>,
    /// `values[i][c] = χ_i(g)` for `g` in class `c`.
    pub values: Vec<Vec<C64>>,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn value(&self, chi: usize, g: usize) -> C64 {
        self.values[chi][self.class_of[g]]
    }

    /// `χ_i` as a function on group elements.
    pub fn element_values(&self, chi: usize) -> Vec<C64> {
        self.class_of.iter().map(|&c| self.values[chi][c]).collect()
    }

    /// Largest deviation from row and column orthogonality.
    pub fn orthogonality_residual(&self) -> f64 {
        let order: usize = self.classes.iter().map(Vec::len).sum();
        let sizes: Vec<f64> = self.classes.iter().map(|c| c.len() as f64).collect();
        let r = self.len();
        let mut worst: f64 = 0.0;
        for i in 0..r {
            for j in 0..r {
                let s: C64 = (0..r)
                    .map(|c| self.values[i][c] * self.values[j][c].conj() * sizes[c])
                    .sum();
                let want = if i == j { order as f64 } else { 0.0 };
                worst = worst.max((s - want).norm() / order as f64);
            }
        }
        for a in 0..r {
            for b in 0..r {
                let s: C64 = (0..r)
                    .map(|i| self.values[i][a] * self.values[i][b].conj())
                    .sum();
                let want = if a == b { order as f64 / sizes[a] } else { 0.0 };
                worst = worst.max((s - want).norm() / order as f64);
            }
        }
        worst
    }
}

pub fn conjugacy_classes(g: &GroupTable) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|x| g.conjugate(a, x)).collect();
        class.sort_unstable();
        class.dedup();
        for &b in &class {
            class_of[b] = classes.len();
        }
        classes.push(class);
    }
    (classes, class_of)
}

/// Computes the character table of `g` (order at most 200).
///
/// The randomized linear combination of class matrices is drawn from a
/// ChaCha stream seeded with `seed`; a combination with colliding
/// eigenvalues is redrawn up to 20 times.
pub fn character_table(g: &GroupTable, seed: u64, tol: &Tolerance) -> Result<CharacterTable> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(Error::OrderBound {
            what: "character table",
            order: n,
            bound: MAX_ORDER,
        });
    }
    let (classes, class_of) = conjugacy_classes(g);
    let r = classes.len();

    // a[j][k][l] = #{x ∈ C_j : x⁻¹ z_l ∈ C_k}, z_l the first element of C_l.
    let mut class_mats = vec![DMatrix::<f64>::zeros(r, r); r];
    for (l, cl) in classes.iter().enumerate() {
        let z = cl[0];
        for (j, cj) in classes.iter().enumerate() {
            for &x in cj {
                let k = class_of[g.mul(g.inv(x), z)];
                class_mats[j][(k, l)] += 1.0;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..=MAX_RETRIES {
        let mut a = DMatrix::<f64>::zeros(r, r);
        for m in &class_mats {
            a += m * rng.gen_range(-1.0..1.0);
        }
        if let Some(omegas) = central_characters(&a, tol) {
            return assemble(g, classes, class_of, omegas, tol);
        }
    }
    Err(Error::CharacterTable(format!(
        "eigenvalue collisions persisted after {MAX_RETRIES} retries"
    )))
}

/// Eigenvectors of `a`, normalized to 1 on the identity class, or `None` if
/// two eigenvalues are too close to separate.
fn central_characters(a: &DMatrix<f64>, tol: &Tolerance) -> Option<Vec<Vec<C64>>> {
    let r = a.nrows();
    let lambdas: Vec<C64> = a.clone().complex_eigenvalues().iter().copied().collect();
    let scale = lambdas.iter().map(|l| l.norm()).fold(1.0, f64::max);
    for i in 0..r {
        for j in 0..i {
            if (lambdas[i] - lambdas[j]).norm() < 1e-6 * scale {
                return None;
            }
        }
    }
    let ac: DMatrix<C64> = a.map(|x| C64::new(x, 0.0));
    let mut out = Vec::with_capacity(r);
    for &lambda in &lambdas {
        let shifted = &ac - DMatrix::<C64>::identity(r, r) * lambda;
        let svd = SVD::new(shifted, false, true);
        let v_t = svd.v_t.as_ref()?;
        let (imin, smin) = svd
            .singular_values
            .iter()
            .copied()
            .enumerate()
            .min_by(|x, y| x.1.total_cmp(&y.1))?;
        if smin > tol.eps * scale * r as f64 {
            return None;
        }
        let v: Vec<C64> = v_t.row(imin).iter().map(|c| c.conj()).collect();
        if v[0].norm() < 1e-9 {
            return None;
        }
        let v0 = v[0];
        out.push(v.into_iter().map(|c| c / v0).collect());
    }
    Some(out)
}

fn assemble(
    g: &GroupTable,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    omegas: Vec<Vec<C64>>,
    tol: &Tolerance,
) -> Result<CharacterTable> {
    let n = g.order() as f64;
    let sizes: Vec<f64> = classes.iter().map(|c| c.len() as f64).collect();
    let mut rows: Vec<(u64, Vec<C64>)> = Vec::with_capacity(omegas.len());
    for omega in omegas {
        let s: f64 = omega.iter().zip(&sizes).map(|(w, c)| w.norm_sqr() / c).sum();
        let raw = (n / s).sqrt();
        let degree = tol.snap(raw).filter(|&d| d > 0).ok_or(Error::NonIntegral {
            what: "character degree".into(),
            value: raw,
        })? as u64;
        let values = omega
            .iter()
            .zip(&sizes)
            .map(|(w, c)| w * degree as f64 / *c)
            .collect();
        rows.push((degree, values));
    }
    rows.sort_by(|(da, va), (db, vb)| {
        let trivial = |v: &Vec<C64>| v.iter().all(|x| (x - 1.0).norm() < 1e-6);
        trivial(vb)
            .cmp(&trivial(va))
            .then(da.cmp(db))
            .then_with(|| sort_key(va).cmp(&sort_key(vb)))
    });

    let mut labels = Vec::with_capacity(rows.len());
    let mut counter = std::collections::BTreeMap::<u64, usize>::new();
    for (d, _) in &rows {
        let k = counter.entry(*d).or_default();
        labels.push(match u8::try_from(*k).ok().filter(|&k| k < 26) {
            Some(k) => format!("{d}{}", (b'a' + k) as char),
            None => format!("{d}_{k}"),
        });
        *k += 1;
    }
    let (degrees, values): (Vec<u64>, Vec<Vec<C64>>) = rows.into_iter().unzip();
    let table = CharacterTable {
        classes,
        class_of,
        labels,
        degrees,
        values,
    };

    let deg_sum: u64 = table.degrees.iter().map(|d| d * d).sum();
    if deg_sum != g.order() as u64 {
        return Err(Error::CharacterTable(format!(
            "squared degrees sum to {deg_sum}, not {}",
            g.order()
        )));
    }
    let residual = table.orthogonality_residual();
    if residual > tol.eps {
        return Err(Error::CharacterTable(format!(
            "orthogonality residual {residual:.3e}"
        )));
    }
    Ok(table)
}

/// Ordering key for rows of equal degree; values on a 1e-6 grid.
fn sort_key(v: &[C64]) -> Vec<(i64, i64)> {
    v.iter()
        .map(|c| {
            (
                -(c.re * 1e6).round() as i64,
                -(c.im * 1e6).round() as i64,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(gens: &[Vec<usize>]) -> GroupTable {
        GroupTable::from_generators("G", gens, 1000).unwrap()
    }

    #[test]
    fn c2_is_forced() {
        let t = character_table(&group(&[vec![1, 0]]), DEFAULT_SEED, &Tolerance::default()).unwrap();
        assert_eq!(t.degrees, vec![1, 1]);
        let v: Vec<f64> = t.values.iter().flatten().map(|c| c.re).collect();
        let want = [1.0, 1.0, 1.0, -1.0];
        for (a, b) in v.iter().zip(want) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn s3_table() {
        let g = group(&[vec![1, 0, 2], vec![1, 2, 0]]);
        let t = character_table(&g, DEFAULT_SEED, &Tolerance::default()).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 2]);
        let rho = 2;
        let transposition = g.labels().iter().position(|l| l == "(01)").unwrap();
        let three_cycle = g.labels().iter().position(|l| l == "(012)").unwrap();
        assert!(t.value(rho, transposition).norm() < 1e-10);
        assert!((t.value(rho, three_cycle) + 1.0).norm() < 1e-10);
        assert!(t.orthogonality_residual() < 1e-8);
    }

    #[test]
    fn a4_has_cube_roots() {
        let g = group(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]);
        let t = character_table(&g, DEFAULT_SEED, &Tolerance::default()).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 3]);
        let omega = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let found = t.values[1]
            .iter()
            .chain(&t.values[2])
            .any(|v| (v - omega).norm() < 1e-9);
        assert!(found);
    }

    #[test]
    fn seeds_agree() {
        let g = group(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]);
        let tol = Tolerance::default();
        let a = character_table(&g, 1, &tol).unwrap();
        let b = character_table(&g, 99, &tol).unwrap();
        assert_eq!(a.degrees, b.degrees);
        for (ra, rb) in a.values.iter().zip(&b.values) {
            for (x, y) in ra.iter().zip(rb) {
                assert!((x - y).norm() < 1e-9);
            }
        }
    }
}
