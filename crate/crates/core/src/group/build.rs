use super::{CharacterTable, GroupTable};
use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::pair::HopfPair;
use crate::tolerance::Tolerance;
use crate::C64;

/// The group algebra `kG`: `Irr(H)` is the character table with fusion given
/// by tensor products, `Irr(H*)` is `G` itself with group multiplication, and
/// the pairing is `χ(g)`. Apply [`HopfPair::dualize`] for `k^G`.
pub fn build_group_algebra(
    g: &GroupTable,
    table: &CharacterTable,
    tol: Tolerance,
) -> Result<HopfPair> {
    let n = g.order();
    let r = table.len();
    let sizes: Vec<f64> = table.classes.iter().map(|c| c.len() as f64).collect();
    let vals = &table.values;

    let mut dual_h = vec![usize::MAX; r];
    for i in 0..r {
        dual_h[i] = (0..r)
            .find(|&j| {
                vals[i]
                    .iter()
                    .zip(&vals[j])
                    .all(|(a, b)| (a.conj() - b).norm() < 1e-6)
            })
            .ok_or_else(|| {
                Error::CharacterTable(format!("no complex conjugate for row {}", table.labels[i]))
            })?;
    }

    let mut fusion_h = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let s: C64 = (0..r)
                    .map(|c| vals[i][c] * vals[j][c] * vals[k][c].conj() * sizes[c])
                    .sum::<C64>()
                    / n as f64;
                let m = match tol.snap(s.re) {
                    Some(m) if m >= 0 && s.im.abs() <= tol.int_tol => m as u64,
                    _ => {
                        return Err(Error::NonIntegral {
                            what: format!(
                                "multiplicity of {} in {}⊗{}",
                                table.labels[k], table.labels[i], table.labels[j]
                            ),
                            value: s.re,
                        })
                    }
                };
                if m > 0 {
                    fusion_h.push((i, j, k, m));
                }
            }
        }
    }
    let ring_h = FusionRing::new(table.labels.clone(), table.degrees.clone(), dual_h, &fusion_h)?;

    let fusion_g: Vec<_> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| (a, b, g.mul(a, b), 1))
        .collect();
    let ring_g = FusionRing::new(
        g.labels().to_vec(),
        vec![1; n],
        (0..n).map(|a| g.inv(a)).collect(),
        &fusion_g,
    )?;

    let eval = (0..r).map(|chi| table.element_values(chi)).collect();
    HopfPair::validate(format!("k{}", g.name()), n as u64, ring_h, ring_g, eval, tol)
}
