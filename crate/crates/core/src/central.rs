//! The central subalgebras `Ẑ(H) = Z(H) ∩ C(H*)` and `Ẑ(H*)`, their block
//! partitions of `Irr(H*)` and `Irr(H)`, and the theorem checks built on the
//! `f_i` basis.
//!
//! `Ẑ(H)` is recovered as the null space of a Hermitian form `Q` on `C(H*)`:
//! for `x = Σ c_d d` acting on the module of `χ` by a matrix `A`,
//! `χ(1)·tr(AA†) - |tr A|² ≥ 0` with equality exactly when `A` is scalar.
//! Taking `A_d† = A_{d*}` and summing over `χ` gives
//! `Q_{d,d'} = Σ_χ [χ(1)·χ(d·d'*) - χ(d)·conj(χ(d'))]`.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::Side;
use crate::group::{CharacterTable, GroupOracle};
use crate::normality::{is_normal, normal_lattice, quotient_irr};
use crate::pair::{CharVector, HopfPair};
use crate::subalgebra::{closure_generate, kernel_of, power_constituents, z_of, ClosedSubset};
use crate::C64;

/// Null space of `Q` together with the spectral data used to certify it.
#[derive(Debug, Clone)]
pub struct CentralSubspace {
    pub side: Side,
    /// Orthonormal basis vectors, each indexed by the partitioned ring.
    pub basis: Vec<Vec<C64>>,
    pub min_eigenvalue: f64,
    pub norm: f64,
    q: DMatrix<C64>,
}

impl CentralSubspace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `‖Q v‖`.
    pub fn apply_norm(&self, v: &[C64]) -> f64 {
        let x = nalgebra::DVector::from_column_slice(v);
        (&self.q * x).norm()
    }
}

/// The pair whose `Irr(H*)` is the ring being partitioned.
fn oriented(pair: &HopfPair, side: Side) -> std::borrow::Cow<'_, HopfPair> {
    match side {
        Side::HStar => std::borrow::Cow::Borrowed(pair),
        Side::H => std::borrow::Cow::Owned(pair.dualize()),
    }
}

pub fn hermitian_form(pair: &HopfPair) -> DMatrix<C64> {
    let h = pair.ring_h();
    let hs = pair.ring_hstar();
    let n = hs.len();
    let mut q = DMatrix::<C64>::zeros(n, n);
    for d in 0..n {
        for e in 0..n {
            let prod = hs.product(d, hs.dual(e));
            let mut s = C64::new(0.0, 0.0);
            for chi in 0..h.len() {
                let gram: C64 = prod.iter().map(|&(k, m)| pair.eval(chi, k) * m as f64).sum();
                s += gram * h.degree(chi) as f64 - pair.eval(chi, d) * pair.eval(chi, e).conj();
            }
            q[(d, e)] = s;
        }
    }
    q
}

pub fn central_subspace(pair: &HopfPair, side: Side) -> Result<CentralSubspace> {
    let p = oriented(pair, side);
    let q = hermitian_form(&p);
    let eig = SymmetricEigen::new(q.clone());
    let norm = eig.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let min_eigenvalue = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min_eigenvalue < -pair.tol().eps * norm.max(1.0) {
        return Err(Error::NotPositive {
            min_eig: min_eigenvalue,
            norm,
        });
    }
    let threshold = pair.tol().null_rel * norm.max(1.0);
    let basis = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l <= threshold)
        .map(|(i, _)| eig.eigenvectors.column(i).iter().copied().collect())
        .collect();
    Ok(CentralSubspace {
        side,
        basis,
        min_eigenvalue,
        norm,
        q,
    })
}

/// Blocks `Y_j` of `Irr(H*)` (side `HStar`) or `X_i` of `Irr(H)` (side `H`),
/// with basis vectors `ê_j = Σ_{d∈Y_j} ε(d)d`, resp. `f_i = Σ_{χ∈X_i} χ(1)χ`.
#[derive(Debug, Clone, Serialize)]
pub struct CentralPartition {
    pub side: Side,
    pub blocks: Vec<Vec<usize>>,
    #[serde(skip)]
    pub basis: Vec<CharVector>,
}

impl CentralPartition {
    pub fn block_of(&self, a: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&a))
            .expect("blocks cover the ring")
    }
}

pub fn class_partition(pair: &HopfPair, side: Side) -> Result<CentralPartition> {
    let space = central_subspace(pair, side)?;
    let ring = pair.ring(side);
    let tol = pair.tol();
    let n = ring.len();
    let rows: Vec<Vec<C64>> = (0..n)
        .map(|a| {
            let deg = ring.degree(a) as f64;
            space.basis.iter().map(|v| v[a] / deg).collect()
        })
        .collect();
    let row_norm = |r: &[C64]| r.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        let found = blocks.iter().position(|b| {
            let rep = &rows[b[0]];
            let diff: f64 = rep
                .iter()
                .zip(&rows[a])
                .map(|(x, y)| (x - y).norm_sqr())
                .sum::<f64>()
                .sqrt();
            diff <= tol.scaled(row_norm(rep).max(row_norm(&rows[a])))
        });
        match found {
            Some(j) => blocks[j].push(a),
            None => blocks.push(vec![a]),
        }
    }

    if blocks.len() != space.dimension() {
        return Err(Error::SpanMismatch(format!(
            "{} blocks for a {}-dimensional null space",
            blocks.len(),
            space.dimension()
        )));
    }
    let basis: Vec<CharVector> = blocks
        .iter()
        .map(|b| CharVector::weighted_sum(side, n, b, |a| ring.degree(a) as f64))
        .collect();
    for (b, v) in blocks.iter().zip(&basis) {
        let scale = v.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let r = space.apply_norm(v.coeffs());
        if r > tol.null_rel * space.norm.max(1.0) * scale {
            return Err(Error::SpanMismatch(format!(
                "block {b:?} is not annihilated by Q (residual {r:.3e})"
            )));
        }
    }

    if side == Side::HStar {
        if let Some(hint) = pair.partition_hint() {
            let canon = |bs: &[Vec<usize>]| {
                let mut v: Vec<Vec<usize>> = bs
                    .iter()
                    .map(|b| {
                        let mut b = b.clone();
                        b.sort_unstable();
                        b
                    })
                    .collect();
                v.sort();
                v
            };
            if canon(hint) != canon(&blocks) {
                return Err(Error::RouteDisagreement {
                    what: "partition_hint".into(),
                    detail: format!("hint {hint:?} vs computed {blocks:?}"),
                });
            }
        }
    }

    Ok(CentralPartition {
        side,
        blocks,
        basis,
    })
}

/// `H_i = H_{f_i}` for each block of `Irr(H)`, each checked normal and
/// cross-checked against the core route of [`normal_lattice`].
pub fn maximal_normals_from_f(pair: &HopfPair) -> Result<Vec<ClosedSubset>> {
    let partition = class_partition(pair, Side::H)?;
    let mut out: Vec<ClosedSubset> = Vec::new();
    for f in &partition.basis {
        let k = kernel_of(pair, f)?;
        if !is_normal(pair, &k)? {
            return Err(Error::RouteDisagreement {
                what: "maximal normals".into(),
                detail: format!("kernel {:?} of an f_i is not normal", k.members()),
            });
        }
        if !out.contains(&k) {
            out.push(k);
        }
    }
    out.sort_by(|a, b| a.subdim().cmp(&b.subdim()).then(a.cmp(b)));
    let lattice = normal_lattice(pair)?;
    if lattice.generators != out {
        let show = |v: &[ClosedSubset]| v.iter().map(|k| k.members().to_vec()).collect::<Vec<_>>();
        return Err(Error::RouteDisagreement {
            what: "maximal normals".into(),
            detail: format!(
                "f_i route {:?} vs core route {:?}",
                show(&out),
                show(&lattice.generators)
            ),
        });
    }
    Ok(out)
}

/// Group data backing a `kG` instance, for the classical part of the checks.
#[derive(Debug, Clone, Copy)]
pub struct GroupBacking<'a> {
    pub oracle: &'a GroupOracle,
    pub table: &'a CharacterTable,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub block: Vec<usize>,
    pub kernel: ClosedSubset,
    pub center: ClosedSubset,
    /// Whether generating from `z_{f_i}` added anything beyond `z_{f_i}`.
    pub center_grew: bool,
    pub ratio: u64,
    pub quotient_irr: Vec<usize>,
    pub power_constituents: Vec<usize>,
    pub oracle_checked: bool,
}

fn fail(item: char, detail: String) -> Error {
    Error::TheoremCheck { item, detail }
}

/// Checks, for the block `i` of the `Irr(H)` partition:
/// (a) `Z = ⟨z_{f_i}⟩` is normal; (b) `H_{f_i} ⊆ Z`; (c) `|Z|/|H_{f_i}|` is an
/// integer; (d) the irreducibles of `H//H_{f_i}` are the constituents of the
/// powers of `f_i`; (e) with group backing, `Z` and `H_{f_i}` match the
/// classical center and kernel and `Z/ker` is cyclic.
pub fn center_theorem_checks(
    pair: &HopfPair,
    partition: &CentralPartition,
    i: usize,
    backing: Option<GroupBacking<'_>>,
) -> Result<TheoremReport> {
    if partition.side != Side::H {
        return Err(Error::SideMismatch {
            expected: Side::H,
            found: partition.side,
        });
    }
    let f = &partition.basis[i];
    let z = z_of(pair, f)?;
    let center = closure_generate(pair, z.members())?;
    let center_grew = center != z;
    if !is_normal(pair, &center)? {
        return Err(fail('a', format!("{:?} is not normal", center.members())));
    }
    let kernel = kernel_of(pair, f)?;
    if !kernel.is_subset_of(&center) {
        return Err(fail('b', format!("{:?} ⊄ {:?}", kernel.members(), center.members())));
    }
    if center.subdim() % kernel.subdim() != 0 {
        return Err(fail(
            'c',
            format!("{} / {} is not an integer", center.subdim(), kernel.subdim()),
        ));
    }
    let ratio = center.subdim() / kernel.subdim();
    let quotient = quotient_irr(pair, &kernel, true)?;
    let powers = power_constituents(pair, f)?;
    if quotient != powers {
        return Err(fail('d', format!("quotient {quotient:?} vs powers {powers:?}")));
    }
    if let Some(GroupBacking { oracle, table }) = backing {
        let mut values = vec![C64::new(0.0, 0.0); oracle.group().order()];
        for &chi in &partition.blocks[i] {
            for (g, v) in table.element_values(chi).into_iter().enumerate() {
                values[g] += v * table.degrees[chi] as f64;
            }
        }
        let classical_center = oracle.center_set(&values);
        let classical_kernel = oracle.kernel(&values);
        if center.members() != classical_center.as_slice() {
            return Err(fail('e', format!("center {:?} vs classical {classical_center:?}", center.members())));
        }
        if kernel.members() != classical_kernel.as_slice() {
            return Err(fail('e', format!("kernel {:?} vs classical {classical_kernel:?}", kernel.members())));
        }
        if !oracle.quotient_is_cyclic(&classical_center, &classical_kernel) {
            return Err(fail('e', "Z(χ)/ker χ is not cyclic".into()));
        }
    }
    Ok(TheoremReport {
        block: partition.blocks[i].clone(),
        kernel,
        center,
        center_grew,
        ratio,
        quotient_irr: quotient,
        power_constituents: powers,
        oracle_checked: backing.is_some(),
    })
}
