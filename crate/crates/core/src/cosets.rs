//! Double-coset decomposition of `Irr(H*)` with respect to two Hopf
//! subalgebras `K` and `L`: `c ~ d` iff `c` occurs in `K·d·L`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::Side;
use crate::pair::{CharVector, HopfPair};
use crate::subalgebra::{intersect, ClosedSubset};

#[derive(Debug, Clone, Serialize)]
pub struct CosetDecomposition {
    pub k: ClosedSubset,
    pub l: ClosedSubset,
    /// Classes ordered by smallest member; class 0 contains the unit.
    pub classes: Vec<Vec<usize>>,
    #[serde(skip)]
    pub class_sums: Vec<CharVector>,
    /// `ε(a_i) = Σ_{d∈C_i} ε(d)²`.
    pub class_dims: Vec<u64>,
}

impl CosetDecomposition {
    pub fn class_of(&self, d: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.binary_search(&d).is_ok())
            .expect("classes cover Irr(H*)")
    }
}

/// Support of `K·d·L`.
fn sandwich(pair: &HopfPair, k: &ClosedSubset, d: usize, l: &ClosedSubset) -> Vec<usize> {
    let ring = pair.ring_hstar();
    ring.fuse_support(&ring.fuse_support(k.members(), &[d]), l.members())
}

pub fn coset_classes(
    pair: &HopfPair,
    k: &ClosedSubset,
    l: &ClosedSubset,
) -> Result<CosetDecomposition> {
    let ring = pair.ring_hstar();
    let n = ring.len();
    let mut class_id = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if class_id[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut class = vec![start];
        class_id[start] = id;
        let mut next = 0;
        while next < class.len() {
            for c in sandwich(pair, k, class[next], l) {
                if class_id[c] == usize::MAX {
                    class_id[c] = id;
                    class.push(c);
                }
            }
            next += 1;
        }
        class.sort_unstable();
        classes.push(class);
    }

    // Every K·d·L must fill out exactly the class of d.
    for d in 0..n {
        let support = sandwich(pair, k, d, l);
        if support != classes[class_id[d]] {
            return Err(Error::CosetInconsistency(format!(
                "support of K·{}·L is {:?} but its class is {:?}",
                ring.label(d),
                support,
                classes[class_id[d]]
            )));
        }
    }

    let class_sums: Vec<CharVector> = classes
        .iter()
        .map(|c| CharVector::weighted_sum(Side::HStar, n, c, |d| ring.degree(d) as f64))
        .collect();
    let class_dims: Vec<u64> = classes
        .iter()
        .map(|c| c.iter().map(|&d| ring.degree(d).pow(2)).sum())
        .collect();
    for (c, &dim) in classes.iter().zip(&class_dims) {
        if dim % k.subdim() != 0 || dim % l.subdim() != 0 {
            return Err(Error::CosetInconsistency(format!(
                "class {c:?} has dimension {dim}, not divisible by both {} and {}",
                k.subdim(),
                l.subdim()
            )));
        }
    }
    let total: u64 = class_dims.iter().sum();
    if total != pair.dim() {
        return Err(Error::CosetInconsistency(format!(
            "class dimensions sum to {total}, not {}",
            pair.dim()
        )));
    }
    Ok(CosetDecomposition {
        k: k.clone(),
        l: l.clone(),
        classes,
        class_sums,
        class_dims,
    })
}

fn check(what: String, residual: f64, tolerance: f64) -> Result<f64> {
    if residual > tolerance {
        Err(Error::Residual {
            what,
            residual,
            tolerance,
        })
    } else {
        Ok(residual)
    }
}

/// Checks `Λ_K·a_i·Λ_L = |K||L|·a_i` for every class; returns the residuals.
pub fn verify_eigen(pair: &HopfPair, dec: &CosetDecomposition) -> Result<Vec<f64>> {
    let lk = dec.k.integral(pair);
    let ll = dec.l.integral(pair);
    let eigenvalue = (dec.k.subdim() * dec.l.subdim()) as f64;
    let mut out = Vec::with_capacity(dec.classes.len());
    for (i, a) in dec.class_sums.iter().enumerate() {
        let t = pair.fuse(&pair.fuse(&lk, a)?, &ll)?;
        let residual = t.max_abs_diff(&a.scale(eigenvalue));
        let scale = eigenvalue * a.max_abs();
        out.push(check(
            format!("eigenvector a_{i}"),
            residual,
            pair.tol().scaled(scale),
        )?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FormulaResidual {
    pub two_sided: f64,
    /// Present when `K` is the unit subalgebra.
    pub one_sided: Option<f64>,
}

/// Checks `(Λ_K/|K|)·d·(Λ_L/|L|) = ε(d)·a_i/ε(a_i)` for `d ∈ C_i`, and the
/// one-sided form `(d/ε(d))·(a_1/ε(a_1)) = a_i/ε(a_i)` when `K = k1`.
pub fn verify_formula(
    pair: &HopfPair,
    dec: &CosetDecomposition,
    d: usize,
) -> Result<FormulaResidual> {
    let ring = pair.ring_hstar();
    let tol = pair.tol();
    let i = dec.class_of(d);
    let target = dec.class_sums[i].scale(1.0 / dec.class_dims[i] as f64);
    let dvec = pair.irreducible(Side::HStar, d);
    let lhs = pair.fuse(
        &pair.fuse(&dec.k.idempotent_integral(pair), &dvec)?,
        &dec.l.idempotent_integral(pair),
    )?;
    let eps_d = ring.degree(d) as f64;
    let two_sided = check(
        format!("double-coset formula at {}", ring.label(d)),
        lhs.max_abs_diff(&target.scale(eps_d)),
        tol.scaled(eps_d),
    )?;
    let one_sided = if dec.k.members() == [0] {
        let unit_class = dec.class_of(0);
        let a1 = dec.class_sums[unit_class].scale(1.0 / dec.class_dims[unit_class] as f64);
        let lhs = pair.fuse(&dvec.scale(1.0 / eps_d), &a1)?;
        Some(check(
            format!("one-sided formula at {}", ring.label(d)),
            lhs.max_abs_diff(&target),
            tol.eps,
        )?)
    } else {
        None
    };
    Ok(FormulaResidual {
        two_sided,
        one_sided,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimsIdentity {
    /// `|L| / |L∩K|`.
    pub left: u64,
    /// `|LK| / |K|`, with `|LK|` the dimension of the class of the unit.
    pub right: u64,
}

pub fn dims_identity(pair: &HopfPair, k: &ClosedSubset, l: &ClosedSubset) -> Result<DimsIdentity> {
    let meet = intersect(pair, l, k)?;
    let dec = coset_classes(pair, k, l)?;
    let unit_dim = dec.class_dims[dec.class_of(0)];
    let exact = |num: u64, den: u64, what: &str| {
        if num % den == 0 {
            Ok(num / den)
        } else {
            Err(Error::NonIntegral {
                what: what.into(),
                value: num as f64 / den as f64,
            })
        }
    };
    let left = exact(l.subdim(), meet.subdim(), "|L|/|L∩K|")?;
    let right = exact(unit_dim, k.subdim(), "|LK|/|K|")?;
    if left != right {
        return Err(Error::RouteDisagreement {
            what: "dimension identity".into(),
            detail: format!("|L|/|L∩K| = {left} but |LK|/|K| = {right}"),
        });
    }
    Ok(DimsIdentity { left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{els, instance};

    #[test]
    fn classes_in_s3() {
        let gi = instance("S3");
        let p = &gi.pair;
        let t = gi.subset(&els(&gi, &["e", "(01)"])).unwrap();
        let dec = coset_classes(p, &t, &t).unwrap();
        let mut dims = dec.class_dims.clone();
        dims.sort_unstable();
        assert_eq!(dims, vec![2, 4]);
        assert_eq!(dec.classes[dec.class_of(0)], els(&gi, &["e", "(01)"]));

        let a3 = gi.subset(&els(&gi, &["e", "(012)", "(021)"])).unwrap();
        let dec = coset_classes(p, &a3, &ClosedSubset::unit(p)).unwrap();
        assert_eq!(dec.class_dims, vec![3, 3]);
    }

    #[test]
    fn eigen_and_formula() {
        let gi = instance("S3");
        let p = &gi.pair;
        let t = gi.subset(&els(&gi, &["e", "(01)"])).unwrap();
        let dec = coset_classes(p, &t, &t).unwrap();
        assert!(verify_eigen(p, &dec).unwrap().iter().all(|&r| r < 1e-9));
        for d in 0..6 {
            let r = verify_formula(p, &dec, d).unwrap();
            assert!(r.two_sided < 1e-9);
            assert!(r.one_sided.is_none());
        }
        let unit = ClosedSubset::unit(p);
        let a3 = gi.subset(&els(&gi, &["e", "(012)", "(021)"])).unwrap();
        let dec = coset_classes(p, &unit, &a3).unwrap();
        let r = verify_formula(p, &dec, gi.element("(01)").unwrap()).unwrap();
        assert!(r.one_sided.unwrap() < 1e-9);
    }

    #[test]
    fn dimension_identity() {
        let gi = instance("S3");
        let p = &gi.pair;
        let t = gi.subset(&els(&gi, &["e", "(01)"])).unwrap();
        let r = gi.subset(&els(&gi, &["e", "(012)", "(021)"])).unwrap();
        assert_eq!(dims_identity(p, &t, &r).unwrap(), DimsIdentity { left: 3, right: 3 });

        let s4 = instance("S4");
        let v4 = s4.subset(&els(&s4, &["e", "(01)(23)", "(02)(13)", "(03)(12)"])).unwrap();
        let c3 = s4.subset(&els(&s4, &["e", "(012)", "(021)"])).unwrap();
        assert_eq!(dims_identity(&s4.pair, &v4, &c3).unwrap(), DimsIdentity { left: 3, right: 3 });
    }

    #[test]
    fn s4_residuals() {
        let s4 = instance("S4");
        let k = s4.subset(&els(&s4, &["e", "(01)"])).unwrap();
        let l = crate::subalgebra::closure_generate(&s4.pair, &[s4.element("(0123)").unwrap()])
            .unwrap();
        let dec = coset_classes(&s4.pair, &k, &l).unwrap();
        assert_eq!(dec.class_dims.iter().sum::<u64>(), 24);
        assert!(verify_eigen(&s4.pair, &dec).unwrap().iter().all(|&r| r < 1e-8));
        for d in 0..24 {
            assert!(verify_formula(&s4.pair, &dec, d).unwrap().two_sided < 1e-8);
        }
    }
}
