//! The validated instance: two fusion rings and the evaluation pairing.

use crate::error::{Error, Result, Violation};
use crate::fusion::{FusionRing, Side};
use crate::tolerance::Tolerance;
use crate::C64;

/// A coefficient vector over `Irr(H)` or `Irr(H*)`: a virtual character,
/// class sum or integral.
#[derive(Debug, Clone, PartialEq)]
pub struct CharVector {
    side: Side,
    coeffs: Vec<C64>,
}

impl CharVector {
    pub fn new(side: Side, coeffs: Vec<C64>) -> Self {
        CharVector { side, coeffs }
    }

    pub fn zero(side: Side, len: usize) -> Self {
        CharVector::new(side, vec![C64::new(0.0, 0.0); len])
    }

    pub fn basis(side: Side, len: usize, i: usize) -> Self {
        let mut v = CharVector::zero(side, len);
        v.coeffs[i] = C64::new(1.0, 0.0);
        v
    }

    pub fn from_ints(side: Side, coeffs: &[i64]) -> Self {
        CharVector::new(side, coeffs.iter().map(|&c| C64::new(c as f64, 0.0)).collect())
    }

    /// `Σ_{i ∈ indices} weight(i)·i`.
    pub fn weighted_sum(
        side: Side,
        len: usize,
        indices: &[usize],
        weight: impl Fn(usize) -> f64,
    ) -> Self {
        let mut v = CharVector::zero(side, len);
        for &i in indices {
            v.coeffs[i] += weight(i);
        }
        v
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C64 {
        self.coeffs[i]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: f64) -> CharVector {
        CharVector::new(self.side, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &CharVector) -> Result<CharVector> {
        same_side(self, other)?;
        Ok(CharVector::new(
            self.side,
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        ))
    }

    /// Largest coefficient-wise distance to `other`.
    pub fn max_abs_diff(&self, other: &CharVector) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Indices whose coefficient is nonzero beyond `eps`.
    pub fn support(&self, eps: f64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.coeffs[i].norm() > eps).collect()
    }

    /// The coefficients as nonnegative integers, if this is a genuine nonzero character.
    pub fn genuine(&self, tol: &Tolerance) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity(self.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let n = match tol.snap(c.re) {
                Some(n) if c.im.abs() <= tol.int_tol && n >= 0 => n as u64,
                _ => {
                    return Err(Error::NonGenuine(format!(
                        "coefficient {i} is {c}, not a nonnegative integer"
                    )))
                }
            };
            out.push(n);
        }
        if out.iter().all(|&n| n == 0) {
            return Err(Error::NonGenuine("zero vector".into()));
        }
        Ok(out)
    }

    /// Image under the duality involution: `(Σ x_i i)* = Σ conj(x_i) i*`.
    pub fn dual(&self, ring: &FusionRing) -> CharVector {
        let mut out = CharVector::zero(self.side, self.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[ring.dual(i)] = c.conj();
        }
        out
    }
}

fn same_side(x: &CharVector, y: &CharVector) -> Result<()> {
    if x.side != y.side {
        return Err(Error::SideMismatch {
            expected: x.side,
            found: y.side,
        });
    }
    Ok(())
}

/// A validated instance `(Irr(H), Irr(H*), χ(d))`. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfPair {
    name: String,
    dim: u64,
    ring_h: FusionRing,
    ring_hstar: FusionRing,
    /// Row-major: rows `Irr(H)`, columns `Irr(H*)`.
    eval: Vec<C64>,
    tol: Tolerance,
    partition_hint: Option<Vec<Vec<usize>>>,
}

impl HopfPair {
    /// Validates raw instance data against every fusion-ring and pairing axiom.
    /// All violations are collected before rejecting.
    pub fn validate(
        name: impl Into<String>,
        dim: u64,
        ring_h: FusionRing,
        ring_hstar: FusionRing,
        eval: Vec<Vec<C64>>,
        tol: Tolerance,
    ) -> Result<HopfPair> {
        let rows = ring_h.len();
        let cols = ring_hstar.len();
        if eval.len() != rows || eval.iter().any(|r| r.len() != cols) {
            return Err(Error::Structural(format!(
                "eval must be {rows} x {cols} (Irr(H) x Irr(H*))"
            )));
        }
        let pair = HopfPair {
            name: name.into(),
            dim,
            ring_h,
            ring_hstar,
            eval: eval.into_iter().flatten().collect(),
            tol,
            partition_hint: None,
        };
        let violations = pair.violations();
        if violations.is_empty() {
            Ok(pair)
        } else {
            Err(Error::Axioms(violations))
        }
    }

    /// Every violated invariant; empty for a valid instance.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        self.ring_h.check_axioms(Side::H, &mut out);
        self.ring_hstar.check_axioms(Side::HStar, &mut out);
        self.check_pairing(&mut out);
        out
    }

    fn check_pairing(&self, out: &mut Vec<Violation>) {
        let tol = &self.tol;
        let (h, hs) = (&self.ring_h, &self.ring_hstar);
        let dim = self.dim as f64;
        let mut push = |invariant: &str, location: String, residual: f64| {
            out.push(Violation {
                invariant: invariant.into(),
                location,
                residual,
            })
        };

        for (side, ring) in [(Side::H, h), (Side::HStar, hs)] {
            let sum = ring.dim();
            if sum != self.dim {
                push(
                    "dimension",
                    format!("{} sum of squared degrees", side.name()),
                    (sum as f64 - dim).abs(),
                );
            }
        }

        for chi in 0..h.len() {
            let r = (self.eval(chi, 0) - h.degree(chi) as f64).norm();
            if r > tol.scaled(h.degree(chi) as f64) {
                push("unit column", format!("E[{}][{}]", h.label(chi), hs.label(0)), r);
            }
        }
        for d in 0..hs.len() {
            let r = (self.eval(0, d) - hs.degree(d) as f64).norm();
            if r > tol.scaled(hs.degree(d) as f64) {
                push("unit row", format!("E[{}][{}]", h.label(0), hs.label(d)), r);
            }
        }

        for chi in 0..h.len() {
            for d in 0..hs.len() {
                let e = self.eval(chi, d);
                let bound = (h.degree(chi) * hs.degree(d)) as f64;
                let excess = e.norm() - bound;
                if excess > tol.scaled(bound) {
                    push("bound |χ(d)| ≤ χ(1)ε(d)", format!("E[{}][{}]", h.label(chi), hs.label(d)), excess);
                }
                let r = (self.eval(chi, hs.dual(d)) - e.conj()).norm();
                if r > tol.scaled(bound) {
                    push("conjugation", format!("E[{}][{}]", h.label(chi), hs.label(d)), r);
                }
            }
        }

        for d in 0..hs.len() {
            let s: C64 = (0..h.len()).map(|chi| self.eval(chi, d) * h.degree(chi) as f64).sum();
            let want = if d == 0 { dim } else { 0.0 };
            let r = (s - want).norm();
            if r > tol.scaled(dim) {
                push("regular character orthogonality", format!("column {}", hs.label(d)), r);
            }
        }
        for chi in 0..h.len() {
            let s: C64 = (0..hs.len()).map(|d| self.eval(chi, d) * hs.degree(d) as f64).sum();
            let want = if chi == 0 { dim } else { 0.0 };
            let r = (s - want).norm();
            if r > tol.scaled(dim) {
                push("integral orthogonality", format!("row {}", h.label(chi)), r);
            }
        }

        // Grouplike columns are algebra maps on C(H); one-dimensional rows on C(H*).
        for d in (0..hs.len()).filter(|&d| hs.degree(d) == 1) {
            for i in 0..h.len() {
                for j in 0..h.len() {
                    let lhs: C64 = h
                        .product(i, j)
                        .iter()
                        .map(|&(k, m)| self.eval(k, d) * m as f64)
                        .sum();
                    let rhs = self.eval(i, d) * self.eval(j, d);
                    let r = (lhs - rhs).norm();
                    let scale = (h.degree(i) * h.degree(j)) as f64;
                    if r > tol.scaled(scale) {
                        push(
                            "grouplike multiplicativity",
                            format!("{}·{} at {}", h.label(i), h.label(j), hs.label(d)),
                            r,
                        );
                    }
                }
            }
        }
        for chi in (0..h.len()).filter(|&c| h.degree(c) == 1) {
            for a in 0..hs.len() {
                for b in 0..hs.len() {
                    let lhs: C64 = hs
                        .product(a, b)
                        .iter()
                        .map(|&(k, m)| self.eval(chi, k) * m as f64)
                        .sum();
                    let rhs = self.eval(chi, a) * self.eval(chi, b);
                    let r = (lhs - rhs).norm();
                    let scale = (hs.degree(a) * hs.degree(b)) as f64;
                    if r > tol.scaled(scale) {
                        push(
                            "linear character multiplicativity",
                            format!("{} on {}·{}", h.label(chi), hs.label(a), hs.label(b)),
                            r,
                        );
                    }
                }
            }
        }
    }

    pub fn with_partition_hint(mut self, hint: Vec<Vec<usize>>) -> Result<HopfPair> {
        let n = self.ring_hstar.len();
        if let Some(bad) = hint.iter().flatten().find(|&&d| d >= n) {
            return Err(Error::Structural(format!("partition_hint index {bad} out of range")));
        }
        self.partition_hint = Some(hint);
        Ok(self)
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> HopfPair {
        self.tol = tol;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> HopfPair {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn tol(&self) -> &Tolerance {
        &self.tol
    }

    pub fn partition_hint(&self) -> Option<&[Vec<usize>]> {
        self.partition_hint.as_deref()
    }

    pub fn ring(&self, side: Side) -> &FusionRing {
        match side {
            Side::H => &self.ring_h,
            Side::HStar => &self.ring_hstar,
        }
    }

    pub fn ring_h(&self) -> &FusionRing {
        &self.ring_h
    }

    pub fn ring_hstar(&self) -> &FusionRing {
        &self.ring_hstar
    }

    /// `χ(d)` for `χ ∈ Irr(H)`, `d ∈ Irr(H*)`.
    pub fn eval(&self, chi: usize, d: usize) -> C64 {
        self.eval[chi * self.ring_hstar.len() + d]
    }

    pub fn eval_rows(&self) -> Vec<Vec<C64>> {
        self.eval
            .chunks(self.ring_hstar.len())
            .map(|r| r.to_vec())
            .collect()
    }

    /// Swaps the roles of `H` and `H*` and transposes the pairing.
    pub fn dualize(&self) -> HopfPair {
        let (rows, cols) = (self.ring_h.len(), self.ring_hstar.len());
        let mut eval = Vec::with_capacity(rows * cols);
        for d in 0..cols {
            for chi in 0..rows {
                eval.push(self.eval(chi, d));
            }
        }
        HopfPair {
            name: dual_name(&self.name),
            dim: self.dim,
            ring_h: self.ring_hstar.clone(),
            ring_hstar: self.ring_h.clone(),
            eval,
            tol: self.tol,
            partition_hint: None,
        }
    }

    pub fn irreducible(&self, side: Side, i: usize) -> CharVector {
        CharVector::basis(side, self.ring(side).len(), i)
    }

    pub fn unit(&self, side: Side) -> CharVector {
        self.irreducible(side, 0)
    }

    /// `Σ degree(i)·i`: the regular character on the `H` side, `|H|` times the
    /// idempotent integral on the `H*` side.
    pub fn regular(&self, side: Side) -> CharVector {
        let ring = self.ring(side);
        let all: Vec<usize> = (0..ring.len()).collect();
        CharVector::weighted_sum(side, ring.len(), &all, |i| ring.degree(i) as f64)
    }

    pub fn fuse(&self, x: &CharVector, y: &CharVector) -> Result<CharVector> {
        same_side(x, y)?;
        let ring = self.ring(x.side);
        Ok(CharVector::new(x.side, ring.fuse(&x.coeffs, &y.coeffs)))
    }

    /// The bilinear form `m(x, y) = Σ_a x_a·conj(y_a)`; for genuine characters
    /// this is `dim Hom`.
    pub fn mult_form(&self, x: &CharVector, y: &CharVector) -> Result<C64> {
        same_side(x, y)?;
        Ok(x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a * b.conj()).sum())
    }

    /// `Σ_{χ,d} x_χ·y_d·χ(d)`.
    pub fn evaluate(&self, x: &CharVector, y: &CharVector) -> Result<C64> {
        if x.side != Side::H {
            return Err(Error::SideMismatch {
                expected: Side::H,
                found: x.side,
            });
        }
        if y.side != Side::HStar {
            return Err(Error::SideMismatch {
                expected: Side::HStar,
                found: y.side,
            });
        }
        let mut s = C64::new(0.0, 0.0);
        for (chi, xc) in x.coeffs.iter().enumerate() {
            if xc.norm_sqr() == 0.0 {
                continue;
            }
            let row: C64 = y
                .coeffs
                .iter()
                .enumerate()
                .map(|(d, yd)| yd * self.eval(chi, d))
                .sum();
            s += xc * row;
        }
        Ok(s)
    }

    /// Values of `x` on every irreducible of `H*`.
    pub fn evaluate_on_basis(&self, x: &CharVector) -> Result<Vec<C64>> {
        if x.side != Side::H {
            return Err(Error::SideMismatch {
                expected: Side::H,
                found: x.side,
            });
        }
        Ok((0..self.ring_hstar.len())
            .map(|d| {
                x.coeffs
                    .iter()
                    .enumerate()
                    .map(|(chi, c)| c * self.eval(chi, d))
                    .sum()
            })
            .collect())
    }

    /// Resolves a label (or, failing that, a numeric index) on the given side.
    pub fn resolve(&self, side: Side, token: &str) -> Result<usize> {
        let ring = self.ring(side);
        let token = token.trim();
        if let Some(i) = ring.index_of(token) {
            return Ok(i);
        }
        match token.parse::<usize>() {
            Ok(i) if i < ring.len() => Ok(i),
            _ => Err(Error::UnknownLabel(token.to_string())),
        }
    }

    pub fn labels_of(&self, side: Side, indices: &[usize]) -> Vec<String> {
        indices
            .iter()
            .map(|&i| self.ring(side).label(i).to_string())
            .collect()
    }
}

fn dual_name(name: &str) -> String {
    if let Some(g) = name.strip_prefix("k^") {
        format!("k{g}")
    } else if let Some(g) = name.strip_prefix('k') {
        format!("k^{g}")
    } else {
        format!("{name}*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kc2() -> HopfPair {
        let rep = FusionRing::new(
            vec!["1".into(), "s".into()],
            vec![1, 1],
            vec![0, 1],
            &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)],
        )
        .unwrap();
        let grp = FusionRing::new(
            vec!["e".into(), "g".into()],
            vec![1, 1],
            vec![0, 1],
            &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)],
        )
        .unwrap();
        let one = C64::new(1.0, 0.0);
        HopfPair::validate(
            "kC2",
            2,
            rep,
            grp,
            vec![vec![one, one], vec![one, -one]],
            Tolerance::default(),
        )
        .unwrap()
    }

    #[test]
    fn kc2_is_valid() {
        let p = kc2();
        assert_eq!(p.dim(), 2);
        assert!(p.violations().is_empty());
    }

    #[test]
    fn kc2_wrong_sign_rejected() {
        let p = kc2();
        let one = C64::new(1.0, 0.0);
        let err = HopfPair::validate(
            "bad",
            2,
            p.ring_h().clone(),
            p.ring_hstar().clone(),
            vec![vec![one, one], vec![one, one]],
            Tolerance::default(),
        )
        .unwrap_err();
        let Error::Axioms(v) = err else { panic!() };
        assert!(v.iter().any(|x| x.invariant == "regular character orthogonality"));
        assert!(v.iter().any(|x| x.invariant == "integral orthogonality"));
    }

    #[test]
    fn dualize_is_involutive() {
        let p = kc2();
        assert_eq!(p.dualize().dualize(), p);
        assert_eq!(p.dualize().name(), "k^C2");
    }

    #[test]
    fn side_mismatch() {
        let p = kc2();
        let x = p.unit(Side::H);
        let y = p.unit(Side::HStar);
        assert!(matches!(p.fuse(&x, &y), Err(Error::SideMismatch { .. })));
        assert!(matches!(p.evaluate(&y, &x), Err(Error::SideMismatch { .. })));
    }

    #[test]
    fn genuine_rejects_fractions() {
        let t = Tolerance::default();
        let v = CharVector::new(Side::H, vec![C64::new(0.5, 0.0)]);
        assert!(v.genuine(&t).is_err());
        assert!(CharVector::from_ints(Side::H, &[0, 0]).genuine(&t).is_err());
        assert_eq!(CharVector::from_ints(Side::H, &[2, 1]).genuine(&t).unwrap(), vec![2, 1]);
    }
}
