//! Double-coset classes of kS4 with respect to <(01)> and <(0123)>, with the
//! eigenvector and formula residuals.

use hopfkernel::cosets::{coset_classes, dims_identity, verify_eigen, verify_formula};
use hopfkernel::group::{bundled_path, GroupInstance, DEFAULT_SEED};
use hopfkernel::subalgebra::closure_generate;
use hopfkernel::{Error, Side, Tolerance};

fn main() -> Result<(), Error> {
    let gi = GroupInstance::load(bundled_path("S4"), DEFAULT_SEED, Tolerance::default())?;
    let pair = &gi.pair;
    let k = closure_generate(pair, &[gi.element("(01)")?])?;
    let l = closure_generate(pair, &[gi.element("(0123)")?])?;
    let dec = coset_classes(pair, &k, &l)?;
    for (class, dim) in dec.classes.iter().zip(&dec.class_dims) {
        println!("dim {dim:>2}: {{{}}}", pair.labels_of(Side::HStar, class).join(", "));
    }
    let eigen = verify_eigen(pair, &dec)?;
    let formula = (0..pair.ring_hstar().len())
        .map(|d| verify_formula(pair, &dec, d).map(|r| r.two_sided))
        .collect::<Result<Vec<_>, _>>()?;
    println!(
        "max eigen residual {:.1e}, max formula residual {:.1e}",
        eigen.iter().fold(0.0f64, |a, &b| a.max(b)),
        formula.iter().fold(0.0f64, |a, &b| a.max(b))
    );
    let id = dims_identity(pair, &k, &l)?;
    println!("|L|/|L∩K| = {} = |LK|/|K| = {}", id.left, id.right);
    Ok(())
}
