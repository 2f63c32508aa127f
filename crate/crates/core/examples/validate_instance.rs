//! Load an instance file, validate it, then break one fusion coefficient and
//! show what validation reports.

use hopfkernel::instance::{load_pair, InstanceFile};
use hopfkernel::{Error, Tolerance};

fn main() -> Result<(), Error> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/instances/kS3.json");
    let tol = Tolerance::default();
    let pair = load_pair(path, tol)?;
    println!(
        "{}: dim {}, |Irr(H)| = {}, |Irr(H*)| = {}",
        pair.name(),
        pair.dim(),
        pair.ring_h().len(),
        pair.ring_hstar().len()
    );

    let mut doc = InstanceFile::from_pair(&pair);
    for q in doc.fusion_h.iter_mut().filter(|q| q[..3] == [2, 2, 2]) {
        q[3] = 2;
    }
    match doc.into_pair(tol) {
        Err(Error::Axioms(violations)) => {
            println!("perturbed N_(2a,2a)^2a = 2 is rejected:");
            for v in violations {
                println!("  {} at {} (residual {:.1e})", v.invariant, v.location, v.residual);
            }
        }
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
