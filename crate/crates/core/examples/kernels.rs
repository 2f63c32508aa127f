//! Kernels and centers of every irreducible character of kS4.

use hopfkernel::group::{bundled_path, GroupInstance, DEFAULT_SEED};
use hopfkernel::subalgebra::{kernel_of, z_of};
use hopfkernel::{Error, Side, Tolerance};

fn main() -> Result<(), Error> {
    let gi = GroupInstance::load(bundled_path("S4"), DEFAULT_SEED, Tolerance::default())?;
    let pair = &gi.pair;
    for chi in 0..pair.ring_h().len() {
        let x = pair.irreducible(Side::H, chi);
        let k = kernel_of(pair, &x)?;
        let z = z_of(pair, &x)?;
        println!(
            "{:>3}: |ker| = {:>2}  |z| = {:>2}  ker = {{{}}}",
            pair.ring_h().label(chi),
            k.subdim(),
            z.subdim(),
            k.labels(pair).join(", ")
        );
    }
    Ok(())
}
