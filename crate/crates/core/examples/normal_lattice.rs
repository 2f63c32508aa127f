//! Normal lattices of kD4 and its dual, and the maximal normal subalgebras
//! found from the central partition.

use hopfkernel::central::maximal_normals_from_f;
use hopfkernel::group::{bundled_path, GroupInstance, DEFAULT_SEED};
use hopfkernel::normality::normal_lattice;
use hopfkernel::{Error, Tolerance};

fn main() -> Result<(), Error> {
    let gi = GroupInstance::load(bundled_path("D4"), DEFAULT_SEED, Tolerance::default())?;
    for pair in [gi.pair.clone(), gi.pair.dualize()] {
        let lattice = normal_lattice(&pair)?;
        println!("{}: {} normal Hopf subalgebras", pair.name(), lattice.members.len());
        for k in &lattice.members {
            println!("  subdim {:>2}: {{{}}}", k.subdim(), k.labels(&pair).join(", "));
        }
        let maximal = maximal_normals_from_f(&pair)?;
        println!("  {} kernels H_(f_i) (both routes agree)", maximal.len());
    }
    Ok(())
}
