//! Normality test and core computation for the subalgebras generated by a few
//! elements of S4.

use hopfkernel::group::{bundled_path, GroupInstance, DEFAULT_SEED};
use hopfkernel::normality::{core_trace, induced_trivial_multiplicities, is_normal};
use hopfkernel::subalgebra::closure_generate;
use hopfkernel::{Error, Tolerance};

fn main() -> Result<(), Error> {
    let gi = GroupInstance::load(bundled_path("S4"), DEFAULT_SEED, Tolerance::default())?;
    let pair = &gi.pair;
    for seeds in [&["(01)"][..], &["(012)"], &["(01)(23)", "(02)(13)"], &["(0123)"], &["(012)", "(01)(23)"]] {
        let elements: Vec<usize> = seeds.iter().map(|s| gi.element(s)).collect::<Result<_, _>>()?;
        let k = closure_generate(pair, &elements)?;
        let trace = core_trace(pair, &k)?;
        println!(
            "<{}>: subdim {:>2}, induced trivial {:?}, normal {}, core subdim {} after {} step(s)",
            seeds.join(", "),
            k.subdim(),
            induced_trivial_multiplicities(pair, &k)?,
            is_normal(pair, &k)?,
            trace.core().subdim(),
            trace.iterations()
        );
    }
    Ok(())
}
