//! Central partitions of both character rings of kQ8 and the block checks.

use hopfkernel::central::{center_theorem_checks, central_subspace, class_partition};
use hopfkernel::group::{bundled_path, GroupInstance, DEFAULT_SEED};
use hopfkernel::{Error, Side, Tolerance};

fn main() -> Result<(), Error> {
    let gi = GroupInstance::load(bundled_path("Q8"), DEFAULT_SEED, Tolerance::default())?;
    let pair = &gi.pair;
    for side in [Side::HStar, Side::H] {
        let q = central_subspace(pair, side)?;
        let part = class_partition(pair, side)?;
        println!(
            "{}: null space of dimension {} (min eigenvalue {:.1e})",
            side.name(),
            q.dimension(),
            q.min_eigenvalue
        );
        for b in &part.blocks {
            println!("  {{{}}}", pair.labels_of(side, b).join(", "));
        }
    }
    let part = class_partition(pair, Side::H)?;
    for i in 0..part.blocks.len() {
        let r = center_theorem_checks(pair, &part, i, Some(gi.backing()))?;
        println!(
            "block {:?}: |ker| = {}, |Z| = {}, ratio {}",
            pair.labels_of(Side::H, &r.block),
            r.kernel.subdim(),
            r.center.subdim(),
            r.ratio
        );
    }
    Ok(())
}
