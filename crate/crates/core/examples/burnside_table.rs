//! Character table of a group given by its Cayley table (the cyclic group of
//! order 3), then of A4 from the bundled generators.

use hopfkernel::group::{bundled_path, character_table, GroupTable, DEFAULT_SEED};
use hopfkernel::{Error, Tolerance};

fn print(g: &GroupTable, tol: &Tolerance) -> Result<(), Error> {
    let t = character_table(g, DEFAULT_SEED, tol)?;
    println!("{} (orthogonality residual {:.1e})", g.name(), t.orthogonality_residual());
    for chi in 0..t.len() {
        let row: Vec<String> = (0..t.classes.len())
            .map(|c| {
                let v = t.values[chi][c];
                if v.im.abs() < 1e-9 {
                    format!("{:>6.2}", v.re)
                } else {
                    format!("{:.2}{:+.2}i", v.re, v.im)
                }
            })
            .collect();
        println!("  {:>3}: {}", t.labels[chi], row.join("  "));
    }
    Ok(())
}

fn main() -> Result<(), Error> {
    let tol = Tolerance::default();
    let c3 = GroupTable::from_cayley(
        "C3",
        vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
        Some(vec!["e".into(), "a".into(), "a2".into()]),
    )?;
    print(&c3, &tol)?;
    print(&GroupTable::load(bundled_path("A4"))?, &tol)
}
