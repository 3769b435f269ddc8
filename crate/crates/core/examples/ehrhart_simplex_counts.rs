//! Lattice points of the dilated extremal simplices `m·S_d`.
//!
//! `cargo run --example ehrhart_simplex_counts`

use centroid_lattice::lattice::{count, count_interior};
use centroid_lattice::polytope::Simplex;

fn main() -> centroid_lattice::Result<()> {
    println!("{:>2} {:>2} {:>10} {:>10}", "d", "m", "G", "interior");
    for d in 1..=4 {
        for m in 1..=5 {
            let h = Simplex::ehrhart_scaled(d, m).hrep();
            println!(
                "{d:>2} {m:>2} {:>10} {:>10}",
                count(&h)?,
                count_interior(&h)?
            );
        }
    }
    Ok(())
}
