//! `vol(K ∩ -K) / vol(K)` and halfspace cut fractions for centered bodies.
//!
//! `cargo run --example milman_pajor`

use centroid_lattice::bounds::{gruenbaum_check, milman_pajor_check};
use centroid_lattice::harness::random_halfspaces;
use centroid_lattice::polytope::Simplex;

fn main() -> centroid_lattice::Result<()> {
    for d in 1..=4 {
        let s = Simplex::ehrhart(d).to_polytope();
        let mp = milman_pajor_check(&s)?;
        let worst = random_halfspaces(d, 7, 0, 20)
            .iter()
            .map(|h| gruenbaum_check(&s, h).map(|g| g.fraction))
            .collect::<centroid_lattice::Result<Vec<_>>>()?
            .into_iter()
            .min()
            .expect("non-empty");
        println!(
            "S_{d}: vol ratio = {} (>= {}), smallest cut fraction over 20 halfspaces = {worst}",
            mp.ratio, mp.threshold
        );
    }
    Ok(())
}
