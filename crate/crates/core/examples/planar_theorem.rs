//! The planar bound for bodies whose only interior lattice point is the
//! origin, with the proof branch that applies.
//!
//! `cargo run --example planar_theorem`

use centroid_lattice::exact::RatVector;
use centroid_lattice::planar::verify_thm3;
use centroid_lattice::polytope::{to_hrep, Polytope, Simplex};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let hexagon = Polytope::from_points(
        2,
        [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]]
            .iter()
            .map(|p| RatVector::from_ints(p))
            .collect(),
    )?;
    for (name, h) in [
        ("S_2", Simplex::ehrhart(2).hrep()),
        ("hexagon", to_hrep(&hexagon)?),
    ] {
        let r = verify_thm3(&h)?;
        println!(
            "{name}: G = {} (bound {}), {:?}",
            r.actual, r.bound, r.status
        );
        println!("{}", serde_json::to_string_pretty(&r.evidence)?);
    }
    Ok(())
}
