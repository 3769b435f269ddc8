//! First successive minimum of a few centered bodies.
//!
//! `cargo run --example successive_minimum`

use centroid_lattice::exact::RatVector;
use centroid_lattice::lattice::lambda1_body;
use centroid_lattice::polytope::{Body, Polytope, Simplex};

fn main() -> centroid_lattice::Result<()> {
    let square = Polytope::from_points(
        2,
        [[-2, -2], [2, -2], [2, 2], [-2, 2]]
            .iter()
            .map(|p| RatVector::from_ints(p))
            .collect(),
    )?;
    let bodies = [
        ("[-2,2]^2", Body::from_polytope(&square)?),
        (
            "S_2",
            Body::from_polytope(&Simplex::ehrhart(2).to_polytope())?,
        ),
        (
            "S_3",
            Body::from_polytope(&Simplex::ehrhart(3).to_polytope())?,
        ),
        (
            "3 S_2",
            Body::from_polytope(&Simplex::ehrhart_scaled(2, 3).to_polytope())?,
        ),
    ];
    for (name, body) in &bodies {
        let l = lambda1_body(body)?;
        println!(
            "{name:>9}: lambda1 = {:<5} witness {:?}",
            l.value.to_string(),
            l.witness
        );
    }
    Ok(())
}
