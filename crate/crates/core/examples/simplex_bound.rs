//! Lattice-point bound for centered simplices, with the unimodular
//! certificate in the equality case.
//!
//! `cargo run --example simplex_bound`

use centroid_lattice::bounds::verify_simplex_bound;
use centroid_lattice::polytope::Simplex;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let simplices = [
        Simplex::ehrhart(2),
        Simplex::from_int_vertices(&[&[-1, -1], &[1, 0], &[0, 1]])?,
        Simplex::from_int_vertices(&[&[-2, -1], &[1, -1], &[1, 2]])?,
        Simplex::from_int_vertices(&[&[-1, 0], &[1, 1], &[0, -1]])?,
        Simplex::ehrhart(3),
    ];
    for s in &simplices {
        let r = verify_simplex_bound(s)?;
        println!(
            "{}: G = {}, bound = {}, {:?}",
            serde_json::to_string(s.vertices())?,
            r.actual,
            r.bound,
            r.status
        );
        if let Some(c) = r.evidence.equality.as_ref().and_then(|e| e.certificate()) {
            println!("  equivalent to S_d via {}", serde_json::to_string(c)?);
        }
    }
    Ok(())
}
