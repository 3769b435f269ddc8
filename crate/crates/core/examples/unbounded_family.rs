//! Triangles with one interior lattice point and arbitrarily many boundary
//! points once the centroid condition is dropped.
//!
//! `cargo run --example unbounded_family -- 10`

use centroid_lattice::lattice::enumerate_lattice_points;
use centroid_lattice::polytope::{centroid, to_hrep};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_m: i64 = std::env::args().nth(1).map_or(Ok(10), |s| s.parse())?;
    for m in 2..=max_m {
        let p = centroid_lattice::lattice::unbounded_family(m)?;
        let pts = enumerate_lattice_points(&to_hrep(&p)?)?;
        println!(
            "m = {m:>3}: G = {:>4}, interior = {}, centroid = {}",
            pts.count(),
            pts.interior_count(),
            serde_json::to_string(&centroid(&p)?)?
        );
    }
    Ok(())
}
