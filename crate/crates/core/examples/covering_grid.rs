//! Residue grids of the barycentric covering and the cell of a point.
//!
//! `cargo run --example covering_grid -- 2 1/2`

use centroid_lattice::barycentric::{build_grid, cell_of, BarycentricFrame};
use centroid_lattice::exact::{RatVector, Rational};
use centroid_lattice::polytope::Simplex;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let d: usize = args.first().map_or(Ok(2), |s| s.parse())?;
    let rho: Rational = args.get(1).map_or("1", String::as_str).parse()?;

    let grid = build_grid(d, &rho)?;
    println!(
        "d = {d}, rho = {rho}: n = {}, {} residues",
        grid.n,
        grid.residues.len()
    );
    for r in grid.residues.iter().take(12) {
        println!("  {}", serde_json::to_string(r)?);
    }
    if grid.residues.len() > 12 {
        println!("  ...");
    }

    let frame = BarycentricFrame::new(&Simplex::ehrhart(d))?;
    let x = RatVector::zeros(d);
    let b = frame.coords(&x)?;
    let cell = cell_of(&b, &grid)?;
    println!(
        "origin: beta = {}, cell {}",
        serde_json::to_string(&b)?,
        serde_json::to_string(&cell)?
    );
    Ok(())
}
