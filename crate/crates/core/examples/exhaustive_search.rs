//! Exhaustive search over centroid-zero lattice simplices.
//!
//! `cargo run --release --example exhaustive_search -- 2 5`

use centroid_lattice::harness::{run_suite, Mode, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let dim = args.first().map_or(Ok(2), |s| s.parse())?;
    let bound = args.get(1).map_or(Ok(3), |s| s.parse())?;

    let cfg = SearchConfig::new(dim, bound, &[Mode::ExhaustiveSimplices]);
    let summary = run_suite(&cfg)?;

    println!("d = {dim}, vertices in [-{bound}, {bound}]^{dim}");
    println!("simplices tested:  {}", summary.bodies_tested);
    println!("violations:        {}", summary.violations.len());
    println!("errors:            {}", summary.errors.len());
    println!("lemma pairs:       {}", summary.checks.lemma1_pairs);
    if let Some(g) = summary.max_g_single_interior {
        println!("max G, one interior point: {g}");
    }
    println!("certified equality cases: {}", summary.equality_cases.len());
    for (l1, g) in &summary.max_g_by_lambda1 {
        println!("  lambda1 = {l1:>6}: max G = {g}");
    }
    if let Some(r) = &summary.min_mp_ratio {
        println!("min vol(K ∩ -K)/vol(K) = {r} ≈ {:.4}", r.to_f64());
    }
    println!(
        "larger-than-conjectured bodies: {}",
        summary.conjecture_verdict()
    );
    println!("elapsed: {:.1?}", summary.runtime);
    Ok(())
}
