//! For each hyperplane, whether `pi(A^H)` splits and divides `pi(A)` and
//! `pi(A \ {H})`, together with the three verdicts.

use divfree::arrangement::{parse_arrangement, weyl, WeylFamily};
use divfree::freeness::{conjecture_scan, Engine};
use divfree::Arrangement;

fn scan(name: &str, engine: &Engine, a: &Arrangement) {
    let r = conjecture_scan(engine, a);
    println!("{name} (rank {}): {} candidates, {} for review", r.rank, r.candidates, r.reviews);
    if let Some(n) = &r.note {
        println!("  {n}");
    }
    for row in &r.rows {
        println!(
            "  {:<10} divides {:>5}/{:<5} A {:<9} A' {:<9} A^H {:<9} {:?}",
            row.hyperplane.to_string(),
            row.divides_whole,
            row.divides_deletion,
            row.whole.label(),
            row.deletion.label(),
            row.restriction.label(),
            row.status
        );
    }
}

fn main() -> anyhow::Result<()> {
    let engine = Engine::new();
    scan("coord_braid4", &engine, &parse_arrangement(include_str!("data/coord_braid4.arr"))?);
    scan("A5", &engine, &weyl(WeylFamily::A, 5)?);
    scan("B3", &engine, &weyl(WeylFamily::B, 3)?);
    Ok(())
}
