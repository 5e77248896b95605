//! Characteristic and Poincaré polynomials, Betti numbers and Möbius values
//! read off the intersection lattice.
//!
//! `cargo run --example lattice_invariants [file.arr]`

use divfree::arrangement::{parse_arrangement, weyl, WeylFamily};
use divfree::exact::{format_factored, integer_root_split};
use divfree::lattice::{betti_numbers, char_poly, poincare_poly};
use divfree::Arrangement;

fn show(name: &str, a: &Arrangement) {
    let l = a.lattice();
    let chi = char_poly(a);
    let factored = match integer_root_split(&chi).unwrap() {
        Some(roots) => format_factored(&roots),
        None => chi.to_string(),
    };
    println!("{name}: {a}");
    println!("  flats per codimension: {:?}", l.levels().iter().map(Vec::len).collect::<Vec<_>>());
    println!("  chi(t) = {factored}");
    println!("  pi(t)  = {}", poincare_poly(a));
    println!("  betti  = {:?}", betti_numbers(a));
    let bottom = *l.level(l.rank()).first().unwrap();
    println!("  mu(center) = {}", l.moebius(bottom));
}

fn main() -> anyhow::Result<()> {
    if let Some(path) = std::env::args().nth(1) {
        let a = parse_arrangement(&std::fs::read_to_string(&path)?)?;
        show(&path, &a);
        return Ok(());
    }
    let cb = parse_arrangement(include_str!("data/coord_braid4.arr"))?;
    show("coord_braid4", &cb);
    show("B3", &weyl(WeylFamily::B, 3)?);
    show("D4", &weyl(WeylFamily::D, 4)?);
    Ok(())
}
