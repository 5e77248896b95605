//! Modular flags, b2-flags and divisional flags. A modular flag read
//! backwards gives a divisional flag with the same exponents.

use divfree::arrangement::{boolean, generic, weyl, WeylFamily};
use divfree::freeness::{b2_flag, divisional_flag, flag_generators, modular_flag, ss_implies_df};
use divfree::Arrangement;

fn describe(name: &str, a: &Arrangement) -> anyhow::Result<()> {
    let l = a.lattice();
    let names = |gens: Vec<usize>| -> Vec<String> { gens.into_iter().map(|g| a.hyperplanes()[g].to_string()).collect() };
    print!("{name:<10}");
    match modular_flag(a) {
        Some(f) => {
            let sizes: Vec<usize> = f.iter().map(|&x| l.flat(x).multiplicity()).collect();
            print!(" modular {:?} |A_X| {sizes:?}", names(flag_generators(&l, &f)));
            let d = ss_implies_df(a, &f)?;
            print!("; reversed {:?}", names(flag_generators(&l, &d)));
        }
        None => print!(" not supersolvable"),
    }
    assert_eq!(modular_flag(a).is_some(), b2_flag(a).is_some());
    match divisional_flag(a) {
        Some(f) => println!("; divisional via {:?}", names(flag_generators(&l, &f))),
        None => println!("; no divisional flag"),
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    describe("boolean3", &boolean(3))?;
    describe("A4", &weyl(WeylFamily::A, 4)?)?;
    describe("B3", &weyl(WeylFamily::B, 3)?)?;
    describe("D4", &weyl(WeylFamily::D, 4)?)?;
    describe("generic", &generic(3, 6)?)?;
    Ok(())
}
