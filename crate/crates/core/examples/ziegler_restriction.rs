//! Ziegler multirestrictions, their second Betti number and, in rank two,
//! their exponents.

use divfree::arrangement::{parse_arrangement, weyl, WeylFamily};
use divfree::lattice::b2;
use divfree::multi::{multi_b2, rank2_exponents, ziegler_restriction};

fn main() -> anyhow::Result<()> {
    let cb = parse_arrangement(include_str!("data/coord_braid4.arr"))?;
    let z = ziegler_restriction(&cb, 0)?;
    println!("coord_braid4 restricted to {}:", cb.hyperplanes()[0]);
    print!("{}", z.to_marr_string());
    println!("|m| = {}, b2(A^H, m^H) = {}", z.total(), multi_b2(&z));
    println!(
        "b2(A) - |A| + 1 = {} (equal for free A)\n",
        b2(&cb) - cb.len() as i64 + 1
    );

    // rank three: the restriction is a rank-two multiarrangement
    let b3 = weyl(WeylFamily::B, 3)?;
    for k in 0..b3.len() {
        let z = ziegler_restriction(&b3, k)?;
        let e = rank2_exponents(&z)?;
        println!("B3 on {:<8} multiplicities {:?} -> ({}, {})", b3.hyperplanes()[k].to_string(), z.multiplicities(), e.d1, e.d2);
    }

    let m = divfree::multi::parse_multiarrangement(include_str!("data/a2_222.marr"))?;
    let e = rank2_exponents(&m)?;
    println!("\nx, y, x - y with multiplicity 2 each -> ({}, {})", e.d1, e.d2);
    Ok(())
}
