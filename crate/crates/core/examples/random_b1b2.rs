//! The restriction inequality `b2(A) >= b2(A^H) + (|A| - |A^H|) |A^H|` on
//! seeded random arrangements, with the equality cases counted.
//!
//! `cargo run --example random_b1b2 [count] [seed]`

use divfree::arrangement::random_arrangement;
use divfree::lattice::b1b2_check;

fn main() {
    let mut args = std::env::args().skip(1);
    let count: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(100);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let (mut rows, mut equal, mut worst) = (0, 0, 0);
    for s in seed..seed + count {
        let a = random_arrangement(3 + (s % 2) as usize, 6 + (s % 5) as usize, 3, s);
        for r in b1b2_check(&a) {
            assert!(r.slack >= 0, "violation on {a}");
            rows += 1;
            equal += usize::from(r.equality);
            worst = worst.max(r.slack);
        }
    }
    println!("{count} arrangements, {rows} hyperplanes: {equal} equalities, largest slack {worst}");
}
