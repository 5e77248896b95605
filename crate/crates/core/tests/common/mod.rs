//! Shared corpus and brute-force oracles for the integration tests.
//!
//! The oracles deliberately avoid the library's lattice: they enumerate
//! subsets of hyperplanes and take integer ranks directly.

#![allow(dead_code)]

use divfree::arrangement::{boolean, generic, parse_arrangement, random_arrangement, weyl, Arrangement, WeylFamily};
use divfree::IntPolynomial;

pub const COORD_BRAID4: &str = include_str!("../../examples/data/coord_braid4.arr");

pub fn coord_braid4() -> Arrangement {
    parse_arrangement(COORD_BRAID4).unwrap()
}

pub struct Member {
    pub name: String,
    pub arrangement: Arrangement,
}

fn member(name: impl Into<String>, a: Arrangement) -> Member {
    Member {
        name: name.into(),
        arrangement: a,
    }
}

/// Weyl arrangements of rank at most four.
pub fn weyl_members() -> Vec<Member> {
    let mut out = Vec::new();
    for dim in 2..=5 {
        out.push(member(format!("A{dim}"), weyl(WeylFamily::A, dim).unwrap()));
    }
    for dim in 2..=4 {
        out.push(member(format!("B{dim}"), weyl(WeylFamily::B, dim).unwrap()));
        out.push(member(format!("D{dim}"), weyl(WeylFamily::D, dim).unwrap()));
    }
    out
}

pub fn corpus() -> Vec<Member> {
    let mut out = weyl_members();
    for dim in 2..=4 {
        out.push(member(format!("boolean{dim}"), boolean(dim)));
    }
    for (d, n) in [(3, 4), (3, 5), (3, 6), (4, 5), (4, 6)] {
        out.push(member(format!("generic{d}x{n}"), generic(d, n).unwrap()));
    }
    let cb = coord_braid4();
    out.push(member("coord_braid4 minus x1", cb.delete(0).unwrap()));
    out.push(member("coord_braid4 on x1", cb.restrict_to(0).unwrap().arrangement));
    out.push(member("coord_braid4", cb));
    for seed in 0..12 {
        let dim = 3 + (seed as usize % 2);
        out.push(member(format!("random seed {seed}"), random_arrangement(dim, 7, 2, seed)));
    }
    out
}

/// Rank by fraction-free elimination over `i128`.
pub fn int_rank(rows: &[&[i64]]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            let (a, b) = (m[rank][c], m[r][c]);
            for k in 0..cols {
                m[r][k] = m[r][k] * a - m[rank][k] * b;
            }
            let g = m[r].iter().fold(0i128, |g, &x| num_gcd(g, x.abs()));
            if g > 1 {
                m[r].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn num_gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

/// `chi(A; t) = sum_B (-1)^|B| t^(dim - rank B)` over all subsets `B`.
pub fn whitney_chi(a: &Arrangement) -> IntPolynomial {
    let n = a.len();
    assert!(n <= 16, "oracle is exponential");
    let normals: Vec<&[i64]> = a.hyperplanes().iter().map(|h| h.normal()).collect();
    let mut coeffs = vec![0i64; a.dim() + 1];
    for mask in 0u32..(1 << n) {
        let rows: Vec<&[i64]> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| normals[i]).collect();
        let r = int_rank(&rows);
        let sign = if rows.len().is_multiple_of(2) { 1 } else { -1 };
        coeffs[a.dim() - r] += sign;
    }
    IntPolynomial::new(coeffs)
}

/// `b2` read off the Whitney expansion.
pub fn whitney_b2(a: &Arrangement) -> i64 {
    if a.dim() < 2 {
        return 0;
    }
    whitney_chi(a).coeff(a.dim() - 2)
}

/// Closed form for three lines with multiplicities `k1, k2, k3`: `(k - k3, k3)`
/// when the largest dominates, balanced otherwise.
pub fn three_line_exponents(k: [u64; 3]) -> (u64, u64) {
    let mut k = k;
    k.sort_unstable();
    let total: u64 = k.iter().sum();
    if k[2] + 1 >= k[0] + k[1] {
        let other = total - k[2];
        (other.min(k[2]), other.max(k[2]))
    } else {
        (total / 2, total - total / 2)
    }
}

pub fn pairwise(d: &[u64]) -> i64 {
    let mut s = 0i64;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            s += (d[i] * d[j]) as i64;
        }
    }
    s
}
