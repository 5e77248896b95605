use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{MultiError, Multiarrangement};
use crate::exact::{RatMatrix, Rational};

/// Exponents `(d1, d2)` of a rank-two multiarrangement, `d1 <= d2`,
/// `d1 + d2 = |m|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentPair {
    pub d1: u64,
    pub d2: u64,
}

/// Coefficients in `t` of `(p + t q)^i`-type products: the binary monomial
/// `x^i y^(e-i)` evaluated at `(p0 + t q0, p1 + t q1)`.
fn monomial_along(p: [i64; 2], q: [i64; 2], i: usize, e: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::from(1)];
    let factor = |acc: &Vec<BigInt>, c: i64, d: i64| {
        let mut out = vec![BigInt::zero(); acc.len() + 1];
        for (k, a) in acc.iter().enumerate() {
            out[k] += a * c;
            out[k + 1] += a * d;
        }
        out
    };
    for _ in 0..i {
        acc = factor(&acc, p[0], q[0]);
    }
    for _ in 0..e - i {
        acc = factor(&acc, p[1], q[1]);
    }
    acc
}

/// Whether a nonzero derivation `f dx + g dy` with `f, g` forms of degree `e`
/// satisfies `alpha^m(alpha) | a f + b g` for every line `alpha = a x + b y`.
fn has_derivation(lines: &[([i64; 2], u32)], e: usize) -> bool {
    let unknowns = 2 * (e + 1);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for &([a, b], m) in lines {
        let p = [-b, a];
        let q = [a, b];
        let along: Vec<Vec<BigInt>> = (0..=e).map(|i| monomial_along(p, q, i, e)).collect();
        for k in 0..(m as usize).min(e + 1) {
            let mut row = Vec::with_capacity(unknowns);
            for coef in [a, b] {
                for poly in &along {
                    row.push(Rational::from_integer(&poly[k] * coef));
                }
            }
            rows.push(row);
        }
    }
    rows.is_empty() || RatMatrix::from_rows(unknowns, rows).rank() < unknowns
}

/// Exact exponents of a multiarrangement of rank at most two.
///
/// After projecting to two coordinates, `d1` is the least degree `e` admitting
/// a nonzero logarithmic derivation with polynomial coefficients of degree
/// `e`; then `d2 = |m| - d1`.
pub fn rank2_exponents(m: &Multiarrangement) -> Result<ExponentPair, MultiError> {
    let base = m.base();
    let total = m.total();
    let r = base.normal_matrix().rank();
    match r {
        0 => return Ok(ExponentPair { d1: 0, d2: 0 }),
        1 => return Ok(ExponentPair { d1: 0, d2: total }),
        2 => {}
        r => return Err(MultiError::RankTooLarge(r)),
    }
    let ess = base.essentialize();
    let lines: Vec<([i64; 2], u32)> = ess
        .arrangement
        .hyperplanes()
        .iter()
        .zip(m.multiplicities())
        .map(|(h, &k)| ([h.normal()[0], h.normal()[1]], k))
        .collect();
    let d1 = (0..=total / 2)
        .find(|&e| has_derivation(&lines, e as usize))
        .expect("d1 <= |m|/2 by Saito's criterion");
    Ok(ExponentPair {
        d1,
        d2: total - d1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use proptest::prelude::*;

    fn multi(normals: &[[i64; 2]], m: &[u32]) -> Multiarrangement {
        Multiarrangement::new(Arrangement::from_normals(2, normals).unwrap(), m.to_vec()).unwrap()
    }

    fn pair(e: ExponentPair) -> (u64, u64) {
        (e.d1, e.d2)
    }

    #[test]
    fn known_pairs() {
        let three = [[1, 0], [0, 1], [1, -1]];
        assert_eq!(pair(rank2_exponents(&multi(&[[1, 0]], &[3])).unwrap()), (0, 3));
        assert_eq!(pair(rank2_exponents(&multi(&three, &[1, 1, 1])).unwrap()), (1, 2));
        assert_eq!(pair(rank2_exponents(&multi(&three, &[2, 2, 2])).unwrap()), (3, 3));
        assert_eq!(pair(rank2_exponents(&multi(&[[1, 0], [0, 1]], &[2, 5])).unwrap()), (2, 5));
        // one heavy line dominates: m(H) >= |m|/2 gives (|m| - m(H), m(H))
        assert_eq!(pair(rank2_exponents(&multi(&three, &[5, 1, 1])).unwrap()), (2, 5));
        // four generic lines with the constant multiplicity one: (1, 3)
        let four = [[1, 0], [0, 1], [1, 1], [1, 2]];
        assert_eq!(pair(rank2_exponents(&multi(&four, &[1, 1, 1, 1])).unwrap()), (1, 3));
        let empty = Multiarrangement::simple(Arrangement::empty(2));
        assert_eq!(pair(rank2_exponents(&empty).unwrap()), (0, 0));
    }

    #[test]
    fn rank_three_rejected() {
        let a = crate::arrangement::boolean(3);
        assert!(matches!(
            rank2_exponents(&Multiarrangement::simple(a)),
            Err(MultiError::RankTooLarge(3))
        ));
    }

    #[test]
    fn embedded_in_higher_dimension() {
        let a = Arrangement::from_normals(3, &[[1, 0, 0], [0, 1, 0], [1, 1, 0]]).unwrap();
        let m = Multiarrangement::new(a, vec![2, 2, 2]).unwrap();
        assert_eq!(pair(rank2_exponents(&m).unwrap()), (3, 3));
    }

    fn unimodular(ops: &[(bool, i64)]) -> [[i64; 2]; 2] {
        let mut g = [[1, 0], [0, 1]];
        for &(upper, k) in ops {
            g = if upper {
                [[g[0][0] + k * g[1][0], g[0][1] + k * g[1][1]], g[1]]
            } else {
                [g[0], [g[1][0] + k * g[0][0], g[1][1] + k * g[0][1]]]
            };
        }
        g
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn invariant_under_unimodular_change(
            ops in proptest::collection::vec((any::<bool>(), -2i64..3), 1..5),
            m in proptest::collection::vec(1u32..4, 4),
        ) {
            let normals = [[1, 0], [0, 1], [1, 1], [1, -2]];
            let g = unimodular(&ops);
            let moved: Vec<[i64; 2]> = normals
                .iter()
                .map(|n| [n[0] * g[0][0] + n[1] * g[1][0], n[0] * g[0][1] + n[1] * g[1][1]])
                .collect();
            let before = rank2_exponents(&multi(&normals, &m)).unwrap();
            let after = rank2_exponents(&multi(&moved, &m)).unwrap();
            prop_assert_eq!(before, after);
            prop_assert_eq!(before.d1 + before.d2, m.iter().map(|&x| u64::from(x)).sum::<u64>());
            prop_assert!(before.d1 <= before.d2);
        }
    }
}
