use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, ArrangementError};
use crate::exact::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("Poincaré polynomial {0} is not divisible by 1 + t")]
    NotDivisibleByOnePlusT(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// `chi(A; t) = sum_X mu(X) t^{dim X}`, monic of degree `dim`.
pub fn char_poly(a: &Arrangement) -> IntPolynomial {
    let l = a.lattice();
    let mut c = vec![0i64; a.dim() + 1];
    for x in 0..l.len() {
        c[l.flat(x).dim()] += l.moebius(x);
    }
    IntPolynomial::new(c)
}

/// `pi(A; t) = sum_X mu(X) (-t)^{codim X}`; its coefficients are the Betti numbers.
pub fn poincare_poly(a: &Arrangement) -> IntPolynomial {
    let l = a.lattice();
    let mut c = vec![0i64; l.rank() + 1];
    for x in 0..l.len() {
        let k = l.flat(x).codim();
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        c[k] += sign * l.moebius(x);
    }
    IntPolynomial::new(c)
}

pub fn betti_numbers(a: &Arrangement) -> Vec<i64> {
    poincare_poly(a).coeffs().to_vec()
}

/// `b2(A) = sum_{X in L_2} (|A_X| - 1)`.
pub fn b2(a: &Arrangement) -> i64 {
    let l = a.lattice();
    l.level(2)
        .iter()
        .map(|&x| l.flat(x).multiplicity() as i64 - 1)
        .sum()
}

/// The `t^2` coefficient of `pi(A; t)`; always equal to [`b2`].
pub fn b2_from_poincare(a: &Arrangement) -> i64 {
    poincare_poly(a).coeff(2)
}

/// `t^2` coefficient of `pi(A; t) / (1 + t)`. The division must be exact,
/// which holds for every nonempty central arrangement.
pub fn b2_reduced(a: &Arrangement) -> Result<i64, LatticeError> {
    let pi = poincare_poly(a);
    let q = pi
        .exact_quotient(&IntPolynomial::new(vec![1, 1]))
        .ok()
        .flatten()
        .ok_or_else(|| LatticeError::NotDivisibleByOnePlusT(pi.to_string()))?;
    Ok(q.coeff(2))
}

/// One row of the `b2(A) >= b2(A^H) + (|A| - |A^H|) |A^H|` report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct B1B2Row {
    pub hyperplane: usize,
    pub size: usize,
    pub restriction_size: usize,
    pub b2: i64,
    pub b2_restriction: i64,
    /// `b2(A) - b2(A^H) - (|A| - |A^H|) |A^H|`; never negative.
    pub slack: i64,
    /// Slack zero: `H` is a candidate for the division rule.
    pub equality: bool,
}

pub fn b1b2_row(a: &Arrangement, h: usize) -> Result<B1B2Row, ArrangementError> {
    let r = a.restrict_to(h)?.arrangement;
    let (n, nh) = (a.len() as i64, r.len() as i64);
    let (b, bh) = (b2(a), b2(&r));
    let slack = b - bh - (n - nh) * nh;
    Ok(B1B2Row {
        hyperplane: h,
        size: a.len(),
        restriction_size: r.len(),
        b2: b,
        b2_restriction: bh,
        slack,
        equality: slack == 0,
    })
}

pub fn b1b2_check(a: &Arrangement) -> Vec<B1B2Row> {
    (0..a.len())
        .map(|h| b1b2_row(a, h).expect("index in range"))
        .collect()
}
