use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{ExactError, Rational};

/// Univariate polynomial with integer coefficients, lowest degree first.
///
/// The coefficient vector is always trimmed, so the zero polynomial is the
/// empty vector and otherwise the last entry is nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

fn checked(x: Option<i64>) -> i64 {
    x.expect("integer polynomial coefficient overflow")
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::new(vec![1])
    }

    /// `c * t^d`
    pub fn monomial(c: i64, d: usize) -> Self {
        let mut v = vec![0; d + 1];
        v[d] = c;
        Self::new(v)
    }

    /// `prod (t - r)` over the given roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots.iter().fold(Self::one(), |acc, &r| {
            acc.mul(&Self::new(vec![checked(r.checked_neg()), 1]))
        })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| checked(self.coeff(i).checked_add(other.coeff(i))))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| checked(self.coeff(i).checked_sub(other.coeff(i))))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = checked(out[i + j].checked_add(checked(a.checked_mul(b))));
            }
        }
        Self::new(out)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        Self::new(v)
    }

    /// Substitutes `t -> -t`.
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
                .collect(),
        )
    }

    /// Coefficient reversal `t^n p(1/t)`; `n` must be at least the degree.
    pub fn reverse(&self, n: usize) -> Self {
        assert!(self.degree().is_none_or(|d| d <= n));
        Self::new((0..=n).map(|i| self.coeff(n - i)).collect())
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0i64, |acc, &c| checked(checked(acc.checked_mul(t)).checked_add(c)))
    }

    /// Exact evaluation, immune to intermediate overflow.
    pub fn eval_big(&self, t: i64) -> BigInt {
        let t = BigInt::from(t);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * &t + c)
    }

    /// Long division over the rationals: `self = q * divisor + r`.
    pub fn div_rem_rational(
        &self,
        divisor: &Self,
    ) -> Result<(Vec<Rational>, Vec<Rational>), ExactError> {
        if divisor.is_zero() {
            return Err(ExactError::ZeroDivisor);
        }
        let to_rat = |c: &i64| Rational::from_integer(BigInt::from(*c));
        let mut rem: Vec<Rational> = self.coeffs.iter().map(to_rat).collect();
        let d: Vec<Rational> = divisor.coeffs.iter().map(to_rat).collect();
        let dn = d.len() - 1;
        if rem.len() <= dn {
            return Ok((vec![], rem));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dn];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dn] / &d[dn];
            if !c.is_zero() {
                for (j, dj) in d.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dn);
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
        Ok((quot, rem))
    }

    /// `Some(q)` with `self = q * divisor` and `q` integral, otherwise `None`.
    pub fn exact_quotient(&self, divisor: &Self) -> Result<Option<Self>, ExactError> {
        let (q, r) = self.div_rem_rational(divisor)?;
        if !r.is_empty() || !q.iter().all(|c| c.is_integer()) {
            return Ok(None);
        }
        let q: Option<Vec<i64>> = q
            .into_iter()
            .map(|c| i64::try_from(c.to_integer()).ok())
            .collect();
        q.map(Self::new).map(Some).ok_or(ExactError::Overflow)
    }
}

/// True iff `q = p * r` for an integer polynomial `r`.
pub fn poly_divides(p: &IntPolynomial, q: &IntPolynomial) -> Result<bool, ExactError> {
    Ok(q.exact_quotient(p)?.is_some())
}

/// Splits a monic polynomial into integer linear factors, returning the roots
/// with multiplicity in ascending order, or `None` when some factor is not
/// linear over the integers.
pub fn integer_root_split(p: &IntPolynomial) -> Result<Option<Vec<i64>>, ExactError> {
    if !p.is_monic() {
        return Err(ExactError::NotMonic);
    }
    let mut rest = p.clone();
    let mut roots = Vec::new();
    'outer: while rest.degree().unwrap_or(0) > 0 {
        let c0 = rest.coeff(0);
        if c0 == 0 {
            roots.push(0);
            rest = IntPolynomial::new(rest.coeffs[1..].to_vec());
            continue;
        }
        // any integer root divides the constant term
        let n = c0.unsigned_abs();
        let mut d = 1u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                for cand in [d, n / d] {
                    for r in [cand as i64, -(cand as i64)] {
                        if rest.eval_big(r).is_zero() {
                            roots.push(r);
                            rest = rest
                                .exact_quotient(&IntPolynomial::new(vec![-r, 1]))?
                                .expect("root division is exact");
                            continue 'outer;
                        }
                    }
                }
            }
            d += 1;
        }
        return Ok(None);
    }
    roots.sort_unstable();
    Ok(Some(roots))
}

/// Renders `t^k (t-a)(t-b)^2...` for a root multiset.
pub fn format_factored(roots: &[i64]) -> String {
    let mut sorted = roots.to_vec();
    sorted.sort_unstable();
    let mut out = String::new();
    let mut i = 0;
    while i < sorted.len() {
        let r = sorted[i];
        let mult = sorted[i..].iter().take_while(|&&x| x == r).count();
        let base = match r {
            0 => "t".to_string(),
            r if r > 0 => format!("(t-{r})"),
            r => format!("(t+{})", -r),
        };
        out.push_str(&base);
        if mult > 1 {
            out.push_str(&format!("^{mult}"));
        }
        i += mult;
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{a}t^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}
