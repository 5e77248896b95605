//! Multiarrangements `(A, m)`.
//!
//! The second Betti number of a multiarrangement is realized here by the
//! local-global sum `b2(A, m) = sum_{X in L_2(A)} d1(X) d2(X)`, where
//! `(d1(X), d2(X))` are the exponents of the rank-two localization
//! `(A_X, m|A_X)`. Those exponents come from [`rank2_exponents`], an exact
//! solver for the minimal degree of a logarithmic derivation.

mod rank2;

pub use rank2::{rank2_exponents, ExponentPair};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::{
    row_hyperplane, rows, Arrangement, ArrangementError, Flat, Hyperplane, ParseError,
    ParseErrorKind,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MultiError {
    #[error("multiplicity vector has length {found}, arrangement has {expected} hyperplanes")]
    LengthMismatch { expected: usize, found: usize },
    #[error("multiplicity of hyperplane {0} is zero")]
    ZeroMultiplicity(usize),
    #[error("rank {0} exceeds two")]
    RankTooLarge(usize),
    #[error("hyperplane {index} has multiplicity {multiplicity}, need at least 2")]
    MultiplicityTooSmall { index: usize, multiplicity: u32 },
    #[error("sign must be +1 or -1, got {0}")]
    BadSign(i32),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// An arrangement with a positive multiplicity on each hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiarrangement {
    base: Arrangement,
    multiplicities: Vec<u32>,
}

impl Multiarrangement {
    pub fn new(base: Arrangement, multiplicities: Vec<u32>) -> Result<Self, MultiError> {
        if multiplicities.len() != base.len() {
            return Err(MultiError::LengthMismatch {
                expected: base.len(),
                found: multiplicities.len(),
            });
        }
        if let Some(i) = multiplicities.iter().position(|&m| m == 0) {
            return Err(MultiError::ZeroMultiplicity(i));
        }
        Ok(Multiarrangement {
            base,
            multiplicities,
        })
    }

    pub fn simple(base: Arrangement) -> Self {
        let m = vec![1; base.len()];
        Multiarrangement {
            base,
            multiplicities: m,
        }
    }

    pub fn base(&self) -> &Arrangement {
        &self.base
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn multiplicity(&self, i: usize) -> u32 {
        self.multiplicities[i]
    }

    /// `|m|`
    pub fn total(&self) -> u64 {
        self.multiplicities.iter().map(|&m| u64::from(m)).sum()
    }

    /// `(A_X, m|A_X)`.
    pub fn localize(&self, x: &Flat) -> Result<Multiarrangement, MultiError> {
        let idx = x.hyperplane_indices();
        let base = self.base.localization(x)?;
        let m = idx.iter().map(|&i| self.multiplicities[i]).collect();
        Ok(Multiarrangement {
            base,
            multiplicities: m,
        })
    }

    fn restrict_to_indices(&self, idx: &[usize]) -> Multiarrangement {
        Multiarrangement {
            base: self.base.subarrangement(idx).expect("valid indices"),
            multiplicities: idx.iter().map(|&i| self.multiplicities[i]).collect(),
        }
    }

    /// `m ± delta_X`. Lowering a multiplicity-one hyperplane removes it.
    pub fn perturb(&self, index: usize, sign: i32) -> Result<Multiarrangement, MultiError> {
        self.base.hyperplane(index)?;
        match sign {
            1 => {
                let mut m = self.multiplicities.clone();
                m[index] += 1;
                Ok(Multiarrangement {
                    base: self.base.clone(),
                    multiplicities: m,
                })
            }
            -1 if self.multiplicities[index] == 1 => {
                let keep: Vec<usize> = (0..self.base.len()).filter(|&i| i != index).collect();
                Ok(self.restrict_to_indices(&keep))
            }
            -1 => {
                let mut m = self.multiplicities.clone();
                m[index] -= 1;
                Ok(Multiarrangement {
                    base: self.base.clone(),
                    multiplicities: m,
                })
            }
            s => Err(MultiError::BadSign(s)),
        }
    }

    pub fn to_marr_string(&self) -> String {
        let mut s = format!("dim {}\n", self.base.dim());
        for (h, m) in self.base.hyperplanes().iter().zip(&self.multiplicities) {
            let row: Vec<String> = h.normal().iter().map(i64::to_string).collect();
            s.push_str(&format!("{} {}\n", row.join(" "), m));
        }
        s
    }
}

/// Parses the `.marr` format: `.arr` rows with a trailing positive integer
/// multiplicity.
pub fn parse_multiarrangement(text: &str) -> Result<Multiarrangement, ParseError> {
    let (header, rows) = rows(text)?;
    let dim = match (header, rows.first()) {
        (Some(d), _) => d,
        (None, Some(r)) => r.entries.len().saturating_sub(1),
        (None, None) => {
            return Err(ParseError {
                line: 0,
                kind: ParseErrorKind::Malformed("empty input without `dim` header".into()),
            })
        }
    };
    let mut hs: Vec<Hyperplane> = Vec::new();
    let mut lines: Vec<usize> = Vec::new();
    let mut ms = Vec::new();
    for row in rows {
        if row.entries.len() != dim + 1 {
            return Err(ParseError {
                line: row.line,
                kind: ParseErrorKind::DimensionMismatch {
                    expected: dim + 1,
                    found: row.entries.len(),
                },
            });
        }
        let (normal, mult) = row.entries.split_at(dim);
        let mult = &mult[0];
        let m = (mult.is_integer())
            .then(|| u32::try_from(mult.to_integer()).ok())
            .flatten()
            .filter(|&m| m > 0)
            .ok_or_else(|| ParseError {
                line: row.line,
                kind: ParseErrorKind::Malformed(format!(
                    "multiplicity `{mult}` is not a positive integer"
                )),
            })?;
        let h = row_hyperplane(normal, row.line)?;
        if let Some(p) = hs.iter().position(|g| g == &h) {
            return Err(ParseError {
                line: row.line,
                kind: ParseErrorKind::Duplicate { first_line: lines[p] },
            });
        }
        hs.push(h);
        lines.push(row.line);
        ms.push(m);
    }
    let base = Arrangement::new(dim, hs).expect("validated above");
    Ok(Multiarrangement::new(base, ms).expect("positive multiplicities"))
}

/// `(A^H, m^H)` with `m^H(K) = #{L in A \ {H} : L ∩ H = K}`.
pub fn ziegler_restriction(a: &Arrangement, h: usize) -> Result<Multiarrangement, MultiError> {
    let r = a.restrict_to(h)?;
    let m = r.fibers.iter().map(|f| f.len() as u32).collect();
    Multiarrangement::new(r.arrangement, m)
}

/// `b2(A, m) = sum_{X in L_2(A)} d1(X) d2(X)`.
pub fn multi_b2(m: &Multiarrangement) -> i64 {
    let l = m.base().lattice();
    let terms: Vec<i64> = l
        .level(2)
        .par_iter()
        .map(|&x| {
            let local = m.restrict_to_indices(&l.flat(x).hyperplane_indices());
            let e = rank2_exponents(&local).expect("localization at a codim-2 flat has rank 2");
            (e.d1 * e.d2) as i64
        })
        .collect();
    terms.iter().sum()
}

/// `b2(A, m) - b2(A, m - delta_X)`.
pub fn b2_drop(m: &Multiarrangement, x: usize) -> Result<i64, MultiError> {
    m.base.hyperplane(x)?;
    let mx = m.multiplicity(x);
    if mx < 2 {
        return Err(MultiError::MultiplicityTooSmall {
            index: x,
            multiplicity: mx,
        });
    }
    Ok(multi_b2(m) - multi_b2(&m.perturb(x, -1)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{boolean, parse_arrangement, weyl, WeylFamily};
    use crate::lattice::b2;

    fn coord_braid4() -> Arrangement {
        parse_arrangement(
            "dim 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n1 -1 0 0\n1 0 -1 0\n1 0 0 -1\n0 1 -1 0\n0 1 0 -1\n",
        )
        .unwrap()
    }

    fn lines_with(mults: &[u32]) -> Multiarrangement {
        let base = Arrangement::from_normals(2, &[[1, 0], [0, 1], [1, -1]]).unwrap();
        Multiarrangement::new(base, mults.to_vec()).unwrap()
    }

    #[test]
    fn ziegler_of_coord_braid() {
        let z = ziegler_restriction(&coord_braid4(), 0).unwrap();
        let mut got: Vec<(String, u32)> = z
            .base()
            .hyperplanes()
            .iter()
            .zip(z.multiplicities())
            .map(|(h, &m)| (h.to_string(), m))
            .collect();
        got.sort();
        // restricted coordinates (x2, x3, x4) become (x1, x2, x3)
        assert_eq!(
            got,
            vec![
                ("x1".to_string(), 2),
                ("x1 - x2".to_string(), 1),
                ("x1 - x3".to_string(), 1),
                ("x2".to_string(), 2),
                ("x3".to_string(), 2),
            ]
        );
        assert_eq!(z.total(), 8);
    }

    #[test]
    fn ziegler_small_cases() {
        let z = ziegler_restriction(&boolean(2), 0).unwrap();
        assert_eq!(z.base().len(), 1);
        assert_eq!(z.multiplicities(), &[1]);
        let z = ziegler_restriction(&weyl(WeylFamily::A, 4).unwrap(), 0).unwrap();
        let mut m = z.multiplicities().to_vec();
        m.sort();
        assert_eq!(m, vec![1, 2, 2]);
        assert_eq!(z.total(), 5);
        assert!(ziegler_restriction(&boolean(2), 5).is_err());
    }

    #[test]
    fn local_global_b2() {
        for a in [coord_braid4(), weyl(WeylFamily::B, 3).unwrap(), boolean(3)] {
            assert_eq!(multi_b2(&Multiarrangement::simple(a.clone())), b2(&a));
        }
        let z = ziegler_restriction(&coord_braid4(), 0).unwrap();
        assert_eq!(multi_b2(&z), 21);
        assert_eq!(multi_b2(&lines_with(&[2, 2, 2])), 9);
    }

    #[test]
    fn perturbation() {
        let base = Arrangement::from_normals(2, &[[1, 0], [0, 1]]).unwrap();
        let m = Multiarrangement::new(base.clone(), vec![2, 2]).unwrap();
        let lowered = m.perturb(0, -1).unwrap();
        assert_eq!(lowered.multiplicities(), &[1, 2]);
        assert_eq!(lowered.perturb(0, 1).unwrap(), m);
        let gone = lowered.perturb(0, -1).unwrap();
        assert_eq!(gone.base().len(), 1);
        assert!(m.perturb(0, 2).is_err());

        let z = ziegler_restriction(&coord_braid4(), 0).unwrap();
        assert_eq!(z.perturb(0, -1).unwrap().total(), 7);
    }

    #[test]
    fn b2_drop_cases() {
        // rank-2 base: d1 d2 - d1' d2'
        let m = lines_with(&[2, 2, 2]);
        let lowered = rank2_exponents(&m.perturb(0, -1).unwrap()).unwrap();
        assert_eq!(b2_drop(&m, 0).unwrap(), 9 - (lowered.d1 * lowered.d2) as i64);
        assert!(matches!(
            b2_drop(&lines_with(&[1, 2, 2]), 0),
            Err(MultiError::MultiplicityTooSmall { .. })
        ));
        // simple arrangement raised then dropped back
        let a = weyl(WeylFamily::A, 4).unwrap();
        let raised = Multiarrangement::simple(a.clone()).perturb(0, 1).unwrap();
        let drop = b2_drop(&raised, 0).unwrap();
        assert_eq!(drop, multi_b2(&raised) - b2(&a));
    }

    #[test]
    fn marr_format() {
        let m = parse_multiarrangement("dim 2\n1 0 3\n0 1 1\n").unwrap();
        assert_eq!(m.multiplicities(), &[3, 1]);
        assert_eq!(parse_multiarrangement(&m.to_marr_string()).unwrap(), m);
        assert!(parse_multiarrangement("dim 2\n1 0 0\n").is_err());
        assert!(parse_multiarrangement("dim 2\n1 0 1/2\n").is_err());
        assert!(parse_multiarrangement("dim 2\n1 0\n").is_err());
    }
}
