//! Central hyperplane arrangements over the rationals.
//!
//! A hyperplane is stored by its primitive integer normal (gcd 1, first
//! nonzero entry positive), so equality of hyperplanes is equality of
//! vectors. Arrangements keep their hyperplanes in insertion order; the
//! canonical key sorts them.

mod flat;
mod generators;
mod parse;

pub use flat::Flat;
pub use generators::{boolean, generic, random_arrangement, weyl, WeylFamily};
pub use parse::{parse_arrangement, ParseError, ParseErrorKind};
pub(crate) use parse::{row_hyperplane, rows};

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exact::{self, RatMatrix, Rational};
use crate::lattice::IntersectionLattice;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("zero normal vector")]
    ZeroNormal,
    #[error("normal has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("hyperplanes {first} and {second} coincide")]
    DuplicateHyperplane { first: usize, second: usize },
    #[error("hyperplane index {index} out of range for {len} hyperplanes")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("subspace is not a flat of this arrangement")]
    NotAFlat,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("integer entry too large")]
    Overflow,
}

/// Linear hyperplane `{x : <normal, x> = 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Hyperplane {
    normal: Vec<i64>,
}

impl TryFrom<Vec<i64>> for Hyperplane {
    type Error = ArrangementError;
    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        Hyperplane::new(v)
    }
}

impl From<Hyperplane> for Vec<i64> {
    fn from(h: Hyperplane) -> Self {
        h.normal
    }
}

impl Hyperplane {
    pub fn new(normal: Vec<i64>) -> Result<Self, ArrangementError> {
        let big: Vec<BigInt> = normal.iter().map(|&x| BigInt::from(x)).collect();
        Self::from_bigints(big)
    }

    pub fn from_rationals(normal: &[Rational]) -> Result<Self, ArrangementError> {
        Self::from_bigints(exact::primitive_integer_vector(normal))
    }

    fn from_bigints(mut v: Vec<BigInt>) -> Result<Self, ArrangementError> {
        if v.iter().all(|x| x == &BigInt::from(0)) {
            return Err(ArrangementError::ZeroNormal);
        }
        exact::normalize_primitive(&mut v);
        let normal = exact::to_i64_vec(&v).map_err(|_| ArrangementError::Overflow)?;
        Ok(Hyperplane { normal })
    }

    /// Canonicalizes a wide integer vector (used for induced normals).
    pub(crate) fn from_wide(v: &[i128]) -> Result<Self, ArrangementError> {
        Self::from_bigints(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal_rational(&self) -> Vec<Rational> {
        self.normal.iter().map(|&x| exact::rat(x)).collect()
    }

    /// `<normal, v>` computed without overflow for moderate inputs.
    pub fn eval(&self, v: &[i64]) -> i128 {
        self.normal
            .iter()
            .zip(v)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum()
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.normal.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "x{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// Order-insensitive identity of an arrangement: ambient dimension plus the
/// sorted list of normals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArrangementKey {
    pub dim: usize,
    pub normals: Vec<Vec<i64>>,
}

/// A central arrangement in `Q^dim`. The intersection lattice is built on
/// first use and cached.
#[derive(Clone, Serialize, Deserialize)]
#[serde(into = "ArrangementData", try_from = "ArrangementData")]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    lattice: OnceLock<Arc<IntersectionLattice>>,
}

#[derive(Serialize, Deserialize)]
struct ArrangementData {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl From<Arrangement> for ArrangementData {
    fn from(a: Arrangement) -> Self {
        ArrangementData {
            dim: a.dim,
            hyperplanes: a.hyperplanes,
        }
    }
}

impl TryFrom<ArrangementData> for Arrangement {
    type Error = ArrangementError;
    fn try_from(d: ArrangementData) -> Result<Self, Self::Error> {
        Arrangement::new(d.dim, d.hyperplanes)
    }
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.hyperplanes == other.hyperplanes
    }
}

impl Eq for Arrangement {}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Arrangement")
            .field("dim", &self.dim)
            .field("hyperplanes", &self.hyperplanes)
            .finish()
    }
}

/// Result of restricting an arrangement to a flat `X`.
#[derive(Clone, Debug)]
pub struct Restriction {
    /// `A^X` in the coordinates given by `basis`.
    pub arrangement: Arrangement,
    /// Integer basis of `X` (each vector has the ambient length).
    pub basis: Vec<Vec<i64>>,
    /// For each hyperplane of `A^X`, the indices of `A` that trace onto it.
    pub fibers: Vec<Vec<usize>>,
}

impl Restriction {
    pub fn fiber_sizes(&self) -> Vec<usize> {
        self.fibers.iter().map(Vec::len).collect()
    }
}

/// Quotient of an arrangement by its center.
#[derive(Clone, Debug)]
pub struct Essentialization {
    pub arrangement: Arrangement,
    /// Number of coordinates dropped; `chi(A) = t^zeros * chi(ess A)`.
    pub zeros: usize,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self, ArrangementError> {
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.dim() != dim {
                return Err(ArrangementError::DimensionMismatch {
                    expected: dim,
                    found: h.dim(),
                });
            }
            if let Some(j) = hyperplanes[..i].iter().position(|g| g == h) {
                return Err(ArrangementError::DuplicateHyperplane { first: j, second: i });
            }
        }
        Ok(Arrangement {
            dim,
            hyperplanes,
            lattice: OnceLock::new(),
        })
    }

    pub fn from_normals<R: AsRef<[i64]>>(dim: usize, normals: &[R]) -> Result<Self, ArrangementError> {
        let hs = normals
            .iter()
            .map(|n| Hyperplane::new(n.as_ref().to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dim, hs)
    }

    pub fn empty(dim: usize) -> Self {
        Arrangement {
            dim,
            hyperplanes: vec![],
            lattice: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> Result<&Hyperplane, ArrangementError> {
        self.hyperplanes.get(i).ok_or(ArrangementError::IndexOutOfRange {
            index: i,
            len: self.len(),
        })
    }

    pub fn index_of(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.iter().position(|g| g == h)
    }

    pub fn normal_matrix(&self) -> RatMatrix {
        RatMatrix::from_int_rows(
            self.dim,
            &self.hyperplanes.iter().map(|h| h.normal.clone()).collect::<Vec<_>>(),
        )
    }

    pub fn rank(&self) -> usize {
        self.lattice().rank()
    }

    pub fn key(&self) -> ArrangementKey {
        let mut normals: Vec<Vec<i64>> = self.hyperplanes.iter().map(|h| h.normal.clone()).collect();
        normals.sort();
        ArrangementKey {
            dim: self.dim,
            normals,
        }
    }

    /// Same hyperplane set, possibly in another order.
    pub fn same_as(&self, other: &Arrangement) -> bool {
        self.key() == other.key()
    }

    pub fn lattice(&self) -> Arc<IntersectionLattice> {
        self.lattice
            .get_or_init(|| Arc::new(IntersectionLattice::build(self)))
            .clone()
    }

    /// `A \ {H_index}`.
    pub fn delete(&self, index: usize) -> Result<Arrangement, ArrangementError> {
        self.delete_many(&[index])
    }

    pub fn delete_many(&self, indices: &[usize]) -> Result<Arrangement, ArrangementError> {
        for &i in indices {
            self.hyperplane(i)?;
        }
        let hs = self
            .hyperplanes
            .iter()
            .enumerate()
            .filter(|(i, _)| !indices.contains(i))
            .map(|(_, h)| h.clone())
            .collect();
        Ok(Arrangement {
            dim: self.dim,
            hyperplanes: hs,
            lattice: OnceLock::new(),
        })
    }

    /// Sub-arrangement on the given indices, in the given order.
    pub fn subarrangement(&self, indices: &[usize]) -> Result<Arrangement, ArrangementError> {
        let hs = indices
            .iter()
            .map(|&i| self.hyperplane(i).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        Arrangement::new(self.dim, hs)
    }

    /// The flat `X = H_{i1} ∩ ... ∩ H_{ik}` (the ambient space for no indices).
    pub fn flat(&self, indices: &[usize]) -> Result<Flat, ArrangementError> {
        let mut rows = Vec::with_capacity(indices.len());
        for &i in indices {
            rows.push(self.hyperplane(i)?.normal_rational());
        }
        let key = RatMatrix::from_rows(self.dim, rows).rref();
        Ok(Flat::from_key(key, self))
    }

    /// The subspace cut out by the given linear equations, if it is a flat.
    pub fn flat_from_equations<R: AsRef<[i64]>>(&self, equations: &[R]) -> Result<Flat, ArrangementError> {
        let key = RatMatrix::from_int_rows(self.dim, equations).rref();
        if key.cols() != self.dim {
            return Err(ArrangementError::NotAFlat);
        }
        let flat = Flat::from_key(key, self);
        self.check_flat(&flat)?;
        Ok(flat)
    }

    /// A flat of `A` is spanned by the normals of the hyperplanes containing it.
    pub fn check_flat(&self, x: &Flat) -> Result<(), ArrangementError> {
        if x.ambient_dim() != self.dim {
            return Err(ArrangementError::NotAFlat);
        }
        let members: Vec<usize> = (0..self.len())
            .filter(|&i| x.key().rref_contains(&self.hyperplanes[i].normal_rational()))
            .collect();
        if members != x.hyperplane_indices() {
            return Err(ArrangementError::NotAFlat);
        }
        let span = self.flat(&members)?;
        if span.key() != x.key() {
            return Err(ArrangementError::NotAFlat);
        }
        Ok(())
    }

    /// `A_X = {H in A : X ⊆ H}` in the same ambient space.
    pub fn localization(&self, x: &Flat) -> Result<Arrangement, ArrangementError> {
        self.check_flat(x)?;
        self.subarrangement(&x.hyperplane_indices())
    }

    /// `A^X = {H ∩ X : H not in A_X}` in coordinates of an integer basis of `X`.
    pub fn restriction(&self, x: &Flat) -> Result<Restriction, ArrangementError> {
        self.check_flat(x)?;
        Ok(self.restriction_unchecked(x))
    }

    pub(crate) fn restriction_unchecked(&self, x: &Flat) -> Restriction {
        let basis = x.basis().to_vec();
        let mut induced: Vec<Hyperplane> = Vec::new();
        let mut fibers: Vec<Vec<usize>> = Vec::new();
        for (i, h) in self.hyperplanes.iter().enumerate() {
            if x.contains_hyperplane(i) {
                continue;
            }
            let v: Vec<i128> = basis.iter().map(|b| h.eval(b)).collect();
            let g = Hyperplane::from_wide(&v).expect("hyperplane not containing X has nonzero trace");
            match induced.iter().position(|k| k == &g) {
                Some(p) => fibers[p].push(i),
                None => {
                    induced.push(g);
                    fibers.push(vec![i]);
                }
            }
        }
        Restriction {
            arrangement: Arrangement {
                dim: basis.len(),
                hyperplanes: induced,
                lattice: OnceLock::new(),
            },
            basis,
            fibers,
        }
    }

    /// `A^H` for `H = A[index]`.
    pub fn restrict_to(&self, index: usize) -> Result<Restriction, ArrangementError> {
        let x = self.flat(&[index])?;
        Ok(self.restriction_unchecked(&x))
    }

    /// Projects onto the row space of the normals. The lattice is unchanged.
    pub fn essentialize(&self) -> Essentialization {
        let (_, pivots) = self.normal_matrix().rref_with_pivots();
        let hs: Vec<Hyperplane> = self
            .hyperplanes
            .iter()
            .map(|h| {
                let v: Vec<i64> = pivots.iter().map(|&p| h.normal[p]).collect();
                Hyperplane::new(v).expect("nonzero on pivot coordinates")
            })
            .collect();
        Essentialization {
            arrangement: Arrangement {
                dim: pivots.len(),
                hyperplanes: hs,
                lattice: OnceLock::new(),
            },
            zeros: self.dim - pivots.len(),
        }
    }

    /// Serializes to the `.arr` text format.
    pub fn to_arr_string(&self) -> String {
        let mut s = format!("dim {}\n", self.dim);
        for h in &self.hyperplanes {
            let row: Vec<String> = h.normal.iter().map(i64::to_string).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Hyperplanes listed by canonical key, as used in reports.
    pub fn sorted_hyperplanes(&self) -> Vec<&Hyperplane> {
        let mut v: Vec<&Hyperplane> = self.hyperplanes.iter().collect();
        v.sort();
        v
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hs: Vec<String> = self.hyperplanes.iter().map(|h| h.to_string()).collect();
        write!(f, "{{{}}} in dim {}", hs.join(", "), self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Coordinate hyperplanes plus the braid hyperplanes except x3 - x4.
    pub(crate) fn coord_braid4() -> Arrangement {
        let mut normals: Vec<Vec<i64>> = (0..4)
            .map(|i| (0..4).map(|j| i64::from(i == j)).collect())
            .collect();
        for i in 0..4 {
            for j in i + 1..4 {
                if (i, j) == (2, 3) {
                    continue;
                }
                let mut v = vec![0; 4];
                v[i] = 1;
                v[j] = -1;
                normals.push(v);
            }
        }
        Arrangement::from_normals(4, &normals).unwrap()
    }

    #[test]
    fn canonical_hyperplanes() {
        let h = Hyperplane::new(vec![0, -2, 4]).unwrap();
        assert_eq!(h.normal(), &[0, 1, -2]);
        assert_eq!(h.to_string(), "x2 - 2x3");
        assert_eq!(Hyperplane::new(vec![0, 0]), Err(ArrangementError::ZeroNormal));
        let r = Hyperplane::from_rationals(&[
            Rational::new(1.into(), 2.into()),
            Rational::new((-1).into(), 3.into()),
        ])
        .unwrap();
        assert_eq!(r.normal(), &[3, -2]);
    }

    #[test]
    fn duplicates_rejected() {
        let e = Arrangement::from_normals(2, &[[1, 0], [2, 0]]).unwrap_err();
        assert_eq!(e, ArrangementError::DuplicateHyperplane { first: 0, second: 1 });
        let e = Arrangement::from_normals(2, &[vec![1, 0], vec![1, 0, 0]]).unwrap_err();
        assert!(matches!(e, ArrangementError::DimensionMismatch { .. }));
    }

    #[test]
    fn deletion() {
        let b2 = boolean(2);
        let d = b2.delete(0).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.hyperplanes()[0].normal(), &[0, 1]);
        assert_eq!(coord_braid4().delete(0).unwrap().len(), 8);
        let a4 = weyl(WeylFamily::A, 4).unwrap();
        let i = a4.index_of(&Hyperplane::new(vec![1, 0, -1, 0]).unwrap()).unwrap();
        assert_eq!(a4.delete(i).unwrap().len(), 5);
        assert!(matches!(
            a4.delete(6),
            Err(ArrangementError::IndexOutOfRange { index: 6, len: 6 })
        ));
    }

    #[test]
    fn localization_examples() {
        let a = coord_braid4();
        let x = a.flat_from_equations(&[[0, 0, 1, 0], [0, 0, 0, 1]]).unwrap();
        let loc = a.localization(&x).unwrap();
        // x3 - x4 is not in A, so only the two coordinate planes contain X
        assert_eq!(loc.len(), 2);
        assert_eq!(loc.rank(), x.codim());

        let a4 = weyl(WeylFamily::A, 4).unwrap();
        let x = a4.flat_from_equations(&[[1, -1, 0, 0], [0, 1, -1, 0]]).unwrap();
        let loc = a4.localization(&x).unwrap();
        let got: Vec<String> = loc.hyperplanes().iter().map(|h| h.to_string()).collect();
        assert_eq!(got, vec!["x1 - x2", "x1 - x3", "x2 - x3"]);

        let v = a4.flat(&[]).unwrap();
        assert_eq!(a4.localization(&v).unwrap(), Arrangement::empty(4));
        // the full ambient space contains no hyperplane, so A_V is empty and A^V = A
        assert_eq!(a4.restriction(&v).unwrap().arrangement.len(), 6);
    }

    #[test]
    fn not_a_flat() {
        let a = coord_braid4();
        // x3 = x4 is not an intersection of hyperplanes of A
        assert_eq!(
            a.flat_from_equations(&[[0, 0, 1, -1]]).unwrap_err(),
            ArrangementError::NotAFlat
        );
        let other = weyl(WeylFamily::A, 4).unwrap();
        let x = other.flat(&[0]).unwrap();
        assert_eq!(a.localization(&x).unwrap_err(), ArrangementError::NotAFlat);
    }

    #[test]
    fn restriction_examples() {
        let a = coord_braid4();
        let r = a.restrict_to(0).unwrap();
        assert_eq!(r.arrangement.len(), 5);
        assert_eq!(r.arrangement.dim(), 3);
        let mut sizes = r.fiber_sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);

        let a4 = weyl(WeylFamily::A, 4).unwrap();
        let r = a4.restrict_to(0).unwrap();
        assert_eq!(r.arrangement.len(), 3);
        // x1-x3 and x2-x3 collapse, as do x1-x4 and x2-x4
        let mut sizes = r.fiber_sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2]);
        let total: usize = sizes.iter().sum();
        assert_eq!(total, a4.len() - 1);
    }

    #[test]
    fn essentialize_preserves_size() {
        let a4 = weyl(WeylFamily::A, 4).unwrap();
        let e = a4.essentialize();
        assert_eq!(e.zeros, 1);
        assert_eq!(e.arrangement.dim(), 3);
        assert_eq!(e.arrangement.len(), 6);
        assert_eq!(e.arrangement.rank(), 3);
    }

    #[test]
    fn serde_round_trip() {
        let a = coord_braid4();
        let json = serde_json::to_string(&a).unwrap();
        let back: Arrangement = serde_json::from_str(&json).unwrap();
        assert_eq!(a, back);
        let bad = r#"{"dim":2,"hyperplanes":[[1,0],[1,0]]}"#;
        assert!(serde_json::from_str::<Arrangement>(bad).is_err());
    }
}
