use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Arrangement, ArrangementError, Hyperplane};

/// Root system families whose reflecting hyperplanes are generated here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylFamily {
    /// Braid arrangement `x_i - x_j` in `dim` coordinates.
    A,
    /// `x_i` and `x_i ± x_j`.
    B,
    /// `x_i ± x_j`.
    D,
}

impl FromStr for WeylFamily {
    type Err = ArrangementError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(WeylFamily::A),
            "B" | "b" => Ok(WeylFamily::B),
            "D" | "d" => Ok(WeylFamily::D),
            _ => Err(ArrangementError::InvalidParameter(format!(
                "unknown Weyl family `{s}` (expected A, B or D)"
            ))),
        }
    }
}

impl fmt::Display for WeylFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            WeylFamily::A => 'A',
            WeylFamily::B => 'B',
            WeylFamily::D => 'D',
        };
        write!(f, "{c}")
    }
}

fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn pair(dim: usize, i: usize, j: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v[j] = sign;
    v
}

/// Reflection arrangement of the given family acting on `Q^dim`.
pub fn weyl(family: WeylFamily, dim: usize) -> Result<Arrangement, ArrangementError> {
    if dim < 2 {
        return Err(ArrangementError::InvalidParameter(format!(
            "Weyl arrangements need dimension >= 2, got {dim}"
        )));
    }
    let mut normals = Vec::new();
    if family == WeylFamily::B {
        normals.extend((0..dim).map(|i| unit(dim, i)));
    }
    for i in 0..dim {
        for j in i + 1..dim {
            normals.push(pair(dim, i, j, -1));
            if family != WeylFamily::A {
                normals.push(pair(dim, i, j, 1));
            }
        }
    }
    Arrangement::from_normals(dim, &normals)
}

/// The coordinate hyperplanes of `Q^dim`.
pub fn boolean(dim: usize) -> Arrangement {
    let normals: Vec<Vec<i64>> = (0..dim).map(|i| unit(dim, i)).collect();
    Arrangement::from_normals(dim, &normals).expect("coordinate hyperplanes are distinct")
}

/// `n` hyperplanes in general position: normals on the moment curve
/// `(1, s, s^2, ..., s^(dim-1))` for `s = 1..=n`, so any `dim` of them are
/// independent (Vandermonde).
pub fn generic(dim: usize, n: usize) -> Result<Arrangement, ArrangementError> {
    if dim == 0 {
        return Err(ArrangementError::InvalidParameter("dimension must be positive".into()));
    }
    let normals: Vec<Vec<i64>> = (1..=n as i64)
        .map(|s| {
            (0..dim as u32)
                .map(|k| s.checked_pow(k).ok_or(ArrangementError::Overflow))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    Arrangement::from_normals(dim, &normals)
}

/// Seeded random integer arrangement with entries in `-bound..=bound`.
///
/// Zero and repeated normals are redrawn; may return fewer than `n`
/// hyperplanes when the entry range cannot supply that many distinct ones.
pub fn random_arrangement(dim: usize, n: usize, bound: i64, seed: u64) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hs: Vec<Hyperplane> = Vec::with_capacity(n);
    let mut attempts = 0;
    while hs.len() < n && attempts < 100 * (n + 1) {
        attempts += 1;
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Ok(h) = Hyperplane::new(v) {
            if !hs.contains(&h) {
                hs.push(h);
            }
        }
    }
    Arrangement::new(dim, hs).expect("distinct by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_sizes() {
        assert_eq!(weyl(WeylFamily::D, 6).unwrap().len(), 30);
        assert_eq!(weyl(WeylFamily::B, 3).unwrap().len(), 9);
        let a4 = weyl(WeylFamily::A, 4).unwrap();
        assert_eq!(a4.len(), 6);
        assert_eq!(a4.rank(), 3);
        assert!(weyl(WeylFamily::A, 1).is_err());
        assert_eq!("d".parse::<WeylFamily>().unwrap(), WeylFamily::D);
    }

    #[test]
    fn generic_is_general_position() {
        let g = generic(3, 6).unwrap();
        let l = g.lattice();
        // every pair meets in a line with exactly two planes on it
        assert_eq!(l.level(2).len(), 15);
        assert!(l.level(2).iter().all(|&x| l.flat(x).multiplicity() == 2));
    }

    #[test]
    fn random_is_seeded() {
        let a = random_arrangement(4, 8, 2, 7);
        let b = random_arrangement(4, 8, 2, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 8);
        assert_ne!(a, random_arrangement(4, 8, 2, 8));
    }
}
