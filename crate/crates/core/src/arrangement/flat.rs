use fixedbitset::FixedBitSet;

use super::Arrangement;
use crate::exact::{self, RatMatrix};

/// An element `X` of the intersection lattice.
///
/// `key` is the rref of the normals vanishing on `X`; `hyperplanes` marks
/// `A_X`; `basis` is an integer basis of `X` itself (primitive vectors read
/// off the kernel of `key`), which fixes the coordinates of `A^X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    key: RatMatrix,
    hyperplanes: FixedBitSet,
    basis: Vec<Vec<i64>>,
}

impl Flat {
    pub(crate) fn from_key(key: RatMatrix, a: &Arrangement) -> Flat {
        let mut hyperplanes = FixedBitSet::with_capacity(a.len());
        for (i, h) in a.hyperplanes().iter().enumerate() {
            if key.rref_contains(&h.normal_rational()) {
                hyperplanes.insert(i);
            }
        }
        Self::with_members(key, hyperplanes)
    }

    pub(crate) fn with_members(key: RatMatrix, hyperplanes: FixedBitSet) -> Flat {
        let basis = key
            .kernel()
            .iter()
            .map(|v| {
                exact::to_i64_vec(&exact::primitive_integer_vector(v))
                    .expect("flat basis entries fit in 64 bits")
            })
            .collect();
        Flat {
            key,
            hyperplanes,
            basis,
        }
    }

    pub fn key(&self) -> &RatMatrix {
        &self.key
    }

    pub fn codim(&self) -> usize {
        self.key.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.key.cols()
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim() - self.codim()
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.hyperplanes
    }

    pub fn hyperplane_indices(&self) -> Vec<usize> {
        self.hyperplanes.ones().collect()
    }

    pub fn contains_hyperplane(&self, i: usize) -> bool {
        self.hyperplanes.contains(i)
    }

    /// Number of hyperplanes containing `X`, i.e. `|A_X|`.
    pub fn multiplicity(&self) -> usize {
        self.hyperplanes.count_ones(..)
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }
}
