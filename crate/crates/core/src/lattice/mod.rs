//! Intersection lattice `L(A)` with Möbius values, plus the invariants read
//! off it.
//!
//! Flats are built level by level. The children of a flat `X` are exactly the
//! hyperplanes of the restriction `A^X`, so each level is produced by grouping
//! the hyperplanes not containing `X` by their trace on `X`. Only integer dot
//! products are needed for that; exact rref is computed once per distinct
//! flat for its canonical key.

mod flags;
mod invariants;

pub use flags::{enumerate_flags, flag_restriction_bound, Flag};
pub use invariants::{
    b1b2_check, b1b2_row, b2, b2_from_poincare, b2_reduced, betti_numbers, char_poly, poincare_poly,
    B1B2Row, LatticeError,
};

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::arrangement::{Arrangement, Flat, Hyperplane};
use crate::exact::RatMatrix;

pub type FlatId = usize;

#[derive(Debug)]
pub struct IntersectionLattice {
    dim: usize,
    flats: Vec<Flat>,
    levels: Vec<Vec<FlatId>>,
    children: Vec<Vec<FlatId>>,
    moebius: Vec<i64>,
    index: HashMap<FixedBitSet, FlatId>,
}

/// Hyperplanes of `A^X`, as member sets of the covering flats of `X`, each
/// with one representative hyperplane index.
fn covers(x: &Flat, a: &Arrangement) -> Vec<(FixedBitSet, usize)> {
    let mut traces: Vec<Hyperplane> = Vec::new();
    let mut out: Vec<(FixedBitSet, usize)> = Vec::new();
    for (i, h) in a.hyperplanes().iter().enumerate() {
        if x.contains_hyperplane(i) {
            continue;
        }
        let v: Vec<i128> = x.basis().iter().map(|b| h.eval(b)).collect();
        let t = Hyperplane::from_wide(&v).expect("trace of a hyperplane not containing X");
        match traces.iter().position(|g| g == &t) {
            Some(p) => out[p].0.insert(i),
            None => {
                traces.push(t);
                let mut set = x.members().clone();
                set.insert(i);
                out.push((set, i));
            }
        }
    }
    out
}

impl IntersectionLattice {
    pub fn build(a: &Arrangement) -> Self {
        let dim = a.dim();
        let root = Flat::with_members(
            RatMatrix::from_rows(dim, vec![]),
            FixedBitSet::with_capacity(a.len()),
        );
        let mut index = HashMap::new();
        index.insert(root.members().clone(), 0);
        let mut flats = vec![root];
        let mut levels: Vec<Vec<FlatId>> = vec![vec![0]];
        let mut children: Vec<Vec<FlatId>> = vec![vec![]];

        loop {
            let current = levels.last().expect("root level").clone();
            let found: Vec<Vec<(FixedBitSet, usize)>> =
                current.par_iter().map(|&x| covers(&flats[x], a)).collect();

            // deterministic merge: first discovery wins
            let mut fresh: Vec<(FixedBitSet, FlatId, usize)> = Vec::new();
            let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
            for (&x, list) in current.iter().zip(&found) {
                for (set, rep) in list {
                    if !seen.contains_key(set) {
                        seen.insert(set.clone(), fresh.len());
                        fresh.push((set.clone(), x, *rep));
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }

            let mut new_flats: Vec<Flat> = fresh
                .par_iter()
                .map(|(set, parent, rep)| {
                    let normal = a.hyperplanes()[*rep].normal_rational();
                    let key = flats[*parent].key().with_row(&normal).rref();
                    Flat::with_members(key, set.clone())
                })
                .collect();
            new_flats.sort_by(|p, q| p.key().cmp(q.key()));

            let base = flats.len();
            let mut level = Vec::with_capacity(new_flats.len());
            for (k, f) in new_flats.into_iter().enumerate() {
                index.insert(f.members().clone(), base + k);
                flats.push(f);
                children.push(vec![]);
                level.push(base + k);
            }
            for (&x, list) in current.iter().zip(&found) {
                let mut ids: Vec<FlatId> = list.iter().map(|(set, _)| index[set]).collect();
                ids.sort_unstable();
                children[x] = ids;
            }
            levels.push(level);
        }

        let moebius = Self::moebius_values(&flats, &levels);
        IntersectionLattice {
            dim,
            flats,
            levels,
            children,
            moebius,
            index,
        }
    }

    /// `mu(V) = 1`, `mu(X) = -sum_{Y ⊋ X} mu(Y)`, top-down by codimension.
    fn moebius_values(flats: &[Flat], levels: &[Vec<FlatId>]) -> Vec<i64> {
        let mut mu = vec![0i64; flats.len()];
        mu[0] = 1;
        for k in 1..levels.len() {
            let above: Vec<FlatId> = levels[..k].iter().flatten().copied().collect();
            let vals: Vec<(FlatId, i64)> = levels[k]
                .par_iter()
                .map(|&x| {
                    let members = flats[x].members();
                    let s: i64 = above
                        .iter()
                        .filter(|&&y| flats[y].members().is_subset(members))
                        .map(|&y| mu[y])
                        .sum();
                    (x, -s)
                })
                .collect();
            for (x, v) in vals {
                mu[x] = v;
            }
        }
        mu
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> FlatId {
        0
    }

    pub fn level(&self, codim: usize) -> &[FlatId] {
        self.levels.get(codim).map_or(&[], Vec::as_slice)
    }

    pub fn levels(&self) -> &[Vec<FlatId>] {
        &self.levels
    }

    pub fn flat(&self, id: FlatId) -> &Flat {
        &self.flats[id]
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn moebius(&self, id: FlatId) -> i64 {
        self.moebius[id]
    }

    /// Flats of one higher codimension contained in `id`; as many as `|A^X|`.
    pub fn children(&self, id: FlatId) -> &[FlatId] {
        &self.children[id]
    }

    pub fn find(&self, members: &FixedBitSet) -> Option<FlatId> {
        self.index.get(members).copied()
    }

    /// Flat id of `H_i1 ∩ ... ∩ H_ik`.
    pub fn closure(&self, indices: &[usize]) -> FlatId {
        let mut x = self.root();
        for &i in indices {
            if !self.flats[x].contains_hyperplane(i) {
                x = *self.children[x]
                    .iter()
                    .find(|&&c| self.flats[c].contains_hyperplane(i))
                    .expect("every hyperplane not containing X cuts out a child");
            }
        }
        x
    }

    /// Subspace containment `X ⊇ Y`.
    pub fn contains(&self, x: FlatId, y: FlatId) -> bool {
        self.flats[x].members().is_subset(self.flats[y].members())
    }

    /// `|A^X|`.
    pub fn restriction_size(&self, x: FlatId) -> usize {
        self.children[x].len()
    }

    /// `b2(A^X)` read off the interval below `X`.
    pub fn restriction_b2(&self, x: FlatId) -> i64 {
        let c = self.flats[x].codim();
        self.level(c + 2)
            .iter()
            .filter(|&&z| self.contains(x, z))
            .map(|&z| {
                let between = self.children[x]
                    .iter()
                    .filter(|&&y| self.contains(y, z))
                    .count();
                between as i64 - 1
            })
            .sum()
    }

    /// `b2(A_X)`: codimension-two flats containing `X`.
    pub fn localization_b2(&self, x: FlatId) -> i64 {
        self.level(2)
            .iter()
            .filter(|&&y| self.contains(y, x))
            .map(|&y| self.flats[y].multiplicity() as i64 - 1)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{boolean, weyl, WeylFamily};

    #[test]
    fn boolean_two() {
        let a = boolean(2);
        let l = a.lattice();
        assert_eq!(l.len(), 4);
        let mut mu: Vec<i64> = (0..4).map(|x| l.moebius(x)).collect();
        mu.sort();
        assert_eq!(mu, vec![-1, -1, 1, 1]);
    }

    #[test]
    fn three_concurrent_lines() {
        let a = Arrangement::from_normals(2, &[[1, 0], [0, 1], [1, -1]]).unwrap();
        let l = a.lattice();
        let origin = l.level(2)[0];
        assert_eq!(l.moebius(origin), 2);
    }

    /// Brute force: intersect every pair of hyperplanes and dedup by row space.
    fn pairwise_flats(a: &Arrangement) -> Vec<usize> {
        let mut keys: Vec<(RatMatrix, usize)> = Vec::new();
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                let key = RatMatrix::from_rows(
                    a.dim(),
                    vec![a.hyperplanes()[i].normal_rational(), a.hyperplanes()[j].normal_rational()],
                )
                .rref();
                if !keys.iter().any(|(k, _)| k == &key) {
                    let count = a
                        .hyperplanes()
                        .iter()
                        .filter(|h| key.rref_contains(&h.normal_rational()))
                        .count();
                    keys.push((key, count));
                }
            }
        }
        let mut counts: Vec<usize> = keys.into_iter().map(|(_, c)| c).collect();
        counts.sort();
        counts
    }

    #[test]
    fn braid4_codim_two() {
        let a = weyl(WeylFamily::A, 4).unwrap();
        let l = a.lattice();
        assert_eq!(pairwise_flats(&a), vec![2, 2, 2, 3, 3, 3, 3]);
        let mut got: Vec<(usize, i64)> = l
            .level(2)
            .iter()
            .map(|&x| (l.flat(x).multiplicity(), l.moebius(x)))
            .collect();
        got.sort();
        assert_eq!(
            got,
            vec![(2, 1), (2, 1), (2, 1), (3, 2), (3, 2), (3, 2), (3, 2)]
        );
    }

    #[test]
    fn empty_arrangement_lattice() {
        let a = Arrangement::empty(3);
        let l = a.lattice();
        assert_eq!(l.len(), 1);
        assert_eq!(l.rank(), 0);
        assert_eq!(l.moebius(0), 1);
    }

    #[test]
    fn levels_are_graded_and_sorted() {
        let a = weyl(WeylFamily::B, 3).unwrap();
        let l = a.lattice();
        for (c, level) in l.levels().iter().enumerate() {
            for w in level.windows(2) {
                assert!(l.flat(w[0]).key() < l.flat(w[1]).key());
            }
            for &x in level {
                assert_eq!(l.flat(x).codim(), c);
                assert!(a.check_flat(l.flat(x)).is_ok());
            }
        }
        assert_eq!(l.closure(&[0, 1]), l.closure(&[1, 0]));
        assert_eq!(l.restriction_size(l.closure(&[0])), 4);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let a = weyl(WeylFamily::D, 4).unwrap();
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| IntersectionLattice::build(&a));
        let many = IntersectionLattice::build(&a);
        assert_eq!(one.len(), many.len());
        for x in 0..one.len() {
            assert_eq!(one.flat(x), many.flat(x));
            assert_eq!(one.moebius(x), many.moebius(x));
            assert_eq!(one.children(x), many.children(x));
        }
    }
}
