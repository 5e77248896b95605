//! Flag searches: modular flags and `b2`-flags of localizations, divisional
//! flags of restrictions.
//!
//! Each search is a DFS down the child lists of the lattice. The `b2`
//! conditions split into one inequality per step, each of which always holds
//! with `>=`, so the global identity holds exactly when every step is an
//! equality and the search prunes step by step. Whether a partial flag ending
//! at `X` can be completed depends on `X` alone, so dead ends are memoized per
//! flat. Children are visited in key order, which makes the first flag found
//! the lexicographically least.

use crate::arrangement::Arrangement;
use crate::lattice::{b2, FlatId, IntersectionLattice};

use super::FreenessError;

/// `X_0 = V` followed by `X_i = H_{g_1} ∩ ... ∩ H_{g_i}`; `None` unless
/// every generator raises the codimension by one.
pub fn flag_from_generators(l: &IntersectionLattice, gens: &[usize]) -> Option<Vec<FlatId>> {
    let mut x = l.root();
    let mut flag = vec![x];
    for &g in gens {
        if l.flat(x).contains_hyperplane(g) {
            return None;
        }
        x = *l.children(x).iter().find(|&&c| l.flat(c).contains_hyperplane(g))?;
        flag.push(x);
    }
    Some(flag)
}

/// For each step of the flag, the least hyperplane index that enters.
pub fn flag_generators(l: &IntersectionLattice, flag: &[FlatId]) -> Vec<usize> {
    flag.windows(2)
        .map(|w| {
            let (before, after) = (l.flat(w[0]).members(), l.flat(w[1]).members());
            after
                .ones()
                .find(|&i| !before.contains(i))
                .expect("consecutive flags differ")
        })
        .collect()
}

fn dfs(
    l: &IntersectionLattice,
    x: FlatId,
    target: usize,
    ok: &mut dyn FnMut(FlatId, FlatId) -> bool,
    dead: &mut [bool],
    path: &mut Vec<FlatId>,
) -> bool {
    if l.flat(x).codim() == target {
        return true;
    }
    for &c in l.children(x) {
        if dead[c] || !ok(x, c) {
            continue;
        }
        path.push(c);
        if dfs(l, c, target, ok, dead, path) {
            return true;
        }
        path.pop();
    }
    dead[x] = true;
    false
}

fn search(
    l: &IntersectionLattice,
    target: usize,
    ok: &mut dyn FnMut(FlatId, FlatId) -> bool,
) -> Option<Vec<FlatId>> {
    let mut dead = vec![false; l.len()];
    let mut path = vec![l.root()];
    dfs(l, l.root(), target, ok, &mut dead, &mut path).then_some(path)
}

/// `table[h * n + k]` is the flat `H_h ∩ H_k` for `h != k`.
fn pair_table(l: &IntersectionLattice, n: usize) -> Vec<FlatId> {
    let mut t = vec![usize::MAX; n * n];
    for &p in l.level(1) {
        let h = l.flat(p).members().ones().next().expect("hyperplane flat");
        for &c in l.children(p) {
            for k in l.flat(c).members().ones() {
                t[h * n + k] = c;
            }
        }
    }
    t
}

/// For distinct `H, L` entering at this step some `K` already present
/// satisfies `H ∩ L ⊆ K`.
fn modular_step(l: &IntersectionLattice, pairs: &[FlatId], n: usize, x: FlatId, y: FlatId) -> bool {
    let old = l.flat(x).members();
    let new: Vec<usize> = l.flat(y).members().ones().filter(|&i| !old.contains(i)).collect();
    new.iter().enumerate().all(|(p, &h)| {
        new[p + 1..]
            .iter()
            .all(|&k| !l.flat(pairs[h * n + k]).members().is_disjoint(old))
    })
}

fn localization_step(l: &IntersectionLattice, memo: &mut [Option<i64>], x: FlatId, y: FlatId) -> bool {
    let mut lb2 = |z: FlatId| *memo[z].get_or_insert_with(|| l.localization_b2(z));
    let (sx, sy) = (l.flat(x).multiplicity() as i64, l.flat(y).multiplicity() as i64);
    lb2(y) == lb2(x) + (sy - sx) * sx
}

fn restriction_step(l: &IntersectionLattice, memo: &mut [Option<i64>], x: FlatId, y: FlatId) -> bool {
    let mut rb2 = |z: FlatId| *memo[z].get_or_insert_with(|| l.restriction_b2(z));
    let (sx, sy) = (l.restriction_size(x) as i64, l.restriction_size(y) as i64);
    rb2(x) == rb2(y) + (sx - sy) * sy
}

/// A modular flag `V = X_0 ⊋ X_1 ⊋ ... ⊋ X_r` of localizations.
pub fn modular_flag(a: &Arrangement) -> Option<Vec<FlatId>> {
    let l = a.lattice();
    let pairs = pair_table(&l, a.len());
    search(&l, l.rank(), &mut |x, y| modular_step(&l, &pairs, a.len(), x, y))
}

/// A flag of localizations with
/// `b2(A) = sum_i (|A_{X_{i+1}}| - |A_{X_i}|) |A_{X_i}|`.
pub fn b2_flag(a: &Arrangement) -> Option<Vec<FlatId>> {
    let l = a.lattice();
    let mut memo = vec![None; l.len()];
    search(&l, l.rank(), &mut |x, y| localization_step(&l, &mut memo, x, y))
}

/// A flag `X_0 ⊋ ... ⊋ X_{r-1}` of restrictions with
/// `b2(A) = sum_i (|A^{X_i}| - |A^{X_{i+1}}|) |A^{X_{i+1}}|`.
pub fn divisional_flag(a: &Arrangement) -> Option<Vec<FlatId>> {
    let l = a.lattice();
    if l.rank() <= 1 {
        return Some(vec![l.root()]);
    }
    let mut memo = vec![None; l.len()];
    search(&l, l.rank() - 1, &mut |x, y| restriction_step(&l, &mut memo, x, y))
}

fn is_chain(l: &IntersectionLattice, flag: &[FlatId], len: usize) -> bool {
    flag.len() == len
        && flag.first() == Some(&l.root())
        && flag.windows(2).all(|w| l.children(w[0]).contains(&w[1]))
}

pub fn modular_identity(a: &Arrangement, flag: &[FlatId]) -> bool {
    let l = a.lattice();
    let pairs = pair_table(&l, a.len());
    is_chain(&l, flag, l.rank() + 1)
        && flag.windows(2).all(|w| modular_step(&l, &pairs, a.len(), w[0], w[1]))
}

pub fn supersolvable_identity(a: &Arrangement, flag: &[FlatId]) -> bool {
    let l = a.lattice();
    if !is_chain(&l, flag, l.rank() + 1) {
        return false;
    }
    let bound: i64 = flag
        .windows(2)
        .map(|w| {
            let (sx, sy) = (l.flat(w[0]).multiplicity() as i64, l.flat(w[1]).multiplicity() as i64);
            (sy - sx) * sx
        })
        .sum();
    b2(a) == bound
}

pub fn divisional_identity(a: &Arrangement, flag: &[FlatId]) -> bool {
    let l = a.lattice();
    if !is_chain(&l, flag, l.rank().max(1)) {
        return false;
    }
    let bound: i64 = flag
        .windows(2)
        .map(|w| {
            let (sx, sy) = (l.restriction_size(w[0]) as i64, l.restriction_size(w[1]) as i64);
            (sx - sy) * sy
        })
        .sum();
    b2(a) == bound
}

fn pad(mut e: Vec<u64>, dim: usize) -> Vec<u64> {
    e.resize(dim, 0);
    e.sort_unstable();
    e
}

/// `(|A_{X_1}|, |A_{X_2}| - |A_{X_1}|, ..., |A| - |A_{X_{r-1}}|)` padded with zeros.
pub(crate) fn supersolvable_exponents(a: &Arrangement, flag: &[FlatId]) -> Vec<u64> {
    let l = a.lattice();
    let e = flag
        .windows(2)
        .map(|w| (l.flat(w[1]).multiplicity() - l.flat(w[0]).multiplicity()) as u64)
        .collect();
    pad(e, a.dim())
}

/// Cardinality gaps along the flag plus `|A^{X_{r-1}}|`, padded with zeros.
pub(crate) fn divisional_exponents(a: &Arrangement, flag: &[FlatId]) -> Vec<u64> {
    let l = a.lattice();
    if a.is_empty() {
        return vec![0; a.dim()];
    }
    let mut e: Vec<u64> = flag
        .windows(2)
        .map(|w| (l.restriction_size(w[0]) - l.restriction_size(w[1])) as u64)
        .collect();
    e.push(l.restriction_size(*flag.last().expect("nonempty flag")) as u64);
    pad(e, a.dim())
}

/// Reverses a modular flag into a divisional one: with `alpha_i` entering at
/// step `i`, take `Y_j = {alpha_r = ... = alpha_{r-j+1} = 0}`.
pub fn ss_implies_df(a: &Arrangement, modular: &[FlatId]) -> Result<Vec<FlatId>, FreenessError> {
    let l = a.lattice();
    let r = l.rank();
    if !modular_identity(a, modular) {
        return Err(FreenessError::Inconsistent("input is not a modular flag".into()));
    }
    if r <= 1 {
        return Ok(vec![l.root()]);
    }
    let mut alphas = flag_generators(&l, modular);
    alphas.reverse();
    let flag = flag_from_generators(&l, &alphas[..r - 1])
        .ok_or_else(|| FreenessError::Inconsistent("reversed generators are dependent".into()))?;
    if !divisional_identity(a, &flag) {
        return Err(FreenessError::Inconsistent(
            "reversed modular flag fails the divisional identity".into(),
        ));
    }
    Ok(flag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{boolean, generic, weyl, WeylFamily};

    #[test]
    fn boolean_and_braid_are_supersolvable() {
        let a = boolean(3);
        let f = modular_flag(&a).unwrap();
        assert_eq!(supersolvable_exponents(&a, &f), vec![1, 1, 1]);
        let a = weyl(WeylFamily::A, 4).unwrap();
        let f = modular_flag(&a).unwrap();
        assert_eq!(supersolvable_exponents(&a, &f), vec![0, 1, 2, 3]);
        assert!(supersolvable_identity(&a, &f));
        let g = b2_flag(&a).unwrap();
        assert!(modular_identity(&a, &g));
    }

    #[test]
    fn generic_six_planes_fail_both_tests() {
        let a = generic(3, 6).unwrap();
        assert!(modular_flag(&a).is_none());
        assert!(b2_flag(&a).is_none());
        assert!(divisional_flag(&a).is_none());
    }

    #[test]
    fn reversal_is_divisional() {
        for a in [boolean(3), weyl(WeylFamily::A, 4).unwrap(), weyl(WeylFamily::B, 3).unwrap()] {
            let f = modular_flag(&a).unwrap();
            let d = ss_implies_df(&a, &f).unwrap();
            assert!(divisional_identity(&a, &d));
            assert_eq!(divisional_exponents(&a, &d), supersolvable_exponents(&a, &f));
        }
    }

    #[test]
    fn generators_round_trip() {
        let a = weyl(WeylFamily::B, 3).unwrap();
        let l = a.lattice();
        let f = divisional_flag(&a).unwrap();
        let g = flag_generators(&l, &f);
        assert_eq!(flag_from_generators(&l, &g).unwrap(), f);
        assert!(flag_from_generators(&l, &[0, 0]).is_none());
        assert!(flag_from_generators(&l, &[99]).is_none());
        assert_eq!(divisional_exponents(&a, &f), vec![1, 3, 5]);
    }
}
