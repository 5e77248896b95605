use super::{FlatId, IntersectionLattice};

/// A chain `X_0 = V ⊋ X_1 ⊋ ... ⊋ X_k` with `codim X_i = i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag(pub Vec<FlatId>);

impl Flag {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn flats(&self) -> &[FlatId] {
        &self.0
    }

    pub fn is_valid(&self, l: &IntersectionLattice) -> bool {
        self.0.first() == Some(&l.root())
            && self.0.windows(2).all(|w| l.children(w[0]).contains(&w[1]))
    }
}

/// All flags `X_0, ..., X_top` (so `top + 1` flats), by DFS over child lists.
pub fn enumerate_flags(l: &IntersectionLattice, top: usize) -> Vec<Flag> {
    fn go(l: &IntersectionLattice, top: usize, path: &mut Vec<FlatId>, out: &mut Vec<Flag>) {
        if path.len() == top + 1 {
            out.push(Flag(path.clone()));
            return;
        }
        let last = *path.last().expect("nonempty path");
        for &c in l.children(last) {
            path.push(c);
            go(l, top, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    if top <= l.rank() {
        go(l, top, &mut vec![l.root()], &mut out);
    }
    out
}

/// `sum_i (|A^{X_i}| - |A^{X_{i+1}}|) |A^{X_{i+1}}|` over consecutive pairs
/// of the flag, a lower bound for `b2(A)`.
pub fn flag_restriction_bound(l: &IntersectionLattice, flag: &Flag) -> i64 {
    flag.0
        .windows(2)
        .map(|w| {
            let (a, b) = (l.restriction_size(w[0]) as i64, l.restriction_size(w[1]) as i64);
            (a - b) * b
        })
        .sum()
}
