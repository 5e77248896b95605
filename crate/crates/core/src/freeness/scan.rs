//! Search for triples `(A, A', A^H)` where `pi(A^H)` splits over the
//! integers and divides both `pi(A)` and `pi(A')`, yet `A'` is not free while
//! `A` is either free or not free as well.

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::exact::{integer_root_split, poly_divides};
use crate::lattice::char_poly;

use super::{Engine, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum ScanStatus {
    /// Splitting or divisibility fails.
    NotApplicable,
    /// `A'` is free.
    Consistent,
    /// An undecided verdict leaves the outcome open.
    Review,
    /// Definite verdicts realize the pattern.
    CounterexampleCandidate,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub hyperplane: Hyperplane,
    pub restriction_splits: bool,
    pub divides_whole: bool,
    pub divides_deletion: bool,
    pub whole: Verdict,
    pub deletion: Verdict,
    pub restriction: Verdict,
    pub status: ScanStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub rank: usize,
    pub rows: Vec<ScanRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub candidates: usize,
    pub reviews: usize,
}

fn status(splits: bool, divides: bool, whole: &Verdict, deletion: &Verdict) -> ScanStatus {
    if !(splits && divides) {
        return ScanStatus::NotApplicable;
    }
    match deletion {
        Verdict::Free { .. } => ScanStatus::Consistent,
        Verdict::NotFree { .. } if !matches!(whole, Verdict::Undecided) => ScanStatus::CounterexampleCandidate,
        _ => ScanStatus::Review,
    }
}

/// `chi` and `pi` differ by `t -> -t` up to sign, so `pi(A^H)` splits into
/// integer linear factors exactly when `chi(A^H)` does, and divisibility
/// transfers the same way.
pub fn conjecture_scan(engine: &Engine, a: &Arrangement) -> ScanReport {
    let whole = engine.certify(a).verdict;
    let chi = char_poly(a);
    let rows: Vec<ScanRow> = (0..a.len())
        .into_par_iter()
        .map(|h| {
            let res = a.restrict_to(h).expect("index in range").arrangement;
            let del = a.delete(h).expect("index in range");
            let chi_h = char_poly(&res);
            let splits = integer_root_split(&chi_h).expect("chi is monic").is_some();
            let divides_whole = poly_divides(&chi_h, &chi).expect("chi is nonzero");
            let divides_deletion = poly_divides(&chi_h, &char_poly(&del)).expect("chi is nonzero");
            let deletion = engine.certify(&del).verdict;
            let restriction = engine.certify(&res).verdict;
            let status = status(splits, divides_whole && divides_deletion, &whole, &deletion);
            ScanRow {
                hyperplane: a.hyperplanes()[h].clone(),
                restriction_splits: splits,
                divides_whole,
                divides_deletion,
                whole: whole.clone(),
                deletion,
                restriction,
                status,
            }
        })
        .collect();
    let count = |s: ScanStatus| rows.iter().filter(|r| r.status == s).count();
    let candidates = count(ScanStatus::CounterexampleCandidate);
    let reviews = count(ScanStatus::Review);
    let rank = a.rank();
    let note = (rank <= 3).then(|| {
        assert_eq!(candidates, 0, "rank {rank} arrangement produced a candidate triple");
        "rank ≤ 3: no candidates possible".to_string()
    });
    ScanReport {
        rank,
        rows,
        note,
        candidates,
        reviews,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{parse_arrangement, weyl, WeylFamily};

    #[test]
    fn braid_has_no_candidates() {
        let e = Engine::new();
        for n in [4, 5] {
            let r = conjecture_scan(&e, &weyl(WeylFamily::A, n).unwrap());
            assert_eq!(r.candidates, 0);
            assert_eq!(r.reviews, 0);
            assert!(r.rows.iter().all(|row| row.status == ScanStatus::Consistent));
            assert_eq!(r.note.is_some(), r.rank <= 3);
        }
    }

    #[test]
    fn coord_braid_division_fails_at_first_coordinate() {
        let a = parse_arrangement(
            "dim 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n1 -1 0 0\n1 0 -1 0\n1 0 0 -1\n0 1 -1 0\n0 1 0 -1\n",
        )
        .unwrap();
        let e = Engine::new();
        let r = conjecture_scan(&e, &a);
        assert_eq!(r.rows[0].status, ScanStatus::NotApplicable);
        assert!(!r.rows[0].divides_whole);
        assert_eq!(r.candidates, 0);
    }

    #[test]
    fn rank_three_note() {
        let e = Engine::new();
        let r = conjecture_scan(&e, &weyl(WeylFamily::B, 3).unwrap());
        assert_eq!(r.note.as_deref(), Some("rank ≤ 3: no candidates possible"));
    }

    #[test]
    fn status_table() {
        let f = Verdict::Free { exponents: vec![1] };
        let u = Verdict::Undecided;
        let nf = Verdict::NotFree {
            witness: super::super::NonFreeWitness::AyGap {
                hyperplane: Hyperplane::new(vec![1]).unwrap(),
                gap: 1,
            },
        };
        assert_eq!(status(false, true, &f, &nf), ScanStatus::NotApplicable);
        assert_eq!(status(true, true, &f, &f), ScanStatus::Consistent);
        assert_eq!(status(true, true, &u, &f), ScanStatus::Consistent);
        assert_eq!(status(true, true, &f, &u), ScanStatus::Review);
        assert_eq!(status(true, true, &u, &nf), ScanStatus::Review);
        assert_eq!(status(true, true, &nf, &nf), ScanStatus::CounterexampleCandidate);
        assert_eq!(status(true, true, &f, &nf), ScanStatus::CounterexampleCandidate);
    }
}
