//! The certification engine: tries the rules in a fixed order and keeps every
//! definite verdict it derives in a store keyed by canonical arrangement.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::arrangement::{Arrangement, ArrangementKey, Hyperplane};
use crate::exact::poly_divides;
use crate::lattice::{b1b2_row, char_poly};

use super::flags::{divisional_flag, flag_generators, modular_flag};
use super::rules::{factorization_filter, nonfree_by_ziegler, rank3_decide};
use super::{Certificate, Member, Rule, Step, Verdict};

/// Two definite verdicts that disagree on the same arrangement. Never
/// expected; kept rather than overwritten so that it can be inspected.
#[derive(Clone, Debug, Serialize)]
pub struct Contradiction {
    pub subject: Arrangement,
    pub stored: Verdict,
    pub incoming: Verdict,
    pub rule: String,
}

/// What the engine knows about `A \ {H}` for one `H`.
#[derive(Clone, Debug, Serialize)]
pub struct DeletionReport {
    pub hyperplane: Hyperplane,
    pub restriction_size: usize,
    pub slack: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ziegler: Option<Step>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triple: Option<Step>,
    pub verdict: Verdict,
}

pub struct Engine {
    store: Mutex<HashMap<ArrangementKey, Certificate>>,
    contradictions: Mutex<Vec<Contradiction>>,
    deletion_depth: usize,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Engine::with_deletion_depth(1)
    }

    /// `depth` bounds how many hyperplanes addition-deletion may remove in a
    /// row before giving up.
    pub fn with_deletion_depth(depth: usize) -> Self {
        Engine {
            store: Mutex::new(HashMap::new()),
            contradictions: Mutex::new(Vec::new()),
            deletion_depth: depth,
        }
    }

    pub fn lookup(&self, a: &Arrangement) -> Option<Certificate> {
        self.store.lock().expect("store lock").get(&a.key()).cloned()
    }

    /// All stored certificates, ordered by key.
    pub fn stored(&self) -> Vec<Certificate> {
        let store = self.store.lock().expect("store lock");
        let mut all: Vec<(&ArrangementKey, &Certificate)> = store.iter().collect();
        all.sort_by(|p, q| p.0.cmp(q.0));
        all.into_iter().map(|(_, c)| c.clone()).collect()
    }

    pub fn contradictions(&self) -> Vec<Contradiction> {
        self.contradictions.lock().expect("contradiction lock").clone()
    }

    /// Stores the conclusion of `step`. Inserting the same verdict twice is a
    /// no-op except that further NOT-FREE witnesses are appended.
    pub fn record(&self, step: Step) -> Certificate {
        let key = step.subject.key();
        let mut store = self.store.lock().expect("store lock");
        match store.get_mut(&key) {
            None => {
                let c = Certificate::from_step(step);
                store.insert(key, c.clone());
                c
            }
            Some(c) => {
                let clash = c.verdict.is_free() != step.conclusion.is_free()
                    || (c.verdict.is_free() && c.verdict != step.conclusion);
                if clash {
                    self.contradictions.lock().expect("contradiction lock").push(Contradiction {
                        subject: step.subject.clone(),
                        stored: c.verdict.clone(),
                        incoming: step.conclusion.clone(),
                        rule: step.rule.id().to_string(),
                    });
                } else if c.verdict.is_not_free()
                    && !c.steps.iter().any(|s| s.rule == step.rule && s.input == step.input)
                {
                    c.steps.push(step);
                }
                c.clone()
            }
        }
    }

    pub fn certify(&self, a: &Arrangement) -> Certificate {
        self.certify_with(a, self.deletion_depth)
    }

    fn certify_with(&self, a: &Arrangement, depth: usize) -> Certificate {
        if let Some(c) = self.lookup(a) {
            return c;
        }
        match self.decide(a, depth) {
            Ok(step) => {
                let fresh_free = step.conclusion.is_free();
                let c = self.record(step);
                if fresh_free && a.rank() >= 3 {
                    self.propagate_ziegler(a, c.main_step().expect("definite"));
                }
                c
            }
            Err(notes) => Certificate::undecided(a, notes),
        }
    }

    fn decide(&self, a: &Arrangement, depth: usize) -> Result<Step, Vec<String>> {
        if let Some(s) = factorization_filter(a) {
            return Ok(s);
        }
        let r = a.rank();
        if r <= 2 {
            return Ok(Step::derive(Rule::RankLe2, a, vec![]).expect("rank checked"));
        }
        if r == 3 {
            return Ok(rank3_decide(a).expect("rank-3 verdict is independent of the hyperplane"));
        }
        let l = a.lattice();
        if let Some(f) = modular_flag(a) {
            let flag = flag_generators(&l, &f);
            return Ok(Step::derive(Rule::SupersolvableModular { flag }, a, vec![]).expect("flag verified"));
        }
        if let Some(f) = divisional_flag(a) {
            let flag = flag_generators(&l, &f);
            return Ok(Step::derive(Rule::Divisional { flag }, a, vec![]).expect("flag verified"));
        }
        let chi = char_poly(a);
        let mut slack_free = Vec::new();
        for h in 0..a.len() {
            let res = a.restrict_to(h).expect("index in range").arrangement;
            if !poly_divides(&char_poly(&res), &chi).expect("chi is nonzero") {
                continue;
            }
            let c = self.certify_with(&res, depth);
            if let Some(p) = c.main_step().filter(|_| c.verdict.is_free()) {
                if let Ok(s) = Step::derive(Rule::Division { hyperplane: h }, a, vec![p.clone()]) {
                    return Ok(s);
                }
            }
        }
        for h in 0..a.len() {
            if let Ok(s) = Step::derive(Rule::AyGap { hyperplane: h }, a, vec![]) {
                return Ok(s);
            }
            if b1b2_row(a, h).expect("index in range").equality {
                slack_free.push(h);
            }
        }
        for &h in &slack_free {
            let res = a.restrict_to(h).expect("index in range").arrangement;
            let c = self.certify_with(&res, depth);
            if let Some(p) = c.main_step().filter(|_| c.verdict.is_free()) {
                let rule = Rule::Triple {
                    hyperplane: h,
                    target: Member::Whole,
                };
                if let Ok(s) = Step::derive(rule, a, vec![p.clone()]) {
                    return Ok(s);
                }
            }
        }
        if depth > 0 {
            for h in 0..a.len() {
                let res = a.restrict_to(h).expect("index in range").arrangement;
                let cr = self.certify_with(&res, depth);
                let Some(pr) = cr.main_step().filter(|_| cr.verdict.is_free()) else {
                    continue;
                };
                let del = a.delete(h).expect("index in range");
                let cd = self.certify_with(&del, depth - 1);
                let Some(pd) = cd.main_step().filter(|_| cd.verdict.is_free()) else {
                    continue;
                };
                let rule = Rule::AdditionDeletion {
                    hyperplane: h,
                    target: Member::Whole,
                };
                if let Ok(s) = Step::derive(rule, a, vec![pd.clone(), pr.clone()]) {
                    return Ok(s);
                }
            }
        }
        Err(vec![
            format!("rank {r}: not supersolvable, no divisional flag"),
            "no free restriction divides chi, no b2 gap".into(),
            format!("addition-deletion found nothing within depth {depth}"),
        ])
    }

    /// Records NOT-FREE for every deletion of the free `a` that shows a
    /// Ziegler configuration.
    fn propagate_ziegler(&self, a: &Arrangement, free_a: &Step) {
        for h in 0..a.len() {
            if let Ok(s) = nonfree_by_ziegler(a, h, free_a) {
                self.record(s);
            }
        }
    }

    /// Per-hyperplane view of the deletions of `a`.
    pub fn scan_deletions(&self, a: &Arrangement) -> Vec<DeletionReport> {
        let whole = self.certify(a);
        let free_a = whole.main_step().filter(|_| whole.verdict.is_free()).cloned();
        (0..a.len())
            .map(|h| {
                let row = b1b2_row(a, h).expect("index in range");
                let ziegler = free_a.as_ref().and_then(|f| nonfree_by_ziegler(a, h, f).ok());
                let triple = if row.equality && ziegler.is_none() {
                    let res = a.restrict_to(h).expect("index in range").arrangement;
                    let c = self.certify(&res);
                    c.main_step().filter(|_| c.verdict.is_free()).and_then(|p| {
                        let rule = Rule::Triple {
                            hyperplane: h,
                            target: Member::Deletion,
                        };
                        Step::derive(rule, a, vec![p.clone()]).ok()
                    })
                } else {
                    None
                };
                let verdict = match (&ziegler, &triple) {
                    (Some(s), _) | (None, Some(s)) => self.record(s.clone()).verdict,
                    (None, None) => self.certify(&a.delete(h).expect("index in range")).verdict,
                };
                DeletionReport {
                    hyperplane: a.hyperplanes()[h].clone(),
                    restriction_size: row.restriction_size,
                    slack: row.slack,
                    ziegler,
                    triple,
                    verdict,
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{boolean, generic, parse_arrangement, weyl, WeylFamily};
    use crate::freeness::replay_certificate;

    fn coord_braid4() -> Arrangement {
        parse_arrangement(
            "dim 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n1 -1 0 0\n1 0 -1 0\n1 0 0 -1\n0 1 -1 0\n0 1 0 -1\n",
        )
        .unwrap()
    }

    #[test]
    fn weyl_arrangements() {
        let e = Engine::new();
        for (fam, n, exps) in [
            (WeylFamily::A, 4, vec![0, 1, 2, 3]),
            (WeylFamily::B, 4, vec![1, 3, 5, 7]),
            (WeylFamily::D, 4, vec![1, 3, 3, 5]),
        ] {
            let a = weyl(fam, n).unwrap();
            let c = e.certify(&a);
            assert_eq!(c.verdict.exponents().unwrap(), &exps[..], "{fam:?}{n}");
            replay_certificate(&c).unwrap();
        }
        assert!(e.contradictions().is_empty());
    }

    #[test]
    fn d4_needs_more_than_supersolvability() {
        let e = Engine::new();
        let c = e.certify(&weyl(WeylFamily::D, 4).unwrap());
        assert_ne!(c.main_step().unwrap().rule.id(), "supersolvable-modular");
    }

    #[test]
    fn coord_braid_deletion_is_not_free() {
        let e = Engine::new();
        let a = coord_braid4();
        let c = e.certify(&a);
        assert_eq!(c.verdict.exponents().unwrap(), &[1, 2, 3, 3]);
        let d = a.delete(0).unwrap();
        let stored = e.lookup(&d).expect("propagated");
        assert!(stored.verdict.is_not_free());
        assert_eq!(stored.steps[0].rule.id(), "ziegler-cond1");
        replay_certificate(&stored).unwrap();
        let reports = e.scan_deletions(&a);
        assert!(reports[0].ziegler.is_some());
        assert!(reports[0].verdict.is_not_free());
    }

    #[test]
    fn generic_is_not_free() {
        let e = Engine::new();
        for (d, n) in [(3, 5), (4, 6)] {
            let c = e.certify(&generic(d, n).unwrap());
            assert!(c.verdict.is_not_free());
            replay_certificate(&c).unwrap();
        }
    }

    #[test]
    fn record_is_idempotent() {
        let e = Engine::new();
        let a = boolean(3);
        let c1 = e.certify(&a);
        let c2 = e.record(c1.main_step().unwrap().clone());
        assert_eq!(c1, c2);
        assert_eq!(e.stored().len(), 1);
    }

    #[test]
    fn certificates_survive_json() {
        let e = Engine::new();
        let a = coord_braid4();
        e.certify(&a);
        for c in e.stored() {
            let text = serde_json::to_string(&c).unwrap();
            let back: Certificate = serde_json::from_str(&text).unwrap();
            assert_eq!(back, c);
            replay_certificate(&back).unwrap();
        }
    }
}
