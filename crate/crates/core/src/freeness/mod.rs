//! Freeness certificates.
//!
//! Every inference is a [`Step`]: a named rule, the arrangement it was run
//! on, the sub-certificates it consumed and the conclusion it produced. The
//! same rule functions serve both the [`Engine`] and [`replay`], so a stored
//! certificate is checked by running exactly the code that produced it.
//!
//! Verdicts are three-valued. `Undecided` is an honest answer in rank four
//! and up, where no combinatorial decision procedure is known.

mod engine;
mod flags;
mod rules;
mod scan;

pub use engine::{Contradiction, DeletionReport, Engine};
pub use flags::{
    b2_flag, divisional_flag, divisional_identity, flag_from_generators, flag_generators,
    modular_flag, modular_identity, ss_implies_df, supersolvable_identity,
};
pub use rules::{apply, factorization_filter, nonfree_by_ziegler, rank3_decide, ziegler_condition};
pub use scan::{conjecture_scan, ScanReport, ScanRow, ScanStatus};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Hyperplane};
use crate::exact::{integer_root_split, IntPolynomial};
use crate::lattice::char_poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreenessError {
    #[error("rank {0} where rank 3 is required")]
    WrongRank(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// Evidence that an arrangement is not free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum NonFreeWitness {
    /// `chi(A; t)` has a factor that is not linear over the integers.
    #[serde(rename = "IRREDUCIBLE-CHI")]
    IrreducibleChi { chi: IntPolynomial },
    /// The subject is `A \ {H}` for a free `A`; the rank-two flat of `A^H`
    /// cut out by `flat` carries the listed Ziegler multiplicities.
    #[serde(rename = "ZIEGLER-L2")]
    ZieglerL2 {
        hyperplane: Hyperplane,
        flat: Vec<Hyperplane>,
        condition: u8,
        multiplicities: Vec<u32>,
    },
    /// `b2(A) - |A| + 1 - b2(A^H, m^H) = gap > 0`.
    #[serde(rename = "AY-GAP")]
    AyGap { hyperplane: Hyperplane, gap: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    /// Exponents in ascending order, one per ambient coordinate.
    Free { exponents: Vec<u64> },
    NotFree { witness: NonFreeWitness },
    Undecided,
}

impl Verdict {
    pub fn is_free(&self) -> bool {
        matches!(self, Verdict::Free { .. })
    }

    pub fn is_not_free(&self) -> bool {
        matches!(self, Verdict::NotFree { .. })
    }

    pub fn exponents(&self) -> Option<&[u64]> {
        match self {
            Verdict::Free { exponents } => Some(exponents),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Free { .. } => "FREE",
            Verdict::NotFree { .. } => "NOT-FREE",
            Verdict::Undecided => "UNDECIDED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Free { exponents } => {
                let e: Vec<String> = exponents.iter().map(u64::to_string).collect();
                write!(f, "FREE ({})", e.join(","))
            }
            Verdict::NotFree { witness } => match witness {
                NonFreeWitness::IrreducibleChi { chi } => write!(f, "NOT-FREE (chi = {chi} does not split)"),
                NonFreeWitness::ZieglerL2 { hyperplane, condition, .. } => {
                    write!(f, "NOT-FREE (Ziegler condition {condition} after removing {hyperplane})")
                }
                NonFreeWitness::AyGap { hyperplane, gap } => {
                    write!(f, "NOT-FREE (b2 gap {gap} at {hyperplane})")
                }
            },
            Verdict::Undecided => write!(f, "UNDECIDED"),
        }
    }
}

/// Which member of the triple `(A, A \ {H}, A^H)` a step concludes about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Member {
    Whole,
    Deletion,
    Restriction,
}

/// A rule together with the parameters that pin down its application.
///
/// Hyperplane indices refer to the step's input arrangement. Flags are given
/// by generators: the `i`-th flat is the intersection of the first `i`
/// listed hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", content = "params", rename_all = "kebab-case")]
pub enum Rule {
    /// Every arrangement of rank at most two is free.
    #[serde(rename = "rank-le-2")]
    RankLe2,
    /// Free arrangements have `chi` splitting into integer linear factors.
    Factorization,
    /// Rank three: free iff `b2(A) = |A| - 1 + d1 d2` for the Ziegler
    /// restriction onto `hyperplane`.
    AyRank3 { hyperplane: usize },
    /// Any rank: a positive gap in `b2(A) >= |A| - 1 + b2(A^H, m^H)`.
    AyGap { hyperplane: usize },
    /// A modular flag of localizations.
    SupersolvableModular { flag: Vec<usize> },
    /// A flag of localizations attaining the `b2` lower bound.
    SupersolvableB2 { flag: Vec<usize> },
    /// A flag of restrictions attaining the `b2` lower bound.
    Divisional { flag: Vec<usize> },
    /// `A^H` free and `chi(A^H) | chi(A)`.
    Division { hyperplane: usize },
    /// Two free members of the triple with matching exponents give the third.
    AdditionDeletion { hyperplane: usize, target: Member },
    /// `A^H` free and the `b2` equality: every member of the triple is free.
    Triple { hyperplane: usize, target: Member },
    /// Freeness of `A^H` from a free `A \ {L}` with `|A_{L ∩ H}| >= 3`.
    Deform { hyperplane: usize, other: usize },
    /// Freeness of `A^H` from a free `(A^H, m^H - delta_X)`, which comes from
    /// a free `A \ {L}` with `L ∩ H = X` or from `rank A^H <= 2`.
    Multideform {
        hyperplane: usize,
        other: Option<usize>,
        point: usize,
    },
    /// Freeness of the intermediate restrictions of a flag from a free `A`
    /// and a free bottom restriction.
    FlagPropagation { flag: Vec<usize>, index: usize },
    /// As above with the freeness of `A` replaced by `|A| = sum d` and
    /// `b2(A) = sum_{i<j} d_i d_j`.
    FlagPropagationBetti {
        flag: Vec<usize>,
        exponents: Vec<u64>,
        index: usize,
    },
    /// Deletions `A \ {H_i}` and `A \ {H_1, ..., H_s}` around a codimension
    /// two flat. `target = None` selects the full deletion.
    Descent {
        hyperplanes: Vec<usize>,
        target: Option<usize>,
    },
    /// Ziegler configurations on a rank-two flat of `A^H` that make
    /// `A \ {H}` non-free. `flat` lists two hyperplanes of `A^H`.
    ZieglerCond1 { hyperplane: usize, flat: [usize; 2] },
    ZieglerCond2 { hyperplane: usize, flat: [usize; 2] },
    ZieglerCond3 { hyperplane: usize, flat: [usize; 2] },
}

impl Rule {
    pub fn id(&self) -> &'static str {
        match self {
            Rule::RankLe2 => "rank-le-2",
            Rule::Factorization => "factorization",
            Rule::AyRank3 { .. } => "ay-rank3",
            Rule::AyGap { .. } => "ay-gap",
            Rule::SupersolvableModular { .. } => "supersolvable-modular",
            Rule::SupersolvableB2 { .. } => "supersolvable-b2",
            Rule::Divisional { .. } => "divisional",
            Rule::Division { .. } => "division",
            Rule::AdditionDeletion { .. } => "addition-deletion",
            Rule::Triple { .. } => "triple",
            Rule::Deform { .. } => "deform",
            Rule::Multideform { .. } => "multideform",
            Rule::FlagPropagation { .. } => "flag-propagation",
            Rule::FlagPropagationBetti { .. } => "flag-propagation-betti",
            Rule::Descent { .. } => "descent",
            Rule::ZieglerCond1 { .. } => "ziegler-cond1",
            Rule::ZieglerCond2 { .. } => "ziegler-cond2",
            Rule::ZieglerCond3 { .. } => "ziegler-cond3",
        }
    }
}

/// What a rule concludes, before it is wrapped into a [`Step`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conclusion {
    pub subject: Arrangement,
    pub verdict: Verdict,
    pub witness: BTreeMap<String, i64>,
}

/// Why a rule did not fire.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct Skip(pub String);

impl Skip {
    pub(crate) fn new(reason: impl Into<String>) -> Self {
        Skip(reason.into())
    }
}

/// One replayable inference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    #[serde(flatten)]
    pub rule: Rule,
    pub input: Arrangement,
    pub subject: Arrangement,
    pub conclusion: Verdict,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub witness: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<Step>,
}

impl Step {
    /// Runs `rule` on `input` and packages the result.
    pub fn derive(rule: Rule, input: &Arrangement, premises: Vec<Step>) -> Result<Step, Skip> {
        let c = apply(&rule, input, &premises)?;
        Ok(Step {
            rule,
            input: input.clone(),
            subject: c.subject,
            conclusion: c.verdict,
            witness: c.witness,
            premises,
        })
    }

    /// Number of steps in the tree.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Step::size).sum::<usize>()
    }

    pub fn walk<'a>(&'a self, out: &mut Vec<&'a Step>) {
        out.push(self);
        for p in &self.premises {
            p.walk(out);
        }
    }
}

/// A verdict on `subject` with the steps that establish it. A `NotFree`
/// certificate may carry several independent witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub subject: Arrangement,
    pub verdict: Verdict,
    pub steps: Vec<Step>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn undecided(subject: &Arrangement, notes: Vec<String>) -> Self {
        Certificate {
            subject: subject.clone(),
            verdict: Verdict::Undecided,
            steps: vec![],
            notes,
        }
    }

    pub(crate) fn from_step(step: Step) -> Self {
        Certificate {
            subject: step.subject.clone(),
            verdict: step.conclusion.clone(),
            steps: vec![step],
            notes: vec![],
        }
    }

    /// The step that carries the verdict; `None` when undecided.
    pub fn main_step(&self) -> Option<&Step> {
        self.steps.first()
    }

    pub fn rule_ids(&self) -> Vec<&'static str> {
        let mut all = Vec::new();
        for s in &self.steps {
            s.walk(&mut all);
        }
        all.iter().map(|s| s.rule.id()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("rule `{rule}` no longer applies: {reason}")]
    Inapplicable { rule: &'static str, reason: String },
    #[error("rule `{rule}` reproduces a different conclusion")]
    Mismatch { rule: &'static str },
    #[error("certificate verdict differs from its steps")]
    VerdictMismatch,
}

/// Re-executes a step tree bottom-up and compares every conclusion.
pub fn replay(step: &Step) -> Result<(), ReplayError> {
    for p in &step.premises {
        replay(p)?;
    }
    let fresh = apply(&step.rule, &step.input, &step.premises).map_err(|s| ReplayError::Inapplicable {
        rule: step.rule.id(),
        reason: s.0,
    })?;
    if fresh.subject.key() != step.subject.key()
        || fresh.verdict != step.conclusion
        || fresh.witness != step.witness
    {
        return Err(ReplayError::Mismatch { rule: step.rule.id() });
    }
    Ok(())
}

pub fn replay_certificate(c: &Certificate) -> Result<(), ReplayError> {
    for s in &c.steps {
        replay(s)?;
        let same_kind = std::mem::discriminant(&s.conclusion) == std::mem::discriminant(&c.verdict);
        if !same_kind || s.subject.key() != c.subject.key() {
            return Err(ReplayError::VerdictMismatch);
        }
    }
    if c.verdict.is_free() && c.steps.first().map(|s| &s.conclusion) != Some(&c.verdict) {
        return Err(ReplayError::VerdictMismatch);
    }
    Ok(())
}

/// Roots of `chi(A)` when it splits with nonnegative integer roots.
pub fn chi_exponents(a: &Arrangement) -> Option<Vec<u64>> {
    let roots = integer_root_split(&char_poly(a)).expect("chi is monic")?;
    roots.into_iter().map(|r| u64::try_from(r).ok()).collect()
}

/// `sum_{i<j} d_i d_j`.
pub fn pairwise_sum(d: &[u64]) -> i64 {
    let s: i64 = d.iter().map(|&x| x as i64).sum();
    let sq: i64 = d.iter().map(|&x| (x * x) as i64).sum();
    (s * s - sq) / 2
}

/// Multiset difference of sorted vectors, `None` unless `b ⊆ a`.
pub(crate) fn multiset_minus(a: &[u64], b: &[u64]) -> Option<Vec<u64>> {
    let mut rest = a.to_vec();
    for x in b {
        let p = rest.iter().position(|y| y == x)?;
        rest.remove(p);
    }
    Some(rest)
}

pub(crate) fn multiset_union(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut v: Vec<u64> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multisets() {
        assert_eq!(multiset_minus(&[1, 2, 3, 3], &[3, 1]), Some(vec![2, 3]));
        assert_eq!(multiset_minus(&[1, 2], &[4]), None);
        assert_eq!(multiset_union(&[1, 5], &[3]), vec![1, 3, 5]);
        assert_eq!(pairwise_sum(&[1, 2, 3, 3]), 29);
        assert_eq!(pairwise_sum(&[1, 3, 5, 5, 7, 9]), 355);
    }

    #[test]
    fn verdict_json_shape() {
        let v = Verdict::Free { exponents: vec![1, 2] };
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["verdict"], "FREE");
        assert_eq!(j["exponents"], serde_json::json!([1, 2]));
        let n = Verdict::NotFree {
            witness: NonFreeWitness::AyGap {
                hyperplane: Hyperplane::new(vec![1, 0]).unwrap(),
                gap: 2,
            },
        };
        let j = serde_json::to_value(&n).unwrap();
        assert_eq!(j["verdict"], "NOT-FREE");
        assert_eq!(j["witness"]["kind"], "AY-GAP");
        let back: Verdict = serde_json::from_value(j).unwrap();
        assert_eq!(back, n);
    }
}
