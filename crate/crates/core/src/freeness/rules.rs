//! The inference rules. Each takes the input arrangement, the rule
//! parameters and the premise steps, re-derives everything it needs from the
//! lattice, and either concludes or explains why it does not apply.

use std::collections::BTreeMap;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::exact::{integer_root_split, poly_divides};
use crate::lattice::{b1b2_row, b2, char_poly};
use crate::multi::{multi_b2, rank2_exponents, ziegler_restriction};

use super::flags::{
    divisional_exponents, divisional_identity, flag_from_generators, modular_identity,
    supersolvable_exponents, supersolvable_identity,
};
use super::{
    chi_exponents, multiset_minus, multiset_union, pairwise_sum, Conclusion, FreenessError, Member,
    NonFreeWitness, Rule, Skip, Step, Verdict,
};

type Witness = BTreeMap<String, i64>;

fn witness(pairs: &[(&str, i64)]) -> Witness {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn free(subject: Arrangement, exponents: Vec<u64>, w: Witness) -> Conclusion {
    let mut exponents = exponents;
    exponents.sort_unstable();
    Conclusion {
        subject,
        verdict: Verdict::Free { exponents },
        witness: w,
    }
}

fn not_free(subject: Arrangement, w: NonFreeWitness, numbers: Witness) -> Conclusion {
    Conclusion {
        subject,
        verdict: Verdict::NotFree { witness: w },
        witness: numbers,
    }
}

fn no_premises(premises: &[Step]) -> Result<(), Skip> {
    if premises.is_empty() {
        Ok(())
    } else {
        Err(Skip::new("rule takes no premises"))
    }
}

/// Exponents of premise `i`, which must be a FREE verdict on `expected`.
fn free_premise<'p>(premises: &'p [Step], i: usize, expected: &Arrangement) -> Result<&'p [u64], Skip> {
    let p = premises
        .get(i)
        .ok_or_else(|| Skip::new(format!("missing premise {i}")))?;
    if p.subject.key() != expected.key() {
        return Err(Skip::new(format!("premise {i} is about another arrangement")));
    }
    p.conclusion
        .exponents()
        .ok_or_else(|| Skip::new(format!("premise {i} is not a FREE verdict")))
}

fn premise_count(premises: &[Step], n: usize) -> Result<(), Skip> {
    if premises.len() == n {
        Ok(())
    } else {
        Err(Skip::new(format!("expected {n} premises, got {}", premises.len())))
    }
}

fn hyperplane(a: &Arrangement, h: usize) -> Result<Hyperplane, Skip> {
    a.hyperplane(h).cloned().map_err(|e| Skip::new(e.to_string()))
}

fn restriction_of(a: &Arrangement, h: usize) -> Result<Arrangement, Skip> {
    Ok(a.restrict_to(h).map_err(|e| Skip::new(e.to_string()))?.arrangement)
}

/// `b2(A) - b2(A^H) - (|A| - |A^H|) |A^H|`.
fn slack(a: &Arrangement, h: usize) -> Result<i64, Skip> {
    Ok(b1b2_row(a, h).map_err(|e| Skip::new(e.to_string()))?.slack)
}

pub fn apply(rule: &Rule, a: &Arrangement, premises: &[Step]) -> Result<Conclusion, Skip> {
    match rule {
        Rule::RankLe2 => rank_le_2(a, premises),
        Rule::Factorization => factorization(a, premises),
        Rule::AyRank3 { hyperplane } => ay_rank3(a, *hyperplane, premises),
        Rule::AyGap { hyperplane } => ay_gap(a, *hyperplane, premises),
        Rule::SupersolvableModular { flag } => supersolvable(a, flag, true, premises),
        Rule::SupersolvableB2 { flag } => supersolvable(a, flag, false, premises),
        Rule::Divisional { flag } => divisional(a, flag, premises),
        Rule::Division { hyperplane } => division(a, *hyperplane, premises),
        Rule::AdditionDeletion { hyperplane, target } => addition_deletion(a, *hyperplane, *target, premises),
        Rule::Triple { hyperplane, target } => triple(a, *hyperplane, *target, premises),
        Rule::Deform { hyperplane, other } => deform(a, *hyperplane, *other, premises),
        Rule::Multideform {
            hyperplane,
            other,
            point,
        } => multideform(a, *hyperplane, *other, *point, premises),
        Rule::FlagPropagation { flag, index } => flag_propagation(a, flag, None, *index, premises),
        Rule::FlagPropagationBetti {
            flag,
            exponents,
            index,
        } => flag_propagation(a, flag, Some(exponents), *index, premises),
        Rule::Descent { hyperplanes, target } => descent(a, hyperplanes, *target, premises),
        Rule::ZieglerCond1 { hyperplane, flat } => ziegler(a, *hyperplane, *flat, 1, premises),
        Rule::ZieglerCond2 { hyperplane, flat } => ziegler(a, *hyperplane, *flat, 2, premises),
        Rule::ZieglerCond3 { hyperplane, flat } => ziegler(a, *hyperplane, *flat, 3, premises),
    }
}

fn rank_le_2(a: &Arrangement, premises: &[Step]) -> Result<Conclusion, Skip> {
    no_premises(premises)?;
    let r = a.rank();
    if r > 2 {
        return Err(Skip::new(format!("rank {r} exceeds two")));
    }
    let e = chi_exponents(a).expect("chi of rank <= 2 splits");
    Ok(free(a.clone(), e, witness(&[("rank", r as i64)])))
}

fn factorization(a: &Arrangement, premises: &[Step]) -> Result<Conclusion, Skip> {
    no_premises(premises)?;
    let chi = char_poly(a);
    match integer_root_split(&chi).expect("chi is monic") {
        Some(_) => Err(Skip::new("chi splits over the integers")),
        None => Ok(not_free(a.clone(), NonFreeWitness::IrreducibleChi { chi }, Witness::new())),
    }
}

fn ay_rank3(a: &Arrangement, h: usize, premises: &[Step]) -> Result<Conclusion, Skip> {
    no_premises(premises)?;
    let r = a.rank();
    if r != 3 {
        return Err(Skip::new(format!("rank {r}, need 3")));
    }
    let hp = hyperplane(a, h)?;
    let z = ziegler_restriction(a, h).map_err(|e| Skip::new(e.to_string()))?;
    let e = rank2_exponents(&z).expect("Ziegler restriction of a rank-3 arrangement has rank 2");
    let (d1, d2) = (e.d1 as i64, e.d2 as i64);
    let lhs = b2(a);
    let rhs = a.len() as i64 - 1 + d1 * d2;
    let w = witness(&[("b2", lhs), ("multi_b2", d1 * d2), ("d1", d1), ("d2", d2)]);
    assert!(lhs >= rhs, "b2 lower bound violated at {hp}: {lhs} < {rhs}");
    if lhs == rhs {
        let mut exps = vec![1, e.d1, e.d2];
        exps.resize(a.dim(), 0);
        Ok(free(a.clone(), exps, w))
    } else {
        let gap = lhs - rhs;
        Ok(not_free(a.clone(), NonFreeWitness::AyGap { hyperplane: hp, gap }, w))
    }
}

fn ay_gap(a: &Arrangement, h: usize, premises: &[Step]) -> Result<Conclusion, Skip> {
    no_premises(premises)?;
    if a.rank() < 3 {
        return Err(Skip::new("rank at most two"));
    }
    let hp = hyperplane(a, h)?;
    let z = ziegler_restriction(a, h).map_err(|e| Skip::new(e.to_string()))?;
    let mb2 = multi_b2(&z);
    let lhs = b2(a);
    let gap = lhs - (a.len() as i64 - 1) - mb2;
    assert!(gap >= 0, "b2 lower bound violated at {hp}: gap {gap}");
    if gap == 0 {
        return Err(Skip::new("no b2 gap"));
    }
    let w = witness(&[("b2", lhs), ("multi_b2", mb2)]);
    Ok(not_free(a.clone(), NonFreeWitness::AyGap { hyperplane: hp, gap }, w))
}

fn supersolvable(a: &Arrangement, gens: &[usize], modular: bool, premises: &[Step]) -> Result<Conclusion, Skip> {
    no_premises(premises)?;
    let l = a.lattice();
    let flag = flag_from_generators(&l, gens).ok_or_else(|| Skip::new("generators do not form a flag"))?;
    let ok = if modular {
        modular_identity(a, &flag)
    } else {
        supersolvable_identity(a, &flag)
    };
    if !ok {
        return Err(Skip::new(if modular {
            "flag is not modular"
        } else {
            "flag misses the b2 identity"
        }));
    }
    Ok(free(a.clone(), supersolvable_exponents(a, &flag), witness(&[("b2", b2(a))])))
}

fn divisional(a: &Arrangement, gens: &[usize], premises: &[Step]) -> Result<Conclusion, Skip> {
    no_premises(premises)?;
    let l = a.lattice();
    let flag = flag_from_generators(&l, gens).ok_or_else(|| Skip::new("generators do not form a flag"))?;
    if !divisional_identity(a, &flag) {
        return Err(Skip::new("flag misses the divisional identity"));
    }
    Ok(free(a.clone(), divisional_exponents(a, &flag), witness(&[("b2", b2(a))])))
}

fn division(a: &Arrangement, h: usize, premises: &[Step]) -> Result<Conclusion, Skip> {
    premise_count(premises, 1)?;
    let r = restriction_of(a, h)?;
    let eh = free_premise(premises, 0, &r)?;
    if !poly_divides(&char_poly(&r), &char_poly(a)).expect("chi is nonzero") {
        return Err(Skip::new("chi(A^H) does not divide chi(A)"));
    }
    let d = (a.len() - r.len()) as u64;
    let w = witness(&[("restriction_size", r.len() as i64)]);
    Ok(free(a.clone(), multiset_union(eh, &[d]), w))
}

fn addition_deletion(a: &Arrangement, h: usize, target: Member, premises: &[Step]) -> Result<Conclusion, Skip> {
    premise_count(premises, 2)?;
    let deletion = a.delete(h).map_err(|e| Skip::new(e.to_string()))?;
    let restriction = restriction_of(a, h)?;
    let d = (a.len() - restriction.len()) as u64;
    let w = witness(&[("d", d as i64)]);
    let mismatch = || Skip::new("exponent patterns do not match");
    match target {
        Member::Whole => {
            let e1 = free_premise(premises, 0, &deletion)?;
            let eh = free_premise(premises, 1, &restriction)?;
            if multiset_union(eh, &[d - 1]) != e1 {
                return Err(mismatch());
            }
            Ok(free(a.clone(), multiset_union(eh, &[d]), w))
        }
        Member::Deletion => {
            let e = free_premise(premises, 0, a)?;
            let eh = free_premise(premises, 1, &restriction)?;
            if multiset_union(eh, &[d]) != e {
                return Err(mismatch());
            }
            Ok(free(deletion, multiset_union(eh, &[d - 1]), w))
        }
        Member::Restriction => {
            let e = free_premise(premises, 0, a)?;
            let e1 = free_premise(premises, 1, &deletion)?;
            let rest = multiset_minus(e, &[d]).ok_or_else(mismatch)?;
            if multiset_union(&rest, &[d - 1]) != e1 {
                return Err(mismatch());
            }
            Ok(free(restriction, rest, w))
        }
    }
}

fn triple(a: &Arrangement, h: usize, target: Member, premises: &[Step]) -> Result<Conclusion, Skip> {
    premise_count(premises, 1)?;
    let r = restriction_of(a, h)?;
    let eh = free_premise(premises, 0, &r)?.to_vec();
    let s = slack(a, h)?;
    if s != 0 {
        return Err(Skip::new(format!("b2 slack {s} is not zero")));
    }
    let d = (a.len() - r.len()) as u64;
    let w = witness(&[("b2", b2(a)), ("b2_restriction", b2(&r))]);
    match target {
        Member::Whole => Ok(free(a.clone(), multiset_union(&eh, &[d]), w)),
        Member::Deletion => {
            let deletion = a.delete(h).map_err(|e| Skip::new(e.to_string()))?;
            Ok(free(deletion, multiset_union(&eh, &[d - 1]), w))
        }
        Member::Restriction => Ok(free(r, eh, w)),
    }
}

fn deform(a: &Arrangement, h: usize, other: usize, premises: &[Step]) -> Result<Conclusion, Skip> {
    premise_count(premises, 2)?;
    if h == other {
        return Err(Skip::new("L must differ from H"));
    }
    let e = free_premise(premises, 0, a)?;
    let without_l = a.delete(other).map_err(|e| Skip::new(e.to_string()))?;
    free_premise(premises, 1, &without_l)?;
    let s = slack(a, h)?;
    if s != 0 {
        return Err(Skip::new(format!("b2 slack {s} is not zero")));
    }
    let m = a.flat(&[h, other]).map_err(|e| Skip::new(e.to_string()))?.multiplicity();
    if m < 3 {
        return Err(Skip::new(format!("|A_(L∩H)| = {m} < 3")));
    }
    let r = restriction_of(a, h)?;
    let d = (a.len() - r.len()) as u64;
    let rest = multiset_minus(e, &[d]).ok_or_else(|| Skip::new("|A| - |A^H| is not an exponent"))?;
    Ok(free(r, rest, witness(&[("localization_size", m as i64)])))
}

fn multideform(
    a: &Arrangement,
    h: usize,
    other: Option<usize>,
    point: usize,
    premises: &[Step],
) -> Result<Conclusion, Skip> {
    premise_count(premises, if other.is_some() { 2 } else { 1 })?;
    let e = free_premise(premises, 0, a)?;
    let res = a.restrict_to(h).map_err(|e| Skip::new(e.to_string()))?;
    let r = res.arrangement;
    if !poly_divides(&char_poly(&r), &char_poly(a)).expect("chi is nonzero") {
        return Err(Skip::new("chi(A^H) does not divide chi(A)"));
    }
    let fiber = res
        .fibers
        .get(point)
        .ok_or_else(|| Skip::new("point is not a hyperplane of A^H"))?;
    if fiber.len() < 2 {
        return Err(Skip::new("m^H(X) < 2"));
    }
    match other {
        Some(l) => {
            if !fiber.contains(&l) {
                return Err(Skip::new("L ∩ H is not X"));
            }
            let without_l = a.delete(l).map_err(|e| Skip::new(e.to_string()))?;
            free_premise(premises, 1, &without_l)?;
        }
        None => {
            if r.rank() > 2 {
                return Err(Skip::new("rank >= 3 multi-freeness undecidable here"));
            }
        }
    }
    let d = (a.len() - r.len()) as u64;
    let rest = multiset_minus(e, &[d]).ok_or_else(|| Skip::new("|A| - |A^H| is not an exponent"))?;
    Ok(free(r, rest, witness(&[("multiplicity", fiber.len() as i64)])))
}

fn flag_propagation(
    a: &Arrangement,
    gens: &[usize],
    betti: Option<&Vec<u64>>,
    index: usize,
    premises: &[Step],
) -> Result<Conclusion, Skip> {
    let l = a.lattice();
    let flag = flag_from_generators(&l, gens).ok_or_else(|| Skip::new("generators do not form a flag"))?;
    let k = gens.len();
    let lowest = if betti.is_some() { 0 } else { 1 };
    if k == 0 || index < lowest || index >= k {
        return Err(Skip::new(format!("index {index} outside {lowest}..{k}")));
    }
    let bottom = a
        .restriction(l.flat(flag[k]))
        .expect("flag member is a flat")
        .arrangement;
    let (e, ek) = match betti {
        None => {
            premise_count(premises, 2)?;
            (free_premise(premises, 0, a)?.to_vec(), free_premise(premises, 1, &bottom)?)
        }
        Some(d) => {
            premise_count(premises, 1)?;
            let mut d = d.clone();
            d.sort_unstable();
            if d.len() != a.dim() {
                return Err(Skip::new("need one exponent per coordinate"));
            }
            if d.iter().sum::<u64>() != a.len() as u64 {
                return Err(Skip::new("|A| differs from the exponent sum"));
            }
            if pairwise_sum(&d) != b2(a) {
                return Err(Skip::new("b2(A) differs from the pairwise exponent sum"));
            }
            (d, free_premise(premises, 0, &bottom)?)
        }
    };
    let sizes: Vec<u64> = flag.iter().map(|&x| l.restriction_size(x) as u64).collect();
    let gaps: Vec<u64> = sizes.windows(2).map(|w| w[0] - w[1]).collect();
    let mut rest = e;
    for (i, g) in gaps.iter().enumerate() {
        rest = multiset_minus(&rest, &[*g])
            .ok_or_else(|| Skip::new(format!("gap {g} at step {i} matches no remaining exponent")))?;
    }
    if rest != ek {
        return Err(Skip::new("bottom restriction has the wrong exponents"));
    }
    let subject = if index == 0 {
        a.clone()
    } else {
        a.restriction(l.flat(flag[index])).expect("flag member is a flat").arrangement
    };
    let w = witness(&[("size", sizes[index] as i64)]);
    Ok(free(subject, multiset_union(ek, &gaps[index..]), w))
}

fn descent(a: &Arrangement, hs: &[usize], target: Option<usize>, premises: &[Step]) -> Result<Conclusion, Skip> {
    premise_count(premises, 2)?;
    let s = hs.len();
    if s < 2 {
        return Err(Skip::new("need at least two hyperplanes"));
    }
    let mut sorted = hs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != s {
        return Err(Skip::new("hyperplanes must be distinct"));
    }
    let e = free_premise(premises, 0, a)?;
    let first_gone = a.delete(hs[0]).map_err(|e| Skip::new(e.to_string()))?;
    free_premise(premises, 1, &first_gone)?;
    let x = a.flat(hs).map_err(|e| Skip::new(e.to_string()))?;
    if x.codim() != 2 {
        return Err(Skip::new(format!("intersection has codimension {}", x.codim())));
    }
    if x.multiplicity() < s + 1 {
        return Err(Skip::new(format!("|A_X| = {} < {}", x.multiplicity(), s + 1)));
    }
    for &h in &hs[1..] {
        let sl = slack(a, h)?;
        if sl != 0 {
            return Err(Skip::new(format!("b2 slack {sl} at hyperplane {h}")));
        }
    }
    let d = (a.len() - restriction_of(a, hs[0])?.len()) as u64;
    let rest = multiset_minus(e, &[d]).ok_or_else(|| Skip::new("|A| - |A^H_1| is not an exponent"))?;
    let w = witness(&[("localization_size", x.multiplicity() as i64)]);
    match target {
        Some(i) if i >= 1 && i < s => {
            let subject = a.delete(hs[i]).expect("index checked");
            Ok(free(subject, multiset_union(&rest, &[d - 1]), w))
        }
        Some(i) => Err(Skip::new(format!("target {i} outside 1..{s}"))),
        None => {
            if d < s as u64 {
                return Err(Skip::new("exponent would become negative"));
            }
            let subject = a.delete_many(hs).expect("indices checked");
            Ok(free(subject, multiset_union(&rest, &[d - s as u64]), w))
        }
    }
}

/// First of the three Ziegler configurations matched by the multiplicities
/// of a rank-two flat of `A^H`.
pub fn ziegler_condition(ms: &[u32]) -> Option<u8> {
    (1..=3).find(|&c| condition_holds(ms, c))
}

fn condition_holds(ms: &[u32], c: u8) -> bool {
    let mut v = ms.to_vec();
    v.sort_unstable_by(|x, y| y.cmp(x));
    match (c, v.len()) {
        (1, 2) => v[1] > 1,
        (2, 3) => v[2] >= 2,
        (3, 3) => v[0] >= 3 && v[1] >= 2,
        _ => false,
    }
}

fn ziegler(a: &Arrangement, h: usize, flat: [usize; 2], c: u8, premises: &[Step]) -> Result<Conclusion, Skip> {
    premise_count(premises, 1)?;
    free_premise(premises, 0, a)?;
    if a.dim() < 3 {
        return Err(Skip::new("dimension below three"));
    }
    let hp = hyperplane(a, h)?;
    let res = a.restrict_to(h).map_err(|e| Skip::new(e.to_string()))?;
    let r = &res.arrangement;
    if flat[0] == flat[1] || flat.iter().any(|&k| k >= r.len()) {
        return Err(Skip::new("flat needs two distinct hyperplanes of A^H"));
    }
    let lr = r.lattice();
    let x = lr.closure(&flat);
    let members = lr.flat(x).hyperplane_indices();
    let ms: Vec<u32> = members.iter().map(|&k| res.fibers[k].len() as u32).collect();
    if !condition_holds(&ms, c) {
        return Err(Skip::new(format!("condition {c} fails at this flat")));
    }
    let sl = slack(a, h)?;
    assert!(sl >= 1, "Ziegler configuration at {hp} without b2 slack");
    let w = NonFreeWitness::ZieglerL2 {
        hyperplane: hp,
        flat: members.iter().map(|&k| r.hyperplanes()[k].clone()).collect(),
        condition: c,
        multiplicities: ms,
    };
    let subject = a.delete(h).expect("index checked");
    Ok(not_free(subject, w, witness(&[("slack", sl)])))
}

/// NOT-FREE via the characteristic polynomial, if it fails to split.
pub fn factorization_filter(a: &Arrangement) -> Option<Step> {
    Step::derive(Rule::Factorization, a, vec![]).ok()
}

/// The complete rank-three decision. The verdict is computed for every
/// hyperplane and must not depend on the choice; the first is returned.
pub fn rank3_decide(a: &Arrangement) -> Result<Step, FreenessError> {
    let r = a.rank();
    if r != 3 {
        return Err(FreenessError::WrongRank(r));
    }
    let first = Step::derive(Rule::AyRank3 { hyperplane: 0 }, a, vec![]).expect("rank checked");
    for h in 1..a.len() {
        let other = Step::derive(Rule::AyRank3 { hyperplane: h }, a, vec![]).expect("rank checked");
        if other.conclusion.is_free() != first.conclusion.is_free()
            || other.conclusion.exponents() != first.conclusion.exponents()
        {
            return Err(FreenessError::Inconsistent(format!(
                "rank-3 verdict differs between hyperplanes 0 and {h}"
            )));
        }
    }
    Ok(first)
}

/// Scans the rank-two flats of `A^H` for a Ziegler configuration and
/// concludes NOT-FREE for `A \ {H}`. `free_a` must certify `A` as FREE.
pub fn nonfree_by_ziegler(a: &Arrangement, h: usize, free_a: &Step) -> Result<Step, Skip> {
    if !free_a.conclusion.is_free() || free_a.subject.key() != a.key() {
        return Err(Skip::new("A is not certified free"));
    }
    let res = a.restrict_to(h).map_err(|e| Skip::new(e.to_string()))?;
    let lr = res.arrangement.lattice();
    for &x in lr.level(2) {
        let members = lr.flat(x).hyperplane_indices();
        let ms: Vec<u32> = members.iter().map(|&k| res.fibers[k].len() as u32).collect();
        if let Some(c) = ziegler_condition(&ms) {
            let flat = [members[0], members[1]];
            let rule = match c {
                1 => Rule::ZieglerCond1 { hyperplane: h, flat },
                2 => Rule::ZieglerCond2 { hyperplane: h, flat },
                _ => Rule::ZieglerCond3 { hyperplane: h, flat },
            };
            return Step::derive(rule, a, vec![free_a.clone()]);
        }
    }
    Err(Skip::new("no rank-two flat of A^H matches a Ziegler configuration"))
}
