//! Non-Euclidean k-party reduction: tripartite `reduce3`, recursive
//! `reduce_k`, and the best-choice combinator used by the block algorithms.
//!
//! All index arguments are 0-based positions into a projection-sorted
//! working list; a target at position `n` draws donors from positions
//! strictly below `n`. Outputs are sign-normalized so the resulting
//! projection is nonnegative. For mod-P lists the block driver
//! re-canonicalizes the cached projection into [0, P).

use crate::error::{Error, Result};
use crate::projection::{reduce_pair, CutoffRule, ProjKind, TrackedVector};
use crate::solver::WorkingList;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

/// Record of which donors produced a reduction and whether the sign flip
/// was applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockChoice {
    pub arity: usize,
    pub donor_indices: Vec<usize>,
    pub signed: bool,
}

fn build_output(
    target: usize,
    donors: &[usize],
    diff: &BigInt,
    list: &WorkingList,
) -> (TrackedVector, BlockChoice) {
    let tv = &list.vectors[target];
    let mut vec = tv.vec.clone();
    for &i in donors {
        vec = vec.sub(&list.vectors[i].vec);
    }
    let signed = diff.is_negative();
    if signed {
        vec = vec.neg();
    }
    let out = TrackedVector { vec, proj: diff.abs(), kind: tv.kind };
    let choice = BlockChoice { arity: donors.len() + 1, donor_indices: donors.to_vec(), signed };
    (out, choice)
}

/// Tripartite reduction by brute force over all donor pairs. Ties between
/// equal residuals go to the lexicographically smallest index pair.
pub fn reduce3(target: usize, list: &WorkingList) -> Result<(TrackedVector, BlockChoice)> {
    debug_assert!(list.sorted, "list must be sorted by projection");
    if target < 2 {
        return Err(Error::Arity { target, needed: 2 });
    }
    let c = &list.vectors[target].proj;
    let mut best: Option<(BigInt, (usize, usize))> = None;
    for n1 in 0..target - 1 {
        let a = &list.vectors[n1].proj;
        for n2 in n1 + 1..target {
            let b = &list.vectors[n2].proj;
            let key = (c - a - b).abs();
            if best.as_ref().map_or(true, |(k, _)| key < *k) {
                best = Some((key, (n1, n2)));
            }
        }
    }
    let (_, (n1, n2)) = best.unwrap();
    let diff = c - &list.vectors[n1].proj - &list.vectors[n2].proj;
    Ok(build_output(target, &[n1, n2], &diff, list))
}

/// First index in `list.vectors[lo..hi]` whose projection equals `value`.
fn find_first(list: &WorkingList, lo: usize, hi: usize, value: &BigInt) -> Option<usize> {
    let slice = &list.vectors[lo..hi];
    let i = slice.partition_point(|tv| tv.proj < *value);
    if i < slice.len() && slice[i].proj == *value {
        Some(lo + i)
    } else {
        None
    }
}

/// Same contract as [`reduce3`], computed by a two-pointer sweep over the
/// sorted prefix instead of the quadratic pair scan.
pub fn reduce3_fast(target: usize, list: &WorkingList) -> Result<(TrackedVector, BlockChoice)> {
    debug_assert!(list.sorted, "list must be sorted by projection");
    if target < 2 {
        return Err(Error::Arity { target, needed: 2 });
    }
    let c = &list.vectors[target].proj;

    // phase 1: minimal |c - a - b| over the sorted prefix
    let mut lo = 0usize;
    let mut hi = target - 1;
    let mut best: Option<BigInt> = None;
    while lo < hi {
        let s = &list.vectors[lo].proj + &list.vectors[hi].proj;
        let d = (c - &s).abs();
        if best.as_ref().map_or(true, |b| d < *b) {
            best = Some(d);
        }
        if s < *c {
            lo += 1;
        } else if s > *c {
            hi -= 1;
        } else {
            break;
        }
    }
    let best = best.unwrap();

    // phase 2: lexicographically smallest pair achieving the minimum
    for n1 in 0..target - 1 {
        let a = &list.vectors[n1].proj;
        let want_low = c - a - &best;
        let want_high = c - a + &best;
        let hit = find_first(list, n1 + 1, target, &want_low)
            .or_else(|| find_first(list, n1 + 1, target, &want_high));
        if let Some(n2) = hit {
            let diff = c - a - &list.vectors[n2].proj;
            return Ok(build_output(target, &[n1, n2], &diff, list));
        }
    }
    unreachable!("minimal residual is achieved by some pair");
}

/// Minimize |t - sum of `donors` strictly increasing projections| over the
/// prefix `list.vectors[..limit]`. Returns the residual magnitude and the
/// lexicographically smallest minimizing index tuple.
fn best_tuple(
    donors: usize,
    t: &BigInt,
    limit: usize,
    list: &WorkingList,
) -> Option<(BigInt, Vec<usize>)> {
    if limit < donors {
        return None;
    }
    if donors == 1 {
        let slice = &list.vectors[..limit];
        let i = slice.partition_point(|tv| tv.proj < *t);
        let mut cand: Option<(BigInt, usize)> = None;
        if i < limit {
            // first index holding the smallest value >= t
            cand = Some(((&slice[i].proj - t).abs(), i));
        }
        if i > 0 {
            let v_low = &slice[i - 1].proj;
            let first = slice.partition_point(|tv| tv.proj < *v_low);
            let d = (t - v_low).abs();
            // on a tie the lower value wins: its indices precede
            if cand.as_ref().map_or(true, |(k, _)| d <= *k) {
                cand = Some((d, first));
            }
        }
        return cand.map(|(d, idx)| (d, vec![idx]));
    }
    let mut best: Option<(BigInt, Vec<usize>)> = None;
    for last in donors - 1..limit {
        let sub_target = t - &list.vectors[last].proj;
        if let Some((d, mut tuple)) = best_tuple(donors - 1, &sub_target, last, list) {
            tuple.push(last);
            let better = match &best {
                None => true,
                Some((bd, bt)) => d < *bd || (d == *bd && tuple < *bt),
            };
            if better {
                best = Some((d, tuple));
            }
        }
    }
    best
}

/// k-party reduction. k = 2 uses the consecutive-pair choice n' = n-1 that
/// sorting makes optimal; k >= 3 recurses over the last donor index in time
/// O(m^(k-2) log m) for prefix length m.
pub fn reduce_k(
    k: usize,
    target: usize,
    list: &WorkingList,
) -> Result<(TrackedVector, BlockChoice)> {
    debug_assert!(list.sorted, "list must be sorted by projection");
    if k < 2 {
        return Err(Error::config("reduce_k needs k >= 2"));
    }
    if target < k - 1 {
        return Err(Error::Arity { target, needed: k - 1 });
    }
    let c = &list.vectors[target].proj;
    if k == 2 {
        let donor = target - 1;
        let diff = c - &list.vectors[donor].proj;
        return Ok(build_output(target, &[donor], &diff, list));
    }
    let (_, tuple) = best_tuple(k - 1, c, target, list).expect("prefix is long enough");
    let mut diff = c.clone();
    for &i in &tuple {
        diff -= &list.vectors[i].proj;
    }
    Ok(build_output(target, &tuple, &diff, list))
}

/// Evaluate every arity from 2 up to min(k_max, available donors + 1) and
/// return the candidate with the smallest resulting projection; ties go to
/// the smaller arity. Arity 2 is the cutoff-modulated Euclidean step
/// against the immediate predecessor; higher arities carry no cutoff.
pub fn best_choice_reduce(
    k_max: usize,
    target: usize,
    list: &WorkingList,
    rule: &CutoffRule,
) -> Result<(TrackedVector, BlockChoice)> {
    debug_assert!(list.sorted, "list must be sorted by projection");
    if k_max < 2 {
        return Err(Error::config("k_max must be >= 2"));
    }
    if target < 1 {
        return Err(Error::Arity { target, needed: 1 });
    }
    let pair = reduce_pair(&list.vectors[target - 1], &list.vectors[target], rule)?;
    let mut best = (
        pair,
        BlockChoice { arity: 2, donor_indices: vec![target - 1], signed: false },
    );
    for arity in 3..=k_max.min(target + 1) {
        let (mut cand, choice) = reduce_k(arity, target, list)?;
        if cand.kind == ProjKind::ModP {
            cand.proj = cand.proj.mod_floor(&rule.modulus().value_int());
        }
        if cand.proj < best.0.proj {
            best = (cand, choice);
        }
    }
    Ok(best)
}
