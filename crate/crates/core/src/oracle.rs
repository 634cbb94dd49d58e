//! Exhaustive reference implementations for small instances.
//!
//! Nothing here is fast. It exists so tests can compare deferred acceptance
//! against the full set of stable matchings.

use crate::error::{Error, Result};
use crate::market::{is_stable, Market, Matching, SocialCircle};

/// Largest agent count accepted by [`enumerate_stable_matchings`].
pub const MAX_ENUMERATION_AGENTS: usize = 12;

/// Every stable matching of the circle-restricted instance, partial
/// matchings included, in the order they are enumerated (women ascending,
/// "single" first, then men ascending).
pub fn enumerate_stable_matchings(
    market: &Market,
    circle: &SocialCircle<'_>,
) -> Result<Vec<Matching>> {
    let n = market.agent_count();
    if n > MAX_ENUMERATION_AGENTS {
        return Err(Error::Capacity {
            n,
            limit: MAX_ENUMERATION_AGENTS,
        });
    }
    let mut out = Vec::new();
    let mut used = vec![false; n];
    let mut pairs = Vec::with_capacity(market.side_size());
    enumerate(market, circle, 0, &mut used, &mut pairs, &mut out);
    Ok(out)
}

fn enumerate(
    market: &Market,
    circle: &SocialCircle<'_>,
    depth: usize,
    used: &mut [bool],
    pairs: &mut Vec<(usize, usize)>,
    out: &mut Vec<Matching>,
) {
    let women = market.women();
    if depth == women.len() {
        let m =
            Matching::from_pairs(pairs.iter().copied()).expect("enumeration keeps pairs disjoint");
        if is_stable(market, circle, &m) {
            out.push(m);
        }
        return;
    }
    let w = women[depth];
    enumerate(market, circle, depth + 1, used, pairs, out);
    for &j in market.men() {
        if used[j] || !circle.in_circle(w, j) {
            continue;
        }
        used[j] = true;
        pairs.push((w, j));
        enumerate(market, circle, depth + 1, used, pairs, out);
        pairs.pop();
        used[j] = false;
    }
}

/// Weak preference of `man` for his situation in `a` over `b`; single is
/// worst.
fn man_weakly_prefers(market: &Market, man: usize, a: &Matching, b: &Matching) -> bool {
    match (a.wife_of(man), b.wife_of(man)) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x == y || market.prefers(man, x, y),
    }
}

/// The candidate every man weakly prefers to every other candidate.
///
/// Fails with [`Error::OracleViolation`] when no such candidate exists, or
/// when two different matchings both qualify.
pub fn man_optimal(candidates: &[Matching], market: &Market) -> Result<Matching> {
    if candidates.is_empty() {
        return Err(Error::invalid("man_optimal needs at least one candidate"));
    }
    let dominates = |c: &Matching| {
        candidates.iter().all(|other| {
            market
                .men()
                .iter()
                .all(|&j| man_weakly_prefers(market, j, c, other))
        })
    };
    let mut winners = candidates.iter().filter(|c| dominates(c));
    let first = winners
        .next()
        .ok_or_else(|| Error::OracleViolation("no man-optimal matching among candidates".into()))?;
    if let Some(other) = winners.find(|c| *c != first) {
        return Err(Error::OracleViolation(format!(
            "two distinct man-optimal matchings: {first:?} and {other:?}"
        )));
    }
    Ok(first.clone())
}
