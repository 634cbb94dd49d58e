//! Blocking-pair scan for matchings restricted to social circles.

use super::{Market, Matching, SocialCircle};

/// A woman and a man who know each other and both strictly prefer each other
/// to their current situation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockingPair {
    pub woman: usize,
    pub man: usize,
}

/// `true` when `agent` strictly prefers `candidate` to its current partner.
/// Any recognised partner beats being single, which has utility 0.
fn improves(market: &Market, matching: &Matching, agent: usize, candidate: usize) -> bool {
    match matching.partner(agent) {
        None => true,
        Some(p) => market.prefers(agent, candidate, p),
    }
}

/// First blocking pair in ascending (woman, man) id order, if any.
pub fn find_blocking_pair(
    market: &Market,
    circle: &SocialCircle<'_>,
    matching: &Matching,
) -> Option<BlockingPair> {
    for &w in market.women() {
        for &j in market.men() {
            if matching.husband_of(w) == Some(j) || !circle.in_circle(w, j) {
                continue;
            }
            if improves(market, matching, w, j) && improves(market, matching, j, w) {
                return Some(BlockingPair { woman: w, man: j });
            }
        }
    }
    None
}

pub fn is_stable(market: &Market, circle: &SocialCircle<'_>, matching: &Matching) -> bool {
    find_blocking_pair(market, circle, matching).is_none()
}

/// Every matched pair lies inside the circle and pairs a woman with a man.
pub fn respects_circle(market: &Market, circle: &SocialCircle<'_>, matching: &Matching) -> bool {
    matching
        .pairs()
        .all(|(w, j)| market.is_woman(w) && market.is_man(j) && circle.in_circle(w, j))
}
