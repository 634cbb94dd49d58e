//! Man-proposing deferred acceptance over circle-filtered preference lists.

use rand::Rng;

use super::{Market, Matching, SocialCircle};

/// Core proposal loop. `pick` chooses which free man moves next given the
/// number of free men; it returns an index into the free pool.
fn deferred_acceptance<F>(market: &Market, circle: &SocialCircle<'_>, mut pick: F) -> Matching
where
    F: FnMut(usize) -> usize,
{
    let n = market.agent_count();
    let mut next_choice = vec![0usize; n];
    let mut fiance: Vec<Option<usize>> = vec![None; n];
    let mut free: Vec<usize> = market.men().to_vec();

    while !free.is_empty() {
        let idx = pick(free.len());
        let man = free.swap_remove(idx);
        let prefs = market.preferences(man);
        // The man keeps proposing until he is held or has run out of
        // recognised women.
        while next_choice[man] < prefs.len() {
            let woman = prefs[next_choice[man]];
            next_choice[man] += 1;
            if !circle.in_circle(man, woman) {
                continue;
            }
            match fiance[woman] {
                None => {
                    fiance[woman] = Some(man);
                    break;
                }
                Some(current) if market.prefers(woman, man, current) => {
                    fiance[woman] = Some(man);
                    free.push(current);
                    break;
                }
                Some(_) => {}
            }
        }
    }

    let mut matching = Matching::new();
    for &w in market.women() {
        if let Some(j) = fiance[w] {
            matching.engage(w, j);
        }
    }
    matching
}

/// Deferred acceptance where each man only proposes to women inside his
/// social circle. Men who exhaust their circle stay unmatched.
pub fn restricted_deferred_acceptance(market: &Market, circle: &SocialCircle<'_>) -> Matching {
    deferred_acceptance(market, circle, |len| len - 1)
}

/// Same as [`restricted_deferred_acceptance`] but the next free man to
/// propose is drawn at random. The outcome does not depend on the draws.
pub fn restricted_deferred_acceptance_randomized<R: Rng + ?Sized>(
    market: &Market,
    circle: &SocialCircle<'_>,
    rng: &mut R,
) -> Matching {
    deferred_acceptance(market, circle, |len| rng.random_range(0..len))
}

/// Full-information Gale–Shapley: every man may propose to every woman.
pub fn classical_gs(market: &Market) -> Matching {
    restricted_deferred_acceptance(market, &SocialCircle::complete())
}
