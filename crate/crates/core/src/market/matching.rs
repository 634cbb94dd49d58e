use std::collections::BTreeMap;

use serde::Serialize;

use super::{Market, SocialCircle};
use crate::error::{Error, Result};

/// Partial one-to-one pairing of women with men.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    husband: BTreeMap<usize, usize>,
    wife: BTreeMap<usize, usize>,
}

impl Matching {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a matching from `(woman, man)` pairs, rejecting any agent that
    /// appears twice.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Self> {
        let mut m = Self::new();
        for (w, j) in pairs {
            if m.husband.contains_key(&w) || m.wife.contains_key(&j) {
                return Err(Error::invalid(format!(
                    "pair ({w}, {j}) reuses a matched agent"
                )));
            }
            m.husband.insert(w, j);
            m.wife.insert(j, w);
        }
        Ok(m)
    }

    /// Engages `woman` and `man`, dropping any previous partner of either.
    pub(crate) fn engage(&mut self, woman: usize, man: usize) {
        if let Some(old) = self.husband.insert(woman, man) {
            self.wife.remove(&old);
        }
        if let Some(old) = self.wife.insert(man, woman) {
            if old != woman {
                self.husband.remove(&old);
            }
        }
    }

    pub fn husband_of(&self, woman: usize) -> Option<usize> {
        self.husband.get(&woman).copied()
    }

    pub fn wife_of(&self, man: usize) -> Option<usize> {
        self.wife.get(&man).copied()
    }

    /// Partner of an agent on either side.
    pub fn partner(&self, agent: usize) -> Option<usize> {
        self.husband_of(agent).or_else(|| self.wife_of(agent))
    }

    /// `(woman, man)` pairs in ascending woman id.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.husband.iter().map(|(&w, &j)| (w, j))
    }

    pub fn len(&self) -> usize {
        self.husband.len()
    }

    pub fn is_empty(&self) -> bool {
        self.husband.is_empty()
    }
}

/// Utility of a single agent: the score it gives its partner, 0 if
/// unmatched.
pub fn agent_utility(market: &Market, matching: &Matching, agent: usize) -> Result<f64> {
    if agent >= market.agent_count() {
        return Err(Error::invalid(format!(
            "agent {agent} is not part of a market of {}",
            market.agent_count()
        )));
    }
    Ok(match matching.partner(agent) {
        Some(p) => market.score(agent, p).ok_or_else(|| {
            Error::invalid(format!("agent {agent} is matched to same-side agent {p}"))
        })?,
        None => 0.0,
    })
}

/// Mean of both partners' utilities for a matched pair.
pub fn pair_utility(market: &Market, matching: &Matching, woman: usize, man: usize) -> Result<f64> {
    if matching.husband_of(woman) != Some(man) || !market.is_woman(woman) {
        return Err(Error::invalid(format!(
            "({woman}, {man}) is not a matched pair"
        )));
    }
    Ok((agent_utility(market, matching, woman)? + agent_utility(market, matching, man)?) / 2.0)
}

/// Sum of pair utilities divided by the `n / 2` possible pairs, so unmatched
/// agents pull the average down.
pub fn average_utility(market: &Market, matching: &Matching) -> f64 {
    let total: f64 = matching
        .pairs()
        .map(|(w, j)| {
            let ws = market.score(w, j).unwrap_or(0.0);
            let ms = market.score(j, w).unwrap_or(0.0);
            (ws + ms) / 2.0
        })
        .sum();
    total / market.side_size() as f64
}

/// One matched pair in a [`MatchingReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairRecord {
    pub woman: usize,
    pub man: usize,
    /// Hop distance, `None` under full information.
    pub distance: Option<u32>,
    pub pair_utility: f64,
}

/// JSON view of a matching outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchingReport {
    pub pairs: Vec<PairRecord>,
    pub unmatched_women: Vec<usize>,
    pub unmatched_men: Vec<usize>,
    pub average_utility: f64,
}

impl MatchingReport {
    pub fn new(market: &Market, circle: &SocialCircle<'_>, matching: &Matching) -> Result<Self> {
        let pairs = matching
            .pairs()
            .map(|(w, j)| {
                Ok(PairRecord {
                    woman: w,
                    man: j,
                    distance: circle.distance(w, j),
                    pair_utility: pair_utility(market, matching, w, j)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            pairs,
            unmatched_women: market
                .women()
                .iter()
                .copied()
                .filter(|&w| matching.husband_of(w).is_none())
                .collect(),
            unmatched_men: market
                .men()
                .iter()
                .copied()
                .filter(|&j| matching.wife_of(j).is_none())
                .collect(),
            average_utility: average_utility(market, matching),
        })
    }
}
