//! Two-sided market over the nodes of a network.
//!
//! Nodes are split evenly into women and men. Every agent holds a strict
//! ranking over the whole opposite side, and a score in `[1, 10]` derived
//! from rank position. Scores belong to the market alone, so the same market
//! can be matched under several networks and utilities stay comparable.

mod circle;
mod da;
mod matching;
mod stability;

pub use circle::SocialCircle;
pub use da::{
    classical_gs, restricted_deferred_acceptance, restricted_deferred_acceptance_randomized,
};
pub use matching::{
    agent_utility, average_utility, pair_utility, Matching, MatchingReport, PairRecord,
};
pub use stability::{find_blocking_pair, is_stable, respects_circle, BlockingPair};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Best score on the utility scale.
pub const MAX_SCORE: f64 = 10.0;
/// Worst score on the utility scale.
pub const MIN_SCORE: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Woman,
    Man,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Woman => Side::Man,
            Side::Man => Side::Woman,
        }
    }
}

/// Balanced market with complete strict preferences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Market {
    side: Vec<Side>,
    women: Vec<usize>,
    men: Vec<usize>,
    /// Per agent, opposite-side ids from most to least preferred.
    preferences: Vec<Vec<usize>>,
    /// Dense `n × n` table; `position[a * n + b]` is the 0-based rank `a`
    /// gives `b`, `u32::MAX` for same-side pairs.
    position: Vec<u32>,
}

/// Serialised form of a [`Market`], used for instance replay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarketData {
    pub n: usize,
    pub women: Vec<usize>,
    pub men: Vec<usize>,
    /// `preferences[a]` lists the opposite side, best first.
    pub preferences: Vec<Vec<usize>>,
}

impl Market {
    /// Random balanced market on `n` agents: a uniform random split into
    /// `n/2` women and `n/2` men, then an independent uniform permutation of
    /// the opposite side for every agent (in ascending id order).
    pub fn build<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "agent count must be even and at least 2, got {n}"
            )));
        }
        let mut ids: Vec<usize> = (0..n).collect();
        ids.shuffle(rng);
        let mut women = ids[..n / 2].to_vec();
        let mut men = ids[n / 2..].to_vec();
        women.sort_unstable();
        men.sort_unstable();

        let mut side = vec![Side::Man; n];
        for &w in &women {
            side[w] = Side::Woman;
        }
        let preferences = (0..n)
            .map(|a| {
                let mut list = match side[a] {
                    Side::Woman => men.clone(),
                    Side::Man => women.clone(),
                };
                list.shuffle(rng);
                list
            })
            .collect();
        Ok(Self::assemble(side, women, men, preferences))
    }

    /// Validating constructor from explicit sides and preference lists.
    pub fn from_data(data: MarketData) -> Result<Self> {
        let MarketData {
            n,
            mut women,
            mut men,
            preferences,
        } = data;
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "agent count must be even and at least 2, got {n}"
            )));
        }
        if women.len() != n / 2 || men.len() != n / 2 {
            return Err(Error::invalid("women and men must each hold n/2 agents"));
        }
        if preferences.len() != n {
            return Err(Error::invalid("one preference list per agent is required"));
        }
        women.sort_unstable();
        men.sort_unstable();
        let mut seen = vec![None; n];
        let labelled = women
            .iter()
            .map(|&a| (a, Side::Woman))
            .chain(men.iter().map(|&a| (a, Side::Man)));
        for (a, s) in labelled {
            if a >= n || seen[a].is_some() {
                return Err(Error::invalid(format!(
                    "agent {a} is out of range or listed twice"
                )));
            }
            seen[a] = Some(s);
        }
        let side: Vec<Side> = seen.into_iter().map(|s| s.expect("partition")).collect();
        for (a, list) in preferences.iter().enumerate() {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            let expected = match side[a] {
                Side::Woman => &men,
                Side::Man => &women,
            };
            if &sorted != expected {
                return Err(Error::invalid(format!(
                    "preference list of agent {a} is not a permutation of the opposite side"
                )));
            }
        }
        Ok(Self::assemble(side, women, men, preferences))
    }

    fn assemble(
        side: Vec<Side>,
        women: Vec<usize>,
        men: Vec<usize>,
        preferences: Vec<Vec<usize>>,
    ) -> Self {
        let n = side.len();
        let mut position = vec![u32::MAX; n * n];
        for (a, list) in preferences.iter().enumerate() {
            for (r, &b) in list.iter().enumerate() {
                position[a * n + b] = r as u32;
            }
        }
        Self {
            side,
            women,
            men,
            preferences,
            position,
        }
    }

    pub fn to_data(&self) -> MarketData {
        MarketData {
            n: self.agent_count(),
            women: self.women.clone(),
            men: self.men.clone(),
            preferences: self.preferences.clone(),
        }
    }

    pub fn agent_count(&self) -> usize {
        self.side.len()
    }

    /// Number of candidates on each side, `n / 2`.
    pub fn side_size(&self) -> usize {
        self.women.len()
    }

    pub fn women(&self) -> &[usize] {
        &self.women
    }

    pub fn men(&self) -> &[usize] {
        &self.men
    }

    pub fn side(&self, agent: usize) -> Option<Side> {
        self.side.get(agent).copied()
    }

    pub fn is_woman(&self, agent: usize) -> bool {
        self.side(agent) == Some(Side::Woman)
    }

    pub fn is_man(&self, agent: usize) -> bool {
        self.side(agent) == Some(Side::Man)
    }

    /// Opposite-side agents from most to least preferred by `agent`.
    pub fn preferences(&self, agent: usize) -> &[usize] {
        &self.preferences[agent]
    }

    /// 1-based rank `agent` gives `other` (1 = favourite). `None` when both
    /// sit on the same side.
    pub fn rank(&self, agent: usize, other: usize) -> Option<usize> {
        match self.position[agent * self.agent_count() + other] {
            u32::MAX => None,
            r => Some(r as usize + 1),
        }
    }

    #[inline]
    pub(crate) fn position(&self, agent: usize, other: usize) -> u32 {
        self.position[agent * self.agent_count() + other]
    }

    /// `true` when `agent` strictly prefers `a` over `b`.
    pub fn prefers(&self, agent: usize, a: usize, b: usize) -> bool {
        self.position(agent, a) < self.position(agent, b)
    }

    /// Score in `[1, 10]` that `agent` gives `other`, linear in rank:
    /// `1 + 9 (h - r) / (h - 1)` over `h = n/2` candidates, and 10 when
    /// there is a single candidate.
    pub fn score(&self, agent: usize, other: usize) -> Option<f64> {
        self.rank(agent, other)
            .map(|r| score_for_rank(r, self.side_size()))
    }
}

/// Linear score map from 1-based rank `r` among `h` candidates.
pub fn score_for_rank(r: usize, h: usize) -> f64 {
    if h <= 1 {
        return MAX_SCORE;
    }
    MIN_SCORE + (MAX_SCORE - MIN_SCORE) * (h - r) as f64 / (h - 1) as f64
}

/// Random market of `n` agents, see [`Market::build`].
pub fn build_market<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Market> {
    Market::build(n, rng)
}

impl Serialize for Market {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_data().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Market {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let data = MarketData::deserialize(d)?;
        Market::from_data(data).map_err(serde::de::Error::custom)
    }
}
