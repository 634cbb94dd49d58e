use crate::topology::DistanceMatrix;

/// Who recognises whom: agents at hop distance `<= dep` know each other.
///
/// [`SocialCircle::complete`] stands for full information, where every agent
/// knows every other agent regardless of any network.
#[derive(Debug, Clone, Copy)]
pub struct SocialCircle<'a> {
    distances: Option<&'a DistanceMatrix>,
    dep: u32,
}

impl<'a> SocialCircle<'a> {
    pub fn new(distances: &'a DistanceMatrix, dep: u32) -> Self {
        Self {
            distances: Some(distances),
            dep,
        }
    }

    pub fn complete() -> Self {
        Self {
            distances: None,
            dep: u32::MAX,
        }
    }

    pub fn dep(&self) -> u32 {
        self.dep
    }

    pub fn distances(&self) -> Option<&'a DistanceMatrix> {
        self.distances
    }

    /// Hop distance between two agents, `None` under full information or
    /// when no path exists.
    pub fn distance(&self, a: usize, b: usize) -> Option<u32> {
        self.distances.and_then(|dm| dm.distance(a, b))
    }

    /// Membership indicator: reachable and within `dep` hops.
    #[inline]
    pub fn in_circle(&self, a: usize, b: usize) -> bool {
        match self.distances {
            None => true,
            Some(dm) => {
                let d = dm.get(a, b);
                d != DistanceMatrix::UNREACHABLE && d <= self.dep
            }
        }
    }
}
