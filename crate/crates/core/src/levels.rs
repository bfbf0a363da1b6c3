use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::vertex_set::VertexSet;

/// Per-position admissible vertices: entry `i` holds every vertex that can
/// occupy position `i` of a start-anchored simple path. Entry 0 is `{start}`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LevelSets(pub Vec<VertexSet>);

impl LevelSets {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn level(&self, i: usize) -> VertexSet {
        self.0.get(i).copied().unwrap_or_default()
    }

    /// Level-by-level `self[i] ⊇ other[i]`; missing levels count as empty.
    pub fn contains_levelwise(&self, other: &LevelSets) -> bool {
        (0..self.len().max(other.len())).all(|i| other.level(i).is_subset(self.level(i)))
    }

    /// Index of the first level `>= 1` whose set is empty.
    pub fn first_empty(&self) -> Option<usize> {
        (1..self.len()).find(|&i| self.0[i].is_empty())
    }
}

impl fmt::Debug for LevelSets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl Serialize for LevelSets {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let lists: Vec<Vec<usize>> = self.0.iter().map(|l| l.to_vec()).collect();
        lists.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LevelSets {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let lists = Vec::<Vec<usize>>::deserialize(d)?;
        if let Some(&v) = lists.iter().flatten().find(|&&v| v >= crate::MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(LevelSets(
            lists.into_iter().map(|l| l.into_iter().collect()).collect(),
        ))
    }
}
