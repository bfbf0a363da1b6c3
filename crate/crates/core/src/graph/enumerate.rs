use super::{Graph, GraphError};

/// Largest `n` [`enumerate_all_graphs`] accepts without an explicit override.
pub const DEFAULT_ENUMERATION_CAP: usize = 6;

/// Every labelled simple graph on `n` vertices, in ascending edge-bitmask
/// order. Bit `k` of the mask selects the `k`-th pair in lexicographic order
/// `(0,1), (0,2), ..., (n-2,n-1)`.
///
/// `cap` guards against accidental blow-up (`2^21` graphs at `n = 7`).
pub fn enumerate_all_graphs(n: usize, cap: usize) -> Result<AllGraphs, GraphError> {
    if n > cap {
        return Err(GraphError::EnumerationCap { n, cap });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    if pairs.len() >= 64 {
        return Err(GraphError::EnumerationCap { n, cap: 11 });
    }
    Ok(AllGraphs {
        n,
        end: 1u64 << pairs.len(),
        pairs,
        next: 0,
    })
}

pub struct AllGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl AllGraphs {
    pub fn total(&self) -> u64 {
        self.end
    }

    /// Graph for a given mask without advancing the iterator.
    pub fn graph_for_mask(&self, mask: u64) -> Graph {
        let edges = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(self.n, edges).expect("enumerated pairs are valid")
    }
}

impl Iterator for AllGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next == self.end {
            return None;
        }
        let g = self.graph_for_mask(self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}
