//! Subset dynamic programme for Hamiltonicity.
//!
//! `reach[S]` is the set of vertices `v` such that a path from vertex 0
//! visits exactly `S ∪ {0}` and ends at `v` (S never contains 0). Runs in
//! `O(2^n · n)` word operations.

use super::OracleError;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

pub const HELD_KARP_CAP: usize = 22;

pub fn dp_has_circuit(g: &Graph) -> Result<bool, OracleError> {
    let n = g.n();
    if n > HELD_KARP_CAP {
        return Err(OracleError::CapExceeded {
            n,
            cap: HELD_KARP_CAP,
        });
    }
    if n < 3 {
        return Ok(false);
    }
    // subsets of {1..n-1}, bit k <-> vertex k+1
    let m = n - 1;
    let mut reach = vec![0u32; 1 << m];
    for k in 0..m {
        if g.has_edge(0, k + 1) {
            reach[1 << k] |= 1 << k;
        }
    }
    for s in 1usize..(1 << m) {
        let ends = reach[s];
        if ends == 0 {
            continue;
        }
        for k in 0..m {
            if ends >> k & 1 == 0 {
                continue;
            }
            let nbrs = g.neighbors(k + 1).bits() >> 1;
            let mut free = nbrs as u32 & !(s as u32) & ((1u32 << m) - 1);
            while free != 0 {
                let j = free.trailing_zeros() as usize;
                free &= free - 1;
                reach[s | 1 << j] |= 1 << j;
            }
        }
    }
    let full = (1usize << m) - 1;
    let closing = VertexSet::from_bits(g.neighbors(0).bits() >> 1);
    Ok(reach[full] & closing.bits() as u32 != 0)
}
