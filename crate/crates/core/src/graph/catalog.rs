use super::{Graph, GraphError};

/// Names accepted by [`named_graph`].
///
/// * `k3`..`k9`: complete graphs
/// * `p3`, `p4`: paths `0-1-...`
/// * `c5`, `c6`: cycles `0-1-...-0`
/// * `star`: K1,3 centred at 0
/// * `k2_3`: complete bipartite, parts `{0,1}` and `{2,3,4}`
/// * `k3_3`: complete bipartite, parts `{0,1,2}` and `{3,4,5}`
/// * `cube`: 3-cube, vertex `i` adjacent to `i ^ 1`, `i ^ 2`, `i ^ 4`
/// * `petersen`: Kneser graph K(5,2), 2-subsets of `{0..4}` in lexicographic
///   order, adjacent when disjoint
pub const CATALOG: &[&str] = &[
    "k3", "k4", "k5", "k6", "k7", "k8", "k9", "p3", "p4", "c5", "c6", "star", "k2_3", "k3_3",
    "cube", "petersen",
];

pub fn named_graph(name: &str) -> Result<Graph, GraphError> {
    let g = match name {
        "k3" | "k4" | "k5" | "k6" | "k7" | "k8" | "k9" => {
            Graph::complete(name[1..].parse().expect("catalog digit"))
        }
        "p3" => Graph::path(3),
        "p4" => Graph::path(4),
        "c5" => Graph::cycle(5),
        "c6" => Graph::cycle(6),
        "star" => Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]),
        "k2_3" => complete_bipartite(2, 3),
        "k3_3" => complete_bipartite(3, 3),
        "cube" => Graph::from_edges(
            8,
            (0..8usize).flat_map(|i| [1, 2, 4].map(|bit| (i, i ^ bit))),
        ),
        "petersen" => petersen(),
        _ => {
            return Err(GraphError::UnknownName {
                name: name.to_string(),
            })
        }
    };
    Ok(g.expect("catalog constructions are valid"))
}

fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

fn petersen() -> Result<Graph, GraphError> {
    let subsets: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
        .collect();
    let mut edges = Vec::new();
    for (x, &(a, b)) in subsets.iter().enumerate() {
        for (y, &(c, d)) in subsets.iter().enumerate().skip(x + 1) {
            if a != c && a != d && b != c && b != d {
                edges.push((x, y));
            }
        }
    }
    Graph::from_edges(subsets.len(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_catalog_name_builds() {
        for name in CATALOG {
            named_graph(name).unwrap();
        }
    }

    #[test]
    fn k4_has_six_edges() {
        let g = named_graph("k4").unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 6));
    }

    #[test]
    fn petersen_is_cubic_on_ten_vertices() {
        let g = named_graph("petersen").unwrap();
        assert_eq!((g.n(), g.edge_count()), (10, 15));
        assert!((0..10).all(|v| g.degree(v) == 3));
        // 2-subsets {0,1} and {2,3} are vertices 0 and 7
        assert!(g.has_edge(0, 7));
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn c5_is_a_cycle() {
        let g = named_graph("c5").unwrap();
        assert_eq!(g.edge_count(), 5);
        assert!(crate::graph::validate_circuit(&g, &[0, 1, 2, 3, 4]).is_ok());
    }

    #[test]
    fn unknown_name_lists_catalog() {
        let msg = named_graph("k99").unwrap_err().to_string();
        assert!(msg.contains("petersen") && msg.contains("k3"), "{msg}");
    }
}
