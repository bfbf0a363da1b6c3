use super::{Graph, GraphError, Vertex};

/// Parses the edge-list format:
///
/// ```text
/// # optional comments
/// n m
/// u v
/// ...
/// ```
///
/// The header is followed by exactly `m` edge lines. Lines starting with `#`
/// and blank lines are skipped; CRLF endings are accepted. Duplicate edges
/// are merged. Errors carry the 1-based line number.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        message: "missing header line `n m`".into(),
    })?;
    let (n, m) = parse_pair(header_line, header)?;
    let mut g = Graph::empty(n).map_err(|e| at(header_line, e))?;

    let mut seen = 0usize;
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        if seen == m {
            return Err(GraphError::Parse {
                line,
                message: format!("more than the {m} declared edge lines"),
            });
        }
        let (u, v) = parse_pair(line, content)?;
        g.add_edge(u, v).map_err(|e| at(line, e))?;
        seen += 1;
    }
    if seen < m {
        return Err(GraphError::Parse {
            line: last_line + 1,
            message: format!("expected {m} edge lines, found {seen}"),
        });
    }
    Ok(g)
}

fn at(line: usize, err: GraphError) -> GraphError {
    GraphError::Parse {
        line,
        message: err.to_string(),
    }
}

fn parse_pair(line: usize, content: &str) -> Result<(Vertex, Vertex), GraphError> {
    let fields: Vec<&str> = content.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(GraphError::Parse {
            line,
            message: format!("expected two integers, found `{content}`"),
        });
    }
    let num = |s: &str| {
        s.parse::<usize>().map_err(|_| GraphError::Parse {
            line,
            message: format!("`{s}` is not a non-negative integer"),
        })
    };
    Ok((num(fields[0])?, num(fields[1])?))
}
