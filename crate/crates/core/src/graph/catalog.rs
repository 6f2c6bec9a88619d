use super::{Graph, GraphError};

/// Builds a named catalog graph.
///
/// Names: `complete n`, `bipartite p q`, `cycle n`, `path k`, `star k`,
/// `theta`, `fig3`, `fig6`, `fig7`, `wedge-triangles`,
/// `doublewedge-squares`, `bridge-triangles [k]`.
///
/// `fig3` is a triangle p,q,r with pendant edges v-p and q-u; `fig6` is
/// the complete graph on five vertices minus one edge; `fig7` is the
/// complete bipartite 3x3 graph minus one edge. All three mark the
/// distinguished pair (u, v).
pub fn generate(name: &str, params: &[usize]) -> Result<Graph, GraphError> {
    match name {
        "complete" => {
            let n = one_param(name, params)?;
            if n < 1 {
                return Err(GraphError::InvalidParams("complete", "need n >= 1".into()));
            }
            let labels = (0..n).map(|i| format!("v{i}")).collect();
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    edges.push((a, b));
                }
            }
            Graph::new(labels, edges, None)
        }
        "bipartite" => {
            let (p, q) = two_params(name, params)?;
            if p < 1 || q < 1 {
                return Err(GraphError::InvalidParams(
                    "bipartite",
                    "need p, q >= 1".into(),
                ));
            }
            let mut labels: Vec<String> = (0..p).map(|i| format!("a{i}")).collect();
            labels.extend((0..q).map(|i| format!("b{i}")));
            let mut edges = Vec::new();
            for a in 0..p {
                for b in 0..q {
                    edges.push((a, p + b));
                }
            }
            Graph::new(labels, edges, None)
        }
        "cycle" => {
            let n = one_param(name, params)?;
            if n < 3 {
                return Err(GraphError::InvalidParams("cycle", "need n >= 3".into()));
            }
            let labels = (0..n).map(|i| format!("v{i}")).collect();
            let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::new(labels, edges, None)
        }
        "path" => {
            let k = one_param(name, params)?;
            if k < 1 {
                return Err(GraphError::InvalidParams(
                    "path",
                    "need k >= 1 edges".into(),
                ));
            }
            let labels = (0..=k).map(|i| format!("v{i}")).collect();
            let edges = (0..k).map(|i| (i, i + 1)).collect();
            Graph::new(labels, edges, None)
        }
        "star" => {
            let k = one_param(name, params)?;
            if k < 1 {
                return Err(GraphError::InvalidParams(
                    "star",
                    "need k >= 1 leaves".into(),
                ));
            }
            let mut labels = vec!["c".to_string()];
            labels.extend((0..k).map(|i| format!("l{i}")));
            let edges = (0..k).map(|i| (0, i + 1)).collect();
            Graph::new(labels, edges, None)
        }
        "theta" => {
            no_params(name, params)?;
            let labels = str_labels(&["a", "b", "x", "y"]);
            let edges = vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)];
            Graph::new(labels, edges, None)
        }
        "fig3" => {
            no_params(name, params)?;
            let labels = str_labels(&["p", "q", "r", "u", "v"]);
            // Triangle p,q,r plus pendants v-p and q-u.
            let edges = vec![(0, 1), (1, 2), (0, 2), (0, 4), (1, 3)];
            Graph::new(labels, edges, Some((3, 4)))
        }
        "fig6" => {
            no_params(name, params)?;
            let labels = str_labels(&["a", "b", "c", "u", "v"]);
            let mut edges = Vec::new();
            for a in 0..5 {
                for b in a + 1..5 {
                    if (a, b) != (3, 4) {
                        edges.push((a, b));
                    }
                }
            }
            Graph::new(labels, edges, Some((3, 4)))
        }
        "fig7" => {
            no_params(name, params)?;
            let labels = str_labels(&["u", "p1", "p2", "v", "q1", "q2"]);
            let mut edges = Vec::new();
            for a in 0..3 {
                for b in 3..6 {
                    if (a, b) != (0, 3) {
                        edges.push((a, b));
                    }
                }
            }
            Graph::new(labels, edges, Some((0, 3)))
        }
        "wedge-triangles" => {
            no_params(name, params)?;
            let labels = str_labels(&["c", "a1", "a2", "b1", "b2"]);
            let edges = vec![(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)];
            Graph::new(labels, edges, None)
        }
        "doublewedge-squares" => {
            no_params(name, params)?;
            // Two squares a-b-c-d and a-e-c-f sharing the opposite pair {a, c}.
            let labels = str_labels(&["a", "b", "c", "d", "e", "f"]);
            let edges = vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (0, 3),
                (0, 4),
                (2, 4),
                (2, 5),
                (0, 5),
            ];
            Graph::new(labels, edges, None)
        }
        "bridge-triangles" => {
            let k = match params {
                [] => 1,
                [k] => *k,
                _ => {
                    return Err(GraphError::InvalidParams(
                        "bridge-triangles",
                        "at most one parameter (bridge length)".into(),
                    ))
                }
            };
            if k < 1 {
                return Err(GraphError::InvalidParams(
                    "bridge-triangles",
                    "bridge length must be >= 1".into(),
                ));
            }
            let mut labels = str_labels(&["a0", "a1", "a2", "b0", "b1", "b2"]);
            let mut edges = vec![(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)];
            let mut prev = 0; // bridge runs from a0 to b0
            for i in 1..k {
                labels.push(format!("m{i}"));
                let mid = labels.len() - 1;
                edges.push((prev.min(mid), prev.max(mid)));
                prev = mid;
            }
            edges.push((prev.min(3), prev.max(3)));
            Graph::new(labels, edges, None)
        }
        other => Err(GraphError::UnknownCatalog(other.to_string())),
    }
}

fn str_labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn one_param(name: &str, params: &[usize]) -> Result<usize, GraphError> {
    match params {
        [n] => Ok(*n),
        _ => Err(GraphError::Malformed(format!(
            "{name} takes exactly one parameter"
        ))),
    }
}

fn two_params(name: &str, params: &[usize]) -> Result<(usize, usize), GraphError> {
    match params {
        [p, q] => Ok((*p, *q)),
        _ => Err(GraphError::Malformed(format!(
            "{name} takes exactly two parameters"
        ))),
    }
}

fn no_params(name: &str, params: &[usize]) -> Result<(), GraphError> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(GraphError::Malformed(format!("{name} takes no parameters")))
    }
}
