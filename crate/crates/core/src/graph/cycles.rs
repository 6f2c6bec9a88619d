use super::{Chain1, Graph, GraphError};
use std::collections::{BTreeSet, VecDeque};

/// Breadth-first spanning forest rooted at the lowest-index vertex of
/// each component, neighbors visited in ascending order. parent[v] is
/// (parent vertex, connecting edge).
fn spanning_forest(g: &Graph) -> Vec<Option<(usize, usize)>> {
    let adj = g.adjacency();
    let n = g.vertex_count();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, e));
                    queue.push_back(w);
                }
            }
        }
    }
    parent
}

fn signed_step(g: &Graph, from: usize, to: usize, e: usize) -> i64 {
    let (a, b) = g.edge(e);
    debug_assert!((from, to) == (a, b) || (from, to) == (b, a));
    if (from, to) == (a, b) {
        1
    } else {
        -1
    }
}

/// Walks tree parents from `v` to the root, returning the vertex path.
fn path_to_root(parent: &[Option<(usize, usize)>], v: usize) -> Vec<usize> {
    let mut path = vec![v];
    let mut cur = v;
    while let Some((p, _)) = parent[cur] {
        path.push(p);
        cur = p;
    }
    path
}

/// Chain of the tree path from `from` to `to` (same component).
fn tree_path_chain(g: &Graph, parent: &[Option<(usize, usize)>], from: usize, to: usize) -> Chain1 {
    let up_from = path_to_root(parent, from);
    let up_to = path_to_root(parent, to);
    let in_to: BTreeSet<usize> = up_to.iter().copied().collect();
    let meet = *up_from
        .iter()
        .find(|v| in_to.contains(v))
        .expect("vertices in the same tree");
    let mut chain = Chain1::zero();
    let mut cur = from;
    while cur != meet {
        let (p, e) = parent[cur].unwrap();
        chain.add_term(e, signed_step(g, cur, p, e));
        cur = p;
    }
    let mut down = Vec::new();
    let mut cur = to;
    while cur != meet {
        let (p, e) = parent[cur].unwrap();
        down.push((p, cur, e));
        cur = p;
    }
    for (p, c, e) in down.into_iter().rev() {
        chain.add_term(e, signed_step(g, p, c, e));
    }
    chain
}

/// Fundamental cycles of the breadth-first spanning forest, one per
/// non-tree edge in edge order. Works on disconnected graphs; the count
/// is |E| - |V| + (number of components).
pub fn cycle_space(g: &Graph) -> Vec<Chain1> {
    let parent = spanning_forest(g);
    let tree_edges: BTreeSet<usize> = parent.iter().flatten().map(|&(_, e)| e).collect();
    let mut cycles = Vec::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if tree_edges.contains(&e) {
            continue;
        }
        // Edge a -> b, then back along the tree from b to a.
        let mut z = Chain1::from_pairs([(e, 1)]);
        z = z.plus(&tree_path_chain(g, &parent, b, a));
        debug_assert!(z.is_cycle(g));
        cycles.push(z);
    }
    cycles
}

/// Cycle basis of a connected graph; errors on disconnected input.
pub fn cycle_basis(g: &Graph) -> Result<Vec<Chain1>, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok(cycle_space(g))
}

/// Shortest path from `from` to `to` by breadth-first search with
/// lowest-index tie-breaking, as a 1-chain with boundary `to - from`.
/// `banned` edges are avoided entirely.
pub fn connecting_chain(
    g: &Graph,
    from: usize,
    to: usize,
    banned: &BTreeSet<usize>,
) -> Option<Chain1> {
    let adj = g.adjacency();
    let n = g.vertex_count();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(w, e) in &adj[v] {
            if banned.contains(&e) || seen[w] {
                continue;
            }
            seen[w] = true;
            parent[w] = Some((v, e));
            queue.push_back(w);
        }
    }
    if !seen[to] {
        return None;
    }
    let mut chain = Chain1::zero();
    let mut cur = to;
    while cur != from {
        let (p, e) = parent[cur].expect("path recorded");
        chain.add_term(e, signed_step(g, p, cur, e));
        cur = p;
    }
    Some(chain)
}

/// A second witness path from `from` to `to`, edge-disjoint from `first`
/// when one exists, otherwise any distinct simple path; `None` when the
/// path is unique.
pub fn second_connecting_chain(
    g: &Graph,
    from: usize,
    to: usize,
    first: &Chain1,
) -> Option<Chain1> {
    let banned: BTreeSet<usize> = first.support().collect();
    if let Some(chain) = connecting_chain(g, from, to, &banned) {
        return Some(chain);
    }
    // Depth-first enumeration of simple paths in deterministic order,
    // skipping the known one. Bounded by the number of simple paths,
    // which is small on desk-scale graphs.
    let adj = g.adjacency();
    let mut stack = vec![(from, 0usize)];
    let mut on_path = vec![false; g.vertex_count()];
    on_path[from] = true;
    let mut edges_taken: Vec<usize> = Vec::new();
    let mut emitted = 0usize;
    const CAP: usize = 10_000;
    while let Some((v, next)) = stack.last().copied() {
        emitted += 1;
        if emitted > CAP {
            return None;
        }
        if v == to && !edges_taken.is_empty() {
            let mut chain = Chain1::zero();
            let mut cur = from;
            for &e in &edges_taken {
                let (a, b) = g.edge(e);
                let nxt = if cur == a { b } else { a };
                chain.add_term(e, signed_step(g, cur, nxt, e));
                cur = nxt;
            }
            if &chain != first {
                return Some(chain);
            }
            // Same as the first path: backtrack.
            stack.pop();
            on_path[v] = false;
            edges_taken.pop();
            continue;
        }
        if next < adj[v].len() {
            stack.last_mut().unwrap().1 += 1;
            let (w, e) = adj[v][next];
            if !on_path[w] {
                stack.push((w, 0));
                on_path[w] = true;
                edges_taken.push(e);
            }
        } else {
            stack.pop();
            on_path[v] = false;
            edges_taken.pop();
        }
    }
    None
}
