use super::Graph;
use std::collections::{BTreeSet, VecDeque};

/// Exact planarity test. The graph is split into biconnected components;
/// each is decided by iterative face embedding (Demoucron-style): keep a
/// planar embedding of a subgraph, list the bridges (fragments) relative
/// to it, and embed a path of a fragment with the fewest admissible
/// faces. A fragment with no admissible face certifies non-planarity.
/// Worst case is quadratic in the size of the graph.
pub fn is_planar(g: &Graph) -> bool {
    biconnected_components(g)
        .into_iter()
        .all(|edges| bicomp_planar(g, &edges))
}

/// Edge sets of the biconnected components (bridges come out as
/// single-edge components).
fn biconnected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();

    // Iterative DFS; frame = (vertex, parent edge, adjacency cursor).
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, pe, ref mut cursor)) = stack.last_mut() {
            if *cursor < adj[v].len() {
                let (w, e) = adj[v][*cursor];
                *cursor += 1;
                if e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (parent, _, _)) = stack.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        // Pop one biconnected component ending at pe.
                        let mut comp = Vec::new();
                        while let Some(&top) = edge_stack.last() {
                            comp.push(top);
                            edge_stack.pop();
                            if top == pe {
                                break;
                            }
                        }
                        if !comp.is_empty() {
                            comps.push(comp);
                        }
                    }
                }
            }
        }
    }
    comps
}

fn bicomp_planar(g: &Graph, edge_ids: &[usize]) -> bool {
    // Local relabelling of the component.
    let verts: Vec<usize> = edge_ids
        .iter()
        .flat_map(|&e| {
            let (a, b) = g.edge(e);
            [a, b]
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let n = verts.len();
    let m = edge_ids.len();
    if m <= 8 {
        return true; // too few edges to hold a Kuratowski subdivision
    }
    if m > 3 * n - 6 {
        return false;
    }
    let index = |v: usize| verts.binary_search(&v).unwrap();
    let edges: Vec<(usize, usize)> = edge_ids
        .iter()
        .map(|&e| {
            let (a, b) = g.edge(e);
            (index(a), index(b))
        })
        .collect();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }

    let cycle = initial_cycle(n, &adj);
    let mut emb_vertex = vec![false; n];
    let mut emb_edge = vec![false; m];
    for i in 0..cycle.len() {
        emb_vertex[cycle[i]] = true;
        let a = cycle[i];
        let b = cycle[(i + 1) % cycle.len()];
        emb_edge[edge_between(&adj, a, b)] = true;
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];
    let mut embedded_count = faces[0].len();

    while embedded_count < m {
        let fragments = fragments(n, m, &adj, &edges, &emb_vertex, &emb_edge);
        debug_assert!(!fragments.is_empty());
        // For each fragment count the faces containing all attachments.
        let mut best: Option<(usize, usize, usize)> = None; // (count, frag, face)
        for (fi, frag) in fragments.iter().enumerate() {
            let mut count = 0;
            let mut first_face = usize::MAX;
            for (k, face) in faces.iter().enumerate() {
                let fset: BTreeSet<usize> = face.iter().copied().collect();
                if frag.attachments.iter().all(|a| fset.contains(a)) {
                    count += 1;
                    if first_face == usize::MAX {
                        first_face = k;
                    }
                }
            }
            if count == 0 {
                return false;
            }
            if best.is_none_or(|(c, _, _)| count < c) {
                best = Some((count, fi, first_face));
            }
        }
        let (_, fi, face_idx) = best.unwrap();
        let frag = &fragments[fi];
        let path = fragment_path(&adj, frag, &emb_vertex);
        for w in path.windows(2) {
            emb_edge[edge_between(&adj, w[0], w[1])] = true;
            embedded_count += 1;
        }
        for &v in &path[1..path.len() - 1] {
            emb_vertex[v] = true;
        }
        split_face(&mut faces, face_idx, &path);
    }
    debug_assert_eq!(n + faces.len(), m + 2, "embedding violates the face count");
    true
}

struct Fragment {
    edges: Vec<usize>,
    attachments: Vec<usize>,
}

fn fragments(
    n: usize,
    m: usize,
    adj: &[Vec<(usize, usize)>],
    edges: &[(usize, usize)],
    emb_vertex: &[bool],
    emb_edge: &[bool],
) -> Vec<Fragment> {
    let mut out = Vec::new();
    // Chords: unembedded edges between embedded vertices.
    for e in 0..m {
        let (a, b) = edges[e];
        if !emb_edge[e] && emb_vertex[a] && emb_vertex[b] {
            out.push(Fragment {
                edges: vec![e],
                attachments: vec![a.min(b), a.max(b)],
            });
        }
    }
    // Components of the unembedded vertices with their attachment edges.
    let mut seen = vec![false; n];
    for s in 0..n {
        if emb_vertex[s] || seen[s] {
            continue;
        }
        let mut comp_edges = BTreeSet::new();
        let mut attach = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                comp_edges.insert(e);
                if emb_vertex[w] {
                    attach.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment {
            edges: comp_edges.into_iter().collect(),
            attachments: attach.into_iter().collect(),
        });
    }
    out
}

/// Path through the fragment between two distinct attachment vertices;
/// interior vertices are unembedded.
fn fragment_path(adj: &[Vec<(usize, usize)>], frag: &Fragment, emb_vertex: &[bool]) -> Vec<usize> {
    let edge_set: BTreeSet<usize> = frag.edges.iter().copied().collect();
    let start = frag.attachments[0];
    let mut parent: Vec<Option<usize>> = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut goal = None;
    'bfs: while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[v] {
            if !edge_set.contains(&e) || seen[w] {
                continue;
            }
            seen[w] = true;
            parent[w] = Some(v);
            if emb_vertex[w] {
                debug_assert!(frag.attachments.contains(&w));
                goal = Some(w);
                break 'bfs; // reached another attachment
            }
            queue.push_back(w);
        }
    }
    let goal = goal.expect("biconnected fragment reaches a second attachment");
    let mut path = vec![goal];
    let mut cur = goal;
    while let Some(p) = parent[cur] {
        path.push(p);
        cur = p;
    }
    path.reverse();
    path
}

fn edge_between(adj: &[Vec<(usize, usize)>], a: usize, b: usize) -> usize {
    adj[a]
        .iter()
        .find(|&&(w, _)| w == b)
        .map(|&(_, e)| e)
        .expect("edge exists")
}

fn initial_cycle(n: usize, adj: &[Vec<(usize, usize)>]) -> Vec<usize> {
    // DFS until the first back edge closes a cycle.
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut state = vec![0u8; n]; // 0 unseen, 1 active
    let mut stack = vec![(0usize, 0usize)];
    state[0] = 1;
    while let Some(&mut (v, ref mut cursor)) = stack.last_mut() {
        if *cursor >= adj[v].len() {
            stack.pop();
            continue;
        }
        let (w, _) = adj[v][*cursor];
        *cursor += 1;
        if Some(w) == parent[v] {
            continue;
        }
        if state[w] == 1 {
            // Cycle w .. v closed by edge (v, w).
            let mut cycle = vec![v];
            let mut cur = v;
            while cur != w {
                cur = parent[cur].expect("ancestor chain");
                cycle.push(cur);
            }
            cycle.reverse();
            return cycle;
        }
        state[w] = 1;
        parent[w] = Some(v);
        stack.push((w, 0));
    }
    unreachable!("biconnected component with >= 9 edges contains a cycle")
}

/// Replaces face `idx` by the two faces obtained by embedding `path`
/// (whose endpoints lie on the face boundary) across it.
fn split_face(faces: &mut Vec<Vec<usize>>, idx: usize, path: &[usize]) {
    let face = faces.swap_remove(idx);
    let a = path[0];
    let b = *path.last().unwrap();
    let i = face.iter().position(|&v| v == a).expect("endpoint on face");
    let j = face.iter().position(|&v| v == b).expect("endpoint on face");
    let (i, j, forward) = if i <= j { (i, j, true) } else { (j, i, false) };
    let interior: Vec<usize> = path[1..path.len() - 1].to_vec();
    let seg_in: Vec<usize> = face[i..=j].to_vec();
    let mut seg_out: Vec<usize> = face[j..].to_vec();
    seg_out.extend_from_slice(&face[..=i]);

    // Orient the path to run against each boundary segment.
    let mut f1 = seg_in;
    let mut int1 = interior.clone();
    if forward {
        int1.reverse();
    }
    f1.extend(int1);

    let mut f2 = seg_out;
    let mut int2 = interior;
    if !forward {
        int2.reverse();
    }
    f2.extend(int2);

    faces.push(dedup_endpoints(f1));
    faces.push(dedup_endpoints(f2));
}

fn dedup_endpoints(mut f: Vec<usize>) -> Vec<usize> {
    if f.len() > 1 && f.first() == f.last() {
        f.pop();
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn classical_cases() {
        assert!(is_planar(&generate("complete", &[4]).unwrap()));
        assert!(!is_planar(&generate("complete", &[5]).unwrap()));
        assert!(!is_planar(&generate("bipartite", &[3, 3]).unwrap()));
        assert!(!is_planar(&generate("complete", &[6]).unwrap()));
        assert!(!is_planar(&generate("complete", &[7]).unwrap()));
        assert!(!is_planar(&generate("bipartite", &[3, 4]).unwrap()));
        assert!(is_planar(&generate("bipartite", &[2, 6]).unwrap()));
    }

    #[test]
    fn near_kuratowski_graphs_are_planar() {
        assert!(is_planar(&generate("fig6", &[]).unwrap()));
        assert!(is_planar(&generate("fig7", &[]).unwrap()));
    }

    #[test]
    fn trees_cycles_and_small_catalog() {
        assert!(is_planar(&generate("path", &[5]).unwrap()));
        assert!(is_planar(&generate("star", &[7]).unwrap()));
        assert!(is_planar(&generate("cycle", &[9]).unwrap()));
        assert!(is_planar(&generate("theta", &[]).unwrap()));
        assert!(is_planar(&generate("wedge-triangles", &[]).unwrap()));
        assert!(is_planar(&generate("doublewedge-squares", &[]).unwrap()));
        assert!(is_planar(&generate("bridge-triangles", &[2]).unwrap()));
    }

    #[test]
    fn invariant_under_subdivision() {
        for (name, params, expect) in [
            ("complete", vec![5], false),
            ("bipartite", vec![3, 3], false),
            ("complete", vec![4], true),
            ("fig6", vec![], true),
        ] {
            let g = generate(name, &params).unwrap();
            assert_eq!(is_planar(&g), expect);
            assert_eq!(is_planar(&g.subdivide(1)), expect, "{name} subdivided");
            assert_eq!(
                is_planar(&g.subdivide(2)),
                expect,
                "{name} subdivided twice"
            );
        }
    }

    #[test]
    fn petersen_graph_is_not_planar() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5)); // outer cycle
            edges.push((i, i + 5)); // spokes
            edges.push((i + 5, (i + 2) % 5 + 5)); // pentagram
        }
        let g = Graph::from_edges(10, edges).unwrap();
        assert!(!is_planar(&g));
    }

    #[test]
    fn k5_plus_pendant_and_disjoint_parts() {
        let k5 = generate("complete", &[5]).unwrap();
        let mut labels: Vec<String> = k5.labels().to_vec();
        labels.push("w".into());
        let mut edges = k5.edges().to_vec();
        edges.push((0, 5));
        let g = Graph::new(labels, edges, None).unwrap();
        assert!(!is_planar(&g));
    }

    #[test]
    fn icosahedron_is_planar() {
        // Pentagonal antiprism with two apexes: 12 vertices, 30 edges,
        // a maximal planar graph (|E| = 3|V| - 6).
        let mut edges = Vec::new();
        for k in 0..5 {
            let up = k + 1;
            let lo = k + 6;
            edges.push((0, up));
            edges.push((up, (k + 1) % 5 + 1));
            edges.push((lo, (k + 1) % 5 + 6));
            edges.push((11, lo));
            edges.push((up, lo));
            edges.push((up, (k + 1) % 5 + 6));
        }
        let g = Graph::from_edges(12, edges).unwrap();
        assert_eq!(g.edge_count(), 30);
        assert!(g.valences().iter().all(|&m| m == 5));
        assert!(is_planar(&g));
        assert!(is_planar(&g.subdivide(1)));
        // One more edge anywhere breaks planarity.
        let denser = g.with_edge_added(1, 3).unwrap();
        assert!(!is_planar(&denser));
    }

    #[test]
    fn dense_planar_graph() {
        // Maximal planar graph on 6 vertices: the octahedron (K_{2,2,2}).
        let edges = vec![
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 2),
            (1, 3),
            (1, 5),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 5),
            (4, 5),
        ];
        let g = Graph::from_edges(6, edges).unwrap();
        assert_eq!(g.edge_count(), 12); // = 3*6 - 6
        assert!(is_planar(&g));
    }
}
