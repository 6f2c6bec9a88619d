use super::{is_planar, Graph};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Multigraph obtained by suppressing valence-2 vertices. Components
/// without any essential vertex are circles and counted separately.
#[derive(Clone, Debug)]
pub struct ReducedGraph {
    /// Original ids of the essential vertices (valence != 2).
    pub vertices: Vec<usize>,
    /// Reduced edges as local indices into `vertices`; a == b is a loop.
    pub edges: Vec<(usize, usize)>,
    /// Original edge ids making up each reduced edge.
    pub chains: Vec<Vec<usize>>,
    pub circle_components: usize,
}

pub fn reduce(g: &Graph) -> ReducedGraph {
    let val = g.valences();
    let essential: Vec<usize> = (0..g.vertex_count()).filter(|&v| val[v] != 2).collect();
    let local: BTreeMap<usize, usize> =
        essential.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj = g.adjacency();
    let mut visited = vec![false; g.edge_count()];
    let mut edges = Vec::new();
    let mut chains = Vec::new();
    for &start in &essential {
        for &(mut other, mut e) in &adj[start] {
            if visited[e] {
                continue;
            }
            let mut chain = Vec::new();
            loop {
                visited[e] = true;
                chain.push(e);
                if val[other] != 2 {
                    break;
                }
                let (next_other, next_e) = adj[other]
                    .iter()
                    .copied()
                    .find(|&(_, e2)| e2 != e)
                    .expect("valence-2 vertex has a second edge");
                other = next_other;
                e = next_e;
            }
            edges.push((local[&start], local[&other]));
            chains.push(chain);
        }
    }
    // Remaining unvisited edges lie on circle components.
    let mut circles = 0;
    for e0 in 0..g.edge_count() {
        if visited[e0] {
            continue;
        }
        circles += 1;
        let (mut cur, _) = g.edge(e0);
        let mut e = e0;
        loop {
            visited[e] = true;
            let (a, b) = g.edge(e);
            let other = if cur == a { b } else { a };
            match adj[other]
                .iter()
                .copied()
                .find(|&(_, e2)| e2 != e && !visited[e2])
            {
                Some((_, e2)) => {
                    cur = other;
                    e = e2;
                }
                None => break,
            }
        }
    }
    ReducedGraph {
        vertices: essential,
        edges,
        chains,
        circle_components: circles,
    }
}

impl ReducedGraph {
    /// True when the graph is homeomorphic to a complex with a double
    /// edge: two reduced edges between the same endpoints, or a reduced
    /// loop (subdividing a loop once yields a parallel pair).
    pub fn has_double_edge(&self) -> bool {
        let mut seen = BTreeSet::new();
        for &(a, b) in &self.edges {
            if a == b {
                return true;
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return true;
            }
        }
        false
    }

    /// Component count after deleting the given essential vertices:
    /// kept vertices connect through chains avoiding the deleted ones,
    /// and a chain with both endpoints deleted leaves its interior
    /// behind as a piece of its own when it has any (loops always do).
    fn component_count(&self, removed: &BTreeSet<usize>) -> usize {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        let mut severed = 0usize;
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if removed.contains(&a) && removed.contains(&b) {
                if self.chains[i].len() >= 2 {
                    severed += 1;
                }
            } else if a != b && !removed.contains(&a) && !removed.contains(&b) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut seen = vec![false; n];
        let mut comps = severed;
        for s in 0..n {
            if removed.contains(&s) || seen[s] {
                continue;
            }
            comps += 1;
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        comps
    }

    /// Essential vertices whose removal increases the component count.
    pub fn articulation_vertices(&self) -> Vec<usize> {
        let base = self.component_count(&BTreeSet::new());
        (0..self.vertices.len())
            .filter(|&w| self.component_count(&BTreeSet::from([w])) > base)
            .map(|w| self.vertices[w])
            .collect()
    }

    /// Unordered pairs of essential vertices whose removal increases the
    /// component count.
    pub fn two_cuts(&self) -> Vec<(usize, usize)> {
        let base = self.component_count(&BTreeSet::new());
        let n = self.vertices.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                if self.component_count(&BTreeSet::from([x, y])) > base {
                    out.push((self.vertices[x], self.vertices[y]));
                }
            }
        }
        out
    }
}

/// A decomposition of `carrier` into two edge-disjoint connected parts,
/// neither homeomorphic to an arc, meeting exactly in `shared`.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionWitness {
    #[serde(skip)]
    pub carrier: Graph,
    pub shared_labels: Vec<String>,
    pub part_edges: [Vec<usize>; 2],
}

impl DecompositionWitness {
    pub fn validate(&self) -> Result<(), String> {
        let g = &self.carrier;
        let mut all: Vec<usize> = self.part_edges[0]
            .iter()
            .chain(&self.part_edges[1])
            .copied()
            .collect();
        all.sort_unstable();
        if all != (0..g.edge_count()).collect::<Vec<_>>() {
            return Err("parts do not partition the edge set".into());
        }
        let verts = |edges: &[usize]| -> BTreeSet<usize> {
            edges
                .iter()
                .flat_map(|&e| {
                    let (a, b) = g.edge(e);
                    [a, b]
                })
                .collect()
        };
        let v1 = verts(&self.part_edges[0]);
        let v2 = verts(&self.part_edges[1]);
        let inter: BTreeSet<String> = v1
            .intersection(&v2)
            .map(|&v| g.label(v).to_string())
            .collect();
        let shared: BTreeSet<String> = self.shared_labels.iter().cloned().collect();
        if inter != shared {
            return Err(format!(
                "intersection {inter:?} differs from shared {shared:?}"
            ));
        }
        for part in &self.part_edges {
            if part.is_empty() {
                return Err("empty part".into());
            }
            let sub = subgraph(g, part);
            if !sub.is_connected() {
                return Err("part is not connected".into());
            }
            if sub.is_arc() {
                return Err("part is homeomorphic to an arc".into());
            }
        }
        Ok(())
    }
}

fn subgraph(g: &Graph, edges: &[usize]) -> Graph {
    let verts: Vec<usize> = edges
        .iter()
        .flat_map(|&e| {
            let (a, b) = g.edge(e);
            [a, b]
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let local: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    Graph::new(
        verts.iter().map(|&v| g.label(v).to_string()).collect(),
        edges
            .iter()
            .map(|&e| {
                let (a, b) = g.edge(e);
                (local[&a], local[&b])
            })
            .collect(),
        None,
    )
    .expect("subgraph is valid")
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub component_count: usize,
    pub articulation_vertices: Vec<String>,
    pub two_cuts: Vec<(String, String)>,
    pub wedge: Option<DecompositionWitness>,
    pub double_wedge: Option<DecompositionWitness>,
    pub planar: bool,
}

/// Structural detectors. Cut detection happens on the topological
/// reduction; wedge and double-wedge witnesses are searched on the
/// once-subdivided graph so that cut points interior to edges are seen
/// (the notions are homeomorphism-invariant).
pub fn structure(g: &Graph) -> StructureReport {
    let red = reduce(g);
    let arts = red
        .articulation_vertices()
        .into_iter()
        .map(|v| g.label(v).to_string())
        .collect();
    let cuts = red
        .two_cuts()
        .into_iter()
        .map(|(a, b)| (g.label(a).to_string(), g.label(b).to_string()))
        .collect();
    let carrier = g.subdivide(1);
    StructureReport {
        component_count: g.components().len(),
        articulation_vertices: arts,
        two_cuts: cuts,
        wedge: find_wedge(&carrier),
        double_wedge: find_double_wedge(&carrier),
        planar: is_planar(g),
    }
}

struct Piece {
    edges: Vec<usize>,
    inner: Vec<usize>,
    deg_x: usize,
    deg_y: usize,
    inner_max_ok: bool,
    is_path: bool,
}

/// Pieces of `g` relative to the cut set: components of g - cut together
/// with their attachment edges, plus any direct edge inside the cut set.
fn pieces_at(g: &Graph, cut: &[usize]) -> Vec<Piece> {
    let cut_set: BTreeSet<usize> = cut.iter().copied().collect();
    let adj = g.adjacency();
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut pieces = Vec::new();
    for s in 0..n {
        if seen[s] || cut_set.contains(&s) {
            continue;
        }
        let mut comp = Vec::new();
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &(w, _) in &adj[v] {
                if !cut_set.contains(&w) && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        let comp_set: BTreeSet<usize> = comp.iter().copied().collect();
        let edges: Vec<usize> = (0..g.edge_count())
            .filter(|&e| {
                let (a, b) = g.edge(e);
                comp_set.contains(&a) || comp_set.contains(&b)
            })
            .filter(|&e| {
                let (a, b) = g.edge(e);
                !(cut_set.contains(&a) && cut_set.contains(&b))
            })
            .collect();
        pieces.push(make_piece(g, cut, edges, comp));
    }
    // Direct edges between cut vertices are pieces of their own.
    for e in 0..g.edge_count() {
        let (a, b) = g.edge(e);
        if cut_set.contains(&a) && cut_set.contains(&b) {
            pieces.push(make_piece(g, cut, vec![e], vec![]));
        }
    }
    pieces
}

fn make_piece(g: &Graph, cut: &[usize], edges: Vec<usize>, inner: Vec<usize>) -> Piece {
    let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
    for &e in &edges {
        let (a, b) = g.edge(e);
        *deg.entry(a).or_insert(0) += 1;
        *deg.entry(b).or_insert(0) += 1;
    }
    let deg_at = |v: usize| deg.get(&v).copied().unwrap_or(0);
    let deg_x = cut.first().map_or(0, |&x| deg_at(x));
    let deg_y = cut.get(1).map_or(0, |&y| deg_at(y));
    let inner_max_ok = inner.iter().all(|v| deg_at(*v) <= 2);
    // A piece is a path exactly when it is acyclic with max degree 2.
    let vcount = deg.len();
    let is_path = edges.len() + 1 == vcount && deg.values().all(|&d| d <= 2);
    Piece {
        edges,
        inner,
        deg_x,
        deg_y,
        inner_max_ok,
        is_path,
    }
}

fn witness(
    g: &Graph,
    shared: &[usize],
    part1: Vec<usize>,
    part2: Vec<usize>,
) -> DecompositionWitness {
    DecompositionWitness {
        carrier: g.clone(),
        shared_labels: shared.iter().map(|&v| g.label(v).to_string()).collect(),
        part_edges: [part1, part2],
    }
}

/// Wedge decomposition: split the pieces at one vertex into two groups,
/// each connected (automatic) and not an arc. A group is an arc exactly
/// when it consists of one or two path pieces.
fn find_wedge(g: &Graph) -> Option<DecompositionWitness> {
    for w in 0..g.vertex_count() {
        let pieces = pieces_at(g, &[w]);
        if pieces.len() < 2 || pieces.iter().any(|p| p.deg_x == 0) {
            continue; // a piece avoiding the cut point disconnects every split
        }
        let (paths, others): (Vec<usize>, Vec<usize>) =
            (0..pieces.len()).partition(|&i| pieces[i].is_path);
        let collect = |idx: &[usize]| -> Vec<usize> {
            idx.iter().flat_map(|&i| pieces[i].edges.clone()).collect()
        };
        let (part1, part2): (Vec<usize>, Vec<usize>) = if others.len() >= 2 {
            let rest: Vec<usize> = others[1..].iter().chain(&paths).copied().collect();
            (collect(&others[..1]), collect(&rest))
        } else if others.len() == 1 && paths.len() >= 3 {
            (collect(&others), collect(&paths))
        } else if others.is_empty() && paths.len() >= 6 {
            (collect(&paths[..3]), collect(&paths[3..]))
        } else {
            continue;
        };
        let wit = witness(g, &[w], part1, part2);
        debug_assert_eq!(wit.validate(), Ok(()));
        return Some(wit);
    }
    None
}

/// Double-wedge decomposition at a vertex pair: each group needs a piece
/// touching both cut vertices (connectivity) and must not form an arc.
fn find_double_wedge(g: &Graph) -> Option<DecompositionWitness> {
    let n = g.vertex_count();
    for x in 0..n {
        for y in x + 1..n {
            let cut = [x, y];
            let pieces = pieces_at(g, &cut);
            let p = pieces.len();
            if p < 2 || pieces.iter().any(|q| q.deg_x == 0 && q.deg_y == 0) {
                continue;
            }
            let both: Vec<usize> = (0..p)
                .filter(|&i| pieces[i].deg_x > 0 && pieces[i].deg_y > 0)
                .collect();
            if both.len() < 2 {
                continue;
            }
            assert!(p <= 22, "piece explosion at a cut pair; graph too wild");
            let group_ok = |members: &[usize]| -> bool {
                if !members.iter().any(|i| both.contains(i)) {
                    return false; // disconnected: nothing joins x to y
                }
                let degx: usize = members.iter().map(|&i| pieces[i].deg_x).sum();
                let degy: usize = members.iter().map(|&i| pieces[i].deg_y).sum();
                let edges: usize = members.iter().map(|&i| pieces[i].edges.len()).sum();
                let inner: usize = members.iter().map(|&i| pieces[i].inner.len()).sum();
                let shape_ok = members.iter().all(|&i| pieces[i].inner_max_ok);
                let is_arc = shape_ok && degx <= 2 && degy <= 2 && edges == inner + 1;
                !is_arc
            };
            for mask in 0u32..(1 << (p - 1)) {
                let mut g1 = vec![0usize];
                let mut g2 = Vec::new();
                for i in 1..p {
                    if mask & (1 << (i - 1)) != 0 {
                        g1.push(i);
                    } else {
                        g2.push(i);
                    }
                }
                if g2.is_empty() || !group_ok(&g1) || !group_ok(&g2) {
                    continue;
                }
                let collect = |idx: &[usize]| -> Vec<usize> {
                    idx.iter().flat_map(|&i| pieces[i].edges.clone()).collect()
                };
                let wit = witness(g, &cut, collect(&g1), collect(&g2));
                debug_assert_eq!(wit.validate(), Ok(()));
                return Some(wit);
            }
        }
    }
    None
}
