use crate::graph::{is_planar, Graph};
use std::collections::HashSet;

/// Exhaustive enumeration of small graphs up to isomorphism, specialized
/// to at most 7 vertices so that an edge mask fits in a u32 and the
/// canonical-labelling search stays cheap.
const MAX_N: usize = 7;

fn slot_table(n: usize) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            slots.push((a, b));
        }
    }
    slots
}

fn adjacency_rows(mask: u32, slots: &[(usize, usize)]) -> [u8; MAX_N] {
    let mut adj = [0u8; MAX_N];
    for (i, &(a, b)) in slots.iter().enumerate() {
        if mask & (1 << i) != 0 {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    adj
}

fn mask_is_connected(adj: &[u8; MAX_N], n: usize) -> bool {
    let all = ((1u16 << n) - 1) as u8;
    let mut reached: u8 = 1;
    loop {
        let mut next = reached;
        let mut bits = reached;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[v];
        }
        if next == reached {
            return reached == all;
        }
        reached = next;
    }
}

/// Canonical edge code by individualization and refinement: colors start
/// as degrees, are refined by neighbor color multisets, and ties are
/// broken by branching over the first smallest non-singleton class. The
/// code is the minimum edge mask over all admissible orderings.
fn canonical_code(adj: &[u8; MAX_N], n: usize, slots: &[(usize, usize)]) -> u32 {
    fn refine(adj: &[u8; MAX_N], n: usize, colors: &mut [u8; MAX_N]) {
        loop {
            let mut sigs: Vec<(u64, usize)> = (0..n)
                .map(|v| {
                    let mut sig = (colors[v] as u64) << 56;
                    let mut bits = adj[v];
                    while bits != 0 {
                        let w = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        sig += 1 << (4 * colors[w]);
                    }
                    (sig, v)
                })
                .collect();
            sigs.sort_unstable();
            let mut new_colors = [0u8; MAX_N];
            let mut color = 0u8;
            for i in 0..n {
                if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                    color += 1;
                }
                new_colors[sigs[i].1] = color;
            }
            if new_colors[..n] == colors[..n] {
                return;
            }
            *colors = new_colors;
        }
    }

    fn code_for(
        adj: &[u8; MAX_N],
        n: usize,
        colors: &[u8; MAX_N],
        slots: &[(usize, usize)],
    ) -> u32 {
        // Discrete colors are a permutation: position[v] = colors[v].
        let mut pos = [0usize; MAX_N];
        for v in 0..n {
            pos[v] = colors[v] as usize;
        }
        let mut code = 0u32;
        for &(a, b) in slots.iter() {
            if adj[a] & (1 << b) == 0 {
                continue;
            }
            let (pa, pb) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
            let slot = pa * (2 * n - pa - 1) / 2 + (pb - pa - 1);
            code |= 1 << slot;
        }
        code
    }

    fn search(
        adj: &[u8; MAX_N],
        n: usize,
        colors: [u8; MAX_N],
        slots: &[(usize, usize)],
        best: &mut Option<u32>,
    ) {
        let mut colors = colors;
        refine(adj, n, &mut colors);
        // Find the smallest non-singleton class.
        let mut counts = [0u8; MAX_N];
        for v in 0..n {
            counts[colors[v] as usize] += 1;
        }
        let target = (0..n).map(|c| counts[c]).position(|c| c > 1);
        match target {
            None => {
                let code = code_for(adj, n, &colors, slots);
                if best.is_none_or(|b| code < b) {
                    *best = Some(code);
                }
            }
            Some(class) => {
                for v in 0..n {
                    if colors[v] as usize == class {
                        let mut next = colors;
                        // Individualize v below every peer in its class.
                        for (w, color) in next.iter_mut().enumerate().take(n) {
                            if *color as usize >= class && w != v {
                                *color += 1;
                            }
                        }
                        search(adj, n, next, slots, best);
                    }
                }
            }
        }
    }

    let mut best = None;
    search(adj, n, [0u8; MAX_N], slots, &mut best);
    best.expect("search always produces a code")
}

fn graph_from_code(code: u32, n: usize, slots: &[(usize, usize)]) -> Graph {
    let edges = slots
        .iter()
        .enumerate()
        .filter(|(i, _)| code & (1 << i) != 0)
        .map(|(_, &s)| s)
        .collect();
    Graph::new((0..n).map(|i| format!("v{i}")).collect(), edges, None)
        .expect("decoded graph is simple")
}

/// All connected graphs on exactly `n` vertices up to isomorphism.
pub fn connected_classes(n: usize) -> Vec<Graph> {
    assert!(
        (1..=MAX_N).contains(&n),
        "enumeration supports 1..=7 vertices"
    );
    let slots = slot_table(n);
    let mut seen: HashSet<u32> = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << slots.len()) {
        let adj = adjacency_rows(mask, &slots);
        if !mask_is_connected(&adj, n) {
            continue;
        }
        let code = canonical_code(&adj, n, &slots);
        if seen.insert(code) {
            out.push(graph_from_code(code, n, &slots));
        }
    }
    out
}

/// Connected non-planar isomorphism classes on exactly `n` vertices.
pub fn connected_nonplanar_classes(n: usize) -> Vec<Graph> {
    connected_classes(n)
        .into_iter()
        .filter(|g| !is_planar(g))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_class_counts_match_the_literature() {
        // Known counts of connected graphs up to isomorphism.
        assert_eq!(connected_classes(1).len(), 1);
        assert_eq!(connected_classes(2).len(), 1);
        assert_eq!(connected_classes(3).len(), 2);
        assert_eq!(connected_classes(4).len(), 6);
        assert_eq!(connected_classes(5).len(), 21);
        assert_eq!(connected_classes(6).len(), 112);
    }

    #[test]
    fn nonplanar_class_counts_match_the_literature() {
        // Connected minus connected-planar: 21-20 and 112-99.
        assert_eq!(connected_nonplanar_classes(5).len(), 1);
        assert_eq!(connected_nonplanar_classes(6).len(), 13);
    }

    #[test]
    fn canonical_code_is_isomorphism_invariant() {
        let slots = slot_table(4);
        // A path 0-1-2-3 in two different labellings.
        let mask_of = |edges: &[(usize, usize)]| -> u32 {
            let mut m = 0;
            for &(a, b) in edges {
                let i = slots
                    .iter()
                    .position(|&s| s == (a.min(b), a.max(b)))
                    .unwrap();
                m |= 1 << i;
            }
            m
        };
        let m1 = mask_of(&[(0, 1), (1, 2), (2, 3)]);
        let m2 = mask_of(&[(2, 0), (0, 3), (3, 1)]);
        let c1 = canonical_code(&adjacency_rows(m1, &slots), 4, &slots);
        let c2 = canonical_code(&adjacency_rows(m2, &slots), 4, &slots);
        assert_eq!(c1, c2);
        // The star on the same vertex count is a different class.
        let m3 = mask_of(&[(0, 1), (0, 2), (0, 3)]);
        let c3 = canonical_code(&adjacency_rows(m3, &slots), 4, &slots);
        assert_ne!(c1, c3);
    }
}
