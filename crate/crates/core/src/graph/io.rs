use super::{Graph, GraphError};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// On-disk graph document. Input may contain self-loops and repeated
/// edges; loading normalizes them away by subdivision.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marked: Option<MarkedDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MarkedDoc {
    pub u: String,
    pub v: String,
}

/// Parses and normalizes a graph document.
///
/// Self-loops are subdivided twice (each becomes a 3-cycle), repeated
/// edges once per extra copy, so the result is always simplicial.
pub fn load_graph(text: &str) -> Result<Graph, GraphError> {
    let doc: GraphDoc =
        serde_json::from_str(text).map_err(|e| GraphError::Malformed(e.to_string()))?;
    graph_from_doc(&doc)
}

pub fn graph_from_doc(doc: &GraphDoc) -> Result<Graph, GraphError> {
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, name) in doc.vertices.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(GraphError::DuplicateLabel(name.clone()));
        }
    }
    let mut labels = doc.vertices.clone();
    let mut used: BTreeSet<String> = labels.iter().cloned().collect();
    let fresh = |base: String, used: &mut BTreeSet<String>, labels: &mut Vec<String>| {
        let mut name = base;
        while used.contains(&name) {
            name.push('\'');
        }
        used.insert(name.clone());
        labels.push(name);
        labels.len() - 1
    };

    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut loop_count: BTreeMap<usize, usize> = BTreeMap::new();
    let mut dup_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for [na, nb] in &doc.edges {
        let a = *index
            .get(na.as_str())
            .ok_or_else(|| GraphError::UnknownVertex(na.clone()))?;
        let b = *index
            .get(nb.as_str())
            .ok_or_else(|| GraphError::UnknownVertex(nb.clone()))?;
        if a == b {
            // Loop -> 3-cycle through two fresh vertices.
            let k = loop_count.entry(a).or_insert(0);
            *k += 1;
            let copy = *k;
            let s1 = fresh(format!("{na}~loop{copy}~1"), &mut used, &mut labels);
            let s2 = fresh(format!("{na}~loop{copy}~2"), &mut used, &mut labels);
            edges.push((a.min(s1), a.max(s1)));
            edges.push((s1.min(s2), s1.max(s2)));
            edges.push((s2.min(a), s2.max(a)));
            continue;
        }
        let key = (a.min(b), a.max(b));
        if seen.insert(key) {
            edges.push(key);
        } else {
            // Repeated edge -> one subdivision point per extra copy.
            let k = dup_count.entry(key).or_insert(1);
            *k += 1;
            let copy = *k;
            let m = fresh(format!("{na}~{nb}~x{copy}"), &mut used, &mut labels);
            edges.push((a.min(m), a.max(m)));
            edges.push((m.min(b), m.max(b)));
        }
    }

    let marked = match &doc.marked {
        None => None,
        Some(m) => {
            let u = *index
                .get(m.u.as_str())
                .ok_or_else(|| GraphError::UnknownVertex(m.u.clone()))?;
            let v = *index
                .get(m.v.as_str())
                .ok_or_else(|| GraphError::UnknownVertex(m.v.clone()))?;
            Some((u, v))
        }
    };

    Graph::new(labels, edges, marked)
}

pub fn emit_document(g: &Graph) -> GraphDoc {
    GraphDoc {
        vertices: g.labels().to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|&(a, b)| [g.label(a).to_string(), g.label(b).to_string()])
            .collect(),
        marked: g.marked().map(|(u, v)| MarkedDoc {
            u: g.label(u).to_string(),
            v: g.label(v).to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn double_edge_subdivides_to_three_cycle() {
        let g = load_graph(r#"{"vertices":["a","b"],"edges":[["a","b"],["a","b"]]}"#).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_circle());
    }

    #[test]
    fn self_loop_subdivides_to_triangle() {
        let g = load_graph(r#"{"vertices":["a"],"edges":[["a","a"]]}"#).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_circle());
    }

    #[test]
    fn simple_input_is_unchanged() {
        let k5 = generate("complete", &[5]).unwrap();
        let text = serde_json::to_string(&emit_document(&k5)).unwrap();
        let back = load_graph(&text).unwrap();
        assert_eq!(back, k5);
    }

    #[test]
    fn errors_on_bad_documents() {
        assert!(matches!(load_graph("{"), Err(GraphError::Malformed(_))));
        assert!(matches!(
            load_graph(r#"{"vertices":["a"],"edges":[["a","zzz"]]}"#),
            Err(GraphError::UnknownVertex(_))
        ));
        assert!(matches!(
            load_graph(r#"{"vertices":["a","a"],"edges":[]}"#),
            Err(GraphError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn marked_round_trip() {
        let f6 = generate("fig6", &[]).unwrap();
        let text = serde_json::to_string(&emit_document(&f6)).unwrap();
        let back = load_graph(&text).unwrap();
        assert_eq!(back.marked(), f6.marked());
        assert_eq!(back, f6);
    }
}
