//! Graph ingestion: the JSON schema and the graph6 byte format.
//!
//! JSON: `{"vertices":[{"id":0,"w":4,"d":1},...],"edges":[[0,1],...]}` with
//! `w` defaulting to 1 and `d` to 0. graph6 covers simple unweighted graphs
//! in the standard byte encoding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MarkedGraph, VertexId};
use crate::mark::Mark;

#[derive(Serialize, Deserialize)]
struct JsonVertex {
    id: VertexId,
    #[serde(default = "one")]
    w: u32,
    #[serde(default)]
    d: u32,
}

fn one() -> u32 {
    1
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    vertices: Vec<JsonVertex>,
    #[serde(default)]
    edges: Vec<(VertexId, VertexId)>,
}

pub fn graph_from_json(text: &str) -> Result<MarkedGraph> {
    let parsed: JsonGraph = serde_json::from_str(text)?;
    let mut g = MarkedGraph::new();
    for v in &parsed.vertices {
        g.add_vertex(v.id, Mark::new(v.w, v.d)?)?;
    }
    for &(u, v) in &parsed.edges {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

pub fn graph_to_json(g: &MarkedGraph) -> String {
    let out = JsonGraph {
        vertices: g
            .vertices()
            .map(|(id, m)| JsonVertex {
                id,
                w: m.w(),
                d: m.d(),
            })
            .collect(),
        edges: g.edges().iter().map(|e| e.ends()).collect(),
    };
    serde_json::to_string(&out).expect("serializable")
}

/// Parse a standard graph6 line (optionally with the `>>graph6<<` header)
/// into a simple unweighted graph.
pub fn graph_from_graph6(line: &str) -> Result<MarkedGraph> {
    let line = line.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 input".into()));
    }
    let (n, rest) = if bytes[0] == 126 {
        if bytes.len() >= 4 && bytes[1] != 126 {
            let mut n: u64 = 0;
            for &b in &bytes[1..4] {
                if !(63..=126).contains(&b) {
                    return Err(Error::Parse("graph6 byte out of range".into()));
                }
                n = n << 6 | (b - 63) as u64;
            }
            (n as usize, &bytes[4..])
        } else {
            return Err(Error::Parse("unsupported graph6 size encoding".into()));
        }
    } else {
        if !(63..=126).contains(&bytes[0]) {
            return Err(Error::Parse("graph6 byte out of range".into()));
        }
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    if n > 512 {
        return Err(Error::BudgetExceeded {
            what: "graph6 vertices",
            actual: n,
            limit: 512,
        });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if rest.len() < need {
        return Err(Error::Parse("graph6 input too short".into()));
    }
    let mut bits = Vec::with_capacity(need * 6);
    for &b in &rest[..need] {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse("graph6 byte out of range".into()));
        }
        let v = b - 63;
        for k in (0..6).rev() {
            bits.push(v >> k & 1 == 1);
        }
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[idx] {
                edges.push((i as VertexId, j as VertexId));
            }
            idx += 1;
        }
    }
    Ok(MarkedGraph::unweighted(n as u32, edges))
}

/// Encode a simple unweighted graph as graph6.
pub fn graph_to_graph6(g: &MarkedGraph) -> Result<String> {
    if !g.is_simple() || !g.is_unweighted() {
        return Err(Error::NotSimple);
    }
    let ids: Vec<VertexId> = g.vertex_ids().collect();
    let n = ids.len();
    if n > 62 {
        return Err(Error::BudgetExceeded {
            what: "graph6 vertices",
            actual: n,
            limit: 62,
        });
    }
    let index = |v: VertexId| ids.iter().position(|&x| x == v).unwrap();
    let mut adj = vec![false; n * n];
    for e in g.edges() {
        let (a, b) = (index(e.u), index(e.v));
        adj[a * n + b] = true;
        adj[b * n + a] = true;
    }
    let mut out = vec![(n as u8) + 63];
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | adj[i * n + j] as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("printable range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mark::mk;

    #[test]
    fn json_roundtrip_with_defaults() {
        let g = graph_from_json(
            r#"{"vertices":[{"id":0,"w":4,"d":1},{"id":1},{"id":2,"w":2}],
                "edges":[[0,1],[1,2],[2,0]]}"#,
        )
        .unwrap();
        assert_eq!(g.mark(0).unwrap(), mk(4, 1));
        assert_eq!(g.mark(1).unwrap(), mk(1, 0));
        assert_eq!(g.mark(2).unwrap(), mk(2, 0));
        let text = graph_to_json(&g);
        let back = graph_from_json(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn json_rejects_bad_marks_and_edges() {
        assert!(graph_from_json(r#"{"vertices":[{"id":0,"w":1,"d":1}],"edges":[]}"#).is_err());
        assert!(graph_from_json(r#"{"vertices":[{"id":0}],"edges":[[0,1]]}"#).is_err());
        assert!(
            graph_from_json(r#"{"vertices":[{"id":0},{"id":0}],"edges":[]}"#).is_err(),
            "duplicate ids"
        );
    }

    #[test]
    fn graph6_known_encodings() {
        // "A_" is K2, "Bw" is K3, "C~" is K4, "Cr" is the 4-cycle.
        let k2 = graph_from_graph6("A_").unwrap();
        assert_eq!((k2.n(), k2.num_edges()), (2, 1));
        let k3 = graph_from_graph6("Bw").unwrap();
        assert_eq!((k3.n(), k3.num_edges()), (3, 3));
        let k4 = graph_from_graph6("C~").unwrap();
        assert_eq!((k4.n(), k4.num_edges()), (4, 6));
        let c4 = graph_from_graph6("Cr").unwrap();
        assert_eq!((c4.n(), c4.num_edges()), (4, 4));
        assert!((0..4).all(|v| c4.degree(v) == 2));
    }

    #[test]
    fn graph6_roundtrip() {
        let g = MarkedGraph::unweighted(5, vec![(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]);
        let text = graph_to_graph6(&g).unwrap();
        let back = graph_from_graph6(&text).unwrap();
        assert_eq!(back, g);
        assert!(graph_from_graph6(">>graph6<<Bw").is_ok());
        assert!(graph_from_graph6("").is_err());
    }
}
