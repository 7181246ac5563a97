//! Simple graphs and the edge-list text format.
//!
//! Format: one `u v` pair per line, `c`-prefixed comment lines, and an
//! optional `p <n> <m>` header that fixes the vertex count (needed for
//! isolated vertices). Parallel edges and self-loops are rejected.

use sha2::{Digest, Sha256};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::ground::GroundSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > crate::ground::MAX_GROUND {
            return Err(Error::Graph(format!(
                "{n} vertices exceed the supported maximum {}",
                crate::ground::MAX_GROUND
            )));
        }
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Graph(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::Graph(format!(
                    "edge {u}-{v} out of range for {n} vertices"
                )));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if canon.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Graph("duplicate edge".into()));
        }
        Ok(Graph { n, edges: canon })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut m: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('c') {
                continue;
            }
            if let Some(rest) = s.strip_prefix('p') {
                if n.is_some() {
                    return Err(Error::Parse {
                        line,
                        msg: "second header".into(),
                    });
                }
                if !edges.is_empty() {
                    return Err(Error::Parse {
                        line,
                        msg: "header after edges".into(),
                    });
                }
                let fields: Vec<&str> = rest.split_whitespace().collect();
                if fields.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        msg: "expected `p <n> <m>`".into(),
                    });
                }
                n = Some(parse_num(fields[0], line)?);
                m = Some(parse_num(fields[1], line)?);
                continue;
            }
            let fields: Vec<&str> = s.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line,
                    msg: "expected `u v`".into(),
                });
            }
            let u: usize = parse_num(fields[0], line)?;
            let v: usize = parse_num(fields[1], line)?;
            if u == v {
                return Err(Error::Parse {
                    line,
                    msg: format!("self-loop at vertex {u}"),
                });
            }
            if let Some(n) = n {
                if u >= n || v >= n {
                    return Err(Error::Parse {
                        line,
                        msg: format!("vertex out of range 0..{n}"),
                    });
                }
            }
            let e = (u.min(v), u.max(v));
            if edges.contains(&e) {
                return Err(Error::Parse {
                    line,
                    msg: format!("duplicate edge {}-{}", e.0, e.1),
                });
            }
            edges.push(e);
        }
        if let Some(m) = m {
            if m != edges.len() {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("header declares {m} edges, found {}", edges.len()),
                });
            }
        }
        let n = n.unwrap_or_else(|| edges.iter().map(|&(_, v)| v + 1).max().unwrap_or(0));
        Graph::new(n, &edges)
    }

    /// Canonical edge-list text; `parse` of this is the identity.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn sha256_hex(&self) -> String {
        let digest = Sha256::digest(self.to_edge_list().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Per-vertex bitmask of incident edge indices.
    pub fn incidence_masks(&self) -> Vec<u64> {
        let mut inc = vec![0u64; self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            inc[u] |= 1 << i;
            inc[v] |= 1 << i;
        }
        inc
    }

    /// Per-vertex bitmask of adjacent vertices.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency_masks();
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & !seen;
            seen |= new;
            frontier |= new;
        }
        seen.count_ones() as usize == self.n
    }

    /// Every connected component is a star: at most one vertex of degree
    /// two or more per component.
    pub fn is_union_of_stars(&self) -> bool {
        let adj = self.adjacency_masks();
        let mut seen = 0u64;
        for start in 0..self.n {
            if seen & (1 << start) != 0 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = adj[v] & !comp;
                comp |= new;
                frontier |= new;
            }
            seen |= comp;
            let mut heavy = 0;
            let mut rest = comp;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.degree(v) >= 2 {
                    heavy += 1;
                }
            }
            if heavy > 1 {
                return false;
            }
        }
        true
    }

    /// Ground set over the edges, labeled `u-v`.
    pub fn edge_ground(&self, caps: &Caps) -> Result<GroundSet> {
        let labels = self
            .edges
            .iter()
            .map(|&(u, v)| format!("{u}-{v}"))
            .collect();
        GroundSet::new(self.edges.len(), caps)?.with_labels(labels)
    }

    /// Ground set over the vertices, labeled by index.
    pub fn vertex_ground(&self, caps: &Caps) -> Result<GroundSet> {
        let labels = (0..self.n).map(|v| v.to_string()).collect();
        GroundSet::new(self.n, caps)?.with_labels(labels)
    }
}

fn parse_num(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad number `{s}`"),
    })
}

pub fn triangle() -> Graph {
    Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::new(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 1, 0));
    Graph::new(n, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).unwrap()
}
