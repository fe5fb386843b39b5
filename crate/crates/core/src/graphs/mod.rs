//! Simple graphs on vertices `1..=n`, their adjacency and Laplacian
//! matrices, BFS distances, seeded random sampling and the built-in
//! fixtures.

mod random;

pub use random::{sample_er, sample_matrix, sample_symmetric_matrix, EntryDistribution, SeededStream};

use crate::linalg::IntMatrix;
use crate::{Error, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

/// Edges are stored 1-indexed; undirected edges as `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    directed: bool,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    directed: bool,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>, directed: bool) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidInput(format!("edge {u}-{v} outside 1..={n}")));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at {u}")));
            }
            let e = if directed { (u, v) } else { (u.min(v), u.max(v)) };
            if !set.insert(e) {
                return Err(Error::InvalidInput(format!("duplicate edge {u}-{v}")));
            }
        }
        Ok(Graph { n, edges: set, directed })
    }

    pub fn empty(n: usize) -> Graph {
        Graph { n, edges: BTreeSet::new(), directed: false }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if self.directed {
            self.edges.contains(&(u, v))
        } else {
            self.edges.contains(&(u.min(v), u.max(v)))
        }
    }

    /// Out-neighbours of `v` (all neighbours when undirected), 1-indexed.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v && !self.directed {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (1..=self.n).map(|v| self.neighbours(v).len()).collect()
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        d.first().copied().filter(|&k| d.iter().all(|&x| x == k))
    }

    /// `A[v][w] = 1` iff `v → w` (or `{v, w}`) is an edge.
    pub fn adjacency(&self) -> IntMatrix {
        let mut a = IntMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a.set(u - 1, v - 1, BigInt::from(1));
            if !self.directed {
                a.set(v - 1, u - 1, BigInt::from(1));
            }
        }
        a
    }

    /// `L = D - A`; undirected graphs only.
    pub fn laplacian(&self) -> Result<IntMatrix> {
        if self.directed {
            return Err(Error::InvalidInput("the Laplacian needs an undirected graph".into()));
        }
        let mut l = self.adjacency();
        for i in 0..self.n {
            for j in 0..self.n {
                let a = l.get(i, j).clone();
                l.set(i, j, -a);
            }
        }
        for (i, d) in self.degrees().into_iter().enumerate() {
            l.set(i, i, BigInt::from(d));
        }
        Ok(l)
    }

    /// Shortest-path length from `v` to `w` along edge directions; `None`
    /// when unreachable.
    pub fn distance(&self, v: usize, w: usize) -> Option<usize> {
        self.distances_from(v)[w - 1]
    }

    /// BFS distances from `v` to every vertex (index `w - 1`).
    pub fn distances_from(&self, v: usize) -> Vec<Option<usize>> {
        let adj: Vec<Vec<usize>> = (1..=self.n).map(|u| self.neighbours(u)).collect();
        let mut dist = vec![None; self.n];
        dist[v - 1] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u - 1].expect("queued vertices have a distance");
            for &x in &adj[u - 1] {
                if dist[x - 1].is_none() {
                    dist[x - 1] = Some(du + 1);
                    queue.push_back(x);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(1).iter().all(Option::is_some)
    }

    /// Edge-list text: a line `n` (optionally `n directed`), then one `u v`
    /// pair per line. `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let mut head = header.split_whitespace();
        let n: usize = head
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad vertex count line {header:?}")))?;
        let directed = match head.next() {
            None => false,
            Some("directed") => true,
            Some(t) => return Err(Error::Parse(format!("unexpected header token {t:?}"))),
        };
        let mut edges = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parse = |t: &str| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}")));
            match parts.as_slice() {
                [u, v] => edges.push((parse(u)?, parse(v)?)),
                _ => return Err(Error::Parse(format!("expected `u v`, found {line:?}"))),
            }
        }
        Graph::new(n, edges, directed).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}{}\n", self.n, if self.directed { " directed" } else { "" });
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// `{"n": int, "edges": [[u, v], ...]}` with an optional `"directed"`.
    pub fn parse_json(text: &str) -> Result<Graph> {
        let g: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Graph::new(g.n, g.edges.into_iter().map(|[u, v]| (u, v)), g.directed).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let g = GraphJson { n: self.n, edges: self.edges().map(|(u, v)| [u, v]).collect(), directed: self.directed };
        serde_json::to_string(&g).expect("graph serializes")
    }

    /// Accepts either the JSON or the edge-list format.
    pub fn parse(text: &str) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            Graph::parse_json(text)
        } else {
            Graph::parse_edge_list(text)
        }
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i, i + 1)), false).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Graph::new(n, (1..=n).map(|i| (i, i % n + 1)), false).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::new(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))), false).expect("complete edges are valid")
    }

    /// Directed `p`-cycle `i → i+1 (mod p)`: its adjacency is the cyclic
    /// shift, whose eigenvector matrix is the Fourier matrix.
    pub fn shift(p: usize) -> Graph {
        assert!(p >= 2, "shift needs p >= 2");
        Graph::new(p, (1..=p).map(|i| (i, i % p + 1)), true).expect("shift edges are valid")
    }
}

/// Names accepted by [`fixture`]; parameterized ones take a size.
pub const FIXTURE_NAMES: &[&str] = &["fig1", "fig2", "fig3", "shift", "cycle", "path"];

/// Built-in graphs. `size` is required for `shift`, `cycle` and `path`.
pub fn fixture(name: &str, size: Option<usize>) -> Result<Graph> {
    let sized = |min: usize| -> Result<usize> {
        match size {
            Some(k) if k >= min => Ok(k),
            Some(k) => Err(Error::InvalidInput(format!("{name} needs size >= {min}, got {k}"))),
            None => Err(Error::InvalidInput(format!("{name} needs a size"))),
        }
    };
    match name {
        "fig1" => Graph::parse_edge_list(include_str!("../../fixtures/fig1.edges")),
        "fig2" => Graph::parse_edge_list(include_str!("../../fixtures/fig2.edges")),
        "fig3" => Graph::parse_edge_list(include_str!("../../fixtures/fig3.edges")),
        "shift" => Ok(Graph::shift(sized(2)?)),
        "cycle" => Ok(Graph::cycle(sized(3)?)),
        "path" => Ok(Graph::path(sized(1)?)),
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;

    fn p(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    #[test]
    fn path_two_matrices() {
        let g = Graph::path(2);
        assert_eq!(g.adjacency(), IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]));
        assert_eq!(g.laplacian().unwrap(), IntMatrix::from_i64_rows(&[&[1, -1], &[-1, 1]]));
    }

    #[test]
    fn figure_one_adjacency_golden() {
        let g = fixture("fig1", None).unwrap();
        assert_eq!((g.n(), g.edge_count()), (8, 10));
        assert_eq!(g.adjacency().char_poly(), p(&[1, -4, -12, 12, 23, -4, -10, 0, 1]));
    }

    #[test]
    fn figure_two_laplacian_golden() {
        let g = fixture("fig2", None).unwrap();
        assert_eq!((g.n(), g.edge_count()), (9, 14));
        let xi = p(&[6957, -22288, 29105, -20440, 8516, -2170, 332, -28, 1]);
        assert_eq!(g.laplacian().unwrap().char_poly(), &xi * &IntPolynomial::x());
    }

    #[test]
    fn figure_three_laplacian_golden() {
        let g = fixture("fig3", None).unwrap();
        assert_eq!((g.n(), g.edge_count()), (7, 6));
        let xi = p(&[7, -50, 115, -114, 54, -12, 1]);
        assert_eq!(g.laplacian().unwrap().char_poly(), &xi * &IntPolynomial::x());
        assert_eq!(g.distance(1, 7), Some(5));
        assert_eq!(g.distance(4, 4), Some(0));
    }

    #[test]
    fn shift_char_poly() {
        let g = fixture("shift", Some(5)).unwrap();
        assert_eq!(g.adjacency().char_poly(), p(&[-1, 0, 0, 0, 0, 1]));
        assert!(g.laplacian().is_err());
        assert_eq!(fixture("path", Some(3)).unwrap(), Graph::path(3));
        assert!(matches!(fixture("fig9", None), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn disconnected_pairs_have_no_distance() {
        let g = Graph::new(4, [(1, 2), (3, 4)], false).unwrap();
        assert_eq!(g.distance(1, 3), None);
        assert!(!g.is_connected());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::new(3, [(1, 1)], false).is_err());
        assert!(Graph::new(3, [(1, 2), (2, 1)], false).is_err());
        assert!(Graph::new(3, [(1, 4)], false).is_err());
        assert!(Graph::parse_edge_list("3\n1 2 3\n").is_err());
    }

    #[test]
    fn formats_round_trip() {
        for g in [fixture("fig2", None).unwrap(), Graph::shift(4)] {
            assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
            assert_eq!(Graph::parse(&g.to_json()).unwrap(), g);
        }
    }

    proptest::proptest! {
        #[test]
        fn distance_is_a_metric(seed in 0u64..500, n in 2usize..9) {
            let g = sample_er(n, &num_rational::BigRational::new(1.into(), 3.into()), seed);
            let l = g.laplacian().unwrap();
            for i in 0..n {
                let s: BigInt = l.row(i).iter().sum();
                proptest::prop_assert_eq!(s, BigInt::from(0));
            }
            for u in 1..=n {
                for v in 1..=n {
                    proptest::prop_assert_eq!(g.distance(u, v), g.distance(v, u));
                    for w in 1..=n {
                        if let (Some(a), Some(b)) = (g.distance(u, v), g.distance(v, w)) {
                            proptest::prop_assert!(g.distance(u, w).unwrap() <= a + b);
                        }
                    }
                }
            }
        }
    }
}
