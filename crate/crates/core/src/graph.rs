//! Weighted undirected graphs, instance generation, coloring and cut evaluation.
//!
//! Cut assignments are `&[bool]` slices: `bits[i] == true` puts vertex `i`
//! on the `x_i = -1` side, `false` on the `x_i = +1` side.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count accepted by [`brute_force_max_cut`].
pub const ORACLE_LIMIT: usize = 30;

/// Attempts made by [`generate_regular`] before giving up.
pub const REGULAR_RETRY_BUDGET: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Weighted simple undirected graph with edges stored as `u < v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph, canonicalizing each edge to `u < v`.
    ///
    /// Rejects self-loops, out-of-range endpoints, duplicate pairs and
    /// non-finite weights.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("vertex count must be positive".into()));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (a, b, w) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {a}")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v >= n {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) out of range for n = {n}")));
            }
            if !w.is_finite() {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) has non-finite weight")));
            }
            if !seen.insert((u, v)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            out.push(Edge { u, v, w });
        }
        Ok(Self { n, edges: out })
    }

    /// Unweighted graph (all weights 1).
    pub fn unweighted(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(n, pairs.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn complete(n: usize) -> Self {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::unweighted(n, pairs).expect("complete graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::unweighted(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Self::unweighted(10, outer.chain(spokes).chain(inner)).expect("Petersen graph is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    /// Adjacency lists of `(neighbor, weight)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        adj
    }

    /// Same topology with new weights, in edge order.
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self> {
        check_len(self.edges.len(), weights.len())?;
        let edges = self.edges.iter().zip(weights).map(|(e, &w)| (e.u, e.v, w));
        Self::new(self.n, edges)
    }

    /// Text form: a `n m` header followed by `m` lines of `u v w`.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            writeln!(s, "{} {} {}", e.u, e.v, e.w).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let mut head = header.split_whitespace();
        let n: usize = parse_field(head.next(), "vertex count")?;
        let m: usize = parse_field(head.next(), "edge count")?;
        let mut edges = Vec::with_capacity(m);
        for (i, line) in lines.enumerate() {
            if i >= m {
                return Err(Error::Parse(format!("more than {m} edge lines")));
            }
            let mut f = line.split_whitespace();
            let u = parse_field(f.next(), "edge endpoint")?;
            let v = parse_field(f.next(), "edge endpoint")?;
            let w = parse_field(f.next(), "edge weight")?;
            edges.push((u, v, w));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!("header declares {m} edges, found {}", edges.len())));
        }
        Self::new(n, edges)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

fn parse_field<T: std::str::FromStr>(tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::Parse(format!("missing {what}")))?;
    tok.parse().map_err(|_| Error::Parse(format!("bad {what}: {tok:?}")))
}

pub(crate) fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, actual })
    }
}

/// Vertex coloring; `colors[i]` is the color of vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn num_colors(&self) -> usize {
        self.colors.iter().max().map_or(0, |&c| c + 1)
    }

    /// First edge whose endpoints share a color, if any.
    pub fn conflict(&self, g: &Graph) -> Option<(usize, usize)> {
        g.edges()
            .iter()
            .find(|e| self.colors[e.u] == self.colors[e.v])
            .map(|e| (e.u, e.v))
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n() && self.conflict(g).is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutSolution {
    pub bits: Vec<bool>,
    pub value: f64,
}

/// Sum of weights of edges whose endpoints fall on different sides.
pub fn cut_value(g: &Graph, bits: &[bool]) -> Result<f64> {
    check_len(g.n(), bits.len())?;
    Ok(g.edges().iter().filter(|e| bits[e.u] != bits[e.v]).map(|e| e.w).sum())
}

/// Random `degree`-regular simple graph via the configuration model.
///
/// Vertex stubs are shuffled and paired; any pairing with a self-loop or a
/// repeated edge is discarded and redrawn, up to [`REGULAR_RETRY_BUDGET`]
/// times.
pub fn generate_regular(n: usize, degree: usize, seed: u64) -> Result<Graph> {
    if n <= degree {
        return Err(Error::InfeasibleRegular { n, degree, reason: "need n > degree" });
    }
    if !(n * degree).is_multiple_of(2) {
        return Err(Error::InfeasibleRegular { n, degree, reason: "n * degree is odd" });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    'attempt: for _ in 0..REGULAR_RETRY_BUDGET {
        stubs.shuffle(&mut rng);
        let mut seen = HashSet::with_capacity(stubs.len() / 2);
        let mut pairs = Vec::with_capacity(stubs.len() / 2);
        for chunk in stubs.chunks_exact(2) {
            let (a, b) = (chunk[0].min(chunk[1]), chunk[0].max(chunk[1]));
            if a == b || !seen.insert((a, b)) {
                continue 'attempt;
            }
            pairs.push((a, b));
        }
        pairs.sort_unstable();
        return Graph::unweighted(n, pairs);
    }
    Err(Error::RetryBudgetExhausted(REGULAR_RETRY_BUDGET))
}

/// Replaces every weight with an independent fair ±1.
pub fn assign_random_signs(g: &Graph, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = g
        .edges()
        .iter()
        .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
        .collect();
    g.with_weights(&weights).expect("topology unchanged")
}

/// Greedy coloring in descending-degree order (ties by index), each vertex
/// taking the smallest color not used by an already-colored neighbor.
pub fn greedy_color(g: &Graph) -> Coloring {
    let deg = g.degrees();
    let adj = g.adjacency();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));

    let mut colors = vec![usize::MAX; g.n()];
    let mut used = Vec::new();
    for v in order {
        used.clear();
        used.resize(deg[v] + 1, false);
        for &(u, _) in &adj[v] {
            if let Some(slot) = used.get_mut(colors[u]) {
                *slot = true;
            }
        }
        colors[v] = used.iter().position(|&taken| !taken).expect("deg + 1 slots");
    }
    Coloring { colors }
}

/// Exact maximum cut by Gray-code enumeration with `bits[0]` fixed to 0.
///
/// Each step flips one vertex and updates the cut and all flip gains in
/// O(degree). Among maximizers the lexicographically smallest bit vector is
/// returned.
pub fn brute_force_max_cut(g: &Graph) -> Result<CutSolution> {
    let n = g.n();
    if n > ORACLE_LIMIT {
        return Err(Error::OracleLimit { n, limit: ORACLE_LIMIT });
    }
    const TIE_EPS: f64 = 1e-9;

    // CSR adjacency
    let adj = g.adjacency();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut nbrs = Vec::new();
    offsets.push(0);
    for list in &adj {
        nbrs.extend_from_slice(list);
        offsets.push(nbrs.len());
    }

    // Everything starts on side 0: flipping v cuts all its edges.
    let mut gain: Vec<f64> = adj.iter().map(|l| l.iter().map(|&(_, w)| w).sum()).collect();
    let mut side = vec![false; n];
    let mut cut = 0.0;
    // Lexicographic key: vertex i contributes bit (n - 1 - i).
    let mut key: u64 = 0;
    let mut best = (0.0_f64, 0_u64);

    let steps: u64 = 1 << (n - 1);
    for k in 1..steps {
        let v = k.trailing_zeros() as usize + 1;
        cut += gain[v];
        gain[v] = -gain[v];
        side[v] = !side[v];
        key ^= 1 << (n - 1 - v);
        for &(u, w) in &nbrs[offsets[v]..offsets[v + 1]] {
            if side[u] == side[v] {
                gain[u] += 2.0 * w;
            } else {
                gain[u] -= 2.0 * w;
            }
        }
        if cut > best.0 + TIE_EPS || (cut >= best.0 - TIE_EPS && key < best.1) {
            best = (cut, key);
        }
    }

    let bits: Vec<bool> = (0..n).map(|i| best.1 >> (n - 1 - i) & 1 == 1).collect();
    let value = cut_value(g, &bits)?;
    Ok(CutSolution { bits, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn regular_on_four_vertices_is_k4() {
        for seed in 0..5 {
            let g = generate_regular(4, 3, seed).unwrap();
            assert_eq!(g, Graph::complete(4));
        }
    }

    #[test]
    fn regular_rejects_odd_stub_count() {
        assert!(matches!(generate_regular(5, 3, 1), Err(Error::InfeasibleRegular { .. })));
        assert!(matches!(generate_regular(3, 3, 1), Err(Error::InfeasibleRegular { .. })));
    }

    #[test]
    fn regular_is_deterministic() {
        let a = generate_regular(20, 3, 7).unwrap();
        let b = generate_regular(20, 3, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate_regular(20, 3, 8).unwrap());
    }

    #[test]
    fn regular_degrees() {
        for seed in 0..20 {
            let g = generate_regular(24, 3, seed).unwrap();
            assert!(g.degrees().iter().all(|&d| d == 3));
            assert_eq!(g.num_edges(), 36);
        }
    }

    #[test]
    fn random_signs() {
        let single = Graph::unweighted(2, [(0, 1)]).unwrap();
        for seed in 0..10 {
            let w = assign_random_signs(&single, seed).edges()[0].w;
            assert!(w == 1.0 || w == -1.0);
        }
        let g = generate_regular(20, 3, 3).unwrap();
        assert_eq!(assign_random_signs(&g, 9), assign_random_signs(&g, 9));
    }

    #[test]
    fn random_signs_are_balanced() {
        // 10^4 edges: mean must sit within 4 standard errors (sigma = 1) of 0.
        let g = generate_regular(20_000, 1, 5).unwrap();
        assert_eq!(g.num_edges(), 10_000);
        let signed = assign_random_signs(&g, 11);
        let mean = signed.total_weight() / 10_000.0;
        assert!(mean.abs() <= 4.0 / 100.0, "mean {mean}");
        let same = signed.edges().iter().zip(g.edges()).all(|(a, b)| (a.u, a.v) == (b.u, b.v));
        assert!(same);
    }

    #[test]
    fn cut_value_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(cut_value(&k3, &bits("001")).unwrap(), 2.0);
        let edge = Graph::unweighted(2, [(0, 1)]).unwrap();
        assert_eq!(cut_value(&edge, &bits("00")).unwrap(), 0.0);
        let neg = Graph::new(2, [(0, 1, -1.0)]).unwrap();
        assert_eq!(cut_value(&neg, &bits("01")).unwrap(), -1.0);
        assert!(matches!(cut_value(&k3, &bits("01")), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn oracle_small_graphs() {
        assert_eq!(brute_force_max_cut(&Graph::complete(3)).unwrap().value, 2.0);
        assert_eq!(brute_force_max_cut(&Graph::cycle(5)).unwrap().value, 4.0);
        let k4 = brute_force_max_cut(&Graph::complete(4)).unwrap();
        assert_eq!(k4.value, 4.0);
        // Lexicographically smallest maximizer with bits[0] = 0.
        assert_eq!(k4.bits, bits("0011"));
        let one = brute_force_max_cut(&Graph::unweighted(1, []).unwrap()).unwrap();
        assert_eq!(one.bits, bits("0"));
        assert_eq!(one.value, 0.0);
    }

    #[test]
    fn oracle_limit() {
        let g = Graph::unweighted(31, [(0, 1)]).unwrap();
        assert!(matches!(brute_force_max_cut(&g), Err(Error::OracleLimit { .. })));
    }

    #[test]
    fn greedy_color_examples() {
        assert_eq!(greedy_color(&Graph::complete(3)).num_colors(), 3);
        let edge = Graph::unweighted(2, [(0, 1)]).unwrap();
        assert_eq!(greedy_color(&edge).colors, vec![0, 1]);
    }

    #[test]
    fn greedy_color_degree_order() {
        // Star centered at 3: the center goes first and takes color 0.
        let star = Graph::unweighted(4, [(3, 0), (3, 1), (3, 2)]).unwrap();
        assert_eq!(greedy_color(&star).colors, vec![1, 1, 1, 0]);
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::unweighted(3, [(1, 1)]).is_err());
        assert!(Graph::unweighted(3, [(0, 3)]).is_err());
        assert!(Graph::unweighted(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::unweighted(0, []).is_err());
        let g = Graph::unweighted(3, [(2, 0)]).unwrap();
        assert_eq!((g.edges()[0].u, g.edges()[0].v), (0, 2));
    }

    #[test]
    fn text_format() {
        let g = Graph::new(4, [(0, 1, 1.0), (1, 2, -1.0), (2, 3, 3.0)]).unwrap();
        let text = g.to_text();
        assert_eq!(text, "4 3\n0 1 1\n1 2 -1\n2 3 3\n");
        assert_eq!(Graph::from_text(&text).unwrap(), g);
        assert!(Graph::from_text("3 2\n0 1 1\n").is_err());
        assert!(Graph::from_text("3 1\n0 x 1\n").is_err());
    }
}
