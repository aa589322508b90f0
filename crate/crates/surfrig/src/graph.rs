//! Simple undirected graphs with the combinatorial operations used by the
//! rigidity machinery: (2,k)-sparsity via the pebble game, vertex
//! connectivity, edge addition and 1-extension.
//!
//! Vertices are dense indices `0..n`. The edge list is kept normalized
//! (`i < j`, lexicographically sorted, no duplicates) so that matrix row
//! orders derived from it are reproducible.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) not present")]
    MissingEdge(usize, usize),
    #[error("attachment vertex {0} coincides with an endpoint of the split edge")]
    BadAttachment(usize),
    #[error("sparsity parameter k must be 1, 2 or 3 (got {0})")]
    InvalidSparsityParameter(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph on vertices `0..n`. Edges are normalized to `i < j`
    /// and sorted; self-loops, duplicates and out-of-range endpoints are
    /// rejected.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a, n));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b, n));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self { n, edges: list })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Self { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in normalized lexicographic order; matrix rows follow this order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Position of edge `(u, v)` in the normalized edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Returns a copy with edge `(u, v)` added.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        let mut edges = self.edges.clone();
        edges.push((u.min(v), u.max(v)));
        edges.sort_unstable();
        Ok(Self { n: self.n, edges })
    }

    /// Returns a copy with edge `(u, v)` removed.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let idx = self
            .edge_index(u, v)
            .ok_or(GraphError::MissingEdge(u.min(v), u.max(v)))?;
        let mut edges = self.edges.clone();
        edges.remove(idx);
        Ok(Self { n: self.n, edges })
    }

    /// The 1-extension on edge `(v1, v2)` with attachment vertex `v3`:
    /// deletes the edge, adds a new vertex `n` and the three edges
    /// `(n, v1)`, `(n, v2)`, `(n, v3)`.
    pub fn one_extension(
        &self,
        edge: (usize, usize),
        v3: usize,
    ) -> Result<Self, GraphError> {
        let (v1, v2) = edge;
        if self.edge_index(v1, v2).is_none() {
            return Err(GraphError::MissingEdge(v1.min(v2), v1.max(v2)));
        }
        if v3 >= self.n {
            return Err(GraphError::VertexOutOfRange(v3, self.n));
        }
        if v3 == v1 || v3 == v2 {
            return Err(GraphError::BadAttachment(v3));
        }
        let new_vertex = self.n;
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .filter(|&e| e != (v1.min(v2), v1.max(v2)))
            .collect();
        edges.push((v1, new_vertex));
        edges.push((v2, new_vertex));
        edges.push((v3, new_vertex));
        edges.sort_unstable();
        Ok(Self {
            n: self.n + 1,
            edges,
        })
    }

    /// (2,k)-sparsity: every subgraph with at least one edge satisfies
    /// `|E'| <= 2|V'| - k`. Decided by the pebble game.
    pub fn is_k_sparse(&self, k: usize) -> Result<bool, GraphError> {
        if !(1..=3).contains(&k) {
            return Err(GraphError::InvalidSparsityParameter(k));
        }
        Ok(self.pebble_game(k))
    }

    /// (2,k)-tightness: (2,k)-sparse with `|E| = 2|V| - k`.
    pub fn is_k_tight(&self, k: usize) -> Result<bool, GraphError> {
        let sparse = self.is_k_sparse(k)?;
        Ok(sparse && 2 * self.n >= k && self.edges.len() == 2 * self.n - k)
    }

    /// The (2,k) pebble game of Lee and Streinu. Every vertex starts with
    /// two pebbles; an edge may be inserted once k+1 pebbles sit on its
    /// endpoints, collected by reversing directed paths. The graph is
    /// (2,k)-sparse iff every edge can be inserted.
    fn pebble_game(&self, k: usize) -> bool {
        let n = self.n;
        let mut pebbles = vec![2usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            while pebbles[u] + pebbles[v] < k + 1 {
                if !Self::pull_pebble(&mut out, &mut pebbles, u, v, n)
                    && !Self::pull_pebble(&mut out, &mut pebbles, v, u, n)
                {
                    return false;
                }
            }
            if pebbles[u] > 0 {
                pebbles[u] -= 1;
                out[u].push(v);
            } else {
                pebbles[v] -= 1;
                out[v].push(u);
            }
        }
        true
    }

    /// Searches for a free pebble reachable from `start` along edge
    /// orientations, not entering `blocked`; on success reverses the path
    /// and moves the pebble to `start`.
    fn pull_pebble(
        out: &mut [Vec<usize>],
        pebbles: &mut [usize],
        start: usize,
        blocked: usize,
        n: usize,
    ) -> bool {
        let mut visited = vec![false; n];
        let mut parent = vec![usize::MAX; n];
        visited[start] = true;
        visited[blocked] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for idx in 0..out[u].len() {
                let w = out[u][idx];
                if visited[w] {
                    continue;
                }
                visited[w] = true;
                parent[w] = u;
                if pebbles[w] > 0 {
                    pebbles[w] -= 1;
                    pebbles[start] += 1;
                    let mut cur = w;
                    while cur != start {
                        let p = parent[cur];
                        let pos = out[p]
                            .iter()
                            .position(|&x| x == cur)
                            .expect("path edge present");
                        out[p].swap_remove(pos);
                        out[cur].push(p);
                        cur = p;
                    }
                    return true;
                }
                stack.push(w);
            }
        }
        false
    }

    /// k-vertex-connectivity via vertex-disjoint paths (unit-capacity
    /// max-flow on the split-vertex network). `k = 0` is vacuously true.
    pub fn is_k_connected(&self, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        if self.n < k + 1 {
            return false;
        }
        if self.edges.len() == self.n * (self.n - 1) / 2 {
            // complete graph: connectivity n - 1
            return self.n >= k + 1;
        }
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    continue;
                }
                if self.disjoint_paths(u, v, k) < k {
                    return false;
                }
            }
        }
        true
    }

    /// Number of internally vertex-disjoint u-v paths, capped at `cap`.
    fn disjoint_paths(&self, s: usize, t: usize, cap: usize) -> usize {
        // node 2v = "in", 2v+1 = "out"; arc in->out carries the vertex
        // capacity, undirected edges become out->in arcs both ways
        let size = 2 * self.n;
        let mut caps = std::collections::HashMap::new();
        for v in 0..self.n {
            caps.insert((2 * v, 2 * v + 1), 1usize);
        }
        for &(a, b) in &self.edges {
            caps.insert((2 * a + 1, 2 * b), cap + 1);
            caps.insert((2 * b + 1, 2 * a), cap + 1);
        }
        let source = 2 * s + 1;
        let sink = 2 * t;
        let mut flow = 0;
        while flow < cap {
            // BFS for an augmenting path in the residual network
            let mut prev = vec![usize::MAX; size];
            let mut queue = std::collections::VecDeque::from([source]);
            prev[source] = source;
            'bfs: while let Some(u) = queue.pop_front() {
                for (&(a, b), &c) in caps.iter() {
                    if a == u && c > 0 && prev[b] == usize::MAX {
                        prev[b] = u;
                        if b == sink {
                            break 'bfs;
                        }
                        queue.push_back(b);
                    }
                }
            }
            if prev[sink] == usize::MAX {
                break;
            }
            let mut cur = sink;
            while cur != source {
                let p = prev[cur];
                *caps.get_mut(&(p, cur)).expect("forward arc") -= 1;
                *caps.entry((cur, p)).or_insert(0) += 1;
                cur = p;
            }
            flow += 1;
        }
        flow
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5_minus_e() -> Graph {
        let mut edges: Vec<(usize, usize)> = Graph::complete(5).edges().to_vec();
        edges.retain(|&e| e != (2, 3));
        Graph::new(5, edges).unwrap()
    }

    /// Exhaustive check over induced subgraphs; the binding case for the
    /// sparsity count is always an induced subgraph.
    fn brute_force_sparse(g: &Graph, k: usize) -> bool {
        let n = g.vertex_count();
        for mask in 1u32..(1 << n) {
            let count = g
                .edges()
                .iter()
                .filter(|&&(a, b)| mask & (1 << a) != 0 && mask & (1 << b) != 0)
                .count();
            if count == 0 {
                continue;
            }
            let verts = mask.count_ones() as usize;
            if count > 2 * verts - k {
                return false;
            }
        }
        true
    }

    #[test]
    fn construction_normalizes_and_validates() {
        let g = Graph::new(3, [(2, 0), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2)]);
        assert_eq!(Graph::new(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::new(2, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(2, [(0, 3)]),
            Err(GraphError::VertexOutOfRange(3, 2))
        );
    }

    #[test]
    fn sparsity_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.is_k_sparse(3), Ok(true));
        assert_eq!(k3.is_k_tight(3), Ok(true));

        let k4 = Graph::complete(4);
        assert_eq!(k4.is_k_sparse(3), Ok(false));
        assert_eq!(k4.is_k_sparse(2), Ok(true));
        assert_eq!(k4.is_k_tight(2), Ok(true));

        let g = k5_minus_e();
        assert_eq!(g.is_k_sparse(1), Ok(true));
        assert_eq!(g.is_k_tight(1), Ok(true));
        assert_eq!(g.is_k_tight(2), Ok(false));

        assert_eq!(g.is_k_sparse(0), Err(GraphError::InvalidSparsityParameter(0)));
        assert_eq!(g.is_k_sparse(4), Err(GraphError::InvalidSparsityParameter(4)));
    }

    #[test]
    fn pebble_game_agrees_with_brute_force_small() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=7);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            for k in 1..=3 {
                assert_eq!(
                    g.is_k_sparse(k).unwrap(),
                    brute_force_sparse(&g, k),
                    "n={n} edges={:?} k={k}",
                    g.edges()
                );
            }
        }
    }

    #[test]
    fn sparsity_monotone_under_edge_deletion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.gen_range(2..=7);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.4) {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            for k in 1..=3 {
                if g.is_k_sparse(k).unwrap() {
                    for &(u, v) in g.edges() {
                        let sub = g.remove_edge(u, v).unwrap();
                        assert!(sub.is_k_sparse(k).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn connectivity_examples() {
        assert!(k5_minus_e().is_k_connected(2));
        assert!(k5_minus_e().is_k_connected(3));
        assert!(!k5_minus_e().is_k_connected(4));

        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(p3.is_k_connected(1));
        assert!(!p3.is_k_connected(2));

        let k4 = Graph::complete(4);
        assert!(k4.is_k_connected(3));
        assert!(!k4.is_k_connected(4));

        // two triangles sharing a vertex: connected but with a cut vertex
        let bowtie = Graph::new(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(bowtie.is_k_connected(1));
        assert!(!bowtie.is_k_connected(2));

        // disconnected graph
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two.is_k_connected(1));
    }

    #[test]
    fn one_extension_examples() {
        let k4 = Graph::complete(4);
        let g = k4.one_extension((0, 1), 2).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.degree(4), 3);
        assert!(!g.has_edge(0, 1));
        assert!(g.has_edge(0, 4) && g.has_edge(1, 4) && g.has_edge(2, 4));

        let g2 = k5_minus_e().one_extension((0, 1), 2).unwrap();
        assert_eq!(g2.vertex_count(), 6);
        assert_eq!(g2.edge_count(), 11);

        assert_eq!(
            k4.one_extension((0, 1), 0),
            Err(GraphError::BadAttachment(0))
        );
        assert_eq!(
            k5_minus_e().one_extension((2, 3), 0),
            Err(GraphError::MissingEdge(2, 3))
        );
    }

    #[test]
    fn one_extension_preserves_tightness() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let seeds: [(usize, Graph); 3] = [
            (1, k5_minus_e()),
            (2, Graph::complete(4)),
            (3, Graph::complete(3)),
        ];
        for (k, seed_graph) in seeds {
            let mut g = seed_graph;
            assert!(g.is_k_tight(k).unwrap());
            for _ in 0..5 {
                let edges = g.edges().to_vec();
                let &(v1, v2) = &edges[rng.gen_range(0..edges.len())];
                let v3 = loop {
                    let c = rng.gen_range(0..g.vertex_count());
                    if c != v1 && c != v2 {
                        break c;
                    }
                };
                g = g.one_extension((v1, v2), v3).unwrap();
                assert!(g.is_k_tight(k).unwrap(), "k={k} n={}", g.vertex_count());
            }
        }
    }

    #[test]
    fn add_edge_examples() {
        let g = k5_minus_e();
        let k5 = g.add_edge(2, 3).unwrap();
        assert_eq!(k5, Graph::complete(5));
        assert_eq!(k5.edge_count(), g.edge_count() + 1);
        assert_eq!(g.add_edge(0, 1), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
    }
}
