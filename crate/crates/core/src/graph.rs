//! Simple undirected graphs, cycle rank and a representative fundamental cycle.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `1..=N`; edges stored as `(j, k)` with `j < k`,
/// sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

/// Cycle rank `|E| − |V| + components` with one fundamental cycle when the rank is positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBasisInfo {
    pub rank: usize,
    /// Closed vertex sequence without the repeated start vertex, e.g. `[2, 3, 4]`.
    pub representative: Option<Vec<usize>>,
}

impl Graph {
    /// Validates labels and rejects self-loops and repeated pairs (in either orientation).
    pub fn new(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == 0 || b == 0 || a > n_vertices || b > n_vertices {
                return Err(Error::LabelOutOfRange { from: a, to: b, n: n_vertices });
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        Ok(Self { n_vertices, edges: set.into_iter().collect() })
    }

    /// The six-site router: a triangle 2-3-4 with pendant sites 1, 5 and 6.
    pub fn router() -> Self {
        Self::new(6, &[(1, 2), (2, 3), (2, 4), (3, 4), (3, 5), (4, 6)]).expect("router graph is valid")
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Connected components, each as a sorted vertex list; ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n_vertices + 1];
        let mut out = Vec::new();
        for start in 1..=self.n_vertices {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Errors with [`Error::Disconnected`] unless the graph is connected.
    pub fn require_connected(&self) -> Result<()> {
        match self.components().len() {
            1 => Ok(()),
            components => Err(Error::Disconnected { components }),
        }
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.n_vertices
    }

    /// Graph with `label[v-1]` substituted for each vertex `v`.
    pub fn relabel(&self, labels: &[usize]) -> Result<Self> {
        if labels.len() != self.n_vertices {
            return Err(Error::DimensionMismatch { expected: self.n_vertices, actual: labels.len() });
        }
        let edges: Vec<_> = self.edges.iter().map(|&(a, b)| (labels[a - 1], labels[b - 1])).collect();
        Self::new(self.n_vertices, &edges)
    }

    /// Copy without the edge `{a, b}`.
    pub fn without_edge(&self, a: usize, b: usize) -> Result<Self> {
        let key = (a.min(b), a.max(b));
        if !self.has_edge(a, b) {
            return Err(Error::NotAnEdge(a, b));
        }
        let edges: Vec<_> = self.edges.iter().copied().filter(|&e| e != key).collect();
        Self::new(self.n_vertices, &edges)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n_vertices + 1];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Checks that `cycle` is a closed walk of length ≥ 3 along edges with no repeated vertex.
    pub fn validate_cycle(&self, cycle: &[usize]) -> Result<()> {
        if cycle.len() < 3 {
            return Err(Error::InvalidCycle(format!("needs at least 3 vertices, got {}", cycle.len())));
        }
        let mut seen = BTreeSet::new();
        for &v in cycle {
            if v == 0 || v > self.n_vertices {
                return Err(Error::InvalidCycle(format!("vertex {v} outside 1..={}", self.n_vertices)));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidCycle(format!("vertex {v} repeated")));
            }
        }
        for (a, b) in cycle_edges(cycle) {
            if !self.has_edge(a, b) {
                return Err(Error::NotAnEdge(a, b));
            }
        }
        Ok(())
    }
}

/// Consecutive pairs of a closed vertex sequence, including the closing pair.
pub fn cycle_edges(cycle: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    cycle.iter().enumerate().map(move |(i, &a)| (a, cycle[(i + 1) % cycle.len()]))
}

/// Cycle rank and one fundamental cycle.
///
/// A BFS spanning forest is grown from the smallest vertex of each component; the
/// first non-tree edge in lexicographic order closes the reported cycle, which is
/// rotated to start at its smallest vertex.
pub fn cycle_rank(g: &Graph) -> CycleBasisInfo {
    let components = g.components().len();
    let rank = g.n_edges() + components - g.n_vertices();
    if rank == 0 {
        return CycleBasisInfo { rank, representative: None };
    }

    let adj = g.adjacency();
    let n = g.n_vertices();
    let mut parent = vec![0usize; n + 1];
    let mut depth = vec![0usize; n + 1];
    let mut seen = vec![false; n + 1];
    let mut tree = BTreeSet::new();
    for root in 1..=n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    tree.insert((u.min(w), u.max(w)));
                    queue.push_back(w);
                }
            }
        }
    }

    let &(a, b) = g.edges().iter().find(|e| !tree.contains(e)).expect("positive rank implies a non-tree edge");

    // climb both endpoints to their lowest common ancestor
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    right.reverse();
    // a -> ... -> lca -> ... -> b, closed by the edge (b, a)
    let mut cycle = left;
    cycle.extend(right);

    let min_pos = cycle.iter().enumerate().min_by_key(|&(_, v)| *v).map(|(i, _)| i).unwrap_or(0);
    cycle.rotate_left(min_pos);
    // orient so the second vertex is the smaller neighbour of the start
    if cycle.len() > 2 && cycle[1] > cycle[cycle.len() - 1] {
        cycle[1..].reverse();
    }
    CycleBasisInfo { rank, representative: Some(cycle) }
}
