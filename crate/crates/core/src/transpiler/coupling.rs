use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CouplingError {
    #[error("edge [{a}, {b}] has an endpoint outside 0..{n}")]
    EndpointOutOfRange { a: usize, b: usize, n: usize },
    #[error("edge [{0}, {0}] is a self loop")]
    SelfLoop(usize),
    #[error("coupling map is disconnected: components {}", render_components(.0))]
    Disconnected(Vec<Vec<usize>>),
    #[error("coupling map declares no qubits")]
    Empty,
}

fn render_components(components: &[Vec<usize>]) -> String {
    components
        .iter()
        .map(|c| {
            let qs: Vec<String> = c.iter().map(usize::to_string).collect();
            format!("{{{}}}", qs.join(","))
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Undirected connectivity between physical qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingMap {
    num_physical_qubits: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl CouplingMap {
    /// Builds and validates a map; edges are unordered and may repeat.
    pub fn new(num_physical_qubits: usize, edges: &[(usize, usize)]) -> Result<Self, CouplingError> {
        if num_physical_qubits == 0 {
            return Err(CouplingError::Empty);
        }
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= num_physical_qubits || b >= num_physical_qubits {
                return Err(CouplingError::EndpointOutOfRange {
                    a,
                    b,
                    n: num_physical_qubits,
                });
            }
            if a == b {
                return Err(CouplingError::SelfLoop(a));
            }
            set.insert((a.min(b), a.max(b)));
        }
        let mut adjacency = vec![Vec::new(); num_physical_qubits];
        for &(a, b) in &set {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for n in &mut adjacency {
            n.sort_unstable();
        }
        let map = Self {
            num_physical_qubits,
            edges: set,
            adjacency,
        };
        let components = map.components();
        if components.len() > 1 {
            return Err(CouplingError::Disconnected(components));
        }
        Ok(map)
    }

    pub fn linear(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).expect("linear map is valid")
    }

    pub fn full(n: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Self::new(n, &edges).expect("complete graph is valid")
    }

    pub fn num_physical_qubits(&self) -> usize {
        self.num_physical_qubits
    }

    /// Normalised `(low, high)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, p: usize) -> &[usize] {
        &self.adjacency[p]
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(self.num_physical_qubits)
    }

    fn components_within(&self, limit: usize) -> Vec<Vec<usize>> {
        let mut seen = vec![false; limit];
        let mut out = Vec::new();
        for start in 0..limit {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(p) = queue.pop_front() {
                for &n in &self.adjacency[p] {
                    if n < limit && !seen[n] {
                        seen[n] = true;
                        comp.push(n);
                        queue.push_back(n);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the qubits `0..limit` are connected using only each other.
    pub fn prefix_connected(&self, limit: usize) -> bool {
        limit <= 1 || self.components_within(limit.min(self.num_physical_qubits)).len() == 1
    }

    /// Breadth-first shortest path from `from` to `to`, visiting neighbours
    /// in ascending order so the lowest-index route wins ties. Only qubits
    /// below `limit` are used.
    pub fn shortest_path(&self, from: usize, to: usize, limit: usize) -> Option<Vec<usize>> {
        if from >= limit || to >= limit {
            return None;
        }
        let mut parent = vec![usize::MAX; limit];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(p) = queue.pop_front() {
            if p == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &n in &self.adjacency[p] {
                if n < limit && parent[n] == usize::MAX {
                    parent[n] = p;
                    queue.push_back(n);
                }
            }
        }
        None
    }
}
