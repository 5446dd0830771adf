//! Plain reference implementations used by `graphalg --verify`.
//!
//! These work on adjacency lists built straight from an [`EdgeList`] and
//! share no code with the kernels.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::io::EdgeList;

/// Out-neighbors with weights, sorted by neighbor.
pub fn adjacency(edges: &EdgeList) -> Vec<Vec<(usize, f64)>> {
    let mut adj = vec![Vec::new(); edges.n];
    for (k, &(i, j)) in edges.edges.iter().enumerate() {
        adj[i].push((j, edges.weight(k)));
    }
    for row in &mut adj {
        row.sort_by_key(|&(j, _)| j);
    }
    adj
}

/// Queue BFS; the source has level 1 and unreachable vertices 0.
pub fn bfs_levels(adj: &[Vec<(usize, f64)>], source: usize) -> Vec<i64> {
    let mut level = vec![0i64; adj.len()];
    let mut queue = VecDeque::from([source]);
    level[source] = 1;
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &adj[u] {
            if level[v] == 0 {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    level
}

#[derive(PartialEq)]
struct Dist(f64);

impl Eq for Dist {}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Dijkstra with a binary heap; unreachable vertices are +∞.
pub fn dijkstra(adj: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Reverse((Dist(0.0), source)));
    while let Some(Reverse((Dist(d), u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((Dist(nd), v)));
            }
        }
    }
    dist
}

/// Dense power iteration with the same update and stopping rule as
/// [`crate::algorithms::pagerank`]: rank mass at vertices without out-edges
/// is dropped.
pub fn power_method(adj: &[Vec<(usize, f64)>], alpha: f64, eps: f64, max_iters: usize) -> Vec<f64> {
    let n = adj.len();
    if n == 0 {
        return Vec::new();
    }
    let mut p = vec![1.0 / n as f64; n];
    let mut error = 1.0;
    let mut iter = 0;
    while error > eps && iter < max_iters {
        iter += 1;
        let mut next = vec![0.0; n];
        for (i, row) in adj.iter().enumerate() {
            let share = alpha / row.len() as f64;
            for &(j, _) in row {
                next[j] += p[i] * share;
            }
        }
        let teleport = (1.0 - alpha) / n as f64;
        error = 0.0;
        for (x, old) in next.iter_mut().zip(&p) {
            *x += teleport;
            error += (*x - old) * (*x - old);
        }
        error = error.sqrt();
        p = next;
    }
    p
}

/// Union-find over undirected edges; each label is the smallest vertex id
/// in the component.
pub fn union_find_labels(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            // smaller root wins so labels come out as component minima
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            parent[hi] = lo;
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

/// Counts triangles `u < v < w` by merging sorted higher-id neighbor lists.
pub fn triangles(adj: &[Vec<(usize, f64)>]) -> u64 {
    let up: Vec<Vec<usize>> = adj
        .iter()
        .enumerate()
        .map(|(u, row)| row.iter().map(|&(v, _)| v).filter(|&v| v > u).collect())
        .collect();
    let mut count = 0;
    for nu in &up {
        for &v in nu {
            let nv = &up[v];
            let (mut p, mut q) = (0, 0);
            while p < nu.len() && q < nv.len() {
                match nu[p].cmp(&nv[q]) {
                    std::cmp::Ordering::Less => p += 1,
                    std::cmp::Ordering::Greater => q += 1,
                    std::cmp::Ordering::Equal => {
                        count += 1;
                        p += 1;
                        q += 1;
                    }
                }
            }
        }
    }
    count
}
