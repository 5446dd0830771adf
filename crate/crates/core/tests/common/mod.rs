//! Dense and textbook reference implementations plus random instance
//! generators shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, BinaryHeap, VecDeque};

use graphalg::{Monoid, Scalar, Semiring, SparseMatrix, Vector};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Element arithmetic written out with std operations.
pub trait Arith: Scalar {
    fn o_add(a: Self, b: Self) -> Self;
    fn o_sub(a: Self, b: Self) -> Self;
    fn o_mul(a: Self, b: Self) -> Self;
    fn sample(rng: &mut StdRng, lo: i32, hi: i32) -> Self;
    /// Exact for integers, 1e-10 relative for floats.
    fn close(a: Self, b: Self) -> bool;
}

macro_rules! int_arith {
    ($($t:ty),*) => {$(
        impl Arith for $t {
            fn o_add(a: Self, b: Self) -> Self {
                if a == <$t>::MAX || b == <$t>::MAX {
                    <$t>::MAX
                } else if a == <$t>::MIN || b == <$t>::MIN {
                    <$t>::MIN
                } else {
                    a.saturating_add(b)
                }
            }
            fn o_sub(a: Self, b: Self) -> Self {
                a.saturating_sub(b)
            }
            fn o_mul(a: Self, b: Self) -> Self {
                a.saturating_mul(b)
            }
            fn sample(rng: &mut StdRng, lo: i32, hi: i32) -> Self {
                rng.gen_range(lo..=hi) as $t
            }
            fn close(a: Self, b: Self) -> bool {
                a == b
            }
        }
    )*};
}

macro_rules! float_arith {
    ($($t:ty),*) => {$(
        impl Arith for $t {
            fn o_add(a: Self, b: Self) -> Self {
                a + b
            }
            fn o_sub(a: Self, b: Self) -> Self {
                a - b
            }
            fn o_mul(a: Self, b: Self) -> Self {
                a * b
            }
            fn sample(rng: &mut StdRng, lo: i32, hi: i32) -> Self {
                // quarter steps keep values away from rounding noise
                let q = rng.gen_range(lo * 4..=hi * 4);
                q as $t / 4.0
            }
            fn close(a: Self, b: Self) -> bool {
                if a == b {
                    return true;
                }
                let (a, b) = (a as f64, b as f64);
                (a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1.0)
            }
        }
    )*};
}

int_arith!(i32, i64);
float_arith!(f32, f64);

/// The built-in semirings, restated as (identity, ⊕, ⊗).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sr {
    PlusTimes,
    OrAnd,
    MinPlus,
    MaxPlus,
    MinTimes,
    MinSecond,
    PlusLess,
    MinNe,
    PlusMinus,
    TimesTimes,
}

impl Sr {
    pub const ALL: [Sr; 10] = [
        Sr::PlusTimes,
        Sr::OrAnd,
        Sr::MinPlus,
        Sr::MaxPlus,
        Sr::MinTimes,
        Sr::MinSecond,
        Sr::PlusLess,
        Sr::MinNe,
        Sr::PlusMinus,
        Sr::TimesTimes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Sr::PlusTimes => "PlusMultiplies",
            Sr::OrAnd => "LogicalOrAnd",
            Sr::MinPlus => "MinPlus",
            Sr::MaxPlus => "MaxPlus",
            Sr::MinTimes => "MinMultiplies",
            Sr::MinSecond => "MinimumSelectSecond",
            Sr::PlusLess => "PlusLess",
            Sr::MinNe => "MinimumNotEqualTo",
            Sr::PlusMinus => "PlusMinus",
            Sr::TimesTimes => "MultipliesMultiplies",
        }
    }

    pub fn semiring<T: Scalar>(self) -> Semiring<T> {
        graphalg::builtin_semiring(self.name()).expect("built-in semiring")
    }

    pub fn identity<T: Arith>(self) -> T {
        match self {
            Sr::PlusTimes | Sr::OrAnd | Sr::PlusLess | Sr::PlusMinus => T::ZERO,
            Sr::MinPlus | Sr::MinTimes | Sr::MinSecond | Sr::MinNe => T::INFINITY,
            Sr::MaxPlus => T::NEG_INFINITY,
            Sr::TimesTimes => T::ONE,
        }
    }

    pub fn add<T: Arith>(self, a: T, b: T) -> T {
        match self {
            Sr::PlusTimes | Sr::PlusLess | Sr::PlusMinus => T::o_add(a, b),
            Sr::OrAnd => bool01(a != T::ZERO || b != T::ZERO),
            Sr::MinPlus | Sr::MinTimes | Sr::MinSecond | Sr::MinNe => {
                if b < a {
                    b
                } else {
                    a
                }
            }
            Sr::MaxPlus => {
                if b > a {
                    b
                } else {
                    a
                }
            }
            Sr::TimesTimes => T::o_mul(a, b),
        }
    }

    pub fn mul<T: Arith>(self, a: T, b: T) -> T {
        match self {
            Sr::PlusTimes | Sr::MinTimes | Sr::TimesTimes => T::o_mul(a, b),
            Sr::OrAnd => bool01(a != T::ZERO && b != T::ZERO),
            Sr::MinPlus | Sr::MaxPlus => T::o_add(a, b),
            Sr::MinSecond => b,
            Sr::PlusLess => bool01(a < b),
            Sr::MinNe => bool01(a != b),
            Sr::PlusMinus => T::o_sub(a, b),
        }
    }

    /// Value range that never produces the identity as an operand and keeps
    /// products representable.
    pub fn value_range(self) -> (i32, i32) {
        match self {
            Sr::TimesTimes => (2, 3),
            Sr::OrAnd => (1, 1),
            _ => (1, 9),
        }
    }
}

fn bool01<T: Arith>(b: bool) -> T {
    if b {
        T::ONE
    } else {
        T::ZERO
    }
}

/// Row-major grid of optional entries.
pub type Grid<T> = Vec<Vec<Option<T>>>;

pub fn random_grid<T: Arith>(rng: &mut StdRng, m: usize, n: usize, density: f64, range: (i32, i32)) -> Grid<T> {
    (0..m)
        .map(|_| {
            (0..n)
                .map(|_| rng.gen_bool(density).then(|| T::sample(rng, range.0, range.1)))
                .collect()
        })
        .collect()
}

pub fn grid_matrix<T: Scalar>(g: &Grid<T>, ncols: usize) -> SparseMatrix<T> {
    let mut t = Vec::new();
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if let Some(v) = v {
                t.push((i, j, *v));
            }
        }
    }
    SparseMatrix::build(&t, g.len(), ncols, &Monoid::plus()).expect("valid grid")
}

pub fn transpose_grid<T: Copy>(g: &Grid<T>, ncols: usize) -> Grid<T> {
    (0..ncols).map(|j| g.iter().map(|row| row[j]).collect()).collect()
}

pub fn random_entries<T: Arith>(rng: &mut StdRng, n: usize, density: f64, range: (i32, i32)) -> Vec<Option<T>> {
    (0..n)
        .map(|_| rng.gen_bool(density).then(|| T::sample(rng, range.0, range.1)))
        .collect()
}

pub fn sparse_vector<T: Scalar>(entries: &[Option<T>]) -> Vector<T> {
    let (idx, val): (Vec<usize>, Vec<T>) = entries
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .unzip();
    Vector::build(&idx, &val, entries.len()).expect("valid vector")
}

pub fn dense_vector<T: Scalar>(entries: &[Option<T>], fill: T) -> Vector<T> {
    Vector::from_dense(entries.iter().map(|v| v.unwrap_or(fill)).collect())
}

/// `w(i) = ⊕_j A(i,j) ⊗ u(j)` over stored pairs, folded in ascending `j`;
/// rows that are masked out or receive nothing hold the identity.
/// `vector_first` swaps the ⊗ operands.
pub fn dense_mxv<T: Arith>(
    sr: Sr,
    a: &Grid<T>,
    u: &[Option<T>],
    allowed: Option<&[bool]>,
    vector_first: bool,
) -> Vec<T> {
    a.iter()
        .enumerate()
        .map(|(i, row)| {
            let mut acc = sr.identity();
            if allowed.is_none_or(|m| m[i]) {
                for (j, x) in row.iter().enumerate() {
                    if let (Some(x), Some(y)) = (x, u[j]) {
                        let p = if vector_first { sr.mul(y, *x) } else { sr.mul(*x, y) };
                        acc = sr.add(acc, p);
                    }
                }
            }
            acc
        })
        .collect()
}

/// Masked product `C = A B` on dense grids; entries outside the mask are
/// unset, entries inside with no shared index hold the identity.
pub fn dense_masked_gemm<T: Arith>(sr: Sr, a: &Grid<T>, b: &Grid<T>, allowed: &[Vec<bool>]) -> Vec<Vec<Option<T>>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .enumerate()
        .map(|(i, arow)| {
            (0..n)
                .map(|j| {
                    if !allowed[i][j] {
                        return None;
                    }
                    let mut acc = sr.identity();
                    for (k, x) in arow.iter().enumerate() {
                        if let (Some(x), Some(y)) = (x, b[k][j]) {
                            acc = sr.add(acc, sr.mul(*x, y));
                        }
                    }
                    Some(acc)
                })
                .collect()
        })
        .collect()
}

/// A random undirected simple graph as a sorted pair list `(i, j)`, both
/// directions present.
pub fn random_undirected(rng: &mut StdRng, n: usize, density: f64) -> Vec<(usize, usize)> {
    let mut set = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                set.insert((i, j));
                set.insert((j, i));
            }
        }
    }
    set.into_iter().collect()
}

pub fn neighbors(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in edges {
        adj[i].push(j);
    }
    adj
}

pub fn queue_bfs(adj: &[Vec<usize>], s: usize) -> Vec<i64> {
    let mut level = vec![0; adj.len()];
    level[s] = 1;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &v in &adj[u] {
            if level[v] == 0 {
                level[v] = level[u] + 1;
                q.push_back(v);
            }
        }
    }
    level
}

/// Heap Dijkstra on integer weights; `None` for unreachable.
pub fn dijkstra(adj: &[Vec<(usize, u64)>], s: usize) -> Vec<Option<u64>> {
    let mut dist = vec![None; adj.len()];
    let mut heap = BinaryHeap::from([std::cmp::Reverse((0u64, s))]);
    while let Some(std::cmp::Reverse((d, u))) = heap.pop() {
        if dist[u].is_some() {
            continue;
        }
        dist[u] = Some(d);
        for &(v, w) in &adj[u] {
            if dist[v].is_none() {
                heap.push(std::cmp::Reverse((d + w, v)));
            }
        }
    }
    dist
}

/// Fixed-step power iteration on out-neighbor lists with uniform start and
/// uniform teleport.
pub fn power_method(adj: &[Vec<usize>], alpha: f64, steps: usize) -> Vec<f64> {
    let n = adj.len();
    let mut p = vec![1.0 / n as f64; n];
    for _ in 0..steps {
        let mut next = vec![(1.0 - alpha) / n as f64; n];
        for (i, out) in adj.iter().enumerate() {
            for &j in out {
                next[j] += alpha * p[i] / out.len() as f64;
            }
        }
        p = next;
    }
    p
}

/// Component labels as the minimum vertex id of each component.
pub fn union_find(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    (0..n).map(|v| root(&mut parent, v)).collect()
}

/// Brute-force count of vertex triples that are pairwise adjacent.
pub fn brute_triangles(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut m = vec![vec![false; n]; n];
    for &(i, j) in edges {
        m[i][j] = true;
    }
    let mut c = 0;
    for i in 0..n {
        for j in i + 1..n {
            if !m[i][j] {
                continue;
            }
            for k in j + 1..n {
                if m[i][k] && m[j][k] {
                    c += 1;
                }
            }
        }
    }
    c
}

pub fn pattern_matrix(n: usize, edges: &[(usize, usize)]) -> SparseMatrix<i64> {
    let t: Vec<_> = edges.iter().map(|&(i, j)| (i, j, 1)).collect();
    SparseMatrix::build(&t, n, n, &Monoid::plus()).expect("valid edges")
}

/// The 8-vertex, 20-entry graph used for the counter checks, as
/// `(row, col)` of the mxv operand.
#[rustfmt::skip]
pub const RUNNING_EXAMPLE: [(usize, usize); 20] = [
    (2, 0), (4, 0), (4, 2), (5, 2), (7, 2), (2, 3), (5, 3), (7, 3),
    (4, 1), (4, 6), (6, 1), (6, 5), (6, 7), (7, 6), (0, 1), (1, 4),
    (1, 7), (2, 6), (3, 5), (5, 4),
];

/// One random masked matrix-vector product with every descriptor option
/// drawn at random.
#[derive(Clone, Debug)]
pub struct MxvCase<T> {
    pub sr: Sr,
    pub rows: usize,
    pub cols: usize,
    pub grid: Grid<T>,
    pub u: Vec<Option<T>>,
    pub dense_u: bool,
    /// Stored mask entries (values 0, 1 or 2) and whether the mask is dense.
    pub mask: Option<(Vec<Option<T>>, bool)>,
    pub complement: bool,
    pub vxm: bool,
    pub transpose: bool,
}

impl<T: Arith> MxvCase<T> {
    pub fn random(rng: &mut StdRng, sr: Sr, max_dim: usize) -> Self {
        let rows = rng.gen_range(1..=max_dim);
        let cols = rng.gen_range(1..=max_dim);
        let density = rng.gen_range(0.01..=0.5);
        let grid = random_grid(rng, rows, cols, density, sr.value_range());
        let vxm = rng.gen_bool(0.5);
        let transpose = rng.gen_bool(0.3);
        // input length is the column count of the effective matrix
        let by_rows = vxm != transpose;
        let (in_len, out_len) = if by_rows { (rows, cols) } else { (cols, rows) };
        let u_density = rng.gen_range(0.0..=1.0);
        let u = random_entries(rng, in_len, u_density, sr.value_range());
        let mask = rng.gen_bool(0.7).then(|| {
            let d = rng.gen_range(0.0..=1.0);
            (random_entries(rng, out_len, d, (0, 2)), rng.gen_bool(0.5))
        });
        Self {
            sr,
            rows,
            cols,
            grid,
            u,
            dense_u: rng.gen_bool(0.5),
            complement: mask.is_some() && rng.gen_bool(0.5),
            mask,
            vxm,
            transpose,
        }
    }

    pub fn out_len(&self) -> usize {
        if self.vxm != self.transpose {
            self.cols
        } else {
            self.rows
        }
    }

    pub fn allowed(&self) -> Option<Vec<bool>> {
        self.mask.as_ref().map(|(m, _)| {
            m.iter()
                .map(|v| v.is_some_and(|v| v != T::ZERO) != self.complement)
                .collect()
        })
    }

    pub fn expected(&self) -> Vec<T> {
        let allowed = self.allowed();
        let allowed = allowed.as_deref();
        if self.vxm != self.transpose {
            let t = transpose_grid(&self.grid, self.cols);
            dense_mxv(self.sr, &t, &self.u, allowed, self.vxm)
        } else {
            dense_mxv(self.sr, &self.grid, &self.u, allowed, self.vxm)
        }
    }

    pub fn mask_vector(&self) -> Option<Vector<T>> {
        self.mask.as_ref().map(|(m, dense)| {
            if *dense {
                dense_vector(m, T::ZERO)
            } else {
                sparse_vector(m)
            }
        })
    }

    pub fn descriptor(
        &self,
        policy: graphalg::DirectionPolicy,
        workers: usize,
        partition: graphalg::Partition,
    ) -> graphalg::Descriptor {
        let mut d = graphalg::Descriptor::new()
            .with_direction(policy)
            .with_workers(workers)
            .with_partition(partition);
        if self.complement {
            d.toggle(graphalg::Field::Mask);
        }
        if self.transpose {
            d.toggle(if self.vxm {
                graphalg::Field::Inp1
            } else {
                graphalg::Field::Inp0
            });
        }
        d
    }

    /// Result as a dense list with the identity at empty positions.
    pub fn compute(&self, desc: &graphalg::Descriptor) -> graphalg::Result<Vec<T>> {
        let sr = self.sr.semiring::<T>();
        let zero = sr.identity();
        let a = grid_matrix(&self.grid, self.cols);
        let u = if self.dense_u {
            dense_vector(&self.u, zero)
        } else {
            sparse_vector(&self.u)
        };
        let mask = self.mask_vector();
        let w = if self.vxm {
            graphalg::ops::vxm(mask.as_ref(), &sr, &u, &a, desc)?
        } else {
            graphalg::ops::mxv(mask.as_ref(), &sr, &a, &u, desc)?
        };
        if w.size() != self.out_len() {
            return Err(graphalg::GraphError::Contract("output size"));
        }
        Ok(w.to_vec(zero))
    }
}

pub fn all_close<T: Arith>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| T::close(*x, *y))
}
