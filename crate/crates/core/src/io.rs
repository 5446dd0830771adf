//! Graph input: MatrixMarket files, cleanup, R-MAT generation and weights.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{Monoid, Scalar};
use crate::error::{GraphError, Result};
use crate::matrix::SparseMatrix;
use crate::rng::GraphRng;

/// Directed edges over vertices `0..n`, optionally weighted. Unweighted
/// edges have weight 1.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub weights: Option<Vec<f64>>,
}

impl EdgeList {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        Self {
            n,
            edges,
            weights: None,
        }
    }

    pub fn weighted(n: usize, edges: Vec<(usize, usize)>, weights: Vec<f64>) -> Self {
        assert_eq!(edges.len(), weights.len());
        Self {
            n,
            edges,
            weights: Some(weights),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn weight(&self, k: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[k])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Field {
    Pattern,
    Integer,
    Real,
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<EdgeList> {
    parse_matrix_market(BufReader::new(File::open(path)?))
}

/// Parses a coordinate-format MatrixMarket stream. Indices become 0-based,
/// symmetric files are expanded to both directions, and the vertex count is
/// `max(rows, cols)`.
pub fn parse_matrix_market<R: BufRead>(reader: R) -> Result<EdgeList> {
    let mut lines = reader.lines().enumerate().map(|(k, l)| (k + 1, l));

    let (lineno, banner) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let banner = banner?;
    let words: Vec<String> = banner.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(parse_err(
            lineno,
            "expected `%%MatrixMarket matrix coordinate <field> <symmetry>`",
        ));
    }
    if words[2] != "coordinate" {
        return Err(parse_err(lineno, format!("unsupported format `{}`", words[2])));
    }
    let field = match words[3].as_str() {
        "pattern" => Field::Pattern,
        "integer" => Field::Integer,
        "real" | "double" => Field::Real,
        other => return Err(parse_err(lineno, format!("unsupported field `{other}`"))),
    };
    let symmetric = match words[4].as_str() {
        "general" => false,
        "symmetric" => true,
        other => return Err(parse_err(lineno, format!("unsupported symmetry `{other}`"))),
    };

    let mut size = None;
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let mut declared = 0usize;
    let mut read = 0usize;
    let mut last_line = lineno;
    for (lineno, line) in lines {
        let line = line?;
        last_line = lineno;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let tok: Vec<&str> = t.split_whitespace().collect();
        let Some((nrows, ncols)) = size else {
            if tok.len() != 3 {
                return Err(parse_err(lineno, "size line must be `rows cols entries`"));
            }
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| parse_err(lineno, format!("bad count `{s}`")))
            };
            size = Some((num(tok[0])?, num(tok[1])?));
            declared = num(tok[2])?;
            edges.reserve(declared * if symmetric { 2 } else { 1 });
            continue;
        };
        let want = if field == Field::Pattern { 2 } else { 3 };
        if tok.len() != want {
            return Err(parse_err(
                lineno,
                format!("expected {want} fields, found {}", tok.len()),
            ));
        }
        let index = |s: &str, bound: usize| -> Result<usize> {
            let v = s
                .parse::<usize>()
                .map_err(|_| parse_err(lineno, format!("bad index `{s}`")))?;
            if v == 0 || v > bound {
                return Err(parse_err(lineno, format!("index {v} outside 1..={bound}")));
            }
            Ok(v - 1)
        };
        let i = index(tok[0], nrows)?;
        let j = index(tok[1], ncols)?;
        let w = match field {
            Field::Pattern => 1.0,
            Field::Integer => tok[2]
                .parse::<i64>()
                .map_err(|_| parse_err(lineno, format!("bad integer `{}`", tok[2])))?
                as f64,
            Field::Real => tok[2]
                .parse::<f64>()
                .map_err(|_| parse_err(lineno, format!("bad real `{}`", tok[2])))?,
        };
        read += 1;
        if read > declared {
            return Err(parse_err(lineno, format!("more than the declared {declared} entries")));
        }
        edges.push((i, j));
        weights.push(w);
        if symmetric && i != j {
            edges.push((j, i));
            weights.push(w);
        }
    }
    let Some((nrows, ncols)) = size else {
        return Err(parse_err(last_line, "missing size line"));
    };
    if read != declared {
        return Err(parse_err(
            last_line,
            format!("declared {declared} entries, found {read}"),
        ));
    }
    let n = nrows.max(ncols);
    Ok(match field {
        Field::Pattern => EdgeList::new(n, edges),
        _ => EdgeList::weighted(n, edges, weights),
    })
}

/// Writes `edges` as a general coordinate file (`pattern` when unweighted,
/// `real` otherwise).
pub fn write_matrix_market<W: Write>(mut out: W, edges: &EdgeList) -> Result<()> {
    let field = if edges.weights.is_some() { "real" } else { "pattern" };
    writeln!(out, "%%MatrixMarket matrix coordinate {field} general")?;
    writeln!(out, "{} {} {}", edges.n, edges.n, edges.len())?;
    for (k, &(i, j)) in edges.edges.iter().enumerate() {
        match &edges.weights {
            Some(w) => writeln!(out, "{} {} {}", i + 1, j + 1, w[k])?,
            None => writeln!(out, "{} {}", i + 1, j + 1)?,
        }
    }
    Ok(())
}

pub fn save_matrix_market(path: impl AsRef<Path>, edges: &EdgeList) -> Result<()> {
    let mut f = std::io::BufWriter::new(File::create(path)?);
    write_matrix_market(&mut f, edges)?;
    f.flush()?;
    Ok(())
}

/// What [`preprocess_counted`] removed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreprocessStats {
    /// Entries in the input list.
    pub input_entries: usize,
    pub self_loops: usize,
    /// Directed entries dropped as repeats, counted after adding reverses.
    pub duplicates: usize,
}

/// Drops self-loops, optionally adds every reverse edge, removes duplicates
/// (keeping the smallest weight) and sorts by `(src, dst)`.
pub fn preprocess(edges: &EdgeList, make_undirected: bool) -> EdgeList {
    preprocess_counted(edges, make_undirected).0
}

pub fn preprocess_counted(edges: &EdgeList, make_undirected: bool) -> (EdgeList, PreprocessStats) {
    let mut stats = PreprocessStats {
        input_entries: edges.len(),
        ..Default::default()
    };
    let mut all: Vec<(usize, usize, f64)> = Vec::with_capacity(edges.len() * if make_undirected { 2 } else { 1 });
    for (k, &(i, j)) in edges.edges.iter().enumerate() {
        if i == j {
            stats.self_loops += 1;
            continue;
        }
        let w = edges.weight(k);
        all.push((i, j, w));
        if make_undirected {
            all.push((j, i, w));
        }
    }
    all.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)).then(x.2.total_cmp(&y.2)));
    let before = all.len();
    all.dedup_by(|later, first| (later.0, later.1) == (first.0, first.1));
    stats.duplicates = before - all.len();
    let pairs = all.iter().map(|&(i, j, _)| (i, j)).collect();
    let out = match edges.weights {
        Some(_) => EdgeList::weighted(edges.n, pairs, all.iter().map(|e| e.2).collect()),
        None => EdgeList::new(edges.n, pairs),
    };
    (out, stats)
}

/// Gives every undirected edge `{i, j}` one integer weight drawn uniformly
/// from `low..=high`, shared by both directions. Draws happen in edge order
/// at the first occurrence of each pair.
pub fn assign_weights(edges: &EdgeList, low: i64, high: i64, seed: u64) -> Result<EdgeList> {
    if low > high {
        return Err(GraphError::InvalidInput(format!(
            "weight range {low}..={high} is empty"
        )));
    }
    let mut rng = GraphRng::new(seed);
    let mut drawn: HashMap<(usize, usize), f64> = HashMap::with_capacity(edges.len());
    let weights = edges
        .edges
        .iter()
        .map(|&(i, j)| {
            *drawn
                .entry((i.min(j), i.max(j)))
                .or_insert_with(|| rng.uniform_int(low, high) as f64)
        })
        .collect();
    Ok(EdgeList::weighted(edges.n, edges.edges.clone(), weights))
}

/// Largest number of R-MAT samples [`generate_rmat`] will allocate.
pub const MAX_RMAT_SAMPLES: u64 = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RmatParams {
    pub scale: u32,
    pub edge_factor: u64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub seed: u64,
}

impl RmatParams {
    pub fn new(scale: u32, edge_factor: u64, seed: u64) -> Self {
        Self {
            scale,
            edge_factor,
            a: 0.57,
            b: 0.19,
            c: 0.19,
            d: 0.05,
            seed,
        }
    }

    pub fn with_probabilities(mut self, a: f64, b: f64, c: f64, d: f64) -> Self {
        (self.a, self.b, self.c, self.d) = (a, b, c, d);
        self
    }

    pub fn samples(&self) -> Option<u64> {
        1u64.checked_shl(self.scale)?.checked_mul(self.edge_factor)
    }
}

/// Samples `edge_factor · 2^scale` directed pairs by recursive quadrant
/// descent: at each of `scale` levels one uniform draw `r` picks the
/// quadrant (`r < a` top-left, `< a+b` top-right, `< a+b+c` bottom-left,
/// else bottom-right), setting one row bit and one column bit from the most
/// significant down. Duplicates and self-loops are kept; see [`preprocess`].
pub fn generate_rmat(params: &RmatParams) -> Result<EdgeList> {
    let RmatParams { scale, a, b, c, d, .. } = *params;
    if [a, b, c, d].iter().any(|p| !(0.0..=1.0).contains(p)) || ((a + b + c + d) - 1.0).abs() > 1e-9 {
        return Err(GraphError::InvalidInput(format!(
            "quadrant probabilities {a}, {b}, {c}, {d} must be in [0, 1] and sum to 1"
        )));
    }
    let samples = params
        .samples()
        .filter(|&s| s <= MAX_RMAT_SAMPLES && scale < usize::BITS)
        .ok_or_else(|| {
            GraphError::Resource(format!(
                "scale {scale} with edge factor {} exceeds {MAX_RMAT_SAMPLES} samples",
                params.edge_factor
            ))
        })?;
    let mut rng = GraphRng::new(params.seed);
    let (ab, abc) = (a + b, a + b + c);
    let edges = (0..samples)
        .map(|_| {
            let (mut i, mut j) = (0usize, 0usize);
            for level in (0..scale).rev() {
                let r = rng.uniform_f64();
                let (di, dj) = if r < a {
                    (0, 0)
                } else if r < ab {
                    (0, 1)
                } else if r < abc {
                    (1, 0)
                } else {
                    (1, 1)
                };
                i |= di << level;
                j |= dj << level;
            }
            (i, j)
        })
        .collect();
    Ok(EdgeList::new(1usize << scale, edges))
}

/// Builds the adjacency matrix (CSR and CSC). Weighted duplicates keep the
/// minimum; unweighted entries are 1 and duplicates add up.
pub fn edges_to_matrix<T: Scalar>(edges: &EdgeList) -> Result<SparseMatrix<T>> {
    let tuples: Vec<(usize, usize, T)> = edges
        .edges
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| (i, j, T::from_f64(edges.weight(k))))
        .collect();
    let dedup = if edges.weights.is_some() {
        Monoid::minimum()
    } else {
        Monoid::plus()
    };
    SparseMatrix::build(&tuples, edges.n, edges.n, &dedup)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<EdgeList> {
        parse_matrix_market(s.as_bytes())
    }

    #[test]
    fn pattern_file() {
        let e = parse("%%MatrixMarket matrix coordinate pattern general\n% c\n3 3 2\n1 2\n3 1\n").unwrap();
        assert_eq!(e.n, 3);
        assert_eq!(e.edges, vec![(0, 1), (2, 0)]);
        assert_eq!(e.weight(0), 1.0);
    }

    #[test]
    fn symmetric_expansion() {
        let e = parse("%%MatrixMarket matrix coordinate integer symmetric\n3 3 2\n2 1 7\n3 3 1\n").unwrap();
        assert_eq!(e.edges, vec![(1, 0), (0, 1), (2, 2)]);
        assert_eq!(e.weights, Some(vec![7.0, 7.0, 1.0]));
    }

    #[test]
    fn rejects_bad_input() {
        let err = |s: &str| match parse(s) {
            Err(GraphError::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(err("%%MatrixMarket matrix array real general\n2 2\n"), 1);
        assert_eq!(err("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n3 1\n"), 3);
        assert_eq!(err("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 x\n"), 3);
        assert_eq!(err("%%MatrixMarket matrix coordinate pattern general\n2 2 2\n1 1\n"), 3);
        assert_eq!(err("%%MatrixMarket matrix coordinate pattern skew-symmetric\n"), 1);
        assert_eq!(err(""), 1);
    }

    #[test]
    fn write_then_read() {
        let e = EdgeList::weighted(4, vec![(0, 1), (3, 2)], vec![2.5, 64.0]);
        let mut buf = Vec::new();
        write_matrix_market(&mut buf, &e).unwrap();
        assert_eq!(parse_matrix_market(&buf[..]).unwrap(), e);
        let p = EdgeList::new(2, vec![(1, 0)]);
        let mut buf = Vec::new();
        write_matrix_market(&mut buf, &p).unwrap();
        assert_eq!(parse_matrix_market(&buf[..]).unwrap(), p);
    }

    #[test]
    fn preprocess_rules() {
        let e = EdgeList::new(2, vec![(0, 0), (0, 1), (0, 1)]);
        let p = preprocess(&e, true);
        assert_eq!(p.edges, vec![(0, 1), (1, 0)]);
        assert_eq!(preprocess(&p, true), p);
        let w = EdgeList::weighted(3, vec![(0, 1), (0, 1), (1, 2)], vec![5.0, 3.0, 1.0]);
        let p = preprocess(&w, false);
        assert_eq!(p.edges, vec![(0, 1), (1, 2)]);
        assert_eq!(p.weights, Some(vec![3.0, 1.0]));
    }

    #[test]
    fn weights_are_symmetric_and_reproducible() {
        let e = preprocess(&EdgeList::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]), true);
        let w1 = assign_weights(&e, 1, 64, 9).unwrap();
        let w2 = assign_weights(&e, 1, 64, 9).unwrap();
        assert_eq!(w1, w2);
        let ws = w1.weights.as_ref().unwrap();
        let lookup: HashMap<_, _> = w1.edges.iter().copied().zip(ws.iter().copied()).collect();
        for (&(i, j), &w) in &lookup {
            assert_eq!(lookup[&(j, i)], w);
            assert!((1.0..=64.0).contains(&w));
        }
        assert!(assign_weights(&e, 2, 1, 0).is_err());
    }

    #[test]
    fn rmat_counts_and_degenerate_quadrant() {
        let e = generate_rmat(&RmatParams::new(4, 16, 1)).unwrap();
        assert_eq!(e.len(), 256);
        assert_eq!(e.n, 16);
        assert!(e.edges.iter().all(|&(i, j)| i < 16 && j < 16));
        let e = generate_rmat(&RmatParams::new(4, 2, 1).with_probabilities(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert!(e.edges.iter().all(|&p| p == (0, 0)));
        assert_eq!(
            generate_rmat(&RmatParams::new(6, 4, 5)).unwrap(),
            generate_rmat(&RmatParams::new(6, 4, 5)).unwrap()
        );
    }

    #[test]
    fn rmat_errors() {
        assert!(matches!(
            generate_rmat(&RmatParams::new(40, 16, 0)),
            Err(GraphError::Resource(_))
        ));
        assert!(matches!(
            generate_rmat(&RmatParams::new(4, 16, 0).with_probabilities(0.5, 0.5, 0.5, 0.0)),
            Err(GraphError::InvalidInput(_))
        ));
    }

    #[test]
    fn matrix_from_edges() {
        let path = EdgeList::new(3, vec![(0, 1), (1, 0), (1, 2), (2, 1)]);
        let a = edges_to_matrix::<i64>(&path).unwrap();
        assert_eq!(a.nvals(), 4);
        assert!(a.is_symmetric());
        let empty = edges_to_matrix::<f64>(&EdgeList::new(2, vec![])).unwrap();
        assert_eq!(empty.nvals(), 0);
        let w = EdgeList::weighted(2, vec![(0, 1), (0, 1)], vec![4.0, 2.0]);
        assert_eq!(edges_to_matrix::<f64>(&w).unwrap().extract_tuples(), vec![(0, 1, 2.0)]);
    }
}
