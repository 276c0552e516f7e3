//! Graphs, partitions, block matrices, and the microcanonical membership test.
//!
//! Everything here follows a single convention: graphs are **directed
//! multigraphs with self-loops**. A block pair `(a, b)` therefore exposes
//! `sizes[a] * sizes[b]` ordered node pairs (a diagonal block exposes
//! `sizes[a]^2`, including the `(i, i)` pairs). Undirected data can be
//! imported by writing both orientations of each edge.

use crate::error::{Error, Result};

/// Directed multigraph on nodes `0..n` with integer edge multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    w: Vec<u64>, // row-major n×n multiplicity matrix
}

impl MultiGraph {
    /// Empty graph (all multiplicities zero) on `n` nodes.
    pub fn new(n: usize) -> Self {
        MultiGraph {
            n,
            w: vec![0; n * n],
        }
    }

    /// Build from `(source, target, multiplicity)` triples. Multiplicities of
    /// repeated pairs accumulate.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let mut g = MultiGraph::new(n);
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::Precondition(format!(
                    "edge ({i}, {j}) out of range for n={n}"
                )));
            }
            g.w[i * n + j] += w;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Multiplicity of the directed edge `i -> j`.
    pub fn weight(&self, i: usize, j: usize) -> u64 {
        self.w[i * self.n + j]
    }

    /// Add `w` parallel edges `i -> j`.
    pub fn add_edge(&mut self, i: usize, j: usize, w: u64) {
        self.w[i * self.n + j] += w;
    }

    /// Total number of edges, counting multiplicity.
    pub fn total_edges(&self) -> u64 {
        self.w.iter().sum()
    }

    /// Row `i` of the multiplicity matrix (out-edges of `i`).
    pub fn row(&self, i: usize) -> &[u64] {
        &self.w[i * self.n..(i + 1) * self.n]
    }
}

/// Assignment of nodes to non-empty blocks `0..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    p: usize,
    sizes: Vec<usize>,
}

impl Partition {
    /// Validates that block ids are dense (`0..p`) and every block is non-empty.
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        if assignment.is_empty() {
            return Err(Error::InvalidPartition("no nodes".into()));
        }
        let p = assignment.iter().max().unwrap() + 1;
        let mut sizes = vec![0usize; p];
        for &b in &assignment {
            sizes[b] += 1;
        }
        if let Some(empty) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidPartition(format!("block {empty} is empty")));
        }
        Ok(Partition {
            assignment,
            p,
            sizes,
        })
    }

    /// Blocks laid out consecutively: the first `sizes[0]` nodes form block 0,
    /// the next `sizes[1]` form block 1, and so on. This is the node layout
    /// produced by the samplers.
    pub fn contiguous(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidPartition(
                "contiguous layout needs non-empty sizes".into(),
            ));
        }
        let mut assignment = Vec::with_capacity(sizes.iter().sum());
        for (b, &s) in sizes.iter().enumerate() {
            assignment.extend(std::iter::repeat_n(b, s));
        }
        Ok(Partition {
            assignment,
            p: sizes.len(),
            sizes: sizes.to_vec(),
        })
    }

    /// Every node in its own block.
    pub fn singletons(n: usize) -> Result<Self> {
        Partition::new((0..n).collect())
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn block_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }
}

/// `p×p` block-to-block edge counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatrix {
    p: usize,
    m: Vec<u64>, // row-major
}

impl BlockMatrix {
    pub fn zero(p: usize) -> Self {
        BlockMatrix { p, m: vec![0; p * p] }
    }

    /// Build from rows; all rows must have length `rows.len()`.
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let p = rows.len();
        let mut m = Vec::with_capacity(p * p);
        for row in rows {
            if row.len() != p {
                return Err(Error::Dimension {
                    what: "block matrix row",
                    expected: p,
                    got: row.len(),
                });
            }
            m.extend_from_slice(row);
        }
        Ok(BlockMatrix { p, m })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.m[a * self.p + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: u64) {
        self.m[a * self.p + b] = v;
    }

    pub fn add(&mut self, a: usize, b: usize, v: u64) {
        self.m[a * self.p + b] += v;
    }

    /// Sum of all entries.
    pub fn total(&self) -> u64 {
        self.m.iter().sum()
    }
}

/// A microcanonical model: block sizes plus exact block-to-block edge counts.
/// Denotes the ensemble of all multigraphs whose block matrix under a
/// size-compatible partition equals `m` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SbmModel {
    sizes: Vec<usize>,
    m: BlockMatrix,
}

impl SbmModel {
    pub fn new(sizes: Vec<usize>, m: BlockMatrix) -> Result<Self> {
        if sizes.len() != m.p() {
            return Err(Error::Dimension {
                what: "model sizes vs block matrix",
                expected: m.p(),
                got: sizes.len(),
            });
        }
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidModel("block sizes must be positive".into()));
        }
        Ok(SbmModel { sizes, m })
    }

    /// The model that reproduces `graph` under `partition`: sizes from the
    /// partition, counts from [`build_block_matrix`].
    pub fn of_graph(graph: &MultiGraph, partition: &Partition) -> Result<Self> {
        let m = build_block_matrix(graph, partition)?;
        SbmModel::new(partition.sizes().to_vec(), m)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn matrix(&self) -> &BlockMatrix {
        &self.m
    }

    pub fn p(&self) -> usize {
        self.sizes.len()
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }
}

/// Block sizes plus per-pair edge densities. Densities may exceed 1 for
/// multigraphs (ten parallel edges per pair is a density of 10).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityModel {
    sizes: Vec<usize>,
    d: Vec<f64>, // row-major p×p
}

impl DensityModel {
    pub fn new(sizes: Vec<usize>, rows: &[Vec<f64>]) -> Result<Self> {
        let p = sizes.len();
        if p == 0 || sizes.contains(&0) {
            return Err(Error::InvalidModel("block sizes must be positive".into()));
        }
        if rows.len() != p {
            return Err(Error::Dimension {
                what: "density matrix",
                expected: p,
                got: rows.len(),
            });
        }
        let mut d = Vec::with_capacity(p * p);
        for row in rows {
            if row.len() != p {
                return Err(Error::Dimension {
                    what: "density matrix row",
                    expected: p,
                    got: row.len(),
                });
            }
            for &x in row {
                if !x.is_finite() || x < 0.0 {
                    return Err(Error::InvalidModel(format!("negative density {x}")));
                }
            }
            d.extend_from_slice(row);
        }
        Ok(DensityModel { sizes, d })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn p(&self) -> usize {
        self.sizes.len()
    }

    pub fn density(&self, a: usize, b: usize) -> f64 {
        self.d[a * self.sizes.len() + b]
    }

    pub fn set_density(&mut self, a: usize, b: usize, v: f64) {
        self.d[a * self.sizes.len() + b] = v;
    }
}

/// Count edges between every ordered block pair: `M[a][b]` sums the
/// multiplicities of all edges whose source lies in block `a` and target in
/// block `b`. The entries always sum to the graph's total edge count.
pub fn build_block_matrix(graph: &MultiGraph, partition: &Partition) -> Result<BlockMatrix> {
    if partition.n() != graph.n() {
        return Err(Error::Dimension {
            what: "partition length vs graph nodes",
            expected: graph.n(),
            got: partition.n(),
        });
    }
    let mut m = BlockMatrix::zero(partition.p());
    for i in 0..graph.n() {
        let bi = partition.block_of(i);
        let row = graph.row(i);
        for (j, &w) in row.iter().enumerate() {
            if w > 0 {
                m.add(bi, partition.block_of(j), w);
            }
        }
    }
    Ok(m)
}

/// Does `graph` belong to the ensemble `model` describes under `partition`?
/// True iff the observed block matrix equals the model's counts entrywise.
pub fn is_member(graph: &MultiGraph, model: &SbmModel, partition: &Partition) -> Result<bool> {
    if partition.sizes() != model.sizes() {
        return Err(Error::Dimension {
            what: "partition sizes vs model sizes",
            expected: model.p(),
            got: partition.p(),
        });
    }
    Ok(build_block_matrix(graph, partition)? == model.m)
}

/// The adversarial partition: split the big block into `q` equal parts (by
/// ascending node index) and merge the `q` small blocks into one.
///
/// Requires one block of size `s` (identified by `big_block`) and exactly `q`
/// other blocks, each of size `s/q`. The result reuses ids `0..q-1` for the
/// split parts (in node order) and `q` for the merged block, so applying the
/// operation twice restores the original block-size multiset.
pub fn split_merge_invert(partition: &Partition, big_block: usize, q: usize) -> Result<Partition> {
    let p = partition.p();
    if big_block >= p {
        return Err(Error::Precondition(format!(
            "big_block {big_block} out of range for p={p}"
        )));
    }
    if q < 1 || p != q + 1 {
        return Err(Error::Precondition(format!(
            "need exactly q={q} small blocks, found {}",
            p - 1
        )));
    }
    let s = partition.sizes()[big_block];
    if !s.is_multiple_of(q) {
        return Err(Error::Precondition(format!(
            "big block size {s} not divisible by q={q}"
        )));
    }
    let part = s / q;
    for (b, &sz) in partition.sizes().iter().enumerate() {
        if b != big_block && sz != part {
            return Err(Error::Precondition(format!(
                "small block {b} has size {sz}, expected {part}"
            )));
        }
    }
    let mut seen_big = 0usize;
    let assignment = (0..partition.n())
        .map(|v| {
            if partition.block_of(v) == big_block {
                seen_big += 1;
                (seen_big - 1) / part // split parts: ids 0..q-1
            } else {
                q // merged block
            }
        })
        .collect();
    Partition::new(assignment)
}

/// Turn densities into exact counts: `M[a][b] = round(sizes[a]*sizes[b]*D[a][b])`
/// with ties rounded to even. Diagonal blocks use all `sizes[a]^2` ordered
/// pairs, self-loops included.
pub fn counts_from_density(model: &DensityModel) -> SbmModel {
    let p = model.p();
    let mut m = BlockMatrix::zero(p);
    for a in 0..p {
        for b in 0..p {
            let pairs = (model.sizes()[a] * model.sizes()[b]) as f64;
            m.set(a, b, (pairs * model.density(a, b)).round_ties_even() as u64);
        }
    }
    SbmModel::new(model.sizes().to_vec(), m).expect("density model invariants carry over")
}

// ---------------------------------------------------------------------------
// Text formats.
//
// Graphs: a header line `n <node-count>`, then one `i j w` line per pair with
// nonzero multiplicity. Partitions: a single line of n block ids. Both
// round-trip integers exactly.

pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line_no, header) = lines
        .next()
        .ok_or(Error::EmptyInput("graph file has no header"))?;
    let n: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", count] => count.parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("bad node count {count:?}"),
        })?,
        _ => {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected header `n <count>`, got {header:?}"),
            })
        }
    };
    let mut g = MultiGraph::new(n);
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected `i j w`, got {line:?}"),
            });
        }
        let parse = |s: &str| -> Result<u64> {
            s.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad integer {s:?}"),
            })
        };
        let (i, j, w) = (parse(fields[0])? as usize, parse(fields[1])? as usize, parse(fields[2])?);
        if i >= n || j >= n {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("edge ({i}, {j}) out of range for n={n}"),
            });
        }
        g.add_edge(i, j, w);
    }
    Ok(g)
}

pub fn format_graph(graph: &MultiGraph) -> String {
    let mut out = format!("n {}\n", graph.n());
    for i in 0..graph.n() {
        for (j, &w) in graph.row(i).iter().enumerate() {
            if w > 0 {
                out.push_str(&format!("{i} {j} {w}\n"));
            }
        }
    }
    out
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    let ids: Vec<usize> = text
        .split_whitespace()
        .map(|tok| {
            tok.parse().map_err(|_| Error::Parse {
                line: 1,
                msg: format!("bad block id {tok:?}"),
            })
        })
        .collect::<Result<_>>()?;
    Partition::new(ids)
}

pub fn format_partition(partition: &Partition) -> String {
    let ids: Vec<String> = partition.assignment().iter().map(|b| b.to_string()).collect();
    ids.join(" ") + "\n"
}
