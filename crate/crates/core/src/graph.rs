//! Undirected simple graphs and their integer matrices.
//!
//! Node labels are 1-based everywhere in the public API; matrices are indexed
//! 0-based, so label `i` lives at row/column `i - 1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::spectral::{Spectrum, DEFAULT_DEG_TOL};

/// Undirected graph without self-loops or multi-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    // canonical (min, max) pairs, sorted
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from 1-based label pairs. Duplicate edges (in either
    /// orientation) are merged.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        for &(u, v) in pairs {
            for label in [u, v] {
                if label == 0 || label > n {
                    return Err(Error::LabelOutOfRange { label, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edges, each as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut deg = vec![0i64; self.n];
        for &(u, v) in &self.edges {
            deg[u - 1] += 1;
            deg[v - 1] += 1;
        }
        deg
    }

    pub fn adjacency(&self) -> LabeledMatrix {
        let mut m = LabeledMatrix::zeros(self.n);
        for &(u, v) in &self.edges {
            m.set(u - 1, v - 1, 1);
            m.set(v - 1, u - 1, 1);
        }
        m
    }

    pub fn degree_matrix(&self) -> LabeledMatrix {
        let mut m = LabeledMatrix::zeros(self.n);
        for (i, d) in self.degrees().into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// `L = Z - A`, built in exact integer arithmetic.
    pub fn laplacian(&self) -> LabeledMatrix {
        let mut m = self.degree_matrix();
        for &(u, v) in &self.edges {
            m.set(u - 1, v - 1, -1);
            m.set(v - 1, u - 1, -1);
        }
        m
    }

    /// Walk Hamiltonian `H = -T = L` (unit hopping rate, ħ = 1).
    ///
    /// The transfer matrix `T = -L` is never materialized; classical
    /// propagation uses `exp(-tH)` directly.
    pub fn hamiltonian(&self) -> LabeledMatrix {
        self.laplacian()
    }

    /// Breadth-first reachability from node 1.
    pub fn is_connected(&self) -> bool {
        let mut nbrs = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            nbrs[u - 1].push(v - 1);
            nbrs[v - 1].push(u - 1);
        }
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &nbrs[x] {
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        reached == self.n
    }

    /// Parses the edge-list text format:
    ///
    /// ```text
    /// # comment
    /// n 3
    /// 1 2
    /// 2 3
    /// ```
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut n = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse_err = |msg: String| Error::Parse { line: line_no, msg };
            match n {
                None => {
                    if fields.len() != 2 || fields[0] != "n" {
                        return Err(parse_err(format!("expected header \"n <count>\", got {line:?}")));
                    }
                    let count = fields[1]
                        .parse::<usize>()
                        .map_err(|e| parse_err(format!("bad node count {:?}: {e}", fields[1])))?;
                    n = Some(count);
                }
                Some(_) => {
                    if fields.len() != 2 {
                        return Err(parse_err(format!("expected \"u v\", got {line:?}")));
                    }
                    let label = |s: &str| {
                        s.parse::<usize>()
                            .map_err(|e| parse_err(format!("bad node label {s:?}: {e}")))
                    };
                    pairs.push((label(fields[0])?, label(fields[1])?));
                }
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            msg: "missing \"n <count>\" header".into(),
        })?;
        Graph::from_edge_list(n, &pairs)
    }

    /// Serializes to the edge-list text format (LF line endings).
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Dense square integer matrix over graph nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl LabeledMatrix {
    fn zeros(n: usize) -> Self {
        LabeledMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    fn set(&mut self, i: usize, j: usize, value: i64) {
        self.entries[i * self.n + j] = value;
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.entries.chunks(self.n).map(|r| r.iter().sum()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j) as f64)
    }
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

/// Chain 1–2–…–n.
pub fn gen_path(n: usize) -> Result<Graph> {
    require(n >= 2, || format!("path needs n >= 2, got {n}"))?;
    let pairs: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    Graph::from_edge_list(n, &pairs)
}

/// Hub node 1 joined to 2..=n.
pub fn gen_star(n: usize) -> Result<Graph> {
    require(n >= 2, || format!("star needs n >= 2, got {n}"))?;
    let pairs: Vec<_> = (2..=n).map(|i| (1, i)).collect();
    Graph::from_edge_list(n, &pairs)
}

/// Path 1..n closed by the edge (1, n). For n = 2 this collapses to a single edge.
pub fn gen_cycle(n: usize) -> Result<Graph> {
    require(n >= 2, || format!("cycle needs n >= 2, got {n}"))?;
    let mut pairs: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    pairs.push((1, n));
    Graph::from_edge_list(n, &pairs)
}

/// Path 1..=path_len with `leaf_count` pendant nodes attached to node `path_len`.
pub fn gen_broom(path_len: usize, leaf_count: usize) -> Result<Graph> {
    require(path_len >= 1, || format!("broom needs path_len >= 1, got {path_len}"))?;
    require(path_len + leaf_count >= 2, || {
        "broom needs at least 2 nodes in total".to_string()
    })?;
    let n = path_len + leaf_count;
    let mut pairs: Vec<_> = (1..path_len).map(|i| (i, i + 1)).collect();
    pairs.extend((path_len + 1..=n).map(|leaf| (path_len, leaf)));
    Graph::from_edge_list(n, &pairs)
}

/// Star-like tree: one hub with a pendant path ("leg") of each given length.
///
/// The first leg is laid out as the path `1..=legs[0]` ending next to the hub,
/// which gets label `legs[0] + 1`; each further leg is numbered outward from
/// the hub. `gen_spider(&[p - 1, 1, …, 1])` therefore equals `gen_broom(p, k)`.
pub fn gen_spider(legs: &[usize]) -> Result<Graph> {
    require(!legs.is_empty(), || "spider needs at least one leg".to_string())?;
    require(legs.iter().all(|&l| l >= 1), || {
        format!("spider legs must have length >= 1, got {legs:?}")
    })?;
    let n = 1 + legs.iter().sum::<usize>();
    let hub = legs[0] + 1;
    let mut pairs: Vec<_> = (1..hub).map(|i| (i, i + 1)).collect();
    let mut next = hub + 1;
    for &len in &legs[1..] {
        let mut prev = hub;
        for _ in 0..len {
            pairs.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edge_list(n, &pairs)
}

/// The five ten-node, nine-edge networks whose eigenvalue-1 multiplicity
/// steps through 0, 2, 4, 6, 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::A, Family::B, Family::C, Family::D, Family::E];

    pub fn label(self) -> char {
        match self {
            Family::A => 'a',
            Family::B => 'b',
            Family::C => 'c',
            Family::D => 'd',
            Family::E => 'e',
        }
    }

    /// Multiplicity of Laplacian eigenvalue 1 that the member must have.
    pub fn expected_symmetry_degree(self) -> usize {
        match self {
            Family::A => 0,
            Family::B => 2,
            Family::C => 4,
            Family::D => 6,
            Family::E => 8,
        }
    }

    /// The topology, without spectral validation.
    pub fn topology(self) -> Graph {
        let g = match self {
            Family::A => gen_path(10),
            Family::B => gen_broom(7, 3),
            // broom(5, 5) has a five-fold eigenvalue 1; this spider has exactly four
            Family::C => gen_spider(&[2, 2, 1, 1, 1, 1, 1]),
            Family::D => gen_broom(3, 7),
            Family::E => gen_star(10),
        };
        g.expect("family parameters are valid")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Family::A),
            "b" => Ok(Family::B),
            "c" => Ok(Family::C),
            "d" => Ok(Family::D),
            "e" => Ok(Family::E),
            other => Err(Error::InvalidParameter(format!(
                "unknown family label {other:?} (expected a..e)"
            ))),
        }
    }
}

/// Generates a family member and checks its eigenvalue-1 multiplicity by eigensolve.
pub fn gen_family(family: Family) -> Result<Graph> {
    let g = family.topology();
    let spectrum = Spectrum::of_graph(&g, DEFAULT_DEG_TOL)?;
    let found = spectrum.symmetry_degree();
    if found != family.expected_symmetry_degree() {
        return Err(Error::InvalidSpectrum(format!(
            "network {family}: eigenvalue 1 has multiplicity {found}, expected {}",
            family.expected_symmetry_degree()
        )));
    }
    Ok(g)
}
