//! Quasi-cyclic LDPC codes: exponent matrices, lifting, Tanner graphs and
//! structural audits.

mod audit;
mod cycles;
mod ets_search;

pub use audit::{detect_shared_8cycles, detect_t, detect_t_in, pattern_tanner, SharedPattern, SharedWitness, TAudit, TWitness};
pub use cycles::{enumerate_cycles, girth_bfs, girth_qc, girth_qc_walks, CycleReport, CycleWitness, MAX_CYCLE_LEN};
pub use ets_search::{ets_search, ets_search_in_code, EtsRecord, EtsSearchReport, MAX_ETS_SEARCH};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// γ×η array of circulant shifts; `None` is the all-zero block.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct ExponentMatrix {
    pub p: usize,
    pub entries: Vec<Vec<Option<usize>>>,
}

impl fmt::Debug for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExponentMatrix({}x{}, p = {})", self.rows(), self.cols(), self.p)
    }
}

impl ExponentMatrix {
    pub fn new(p: usize, entries: Vec<Vec<Option<usize>>>) -> Result<Self> {
        if p < 1 {
            return Err(Error::Parameter("lifting degree must be positive".into()));
        }
        let cols = entries.first().map_or(0, Vec::len);
        if entries.is_empty() || cols == 0 || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Parameter("exponent matrix must be a non-empty rectangle".into()));
        }
        if let Some(s) = entries.iter().flatten().flatten().find(|&&s| s >= p) {
            return Err(Error::Parameter(format!("shift {s} out of range for p = {p}")));
        }
        Ok(ExponentMatrix { p, entries })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        self.entries[i][j]
    }

    pub fn fully_connected(&self) -> bool {
        self.entries.iter().flatten().all(Option::is_some)
    }

    /// First line `gamma eta p`, then γ rows of η entries (`inf` for the zero block).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(0, "empty exponent matrix"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(hl, format!("bad header token `{t}`"))))
            .collect::<Result<_>>()?;
        let [gamma, eta, p] = dims[..] else {
            return Err(Error::parse(hl, "expected `gamma eta p`"));
        };
        let mut entries = Vec::with_capacity(gamma);
        for (ln, line) in lines {
            let row: Vec<Option<usize>> = line
                .split_whitespace()
                .map(|t| match t {
                    "inf" | "INF" | "-" | "-1" => Ok(None),
                    _ => match t.parse::<usize>() {
                        Ok(s) if s < p => Ok(Some(s)),
                        Ok(s) => Err(Error::parse(ln, format!("shift {s} out of range for p = {p}"))),
                        Err(_) => Err(Error::parse(ln, format!("bad entry `{t}`"))),
                    },
                })
                .collect::<Result<_>>()?;
            if row.len() != eta {
                return Err(Error::parse(ln, format!("expected {eta} entries, found {}", row.len())));
            }
            entries.push(row);
        }
        if entries.len() != gamma {
            return Err(Error::parse(hl, format!("expected {gamma} rows, found {}", entries.len())));
        }
        ExponentMatrix::new(p, entries)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows(), self.cols(), self.p);
        for row in &self.entries {
            let toks: Vec<String> = row.iter().map(|e| e.map_or("inf".into(), |x| x.to_string())).collect();
            s.push_str(&toks.join(" "));
            s.push('\n');
        }
        s
    }

    /// Binary parity-check matrix: block (i, j) has a one at (r, (r + s) mod p).
    pub fn lift(&self) -> SparseMatrix {
        let p = self.p;
        let mut rows = vec![Vec::new(); self.rows() * p];
        for (i, erow) in self.entries.iter().enumerate() {
            for (j, e) in erow.iter().enumerate() {
                if let Some(s) = e {
                    for r in 0..p {
                        rows[i * p + r].push(j * p + (r + s) % p);
                    }
                }
            }
        }
        for r in &mut rows {
            r.sort_unstable();
        }
        SparseMatrix { rows: self.rows() * p, cols: self.cols() * p, row_entries: rows }
    }

    pub fn tanner(&self) -> TannerGraph {
        let mut t = TannerGraph::from_matrix(&self.lift());
        t.qc = Some(QcShape { p: self.p, row_blocks: self.rows(), col_blocks: self.cols() });
        t
    }
}

const C1_TEXT: &str = include_str!("../../data/c1.txt");
const C2_TEXT: &str = include_str!("../../data/c2.txt");

/// Built-in codes by name (`C1`, `C2`, or `H1`/`H2` for their exponent matrices).
pub fn builtin(name: &str) -> Result<ExponentMatrix> {
    match name.to_ascii_uppercase().as_str() {
        "C1" | "H1" => ExponentMatrix::parse(C1_TEXT),
        "C2" | "H2" => ExponentMatrix::parse(C2_TEXT),
        _ => Err(Error::Parameter(format!("no built-in code `{name}`"))),
    }
}

/// Sparse binary matrix stored by rows (sorted column indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub row_entries: Vec<Vec<usize>>,
}

impl SparseMatrix {
    pub fn from_dense(dense: &[Vec<u8>]) -> Result<Self> {
        let cols = dense.first().map_or(0, Vec::len);
        if dense.iter().any(|r| r.len() != cols) {
            return Err(Error::Parameter("ragged matrix".into()));
        }
        let row_entries = dense
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &x)| x & 1 == 1).map(|(j, _)| j).collect())
            .collect();
        Ok(SparseMatrix { rows: dense.len(), cols, row_entries })
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut d = vec![vec![0u8; self.cols]; self.rows];
        for (i, r) in self.row_entries.iter().enumerate() {
            for &j in r {
                d[i][j] = 1;
            }
        }
        d
    }

    /// Rank over GF(2).
    pub fn rank_gf2(&self) -> usize {
        let words = self.cols.div_ceil(64);
        let mut m: Vec<Vec<u64>> = self
            .row_entries
            .iter()
            .map(|r| {
                let mut v = vec![0u64; words];
                for &j in r {
                    v[j / 64] ^= 1 << (j % 64);
                }
                v
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let (w, b) = (col / 64, 1u64 << (col % 64));
            let Some(piv) = (rank..m.len()).find(|&r| m[r][w] & b != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let pivot = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && row[w] & b != 0 {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Writes MacKay's alist format.
    pub fn to_alist(&self) -> String {
        let mut cols = vec![Vec::new(); self.cols];
        for (i, r) in self.row_entries.iter().enumerate() {
            for &j in r {
                cols[j].push(i);
            }
        }
        let max_c = cols.iter().map(Vec::len).max().unwrap_or(0);
        let max_r = self.row_entries.iter().map(Vec::len).max().unwrap_or(0);
        let join = |v: Vec<String>| v.join(" ");
        let mut out = vec![
            format!("{} {}", self.cols, self.rows),
            format!("{max_c} {max_r}"),
            join(cols.iter().map(|c| c.len().to_string()).collect()),
            join(self.row_entries.iter().map(|r| r.len().to_string()).collect()),
        ];
        let padded = |list: &Vec<usize>, width: usize| {
            let mut v: Vec<String> = list.iter().map(|x| (x + 1).to_string()).collect();
            v.resize(width, "0".into());
            join(v)
        };
        out.extend(cols.iter().map(|c| padded(c, max_c)));
        out.extend(self.row_entries.iter().map(|r| padded(r, max_r)));
        out.join("\n") + "\n"
    }

    pub fn from_alist(text: &str) -> Result<Self> {
        let mut toks = text
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::parse(0, format!("bad alist token `{t}`"))));
        let mut next = || toks.next().unwrap_or_else(|| Err(Error::parse(0, "truncated alist")));
        let (n, m) = (next()?, next()?);
        let (max_c, max_r) = (next()?, next()?);
        let col_w: Vec<usize> = (0..n).map(|_| next()).collect::<Result<_>>()?;
        let row_w: Vec<usize> = (0..m).map(|_| next()).collect::<Result<_>>()?;
        let mut col_lists = Vec::with_capacity(n);
        for &w in &col_w {
            let mut list = Vec::new();
            for k in 0..max_c {
                let x = next()?;
                if k < w {
                    if x == 0 || x > m {
                        return Err(Error::parse(0, format!("row index {x} out of range")));
                    }
                    list.push(x - 1);
                }
            }
            col_lists.push(list);
        }
        let mut rows = vec![Vec::new(); m];
        for (j, list) in col_lists.iter().enumerate() {
            for &i in list {
                rows[i].push(j);
            }
        }
        for (i, &w) in row_w.iter().enumerate() {
            let mut list = Vec::new();
            for k in 0..max_r {
                let x = next()?;
                if k < w {
                    if x == 0 || x > n {
                        return Err(Error::parse(0, format!("column index {x} out of range")));
                    }
                    list.push(x - 1);
                }
            }
            list.sort_unstable();
            rows[i].sort_unstable();
            if list != rows[i] {
                return Err(Error::parse(0, format!("row {} disagrees with the column lists", i + 1)));
            }
        }
        Ok(SparseMatrix { rows: m, cols: n, row_entries: rows })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QcShape {
    pub p: usize,
    pub row_blocks: usize,
    pub col_blocks: usize,
}

/// Bipartite variable/check graph. Variable `j·p + r` is position `r` of
/// block column `j` for lifted codes.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    pub var_adj: Vec<Vec<usize>>,
    pub chk_adj: Vec<Vec<usize>>,
    pub qc: Option<QcShape>,
}

impl TannerGraph {
    pub fn from_matrix(h: &SparseMatrix) -> Self {
        let mut var_adj = vec![Vec::new(); h.cols];
        for (i, r) in h.row_entries.iter().enumerate() {
            for &j in r {
                var_adj[j].push(i);
            }
        }
        TannerGraph { var_adj, chk_adj: h.row_entries.clone(), qc: None }
    }

    pub fn to_matrix(&self) -> SparseMatrix {
        SparseMatrix { rows: self.chk_adj.len(), cols: self.var_adj.len(), row_entries: self.chk_adj.clone() }
    }

    pub fn num_vars(&self) -> usize {
        self.var_adj.len()
    }

    pub fn num_checks(&self) -> usize {
        self.chk_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.var_adj.iter().map(Vec::len).sum()
    }

    /// Common degree of all variable nodes, if regular.
    pub fn variable_degree(&self) -> Option<usize> {
        let d = self.var_adj.first()?.len();
        self.var_adj.iter().all(|a| a.len() == d).then_some(d)
    }

    /// Variables at offset 0 of each block column (all variables otherwise):
    /// one per orbit of the shift automorphism.
    pub fn orbit_roots(&self) -> Vec<usize> {
        match self.qc {
            Some(q) => (0..q.col_blocks).map(|j| j * q.p).collect(),
            None => (0..self.num_vars()).collect(),
        }
    }

    /// Image of a variable under `k` applications of the shift.
    pub fn shift_var(&self, v: usize, k: usize) -> usize {
        match self.qc {
            Some(q) => (v / q.p) * q.p + (v % q.p + k) % q.p,
            None => v,
        }
    }

    pub fn shift_check(&self, c: usize, k: usize) -> usize {
        match self.qc {
            Some(q) => (c / q.p) * q.p + (c % q.p + k) % q.p,
            None => c,
        }
    }

    /// Check joining two variables, if any (the smallest when several).
    pub fn common_check(&self, u: usize, v: usize) -> Option<usize> {
        self.var_adj[u].iter().copied().find(|c| self.var_adj[v].contains(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_lift_to_expected_shapes() {
        let h1 = builtin("C1").unwrap();
        assert_eq!((h1.rows(), h1.cols(), h1.p), (4, 8, 35));
        assert_eq!(h1.entries[0], [4, 8, 6, 19, 32, 22, 10, 3].map(Some).to_vec());
        let m = h1.lift();
        assert_eq!((m.rows, m.cols), (140, 280));
        let t = h1.tanner();
        assert_eq!(t.variable_degree(), Some(4));
        assert!(t.chk_adj.iter().all(|c| c.len() == 8));
        let h2 = builtin("C2").unwrap();
        let t2 = h2.tanner();
        assert_eq!((t2.num_checks(), t2.num_vars()), (308, 539));
        assert_eq!(t2.variable_degree(), Some(4));
    }

    #[test]
    fn single_zero_block_is_identity() {
        let e = ExponentMatrix::parse("1 1 3\n0\n").unwrap();
        assert_eq!(e.lift().to_dense(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let e = ExponentMatrix::parse("1 1 3\n1\n").unwrap();
        assert_eq!(e.lift().to_dense()[0], vec![0, 1, 0]);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(ExponentMatrix::parse("1 2 3\n0 3\n").is_err());
        assert!(ExponentMatrix::parse("2 2 3\n0 1\n").is_err());
        assert!(ExponentMatrix::parse("1 2 3\n0 x\n").is_err());
        let e = ExponentMatrix::parse("2 2 5\n0 inf\n1 2\n").unwrap();
        assert!(!e.fully_connected());
        assert_eq!(ExponentMatrix::parse(&e.to_text()).unwrap(), e);
        let t = e.tanner();
        assert_eq!(t.var_adj[0].len(), 2);
        assert_eq!(t.var_adj[5].len(), 1);
    }

    #[test]
    fn round_trips() {
        let e = builtin("C1").unwrap();
        let h = e.lift();
        assert_eq!(e.tanner().to_matrix(), h);
        assert_eq!(SparseMatrix::from_alist(&h.to_alist()).unwrap(), h);
        assert_eq!(SparseMatrix::from_dense(&h.to_dense()).unwrap(), h);
    }

    #[test]
    fn gf2_rank() {
        let h = SparseMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(h.rank_gf2(), 2);
        // every column block has weight γ, so rows of each block row sum to all-ones
        let r = builtin("C1").unwrap().lift().rank_gf2();
        assert!(r <= 140 - 3 && r > 100, "{r}");
    }
}
