use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Sparse integer matrix stored column-major: each column is a list of
/// `(row, value)` pairs sorted by row, with no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

/// Serialized form: shape plus `(row, col, value)` triples, values as
/// decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseTriples {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triples(n, n, (0..n).map(|i| (i, i, BigInt::from(1))))
    }

    /// Builds from `(row, col, value)` triples; repeated positions are summed.
    ///
    /// Panics if a triple lies outside the shape.
    pub fn from_triples(
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (r, c, v) in triples {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            columns[c].push((r, v));
        }
        Self::from_columns(rows, columns)
    }

    /// Builds from unsorted columns; merges duplicate rows and drops zeros.
    pub fn from_columns(rows: usize, mut columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        for col in &mut columns {
            col.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(col.len());
            for (r, v) in col.drain(..) {
                debug_assert!(r < rows);
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            *col = merged;
        }
        Self {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn from_dense(rows: &[Vec<BigInt>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        Self::from_triples(
            nrows,
            ncols,
            rows.iter().enumerate().flat_map(|(r, row)| {
                assert_eq!(row.len(), ncols, "ragged dense matrix");
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(c, v)| (r, c, v.clone()))
            }),
        )
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let mut m = Self::from_dense(&dense);
        if rows.is_empty() {
            m.rows = 0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[Vec<(usize, BigInt)>] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.columns[c]
            .binary_search_by_key(&r, |e| e.0)
            .map(|i| self.columns[c][i].1.clone())
            .unwrap_or_default()
    }

    /// `(row, col, value)` triples in column-major order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in self.triples() {
            d[r][c] = v.clone();
        }
        d
    }

    pub fn transpose(&self) -> Self {
        Self::from_triples(
            self.cols,
            self.rows,
            self.triples().map(|(r, c, v)| (c, r, v.clone())),
        )
    }

    /// The product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let columns = rhs
            .columns
            .iter()
            .map(|rcol| {
                let mut acc: Vec<(usize, BigInt)> = Vec::new();
                for (k, b) in rcol {
                    for (r, a) in &self.columns[*k] {
                        acc.push((*r, a * b));
                    }
                }
                acc
            })
            .collect();
        Self::from_columns(self.rows, columns)
    }

    pub fn to_triples(&self) -> SparseTriples {
        SparseTriples {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .triples()
                .map(|(r, c, v)| (r, c, v.to_string()))
                .collect(),
        }
    }
}
