use std::fmt;

use crate::error::{Error, Result};
use crate::rings::{parse_poly, Poly, Ring};

/// Dense matrix over one of the supported rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl RingMatrix {
    pub fn new(ring: &Ring, rows: Vec<Vec<Poly>>) -> Result<RingMatrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::usage("ragged matrix rows"));
            }
            for e in row {
                ring.check_same(e.ring())?;
                entries.push(e);
            }
        }
        Ok(RingMatrix { ring: ring.clone(), rows: nrows, cols: ncols, entries })
    }

    /// Parses a grid of polynomial strings.
    pub fn parse<S: AsRef<str>>(ring: &Ring, rows: &[Vec<S>]) -> Result<RingMatrix> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(ring, s.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        RingMatrix::new(ring, parsed)
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> RingMatrix {
        RingMatrix { ring: ring.clone(), rows, cols, entries: vec![Poly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> RingMatrix {
        let mut m = RingMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(ring));
        }
        m
    }

    pub fn diagonal(ring: &Ring, entries: &[Poly]) -> RingMatrix {
        let mut m = RingMatrix::zeros(ring, entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Block-diagonal sum.
    pub fn block_diag(a: &RingMatrix, b: &RingMatrix) -> Result<RingMatrix> {
        a.ring.check_same(&b.ring)?;
        let mut m = RingMatrix::zeros(&a.ring, a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        Ok(m)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(ring: &Ring, rows: usize, columns: &[Vec<Poly>]) -> Result<RingMatrix> {
        let mut m = RingMatrix::zeros(ring, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::usage("column length mismatch"));
            }
            for (i, e) in c.iter().enumerate() {
                ring.check_same(e.ring())?;
                m.set(i, j, e.clone());
            }
        }
        Ok(m)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.ring.check_same(&other.ring)?;
        if self.rows != other.rows {
            return Err(Error::usage("hstack needs equal row counts"));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        RingMatrix::from_columns(&self.ring, self.rows, &cols)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn transpose(&self) -> RingMatrix {
        let mut t = RingMatrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.ring.check_same(&other.ring)?;
        if self.cols != other.rows {
            return Err(Error::usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RingMatrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(&self.ring);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        if v.len() != self.cols {
            return Err(Error::usage("vector length does not match column count"));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Poly::zero(&self.ring);
                for (k, x) in v.iter().enumerate() {
                    acc = &acc + &(self.get(i, k) * x);
                }
                acc
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<Poly> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RingMatrix {
        let mut m = RingMatrix::zeros(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Entry grid rendered with the polynomial grammar.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.to_rows().into_iter().map(|r| r.into_iter().map(|e| e.to_string()).collect()).collect()
    }
}

impl fmt::Display for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for row in cells {
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c:>width$}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
