use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{Domain, Poly, Rational};

/// Dense matrix over `Q[x]`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Poly::zero(Domain::Q); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(Domain::Q));
        }
        m
    }

    /// Builds a matrix from rows; entries are coerced to `Q`.
    pub fn from_rows(rows: Vec<Vec<Poly>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            entries.extend(row.into_iter().map(|p| p.to_rational()));
        }
        Ok(PolyMatrix { rows: n, cols, entries })
    }

    pub fn diagonal(diag: &[Poly], rows: usize, cols: usize) -> Self {
        let mut m = PolyMatrix::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, d.to_rational());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let sum = out.get(i, j) + &(a * b);
                        out.set(i, j, sum);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("vector of length {} against {} rows", v.len(), self.rows)));
        }
        let mut out = vec![Poly::zero(Domain::Q); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                let b = self.get(i, j);
                if !b.is_zero() {
                    *slot = &*slot + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Determinant by cofactor expansion; fine for the small matrices here.
    pub fn determinant(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!("determinant of {}x{}", self.rows, self.cols)));
        }
        let idx: Vec<usize> = (0..self.cols).collect();
        Ok(self.minor_det(0, &idx))
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> Poly {
        if cols.is_empty() {
            return Poly::one(Domain::Q);
        }
        let mut acc = Poly::zero(Domain::Q);
        for (pos, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&j| j != c).collect();
            let term = a * &self.minor_det(row + 1, &rest);
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Square with a nonzero constant determinant.
    pub fn is_unimodular(&self) -> bool {
        matches!(self.determinant(), Ok(d) if d.degree() == Some(0))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row_target += c · row_source`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, c: &Poly) {
        for j in 0..self.cols {
            let s = self.get(source, j);
            if !s.is_zero() {
                let v = self.get(target, j) + &(c * s);
                self.set(target, j, v);
            }
        }
    }

    /// `col_target += c · col_source`.
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, c: &Poly) {
        for i in 0..self.rows {
            let s = self.get(i, source);
            if !s.is_zero() {
                let v = self.get(i, target) + &(s * c);
                self.set(i, target, v);
            }
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &Rational) {
        for j in 0..self.cols {
            let v = self.get(i, j).scale(c);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for PolyMatrix {
    /// The plain-text matrix format: one row per line, entries separated by `;`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Poly::to_string).collect();
            writeln!(f, "{}", row.join("; "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(" | ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(Poly::to_string).collect();
            f.write_str(&row.join("; "))?;
        }
        f.write_str("]")
    }
}

impl FromStr for PolyMatrix {
    type Err = Error;

    /// Rows are lines, entries are `;`-separated polynomials. Blank lines and
    /// `#` comments are skipped. A line `cols N` may fix the width, which is
    /// needed for a module with no relations.
    fn from_str(s: &str) -> Result<PolyMatrix> {
        let mut rows = Vec::new();
        let mut width: Option<usize> = None;
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(n) = line.strip_prefix("cols") {
                let n: usize = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad column count `{line}`", lineno + 1)))?;
                width = Some(n);
                continue;
            }
            let row = line
                .split(';')
                .map(|e| e.trim().parse::<Poly>())
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            rows.push(row);
        }
        let cols = match (width, rows.first()) {
            (Some(n), _) => n,
            (None, Some(r)) => r.len(),
            (None, None) => return Err(Error::Parse("empty matrix needs a `cols N` line".into())),
        };
        PolyMatrix::from_rows(rows, cols)
    }
}
