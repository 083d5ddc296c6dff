//! Exact dense linear algebra over the rationals.

use std::fmt;

use num_traits::{One, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RationalMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the kernel, one vector per free column in ascending order.
    /// The vector for free column `f` has a 1 at `f`, zeros at the other free
    /// columns, and is determined at the pivot columns.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let cols = self.matrix.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); cols];
                v[f] = Rational::one();
                for (r, &p) in self.pivots.iter().enumerate() {
                    let a = &self.matrix.data[r][f];
                    if !a.is_zero() {
                        v[p] = -a.clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Result of [`RationalMatrix::solve_affine`] when the system is consistent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub nullspace: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(RationalMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r]
    }

    pub fn push_row(&mut self, row: Vec<Rational>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.data.push(row);
        self.rows += 1;
        Ok(())
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Gauss-Jordan elimination. Columns are scanned left to right and the
    /// first row holding a nonzero entry becomes the pivot row.
    pub fn rref(&self) -> Rref {
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].recip();
            let support: Vec<usize> = (c..self.cols).filter(|&j| !a[r][j].is_zero()).collect();
            for &j in &support {
                a[r][j] *= &inv;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for &j in &support {
                    row[j] -= &factor * &pivot_row[j];
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: RationalMatrix {
                rows: self.rows,
                cols: self.cols,
                data: a,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.rref().nullspace()
    }

    /// Solves `self * x = rhs`. Returns `None` when the system is
    /// inconsistent; otherwise the solution with all free variables set to
    /// zero together with a kernel basis.
    pub fn solve_affine(&self, rhs: &[Rational]) -> Result<Option<AffineSolution>> {
        if rhs.len() != self.rows {
            return Err(Error::Dimension {
                expected: self.rows,
                found: rhs.len(),
            });
        }
        let augmented = RationalMatrix {
            rows: self.rows,
            cols: self.cols + 1,
            data: self
                .data
                .iter()
                .zip(rhs)
                .map(|(row, b)| {
                    let mut row = row.clone();
                    row.push(b.clone());
                    row
                })
                .collect(),
        };
        let red = augmented.rref();
        if red.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut particular = vec![Rational::zero(); self.cols];
        for (r, &p) in red.pivots.iter().enumerate() {
            particular[p] = red.matrix.data[r][self.cols].clone();
        }
        let coefficient_part = Rref {
            matrix: RationalMatrix {
                rows: self.rows,
                cols: self.cols,
                data: red
                    .matrix
                    .data
                    .into_iter()
                    .map(|mut row| {
                        row.pop();
                        row
                    })
                    .collect(),
            },
            pivots: red.pivots,
        };
        Ok(Some(AffineSolution {
            particular,
            nullspace: coefficient_part.nullspace(),
        }))
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = RationalMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][n + i] = Rational::one();
        }
        let red = aug.rref();
        if red.pivots.len() < n || red.pivots[..n].iter().copied().ne(0..n) {
            return None;
        }
        let data = red
            .matrix
            .data
            .into_iter()
            .map(|row| row[n..].to_vec())
            .collect();
        Some(RationalMatrix {
            rows: n,
            cols: n,
            data,
        })
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
