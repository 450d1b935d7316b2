//! Exact matrices and rank.
//!
//! Rank over `Q` uses fraction-free (Bareiss) elimination on the integer
//! matrix obtained by clearing row denominators; over `F_p` plain Gaussian
//! elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            field,
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Product `self * rhs`; `None` on a shape mismatch.
    pub fn mul(&self, rhs: &Matrix) -> Option<Matrix> {
        if self.cols != rhs.rows {
            return None;
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc = &acc + &(a * rhs.get(k, j));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Some(out)
    }

    pub fn rank(&self) -> usize {
        match self.field {
            Field::Rational => bareiss_rank(self.integer_rows()),
            Field::Prime(p) => gauss_rank_mod(self, p),
        }
    }

    /// Rows scaled by the lcm of their denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let scale = row.iter().fold(BigInt::one(), |acc, e| {
                    acc.lcm(e.as_rational().expect("rational matrix").denom())
                });
                row.iter()
                    .map(|e| {
                        let q = e.as_rational().expect("rational matrix");
                        q.numer() * (&scale / q.denom())
                    })
                    .collect()
            })
            .collect()
    }
}

/// Rank by fraction-free elimination; every division is exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

fn gauss_rank_mod(m: &Matrix, p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| {
            m.row(r)
                .iter()
                .map(|e| match e {
                    FieldElement::PrimeField { residue, .. } => *residue,
                    FieldElement::Rational(_) => panic!("field mismatch"),
                })
                .collect()
        })
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = crate::field::fp_inv(a[rank][col], p).expect("nonzero pivot");
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            let factor = row[col] * inv % p;
            if factor == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + p - factor * y % p) % p;
            }
        }
        rank += 1;
    }
    rank
}
