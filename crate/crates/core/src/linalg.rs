//! Dense matrices over exact rings and fraction-free elimination.
//!
//! Everything here is generic over [`Ring`]; elimination additionally needs
//! [`ExactDiv`], which integral domains provide for divisions known to be exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Ring:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Division that is only asked of quotients known to lie in the ring.
pub trait ExactDiv: Ring {
    /// `None` when `divisor` does not divide `self`.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}

impl ExactDiv for BigInt {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }
}

impl ExactDiv for i64 {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if *divisor == 0 || self % divisor != 0 {
            return None;
        }
        Some(self / divisor)
    }
}

impl ExactDiv for BigRational {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        (!divisor.is_zero()).then(|| self / divisor)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Kronecker product, `self` indexing the slow coordinate.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a.clone() * rhs[(k, l)].clone();
                    }
                }
            }
        }
        out
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.rows {
            list.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        list.finish()
    }
}

/// Determinant by Bareiss elimination.
pub fn det<T: ExactDiv>(m: &Matrix<T>) -> T {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(p) => {
                    swap_rows(&mut a, k, p);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            let lead = a[(i, k)].clone();
            for j in k + 1..n {
                let num = a[(i, j)].clone() * pivot.clone() - lead.clone() * a[(k, j)].clone();
                a[(i, j)] = num.exact_div(&prev).expect("Bareiss step divides exactly");
            }
            a[(i, k)] = T::zero();
        }
        prev = pivot;
    }
    let d = a[(n - 1, n - 1)].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Rank by fraction-free row echelon reduction; over an integral domain this
/// is the rank over its field of fractions.
pub fn rank<T: ExactDiv>(m: &Matrix<T>) -> usize {
    let mut a = m.clone();
    let mut r = 0;
    let mut prev = T::one();
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        swap_rows(&mut a, r, p);
        let pivot = a[(r, c)].clone();
        for i in r + 1..a.rows {
            let lead = a[(i, c)].clone();
            for j in c + 1..a.cols {
                let num = a[(i, j)].clone() * pivot.clone() - lead.clone() * a[(r, j)].clone();
                a[(i, j)] = num.exact_div(&prev).expect("fraction-free step divides exactly");
            }
            a[(i, c)] = T::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

fn swap_rows<T>(a: &mut Matrix<T>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols {
        a.data.swap(i * a.cols + c, j * a.cols + c);
    }
}
