use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Field, Rat, Ring};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Clone> Matrix<S> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<T: Clone>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl<S: Ring> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(S::zero(), |acc, k| {
                let a = self.get(i, k);
                if a.is_zero() {
                    acc
                } else {
                    acc.plus(&a.times(o.get(k, j)))
                }
            })
        })
    }

    pub fn add(&self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).plus(o.get(i, j)))
    }

    pub fn sub(&self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).minus(o.get(i, j)))
    }

    pub fn scale_by(&self, s: &S) -> Matrix<S> {
        self.map(|x| x.times(s))
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(S::zero(), |acc, k| acc.plus(&self.get(i, k).times(&v[k])))
            })
            .collect()
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc.plus(self.get(i, i)))
    }
}

impl<S: Field> Matrix<S> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn scalar(n: usize, s: &S) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { s.clone() } else { S::zero() })
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form; returns the reduced matrix and pivot columns.
/// Pivots are chosen by largest magnitude, which is irrelevant for exact
/// fields and partial pivoting for numeric ones.
pub fn rref<S: Field>(m: &Matrix<S>) -> (Matrix<S>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let best = (r..a.rows)
            .filter(|&i| !a.get(i, c).is_zero())
            .max_by(|&i, &j| {
                a.get(i, c)
                    .magnitude()
                    .partial_cmp(&a.get(j, c).magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
        let Some(p) = best else { continue };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a.get(r, c).inv();
        for j in 0..a.cols {
            let v = a.get(r, j).clone() * inv.clone();
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..a.cols {
                let v = a.get(i, j).clone() - f.clone() * a.get(r, j).clone();
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank_exact<S: Field>(m: &Matrix<S>) -> usize {
    rref(m).1.len()
}

/// Basis of the right nullspace in canonical form: one vector per free
/// column, with a 1 in that column and zeros in the other free columns.
pub fn nullspace_exact(m: &Matrix<Rat>) -> Vec<Vec<Rat>> {
    nullspace_rref(m)
}

pub(crate) fn nullspace_rref<S: Field>(m: &Matrix<S>) -> Vec<Vec<S>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); m.cols];
            v[f] = S::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f).clone();
            }
            v
        })
        .collect()
}

/// Determinant over a commutative ring by cofactor expansion along the first
/// column, memoized on the set of remaining rows. Division free, so it works
/// for polynomial entries; intended for the small sizes used here.
pub fn determinant<S: Ring>(m: &Matrix<S>) -> S {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    assert!(m.rows <= 24, "determinant too large for cofactor expansion");
    let n = m.rows;
    if n == 0 {
        panic!("determinant of an empty matrix needs a ring unit");
    }
    let mut memo: HashMap<u32, S> = HashMap::new();
    det_rec(m, 0, ((1u64 << n) - 1) as u32, &mut memo)
}

fn det_rec<S: Ring>(m: &Matrix<S>, col: usize, rows: u32, memo: &mut HashMap<u32, S>) -> S {
    if col + 1 == m.cols {
        let i = rows.trailing_zeros() as usize;
        return m.get(i, col).clone();
    }
    if let Some(v) = memo.get(&rows) {
        return v.clone();
    }
    let mut acc = S::zero();
    let mut sign_pos = true;
    for i in 0..m.rows {
        if rows & (1 << i) == 0 {
            continue;
        }
        let a = m.get(i, col);
        if !a.is_zero() {
            let minor = det_rec(m, col + 1, rows & !(1 << i), memo);
            if !minor.is_zero() {
                let t = a.times(&minor);
                acc = if sign_pos { acc.plus(&t) } else { acc.minus(&t) };
            }
        }
        sign_pos = !sign_pos;
    }
    memo.insert(rows, acc.clone());
    acc
}
