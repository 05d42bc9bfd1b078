//! Dense matrices over F_q with exact row reduction, kernels and solving.

use super::field::FiniteField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<u16>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            a: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.a[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u16 {
        self.a[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u16) {
        self.a[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &Self, f: &FiniteField) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(r, k);
                if x == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let y = other.get(k, c);
                    if y != 0 {
                        let v = f.add(out.get(r, c), f.mul(x, y));
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self, f: &FiniteField) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (v, &w) in out.a.iter_mut().zip(&other.a) {
            *v = f.add(*v, w);
        }
        out
    }

    pub fn sub(&self, other: &Self, f: &FiniteField) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (v, &w) in out.a.iter_mut().zip(&other.a) {
            *v = f.sub(*v, w);
        }
        out
    }

    pub fn scale(&self, s: u16, f: &FiniteField) -> Self {
        let mut out = self.clone();
        for v in out.a.iter_mut() {
            *v = f.mul(*v, s);
        }
        out
    }

    /// Kronecker product: (A kron B)[(i1,i2),(j1,j2)] = A[i1,j1] B[i2,j2].
    pub fn kron(&self, other: &Self, f: &FiniteField) -> Self {
        let mut out = Self::zero(self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let x = self.get(i1, j1);
                if x == 0 {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let y = other.get(i2, j2);
                        if y != 0 {
                            out.set(
                                i1 * other.rows + i2,
                                j1 * other.cols + j2,
                                f.mul(x, y),
                            );
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    /// Side-by-side concatenation (equal row counts).
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &FiniteField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            for c in 0..self.cols {
                let tmp = self.get(row, c);
                self.set(row, c, self.get(pr, c));
                self.set(pr, c, tmp);
            }
            let inv = f.inv(self.get(row, col));
            for c in 0..self.cols {
                self.set(row, c, f.mul(self.get(row, c), inv));
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) != 0 {
                    let factor = self.get(r, col);
                    for c in 0..self.cols {
                        let v = f.sub(self.get(r, c), f.mul(factor, self.get(row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        self.clone().rref(f).len()
    }

    /// Columns spanning the kernel {x : self x = 0}.
    pub fn kernel_basis(&self, f: &FiniteField) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zero(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(m.get(r, fc)));
            }
        }
        out
    }

    /// Any solution X of self * X = rhs, or None if inconsistent.
    pub fn solve(&self, rhs: &Mat, f: &FiniteField) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows);
        let mut aug = self.hstack(rhs);
        let pivots = aug.rref(f);
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zero(self.cols, rhs.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, aug.get(r, self.cols + c));
            }
        }
        Some(x)
    }

    pub fn is_invertible(&self, f: &FiniteField) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    pub fn inverse(&self, f: &FiniteField) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let inv = self.solve(&Mat::identity(self.rows), f)?;
        if self.mul(&inv, f) == Mat::identity(self.rows) {
            Some(inv)
        } else {
            None
        }
    }

    /// Column-major vectorization (columns stacked), matching
    /// vec(A X B) = (B^T kron A) vec(X).
    pub fn vec(&self) -> Vec<u16> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for c in 0..self.cols {
            for r in 0..self.rows {
                out.push(self.get(r, c));
            }
        }
        out
    }

    pub fn from_vec(v: &[u16], rows: usize, cols: usize) -> Self {
        assert_eq!(v.len(), rows * cols);
        let mut out = Self::zero(rows, cols);
        for c in 0..cols {
            for r in 0..rows {
                out.set(r, c, v[c * rows + r]);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }
}
