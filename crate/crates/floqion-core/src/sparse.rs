//! Compressed sparse row storage for real symmetric Hamiltonians acting on
//! complex state vectors.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

/// Real CSR matrix. Row i spans `cols[row_ptr[i]..row_ptr[i+1]]`.
#[derive(Debug, Clone)]
pub struct Csr {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl Csr {
    /// Build from per-row (column, value) lists. Entries within a row need
    /// not be sorted; duplicates are summed.
    pub fn from_rows(n: usize, mut rows: Vec<Vec<(u32, f64)>>) -> Self {
        assert_eq!(rows.len(), n);
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for row in rows.iter_mut() {
            row.sort_unstable_by_key(|&(c, _)| c);
            let mut k = 0;
            while k < row.len() {
                let (c, mut v) = row[k];
                let mut m = k + 1;
                while m < row.len() && row[m].0 == c {
                    v += row[m].1;
                    m += 1;
                }
                if v != 0.0 {
                    cols.push(c);
                    vals.push(v);
                }
                k = m;
            }
            row_ptr.push(cols.len());
        }
        Csr { n, row_ptr, cols, vals }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// y = A x over complex vectors.
    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(y.len(), self.n);
        for i in 0..self.n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.vals[k] * x[self.cols[k] as usize];
            }
            y[i] = acc;
        }
    }

    /// Dense materialization, for small-system tests and diagnostics.
    pub fn to_dense(&self) -> crate::linalg::Mat {
        let mut m = crate::linalg::Mat::zeros(self.n, self.n);
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                m[(i, self.cols[k] as usize)] += self.vals[k];
            }
        }
        m
    }

    /// Largest relative violation of A = A^T, zero for an exactly symmetric
    /// pattern (used by construction tests).
    pub fn symmetry_defect(&self) -> f64 {
        self.to_dense().asymmetry()
    }

    /// <x|A|x> for a complex vector (real output; A is real symmetric).
    pub fn expectation(&self, x: &[Complex64]) -> f64 {
        let mut y = vec![Complex64::new(0.0, 0.0); self.n];
        self.matvec(x, &mut y);
        x.iter().zip(&y).map(|(a, b)| (a.conj() * b).re).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matvec_matches_dense() {
        let rows = alloc::vec![
            alloc::vec![(1u32, 2.0), (2u32, -1.0)],
            alloc::vec![(0u32, 2.0)],
            alloc::vec![(0u32, -1.0), (2u32, 0.5), (2u32, 0.5)],
        ];
        let a = Csr::from_rows(3, rows);
        assert_eq!(a.nnz(), 5);
        let x = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(2.0, -1.0)];
        let mut y = [Complex64::default(); 3];
        a.matvec(&x, &mut y);
        let d = a.to_dense();
        for i in 0..3 {
            let want: Complex64 = (0..3).map(|j| d[(i, j)] * x[j]).sum();
            assert!((y[i] - want).norm() < 1e-15);
        }
    }

    #[test]
    fn duplicate_entries_cancel_to_structural_zero() {
        let rows = alloc::vec![alloc::vec![(0u32, 1.0), (0u32, -1.0)], alloc::vec![]];
        let a = Csr::from_rows(2, rows);
        assert_eq!(a.nnz(), 0);
    }
}
