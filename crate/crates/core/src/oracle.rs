//! Brute-force reference implementations.
//!
//! Everything here works on fully materialized `N^m` component arrays and
//! shares no contraction code with the sparse tensor modules, so agreement
//! between the two is evidence rather than tautology. Intended for tests
//! and for small instances only.

use thiserror::Error;

use crate::sparse::SparseMatrix;

/// Upper bound on the number of stored components.
pub const MAX_COMPONENTS: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("dense tensor of order {order} on {n} nodes exceeds {MAX_COMPONENTS} components")]
    TooLarge { order: usize, n: usize },
    #[error("vector length {got} does not match tensor dimension {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("dense power iteration did not converge in {0} iterations")]
    NotConverged(usize),
}

/// Full component array of an order-`m` tensor over `n` nodes, row-major
/// (first index varies slowest).
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    order: usize,
    n: usize,
    data: Vec<f64>,
}

fn component_count(order: usize, n: usize) -> Option<usize> {
    let mut total: usize = 1;
    for _ in 0..order {
        total = total.checked_mul(n)?;
        if total > MAX_COMPONENTS {
            return None;
        }
    }
    Some(total)
}

/// Advances `idx` as an odometer in base `n`. Returns `false` after the last tuple.
fn odometer_step(idx: &mut [usize], n: usize) -> bool {
    for p in (0..idx.len()).rev() {
        idx[p] += 1;
        if idx[p] < n {
            return true;
        }
        idx[p] = 0;
    }
    false
}

impl DenseTensor {
    pub fn zeros(order: usize, n: usize) -> Result<Self, OracleError> {
        let len = component_count(order, n).ok_or(OracleError::TooLarge { order, n })?;
        Ok(Self {
            order,
            n,
            data: vec![0.0; len],
        })
    }

    /// Fills every component from `f(index tuple)`.
    pub fn from_fn(order: usize, n: usize, f: impl Fn(&[usize]) -> f64) -> Result<Self, OracleError> {
        let mut t = Self::zeros(order, n)?;
        if n == 0 {
            return Ok(t);
        }
        let mut idx = vec![0; order];
        let mut flat = 0;
        loop {
            t.data[flat] = f(&idx);
            flat += 1;
            if !odometer_step(&mut idx, n) {
                break;
            }
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.order, "index arity");
        idx.iter().fold(0, |acc, &i| {
            assert!(i < self.n, "index {i} out of range");
            acc * self.n + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: f64) {
        let o = self.offset(idx);
        self.data[o] = value;
    }

    pub fn add(&mut self, idx: &[usize], value: f64) {
        let o = self.offset(idx);
        self.data[o] += value;
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0.0).count()
    }

    pub fn max_abs_diff(&self, other: &DenseTensor) -> f64 {
        assert_eq!((self.order, self.n), (other.order, other.n));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// New tensor with `T'[idx] = T[rule(idx)]`.
    pub fn permuted_by(&self, rule: impl Fn(&[usize]) -> Vec<usize>) -> DenseTensor {
        DenseTensor::from_fn(self.order, self.n, |idx| self.get(&rule(idx))).expect("same shape as an existing tensor")
    }

    /// Full index reversal, `T'[i1..im] = T[im..i1]`.
    pub fn reversed(&self) -> DenseTensor {
        self.permuted_by(|idx| idx.iter().rev().copied().collect())
    }

    /// Moves the first `lead` indices behind the rest:
    /// `T'[j_1..j_r, i_1..i_l] = T[i_1..i_l, j_1..j_r]`.
    pub fn block_swapped(&self, lead: usize) -> DenseTensor {
        let trail = self.order - lead;
        self.permuted_by(|idx| {
            let mut out = idx[trail..].to_vec();
            out.extend_from_slice(&idx[..trail]);
            out
        })
    }

    /// `M_ij = sum over trailing indices of T[i, j, ...]`.
    pub fn induced_matrix(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.n]; self.n];
        if self.n == 0 {
            return m;
        }
        let mut idx = vec![0; self.order];
        loop {
            let v = self.get(&idx);
            if v != 0.0 {
                m[idx[0]][idx[1]] += v;
            }
            if !odometer_step(&mut idx, self.n) {
                break;
            }
        }
        m
    }
}

/// `x_i = sum_{i2..im} T[i, i2, .., im] c_i2 .. c_im` by nested loops.
pub fn dense_apply(t: &DenseTensor, c: &[f64]) -> Result<Vec<f64>, OracleError> {
    if c.len() != t.n {
        return Err(OracleError::SizeMismatch {
            expected: t.n,
            got: c.len(),
        });
    }
    let n = t.n;
    let mut x = vec![0.0; n];
    if n == 0 {
        return Ok(x);
    }
    let stride = t.data.len() / n;
    let mut rest = vec![0; t.order - 1];
    for (i, xi) in x.iter_mut().enumerate() {
        rest.iter_mut().for_each(|r| *r = 0);
        let mut flat = i * stride;
        let mut acc = 0.0;
        loop {
            let v = t.data[flat];
            if v != 0.0 {
                acc += v * rest.iter().map(|&r| c[r]).product::<f64>();
            }
            flat += 1;
            if !odometer_step(&mut rest, n) {
                break;
            }
        }
        *xi = acc;
    }
    Ok(x)
}

/// Perron H-eigenpair of `t` itself (no transposition is applied here).
///
/// Shifted power iteration with max-norm scaling; stops when successive
/// iterates differ by less than `tol` in max norm. Scores are returned
/// L1-normalized.
pub fn dense_hec(t: &DenseTensor, tol: f64) -> Result<(Vec<f64>, f64), OracleError> {
    const MAX_ITER: usize = 500_000;
    const SHIFT: f64 = 1.0;
    let n = t.n;
    let d = (t.order - 1) as i32;
    let mut x = vec![1.0; n];
    for _ in 0..MAX_ITER {
        let tx = dense_apply(t, &x)?;
        let mut y: Vec<f64> = tx
            .iter()
            .zip(&x)
            .map(|(a, xi)| (a + SHIFT * xi.powi(d)).powf(1.0 / d as f64))
            .collect();
        let top = y.iter().cloned().fold(0.0, f64::max);
        y.iter_mut().for_each(|v| *v /= top);
        let change = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = y;
        if change < tol {
            let tx = dense_apply(t, &x)?;
            let num: f64 = tx.iter().sum();
            let den: f64 = x.iter().map(|v| v.powi(d)).sum();
            let total: f64 = x.iter().sum();
            let scores = x.iter().map(|v| v / total).collect();
            return Ok((scores, num / den));
        }
    }
    Err(OracleError::NotConverged(MAX_ITER))
}

/// Explicit k-step tensor `T[i1..ik] = a(i1,i2) a(i2,i3) .. a(i_{k-1},i_k)`,
/// evaluated on every index tuple.
pub fn enumerate_walks(a: &SparseMatrix, k: usize) -> Result<DenseTensor, OracleError> {
    let n = a.dim();
    let dense: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| a.get(i, j)).collect()).collect();
    DenseTensor::from_fn(k, n, |idx| idx.windows(2).map(|w| dense[w[0]][w[1]]).product())
}
