//! Implicit k-step adjacency tensors.
//!
//! The k-step tensor of a weighted digraph with adjacency `A` has components
//! `T[i1..ik] = a(i1,i2) a(i2,i3) .. a(i_{k-1},i_k)`, one per walk. It is
//! never stored: contraction runs `k - 1` sparse matrix-vector products.

use crate::oracle::DenseTensor;
use crate::sparse::SparseMatrix;
use crate::tensor::{OrbitTensor, SymmetryClass, TensorError};

#[derive(Debug, Clone, PartialEq)]
pub struct KStepOperator {
    adjacency: SparseMatrix,
    k: usize,
}

impl KStepOperator {
    pub fn new(adjacency: SparseMatrix, k: usize) -> Result<Self, TensorError> {
        if k < 2 {
            return Err(TensorError::InvalidShape(format!("walk order k = {k} < 2")));
        }
        if let Some((_, _, w)) = adjacency.iter().find(|(_, _, w)| !w.is_finite()) {
            return Err(TensorError::InvalidWeight(w));
        }
        Ok(Self { adjacency, k })
    }

    pub fn adjacency(&self) -> &SparseMatrix {
        &self.adjacency
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.adjacency.dim()
    }

    /// Operator of the transposed tensor: the same walks on `A^T`.
    pub fn transpose(&self) -> Self {
        Self {
            adjacency: self.adjacency.transpose(),
            k: self.k,
        }
    }

    /// Apply of the *transposed* k-step tensor:
    /// `x_j = sum over walks v1 -> .. -> v_{k-1} -> j` of the walk weight
    /// times `c_v1 .. c_v_{k-1}`.
    pub fn apply(&self, c: &[f64]) -> Result<Vec<f64>, TensorError> {
        let n = self.dim();
        if c.len() != n {
            return Err(TensorError::LengthMismatch {
                expected: n,
                got: c.len(),
            });
        }
        if c.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(TensorError::NonFiniteInput);
        }
        let mut out = vec![0.0; n];
        self.apply_into(c, &mut out, &mut vec![0.0; n]);
        Ok(out)
    }

    /// `z <- 1; repeat k-1 times: z <- A^T (c .* z)`.
    pub(crate) fn apply_into(&self, c: &[f64], out: &mut [f64], scratch: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 1.0);
        for _ in 1..self.k {
            for ((s, &ci), &zi) in scratch.iter_mut().zip(c).zip(out.iter()) {
                *s = ci * zi;
            }
            self.adjacency.tmul_vec_into(scratch, out);
        }
    }

    /// Dense k-step tensor (untransposed), built by depth-first walk
    /// enumeration along stored arcs.
    pub fn materialize(&self, limit: usize) -> Result<DenseTensor, TensorError> {
        let n = self.dim();
        if n > limit {
            return Err(TensorError::TooLarge { n, limit });
        }
        let mut dense = DenseTensor::zeros(self.k, n)?;
        self.for_each_walk(|walk, w| dense.add(walk, w));
        Ok(dense)
    }

    /// Explicit ordered-tuple orbit tensor, one entry per walk.
    pub fn to_orbit_tensor(&self, limit: usize) -> Result<OrbitTensor, TensorError> {
        let n = self.dim();
        if n > limit {
            return Err(TensorError::TooLarge { n, limit });
        }
        let mut entries = Vec::new();
        self.for_each_walk(|walk, w| entries.push((walk.to_vec(), w)));
        OrbitTensor::new(self.k, n, SymmetryClass::OrderedKStep, entries)
    }

    fn for_each_walk(&self, mut f: impl FnMut(&[usize], f64)) {
        fn extend(a: &SparseMatrix, k: usize, walk: &mut Vec<usize>, weight: f64, f: &mut dyn FnMut(&[usize], f64)) {
            if walk.len() == k {
                f(walk, weight);
                return;
            }
            let last = *walk.last().unwrap();
            for (next, w) in a.row(last) {
                walk.push(next);
                extend(a, k, walk, weight * w, f);
                walk.pop();
            }
        }
        let mut walk = Vec::with_capacity(self.k);
        for start in 0..self.dim() {
            walk.push(start);
            extend(&self.adjacency, self.k, &mut walk, 1.0, &mut f);
            walk.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_cycle() -> SparseMatrix {
        SparseMatrix::from_triplets(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)])
    }

    #[test]
    fn two_step_is_in_neighbour_sum() {
        let a = SparseMatrix::from_triplets(3, [(0, 1, 2.0), (2, 1, 0.5), (1, 0, 1.0)]);
        let op = KStepOperator::new(a.clone(), 2).unwrap();
        let c = [1.0, 2.0, 3.0];
        assert_eq!(op.apply(&c).unwrap(), a.tmul_vec(&c));
    }

    #[test]
    fn three_cycle_unique_walks() {
        let op = KStepOperator::new(three_cycle(), 3).unwrap();
        assert_eq!(op.apply(&[1.0; 3]).unwrap(), vec![1.0; 3]);
        let d = op.materialize(10).unwrap();
        assert_eq!(d.nonzero_count(), 3);
        assert_eq!(d.get(&[0, 1, 2]), 1.0);
    }

    #[test]
    fn rejects_short_walks() {
        assert!(KStepOperator::new(three_cycle(), 1).is_err());
        let op = KStepOperator::new(three_cycle(), 3).unwrap();
        assert!(matches!(op.apply(&[1.0]), Err(TensorError::LengthMismatch { .. })));
    }

    #[test]
    fn orbit_form_matches_operator() {
        let a = SparseMatrix::from_triplets(3, [(0, 1, 2.0), (1, 2, 1.0), (2, 0, 0.5), (1, 0, 1.5)]);
        let op = KStepOperator::new(a, 4).unwrap();
        let c = [0.3, 1.2, 0.7];
        let via_orbits = op.to_orbit_tensor(10).unwrap().transpose().apply(&c).unwrap();
        let direct = op.apply(&c).unwrap();
        for (x, y) in via_orbits.iter().zip(&direct) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
