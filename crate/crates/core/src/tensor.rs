//! Sparse adjacency tensors stored as symmetry orbits.
//!
//! An [`OrbitTensor`] keeps one `(canonical tuple, weight)` pair per orbit
//! of index tuples that share a value under the tensor's [`SymmetryClass`].
//! Contraction works orbit by orbit with closed-form multiplicities, so the
//! cost is `O(|E| m)` rather than `O(|E| m!)` or `O(N^(m-1))`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::hypergraph::{EdgeKind, Hypergraph, HypergraphError, KindTag, Orientation};
use crate::oracle::{DenseTensor, OracleError};
use crate::perm::{anchor_even_orbit, factorial, has_duplicates, is_odd_arrangement, reversal_is_odd, swap_first_two};

/// Default node-count limit for [`OrbitTensor::materialize`].
pub const DEFAULT_MATERIALIZE_LIMIT: usize = 10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("hypergraph mixes hyperedge kinds ({0} and {1})")]
    MixedKinds(KindTag, KindTag),
    #[error("expected an index tuple of length {expected}, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("index {index} out of range for {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("index tuple repeats node {0}")]
    RepeatedIndex(usize),
    #[error("tensor weights must be positive and finite, got {0}")]
    InvalidWeight(f64),
    #[error("invalid tensor shape: {0}")]
    InvalidShape(String),
    #[error("vector length {got} does not match {expected} nodes")]
    LengthMismatch { expected: usize, got: usize },
    #[error("input vector must be finite and nonnegative")]
    NonFiniteInput,
    #[error("{n} nodes exceeds the dense limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Which index tuples share one stored weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    /// Every permutation of the stored node set.
    FullSymmetric,
    /// Even permutations of the stored tuple.
    CyclicEven,
    /// Odd permutations of the stored tuple.
    CyclicOdd,
    /// Tail block and head block, each symmetric on its own. With
    /// `heads_first == false` tuples read tails-then-heads; the transposed
    /// tensor reads heads-then-tails.
    Directed { tails: usize, heads_first: bool },
    /// The stored tuple only.
    OrderedKStep,
}

impl SymmetryClass {
    /// Length of the leading symmetric block for directed classes.
    fn lead_len(self, order: usize) -> usize {
        match self {
            SymmetryClass::Directed { tails, heads_first } => {
                if heads_first {
                    order - tails
                } else {
                    tails
                }
            }
            _ => order,
        }
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetryClass::FullSymmetric => f.write_str("full-symmetric"),
            SymmetryClass::CyclicEven => f.write_str("cyclic-even"),
            SymmetryClass::CyclicOdd => f.write_str("cyclic-odd"),
            SymmetryClass::Directed { tails, heads_first } => write!(
                f,
                "directed(tails={tails}, {})",
                if *heads_first { "heads-first" } else { "tails-first" }
            ),
            SymmetryClass::OrderedKStep => f.write_str("ordered-kstep"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitTensor {
    order: usize,
    n: usize,
    class: SymmetryClass,
    /// Sorted by tuple, one entry per orbit.
    entries: Vec<(Vec<usize>, f64)>,
}

fn canonical(class: SymmetryClass, order: usize, t: &[usize]) -> Vec<usize> {
    match class {
        SymmetryClass::FullSymmetric => {
            let mut s = t.to_vec();
            s.sort_unstable();
            s
        }
        SymmetryClass::CyclicEven | SymmetryClass::CyclicOdd => anchor_even_orbit(t),
        SymmetryClass::Directed { .. } => {
            let lead = class.lead_len(order);
            let mut s = t.to_vec();
            s[..lead].sort_unstable();
            s[lead..].sort_unstable();
            s
        }
        SymmetryClass::OrderedKStep => t.to_vec(),
    }
}

impl OrbitTensor {
    /// Builds a tensor from orbit representatives. Tuples are brought into
    /// canonical form and orbits listed more than once have their weights
    /// summed.
    pub fn new(
        order: usize,
        n: usize,
        class: SymmetryClass,
        entries: impl IntoIterator<Item = (Vec<usize>, f64)>,
    ) -> Result<Self, TensorError> {
        if order < 2 {
            return Err(TensorError::InvalidShape(format!("order {order} < 2")));
        }
        if let SymmetryClass::Directed { tails, .. } = class {
            if tails == 0 || tails >= order {
                return Err(TensorError::InvalidShape(format!(
                    "{tails} tails in an order-{order} directed tensor"
                )));
            }
        }
        let mut merged: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (t, w) in entries {
            if t.len() != order {
                return Err(TensorError::WrongArity {
                    expected: order,
                    got: t.len(),
                });
            }
            if let Some(&bad) = t.iter().find(|&&i| i >= n) {
                return Err(TensorError::IndexOutOfRange { index: bad, n });
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(TensorError::InvalidWeight(w));
            }
            if class != SymmetryClass::OrderedKStep {
                if let Some(dup) = has_duplicates(&t) {
                    return Err(TensorError::RepeatedIndex(dup));
                }
            }
            *merged.entry(canonical(class, order, &t)).or_insert(0.0) += w;
        }
        Ok(Self {
            order,
            n,
            class,
            entries: merged.into_iter().collect(),
        })
    }

    /// Adjacency tensor of a uniform, single-kind hypergraph.
    ///
    /// Undirected edges give [`SymmetryClass::FullSymmetric`] orbits, cyclic
    /// edges even/odd orbits, and directed edges tails-first block orbits
    /// (which requires a common tail size).
    pub fn from_hypergraph(h: &Hypergraph) -> Result<Self, TensorError> {
        let order = h.uniformity()?;
        let first = h.edges()[0].tag();
        if let Some(e) = h.edges().iter().find(|e| e.tag() != first) {
            return Err(TensorError::MixedKinds(first, e.tag()));
        }
        let raw = |v: &[crate::NodeId]| v.iter().map(|x| x.index()).collect::<Vec<_>>();
        let n = h.node_count();
        match first {
            KindTag::Undirected => Self::new(
                order,
                n,
                SymmetryClass::FullSymmetric,
                h.edges().iter().map(|e| match e.kind() {
                    EdgeKind::Undirected(v) => (raw(v), e.weight()),
                    _ => unreachable!(),
                }),
            ),
            KindTag::Cyclic => {
                let all_odd = h.edges().iter().all(|e| {
                    matches!(
                        e.kind(),
                        EdgeKind::Cyclic {
                            orientation: Orientation::Odd,
                            ..
                        }
                    )
                });
                let class = if all_odd {
                    SymmetryClass::CyclicOdd
                } else {
                    SymmetryClass::CyclicEven
                };
                Self::new(
                    order,
                    n,
                    class,
                    h.edges().iter().map(|e| match e.kind() {
                        EdgeKind::Cyclic { nodes, orientation } => {
                            let t = raw(nodes);
                            let t = if all_odd || *orientation == Orientation::Even {
                                t
                            } else {
                                swap_first_two(&t)
                            };
                            (t, e.weight())
                        }
                        _ => unreachable!(),
                    }),
                )
            }
            KindTag::Directed => {
                let tails = h.tail_uniformity()?;
                Self::new(
                    order,
                    n,
                    SymmetryClass::Directed {
                        tails,
                        heads_first: false,
                    },
                    h.edges().iter().map(|e| match e.kind() {
                        EdgeKind::Directed { tail, head } => {
                            let mut t = raw(tail);
                            t.extend(raw(head));
                            (t, e.weight())
                        }
                        _ => unreachable!(),
                    }),
                )
            }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> SymmetryClass {
        self.class
    }

    pub fn entries(&self) -> &[(Vec<usize>, f64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Multiplies every weight by `alpha > 0`.
    pub fn scaled(&self, alpha: f64) -> Self {
        let mut out = self.clone();
        out.entries.iter_mut().for_each(|(_, w)| *w *= alpha);
        out
    }

    fn check_index(&self, idx: &[usize]) -> Result<(), TensorError> {
        if idx.len() != self.order {
            return Err(TensorError::WrongArity {
                expected: self.order,
                got: idx.len(),
            });
        }
        match idx.iter().find(|&&i| i >= self.n) {
            Some(&index) => Err(TensorError::IndexOutOfRange { index, n: self.n }),
            None => Ok(()),
        }
    }

    /// Expanded component `T[idx]`.
    pub fn component(&self, idx: &[usize]) -> Result<f64, TensorError> {
        self.check_index(idx)?;
        if self.class != SymmetryClass::OrderedKStep && has_duplicates(idx).is_some() {
            return Ok(0.0);
        }
        let key = match self.class {
            SymmetryClass::CyclicOdd => anchor_even_orbit(&swap_first_two(idx)),
            class => canonical(class, self.order, idx),
        };
        Ok(self
            .entries
            .binary_search_by(|(t, _)| t.as_slice().cmp(&key))
            .map_or(0.0, |k| self.entries[k].1))
    }

    /// Class-appropriate index transposition: identity for full symmetry,
    /// full reversal for cyclic and k-step tensors, tail/head block swap for
    /// directed ones.
    pub fn transpose(&self) -> Self {
        let m = self.order;
        match self.class {
            SymmetryClass::FullSymmetric => self.clone(),
            SymmetryClass::CyclicEven | SymmetryClass::CyclicOdd => {
                // Reversal moves each even orbit onto the odd orbit of the
                // same tuple exactly when it is itself an odd permutation.
                let class = match (self.class, reversal_is_odd(m)) {
                    (SymmetryClass::CyclicEven, true) => SymmetryClass::CyclicOdd,
                    (SymmetryClass::CyclicOdd, true) => SymmetryClass::CyclicEven,
                    (c, false) => c,
                    _ => unreachable!(),
                };
                Self { class, ..self.clone() }
            }
            SymmetryClass::Directed { tails, heads_first } => {
                let lead = self.class.lead_len(m);
                let class = SymmetryClass::Directed {
                    tails,
                    heads_first: !heads_first,
                };
                let mut entries: Vec<_> = self
                    .entries
                    .iter()
                    .map(|(t, w)| {
                        let mut s = t[lead..].to_vec();
                        s.extend_from_slice(&t[..lead]);
                        (s, *w)
                    })
                    .collect();
                entries.sort_by(|a, b| a.0.cmp(&b.0));
                Self {
                    class,
                    entries,
                    ..self.clone()
                }
            }
            SymmetryClass::OrderedKStep => {
                let mut entries: Vec<_> = self
                    .entries
                    .iter()
                    .map(|(t, w)| (t.iter().rev().copied().collect(), *w))
                    .collect();
                entries.sort_by(|a: &(Vec<usize>, f64), b| a.0.cmp(&b.0));
                Self {
                    entries,
                    ..self.clone()
                }
            }
        }
    }

    /// Validated tensor apply `x_i = sum T[i, i2..im] c_i2 .. c_im`.
    pub fn apply(&self, c: &[f64]) -> Result<Vec<f64>, TensorError> {
        if c.len() != self.n {
            return Err(TensorError::LengthMismatch {
                expected: self.n,
                got: c.len(),
            });
        }
        if c.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(TensorError::NonFiniteInput);
        }
        let mut x = vec![0.0; self.n];
        self.apply_into(c, &mut x);
        Ok(x)
    }

    /// Unchecked apply into `out`. Entries are visited in stored order so
    /// the result is bit-reproducible.
    pub(crate) fn apply_into(&self, c: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        let m = self.order;
        let mut excl = vec![0.0; m];
        match self.class {
            SymmetryClass::FullSymmetric => {
                let mult = factorial(m - 1);
                for (t, w) in &self.entries {
                    products_excluding(t, c, &mut excl);
                    for p in 0..m {
                        out[t[p]] += w * mult * excl[p];
                    }
                }
            }
            SymmetryClass::CyclicEven | SymmetryClass::CyclicOdd if m == 2 => {
                // A two-node cyclic orbit is a single ordered pair.
                let odd = self.class == SymmetryClass::CyclicOdd;
                for (t, w) in &self.entries {
                    let (a, b) = if odd { (t[1], t[0]) } else { (t[0], t[1]) };
                    out[a] += w * c[b];
                }
            }
            SymmetryClass::CyclicEven | SymmetryClass::CyclicOdd => {
                // (m-1)!/2 permutations of either parity start with a given node.
                let mult = factorial(m - 1) / 2.0;
                for (t, w) in &self.entries {
                    products_excluding(t, c, &mut excl);
                    for p in 0..m {
                        out[t[p]] += w * mult * excl[p];
                    }
                }
            }
            SymmetryClass::Directed { .. } => {
                let lead = self.class.lead_len(m);
                let mult = factorial(lead - 1) * factorial(m - lead);
                for (t, w) in &self.entries {
                    products_excluding(t, c, &mut excl);
                    for p in 0..lead {
                        out[t[p]] += w * mult * excl[p];
                    }
                }
            }
            SymmetryClass::OrderedKStep => {
                for (t, w) in &self.entries {
                    let prod: f64 = t[1..].iter().map(|&i| c[i]).product();
                    out[t[0]] += w * prod;
                }
            }
        }
    }

    /// Every index tuple in the orbit of a stored entry.
    pub fn orbit(&self, entry: usize) -> Vec<Vec<usize>> {
        let (t, _) = &self.entries[entry];
        let m = self.order;
        match self.class {
            SymmetryClass::OrderedKStep => vec![t.clone()],
            SymmetryClass::FullSymmetric => t.iter().copied().permutations(m).collect(),
            SymmetryClass::CyclicEven | SymmetryClass::CyclicOdd => {
                let want_odd = self.class == SymmetryClass::CyclicOdd;
                // parity is measured relative to the stored tuple
                let anchor_odd = is_odd_arrangement(t);
                t.iter()
                    .copied()
                    .permutations(m)
                    .filter(|p| (is_odd_arrangement(p) != anchor_odd) == want_odd)
                    .collect()
            }
            SymmetryClass::Directed { .. } => {
                let lead = self.class.lead_len(m);
                let heads: Vec<Vec<usize>> = t[..lead].iter().copied().permutations(lead).collect();
                let tails: Vec<Vec<usize>> = t[lead..].iter().copied().permutations(m - lead).collect();
                heads
                    .iter()
                    .cartesian_product(&tails)
                    .map(|(a, b)| a.iter().chain(b).copied().collect())
                    .collect()
            }
        }
    }

    /// Dense component array, by explicit orbit expansion.
    pub fn materialize(&self, limit: usize) -> Result<DenseTensor, TensorError> {
        if self.n > limit {
            return Err(TensorError::TooLarge { n: self.n, limit });
        }
        let mut dense = DenseTensor::zeros(self.order, self.n)?;
        for (k, (_, w)) in self.entries.iter().enumerate() {
            for idx in self.orbit(k) {
                debug_assert_eq!(dense.get(&idx), 0.0, "orbits overlap at {idx:?}");
                dense.set(&idx, *w);
            }
        }
        Ok(dense)
    }
}

/// `excl[p] = prod_{q != p} c[t[q]]`, via prefix and suffix products.
fn products_excluding(t: &[usize], c: &[f64], excl: &mut [f64]) {
    let m = t.len();
    let mut acc = 1.0;
    for p in 0..m {
        excl[p] = acc;
        acc *= c[t[p]];
    }
    acc = 1.0;
    for p in (0..m).rev() {
        excl[p] *= acc;
        acc *= c[t[p]];
    }
}
