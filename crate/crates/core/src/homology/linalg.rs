//! Exact sparse linear algebra over the rationals.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::Rational;

/// Sparse vector: `(index, value)` pairs with increasing indices and nonzero values.
pub type SparseVec = Vec<(usize, Rational)>;

fn axpy_map(acc: &mut BTreeMap<usize, Rational>, c: &Rational, v: &[(usize, Rational)]) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(Rational::zero);
        *e += c * x;
        if e.is_zero() {
            acc.remove(i);
        }
    }
}

/// Row-echelon basis of a subspace of `Q^dim`.
///
/// Every stored row has a leading entry 1 at its pivot (its lowest index) and
/// carries a label vector in some auxiliary space. Reducing a vector
/// accumulates the labels of the rows subtracted from it.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseVec>,
    labels: Vec<SparseVec>,
}

/// Outcome of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduced {
    /// What is left after subtracting stored rows.
    pub remainder: SparseVec,
    /// Sum of `coefficient * label` over the subtracted rows.
    pub label: SparseVec,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            pivot_row: vec![None; dim],
            rows: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Writes `v = Σ c_r row_r + remainder` and returns the remainder together
    /// with `Σ c_r label_r`.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> Reduced {
        let mut label = BTreeMap::new();
        if self.rows.is_empty() {
            return Reduced {
                remainder: v.to_vec(),
                label: Vec::new(),
            };
        }
        let mut acc: Vec<Rational> = vec![Rational::zero(); self.dim];
        for (i, x) in v {
            acc[*i] = x.clone();
        }
        let start = v.first().map_or(self.dim, |e| e.0);
        for i in start..self.dim {
            if acc[i].is_zero() {
                continue;
            }
            let Some(r) = self.pivot_row[i] else { continue };
            let c = core::mem::replace(&mut acc[i], Rational::zero());
            for (j, x) in &self.rows[r][1..] {
                acc[*j] -= &c * x;
            }
            axpy_map(&mut label, &c, &self.labels[r]);
        }
        let remainder = acc
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Reduced {
            remainder,
            label: label.into_iter().collect(),
        }
    }

    /// Stores a nonzero remainder, normalized to leading coefficient 1, with
    /// the label scaled accordingly. Returns `false` for the zero vector.
    pub fn insert(&mut self, v: SparseVec, label: SparseVec) -> bool {
        let Some((p, lead)) = v.first().cloned() else {
            return false;
        };
        debug_assert!(self.pivot_row[p].is_none(), "pivot already occupied");
        let inv = lead.recip();
        let row: SparseVec = if inv.is_one() {
            v
        } else {
            v.into_iter().map(|(i, x)| (i, x * &inv)).collect()
        };
        let label = label.into_iter().map(|(i, x)| (i, x * &inv)).collect();
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(row);
        self.labels.push(label);
        true
    }

    /// Reduces and inserts; returns `true` if the span grew.
    pub fn add(&mut self, v: &[(usize, Rational)]) -> bool {
        let r = self.reduce(v);
        self.insert(r.remainder, Vec::new())
    }
}

/// Rank of the matrix with the given columns.
pub fn rank(cols: &[SparseVec], nrows: usize) -> usize {
    let mut e = Echelon::new(nrows);
    for c in cols {
        e.add(c);
    }
    e.rank()
}

/// A basis of the kernel of the matrix with the given columns (vectors in the
/// column index space), together with the rank.
pub fn kernel(cols: &[SparseVec], nrows: usize) -> (Vec<SparseVec>, usize) {
    let mut e = Echelon::new(nrows);
    let mut ker = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let r = e.reduce(c);
        // Track `e_j - Σ c_r label_r`, so labels describe preimages of stored rows.
        let mut label: BTreeMap<usize, Rational> = BTreeMap::new();
        label.insert(j, Rational::one());
        axpy_map(&mut label, &-Rational::one(), &r.label);
        let label: SparseVec = label.into_iter().collect();
        if r.remainder.is_empty() {
            ker.push(label);
        } else {
            e.insert(r.remainder, label);
        }
    }
    let rk = e.rank();
    (ker, rk)
}

/// Dense row-major matrix to sparse columns.
pub fn columns_of(rows: &[Vec<Rational>]) -> Vec<SparseVec> {
    let ncols = rows.first().map_or(0, |r| r.len());
    (0..ncols)
        .map(|c| {
            rows.iter()
                .enumerate()
                .filter(|(_, r)| !r[c].is_zero())
                .map(|(i, r)| (i, r[c].clone()))
                .collect()
        })
        .collect()
}

/// Applies the matrix with the given columns to a sparse vector.
pub fn apply(cols: &[SparseVec], v: &[(usize, Rational)]) -> SparseVec {
    let mut acc = BTreeMap::new();
    for (j, x) in v {
        axpy_map(&mut acc, x, &cols[*j]);
    }
    acc.into_iter().collect()
}
