use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};

/// A linear subspace of `Q^dim`, stored as its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    dim: usize,
    basis: Vec<Vec<Rational>>,
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else { continue };
        rows.swap(r, k);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{x : rows . x = 0}`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (red, pivots) = rref(rows.to_vec(), ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &pc) in red.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

impl Subspace {
    pub fn span(dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == dim), "vector length must equal the ambient dimension");
        let (basis, _) = rref(vectors, dim);
        Self { dim, basis }
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, basis: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Self { dim, basis }
    }

    /// `span(e_i : i in idx)`.
    pub fn coordinate(dim: usize, idx: &[usize]) -> Self {
        let vs = idx
            .iter()
            .map(|&i| (0..dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Self::span(dim, vs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(rows, self.dim).0.len() == self.rank()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.dim == other.dim && self.basis.iter().all(|v| other.contains(v))
    }

    /// The annihilator in the dual space under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        Subspace::span(self.dim, nullspace(&self.basis, self.dim))
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.basis.iter().map(|r| r.iter().map(rational::format).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let dim = rows.first().map(Vec::len).ok_or_else(|| D::Error::custom("empty subbundle basis"))?;
        if rows.iter().any(|r| r.len() != dim) {
            return Err(D::Error::custom("ragged subbundle basis"));
        }
        let vs = rows
            .iter()
            .map(|r| r.iter().map(|x| rational::parse(x).map_err(D::Error::custom)).collect())
            .collect::<Result<Vec<Vec<Rational>>, _>>()?;
        Ok(Subspace::span(dim, vs))
    }
}
