//! Minimum-distance bounds for an arbitrary chain of linear codes
//! `C_1 < C_2 < ... < C_n = F_q^n` given by an ordered basis `b_1..b_n`.
//!
//! `ν(v)` is the least `i` with `v ∈ C_i`. A pair `(b_i, b_j)` is
//! well-behaving when `ν(b_r * b_s) < ν(b_i * b_j)` for every `(r, s) < (i, j)`
//! in the product order, and then `d(C_i) >= min_{r <= i} #Λ_r` where
//! `Λ_r = {j : (b_r, b_j) well-behaving}`.

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldMatrix, FiniteField};

#[derive(Debug, Clone)]
pub struct CodeChain {
    basis: FieldMatrix,
    // inverse of the basis matrix: coordinates of v are v * inverse
    inverse: FieldMatrix,
    // nu of b_i * b_j, 0-based indices
    product_nu: Vec<Vec<usize>>,
    well_behaving: Vec<Vec<bool>>,
}

impl CodeChain {
    /// Chain from the rows of a square invertible matrix.
    pub fn from_matrix(basis: &FieldMatrix) -> Result<Self> {
        let n = basis.rows();
        if basis.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "chain basis is {}x{}, expected square",
                n,
                basis.cols()
            )));
        }
        let inverse = invert(basis)?;
        let mut chain = Self {
            basis: basis.clone(),
            inverse,
            product_nu: Vec::new(),
            well_behaving: Vec::new(),
        };
        let f = basis.field().clone();
        let rows = basis.row_vecs();
        chain.product_nu = rows
            .iter()
            .map(|bi| rows.iter().map(|bj| chain.nu(&f.hadamard(bi, bj))).collect())
            .collect();
        chain.well_behaving = well_behaving_table(&chain.product_nu);
        Ok(chain)
    }

    pub fn new(field: &FiniteField, basis: &[Vec<Elem>]) -> Result<Self> {
        let n = basis.len();
        Self::from_matrix(&FieldMatrix::from_rows(field, n, basis)?)
    }

    pub fn field(&self) -> &FiniteField {
        self.basis.field()
    }

    pub fn n(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    /// Coordinates `c` with `v = Σ c_i b_i`.
    pub fn coordinates(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let n = self.n();
        let mut c = vec![0; n];
        for (k, &vk) in v.iter().enumerate() {
            if vk != 0 {
                f.axpy(vk, self.inverse.row(k), &mut c);
            }
        }
        c
    }

    /// Least `i` with `v ∈ C_i`; `ν(0) = 0`.
    pub fn nu(&self, v: &[Elem]) -> usize {
        self.coordinates(v)
            .iter()
            .rposition(|&x| x != 0)
            .map_or(0, |p| p + 1)
    }

    /// `ν(b_i * b_j)`, 1-based.
    pub fn product_nu(&self, i: usize, j: usize) -> usize {
        self.product_nu[i - 1][j - 1]
    }

    pub fn is_well_behaving(&self, i: usize, j: usize) -> bool {
        self.well_behaving[i - 1][j - 1]
    }

    /// All well-behaving pairs, 1-based, in lexicographic order.
    pub fn well_behaving(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.is_well_behaving(i, j))
            .collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.n(),
            });
        }
        Ok(())
    }

    /// `Λ_i`, 1-based.
    pub fn lambda(&self, i: usize) -> Result<Vec<usize>> {
        self.check_index(i)?;
        Ok((1..=self.n()).filter(|&j| self.is_well_behaving(i, j)).collect())
    }

    pub fn lambda_counts(&self) -> Vec<usize> {
        self.well_behaving
            .iter()
            .map(|row| row.iter().filter(|&&w| w).count())
            .collect()
    }

    /// `min_{r <= i} #Λ_r`.
    pub fn bound(&self, i: usize) -> Result<usize> {
        self.check_index(i)?;
        Ok(self.lambda_counts()[..i].iter().copied().min().expect("i >= 1"))
    }

    /// A basis of the same span whose `ν` values are pairwise distinct,
    /// sorted by `ν`.
    pub fn triangular_basis(&self, vectors: &[Vec<Elem>]) -> Result<Vec<Vec<Elem>>> {
        let f = self.field();
        let n = self.n();
        if vectors.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(format!("vectors must have length {n}")));
        }
        // slot[k] holds the vector whose highest coordinate is k
        let mut slot: Vec<Option<(Vec<Elem>, Vec<Elem>)>> = vec![None; n];
        for v in vectors {
            let mut v = v.clone();
            let mut c = self.coordinates(&v);
            loop {
                let Some(top) = c.iter().rposition(|&x| x != 0) else {
                    return Err(Error::DependentInput);
                };
                match &slot[top] {
                    None => {
                        slot[top] = Some((v, c));
                        break;
                    }
                    Some((w, cw)) => {
                        let factor = f.neg(f.div(c[top], cw[top])?);
                        f.axpy(factor, w, &mut v);
                        f.axpy(factor, cw, &mut c);
                    }
                }
            }
        }
        Ok(slot.into_iter().flatten().map(|(v, _)| v).collect())
    }
}

/// `d(C_i) >= min_{r <= i} #Λ_r`.
pub fn generic_bound(chain: &CodeChain, i: usize) -> Result<usize> {
    chain.bound(i)
}

pub fn generic_lambda(chain: &CodeChain, i: usize) -> Result<Vec<usize>> {
    chain.lambda(i)
}

fn invert(m: &FieldMatrix) -> Result<FieldMatrix> {
    let n = m.rows();
    let f = m.field();
    let mut aug = FieldMatrix::zeros(f, n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, m.get(r, c));
        }
        aug.set(r, n + r, 1);
    }
    let rref = aug.rref();
    if rref.pivots.iter().take_while(|&&p| p < n).count() < n {
        return Err(Error::DependentInput);
    }
    let mut inv = FieldMatrix::zeros(f, n, n);
    for r in 0..n {
        for c in 0..n {
            inv.set(r, c, rref.matrix.get(r, n + c));
        }
    }
    Ok(inv)
}

// (i, j) is well-behaving iff its nu exceeds every nu strictly below it in the
// product order, which is the max of the two prefix maxima next to it.
fn well_behaving_table(nu: &[Vec<usize>]) -> Vec<Vec<bool>> {
    let n = nu.len();
    let mut prefix = vec![vec![0usize; n + 1]; n + 1];
    let mut out = vec![vec![false; n]; n];
    for i in 1..=n {
        for j in 1..=n {
            let v = nu[i - 1][j - 1];
            let below = prefix[i - 1][j].max(prefix[i][j - 1]);
            out[i - 1][j - 1] = v > below;
            prefix[i][j] = below.max(v);
        }
    }
    out
}
