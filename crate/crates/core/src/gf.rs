//! Small prime-power fields GF(p^k) and dense matrices over them.
//!
//! Elements are encoded as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! of their polynomial coefficients in `t`, reduced modulo a fixed monic
//! irreducible polynomial. Multiplication goes through log/antilog tables.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Elem = u32;

const PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

/// Moduli that must not drift: coefficient lists, constant term first.
const PINNED_MODULI: [(u32, u32, [u32; 5]); 4] = [
    (2, 2, [1, 1, 1, 0, 0]),
    (2, 3, [1, 1, 0, 1, 0]),
    (3, 2, [1, 0, 1, 0, 0]),
    (2, 4, [1, 1, 0, 0, 1]),
];

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
    // full addition table when q <= 256
    add: Option<Vec<Elem>>,
    neg: Vec<Elem>,
}

/// A finite field; cheap to clone.
#[derive(Clone)]
pub struct FiniteField(Arc<Tables>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}

impl Eq for FiniteField {}

// Polynomials over GF(p) as coefficient vectors, constant term first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (idx, &mc) in m.iter().enumerate() {
            let t = &mut r[shift + idx];
            *t = (*t + p - c * mc % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero mod prime")
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    // trial division by every monic polynomial of degree 1..=deg/2
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut f = digits_of(code, p, d);
            f.push(1);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits_of(mut e: u32, p: u32, k: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(e % p);
        e /= p;
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> Elem {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn pick_modulus(p: u32, k: u32) -> Vec<u32> {
    if let Some((_, _, c)) = PINNED_MODULI.iter().find(|(pp, kk, _)| *pp == p && *kk == k) {
        return c[..=k as usize].to_vec();
    }
    // smallest monic irreducible by coefficient encoding
    (0..p.pow(k))
        .map(|code| {
            let mut f = digits_of(code, p, k as usize);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

impl FiniteField {
    /// GF(p^k) for `p` in {2, 3, 5, 7, 11, 13}, `1 <= k <= 4`, `p^k <= 65536`.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !PRIMES.contains(&p) || !(1..=4).contains(&k) || p.pow(k) > 65536 {
            return Err(Error::UnsupportedField { p, k });
        }
        let q = p.pow(k);
        let modulus = pick_modulus(p, k);
        let kk = k as usize;
        let mul_slow = |a: Elem, b: Elem| {
            let r = poly_mul_mod(&digits_of(a, p, kk), &digits_of(b, p, kk), &modulus, p);
            encode(&r, p)
        };
        let order = |g: Elem| {
            let mut x = g;
            let mut ord = 1;
            while x != 1 {
                x = mul_slow(x, g);
                ord += 1;
            }
            ord
        };
        let generator = if q == 2 {
            1
        } else {
            (2..q).find(|&g| order(g) == q - 1).expect("multiplicative group is cyclic")
        };
        let mut exp = vec![0; 2 * (q as usize - 1)];
        let mut log = vec![0; q as usize];
        let mut x = 1;
        for e in 0..q - 1 {
            exp[e as usize] = x;
            exp[(e + q - 1) as usize] = x;
            log[x as usize] = e;
            x = mul_slow(x, generator);
        }
        let add_slow = |a: Elem, b: Elem| {
            let s: Vec<u32> = digits_of(a, p, kk)
                .iter()
                .zip(digits_of(b, p, kk))
                .map(|(x, y)| (x + y) % p)
                .collect();
            encode(&s, p)
        };
        let neg = (0..q)
            .map(|a| encode(&digits_of(a, p, kk).iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p))
            .collect();
        let add = (q <= 256 && p != 2).then(|| {
            let mut t = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_slow(a, b);
                }
            }
            t
        });
        Ok(FiniteField(Arc::new(Tables {
            p,
            k,
            q,
            modulus,
            generator,
            exp,
            log,
            add,
            neg,
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, constant term first; monic of degree `k`.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The primitive element used for the log tables.
    pub fn generator(&self) -> Elem {
        self.0.generator
    }

    pub fn contains(&self, a: Elem) -> bool {
        a < self.0.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let t = &*self.0;
        if t.p == 2 {
            a ^ b
        } else if let Some(add) = &t.add {
            add[(a * t.q + b) as usize]
        } else {
            let (mut x, mut y, mut out, mut place) = (a, b, 0, 1);
            while x > 0 || y > 0 {
                out += ((x % t.p + y % t.p) % t.p) * place;
                x /= t.p;
                y /= t.p;
                place *= t.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.0;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.0;
        Ok(t.exp[((t.q - 1 - t.log[a as usize]) % (t.q - 1)) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &*self.0;
        let l = (t.log[a as usize] as u64 * (e % (t.q as u64 - 1))) % (t.q as u64 - 1);
        t.exp[l as usize]
    }

    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Componentwise product.
    pub fn hadamard(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.mul(x, y)).collect()
    }

    /// `y += alpha * x`.
    pub fn axpy(&self, alpha: Elem, x: &[Elem], y: &mut [Elem]) {
        if alpha == 0 {
            return;
        }
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = self.add(*yi, self.mul(alpha, xi));
        }
    }

    pub fn scale(&self, alpha: Elem, x: &[Elem]) -> Vec<Elem> {
        x.iter().map(|&v| self.mul(alpha, v)).collect()
    }
}

pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// Dense row-major matrix over a [`FiniteField`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{}", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of [`FieldMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FieldMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// JSON layout of a matrix file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub p: u32,
    pub k: u32,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elem>,
}

impl FieldMatrix {
    pub fn new(field: &FiniteField, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| !field.contains(x)) {
            return Err(Error::DimensionMismatch(format!(
                "entry {bad} outside GF({})",
                field.order()
            )));
        }
        Ok(Self {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: &FiniteField, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FiniteField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Stacks equal-length rows; `cols` is needed for the zero-row case.
    pub fn from_rows(field: &FiniteField, cols: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let data = idx.iter().flat_map(|&r| self.row(r).iter().copied()).collect();
        Self {
            field: self.field.clone(),
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Reduced row-echelon form. Pivots are taken column by column from the
    /// left, using the topmost remaining row with a nonzero entry.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(src) = (row..self.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if src != row {
                for c in 0..self.cols {
                    m.data.swap(src * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in 0..self.cols {
                let v = f.mul(inv, m.get(row, c));
                m.set(row, c, v);
            }
            let pivot_row = m.row(row).to_vec();
            for r in 0..self.rows {
                let factor = m.get(r, col);
                if r != row && factor != 0 {
                    let start = r * self.cols;
                    f.axpy(f.neg(factor), &pivot_row, &mut m.data[start..start + self.cols]);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            matrix: m,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_basis(&self) -> Self {
        let r = self.rref();
        r.matrix.select_rows(&(0..r.rank).collect::<Vec<_>>())
    }

    /// Basis of `{v : M v^T = 0}` as the rows of a `(cols - rank) x cols` matrix.
    pub fn nullspace(&self) -> Self {
        let f = &self.field;
        let Rref { matrix, rank, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (r, &pc) in pivots.iter().enumerate().take(rank) {
                out.set(k, pc, f.neg(matrix.get(r, fc)));
            }
        }
        out
    }

    pub fn same_row_space(&self, other: &Self) -> bool {
        self.cols == other.cols && self.row_basis() == other.row_basis()
    }

    /// Whether `v` lies in the row space.
    pub fn spans(&self, v: &[Elem]) -> bool {
        let mut rows = self.row_vecs();
        let before = self.rank();
        rows.push(v.to_vec());
        Self::from_rows(&self.field, self.cols, &rows)
            .map(|m| m.rank() == before)
            .unwrap_or(false)
    }

    pub fn to_file(&self) -> MatrixFile {
        MatrixFile {
            p: self.field.p(),
            k: self.field.k(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
        }
    }

    pub fn from_file(file: &MatrixFile) -> Result<Self> {
        let field = FiniteField::new(file.p, file.k)?;
        Self::new(&field, file.rows, file.cols, file.data.clone())
    }
}

/// Row-echelon basis grown one vector at a time.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: FiniteField,
    len: usize,
    // (pivot column, row normalized to 1 at the pivot)
    rows: Vec<(usize, Vec<Elem>)>,
}

impl EchelonBasis {
    pub fn new(field: &FiniteField, len: usize) -> Self {
        Self {
            field: field.clone(),
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `v` minus its projection onto the current span along pivots.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = w[*pivot];
            if c != 0 {
                f.axpy(f.neg(c), row, &mut w);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.len, "vector length");
        let w = self.reduce(v);
        let Some(pivot) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[pivot]).expect("nonzero pivot");
        let row = self.field.scale(inv, &w);
        // keep older rows reduced at the new pivot so reduce() stays one pass
        for (_, old) in &mut self.rows {
            let c = old[pivot];
            if c != 0 {
                self.field.axpy(self.field.neg(c), &row, old);
            }
        }
        self.rows.push((pivot, row));
        true
    }
}
