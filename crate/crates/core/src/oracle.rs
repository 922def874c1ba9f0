//! Exhaustive ground truth for small codes: minimum distance, generalized
//! Hamming weights, duals and isometry witnesses.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{LambdaProfile, DEFAULT_GHW_CAP};
use crate::error::{Error, Result};
use crate::evalcode::{
    biorthogonal_adjust, chain_matrix, code, empirical_hstar, improved_generators,
    EvaluationTable,
};
use crate::generic_bound::CodeChain;
use crate::gf::{weight, Elem, FieldMatrix, FiniteField};

/// Limits on exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_codewords: u64,
    pub max_subspaces: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_codewords: 1 << 26,
            max_subspaces: 10_000_000,
        }
    }
}

impl SearchBudget {
    /// Defaults, overridden by `AGB_BUDGET_CODEWORDS` and
    /// `AGB_BUDGET_SUBSPACES` when they hold positive integers.
    pub fn from_env() -> Self {
        let read = |key: &str, default: u64| {
            std::env::var(key)
                .ok()
                .and_then(|v| v.trim().parse::<u64>().ok())
                .filter(|&v| v > 0)
                .unwrap_or(default)
        };
        let d = Self::default();
        Self {
            max_codewords: read("AGB_BUDGET_CODEWORDS", d.max_codewords),
            max_subspaces: read("AGB_BUDGET_SUBSPACES", d.max_subspaces),
        }
    }
}

/// Cap on coefficient combinations tried when looking for an isometry witness.
pub const ISOMETRY_SEARCH_CAP: u64 = 1_000_000;

fn checked_pow(q: u32, e: usize) -> u128 {
    (0..e).fold(1u128, |acc, _| acc.saturating_mul(q as u128))
}

/// Reflected q-ary Gray code: each step changes one digit by one.
struct Gray {
    digits: Vec<u32>,
    up: Vec<bool>,
    q: u32,
}

impl Gray {
    fn new(len: usize, q: u32) -> Self {
        Self {
            digits: vec![0; len],
            up: vec![true; len],
            q,
        }
    }

    /// Advances; returns `(position, old digit, new digit)` or `None` when
    /// every word has been visited.
    fn step(&mut self) -> Option<(usize, u32, u32)> {
        for j in 0..self.digits.len() {
            let a = self.digits[j];
            let b = if self.up[j] {
                (a + 1 < self.q).then_some(a + 1)
            } else {
                a.checked_sub(1)
            };
            match b {
                Some(b) => {
                    self.digits[j] = b;
                    return Some((j, a, b));
                }
                None => self.up[j] = !self.up[j],
            }
        }
        None
    }
}

// Minimum weight over codewords `row_lead + Σ c_j rows[j]`, all c.
fn coset_min_weight(f: &FiniteField, lead: &[Elem], rows: &[Vec<Elem>]) -> usize {
    let q = f.order();
    // multiples[j][c] = c * rows[j]
    let multiples: Vec<Vec<Vec<Elem>>> = rows
        .iter()
        .map(|r| (0..q).map(|c| f.scale(c, r)).collect())
        .collect();
    let mut w = lead.to_vec();
    let mut best = weight(&w);
    let mut gray = Gray::new(rows.len(), q);
    while let Some((j, a, b)) = gray.step() {
        let delta = &multiples[j][f.sub(b, a) as usize];
        for (x, &d) in w.iter_mut().zip(delta) {
            *x = f.add(*x, d);
        }
        best = best.min(weight(&w));
        if best == 1 {
            break;
        }
    }
    best
}

/// Exact minimum distance of the row space of `m`.
pub fn min_distance(m: &FieldMatrix, budget: &SearchBudget) -> Result<usize> {
    let basis = m.row_basis().row_vecs();
    let k = basis.len();
    if k == 0 {
        return Err(Error::DimensionMismatch(
            "the zero code has no nonzero codeword".into(),
        ));
    }
    let f = m.field();
    let needed = checked_pow(f.order(), k);
    if needed > budget.max_codewords as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            budget: budget.max_codewords,
        });
    }
    // Scaling preserves weight, so fix the leading coefficient to 1 and shard
    // over its position.
    Ok((0..k)
        .into_par_iter()
        .map(|lead| coset_min_weight(f, &basis[lead], &basis[lead + 1..]))
        .min()
        .expect("k >= 1"))
}

/// Number of `r`-dimensional subspaces of `F_q^k`.
pub fn gaussian_binomial(q: u32, k: usize, r: usize) -> u128 {
    if r > k {
        return 0;
    }
    let q = q as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..r {
        num = num.saturating_mul(q.saturating_pow((k - i) as u32) - 1);
        den = den.saturating_mul(q.saturating_pow((i + 1) as u32) - 1);
    }
    num / den
}

fn combinations(k: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for c in start..k {
            cur.push(c);
            rec(c + 1, k, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, r, &mut Vec::new(), &mut out);
    out
}

/// `d_r`: the smallest support of an `r`-dimensional subcode of the row space.
pub fn weight_hierarchy(m: &FieldMatrix, r: usize, budget: &SearchBudget) -> Result<usize> {
    let basis = m.row_basis().row_vecs();
    let k = basis.len();
    if r == 0 || r > k {
        return Err(Error::DimensionMismatch(format!("r = {r} outside 1..={k}")));
    }
    let f = m.field();
    let q = f.order();
    let needed = gaussian_binomial(q, k, r);
    if needed > budget.max_subspaces as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            budget: budget.max_subspaces,
        });
    }
    let n = m.cols();
    let best = combinations(k, r)
        .into_par_iter()
        .map(|pivots| {
            // free slots: (row, column) right of the row's pivot, not a pivot column
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(row, &p)| {
                    (p + 1..k)
                        .filter(|c| !pivots.contains(c))
                        .map(move |c| (row, c))
                })
                .collect();
            let mut coeffs = vec![0u32; free.len()];
            let mut best = usize::MAX;
            loop {
                let mut support = vec![false; n];
                for (row, &p) in pivots.iter().enumerate() {
                    let mut v = basis[p].clone();
                    for (slot, &(fr, c)) in free.iter().enumerate() {
                        if fr == row {
                            f.axpy(coeffs[slot], &basis[c], &mut v);
                        }
                    }
                    for (s, &x) in support.iter_mut().zip(&v) {
                        *s |= x != 0;
                    }
                }
                best = best.min(support.iter().filter(|&&s| s).count());
                // odometer
                let mut pos = 0;
                while pos < coeffs.len() {
                    coeffs[pos] += 1;
                    if coeffs[pos] < q {
                        break;
                    }
                    coeffs[pos] = 0;
                    pos += 1;
                }
                if pos == coeffs.len() {
                    break;
                }
            }
            best
        })
        .min()
        .expect("at least one pivot set");
    Ok(best)
}

/// Generator matrix of the dual code.
pub fn dual(m: &FieldMatrix) -> FieldMatrix {
    m.nullspace()
}

/// The componentwise scaling `v -> x * v`.
pub fn chi(f: &FiniteField, x: &[Elem], v: &[Elem]) -> Vec<Elem> {
    f.hadamard(x, v)
}

/// Whether `x * C_i = C_{n-i}^⊥` for every `i` in `0..=n`.
pub fn verify_isometry_dual(chain: &CodeChain, x: &[Elem]) -> bool {
    let n = chain.n();
    if x.len() != n || x.contains(&0) {
        return false;
    }
    let f = chain.field();
    let rows = chain.basis().row_vecs();
    (0..=n).all(|i| {
        let image: Vec<Vec<Elem>> = rows[..i].iter().map(|b| chi(f, x, b)).collect();
        let image = FieldMatrix::from_rows(f, n, &image).expect("rows of length n");
        let lower = FieldMatrix::from_rows(f, n, &rows[..n - i]).expect("rows of length n");
        let perp = dual(&lower);
        image.rank() == i && perp.rows() == i && (i == 0 || image.same_row_space(&perp))
    })
}

/// Some `x` with no zero coordinate and `x * C_i = C_{n-i}^⊥` for all `i`,
/// or `None` when no such vector is found within [`ISOMETRY_SEARCH_CAP`]
/// combinations of the solution space.
pub fn find_isometry_vector(chain: &CodeChain) -> Option<Vec<Elem>> {
    let n = chain.n();
    let f = chain.field();
    let q = f.order();
    let rows = chain.basis().row_vecs();
    // (x * b_a) . b_b = 0 whenever a + b <= n, linear in x
    let mut constraints = Vec::new();
    for a in 1..n {
        for b in 1..=n - a {
            constraints.push(f.hadamard(&rows[a - 1], &rows[b - 1]));
        }
    }
    let system = FieldMatrix::from_rows(f, n, &constraints).expect("rows of length n");
    let solutions = system.nullspace().row_vecs();
    let nullity = solutions.len();
    if nullity == 0 {
        return None;
    }
    let total = checked_pow(q, nullity).min(ISOMETRY_SEARCH_CAP as u128) as u64;
    let mut coeffs = vec![0u32; nullity];
    for _ in 1..total {
        let mut pos = 0;
        while coeffs[pos] + 1 == q {
            coeffs[pos] = 0;
            pos += 1;
        }
        coeffs[pos] += 1;
        let mut x = vec![0; n];
        for (c, s) in coeffs.iter().zip(&solutions) {
            f.axpy(*c, s, &mut x);
        }
        if !x.contains(&0) {
            assert!(
                verify_isometry_dual(chain, &x),
                "a nonvanishing solution must be an isometry witness"
            );
            return Some(x);
        }
    }
    None
}

/// What [`verify_table`] should cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    /// Skip codes of larger dimension; `None` checks everything the budget allows.
    pub max_dim: Option<usize>,
    /// Check `d_r` against `d*_r` for `2 <= r <= ghw`.
    pub ghw: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub genus: usize,
    pub hstar: Vec<i64>,
    pub checks: Vec<Check>,
    /// Checks not run because the budget or `max_dim` ruled them out.
    pub skipped: Vec<String>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn check(&mut self, label: String, passed: bool, detail: String) {
        self.checks.push(Check {
            label,
            passed,
            detail,
        });
    }
}

fn within(opts: &VerifyOptions, dim: usize) -> bool {
    opts.max_dim.is_none_or(|k| dim <= k)
}

/// Compares every bound against brute force on the codes of `table`.
pub fn verify_table(
    table: &EvaluationTable,
    opts: &VerifyOptions,
    budget: &SearchBudget,
) -> Result<VerifyReport> {
    let hs = empirical_hstar(table)?;
    let n = table.n();
    let profile = LambdaProfile::new(&hs);
    let dstar = profile.d_star_sequence();
    let chain = CodeChain::from_matrix(&chain_matrix(table, &hs)?)?;
    let mut report = VerifyReport {
        n,
        genus: table.genus(),
        hstar: hs.members().to_vec(),
        checks: Vec::new(),
        skipped: Vec::new(),
    };

    for m in 0..=table.top() {
        let c = code(table, m)?;
        let k = c.dimension;
        if !within(opts, k) {
            report.skipped.push(format!("m={m} (dimension {k})"));
            continue;
        }
        let d = match min_distance(&c.generator, budget) {
            Ok(d) => d,
            Err(Error::BudgetExceeded { .. }) => {
                report.skipped.push(format!("m={m} (dimension {k}, budget)"));
                continue;
            }
            Err(e) => return Err(e),
        };
        report.check(
            format!("m={m} k={k}: d >= d*"),
            d >= dstar[k - 1],
            format!("d={d} d*={}", dstar[k - 1]),
        );
        let gb = chain.bound(k)?;
        report.check(
            format!("m={m} k={k}: d >= generic bound"),
            d >= gb,
            format!("d={d} bound={gb}"),
        );
        if m < n as i64 {
            let goppa = n - m as usize;
            report.check(
                format!("m={m} k={k}: d >= n-m"),
                d >= goppa,
                format!("d={d} n-m={goppa}"),
            );
        }
        for r in 2..=opts.ghw.min(k) {
            match weight_hierarchy(&c.generator, r, budget) {
                Ok(dr) => {
                    let b = profile.ghw_bound(k, r, DEFAULT_GHW_CAP)?;
                    report.check(
                        format!("m={m} k={k}: d_{r} >= d*_{r}"),
                        dr >= b,
                        format!("d_{r}={dr} d*_{r}={b}"),
                    );
                }
                Err(Error::BudgetExceeded { .. }) => {
                    report.skipped.push(format!("m={m} d_{r} (budget)"));
                }
                Err(e) => return Err(e),
            }
        }
    }

    let witness = find_isometry_vector(&chain);
    report.check(
        "isometry witness exists iff n+2g-1 in H*".into(),
        witness.is_some() == hs.is_isometry_dual(),
        format!("witness={:?}", witness),
    );
    let adjusted = match &witness {
        Some(x) => {
            let rows = biorthogonal_adjust(table, x);
            report.check(
                "biorthogonal adjustment".into(),
                rows.is_ok(),
                rows.as_ref().err().map_or(String::new(), ToString::to_string),
            );
            rows.ok()
        }
        None => None,
    };

    for delta in 1..=n {
        let variants = [("canonical", None), ("adjusted", adjusted.as_ref())];
        for (name, rows) in variants {
            if name == "adjusted" && rows.is_none() {
                continue;
            }
            let g = improved_generators(table, delta, rows)?;
            let k = g.rank();
            if k == 0 {
                continue;
            }
            if !within(opts, k) {
                report.skipped.push(format!("improved {name} delta={delta} (dimension {k})"));
                continue;
            }
            match min_distance(&g, budget) {
                Ok(d) => report.check(
                    format!("improved {name} delta={delta} k={k}: d >= delta"),
                    d >= delta,
                    format!("d={d}"),
                ),
                Err(Error::BudgetExceeded { .. }) => report
                    .skipped
                    .push(format!("improved {name} delta={delta} (budget)")),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(report)
}
